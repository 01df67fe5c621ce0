//! Command-line front end. [`run`] parses arguments and returns the exit
//! code and the text destined for stdout and stderr, so it can be tested
//! without spawning a process.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 refused input (over
//! budget, malformed or inadmissible), 3 the numerator methods disagree.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::braid::{chain_from_pair, lambda, pair_to_flat_chain};
use crate::cfhp::{local_sides, refined_sides, Method, NumeratorReport};
use crate::error::Error;
use crate::perms::{eulerian_polynomial, Permutation, ValueSet};
use crate::poly::{MultiPoly, Variable};
use crate::pwy::build_pwy;
use crate::verify::{qsym_check, run_suites, Suite, VerifyReport};

pub const JOBS_ENV: &str = "BRAID_CFHP_JOBS";

#[derive(Debug, Parser)]
#[command(
    name = "braid-cfhp",
    version,
    about = "Numerator of the coarse flag Hilbert-Poincaré series of the braid arrangement"
)]
pub struct Cli {
    /// Worker threads for the exhaustive sweeps (default: one per core).
    #[arg(long, global = true, env = JOBS_ENV)]
    jobs: Option<usize>,

    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute N_{B_n}(y,t).
    Numerator(NumeratorArgs),
    /// Show the chain, signed labeling and Ino of a pair (w, sigma).
    Label(LabelArgs),
    /// Build the poset P_{w,Y} with its vertex labeling.
    Poset(PosetArgs),
    /// Run the exhaustive identity suites.
    Verify(VerifyArgs),
    /// Check K_{P,omega} against its fundamental expansion for every P_{w,Y}.
    QsymCheck(QsymArgs),
    /// Print the Eulerian polynomial E_n(t).
    Eulerian(EulerianArgs),
    /// Print both sides of the refined identity for one w.
    Refined(RefinedArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Chains,
    Rlabeling,
    Statistic,
    All,
}

#[derive(Debug, Args)]
struct NumeratorArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "statistic")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Include wall times in the output instead of on stderr.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct LabelArgs {
    #[arg(long)]
    w: String,
    #[arg(long)]
    sigma: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct PosetArgs {
    #[arg(long)]
    w: String,
    /// Comma-separated values, e.g. 3,5,6; empty for the empty set.
    #[arg(long, default_value = "")]
    y: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    list_extensions: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated suite names; default is every suite whose budget admits n.
    #[arg(long, value_delimiter = ',')]
    suites: Option<Vec<String>>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct QsymArgs {
    #[arg(long)]
    n: usize,
    /// Check with 1, ..., m variables.
    #[arg(long, default_value_t = 4)]
    m: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct EulerianArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct RefinedArgs {
    #[arg(long)]
    w: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn refused(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInvariant(_) => Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
            _ => Outcome::refused(e),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Outcome::refused("--jobs must be at least 1");
        }
        pool = pool.num_threads(jobs);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return Outcome::refused(format!("cannot start worker pool: {e}")),
    };
    let mut out = pool.install(|| dispatch(&cli.command));
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &out.stdout) {
            return Outcome::refused(format!("cannot write {}: {e}", path.display()));
        }
        out.stdout.clear();
    }
    out
}

fn dispatch(cmd: &Command) -> Outcome {
    let result = match cmd {
        Command::Numerator(a) => cmd_numerator(a),
        Command::Label(a) => cmd_label(a),
        Command::Poset(a) => cmd_poset(a),
        Command::Verify(a) => cmd_verify(a),
        Command::QsymCheck(a) => cmd_qsym(a),
        Command::Eulerian(a) => cmd_eulerian(a),
        Command::Refined(a) => cmd_refined(a),
    };
    result.unwrap_or_else(Outcome::from)
}

fn unsupported(format: Format, command: &str) -> Outcome {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    Outcome::refused(format!("format {name} is not supported by {command}"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn parse_perm(s: &str) -> Result<Permutation, Error> {
    s.parse()
}

/// `y,t,coefficient` rows in graded order.
fn poly_csv(p: &MultiPoly, prefix: Option<&str>) -> String {
    let mut s = String::new();
    for (m, c) in p.graded_terms() {
        if let Some(pre) = prefix {
            let _ = write!(s, "{pre},");
        }
        let _ = writeln!(
            s,
            "{},{},{c}",
            m.exponent(Variable::Y),
            m.exponent(Variable::T)
        );
    }
    s
}

fn cmd_numerator(a: &NumeratorArgs) -> Result<Outcome, Error> {
    if matches!(a.format, Format::Dot) {
        return Ok(unsupported(a.format, "numerator"));
    }
    let single = match a.method {
        MethodArg::Chains => Some(Method::Chains),
        MethodArg::Rlabeling => Some(Method::RLabeling),
        MethodArg::Statistic => Some(Method::Statistic),
        MethodArg::All => None,
    };
    if let Some(method) = single {
        let start = std::time::Instant::now();
        let p = method.numerator(a.n)?;
        let secs = start.elapsed().as_secs_f64();
        let stdout = match a.format {
            Format::Text => format!("{}\n", p.to_text_grouped(Variable::T)),
            Format::Latex => format!("{}\n", p.to_latex_grouped(Variable::T)),
            Format::Csv => format!("y,t,coefficient\n{}", poly_csv(&p, None)),
            Format::Json => {
                let mut v = json!({ "n": a.n, "method": method.name(), "poly": p });
                if a.timing {
                    v["timing_seconds"] = json!({ method.name(): secs });
                }
                to_json(&v)
            }
            Format::Dot => unreachable!(),
        };
        let mut out = Outcome::ok(stdout);
        if !a.timing {
            out.stderr = format!("{method}: {secs:.3}s\n");
        } else if a.format != Format::Json {
            out.stdout.push_str(&format!("time {method}: {secs:.3}s\n"));
        }
        return Ok(out);
    }

    let report = NumeratorReport::compute(a.n)?;
    let timing = report.timing_seconds.clone().unwrap_or_default();
    let report = if a.timing {
        report
    } else {
        report.without_timing()
    };
    let rows = [
        (Method::Chains, &report.poly_chains),
        (Method::RLabeling, &report.poly_rlabel),
        (Method::Statistic, &report.poly_stat),
    ];
    let mut stdout = String::new();
    match a.format {
        Format::Text | Format::Latex => {
            for (m, p) in rows {
                let body = if a.format == Format::Text {
                    p.to_text_grouped(Variable::T)
                } else {
                    p.to_latex_grouped(Variable::T)
                };
                let _ = writeln!(stdout, "{:<10} {body}", format!("{m}:"));
            }
            let _ = writeln!(stdout, "agree: {}", report.agree);
        }
        Format::Csv => {
            stdout.push_str("method,y,t,coefficient\n");
            for (m, p) in rows {
                stdout.push_str(&poly_csv(p, Some(m.name())));
            }
        }
        Format::Json => stdout = to_json(&report),
        Format::Dot => unreachable!(),
    }
    let timing_text: String = timing
        .iter()
        .map(|(m, s)| format!("time {m}: {s:.3}s\n"))
        .collect();
    let mut out = Outcome::ok(stdout);
    if !a.timing {
        out.stderr = timing_text;
    } else if a.format != Format::Json {
        out.stdout.push_str(&timing_text);
    }
    if !report.agree {
        out.code = 3;
        out.stderr.push_str("error: the three methods disagree\n");
    }
    Ok(out)
}

fn cmd_label(a: &LabelArgs) -> Result<Outcome, Error> {
    let w = parse_perm(&a.w)?;
    let sigma = parse_perm(&a.sigma)?;
    let chain = chain_from_pair(&w, &sigma)?;
    let lam = lambda(&w, &sigma)?;
    let (flat, ypos) = pair_to_flat_chain(&w, &sigma)?;
    let ino: ValueSet = lam
        .entries()
        .iter()
        .filter(|&&l| l > 0)
        .map(|&l| l as usize)
        .collect();
    let stdout = match a.format {
        Format::Text => {
            let mut s = format!("w = {w}, sigma = {sigma}\n");
            let width = chain.iter().map(|c| c.to_string().len()).max().unwrap_or(0);
            for (k, c) in chain.iter().enumerate() {
                if k == 0 {
                    let _ = writeln!(s, "  {c}");
                } else {
                    let _ = writeln!(
                        s,
                        "  {c:<width$}  bar {}, label {}",
                        sigma.at(k),
                        lam.entries()[k - 1]
                    );
                }
            }
            let _ = writeln!(s, "lambda = {lam}");
            let _ = writeln!(s, "ino = {}", ino.len());
            let _ = writeln!(s, "Ino = {ino}");
            s
        }
        Format::Json => to_json(&json!({
            "w": w,
            "sigma": sigma,
            "chain": chain.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "lambda": lam,
            "ino": ino.len(),
            "Ino": ino,
            "flat_chain": flat.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "positive_positions": ypos,
        })),
        _ => return Ok(unsupported(a.format, "label")),
    };
    Ok(Outcome::ok(stdout))
}

fn parse_values(s: &str) -> Result<ValueSet, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .ok()
                .filter(|&v| v < 64)
                .ok_or_else(|| Error::Parse(format!("{t:?} is not a value in 0..64")))
        })
        .collect()
}

fn cmd_poset(a: &PosetArgs) -> Result<Outcome, Error> {
    let w = parse_perm(&a.w)?;
    let y = parse_values(&a.y)?;
    let lp = build_pwy(&w, y)?;
    let exts: Vec<Permutation> = if a.list_extensions {
        lp.linear_extensions().collect()
    } else {
        Vec::new()
    };
    let stdout = match a.format {
        Format::Text => {
            let mut s = lp.to_text();
            if a.list_extensions {
                let list: Vec<String> = exts.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "extensions ({}): {}", exts.len(), list.join(" "));
            }
            s
        }
        Format::Dot => {
            let mut s = lp.to_dot();
            if a.list_extensions {
                let list: Vec<String> = exts.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "// extensions ({}): {}", exts.len(), list.join(" "));
            }
            s
        }
        Format::Json => {
            let mut v = serde_json::to_value(&lp).expect("serializable poset");
            if a.list_extensions {
                v["extensions"] = json!(exts);
            }
            to_json(&v)
        }
        _ => return Ok(unsupported(a.format, "poset")),
    };
    Ok(Outcome::ok(stdout))
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    let suites: Vec<Suite> = match &a.suites {
        Some(names) => names
            .iter()
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()?,
        None => Suite::admitting(a.n),
    };
    if suites.is_empty() {
        return Ok(Outcome::refused(format!(
            "no suite runs at n = {}; the largest budget is {}",
            a.n,
            Suite::ALL.iter().map(|s| s.budget()).max().unwrap_or(0)
        )));
    }
    let report: VerifyReport = run_suites(a.n, &suites)?;
    let stdout = match a.format {
        Format::Text => report.to_text(),
        Format::Json => to_json(&report),
        _ => return Ok(unsupported(a.format, "verify")),
    };
    let mut out = Outcome::ok(stdout);
    if !report.passed {
        out.code = 1;
    }
    Ok(out)
}

fn cmd_qsym(a: &QsymArgs) -> Result<Outcome, Error> {
    let r = qsym_check(a.n, a.m)?;
    let stdout = match a.format {
        Format::Text => {
            let mut s = format!(
                "K_(P,omega) = sum of L_Des over Lin(P), all P_(w,Y) with n={}, m=1..{}: {} checked={} failed={}\n",
                a.n,
                a.m,
                if r.passed() { "PASS" } else { "FAIL" },
                r.checked,
                r.failed
            );
            for f in &r.failures {
                let _ = writeln!(s, "  {f}");
            }
            s
        }
        Format::Json => to_json(&r),
        _ => return Ok(unsupported(a.format, "qsym-check")),
    };
    let mut out = Outcome::ok(stdout);
    if !r.passed() {
        out.code = 1;
    }
    Ok(out)
}

fn cmd_eulerian(a: &EulerianArgs) -> Result<Outcome, Error> {
    let p = eulerian_polynomial(a.n)?;
    let stdout = match a.format {
        Format::Text => format!("{p}\n"),
        Format::Latex => format!("{}\n", p.to_latex()),
        Format::Csv => {
            let mut s = String::from("t,coefficient\n");
            for (m, c) in p.graded_terms() {
                let _ = writeln!(s, "{},{c}", m.exponent(Variable::T));
            }
            s
        }
        Format::Json => to_json(&json!({ "n": a.n, "poly": p })),
        Format::Dot => return Ok(unsupported(a.format, "eulerian")),
    };
    Ok(Outcome::ok(stdout))
}

fn cmd_refined(a: &RefinedArgs) -> Result<Outcome, Error> {
    let w = parse_perm(&a.w)?;
    let refined = refined_sides(&w)?;
    let local = local_sides(&w)?;
    let holds = refined.holds() && local.holds();
    let stdout = match a.format {
        Format::Text => format!(
            "w = {w}\nsum y^Ino t^Asc(lambda) = {}\nsum y^Ino t^Des(sigma)  = {}\nequal: {}\nspecialized: {}\n",
            refined.ascent_side,
            refined.descent_side,
            refined.holds(),
            local.descent_side.to_text_grouped(Variable::T)
        ),
        Format::Latex => format!(
            "{} = {}\n",
            refined.ascent_side.to_latex(),
            refined.descent_side.to_latex()
        ),
        Format::Json => to_json(&json!({
            "w": w,
            "ascent_side": refined.ascent_side,
            "descent_side": refined.descent_side,
            "equal": refined.holds(),
            "specialized": local.descent_side,
        })),
        _ => return Ok(unsupported(a.format, "refined")),
    };
    let mut out = Outcome::ok(stdout);
    if !holds {
        out.code = 1;
    }
    Ok(out)
}
