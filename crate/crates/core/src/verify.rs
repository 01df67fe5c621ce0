//! Exhaustive identity suites for a fixed `n`.
//!
//! Every suite enumerates all relevant objects of size `n` and reports how
//! many checks ran and which ones failed. Suites refuse `n` above their own
//! budget instead of running for hours.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{lambda, last_bar_positions, pair_to_flat_chain, partition_lattice};
use crate::cfhp::{
    closed_form_report, local_identity_sweep, numerator_via_statistic, refined_identity_sweep,
    NumeratorReport,
};
use crate::error::{check_budget, Error, Result};
use crate::perms::{all_permutations, Permutation, PositionSet, ValueSet};
use crate::pwy::{admissible_y, build_pwy, check_admissible, vertex_word, LabeledPoset};
use crate::qsym::{k_p_omega, k_via_fundamental, pwy_labeling_checks};

/// Failure messages kept per suite; the count is always exact.
pub const MAX_REPORTED_FAILURES: usize = 20;

/// Truncation levels `m` used by [`Suite::Eq23`].
pub const EQ23_VARIABLES: std::ops::RangeInclusive<usize> = 1..=4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// Chains, R-labeling and statistic give the same numerator.
    ThreeWay,
    /// Refined identity in `y_v`, `t_i` for every `w`.
    Thm16,
    /// Bivariate identity in `y`, `t` for every `w`.
    Thm15,
    ClosedForm,
    /// `{|λ_i|} = {2, ..., n+1}`.
    Lemma22,
    /// Sign and position of each merge value from the last bar positions.
    Lemma23,
    /// `Ino(w, σ)` avoids left-to-right minima and holds the right-to-left ones.
    InoBounds,
    /// `Lin(P_{w,Y})` equals the `Ino` fiber.
    LinFiber,
    /// The `Lin(P_{w,Y})` partition `Sym(n)`.
    Partition,
    /// `σ ∈ Lin(P_{w,Ino})` and `Λ(σ) = λ(w, σ)`.
    Prop26,
    /// Covers of `P_{w,Y}` reverse the order of `Λ`.
    Lemma27,
    /// `K_{P,ω}` against its fundamental expansion for `P = P_{w,Y}`, `ω = Λ`.
    Eq23,
    /// Descent-set distributions of cover-equivalent labelings.
    Prop25,
    /// `(w, σ) ↦ (flat chain, positive positions)` is a bijection.
    Bijection,
    /// Max-of-minima labels form an R-labeling of `Π_n`.
    RLabeling,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::ThreeWay,
        Suite::Thm16,
        Suite::Thm15,
        Suite::ClosedForm,
        Suite::Lemma22,
        Suite::Lemma23,
        Suite::InoBounds,
        Suite::LinFiber,
        Suite::Partition,
        Suite::Prop26,
        Suite::Lemma27,
        Suite::Eq23,
        Suite::Prop25,
        Suite::Bijection,
        Suite::RLabeling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ThreeWay => "three-way",
            Suite::Thm16 => "thm16",
            Suite::Thm15 => "thm15",
            Suite::ClosedForm => "closed-form",
            Suite::Lemma22 => "lemma22",
            Suite::Lemma23 => "lemma23",
            Suite::InoBounds => "ino-bounds",
            Suite::LinFiber => "lin-fiber",
            Suite::Partition => "partition",
            Suite::Prop26 => "prop26",
            Suite::Lemma27 => "lemma27",
            Suite::Eq23 => "eq23",
            Suite::Prop25 => "prop25",
            Suite::Bijection => "bijection",
            Suite::RLabeling => "rlabeling",
        }
    }

    /// Largest `n` the suite will run at.
    pub fn budget(self) -> usize {
        match self {
            Suite::ThreeWay => 5,
            Suite::Thm16 | Suite::Thm15 | Suite::ClosedForm => 6,
            Suite::Lemma22 | Suite::InoBounds => 6,
            Suite::Lemma23 => 5,
            Suite::LinFiber | Suite::Partition | Suite::Prop26 | Suite::Lemma27 => 5,
            Suite::Eq23 | Suite::Prop25 | Suite::Bijection | Suite::RLabeling => 4,
        }
    }

    /// Suites whose budget admits `n`.
    pub fn admitting(n: usize) -> Vec<Suite> {
        Suite::ALL.into_iter().filter(|s| n <= s.budget()).collect()
    }

    pub fn run(self, n: usize) -> Result<SuiteResult> {
        if n == 0 {
            return Err(Error::SizeMismatch("suites need n >= 1".into()));
        }
        check_budget(self.name(), n, self.budget())?;
        let tally = match self {
            Suite::ThreeWay => three_way(n)?,
            Suite::Thm16 => theorem_sweep(n, true)?,
            Suite::Thm15 => theorem_sweep(n, false)?,
            Suite::ClosedForm => closed_form(n)?,
            Suite::Lemma22 => per_pair(n, lemma22)?,
            Suite::Lemma23 => per_pair(n, lemma23)?,
            Suite::InoBounds => per_pair(n, ino_bounds)?,
            Suite::LinFiber => per_w(n, lin_fiber)?,
            Suite::Partition => per_w(n, partition)?,
            Suite::Prop26 => per_w(n, prop26)?,
            Suite::Lemma27 => per_pwy(n, |lp, t| {
                t.record(lp.covers_reverse_labels(), || {
                    format!("w={} Y={}: a cover does not reverse Λ", lp.w(), lp.y())
                });
                Ok(())
            })?,
            Suite::Eq23 => per_pwy(n, |lp, t| eq23(lp, EQ23_VARIABLES, t))?,
            Suite::Prop25 => per_pwy(n, prop25)?,
            Suite::Bijection => bijection(n)?,
            Suite::RLabeling => rlabeling(n)?,
        };
        Ok(SuiteResult {
            suite: self.name().to_string(),
            n,
            checked: tally.checked,
            failed: tally.failed,
            failures: tally.failures,
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Parse(format!(
                    "unknown suite {s:?}; expected one of {}",
                    names.join(",")
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub n: usize,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.suites {
            s.push_str(&format!(
                "{:<12} n={} {} checked={} failed={}\n",
                r.suite,
                r.n,
                if r.passed() { "PASS" } else { "FAIL" },
                r.checked,
                r.failed
            ));
            for f in &r.failures {
                s.push_str(&format!("  {f}\n"));
            }
        }
        s.push_str(if self.passed {
            "all suites passed\n"
        } else {
            "some suites FAILED\n"
        });
        s
    }
}

/// Runs `suites` at `n`, refusing up front if any of them is over budget.
pub fn run_suites(n: usize, suites: &[Suite]) -> Result<VerifyReport> {
    for s in suites {
        check_budget(s.name(), n, s.budget())?;
    }
    let results = suites
        .iter()
        .map(|s| s.run(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        n,
        passed: results.iter().all(SuiteResult::passed),
        suites: results,
    })
}

#[derive(Debug, Default)]
struct Tally {
    checked: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(msg());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failed += other.failed;
        let room = MAX_REPORTED_FAILURES - self.failures.len();
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }
}

/// Runs `f` for each `w ∈ S_{n+1}` in parallel; tallies merge in `w` order.
fn per_w<F>(n: usize, f: F) -> Result<Tally>
where
    F: Fn(&Permutation, &[Permutation], &mut Tally) -> Result<()> + Sync,
{
    let sigmas: Vec<Permutation> = all_permutations(n)?.collect();
    let ws: Vec<Permutation> = all_permutations(n + 1)?.collect();
    let tallies = ws
        .par_iter()
        .map(|w| {
            let mut t = Tally::default();
            f(w, &sigmas, &mut t)?;
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(tallies.into_iter().fold(Tally::default(), Tally::merge))
}

fn per_pair<F>(n: usize, f: F) -> Result<Tally>
where
    F: Fn(&Permutation, &Permutation, &mut Tally) -> Result<()> + Sync,
{
    per_w(n, |w, sigmas, t| {
        for s in sigmas {
            f(w, s, t)?;
        }
        Ok(())
    })
}

/// Runs `f` on `P_{w,Y}` for every `w` and admissible `Y`.
fn per_pwy<F>(n: usize, f: F) -> Result<Tally>
where
    F: Fn(&LabeledPoset, &mut Tally) -> Result<()> + Sync,
{
    per_w(n, |w, _, t| {
        for y in admissible_y(w) {
            f(&build_pwy(w, y)?, t)?;
        }
        Ok(())
    })
}

fn three_way(n: usize) -> Result<Tally> {
    let r = NumeratorReport::compute(n)?;
    let mut t = Tally::default();
    t.record(r.poly_chains == r.poly_stat, || {
        format!("chains {} != statistic {}", r.poly_chains, r.poly_stat)
    });
    t.record(r.poly_rlabel == r.poly_stat, || {
        format!("rlabeling {} != statistic {}", r.poly_rlabel, r.poly_stat)
    });
    t.record(r.poly_stat.all_coefficients_nonnegative(), || {
        format!("negative coefficient in {}", r.poly_stat)
    });
    let mass: u64 = (1..=n as u64 + 1).product::<u64>() * (1..=n as u64).product::<u64>();
    t.record(r.poly_stat.coefficient_sum() == mass.into(), || {
        format!(
            "coefficient sum {} != {mass}",
            r.poly_stat.coefficient_sum()
        )
    });
    Ok(t)
}

fn theorem_sweep(n: usize, refined: bool) -> Result<Tally> {
    let report = if refined {
        refined_identity_sweep(n)?
    } else {
        local_identity_sweep(n)?
    };
    let mut t = Tally {
        checked: report.checked,
        failed: report.failures.len(),
        failures: report
            .failures
            .iter()
            .take(MAX_REPORTED_FAILURES)
            .map(|w| format!("w={w}: sides differ"))
            .collect(),
    };
    let stat = numerator_via_statistic(n)?;
    t.record(report.specialized_total == stat, || {
        format!(
            "sum over w specializes to {} instead of {stat}",
            report.specialized_total
        )
    });
    Ok(t)
}

fn closed_form(n: usize) -> Result<Tally> {
    let r = closed_form_report(n, &numerator_via_statistic(n)?)?;
    let mut t = Tally::default();
    t.record(r.y_one_holds(), || {
        format!(
            "N(1,t) = {} but expected {}",
            r.at_y_one, r.expected_at_y_one
        )
    });
    t.record(r.t_zero_holds(), || {
        format!(
            "N(y,0) = {} but expected {}",
            r.at_t_zero, r.expected_at_t_zero
        )
    });
    Ok(t)
}

fn lemma22(w: &Permutation, s: &Permutation, t: &mut Tally) -> Result<()> {
    let lam = lambda(w, s)?;
    let abs: BTreeSet<i64> = lam.entries().iter().map(|l| l.abs()).collect();
    let expected: BTreeSet<i64> = (2..=w.len() as i64).collect();
    t.record(abs == expected, || format!("w={w} σ={s}: λ={lam}"));
    Ok(())
}

fn lemma23(w: &Permutation, s: &Permutation, t: &mut Tally) -> Result<()> {
    let lam = lambda(w, s)?;
    for v in 2..=w.len() {
        let bp = last_bar_positions(w, s, v)?;
        let ok = match bp.merge_step().finite() {
            Some(j) => {
                let sign = if bp.ell_sigma < bp.r_sigma { 1 } else { -1 };
                lam.entries()[j - 1] == sign * v as i64
            }
            None => false,
        };
        t.record(ok, || {
            format!(
                "w={w} σ={s} v={v}: ℓσ={} rσ={} but λ={lam}",
                bp.ell_sigma, bp.r_sigma
            )
        });
    }
    Ok(())
}

fn ino_bounds(w: &Permutation, s: &Permutation, t: &mut Tally) -> Result<()> {
    let y = crate::braid::ino_set(w, s)?;
    let verdict = check_admissible(w, y);
    t.record(verdict.is_ok(), || {
        format!("w={w} σ={s}: {}", verdict.unwrap_err())
    });
    Ok(())
}

/// `σ` grouped by `Ino(w, σ)`.
fn fibers(
    w: &Permutation,
    sigmas: &[Permutation],
) -> Result<BTreeMap<ValueSet, BTreeSet<Permutation>>> {
    let mut out: BTreeMap<ValueSet, BTreeSet<Permutation>> = BTreeMap::new();
    for s in sigmas {
        out.entry(crate::braid::ino_set(w, s)?)
            .or_default()
            .insert(s.clone());
    }
    Ok(out)
}

fn lin_fiber(w: &Permutation, sigmas: &[Permutation], t: &mut Tally) -> Result<()> {
    let fib = fibers(w, sigmas)?;
    let empty = BTreeSet::new();
    for y in admissible_y(w) {
        let lin: BTreeSet<Permutation> = build_pwy(w, y)?.linear_extensions().collect();
        let expected = fib.get(&y).unwrap_or(&empty);
        t.record(&lin == expected, || {
            format!(
                "w={w} Y={y}: {} extensions, fiber has {}",
                lin.len(),
                expected.len()
            )
        });
    }
    Ok(())
}

fn partition(w: &Permutation, sigmas: &[Permutation], t: &mut Tally) -> Result<()> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut total = 0;
    for y in admissible_y(w) {
        for s in build_pwy(w, y)?.linear_extensions() {
            total += 1;
            seen.insert(s);
        }
    }
    t.record(total == sigmas.len() && seen.len() == sigmas.len(), || {
        format!(
            "w={w}: {total} extensions in total, {} distinct, expected {}",
            seen.len(),
            sigmas.len()
        )
    });
    Ok(())
}

fn prop26(w: &Permutation, sigmas: &[Permutation], t: &mut Tally) -> Result<()> {
    let mut cache: HashMap<ValueSet, LabeledPoset> = HashMap::new();
    for s in sigmas {
        let y = crate::braid::ino_set(w, s)?;
        let lp = match cache.entry(y) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(build_pwy(w, y)?),
        };
        let ok = match vertex_word(lp, s) {
            Ok(word) => word == lambda(w, s)?,
            Err(Error::NotLinearExtension(_)) => false,
            Err(e) => return Err(e),
        };
        t.record(ok, || {
            format!("w={w} σ={s} Y={y}: Λ(σ) differs from λ(w,σ)")
        });
    }
    Ok(())
}

fn eq23(lp: &LabeledPoset, ms: std::ops::RangeInclusive<usize>, t: &mut Tally) -> Result<()> {
    for m in ms {
        let direct = k_p_omega(lp.poset(), lp.labels(), m)?;
        let expanded = k_via_fundamental(lp.poset(), lp.labels(), m)?;
        t.record(direct == expanded, || {
            format!("w={} Y={} m={m}: {direct} != {expanded}", lp.w(), lp.y())
        });
    }
    Ok(())
}

/// Largest `n` and `m` accepted by [`qsym_check`].
pub const QSYM_CHECK_BUDGET: usize = 4;
pub const QSYM_VARIABLE_BUDGET: usize = 6;

/// `K_{P,ω}` against its fundamental expansion in `1..=m_max` variables for
/// every `P_{w,Y}` of size `n`.
pub fn qsym_check(n: usize, m_max: usize) -> Result<SuiteResult> {
    if n == 0 || m_max == 0 {
        return Err(Error::SizeMismatch(
            "qsym check needs n >= 1 and m >= 1".into(),
        ));
    }
    check_budget("qsym-check", n, QSYM_CHECK_BUDGET)?;
    check_budget("qsym-check variables", m_max, QSYM_VARIABLE_BUDGET)?;
    let tally = per_pwy(n, |lp, t| eq23(lp, 1..=m_max, t))?;
    Ok(SuiteResult {
        suite: "eq23".to_string(),
        n,
        checked: tally.checked,
        failed: tally.failed,
        failures: tally.failures,
    })
}

fn prop25(lp: &LabeledPoset, t: &mut Tally) -> Result<()> {
    for (k, c) in pwy_labeling_checks(lp).into_iter().enumerate() {
        t.record(c.holds(), || {
            format!("w={} Y={} comparison {}: {c:?}", lp.w(), lp.y(), k + 1)
        });
    }
    Ok(())
}

fn bijection(n: usize) -> Result<Tally> {
    let lattice = partition_lattice(n)?;
    let max_chains = lattice.poset().maximal_chains()?.count();
    let mut t = Tally::default();
    let mut image: HashSet<(Vec<usize>, PositionSet)> = HashSet::new();
    let mut pairs = 0usize;
    for w in all_permutations(n + 1)? {
        for s in all_permutations(n)? {
            pairs += 1;
            let (chain, ypos) = pair_to_flat_chain(&w, &s)?;
            let idx: Option<Vec<usize>> = chain.iter().map(|p| lattice.index_of(p)).collect();
            let Some(idx) = idx else {
                t.record(false, || format!("w={w} σ={s}: chain leaves Π_n"));
                continue;
            };
            let lam = lambda(&w, &s)?;
            let labels = lattice.chain_labels(&idx);
            let unsigned: Vec<usize> = lam
                .entries()
                .iter()
                .map(|l| l.unsigned_abs() as usize)
                .collect();
            let ino = lam.entries().iter().filter(|&&l| l > 0).count();
            t.record(
                labels.as_deref() == Some(&unsigned[..]) && ypos.len() == ino,
                || {
                    format!(
                        "w={w} σ={s}: chain labels {labels:?}, |λ|={unsigned:?}, #Y={}",
                        ypos.len()
                    )
                },
            );
            image.insert((idx, ypos));
        }
    }
    t.record(image.len() == pairs, || {
        format!("{pairs} pairs map onto only {} images", image.len())
    });
    t.record(image.len() == max_chains << n, || {
        format!(
            "{} images but {max_chains} chains × 2^{n} targets",
            image.len()
        )
    });
    Ok(t)
}

fn rlabeling(n: usize) -> Result<Tally> {
    let lattice = partition_lattice(n)?;
    let p = lattice.poset();
    let violations =
        p.r_labeling_violations(|a, b| lattice.edge_label(a, b).map_or(i64::MIN, |l| l as i64));
    let mut t = Tally::default();
    let size = p.size();
    let bad: HashMap<(usize, usize), usize> = violations
        .into_iter()
        .map(|(x, y, c)| ((x, y), c))
        .collect();
    for x in 0..size {
        for y in 0..size {
            if p.leq(x, y) {
                t.record(!bad.contains_key(&(x, y)), || {
                    format!(
                        "[{}, {}] has {} weakly increasing maximal chains",
                        lattice.element(x),
                        lattice.element(y),
                        bad[&(x, y)]
                    )
                });
            }
        }
    }
    Ok(t)
}
