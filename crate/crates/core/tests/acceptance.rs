//! Acceptance checks, one line per criterion. Exits nonzero if any fails.
//!
//! Exact comparisons everywhere; the only tolerances are wall-clock limits.

use std::time::{Duration, Instant};

use braid_cfhp::cfhp::{
    closed_form_report, local_identity_sweep, numerator_via_chains, numerator_via_rlabeling,
    numerator_via_statistic, refined_identity_sweep,
};
use braid_cfhp::verify::Suite;
use braid_cfhp::{Monomial, MultiPoly, Variable};

type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn yt(coeffs: &[&[i64]]) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for (j, row) in coeffs.iter().enumerate() {
        for (i, &c) in row.iter().enumerate() {
            p.add_term(
                Monomial::from_pairs([(Variable::Y, i as u32), (Variable::T, j as u32)]),
                c.into(),
            );
        }
    }
    p
}

/// Eulerian numbers by the recurrence `A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1)`.
fn eulerian_row(n: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for m in 2..=n {
        let mut next = vec![0i64; m];
        for k in 0..m {
            let keep = if k < row.len() {
                (k as i64 + 1) * row[k]
            } else {
                0
            };
            let grow = if k >= 1 {
                (m - k) as i64 * row[k - 1]
            } else {
                0
            };
            next[k] = keep + grow;
        }
        row = next;
    }
    row
}

/// Coefficients of `Π_{k=1}^n (1 + ky)`.
fn product_row(n: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for k in 1..=n as i64 {
        let mut next = vec![0i64; row.len() + 1];
        for (i, &c) in row.iter().enumerate() {
            next[i] += c;
            next[i + 1] += k * c;
        }
        row = next;
    }
    row
}

fn run_suites(suites: &[Suite], ns: std::ops::RangeInclusive<usize>) -> Outcome {
    let mut checked = 0;
    for n in ns {
        for &s in suites {
            match s.run(n) {
                Ok(r) if r.passed() => checked += r.checked,
                Ok(r) => {
                    return fail(format!(
                        "{} n={n}: {} of {} failed, e.g. {:?}",
                        r.suite,
                        r.failed,
                        r.checked,
                        r.failures.first()
                    ))
                }
                Err(e) => return fail(format!("{s} n={n}: {e}")),
            }
        }
    }
    pass(format!("{checked} checks"))
}

fn criterion_1() -> Outcome {
    let expected = yt(&[&[1, 3, 2], &[2, 3, 1]]);
    for (name, p) in [
        ("chains", numerator_via_chains(2)),
        ("rlabeling", numerator_via_rlabeling(2)),
        ("statistic", numerator_via_statistic(2)),
    ] {
        match p {
            Ok(p) if p == expected => {}
            Ok(p) => return fail(format!("{name} gave {p}")),
            Err(e) => return fail(format!("{name}: {e}")),
        }
    }
    pass(format!(
        "all three = {}",
        expected.to_text_grouped(Variable::T)
    ))
}

fn criterion_2() -> Outcome {
    for n in 1..=5 {
        let polys = [
            numerator_via_chains(n),
            numerator_via_rlabeling(n),
            numerator_via_statistic(n),
        ];
        let polys: Result<Vec<_>, _> = polys.into_iter().collect();
        match polys {
            Ok(p) if p[0] == p[1] && p[1] == p[2] => {}
            Ok(p) => return fail(format!("n={n}: {} | {} | {}", p[0], p[1], p[2])),
            Err(e) => return fail(format!("n={n}: {e}")),
        }
    }
    pass("n=1..5 structurally equal")
}

fn identity_sweeps(refined: bool, ns: std::ops::RangeInclusive<usize>) -> Outcome {
    let mut total = 0;
    for n in ns {
        let report = if refined {
            refined_identity_sweep(n)
        } else {
            local_identity_sweep(n)
        };
        match report {
            Ok(r) if r.passed() => total += r.checked,
            Ok(r) => return fail(format!("n={n}: fails for w={:?}", r.failures.first())),
            Err(e) => return fail(format!("n={n}: {e}")),
        }
    }
    pass(format!("{total} permutations w"))
}

fn criterion_5() -> Outcome {
    for n in 1..=5 {
        let numerator = match numerator_via_statistic(n) {
            Ok(p) => p,
            Err(e) => return fail(format!("n={n}: {e}")),
        };
        let fact: i64 = (1..=n as i64 + 1).product();
        let e_row: Vec<i64> = eulerian_row(n).into_iter().map(|c| c * fact).collect();
        let at_y1 = yt(&e_row.iter().map(std::slice::from_ref).collect::<Vec<_>>());
        let at_t0 = yt(&[&product_row(n)]);
        if numerator.substitute_values(&[(Variable::Y, 1)]) != at_y1 {
            return fail(format!("n={n}: N(1,t) != {at_y1}"));
        }
        if numerator.substitute_values(&[(Variable::T, 0)]) != at_t0 {
            return fail(format!("n={n}: N(y,0) != {at_t0}"));
        }
        // The library's own closed-form report must agree with the oracle.
        match closed_form_report(n, &numerator) {
            Ok(r) if r.holds() && r.expected_at_y_one == at_y1 && r.expected_at_t_zero == at_t0 => {
            }
            Ok(r) => return fail(format!("n={n}: report {r:?}")),
            Err(e) => return fail(format!("n={n}: {e}")),
        }
    }
    pass("n=1..5 exact")
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "golden numerator n=2, three methods",
            Duration::from_millis(100),
            Box::new(criterion_1),
        ),
        (
            "three-way agreement n=1..5",
            Duration::from_secs(60),
            Box::new(criterion_2),
        ),
        (
            "refined identity for all w, n=1..5",
            Duration::from_secs(120),
            Box::new(|| identity_sweeps(true, 1..=5)),
        ),
        (
            "bivariate identity for all w, n=1..6",
            Duration::from_secs(600),
            Box::new(|| identity_sweeps(false, 1..=6)),
        ),
        (
            "N(1,t) and N(y,0) closed forms, n=1..5",
            Duration::from_secs(60),
            Box::new(criterion_5),
        ),
        (
            "max-of-minima and sign/position lemmas, n=1..5",
            Duration::from_secs(120),
            Box::new(|| run_suites(&[Suite::Lemma22, Suite::Lemma23], 1..=5)),
        ),
        (
            "P_(w,Y): fibers, partition, vertex words, covers, n=1..5",
            Duration::from_secs(120),
            Box::new(|| {
                run_suites(
                    &[
                        Suite::LinFiber,
                        Suite::Partition,
                        Suite::Prop26,
                        Suite::Lemma27,
                    ],
                    1..=5,
                )
            }),
        ),
        (
            "K_(P,omega) fundamental expansion, n=1..4, m=1..4",
            Duration::from_secs(60),
            Box::new(|| run_suites(&[Suite::Eq23], 1..=4)),
        ),
        (
            "pairs to (flat chain, positions) bijection, n=1..4",
            Duration::from_secs(60),
            Box::new(|| run_suites(&[Suite::Bijection], 1..=4)),
        ),
        (
            "R-labeling of the partition lattice, n=1..4",
            Duration::from_secs(60),
            Box::new(|| run_suites(&[Suite::RLabeling], 1..=4)),
        ),
    ];

    let mut failures = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let ok = outcome.ok && in_time;
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({}; {:.3}s of {:.1}s{})",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            outcome.detail,
            elapsed.as_secs_f64(),
            limit.as_secs_f64(),
            if in_time { "" } else { ", over time limit" }
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
