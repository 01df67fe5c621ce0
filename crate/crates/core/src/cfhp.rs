//! The numerator `N_{B_n}(y, t)` of the coarse flag Hilbert–Poincaré series
//! of the braid arrangement, and the identities relating its three formulas.
//!
//! All three computations accumulate into dense integer tables and only build
//! a [`MultiPoly`] at the end. Work is split across the current rayon pool.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{partition_lattice, signed_labels_into};
use crate::error::{check_budget, Error, Result};
use crate::perms::{
    all_permutations, descent_set, eulerian_polynomial, word_ascent_set, Permutation, PositionSet,
    ValueSet,
};
use crate::poly::{pow_binomial, Monomial, MultiPoly, Variable};

pub const CHAINS_BUDGET: usize = 5;
pub const RLABELING_BUDGET: usize = 5;
pub const STATISTIC_BUDGET: usize = 6;
/// Largest `n` for the per-`w` identities, i.e. `w ∈ S_7`.
pub const IDENTITY_BUDGET: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Chains,
    #[serde(rename = "rlabeling")]
    RLabeling,
    Statistic,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Chains, Method::RLabeling, Method::Statistic];

    pub fn budget(self) -> usize {
        match self {
            Method::Chains => CHAINS_BUDGET,
            Method::RLabeling => RLABELING_BUDGET,
            Method::Statistic => STATISTIC_BUDGET,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Chains => "chains",
            Method::RLabeling => "rlabeling",
            Method::Statistic => "statistic",
        }
    }

    pub fn numerator(self, n: usize) -> Result<MultiPoly> {
        match self {
            Method::Chains => numerator_via_chains(n),
            Method::RLabeling => numerator_via_rlabeling(n),
            Method::Statistic => numerator_via_statistic(n),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

fn check_n(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::SizeMismatch(format!("{what} needs n >= 1")));
    }
    check_budget(what, n, max)
}

/// `table[i][j]` becomes the coefficient of `y^i t^j`.
fn bivariate(table: &[Vec<u64>]) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for (i, row) in table.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c != 0 {
                p.add_term(
                    Monomial::from_pairs([(Variable::Y, i as u32), (Variable::T, j as u32)]),
                    c.into(),
                );
            }
        }
    }
    p
}

fn add_tables(mut a: Vec<Vec<u64>>, b: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x += y;
        }
    }
    a
}

/// `Σ_C Poin_C(y) t^{#C} (1-t)^{n-#C}` over chains `C` of `Π_n` avoiding
/// the bottom, with `Poin_C` the product of the interval Poincaré
/// polynomials along `bottom < C_1 < ... < C_k < top`.
pub fn numerator_via_chains(n: usize) -> Result<MultiPoly> {
    check_n("numerator_via_chains", n, CHAINS_BUDGET)?;
    let lattice = partition_lattice(n)?;
    let p = lattice.poset();
    let size = p.size();
    let bottom = p.bottom()?;
    let top = p.top()?;

    // Dense Poincaré polynomial of every interval, indexed by y-degree.
    let mut poin: Vec<Vec<Vec<u64>>> = vec![vec![Vec::new(); size]; size];
    for (x, row) in poin.iter_mut().enumerate() {
        for (z, slot) in row.iter_mut().enumerate() {
            if p.leq(x, z) {
                let mut dense = vec![0u64; n + 1];
                for (mono, c) in p.interval_poincare(x, z, Variable::Y)?.terms() {
                    dense[mono.exponent(Variable::Y) as usize] = c.to_u64().ok_or_else(|| {
                        Error::InternalInvariant("negative Poincaré coefficient".into())
                    })?;
                }
                *slot = dense;
            }
        }
    }

    let chains: Vec<Vec<usize>> = p.chains_avoiding_bottom()?.collect();
    // by_size[k][d]: coefficient of y^d in Σ_{#C = k} Poin_C(y).
    let by_size = chains
        .par_iter()
        .fold(
            || vec![vec![0u64; n + 1]; n + 1],
            |mut acc, chain| {
                let mut prod = vec![0u64; n + 1];
                prod[0] = 1;
                let mut prev = bottom;
                for &z in chain.iter().chain(std::iter::once(&top)) {
                    prod = mul_dense(&prod, &poin[prev][z]);
                    prev = z;
                }
                for (d, c) in prod.into_iter().enumerate() {
                    acc[chain.len()][d] += c;
                }
                acc
            },
        )
        .reduce(|| vec![vec![0u64; n + 1]; n + 1], add_tables);

    let mut out = MultiPoly::zero();
    for (k, row) in by_size.iter().enumerate() {
        let poin_k: MultiPoly = row
            .iter()
            .enumerate()
            .map(|(d, &c)| MultiPoly::term(c, Monomial::from_pairs([(Variable::Y, d as u32)])))
            .sum();
        out += poin_k * pow_binomial(k as u32, (n - k) as u32);
    }
    Ok(out)
}

/// Product of dense polynomials, truncated to the length of `a`.
fn mul_dense(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if i + j < out.len() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `Σ_{M, Y} y^{#Y} t^{asc(λ(M, Y))}` over maximal chains `M` of `Π_n` and
/// position sets `Y ⊆ {1..n}`, where `λ(M, Y)` carries the edge labels of
/// `M` with a plus sign exactly at the positions in `Y`.
pub fn numerator_via_rlabeling(n: usize) -> Result<MultiPoly> {
    check_n("numerator_via_rlabeling", n, RLABELING_BUDGET)?;
    Ok(bivariate(&rlabeling_table(n, None)?))
}

/// The part of [`numerator_via_rlabeling`] coming from one position set `Y`.
pub fn rlabeling_contribution(n: usize, y: PositionSet) -> Result<MultiPoly> {
    check_n("rlabeling_contribution", n, RLABELING_BUDGET)?;
    if y.iter().any(|i| i == 0 || i > n) {
        return Err(Error::SizeMismatch(format!(
            "{y} is not a subset of 1..={n}"
        )));
    }
    Ok(bivariate(&rlabeling_table(n, Some(y))?))
}

fn rlabeling_table(n: usize, only: Option<PositionSet>) -> Result<Vec<Vec<u64>>> {
    let lattice = partition_lattice(n)?;
    let chains: Vec<Vec<usize>> = lattice.poset().maximal_chains()?.collect();
    let label_rows: Vec<Vec<i64>> = chains
        .iter()
        .map(|c| {
            lattice
                .chain_labels(c)
                .map(|l| l.into_iter().map(|x| x as i64).collect())
                .ok_or_else(|| {
                    Error::InternalInvariant("maximal chain with a non-cover step".into())
                })
        })
        .collect::<Result<_>>()?;
    let masks: Vec<u64> = match only {
        Some(y) => vec![y.bits() >> 1],
        None => (0..1u64 << n).collect(),
    };
    Ok(label_rows
        .par_iter()
        .fold(
            || vec![vec![0u64; n + 1]; n + 1],
            |mut acc, labels| {
                let mut signed = vec![0i64; n];
                for &mask in &masks {
                    for (i, &l) in labels.iter().enumerate() {
                        signed[i] = if mask >> i & 1 == 1 { l } else { -l };
                    }
                    let asc = signed.windows(2).filter(|p| p[0] < p[1]).count();
                    acc[mask.count_ones() as usize][asc] += 1;
                }
                acc
            },
        )
        .reduce(|| vec![vec![0u64; n + 1]; n + 1], add_tables))
}

struct SigmaInfo {
    oneline: Vec<usize>,
    des: PositionSet,
}

fn sigma_table(n: usize) -> Result<Vec<SigmaInfo>> {
    Ok(all_permutations(n)?
        .map(|s| SigmaInfo {
            des: descent_set(&s),
            oneline: s.oneline().to_vec(),
        })
        .collect())
}

/// Calls `f(σ, λ(w, σ), Ino bits, Asc(λ) bits)` for every `σ ∈ Sym(n)`.
fn for_each_sigma<F>(w: &[usize], sigmas: &[SigmaInfo], mut f: F)
where
    F: FnMut(&SigmaInfo, u64, u64),
{
    let mut lam = vec![0i64; w.len() - 1];
    for s in sigmas {
        signed_labels_into(w, &s.oneline, &mut lam);
        let mut ino = 0u64;
        for &l in &lam {
            if l > 0 {
                ino |= 1 << l;
            }
        }
        f(s, ino, word_ascent_set(&lam).bits());
    }
}

/// `Σ_{w ∈ S_{n+1}, σ ∈ Sym(n)} y^{ino(w,σ)} t^{des(σ)}`.
pub fn numerator_via_statistic(n: usize) -> Result<MultiPoly> {
    check_n("numerator_via_statistic", n, STATISTIC_BUDGET)?;
    let sigmas = sigma_table(n)?;
    let ws: Vec<Permutation> = all_permutations(n + 1)?.collect();
    let table = ws
        .par_iter()
        .fold(
            || vec![vec![0u64; n + 1]; n + 1],
            |mut acc, w| {
                for_each_sigma(w.oneline(), &sigmas, |s, ino, _| {
                    acc[ino.count_ones() as usize][s.des.len()] += 1;
                });
                acc
            },
        )
        .reduce(|| vec![vec![0u64; n + 1]; n + 1], add_tables);
    Ok(bivariate(&table))
}

fn check_w(w: &Permutation) -> Result<usize> {
    if w.len() < 2 {
        return Err(Error::SizeMismatch("w needs at least 2 entries".into()));
    }
    let n = w.len() - 1;
    check_budget("identity check", n, IDENTITY_BUDGET)?;
    Ok(n)
}

/// Counts of `(Ino, Asc(λ))` and `(Ino, Des(σ))` over `σ ∈ Sym(n)`, as bitmasks.
type RefinedCounts = HashMap<(u64, u64), u64>;

fn refined_counts(w: &[usize], sigmas: &[SigmaInfo]) -> (RefinedCounts, RefinedCounts) {
    let mut left = HashMap::new();
    let mut right = HashMap::new();
    for_each_sigma(w, sigmas, |s, ino, asc| {
        *left.entry((ino, asc)).or_insert(0) += 1;
        *right.entry((ino, s.des.bits())).or_insert(0) += 1;
    });
    (left, right)
}

fn refined_poly(counts: &RefinedCounts) -> MultiPoly {
    counts
        .iter()
        .map(|(&(ino, pos), &c)| {
            let ys = ValueSet::from_bits(ino)
                .iter()
                .map(|v| (Variable::Yi(v as u32), 1));
            let ts = PositionSet::from_bits(pos)
                .iter()
                .map(|i| (Variable::Ti(i as u32), 1));
            MultiPoly::term(c, Monomial::from_pairs(ys.chain(ts)))
        })
        .sum()
}

/// Both sides of the refined identity for one `w`:
/// `Σ_σ y^{Ino(w,σ)} t^{Asc(λ(w,σ))}` and `Σ_σ y^{Ino(w,σ)} t^{Des(σ)}`,
/// with `y_v` indexed by label value and `t_i` by position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedSides {
    pub w: Permutation,
    pub ascent_side: MultiPoly,
    pub descent_side: MultiPoly,
}

impl RefinedSides {
    pub fn holds(&self) -> bool {
        self.ascent_side == self.descent_side
    }
}

pub fn refined_sides(w: &Permutation) -> Result<RefinedSides> {
    let n = check_w(w)?;
    let (left, right) = refined_counts(w.oneline(), &sigma_table(n)?);
    Ok(RefinedSides {
        w: w.clone(),
        ascent_side: refined_poly(&left),
        descent_side: refined_poly(&right),
    })
}

pub fn refined_identity_check(w: &Permutation) -> Result<bool> {
    let n = check_w(w)?;
    let (left, right) = refined_counts(w.oneline(), &sigma_table(n)?);
    Ok(left == right)
}

/// Replaces every `y_v` by `y` and every `t_i` by `t`.
pub fn specialize(p: &MultiPoly) -> MultiPoly {
    p.terms()
        .map(|(mono, c)| {
            let (mut ye, mut te) = (0, 0);
            for &(v, e) in mono.factors() {
                match v {
                    Variable::Y | Variable::Yi(_) => ye += e,
                    Variable::T | Variable::Ti(_) => te += e,
                }
            }
            MultiPoly::term(
                c.clone(),
                Monomial::from_pairs([(Variable::Y, ye), (Variable::T, te)]),
            )
        })
        .sum()
}

/// Both sides of the bivariate identity for one `w`:
/// `Σ_σ y^{ino} t^{asc(λ)}` and `Σ_σ y^{ino} t^{des(σ)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSides {
    pub w: Permutation,
    pub ascent_side: MultiPoly,
    pub descent_side: MultiPoly,
}

impl LocalSides {
    pub fn holds(&self) -> bool {
        self.ascent_side == self.descent_side
    }
}

fn local_tables(w: &[usize], sigmas: &[SigmaInfo], n: usize) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
    let mut left = vec![vec![0u64; n + 1]; n + 1];
    let mut right = vec![vec![0u64; n + 1]; n + 1];
    for_each_sigma(w, sigmas, |s, ino, asc| {
        let i = ino.count_ones() as usize;
        left[i][asc.count_ones() as usize] += 1;
        right[i][s.des.len()] += 1;
    });
    (left, right)
}

pub fn local_sides(w: &Permutation) -> Result<LocalSides> {
    let n = check_w(w)?;
    let (left, right) = local_tables(w.oneline(), &sigma_table(n)?, n);
    Ok(LocalSides {
        w: w.clone(),
        ascent_side: bivariate(&left),
        descent_side: bivariate(&right),
    })
}

pub fn local_identity_check(w: &Permutation) -> Result<bool> {
    let n = check_w(w)?;
    let (left, right) = local_tables(w.oneline(), &sigma_table(n)?, n);
    Ok(left == right)
}

/// Result of checking an identity for every `w ∈ S_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: usize,
    pub checked: usize,
    pub failures: Vec<Permutation>,
    /// `Σ_w` of the descent side, specialized to `y, t`.
    pub specialized_total: MultiPoly,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn sweep<F>(n: usize, check: F) -> Result<SweepReport>
where
    F: Fn(&[usize], &[SigmaInfo]) -> (bool, Vec<Vec<u64>>) + Sync,
{
    check_n("identity sweep", n, IDENTITY_BUDGET)?;
    let sigmas = sigma_table(n)?;
    let ws: Vec<Permutation> = all_permutations(n + 1)?.collect();
    let results: Vec<(bool, Vec<Vec<u64>>)> =
        ws.par_iter().map(|w| check(w.oneline(), &sigmas)).collect();
    let mut failures = Vec::new();
    let mut total = vec![vec![0u64; n + 1]; n + 1];
    for (w, (ok, table)) in ws.iter().zip(results) {
        if !ok {
            failures.push(w.clone());
        }
        total = add_tables(total, table);
    }
    Ok(SweepReport {
        n,
        checked: ws.len(),
        failures,
        specialized_total: bivariate(&total),
    })
}

/// The refined identity for every `w ∈ S_{n+1}`.
pub fn refined_identity_sweep(n: usize) -> Result<SweepReport> {
    sweep(n, |w, sigmas| {
        let (left, right) = refined_counts(w, sigmas);
        let mut table = vec![vec![0u64; n + 1]; n + 1];
        for (&(ino, des), &c) in &right {
            table[ino.count_ones() as usize][des.count_ones() as usize] += c;
        }
        (left == right, table)
    })
}

/// The bivariate identity for every `w ∈ S_{n+1}`.
pub fn local_identity_sweep(n: usize) -> Result<SweepReport> {
    sweep(n, |w, sigmas| {
        let (left, right) = local_tables(w, sigmas, n);
        (left == right, right)
    })
}

/// `N(1, t)` against `(n+1)! E_n(t)` and `N(y, 0)` against `Π_{k=1}^n (1 + ky)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub n: usize,
    pub at_y_one: MultiPoly,
    pub expected_at_y_one: MultiPoly,
    pub at_t_zero: MultiPoly,
    pub expected_at_t_zero: MultiPoly,
}

impl ClosedFormReport {
    pub fn y_one_holds(&self) -> bool {
        self.at_y_one == self.expected_at_y_one
    }

    pub fn t_zero_holds(&self) -> bool {
        self.at_t_zero == self.expected_at_t_zero
    }

    pub fn holds(&self) -> bool {
        self.y_one_holds() && self.t_zero_holds()
    }
}

/// `(n+1)! E_n(t)`.
pub fn expected_at_y_one(n: usize) -> Result<MultiPoly> {
    let fact: u64 = (1..=n as u64 + 1).product();
    Ok(eulerian_polynomial(n)?.scale(&fact.into()))
}

/// `Π_{k=1}^n (1 + ky)`.
pub fn expected_at_t_zero(n: usize) -> MultiPoly {
    (1..=n as i64)
        .map(|k| MultiPoly::one() + MultiPoly::var(Variable::Y).scale(&k.into()))
        .fold(MultiPoly::one(), |acc, f| acc * f)
}

/// Closed-form checks against a numerator computed elsewhere.
pub fn closed_form_report(n: usize, numerator: &MultiPoly) -> Result<ClosedFormReport> {
    Ok(ClosedFormReport {
        n,
        at_y_one: numerator.substitute_values(&[(Variable::Y, 1)]),
        expected_at_y_one: expected_at_y_one(n)?,
        at_t_zero: numerator.substitute_values(&[(Variable::T, 0)]),
        expected_at_t_zero: expected_at_t_zero(n),
    })
}

pub fn closed_form_checks(n: usize) -> Result<ClosedFormReport> {
    closed_form_report(n, &numerator_via_statistic(n)?)
}

/// The numerator by all three methods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumeratorReport {
    pub n: usize,
    pub poly_chains: MultiPoly,
    pub poly_rlabel: MultiPoly,
    pub poly_stat: MultiPoly,
    pub agree: bool,
    /// Wall time per method in seconds. Left out of serialized output unless set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_seconds: Option<BTreeMap<String, f64>>,
}

impl NumeratorReport {
    pub fn compute(n: usize) -> Result<Self> {
        for m in Method::ALL {
            check_n("numerator", n, m.budget())?;
        }
        let mut timing = BTreeMap::new();
        let mut polys = Vec::new();
        for m in Method::ALL {
            let start = Instant::now();
            polys.push(m.numerator(n)?);
            timing.insert(m.name().to_string(), start.elapsed().as_secs_f64());
        }
        let poly_stat = polys.pop().unwrap_or_default();
        let poly_rlabel = polys.pop().unwrap_or_default();
        let poly_chains = polys.pop().unwrap_or_default();
        Ok(NumeratorReport {
            n,
            agree: poly_chains == poly_rlabel && poly_rlabel == poly_stat,
            poly_chains,
            poly_rlabel,
            poly_stat,
            timing_seconds: Some(timing),
        })
    }

    pub fn without_timing(mut self) -> Self {
        self.timing_seconds = None;
        self
    }
}
