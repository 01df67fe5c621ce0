//! Quasisymmetric generating functions truncated to finitely many variables.
//!
//! Both sides of `K_{P,ω} = Σ_{σ ∈ Lin(P)} L_{Des ω(σ)}` are homogeneous of
//! degree `|P|`, so agreement in `m = |P|` variables already implies equality
//! of the full series. Values of reverse `(P, ω)`-partitions are taken in
//! `{1, ..., m}`.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perms::{word_descent_set, Permutation, PositionSet};
use crate::poly::{Monomial, MultiPoly, Variable};
use crate::poset::FinitePoset;
use crate::pwy::LabeledPoset;

/// A homogeneous series of degree `degree` in `x_1, ..., x_m`, stored as
/// exponent vectors with positive coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedQSym {
    m: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<u32>, u64>,
}

impl TruncatedQSym {
    pub fn zero(m: usize, degree: usize) -> Self {
        TruncatedQSym {
            m,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.coeffs
    }

    pub fn coefficient(&self, exponents: &[u32]) -> u64 {
        self.coeffs.get(exponents).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of distinct monomials.
    pub fn num_monomials(&self) -> usize {
        self.coeffs.len()
    }

    /// Value at `x_1 = ... = x_m = 1`.
    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }

    /// Adds `count · x^exponents`.
    ///
    /// # Panics
    /// If the exponent vector has the wrong length or degree.
    pub fn add_monomial(&mut self, exponents: Vec<u32>, count: u64) {
        assert_eq!(exponents.len(), self.m, "exponent vector length");
        assert_eq!(
            exponents.iter().map(|&e| e as usize).sum::<usize>(),
            self.degree,
            "monomial degree"
        );
        if count > 0 {
            *self.coeffs.entry(exponents).or_insert(0) += count;
        }
    }

    /// The same series as a [`MultiPoly`] in variables `x1, ..., xm`, which
    /// are encoded as [`Variable::Ti`].
    pub fn to_poly(&self) -> MultiPoly {
        self.coeffs
            .iter()
            .map(|(exps, &c)| {
                let mono = Monomial::from_pairs(
                    exps.iter()
                        .enumerate()
                        .map(|(i, &e)| (Variable::Ti(i as u32 + 1), e)),
                );
                MultiPoly::term(c, mono)
            })
            .sum()
    }
}

impl AddAssign<&TruncatedQSym> for TruncatedQSym {
    fn add_assign(&mut self, rhs: &TruncatedQSym) {
        assert_eq!((self.m, self.degree), (rhs.m, rhs.degree));
        for (e, &c) in &rhs.coeffs {
            *self.coeffs.entry(e.clone()).or_insert(0) += c;
        }
    }
}

impl fmt::Display for TruncatedQSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(exps, &c)| {
                let mut factors: Vec<String> = Vec::new();
                if c != 1 {
                    factors.push(c.to_string());
                }
                for (i, &e) in exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("x{}", i + 1)),
                        _ => factors.push(format!("x{}^{e}", i + 1)),
                    }
                }
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join("*")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::SizeMismatch("need at least one variable".into()));
    }
    Ok(())
}

/// `L_S` in `m` variables: the sum of `x_{i_1} ⋯ x_{i_n}` over
/// `1 ≤ i_1 ≤ ... ≤ i_n ≤ m` with `i_k < i_{k+1}` whenever `k ∈ S`.
pub fn fundamental_l(s: PositionSet, n: usize, m: usize) -> Result<TruncatedQSym> {
    check_m(m)?;
    if let Some(k) = s.iter().find(|&k| k == 0 || k >= n) {
        return Err(Error::SizeMismatch(format!(
            "descent position {k} outside 1..{n}"
        )));
    }
    let mut out = TruncatedQSym::zero(m, n);
    let mut exps = vec![0u32; m];
    fn go(
        k: usize,
        prev: usize,
        s: PositionSet,
        n: usize,
        m: usize,
        exps: &mut Vec<u32>,
        out: &mut TruncatedQSym,
    ) {
        if k > n {
            out.add_monomial(exps.clone(), 1);
            return;
        }
        let lo = if k > 1 && s.contains(k - 1) {
            prev + 1
        } else {
            prev.max(1)
        };
        for v in lo..=m {
            exps[v - 1] += 1;
            go(k + 1, v, s, n, m, exps, out);
            exps[v - 1] -= 1;
        }
    }
    go(1, 1, s, n, m, &mut exps, &mut out);
    Ok(out)
}

fn check_labeling(p: &FinitePoset, omega: &[i64]) -> Result<()> {
    if omega.len() != p.size() {
        return Err(Error::SizeMismatch(format!(
            "{} labels for a poset of size {}",
            omega.len(),
            p.size()
        )));
    }
    let distinct: BTreeSet<i64> = omega.iter().copied().collect();
    if distinct.len() != omega.len() {
        return Err(Error::InvalidLabeling(format!(
            "{omega:?} is not injective"
        )));
    }
    Ok(())
}

/// `K_{P,ω}` in `m` variables, by enumerating every reverse `(P, ω)`-partition
/// `f: P → {1, ..., m}`: `a ≺ b` forces `f(a) ≤ f(b)`, strictly when
/// `ω(a) > ω(b)`. `omega[x]` labels element `x`.
pub fn k_p_omega(p: &FinitePoset, omega: &[i64], m: usize) -> Result<TruncatedQSym> {
    check_m(m)?;
    check_labeling(p, omega)?;
    let n = p.size();
    let mut out = TruncatedQSym::zero(m, n);
    let order: Vec<usize> = match p.linear_extensions().next() {
        Some(sigma) => sigma.oneline().iter().map(|&k| k - 1).collect(),
        None => Vec::new(),
    };
    let mut f = vec![0usize; n];
    let mut exps = vec![0u32; m];

    struct Ctx<'a> {
        p: &'a FinitePoset,
        omega: &'a [i64],
        order: &'a [usize],
        m: usize,
    }
    fn go(ctx: &Ctx, k: usize, f: &mut [usize], exps: &mut Vec<u32>, out: &mut TruncatedQSym) {
        let Some(&x) = ctx.order.get(k) else {
            out.add_monomial(exps.clone(), 1);
            return;
        };
        let lo = ctx
            .p
            .lower_covers(x)
            .iter()
            .map(|&c| f[c] + usize::from(ctx.omega[c] > ctx.omega[x]))
            .max()
            .unwrap_or(1)
            .max(1);
        for v in lo..=ctx.m {
            f[x] = v;
            exps[v - 1] += 1;
            go(ctx, k + 1, f, exps, out);
            exps[v - 1] -= 1;
        }
    }
    let ctx = Ctx {
        p,
        omega,
        order: &order,
        m,
    };
    go(&ctx, 0, &mut f, &mut exps, &mut out);
    Ok(out)
}

/// `Σ_{σ ∈ Lin(P)} L_{Des ω(σ)}` in `m` variables.
pub fn k_via_fundamental(p: &FinitePoset, omega: &[i64], m: usize) -> Result<TruncatedQSym> {
    check_m(m)?;
    check_labeling(p, omega)?;
    let n = p.size();
    let mut out = TruncatedQSym::zero(m, n);
    let mut cache: HashMap<PositionSet, TruncatedQSym> = HashMap::new();
    for sigma in p.linear_extensions() {
        let des = word_descent_set(&relabel(&sigma, omega));
        let l = match cache.entry(des) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(fundamental_l(des, n, m)?),
        };
        out += &*l;
    }
    Ok(out)
}

/// `ω(σ) = (ω(σ(1)), ..., ω(σ(n)))`, with `omega[k - 1]` labeling `k`.
fn relabel(sigma: &Permutation, omega: &[i64]) -> Vec<i64> {
    sigma.oneline().iter().map(|&k| omega[k - 1]).collect()
}

/// `Σ_{σ ∈ A} Π_{i ∈ Des ω(σ)} t_i`, using `Des(σ)` when `omega` is `None`.
pub fn descent_generating_function<'a, I>(perms: I, omega: Option<&[i64]>) -> MultiPoly
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let mut counts: HashMap<PositionSet, u64> = HashMap::new();
    for sigma in perms {
        let des = match omega {
            Some(o) => word_descent_set(&relabel(sigma, o)),
            None => word_descent_set(sigma.oneline()),
        };
        *counts.entry(des).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(des, c)| {
            MultiPoly::term(
                c,
                Monomial::from_pairs(des.iter().map(|i| (Variable::Ti(i as u32), 1))),
            )
        })
        .sum()
}

/// Ranks of `labels` among themselves, as `1..=len`.
pub fn standardize(labels: &[i64]) -> Vec<i64> {
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    labels
        .iter()
        .map(|l| sorted.binary_search(l).map(|r| r as i64 + 1).unwrap_or(0))
        .collect()
}

/// Whether `ω` and `ω'` order the two ends of every cover the same way.
pub fn same_cover_orders(p: &FinitePoset, omega: &[i64], omega2: &[i64]) -> bool {
    p.covers()
        .iter()
        .all(|&(a, b)| (omega[a] < omega[b]) == (omega2[a] < omega2[b]))
}

/// Outcome of comparing descent statistics of two labelings over `Lin(P)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelingComparison {
    pub same_cover_orders: bool,
    pub equal_generating_functions: bool,
}

impl LabelingComparison {
    pub fn holds(&self) -> bool {
        self.same_cover_orders && self.equal_generating_functions
    }
}

/// Compares the descent-set generating functions over `Lin(P)` of two
/// labelings that are required to agree on covers.
pub fn compare_labelings(p: &FinitePoset, omega: &[i64], omega2: &[i64]) -> LabelingComparison {
    let lin: Vec<Permutation> = p.linear_extensions().collect();
    LabelingComparison {
        same_cover_orders: same_cover_orders(p, omega, omega2),
        equal_generating_functions: descent_generating_function(&lin, Some(omega))
            == descent_generating_function(&lin, Some(omega2)),
    }
}

/// The two comparisons made for `P_{w,Y}`: `Λ` against its standardization,
/// and the natural labeling against `-Λ`. The second one equates the
/// distribution of `Des(σ)` with that of `Asc(Λ(σ))` over `Lin(P_{w,Y})`.
pub fn pwy_labeling_checks(lp: &LabeledPoset) -> [LabelingComparison; 2] {
    let lambda = lp.labels();
    let natural: Vec<i64> = (1..=lambda.len() as i64).collect();
    let negated: Vec<i64> = lambda.iter().map(|l| -l).collect();
    [
        compare_labelings(lp.poset(), lambda, &standardize(lambda)),
        compare_labelings(lp.poset(), &natural, &negated),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwy::build_pwy;

    fn pos(v: &[usize]) -> PositionSet {
        v.iter().copied().collect()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn fundamental_examples() {
        let l = fundamental_l(PositionSet::empty(), 2, 2).unwrap();
        assert_eq!(l.to_string(), "x1^2 + x1*x2 + x2^2");
        assert_eq!(l.num_monomials(), 3);
        let l = fundamental_l(pos(&[1]), 2, 2).unwrap();
        assert_eq!(l.to_string(), "x1*x2");
        assert!(fundamental_l(pos(&[1, 2, 3]), 4, 3).unwrap().is_zero());
        assert!(fundamental_l(pos(&[4]), 4, 3).is_err());
        assert!(fundamental_l(PositionSet::empty(), 2, 0).is_err());
    }

    #[test]
    fn fundamental_counts_are_binomial() {
        for n in 1..=5u64 {
            for m in 1..=5u64 {
                let l = fundamental_l(PositionSet::empty(), n as usize, m as usize).unwrap();
                assert_eq!(l.total(), binomial(n + m - 1, n));
                // strict at every position: choose n distinct values
                let all: PositionSet = (1..n as usize).collect();
                let l = fundamental_l(all, n as usize, m as usize).unwrap();
                assert_eq!(l.total(), if m >= n { binomial(m, n) } else { 0 });
            }
        }
    }

    #[test]
    fn k_p_omega_examples() {
        let antichain = FinitePoset::new(2, []).unwrap();
        let k = k_p_omega(&antichain, &[1, 2], 2).unwrap();
        assert_eq!(k.to_string(), "x1^2 + 2*x1*x2 + x2^2");
        assert_eq!(k_via_fundamental(&antichain, &[1, 2], 2).unwrap(), k);

        let chain = FinitePoset::new(2, [(0, 1)]).unwrap();
        assert_eq!(k_p_omega(&chain, &[1, 2], 2).unwrap().num_monomials(), 3);
        assert_eq!(k_p_omega(&chain, &[2, 1], 2).unwrap().to_string(), "x1*x2");
        assert!(k_p_omega(&chain, &[1, 1], 2).is_err());
        assert!(k_p_omega(&chain, &[1], 2).is_err());
    }

    #[test]
    fn eq23_on_pwy_examples() {
        for (w, y, m) in [
            ("321", vec![], 3),
            ("215463", vec![3, 5, 6], 2),
            ("215463", vec![3, 5, 6], 5),
        ] {
            let y = y.into_iter().collect();
            let lp = build_pwy(&w.parse().unwrap(), y).unwrap();
            let a = k_p_omega(lp.poset(), lp.labels(), m).unwrap();
            let b = k_via_fundamental(lp.poset(), lp.labels(), m).unwrap();
            assert_eq!(a, b, "w={w}");
            assert!(!a.is_zero());
        }
    }

    #[test]
    fn descent_generating_function_examples() {
        let a: Vec<Permutation> = vec!["12".parse().unwrap(), "21".parse().unwrap()];
        let t1 = MultiPoly::var(Variable::Ti(1));
        assert_eq!(
            descent_generating_function(&a, None),
            MultiPoly::one() + t1.clone()
        );
        assert_eq!(descent_generating_function(&[], None), MultiPoly::zero());
        assert_eq!(
            descent_generating_function(&a, Some(&[2, 1])),
            MultiPoly::one() + t1
        );
    }

    #[test]
    fn labeling_checks_on_running_example() {
        let lp = build_pwy(&"215463".parse().unwrap(), [3, 5, 6].into_iter().collect()).unwrap();
        assert_eq!(standardize(lp.labels()), vec![2, 4, 3, 5, 1]);
        for c in pwy_labeling_checks(&lp) {
            assert!(c.holds(), "{c:?}");
        }
        // A labeling that disagrees on a cover is detected.
        let c = compare_labelings(lp.poset(), lp.labels(), &[1, 2, 3, 4, 5]);
        assert!(!c.same_cover_orders);
    }

    #[test]
    fn to_poly_preserves_total() {
        let l = fundamental_l(pos(&[2]), 3, 3).unwrap();
        assert_eq!(
            l.to_poly().coefficient_sum(),
            num_bigint::BigInt::from(l.total())
        );
    }
}
