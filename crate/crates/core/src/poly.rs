//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Every generating function in the crate is a [`MultiPoly`]: the bivariate
//! numerator in `y, t`, Eulerian polynomials in `t`, and the refined
//! polynomials in `y_i, t_i`. Terms are kept in a `BTreeMap` keyed by a
//! canonical [`Monomial`], so two polynomials are equal exactly when their
//! term maps are equal.
//!
//! Three serializations are provided: a canonical text form, LaTeX, and JSON
//! (a list of `{coeff, exponents}` records, see `docs/json.md`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An indeterminate.
///
/// The derived order is the canonical variable order used everywhere:
/// `y < t < y_1 < y_2 < ... < t_1 < t_2 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    Y,
    T,
    /// Refined `y_i`, indexed by a label value.
    Yi(u32),
    /// Refined `t_i`, indexed by a position.
    Ti(u32),
}

impl Variable {
    pub fn latex(&self) -> String {
        match self {
            Variable::Y => "y".into(),
            Variable::T => "t".into(),
            Variable::Yi(i) => format!("y_{{{i}}}"),
            Variable::Ti(i) => format!("t_{{{i}}}"),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Y => f.write_str("y"),
            Variable::T => f.write_str("t"),
            Variable::Yi(i) => write!(f, "y{i}"),
            Variable::Ti(i) => write!(f, "t{i}"),
        }
    }
}

impl FromStr for Variable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown variable {s:?}"));
        match s {
            "y" => Ok(Variable::Y),
            "t" => Ok(Variable::T),
            _ => {
                let (head, idx) = s.split_at(1);
                let idx: u32 = idx.trim_start_matches('_').parse().map_err(|_| bad())?;
                if idx == 0 {
                    return Err(bad());
                }
                match head {
                    "y" => Ok(Variable::Yi(idx)),
                    "t" => Ok(Variable::Ti(idx)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// A product of variables with positive exponents, sorted by variable.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs, merging
    /// repeated variables and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (Variable, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn without(&self, v: Variable) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Display order: ascending total degree, then descending exponent
    /// vector in canonical variable order (so `y` precedes `t`).
    pub fn graded_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&(a, ea)), Some(&(b, eb))) => match a.cmp(&b) {
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => {
                            if ea != eb {
                                return eb.cmp(&ea);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }

    fn render(&self, latex: bool) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| {
                let name = if latex { v.latex() } else { v.to_string() };
                match (e, latex) {
                    (1, _) => name,
                    (e, true) => format!("{name}^{{{e}}}"),
                    (e, false) => format!("{name}^{e}"),
                }
            })
            .collect();
        if latex {
            parts.join(" ")
        } else {
            parts.join("*")
        }
    }
}

/// Sparse polynomial over ℤ. No stored coefficient is ever zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Variable) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term<C: Into<BigInt>>(c: C, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in storage order (sorted by [`Monomial`]'s derived order).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in display order, see [`Monomial::graded_cmp`].
    pub fn graded_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.graded_cmp(b.0));
        v
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Simultaneous substitution. Unbound variables pass through unchanged.
    pub fn substitute(&self, bindings: &BTreeMap<Variable, MultiPoly>) -> MultiPoly {
        let mut power_cache: BTreeMap<(Variable, u32), MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut free = Vec::new();
            let mut prod = MultiPoly::constant(c.clone());
            for &(v, e) in m.factors() {
                match bindings.get(&v) {
                    Some(p) => {
                        let pe = power_cache.entry((v, e)).or_insert_with(|| p.pow(e));
                        prod = &prod * &*pe;
                    }
                    None => free.push((v, e)),
                }
            }
            let free = Monomial(free);
            for (pm, pc) in prod.terms {
                out.add_term(pm.mul(&free), pc);
            }
        }
        out
    }

    /// Convenience for substituting constants.
    pub fn substitute_values(&self, values: &[(Variable, i64)]) -> MultiPoly {
        let bindings = values
            .iter()
            .map(|&(v, c)| (v, MultiPoly::constant(c)))
            .collect();
        self.substitute(&bindings)
    }

    /// Splits into `Σ_k coeff_k · var^k`, keyed by `k`.
    pub fn collect_by(&self, var: Variable) -> BTreeMap<u32, MultiPoly> {
        let mut groups: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups
                .entry(m.exponent(var))
                .or_default()
                .add_term(m.without(var), c.clone());
        }
        groups
    }

    pub fn to_text(&self) -> String {
        render_flat(self, false)
    }

    pub fn to_latex(&self) -> String {
        render_flat(self, true)
    }

    /// Text grouped by powers of `var`, e.g. `(1+3y+2y^2) + (2+3y+y^2)*t`.
    pub fn to_text_grouped(&self, var: Variable) -> String {
        render_grouped(self, var, false)
    }

    pub fn to_latex_grouped(&self, var: Variable) -> String {
        render_grouped(self, var, true)
    }
}

/// `t^k (1-t)^m`, expanded.
pub fn pow_binomial(k: u32, m: u32) -> MultiPoly {
    let mut out = MultiPoly::zero();
    let mut binom = BigInt::one();
    for j in 0..=m {
        let c = if j % 2 == 0 {
            binom.clone()
        } else {
            -binom.clone()
        };
        out.add_term(Monomial::from_pairs([(Variable::T, k + j)]), c);
        binom = binom * BigInt::from(m - j) / BigInt::from(j + 1);
    }
    out
}

fn render_flat(p: &MultiPoly, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, (m, c)) in p.graded_terms().into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else if latex {
            s.push_str(if neg { " - " } else { " + " });
        } else {
            s.push(if neg { '-' } else { '+' });
        }
        let body = m.render(latex);
        if m.is_one() {
            s.push_str(&abs.to_string());
        } else if abs.is_one() {
            s.push_str(&body);
        } else {
            s.push_str(&format!("{abs}{body}"));
        }
    }
    s
}

fn render_grouped(p: &MultiPoly, var: Variable, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let groups = p.collect_by(var);
    let alone = groups.len() == 1;
    let mut parts = Vec::with_capacity(groups.len());
    for (k, inner) in groups {
        let inner_s = render_flat(&inner, latex);
        let wrapped = if (k == 0 && alone) || !(inner.len() > 1 || inner_s.starts_with('-')) {
            inner_s
        } else if latex {
            format!("\\left({inner_s}\\right)")
        } else {
            format!("({inner_s})")
        };
        let power = Monomial::from_pairs([(var, k)]).render(latex);
        let part = if k == 0 {
            wrapped
        } else if inner == MultiPoly::one() {
            power
        } else if latex {
            format!("{wrapped} {power}")
        } else {
            format!("{wrapped}*{power}")
        };
        parts.push(part);
    }
    parts.join(" + ")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += -rhs;
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> MultiPoly {
        iter.fold(MultiPoly::zero(), |acc, p| acc + p)
    }
}

// JSON: [{"coeff": 3, "exponents": {"y": 1, "t": 1}}, ...]. Coefficients that
// do not fit in an i64 are written as decimal strings.

#[derive(Serialize, Deserialize)]
struct TermRecord {
    coeff: CoeffRecord,
    exponents: BTreeMap<String, u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRecord {
    Int(i64),
    Big(String),
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .graded_terms()
            .into_iter()
            .map(|(m, c)| TermRecord {
                coeff: match c.to_i64() {
                    Some(v) => CoeffRecord::Int(v),
                    None => CoeffRecord::Big(c.to_string()),
                },
                exponents: m
                    .factors()
                    .iter()
                    .map(|&(v, e)| (v.to_string(), e))
                    .collect(),
            })
            .collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut p = MultiPoly::zero();
        for r in records {
            let c = match r.coeff {
                CoeffRecord::Int(v) => BigInt::from(v),
                CoeffRecord::Big(s) => s.parse::<BigInt>().map_err(D::Error::custom)?,
            };
            let mut pairs = Vec::with_capacity(r.exponents.len());
            for (name, e) in r.exponents {
                pairs.push((name.parse::<Variable>().map_err(D::Error::custom)?, e));
            }
            p.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y() -> MultiPoly {
        MultiPoly::var(Variable::Y)
    }
    fn t() -> MultiPoly {
        MultiPoly::var(Variable::T)
    }
    fn c(k: i64) -> MultiPoly {
        MultiPoly::constant(k)
    }
    /// Builds Σ coeffs[i] y^i.
    fn in_y(coeffs: &[i64]) -> MultiPoly {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &k)| MultiPoly::term(k, Monomial::from_pairs([(Variable::Y, i as u32)])))
            .sum()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&(c(1) + y()) + &y(), in_y(&[1, 2]));
        let p = in_y(&[4, 0, 7]);
        assert_eq!(&p + &MultiPoly::zero(), p);
        let n2 = in_y(&[1, 3, 2]) + &in_y(&[2, 3, 1]) * &t();
        assert_eq!(
            n2.to_text_grouped(Variable::T),
            "(1+3y+2y^2) + (2+3y+y^2)*t"
        );
    }

    #[test]
    fn mul_examples() {
        let a = c(1) + y();
        assert_eq!(&a * &a, in_y(&[1, 2, 1]));
        let p = in_y(&[3, -1, 2]);
        assert_eq!(&p * &MultiPoly::one(), p);
        let prod = (c(1) + y()) * (c(1) + in_y(&[0, 2])) * (c(1) + in_y(&[0, 3]));
        assert_eq!(prod, in_y(&[1, 6, 11, 6]));
    }

    #[test]
    fn substitute_examples() {
        let n2 = in_y(&[1, 3, 2]) + &in_y(&[2, 3, 1]) * &t();
        let at_y1 = n2.substitute_values(&[(Variable::Y, 1)]);
        assert_eq!(at_y1, c(6) + &c(6) * &t());
        let at_t0 = n2.substitute_values(&[(Variable::T, 0)]);
        assert_eq!(at_t0, in_y(&[1, 3, 2]));
        assert_eq!(
            in_y(&[0, 0, 1]).substitute_values(&[(Variable::Y, 1)]),
            c(1)
        );
    }

    #[test]
    fn substitution_is_simultaneous() {
        // y -> t, t -> y swaps rather than collapsing.
        let p = &y() * &y() + t();
        let mut b = BTreeMap::new();
        b.insert(Variable::Y, t());
        b.insert(Variable::T, y());
        assert_eq!(p.substitute(&b), &t() * &t() + y());
    }

    #[test]
    fn pow_binomial_examples() {
        assert_eq!(pow_binomial(1, 1), &t() - &(&t() * &t()));
        assert_eq!(pow_binomial(0, 2), c(1) - &c(2) * &t() + &t() * &t());
        assert_eq!(pow_binomial(2, 0), &t() * &t());
    }

    #[test]
    fn no_zero_terms_survive() {
        let p = &(c(1) + y()) - &y();
        assert_eq!(p, c(1));
        assert!(p.terms().all(|(_, k)| !k.is_zero()));
        assert!((&y() - &y()).is_zero());
    }

    #[test]
    fn variable_order_and_names() {
        assert!(Variable::Y < Variable::T);
        assert!(Variable::T < Variable::Yi(1));
        assert!(Variable::Yi(9) < Variable::Ti(1));
        for v in [Variable::Y, Variable::T, Variable::Yi(3), Variable::Ti(12)] {
            assert_eq!(v.to_string().parse::<Variable>().unwrap(), v);
        }
        assert!("z".parse::<Variable>().is_err());
        assert!("y0".parse::<Variable>().is_err());
    }

    #[test]
    fn text_and_latex_rendering() {
        let p = &y() * &t() + c(-2) + &c(3) * &MultiPoly::var(Variable::Yi(3));
        assert_eq!(p.to_text(), "-2+3y3+y*t");
        assert_eq!(p.to_latex(), "-2 + 3y_{3} + y t");
        assert_eq!(MultiPoly::zero().to_text(), "0");
        let n1 = c(1) + y();
        assert_eq!(n1.to_text_grouped(Variable::T), "1+y");
        assert_eq!(t().to_text_grouped(Variable::T), "t");
        let n2 = in_y(&[1, 3, 2]) + &in_y(&[2, 3, 1]) * &t();
        assert_eq!(
            n2.to_latex_grouped(Variable::T),
            "\\left(1 + 3y + 2y^{2}\\right) + \\left(2 + 3y + y^{2}\\right) t"
        );
    }

    #[test]
    fn json_roundtrip_with_big_coefficient() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = MultiPoly::term(big, Monomial::var(Variable::Ti(2))) + c(5) + &y() * &t();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"123456789012345678901234567890\""));
        let q: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        let n1: MultiPoly =
            serde_json::from_str(r#"[{"coeff":1,"exponents":{}},{"coeff":1,"exponents":{"y":1}}]"#)
                .unwrap();
        assert_eq!(n1, c(1) + y());
    }
}
