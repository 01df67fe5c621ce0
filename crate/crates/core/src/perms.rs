//! Permutations, signed words and their statistics.
//!
//! Values and positions are 1-based throughout. The small index sets
//! ([`PositionSet`], [`ValueSet`]) are 64-bit masks; every enumeration in the
//! crate is far below that size.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_budget, Error, Result};
use crate::poly::{Monomial, MultiPoly, Variable};

/// Largest `m` for which [`all_permutations`] and [`eulerian_polynomial`]
/// will enumerate `Sym(m)`.
pub const PERMUTATION_BUDGET: usize = 9;

macro_rules! index_set {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(u64);

        impl $name {
            pub const fn empty() -> Self {
                $name(0)
            }

            pub const fn from_bits(bits: u64) -> Self {
                $name(bits)
            }

            pub const fn bits(self) -> u64 {
                self.0
            }

            pub fn insert(&mut self, k: usize) {
                assert!(k < 64, "index {k} does not fit an index set");
                self.0 |= 1 << k;
            }

            pub fn remove(&mut self, k: usize) {
                if k < 64 {
                    self.0 &= !(1 << k);
                }
            }

            pub fn contains(self, k: usize) -> bool {
                k < 64 && self.0 >> k & 1 == 1
            }

            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            pub fn union(self, other: Self) -> Self {
                $name(self.0 | other.0)
            }

            pub fn intersection(self, other: Self) -> Self {
                $name(self.0 & other.0)
            }

            pub fn difference(self, other: Self) -> Self {
                $name(self.0 & !other.0)
            }

            /// Elements in increasing order.
            pub fn iter(self) -> impl Iterator<Item = usize> {
                let bits = self.0;
                (0..64usize).filter(move |&k| bits >> k & 1 == 1)
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                let mut s = $name::empty();
                for k in iter {
                    s.insert(k);
                }
                s
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let items: Vec<String> = self.iter().map(|k| k.to_string()).collect();
                write!(f, "{{{}}}", items.join(","))
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_seq(self.iter())
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let items = Vec::<usize>::deserialize(d)?;
                if let Some(&bad) = items.iter().find(|&&k| k >= 64) {
                    return Err(serde::de::Error::custom(format!("index {bad} too large")));
                }
                Ok(items.into_iter().collect())
            }
        }
    };
}

index_set!(
    /// A set of positions, e.g. a descent set or the positions of positive labels.
    PositionSet
);
index_set!(
    /// A set of values, e.g. `Ino(w, σ)` or a set of left-to-right minima.
    ValueSet
);

/// A bijection of `{1, ..., m}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(oneline: Vec<usize>) -> Result<Self> {
        let m = oneline.len();
        let mut seen = vec![false; m + 1];
        for &v in &oneline {
            if v == 0 || v > m || seen[v] {
                return Err(Error::InvalidPermutation {
                    input: format!("{oneline:?}"),
                    reason: format!("not a bijection on 1..={m}"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation(oneline))
    }

    pub fn identity(m: usize) -> Self {
        Permutation((1..=m).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn oneline(&self) -> &[usize] {
        &self.0
    }

    /// `σ(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `σ^{-1}(v)`, 1-based.
    pub fn position_of(&self, v: usize) -> usize {
        self.0.iter().position(|&x| x == v).expect("value in range") + 1
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// Rearranges into the lexicographically next permutation; false at the last one.
    fn advance(&mut self) -> bool {
        let a = &mut self.0;
        if a.len() < 2 {
            return false;
        }
        let mut i = a.len() - 1;
        while i > 0 && a[i - 1] >= a[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = a.len() - 1;
        while a[j] <= a[i - 1] {
            j -= 1;
        }
        a.swap(i - 1, j);
        a[i..].reverse();
        true
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let items: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            f.write_str(&items.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts compact (`215463`) or comma-separated (`2,1,5,4,6,3`) one-line notation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: &str| Error::InvalidPermutation {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| bad("non-numeric entry"))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| bad("non-digit character"))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values).map_err(|_| bad("not a bijection on 1..=m"))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A word of nonzero integers, such as the signed labeling `λ(w, σ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SignedWord(Vec<i64>);

impl SignedWord {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::Parse(format!("signed word {entries:?} contains 0")));
        }
        Ok(SignedWord(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<i64>) -> Self {
        debug_assert!(!entries.contains(&0));
        SignedWord(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of ascents.
    pub fn asc(&self) -> usize {
        ascent_set(self).len()
    }
}

impl<'de> Deserialize<'de> for SignedWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        SignedWord::new(Vec::<i64>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", items.join(","))
    }
}

/// Positions `i` in `1..len` with `word[i] > word[i+1]`.
pub fn word_descent_set<T: PartialOrd>(word: &[T]) -> PositionSet {
    word.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(i, _)| i + 1)
        .collect()
}

/// Positions `i` in `1..len` with `word[i] < word[i+1]`.
pub fn word_ascent_set<T: PartialOrd>(word: &[T]) -> PositionSet {
    word.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] < p[1])
        .map(|(i, _)| i + 1)
        .collect()
}

pub fn descent_set(sigma: &Permutation) -> PositionSet {
    word_descent_set(sigma.oneline())
}

/// Ascents compare the signed integers; there is no boundary sentinel.
pub fn ascent_set(lambda: &SignedWord) -> PositionSet {
    word_ascent_set(lambda.entries())
}

pub fn ltr_minima(w: &Permutation) -> ValueSet {
    let mut out = ValueSet::empty();
    let mut best = usize::MAX;
    for &v in w.oneline() {
        if v < best {
            best = v;
            out.insert(v);
        }
    }
    out
}

pub fn rtl_minima(w: &Permutation) -> ValueSet {
    let mut out = ValueSet::empty();
    let mut best = usize::MAX;
    for &v in w.oneline().iter().rev() {
        if v < best {
            best = v;
            out.insert(v);
        }
    }
    out
}

/// Lexicographic iterator over `Sym(m)`.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Permutation>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if succ.advance() {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// All `m!` permutations of `{1, ..., m}` in lexicographic order.
pub fn all_permutations(m: usize) -> Result<Permutations> {
    check_budget("all_permutations", m, PERMUTATION_BUDGET)?;
    Ok(Permutations {
        next: Some(Permutation::identity(m)),
    })
}

/// `E_n(t) = Σ_{σ ∈ Sym(n)} t^{des(σ)}`.
pub fn eulerian_polynomial(n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::SizeMismatch(
            "Eulerian polynomial needs n >= 1".into(),
        ));
    }
    check_budget("eulerian_polynomial", n, PERMUTATION_BUDGET)?;
    let mut counts = vec![0u64; n];
    for sigma in all_permutations(n)? {
        counts[descent_set(&sigma).len()] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(k, c)| MultiPoly::term(c, Monomial::from_pairs([(Variable::T, k as u32)])))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn t_poly(coeffs: &[i64]) -> MultiPoly {
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| MultiPoly::term(c, Monomial::from_pairs([(Variable::T, k as u32)])))
            .sum()
    }

    #[test]
    fn descent_set_examples() {
        assert!(descent_set(&perm("12")).is_empty());
        assert_eq!(descent_set(&perm("21")), [1].into_iter().collect());
        assert_eq!(descent_set(&perm("14253")), [2, 4].into_iter().collect());
    }

    #[test]
    fn ascent_set_examples() {
        let w = |v: Vec<i64>| SignedWord::new(v).unwrap();
        assert!(ascent_set(&w(vec![3, 2])).is_empty());
        assert_eq!(ascent_set(&w(vec![-3, 2])), [1].into_iter().collect());
        assert_eq!(
            ascent_set(&w(vec![-2, 6, 5, -4, 3])),
            [1, 4].into_iter().collect()
        );
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(eulerian_polynomial(1).unwrap(), t_poly(&[1]));
        assert_eq!(eulerian_polynomial(2).unwrap(), t_poly(&[1, 1]));
        assert_eq!(eulerian_polynomial(3).unwrap(), t_poly(&[1, 4, 1]));
        assert!(matches!(
            eulerian_polynomial(PERMUTATION_BUDGET + 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn eulerian_is_palindromic_and_sums_to_factorial() {
        for n in 1..=7usize {
            let e = eulerian_polynomial(n).unwrap();
            let groups = e.collect_by(Variable::T);
            for k in 0..n as u32 {
                assert_eq!(
                    groups.get(&k).map(|p| p.coefficient_sum()),
                    groups.get(&(n as u32 - 1 - k)).map(|p| p.coefficient_sum())
                );
            }
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(
                e.substitute_values(&[(Variable::T, 1)]),
                MultiPoly::constant(fact)
            );
        }
    }

    #[test]
    fn minima_examples() {
        let set = |v: &[usize]| v.iter().copied().collect::<ValueSet>();
        assert_eq!(ltr_minima(&perm("215463")), set(&[2, 1]));
        assert_eq!(ltr_minima(&perm("123")), set(&[1]));
        assert_eq!(ltr_minima(&perm("321")), set(&[3, 2, 1]));
        assert_eq!(rtl_minima(&perm("215463")), set(&[3, 1]));
        assert_eq!(rtl_minima(&perm("123")), set(&[1, 2, 3]));
        assert_eq!(rtl_minima(&perm("312")), set(&[1, 2]));
    }

    #[test]
    fn permutation_enumeration() {
        let p1: Vec<_> = all_permutations(1).unwrap().collect();
        assert_eq!(p1, vec![perm("1")]);
        let p2: Vec<_> = all_permutations(2).unwrap().collect();
        assert_eq!(p2, vec![perm("12"), perm("21")]);
        let p3: Vec<_> = all_permutations(3).unwrap().collect();
        assert_eq!(p3.len(), 6);
        assert_eq!(p3[0], perm("123"));
        assert_eq!(p3[5], perm("321"));
        let p5: Vec<_> = all_permutations(5).unwrap().collect();
        assert_eq!(p5.len(), 120);
        assert!(p5.windows(2).all(|w| w[0] < w[1]));
        assert!(all_permutations(PERMUTATION_BUDGET + 1).is_err());
    }

    #[test]
    fn descents_and_ascents_partition_adjacent_pairs() {
        for sigma in all_permutations(6).unwrap() {
            let d = descent_set(&sigma);
            let a = word_ascent_set(sigma.oneline());
            assert_eq!(d.len() + a.len(), 5);
            assert!(d.intersection(a).is_empty());
        }
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(perm("2,1,5,4,6,3"), perm("215463"));
        assert_eq!(perm("215463").to_string(), "215463");
        let long = Permutation::new((1..=10).rev().collect()).unwrap();
        assert_eq!(long.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert!("1224".parse::<Permutation>().is_err());
        assert!("13".parse::<Permutation>().is_err());
        assert!("1a".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert_eq!(perm("14253").inverse(), perm("13524"));
        assert_eq!(perm("14253").position_of(2), 3);
    }

    #[test]
    fn signed_word_rejects_zero() {
        assert!(SignedWord::new(vec![1, 0]).is_err());
        assert_eq!(
            SignedWord::new(vec![-2, 6, 5, -4, 3]).unwrap().to_string(),
            "(-2,6,5,-4,3)"
        );
    }
}
