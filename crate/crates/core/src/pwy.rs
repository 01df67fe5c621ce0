//! The poset `P_{w,Y}` on bar positions `{1, ..., n}` together with its
//! injective vertex labeling `Λ`.
//!
//! For an admissible value set `Y`, the linear extensions of `P_{w,Y}` are
//! exactly the `σ` with `Ino(w, σ) = Y`, and `Λ(σ(1)), ..., Λ(σ(n))` is the
//! signed labeling `λ(w, σ)`.
//!
//! The construction walks the values `v = n+1, ..., 2` of `w`. With `i` the
//! position of `v`, the bars strictly between the nearest smaller entries on
//! either side form two already-connected segments `ℓ..i` and `i..r`; their
//! current maxima `a` and `b` are joined by one new cover, oriented by
//! whether `v ∈ Y`. Segments are tracked with a union-find carrying each
//! component's maximum.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::braid::ino_set;
use crate::error::{Error, Result};
use crate::perms::{all_permutations, ltr_minima, rtl_minima, Permutation, SignedWord, ValueSet};
use crate::poset::FinitePoset;

/// `P_{w,Y}` with `Λ`. Elements are the bars `1..=n`; internally bar `k` is
/// element `k - 1` of [`Self::poset`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoset {
    w: Permutation,
    y: ValueSet,
    poset: FinitePoset,
    labels: Vec<i64>,
}

impl LabeledPoset {
    pub fn w(&self) -> &Permutation {
        &self.w
    }

    pub fn y(&self) -> ValueSet {
        self.y
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// `Λ(bar)` for 1-based `bar`.
    pub fn label(&self, bar: usize) -> i64 {
        self.labels[bar - 1]
    }

    /// `Λ` as a slice indexed by `bar - 1`.
    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// Cover relations as 1-based bar pairs `(a, b)` meaning `a ≺ b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.poset
            .covers()
            .iter()
            .map(|&(a, b)| (a + 1, b + 1))
            .collect()
    }

    pub fn linear_extensions(&self) -> impl Iterator<Item = Permutation> + '_ {
        self.poset.linear_extensions()
    }

    /// Every cover `a ≺ b` has `a < b` exactly when `Λ(a) > Λ(b)`.
    pub fn covers_reverse_labels(&self) -> bool {
        self.covers()
            .into_iter()
            .all(|(a, b)| (a < b) == (self.label(a) > self.label(b)))
    }

    /// Hasse diagram with vertices annotated `bar:Λ(bar)`.
    pub fn to_dot(&self) -> String {
        self.poset.to_dot_with(
            &format!("P_{}", self.w),
            |x| format!("{}:{}", x + 1, self.labels[x]),
            |_, _| None,
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("P_(w={}, Y={})\n", self.w, self.y);
        let labels: Vec<String> = (1..=self.n())
            .map(|k| format!("{k}:{}", self.label(k)))
            .collect();
        s.push_str(&format!("Lambda: {}\n", labels.join(" ")));
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{a}<{b}"))
            .collect();
        s.push_str(&format!(
            "covers: {}\n",
            if covers.is_empty() {
                "(none)".to_string()
            } else {
                covers.join(" ")
            }
        ));
        s
    }
}

#[derive(Serialize)]
struct LabeledPosetRecord<'a> {
    w: &'a Permutation,
    #[serde(rename = "Y")]
    y: ValueSet,
    covers: Vec<(usize, usize)>,
    #[serde(rename = "Lambda")]
    lambda: std::collections::BTreeMap<usize, i64>,
}

impl Serialize for LabeledPoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LabeledPosetRecord {
            w: &self.w,
            y: self.y,
            covers: self.covers(),
            lambda: (1..=self.n()).map(|k| (k, self.label(k))).collect(),
        }
        .serialize(s)
    }
}

/// Checks the two admissibility conditions, naming the first one violated.
pub fn check_admissible(w: &Permutation, y: ValueSet) -> Result<()> {
    let m = w.len();
    if let Some(v) = y.iter().find(|&v| v < 2 || v > m) {
        return Err(Error::InadmissibleY(format!(
            "value {v} is outside 2..={m}"
        )));
    }
    if let Some(v) = y.intersection(ltr_minima(w)).iter().next() {
        return Err(Error::InadmissibleY(format!(
            "Y contains left-to-right minimum {v} of w = {w}"
        )));
    }
    let mut required = rtl_minima(w);
    required.remove(1);
    if let Some(v) = required.difference(y).iter().next() {
        return Err(Error::InadmissibleY(format!(
            "Y is missing right-to-left minimum {v} of w = {w}"
        )));
    }
    Ok(())
}

/// All `Y ⊆ {2, ..., n+1}` containing every right-to-left minimum except 1
/// and no left-to-right minimum, in increasing bitmask order.
pub fn admissible_y(w: &Permutation) -> Vec<ValueSet> {
    let m = w.len();
    let ltr = ltr_minima(w);
    let mut forced = rtl_minima(w);
    forced.remove(1);
    let all: ValueSet = (2..=m).collect();
    let free: Vec<usize> = all.difference(forced).difference(ltr).iter().collect();
    (0u64..1 << free.len())
        .map(|mask| {
            let mut y = forced;
            for (k, &v) in free.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    y.insert(v);
                }
            }
            y
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

struct Segments {
    parent: Vec<usize>,
    size: Vec<usize>,
    max: Vec<usize>,
}

impl Segments {
    fn new(n: usize) -> Self {
        Segments {
            parent: (0..=n).collect(),
            size: vec![1; n + 1],
            max: (0..=n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize, new_max: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.max[big] = new_max;
    }
}

/// The unique maximum of the bars `lo..hi`, which must form one component.
/// Cross-checked against the covers added so far.
fn segment_max(
    seg: &mut Segments,
    up: &[Vec<usize>],
    lo: usize,
    hi: usize,
    v: usize,
) -> Result<usize> {
    let root = seg.find(lo);
    if (lo..hi).any(|k| seg.find(k) != root) || seg.size[root] != hi - lo {
        return Err(Error::InternalInvariant(format!(
            "step {v}: bars {lo}..{hi} are not a connected component"
        )));
    }
    let tops: Vec<usize> = (lo..hi)
        .filter(|&k| !up[k].iter().any(|&u| (lo..hi).contains(&u)))
        .collect();
    let tracked = seg.max[root];
    if tops != [tracked] {
        return Err(Error::InternalInvariant(format!(
            "step {v}: bars {lo}..{hi} have maximal elements {tops:?}, expected only {tracked}"
        )));
    }
    Ok(tracked)
}

/// Builds `P_{w,Y}` and `Λ`. `Y` must be admissible for `w`.
pub fn build_pwy(w: &Permutation, y: ValueSet) -> Result<LabeledPoset> {
    check_admissible(w, y)?;
    let m = w.len();
    if m < 2 {
        return Err(Error::SizeMismatch("w needs at least 2 entries".into()));
    }
    let n = m - 1;
    let mut seg = Segments::new(n);
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut covers: Vec<(usize, usize)> = Vec::new();
    let mut labels: Vec<Option<i64>> = vec![None; n + 1];

    let mut set_label = |bar: usize, value: i64, v: usize| -> Result<()> {
        match labels[bar] {
            Some(old) => Err(Error::InternalInvariant(format!(
                "step {v}: bar {bar} already labeled {old}"
            ))),
            None => {
                labels[bar] = Some(value);
                Ok(())
            }
        }
    };

    for v in (2..=m).rev() {
        let i = w.position_of(v);
        let ell = (1..i).rev().find(|&j| w.at(j) < v);
        let r = (i + 1..=m).find(|&j| w.at(j) < v);
        let a = ell
            .map(|l| segment_max(&mut seg, &up, l, i, v))
            .transpose()?;
        let b = r.map(|r| segment_max(&mut seg, &up, i, r, v)).transpose()?;
        let signed = v as i64;
        match (a, b) {
            (None, Some(b)) => set_label(b, -signed, v)?,
            (Some(a), None) => set_label(a, signed, v)?,
            (Some(a), Some(b)) => {
                if y.contains(v) {
                    covers.push((a, b));
                    up[a].push(b);
                    set_label(a, signed, v)?;
                    seg.union(a, b, b);
                } else {
                    covers.push((b, a));
                    up[b].push(a);
                    set_label(b, -signed, v)?;
                    seg.union(a, b, a);
                }
            }
            (None, None) => {
                return Err(Error::InternalInvariant(format!(
                    "value {v} is both a left-to-right and a right-to-left minimum"
                )))
            }
        }
    }

    let labels: Vec<i64> = labels[1..]
        .iter()
        .enumerate()
        .map(|(k, l)| {
            l.ok_or_else(|| Error::InternalInvariant(format!("bar {} never labeled", k + 1)))
        })
        .collect::<Result<_>>()?;
    let abs: BTreeSet<usize> = labels.iter().map(|l| l.unsigned_abs() as usize).collect();
    if abs != (2..=m).collect() {
        return Err(Error::InternalInvariant(format!(
            "|Λ| = {abs:?} is not 2..={m}"
        )));
    }
    let poset = FinitePoset::new(n, covers.iter().map(|&(a, b)| (a - 1, b - 1)))?;
    Ok(LabeledPoset {
        w: w.clone(),
        y,
        poset,
        labels,
    })
}

/// `Λ(σ) = (Λ(σ(1)), ..., Λ(σ(n)))` for a linear extension `σ`.
pub fn vertex_word(p: &LabeledPoset, sigma: &Permutation) -> Result<SignedWord> {
    if !p.poset.is_linear_extension(sigma) {
        return Err(Error::NotLinearExtension(sigma.to_string()));
    }
    SignedWord::new(sigma.oneline().iter().map(|&k| p.label(k)).collect())
}

/// Whether `Lin(P_{w,Y})` equals `{σ : Ino(w, σ) = Y}`.
pub fn lin_equals_fiber(w: &Permutation, y: ValueSet) -> Result<bool> {
    let p = build_pwy(w, y)?;
    let lin: BTreeSet<Permutation> = p.linear_extensions().collect();
    let mut fiber = BTreeSet::new();
    for sigma in all_permutations(w.len() - 1)? {
        if ino_set(w, &sigma)? == y {
            fiber.insert(sigma);
        }
    }
    Ok(lin == fiber)
}
