//! The braid arrangement's lattice of flats (set partitions) and face poset
//! (set compositions), and the signed merge labeling of pairs `(w, σ)`.
//!
//! A pair `w ∈ S_{n+1}`, `σ ∈ Sym(n)` names a maximal chain of set
//! compositions: start from the singletons of `w` in one-line order, with
//! bars `1..=n` between adjacent entries, and delete bar `σ(1)`, then
//! `σ(2)`, and so on. The `i`-th deletion merges adjacent blocks `B | B'`
//! and is labeled `±max(min B, min B')`, positive iff `min B < min B'`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{check_budget, Error, Result};
use crate::perms::{Permutation, PositionSet, SignedWord, ValueSet};
use crate::poset::FinitePoset;

/// Largest `n` for which the partition lattice `Π_n` is built.
pub const PARTITION_LATTICE_BUDGET: usize = 6;
/// Largest `n` for which the composition poset `Σ_n` is built.
pub const COMPOSITION_POSET_BUDGET: usize = 5;

/// Upper bound on `n + 1` for the allocation-free labeling routines.
const MAX_LABEL_SIZE: usize = 63;

fn write_block(out: &mut String, block: &[usize], compact: bool) {
    let items: Vec<String> = block.iter().map(|v| v.to_string()).collect();
    out.push_str(&items.join(if compact { "" } else { "," }));
}

fn compact(blocks: &[Vec<usize>]) -> bool {
    blocks.iter().flatten().all(|&v| v <= 9)
}

/// Unordered blocks; canonical form sorts each block and orders blocks by minimum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b.first().copied());
        validate_cover(&blocks)?;
        Ok(SetPartition { blocks })
    }

    pub fn singletons(m: usize) -> Self {
        SetPartition {
            blocks: (1..=m).map(|v| vec![v]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Merges the blocks at indices `i` and `j`.
    fn merged(&self, i: usize, j: usize) -> SetPartition {
        let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(self.blocks.len() - 1);
        let mut joined = self.blocks[i].clone();
        joined.extend_from_slice(&self.blocks[j]);
        joined.sort_unstable();
        for (k, b) in self.blocks.iter().enumerate() {
            if k != i && k != j {
                blocks.push(b.clone());
            }
        }
        blocks.push(joined);
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { blocks }
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = compact(&self.blocks);
        let mut s = String::new();
        for b in &self.blocks {
            s.push('{');
            write_block(&mut s, b, c);
            s.push('}');
        }
        f.pad(&s)
    }
}

/// Ordered blocks `B_1 | ... | B_k`; elements inside a block are sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SetComposition {
    blocks: Vec<Vec<usize>>,
}

impl SetComposition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        validate_cover(&blocks)?;
        Ok(SetComposition { blocks })
    }

    /// The all-singletons composition `w_1 | w_2 | ... | w_m`.
    pub fn from_permutation(w: &Permutation) -> Self {
        SetComposition {
            blocks: w.oneline().iter().map(|&v| vec![v]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Forgets the order of the blocks.
    pub fn to_partition(&self) -> SetPartition {
        SetPartition::new(self.blocks.clone()).expect("valid composition")
    }

    /// Merges blocks `k` and `k + 1` (0-based).
    fn merge_adjacent(&self, k: usize) -> SetComposition {
        let mut blocks = self.blocks.clone();
        let right = blocks.remove(k + 1);
        blocks[k].extend(right);
        blocks[k].sort_unstable();
        SetComposition { blocks }
    }
}

impl fmt::Display for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = compact(&self.blocks);
        let mut s = String::new();
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                s.push('|');
            }
            write_block(&mut s, b, c);
        }
        f.pad(&s)
    }
}

fn validate_cover(blocks: &[Vec<usize>]) -> Result<()> {
    let m: usize = blocks.iter().map(Vec::len).sum();
    let mut seen = vec![false; m + 1];
    for b in blocks {
        if b.is_empty() {
            return Err(Error::Parse("empty block".into()));
        }
        for &v in b {
            if v == 0 || v > m || seen[v] {
                return Err(Error::Parse(format!(
                    "blocks {blocks:?} do not partition 1..={m}"
                )));
            }
            seen[v] = true;
        }
    }
    Ok(())
}

/// Restricted growth strings: all set partitions of `{1, ..., m}`.
fn all_set_partitions(m: usize) -> Vec<SetPartition> {
    fn rec(m: usize, prefix: &mut Vec<usize>, max: usize, out: &mut Vec<SetPartition>) {
        if prefix.len() == m {
            let k = prefix.iter().copied().max().map_or(0, |x| x + 1);
            let mut blocks = vec![Vec::new(); k];
            for (i, &b) in prefix.iter().enumerate() {
                blocks[b].push(i + 1);
            }
            out.push(SetPartition { blocks });
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            prefix.push(b);
            rec(m, prefix, max.max(b), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, &mut Vec::with_capacity(m), 0, &mut out);
    out
}

/// `Π_n`: set partitions of `{1, ..., n+1}` ordered by merging blocks.
#[derive(Debug, Clone)]
pub struct PartitionLattice {
    n: usize,
    poset: FinitePoset,
    elements: Vec<SetPartition>,
    index: HashMap<SetPartition, usize>,
    labels: HashMap<(usize, usize), usize>,
}

impl PartitionLattice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn elements(&self) -> &[SetPartition] {
        &self.elements
    }

    pub fn element(&self, x: usize) -> &SetPartition {
        &self.elements[x]
    }

    pub fn index_of(&self, p: &SetPartition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// The "max of minima" label of a cover: `max(min B, min B')` for the merged blocks.
    pub fn edge_label(&self, a: usize, b: usize) -> Option<usize> {
        self.labels.get(&(a, b)).copied()
    }

    /// Edge labels along a maximal chain given by element indices.
    pub fn chain_labels(&self, chain: &[usize]) -> Option<Vec<usize>> {
        chain
            .windows(2)
            .map(|p| self.edge_label(p[0], p[1]))
            .collect()
    }
}

pub fn partition_lattice(n: usize) -> Result<PartitionLattice> {
    if n == 0 {
        return Err(Error::SizeMismatch("Π_n needs n >= 1".into()));
    }
    check_budget("partition_lattice", n, PARTITION_LATTICE_BUDGET)?;
    let m = n + 1;
    let mut elements = all_set_partitions(m);
    elements.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
    let index: HashMap<SetPartition, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let mut labels = HashMap::new();
    for (x, p) in elements.iter().enumerate() {
        for i in 0..p.num_blocks() {
            for j in i + 1..p.num_blocks() {
                let y = index[&p.merged(i, j)];
                // Blocks are sorted by minimum, so block j carries the larger one.
                labels.insert((x, y), p.blocks[j][0]);
            }
        }
    }
    let rank = elements.iter().map(|p| m - p.num_blocks()).collect();
    let poset = FinitePoset::new(elements.len(), labels.keys().copied())?.with_rank(rank)?;
    Ok(PartitionLattice {
        n,
        poset,
        elements,
        index,
        labels,
    })
}

/// `Σ_n`: set compositions of `{1, ..., n+1}` ordered by merging adjacent blocks.
#[derive(Debug, Clone)]
pub struct CompositionPoset {
    n: usize,
    poset: FinitePoset,
    elements: Vec<SetComposition>,
    index: HashMap<SetComposition, usize>,
}

impl CompositionPoset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn elements(&self) -> &[SetComposition] {
        &self.elements
    }

    pub fn element(&self, x: usize) -> &SetComposition {
        &self.elements[x]
    }

    pub fn index_of(&self, c: &SetComposition) -> Option<usize> {
        self.index.get(c).copied()
    }
}

pub fn composition_poset(n: usize) -> Result<CompositionPoset> {
    if n == 0 {
        return Err(Error::SizeMismatch("Σ_n needs n >= 1".into()));
    }
    check_budget("composition_poset", n, COMPOSITION_POSET_BUDGET)?;
    let m = n + 1;
    let mut elements = Vec::new();
    for p in all_set_partitions(m) {
        let k = p.num_blocks();
        for order in crate::perms::all_permutations(k)? {
            elements.push(SetComposition {
                blocks: order
                    .oneline()
                    .iter()
                    .map(|&i| p.blocks[i - 1].clone())
                    .collect(),
            });
        }
    }
    elements.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
    let index: HashMap<SetComposition, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let mut covers = Vec::new();
    for (x, c) in elements.iter().enumerate() {
        for k in 0..c.num_blocks().saturating_sub(1) {
            covers.push((x, index[&c.merge_adjacent(k)]));
        }
    }
    let rank = elements.iter().map(|c| m - c.num_blocks()).collect();
    let poset = FinitePoset::new(elements.len(), covers)?.with_rank(rank)?;
    Ok(CompositionPoset {
        n,
        poset,
        elements,
        index,
    })
}

fn check_pair(w: &Permutation, sigma: &Permutation) -> Result<()> {
    if w.len() != sigma.len() + 1 {
        return Err(Error::SizeMismatch(format!(
            "w has {} entries and σ has {}; need |w| = |σ| + 1",
            w.len(),
            sigma.len()
        )));
    }
    if w.len() > MAX_LABEL_SIZE {
        return Err(Error::SizeMismatch(format!(
            "|w| = {} exceeds {MAX_LABEL_SIZE}",
            w.len()
        )));
    }
    Ok(())
}

/// The maximal chain of `Σ_n` obtained by deleting the bars of `w` in the order `σ`.
pub fn chain_from_pair(w: &Permutation, sigma: &Permutation) -> Result<Vec<SetComposition>> {
    check_pair(w, sigma)?;
    let mut current = SetComposition::from_permutation(w);
    let mut deleted = vec![false; w.len()];
    let mut chain = vec![current.clone()];
    for &bar in sigma.oneline() {
        // Block index left of `bar` = number of surviving bars strictly left of it.
        let k = (1..bar).filter(|&b| !deleted[b]).count();
        deleted[bar] = true;
        current = current.merge_adjacent(k);
        chain.push(current.clone());
    }
    Ok(chain)
}

/// Writes `λ(w, σ)` into `out[..n]`. `w` and `sigma` are raw one-line slices
/// with `w.len() == sigma.len() + 1 <= 63`.
pub(crate) fn signed_labels_into(w: &[usize], sigma: &[usize], out: &mut [i64]) {
    let m = w.len();
    let mut start_of = [0usize; MAX_LABEL_SIZE + 1];
    let mut end_of = [0usize; MAX_LABEL_SIZE + 1];
    let mut min_of = [0usize; MAX_LABEL_SIZE + 1];
    for p in 1..=m {
        start_of[p] = p;
        end_of[p] = p;
        min_of[p] = w[p - 1];
    }
    for (k, &bar) in sigma.iter().enumerate() {
        let ls = start_of[bar];
        let rs = bar + 1;
        let re = end_of[rs];
        let (lmin, rmin) = (min_of[ls], min_of[rs]);
        out[k] = if lmin < rmin {
            rmin as i64
        } else {
            -(lmin as i64)
        };
        end_of[ls] = re;
        start_of[re] = ls;
        min_of[ls] = lmin.min(rmin);
    }
}

/// The signed labeling `λ(w, σ)`.
pub fn lambda(w: &Permutation, sigma: &Permutation) -> Result<SignedWord> {
    check_pair(w, sigma)?;
    let mut out = vec![0i64; sigma.len()];
    signed_labels_into(w.oneline(), sigma.oneline(), &mut out);
    Ok(SignedWord::from_vec_unchecked(out))
}

/// `Ino(w, σ)`: the positive entries of `λ(w, σ)`, as a set of values.
pub fn ino_set(w: &Permutation, sigma: &Permutation) -> Result<ValueSet> {
    Ok(lambda(w, sigma)?
        .entries()
        .iter()
        .filter(|&&l| l > 0)
        .map(|&l| l as usize)
        .collect())
}

/// Number of merges whose blocks come in order.
pub fn ino(w: &Permutation, sigma: &Permutation) -> Result<usize> {
    Ok(ino_set(w, sigma)?.len())
}

/// A bar rank that may be infinite. `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Extended {
    Finite(usize),
    Infinite,
}

impl Extended {
    pub fn finite(self) -> Option<usize> {
        match self {
            Extended::Finite(k) => Some(k),
            Extended::Infinite => None,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(k) => write!(f, "{k}"),
            Extended::Infinite => f.write_str("∞"),
        }
    }
}

/// Neighbouring smaller entries of a value `v` at position `i` of `w`, and
/// the steps of `σ` at which `v`'s block last merges to the left and right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BarPositions {
    pub value: usize,
    pub position: usize,
    /// Rightmost `j < i` with `w_j < v`; `None` iff `v` is a left-to-right minimum.
    pub ell: Option<usize>,
    /// Leftmost `j > i` with `w_j < v`; `None` iff `v` is a right-to-left minimum.
    pub r: Option<usize>,
    /// Last step of `σ` deleting a bar in `ell..i`.
    pub ell_sigma: Extended,
    /// Last step of `σ` deleting a bar in `i..r`.
    pub r_sigma: Extended,
}

impl BarPositions {
    /// The step at which `v` is the merge maximum: `min(ell_sigma, r_sigma)`.
    pub fn merge_step(&self) -> Extended {
        self.ell_sigma.min(self.r_sigma)
    }
}

/// Left and right bar positions of value `v ∈ {2, ..., n+1}`.
pub fn last_bar_positions(w: &Permutation, sigma: &Permutation, v: usize) -> Result<BarPositions> {
    check_pair(w, sigma)?;
    let m = w.len();
    if v < 2 || v > m {
        return Err(Error::NotAMergeValue(v, m));
    }
    let i = w.position_of(v);
    let ell = (1..i).rev().find(|&j| w.at(j) < v);
    let r = (i + 1..=m).find(|&j| w.at(j) < v);
    let inv = sigma.inverse();
    let last_step = |bars: std::ops::Range<usize>| {
        bars.map(|b| inv.at(b))
            .max()
            .map_or(Extended::Infinite, Extended::Finite)
    };
    Ok(BarPositions {
        value: v,
        position: i,
        ell,
        r,
        ell_sigma: ell.map_or(Extended::Infinite, |l| last_step(l..i)),
        r_sigma: r.map_or(Extended::Infinite, |r| last_step(i..r)),
    })
}

/// Forgets block order: the flat chain in `Π_n` and the positions of positive labels.
pub fn pair_to_flat_chain(
    w: &Permutation,
    sigma: &Permutation,
) -> Result<(Vec<SetPartition>, PositionSet)> {
    let chain = chain_from_pair(w, sigma)?
        .iter()
        .map(SetComposition::to_partition)
        .collect();
    let positive = lambda(w, sigma)?
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 0)
        .map(|(k, _)| k + 1)
        .collect();
    Ok((chain, positive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perms::all_permutations;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn comps(chain: &[SetComposition]) -> Vec<String> {
        chain.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn partition_lattice_examples() {
        let pi2 = partition_lattice(2).unwrap();
        let p = pi2.poset();
        assert_eq!(p.size(), 5);
        assert_eq!(p.bottom().unwrap(), 0);
        assert_eq!(p.top().unwrap(), 4);
        assert_eq!(p.upper_covers(0).len(), 3);
        let pi1 = partition_lattice(1).unwrap();
        assert_eq!(pi1.poset().size(), 2);
        assert_eq!(pi1.poset().covers(), &[(0, 1)]);
        assert_eq!(pi1.element(0).to_string(), "{1}{2}");
        assert!(matches!(
            partition_lattice(PARTITION_LATTICE_BUDGET + 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn partition_lattice_sizes_match_brute_force_bell_numbers() {
        // Independent count: label every function {1..m} -> {1..m} by its kernel.
        for n in 1..=4usize {
            let m = n + 1;
            let mut kernels = std::collections::BTreeSet::new();
            let total = m.pow(m as u32);
            for code in 0..total {
                let mut f = Vec::with_capacity(m);
                let mut c = code;
                for _ in 0..m {
                    f.push(c % m);
                    c /= m;
                }
                let kernel: Vec<Vec<usize>> = (0..m)
                    .map(|i| (0..m).filter(|&j| f[j] == f[i]).collect())
                    .collect();
                kernels.insert(kernel);
            }
            assert_eq!(partition_lattice(n).unwrap().poset().size(), kernels.len());
        }
        assert_eq!(partition_lattice(3).unwrap().poset().size(), 15);
    }

    #[test]
    fn composition_poset_examples() {
        let s2 = composition_poset(2).unwrap();
        assert_eq!(s2.poset().size(), 13);
        assert_eq!(s2.poset().minimal_elements().len(), 6);
        assert!(s2.poset().top().is_ok());
        let s1 = composition_poset(1).unwrap();
        let names: Vec<String> = s1.elements().iter().map(ToString::to_string).collect();
        assert_eq!(names, ["1|2", "2|1", "12"]);
        let s3 = composition_poset(3).unwrap();
        assert_eq!(s3.poset().size(), 75);
        assert_eq!(s3.poset().minimal_elements().len(), 24);
    }

    #[test]
    fn chain_from_pair_examples() {
        let c = chain_from_pair(&perm("215463"), &perm("14253")).unwrap();
        assert_eq!(
            comps(&c),
            [
                "2|1|5|4|6|3",
                "12|5|4|6|3",
                "12|5|46|3",
                "125|46|3",
                "125|346",
                "123456"
            ]
        );
        let c = chain_from_pair(&perm("123"), &perm("12")).unwrap();
        assert_eq!(comps(&c), ["1|2|3", "12|3", "123"]);
        let c = chain_from_pair(&perm("12"), &perm("1")).unwrap();
        assert_eq!(comps(&c), ["1|2", "12"]);
        assert!(chain_from_pair(&perm("12"), &perm("12")).is_err());
    }

    #[test]
    fn chains_from_pairs_are_maximal_chains_of_compositions() {
        let s3 = composition_poset(3).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for w in all_permutations(4).unwrap() {
            for sigma in all_permutations(3).unwrap() {
                let chain = chain_from_pair(&w, &sigma).unwrap();
                let idx: Vec<usize> = chain.iter().map(|c| s3.index_of(c).unwrap()).collect();
                for p in idx.windows(2) {
                    assert!(s3.poset().is_cover(p[0], p[1]));
                }
                seen.insert(idx);
            }
        }
        assert_eq!(seen.len(), 24 * 6);
        // Surjectivity: count all cover paths from minimal elements to the top.
        let p = s3.poset();
        let mut paths = vec![0usize; p.size()];
        let mut order: Vec<usize> = (0..p.size()).collect();
        order.sort_by_key(|&x| p.rank(x));
        for &x in &order {
            if p.lower_covers(x).is_empty() {
                paths[x] = 1;
            }
            for &b in p.upper_covers(x) {
                paths[b] += paths[x];
            }
        }
        assert_eq!(paths[p.top().unwrap()], 24 * 6);
    }

    #[test]
    fn lambda_examples() {
        let l = |w: &str, s: &str| lambda(&perm(w), &perm(s)).unwrap().entries().to_vec();
        assert_eq!(l("123", "21"), [3, 2]);
        assert_eq!(l("312", "12"), [-3, 2]);
        assert_eq!(l("215463", "14253"), [-2, 6, 5, -4, 3]);
    }

    #[test]
    fn lambda_matches_the_full_table_for_three_elements() {
        // (w, λ(w,12), λ(w,21)) for every w ∈ S_3.
        let table: [(&str, [i64; 2], [i64; 2]); 6] = [
            ("123", [2, 3], [3, 2]),
            ("132", [3, 2], [-3, 2]),
            ("213", [-2, 3], [3, -2]),
            ("231", [3, -2], [-3, -2]),
            ("312", [-3, 2], [2, -3]),
            ("321", [-3, -2], [-2, -3]),
        ];
        for (w, a, b) in table {
            assert_eq!(lambda(&perm(w), &perm("12")).unwrap().entries(), a, "w={w}");
            assert_eq!(lambda(&perm(w), &perm("21")).unwrap().entries(), b, "w={w}");
        }
    }

    #[test]
    fn lambda_agrees_with_explicit_block_merging() {
        // Independent route: read the merged blocks off the composition chain.
        for w in all_permutations(5).unwrap() {
            for sigma in all_permutations(4).unwrap() {
                let chain = chain_from_pair(&w, &sigma).unwrap();
                let mut expected = Vec::new();
                for (step, pair) in chain.windows(2).enumerate() {
                    let bar = sigma.at(step + 1);
                    let k = (1..bar).filter(|&b| sigma.inverse().at(b) > step).count();
                    let (b1, b2) = (&pair[0].blocks()[k], &pair[0].blocks()[k + 1]);
                    let (m1, m2) = (b1[0] as i64, b2[0] as i64);
                    expected.push(if m1 < m2 { m2 } else { -m1 });
                }
                assert_eq!(lambda(&w, &sigma).unwrap().entries(), &expected[..]);
            }
        }
    }

    #[test]
    fn ino_examples() {
        assert_eq!(ino(&perm("312"), &perm("12")).unwrap(), 1);
        assert_eq!(ino(&perm("123"), &perm("21")).unwrap(), 2);
        assert_eq!(
            ino_set(&perm("215463"), &perm("14253")).unwrap(),
            [3, 5, 6].into_iter().collect()
        );
    }

    #[test]
    fn bar_position_examples() {
        let b = last_bar_positions(&perm("215463"), &perm("14253"), 6).unwrap();
        assert_eq!((b.ell, b.r), (Some(4), Some(6)));
        assert_eq!(
            (b.ell_sigma, b.r_sigma),
            (Extended::Finite(2), Extended::Finite(4))
        );
        let b = last_bar_positions(&perm("12"), &perm("1"), 2).unwrap();
        assert_eq!((b.ell, b.r), (Some(1), None));
        assert_eq!(
            (b.ell_sigma, b.r_sigma),
            (Extended::Finite(1), Extended::Infinite)
        );
        let b = last_bar_positions(&perm("21"), &perm("1"), 2).unwrap();
        assert_eq!((b.ell, b.r), (None, Some(2)));
        assert_eq!(
            (b.ell_sigma, b.r_sigma),
            (Extended::Infinite, Extended::Finite(1))
        );
        assert_eq!(
            last_bar_positions(&perm("21"), &perm("1"), 1),
            Err(Error::NotAMergeValue(1, 2))
        );
        assert!(last_bar_positions(&perm("21"), &perm("1"), 3).is_err());
    }

    #[test]
    fn flat_chain_examples() {
        let names = |c: &[SetPartition]| c.iter().map(ToString::to_string).collect::<Vec<_>>();
        let (c, y) = pair_to_flat_chain(&perm("123"), &perm("21")).unwrap();
        assert_eq!(names(&c), ["{1}{2}{3}", "{1}{23}", "{123}"]);
        assert_eq!(y, [1, 2].into_iter().collect());
        let (c, y) = pair_to_flat_chain(&perm("312"), &perm("12")).unwrap();
        assert_eq!(names(&c), ["{1}{2}{3}", "{13}{2}", "{123}"]);
        assert_eq!(y, [2].into_iter().collect());
    }

    #[test]
    fn flat_chain_bijection_at_n2() {
        let pi2 = partition_lattice(2).unwrap();
        let mut images = std::collections::BTreeSet::new();
        for w in all_permutations(3).unwrap() {
            for sigma in all_permutations(2).unwrap() {
                let (c, y) = pair_to_flat_chain(&w, &sigma).unwrap();
                let idx: Vec<usize> = c.iter().map(|p| pi2.index_of(p).unwrap()).collect();
                images.insert((idx, y));
            }
        }
        assert_eq!(images.len(), 12);
        let chains: std::collections::BTreeSet<_> = images.iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(chains.len(), 3);
    }

    #[test]
    fn edge_labels_of_pi2() {
        let pi2 = partition_lattice(2).unwrap();
        let find = |s: &str| {
            pi2.elements()
                .iter()
                .position(|p| p.to_string() == s)
                .unwrap()
        };
        let (bot, top) = (find("{1}{2}{3}"), find("{123}"));
        let h12 = find("{12}{3}");
        let h23 = find("{1}{23}");
        assert_eq!(pi2.edge_label(bot, h12), Some(2));
        assert_eq!(pi2.edge_label(bot, h23), Some(3));
        assert_eq!(pi2.edge_label(h12, top), Some(3));
        assert_eq!(pi2.edge_label(h23, top), Some(2));
        assert_eq!(pi2.edge_label(bot, top), None);
    }

    #[test]
    fn set_types_validate() {
        assert!(SetPartition::new(vec![vec![1], vec![1, 2]]).is_err());
        assert!(SetComposition::new(vec![vec![2], vec![]]).is_err());
        let p = SetPartition::new(vec![vec![3, 2], vec![1]]).unwrap();
        assert_eq!(p.to_string(), "{1}{23}");
        let c = SetComposition::new(vec![vec![6, 4], vec![1, 2, 5], vec![3]]).unwrap();
        assert_eq!(c.to_string(), "46|125|3");
        assert_eq!(c.to_partition().to_string(), "{125}{3}{46}");
    }
}
