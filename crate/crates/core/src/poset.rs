//! Finite posets given by their cover relations.
//!
//! Elements are `0..size`. The order relation is precomputed as one bitset
//! row per element, so `leq` is a single word lookup. Möbius rows are
//! computed on first use and cached in a `OnceLock` per base element, which
//! keeps every query method usable from several threads at once.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perms::Permutation;
use crate::poly::{Monomial, MultiPoly, Variable};

/// A chain, listed from bottom to top.
pub type Chain = Vec<usize>;

#[derive(Debug, Clone)]
pub struct FinitePoset {
    size: usize,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    rank: Option<Vec<usize>>,
    /// `above[x]` has bit `y` set iff `x <= y`.
    above: Vec<Vec<u64>>,
    /// Elements sorted so that every cover goes forward.
    topo: Vec<usize>,
    mobius_rows: Vec<OnceLock<Vec<i64>>>,
}

impl FinitePoset {
    /// Builds the poset from cover pairs `(a, b)` meaning `a ⋖ b`.
    ///
    /// Rejects cycles and pairs implied by a longer path. A rank function is
    /// inferred when every cover raises the longest-chain height by exactly one.
    pub fn new(size: usize, covers: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let covers: BTreeSet<(usize, usize)> = covers.into_iter().collect();
        let mut up = vec![Vec::new(); size];
        let mut down = vec![Vec::new(); size];
        for &(a, b) in &covers {
            for e in [a, b] {
                if e >= size {
                    return Err(Error::ElementOutOfRange(e, size));
                }
            }
            if a == b {
                return Err(Error::CyclicCovers);
            }
            up[a].push(b);
            down[b].push(a);
        }

        // Kahn's algorithm; smallest ready element first for determinism.
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..size).filter(|&x| indeg[x] == 0).collect();
        let mut topo = Vec::with_capacity(size);
        while let Some(x) = ready.pop_first() {
            topo.push(x);
            for &b in &up[x] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert(b);
                }
            }
        }
        if topo.len() != size {
            return Err(Error::CyclicCovers);
        }

        let words = size.div_ceil(64).max(1);
        let mut above = vec![vec![0u64; words]; size];
        for &x in topo.iter().rev() {
            let mut row = vec![0u64; words];
            row[x / 64] |= 1 << (x % 64);
            for &b in &up[x] {
                for (r, a) in row.iter_mut().zip(&above[b]) {
                    *r |= a;
                }
            }
            above[x] = row;
        }
        let leq = |x: usize, y: usize| above[x][y / 64] >> (y % 64) & 1 == 1;
        for &(a, b) in &covers {
            if up[a].iter().any(|&c| c != b && leq(c, b)) {
                return Err(Error::NotACover(a, b));
            }
        }

        let mut height = vec![0usize; size];
        for &x in &topo {
            for &b in &up[x] {
                height[b] = height[b].max(height[x] + 1);
            }
        }
        let graded = covers.iter().all(|&(a, b)| height[b] == height[a] + 1);

        Ok(FinitePoset {
            size,
            covers: covers.into_iter().collect(),
            up,
            down,
            rank: graded.then_some(height),
            above,
            topo,
            mobius_rows: (0..size).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Replaces the rank function, checking that covers raise it by one.
    pub fn with_rank(mut self, rank: Vec<usize>) -> Result<Self> {
        if rank.len() != self.size {
            return Err(Error::InvalidRank(format!(
                "{} ranks for {} elements",
                rank.len(),
                self.size
            )));
        }
        if let Some(&(a, b)) = self.covers.iter().find(|&&(a, b)| rank[b] != rank[a] + 1) {
            return Err(Error::InvalidRank(format!(
                "cover {a} ⋖ {b} goes from rank {} to {}",
                rank[a], rank[b]
            )));
        }
        self.rank = Some(rank);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(&b)
    }

    pub fn is_ranked(&self) -> bool {
        self.rank.is_some()
    }

    pub fn rank(&self, x: usize) -> Option<usize> {
        self.rank.as_ref().map(|r| r[x])
    }

    pub fn ranks(&self) -> Option<&[usize]> {
        self.rank.as_deref()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.above[x][y / 64] >> (y % 64) & 1 == 1
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| self.down[x].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.up[x].is_empty()).collect()
    }

    pub fn bottom(&self) -> Result<usize> {
        match self.minimal_elements()[..] {
            [b] => Ok(b),
            _ => Err(Error::NoUniqueBottom),
        }
    }

    pub fn top(&self) -> Result<usize> {
        match self.maximal_elements()[..] {
            [t] => Ok(t),
            _ => Err(Error::NoUniqueTop),
        }
    }

    fn check_element(&self, x: usize) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange(x, self.size))
        }
    }

    fn check_interval(&self, x: usize, y: usize) -> Result<()> {
        self.check_element(x)?;
        self.check_element(y)?;
        if self.leq(x, y) {
            Ok(())
        } else {
            Err(Error::Incomparable(x, y))
        }
    }

    /// Elements `z` with `x <= z <= y`, increasing.
    pub fn interval(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        self.check_interval(x, y)?;
        Ok((0..self.size)
            .filter(|&z| self.leq(x, z) && self.leq(z, y))
            .collect())
    }

    fn mobius_row(&self, x: usize) -> &[i64] {
        self.mobius_rows[x].get_or_init(|| {
            let mut mu = vec![0i64; self.size];
            let upset: Vec<usize> = self
                .topo
                .iter()
                .copied()
                .filter(|&z| self.leq(x, z))
                .collect();
            for (k, &z) in upset.iter().enumerate() {
                if z == x {
                    mu[z] = 1;
                    continue;
                }
                let s: i64 = upset[..k]
                    .iter()
                    .filter(|&&u| self.leq(u, z))
                    .map(|&u| mu[u])
                    .sum();
                mu[z] = -s;
            }
            mu
        })
    }

    /// Möbius function `μ(x, y)`; errors unless `x <= y`.
    pub fn mobius(&self, x: usize, y: usize) -> Result<i64> {
        self.check_interval(x, y)?;
        Ok(self.mobius_row(x)[y])
    }

    /// `Σ_{z ∈ [x,y]} |μ(x,z)| · var^{rank(z) - rank(x)}`.
    pub fn interval_poincare(&self, x: usize, y: usize, var: Variable) -> Result<MultiPoly> {
        self.check_interval(x, y)?;
        let rank = self.rank.as_ref().ok_or(Error::Unranked)?;
        let row = self.mobius_row(x);
        let mut p = MultiPoly::zero();
        for z in 0..self.size {
            if self.leq(x, z) && self.leq(z, y) {
                p.add_term(
                    Monomial::from_pairs([(var, (rank[z] - rank[x]) as u32)]),
                    row[z].unsigned_abs().into(),
                );
            }
        }
        Ok(p)
    }

    fn strictly_above(&self, x: usize) -> Vec<usize> {
        (0..self.size).filter(|&z| self.lt(x, z)).collect()
    }

    /// Every chain of elements other than the bottom, the empty chain first,
    /// in depth-first order by element index.
    pub fn chains_avoiding_bottom(&self) -> Result<ChainsAvoidingBottom<'_>> {
        let bottom = self.bottom()?;
        let roots = (0..self.size).filter(|&z| z != bottom).collect();
        Ok(ChainsAvoidingBottom {
            poset: self,
            frames: vec![(roots, 0)],
            chain: Vec::new(),
            emitted_empty: false,
        })
    }

    /// Every bottom-to-top path of covers.
    pub fn maximal_chains(&self) -> Result<MaximalChains<'_>> {
        let bottom = self.bottom()?;
        let top = self.top()?;
        Ok(MaximalChains {
            poset: self,
            top,
            stack: vec![(bottom, 0)],
        })
    }

    /// Linear extensions of a poset on `{1, ..., n}` (element `k` carries label `k + 1`),
    /// as permutations listing the labels in order. Lexicographic.
    pub fn linear_extensions(&self) -> LinearExtensions<'_> {
        LinearExtensions {
            poset: self,
            placed: Vec::with_capacity(self.size),
            used: vec![false; self.size],
            pending: self.down.iter().map(Vec::len).collect(),
            start: vec![0; self.size + 1],
            done: false,
        }
    }

    /// `a ≺ b ⟹ σ^{-1}(a) < σ^{-1}(b)`, with labels `1..=n` as in [`Self::linear_extensions`].
    pub fn is_linear_extension(&self, sigma: &Permutation) -> bool {
        if sigma.len() != self.size {
            return false;
        }
        let inv = sigma.inverse();
        self.covers
            .iter()
            .all(|&(a, b)| inv.at(a + 1) < inv.at(b + 1))
    }

    /// For each interval `[x, y]`, the number of maximal chains whose edge
    /// labels are weakly increasing. Returns the `(x, y, count)` triples with
    /// `count != 1`; an empty result means `label` is an R-labeling.
    pub fn r_labeling_violations<F>(&self, label: F) -> Vec<(usize, usize, usize)>
    where
        F: Fn(usize, usize) -> i64,
    {
        let mut bad = Vec::new();
        for x in 0..self.size {
            let mut count = vec![0usize; self.size];
            count[x] = 1;
            let mut stack: Vec<(usize, i64)> = vec![(x, i64::MIN)];
            while let Some((z, last)) = stack.pop() {
                for &b in &self.up[z] {
                    let l = label(z, b);
                    if l >= last {
                        count[b] += 1;
                        stack.push((b, l));
                    }
                }
            }
            for (y, &c) in count.iter().enumerate() {
                if self.leq(x, y) && c != 1 {
                    bad.push((x, y, c));
                }
            }
        }
        bad
    }

    /// Graphviz rendering of the Hasse diagram, bottom at the bottom.
    pub fn to_dot_with<V, E>(&self, name: &str, vertex_label: V, edge_label: E) -> String
    where
        V: Fn(usize) -> String,
        E: Fn(usize, usize) -> Option<String>,
    {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {} {{", dot_id(name));
        let _ = writeln!(s, "  rankdir=BT;");
        let _ = writeln!(s, "  node [shape=plaintext];");
        for x in 0..self.size {
            let _ = writeln!(s, "  {x} [label={}];", dot_quote(&vertex_label(x)));
        }
        for &(a, b) in &self.covers {
            match edge_label(a, b) {
                Some(l) => {
                    let _ = writeln!(s, "  {a} -> {b} [label={}];", dot_quote(&l));
                }
                None => {
                    let _ = writeln!(s, "  {a} -> {b};");
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_dot(&self) -> String {
        self.to_dot_with("poset", |x| x.to_string(), |_, _| None)
    }
}

fn dot_id(name: &str) -> String {
    if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        name.to_string()
    } else {
        dot_quote(name)
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.covers == other.covers && self.rank == other.rank
    }
}

impl Eq for FinitePoset {}

#[derive(Serialize, Deserialize)]
struct PosetRecord {
    size: usize,
    covers: Vec<(usize, usize)>,
    rank: Option<Vec<usize>>,
}

impl Serialize for FinitePoset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PosetRecord {
            size: self.size,
            covers: self.covers.clone(),
            rank: self.rank.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitePoset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PosetRecord::deserialize(d)?;
        let p = FinitePoset::new(r.size, r.covers).map_err(D::Error::custom)?;
        match r.rank {
            Some(rank) => p.with_rank(rank).map_err(D::Error::custom),
            None => Ok(FinitePoset { rank: None, ..p }),
        }
    }
}

/// Iterator returned by [`FinitePoset::chains_avoiding_bottom`].
pub struct ChainsAvoidingBottom<'a> {
    poset: &'a FinitePoset,
    frames: Vec<(Vec<usize>, usize)>,
    chain: Chain,
    emitted_empty: bool,
}

impl Iterator for ChainsAvoidingBottom<'_> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        if !self.emitted_empty {
            self.emitted_empty = true;
            return Some(Vec::new());
        }
        loop {
            let (cands, idx) = self.frames.last_mut()?;
            if *idx < cands.len() {
                let c = cands[*idx];
                *idx += 1;
                self.chain.push(c);
                self.frames.push((self.poset.strictly_above(c), 0));
                return Some(self.chain.clone());
            }
            self.frames.pop();
            self.chain.pop();
        }
    }
}

/// Iterator returned by [`FinitePoset::maximal_chains`].
pub struct MaximalChains<'a> {
    poset: &'a FinitePoset,
    top: usize,
    stack: Vec<(usize, usize)>,
}

impl Iterator for MaximalChains<'_> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        loop {
            let &(x, idx) = self.stack.last()?;
            if x == self.top {
                let chain = self.stack.iter().map(|&(e, _)| e).collect();
                self.stack.pop();
                return Some(chain);
            }
            let ups = &self.poset.up[x];
            if idx < ups.len() {
                self.stack.last_mut().expect("nonempty").1 += 1;
                self.stack.push((ups[idx], 0));
            } else {
                self.stack.pop();
            }
        }
    }
}

/// Iterator returned by [`FinitePoset::linear_extensions`].
pub struct LinearExtensions<'a> {
    poset: &'a FinitePoset,
    placed: Vec<usize>,
    used: Vec<bool>,
    pending: Vec<usize>,
    start: Vec<usize>,
    done: bool,
}

impl LinearExtensions<'_> {
    fn place(&mut self, c: usize) {
        self.used[c] = true;
        for &u in &self.poset.up[c] {
            self.pending[u] -= 1;
        }
        self.placed.push(c);
    }

    fn unplace(&mut self) {
        let c = self.placed.pop().expect("nonempty prefix");
        self.used[c] = false;
        for &u in &self.poset.up[c] {
            self.pending[u] += 1;
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let n = self.poset.size;
        loop {
            let k = self.placed.len();
            if k == n {
                let out = Permutation::new(self.placed.iter().map(|&e| e + 1).collect())
                    .expect("placed elements form a permutation");
                if n == 0 {
                    self.done = true;
                } else {
                    self.unplace();
                }
                return Some(out);
            }
            let found = (self.start[k]..n).find(|&c| !self.used[c] && self.pending[c] == 0);
            match found {
                Some(c) => {
                    self.start[k] = c + 1;
                    self.start[k + 1] = 0;
                    self.place(c);
                }
                None => {
                    if k == 0 {
                        self.done = true;
                        return None;
                    }
                    self.unplace();
                }
            }
        }
    }
}
