//! Dimension influence graphs and branchings.
//!
//! A *dimension influence graph* is a directed graph on the dimensions
//! `1..=n`, stored as an adjacency matrix with column = source and row =
//! target: edge `(i, j)` means entry `(j, i)` is set. A *legal* graph has a
//! loop at every vertex and is otherwise acyclic. A legal graph is
//! *realizable* when it is the reflexive transitive closure of a branching
//! (a forest of rooted trees directed away from the roots); those are
//! exactly the graphs whose transitive reduction has in-degree at most one
//! everywhere.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec};

/// Largest `n` accepted by [`enumerate_branchings`].
pub const BRANCHING_ENUM_MAX: usize = 6;
/// Largest `n` accepted by [`enumerate_legal_digs`].
pub const DIG_ENUM_MAX: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigError {
    #[error("parent map contains a cycle")]
    CyclicParents,
    #[error("parent label {parent} out of range 0..={n}")]
    ParentOutOfRange { parent: usize, n: usize },
    #[error("matrix is not a legal dimension influence graph")]
    NotLegal,
    #[error("graph is not the closure of a branching")]
    NotRealizable,
    #[error("vertex {vertex} has no ancestor at level {level}")]
    NoAncestorAtLevel { vertex: usize, level: usize },
    #[error("enumeration bound exceeded: n = {n}, supported up to {max}")]
    EnumerationBound { n: usize, max: usize },
}

/// A forest of rooted trees on vertices `1..=n`, directed away from the
/// roots. `parents[v-1]` is the parent label of `v`, with `0` meaning `v`
/// is a root. Acyclicity is checked at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branching {
    parents: Vec<usize>,
}

impl Branching {
    pub fn from_parents(parents: Vec<usize>) -> Result<Self, DigError> {
        let n = parents.len();
        for &p in &parents {
            if p > n {
                return Err(DigError::ParentOutOfRange { parent: p, n });
            }
        }
        let b = Self { parents };
        b.compute_depths()?;
        Ok(b)
    }

    /// The branching with no edges.
    #[must_use]
    pub fn trivial(n: usize) -> Self {
        Self {
            parents: vec![0; n],
        }
    }

    /// Samples a branching uniformly from the labelled branchings on `n`
    /// vertices by rejection: every vertex independently picks a parent from
    /// "root or any other vertex", and cyclic outcomes are resampled.
    #[must_use]
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(n, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let parents: Vec<usize> = (1..=n)
                .map(|v| {
                    let pick = rng.gen_range(0..n);
                    if pick == 0 {
                        0
                    } else if pick < v {
                        pick
                    } else {
                        pick + 1
                    }
                })
                .collect();
            if let Ok(b) = Self::from_parents(parents) {
                return b;
            }
        }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.parents.len()
    }

    #[must_use]
    pub fn parents(&self) -> &[usize] {
        &self.parents
    }

    #[must_use]
    pub fn parent_of(&self, v: usize) -> Option<usize> {
        match self.parents[v - 1] {
            0 => None,
            p => Some(p),
        }
    }

    /// Depth of every vertex in the forest (roots at depth 0).
    #[must_use]
    pub fn depths(&self) -> Vec<usize> {
        self.compute_depths()
            .expect("validated at construction")
    }

    fn compute_depths(&self) -> Result<Vec<usize>, DigError> {
        const UNKNOWN: usize = usize::MAX;
        let n = self.parents.len();
        let mut depth = vec![UNKNOWN; n];
        for start in 1..=n {
            if depth[start - 1] != UNKNOWN {
                continue;
            }
            // Walk to the first resolved ancestor (or a root), then unwind.
            let mut chain = Vec::new();
            let mut v = start;
            let base = loop {
                if depth[v - 1] != UNKNOWN {
                    break depth[v - 1];
                }
                if chain.contains(&v) {
                    return Err(DigError::CyclicParents);
                }
                chain.push(v);
                match self.parents[v - 1] {
                    0 => break usize::MAX, // root sentinel, resolved below
                    p => v = p,
                }
            };
            let mut d = if base == usize::MAX { 0 } else { base + 1 };
            for &u in chain.iter().rev() {
                depth[u - 1] = d;
                d += 1;
            }
        }
        Ok(depth)
    }

    /// Reflexive transitive closure: vertex `v` gains an in-edge from each
    /// of its strict ancestors plus a loop.
    #[must_use]
    pub fn closure(&self) -> Dig {
        let n = self.n();
        let mut adj = BitMatrix::identity(n);
        for v in 1..=n {
            let mut a = self.parent_of(v);
            while let Some(p) = a {
                adj.set(v, p, true);
                a = self.parent_of(p);
            }
        }
        Dig { adj }
    }
}

/// Level data for the vertices of a realizable graph: `level(v)` is the
/// depth of `v` in the underlying branching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAssignment {
    lvl: Vec<usize>,
}

impl LevelAssignment {
    #[must_use]
    pub fn new(lvl: Vec<usize>) -> Self {
        Self { lvl }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.lvl.len()
    }

    #[must_use]
    pub fn level(&self, v: usize) -> usize {
        self.lvl[v - 1]
    }

    #[must_use]
    pub fn max_level(&self) -> usize {
        self.lvl.iter().copied().max().unwrap_or(0)
    }

    #[must_use]
    pub fn as_slice(&self) -> &[usize] {
        &self.lvl
    }

    /// Vertex labels grouped by level, index 0 through `max_level`.
    #[must_use]
    pub fn buckets(&self) -> Vec<Vec<usize>> {
        let mut buckets = vec![Vec::new(); self.max_level() + 1];
        for (k, &l) in self.lvl.iter().enumerate() {
            buckets[l].push(k + 1);
        }
        buckets
    }
}

/// A legal dimension influence graph. Construction checks legality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dig {
    adj: BitMatrix,
}

impl Dig {
    pub fn new(adj: BitMatrix) -> Result<Self, DigError> {
        if !is_legal_dig(&adj) {
            return Err(DigError::NotLegal);
        }
        Ok(Self { adj })
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.adj.rows()
    }

    #[must_use]
    pub fn adj(&self) -> &BitMatrix {
        &self.adj
    }

    #[must_use]
    pub fn into_adj(self) -> BitMatrix {
        self.adj
    }

    /// Samples a legal graph: a uniformly random strict upper-triangular
    /// part on top of the identity, conjugated by a uniformly random
    /// permutation of the vertex labels.
    #[must_use]
    pub fn random_legal(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_legal_with(n, &mut rng)
    }

    pub fn random_legal_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut upper = BitMatrix::identity(n);
        for i in 1..=n {
            for j in (i + 1)..=n {
                if rng.gen::<bool>() {
                    upper.set(i, j, true);
                }
            }
        }
        // Fisher-Yates permutation of 1..=n.
        let mut perm: Vec<usize> = (1..=n).collect();
        for k in (1..n).rev() {
            let r = rng.gen_range(0..=k);
            perm.swap(k, r);
        }
        let mut adj = BitMatrix::zeros(n, n);
        for i in 1..=n {
            for j in 1..=n {
                if upper.get(i, j) {
                    adj.set(perm[i - 1], perm[j - 1], true);
                }
            }
        }
        Self { adj }
    }

    /// Levels from closure in-degrees: `level(v) = indegree(v) - 1`.
    /// Only meaningful for branching closures, so realizability is required.
    pub fn levels(&self) -> Result<LevelAssignment, DigError> {
        if !is_realizable_dig(&self.adj)? {
            return Err(DigError::NotRealizable);
        }
        let lvl = (1..=self.n())
            .map(|v| self.adj.row(v).count_ones() - 1)
            .collect();
        Ok(LevelAssignment::new(lvl))
    }

    /// The unique in-neighbor of `v` on level `level`, which must be
    /// strictly smaller than `v`'s own level.
    pub fn ancestor(&self, v: usize, level: usize) -> Result<usize, DigError> {
        let lvl = self.levels()?;
        if level >= lvl.level(v) {
            return Err(DigError::NoAncestorAtLevel { vertex: v, level });
        }
        self.adj
            .row(v)
            .iter_ones()
            .find(|&w| w != v && lvl.level(w) == level)
            .ok_or(DigError::NoAncestorAtLevel { vertex: v, level })
    }
}

/// True iff the matrix has a full diagonal and its off-diagonal part is
/// acyclic.
///
/// # Panics
/// Panics if the matrix is not square.
#[must_use]
pub fn is_legal_dig(m: &BitMatrix) -> bool {
    assert!(m.is_square(), "a dimension influence graph must be square");
    let n = m.rows();
    for i in 1..=n {
        if !m.get(i, i) {
            return false;
        }
    }
    off_diagonal_topo_order(m).is_some()
}

/// Kahn's algorithm on the loop-free part; `None` when a cycle exists.
fn off_diagonal_topo_order(m: &BitMatrix) -> Option<Vec<usize>> {
    let n = m.rows();
    let mut indeg: Vec<usize> = (1..=n)
        .map(|v| {
            m.row(v)
                .count_ones()
                .saturating_sub(usize::from(m.get(v, v)))
        })
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut ready: Vec<usize> = (1..=n).filter(|&v| indeg[v - 1] == 0).collect();
    while let Some(v) = ready.pop() {
        order.push(v);
        for w in 1..=n {
            if w != v && m.get(w, v) {
                indeg[w - 1] -= 1;
                if indeg[w - 1] == 0 {
                    ready.push(w);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Decides realizability of a legal graph: the transitive reduction of the
/// loop-free part must be a branching whose closure reproduces the graph.
pub fn is_realizable_dig(m: &BitMatrix) -> Result<bool, DigError> {
    if !is_legal_dig(m) {
        return Err(DigError::NotLegal);
    }
    let n = m.rows();
    let order = off_diagonal_topo_order(m).expect("legal graphs are acyclic");

    // Strict descendant sets, filled in reverse topological order.
    let mut desc = vec![BitVec::zeros(n); n + 1];
    for &u in order.iter().rev() {
        let mut d = BitVec::zeros(n);
        for w in out_neighbors(m, u) {
            d.set(w, true);
            let dw = desc[w].clone();
            d.or_assign(&dw);
        }
        desc[u] = d;
    }

    // Unique transitive reduction of a DAG: keep edge (u, v) unless some
    // other out-neighbor of u reaches v.
    let mut parents = vec![0usize; n];
    for u in 1..=n {
        for v in out_neighbors(m, u) {
            let redundant = out_neighbors(m, u).any(|w| w != v && desc[w].get(v));
            if !redundant {
                if parents[v - 1] != 0 {
                    return Ok(false); // reduction in-degree 2: not a branching
                }
                parents[v - 1] = u;
            }
        }
    }
    let branching = Branching::from_parents(parents).expect("reduction of a DAG is acyclic");
    Ok(branching.closure().adj() == m)
}

fn out_neighbors<'a>(m: &'a BitMatrix, u: usize) -> impl Iterator<Item = usize> + 'a {
    (1..=m.rows()).filter(move |&w| w != u && m.get(w, u))
}

/// All labelled branchings on `n` vertices; `(n+1)^(n-1)` of them.
pub fn enumerate_branchings(n: usize) -> Result<Vec<Branching>, DigError> {
    if n > BRANCHING_ENUM_MAX {
        return Err(DigError::EnumerationBound {
            n,
            max: BRANCHING_ENUM_MAX,
        });
    }
    // Odometer over parent choices: each vertex picks 0 (root) or one of the
    // n-1 other vertices; cyclic assignments are filtered out.
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let parents: Vec<usize> = (1..=n)
            .map(|v| {
                let c = choice[v - 1];
                if c == 0 {
                    0
                } else if c < v {
                    c
                } else {
                    c + 1
                }
            })
            .collect();
        if let Ok(b) = Branching::from_parents(parents) {
            out.push(b);
        }
        let mut k = 0;
        loop {
            if k == n {
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < n {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if n == 0 {
            return Ok(out);
        }
    }
}

/// All legal graphs on `n` vertices, by sweeping every off-diagonal
/// assignment and keeping the acyclic ones.
pub fn enumerate_legal_digs(n: usize) -> Result<Vec<Dig>, DigError> {
    if n > DIG_ENUM_MAX {
        return Err(DigError::EnumerationBound { n, max: DIG_ENUM_MAX });
    }
    let positions: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0..(1u64 << positions.len()) {
        let mut adj = BitMatrix::identity(n);
        for (k, &(i, j)) in positions.iter().enumerate() {
            if (mask >> k) & 1 == 1 {
                adj.set(i, j, true);
            }
        }
        if let Ok(dig) = Dig::new(adj) {
            out.push(dig);
        }
    }
    Ok(out)
}
