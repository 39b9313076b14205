//! Matousek-type USO instances, their outmaps, and query oracles.
//!
//! An instance is a legal dimension influence graph `M` together with a sink
//! location `s`; the orientation assigns vertex `v` the outmap `M(v xor s)`.
//! Two oracle models are provided: vertex evaluation (query a vertex, get
//! its outmap) and matrix-vector (query `q`, get `Mq` for a hidden `M`).
//! Both count every call and keep a transcript; solvers that want to avoid
//! paying for repeated or linearly dependent queries must do their own
//! caching.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dig::{self, Branching, Dig};
use crate::gf2::{BitMatrix, BitVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UsoError {
    #[error("matrix is not a legal dimension influence graph")]
    IllegalMatrix,
    #[error("sink length {sink} does not match dimension {n}")]
    SinkDimension { sink: usize, n: usize },
    #[error("outmap function is not a consistent orientation")]
    InconsistentOrientation,
}

/// A Matousek-type USO: orientation `o(v) = M(v xor s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatousekUso {
    matrix: BitMatrix,
    sink: BitVec,
}

impl MatousekUso {
    pub fn new(matrix: BitMatrix, sink: BitVec) -> Result<Self, UsoError> {
        if !matrix.is_square() || !dig::is_legal_dig(&matrix) {
            return Err(UsoError::IllegalMatrix);
        }
        if sink.len() != matrix.rows() {
            return Err(UsoError::SinkDimension {
                sink: sink.len(),
                n: matrix.rows(),
            });
        }
        Ok(Self { matrix, sink })
    }

    /// Random instance over an arbitrary legal graph.
    #[must_use]
    pub fn random_general(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_general_with(n, &mut rng)
    }

    pub fn random_general_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let dig = Dig::random_legal_with(n, rng);
        let sink = BitVec::random(n, rng);
        Self::new(dig.into_adj(), sink).expect("legal by construction")
    }

    /// Random realizable instance; returns the generating branching as well.
    #[must_use]
    pub fn random_realizable(n: usize, seed: u64) -> (Self, Branching) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_realizable_with(n, &mut rng)
    }

    pub fn random_realizable_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Self, Branching) {
        let branching = Branching::random_with(n, rng);
        let sink = BitVec::random(n, rng);
        let uso = Self::new(branching.closure().into_adj(), sink).expect("closures are legal");
        (uso, branching)
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    #[must_use]
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    #[must_use]
    pub fn sink(&self) -> &BitVec {
        &self.sink
    }

    /// The outmap of vertex `v`.
    #[must_use]
    pub fn outmap(&self, v: &BitVec) -> BitVec {
        self.matrix.mul_vec(&v.xor(&self.sink))
    }

    /// True iff every edge of dimension `d` points the same way, which for
    /// these orientations is equivalent to row `d` of the matrix being the
    /// unit row `e_d`.
    #[must_use]
    pub fn is_combed(&self, d: usize) -> bool {
        let row = self.matrix.row(d);
        row.count_ones() == 1 && row.get(d)
    }
}

/// Oracle access to an orientation: one query returns one vertex's outmap.
pub trait VertexEvalOracle {
    fn n(&self) -> usize;
    fn query(&mut self, v: &BitVec) -> BitVec;
    fn query_count(&self) -> usize;
    fn transcript(&self) -> &[(BitVec, BitVec)];
}

/// Vertex-evaluation oracle backed by a concrete instance.
#[derive(Clone, Debug)]
pub struct UsoOracle {
    uso: MatousekUso,
    transcript: Vec<(BitVec, BitVec)>,
}

impl UsoOracle {
    #[must_use]
    pub fn new(uso: MatousekUso) -> Self {
        Self {
            uso,
            transcript: Vec::new(),
        }
    }

    #[must_use]
    pub fn instance(&self) -> &MatousekUso {
        &self.uso
    }
}

impl VertexEvalOracle for UsoOracle {
    fn n(&self) -> usize {
        self.uso.n()
    }

    fn query(&mut self, v: &BitVec) -> BitVec {
        let reply = self.uso.outmap(v);
        self.transcript.push((v.clone(), reply.clone()));
        reply
    }

    fn query_count(&self) -> usize {
        self.transcript.len()
    }

    fn transcript(&self) -> &[(BitVec, BitVec)] {
        &self.transcript
    }
}

/// Vertex-evaluation oracle backed by an explicit outmap table, indexed by
/// [`BitVec::to_index`]. Useful for corrupted or non-USO orientations.
#[derive(Clone, Debug)]
pub struct OutmapTableOracle {
    n: usize,
    outmaps: Vec<BitVec>,
    transcript: Vec<(BitVec, BitVec)>,
}

impl OutmapTableOracle {
    /// # Panics
    /// Panics unless `outmaps.len() == 2^n` with every entry of length `n`.
    #[must_use]
    pub fn new(n: usize, outmaps: Vec<BitVec>) -> Self {
        assert_eq!(outmaps.len(), 1 << n, "table must cover all vertices");
        assert!(outmaps.iter().all(|o| o.len() == n));
        Self {
            n,
            outmaps,
            transcript: Vec::new(),
        }
    }

    /// Tabulates an existing instance, so entries can then be corrupted.
    #[must_use]
    pub fn from_uso(uso: &MatousekUso) -> Self {
        let n = uso.n();
        let outmaps = (0..1usize << n)
            .map(|i| uso.outmap(&BitVec::from_index(n, i)))
            .collect();
        Self::new(n, outmaps)
    }

    pub fn outmaps_mut(&mut self) -> &mut [BitVec] {
        &mut self.outmaps
    }
}

impl VertexEvalOracle for OutmapTableOracle {
    fn n(&self) -> usize {
        self.n
    }

    fn query(&mut self, v: &BitVec) -> BitVec {
        let reply = self.outmaps[v.to_index()].clone();
        self.transcript.push((v.clone(), reply.clone()));
        reply
    }

    fn query_count(&self) -> usize {
        self.transcript.len()
    }

    fn transcript(&self) -> &[(BitVec, BitVec)] {
        &self.transcript
    }
}

/// Oracle access to the hidden-matrix problem: the target `y` is public,
/// the matrix is only reachable through products `Mq`.
pub trait MxyOracle {
    fn n(&self) -> usize;
    fn target(&self) -> &BitVec;
    fn query(&mut self, q: &BitVec) -> BitVec;
    fn query_count(&self) -> usize;
    fn transcript(&self) -> &[(BitVec, BitVec)];
}

/// Matrix-vector oracle wrapping a fixed hidden matrix.
#[derive(Clone, Debug)]
pub struct MatrixOracle {
    matrix: BitMatrix,
    y: BitVec,
    transcript: Vec<(BitVec, BitVec)>,
}

impl MatrixOracle {
    /// # Panics
    /// Panics unless `matrix` is square with `y.len()` rows.
    #[must_use]
    pub fn new(matrix: BitMatrix, y: BitVec) -> Self {
        assert!(matrix.is_square());
        assert_eq!(matrix.rows(), y.len());
        Self {
            matrix,
            y,
            transcript: Vec::new(),
        }
    }

    /// The hidden matrix, for verification after a solve.
    #[must_use]
    pub fn hidden_matrix(&self) -> &BitMatrix {
        &self.matrix
    }
}

impl MxyOracle for MatrixOracle {
    fn n(&self) -> usize {
        self.matrix.rows()
    }

    fn target(&self) -> &BitVec {
        &self.y
    }

    fn query(&mut self, q: &BitVec) -> BitVec {
        let reply = self.matrix.mul_vec(q);
        self.transcript.push((q.clone(), reply.clone()));
        reply
    }

    fn query_count(&self) -> usize {
        self.transcript.len()
    }

    fn transcript(&self) -> &[(BitVec, BitVec)] {
        &self.transcript
    }
}

/// A vertex/dimension pair where both endpoints of an edge claim the same
/// direction.
pub fn find_consistency_violation<F>(mut outmap: F, n: usize) -> Option<(BitVec, usize)>
where
    F: FnMut(&BitVec) -> BitVec,
{
    assert!(n <= 12, "exhaustive consistency check supports n <= 12");
    let table: Vec<BitVec> = (0..1usize << n)
        .map(|i| outmap(&BitVec::from_index(n, i)))
        .collect();
    for (vi, om) in table.iter().enumerate() {
        for d in 1..=n {
            let neighbor = vi ^ (1 << (d - 1));
            if om.get(d) == table[neighbor].get(d) {
                return Some((BitVec::from_index(n, vi), d));
            }
        }
    }
    None
}

/// Edge-consistency of an orientation: each edge leaves exactly one of its
/// endpoints.
pub fn check_orientation_consistency<F>(outmap: F, n: usize) -> bool
where
    F: FnMut(&BitVec) -> BitVec,
{
    find_consistency_violation(outmap, n).is_none()
}

/// A face without a unique sink, described by its free-coordinate mask, the
/// values of the fixed coordinates, and the number of sinks found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceViolation {
    pub free: BitVec,
    pub fixed: BitVec,
    pub sinks: usize,
}

/// Sweeps every face of the hypercube and reports the first one whose
/// induced subgraph does not have exactly one sink.
///
/// Errors if the orientation itself is inconsistent.
pub fn find_uso_violation<F>(
    mut outmap: F,
    n: usize,
) -> Result<Option<FaceViolation>, UsoError>
where
    F: FnMut(&BitVec) -> BitVec,
{
    assert!(n <= 8, "exhaustive face sweep supports n <= 8");
    let table: Vec<usize> = (0..1usize << n)
        .map(|i| outmap(&BitVec::from_index(n, i)).to_index())
        .collect();
    {
        let by_table = |v: &BitVec| BitVec::from_index(n, table[v.to_index()]);
        if !check_orientation_consistency(by_table, n) {
            return Err(UsoError::InconsistentOrientation);
        }
    }
    let full = (1usize << n) - 1;
    for free in 0..=full {
        let fixed_positions = full & !free;
        // Every assignment of the fixed coordinates, as a submask sweep.
        let mut fixed = fixed_positions;
        loop {
            let mut sinks = 0;
            let mut sub = free;
            loop {
                let vertex = fixed | sub;
                if table[vertex] & free == 0 {
                    sinks += 1;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            if sinks != 1 {
                return Ok(Some(FaceViolation {
                    free: BitVec::from_index(n, free),
                    fixed: BitVec::from_index(n, fixed),
                    sinks,
                }));
            }
            if fixed == 0 {
                break;
            }
            fixed = (fixed - 1) & fixed_positions;
        }
    }
    Ok(None)
}

/// True iff every non-empty face has a unique sink.
pub fn check_uso<F>(outmap: F, n: usize) -> Result<bool, UsoError>
where
    F: FnMut(&BitVec) -> BitVec,
{
    Ok(find_uso_violation(outmap, n)?.is_none())
}

/// Looks for a vertex pair breaking `o(x) xor o(y) = M(x xor y)`.
/// Exhaustive for `n <= 5`, sampled deterministically above that.
#[must_use]
pub fn find_parallel_violation(uso: &MatousekUso) -> Option<(BitVec, BitVec)> {
    let n = uso.n();
    assert!(n <= 8, "parallel-law check supports n <= 8");
    let holds = |x: &BitVec, y: &BitVec| {
        uso.outmap(x).xor(&uso.outmap(y)) == uso.matrix().mul_vec(&x.xor(y))
    };
    if n <= 5 {
        for xi in 0..1usize << n {
            for yi in 0..1usize << n {
                let x = BitVec::from_index(n, xi);
                let y = BitVec::from_index(n, yi);
                if !holds(&x, &y) {
                    return Some((x, y));
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x70a1);
        for _ in 0..4096 {
            let x = BitVec::random(n, &mut rng);
            let y = BitVec::random(n, &mut rng);
            if !holds(&x, &y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// The parallel-structure law relating any two outmaps through the matrix.
#[must_use]
pub fn check_parallel_law(uso: &MatousekUso) -> bool {
    find_parallel_violation(uso).is_none()
}
