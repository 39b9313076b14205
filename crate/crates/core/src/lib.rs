//! Sink-finding in Matousek-type unique sink orientations of the hypercube,
//! and the equivalent hidden-matrix query problem over GF(2).
//!
//! A Matousek-type orientation is determined by a legal *dimension
//! influence graph* `M` and a sink location `s` through the outmap
//! `o(v) = M(v xor s)`. Finding the sink with vertex evaluations is the
//! same problem, up to one query, as recovering `x` with `Mx = y` from a
//! matrix-vector oracle. This crate provides:
//!
//! - [`gf2`]: bit-packed GF(2) vectors, matrices, and elimination;
//! - [`dig`]: influence graphs, branchings, legality and realizability;
//! - [`uso`]: instances, outmaps, counting oracles, structural checks;
//! - [`solvers`]: antipodal jumping (at most `n` evaluations), naive matrix
//!   recovery (`n` queries), levelling plus divide-and-conquer recovery for
//!   realizable instances (`O(log^2 n)` queries), and the reductions
//!   between the two oracle models;
//! - [`adversaries`]: adaptive lower-bound oracles with auditors;
//! - [`instance`]: the JSON instance file format.

pub mod adversaries;
pub mod dig;
pub mod gf2;
pub mod instance;
pub mod solvers;
pub mod uso;

pub use dig::{Branching, Dig, LevelAssignment};
pub use gf2::{BitMatrix, BitVec};
pub use instance::InstanceFile;
pub use solvers::{MxySolver, SinkFinder, SolveReport};
pub use uso::{MatousekUso, MatrixOracle, MxyOracle, UsoOracle, VertexEvalOracle};
