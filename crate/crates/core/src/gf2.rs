//! Dense GF(2) linear algebra: bit-packed vectors and matrices.
//!
//! Everything in this crate lives over GF(2). Vectors double as hypercube
//! vertices, outmaps, oracle queries and graph rows; matrices double as
//! adjacency matrices and query systems.
//!
//! Coordinates are 1-based (`1..=len`) throughout: dimensions and graph
//! vertices are labelled `1..=n`, and label `0` is reserved by callers as a
//! "no vertex" sentinel. Bit strings print with index 1 leftmost.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{BitAnd, BitXor};
use std::str::FromStr;

use rand::Rng;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

const WORD_BITS: usize = 64;

/// Errors from GF(2) solving and parsing routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("matrix is singular")]
    Singular,
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("invalid bit character {0:?} (expected '0' or '1')")]
    InvalidBit(char),
    #[error("matrix rows have unequal lengths")]
    RaggedRows,
}

/// A fixed-length vector over GF(2), bit-packed into `u64` words.
///
/// Index `i` (1-based) is stored at word `(i-1)/64`, bit `(i-1)%64`. Unused
/// high bits of the last word are kept zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    /// The zero vector of the given length.
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// The all-ones vector of the given length.
    #[must_use]
    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in &mut v.words {
            *w = !0;
        }
        v.mask_tail();
        v
    }

    /// The standard basis vector with a single one at index `i`.
    #[must_use]
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// A uniformly random vector drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut v = Self::zeros(len);
        for w in &mut v.words {
            *w = rng.gen();
        }
        v.mask_tail();
        v
    }

    /// Decodes a vector from an integer, index 1 being the least significant
    /// bit. Inverse of [`BitVec::to_index`].
    #[must_use]
    pub fn from_index(len: usize, index: usize) -> Self {
        assert!(len < WORD_BITS, "from_index supports lengths below 64");
        assert!(index < (1usize << len), "index {index} out of range for {len} bits");
        let mut v = Self::zeros(len);
        if !v.words.is_empty() {
            v.words[0] = index as u64;
        }
        v
    }

    /// Encodes the vector as an integer, index 1 being the least significant
    /// bit. Requires `len < 64`.
    #[must_use]
    pub fn to_index(&self) -> usize {
        assert!(self.len < WORD_BITS, "to_index supports lengths below 64");
        self.words.first().copied().unwrap_or(0) as usize
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Returns bit `i`.
    ///
    /// # Panics
    /// Panics if `i` is outside `1..=len`.
    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            1 <= i && i <= self.len,
            "bit index {i} out of range 1..={}",
            self.len
        );
        (self.words[(i - 1) / WORD_BITS] >> ((i - 1) % WORD_BITS)) & 1 == 1
    }

    /// Sets bit `i` to `value`.
    ///
    /// # Panics
    /// Panics if `i` is outside `1..=len`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            1 <= i && i <= self.len,
            "bit index {i} out of range 1..={}",
            self.len
        );
        let mask = 1u64 << ((i - 1) % WORD_BITS);
        if value {
            self.words[(i - 1) / WORD_BITS] |= mask;
        } else {
            self.words[(i - 1) / WORD_BITS] &= !mask;
        }
    }

    /// Flips bit `i`.
    pub fn flip(&mut self, i: usize) {
        let current = self.get(i);
        self.set(i, !current);
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit, if any.
    #[must_use]
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize + 1);
            }
        }
        None
    }

    /// Iterates over the indices of set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + bit + 1)
                }
            })
        })
    }

    /// Component-wise addition (xor).
    ///
    /// # Panics
    /// Panics if the lengths differ.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor: length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Component-wise multiplication (and).
    ///
    /// # Panics
    /// Panics if the lengths differ.
    pub fn and_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "and: length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    #[must_use]
    pub fn and(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.and_assign(other);
        out
    }

    /// Component-wise or, used for set unions.
    ///
    /// # Panics
    /// Panics if the lengths differ.
    pub fn or_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "or: length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// GF(2) inner product: the parity of the component-wise product.
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot: length mismatch");
        let mut parity = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            parity ^= (a & b).count_ones();
        }
        parity & 1 == 1
    }

    /// Returns a copy one bit longer, with `bit` appended at index `len+1`.
    pub(crate) fn with_appended(&self, bit: bool) -> Self {
        let mut out = Self::zeros(self.len + 1);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out.set(self.len + 1, bit);
        out
    }

    fn mask_tail(&mut self) {
        let tail = self.len % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut v = BitVec::zeros(s.chars().count());
        for (k, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(k + 1, true),
                other => return Err(Gf2Error::InvalidBit(other)),
            }
        }
        Ok(v)
    }
}

impl BitXor for &BitVec {
    type Output = BitVec;

    fn bitxor(self, rhs: Self) -> BitVec {
        self.xor(rhs)
    }
}

impl BitAnd for &BitVec {
    type Output = BitVec;

    fn bitand(self, rhs: Self) -> BitVec {
        self.and(rhs)
    }
}

impl Serialize for BitVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// A dense GF(2) matrix stored as a list of packed rows.
///
/// Entry `(i, j)` (row, column; 1-based) is bit `j` of row `i`. A matrix may
/// have zero rows but always has a fixed column count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 1..=n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows, each of which must have `cols` bits.
    ///
    /// # Panics
    /// Panics on a row-length mismatch.
    #[must_use]
    pub fn new(rows: Vec<BitVec>, cols: usize) -> Self {
        for row in &rows {
            assert_eq!(row.len(), cols, "row length mismatch");
        }
        Self { cols, rows }
    }

    /// Builds a matrix from a non-empty set of equal-length rows.
    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, BitVec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Gf2Error::RaggedRows);
        }
        Ok(Self { cols, rows })
    }

    /// Appends a row.
    ///
    /// # Panics
    /// Panics if the row length differs from the column count.
    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.rows.push(row);
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn is_square(&self) -> bool {
        self.rows() == self.cols
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row(i).get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(1 <= i && i <= self.rows(), "row index {i} out of range");
        self.rows[i - 1].set(j, value);
    }

    /// Row `i` (1-based).
    #[must_use]
    pub fn row(&self, i: usize) -> &BitVec {
        assert!(1 <= i && i <= self.rows(), "row index {i} out of range");
        &self.rows[i - 1]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut BitVec {
        assert!(1 <= i && i <= self.rows(), "row index {i} out of range");
        &mut self.rows[i - 1]
    }

    #[must_use]
    pub fn iter_rows(&self) -> std::slice::Iter<'_, BitVec> {
        self.rows.iter()
    }

    /// Column `j` extracted as a vector of length `rows`.
    #[must_use]
    pub fn column(&self, j: usize) -> BitVec {
        let mut out = BitVec::zeros(self.rows());
        for i in 1..=self.rows() {
            if self.get(i, j) {
                out.set(i, true);
            }
        }
        out
    }

    /// Matrix-vector product over GF(2).
    ///
    /// # Panics
    /// Panics if `x.len() != cols`.
    #[must_use]
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(
            x.len(),
            self.cols,
            "matrix-vector product: vector length must equal the column count"
        );
        let mut out = BitVec::zeros(self.rows());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(x) {
                out.set(i + 1, true);
            }
        }
        out
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix[{}x{}](", self.rows(), self.cols)?;
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{row}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.rows.iter().map(|r| r.to_string()))
    }
}

impl<'de> Deserialize<'de> for BitMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let rows = strings
            .iter()
            .map(|s| s.parse::<BitVec>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(de::Error::custom)?;
        BitMatrix::from_rows(rows).map_err(de::Error::custom)
    }
}

/// Reduced row echelon form in place over columns `1..=active_cols`, with the
/// leftmost-column pivot rule. Returns the pivot columns in increasing order.
/// Rows may be wider than `active_cols`; the extra columns ride along as an
/// augmented part.
fn reduce(rows: &mut [BitVec], active_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 1..=active_cols {
        let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

/// Solves `M x = y` for square invertible `M`.
///
/// # Panics
/// Panics if `M` is not square or `y.len() != M.rows()`.
pub fn solve(m: &BitMatrix, y: &BitVec) -> Result<BitVec, Gf2Error> {
    assert!(m.is_square(), "solve requires a square matrix");
    assert_eq!(y.len(), m.rows(), "solve: right-hand side length mismatch");
    let n = m.cols();
    let mut rows: Vec<BitVec> = m
        .iter_rows()
        .enumerate()
        .map(|(i, row)| row.with_appended(y.get(i + 1)))
        .collect();
    let pivots = reduce(&mut rows, n);
    if pivots.len() < n {
        return Err(Gf2Error::Singular);
    }
    // Full rank square: row k has its pivot in column k+1, so the augmented
    // column is the solution read off directly.
    let mut x = BitVec::zeros(n);
    for (k, row) in rows.iter().enumerate() {
        if row.get(n + 1) {
            x.set(k + 1, true);
        }
    }
    Ok(x)
}

/// Rank of `m` over GF(2).
#[must_use]
pub fn rank(m: &BitMatrix) -> usize {
    let mut rows: Vec<BitVec> = m.iter_rows().cloned().collect();
    reduce(&mut rows, m.cols()).len()
}

/// Non-pivot column indices of `x` after row reduction with the
/// leftmost-column pivot rule. `|result| = cols - rank(x)`.
#[must_use]
pub fn free_variables(x: &BitMatrix) -> BTreeSet<usize> {
    let mut rows: Vec<BitVec> = x.iter_rows().cloned().collect();
    let pivots = reduce(&mut rows, x.cols());
    (1..=x.cols())
        .filter(|c| pivots.binary_search(c).is_err())
        .collect()
}

/// Expresses `y` as a GF(2) combination of `vs`, returning the coefficient
/// vector (length `vs.len()`), or `None` if `y` is outside the span. The
/// empty combination is allowed.
#[must_use]
pub fn express_in_span(vs: &[BitVec], y: &BitVec) -> Option<BitVec> {
    let k = vs.len();
    let mut basis: Vec<(BitVec, BitVec)> = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        let mut cur = v.clone();
        let mut coeff = BitVec::unit(k, i + 1);
        while let Some(p) = cur.first_one() {
            match basis.iter().find(|(b, _)| b.first_one() == Some(p)) {
                Some((bv, bc)) => {
                    cur.xor_assign(bv);
                    coeff.xor_assign(bc);
                }
                None => {
                    basis.push((cur, coeff));
                    break;
                }
            }
        }
    }
    let mut rem = y.clone();
    let mut combo = BitVec::zeros(k);
    while let Some(p) = rem.first_one() {
        let (bv, bc) = basis.iter().find(|(b, _)| b.first_one() == Some(p))?;
        rem.xor_assign(bv);
        combo.xor_assign(bc);
    }
    Some(combo)
}

/// True iff `y` lies in the GF(2) span of `vs`.
#[must_use]
pub fn span_contains(vs: &[BitVec], y: &BitVec) -> bool {
    express_in_span(vs, y).is_some()
}

/// Solves `X z = b` with every variable in `zeroed` fixed to 0.
///
/// `zeroed` is expected to cover the free variables of `X`, which pins the
/// solution uniquely; the result is verified and `Inconsistent` is returned
/// if no such `z` exists.
pub fn solve_underdetermined(
    x: &BitMatrix,
    b: &BitVec,
    zeroed: &BTreeSet<usize>,
) -> Result<BitVec, Gf2Error> {
    assert_eq!(b.len(), x.rows(), "solve_underdetermined: rhs length mismatch");
    let n = x.cols();
    let mut rows: Vec<BitVec> = x
        .iter_rows()
        .enumerate()
        .map(|(i, row)| row.with_appended(b.get(i + 1)))
        .collect();
    reduce(&mut rows, n);
    let mut z = BitVec::zeros(n);
    for row in &rows {
        // In reduced form a pivot row holds its pivot plus free columns only,
        // and all free variables are taken as zero.
        match (1..=n).find(|&c| row.get(c)) {
            Some(pivot) => {
                if row.get(n + 1) {
                    if zeroed.contains(&pivot) {
                        return Err(Gf2Error::Inconsistent);
                    }
                    z.set(pivot, true);
                }
            }
            None => {
                if row.get(n + 1) {
                    return Err(Gf2Error::Inconsistent);
                }
            }
        }
    }
    if &x.mul_vec(&z) != b {
        return Err(Gf2Error::Inconsistent);
    }
    Ok(z)
}
