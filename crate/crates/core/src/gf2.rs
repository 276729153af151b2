//! Dense linear algebra over the two-element field.
//!
//! Matrices are stored row-major as packed `u64` words. They act on column
//! vectors: entry `(i, j)` is the coefficient of basis vector `i` of the
//! target in the image of basis vector `j` of the source.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over F₂ of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let parity: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        parity % 2 == 1
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "[{s}]")
    }
}

/// A dense matrix over F₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BitVector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. Returns `None` when the rows
    /// are ragged or contain entries other than 0 and 1.
    pub fn from_rows(rows: &[Vec<u8>], cols: usize) -> Option<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return None;
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => return None,
                }
            }
        }
        Some(m)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_row_vectors(cols: usize, rows: Vec<BitVector>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Self { rows: rows.len(), cols, data: rows }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.data.iter().map(BitVector::to_bits).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value)
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i].flip(j)
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.data[i].ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix product `self · rhs`. Panics on a dimension mismatch.
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in self.data[i].ones() {
                out.data[i].xor_assign(&rhs.data[k]);
            }
        }
        out
    }

    /// Sum `self + rhs`. Panics on a dimension mismatch.
    pub fn add(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in sum");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            a.xor_assign(b);
        }
        out
    }

    pub fn apply(&self, v: &BitVector) -> BitVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in application");
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if self.data[i].dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<BitVector> = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// A basis of the right kernel `{v : self · v = 0}`.
    pub fn kernel(&self) -> Vec<BitVector> {
        let mut rows: Vec<BitVector> = self.data.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::unit(self.cols, free);
                for (r, &pc) in pivots.iter().enumerate() {
                    if rows[r].get(free) {
                        v.set(pc, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = BitMatrix::identity(n).data;
        for col in 0..n {
            let p = (col..n).find(|&r| a[r].get(col))?;
            a.swap(col, p);
            inv.swap(col, p);
            let (pa, pi) = (a[col].clone(), inv[col].clone());
            for r in 0..n {
                if r != col && a[r].get(col) {
                    a[r].xor_assign(&pa);
                    inv[r].xor_assign(&pi);
                }
            }
        }
        Some(BitMatrix { rows: n, cols: n, data: inv })
    }

    /// Basis of the column space, as a list of reduced independent columns.
    pub fn column_space(&self) -> Vec<BitVector> {
        let mut ech = Echelon::new(self.rows, 0);
        for j in 0..self.cols {
            ech.insert(self.column(j), BitVector::zeros(0));
        }
        ech.into_vectors()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// An incrementally built echelon basis. Every stored vector carries a tag
/// vector recording which tagged inputs were combined to produce it, so that
/// reducing a query also reports its coordinates in terms of those inputs.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    tag_dim: usize,
    pivots: Vec<usize>,
    vectors: Vec<BitVector>,
    tags: Vec<BitVector>,
}

impl Echelon {
    pub fn new(dim: usize, tag_dim: usize) -> Self {
        Self { dim, tag_dim, pivots: Vec::new(), vectors: Vec::new(), tags: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Reduces `v` against the stored basis, returning the residual and the
    /// accumulated tag.
    pub fn reduce(&self, v: &BitVector) -> (BitVector, BitVector) {
        debug_assert_eq!(v.len(), self.dim);
        let mut v = v.clone();
        let mut tag = BitVector::zeros(self.tag_dim);
        for ((&p, b), t) in self.pivots.iter().zip(&self.vectors).zip(&self.tags) {
            if v.get(p) {
                v.xor_assign(b);
                tag.xor_assign(t);
            }
        }
        (v, tag)
    }

    /// Inserts `v` with the given tag. Returns `true` if `v` was independent
    /// of the stored vectors.
    pub fn insert(&mut self, v: BitVector, tag: BitVector) -> bool {
        debug_assert_eq!(tag.len(), self.tag_dim);
        let (mut r, reduced_tag) = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        let mut t = tag;
        t.xor_assign(&reduced_tag);
        // keep the basis fully reduced at the new pivot
        for (b, bt) in self.vectors.iter_mut().zip(self.tags.iter_mut()) {
            if b.get(p) {
                b.xor_assign(&r);
                bt.xor_assign(&t);
            }
        }
        r.set(p, true);
        self.pivots.push(p);
        self.vectors.push(r);
        self.tags.push(t);
        true
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).0.is_zero()
    }

    pub fn into_vectors(self) -> Vec<BitVector> {
        self.vectors
    }
}
