//! Dense bit vectors and matrices over GF(2) with elimination-based rank,
//! kernel and solve routines. Rows are packed into `u64` words.

use crate::error::{Error, Result};

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, pos: usize) -> Self {
        let mut b = Bits::zeros(len);
        b.set(pos, true);
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Bits) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn first_one(&self) -> Option<usize> {
        for (k, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { 1 } else { 0 })?;
        }
        Ok(())
    }
}

/// A dense matrix over GF(2), stored as one `Bits` row per matrix row.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    rows: usize,
    cols: usize,
    data: Vec<Bits>,
}

impl Mat2 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat2 {
            rows,
            cols,
            data: vec![Bits::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat2::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<Bits>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols);
        }
        Mat2 {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Build from column vectors (images of source basis elements).
    pub fn from_cols(cols: &[Bits], rows: usize) -> Self {
        let mut m = Mat2::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.data[i].set(j, v);
    }

    pub fn row(&self, i: usize) -> &Bits {
        &self.data[i]
    }

    /// Row echelon form in place; returns the pivot column of every pivot row.
    fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.data[i].get(c)) else {
                continue;
            };
            self.data.swap(r, p);
            let lead = self.data[r].clone();
            for (i, row) in self.data.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&lead);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Basis of the kernel {v : M v = 0}, deterministic order (ascending free column).
    pub fn kernel_basis(&self) -> Vec<Bits> {
        let mut m = self.clone();
        let pivots = m.echelonize();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for (free, _) in is_pivot.iter().enumerate().filter(|(_, p)| !**p) {
            let mut v = Bits::zeros(self.cols);
            v.set(free, true);
            for (r, &c) in pivots.iter().enumerate() {
                if m.data[r].get(free) {
                    v.set(c, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of M v = rhs, if any.
    pub fn solve(&self, rhs: &Bits) -> Option<Bits> {
        assert_eq!(rhs.len(), self.rows);
        let mut m = self.clone();
        let mut b = rhs.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.data[i].get(c)) else {
                continue;
            };
            m.data.swap(r, p);
            let bp = b.get(p);
            let br = b.get(r);
            b.set(p, br);
            b.set(r, bp);
            let lead = m.data[r].clone();
            let lead_b = b.get(r);
            for i in 0..self.rows {
                if i != r && m.data[i].get(c) {
                    let row = lead.clone();
                    m.data[i].xor_assign(&row);
                    if lead_b {
                        b.flip(i);
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        // Inconsistent if a zero row has rhs 1.
        for i in r..self.rows {
            if b.get(i) {
                return None;
            }
        }
        let mut v = Bits::zeros(self.cols);
        for &(row, col) in &pivots {
            if b.get(row) {
                v.set(col, true);
            }
        }
        Some(v)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &Bits) -> Bits {
        assert_eq!(v.len(), self.cols);
        let mut out = Bits::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = false;
            for j in self.data[i].ones() {
                acc ^= v.get(j);
            }
            out.set(i, acc);
        }
        out
    }
}

impl std::fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in &self.data {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

/// Assemble the matrix of a degree-homogeneous linear map from the images of
/// the source basis, expressed in the target basis. Rows index the target
/// basis, columns the source basis.
pub fn linear_map_matrix(images: &[Bits], target_dim: usize) -> Result<(Mat2, usize)> {
    for im in images {
        if im.len() != target_dim {
            return Err(Error::DimensionMismatch(format!(
                "image vector has length {}, target basis has dimension {}",
                im.len(),
                target_dim
            )));
        }
    }
    let m = Mat2::from_cols(images, target_dim);
    let rank = m.rank();
    Ok((m, rank))
}
