//! Dense matrices over F2, word-packed by row.
//!
//! These house the Toeplitz factors L and U of the multiplication
//! decomposition, the reduction matrix M and the Frobenius/squaring maps.

use crate::bits;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let wpr = bits::words_for(cols);
        BitMatrix { rows, cols, wpr, words: vec![0; rows * wpr] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        bits::get(self.row(r), c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols);
        let wpr = self.wpr;
        bits::set(&mut self.words[r * wpr..(r + 1) * wpr], c, v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.words[r * self.wpr..(r + 1) * self.wpr]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Matrix-vector product; v holds `cols` bits, the result `rows` bits.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.wpr, "vector length mismatch");
        let mut out = vec![0u64; bits::words_for(self.rows)];
        for r in 0..self.rows {
            if bits::parity_and(self.row(r), v) {
                bits::set(&mut out, r, true);
            }
        }
        out
    }

    pub fn mul_mat(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = BitMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = vec![0u64; other.wpr];
            for c in 0..self.cols {
                if self.get(r, c) {
                    bits::xor_in(&mut acc, other.row(c));
                }
            }
            out.words[r * out.wpr..(r + 1) * out.wpr].copy_from_slice(&acc);
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> BitMatrix {
        assert_eq!(self.rows, self.cols, "pow needs a square matrix");
        let mut result = BitMatrix::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_mat(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mat(&base);
            }
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_acts_trivially() {
        let id = BitMatrix::identity(70);
        let mut v = vec![0u64; 2];
        bits::set(&mut v, 0, true);
        bits::set(&mut v, 69, true);
        assert_eq!(id.mul_vec(&v), v);
        assert!(id.is_identity());
    }

    #[test]
    fn mul_mat_matches_mul_vec() {
        // (A*B)v == A(Bv) on a small fixed example
        let mut a = BitMatrix::zero(3, 3);
        let mut b = BitMatrix::zero(3, 3);
        a.set(0, 1, true);
        a.set(1, 0, true);
        a.set(1, 2, true);
        a.set(2, 2, true);
        b.set(0, 0, true);
        b.set(1, 1, true);
        b.set(2, 0, true);
        b.set(2, 1, true);
        for x in 0..8u64 {
            let v = vec![x];
            assert_eq!(a.mul_mat(&b).mul_vec(&v), a.mul_vec(&b.mul_vec(&v)));
        }
    }

    #[test]
    fn pow_of_permutation_cycles() {
        let mut p = BitMatrix::zero(3, 3);
        p.set(0, 1, true);
        p.set(1, 2, true);
        p.set(2, 0, true);
        assert!(p.pow(3).is_identity());
        assert_eq!(p.pow(2), p.mul_mat(&p));
        assert!(p.pow(0).is_identity());
    }
}
