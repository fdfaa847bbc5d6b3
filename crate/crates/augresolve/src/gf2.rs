//! Dense bit matrices over GF(2).

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64).max(1);
        Gf2Matrix { rows, cols, stride, bits: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Gf2Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v & 1 == 1);
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

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.bits[r * self.stride + c / 64];
        let mask = 1u64 << (c % 64);
        if v {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.bits[r * self.stride + c / 64] ^= 1u64 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.stride..(r + 1) * self.stride]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for k in 0..self.stride {
            let v = self.bits[src * self.stride + k];
            self.bits[dst * self.stride + k] ^= v;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Nonzero positions as `(row, col)`.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.push((r, c));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for (r, c) in self.support() {
            t.set(c, r, true);
        }
        t
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    for w in 0..out.stride {
                        out.bits[r * out.stride + w] ^= other.bits[k * other.stride + w];
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn echelon(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..m.cols {
            let Some(p) = (next..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            if p != next {
                for k in 0..m.stride {
                    m.bits.swap(p * m.stride + k, next * m.stride + k);
                }
            }
            for r in 0..m.rows {
                if r != next && m.get(r, c) {
                    m.xor_row_into(next, r);
                }
            }
            pivots.push(c);
            next += 1;
            if next == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of `{x : M x = 0}` as column index sets.
    pub fn kernel(&self) -> Vec<Vec<usize>> {
        let (m, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![f];
                for (r, &pc) in pivots.iter().enumerate() {
                    if m.get(r, f) {
                        v.push(pc);
                    }
                }
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Standard basis vectors of the codomain spanning a complement of the image.
    pub fn cokernel_representatives(&self) -> Vec<usize> {
        let (_, pivots) = self.transpose().echelon();
        (0..self.rows).filter(|r| !pivots.contains(r)).collect()
    }

    /// Applies the matrix to a vector given by its support.
    pub fn apply(&self, support: &[usize]) -> Vec<usize> {
        let mut acc = vec![0u64; self.rows.div_ceil(64).max(1)];
        for r in 0..self.rows {
            let bit = support.iter().filter(|&&c| self.get(r, c)).count() & 1;
            acc[r / 64] |= (bit as u64) << (r % 64);
        }
        (0..self.rows).filter(|&r| acc[r / 64] >> (r % 64) & 1 == 1).collect()
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row(r).iter().all(|&w| w == 0)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(Gf2Matrix::zeros(2, 3).rank(), 0);
        assert_eq!(Gf2Matrix::identity(5).rank(), 5);
        let m = Gf2Matrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = Gf2Matrix::from_rows(&[vec![1, 1, 0, 1], vec![0, 1, 1, 1]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.apply(&v).is_empty());
        }
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let mut m = Gf2Matrix::zeros(3, 130);
        m.set(0, 129, true);
        m.set(1, 64, true);
        m.set(2, 64, true);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.cokernel_representatives().len(), 1);
    }
}
