// Elimination loops index two rows of the same matrix at once.
#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{clear_denominators, Rational};

/// Dense rational matrix, row-major. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "QMatrix data length");
        QMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational::one();
        }
        QMatrix::new(n, n, data)
    }

    /// Builds from rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: &[Vec<Rational>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        QMatrix::new(rows.len(), cols, data)
    }

    /// Builds from columns; `rows` is needed when there are no columns.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Self {
        QMatrix::from_rows(columns, rows).transpose()
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rs: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| super::q(x)).collect()).collect();
        QMatrix::from_rows(&rs, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn column_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        QMatrix::new(self.cols, self.rows, data)
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "QMatrix product shape");
        let mut data = vec![Rational::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        QMatrix::new(self.rows, other.cols, data)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|r| super::dot(self.row(r), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Rank over Q. Rows are scaled to integers (rank-preserving) and the rank
    /// is found by fraction-free Bareiss elimination.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = (0..self.rows).map(|r| clear_denominators(self.row(r))).collect();
        bareiss_rank(rows, self.cols)
    }

    /// Reduced row echelon form and pivot columns, by rational Gauss-Jordan.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.row_vecs();
        let pivots = rref_in_place(&mut m, self.cols);
        (QMatrix::from_rows(&m, self.cols), pivots)
    }

    /// Columns form a basis of the right null space, one per free column of
    /// the echelon form.
    pub fn kernel_basis(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut cols = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f).clone();
            }
            cols.push(v);
        }
        QMatrix::from_columns(&cols, self.cols)
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut m, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = m[i][self.cols].clone();
        }
        Some(x)
    }

    /// Determinant of a square matrix by Gaussian elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.row_vecs();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let piv = m[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] / &piv;
                for k in c..n {
                    let t = &f * &m[c][k];
                    m[r][k] -= t;
                }
            }
        }
        det
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        let rows: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| {
                let mut v = self.row(r).to_vec();
                v.extend_from_slice(other.row(r));
                v
            })
            .collect();
        QMatrix::from_rows(&rows, self.cols + other.cols)
    }
}

/// Gauss-Jordan on `m` (each row has `cols` entries); returns pivot columns.
pub(crate) fn rref_in_place(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = Rational::one() / &m[r][c];
        for k in c..cols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..cols {
                let t = &f * &m[r][k];
                m[i][k] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Fraction-free (Bareiss) rank of an integer matrix given by rows.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let m = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..m {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf};
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(QMatrix::identity(2).rank(), 2);
        assert_eq!(QMatrix::zeros(3, 5).rank(), 0);
        // third row is minus the sum of the first two
        let m = QMatrix::from_i64(&[&[-1, 0], &[0, -1], &[1, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(QMatrix::identity(3).kernel_basis().cols(), 0);
        let m = QMatrix::from_i64(&[&[1, -1]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![q(1), q(1)]);
    }

    #[test]
    fn solve_and_det() {
        let m = QMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.det(), q(-2));
        let x = m.solve(&[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let s = QMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert!(s.solve(&[q(1), q(3)]).is_none());
        assert_eq!(s.det(), q(0));
    }

    #[test]
    fn rational_rank() {
        let m = QMatrix::from_rows(&[vec![qf(1, 2), qf(1, 3)], vec![qf(3, 2), q(1)]], 2);
        assert_eq!(m.rank(), 1);
    }

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, 1i64..4), r * c)
                .prop_map(move |v| QMatrix::new(r, c, v.into_iter().map(|(n, d)| qf(n, d)).collect()))
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_is_complementary(m in small_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(k.cols() + m.rank(), m.cols());
            prop_assert!(m.mul(&k).is_zero());
        }

        #[test]
        fn bareiss_agrees_with_gauss(m in small_matrix()) {
            let (_, piv) = m.rref();
            prop_assert_eq!(m.rank(), piv.len());
        }
    }
}
