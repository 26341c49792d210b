use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{clear_denominators, Rational};
use crate::error::{Error, Result};

/// Dense integer matrix, row-major. Lattice vectors are stored as columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "IntMatrix data length");
        IntMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        IntMatrix::new(n, n, data)
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Self {
        let cols = columns.len();
        let mut data = vec![BigInt::zero(); rows * cols];
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length");
            for (r, x) in v.iter().enumerate() {
                data[r * cols + c] = x.clone();
            }
        }
        IntMatrix::new(rows, cols, data)
    }

    pub fn from_i64_columns(columns: &[&[i64]]) -> Self {
        let rows = columns.first().map_or(0, |c| c.len());
        let cols: Vec<Vec<BigInt>> = columns
            .iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::from_columns(&cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_rational_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + b * a)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[i] -= f * row[j]
    fn sub_row(&mut self, i: usize, j: usize, f: &BigInt) {
        for c in 0..self.cols {
            let t = f * &self.data[j * self.cols + c];
            self.data[i * self.cols + c] -= t;
        }
    }
}

/// Integer row echelon form with a unimodular transform: returns `(u, e,
/// rank)` with `u * b = e`, where the rows of `e` past `rank` vanish.
pub fn row_echelon_with_transform(b: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let m = b.rows;
    let mut e = b.clone();
    let mut u = IntMatrix::identity(m);
    let mut r = 0;
    for c in 0..b.cols {
        if r == m {
            break;
        }
        loop {
            let pivot = (r..m)
                .filter(|&i| !e.get(i, c).is_zero())
                .min_by(|&x, &y| e.get(x, c).abs().cmp(&e.get(y, c).abs()));
            let Some(p) = pivot else { break };
            e.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut done = true;
            for i in r + 1..m {
                if e.get(i, c).is_zero() {
                    continue;
                }
                let f = e.get(i, c).div_floor(e.get(r, c));
                e.sub_row(i, r, &f);
                u.sub_row(i, r, &f);
                if !e.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !e.get(r, c).is_zero() {
            r += 1;
        }
    }
    (u, e, r)
}

/// Index of the lattice spanned by the columns of `b` inside its saturation
/// (the integer points of its rational span). For square `b` this is
/// `|det b|`.
pub fn lattice_index(b: &IntMatrix) -> Result<BigInt> {
    let (_, e, rank) = row_echelon_with_transform(b);
    if rank < b.cols {
        return Err(Error::DependentColumns);
    }
    let mut idx = BigInt::one();
    for c in 0..b.cols {
        idx *= e.get(c, c);
    }
    Ok(idx.abs())
}

/// Integer surjection `Z^m -> Z^(m-r)` whose kernel is the saturation of the
/// column lattice of `b` (rank `r`).
pub fn quotient_map(b: &IntMatrix) -> IntMatrix {
    let (u, _, rank) = row_echelon_with_transform(b);
    let m = b.rows;
    let data = (rank..m).flat_map(|r| u.row(r).to_vec()).collect();
    IntMatrix::new(m - rank, m, data)
}

/// Primitive integer vector on the ray through `v` (zero stays zero).
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let ints = clear_denominators(v);
    let g = super::gcd_all(ints.iter());
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf};

    /// Independent oracle: gcd of all maximal minors.
    fn gcd_of_minors(b: &IntMatrix) -> BigInt {
        let k = b.cols();
        let m = b.rows();
        let mut g = BigInt::zero();
        let mut rows: Vec<usize> = (0..k).collect();
        loop {
            let sub: Vec<Vec<Rational>> = rows
                .iter()
                .map(|&r| (0..k).map(|c| Rational::from_integer(b.get(r, c).clone())).collect())
                .collect();
            let d = crate::exact::QMatrix::from_rows(&sub, k).det();
            g = g.gcd(d.numer());
            // next k-subset of rows
            let mut i = k;
            loop {
                if i == 0 {
                    return g;
                }
                i -= 1;
                if rows[i] < m - k + i {
                    rows[i] += 1;
                    for j in i + 1..k {
                        rows[j] = rows[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn index_examples() {
        let id = IntMatrix::from_i64_columns(&[&[1, 0], &[0, 1]]);
        assert_eq!(lattice_index(&id).unwrap(), BigInt::from(1));
        let diag = IntMatrix::from_i64_columns(&[&[2, 0], &[0, 1]]);
        assert_eq!(lattice_index(&diag).unwrap(), BigInt::from(2));
        let skew = IntMatrix::from_i64_columns(&[&[1, 1], &[1, -1]]);
        assert_eq!(lattice_index(&skew).unwrap(), BigInt::from(2));
        let dep = IntMatrix::from_i64_columns(&[&[1, 2], &[2, 4]]);
        assert!(matches!(lattice_index(&dep), Err(Error::DependentColumns)));
    }

    #[test]
    fn index_matches_minor_gcd() {
        let cases: Vec<IntMatrix> = vec![
            IntMatrix::from_i64_columns(&[&[2, 0, 0], &[0, 2, 2]]),
            IntMatrix::from_i64_columns(&[&[1, 1, 1], &[0, 3, 6]]),
            IntMatrix::from_i64_columns(&[&[4, 6, 2]]),
            IntMatrix::from_i64_columns(&[&[1, 2, 3, 4], &[0, 1, 0, 1], &[5, 0, 0, 1]]),
            IntMatrix::from_i64_columns(&[&[3, 1], &[1, 3]]),
        ];
        for b in cases {
            assert_eq!(lattice_index(&b).unwrap(), gcd_of_minors(&b), "{b:?}");
        }
    }

    #[test]
    fn unimodular_index_is_one() {
        let u = IntMatrix::from_i64_columns(&[&[2, 1, 0], &[1, 1, 0], &[5, -3, 1]]);
        assert_eq!(lattice_index(&u).unwrap(), BigInt::from(1));
    }

    #[test]
    fn quotient_kills_saturation() {
        // span of (2,2,0): saturation generated by (1,1,0)
        let b = IntMatrix::from_i64_columns(&[&[2, 2, 0]]);
        let qm = quotient_map(&b);
        assert_eq!(qm.rows(), 2);
        let img = qm.mul_vec(&[BigInt::from(1), BigInt::from(1), BigInt::from(0)]);
        assert!(img.iter().all(|x| x.is_zero()));
        // surjective: some integer vector maps to each unit vector
        let all = IntMatrix::from_columns(
            &[
                qm.mul_vec(&[BigInt::from(1), BigInt::from(0), BigInt::from(0)]),
                qm.mul_vec(&[BigInt::from(0), BigInt::from(0), BigInt::from(1)]),
            ],
            2,
        );
        assert_eq!(lattice_index(&all).unwrap(), BigInt::from(1));
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive(&[qf(2, 3), q(0), qf(-4, 3)]);
        assert_eq!(v, vec![BigInt::from(1), BigInt::from(0), BigInt::from(-2)]);
    }
}
