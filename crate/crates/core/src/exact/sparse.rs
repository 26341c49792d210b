use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{clear_denominators, QMatrix, Rational};

/// Sparse rational matrix stored by rows, each row sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `v` to entry `(r, c)`.
    pub fn add(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "entry out of range");
        if v.is_zero() {
            return;
        }
        let row = &mut self.entries[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(i) => {
                row[i].1 += v;
                if row[i].1.is_zero() {
                    row.remove(i);
                }
            }
            Err(i) => row.insert(i, (c, v)),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.entries[r].binary_search_by_key(&c, |e| e.0) {
            Ok(i) => self.entries[r][i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.entries[r]
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "sparse product shape");
        let mut out = SparseMatrix::new(self.rows, other.cols);
        for (r, row) in self.entries.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &other.entries[*k] {
                    out.add(r, *c, a * b);
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> QMatrix {
        let mut data = vec![Rational::zero(); self.rows * self.cols];
        for (r, row) in self.entries.iter().enumerate() {
            for (c, v) in row {
                data[r * self.cols + c] = v.clone();
            }
        }
        QMatrix::new(self.rows, self.cols, data)
    }

    /// Exact rank over Q. Rows are scaled to primitive integer rows and
    /// eliminated fraction-free with a sparsity-aware pivot order.
    pub fn rank(&self) -> usize {
        let rows = self
            .entries
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let vals: Vec<Rational> = r.iter().map(|e| e.1.clone()).collect();
                let ints = clear_denominators(&vals);
                r.iter().map(|e| e.0).zip(ints).collect()
            })
            .collect();
        sparse_integer_rank(rows, self.cols)
    }
}

fn combine(a: &BigInt, s: &[(usize, BigInt)], b: &BigInt, r: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    // a*s - b*r, merged by column
    let mut out = Vec::with_capacity(s.len() + r.len());
    let (mut i, mut j) = (0, 0);
    while i < s.len() || j < r.len() {
        let take_s = j == r.len() || (i < s.len() && s[i].0 < r[j].0);
        let take_r = i == s.len() || (j < r.len() && r[j].0 < s[i].0);
        if take_s {
            out.push((s[i].0, a * &s[i].1));
            i += 1;
        } else if take_r {
            out.push((r[j].0, -(b * &r[j].1)));
            j += 1;
        } else {
            let v = a * &s[i].1 - b * &r[j].1;
            if !v.is_zero() {
                out.push((s[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    let g = super::gcd_all(out.iter().map(|e| &e.1));
    if !g.is_zero() && !g.is_one() {
        for e in &mut out {
            e.1 = &e.1 / &g;
        }
    }
    out
}

/// Rank of a sparse integer matrix. Each row is a sorted list of
/// `(column, value)` pairs with nonzero values.
pub fn sparse_integer_rank(rows: Vec<Vec<(usize, BigInt)>>, cols: usize) -> usize {
    let mut rows: Vec<Vec<(usize, BigInt)>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    let mut by_len: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r {
            col_rows[*c].insert(i);
        }
        by_len.insert((r.len(), i));
    }
    let mut rank = 0;
    while let Some((_, p)) = by_len.pop_first() {
        let prow = std::mem::take(&mut rows[p]);
        for (c, _) in &prow {
            col_rows[*c].remove(&p);
        }
        // pivot column: fewest other rows to eliminate, then smallest entry
        let (pc, pv) = prow
            .iter()
            .min_by(|x, y| {
                col_rows[x.0]
                    .len()
                    .cmp(&col_rows[y.0].len())
                    .then_with(|| x.1.abs().cmp(&y.1.abs()))
            })
            .map(|(c, v)| (*c, v.clone()))
            .expect("pivot row is nonempty");
        rank += 1;
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for s in targets {
            let srow = std::mem::take(&mut rows[s]);
            by_len.remove(&(srow.len(), s));
            for (c, _) in &srow {
                col_rows[*c].remove(&s);
            }
            let sv = &srow[srow.binary_search_by_key(&pc, |e| e.0).expect("entry present")].1;
            let g = pv.gcd(sv);
            let new = combine(&(&pv / &g), &srow, &(sv / &g), &prow);
            for (c, _) in &new {
                col_rows[*c].insert(s);
            }
            if !new.is_empty() {
                by_len.insert((new.len(), s));
            }
            rows[s] = new;
        }
    }
    rank
}
