//! Exact feasibility for systems of linear inequalities.
//!
//! Phase-one simplex over the rationals with Bland's rule, so it always
//! terminates. Sizes here are tiny (cones in dimension at most a handful), so
//! a dense tableau is fine.

use num_traits::{One, Signed, Zero};

use super::Rational;

/// A point `y` with `a[i] . y >= b[i]` for all rows, or `None` if the system is
/// infeasible. Variables are free.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational], dim: usize) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len());
    let m = a.len();
    if m == 0 {
        return Some(vec![Rational::zero(); dim]);
    }
    // columns: y+ (dim), y- (dim), surplus (m), artificial (m), rhs
    let n = 2 * dim + 2 * m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), dim);
        let flip = b[i].is_negative();
        let s = |x: Rational| if flip { -x } else { x };
        let mut r = vec![Rational::zero(); n + 1];
        for j in 0..dim {
            r[j] = s(row[j].clone());
            r[dim + j] = s(-row[j].clone());
        }
        r[2 * dim + i] = s(-Rational::one());
        r[2 * dim + m + i] = Rational::one();
        r[n] = s(b[i].clone());
        t.push(r);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * dim + m + i).collect();
    let art = |j: usize| j >= 2 * dim + m;
    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost = vec![Rational::zero(); n];
    for j in 0..n {
        if !art(j) {
            cost[j] = -t.iter().fold(Rational::zero(), |acc, r| acc + &r[j]);
        }
    }
    while let Some(enter) = (0..n).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][n] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase one is bounded below by zero
        let (p, _) = leave.expect("phase-one objective is bounded");
        let inv = Rational::one() / &t[p][enter];
        for x in t[p].iter_mut() {
            *x *= &inv;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == p || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let f = cost[enter].clone();
        for (x, y) in cost.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        basis[p] = enter;
    }
    let infeasible = (0..m).any(|i| art(basis[i]) && !t[i][n].is_zero());
    if infeasible {
        return None;
    }
    let mut y = vec![Rational::zero(); dim];
    for (i, &j) in basis.iter().enumerate() {
        if j < dim {
            y[j] += &t[i][n];
        } else if j < 2 * dim {
            y[j - dim] -= &t[i][n];
        }
    }
    Some(y)
}

/// Whether some `y` satisfies `c[i] . y > 0` for every row, i.e. the open
/// cone `{c y > 0}` is nonempty.
pub fn strictly_feasible(c: &[Vec<Rational>], dim: usize) -> bool {
    let ones = vec![Rational::one(); c.len()];
    feasible_point(c, &ones, dim).is_some()
}
