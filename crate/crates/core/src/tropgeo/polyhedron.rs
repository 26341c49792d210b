//! Small exact polyhedral routines for polyhedra `conv(V) + cone(R)` that are
//! full-dimensional in their own coordinate space. Costs are exponential in
//! the dimension; inputs here have dimension at most a handful.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::exact::{dot, lp, QMatrix, Rational};

/// Ordered basis of a linear subspace, kept in reduced row echelon form, so
/// the coordinates of a vector in the span are its entries at the pivots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    ambient: usize,
}

impl Span {
    pub fn new(generators: &[Vec<Rational>], ambient: usize) -> Self {
        let (r, pivots) = QMatrix::from_rows(generators, ambient).rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Span { rows, pivots, ambient }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not in the span.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.combine(&c) == v).then_some(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords(v).is_some()
    }

    /// `Σ c_i b_i`.
    pub fn combine(&self, c: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient];
        for (ci, row) in c.iter().zip(&self.rows) {
            if ci.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o += ci * x;
            }
        }
        out
    }
}

/// A facet `{u·x = β}` of `conv(V) + cone(R)`, with `u·v ≤ β` on vertices and
/// `u·r ≤ 0` on rays. Members are indices into the input lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub vertices: Vec<usize>,
    pub rays: Vec<usize>,
}

/// All facets of a polyhedron that is full-dimensional in `Q^k`. Requires at
/// least one vertex; the recession cone may contain lines.
pub fn facets(vertices: &[Vec<Rational>], rays: &[Vec<Rational>], k: usize) -> Vec<Facet> {
    let mut out: Vec<Facet> = Vec::new();
    if k == 0 {
        return out;
    }
    for (pi, p) in vertices.iter().enumerate() {
        let dirs: Vec<Vec<Rational>> = vertices[pi + 1..]
            .iter()
            .map(|v| v.iter().zip(p).map(|(a, b)| a - b).collect())
            .chain(rays.iter().cloned())
            .collect();
        for sub in (0..dirs.len()).combinations(k - 1) {
            let rows: Vec<Vec<Rational>> = sub.iter().map(|&i| dirs[i].clone()).collect();
            let ker = QMatrix::from_rows(&rows, k).kernel_basis();
            if ker.cols() != 1 {
                continue;
            }
            let mut u = ker.column(0);
            let beta = dot(&u, p);
            let vs: Vec<Rational> = vertices.iter().map(|v| dot(&u, v) - &beta).collect();
            let rs: Vec<Rational> = rays.iter().map(|r| dot(&u, r)).collect();
            let all = vs.iter().chain(&rs);
            let orient = if all.clone().all(|x| !x.is_positive()) {
                Rational::one()
            } else if all.clone().all(|x| !x.is_negative()) {
                -Rational::one()
            } else {
                continue;
            };
            let on_v: Vec<usize> = (0..vertices.len()).filter(|&i| vs[i].is_zero()).collect();
            if on_v[0] != pi {
                continue;
            }
            let on_r: Vec<usize> = (0..rays.len()).filter(|&i| rs[i].is_zero()).collect();
            if out.iter().any(|f| f.vertices == on_v && f.rays == on_r) {
                continue;
            }
            for x in u.iter_mut() {
                *x *= &orient;
            }
            let offset = dot(&u, p);
            out.push(Facet {
                normal: u,
                offset,
                vertices: on_v,
                rays: on_r,
            });
        }
    }
    out
}

/// Inward normals `u` (with `u·g ≥ 0` on every generator) of the facets of a
/// cone that is full-dimensional in `Q^k`.
pub fn cone_inequalities(generators: &[Vec<Rational>], k: usize) -> Vec<Vec<Rational>> {
    let origin = vec![Rational::zero(); k];
    facets(&[origin], generators, k)
        .into_iter()
        .map(|f| f.normal.into_iter().map(|x| -x).collect())
        .collect()
}

/// Whether `p ∈ conv(V) + cone(R)`, decided exactly by linear programming.
pub fn contains_point(vertices: &[Vec<Rational>], rays: &[Vec<Rational>], p: &[Rational]) -> bool {
    let nv = vertices.len();
    let nvar = nv + rays.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..nvar {
        let mut row = vec![Rational::zero(); nvar];
        row[i] = Rational::one();
        a.push(row);
        b.push(Rational::zero());
    }
    let mut eq = |row: Vec<Rational>, rhs: Rational| {
        a.push(row.iter().map(|x| -x).collect());
        b.push(-rhs.clone());
        a.push(row);
        b.push(rhs);
    };
    eq(
        (0..nvar)
            .map(|i| if i < nv { Rational::one() } else { Rational::zero() })
            .collect(),
        Rational::one(),
    );
    for (c, pc) in p.iter().enumerate() {
        let row = vertices.iter().chain(rays).map(|g| g[c].clone()).collect();
        eq(row, pc.clone());
    }
    lp::feasible_point(&a, &b, nvar).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn square_has_four_facets() {
        let v = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let f = facets(&v, &[], 2);
        assert_eq!(f.len(), 4);
        for fa in &f {
            assert_eq!(fa.vertices.len(), 2);
        }
    }

    #[test]
    fn quadrant_with_apex() {
        let v = pts(&[&[0, 0]]);
        let r = pts(&[&[1, 0], &[0, 1]]);
        let f = facets(&v, &r, 2);
        assert_eq!(f.len(), 2);
        assert_eq!(cone_inequalities(&r, 2).len(), 2);
    }

    #[test]
    fn half_plane_and_segment() {
        // half-plane y >= 0 has one facet; a segment has two end facets
        let r = pts(&[&[1, 0], &[-1, 0], &[0, 1]]);
        assert_eq!(cone_inequalities(&r, 2), vec![vec![q(0), q(1)]]);
        let seg = pts(&[&[0], &[3]]);
        assert_eq!(facets(&seg, &[], 1).len(), 2);
        let line = pts(&[&[1], &[-1]]);
        assert!(cone_inequalities(&line, 1).is_empty());
    }

    #[test]
    fn membership() {
        let v = pts(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert!(contains_point(&v, &[], &[q(1), q(1)]));
        assert!(!contains_point(&v, &[], &[q(2), q(1)]));
        let r = pts(&[&[1, 1]]);
        assert!(contains_point(&v, &r, &[q(5), q(5)]));
    }

    #[test]
    fn span_coordinates() {
        let s = Span::new(&pts(&[&[1, 1, 0], &[2, 2, 0]]), 3);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.coords(&[q(3), q(3), q(0)]), Some(vec![q(3)]));
        assert!(s.coords(&[q(1), q(0), q(0)]).is_none());
    }
}
