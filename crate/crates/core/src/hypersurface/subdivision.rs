//! Regular subdivisions of lattice point configurations, by gift wrapping
//! over the upper hull of the lifted points.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::exact::{dot, Rational};
use crate::tropgeo::polyhedron::{facets, Span};

/// Coordinates of `points` in their own affine hull: `(coords, dim)`. The
/// first point is the origin of the new coordinates.
pub(crate) fn affine_coords(points: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, usize) {
    let base = &points[0];
    let diffs: Vec<Vec<Rational>> = points.iter().map(|p| sub(p, base)).collect();
    let span = Span::new(&diffs, base.len());
    let coords = diffs
        .iter()
        .map(|d| span.coords(d).expect("difference lies in its own span"))
        .collect();
    (coords, span.dim())
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// An affine function `y ↦ β + w·y`.
#[derive(Clone, Debug)]
struct Affine {
    beta: Rational,
    w: Vec<Rational>,
}

impl Affine {
    fn eval(&self, y: &[Rational]) -> Rational {
        &self.beta + dot(&self.w, y)
    }

    /// `self - t·(u·y - c)`.
    fn tilt(&self, t: &Rational, u: &[Rational], c: &Rational) -> Affine {
        Affine {
            beta: &self.beta + t * c,
            w: self.w.iter().zip(u).map(|(w, ui)| w - t * ui).collect(),
        }
    }
}

/// Tilts `h` about the hyperplane `u·y = c` toward `u·y > c` until it touches
/// a lifted point there. `None` if no point has `u·y > c`.
fn wrap(pts: &[Vec<Rational>], a: &[Rational], h: &Affine, u: &[Rational], c: &Rational) -> Option<Affine> {
    let t = pts
        .iter()
        .zip(a)
        .filter_map(|(p, ai)| {
            let l = dot(u, p) - c;
            l.is_positive().then(|| (h.eval(p) - ai) / l)
        })
        .min()?;
    Some(h.tilt(&t, u, c))
}

fn touching(pts: &[Vec<Rational>], a: &[Rational], h: &Affine) -> Vec<usize> {
    (0..pts.len()).filter(|&i| h.eval(&pts[i]) == a[i]).collect()
}

/// Maximal cells of the regular subdivision of `points` induced by `heights`
/// under the max convention: a cell is the set of points where some affine
/// function `h ≥ heights` is attained. Cells are sorted index lists.
pub fn regular_subdivision(points: &[Vec<Rational>], heights: &[Rational]) -> Vec<Vec<usize>> {
    assert!(!points.is_empty() && points.len() == heights.len());
    let (pts, e) = affine_coords(points);
    let top = heights.iter().max().expect("nonempty").clone();
    let mut h = Affine {
        beta: top,
        w: vec![Rational::zero(); e],
    };
    let mut cell = touching(&pts, heights, &h);
    // raise the dimension of the touching set one step at a time
    loop {
        let base = &pts[cell[0]];
        let dirs: Vec<Vec<Rational>> = cell.iter().map(|&i| sub(&pts[i], base)).collect();
        let span = Span::new(&dirs, e);
        if span.dim() == e {
            break;
        }
        let out = (0..pts.len())
            .find(|&i| !span.contains(&sub(&pts[i], base)))
            .expect("affine hull is full");
        let u = orthogonal_part(&sub(&pts[out], base), &span);
        let c = dot(&u, base);
        h = wrap(&pts, heights, &h, &u, &c).expect("the chosen point lies beyond");
        cell = touching(&pts, heights, &h);
    }
    let mut seen: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    let mut queue = VecDeque::from([(cell, h)]);
    while let Some((cell, h)) = queue.pop_front() {
        if seen.contains_key(&cell) {
            continue;
        }
        let local: Vec<Vec<Rational>> = cell.iter().map(|&i| pts[i].clone()).collect();
        for f in facets(&local, &[], e) {
            if let Some(h2) = wrap(&pts, heights, &h, &f.normal, &f.offset) {
                let next = touching(&pts, heights, &h2);
                if !seen.contains_key(&next) {
                    queue.push_back((next, h2));
                }
            }
        }
        seen.insert(cell, ());
    }
    seen.into_keys().collect()
}

/// Component of `v` orthogonal to `span` (standard inner product).
fn orthogonal_part(v: &[Rational], span: &Span) -> Vec<Rational> {
    // Gram-Schmidt on the span basis, then subtract projections.
    let mut ortho: Vec<Vec<Rational>> = Vec::new();
    for b in span.basis() {
        let mut u = b.clone();
        for o in &ortho {
            let k = dot(&u, o) / dot(o, o);
            u = u.iter().zip(o).map(|(x, y)| x - &k * y).collect();
        }
        ortho.push(u);
    }
    let mut u = v.to_vec();
    for o in &ortho {
        let k = dot(&u, o) / dot(o, o);
        u = u.iter().zip(o).map(|(x, y)| x - &k * y).collect();
    }
    u
}

/// All faces of the cells, as sorted index lists, including the cells
/// themselves. Faces are taken over the marked points on them.
pub fn all_faces(points: &[Vec<Rational>], cells: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = cells.to_vec();
    while let Some(c) = stack.pop() {
        if !out.insert(c.clone()) {
            continue;
        }
        let local: Vec<Vec<Rational>> = c.iter().map(|&i| points[i].clone()).collect();
        let (coords, dim) = affine_coords(&local);
        if dim == 0 {
            continue;
        }
        if c.len() == dim + 1 {
            // a simplex: drop one vertex at a time
            for skip in 0..c.len() {
                let f: Vec<usize> = c
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                stack.push(f);
            }
            continue;
        }
        for f in facets(&coords, &[], dim) {
            stack.push(f.vertices.iter().map(|&i| c[i]).collect());
        }
    }
    out
}

/// Affine dimension of a set of points.
pub fn affine_dim(points: &[Vec<Rational>]) -> usize {
    affine_coords(points).1
}
