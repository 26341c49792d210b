use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{support_equal, Cone, CoordSet, FaceSpec, Fan, Point, TropicalComplex};
use crate::error::{Error, Result};
use crate::exact::{clear_denominators, lattice_index, to_rationals, IntMatrix, QMatrix, Rational};
use crate::matroid::{bergman_fan, Matroid};

/// The fan of directions at an interior point of the face, inside its
/// stratum and in the stratum chart: one tangent cone per face of the star.
pub fn star_fan(x: &TropicalComplex, id: usize) -> Fan {
    let p = x.interior_point(id);
    let rank = p.len();
    let cones = x
        .star(id)
        .into_iter()
        .map(|g| {
            let mut gens: Vec<Vec<Rational>> = x
                .vertex_coords(g)
                .into_iter()
                .map(|v| v.iter().zip(&p).map(|(a, b)| a - b).collect())
                .collect();
            gens.extend(x.ray_vectors(g));
            Cone::from_rational(&gens)
        })
        .collect();
    Fan::new(rank, cones)
}

/// The star fan modulo the linear span of the face, in the integer quotient
/// lattice.
pub fn relative_fan(x: &TropicalComplex, id: usize) -> Fan {
    star_fan(x, id).quotient(x.face(id).span().basis())
}

/// The family of a mobile face: the face and every face reached from it by
/// sending divisorial rays to infinity.
pub fn family_poset(x: &TropicalComplex, id: usize) -> Result<Vec<usize>> {
    if !x.face(id).is_mobile() {
        return Err(Error::InvalidComplex(format!("face {id} is not mobile")));
    }
    let mut seen = BTreeSet::from([id]);
    let mut stack = vec![id];
    while let Some(f) = stack.pop() {
        let sed = x.face(f).sedentarity();
        for &(g, _) in x.boundary(f) {
            if x.face(g).sedentarity() != sed && seen.insert(g) {
                stack.push(g);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Largest face dimension per stratum; errors if some face that is maximal
/// within its stratum is smaller.
fn stratum_tops(x: &TropicalComplex) -> Result<Vec<(CoordSet, usize)>> {
    let mut tops: Vec<(CoordSet, usize)> = Vec::new();
    for f in x.faces() {
        match tops.iter_mut().find(|(s, _)| *s == f.sedentarity()) {
            Some(t) => t.1 = t.1.max(f.dim()),
            None => tops.push((f.sedentarity(), f.dim())),
        }
    }
    for (id, f) in x.faces().iter().enumerate() {
        let maximal = x
            .coboundary(id)
            .iter()
            .all(|&g| x.face(g).sedentarity() != f.sedentarity());
        let top = tops.iter().find(|(s, _)| *s == f.sedentarity()).expect("present").1;
        if maximal && f.dim() != top {
            return Err(Error::NotPure {
                face: id,
                dim: f.dim(),
                top,
            });
        }
    }
    Ok(tops)
}

/// Codimension-one faces (within their stratum) where balancing fails.
pub fn balancing_violations(x: &TropicalComplex) -> Result<Vec<usize>> {
    let tops = stratum_tops(x)?;
    let mut bad = Vec::new();
    for (tau, f) in x.faces().iter().enumerate() {
        let top = tops.iter().find(|(s, _)| *s == f.sedentarity()).expect("present").1;
        if f.dim() + 1 != top {
            continue;
        }
        if !balanced_at(x, tau)? {
            bad.push(tau);
        }
    }
    Ok(bad)
}

/// Whether every stratum is balanced. Rejects non-pure complexes.
pub fn is_balanced(x: &TropicalComplex) -> Result<bool> {
    Ok(balancing_violations(x)?.is_empty())
}

fn balanced_at(x: &TropicalComplex, tau: usize) -> Result<bool> {
    let t = x.face(tau);
    let m = t.span().ambient();
    let bt: Vec<Vec<BigInt>> = t.span().basis().iter().map(|b| clear_denominators(b)).collect();
    let base = lattice_index(&IntMatrix::from_columns(&bt, m))?;
    let v0 = x.point(t.vertices()[0]).chart_coords();
    let mut sum = vec![Rational::zero(); m];
    for &g in x.coboundary(tau) {
        let f = x.face(g);
        if f.sedentarity() != t.sedentarity() {
            continue;
        }
        // an integral vector pointing from tau into f
        let mut dirs = x
            .vertex_coords(g)
            .into_iter()
            .map(|v| v.iter().zip(&v0).map(|(a, b)| a - b).collect::<Vec<_>>())
            .chain(x.ray_vectors(g));
        let u = dirs
            .find(|d| !t.span().contains(d))
            .expect("coface leaves the span of its facet");
        let u = clear_denominators(&u);
        let mut cols = bt.clone();
        cols.push(u.clone());
        let k = lattice_index(&IntMatrix::from_columns(&cols, m))? / &base;
        let scale = Rational::new(BigInt::from(f.weight()), k);
        for (s, ui) in sum.iter_mut().zip(&u) {
            *s += &scale * Rational::from_integer(ui.clone());
        }
    }
    Ok(t.span().contains(&sum))
}

/// The fan-like linear space `L^k(x)`: the closure in TP^N of the cones at
/// `x` spanned by `k` of the `N+1` divisorial directions. `x` is given in
/// chart 0. `k = N` gives TP^N itself.
pub fn fan_linear_space(x: &[Rational], k: usize) -> Result<TropicalComplex> {
    let n = x.len();
    if k == 0 || k > n {
        return Err(Error::DimensionMismatch(format!(
            "L^k(x) in TP^{n} needs 1 <= k <= {n}, got {k}"
        )));
    }
    let p = Point::from_chart(n, CoordSet::EMPTY, x)?;
    let full = CoordSet::full(n + 1);
    let mut specs = Vec::new();
    for j in 0..=full.0 {
        let sed = CoordSet(j);
        if sed.len() > k {
            continue;
        }
        let rest = full.minus(sed);
        for d in 0..=full.0 {
            let d = CoordSet(d);
            if !d.is_subset(rest) || sed.len() + d.len() > k {
                continue;
            }
            let rays = d.iter().map(CoordSet::singleton).collect();
            specs.push(FaceSpec::new(sed, vec![p.project(sed)], rays));
        }
    }
    TropicalComplex::new(n, specs)
}

/// Whether the relative fan at the face has the support of the Bergman fan
/// of `m`, up to an integral change of coordinates. The relative fan is
/// taken in the lattice of its own span first.
pub fn is_smooth_at(x: &TropicalComplex, id: usize, m: &Matroid) -> Result<bool> {
    let rel = relative_fan(x, id).restrict_to_span();
    let berg = bergman_fan(m)?;
    if rel.rank() != berg.rank() {
        return Err(Error::RankMismatch {
            fan: rel.rank(),
            bergman: berg.rank(),
        });
    }
    if support_equal(&rel, &berg) {
        return Ok(true);
    }
    Ok(isomorphic_supports(&berg, &rel))
}

/// Searches for a unimodular map sending `|a|` onto `|b|`, with the images of
/// the standard basis drawn from `± generators of b`.
fn isomorphic_supports(a: &Fan, b: &Fan) -> bool {
    const BUDGET: usize = 200_000;
    let r = a.rank();
    let mut cands: Vec<Vec<BigInt>> = b
        .cones()
        .iter()
        .flat_map(|c| c.generators().iter().cloned())
        .flat_map(|g| [g.iter().map(|x| -x).collect(), g])
        .collect();
    cands.sort();
    cands.dedup();
    for (tried, tuple) in cands.iter().permutations(r).enumerate() {
        if tried >= BUDGET {
            break;
        }
        let cols: Vec<Vec<Rational>> = tuple.iter().map(|g| to_rationals(g)).collect();
        let det = QMatrix::from_columns(&cols, r).det();
        if det.abs() != Rational::from_integer(1.into()) {
            continue;
        }
        let owned: Vec<Vec<BigInt>> = tuple.into_iter().cloned().collect();
        let phi = IntMatrix::from_columns(&owned, r);
        if support_equal(&a.map(&phi), b) {
            return true;
        }
    }
    false
}
