//! The weighted hypersurface `V_a ⊂ TP^N`, assembled stratum by stratum.
//!
//! Write `c_i = min m_i` over the support and `d' = d - Σ c_i`. The support
//! must contain every vertex `c + d'e_i`, so the Newton polytope is the
//! simplex `c + d'Δ_N` and every stratum `TP°_I` sees the face
//! `A_I = {m : m_i = c_i, i ∈ I}`, a full-dimensional simplex in the stratum.
//! If `c_i > 0` for some `i ∈ I` the stratum lies in the divisor part
//! `Σ c_i D_i` of `V_a`; otherwise `V_a ∩ TP°_I` is the corner locus of the
//! restriction of `a` to `A_I`.

use num_bigint::BigInt;
use num_integer::Integer;

use super::subdivision::{affine_dim, all_faces, regular_subdivision};
use super::HeightFunction;
use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};
use crate::tropgeo::{stratum_chart, CoordSet, FaceSpec, Point, TropicalComplex};

/// `V_a` with facet weights given by lattice lengths of dual edges and
/// divisor weights `c_i`. Rejects heights whose Newton polytope is not a
/// translated dilated simplex (`NonRegular`) and degree 0.
pub fn build_hypersurface(a: &HeightFunction) -> Result<TropicalComplex> {
    let n = a.n();
    if a.degree() == 0 {
        return Err(Error::InvalidHeights("degree 0 gives an empty corner locus".into()));
    }
    let c = a.min_exponents();
    let dp = a.degree() - c.iter().sum::<u32>();
    for i in 0..=n {
        let mut m = c.clone();
        m[i] += dp;
        if a.get(&m).is_none() {
            return Err(Error::NonRegular(format!(
                "the Newton polytope misses the vertex {m:?} of c + {dp}Δ_{n}"
            )));
        }
    }
    let full = CoordSet::full(n + 1);
    let mut specs = Vec::new();
    for bits in 0..full.0 {
        let sed = CoordSet(bits);
        let rest = full.minus(sed);
        let divisor = sed.iter().any(|i| c[i] > 0);
        let region_weight: u64 = sed.iter().map(|i| u64::from(c[i])).sum();
        if dp == 0 {
            // V_a = Σ c_i D_i: each divisor stratum carries its standard fan
            if divisor {
                let origin = Point::origin(n, sed);
                for j in 0..rest.0 {
                    let rays = CoordSet(j);
                    if !rays.is_subset(rest) || rays == rest {
                        continue;
                    }
                    let w = if rays.len() + 1 == rest.len() { region_weight } else { 1 };
                    let r = rays.iter().map(CoordSet::singleton).collect();
                    specs.push(FaceSpec::new(sed, vec![origin.clone()], r).with_weight(w));
                }
            }
            continue;
        }
        stratum_faces(a, &c, sed, divisor, region_weight, &mut specs)?;
    }
    TropicalComplex::new(n, specs)
}

fn stratum_faces(
    a: &HeightFunction,
    c: &[u32],
    sed: CoordSet,
    divisor: bool,
    region_weight: u64,
    specs: &mut Vec<FaceSpec>,
) -> Result<()> {
    let n = a.n();
    let rest = CoordSet::full(n + 1).minus(sed);
    let (_, chart) = stratum_chart(n, sed);
    let face: Vec<(&Vec<u32>, &Rational)> = a.entries().filter(|(m, _)| sed.iter().all(|i| m[i] == c[i])).collect();
    let pts: Vec<Vec<Rational>> = face
        .iter()
        .map(|(m, _)| chart.iter().map(|&k| Rational::from_integer(m[k].into())).collect())
        .collect();
    let heights: Vec<Rational> = face.iter().map(|(_, h)| (*h).clone()).collect();
    let cells = regular_subdivision(&pts, &heights);
    let e = chart.len();
    debug_assert_eq!(affine_dim(&pts), e);
    let duals: Vec<Point> = cells
        .iter()
        .map(|cell| dual_point(n, sed, &pts, &heights, cell))
        .collect::<Result<_>>()?;
    for s in all_faces(&pts, &cells) {
        let local: Vec<Vec<Rational>> = s.iter().map(|&i| pts[i].clone()).collect();
        let dim_s = affine_dim(&local);
        if dim_s == 0 && !divisor {
            continue;
        }
        let vertices: Vec<Point> = cells
            .iter()
            .zip(&duals)
            .filter(|(cell, _)| s.iter().all(|i| cell.binary_search(i).is_ok()))
            .map(|(_, p)| p.clone())
            .collect();
        let rays: Vec<CoordSet> = rest
            .iter()
            .filter(|&j| s.iter().all(|&i| face[i].0[j] == c[j]))
            .map(CoordSet::singleton)
            .collect();
        let weight = match dim_s {
            0 => region_weight,
            1 => lattice_length(&s.iter().map(|&i| face[i].0.as_slice()).collect::<Vec<_>>()),
            _ => 1,
        };
        specs.push(FaceSpec::new(sed, vertices, rays).with_weight(weight));
    }
    Ok(())
}

/// The point of the stratum where every monomial of the maximal cell attains
/// the maximum.
fn dual_point(n: usize, sed: CoordSet, pts: &[Vec<Rational>], heights: &[Rational], cell: &[usize]) -> Result<Point> {
    let e = pts[0].len();
    let base = cell[0];
    let rows: Vec<Vec<Rational>> = cell[1..]
        .iter()
        .map(|&i| pts[i].iter().zip(&pts[base]).map(|(x, y)| x - y).collect())
        .collect();
    let rhs: Vec<Rational> = cell[1..].iter().map(|&i| &heights[base] - &heights[i]).collect();
    let x = QMatrix::from_rows(&rows, e)
        .solve(&rhs)
        .ok_or_else(|| Error::InvalidHeights("a maximal cell has no dual point".into()))?;
    Point::from_chart(n, sed, &x)
}

/// Lattice length of a segment given by its lattice points.
fn lattice_length(points: &[&[u32]]) -> u64 {
    let mut best = BigInt::from(0);
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let g = p.iter().zip(q.iter()).fold(BigInt::from(0), |g, (&x, &y)| {
                g.gcd(&(BigInt::from(x) - BigInt::from(y)))
            });
            best = best.max(g);
        }
    }
    u64::try_from(best).expect("lattice length fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::hypersurface::lattice_points;
    use crate::tropgeo::{is_balanced, Point};

    fn census(x: &TropicalComplex) -> Vec<usize> {
        (0..=x.dim()).map(|k| x.faces_of_dim(k).count()).collect()
    }

    #[test]
    fn line_from_linear_form() {
        let a = HeightFunction::constant(2, 1, q(0)).unwrap();
        let x = build_hypersurface(&a).unwrap();
        assert_eq!(census(&x), vec![4, 3]);
        assert!(x.faces().iter().all(|f| f.weight() == 1));
        let v = x.faces_of_dim(0).find(|&i| x.face(i).is_mobile()).unwrap();
        assert_eq!(x.point(x.face(v).vertices()[0]), &Point::origin(2, CoordSet::EMPTY));
        assert_eq!(x, crate::tropgeo::fan_linear_space(&[q(0), q(0)], 1).unwrap());
    }

    #[test]
    fn single_monomial_is_a_coordinate_line() {
        let a = HeightFunction::new(2, 1, [(vec![1, 0, 0], q(0))]).unwrap();
        let x = build_hypersurface(&a).unwrap();
        // TP_{0} ≅ TP^1 with its standard fan: a vertex and two rays
        assert_eq!(census(&x), vec![3, 2]);
        for e in x.faces_of_dim(1) {
            assert_eq!(x.face(e).sedentarity(), CoordSet::singleton(0));
            assert_eq!(x.face(e).weight(), 1);
        }
        assert!(is_balanced(&x).unwrap());
    }

    #[test]
    fn conic_has_four_mobile_vertices() {
        let v = lattice_points(2, 2).into_iter().map(|m| {
            let a = if m.contains(&2) { q(0) } else { q(1) };
            (m, a)
        });
        let x = build_hypersurface(&HeightFunction::new(2, 2, v).unwrap()).unwrap();
        let mobile = x.faces_of_dim(0).filter(|&i| x.face(i).is_mobile()).count();
        assert_eq!(mobile, 4);
        // 3 bounded edges, 6 unbounded
        assert_eq!(x.faces_of_dim(1).count(), 9);
        assert!(is_balanced(&x).unwrap());
    }

    #[test]
    fn non_smooth_weights() {
        // a ≡ 0 on 2Δ_2: three rays of weight 2
        let x = build_hypersurface(&HeightFunction::constant(2, 2, q(0)).unwrap()).unwrap();
        let w: Vec<u64> = x.faces_of_dim(1).map(|i| x.face(i).weight()).collect();
        assert_eq!(w, vec![2, 2, 2]);
        assert!(is_balanced(&x).unwrap());
    }

    #[test]
    fn divisor_parts() {
        // x_0 * (x_0 ⊕ x_1 ⊕ x_2): D_0 plus a line
        let a = HeightFunction::new(
            2,
            2,
            [(vec![2, 0, 0], q(0)), (vec![1, 1, 0], q(0)), (vec![1, 0, 1], q(0))],
        )
        .unwrap();
        let x = build_hypersurface(&a).unwrap();
        assert!(is_balanced(&x).unwrap());
        let div: Vec<usize> = x
            .faces_of_dim(1)
            .filter(|&i| x.face(i).sedentarity() == CoordSet::singleton(0))
            .collect();
        // the line meets D_0 once, splitting it into two regions
        assert_eq!(div.len(), 2);
        // x_0^2 alone: D_0 with weight 2
        let b = HeightFunction::new(2, 2, [(vec![2, 0, 0], q(3))]).unwrap();
        let y = build_hypersurface(&b).unwrap();
        let w: Vec<u64> = y.faces_of_dim(1).map(|i| y.face(i).weight()).collect();
        assert_eq!(w, vec![2, 2]);
    }

    #[test]
    fn rejections() {
        let a = HeightFunction::new(2, 2, [(vec![1, 1, 0], q(0)), (vec![0, 1, 1], q(0))]).unwrap();
        assert!(matches!(build_hypersurface(&a), Err(Error::NonRegular(_))));
        let z = HeightFunction::new(2, 0, [(vec![0, 0, 0], q(0))]).unwrap();
        assert!(build_hypersurface(&z).is_err());
    }

    #[test]
    fn shift_invariance() {
        let a = HeightFunction::alcoved(2, 3).unwrap();
        assert_eq!(
            build_hypersurface(&a).unwrap(),
            build_hypersurface(&a.shifted(&q(-5))).unwrap()
        );
    }
}
