//! Property tests over random heights, matrices and matroids.

use num_traits::Signed;
use proptest::prelude::*;

use tropical_homology::cosheaf::{fan_coefficient_space, iota, wedge_map};
use tropical_homology::exact::{format_rational, parse_rational, q, qf, QMatrix, Rational};
use tropical_homology::homology::{chain_complex, euler_check, hodge_table};
use tropical_homology::hypersurface::{build_hypersurface, degree, dual_subdivision, lattice_points, HeightFunction};
use tropical_homology::matroid::{bergman_complex, bergman_fan, os_betti, Matroid};
use tropical_homology::tropgeo::{chart_transition, is_balanced, CoordSet, Point, TropicalComplex};

/// Heights on every lattice point of `dΔ_n`, drawn from a small range so
/// that ties and coarse subdivisions are common.
fn heights(n: usize, d: u32) -> impl Strategy<Value = HeightFunction> {
    let pts = lattice_points(n, d);
    prop::collection::vec(-6i64..=6, pts.len())
        .prop_map(move |v| HeightFunction::new(n, d, pts.iter().cloned().zip(v.into_iter().map(q))).unwrap())
}

fn plane_heights() -> impl Strategy<Value = HeightFunction> {
    (1u32..=3).prop_flat_map(|d| heights(2, d))
}

fn permuted(a: &HeightFunction, perm: &[usize]) -> HeightFunction {
    let vals = a.entries().map(|(m, h)| {
        let mut p = vec![0; m.len()];
        for (i, &j) in perm.iter().enumerate() {
            p[j] = m[i];
        }
        (p, h.clone())
    });
    HeightFunction::new(a.n(), a.degree(), vals).unwrap()
}

fn census(x: &TropicalComplex) -> Vec<usize> {
    (0..=x.dim()).map(|k| x.faces_of_dim(k).count()).collect()
}

/// Twice the area of the convex hull of planar points, by monotone chain and
/// the shoelace formula.
fn hull_area2(points: &[(i64, i64)]) -> i64 {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return 0;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let seq: Vec<(i64, i64)> = if pass == 0 {
            p.clone()
        } else {
            p.iter().rev().cloned().collect()
        };
        for pt in seq {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
                hull.pop();
            }
            hull.push(pt);
        }
        hull.pop();
    }
    let mut s = 0;
    for i in 0..hull.len() {
        let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
        s += a.0 * b.1 - a.1 * b.0;
    }
    s.abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_curves_are_balanced_complexes(a in plane_heights()) {
        let x = build_hypersurface(&a).unwrap();
        prop_assert!(is_balanced(&x).unwrap());
        for p in 0..=x.dim() {
            prop_assert!(chain_complex(&x, p).unwrap().is_complex());
        }
        prop_assert!(euler_check(&x).unwrap());
    }

    #[test]
    fn random_quadric_surfaces_are_balanced_complexes(a in heights(3, 2)) {
        let x = build_hypersurface(&a).unwrap();
        prop_assert!(is_balanced(&x).unwrap());
        for p in 0..=x.dim() {
            prop_assert!(chain_complex(&x, p).unwrap().is_complex());
        }
        prop_assert!(euler_check(&x).unwrap());
    }

    #[test]
    fn shifting_heights_changes_nothing(a in plane_heights(), num in -50i64..50, den in 1i64..7) {
        let c = qf(num, den);
        prop_assert_eq!(build_hypersurface(&a).unwrap(), build_hypersurface(&a.shifted(&c)).unwrap());
    }

    #[test]
    fn relabelling_coordinates_preserves_homology(a in plane_heights(), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let x = build_hypersurface(&a).unwrap();
        let y = build_hypersurface(&permuted(&a, &perm)).unwrap();
        prop_assert_eq!(census(&x), census(&y));
        prop_assert_eq!(hodge_table(&x).unwrap(), hodge_table(&y).unwrap());
    }

    #[test]
    fn degree_is_d_for_every_seed(a in plane_heights(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let x = build_hypersurface(&a).unwrap();
        let d = u64::from(a.degree());
        prop_assert_eq!(degree(&x, s1).unwrap(), d);
        prop_assert_eq!(degree(&x, s2).unwrap(), d);
    }

    #[test]
    fn subdivision_tiles_the_newton_polygon(d in 1u32..=4, seed in prop::collection::vec(-9i64..=9, 15)) {
        let pts = lattice_points(2, d);
        let a = HeightFunction::new(2, d, pts.iter().cloned().zip(seed.iter().cycle().cloned().map(q))).unwrap();
        let s = dual_subdivision(&a);
        let area: i64 = s
            .cells()
            .iter()
            .map(|c| {
                let local: Vec<(i64, i64)> = c.iter().map(|&i| (i64::from(s.points()[i][1]), i64::from(s.points()[i][2]))).collect();
                hull_area2(&local)
            })
            .sum();
        prop_assert_eq!(area, i64::from(d * d));
        // a subdivided disk has Euler characteristic 1
        let chi: i64 = s.all_cells().iter().map(|(k, _)| if k % 2 == 0 { 1 } else { -1 }).sum();
        prop_assert_eq!(chi, 1);
    }

    #[test]
    fn cosheaf_maps_compose_along_intervals(a in plane_heights(), p in 0usize..=1) {
        // for G < E of codimension two, both routes through a middle face agree
        let x = build_hypersurface(&a).unwrap();
        for e in 0..x.len() {
            for &(f, _) in x.boundary(e) {
                for &(g, _) in x.boundary(f) {
                    let route = iota(&x, f, g, p).unwrap().mul(&iota(&x, e, f, p).unwrap());
                    for &(f2, _) in x.boundary(e) {
                        if x.boundary(f2).iter().any(|&(h, _)| h == g) {
                            let other = iota(&x, f2, g, p).unwrap().mul(&iota(&x, e, f2, p).unwrap());
                            prop_assert_eq!(&route, &other);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chart_transitions_compose(v in prop::collection::vec(-30i64..30, 3), i in 0usize..=3, j in 0usize..=3, k in 0usize..=3) {
        let v: Vec<Rational> = v.into_iter().map(q).collect();
        let vi = chart_transition(3, i, j, &v).unwrap();
        prop_assert_eq!(chart_transition(3, j, i, &vi).unwrap(), v.clone());
        let vk = chart_transition(3, k, i, &vi).unwrap();
        prop_assert_eq!(vk, chart_transition(3, k, j, &v).unwrap());
        // a point reports the same chart coordinates
        let pt = Point::from_chart(3, CoordSet::EMPTY, &chart_transition(3, 0, j, &v).unwrap()).unwrap();
        let got: Vec<Rational> = pt.in_chart(i).unwrap().into_iter().map(Option::unwrap).collect();
        prop_assert_eq!(got, vi);
    }

    #[test]
    fn wedge_powers_are_functorial(
        a in prop::collection::vec(-4i64..=4, 12),
        b in prop::collection::vec(-4i64..=4, 12),
        p in 0usize..=3,
    ) {
        let a = QMatrix::new(3, 4, a.into_iter().map(q).collect());
        let b = QMatrix::new(4, 3, b.into_iter().map(q).collect());
        prop_assert_eq!(wedge_map(&a.mul(&b), p), wedge_map(&a, p).mul(&wedge_map(&b, p)));
        // top power of a square matrix is its determinant
        let ab = a.mul(&b);
        let top = wedge_map(&ab, 3);
        prop_assert_eq!(top.get(0, 0), &ab.det());
    }

    #[test]
    fn rationals_round_trip(n in any::<i64>(), d in 1i64..=i64::MAX) {
        let r = qf(n, d);
        let s = format_rational(&r);
        prop_assert_eq!(parse_rational(&s).unwrap(), r.clone());
        prop_assert!(!s.contains('/') || r.denom().is_positive());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn uniform_matroids_satisfy_os_duality((r, n) in (2usize..=5).prop_flat_map(|n| (1..=n, Just(n)))) {
        let m = Matroid::uniform(r, n).unwrap();
        let b = os_betti(&m).unwrap();
        let fan = bergman_fan(&m).unwrap();
        let dims: Vec<i64> = (0..b.len()).map(|p| fan_coefficient_space(&fan, p).dim() as i64).collect();
        prop_assert_eq!(dims, b);
        let x = bergman_complex(&m).unwrap();
        prop_assert!(is_balanced(&x).unwrap());
        prop_assert!(euler_check(&x).unwrap());
    }
}
