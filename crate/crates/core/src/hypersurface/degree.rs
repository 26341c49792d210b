//! Degree of a pure weighted complex by transversal intersection with a
//! generic fan-like linear space of complementary dimension.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{clear_denominators, lattice_index, lp, IntMatrix, QMatrix, Rational};
use crate::tropgeo::polyhedron::contains_point;
use crate::tropgeo::{fan_linear_space, CoordSet, FaceSpec, Point, TropicalComplex};

const RETRIES: usize = 16;

/// `deg Y`: the total multiplicity of `Y ∩ L^{N-n}(x)` for a pseudo-random
/// generic `x` drawn from `seed`. Non-transversal draws are replaced.
pub fn degree(y: &TropicalComplex, seed: u64) -> Result<u64> {
    degree_with_retries(y, seed, RETRIES)
}

/// As [`degree`], with an explicit bound on the number of probes.
pub fn degree_with_retries(y: &TropicalComplex, seed: u64, retries: usize) -> Result<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = coordinate_spread(y);
    for _ in 0..retries {
        let x = sample_point(&mut rng, y.n(), &spread);
        if let Some(total) = intersect(y, &x)? {
            return Ok(total);
        }
    }
    Err(Error::NotTransversal(retries))
}

/// Window for probe coordinates: twice the largest chart-0 coordinate of a
/// mobile vertex, plus slack.
fn coordinate_spread(y: &TropicalComplex) -> BigInt {
    let m = y
        .points()
        .iter()
        .filter(|p| p.sedentarity().is_empty())
        .flat_map(|p| p.chart_coords())
        .map(|c| c.abs().ceil().to_integer())
        .max()
        .unwrap_or_else(BigInt::zero);
    m * 2 + 3
}

/// Integer part in `[-w, w]` plus a fraction with a large prime denominator.
fn sample_point(rng: &mut ChaCha8Rng, n: usize, w: &BigInt) -> Vec<Rational> {
    const DEN: i64 = 1_000_003;
    let w = i64::try_from(w).unwrap_or(i64::MAX / (4 * DEN));
    (0..n)
        .map(|_| {
            let int = rng.gen_range(-w..=w);
            let frac = rng.gen_range(1..DEN);
            Rational::new(BigInt::from(int * DEN + frac), BigInt::from(DEN))
        })
        .collect()
}

/// The probe `L^k(x)`; for `k = 0` the single point `x`.
fn probe(n: usize, x: &[Rational], k: usize) -> Result<TropicalComplex> {
    if k == 0 {
        let p = Point::from_chart(n, CoordSet::EMPTY, x)?;
        return TropicalComplex::new(n, vec![FaceSpec::new(CoordSet::EMPTY, vec![p], vec![])]);
    }
    fan_linear_space(x, k)
}

/// Total intersection multiplicity, or `None` when the probe is not
/// transversal to `y`.
fn intersect(y: &TropicalComplex, x: &[Rational]) -> Result<Option<u64>> {
    let n = y.n();
    let top = y.dim();
    let l = probe(n, x, n - top)?;
    let mut total = 0u64;
    for f in y.faces_of_dim(top) {
        let sed = y.face(f).sedentarity();
        let m = n - sed.len();
        if m < top {
            continue;
        }
        for g in l.faces_of_dim(m - top).filter(|&g| l.face(g).sedentarity() == sed) {
            match local_multiplicity(y, f, &l, g)? {
                Meet::Empty => {}
                Meet::Degenerate => return Ok(None),
                Meet::Point(k) => total += k * y.face(f).weight(),
            }
        }
    }
    Ok(Some(total))
}

enum Meet {
    Empty,
    Degenerate,
    Point(u64),
}

fn local_multiplicity(y: &TropicalComplex, f: usize, l: &TropicalComplex, g: usize) -> Result<Meet> {
    let (bf, bg) = (y.face(f).span().basis(), l.face(g).span().basis());
    let m = y.face(f).span().ambient();
    let (vf, rf) = (y.vertex_coords(f), y.ray_vectors(f));
    let (vg, rg) = (l.vertex_coords(g), l.ray_vectors(g));
    let cols: Vec<Vec<Rational>> = bf
        .iter()
        .cloned()
        .chain(bg.iter().map(|v| v.iter().map(|x| -x).collect()))
        .collect();
    let a = QMatrix::from_columns(&cols, m);
    if a.det().is_zero() {
        return Ok(if polyhedra_meet(&vf, &rf, &vg, &rg) {
            Meet::Degenerate
        } else {
            Meet::Empty
        });
    }
    let rhs: Vec<Rational> = vg[0].iter().zip(&vf[0]).map(|(p, q)| p - q).collect();
    let coef = a.solve(&rhs).expect("nonsingular system");
    let mut pt = vf[0].clone();
    for (c, b) in coef.iter().zip(bf) {
        for (p, bi) in pt.iter_mut().zip(b) {
            *p += c * bi;
        }
    }
    if !contains_point(&vf, &rf, &pt) || !contains_point(&vg, &rg, &pt) {
        return Ok(Meet::Empty);
    }
    // the point must avoid the relative boundaries of both faces
    for (c, face) in [(y, f), (l, g)] {
        for &(sub, _) in c.boundary(face) {
            if c.face(sub).sedentarity() == c.face(face).sedentarity()
                && contains_point(&c.vertex_coords(sub), &c.ray_vectors(sub), &pt)
            {
                return Ok(Meet::Degenerate);
            }
        }
    }
    let ints = |b: &[Vec<Rational>]| -> Vec<Vec<BigInt>> { b.iter().map(|v| clear_denominators(v)).collect() };
    let (zf, zg) = (ints(bf), ints(bg));
    let both: Vec<Vec<BigInt>> = zf.iter().chain(&zg).cloned().collect();
    let whole = lattice_index(&IntMatrix::from_columns(&both, m))?;
    let idx = |z: &[Vec<BigInt>]| -> Result<BigInt> {
        if z.is_empty() {
            Ok(BigInt::from(1))
        } else {
            lattice_index(&IntMatrix::from_columns(z, m))
        }
    };
    let k = whole / (idx(&zf)? * idx(&zg)?);
    Ok(Meet::Point(u64::try_from(k).expect("multiplicity fits in u64")))
}

/// Whether `conv(V) + cone(R)` and `conv(V') + cone(R')` intersect.
fn polyhedra_meet(v: &[Vec<Rational>], r: &[Vec<Rational>], v2: &[Vec<Rational>], r2: &[Vec<Rational>]) -> bool {
    let gens: Vec<(&Vec<Rational>, i8)> = v
        .iter()
        .map(|x| (x, 0))
        .chain(r.iter().map(|x| (x, 1)))
        .chain(v2.iter().map(|x| (x, 2)))
        .chain(r2.iter().map(|x| (x, 3)))
        .collect();
    let nvar = gens.len();
    let m = v[0].len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut eq = |row: Vec<Rational>, rhs: Rational| {
        a.push(row.iter().map(|x| -x).collect::<Vec<_>>());
        b.push(-rhs.clone());
        a.push(row);
        b.push(rhs);
    };
    // Σ λ v + Σ μ r - Σ λ' v' - Σ μ' r' = 0
    for c in 0..m {
        let row = gens
            .iter()
            .map(|(g, k)| if *k < 2 { g[c].clone() } else { -g[c].clone() })
            .collect();
        eq(row, Rational::zero());
    }
    for side in [0, 2] {
        let row = gens
            .iter()
            .map(|(_, k)| {
                if *k == side {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            })
            .collect();
        eq(row, Rational::from_integer(1.into()));
    }
    for i in 0..nvar {
        let mut row = vec![Rational::zero(); nvar];
        row[i] = Rational::from_integer(1.into());
        a.push(row);
        b.push(Rational::zero());
    }
    lp::feasible_point(&a, &b, nvar).is_some()
}
