//! Homogeneous tropical polynomials on TP^N, their dual subdivisions, the
//! hypersurfaces they cut out, and the degree of balanced complexes.
//!
//! A height function assigns a rational or −∞ to each point of
//! `Δ_d^Z = {m ∈ Z^{N+1}_{≥0} : Σ m_i = d}`; −∞ points are simply absent.

mod build;
mod degree;
pub mod subdivision;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{format_rational, lattice_index, parse_rational, IntMatrix, Rational};

pub use build::build_hypersurface;
pub use degree::{degree, degree_with_retries};

/// All points of `Δ_d^Z` in lexicographic order.
pub fn lattice_points(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(left: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(left - 1, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n + 1, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Heights on `Δ_d^Z ⊂ Z^{N+1}`, with at least one finite value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction {
    n: usize,
    d: u32,
    values: BTreeMap<Vec<u32>, Rational>,
}

impl HeightFunction {
    pub fn new(n: usize, d: u32, values: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        if n == 0 || n >= 32 {
            return Err(Error::InvalidHeights(format!("ambient dimension {n} is out of range")));
        }
        let mut map = BTreeMap::new();
        for (m, a) in values {
            if m.len() != n + 1 {
                return Err(Error::InvalidHeights(format!(
                    "exponent {m:?} must have {} entries",
                    n + 1
                )));
            }
            if m.iter().sum::<u32>() != d {
                return Err(Error::InvalidHeights(format!("exponent {m:?} does not sum to {d}")));
            }
            if map.insert(m.clone(), a).is_some() {
                return Err(Error::InvalidHeights(format!("exponent {m:?} listed twice")));
            }
        }
        if map.is_empty() {
            return Err(Error::InvalidHeights("every height is -inf".into()));
        }
        Ok(HeightFunction { n, d, values: map })
    }

    /// `a ≡ c` on all of `Δ_d^Z`.
    pub fn constant(n: usize, d: u32, c: Rational) -> Result<Self> {
        HeightFunction::new(n, d, lattice_points(n, d).into_iter().map(|m| (m, c.clone())))
    }

    /// Heights `-Σ_{0≤i<j≤N+1} (z_i - z_j)^2` with `z_k = m_k + … + m_N`
    /// (so `z_0 = d`, `z_{N+1} = 0`). This is a positive definite form of
    /// Voronoi's first type in `(z_1..z_N)`; its Delaunay subdivision, and so
    /// the subdivision of `dΔ_N` induced here, is the alcoved triangulation
    /// cut out by `z_i - z_j ∈ Z`. That triangulation is unimodular.
    pub fn alcoved(n: usize, d: u32) -> Result<Self> {
        let values = lattice_points(n, d).into_iter().map(|m| {
            let mut z = vec![0i64; n + 2];
            for k in (0..=n).rev() {
                z[k] = z[k + 1] + i64::from(m[k]);
            }
            let mut s = 0i64;
            for i in 0..z.len() {
                for j in i + 1..z.len() {
                    s += (z[i] - z[j]).pow(2);
                }
            }
            (m, Rational::from_integer(BigInt::from(-s)))
        });
        HeightFunction::new(n, d, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// `a(m)`, or `None` for −∞.
    pub fn get(&self, m: &[u32]) -> Option<&Rational> {
        self.values.get(m)
    }

    /// Finite entries in lexicographic order of `m`.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.values.iter()
    }

    pub fn support(&self) -> Vec<Vec<u32>> {
        self.values.keys().cloned().collect()
    }

    /// `a + c` on the finite values.
    pub fn shifted(&self, c: &Rational) -> Self {
        HeightFunction {
            n: self.n,
            d: self.d,
            values: self.values.iter().map(|(m, a)| (m.clone(), a + c)).collect(),
        }
    }

    /// `c_i = min m_i` over the support.
    pub fn min_exponents(&self) -> Vec<u32> {
        (0..=self.n)
            .map(|i| self.values.keys().map(|m| m[i]).min().expect("nonempty"))
            .collect()
    }

    /// `{"N", "d", "heights": [{"m", "a"}]}`; omitted points are −∞.
    pub fn to_json(&self) -> Value {
        let hs: Vec<Value> = self
            .values
            .iter()
            .map(|(m, a)| json!({"m": m, "a": format_rational(a)}))
            .collect();
        json!({"N": self.n, "d": self.d, "heights": hs})
    }

    /// Accepts `"a"` as a rational string or an integer; `"-inf"` or `null`
    /// entries are treated as omitted.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |s: &str| Error::Parse(format!("heights: {s}"));
        let n = v
            .get("N")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer \"N\""))? as usize;
        let d = v
            .get("d")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer \"d\""))?;
        let d = u32::try_from(d).map_err(|_| bad("degree too large"))?;
        let list = v
            .get("heights")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array \"heights\""))?;
        let mut values = Vec::new();
        for e in list {
            let m: Vec<u32> = e
                .get("m")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("entry without \"m\""))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .and_then(|x| u32::try_from(x).ok())
                        .ok_or_else(|| bad("exponent is not a small nonnegative integer"))
                })
                .collect::<Result<_>>()?;
            let a = match e.get("a") {
                None | Some(Value::Null) => continue,
                Some(Value::String(s)) if s == "-inf" => continue,
                Some(Value::String(s)) => parse_rational(s)?,
                Some(Value::Number(k)) => {
                    let k = k.as_i64().ok_or_else(|| bad("numeric heights must be integers"))?;
                    Rational::from_integer(k.into())
                }
                Some(_) => return Err(bad("height must be a rational string")),
            };
            values.push((m, a));
        }
        HeightFunction::new(n, d, values)
    }
}

/// The regular subdivision of the Newton polytope induced by the heights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSubdivision {
    points: Vec<Vec<u32>>,
    cells: Vec<Vec<usize>>,
    dim: usize,
}

impl DualSubdivision {
    /// Support points, lexicographic.
    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    /// Maximal cells as sorted indices into [`points`](Self::points).
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Dimension of the Newton polytope.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Every cell of the subdivision with its dimension, by dimension then
    /// indices.
    pub fn all_cells(&self) -> Vec<(usize, Vec<usize>)> {
        let pts = reduced_points(&self.points);
        let mut out: Vec<(usize, Vec<usize>)> = subdivision::all_faces(&pts, &self.cells)
            .into_iter()
            .map(|c| {
                let local: Vec<Vec<Rational>> = c.iter().map(|&i| pts[i].clone()).collect();
                (subdivision::affine_dim(&local), c)
            })
            .collect();
        out.sort();
        out
    }

    /// Whether every maximal cell is a unimodular simplex.
    pub fn is_unimodular(&self) -> bool {
        self.cells.iter().all(|c| self.is_unimodular_cell(c))
    }

    /// Whether the cell is a simplex whose edge vectors from one vertex
    /// span the lattice of the Newton polytope's affine hull.
    pub fn is_unimodular_cell(&self, c: &[usize]) -> bool {
        if c.len() != self.dim + 1 {
            return false;
        }
        let base = &self.points[c[0]];
        let cols: Vec<Vec<BigInt>> = c[1..]
            .iter()
            .map(|&i| {
                self.points[i][1..]
                    .iter()
                    .zip(&base[1..])
                    .map(|(&x, &y)| BigInt::from(x) - BigInt::from(y))
                    .collect()
            })
            .collect();
        if cols.is_empty() {
            return true;
        }
        let rows = cols[0].len();
        matches!(lattice_index(&IntMatrix::from_columns(&cols, rows)), Ok(k) if k == BigInt::from(1))
    }
}

/// Points of `Δ_d^Z` in the coordinates `(m_1, …, m_N)`, which identify the
/// lattice `{Σ m_i = d}` with `Z^N`.
fn reduced_points(points: &[Vec<u32>]) -> Vec<Vec<Rational>> {
    points
        .iter()
        .map(|m| m[1..].iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect()
}

/// The cells are the argmax sets of `m ↦ m·x + a(m)` of full dimension.
pub fn dual_subdivision(a: &HeightFunction) -> DualSubdivision {
    let points = a.support();
    let pts = reduced_points(&points);
    let heights: Vec<Rational> = points.iter().map(|m| a.get(m).expect("support").clone()).collect();
    let cells = subdivision::regular_subdivision(&pts, &heights);
    let dim = subdivision::affine_dim(&pts);
    DualSubdivision { points, cells, dim }
}

/// Whether the dual subdivision is a unimodular triangulation.
pub fn is_smooth(a: &HeightFunction) -> bool {
    dual_subdivision(a).is_unimodular()
}
