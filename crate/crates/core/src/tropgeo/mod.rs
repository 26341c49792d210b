//! Tropical projective space, faces, fans and polyhedral complexes.
//!
//! Points of TP^N are stored homogeneously: `N+1` rational coordinates plus a
//! sedentarity set `I` of coordinates sitting at `-inf`. Entries at `I` are
//! zero and ignored, and the smallest index outside `I` is normalized to zero.
//! Inside the stratum TP°_I we use the chart given by that smallest index; its
//! coordinates are the remaining entries in increasing index order.

mod complex;
mod fan;
mod ops;
pub(crate) mod polyhedron;

pub use complex::{Face, FaceSpec, TropicalComplex};
pub use fan::{support_equal, Cone, Fan};
pub use ops::{
    balancing_violations, family_poset, fan_linear_space, is_balanced, is_smooth_at, relative_fan, star_fan,
};

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};

/// Subset of the coordinate indices `{0,…,N}` as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordSet(pub u32);

impl CoordSet {
    pub const EMPTY: CoordSet = CoordSet(0);

    pub fn singleton(i: usize) -> Self {
        CoordSet(1 << i)
    }

    /// `{0,…,n-1}`.
    pub fn full(n: usize) -> Self {
        CoordSet(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn from_indices(idx: &[usize]) -> Self {
        CoordSet(idx.iter().fold(0, |acc, &i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: CoordSet) -> CoordSet {
        CoordSet(self.0 | o.0)
    }

    pub fn intersection(self, o: CoordSet) -> CoordSet {
        CoordSet(self.0 & o.0)
    }

    pub fn minus(self, o: CoordSet) -> CoordSet {
        CoordSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: CoordSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: CoordSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }
}

impl fmt::Debug for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Canonical chart of the stratum with sedentarity `sed` in TP^n: the chart
/// index and the ordered list of coordinate indices.
pub fn stratum_chart(n: usize, sed: CoordSet) -> (usize, Vec<usize>) {
    let c = CoordSet::full(n + 1).minus(sed).first().expect("stratum is nonempty");
    let coords = (0..=n).filter(|&k| k != c && !sed.contains(k)).collect();
    (c, coords)
}

/// Dimension of the stratum TP°_I.
pub fn stratum_dim(n: usize, sed: CoordSet) -> usize {
    n - sed.len()
}

/// Point of TP^N in normalized homogeneous form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    sed: CoordSet,
    hom: Vec<Rational>,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self
            .hom
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if self.sed.contains(i) {
                    "-inf".to_string()
                } else {
                    x.to_string()
                }
            })
            .collect();
        write!(f, "({})", c.join(", "))
    }
}

impl Point {
    /// Builds from homogeneous coordinates; entries at `sed` are ignored.
    pub fn new(sed: CoordSet, hom: Vec<Rational>) -> Result<Self> {
        let n1 = hom.len();
        if n1 == 0 || !sed.is_subset(CoordSet::full(n1)) || sed.len() >= n1 {
            return Err(Error::InvalidChart(format!(
                "sedentarity {sed:?} is not a proper subset of 0..{n1}"
            )));
        }
        let mut p = Point { sed, hom };
        p.normalize();
        Ok(p)
    }

    /// Builds from coordinates in the canonical chart of the stratum `sed`.
    pub fn from_chart(n: usize, sed: CoordSet, coords: &[Rational]) -> Result<Self> {
        let (_, idx) = stratum_chart(n, sed);
        if idx.len() != coords.len() {
            return Err(Error::DimensionMismatch(format!(
                "stratum {sed:?} of TP^{n} needs {} chart coordinates, got {}",
                idx.len(),
                coords.len()
            )));
        }
        let mut hom = vec![Rational::zero(); n + 1];
        for (k, x) in idx.iter().zip(coords) {
            hom[*k] = x.clone();
        }
        Point::new(sed, hom)
    }

    /// Origin of the stratum `sed`.
    pub fn origin(n: usize, sed: CoordSet) -> Self {
        Point {
            sed,
            hom: vec![Rational::zero(); n + 1],
        }
    }

    fn normalize(&mut self) {
        let (c, _) = stratum_chart(self.n(), self.sed);
        let base = self.hom[c].clone();
        for (i, x) in self.hom.iter_mut().enumerate() {
            if self.sed.contains(i) {
                *x = Rational::zero();
            } else {
                *x -= &base;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.hom.len() - 1
    }

    pub fn sedentarity(&self) -> CoordSet {
        self.sed
    }

    /// Normalized homogeneous coordinates (zeros at sedentary positions).
    pub fn homogeneous(&self) -> &[Rational] {
        &self.hom
    }

    /// Coordinates in the canonical chart of the point's own stratum.
    pub fn chart_coords(&self) -> Vec<Rational> {
        let (_, idx) = stratum_chart(self.n(), self.sed);
        idx.iter().map(|&k| self.hom[k].clone()).collect()
    }

    /// Affine coordinates `y^(i)_k = x_k - x_i` for `k ≠ i`, in chart `i`.
    /// Sedentary coordinates are reported as `None`.
    pub fn in_chart(&self, i: usize) -> Result<Vec<Option<Rational>>> {
        if self.sed.contains(i) {
            return Err(Error::InvalidChart(format!(
                "point with sedentarity {:?} is not in chart {i}",
                self.sed
            )));
        }
        Ok((0..=self.n())
            .filter(|&k| k != i)
            .map(|k| (!self.sed.contains(k)).then(|| &self.hom[k] - &self.hom[i]))
            .collect())
    }

    /// Image under sending the coordinates in `s` to `-inf`.
    pub fn project(&self, s: CoordSet) -> Point {
        let mut p = self.clone();
        p.sed = self.sed.union(s);
        p.normalize();
        p
    }
}

/// Transition of a vector of chart-`j` coordinates of TP^n to chart `i`:
/// `y^(i)_k = y^(j)_k - y^(j)_i` and `y^(i)_j = -y^(j)_i`. The map is linear,
/// so it applies to points and direction vectors alike.
pub fn chart_transition(n: usize, i: usize, j: usize, v: &[Rational]) -> Result<Vec<Rational>> {
    if i > n || j > n {
        return Err(Error::InvalidChart(format!("chart index out of range for TP^{n}")));
    }
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "chart vector of TP^{n} needs {n} entries, got {}",
            v.len()
        )));
    }
    let mut hom = Vec::with_capacity(n + 1);
    let mut it = v.iter();
    for k in 0..=n {
        hom.push(if k == j {
            Rational::zero()
        } else {
            it.next().expect("length checked").clone()
        });
    }
    Ok((0..=n).filter(|&k| k != i).map(|k| &hom[k] - &hom[i]).collect())
}

/// The divisorial vector `d_S = -Σ_{j∈S} e_j` in the canonical chart of the
/// stratum `sed` (`S` disjoint from `sed`).
pub fn ray_vector(n: usize, sed: CoordSet, s: CoordSet) -> Vec<Rational> {
    let (c, idx) = stratum_chart(n, sed);
    let at_c = s.contains(c);
    idx.iter()
        .map(|&k| {
            let mut x = Rational::zero();
            if s.contains(k) {
                x -= Rational::one();
            }
            if at_c {
                x += Rational::one();
            }
            x
        })
        .collect()
}

/// Matrix of the linear projection from the chart of stratum `from` to the
/// chart of stratum `to ⊇ from`, killing the coordinates in `to ∖ from`.
pub fn projection_matrix(n: usize, from: CoordSet, to: CoordSet) -> QMatrix {
    let (c0, src) = stratum_chart(n, from);
    let (c1, dst) = stratum_chart(n, to);
    let mut cols = Vec::with_capacity(src.len());
    for &k in &src {
        // lift the unit vector at k, drop `to`, renormalize at c1
        let mut hom = vec![Rational::zero(); n + 1];
        hom[k] = Rational::one();
        debug_assert!(hom[c0].is_zero());
        for j in to.iter() {
            hom[j] = Rational::zero();
        }
        cols.push(dst.iter().map(|&t| &hom[t] - &hom[c1]).collect());
    }
    QMatrix::from_columns(&cols, dst.len())
}
