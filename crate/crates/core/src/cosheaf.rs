//! Coefficient groups `F_p(Δ)` and the cosheaf maps `ι` between them.
//!
//! `F_p(Δ)` lives in `Λ^p Q^m` where `m` is the dimension of Δ's stratum and
//! coordinates are `p×p` minors over lexicographically ordered `p`-subsets
//! of the stratum chart coordinates. Bases are reduced row echelon, so the
//! coefficients of a vector in the span are its entries at the pivots.

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};
use crate::tropgeo::polyhedron::Span;
use crate::tropgeo::{projection_matrix, relative_fan, Fan, TropicalComplex};

/// `p`-subsets of `{0,…,m-1}` in lexicographic order.
pub fn wedge_index(m: usize, p: usize) -> Vec<Vec<usize>> {
    (0..m).combinations(p).collect()
}

/// Coordinates of `v_1 ∧ … ∧ v_p` (all `v_i` in `Q^m`).
pub fn wedge(vectors: &[Vec<Rational>], index: &[Vec<usize>]) -> Vec<Rational> {
    let p = vectors.len();
    index
        .iter()
        .map(|cols| {
            let rows: Vec<Vec<Rational>> = vectors
                .iter()
                .map(|v| cols.iter().map(|&c| v[c].clone()).collect())
                .collect();
            QMatrix::from_rows(&rows, p).det()
        })
        .collect()
}

/// Matrix of `Λ^p A` for `A: Q^m -> Q^k`, in lexicographic wedge coordinates.
pub fn wedge_map(a: &QMatrix, p: usize) -> QMatrix {
    let src = wedge_index(a.cols(), p);
    let dst = wedge_index(a.rows(), p);
    let rows: Vec<Vec<Rational>> = dst
        .iter()
        .map(|r| {
            src.iter()
                .map(|c| {
                    let sub: Vec<Vec<Rational>> = r
                        .iter()
                        .map(|&i| c.iter().map(|&j| a.get(i, j).clone()).collect())
                        .collect();
                    QMatrix::from_rows(&sub, p).det()
                })
                .collect()
        })
        .collect();
    QMatrix::from_rows(&rows, src.len())
}

/// A basis of `F_p` of a face or fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSpace {
    p: usize,
    ambient: usize,
    span: Span,
}

impl CoefficientSpace {
    /// `Σ Λ^p(L)` over the given subspaces `L ⊆ Q^m`, each given by a basis.
    pub fn from_spans<'a>(m: usize, p: usize, spans: impl IntoIterator<Item = &'a [Vec<Rational>]>) -> Self {
        let index = wedge_index(m, p);
        let mut gens = Vec::new();
        for basis in spans {
            for sub in basis.iter().cloned().combinations(p) {
                gens.push(wedge(&sub, &index));
            }
        }
        CoefficientSpace {
            p,
            ambient: m,
            span: Span::new(&gens, index.len()),
        }
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    /// Dimension of the ambient chart space whose wedge power contains this.
    pub fn chart_rank(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Basis wedges as columns.
    pub fn basis(&self) -> QMatrix {
        QMatrix::from_columns(self.span.basis(), self.span.ambient())
    }

    pub fn basis_vectors(&self) -> &[Vec<Rational>] {
        self.span.basis()
    }

    /// Coefficients of `w` in the basis, or `None` when `w` is outside.
    pub fn coords(&self, w: &[Rational]) -> Option<Vec<Rational>> {
        self.span.coords(w)
    }
}

/// `F_p(Δ)`: wedges of the spans of the faces in the star of Δ.
pub fn coefficient_space(x: &TropicalComplex, id: usize, p: usize) -> CoefficientSpace {
    let m = x.face(id).span().ambient();
    let star = x.star(id);
    CoefficientSpace::from_spans(m, p, star.iter().map(|&g| x.face(g).span().basis()))
}

/// `F_p` of a fan: wedges of the spans of its cones.
pub fn fan_coefficient_space(fan: &Fan, p: usize) -> CoefficientSpace {
    let spans: Vec<Vec<Vec<Rational>>> = fan
        .cones()
        .iter()
        .map(|c| {
            let g: Vec<Vec<Rational>> = c
                .generators()
                .iter()
                .map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect())
                .collect();
            Span::new(&g, fan.rank()).basis().to_vec()
        })
        .collect();
    CoefficientSpace::from_spans(fan.rank(), p, spans.iter().map(|s| s.as_slice()))
}

/// `F̄_p(Δ)`: `F_p` of the relative fan at Δ.
pub fn relative_coefficient_space(x: &TropicalComplex, id: usize, p: usize) -> CoefficientSpace {
    fan_coefficient_space(&relative_fan(x, id), p)
}

/// All `F_p(Δ)`, indexed by face id.
pub fn coefficient_spaces(x: &TropicalComplex, p: usize) -> Vec<CoefficientSpace> {
    (0..x.len()).map(|i| coefficient_space(x, i, p)).collect()
}

/// Matrix of `ι: F_p(from) -> F_p(to)` for a codimension-one face `to` of
/// `from`, in the stored bases.
pub fn iota(x: &TropicalComplex, from: usize, to: usize, p: usize) -> Result<QMatrix> {
    let src = coefficient_space(x, from, p);
    let dst = coefficient_space(x, to, p);
    iota_between(x, from, to, &src, &dst)
}

/// As [`iota`], with precomputed spaces.
pub fn iota_between(
    x: &TropicalComplex,
    from: usize,
    to: usize,
    src: &CoefficientSpace,
    dst: &CoefficientSpace,
) -> Result<QMatrix> {
    let (sf, st) = (x.face(from).sedentarity(), x.face(to).sedentarity());
    let images: Vec<Vec<Rational>> = if sf == st {
        src.basis_vectors().to_vec()
    } else {
        let lp = wedge_map(&projection_matrix(x.n(), sf, st), src.degree());
        src.basis_vectors().iter().map(|w| lp.mul_vec(w)).collect()
    };
    let mut cols = Vec::with_capacity(images.len());
    for w in &images {
        if w.iter().all(|c| c.is_zero()) {
            cols.push(vec![Rational::zero(); dst.dim()]);
            continue;
        }
        cols.push(dst.coords(w).ok_or(Error::NotInTarget { from, to })?);
    }
    Ok(QMatrix::from_columns(&cols, dst.dim()))
}

/// The empty wedge: `F_0` is spanned by `1`.
pub fn unit() -> Vec<Rational> {
    vec![Rational::one()]
}
