use num_bigint::BigInt;
use num_traits::Zero;

use super::polyhedron::{cone_inequalities, Span};
use crate::exact::{
    clear_denominators, dot, lp, primitive, quotient_map, row_echelon_with_transform, to_rationals, IntMatrix, Rational,
};

/// Rational polyhedral cone with apex at the origin, given by primitive
/// integer generators. The zero cone has no generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    generators: Vec<Vec<BigInt>>,
}

impl Cone {
    /// Normalizes generators to primitive vectors, drops zeros and duplicates.
    pub fn new(generators: Vec<Vec<BigInt>>) -> Self {
        let mut g: Vec<Vec<BigInt>> = generators
            .into_iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .map(|v| primitive(&to_rationals(&v)))
            .collect();
        g.sort();
        g.dedup();
        Cone { generators: g }
    }

    pub fn from_rational(generators: &[Vec<Rational>]) -> Self {
        Cone::new(generators.iter().map(|v| clear_denominators(v)).collect())
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    fn rational_generators(&self) -> Vec<Vec<Rational>> {
        self.generators.iter().map(|g| to_rationals(g)).collect()
    }

    pub fn dim(&self, rank: usize) -> usize {
        Span::new(&self.rational_generators(), rank).dim()
    }
}

/// A fan: cones in a lattice `Z^rank`. Only the cones listed are stored; all
/// support computations treat the fan as the union of its cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    cones: Vec<Cone>,
}

impl Fan {
    pub fn new(rank: usize, mut cones: Vec<Cone>) -> Self {
        for c in &cones {
            assert!(c.generators.iter().all(|g| g.len() == rank), "generator length");
        }
        cones.sort();
        cones.dedup();
        Fan { rank, cones }
    }

    /// The fan consisting of the origin only.
    pub fn zero(rank: usize) -> Self {
        Fan::new(rank, vec![Cone::new(vec![])])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn dim(&self) -> usize {
        self.cones.iter().map(|c| c.dim(self.rank)).max().unwrap_or(0)
    }

    /// Distinct generators of the one-dimensional cones.
    pub fn rays(&self) -> Vec<Vec<BigInt>> {
        let mut r: Vec<Vec<BigInt>> = self
            .cones
            .iter()
            .filter(|c| c.dim(self.rank) == 1 && c.generators.len() == 1)
            .map(|c| c.generators[0].clone())
            .collect();
        r.sort();
        r.dedup();
        r
    }

    /// Whether the support is the origin alone (or empty).
    pub fn is_zero(&self) -> bool {
        self.cones.iter().all(|c| c.generators.is_empty())
    }

    /// Image under an integer linear map `Z^rank -> Z^m`.
    pub fn map(&self, m: &IntMatrix) -> Fan {
        assert_eq!(m.cols(), self.rank);
        let cones = self
            .cones
            .iter()
            .map(|c| Cone::new(c.generators.iter().map(|g| m.mul_vec(g)).collect()))
            .collect();
        Fan::new(m.rows(), cones)
    }

    /// Image in the integer quotient lattice `Z^rank / (Z^rank ∩ span(sub))`.
    pub fn quotient(&self, sub: &[Vec<Rational>]) -> Fan {
        let cols: Vec<Vec<BigInt>> = sub.iter().map(|v| clear_denominators(v)).collect();
        let b = IntMatrix::from_columns(&cols, self.rank);
        self.map(&quotient_map(&b))
    }

    /// The same fan in the lattice `Z^rank ∩ span(fan)`, of rank equal to the
    /// dimension of the span.
    pub fn restrict_to_span(&self) -> Fan {
        let cols: Vec<Vec<BigInt>> = self.cones.iter().flat_map(|c| c.generators.clone()).collect();
        let b = IntMatrix::from_columns(&cols, self.rank);
        let (u, _, r) = row_echelon_with_transform(&b);
        let data = (0..r).flat_map(|i| u.row(i).to_vec()).collect();
        self.map(&IntMatrix::new(r, self.rank, data))
    }
}

/// Whether `|a| = |b|` as subsets of `R^rank`. Fans of different rank are
/// never equal. Exponential in the dimension; meant for local fans.
pub fn support_equal(a: &Fan, b: &Fan) -> bool {
    a.rank == b.rank && covered(a, b) && covered(b, a)
}

/// Whether every cone of `a` lies in the support of `b`.
fn covered(a: &Fan, b: &Fan) -> bool {
    let b_spans: Vec<(Span, Vec<Vec<Rational>>)> = b
        .cones
        .iter()
        .map(|c| {
            let g = c.rational_generators();
            (Span::new(&g, b.rank), g)
        })
        .collect();
    a.cones
        .iter()
        .all(|c| cone_covered(&c.rational_generators(), a.rank, &b_spans))
}

fn cone_covered(gens: &[Vec<Rational>], rank: usize, pieces: &[(Span, Vec<Vec<Rational>>)]) -> bool {
    let span = Span::new(gens, rank);
    let e = span.dim();
    if e == 0 {
        return !pieces.is_empty();
    }
    let local: Vec<Vec<Rational>> = gens.iter().map(|g| span.coords(g).expect("in span")).collect();
    // open regions still uncovered, each an intersection of half-spaces in Q^e
    let mut regions = vec![cone_inequalities(&local, e)];
    for (tspan, tgens) in pieces {
        if !span.basis().iter().all(|w| tspan.contains(w)) {
            continue;
        }
        let tlocal: Vec<Vec<Rational>> = tgens.iter().map(|g| tspan.coords(g).expect("in span")).collect();
        // pull the piece's inequalities back to coordinates on span
        let hs: Vec<Vec<Rational>> = cone_inequalities(&tlocal, tspan.dim())
            .iter()
            .map(|u| {
                span.basis()
                    .iter()
                    .map(|w| {
                        let wc = tspan.coords(w).expect("span contained");
                        dot(u, &wc)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for r in &regions {
            for j in 0..hs.len() {
                let mut cand = r.clone();
                cand.extend(hs[..j].iter().cloned());
                cand.push(hs[j].iter().map(|x| -x).collect());
                if lp::strictly_feasible(&cand, e) {
                    next.push(cand);
                }
            }
        }
        regions = next;
        if regions.is_empty() {
            return true;
        }
    }
    regions.is_empty()
}
