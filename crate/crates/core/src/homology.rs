//! Cellular chains with coefficients in `F_p`, their homology, and the
//! derived invariants `χ_p`, `χ_y` and `E`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cosheaf::{coefficient_spaces, iota_between, CoefficientSpace};
use crate::error::Result;
use crate::exact::{Rational, SparseMatrix};
use crate::tropgeo::TropicalComplex;

/// `C_•(X; F_p)` with block boundary matrices.
///
/// Blocks are ordered by face id and, within a block, by the stored basis of
/// `F_p(Δ)`. `boundaries[q]` is `∂_q: C_q -> C_{q-1}`; `boundaries[0]` is the
/// zero map to the zero space.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    p: usize,
    blocks: Vec<Vec<(usize, CoefficientSpace)>>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn degree(&self) -> usize {
        self.p
    }

    /// Top chain degree.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `(face id, F_p(face))` for every `q`-face, by face id.
    pub fn blocks(&self, q: usize) -> &[(usize, CoefficientSpace)] {
        &self.blocks[q]
    }

    pub fn chain_dim(&self, q: usize) -> usize {
        self.blocks.get(q).map_or(0, |b| b.iter().map(|(_, s)| s.dim()).sum())
    }

    pub fn boundary(&self, q: usize) -> &SparseMatrix {
        &self.boundaries[q]
    }

    /// Whether `∂_{q-1} ∂_q = 0` for every `q`.
    pub fn is_complex(&self) -> bool {
        (2..self.boundaries.len()).all(|q| self.boundaries[q - 1].mul(&self.boundaries[q]).is_zero())
    }

    /// Ranks of `∂_q` for every `q`, computed concurrently.
    pub fn boundary_ranks(&self) -> Vec<usize> {
        self.boundaries.par_iter().map(SparseMatrix::rank).collect()
    }

    /// `dim H_q` for `q = 0..len`.
    pub fn homology_dims(&self) -> Vec<usize> {
        betti(self, &self.boundary_ranks())
    }
}

fn betti(c: &ChainComplex, ranks: &[usize]) -> Vec<usize> {
    (0..c.len())
        .map(|q| c.chain_dim(q) - ranks[q] - ranks.get(q + 1).copied().unwrap_or(0))
        .collect()
}

/// Assembles `C_•(X; F_p)`.
pub fn chain_complex(x: &TropicalComplex, p: usize) -> Result<ChainComplex> {
    let spaces = coefficient_spaces(x, p);
    let top = x.dim();
    let mut blocks: Vec<Vec<(usize, CoefficientSpace)>> = vec![Vec::new(); top + 1];
    // offsets[id] = first row/column of face id inside its chain group
    let mut offsets = vec![0usize; x.len()];
    for id in 0..x.len() {
        let q = x.face(id).dim();
        offsets[id] = blocks[q].iter().map(|(_, s)| s.dim()).sum();
        blocks[q].push((id, spaces[id].clone()));
    }
    let dims: Vec<usize> = blocks.iter().map(|b| b.iter().map(|(_, s)| s.dim()).sum()).collect();
    let mut boundaries = vec![SparseMatrix::new(0, dims[0])];
    for q in 1..=top {
        let mut d = SparseMatrix::new(dims[q - 1], dims[q]);
        for (id, src) in &blocks[q] {
            for &(sub, sign) in x.boundary(*id) {
                let m = iota_between(x, *id, sub, src, &spaces[sub])?;
                let s = Rational::from_integer(sign.into());
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        d.add(offsets[sub] + r, offsets[*id] + c, m.get(r, c) * &s);
                    }
                }
            }
        }
        boundaries.push(d);
    }
    Ok(ChainComplex { p, blocks, boundaries })
}

/// `dim H_q(X; F_p)` for `q = 0..=dim X`.
pub fn homology_dims(x: &TropicalComplex, p: usize) -> Result<Vec<usize>> {
    Ok(chain_complex(x, p)?.homology_dims())
}

/// `h[p][q] = dim H_q(X; F_p)` for `0 ≤ p, q ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeTable {
    n: usize,
    h: Vec<Vec<usize>>,
}

impl HodgeTable {
    pub fn new(h: Vec<Vec<usize>>) -> Self {
        let n = h.len().saturating_sub(1);
        assert!(h.iter().all(|r| r.len() == n + 1), "hodge table must be square");
        HodgeTable { n, h }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `h[p][q]`, zero outside the table.
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.h.get(p).and_then(|r| r.get(q)).copied().unwrap_or(0)
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.h
    }

    /// `χ_p = Σ_q (-1)^q h[p][q]`.
    pub fn chi(&self, p: usize) -> i64 {
        (0..=self.n)
            .map(|q| if q % 2 == 0 { 1 } else { -1 } * self.get(p, q) as i64)
            .sum()
    }

    pub fn e_polynomial(&self) -> EPolynomial {
        EPolynomial {
            chi: (0..=self.n).map(|p| self.chi(p)).collect(),
        }
    }

    /// Aligned text rendering, rows indexed by `p`.
    pub fn to_text(&self) -> String {
        let width = self
            .h
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(self.n.to_string().len() + 2);
        let mut s = format!("{:>w$}", "p\\q", w = width + 1);
        for q in 0..=self.n {
            s.push_str(&format!(" {:>w$}", q, w = width));
        }
        s.push('\n');
        for (p, row) in self.h.iter().enumerate() {
            s.push_str(&format!("{:>w$}", p, w = width + 1));
            for v in row {
                s.push_str(&format!(" {:>w$}", v, w = width));
            }
            s.push('\n');
        }
        s
    }
}

/// The diagonal polynomial `Σ χ_p u^p v^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EPolynomial {
    chi: Vec<i64>,
}

impl EPolynomial {
    pub fn new(chi: Vec<i64>) -> Self {
        EPolynomial { chi }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.chi
    }

    pub fn is_zero(&self) -> bool {
        self.chi.iter().all(|&c| c == 0)
    }

    /// `Σ χ_p y^p` as a string.
    pub fn chi_y(&self) -> String {
        format_poly(&self.chi, |p| monomial("y", p))
    }
}

impl fmt::Display for EPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_poly(&self.chi, |p| {
            let (u, v) = (monomial("u", p), monomial("v", p));
            if p == 0 {
                String::new()
            } else {
                format!("{u}*{v}")
            }
        });
        f.write_str(&s)
    }
}

fn monomial(var: &str, p: usize) -> String {
    match p {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{p}"),
    }
}

/// Renders `Σ c_p m(p)` as `1 - u*v + 2*u^2*v^2`, or `0`.
fn format_poly(coeffs: &[i64], mono: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (p, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let m = mono(p);
        let mag = c.unsigned_abs();
        let body = match (mag, m.is_empty()) {
            (_, true) => mag.to_string(),
            (1, false) => m,
            (_, false) => format!("{mag}*{m}"),
        };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Full table over `0 ≤ p, q ≤ dim X`. Ranks over the `(p, q)` grid are
/// evaluated concurrently; the result does not depend on scheduling.
pub fn hodge_table(x: &TropicalComplex) -> Result<HodgeTable> {
    let n = x.dim();
    let complexes: Vec<ChainComplex> = (0..=n)
        .into_par_iter()
        .map(|p| chain_complex(x, p))
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize)> = (0..=n).flat_map(|p| (0..=n).map(move |q| (p, q))).collect();
    let ranks: Vec<usize> = jobs.par_iter().map(|&(p, q)| complexes[p].boundary(q).rank()).collect();
    let h = complexes
        .iter()
        .enumerate()
        .map(|(p, c)| betti(c, &ranks[p * (n + 1)..(p + 1) * (n + 1)]))
        .collect();
    Ok(HodgeTable::new(h))
}

pub fn chi(x: &TropicalComplex, p: usize) -> Result<i64> {
    Ok(hodge_table(x)?.chi(p))
}

pub fn chi_y(x: &TropicalComplex) -> Result<String> {
    Ok(hodge_table(x)?.e_polynomial().chi_y())
}

pub fn e_polynomial(x: &TropicalComplex) -> Result<EPolynomial> {
    Ok(hodge_table(x)?.e_polynomial())
}

/// Alternating face count `Σ_q (-1)^q #{q-faces}`.
pub fn face_euler_characteristic(x: &TropicalComplex) -> i64 {
    x.faces().iter().map(|f| if f.dim() % 2 == 0 { 1 } else { -1 }).sum()
}

/// Whether `χ_0` agrees with the alternating face count.
pub fn euler_check(x: &TropicalComplex) -> Result<bool> {
    let h = homology_dims(x, 0)?;
    let chi0: i64 = h
        .iter()
        .enumerate()
        .map(|(q, &v)| if q % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum();
    Ok(chi0 == face_euler_characteristic(x))
}

/// The report written by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub n: usize,
    pub hodge: Vec<Vec<usize>>,
    pub chi: Vec<i64>,
    pub chi_y: String,
    #[serde(rename = "E")]
    pub e: String,
}

impl From<&HodgeTable> for HomologyReport {
    fn from(t: &HodgeTable) -> Self {
        let e = t.e_polynomial();
        HomologyReport {
            n: t.dim(),
            hodge: t.rows().to_vec(),
            chi: e.coefficients().to_vec(),
            chi_y: e.chi_y(),
            e: e.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::tropgeo::{fan_linear_space, CoordSet, FaceSpec, Point};

    fn line() -> TropicalComplex {
        fan_linear_space(&[q(0), q(0)], 1).unwrap()
    }

    fn tp1() -> TropicalComplex {
        fan_linear_space(&[q(0)], 1).unwrap()
    }

    fn diag(n: usize) -> HodgeTable {
        HodgeTable::new(
            (0..=n)
                .map(|p| (0..=n).map(|q| usize::from(p == q)).collect())
                .collect(),
        )
    }

    #[test]
    fn single_point() {
        let x = TropicalComplex::new(
            2,
            vec![FaceSpec::new(
                CoordSet::EMPTY,
                vec![Point::origin(2, CoordSet::EMPTY)],
                vec![],
            )],
        )
        .unwrap();
        let c = chain_complex(&x, 0).unwrap();
        assert_eq!(c.chain_dim(0), 1);
        assert_eq!(c.homology_dims(), vec![1]);
        let t = hodge_table(&x).unwrap();
        assert_eq!(t.rows(), &[vec![1]]);
        assert_eq!(t.e_polynomial().to_string(), "1");
    }

    #[test]
    fn line_chain_groups() {
        let x = line();
        let c = chain_complex(&x, 1).unwrap();
        assert_eq!(c.chain_dim(1), 3);
        assert_eq!(c.chain_dim(0), 2);
        assert_eq!(c.boundary(1).rank(), 2);
        assert_eq!(c.homology_dims(), vec![0, 1]);
        assert_eq!(homology_dims(&x, 0).unwrap(), vec![1, 0]);
    }

    #[test]
    fn tp1_and_line_tables() {
        for x in [tp1(), line()] {
            let t = hodge_table(&x).unwrap();
            assert_eq!(t, diag(1));
            assert!(euler_check(&x).unwrap());
            assert_eq!(face_euler_characteristic(&x), 1);
        }
        let e = e_polynomial(&tp1()).unwrap();
        assert_eq!(e.coefficients(), &[1, -1]);
        assert_eq!(e.to_string(), "1 - u*v");
        assert_eq!(chi_y(&tp1()).unwrap(), "1 - y");
    }

    #[test]
    fn subdivided_tp1() {
        // TP^1 with mobile vertices at 0 and 1
        let n = 1;
        let p0 = Point::from_chart(n, CoordSet::EMPTY, &[q(0)]).unwrap();
        let p1 = Point::from_chart(n, CoordSet::EMPTY, &[q(1)]).unwrap();
        let p1b = p1.clone();
        let x = TropicalComplex::new(
            n,
            vec![
                FaceSpec::new(CoordSet::EMPTY, vec![p0.clone(), p1.clone()], vec![]),
                FaceSpec::new(CoordSet::EMPTY, vec![p1.clone()], vec![CoordSet::singleton(0)]),
                FaceSpec::new(CoordSet::EMPTY, vec![p0.clone()], vec![CoordSet::singleton(1)]),
                FaceSpec::new(CoordSet::EMPTY, vec![p0], vec![]),
                FaceSpec::new(CoordSet::EMPTY, vec![p1b], vec![]),
                FaceSpec::new(
                    CoordSet::singleton(0),
                    vec![Point::origin(n, CoordSet::singleton(0))],
                    vec![],
                ),
                FaceSpec::new(
                    CoordSet::singleton(1),
                    vec![Point::origin(n, CoordSet::singleton(1))],
                    vec![],
                ),
            ],
        )
        .unwrap();
        assert_eq!(hodge_table(&x).unwrap(), diag(1));
        let c = chain_complex(&x, 1).unwrap();
        assert_eq!((c.chain_dim(1), c.chain_dim(0)), (3, 2));
        assert!(c.is_complex());
    }

    #[test]
    fn plane_is_contractible_with_os_top() {
        let x = fan_linear_space(&[q(0), q(0), q(0)], 2).unwrap();
        for p in 0..=2 {
            assert!(chain_complex(&x, p).unwrap().is_complex());
        }
        let t = hodge_table(&x).unwrap();
        assert_eq!(t, diag(2));
        assert!(euler_check(&x).unwrap());
    }

    #[test]
    fn polynomial_strings() {
        assert_eq!(EPolynomial::new(vec![0, 0]).to_string(), "0");
        assert_eq!(EPolynomial::new(vec![-1, 2, -3]).to_string(), "-1 + 2*u*v - 3*u^2*v^2");
        assert_eq!(EPolynomial::new(vec![0, -1, 1]).chi_y(), "-y + y^2");
    }

    #[test]
    fn report_json_keys() {
        let r = HomologyReport::from(&diag(1));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["E"], "1 - u*v");
        assert_eq!(v["chi"], serde_json::json!([1, -1]));
        assert_eq!(v["n"], 1);
    }

    #[test]
    fn text_table() {
        let s = diag(1).to_text();
        assert_eq!(s.lines().count(), 3);
        assert!(s.lines().nth(1).unwrap().trim_start().starts_with('0'));
    }
}
