use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::{json, Value};

use super::polyhedron::{contains_point, facets, Span};
use super::{projection_matrix, ray_vector, CoordSet, Point};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, sign, QMatrix, Rational};

/// Input description of one face: `conv(vertices) + cone(d_S : S ∈ rays)`
/// inside the stratum with sedentarity `sed`. A ray `S` is the divisorial
/// vector `d_S = Σ_{j∈S} d_j`; singletons are the plain divisorial directions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceSpec {
    pub sed: CoordSet,
    pub vertices: Vec<Point>,
    pub rays: Vec<CoordSet>,
    pub weight: u64,
}

impl FaceSpec {
    pub fn new(sed: CoordSet, vertices: Vec<Point>, rays: Vec<CoordSet>) -> Self {
        FaceSpec {
            sed,
            vertices,
            rays,
            weight: 1,
        }
    }

    pub fn with_weight(mut self, w: u64) -> Self {
        self.weight = w;
        self
    }
}

/// A validated face. Its orientation is the ordered basis `span().basis()`,
/// expressed in the canonical chart of its stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    sed: CoordSet,
    vertices: Vec<usize>,
    rays: Vec<CoordSet>,
    weight: u64,
    dim: usize,
    span: Span,
}

impl Face {
    pub fn sedentarity(&self) -> CoordSet {
        self.sed
    }

    pub fn is_mobile(&self) -> bool {
        self.sed.is_empty()
    }

    /// Point ids, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Divisorial index sets of the rays, ascending.
    pub fn rays(&self) -> &[CoordSet] {
        &self.rays
    }

    /// All divisorial indices used by the rays.
    pub fn divisorial(&self) -> CoordSet {
        self.rays.iter().fold(CoordSet::EMPTY, |a, r| a.union(*r))
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn span(&self) -> &Span {
        &self.span
    }

    /// Smallest chart index containing the whole face.
    pub fn canonical_chart(&self, n: usize) -> usize {
        CoordSet::full(n + 1)
            .minus(self.sed.union(self.divisorial()))
            .first()
            .expect("validated faces fit in a chart")
    }
}

type FaceKey = (CoordSet, Vec<usize>, Vec<CoordSet>);

/// Validated tropical polyhedral complex in TP^N with its incidence signs.
#[derive(Clone, Debug)]
pub struct TropicalComplex {
    n: usize,
    points: Vec<Point>,
    faces: Vec<Face>,
    boundary: Vec<Vec<(usize, i8)>>,
    coboundary: Vec<Vec<usize>>,
}

impl PartialEq for TropicalComplex {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.points == o.points && self.faces == o.faces
    }
}

impl Eq for TropicalComplex {}

impl TropicalComplex {
    /// Canonicalizes, validates and computes incidences. Identical duplicate
    /// faces are merged.
    pub fn new(n: usize, specs: Vec<FaceSpec>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidComplex(m));
        if n == 0 || n >= 32 {
            return bad(format!("ambient dimension {n} out of range"));
        }
        for (i, s) in specs.iter().enumerate() {
            check_spec(n, i, s)?;
        }
        let pts: BTreeSet<Point> = specs.iter().flat_map(|s| s.vertices.iter().cloned()).collect();
        let points: Vec<Point> = pts.into_iter().collect();
        let pid: HashMap<&Point, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();

        let mut faces: Vec<Face> = Vec::with_capacity(specs.len());
        for s in &specs {
            let mut vertices: Vec<usize> = s.vertices.iter().map(|p| pid[p]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            let mut rays = s.rays.clone();
            rays.sort_unstable();
            rays.dedup();
            let span = face_span(n, s.sed, &vertices, &rays, &points);
            faces.push(Face {
                sed: s.sed,
                dim: span.dim(),
                vertices,
                rays,
                weight: s.weight,
                span,
            });
        }
        faces.sort_by(|a, b| (a.dim, a.sed, &a.vertices, &a.rays).cmp(&(b.dim, b.sed, &b.vertices, &b.rays)));
        let mut merged: Vec<Face> = Vec::with_capacity(faces.len());
        for f in faces {
            if let Some(last) = merged.last() {
                if (last.sed, &last.vertices, &last.rays) == (f.sed, &f.vertices, &f.rays) {
                    if last.weight != f.weight {
                        return bad(format!(
                            "face listed twice with weights {} and {}",
                            last.weight, f.weight
                        ));
                    }
                    continue;
                }
            }
            merged.push(f);
        }
        let mut x = TropicalComplex {
            n,
            points,
            faces: merged,
            boundary: vec![],
            coboundary: vec![],
        };
        x.check_extreme()?;
        x.compute_incidences()?;
        x.check_boundary_squared()?;
        Ok(x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the complex (largest face dimension).
    pub fn dim(&self) -> usize {
        self.faces.iter().map(|f| f.dim).max().unwrap_or(0)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, id: usize) -> &Point {
        &self.points[id]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Codimension-one faces of `id` with incidence signs.
    pub fn boundary(&self, id: usize) -> &[(usize, i8)] {
        &self.boundary[id]
    }

    /// Faces having `id` as a codimension-one face.
    pub fn coboundary(&self, id: usize) -> &[usize] {
        &self.coboundary[id]
    }

    /// Incidence sign `[Δ : Δ']`, or 0 when `Δ'` is not a facet of `Δ`.
    pub fn incidence(&self, face: usize, sub: usize) -> i8 {
        self.boundary[face]
            .iter()
            .find(|(s, _)| *s == sub)
            .map_or(0, |(_, e)| *e)
    }

    pub fn faces_of_dim(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |&i| self.faces[i].dim == q)
    }

    /// Chart coordinates of the vertices of a face, in its stratum chart.
    pub fn vertex_coords(&self, id: usize) -> Vec<Vec<Rational>> {
        self.faces[id]
            .vertices
            .iter()
            .map(|&v| self.points[v].chart_coords())
            .collect()
    }

    /// Ray vectors of a face in its stratum chart.
    pub fn ray_vectors(&self, id: usize) -> Vec<Vec<Rational>> {
        let f = &self.faces[id];
        f.rays.iter().map(|&s| ray_vector(self.n, f.sed, s)).collect()
    }

    /// A point in the relative interior of a face, in its stratum chart.
    pub fn interior_point(&self, id: usize) -> Vec<Rational> {
        let vs = self.vertex_coords(id);
        let k = Rational::from_integer(vs.len().into());
        let mut x: Vec<Rational> = (0..vs[0].len())
            .map(|c| vs.iter().map(|v| v[c].clone()).sum::<Rational>() / &k)
            .collect();
        for r in self.ray_vectors(id) {
            for (a, b) in x.iter_mut().zip(r) {
                *a += b;
            }
        }
        x
    }

    /// Faces with the same sedentarity containing `id`, including itself.
    pub fn star(&self, id: usize) -> Vec<usize> {
        let sed = self.faces[id].sed;
        let mut seen = BTreeSet::from([id]);
        let mut stack = vec![id];
        while let Some(f) = stack.pop() {
            for &g in &self.coboundary[f] {
                if self.faces[g].sed == sed && seen.insert(g) {
                    stack.push(g);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn key_index(&self) -> HashMap<FaceKey, usize> {
        self.faces
            .iter()
            .enumerate()
            .map(|(i, f)| ((f.sed, f.vertices.clone(), f.rays.clone()), i))
            .collect()
    }

    fn check_extreme(&self) -> Result<()> {
        for (id, f) in self.faces.iter().enumerate() {
            let vs = self.vertex_coords(id);
            let rs = self.ray_vectors(id);
            for i in 0..vs.len() {
                let others: Vec<Vec<Rational>> = vs
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, v)| v.clone())
                    .collect();
                if !others.is_empty() && contains_point(&others, &rs, &vs[i]) {
                    return Err(Error::InvalidComplex(format!(
                        "vertex {:?} of face {id} is not extreme",
                        self.points[f.vertices[i]]
                    )));
                }
            }
            let zero = vec![Rational::from_integer(0.into()); vs[0].len()];
            for i in 0..rs.len() {
                let others: Vec<Vec<Rational>> = rs
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, v)| v.clone())
                    .collect();
                if contains_point(std::slice::from_ref(&zero), &others, &rs[i]) {
                    return Err(Error::InvalidComplex(format!(
                        "ray {:?} of face {id} is redundant",
                        f.rays[i]
                    )));
                }
            }
        }
        Ok(())
    }

    #[allow(clippy::needless_range_loop)]
    fn compute_incidences(&mut self) -> Result<()> {
        let index = self.key_index();
        let nf = self.faces.len();
        let mut boundary = vec![Vec::new(); nf];
        for id in 0..nf {
            let f = &self.faces[id];
            if f.dim == 0 {
                continue;
            }
            let vs = self.vertex_coords(id);
            let rs = self.ray_vectors(id);
            let loc = |v: &[Rational]| f.span.coords(v).expect("generator in span");
            let base = &vs[0];
            let lv: Vec<Vec<Rational>> = vs
                .iter()
                .map(|v| loc(&v.iter().zip(base).map(|(a, b)| a - b).collect::<Vec<_>>()))
                .collect();
            let lr: Vec<Vec<Rational>> = rs.iter().map(|r| loc(r)).collect();
            for fa in facets(&lv, &lr, f.dim) {
                let key = (
                    f.sed,
                    fa.vertices.iter().map(|&i| f.vertices[i]).collect::<Vec<_>>(),
                    fa.rays.iter().map(|&i| f.rays[i]).collect::<Vec<_>>(),
                );
                let Some(&sub) = index.get(&key) else {
                    return Err(Error::InvalidComplex(format!(
                        "face {id} is missing its facet with vertices {:?} and rays {:?}",
                        key.1.iter().map(|&v| &self.points[v]).collect::<Vec<_>>(),
                        key.2
                    )));
                };
                // outward: away from a generator not on the facet
                let outward: Vec<Rational> = match (0..lv.len()).find(|i| !fa.vertices.contains(i)) {
                    Some(i) => {
                        let w = &vs[i];
                        let v0 = &vs[fa.vertices[0]];
                        v0.iter().zip(w).map(|(a, b)| a - b).collect()
                    }
                    None => {
                        let i = (0..lr.len()).find(|i| !fa.rays.contains(i)).expect("facet is proper");
                        rs[i].iter().map(|x| -x).collect()
                    }
                };
                let sub_basis = self.faces[sub].span.basis().to_vec();
                let e = orientation_sign(f, &outward, &sub_basis, sub)?;
                boundary[id].push((sub, e));
            }
            for &s in &f.rays {
                if f.rays.iter().any(|&r| r != s && r.is_subset(s)) {
                    continue;
                }
                let sed2 = f.sed.union(s);
                let mut rays2: Vec<CoordSet> = f.rays.iter().filter(|&&r| r != s).map(|&r| r.minus(s)).collect();
                rays2.sort_unstable();
                let proj: BTreeSet<Point> = f.vertices.iter().map(|&v| self.points[v].project(s)).collect();
                let proj: Vec<Point> = proj.into_iter().collect();
                let pv: Vec<Vec<Rational>> = proj.iter().map(Point::chart_coords).collect();
                let pr: Vec<Vec<Rational>> = rays2.iter().map(|&r| ray_vector(self.n, sed2, r)).collect();
                let mut verts = Vec::new();
                for i in 0..proj.len() {
                    let others: Vec<Vec<Rational>> = pv
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, v)| v.clone())
                        .collect();
                    if others.is_empty() || !contains_point(&others, &pr, &pv[i]) {
                        match self.points.binary_search(&proj[i]) {
                            Ok(p) => verts.push(p),
                            Err(_) => {
                                return Err(Error::InvalidComplex(format!(
                                    "face {id} is missing its sedentary vertex {:?}",
                                    proj[i]
                                )))
                            }
                        }
                    }
                }
                verts.sort_unstable();
                let key = (sed2, verts, rays2);
                let Some(&sub) = index.get(&key) else {
                    return Err(Error::InvalidComplex(format!(
                        "face {id} is missing its sedentary face at {:?} with rays {:?}",
                        sed2, key.2
                    )));
                };
                if self.faces[sub].dim + 1 != f.dim {
                    return Err(Error::InvalidComplex(format!(
                        "face {id} drops {} dimensions toward sedentarity {:?}",
                        f.dim - self.faces[sub].dim,
                        sed2
                    )));
                }
                let outward = ray_vector(self.n, f.sed, s);
                // lift the target basis through the projection
                let p = projection_matrix(self.n, f.sed, sed2);
                let img: Vec<Vec<Rational>> = f.span.basis().iter().map(|b| p.mul_vec(b)).collect();
                let m = QMatrix::from_columns(&img, p.rows());
                let mut lifts = Vec::new();
                for b in self.faces[sub].span.basis() {
                    let c = m.solve(b).ok_or_else(|| {
                        Error::InvalidComplex(format!("face {sub} is not the projection of face {id}"))
                    })?;
                    lifts.push(f.span.combine(&c));
                }
                let e = orientation_sign(f, &outward, &lifts, sub)?;
                boundary[id].push((sub, e));
            }
            boundary[id].sort_unstable();
        }
        let mut coboundary = vec![Vec::new(); nf];
        for (id, b) in boundary.iter().enumerate() {
            for &(s, _) in b {
                coboundary[s].push(id);
            }
        }
        self.boundary = boundary;
        self.coboundary = coboundary;
        Ok(())
    }

    /// Composing incidences over every codimension-2 interval must cancel.
    fn check_boundary_squared(&self) -> Result<()> {
        for id in 0..self.faces.len() {
            let mut acc: BTreeMap<usize, i32> = BTreeMap::new();
            for &(s, e1) in &self.boundary[id] {
                for &(t, e2) in &self.boundary[s] {
                    *acc.entry(t).or_default() += (e1 * e2) as i32;
                }
            }
            if let Some((t, _)) = acc.iter().find(|(_, v)| **v != 0) {
                return Err(Error::InvalidComplex(format!(
                    "incidence signs between faces {id} and {t} do not cancel"
                )));
            }
        }
        Ok(())
    }

    /// Canonical JSON form (sorted keys, rationals as strings).
    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                let coords: Vec<String> = p
                    .homogeneous()
                    .iter()
                    .enumerate()
                    .map(|(i, x)| {
                        if p.sedentarity().contains(i) {
                            "-inf".to_string()
                        } else {
                            format_rational(x)
                        }
                    })
                    .collect();
                json!({"coords": coords, "sedentarity": p.sedentarity().to_vec()})
            })
            .collect();
        let faces: Vec<Value> = self
            .faces
            .iter()
            .map(|f| {
                let div: Vec<Value> = f
                    .rays
                    .iter()
                    .map(|r| {
                        if r.len() == 1 {
                            json!(r.first().expect("nonempty ray"))
                        } else {
                            json!(r.to_vec())
                        }
                    })
                    .collect();
                json!({
                    "vertices": f.vertices,
                    "divisorial": div,
                    "sedentarity": f.sed.to_vec(),
                    "weight": f.weight,
                })
            })
            .collect();
        json!({"N": self.n, "vertices": vertices, "faces": faces})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let perr = |m: &str| Error::Parse(format!("complex JSON: {m}"));
        let n = v
            .get("N")
            .and_then(Value::as_u64)
            .ok_or_else(|| perr("missing integer \"N\""))? as usize;
        if n == 0 || n >= 32 {
            return Err(perr("\"N\" must be between 1 and 31"));
        }
        let verts = v
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("missing \"vertices\""))?;
        let mut points = Vec::with_capacity(verts.len());
        for pv in verts {
            let sed = parse_indices(pv.get("sedentarity"), n)?;
            let coords = pv
                .get("coords")
                .and_then(Value::as_array)
                .ok_or_else(|| perr("vertex without \"coords\""))?;
            let mut vals = Vec::with_capacity(coords.len());
            for c in coords {
                let s = match c {
                    Value::String(s) => s.clone(),
                    Value::Number(x) if x.is_i64() => x.to_string(),
                    _ => return Err(perr("coordinates must be rational strings")),
                };
                vals.push(if s.trim() == "-inf" {
                    None
                } else {
                    Some(parse_rational(&s)?)
                });
            }
            let p = if vals.len() == n + 1 {
                for (i, x) in vals.iter().enumerate() {
                    if x.is_none() != sed.contains(i) {
                        return Err(perr("\"-inf\" entries must match the sedentarity"));
                    }
                }
                Point::new(sed, vals.into_iter().map(|x| x.unwrap_or_default()).collect())?
            } else {
                let chart: Option<Vec<Rational>> = vals.into_iter().collect();
                let chart = chart.ok_or_else(|| perr("\"-inf\" only allowed in homogeneous coordinates"))?;
                Point::from_chart(n, sed, &chart)?
            };
            points.push(p);
        }
        let fs = v
            .get("faces")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("missing \"faces\""))?;
        let mut specs = Vec::with_capacity(fs.len());
        for fv in fs {
            let ids = fv
                .get("vertices")
                .and_then(Value::as_array)
                .ok_or_else(|| perr("face without \"vertices\""))?;
            let mut vs = Vec::with_capacity(ids.len());
            for i in ids {
                let i = i.as_u64().ok_or_else(|| perr("vertex ids must be integers"))? as usize;
                vs.push(points.get(i).cloned().ok_or_else(|| perr("vertex id out of range"))?);
            }
            let mut rays = Vec::new();
            if let Some(d) = fv.get("divisorial") {
                let d = d.as_array().ok_or_else(|| perr("\"divisorial\" must be an array"))?;
                for r in d {
                    rays.push(match r {
                        Value::Array(_) => parse_indices(Some(r), n)?,
                        _ => {
                            let j = r.as_u64().ok_or_else(|| perr("divisorial entries must be integers"))? as usize;
                            if j > n {
                                return Err(perr("divisorial index out of range"));
                            }
                            CoordSet::singleton(j)
                        }
                    });
                }
            }
            let sed = parse_indices(fv.get("sedentarity"), n)?;
            let weight = match fv.get("weight") {
                None => 1,
                Some(w) => w.as_u64().ok_or_else(|| perr("weight must be a positive integer"))?,
            };
            specs.push(FaceSpec {
                sed,
                vertices: vs,
                rays,
                weight,
            });
        }
        TropicalComplex::new(n, specs)
    }
}

fn parse_indices(v: Option<&Value>, n: usize) -> Result<CoordSet> {
    let Some(v) = v else { return Ok(CoordSet::EMPTY) };
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("index lists must be arrays".into()))?;
    let mut s = CoordSet::EMPTY;
    for x in arr {
        let i = x
            .as_u64()
            .filter(|&i| i as usize <= n)
            .ok_or_else(|| Error::Parse(format!("index {x} out of range 0..={n}")))?;
        s.insert(i as usize);
    }
    Ok(s)
}

fn check_spec(n: usize, i: usize, s: &FaceSpec) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidComplex(format!("face {i}: {m}")));
    if s.vertices.is_empty() {
        return bad("needs at least one vertex".into());
    }
    if s.weight == 0 {
        return bad("weight must be positive".into());
    }
    for p in &s.vertices {
        if p.n() != n {
            return bad(format!("vertex {p:?} is not in TP^{n}"));
        }
        if p.sedentarity() != s.sed {
            return bad(format!("vertex {p:?} has sedentarity other than {:?}", s.sed));
        }
    }
    let mut all = s.sed;
    for (a, &r) in s.rays.iter().enumerate() {
        if r.is_empty() || !r.is_disjoint(s.sed) || !r.is_subset(CoordSet::full(n + 1)) {
            return bad(format!("ray {r:?} is empty, out of range or meets the sedentarity"));
        }
        for &q in &s.rays[a + 1..] {
            if !(r.is_subset(q) || q.is_subset(r) || r.is_disjoint(q)) {
                return bad(format!("rays {r:?} and {q:?} overlap without nesting"));
            }
        }
        all = all.union(r);
    }
    if all == CoordSet::full(n + 1) {
        return bad("lies in no affine chart".into());
    }
    Ok(())
}

fn face_span(n: usize, sed: CoordSet, vertices: &[usize], rays: &[CoordSet], points: &[Point]) -> Span {
    let m = n - sed.len();
    let base = points[vertices[0]].chart_coords();
    let mut gens: Vec<Vec<Rational>> = vertices[1..]
        .iter()
        .map(|&v| points[v].chart_coords().iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect();
    gens.extend(rays.iter().map(|&r| ray_vector(n, sed, r)));
    Span::new(&gens, m)
}

fn orientation_sign(f: &Face, outward: &[Rational], sub_basis: &[Vec<Rational>], sub: usize) -> Result<i8> {
    let mut rows = vec![f.span.coords(outward).expect("outward vector lies in the face")];
    for b in sub_basis {
        rows.push(
            f.span.coords(b).ok_or_else(|| {
                Error::InvalidComplex(format!("face {sub} is not contained in the span of its coface"))
            })?,
        );
    }
    let d = QMatrix::from_rows(&rows, f.dim).det();
    match sign(&d) {
        0 => Err(Error::InvalidComplex(format!("degenerate orientation at face {sub}"))),
        s => Ok(s),
    }
}
