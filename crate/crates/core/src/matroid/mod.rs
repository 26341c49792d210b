//! Matroids given by a rank oracle, their lattices of flats, Bergman fans and
//! Orlik–Solomon Betti numbers.
//!
//! Subsets of the ground set are bitmasks, so ground sets have at most 32
//! elements (16 for rank tables).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::clear_denominators;
use crate::tropgeo::{ray_vector, Cone, CoordSet, FaceSpec, Fan, Point, TropicalComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Oracle {
    Bases(Vec<u32>),
    Table(Vec<u32>),
}

/// A matroid on `{0,…,ground-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    ground: usize,
    oracle: Oracle,
}

fn popcount(x: u32) -> usize {
    x.count_ones() as usize
}

impl Matroid {
    /// From a list of bases. Checks equal cardinality and the exchange axiom.
    pub fn from_bases(ground: usize, bases: &[Vec<usize>]) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidMatroid(m));
        if ground > 32 {
            return bad(format!("ground set of size {ground} exceeds 32"));
        }
        if bases.is_empty() {
            return bad("no bases given".into());
        }
        let mut bs = BTreeSet::new();
        for b in bases {
            if b.iter().any(|&e| e >= ground) {
                return bad(format!("basis {b:?} leaves the ground set"));
            }
            let m = CoordSet::from_indices(b).0;
            if popcount(m) != b.len() {
                return bad(format!("basis {b:?} repeats an element"));
            }
            bs.insert(m);
        }
        let bs: Vec<u32> = bs.into_iter().collect();
        let r = popcount(bs[0]);
        if bs.iter().any(|&b| popcount(b) != r) {
            return bad("bases have different sizes".into());
        }
        let set: BTreeSet<u32> = bs.iter().copied().collect();
        for &a in &bs {
            for &b in &bs {
                for x in CoordSet(a & !b).iter() {
                    let ok = CoordSet(b & !a)
                        .iter()
                        .any(|y| set.contains(&((a & !(1 << x)) | (1 << y))));
                    if !ok {
                        return bad("basis exchange axiom fails".into());
                    }
                }
            }
        }
        Ok(Matroid {
            ground,
            oracle: Oracle::Bases(bs),
        })
    }

    /// From ranks of all subsets (indexed by bitmask). Checks the rank axioms.
    pub fn from_rank_table(ground: usize, table: Vec<u32>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidMatroid(m));
        if ground > 16 {
            return bad(format!("rank tables are limited to 16 elements, got {ground}"));
        }
        if table.len() != 1 << ground {
            return bad(format!("rank table needs {} entries, got {}", 1 << ground, table.len()));
        }
        if table[0] != 0 {
            return bad("the empty set must have rank 0".into());
        }
        for a in 0..table.len() as u32 {
            if table[a as usize] as usize > popcount(a) {
                return bad(format!("rank of {:?} exceeds its size", CoordSet(a)));
            }
            for e in 0..ground {
                let b = a | (1 << e);
                let (ra, rb) = (table[a as usize], table[b as usize]);
                if rb < ra || rb > ra + 1 {
                    return bad(format!("rank is not unit-increasing at {:?} + {e}", CoordSet(a)));
                }
            }
        }
        // local submodularity r(A+x)+r(A+y) >= r(A+x+y)+r(A) implies the global law
        for a in 0..table.len() as u32 {
            for x in 0..ground {
                for y in x + 1..ground {
                    if a >> x & 1 == 1 || a >> y & 1 == 1 {
                        continue;
                    }
                    let r = |s: u32| table[s as usize];
                    if r(a | 1 << x) + r(a | 1 << y) < r(a | 1 << x | 1 << y) + r(a) {
                        return bad(format!("rank is not submodular at {:?}", CoordSet(a)));
                    }
                }
            }
        }
        Ok(Matroid {
            ground,
            oracle: Oracle::Table(table),
        })
    }

    /// Uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidMatroid(format!("U_{{{r},{n}}} needs r <= n")));
        }
        let bases: Vec<Vec<usize>> = (0..1u32 << n)
            .filter(|&m| popcount(m) == r)
            .map(|m| CoordSet(m).to_vec())
            .collect();
        Matroid::from_bases(n, &bases)
    }

    /// Free (Boolean) matroid: every subset is independent.
    pub fn free(n: usize) -> Result<Self> {
        Matroid::uniform(n, n)
    }

    /// Cycle matroid of a graph on `vertices` given by its edge list.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let m = edges.len();
        if m > 16 {
            return Err(Error::InvalidMatroid("graphic matroids are limited to 16 edges".into()));
        }
        let table = (0..1u32 << m)
            .map(|s| {
                // rank = vertices - components of the spanning subgraph
                let mut parent: Vec<usize> = (0..vertices).collect();
                fn find(p: &mut [usize], x: usize) -> usize {
                    let mut x = x;
                    while p[x] != x {
                        p[x] = p[p[x]];
                        x = p[x];
                    }
                    x
                }
                let mut r = 0;
                for e in CoordSet(s).iter() {
                    let (a, b) = (find(&mut parent, edges[e].0), find(&mut parent, edges[e].1));
                    if a != b {
                        parent[a] = b;
                        r += 1;
                    }
                }
                r
            })
            .collect();
        Matroid::from_rank_table(m, table)
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn rank_of(&self, set: u32) -> usize {
        match &self.oracle {
            Oracle::Bases(bs) => bs.iter().map(|&b| popcount(b & set)).max().unwrap_or(0),
            Oracle::Table(t) => t[set as usize] as usize,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank_of(CoordSet::full(self.ground).0)
    }

    /// `A ∪ {e : r(A+e) = r(A)}`.
    pub fn closure(&self, set: u32) -> u32 {
        let r = self.rank_of(set);
        (0..self.ground).fold(set, |acc, e| {
            if acc >> e & 1 == 0 && self.rank_of(set | 1 << e) == r {
                acc | 1 << e
            } else {
                acc
            }
        })
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.ground).all(|e| self.rank_of(1 << e) == 1)
    }

    fn require_loopless(&self) -> Result<()> {
        match (0..self.ground).find(|&e| self.rank_of(1 << e) == 0) {
            Some(e) => Err(Error::Loop(e)),
            None => Ok(()),
        }
    }

    /// The lattice of flats, grouped by rank, with Möbius values `μ(0̂, F)`.
    pub fn flats(&self) -> FlatLattice {
        let bottom = self.closure(0);
        let mut levels: Vec<Vec<u32>> = vec![vec![bottom]];
        for _ in 0..self.rank() {
            let mut next = BTreeSet::new();
            for &f in levels.last().expect("nonempty") {
                for e in 0..self.ground {
                    if f >> e & 1 == 0 {
                        next.insert(self.closure(f | 1 << e));
                    }
                }
            }
            levels.push(next.into_iter().collect());
        }
        let mut flats = Vec::new();
        let mut mobius: BTreeMap<u32, i64> = BTreeMap::new();
        for (r, level) in levels.iter().enumerate() {
            for &f in level {
                let mu = if r == 0 {
                    1
                } else {
                    -mobius
                        .iter()
                        .filter(|(&g, _)| g != f && g & !f == 0)
                        .map(|(_, m)| m)
                        .sum::<i64>()
                };
                mobius.insert(f, mu);
                flats.push(Flat {
                    set: f,
                    rank: r,
                    mobius: mu,
                });
            }
        }
        FlatLattice {
            ground: self.ground,
            flats,
        }
    }

    /// Canonical JSON (`{"ground", "bases"}` or `{"ground", "rank"}`).
    pub fn to_json(&self) -> Value {
        match &self.oracle {
            Oracle::Bases(bs) => {
                let b: Vec<Vec<usize>> = bs.iter().map(|&m| CoordSet(m).to_vec()).collect();
                json!({"ground": self.ground, "bases": b})
            }
            Oracle::Table(t) => {
                let m: serde_json::Map<String, Value> =
                    t.iter().enumerate().map(|(i, r)| (i.to_string(), json!(r))).collect();
                json!({"ground": self.ground, "rank": m})
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let perr = |m: &str| Error::Parse(format!("matroid JSON: {m}"));
        let ground = v
            .get("ground")
            .and_then(Value::as_u64)
            .ok_or_else(|| perr("missing integer \"ground\""))? as usize;
        if let Some(bases) = v.get("bases") {
            let arr = bases.as_array().ok_or_else(|| perr("\"bases\" must be an array"))?;
            let mut bs = Vec::with_capacity(arr.len());
            for b in arr {
                let b = b.as_array().ok_or_else(|| perr("each basis must be an array"))?;
                let mut s = Vec::with_capacity(b.len());
                for e in b {
                    s.push(e.as_u64().ok_or_else(|| perr("basis elements must be integers"))? as usize);
                }
                bs.push(s);
            }
            return Matroid::from_bases(ground, &bs);
        }
        if let Some(rank) = v.get("rank") {
            let obj = rank
                .as_object()
                .ok_or_else(|| perr("\"rank\" must map subset bitmasks to ranks"))?;
            if ground > 16 {
                return Err(Error::InvalidMatroid("rank tables are limited to 16 elements".into()));
            }
            let mut table = vec![None; 1 << ground];
            for (k, r) in obj {
                let i: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| perr("rank keys must be integer bitmasks"))?;
                let r = r.as_u64().ok_or_else(|| perr("ranks must be integers"))? as u32;
                *table.get_mut(i).ok_or_else(|| perr("bitmask out of range"))? = Some(r);
            }
            let table: Option<Vec<u32>> = table.into_iter().collect();
            return Matroid::from_rank_table(ground, table.ok_or_else(|| perr("rank table is incomplete"))?);
        }
        Err(perr("needs \"bases\" or \"rank\""))
    }
}

/// A flat with its rank and Möbius value `μ(0̂, F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flat {
    pub set: u32,
    pub rank: usize,
    pub mobius: i64,
}

/// Flats ordered by rank, then by bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLattice {
    ground: usize,
    flats: Vec<Flat>,
}

impl FlatLattice {
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// Flats other than the bottom and the full ground set.
    pub fn proper(&self) -> Vec<Flat> {
        let top = CoordSet::full(self.ground).0;
        let bottom = self.flats[0].set;
        self.flats
            .iter()
            .filter(|f| f.set != top && f.set != bottom)
            .copied()
            .collect()
    }

    /// `π(t) = Σ_F |μ(F)| t^{r(F)}`, lowest degree first.
    pub fn poincare(&self) -> Vec<i64> {
        let r = self.flats.iter().map(|f| f.rank).max().unwrap_or(0);
        let mut p = vec![0i64; r + 1];
        for f in &self.flats {
            p[f.rank] += f.mobius.abs();
        }
        p
    }
}

/// Chains `F_1 ⊂ … ⊂ F_k` of proper nonempty flats (including the empty chain).
fn flags(proper: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<u32>> = vec![vec![]];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for ch in &frontier {
            for &f in proper {
                let extends = ch.last().is_none_or(|&l| l != f && l & !f == 0);
                if extends {
                    let mut c = ch.clone();
                    c.push(f);
                    next.push(c);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Bergman fan in `Z^{|M|-1}`. Element `j` maps to the divisorial vector
/// `d_j` of chart 0 of TP^{|M|-1}: `e_0 = (1,…,1)` and `e_j = -(unit j)`, so
/// `Σ e_j = 0` and `e_F = d_F`.
pub fn bergman_fan(m: &Matroid) -> Result<Fan> {
    m.require_loopless()?;
    let n = m.ground() - 1;
    let lat = m.flats();
    let proper: Vec<u32> = lat.proper().iter().map(|f| f.set).collect();
    let cones = flags(&proper)
        .into_iter()
        .map(|ch| {
            Cone::new(
                ch.iter()
                    .map(|&f| clear_denominators(&ray_vector(n, CoordSet::EMPTY, CoordSet(f))))
                    .collect::<Vec<Vec<BigInt>>>(),
            )
        })
        .collect();
    Ok(Fan::new(n, cones))
}

/// Closure of the Bergman fan in TP^{|M|-1}, with apex at the origin. The
/// face of a flag `G ⊂ F_1 ⊂ … ⊂ F_k` has sedentarity `G` and rays
/// `F_i ∖ G`; its stratum carries the Bergman fan of the contraction `M/G`.
pub fn bergman_complex(m: &Matroid) -> Result<TropicalComplex> {
    m.require_loopless()?;
    if m.ground() < 2 {
        return Err(Error::InvalidMatroid(
            "needs at least two elements to embed in TP^N".into(),
        ));
    }
    let n = m.ground() - 1;
    let lat = m.flats();
    let proper: Vec<u32> = lat.proper().iter().map(|f| f.set).collect();
    let mut specs = Vec::new();
    for ch in flags(&proper) {
        for (i, &g) in std::iter::once(&0u32).chain(ch.iter()).enumerate() {
            let sed = CoordSet(g);
            let rays = ch[i..].iter().filter(|&&f| f != g).map(|&f| CoordSet(f & !g)).collect();
            specs.push(FaceSpec::new(sed, vec![Point::origin(n, sed)], rays));
        }
    }
    TropicalComplex::new(n, specs)
}

/// Betti numbers of the projective Orlik–Solomon algebra: the coefficients
/// of `π(t) / (1 + t)`.
pub fn os_betti(m: &Matroid) -> Result<Vec<i64>> {
    m.require_loopless()?;
    let p = m.flats().poincare();
    // synthetic division by (1 + t), highest degree first
    let deg = p.len() - 1;
    if deg == 0 {
        return Err(Error::PoincareNotDivisible(p));
    }
    let mut q = vec![0i64; deg];
    let mut carry = 0i64;
    for k in (1..=deg).rev() {
        let c = p[k] - carry;
        q[k - 1] = c;
        carry = c;
    }
    if p[0] != carry {
        return Err(Error::PoincareNotDivisible(p));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Matroid {
        Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn flats_of_small_matroids() {
        let u23 = Matroid::uniform(2, 3).unwrap().flats();
        let ranks: Vec<usize> = u23.flats().iter().map(|f| f.rank).collect();
        assert_eq!(ranks, vec![0, 1, 1, 1, 2]);
        let u34 = Matroid::uniform(3, 4).unwrap().flats();
        let count = |r| u34.flats().iter().filter(|f| f.rank == r).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (1, 4, 6, 1));
        assert_eq!(Matroid::free(2).unwrap().flats().len(), 4);
    }

    #[test]
    fn mobius_sums_vanish() {
        for m in [Matroid::uniform(3, 5).unwrap(), k4()] {
            let lat = m.flats();
            for f in lat.flats().iter().skip(1) {
                let s: i64 = lat
                    .flats()
                    .iter()
                    .filter(|g| g.set & !f.set == 0)
                    .map(|g| g.mobius)
                    .sum();
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn loops() {
        let m = Matroid::from_bases(3, &[vec![0, 1]]).unwrap();
        assert!(!m.is_loopless());
        assert!(matches!(os_betti(&m), Err(Error::Loop(2))));
        assert!(Matroid::uniform(2, 3).unwrap().is_loopless());
        assert!(Matroid::free(2).unwrap().is_loopless());
    }

    #[test]
    fn os_betti_examples() {
        assert_eq!(os_betti(&Matroid::uniform(2, 3).unwrap()).unwrap(), vec![1, 2]);
        assert_eq!(os_betti(&Matroid::uniform(3, 4).unwrap()).unwrap(), vec![1, 3, 3]);
        assert_eq!(os_betti(&Matroid::free(2).unwrap()).unwrap(), vec![1, 1]);
        assert_eq!(os_betti(&k4()).unwrap(), vec![1, 5, 6]);
    }

    #[test]
    fn bergman_fan_counts() {
        let f = bergman_fan(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert_eq!((f.rank(), f.rays().len(), f.dim()), (2, 3, 1));
        let f = bergman_fan(&Matroid::uniform(3, 4).unwrap()).unwrap();
        assert_eq!((f.rays().len(), f.dim()), (10, 2));
        let two_dim = f.cones().iter().filter(|c| c.dim(3) == 2).count();
        assert_eq!(two_dim, 12);
    }

    #[test]
    fn invalid_inputs() {
        assert!(Matroid::from_bases(3, &[vec![0, 1], vec![2]]).is_err());
        assert!(Matroid::from_rank_table(1, vec![0, 2]).is_err());
        // exchange fails: {0,1},{2,3}
        assert!(Matroid::from_bases(4, &[vec![0, 1], vec![2, 3]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = Matroid::uniform(2, 3).unwrap();
        assert_eq!(Matroid::from_json(&m.to_json()).unwrap(), m);
        let g = k4();
        assert_eq!(Matroid::from_json(&g.to_json()).unwrap(), g);
    }
}
