//! Orthogonality graphs over exact rational vectors, and pool searches for
//! large families in which every `m + 1` vectors contain an orthogonal pair.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::UGraph;
use crate::par;

/// Nonzero direction with coprime integer coordinates whose first nonzero
/// coordinate is positive; parallel vectors share one representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec {
    coords: Vec<BigInt>,
}

impl RatVec {
    /// From `(numerator, denominator)` pairs.
    pub fn from_rationals(coords: &[(BigInt, BigInt)]) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("vector needs at least one coordinate".into()));
        }
        if coords.iter().any(|(_, d)| d.is_zero()) {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let lcm = coords
            .iter()
            .fold(BigInt::one(), |acc, (_, d)| acc.lcm(&d.abs()));
        let ints: Vec<BigInt> = coords.iter().map(|(n, d)| n * (&lcm / d)).collect();
        Self::from_integers(ints)
    }

    pub fn from_integers(coords: Vec<BigInt>) -> Result<Self> {
        let g = coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(Error::InvalidArgument("zero vector has no direction".into()));
        }
        let first_negative = coords.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        let g = if first_negative { -g } else { g };
        Ok(RatVec {
            coords: coords.into_iter().map(|c| c / &g).collect(),
        })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::from_integers(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn dot(&self, other: &RatVec) -> BigInt {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn is_orthogonal(&self, other: &RatVec) -> bool {
        self.dot(other).is_zero()
    }
}

/// Distinct directions of one dimension, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFamily {
    dim: usize,
    vectors: Vec<RatVec>,
}

impl VectorFamily {
    pub fn new(dim: usize) -> Self {
        VectorFamily {
            dim,
            vectors: Vec::new(),
        }
    }

    /// Builds a family, dropping repeated directions.
    pub fn from_vectors(dim: usize, vectors: impl IntoIterator<Item = RatVec>) -> Result<Self> {
        let mut f = VectorFamily::new(dim);
        for v in vectors {
            f.push(v)?;
        }
        Ok(f)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.len());
        Self::from_vectors(dim, rows.iter().map(|r| RatVec::from_i64(r)).collect::<Result<Vec<_>>>()?)
    }

    /// Adds `v` unless its direction is present. Returns whether it was new.
    pub fn push(&mut self, v: RatVec) -> Result<bool> {
        if v.dim() != self.dim {
            return Err(Error::InvalidArgument(format!(
                "dimension {} in a family of dimension {}",
                v.dim(),
                self.dim
            )));
        }
        if self.vectors.contains(&v) {
            return Ok(false);
        }
        self.vectors.push(v);
        Ok(true)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[RatVec] {
        &self.vectors
    }

    pub fn subfamily(&self, indices: &[usize]) -> VectorFamily {
        VectorFamily {
            dim: self.dim,
            vectors: indices.iter().map(|&i| self.vectors[i].clone()).collect(),
        }
    }

    /// JSON shape: one array of `[numerator, denominator]` pairs per vector.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.vectors
                .iter()
                .map(|v| {
                    serde_json::Value::Array(
                        v.coords
                            .iter()
                            .map(|c| serde_json::json!([c.to_string(), "1"]))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// Accepts numbers or decimal strings for numerators and denominators.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = |why: &str| Error::MalformedInput(format!("vector family: {why}"));
        let rows = value.as_array().ok_or_else(|| bad("expected an array of vectors"))?;
        let parse = |x: &serde_json::Value| -> Result<BigInt> {
            match x {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| bad("non-integer number")),
                serde_json::Value::String(s) => s.parse().map_err(|_| bad("bad integer string")),
                _ => Err(bad("expected an integer")),
            }
        };
        let mut vectors = Vec::with_capacity(rows.len());
        for row in rows {
            let coords = row.as_array().ok_or_else(|| bad("expected a vector"))?;
            let mut pairs = Vec::with_capacity(coords.len());
            for c in coords {
                let pair = match c.as_array() {
                    Some(p) if p.len() == 2 => (parse(&p[0])?, parse(&p[1])?),
                    Some(_) => return Err(bad("expected [numerator, denominator]")),
                    None => (parse(c)?, BigInt::one()),
                };
                pairs.push(pair);
            }
            vectors.push(RatVec::from_rationals(&pairs)?);
        }
        let dim = vectors.first().map_or(0, |v| v.dim());
        Self::from_vectors(dim, vectors)
    }
}

/// Edge between two vectors iff their dot product is zero.
pub fn ortho_graph(f: &VectorFamily) -> UGraph {
    let n = f.len();
    let mut g = UGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if f.vectors[i].is_orthogonal(&f.vectors[j]) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// An `m + 1` subset with no orthogonal pair, if one exists.
pub fn alpha_violation(f: &VectorFamily, m: usize) -> Option<Vec<usize>> {
    let g = ortho_graph(f);
    g.find_independent_within(m + 1, &g.all_vertices())
}

/// True iff every `m + 1` vectors of `f` contain an orthogonal pair, i.e.
/// the orthogonality graph has independence number at most `m`.
pub fn alpha_check(f: &VectorFamily, m: usize) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    Ok(alpha_violation(f, m).is_none())
}

/// Integer directions with entries in `-height..=height`, deduplicated,
/// in lexicographic order of their coordinate vectors.
pub fn integer_pool(dim: usize, height: i64) -> VectorFamily {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for coords in (0..dim).map(|_| -height..=height).multi_cartesian_product() {
        if let Ok(v) = RatVec::from_i64(&coords) {
            if seen.insert(v.clone()) {
                out.push(v);
            }
        }
    }
    out.sort();
    VectorFamily { dim, vectors: out }
}

/// `m - 1` disjoint orthogonal pairs `(1, k), (k, -1)` in `Q^2`.
pub fn orthogonal_pairs_family(m: usize) -> VectorFamily {
    let mut f = VectorFamily::new(2);
    for k in 0..m.saturating_sub(1) as i64 {
        f.push(RatVec::from_i64(&[1, k]).expect("nonzero")).expect("dim 2");
        f.push(RatVec::from_i64(&[k, -1]).expect("nonzero")).expect("dim 2");
    }
    f
}

pub fn standard_basis(dim: usize) -> VectorFamily {
    let rows: Vec<Vec<i64>> = (0..dim)
        .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
        .collect();
    VectorFamily::from_vectors(dim, rows.iter().map(|r| RatVec::from_i64(r).expect("nonzero")))
        .expect("same dimension")
}

#[derive(Clone, Debug)]
pub struct AlphaSearch {
    /// Pool indices of the best family, ascending.
    pub indices: Vec<usize>,
    pub best: VectorFamily,
    pub exact: bool,
    pub nodes: u64,
}

struct PoolSearch<'a> {
    g: &'a UGraph,
    m: usize,
    meter: &'a Meter,
    best: &'a AtomicUsize,
    found: &'a Mutex<Vec<usize>>,
}

impl PoolSearch<'_> {
    /// Whether `s ∪ {c}` still has no independent `m + 1` set through `c`.
    fn fits(&self, s: &VertexSet, c: usize) -> bool {
        let free = s.difference(self.g.neighbors(c));
        !self.g.has_independent_within(self.m, &free)
    }

    fn offer(&self, s: &VertexSet) {
        let size = s.len();
        if size < self.best.load(Ordering::Relaxed) {
            return;
        }
        let mut slot = self.found.lock().expect("poisoned");
        let v = s.to_vec();
        let cur = self.best.load(Ordering::Relaxed);
        if size > cur || (size == cur && v < *slot) {
            self.best.store(size, Ordering::Relaxed);
            *slot = v;
        }
    }

    fn rec(&self, s: &mut VertexSet, cand: VertexSet) {
        if !self.meter.tick() {
            return;
        }
        self.offer(s);
        let mut cand = cand;
        while let Some(v) = cand.first() {
            if s.len() + cand.len() < self.best.load(Ordering::Relaxed) {
                return;
            }
            cand.remove(v);
            s.insert(v);
            let next = VertexSet::from_iter_in(
                cand.universe(),
                cand.iter().filter(|&c| self.fits(s, c)),
            );
            self.rec(s, next);
            s.remove(v);
            if self.meter.stopped() {
                return;
            }
        }
    }
}

/// Largest subfamily of `pool` whose orthogonality graph has independence
/// number at most `m`, by branch and bound over the pool in index order.
/// Among largest families the lexicographically least index set is
/// returned; `exact` is false when the budget cut the search short.
pub fn alpha_lower_search(m: usize, pool: &VectorFamily, budget: &Budget) -> Result<AlphaSearch> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let g = ortho_graph(pool);
    let n = g.order();
    let meter = budget.meter();
    let best = AtomicUsize::new(0);
    let found = Mutex::new(Vec::new());
    let search = PoolSearch {
        g: &g,
        m,
        meter: &meter,
        best: &best,
        found: &found,
    };
    search.offer(&VertexSet::new(n));
    par::for_each((0..n).collect(), |v| {
        let mut s = VertexSet::from_iter_in(n, [v]);
        let cand = VertexSet::from_iter_in(n, (v + 1..n).filter(|&c| search.fits(&s, c)));
        search.rec(&mut s, cand);
    });
    let indices = found.into_inner().expect("poisoned");
    let best = pool.subfamily(&indices);
    debug_assert!(alpha_violation(&best, m).is_none());
    Ok(AlphaSearch {
        indices,
        best,
        exact: !meter.exhausted(),
        nodes: meter.nodes(),
    })
}

/// Quantities tied together by `alpha = α(n, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthoRelations {
    pub m: usize,
    pub alpha: usize,
    /// `r̂(n, m+1) = r*(m+1) = α(n,m) + 1`
    pub rstar_next: usize,
    /// `r(G, m+2) = r*(m+1) + 1`
    pub r_after: usize,
}

pub fn rstar_relation(alpha: usize, m: usize) -> OrthoRelations {
    OrthoRelations {
        m,
        alpha,
        rstar_next: alpha + 1,
        r_after: alpha + 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> RatVec {
        RatVec::from_i64(c).unwrap()
    }

    #[test]
    fn canonical_direction() {
        assert_eq!(v(&[-2, 4, 0]), v(&[1, -2, 0]));
        assert_eq!(v(&[0, -3]).coords(), &[BigInt::from(0), BigInt::from(1)]);
        let half = RatVec::from_rationals(&[
            (BigInt::from(1), BigInt::from(2)),
            (BigInt::from(-1), BigInt::from(3)),
        ])
        .unwrap();
        assert_eq!(half, v(&[3, -2]));
        assert!(RatVec::from_i64(&[0, 0]).is_err());
        assert!(RatVec::from_rationals(&[(BigInt::from(1), BigInt::from(0))]).is_err());
    }

    #[test]
    fn small_ortho_graphs() {
        assert_eq!(ortho_graph(&standard_basis(4)), UGraph::complete(4));
        let f = VectorFamily::from_i64_rows(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]).unwrap();
        let edges: Vec<_> = ortho_graph(&f).edges().collect();
        assert_eq!(edges, vec![(0, 1), (2, 3)]);
        let pos = VectorFamily::from_i64_rows(&[&[1, 2], &[3, 1], &[5, 5]]).unwrap();
        assert_eq!(ortho_graph(&pos).edge_count(), 0);
        assert_eq!(pos.len(), 3);
    }

    #[test]
    fn alpha_checks() {
        assert!(alpha_check(&standard_basis(3), 1).unwrap());
        let f = VectorFamily::from_i64_rows(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]).unwrap();
        assert!(alpha_check(&f, 2).unwrap());
        assert!(!alpha_check(&f, 1).unwrap());
        let mut g = standard_basis(3);
        g.push(v(&[1, 1, 1])).unwrap();
        assert!(!alpha_check(&g, 1).unwrap());
    }

    #[test]
    fn pools_are_canonical() {
        let p = integer_pool(2, 1);
        // (1,0) (0,1) (1,1) (1,-1)
        assert_eq!(p.len(), 4);
        assert_eq!(integer_pool(3, 1).len(), 13);
    }

    #[test]
    fn pairs_family_is_a_matching() {
        for m in 2..=5 {
            let f = orthogonal_pairs_family(m);
            assert_eq!(f.len(), 2 * (m - 1));
            let g = ortho_graph(&f);
            assert_eq!(g.edge_count(), m - 1);
            assert!((0..g.order()).all(|x| g.degree(x) == 1));
            assert_eq!(g.independence_number().unwrap(), m - 1);
        }
    }

    #[test]
    fn search_small_pools() {
        let r = alpha_lower_search(1, &integer_pool(3, 1), &Budget::UNLIMITED).unwrap();
        assert!(r.exact);
        assert_eq!(r.best.len(), 3);

        let pool = integer_pool(2, 1);
        let r = alpha_lower_search(5, &pool, &Budget::UNLIMITED).unwrap();
        assert_eq!(r.best, pool);
    }

    #[test]
    fn json_round_trip() {
        let f = VectorFamily::from_i64_rows(&[&[1, 0], &[2, -3]]).unwrap();
        let back = VectorFamily::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let j = serde_json::json!([[[1, 2], [1, 3]], [0, 5]]);
        let g = VectorFamily::from_json(&j).unwrap();
        assert_eq!(g.vectors()[0], v(&[3, 2]));
        assert_eq!(g.vectors()[1], v(&[0, 1]));
        assert!(VectorFamily::from_json(&serde_json::json!([[0, 0]])).is_err());
    }

    #[test]
    fn relations() {
        let r = rstar_relation(4, 2);
        assert_eq!((r.rstar_next, r.r_after), (5, 6));
        assert_eq!(rstar_relation(3, 1).rstar_next, 4);
    }
}
