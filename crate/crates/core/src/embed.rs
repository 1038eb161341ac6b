//! Finite analyzers for bipartite embeddings between vertex classes: half
//! graph order, the empty-biclique / half-graph dichotomy, and balanced
//! induced embeddings of a bipartite pattern.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::budget::{Budget, Meter};
use crate::constructions::PartitionedGraph;
use crate::error::{Error, Result};
use crate::graph::UGraph;
use crate::par;

/// Sequences `a_1..a_k` and `b_1..b_k` with `a_i b_j` an edge for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfGraphWitness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl HalfGraphWitness {
    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn verify(&self, g: &UGraph, a: &VertexSet, b: &VertexSet) -> bool {
        let k = self.a.len();
        let distinct = |s: &[usize]| {
            let set = VertexSet::from_iter_in(g.order(), s.iter().copied());
            set.len() == s.len()
        };
        self.b.len() == k
            && distinct(&self.a)
            && distinct(&self.b)
            && self.a.iter().all(|&v| a.contains(v))
            && self.b.iter().all(|&v| b.contains(v))
            && (0..k).all(|i| (i + 1..k).all(|j| g.has_edge(self.a[i], self.b[j])))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfOrder {
    pub order: usize,
    pub exact: bool,
    pub witness: Option<HalfGraphWitness>,
}

#[derive(Clone, Copy, Debug)]
pub struct HalfOrderOptions {
    /// Orders up to this value are decided by exhaustive ordered search.
    pub exact_cap: usize,
    pub budget: Budget,
}

impl Default for HalfOrderOptions {
    fn default() -> Self {
        HalfOrderOptions {
            exact_cap: 6,
            budget: Budget::UNLIMITED,
        }
    }
}

fn check_sides(g: &UGraph, a: &VertexSet, b: &VertexSet) -> Result<()> {
    if a.universe() != g.order() || b.universe() != g.order() {
        return Err(Error::InvalidArgument("vertex sets do not match the graph".into()));
    }
    if !a.is_disjoint(b) {
        return Err(Error::InvalidArgument("sides must be disjoint".into()));
    }
    Ok(())
}

/// Searches for a half graph of order exactly `k` inside `g[a, b]`.
/// `None` with the meter exhausted means undecided.
fn find_half(g: &UGraph, a: &VertexSet, b: &VertexSet, k: usize, meter: &Meter) -> Option<HalfGraphWitness> {
    if k == 0 {
        return Some(HalfGraphWitness {
            a: vec![],
            b: vec![],
        });
    }
    if a.len() < k || b.len() < k {
        return None;
    }
    // choose a_1..a_{k-1} and b_2..b_k; a_k and b_1 are unconstrained
    fn rec(
        g: &UGraph,
        k: usize,
        free_a: &VertexSet,
        common: &VertexSet,
        sa: &mut Vec<usize>,
        sb: &mut Vec<usize>,
        meter: &Meter,
    ) -> bool {
        let i = sa.len();
        if i == k - 1 {
            return true;
        }
        for x in free_a.iter() {
            if !meter.tick() {
                return false;
            }
            let next = common.intersection(g.neighbors(x));
            // b_{i+2}..b_k must all come from `next`
            if next.len() < k - 1 - i {
                continue;
            }
            let mut rest_a = free_a.clone();
            rest_a.remove(x);
            sa.push(x);
            for y in next.iter() {
                let mut rest_b = next.clone();
                rest_b.remove(y);
                if rest_b.len() < k - 2 - i {
                    break;
                }
                sb.push(y);
                if rec(g, k, &rest_a, &rest_b, sa, sb, meter) {
                    return true;
                }
                sb.pop();
                if meter.stopped() {
                    return false;
                }
            }
            sa.pop();
        }
        false
    }
    let (mut sa, mut sb) = (Vec::new(), Vec::new());
    if !rec(g, k, a, b, &mut sa, &mut sb, meter) {
        return None;
    }
    let mut rest_a = a.clone();
    let mut rest_b = b.clone();
    sa.iter().for_each(|&v| rest_a.remove(v));
    sb.iter().for_each(|&v| rest_b.remove(v));
    sa.push(rest_a.first()?);
    sb.insert(0, rest_b.first()?);
    Some(HalfGraphWitness { a: sa, b: sb })
}

/// Extends a half-graph witness one step at a time: the next `b` must see
/// every current `a`, the next `a` is chosen to keep the most candidates.
fn greedy_extend(g: &UGraph, a: &VertexSet, b: &VertexSet, mut w: HalfGraphWitness) -> HalfGraphWitness {
    loop {
        let mut free_a = a.clone();
        let mut free_b = b.clone();
        w.a.iter().for_each(|&v| free_a.remove(v));
        w.b.iter().for_each(|&v| free_b.remove(v));
        let mut common = free_b.clone();
        for &x in &w.a {
            common.intersect_with(g.neighbors(x));
        }
        let Some(y) = common.first() else { return w };
        common.remove(y);
        let Some(x) = free_a
            .iter()
            .max_by_key(|&x| (common.intersection_len(g.neighbors(x)), std::cmp::Reverse(x)))
        else {
            return w;
        };
        w.b.push(y);
        w.a.push(x);
    }
}

/// Largest `k` with `H_{k,k}` a subgraph of `g[a, b]` (`a_i b_j` an edge for
/// `i < j`, other pairs unconstrained). Exact up to `exact_cap`, greedy
/// beyond; at least 1 when both sides are nonempty.
pub fn half_graph_order(
    g: &UGraph,
    a: &VertexSet,
    b: &VertexSet,
    opts: &HalfOrderOptions,
) -> Result<HalfOrder> {
    check_sides(g, a, b)?;
    let bound = a.len().min(b.len());
    let meter = opts.budget.meter();
    let mut best: Option<HalfGraphWitness> = None;
    let cap = opts.exact_cap.max(1);
    for k in 1..=bound.min(cap) {
        match find_half(g, a, b, k, &meter) {
            Some(w) => best = Some(w),
            None => {
                let order = best.as_ref().map_or(0, |w| w.order());
                return Ok(HalfOrder {
                    order,
                    exact: !meter.exhausted(),
                    witness: best,
                });
            }
        }
    }
    let Some(w) = best else {
        return Ok(HalfOrder {
            order: 0,
            exact: true,
            witness: None,
        });
    };
    let w = if w.order() < bound {
        greedy_extend(g, a, b, w)
    } else {
        w
    };
    Ok(HalfOrder {
        order: w.order(),
        exact: w.order() == bound,
        witness: Some(w),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RichPairVerdict {
    /// `|A'| = |B'| = k` with no edge between them.
    EmptyPair { a: Vec<usize>, b: Vec<usize> },
    HalfGraph(HalfGraphWitness),
    Inconclusive,
}

/// Lexicographically least `A' ⊆ a` of size `k` whose common
/// non-neighbourhood in `b` has at least `k` vertices.
fn empty_biclique(
    g: &UGraph,
    a: &VertexSet,
    b: &VertexSet,
    k: usize,
    meter: &Meter,
) -> Option<(Vec<usize>, Vec<usize>)> {
    fn rec(
        g: &UGraph,
        k: usize,
        cand: &VertexSet,
        common: &VertexSet,
        chosen: &mut Vec<usize>,
        meter: &Meter,
    ) -> bool {
        if chosen.len() == k {
            return true;
        }
        let mut cand = cand.clone();
        while cand.len() + chosen.len() >= k {
            if !meter.tick() {
                return false;
            }
            let x = cand.first().expect("nonempty");
            cand.remove(x);
            let next = common.difference(g.neighbors(x));
            if next.len() < k {
                continue;
            }
            chosen.push(x);
            if rec(g, k, &cand, &next, chosen, meter) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    if !rec(g, k, a, b, &mut chosen, meter) {
        return None;
    }
    let mut common = b.clone();
    for &x in &chosen {
        common.difference_with(g.neighbors(x));
    }
    Some((chosen, common.iter().take(k).collect()))
}

/// Either an empty `K_{k,k}` across `(a, b)`, or failing that a half graph
/// of order `k`, or inconclusive.
pub fn rich_pair_surrogate(
    g: &UGraph,
    a: &VertexSet,
    b: &VertexSet,
    k: usize,
    budget: &Budget,
) -> Result<RichPairVerdict> {
    check_sides(g, a, b)?;
    if a.len() < k || b.len() < k {
        return Err(Error::InvalidArgument(format!("both sides need at least {k} vertices")));
    }
    let meter = budget.meter();
    if let Some((x, y)) = empty_biclique(g, a, b, k, &meter) {
        return Ok(RichPairVerdict::EmptyPair { a: x, b: y });
    }
    if meter.exhausted() {
        return Ok(RichPairVerdict::Inconclusive);
    }
    Ok(match find_half(g, a, b, k, &meter) {
        Some(w) => RichPairVerdict::HalfGraph(w),
        None => RichPairVerdict::Inconclusive,
    })
}

/// Bipartite pattern: left vertices `0..left`, right vertices
/// `0..right`, edges as `(left, right)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitePattern {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartitePattern {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(l, r)) = edges.iter().find(|&&(l, r)| l >= left || r >= right) {
            return Err(Error::InvalidArgument(format!("pattern edge ({l},{r}) out of range")));
        }
        Ok(BipartitePattern { left, right, edges })
    }

    /// The pattern as a graph on `left + right` vertices, right side offset.
    pub fn graph(&self) -> UGraph {
        let mut g = UGraph::new(self.left + self.right);
        for &(l, r) in &self.edges {
            g.add_edge(l, self.left + r);
        }
        g
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingKind {
    Subgraph,
    Induced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub kind: EmbeddingKind,
    /// Image of pattern vertex `p` (left first, then right).
    pub map: Vec<usize>,
    /// Class receiving the left side; the right side goes to the other.
    pub left_class: usize,
}

impl EmbeddingReport {
    pub fn verify(&self, host: &PartitionedGraph, pattern: &BipartitePattern) -> bool {
        let pg = pattern.graph();
        let n = pg.order();
        if self.map.len() != n || self.left_class > 1 || host.class_count() != 2 {
            return false;
        }
        let image = VertexSet::from_iter_in(host.order(), self.map.iter().copied());
        if image.len() != n {
            return false;
        }
        let sides_ok = self.map.iter().enumerate().all(|(p, &v)| {
            let class = if p < pattern.left {
                self.left_class
            } else {
                1 - self.left_class
            };
            host.classes[class].contains(v)
        });
        let edges_ok = (0..n).all(|p| {
            (p + 1..n).all(|q| {
                let (e, h) = (pg.has_edge(p, q), host.graph.has_edge(self.map[p], self.map[q]));
                match self.kind {
                    EmbeddingKind::Subgraph => !e || h,
                    EmbeddingKind::Induced => e == h,
                }
            })
        });
        sides_ok && edges_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedOutcome {
    pub report: Option<EmbeddingReport>,
    /// False when the budget ran out before either side assignment was
    /// settled.
    pub exact: bool,
    pub nodes: u64,
}

/// Lexicographically least induced embedding of `pattern` with its left
/// side in class `left_class` and its right side in the other class.
fn induced_embed(
    host: &PartitionedGraph,
    pattern: &BipartitePattern,
    pg: &UGraph,
    left_class: usize,
    meter: &Meter,
) -> Option<Vec<usize>> {
    let n = pg.order();
    let g = &host.graph;
    let domain = |p: usize| {
        if p < pattern.left {
            &host.classes[left_class]
        } else {
            &host.classes[1 - left_class]
        }
    };
    let cross_degree = |v: usize, class: &VertexSet| g.neighbors(v).intersection_len(class);
    // degree filter: a host vertex must have enough neighbours in the other class
    let domains: Vec<VertexSet> = (0..n)
        .map(|p| {
            let other = if p < pattern.left {
                &host.classes[1 - left_class]
            } else {
                &host.classes[left_class]
            };
            let mut d = domain(p).clone();
            for v in domain(p).iter() {
                if cross_degree(v, other) < pg.degree(p) {
                    d.remove(v);
                }
            }
            d
        })
        .collect();
    fn rec(
        p: usize,
        g: &UGraph,
        pg: &UGraph,
        domains: &[VertexSet],
        map: &mut Vec<usize>,
        used: &mut VertexSet,
        meter: &Meter,
    ) -> bool {
        if p == pg.order() {
            return true;
        }
        let mut cand = domains[p].difference(used);
        for (q, &v) in map.iter().enumerate() {
            if pg.has_edge(p, q) {
                cand.intersect_with(g.neighbors(v));
            } else {
                cand.difference_with(g.neighbors(v));
            }
        }
        for v in cand.iter() {
            if !meter.tick() {
                return false;
            }
            map.push(v);
            used.insert(v);
            if rec(p + 1, g, pg, domains, map, used, meter) {
                return true;
            }
            used.remove(v);
            map.pop();
        }
        false
    }
    let mut map = Vec::with_capacity(n);
    let mut used = VertexSet::new(host.order());
    rec(0, g, pg, &domains, &mut map, &mut used, meter).then_some(map)
}

/// Searches both side assignments for an induced copy of `pattern` whose
/// sides land in different classes of `host`; returns the
/// lexicographically least map found.
pub fn balanced_induced_embed(
    host: &PartitionedGraph,
    pattern: &BipartitePattern,
    budget: &Budget,
) -> Result<EmbedOutcome> {
    if host.class_count() != 2 {
        return Err(Error::InvalidArgument("host needs exactly two classes".into()));
    }
    if pattern.left == 0 || pattern.right == 0 {
        return Err(Error::InvalidArgument("pattern sides must be nonempty".into()));
    }
    let pg = pattern.graph();
    let meter = budget.meter();
    let (m0, m1) = par::join(
        || induced_embed(host, pattern, &pg, 0, &meter),
        || induced_embed(host, pattern, &pg, 1, &meter),
    );
    let best = match (m0, m1) {
        (Some(x), Some(y)) if y < x => Some((y, 1)),
        (Some(x), _) => Some((x, 0)),
        (None, Some(y)) => Some((y, 1)),
        (None, None) => None,
    };
    let report = best.map(|(map, left_class)| EmbeddingReport {
        kind: EmbeddingKind::Induced,
        map,
        left_class,
    });
    if let Some(r) = &report {
        if !r.verify(host, pattern) {
            return Err(Error::InvalidArgument("embedding failed re-verification".into()));
        }
    }
    Ok(EmbedOutcome {
        exact: !meter.exhausted(),
        report,
        nodes: meter.nodes(),
    })
}
