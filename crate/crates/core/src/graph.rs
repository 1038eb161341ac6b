//! Undirected simple graphs and the clique/independence predicates.

use crate::bitset::VertexSet;
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};

/// Loop-free undirected graph with symmetric adjacency sets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UGraph {
    adj: Vec<VertexSet>,
}

/// Limits for the exact independence-number search.
#[derive(Clone, Copy, Debug)]
pub struct ExactLimits {
    pub max_order: usize,
    pub budget: Budget,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            max_order: 64,
            budget: Budget::UNLIMITED,
        }
    }
}

impl UGraph {
    pub fn new(order: usize) -> Self {
        UGraph {
            adj: vec![VertexSet::new(order); order],
        }
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = UGraph::new(order);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(order: usize) -> Self {
        let mut g = UGraph::new(order);
        for u in 0..order {
            for v in u + 1..order {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn empty(order: usize) -> Self {
        UGraph::new(order)
    }

    pub fn cycle(order: usize) -> Self {
        let mut g = UGraph::new(order);
        for u in 0..order {
            g.add_edge(u, (u + 1) % order);
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Adds `uv`. Self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// Adds a fresh isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        let n = self.order() + 1;
        for nb in self.adj.iter_mut() {
            *nb = nb.widened(n);
        }
        self.adj.push(VertexSet::new(n));
        n - 1
    }

    /// Adds `count` isolated vertices at once.
    pub fn extend_vertices(&mut self, count: usize) {
        let n = self.order() + count;
        for nb in self.adj.iter_mut() {
            *nb = nb.widened(n);
        }
        self.adj.resize(n, VertexSet::new(n));
    }

    pub fn complement(&self) -> UGraph {
        let n = self.order();
        let mut g = UGraph::new(n);
        for v in 0..n {
            let mut nb = VertexSet::full(n);
            nb.difference_with(&self.adj[v]);
            nb.remove(v);
            g.adj[v] = nb;
        }
        g
    }

    /// Subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> UGraph {
        let mut g = UGraph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    pub fn is_clique(&self, s: &[usize]) -> bool {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn has_clique(&self, k: usize) -> bool {
        self.find_clique(k).is_some()
    }

    /// Lexicographically least `k`-clique, if any.
    pub fn find_clique(&self, k: usize) -> Option<Vec<usize>> {
        self.find_clique_within(k, &self.all_vertices())
    }

    /// Lexicographically least `k`-clique inside `within`.
    pub fn find_clique_within(&self, k: usize, within: &VertexSet) -> Option<Vec<usize>> {
        if k == 0 {
            return Some(Vec::new());
        }
        let mut chosen = Vec::with_capacity(k);
        if self.clique_rec(k, within.clone(), &mut chosen) {
            Some(chosen)
        } else {
            None
        }
    }

    fn clique_rec(&self, k: usize, cand: VertexSet, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return true;
        }
        let need = k - chosen.len();
        let mut cand = cand;
        while cand.len() >= need {
            let v = cand.first().expect("nonempty");
            cand.remove(v);
            chosen.push(v);
            if self.clique_rec(k, cand.intersection(&self.adj[v]), chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Calls `f` on every clique of size at least 1 (vertices ascending).
    /// Stops early when `f` returns false.
    pub fn for_each_clique<F: FnMut(&[usize]) -> bool>(&self, mut f: F) {
        fn rec<F: FnMut(&[usize]) -> bool>(
            g: &UGraph,
            cand: VertexSet,
            chosen: &mut Vec<usize>,
            f: &mut F,
        ) -> bool {
            for v in cand.iter() {
                chosen.push(v);
                if !f(chosen) {
                    return false;
                }
                let mut next = cand.intersection(g.neighbors(v));
                for u in cand.iter().take_while(|&u| u <= v) {
                    next.remove(u);
                }
                if !rec(g, next, chosen, f) {
                    return false;
                }
                chosen.pop();
            }
            true
        }
        rec(self, self.all_vertices(), &mut Vec::new(), &mut f);
    }

    /// Clique number via maximum clique search (no order cap).
    pub fn clique_number(&self) -> usize {
        let meter = Budget::UNLIMITED.meter();
        max_clique_size(self, &self.all_vertices(), &meter)
    }

    pub fn independence_number(&self) -> Result<usize> {
        self.max_independent_set(&ExactLimits::default())
            .map(|s| s.len())
    }

    /// Lexicographically least maximum independent set.
    pub fn max_independent_set(&self, limits: &ExactLimits) -> Result<VertexSet> {
        if self.order() > limits.max_order {
            return Err(Error::CapExceeded {
                what: format!("order {}", self.order()),
                cap: limits.max_order,
            });
        }
        let co = self.complement();
        let meter = limits.budget.meter();
        let alpha = max_clique_size(&co, &co.all_vertices(), &meter);
        if meter.exhausted() {
            return Err(Error::BudgetExceeded);
        }
        let clique = co
            .find_clique(alpha)
            .expect("a clique of the maximum size exists");
        Ok(VertexSet::from_iter_in(self.order(), clique))
    }

    /// True when some independent set of size `k` exists inside `within`.
    pub fn has_independent_within(&self, k: usize, within: &VertexSet) -> bool {
        self.find_independent_within(k, within).is_some()
    }

    /// Lexicographically least independent `k`-set inside `within`.
    pub fn find_independent_within(&self, k: usize, within: &VertexSet) -> Option<Vec<usize>> {
        fn rec(g: &UGraph, k: usize, cand: VertexSet, chosen: &mut Vec<usize>) -> bool {
            if chosen.len() == k {
                return true;
            }
            let need = k - chosen.len();
            let mut cand = cand;
            while cand.len() >= need {
                let v = cand.first().expect("nonempty");
                cand.remove(v);
                chosen.push(v);
                if rec(g, k, cand.difference(g.neighbors(v)), chosen) {
                    return true;
                }
                chosen.pop();
            }
            false
        }
        let mut chosen = Vec::with_capacity(k);
        rec(self, k, within.clone(), &mut chosen).then_some(chosen)
    }
}

/// Maximum clique size within `cand`, branch and bound with a greedy
/// colouring bound. Returns the best size found if the meter stops early.
pub(crate) fn max_clique_size(g: &UGraph, cand: &VertexSet, meter: &Meter) -> usize {
    let mut best = 0usize;
    expand(g, 0, cand.clone(), &mut best, meter);
    best
}

fn expand(g: &UGraph, size: usize, cand: VertexSet, best: &mut usize, meter: &Meter) {
    if !meter.tick() {
        return;
    }
    if cand.is_empty() {
        *best = (*best).max(size);
        return;
    }
    // Greedy colouring: order[i] carries colour bound[i] (non-decreasing).
    let mut order = Vec::with_capacity(cand.len());
    let mut bound = Vec::with_capacity(cand.len());
    let mut uncoloured = cand.clone();
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut avail = uncoloured.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(g.neighbors(v));
            uncoloured.remove(v);
            order.push(v);
            bound.push(colour);
        }
    }
    let mut cand = cand;
    for i in (0..order.len()).rev() {
        if size + bound[i] <= *best {
            return;
        }
        let v = order[i];
        expand(g, size + 1, cand.intersection(g.neighbors(v)), best, meter);
        if meter.stopped() {
            return;
        }
        cand.remove(v);
    }
}
