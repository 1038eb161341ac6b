//! Loop-free digraphs on at most 128 vertices, one `u128` row per vertex.

use crate::bitset::{low_mask, Bits128};
use crate::error::{Error, Result};
use crate::graph::UGraph;

pub const MAX_DIGRAPH_ORDER: usize = 128;

/// Out- and in-neighbour bitsets. 2-cycles are allowed, loops are not.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitDigraph {
    out: Vec<u128>,
    inn: Vec<u128>,
}

impl BitDigraph {
    /// Panics when `order > 128`; use [`BitDigraph::try_new`] for checked input.
    pub fn new(order: usize) -> Self {
        Self::try_new(order).expect("digraph order above 128")
    }

    pub fn try_new(order: usize) -> Result<Self> {
        if order > MAX_DIGRAPH_ORDER {
            return Err(Error::CapExceeded {
                what: format!("digraph order {order}"),
                cap: MAX_DIGRAPH_ORDER,
            });
        }
        Ok(BitDigraph {
            out: vec![0; order],
            inn: vec![0; order],
        })
    }

    pub fn from_arcs(order: usize, arcs: &[(usize, usize)]) -> Self {
        let mut d = BitDigraph::new(order);
        for &(u, v) in arcs {
            d.add_arc(u, v);
        }
        d
    }

    pub fn directed_cycle(order: usize) -> Self {
        let arcs: Vec<_> = (0..order).map(|i| (i, (i + 1) % order)).collect();
        BitDigraph::from_arcs(order, &arcs)
    }

    /// Arcs `i -> j` for all `i < j`.
    pub fn transitive_tournament(order: usize) -> Self {
        let mut d = BitDigraph::new(order);
        for i in 0..order {
            for j in i + 1..order {
                d.add_arc(i, j);
            }
        }
        d
    }

    /// Every ordered pair is an arc.
    pub fn complete(order: usize) -> Self {
        let mut d = BitDigraph::new(order);
        for i in 0..order {
            for j in 0..order {
                d.add_arc(i, j);
            }
        }
        d
    }

    /// Circulant digraph on `Z_order` with arcs `i -> i + s` for `s` in `shifts`.
    pub fn circulant(order: usize, shifts: &[usize]) -> Self {
        let mut d = BitDigraph::new(order);
        for i in 0..order {
            for &s in shifts {
                d.add_arc(i, (i + s) % order);
            }
        }
        d
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.out.len()
    }

    /// Adds `u -> v`. Loops are ignored.
    #[inline]
    pub fn add_arc(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.out[u] |= 1 << v;
        self.inn[v] |= 1 << u;
    }

    #[inline]
    pub fn remove_arc(&mut self, u: usize, v: usize) {
        self.out[u] &= !(1 << v);
        self.inn[v] &= !(1 << u);
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    #[inline]
    pub fn out_mask(&self, v: usize) -> u128 {
        self.out[v]
    }

    #[inline]
    pub fn in_mask(&self, v: usize) -> u128 {
        self.inn[v]
    }

    /// Vertices joined to `v` by an arc in either direction.
    #[inline]
    pub fn adjacent_mask(&self, v: usize) -> u128 {
        self.out[v] | self.inn[v]
    }

    #[inline]
    pub fn vertex_mask(&self) -> u128 {
        low_mask(self.order())
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, &r)| Bits128(r).map(move |v| (u, v)))
    }

    /// Appends a vertex with no arcs; returns its index.
    pub fn push_vertex(&mut self) -> usize {
        assert!(self.order() < MAX_DIGRAPH_ORDER);
        self.out.push(0);
        self.inn.push(0);
        self.order() - 1
    }

    /// Removes the last vertex and its arcs.
    pub fn pop_vertex(&mut self) {
        let v = self.order() - 1;
        let keep = !(1u128 << v);
        self.out.pop();
        self.inn.pop();
        for r in self.out.iter_mut().chain(self.inn.iter_mut()) {
            *r &= keep;
        }
    }

    /// Digraph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> BitDigraph {
        let mut d = BitDigraph::new(self.order());
        for (u, v) in self.arcs() {
            d.add_arc(perm[u], perm[v]);
        }
        d
    }

    /// Subdigraph induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> BitDigraph {
        let mut d = BitDigraph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.has_arc(u, v) {
                    d.add_arc(i, j);
                }
            }
        }
        d
    }

    /// Underlying undirected graph: `uv` is an edge iff some arc joins them.
    pub fn underlying(&self) -> UGraph {
        let mut g = UGraph::new(self.order());
        for (u, v) in self.arcs() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn has_transitive_set(&self, n: usize) -> bool {
        self.find_transitive_tuple(n).is_some()
    }

    /// Lexicographically least tuple `v_1..v_n` of distinct vertices with
    /// `v_i -> v_j` for every `i < j`. Back-arcs are permitted.
    pub fn find_transitive_tuple(&self, n: usize) -> Option<Vec<usize>> {
        self.transitive_tuple_in(n, self.vertex_mask(), 0)
    }

    /// Transitive `n`-tuple using only vertices of `allowed` and containing
    /// every vertex of `must`.
    pub fn transitive_tuple_in(&self, n: usize, allowed: u128, must: u128) -> Option<Vec<usize>> {
        if must.count_ones() as usize > n || must & !allowed != 0 {
            return None;
        }
        let mut allowed = allowed;
        // every tuple member is joined to each required vertex
        for m in Bits128(must) {
            allowed &= self.adjacent_mask(m) | (1 << m);
        }
        let mut chosen = Vec::with_capacity(n);
        self.transitive_rec(n, allowed, must, &mut chosen)
            .then_some(chosen)
    }

    fn transitive_rec(&self, n: usize, cand: u128, must: u128, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == n {
            return must == 0;
        }
        let need = n - chosen.len();
        if (cand.count_ones() as usize) < need || must & !cand != 0 {
            return false;
        }
        for v in Bits128(cand) {
            chosen.push(v);
            let next = cand & self.out[v] & !(1u128 << v);
            if self.transitive_rec(n, next, must & !(1 << v), chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    pub fn digraph_independent(&self, m: usize) -> bool {
        self.find_independent(m).is_some()
    }

    /// Lexicographically least set of `m` vertices with no arc between any two.
    pub fn find_independent(&self, m: usize) -> Option<Vec<usize>> {
        self.independent_in(m, self.vertex_mask(), 0)
    }

    /// Independent `m`-set inside `allowed` containing all of `must`.
    pub fn independent_in(&self, m: usize, allowed: u128, must: u128) -> Option<Vec<usize>> {
        if must.count_ones() as usize > m || must & !allowed != 0 {
            return None;
        }
        let mut cand = allowed & !must;
        for v in Bits128(must) {
            if self.adjacent_mask(v) & must != 0 {
                return None;
            }
            cand &= !self.adjacent_mask(v);
        }
        let mut chosen = Vec::with_capacity(m);
        if self.independent_rec(m - must.count_ones() as usize, cand, &mut chosen) {
            chosen.extend(Bits128(must));
            chosen.sort_unstable();
            Some(chosen)
        } else {
            None
        }
    }

    fn independent_rec(&self, k: usize, cand: u128, chosen: &mut Vec<usize>) -> bool {
        if k == 0 {
            return true;
        }
        if (cand.count_ones() as usize) < k {
            return false;
        }
        let mut rest = cand;
        while (rest.count_ones() as usize) >= k {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            chosen.push(v);
            if self.independent_rec(k - 1, rest & !self.adjacent_mask(v), chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}
