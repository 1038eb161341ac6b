//! Isomorph-free generation of hereditary digraph families by canonical
//! augmentation.
//!
//! A child is produced from a parent on `k` vertices by appending vertex `k`
//! and choosing one arc state against every earlier vertex. The child is
//! accepted only when the appended vertex lies in the automorphism orbit of
//! the child's canonical deletion vertex; isomorphic siblings are merged.
//! Every isomorphism class of the family is then visited exactly once,
//! provided the family is closed under vertex deletion.

use std::collections::HashSet;

use crate::bitset::Bits128;
use crate::budget::Meter;
use crate::canon::{canonical_form_coloured, Canon};
use crate::digraph::{BitDigraph, MAX_DIGRAPH_ORDER};
use crate::par;

/// State of the pair (earlier vertex `j`, new vertex `v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArcState {
    None,
    /// `j -> v`
    Forward,
    /// `v -> j`
    Backward,
    /// both arcs
    Both,
}

impl ArcState {
    /// All four states in pruning order.
    pub const ALL: [ArcState; 4] = [
        ArcState::None,
        ArcState::Forward,
        ArcState::Backward,
        ArcState::Both,
    ];
    /// Oriented graphs only (no 2-cycles).
    pub const ORIENTED: [ArcState; 3] = [ArcState::None, ArcState::Forward, ArcState::Backward];
    /// Undirected graphs encoded as symmetric digraphs.
    pub const SYMMETRIC: [ArcState; 2] = [ArcState::None, ArcState::Both];

    fn apply(self, d: &mut BitDigraph, j: usize, v: usize) {
        match self {
            ArcState::None => {}
            ArcState::Forward => d.add_arc(j, v),
            ArcState::Backward => d.add_arc(v, j),
            ArcState::Both => {
                d.add_arc(j, v);
                d.add_arc(v, j);
            }
        }
    }
}

/// A digraph property closed under taking induced subdigraphs.
pub trait Hereditary: Sync {
    /// `d` has arcs between the new vertex `v` and every vertex of `allowed`
    /// already decided; `newest` is the latest decided vertex (or `v` itself
    /// right after `v` was appended). Return true when some forbidden
    /// configuration lies inside `allowed` and uses both `v` and `newest`.
    fn violated(&self, d: &BitDigraph, v: usize, newest: usize, allowed: u128) -> bool;
}

/// No forbidden structure: every digraph.
pub struct AllDigraphs;

impl Hereditary for AllDigraphs {
    fn violated(&self, _: &BitDigraph, _: usize, _: usize, _: u128) -> bool {
        false
    }
}

impl<F> Hereditary for F
where
    F: Fn(&BitDigraph, usize, usize, u128) -> bool + Sync,
{
    fn violated(&self, d: &BitDigraph, v: usize, newest: usize, allowed: u128) -> bool {
        self(d, v, newest, allowed)
    }
}

/// One visited isomorphism class.
pub struct Visit<'a> {
    pub digraph: &'a BitDigraph,
    pub canon: &'a Canon,
}

pub struct Augmenter<'a, P: Hereditary> {
    pub states: &'a [ArcState],
    pub property: P,
    pub max_order: usize,
    pub meter: &'a Meter,
}

impl<P: Hereditary> Augmenter<'_, P> {
    /// Visits every class up to `max_order`, starting from the empty digraph.
    /// `visit` returns false to stop descending below that class.
    pub fn run<F>(&self, visit: F)
    where
        F: Fn(Visit<'_>) -> bool + Sync,
    {
        let root = BitDigraph::new(0);
        let canon = vertex_invariant_canon(&root);
        if visit(Visit {
            digraph: &root,
            canon: &canon,
        }) {
            self.expand(root, &visit);
        }
    }

    /// Children of `parent` accepted by canonical augmentation, in
    /// generation order.
    pub fn children(&self, parent: &BitDigraph) -> Vec<(BitDigraph, Canon)> {
        let k = parent.order();
        if k >= self.max_order.min(MAX_DIGRAPH_ORDER) {
            return Vec::new();
        }
        let mut child = parent.clone();
        let v = child.push_vertex();
        if self.property.violated(&child, v, v, 1 << v) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        self.assign(&mut child, v, 0, &mut out, &mut seen);
        out
    }

    fn assign(
        &self,
        d: &mut BitDigraph,
        v: usize,
        j: usize,
        out: &mut Vec<(BitDigraph, Canon)>,
        seen: &mut HashSet<Vec<u128>>,
    ) {
        if self.meter.stopped() {
            return;
        }
        if j == v {
            if let Some(c) = accept(d, v) {
                if seen.insert(c.rows.clone()) {
                    out.push((d.clone(), c));
                }
            }
            return;
        }
        let allowed = ((1u128 << (j + 1)) - 1) | (1 << v);
        for &s in self.states {
            s.apply(d, j, v);
            if !self.property.violated(d, v, j, allowed) {
                self.assign(d, v, j + 1, out, seen);
            }
            d.remove_arc(j, v);
            d.remove_arc(v, j);
        }
    }

    fn expand<F>(&self, parent: BitDigraph, visit: &F)
    where
        F: Fn(Visit<'_>) -> bool + Sync,
    {
        if !self.meter.tick() {
            return;
        }
        let kids = self.children(&parent);
        par::for_each(kids, |(child, canon)| {
            if self.meter.stopped() {
                return;
            }
            if visit(Visit {
                digraph: &child,
                canon: &canon,
            }) {
                self.expand(child, visit);
            }
        });
    }
}

/// Colour by (out-degree, in-degree, 2-cycle count); used both to pick the
/// deletion vertex and as the class key.
fn invariant(d: &BitDigraph, x: usize) -> u32 {
    let o = d.out_mask(x);
    let i = d.in_mask(x);
    (o.count_ones() << 16) | (i.count_ones() << 8) | (o & i).count_ones()
}

pub fn vertex_invariant_canon(d: &BitDigraph) -> Canon {
    let colours: Vec<u32> = (0..d.order()).map(|x| invariant(d, x)).collect();
    canonical_form_coloured(d, &colours)
}

/// Canonical-deletion test: returns the child's canonical form when `v` is
/// equivalent to the vertex placed last by the invariant-coloured labelling.
fn accept(d: &BitDigraph, v: usize) -> Option<Canon> {
    let n = d.order();
    let colours: Vec<u32> = (0..n).map(|x| invariant(d, x)).collect();
    let top = *colours.iter().max().expect("child has a vertex");
    if colours[v] != top {
        return None;
    }
    let canon = canonical_form_coloured(d, &colours);
    let w = canon.lab[n - 1];
    if w == v || colours.iter().filter(|&&c| c == top).count() == 1 {
        return Some(canon);
    }
    let mut cv = colours.clone();
    cv[v] = u32::MAX;
    let mut cw = colours;
    cw[w] = u32::MAX;
    (canonical_form_coloured(d, &cv).rows == canonical_form_coloured(d, &cw).rows).then_some(canon)
}

/// Mask helper for callers building `Hereditary` checks.
pub fn mask_iter(m: u128) -> Bits128 {
    Bits128(m)
}
