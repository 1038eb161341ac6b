//! Witness graphs: layered blowups of digraphs, bipartite families, tensor
//! blowups, shift graphs, and finite truncations of the extension-property
//! constructions.

use std::collections::HashMap;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::digraph::BitDigraph;
use crate::error::{Error, Result};
use crate::graph::UGraph;

/// A graph with an ordered list of disjoint classes covering its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedGraph {
    pub graph: UGraph,
    pub classes: Vec<VertexSet>,
}

/// JSON sidecar for the classes of a [`PartitionedGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesFile {
    pub classes: Vec<Vec<usize>>,
}

impl PartitionedGraph {
    pub fn new(graph: UGraph, classes: Vec<Vec<usize>>) -> Result<Self> {
        let n = graph.order();
        let mut seen = VertexSet::new(n);
        let mut sets = Vec::with_capacity(classes.len());
        for class in classes {
            let mut s = VertexSet::new(n);
            for v in class {
                if v >= n {
                    return Err(Error::InvalidArgument(format!("class vertex {v} out of range")));
                }
                if seen.contains(v) {
                    return Err(Error::InvalidArgument(format!("vertex {v} in two classes")));
                }
                seen.insert(v);
                s.insert(v);
            }
            sets.push(s);
        }
        if seen.len() != n {
            return Err(Error::InvalidArgument("classes do not cover every vertex".into()));
        }
        Ok(PartitionedGraph {
            graph,
            classes: sets,
        })
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(v))
    }

    pub fn sidecar(&self) -> ClassesFile {
        ClassesFile {
            classes: self.classes.iter().map(|c| c.to_vec()).collect(),
        }
    }

    pub fn from_sidecar(graph: UGraph, file: ClassesFile) -> Result<Self> {
        Self::new(graph, file.classes)
    }

    /// True when all classes have the same size.
    pub fn is_balanced(&self) -> bool {
        self.classes.iter().map(|c| c.len()).all_equal()
    }
}

#[derive(Clone, Debug)]
pub struct LayeredParams {
    pub digraph: BitDigraph,
    pub depth: usize,
}

/// Vertex `(i, s)` of the layered graph, `i` a digraph vertex and `s < depth`.
pub fn layered_index(depth: usize, i: usize, s: usize) -> usize {
    i * depth + s
}

/// Blows each digraph vertex up into `depth` copies; `(i,s)` and `(j,u)`
/// are adjacent when `i -> j` and `s < u` (or symmetrically). A digraph
/// with no transitive `n`-set yields a `K_n`-free graph.
pub fn layered_from_digraph(spec: &LayeredParams) -> Result<PartitionedGraph> {
    if spec.depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let (r, t) = (spec.digraph.order(), spec.depth);
    let mut g = UGraph::new(r * t);
    for (i, j) in spec.digraph.arcs() {
        for s in 0..t {
            for u in s + 1..t {
                g.add_edge(layered_index(t, i, s), layered_index(t, j, u));
            }
        }
    }
    let classes = (0..r)
        .map(|i| (0..t).map(|s| layered_index(t, i, s)).collect())
        .collect();
    PartitionedGraph::new(g, classes)
}

fn bipartite(k: usize, adjacent: impl Fn(usize, usize) -> bool) -> PartitionedGraph {
    let mut g = UGraph::new(2 * k);
    for a in 0..k {
        for b in 0..k {
            if adjacent(a, b) {
                g.add_edge(a, k + b);
            }
        }
    }
    PartitionedGraph::new(g, vec![(0..k).collect(), (k..2 * k).collect()])
        .expect("two sides partition the vertices")
}

/// `H_{k,k}`: `(0,a)` is vertex `a`, `(1,b)` is `k + b`, adjacent iff `a < b`.
pub fn half_graph(k: usize) -> PartitionedGraph {
    bipartite(k, |a, b| a < b)
}

pub fn complete_bipartite(k: usize) -> PartitionedGraph {
    bipartite(k, |_, _| true)
}

pub fn empty_bipartite(k: usize) -> PartitionedGraph {
    bipartite(k, |_, _| false)
}

/// `G ⊗ H` on `V(G) × V(H)`, vertex `(u,v)` at `u·|H| + v`: adjacent when in
/// the same fibre along an `H`-edge, or across fibres along a `G`-edge.
pub fn tensor(g: &UGraph, h: &UGraph) -> UGraph {
    let k = h.order();
    let mut out = UGraph::new(g.order() * k);
    for u in 0..g.order() {
        for (v, w) in h.edges() {
            out.add_edge(u * k + v, u * k + w);
        }
    }
    for (u, x) in g.edges() {
        for v in 0..k {
            for w in 0..k {
                out.add_edge(u * k + v, x * k + w);
            }
        }
    }
    out
}

/// Fibres `{u} × V(H)` of a tensor product, in order.
pub fn tensor_fibres(g_order: usize, h_order: usize) -> Vec<Vec<usize>> {
    (0..g_order)
        .map(|u| (u * h_order..(u + 1) * h_order).collect())
        .collect()
}

/// `tensor(K_n, E_t)` with each fibre cut into `parts` consecutive classes
/// whose sizes differ by at most one.
pub fn split_blowup(n: usize, t: usize, parts: usize) -> Result<PartitionedGraph> {
    if parts == 0 || parts > t {
        return Err(Error::InvalidArgument(format!(
            "cannot split fibres of size {t} into {parts} classes"
        )));
    }
    let graph = tensor(&UGraph::complete(n), &UGraph::empty(t));
    let classes = tensor_fibres(n, t)
        .into_iter()
        .flat_map(|f| {
            let (q, r) = (t / parts, t % parts);
            let mut start = 0;
            (0..parts)
                .map(|i| {
                    let len = q + usize::from(i < r);
                    let c = f[start..start + len].to_vec();
                    start += len;
                    c
                })
                .collect::<Vec<_>>()
        })
        .collect();
    PartitionedGraph::new(graph, classes)
}

pub const SHIFT_VERTEX_CAP: usize = 1 << 16;

/// The `n`-subsets of `0..big_n` in lexicographic order, as used for the
/// vertices of [`shift_graph`].
pub fn shift_vertices(n: usize, big_n: usize) -> Vec<Vec<usize>> {
    (0..big_n).combinations(n).collect()
}

/// Shift graph: vertices are the `n`-subsets of `0..big_n`; `p` and `q` are
/// adjacent when `p = {x_0..x_{n-1}}` and `q = {x_1..x_n}` for an ascending
/// chain `x_0 < … < x_n`.
pub fn shift_graph(n: usize, big_n: usize) -> Result<UGraph> {
    if n < 2 || big_n < n {
        return Err(Error::InvalidArgument(format!("need N >= n >= 2, got n={n} N={big_n}")));
    }
    let count = binomial(big_n, n);
    if count.is_none_or(|c| c > SHIFT_VERTEX_CAP) {
        return Err(Error::CapExceeded {
            what: format!("C({big_n},{n}) shift graph vertices"),
            cap: SHIFT_VERTEX_CAP,
        });
    }
    let verts = shift_vertices(n, big_n);
    let index: HashMap<&[usize], usize> = verts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let mut g = UGraph::new(verts.len());
    let mut q = vec![0; n];
    for (i, p) in verts.iter().enumerate() {
        q[..n - 1].copy_from_slice(&p[1..]);
        for top in p[n - 1] + 1..big_n {
            q[n - 1] = top;
            g.add_edge(i, index[q.as_slice()]);
        }
    }
    Ok(g)
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    let k = k.min(n - k);
    (0..k).try_fold(1usize, |acc, i| Some(acc.checked_mul(n - i)? / (i + 1)))
}

/// Disjoint pairs `(A, B)` of subsets of `0..universe` with
/// `|A ∪ B| <= max_size`, ordered by `|A ∪ B|`, then by the union in
/// lexicographic order, then by the membership mask (bit set = in `B`).
pub fn disjoint_pairs(
    universe: usize,
    max_size: usize,
) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    let top = max_size.min(universe).min(63);
    (0..=top).flat_map(move |s| {
        (0..universe).combinations(s).flat_map(move |u| {
            (0u64..1 << s).map(move |mask| {
                let (mut a, mut b) = (Vec::new(), Vec::new());
                for (bit, &v) in u.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        b.push(v);
                    } else {
                        a.push(v);
                    }
                }
                (a, b)
            })
        })
    })
}

fn is_kfree(g: &UGraph, k: usize, within: &[usize]) -> bool {
    k > within.len()
        || g.find_clique_within(k, &VertexSet::from_iter_in(g.order(), within.iter().copied()))
            .is_none()
}

/// Whether `v` witnesses the extension property for `(a, b)`.
pub fn extends(g: &UGraph, v: usize, a: &[usize], b: &[usize]) -> bool {
    !a.contains(&v)
        && !b.contains(&v)
        && b.iter().all(|&x| g.has_edge(v, x))
        && a.iter().all(|&x| !g.has_edge(v, x))
}

#[derive(Clone, Copy, Debug)]
pub struct HensonOptions {
    /// Largest `|A ∪ B|` handled per sweep.
    pub cap: usize,
    pub max_vertices: usize,
}

impl Default for HensonOptions {
    fn default() -> Self {
        HensonOptions {
            cap: 3,
            max_vertices: 1 << 14,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HensonApprox {
    pub graph: UGraph,
    /// Order of the graph at the start of each sweep.
    pub sweep_bases: Vec<usize>,
}

impl HensonApprox {
    /// Order before the last sweep: the vertex set over which the output is
    /// guaranteed to extend.
    pub fn last_base(&self) -> usize {
        self.sweep_bases.last().copied().unwrap_or(self.graph.order())
    }
}

/// Saturates a `K_n`-free seed towards the extension property of `H_n`:
/// each sweep visits every disjoint `(A, B)` over the vertices present at
/// its start with `|A ∪ B| <= cap` and `B` `K_{n-1}`-free, and adds a fresh
/// vertex adjacent to exactly `B` unless a witness already exists. Pairs
/// are visited in an order shuffled by `rng_seed`.
pub fn henson_approx(
    n: usize,
    rounds: usize,
    seed: &UGraph,
    rng_seed: u64,
    opts: &HensonOptions,
) -> Result<HensonApprox> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    if seed.has_clique(n) {
        return Err(Error::InvalidArgument(format!("seed graph contains K_{n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut g = seed.clone();
    let mut bases = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let base = g.order();
        bases.push(base);
        let mut pairs: Vec<_> = disjoint_pairs(base, opts.cap)
            .filter(|(_, b)| is_kfree(&g, n - 1, b))
            .collect();
        pairs.shuffle(&mut rng);
        for (a, b) in pairs {
            if (0..g.order()).any(|v| extends(&g, v, &a, &b)) {
                continue;
            }
            if g.order() >= opts.max_vertices {
                return Err(Error::CapExceeded {
                    what: "henson approximation vertices".into(),
                    cap: opts.max_vertices,
                });
            }
            let w = g.add_vertex();
            for &x in &b {
                g.add_edge(w, x);
            }
        }
    }
    Ok(HensonApprox {
        graph: g,
        sweep_bases: bases,
    })
}

/// First pair `(A, B)` over `0..base` (with `|A ∪ B| <= cap`, `B`
/// `K_{n-1}`-free) that has no witness in `g`.
pub fn extension_failure(
    g: &UGraph,
    n: usize,
    base: usize,
    cap: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    disjoint_pairs(base, cap)
        .filter(|(_, b)| is_kfree(g, n - 1, b))
        .find(|(a, b)| !(0..g.order()).any(|v| extends(g, v, a, b)))
}

/// Finite truncation of the partition extension: adds `pair_budget` fresh
/// vertices `W`, walks the first `pair_budget` disjoint pairs `(a_k, b_k)`
/// over `V(g) ∪ W`, and whenever `b_k` is `K_{n-1}`-free joins a so far
/// isolated, unused `W`-vertex outside `a_k ∪ b_k` to all of `b_k`.
/// Classes are `W ∪ a` and `b`; `g` stays an induced subgraph.
pub fn partition_extension_witness(
    g: &UGraph,
    a: &VertexSet,
    b: &VertexSet,
    n: usize,
    pair_budget: usize,
) -> Result<PartitionedGraph> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let base = g.order();
    if a.universe() != base || b.universe() != base || !a.is_disjoint(b) || a.len() + b.len() != base
    {
        return Err(Error::InvalidArgument("a and b must partition the vertices".into()));
    }
    if g.has_clique(n) {
        return Err(Error::InvalidArgument(format!("graph contains K_{n}")));
    }
    let mut h = g.clone();
    h.extend_vertices(pair_budget);
    let total = h.order();
    let mut used = vec![false; pair_budget];
    for (ak, bk) in disjoint_pairs(total, total).take(pair_budget) {
        if !is_kfree(&h, n - 1, &bk) {
            continue;
        }
        let pick = (0..pair_budget).find(|&i| {
            let w = base + i;
            !used[i] && h.degree(w) == 0 && !ak.contains(&w) && !bk.contains(&w)
        });
        let Some(i) = pick else { break };
        used[i] = true;
        for &x in &bk {
            h.add_edge(base + i, x);
        }
    }
    let v0 = (base..total).chain(a.iter()).sorted().collect();
    PartitionedGraph::new(h, vec![v0, b.to_vec()])
}

/// Vertex `(k, i)` of the Rado witness at the given depth.
pub fn rado_index(depth: usize, k: usize, i: usize) -> usize {
    i * depth + k
}

/// Finite truncation of the two-class Rado partition: the half graph on
/// rows `V_0, V_1` of length `depth`, plus edges `(m_j,0)–v` for `v ∈ a_j`,
/// where `(a_j, b_j)` runs over disjoint pairs of vertex sets and
/// `m_j = max{k : (k,i) ∈ a_j ∪ b_j} + m_{j-1}` with `m_{-1} = 1`. Stops
/// once `m_j` leaves the truncation.
pub fn rado_partition_witness(depth: usize) -> Result<PartitionedGraph> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let half = half_graph(depth);
    let mut g = half.graph;
    let total = 2 * depth;
    let mut m_prev = 1usize;
    for (a, b) in disjoint_pairs(total, total) {
        let top = a.iter().chain(&b).map(|&v| v % depth).max().unwrap_or(0);
        let m = top + m_prev;
        if m >= depth {
            break;
        }
        let hub = rado_index(depth, m, 0);
        for &v in &a {
            g.add_edge(hub, v);
        }
        m_prev = m;
    }
    PartitionedGraph::new(g, vec![(0..depth).collect(), (depth..total).collect()])
}
