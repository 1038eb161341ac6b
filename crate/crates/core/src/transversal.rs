//! Balanced independent transversals: an independent set meeting at least
//! `m` classes of a partitioned graph in at least `ell` vertices each.

use std::sync::Mutex;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::augment::{ArcState, Augmenter};
use crate::bitset::VertexSet;
use crate::budget::{Budget, Meter};
use crate::constructions::{layered_from_digraph, LayeredParams, PartitionedGraph};
use crate::digraph::BitDigraph;
use crate::error::{Error, Result};
use crate::graph::UGraph;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalQuery {
    pub m: usize,
    pub ell: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Found,
    None,
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalResult {
    pub status: Status,
    pub witness: Option<Vec<usize>>,
    /// Witness members per class.
    pub profile: Vec<usize>,
    pub nodes_explored: u64,
}

impl TransversalResult {
    /// Checks the witness against the graph: independent, and at least
    /// `q.m` classes hit at least `q.ell` times.
    pub fn verify(&self, pg: &PartitionedGraph, q: &TransversalQuery) -> bool {
        match (&self.status, &self.witness) {
            (Status::Found, Some(w)) => {
                let set = VertexSet::from_iter_in(pg.order(), w.iter().copied());
                set.len() == w.len()
                    && pg.graph.is_independent(&set)
                    && profile_of(pg, &set) == self.profile
                    && self.profile.iter().filter(|&&c| c >= q.ell).count() >= q.m
            }
            (Status::Found, None) => false,
            (_, w) => w.is_none(),
        }
    }
}

pub fn profile_of(pg: &PartitionedGraph, set: &VertexSet) -> Vec<usize> {
    pg.classes.iter().map(|c| c.intersection_len(set)).collect()
}

/// Upper bound on the independence number of `g[s]` from a greedy clique
/// cover.
fn alpha_upper(g: &UGraph, s: &VertexSet) -> usize {
    let mut rest = s.clone();
    let mut cliques = 0;
    while let Some(v) = rest.first() {
        rest.remove(v);
        let mut common = rest.intersection(g.neighbors(v));
        while let Some(u) = common.first() {
            rest.remove(u);
            common.remove(u);
            common.intersect_with(g.neighbors(u));
        }
        cliques += 1;
    }
    cliques
}

fn capacity_ok(g: &UGraph, s: &VertexSet, need: usize) -> bool {
    s.len() >= need && (need <= 1 || alpha_upper(g, s) >= need)
}

struct Inner<'a> {
    g: &'a UGraph,
    ell: usize,
    meter: &'a Meter,
}

impl Inner<'_> {
    /// `avail[i]` holds the still-usable vertices of chosen class `i`; the
    /// current class is `avail[0]` and `taken` members of it are picked.
    fn search(&self, avail: &[VertexSet], taken: usize, picked: &mut Vec<usize>) -> bool {
        let Some((cur, rest)) = avail.split_first() else {
            return true;
        };
        let need = self.ell - taken;
        let mut cur = cur.clone();
        while cur.len() >= need {
            if !self.meter.tick() {
                return false;
            }
            let v = cur.first().expect("nonempty");
            cur.remove(v);
            let nb = self.g.neighbors(v);
            let here = cur.difference(nb);
            let later: Vec<VertexSet> = rest.iter().map(|s| s.difference(nb)).collect();
            if !capacity_ok(self.g, &here, need - 1)
                || !later.iter().all(|s| capacity_ok(self.g, s, self.ell))
            {
                continue;
            }
            picked.push(v);
            let found = if need == 1 {
                self.search(&later, 0, picked)
            } else {
                let mut next = Vec::with_capacity(avail.len());
                next.push(here);
                next.extend(later);
                self.search(&next, taken + 1, picked)
            };
            if found {
                return true;
            }
            picked.pop();
        }
        false
    }
}

fn validate(q: &TransversalQuery) -> Result<()> {
    if q.m == 0 || q.ell == 0 {
        return Err(Error::InvalidArgument("m and ell must be at least 1".into()));
    }
    Ok(())
}

/// Independent set hitting exactly the classes in `chosen` with `ell`
/// vertices each, if one exists.
fn search_classes(
    pg: &PartitionedGraph,
    chosen: &[usize],
    ell: usize,
    meter: &Meter,
) -> Option<Vec<usize>> {
    let avail: Vec<VertexSet> = chosen.iter().map(|&c| pg.classes[c].clone()).collect();
    if !avail.iter().all(|s| capacity_ok(&pg.graph, s, ell)) {
        return None;
    }
    let inner = Inner {
        g: &pg.graph,
        ell,
        meter,
    };
    let mut picked = Vec::new();
    inner.search(&avail, 0, &mut picked).then(|| {
        picked.sort_unstable();
        picked
    })
}

fn solve(pg: &PartitionedGraph, q: &TransversalQuery, meter: &Meter) -> TransversalResult {
    let r = pg.class_count();
    let witness = if q.m > r {
        None
    } else {
        let subsets: Vec<Vec<usize>> = (0..r).combinations(q.m).collect();
        par::find_first(subsets, |s| search_classes(pg, &s, q.ell, meter))
    };
    let status = match (&witness, meter.exhausted()) {
        (Some(_), _) => Status::Found,
        (None, true) => Status::Budget,
        (None, false) => Status::None,
    };
    let profile = match &witness {
        Some(w) => profile_of(pg, &VertexSet::from_iter_in(pg.order(), w.iter().copied())),
        None => vec![0; r],
    };
    TransversalResult {
        status,
        witness,
        profile,
        nodes_explored: meter.nodes(),
    }
}

/// Exact search: class subsets of size `m` in lexicographic order, then
/// `ell` independent vertices from each chosen class, pruning when a
/// chosen class can no longer supply `ell` independent vertices.
pub fn find_transversal(
    pg: &PartitionedGraph,
    q: &TransversalQuery,
    budget: &Budget,
) -> Result<TransversalResult> {
    validate(q)?;
    let meter = budget.meter();
    Ok(solve(pg, q, &meter))
}

/// Number of `m`-subsets of classes that admit a transversal.
pub fn feasible_subsets(pg: &PartitionedGraph, q: &TransversalQuery) -> usize {
    let meter = Budget::UNLIMITED.meter();
    let subsets: Vec<Vec<usize>> = (0..pg.class_count()).combinations(q.m).collect();
    par::map(subsets, |s| search_classes(pg, &s, q.ell, &meter).is_some())
        .into_iter()
        .filter(|&b| b)
        .count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileBound {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub nodes: u64,
}

/// Largest `m` for which a transversal with `ell` vertices per class
/// exists, probing downwards from the number of classes. On budget
/// exhaustion the bracket `[lower, upper]` is returned with `exact = false`.
pub fn max_profile(pg: &PartitionedGraph, ell: usize, budget: &Budget) -> Result<ProfileBound> {
    validate(&TransversalQuery { m: 1, ell })?;
    let meter = budget.meter();
    let r = pg.class_count();
    for m in (1..=r).rev() {
        let res = solve(pg, &TransversalQuery { m, ell }, &meter);
        match res.status {
            Status::Found => {
                return Ok(ProfileBound {
                    lower: m,
                    upper: m,
                    exact: true,
                    nodes: meter.nodes(),
                })
            }
            Status::Budget => {
                return Ok(ProfileBound {
                    lower: 0,
                    upper: m,
                    exact: false,
                    nodes: meter.nodes(),
                })
            }
            Status::None => {}
        }
    }
    Ok(ProfileBound {
        lower: 0,
        upper: 0,
        exact: true,
        nodes: meter.nodes(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Random,
    LocalSearch,
    Exhaustive,
}

/// Evidence about `N(n, m, ell)`: a verified counterexample with `r`
/// classes of size `class_size` shows `N > class_size`.
#[derive(Clone, Debug)]
pub struct NEstimate {
    pub n: usize,
    pub m: usize,
    pub ell: usize,
    pub r: usize,
    pub class_size: usize,
    pub best_counterexample: Option<PartitionedGraph>,
    pub instances_examined: u64,
    /// True when the exhaustive strategy covered every instance.
    pub exhaustive: bool,
}

impl NEstimate {
    /// Re-checks the counterexample, if any.
    pub fn verify(&self) -> bool {
        match &self.best_counterexample {
            None => true,
            Some(pg) => is_counterexample(pg, self.n, self.m, self.ell, self.r, self.class_size),
        }
    }
}

pub fn is_counterexample(
    pg: &PartitionedGraph,
    n: usize,
    m: usize,
    ell: usize,
    r: usize,
    class_size: usize,
) -> bool {
    pg.class_count() == r
        && pg.classes.iter().all(|c| c.len() == class_size)
        && !pg.graph.has_clique(n)
        && find_transversal(pg, &TransversalQuery { m, ell }, &Budget::UNLIMITED)
            .map(|r| r.status == Status::None)
            .unwrap_or(false)
}

/// Largest vertex count the exhaustive strategy will enumerate.
pub const EXHAUSTIVE_MAX_VERTICES: usize = 10;

/// Searches `K_n`-free graphs with `r` classes of size `class_size` for
/// one with no `(m, ell)` transversal.
#[allow(clippy::too_many_arguments)]
pub fn estimate_n(
    n: usize,
    m: usize,
    ell: usize,
    class_size: usize,
    r: usize,
    strategy: Strategy,
    budget: &Budget,
    rng_seed: u64,
) -> Result<NEstimate> {
    validate(&TransversalQuery { m, ell })?;
    if n < 2 || class_size == 0 || r == 0 {
        return Err(Error::InvalidArgument("need n >= 2, r >= 1 and N >= 1".into()));
    }
    let mut est = NEstimate {
        n,
        m,
        ell,
        r,
        class_size,
        best_counterexample: None,
        instances_examined: 0,
        exhaustive: false,
    };
    let meter = budget.meter();
    match strategy {
        Strategy::Exhaustive => exhaustive(&mut est, &meter)?,
        Strategy::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            while meter.tick() {
                est.instances_examined += 1;
                let pg = random_candidate(&mut rng, n, r, class_size);
                if is_counterexample(&pg, n, m, ell, r, class_size) {
                    est.best_counterexample = Some(pg);
                    break;
                }
            }
        }
        Strategy::LocalSearch => {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            est.best_counterexample = local_search(&mut rng, &mut est, &meter);
        }
    }
    Ok(est)
}

fn exhaustive(est: &mut NEstimate, meter: &Meter) -> Result<()> {
    let total = est.r * est.class_size;
    if total > EXHAUSTIVE_MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: format!("{total} vertices for exhaustive enumeration"),
            cap: EXHAUSTIVE_MAX_VERTICES,
        });
    }
    let n = est.n;
    let graphs: Mutex<Vec<(Vec<u8>, UGraph)>> = Mutex::new(Vec::new());
    let aug = Augmenter {
        states: &ArcState::SYMMETRIC,
        property: move |d: &BitDigraph, v: usize, newest: usize, allowed: u128| {
            d.transitive_tuple_in(n, allowed, 1u128 << v | 1u128 << newest)
                .is_some()
        },
        max_order: total,
        meter,
    };
    aug.run(|visit| {
        if visit.digraph.order() == total {
            graphs
                .lock()
                .expect("poisoned")
                .push((visit.canon.bytes(), visit.digraph.underlying()));
        }
        true
    });
    if meter.exhausted() {
        return Ok(());
    }
    let mut graphs = graphs.into_inner().expect("poisoned");
    graphs.sort_by(|a, b| a.0.cmp(&b.0));
    let partitions = balanced_partitions(total, est.class_size);
    est.instances_examined = (graphs.len() * partitions.len()) as u64;
    let q = TransversalQuery {
        m: est.m,
        ell: est.ell,
    };
    let found = par::find_first(graphs, |(_, g)| {
        partitions.iter().find_map(|classes| {
            let pg = PartitionedGraph::new(g.clone(), classes.clone()).ok()?;
            let res = find_transversal(&pg, &q, &Budget::UNLIMITED).ok()?;
            (res.status == Status::None).then_some(pg)
        })
    });
    est.best_counterexample = found;
    est.exhaustive = true;
    Ok(())
}

/// All partitions of `0..total` into unordered classes of size `size`, each
/// class listed ascending and classes ordered by their least element.
pub fn balanced_partitions(total: usize, size: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        left: Vec<usize>,
        size: usize,
        acc: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let Some((&first, rest)) = left.split_first() else {
            out.push(acc.clone());
            return;
        };
        for others in rest.iter().copied().combinations(size - 1) {
            let mut class = vec![first];
            class.extend(&others);
            let remaining = rest.iter().copied().filter(|v| !others.contains(v)).collect();
            acc.push(class);
            rec(remaining, size, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if size > 0 && total.is_multiple_of(size) {
        rec((0..total).collect(), size, &mut Vec::new(), &mut out);
    }
    out
}

/// Adds `uv` unless it would complete a `K_n`.
fn add_if_kfree(g: &mut UGraph, n: usize, u: usize, v: usize) -> bool {
    if u == v || g.has_edge(u, v) {
        return false;
    }
    let common = g.neighbors(u).intersection(g.neighbors(v));
    if n >= 2 && g.find_clique_within(n - 2, &common).is_some() {
        return false;
    }
    g.add_edge(u, v);
    true
}

/// A random `K_n`-free candidate: either a layered blowup of a random digraph
/// with no transitive `n`-set, topped up with random edges, or a random
/// greedy `K_n`-free graph on a random balanced partition.
pub fn random_candidate<R: Rng>(rng: &mut R, n: usize, r: usize, size: usize) -> PartitionedGraph {
    let total = r * size;
    if rng.gen_bool(0.5) && r <= 128 {
        let mut d = BitDigraph::new(r);
        let p: f64 = rng.gen_range(0.2..0.8);
        for i in 0..r {
            for j in 0..r {
                if i != j && rng.gen_bool(p) {
                    d.add_arc(i, j);
                }
            }
        }
        while let Some(t) = d.find_transitive_tuple(n) {
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            d.remove_arc(t[i], t[j]);
        }
        let mut pg = layered_from_digraph(&LayeredParams {
            digraph: d,
            depth: size,
        })
        .expect("depth is positive");
        for _ in 0..rng.gen_range(0..=total) {
            let (u, v) = (rng.gen_range(0..total), rng.gen_range(0..total));
            add_if_kfree(&mut pg.graph, n, u, v);
        }
        pg
    } else {
        let mut g = UGraph::new(total);
        let mut pairs: Vec<(usize, usize)> = (0..total).tuple_combinations().collect();
        pairs.shuffle(rng);
        let keep = rng.gen_range(0..=pairs.len());
        for &(u, v) in &pairs[..keep] {
            add_if_kfree(&mut g, n, u, v);
        }
        let mut perm: Vec<usize> = (0..total).collect();
        perm.shuffle(rng);
        let classes = perm.chunks(size).map(|c| c.to_vec()).collect();
        PartitionedGraph::new(g, classes).expect("chunks partition the vertices")
    }
}

fn local_search<R: Rng>(rng: &mut R, est: &mut NEstimate, meter: &Meter) -> Option<PartitionedGraph> {
    const PATIENCE: usize = 200;
    let q = TransversalQuery {
        m: est.m,
        ell: est.ell,
    };
    let total = est.r * est.class_size;
    'restart: while !meter.stopped() {
        let mut cur = random_candidate(rng, est.n, est.r, est.class_size);
        let mut score = feasible_subsets(&cur, &q);
        let mut stale = 0;
        while stale < PATIENCE {
            if !meter.tick() {
                break 'restart;
            }
            est.instances_examined += 1;
            if score == 0 {
                return Some(cur);
            }
            let (u, v) = (rng.gen_range(0..total), rng.gen_range(0..total));
            if u == v {
                continue;
            }
            let mut next = cur.clone();
            if next.graph.has_edge(u, v) {
                next.graph.remove_edge(u, v);
            } else if !add_if_kfree(&mut next.graph, est.n, u, v) {
                stale += 1;
                continue;
            }
            let s = feasible_subsets(&next, &q);
            if s < score {
                stale = 0;
            } else {
                stale += 1;
            }
            if s <= score {
                cur = next;
                score = s;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{tensor, tensor_fibres};

    fn q(m: usize, ell: usize) -> TransversalQuery {
        TransversalQuery { m, ell }
    }

    fn run(pg: &PartitionedGraph, m: usize, ell: usize) -> TransversalResult {
        let r = find_transversal(pg, &q(m, ell), &Budget::UNLIMITED).unwrap();
        assert!(r.verify(pg, &q(m, ell)));
        r
    }

    #[test]
    fn empty_graph_takes_everything() {
        let pg = PartitionedGraph::new(
            UGraph::empty(9),
            vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]],
        )
        .unwrap();
        let r = run(&pg, 3, 3);
        assert_eq!(r.status, Status::Found);
        assert_eq!(r.witness.unwrap(), (0..9).collect::<Vec<_>>());
        assert_eq!(r.profile, vec![3, 3, 3]);
    }

    fn split_fibres(n: usize, t: usize, parts: usize) -> PartitionedGraph {
        let g = tensor(&UGraph::complete(n), &UGraph::empty(t));
        let classes = tensor_fibres(n, t)
            .into_iter()
            .flat_map(|f| {
                let per = t / parts;
                (0..parts)
                    .map(|i| {
                        let end = if i + 1 == parts { t } else { (i + 1) * per };
                        f[i * per..end].to_vec()
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        PartitionedGraph::new(g, classes).unwrap()
    }

    #[test]
    fn tensor_blowup_meets_at_most_two_classes() {
        let pg = split_fibres(3, 4, 2);
        assert_eq!(pg.class_count(), 6);
        assert_eq!(run(&pg, 3, 1).status, Status::None);
        assert_eq!(run(&pg, 2, 2).status, Status::Found);
    }

    #[test]
    fn layered_cycle_two_layers() {
        let pg = layered_from_digraph(&LayeredParams {
            digraph: BitDigraph::directed_cycle(3),
            depth: 3,
        })
        .unwrap();
        let r = run(&pg, 2, 1);
        assert_eq!(r.status, Status::Found);
        assert_eq!(r.witness.unwrap(), vec![0, 3]);
    }

    #[test]
    fn max_profile_trivial_cases() {
        let e = PartitionedGraph::new(UGraph::empty(6), vec![vec![0, 1], vec![2, 3], vec![4, 5]])
            .unwrap();
        let b = max_profile(&e, 2, &Budget::UNLIMITED).unwrap();
        assert_eq!((b.lower, b.exact), (3, true));

        let k = PartitionedGraph::new(UGraph::complete(4), (0..4).map(|v| vec![v]).collect())
            .unwrap();
        assert_eq!(max_profile(&k, 1, &Budget::UNLIMITED).unwrap().lower, 1);
        assert_eq!(max_profile(&k, 2, &Budget::UNLIMITED).unwrap().lower, 0);
    }

    #[test]
    fn budget_is_reported() {
        let pg = split_fibres(4, 8, 3);
        let r = find_transversal(&pg, &q(4, 2), &Budget::nodes(5)).unwrap();
        assert_eq!(r.status, Status::Budget);
        assert!(r.witness.is_none());
        let b = max_profile(&pg, 2, &Budget::nodes(5)).unwrap();
        assert!(!b.exact && b.lower <= b.upper);
    }

    #[test]
    fn rejects_zero_query() {
        let pg = PartitionedGraph::new(UGraph::empty(1), vec![vec![0]]).unwrap();
        assert!(find_transversal(&pg, &q(0, 1), &Budget::UNLIMITED).is_err());
        assert!(find_transversal(&pg, &q(1, 0), &Budget::UNLIMITED).is_err());
    }

    #[test]
    fn partitions_counted() {
        assert_eq!(balanced_partitions(4, 1).len(), 1);
        assert_eq!(balanced_partitions(8, 2).len(), 105);
        assert_eq!(balanced_partitions(6, 3).len(), 10);
        assert!(balanced_partitions(5, 2).is_empty());
    }

    #[test]
    fn estimate_singletons_has_no_counterexample() {
        let est = estimate_n(3, 2, 1, 1, 4, Strategy::Exhaustive, &Budget::UNLIMITED, 0).unwrap();
        assert!(est.exhaustive);
        assert!(est.best_counterexample.is_none());
        assert!(est.instances_examined > 0);
    }

    #[test]
    fn random_candidates_are_kn_free_and_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let pg = random_candidate(&mut rng, 3, 4, 3);
            assert!(!pg.graph.has_clique(3));
            assert!(pg.is_balanced());
            assert_eq!(pg.class_count(), 4);
        }
    }

    #[test]
    fn heuristic_strategies_return_verified_evidence() {
        for s in [Strategy::Random, Strategy::LocalSearch] {
            let est = estimate_n(3, 2, 2, 2, 4, s, &Budget::nodes(300), 5).unwrap();
            assert!(est.verify());
            assert!(!est.exhaustive);
        }
    }
}
