mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use transversal_lab::budget::Budget;
use transversal_lab::constructions::{
    complete_bipartite, empty_bipartite, half_graph, henson_approx, HensonOptions, PartitionedGraph,
};
use transversal_lab::embed::*;
use transversal_lab::graph::UGraph;
use transversal_lab::VertexSet;

use common::*;

fn bipartite_from_bits(a: usize, b: usize, bits: u64) -> (UGraph, VertexSet, VertexSet) {
    let mut g = UGraph::new(a + b);
    for i in 0..a {
        for j in 0..b {
            if bits >> (i * b + j) & 1 == 1 {
                g.add_edge(i, a + j);
            }
        }
    }
    let sa = VertexSet::from_iter_in(a + b, 0..a);
    let sb = VertexSet::from_iter_in(a + b, a..a + b);
    (g, sa, sb)
}

fn order(g: &UGraph, a: &VertexSet, b: &VertexSet) -> HalfOrder {
    half_graph_order(g, a, b, &HalfOrderOptions::default()).unwrap()
}

#[test]
fn half_order_matches_brute_force_on_all_small_bipartite_graphs() {
    for a in 1..=4 {
        for b in 1..=4 {
            for bits in 0..1u64 << (a * b) {
                let (g, sa, sb) = bipartite_from_bits(a, b, bits);
                let got = order(&g, &sa, &sb);
                let av: Vec<usize> = sa.iter().collect();
                let bv: Vec<usize> = sb.iter().collect();
                assert!(got.exact);
                assert_eq!(got.order, naive_half_order(&g, &av, &bv), "{a}x{b} bits {bits:b}");
                assert!(got.witness.unwrap().verify(&g, &sa, &sb));
            }
        }
    }
}

#[test]
fn canonical_families() {
    for k in 1..=5 {
        let h = half_graph(k);
        assert_eq!(order(&h.graph, &h.classes[0], &h.classes[1]).order, k);
        let c = complete_bipartite(k);
        assert_eq!(order(&c.graph, &c.classes[0], &c.classes[1]).order, k);
        let e = empty_bipartite(k);
        assert_eq!(order(&e.graph, &e.classes[0], &e.classes[1]).order, 1);
    }
}

fn cross_empty(g: &UGraph, a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|&u| b.iter().all(|&v| !g.has_edge(u, v)))
}

/// Whether some `k`-subsets of the two sides span no edge.
fn naive_empty_biclique(g: &UGraph, a: &[usize], b: &[usize], k: usize) -> bool {
    let pick = |s: &[usize]| {
        subsets_of_size(s.len(), k)
            .into_iter()
            .map(|ix| ix.into_iter().map(|i| s[i]).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    };
    let bs = pick(b);
    pick(a).iter().any(|x| bs.iter().any(|y| cross_empty(g, x, y)))
}

fn check_verdict(g: &UGraph, sa: &VertexSet, sb: &VertexSet, k: usize) -> RichPairVerdict {
    let v = rich_pair_surrogate(g, sa, sb, k, &Budget::UNLIMITED).unwrap();
    let av: Vec<usize> = sa.iter().collect();
    let bv: Vec<usize> = sb.iter().collect();
    match &v {
        RichPairVerdict::EmptyPair { a, b } => {
            assert_eq!((a.len(), b.len()), (k, k));
            assert!(a.iter().all(|&x| sa.contains(x)) && b.iter().all(|&y| sb.contains(y)));
            assert!(cross_empty(g, a, b));
            if k >= 2 {
                assert!(naive_half_order(g, a, b) < k);
            }
        }
        RichPairVerdict::HalfGraph(w) => {
            assert_eq!(w.order(), k);
            assert!(w.verify(g, sa, sb));
            assert!(!naive_empty_biclique(g, &av, &bv, k));
        }
        RichPairVerdict::Inconclusive => {
            assert!(!naive_empty_biclique(g, &av, &bv, k));
            assert!(naive_half_order(g, &av, &bv) < k);
        }
    }
    v
}

#[test]
fn rich_pair_on_bipartite_families() {
    for k in 1..=3 {
        let pg = half_graph(2 * k);
        match check_verdict(&pg.graph, &pg.classes[0], &pg.classes[1], k) {
            // the top of one side against the bottom of the other is empty
            RichPairVerdict::EmptyPair { a, b } => {
                assert!(a.iter().min().unwrap() >= &(b.iter().max().unwrap() - 2 * k));
            }
            other => panic!("expected an empty pair, got {other:?}"),
        }
        let pg = complete_bipartite(2 * k);
        assert!(matches!(
            check_verdict(&pg.graph, &pg.classes[0], &pg.classes[1], k),
            RichPairVerdict::HalfGraph(_)
        ));
        let pg = empty_bipartite(2 * k);
        assert!(matches!(
            check_verdict(&pg.graph, &pg.classes[0], &pg.classes[1], k),
            RichPairVerdict::EmptyPair { .. }
        ));
    }
}

fn path3() -> BipartitePattern {
    BipartitePattern::new(1, 2, vec![(0, 0), (0, 1)]).unwrap()
}

#[test]
fn single_edge_patterns() {
    let edge = BipartitePattern::new(1, 1, vec![(0, 0)]).unwrap();
    let out = balanced_induced_embed(&half_graph(3), &edge, &Budget::UNLIMITED).unwrap();
    assert!(out.exact);
    assert!(out.report.unwrap().verify(&half_graph(3), &edge));
    let out = balanced_induced_embed(&empty_bipartite(3), &edge, &Budget::UNLIMITED).unwrap();
    assert!(out.exact);
    assert!(out.report.is_none());
}

#[test]
fn path_embeddings_into_henson_approximations_reverify() {
    let h = henson_approx(3, 2, &UGraph::empty(2), 1, &HensonOptions::default()).unwrap();
    let n = h.graph.order();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut found = 0;
    for _ in 0..20 {
        let mut verts: Vec<usize> = (0..n).collect();
        verts.shuffle(&mut rng);
        let (x, y) = verts.split_at(n / 2);
        let pg = PartitionedGraph::new(h.graph.clone(), vec![x.to_vec(), y.to_vec()]).unwrap();
        let out = balanced_induced_embed(&pg, &path3(), &Budget::UNLIMITED).unwrap();
        assert!(out.exact);
        if let Some(r) = out.report {
            assert_eq!(r.kind, EmbeddingKind::Induced);
            assert!(r.verify(&pg, &path3()));
            found += 1;
        }
    }
    assert!(found > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn half_order_matches_brute_force_at_five(bits in 0u64..1 << 25) {
        let (g, sa, sb) = bipartite_from_bits(5, 5, bits);
        let got = order(&g, &sa, &sb);
        prop_assert_eq!(got.order, naive_half_order(&g, &(0..5).collect::<Vec<_>>(), &(5..10).collect::<Vec<_>>()));
    }

    #[test]
    fn half_order_is_monotone_under_cross_edges(bits in 0u64..1 << 20, extra in 0usize..20) {
        let (g, sa, sb) = bipartite_from_bits(4, 5, bits);
        let mut h = g.clone();
        h.add_edge(extra / 5, 4 + extra % 5);
        prop_assert!(order(&g, &sa, &sb).order <= order(&h, &sa, &sb).order);
    }

    #[test]
    fn rich_pair_verdicts_are_consistent(bits in 0u64..1 << 25, k in 1usize..4) {
        let (g, sa, sb) = bipartite_from_bits(5, 5, bits);
        check_verdict(&g, &sa, &sb, k);
    }

    #[test]
    fn embedding_reports_reverify(bits in 0u64..1 << 16, seed in any::<u64>()) {
        let (g, sa, sb) = bipartite_from_bits(4, 4, bits);
        let mut full = g.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for u in 0..8 {
            for v in u + 1..8 {
                if (u < 4) == (v < 4) && rand::Rng::gen_bool(&mut rng, 0.3) {
                    full.add_edge(u, v);
                }
            }
        }
        let pg = PartitionedGraph::new(full, vec![sa.iter().collect(), sb.iter().collect()]).unwrap();
        let out = balanced_induced_embed(&pg, &path3(), &Budget::UNLIMITED).unwrap();
        if let Some(r) = out.report {
            prop_assert!(r.verify(&pg, &path3()));
        }
    }
}
