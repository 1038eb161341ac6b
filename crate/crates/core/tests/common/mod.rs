//! Brute-force oracles shared by the integration tests. Nothing here uses
//! the search code under test.

#![allow(dead_code)]

use transversal_lab::constructions::PartitionedGraph;
use transversal_lab::digraph::BitDigraph;
use transversal_lab::graph::UGraph;

/// All `k`-permutations of `items`.
pub fn permutations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest, k - 1) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

pub fn naive_transitive(d: &BitDigraph, n: usize) -> bool {
    let verts: Vec<usize> = (0..d.order()).collect();
    n <= d.order()
        && permutations(&verts, n).iter().any(|t| {
            (0..n).all(|i| (i + 1..n).all(|j| d.has_arc(t[i], t[j])))
        })
}

pub fn naive_independent(d: &BitDigraph, m: usize) -> bool {
    subsets_of_size(d.order(), m).iter().any(|s| {
        s.iter()
            .all(|&u| s.iter().all(|&v| u == v || !d.has_arc(u, v)))
    })
}

/// The labelled digraph whose pair `(i, j)`, `i < j`, takes state
/// `code` digit in base 4: 0 none, 1 `i -> j`, 2 `j -> i`, 3 both.
pub fn digraph_from_code(order: usize, mut code: u64) -> BitDigraph {
    let mut d = BitDigraph::new(order);
    for i in 0..order {
        for j in i + 1..order {
            let s = code % 4;
            code /= 4;
            if s & 1 == 1 {
                d.add_arc(i, j);
            }
            if s & 2 == 2 {
                d.add_arc(j, i);
            }
        }
    }
    d
}

pub fn labelled_count(order: usize) -> u64 {
    4u64.pow((order * order.saturating_sub(1) / 2) as u32)
}

/// Least `r` such that every digraph on `r` vertices has a transitive
/// `n`-set or an independent `m`-set, by labelled enumeration.
pub fn naive_dr(n: usize, m: usize, max_order: usize) -> Option<usize> {
    (0..=max_order).find(|&r| {
        (0..labelled_count(r)).all(|c| {
            let d = digraph_from_code(r, c);
            naive_transitive(&d, n) || naive_independent(&d, m)
        })
    })
}

/// Every independent set of `g`, including the empty one.
pub fn independent_sets(g: &UGraph) -> Vec<Vec<usize>> {
    fn rec(g: &UGraph, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for v in start..g.order() {
            if cur.iter().all(|&u| !g.has_edge(u, v)) {
                cur.push(v);
                rec(g, v + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(g, 0, &mut Vec::new(), &mut out);
    out
}

pub fn naive_alpha(g: &UGraph) -> usize {
    independent_sets(g).iter().map(|s| s.len()).max().unwrap_or(0)
}

/// Whether some independent set meets at least `m` classes in at least
/// `ell` vertices each.
pub fn naive_transversal(pg: &PartitionedGraph, m: usize, ell: usize) -> bool {
    independent_sets(&pg.graph).iter().any(|s| {
        pg.classes
            .iter()
            .filter(|c| s.iter().filter(|&&v| c.contains(v)).count() >= ell)
            .count()
            >= m
    })
}

/// Largest `k` with sequences `a_1..a_k` in `a`, `b_1..b_k` in `b` and
/// `a_i b_j` an edge whenever `i < j`.
pub fn naive_half_order(g: &UGraph, a: &[usize], b: &[usize]) -> usize {
    (0..=a.len().min(b.len()))
        .rev()
        .find(|&k| {
            let pb = permutations(b, k);
            permutations(a, k).iter().any(|sa| {
                pb.iter()
                    .any(|sb| (0..k).all(|i| (i + 1..k).all(|j| g.has_edge(sa[i], sb[j]))))
            })
        })
        .unwrap_or(0)
}

pub fn naive_has_clique(g: &UGraph, k: usize) -> bool {
    subsets_of_size(g.order(), k).iter().any(|s| {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    })
}

/// Whether `d` and `e` are isomorphic, by trying every permutation.
pub fn naive_isomorphic(d: &BitDigraph, e: &BitDigraph) -> bool {
    let n = d.order();
    if n != e.order() || d.arc_count() != e.arc_count() {
        return false;
    }
    let verts: Vec<usize> = (0..n).collect();
    permutations(&verts, n).iter().any(|p| {
        d.arcs().all(|(u, v)| e.has_arc(p[u], p[v]))
    })
}
