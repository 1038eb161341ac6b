//! Canonical labelling of digraphs by partition refinement and
//! individualisation, with automorphism pruning of the search tree.
//!
//! The canonical form is the adjacency matrix under the labelling whose
//! matrix is lexicographically greatest among all leaves of the search tree.
//! Refinement splits cells by out- and in-degree counts into every cell,
//! which commutes with relabelling, so equal forms mean isomorphic inputs.

use crate::bitset::Bits128;
use crate::digraph::BitDigraph;

/// Result of a canonical labelling run.
#[derive(Clone, Debug)]
pub struct Canon {
    /// `lab[p]` is the vertex placed at canonical position `p`.
    pub lab: Vec<usize>,
    /// Rows of the relabelled adjacency matrix.
    pub rows: Vec<u128>,
}

impl Canon {
    /// Position of each vertex (inverse of `lab`).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.lab.len()];
        for (p, &v) in self.lab.iter().enumerate() {
            pos[v] = p;
        }
        pos
    }

    /// The canonical digraph itself.
    pub fn graph(&self) -> BitDigraph {
        let n = self.lab.len();
        let mut d = BitDigraph::new(n);
        for (p, &row) in self.rows.iter().enumerate() {
            for q in Bits128(row) {
                d.add_arc(p, q);
            }
        }
        d
    }

    /// Byte string: order, then the matrix bits row-major, 8 per byte
    /// (most significant first).
    pub fn bytes(&self) -> Vec<u8> {
        let n = self.lab.len();
        let mut out = Vec::with_capacity(1 + (n * n).div_ceil(8));
        out.push(n as u8);
        let mut acc = 0u8;
        let mut k = 0;
        for &row in &self.rows {
            for q in 0..n {
                acc = acc << 1 | (row >> q & 1) as u8;
                k += 1;
                if k == 8 {
                    out.push(acc);
                    acc = 0;
                    k = 0;
                }
            }
        }
        if k > 0 {
            out.push(acc << (8 - k));
        }
        out
    }
}

/// Canonical byte string; equal exactly when the inputs are isomorphic.
pub fn canonical_label(d: &BitDigraph) -> Vec<u8> {
    canonical_form(d).bytes()
}

pub fn canonical_form(d: &BitDigraph) -> Canon {
    let n = d.order();
    canonical_form_coloured(d, &vec![0; n])
}

/// Canonical form respecting a vertex colouring: colour classes are placed in
/// increasing colour order and only colour-preserving relabellings are
/// considered.
pub fn canonical_form_coloured(d: &BitDigraph, colours: &[u32]) -> Canon {
    let n = d.order();
    assert_eq!(colours.len(), n);
    let mut distinct: Vec<u32> = colours.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let cells: Vec<Vec<usize>> = distinct
        .iter()
        .map(|&c| (0..n).filter(|&v| colours[v] == c).collect())
        .collect();
    let mut s = Searcher {
        d,
        best: None,
        gens: Vec::new(),
    };
    s.search(cells, &mut Vec::new());
    let (lab, rows) = s.best.expect("search visits at least one leaf");
    Canon { lab, rows }
}

/// True when some automorphism of `d` maps `u` to `v`.
pub fn same_orbit(d: &BitDigraph, u: usize, v: usize) -> bool {
    if u == v {
        return true;
    }
    let n = d.order();
    let mut cu = vec![0; n];
    cu[u] = 1;
    let mut cv = vec![0; n];
    cv[v] = 1;
    canonical_form_coloured(d, &cu).rows == canonical_form_coloured(d, &cv).rows
}

struct Searcher<'a> {
    d: &'a BitDigraph,
    best: Option<(Vec<usize>, Vec<u128>)>,
    /// Automorphisms found so far, as vertex maps.
    gens: Vec<Vec<usize>>,
}

impl Searcher<'_> {
    fn search(&mut self, mut cells: Vec<Vec<usize>>, path: &mut Vec<usize>) {
        refine(self.d, &mut cells);
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            self.leaf(cells.iter().map(|c| c[0]).collect());
            return;
        };
        let members = cells[t].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &members {
            if tried.iter().any(|&u| twins(self.d, u, v))
                || (!tried.is_empty() && self.equivalent_to_tried(path, &tried, v))
            {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..t]);
            next.push(vec![v]);
            next.push(members.iter().copied().filter(|&u| u != v).collect());
            next.extend_from_slice(&cells[t + 1..]);
            path.push(v);
            self.search(next, path);
            path.pop();
        }
    }

    fn equivalent_to_tried(&self, path: &[usize], tried: &[usize], v: usize) -> bool {
        let n = self.d.order();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut any = false;
        for g in &self.gens {
            if path.iter().all(|&p| g[p] == p) {
                any = true;
                for (x, &gx) in g.iter().enumerate() {
                    let (a, b) = (find(&mut uf, x), find(&mut uf, gx));
                    if a != b {
                        uf[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut uf, v);
        tried.iter().any(|&u| find(&mut uf, u) == rv)
    }

    fn leaf(&mut self, lab: Vec<usize>) {
        let n = lab.len();
        let mut pos = vec![0; n];
        for (p, &v) in lab.iter().enumerate() {
            pos[v] = p;
        }
        let rows: Vec<u128> = lab
            .iter()
            .map(|&v| {
                Bits128(self.d.out_mask(v)).fold(0u128, |acc, w| acc | 1 << pos[w])
            })
            .collect();
        match &self.best {
            None => self.best = Some((lab, rows)),
            Some((best_lab, best_rows)) => match rows.cmp(best_rows) {
                std::cmp::Ordering::Greater => self.best = Some((lab, rows)),
                std::cmp::Ordering::Equal => {
                    // best_lab[p] -> lab[p] is an automorphism
                    let mut g = vec![0; n];
                    for p in 0..n {
                        g[best_lab[p]] = lab[p];
                    }
                    self.gens.push(g);
                }
                std::cmp::Ordering::Less => {}
            },
        }
    }
}

/// `u` and `v` see the rest of the digraph identically and each other
/// symmetrically, so swapping them is an automorphism.
fn twins(d: &BitDigraph, u: usize, v: usize) -> bool {
    let both = !(1u128 << u | 1u128 << v);
    d.out_mask(u) & both == d.out_mask(v) & both
        && d.in_mask(u) & both == d.in_mask(v) & both
        && d.has_arc(u, v) == d.has_arc(v, u)
}

/// Refines an ordered partition to the coarsest equitable one below it.
fn refine(d: &BitDigraph, cells: &mut Vec<Vec<usize>>) {
    loop {
        let masks: Vec<u128> = cells
            .iter()
            .map(|c| c.iter().fold(0u128, |m, &v| m | 1 << v))
            .collect();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut sig: Vec<(Vec<u16>, usize)> = cell
                .iter()
                .map(|&v| {
                    let (o, i) = (d.out_mask(v), d.in_mask(v));
                    let s = masks
                        .iter()
                        .map(|&m| ((o & m).count_ones() as u16) << 8 | (i & m).count_ones() as u16)
                        .collect();
                    (s, v)
                })
                .collect();
            sig.sort();
            let mut start = 0;
            for k in 1..=sig.len() {
                if k == sig.len() || sig[k].0 != sig[start].0 {
                    if start > 0 || k < sig.len() {
                        changed = true;
                    }
                    let mut part: Vec<usize> = sig[start..k].iter().map(|x| x.1).collect();
                    part.sort_unstable();
                    next.push(part);
                    start = k;
                }
            }
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for v in 0..n {
                if !cur.contains(&v) {
                    cur.push(v);
                    rec(n, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }

    /// Brute-force isomorphism test over every permutation.
    fn isomorphic(a: &BitDigraph, b: &BitDigraph, perms: &[Vec<usize>]) -> bool {
        a.arc_count() == b.arc_count() && perms.iter().any(|p| a.relabel(p) == *b)
    }

    fn digraph_from_code(n: usize, code: u64) -> BitDigraph {
        let mut d = BitDigraph::new(n);
        let mut bit = 0;
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    if code >> bit & 1 == 1 {
                        d.add_arc(u, v);
                    }
                    bit += 1;
                }
            }
        }
        d
    }

    #[test]
    fn relabelled_cycle_has_same_label() {
        let c3 = BitDigraph::directed_cycle(3);
        let l = canonical_label(&c3);
        for p in all_perms(3) {
            assert_eq!(canonical_label(&c3.relabel(&p)), l);
        }
        assert_ne!(l, canonical_label(&BitDigraph::transitive_tournament(3)));
    }

    #[test]
    fn oriented_graphs_on_three_vertices() {
        // one of {none, forward, backward} per pair: 27 labelled graphs
        let perms = all_perms(3);
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let mut graphs = Vec::new();
        for code in 0..27u32 {
            let mut d = BitDigraph::new(3);
            let mut c = code;
            for &(u, v) in &pairs {
                match c % 3 {
                    1 => d.add_arc(u, v),
                    2 => d.add_arc(v, u),
                    _ => {}
                }
                c /= 3;
            }
            graphs.push(d);
        }
        let labels: HashSet<Vec<u8>> = graphs.iter().map(canonical_label).collect();
        let mut reps: Vec<&BitDigraph> = Vec::new();
        for g in &graphs {
            if !reps.iter().any(|r| isomorphic(r, g, &perms)) {
                reps.push(g);
            }
        }
        assert_eq!(labels.len(), reps.len());
        assert_eq!(reps.len(), 7);
    }

    #[test]
    fn complete_invariant_on_all_digraphs_of_order_three_and_four() {
        for n in 3..=4usize {
            let perms = all_perms(n);
            let bits = n * (n - 1);
            let mut classes: Vec<(Vec<u8>, BitDigraph)> = Vec::new();
            let mut by_label = std::collections::HashMap::new();
            for code in 0u64..1 << bits {
                let d = digraph_from_code(n, code);
                let l = canonical_label(&d);
                by_label.entry(l.clone()).or_insert_with(|| d.clone());
                if !classes.iter().any(|(_, r)| isomorphic(r, &d, &perms)) {
                    classes.push((l, d));
                }
            }
            // class count equals distinct labels, and each class owns one label
            assert_eq!(by_label.len(), classes.len());
            let expected = if n == 3 { 16 } else { 218 };
            assert_eq!(classes.len(), expected);
        }
    }

    #[test]
    fn canonical_graph_is_isomorphic_to_input() {
        let d = BitDigraph::from_arcs(5, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 3), (0, 4)]);
        let c = canonical_form(&d);
        assert_eq!(d.relabel(&c.positions()), c.graph());
    }

    #[test]
    fn orbits_of_small_digraphs() {
        let c5 = BitDigraph::directed_cycle(5);
        assert!(same_orbit(&c5, 0, 3));
        let path = BitDigraph::from_arcs(3, &[(0, 1), (1, 2)]);
        assert!(!same_orbit(&path, 0, 2));
        let e = BitDigraph::new(60);
        assert!(same_orbit(&e, 7, 59));
    }

    #[test]
    fn empty_and_complete_large_orders_finish() {
        for n in [0usize, 1, 30, 128] {
            let e = canonical_form(&BitDigraph::new(n));
            assert_eq!(e.lab.len(), n);
            let k = canonical_form(&BitDigraph::complete(n));
            assert_eq!(k.graph(), BitDigraph::complete(n));
        }
    }
}
