//! Simulated annealing for counterexamples at a fixed order, used when the
//! exhaustive search cannot reach the interesting orders.
//!
//! The energy is the number of transitive `n`-tuples plus the number of
//! independent `m`-sets; a state of energy zero is a counterexample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_counterexample, DrCertificate};
use crate::bitset::Bits128;
use crate::budget::Budget;
use crate::canon::canonical_form;
use crate::digraph::{BitDigraph, MAX_DIGRAPH_ORDER};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct AnnealOptions {
    pub start_temperature: f64,
    pub cooling: f64,
    pub min_temperature: f64,
    /// Steps before restarting from a fresh random digraph.
    pub restart_every: u64,
}

impl Default for AnnealOptions {
    fn default() -> Self {
        AnnealOptions {
            start_temperature: 2.0,
            cooling: 0.999_999,
            min_temperature: 0.05,
            restart_every: 4_000_000,
        }
    }
}

/// Ordered tuples `v_1..v_n` of distinct vertices with every forward arc.
pub fn count_transitive(d: &BitDigraph, n: usize) -> u64 {
    fn rec(d: &BitDigraph, left: usize, cand: u128) -> u64 {
        if left == 0 {
            return 1;
        }
        Bits128(cand)
            .map(|v| rec(d, left - 1, cand & d.out_mask(v) & !(1u128 << v)))
            .sum()
    }
    rec(d, n, d.vertex_mask())
}

/// Independent `m`-sets.
pub fn count_independent(d: &BitDigraph, m: usize) -> u64 {
    fn rec(d: &BitDigraph, left: usize, cand: u128) -> u64 {
        if left == 0 {
            return 1;
        }
        Bits128(cand)
            .map(|v| {
                let above = !((2u128 << v).wrapping_sub(1));
                rec(d, left - 1, cand & !d.adjacent_mask(v) & above)
            })
            .sum()
    }
    rec(d, m, d.vertex_mask())
}

fn energy(d: &BitDigraph, n: usize, m: usize) -> u64 {
    count_transitive(d, n) + count_independent(d, m)
}

fn set_state(d: &mut BitDigraph, i: usize, j: usize, state: u8) {
    d.remove_arc(i, j);
    d.remove_arc(j, i);
    if state & 1 == 1 {
        d.add_arc(i, j);
    }
    if state & 2 == 2 {
        d.add_arc(j, i);
    }
}

fn state_of(d: &BitDigraph, i: usize, j: usize) -> u8 {
    u8::from(d.has_arc(i, j)) | u8::from(d.has_arc(j, i)) << 1
}

/// Anneals digraphs of the given order towards one with no transitive
/// `n`-set and no independent `m`-set. Each step counts as one budget node.
/// The certificate returned is in canonical form; the run is deterministic
/// for a given seed.
pub fn anneal_counterexample(
    n: usize,
    m: usize,
    order: usize,
    budget: &Budget,
    seed: u64,
    opts: &AnnealOptions,
) -> Result<Option<DrCertificate>> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("n and m must be at least 1".into()));
    }
    if order > MAX_DIGRAPH_ORDER {
        return Err(Error::CapExceeded {
            what: format!("order {order}"),
            cap: MAX_DIGRAPH_ORDER,
        });
    }
    if order < 2 {
        let d = BitDigraph::new(order);
        return Ok(check_counterexample(&d, n, m).ok());
    }
    let meter = budget.meter();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while !meter.stopped() {
        let mut d = BitDigraph::new(order);
        for i in 0..order {
            for j in i + 1..order {
                set_state(&mut d, i, j, rng.gen_range(0..4));
            }
        }
        let mut cur = energy(&d, n, m);
        let mut temp = opts.start_temperature;
        for _ in 0..opts.restart_every {
            if cur == 0 {
                let canon = canonical_form(&d);
                return check_counterexample(&canon.graph(), n, m).map(Some);
            }
            if !meter.tick() {
                break;
            }
            let i = rng.gen_range(0..order);
            let mut j = rng.gen_range(0..order - 1);
            if j >= i {
                j += 1;
            }
            let old = state_of(&d, i, j);
            let new = (old + rng.gen_range(1..4)) % 4;
            set_state(&mut d, i, j, new);
            let e = energy(&d, n, m);
            let accept = e <= cur || rng.gen::<f64>() < (-((e - cur) as f64) / temp).exp();
            if accept {
                cur = e;
            } else {
                set_state(&mut d, i, j, old);
            }
            temp = (temp * opts.cooling).max(opts.min_temperature);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_small_cases() {
        assert_eq!(count_transitive(&BitDigraph::transitive_tournament(3), 3), 1);
        assert_eq!(count_transitive(&BitDigraph::directed_cycle(3), 3), 0);
        // every ordering of the complete digraph is transitive
        assert_eq!(count_transitive(&BitDigraph::complete(3), 3), 6);
        assert_eq!(count_independent(&BitDigraph::new(5), 3), 10);
        assert_eq!(count_independent(&BitDigraph::transitive_tournament(4), 2), 0);
    }

    #[test]
    fn finds_small_counterexamples_deterministically() {
        let a = anneal_counterexample(3, 3, 8, &Budget::nodes(2_000_000), 3, &AnnealOptions::default())
            .unwrap()
            .expect("an 8-vertex counterexample exists");
        assert!(a.reverify().unwrap().is_verified());
        let b = anneal_counterexample(3, 3, 8, &Budget::nodes(2_000_000), 3, &AnnealOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(a.digraph, b.digraph);
    }

    #[test]
    fn impossible_order_exhausts_budget() {
        let r = anneal_counterexample(3, 2, 4, &Budget::nodes(20_000), 1, &AnnealOptions::default())
            .unwrap();
        assert!(r.is_none());
    }
}
