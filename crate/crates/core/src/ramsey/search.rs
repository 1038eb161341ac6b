use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use super::bounds::{dr_bounds, BoundSource, RamseyTable};
use super::{check_counterexample, DrCertificate, DrProperty, DrResult, ProofMethod};
use crate::augment::{ArcState, Augmenter};
use crate::budget::Budget;
use crate::canon::canonical_form;
use crate::digraph::{BitDigraph, MAX_DIGRAPH_ORDER};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct DrSearchOptions {
    /// Largest counterexample order the search will build.
    pub max_order: usize,
    pub budget: Budget,
    /// Scan circulant digraphs first for a quick lower bound.
    pub seed_circulants: bool,
    pub table: RamseyTable,
    /// Exact values already established, used by the bound arithmetic.
    pub known: BTreeMap<(usize, usize), usize>,
    /// Stop as soon as a counterexample of this order is certified.
    pub stop_at_order: Option<usize>,
}

impl Default for DrSearchOptions {
    fn default() -> Self {
        DrSearchOptions {
            max_order: 16,
            budget: Budget::UNLIMITED,
            seed_circulants: true,
            table: RamseyTable::with_local_verification(),
            known: BTreeMap::new(),
            stop_at_order: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DrOutcome {
    pub result: DrResult,
    pub nodes: u64,
    pub budget_exhausted: bool,
    /// The search stopped early at `stop_at_order`.
    pub stopped_at_target: bool,
    /// Isomorphism classes of counterexamples seen per order.
    pub classes_per_order: Vec<u64>,
    pub elapsed_ms: u128,
}

/// Largest-order circulant counterexample on at most `max_order` vertices.
pub fn circulant_counterexample(n: usize, m: usize, max_order: usize) -> Option<DrCertificate> {
    (1..=max_order.min(20)).rev().find_map(|k| {
        (0u32..1 << (k - 1)).find_map(|mask| {
            let shifts: Vec<usize> = (1..k).filter(|s| mask >> (s - 1) & 1 == 1).collect();
            check_counterexample(&BitDigraph::circulant(k, &shifts), n, m).ok()
        })
    })
}

/// Computes or bounds `dr(n, m)` by canonical augmentation over all
/// counterexamples up to `max_order` vertices.
///
/// The result is exact when the search finishes without reaching
/// `max_order` (no counterexample one vertex larger exists), or when the
/// certified lower bound meets the upper bound arithmetic.
pub fn search_dr(n: usize, m: usize, opts: &DrSearchOptions) -> Result<DrOutcome> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("n and m must be at least 1".into()));
    }
    let started = Instant::now();
    let max_order = opts.max_order.min(MAX_DIGRAPH_ORDER);
    let meter = opts.budget.meter();
    let best_order = AtomicUsize::new(0);
    // (order, canonical bytes, canonical digraph) of the preferred witness
    let best: Mutex<Option<(usize, Vec<u8>, BitDigraph)>> = Mutex::new(None);
    let counts: Vec<AtomicU64> = (0..=max_order).map(|_| AtomicU64::new(0)).collect();

    let offer = |order: usize, bytes: Vec<u8>, d: BitDigraph| {
        if order < best_order.load(Ordering::Relaxed) {
            return;
        }
        let mut slot = best.lock().expect("poisoned");
        let better = match &*slot {
            None => true,
            Some((o, b, _)) => order > *o || (order == *o && bytes < *b),
        };
        if better {
            best_order.fetch_max(order, Ordering::Relaxed);
            *slot = Some((order, bytes, d));
        }
    };

    let target = opts.stop_at_order.unwrap_or(usize::MAX);
    if opts.seed_circulants && opts.stop_at_order.is_some() {
        if let Some(c) = circulant_counterexample(n, m, max_order) {
            let canon = canonical_form(&c.digraph);
            offer(c.order(), canon.bytes(), canon.graph());
        }
    }
    let aug = Augmenter {
        states: &ArcState::ALL,
        property: DrProperty { n, m },
        max_order,
        meter: &meter,
    };
    let skip = best_order.load(Ordering::Relaxed) >= target;
    if skip {
        meter.halt();
    }
    aug.run(|visit| {
        if skip {
            return false;
        }
        let k = visit.digraph.order();
        counts[k].fetch_add(1, Ordering::Relaxed);
        if k >= best_order.load(Ordering::Relaxed) {
            offer(k, visit.canon.bytes(), visit.canon.graph());
            if k >= target {
                meter.halt();
            }
        }
        true
    });
    let exhausted = meter.exhausted();
    let complete = !meter.stopped();

    if exhausted && opts.seed_circulants && opts.stop_at_order.is_none() {
        if let Some(c) = circulant_counterexample(n, m, max_order) {
            let canon = canonical_form(&c.digraph);
            offer(c.order(), canon.bytes(), canon.graph());
        }
    }

    let (found_order, cert) = match best.into_inner().expect("poisoned") {
        Some((o, _, d)) if o > 0 => {
            let cert = check_counterexample(&d, n, m)?;
            (o, Some(cert))
        }
        _ => (0, None),
    };

    let interval = dr_bounds(n, m, &opts.table, &opts.known);
    let lower = found_order + 1;
    let (upper, exact, method) = if complete && found_order < max_order {
        (lower, true, ProofMethod::Exhaustive)
    } else {
        let upper = interval.upper.max(lower);
        let method = match interval.upper_source {
            BoundSource::Recurrence => ProofMethod::Recurrence,
            _ => ProofMethod::BoundTable,
        };
        (upper, upper == lower, method)
    };

    Ok(DrOutcome {
        result: DrResult {
            n,
            m,
            lower,
            upper,
            exact,
            certificate: cert,
            proof_method: method,
        },
        nodes: meter.nodes(),
        budget_exhausted: exhausted,
        stopped_at_target: !complete && !exhausted,
        classes_per_order: counts.iter().map(|c| c.load(Ordering::Relaxed)).collect(),
        elapsed_ms: started.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(n: usize, m: usize) -> usize {
        let out = search_dr(n, m, &DrSearchOptions::default()).unwrap();
        assert!(out.result.exact, "dr({n},{m}) not exact: {:?}", out.result);
        assert_eq!(out.result.proof_method, ProofMethod::Exhaustive);
        out.result.lower
    }

    #[test]
    fn degenerate_arguments() {
        assert_eq!(exact(1, 5), 1);
        assert_eq!(exact(4, 1), 1);
        assert!(search_dr(0, 3, &DrSearchOptions::default()).is_err());
    }

    #[test]
    fn dr_two_m_equals_m() {
        for m in 2..=6 {
            assert_eq!(exact(2, m), m);
        }
    }

    #[test]
    fn dr_three_two_is_four() {
        let out = search_dr(3, 2, &DrSearchOptions::default()).unwrap();
        assert_eq!(out.result.value(), Some(4));
        let cert = out.result.certificate.unwrap();
        assert_eq!(cert.order(), 3);
        assert!(cert.reverify().unwrap().is_verified());
    }

    #[test]
    fn budget_degrades_to_bounds() {
        let opts = DrSearchOptions {
            budget: Budget::nodes(50),
            ..Default::default()
        };
        let out = search_dr(3, 4, &opts).unwrap();
        assert!(out.budget_exhausted);
        assert!(!out.result.exact);
        assert!(out.result.lower <= out.result.upper);
        let cert = out.result.certificate.unwrap();
        assert_eq!(cert.order() + 1, out.result.lower);
        assert!(cert.reverify().is_ok());
    }

    #[test]
    fn max_order_cap_is_not_exact_without_bounds() {
        let opts = DrSearchOptions {
            max_order: 5,
            ..Default::default()
        };
        let out = search_dr(3, 3, &opts).unwrap();
        assert_eq!(out.result.lower, 6);
        assert!(!out.result.exact);
        assert_eq!(out.result.upper, 9);
    }

    #[test]
    fn stop_at_order_halts_without_claiming_exactness() {
        let opts = DrSearchOptions {
            stop_at_order: Some(5),
            seed_circulants: false,
            ..Default::default()
        };
        let out = search_dr(3, 3, &opts).unwrap();
        assert!(out.stopped_at_target);
        assert!(!out.result.exact);
        assert!(out.result.lower >= 6);
        assert!(out.result.certificate.unwrap().reverify().is_ok());
    }
}
