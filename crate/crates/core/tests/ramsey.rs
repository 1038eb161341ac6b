mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use transversal_lab::augment::{ArcState, Augmenter};
use transversal_lab::budget::Budget;
use transversal_lab::canon::canonical_label;
use transversal_lab::digraph::BitDigraph;
use transversal_lab::ramsey::{
    check_counterexample, dr_bounds, search_dr, CertCache, DrProperty, DrSearchOptions, RamseyTable,
};

use common::*;

fn exact_dr(n: usize, m: usize) -> usize {
    let out = search_dr(n, m, &DrSearchOptions::default()).unwrap();
    assert!(out.result.exact);
    out.result.lower
}

#[test]
fn search_matches_labelled_oracle_where_feasible() {
    for (n, m) in [(1, 1), (1, 3), (2, 1), (2, 2), (2, 3), (3, 2), (2, 4)] {
        assert_eq!(Some(exact_dr(n, m)), naive_dr(n, m, 4), "dr({n},{m})");
    }
}

/// Canonical labels of all labelled counterexamples of the given order.
fn naive_classes(n: usize, m: usize, order: usize) -> BTreeSet<Vec<u8>> {
    (0..labelled_count(order))
        .map(|c| digraph_from_code(order, c))
        .filter(|d| !naive_transitive(d, n) && !naive_independent(d, m))
        .map(|d| canonical_label(&d))
        .collect()
}

#[test]
fn isomorph_rejection_loses_nothing_up_to_order_five() {
    for (n, m) in [(3, 3), (3, 4)] {
        let meter = Budget::UNLIMITED.meter();
        let seen: Mutex<BTreeMap<usize, Vec<Vec<u8>>>> = Mutex::new(BTreeMap::new());
        Augmenter {
            states: &ArcState::ALL,
            property: DrProperty { n, m },
            max_order: 5,
            meter: &meter,
        }
        .run(|v| {
            seen.lock()
                .unwrap()
                .entry(v.digraph.order())
                .or_default()
                .push(canonical_label(v.digraph));
            true
        });
        let seen = seen.into_inner().unwrap();
        for order in 0..=5 {
            let got = seen.get(&order).cloned().unwrap_or_default();
            let unique: BTreeSet<Vec<u8>> = got.iter().cloned().collect();
            assert_eq!(unique.len(), got.len(), "duplicate class at order {order}");
            assert_eq!(unique, naive_classes(n, m, order), "({n},{m}) order {order}");
        }
    }
}

#[test]
fn computed_values_are_monotone_and_sandwiched() {
    let mut values = BTreeMap::new();
    for m in 1..=5 {
        values.insert((2, m), exact_dr(2, m));
    }
    for (n, m) in [(1, 2), (3, 1), (3, 2), (3, 3)] {
        values.insert((n, m), exact_dr(n, m));
    }
    for (&(n, m), &v) in &values {
        if let Some(&w) = values.get(&(n + 1, m)) {
            assert!(v <= w);
        }
        if let Some(&w) = values.get(&(n, m + 1)) {
            assert!(v <= w);
        }
    }
    let t = RamseyTable::with_local_verification();
    for (&(n, m), &v) in &values {
        if n >= 2 && m >= 2 {
            if let Some(r) = t.get(&[n, m]) {
                assert!(r.lower <= v, "R({n},{m}) <= dr");
            }
            if let Some(r) = t.get(&[n, n, m]) {
                assert!(v <= r.upper, "dr <= R({n},{n},{m})");
            }
        }
        let iv = dr_bounds(n, m, &t, &BTreeMap::new());
        assert!(iv.lower <= v && v <= iv.upper, "bounds for dr({n},{m})");
    }
}

#[test]
fn every_lower_bound_has_a_reverifiable_certificate() {
    for (n, m, budget) in [(3, 3, None), (3, 4, Some(2_000)), (4, 2, Some(5_000))] {
        let opts = DrSearchOptions {
            budget: budget.map_or(Budget::UNLIMITED, Budget::nodes),
            ..Default::default()
        };
        let r = search_dr(n, m, &opts).unwrap().result;
        assert!(r.lower <= r.upper);
        if r.exact {
            assert_eq!(r.lower, r.upper);
        }
        if r.lower > 1 {
            let c = r.certificate.expect("certificate behind the lower bound");
            assert_eq!(c.order() + 1, r.lower);
            assert!(c.reverify().unwrap().is_verified());
        }
    }
}

#[test]
fn exhausted_search_is_deterministic() {
    let a = search_dr(3, 3, &DrSearchOptions::default()).unwrap();
    let b = search_dr(3, 3, &DrSearchOptions::default()).unwrap();
    assert_eq!(
        a.result.certificate.unwrap().digraph,
        b.result.certificate.unwrap().digraph
    );
    assert_eq!(a.classes_per_order, b.classes_per_order);
}

#[test]
fn cache_handles_concurrent_writers() {
    let dir = tempfile::tempdir().unwrap();
    let cache = CertCache::new(dir.path());
    let certs: Vec<_> = (2..8)
        .map(|m| check_counterexample(&BitDigraph::new(m - 1), 3, m).unwrap())
        .collect();
    std::thread::scope(|s| {
        for c in &certs {
            let cache = &cache;
            s.spawn(move || cache.store(c).unwrap());
        }
    });
    for c in &certs {
        let back = cache.load(3, c.m, c.order()).unwrap().unwrap();
        assert_eq!(back.digraph, c.digraph);
    }
}
