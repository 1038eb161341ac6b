//! Directed Ramsey numbers `dr(n, m)`: the least `r` such that every digraph
//! on `r` vertices has a transitive `n`-set or an independent `m`-set.

mod anneal;
mod bounds;
mod cache;
mod search;

pub use anneal::{anneal_counterexample, count_independent, count_transitive, AnnealOptions};
pub use bounds::{dr_bounds, verify_r33, BoundSource, DrInterval, RamseyEntry, RamseyTable};
pub use cache::CertCache;
pub use search::{circulant_counterexample, search_dr, DrOutcome, DrSearchOptions};

use serde::{Deserialize, Serialize};

use crate::augment::Hereditary;
use crate::digraph::BitDigraph;
use crate::error::{Error, Result};

/// The structure that disqualifies a digraph as a counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Ordered so that every forward arc is present.
    Transitive(Vec<usize>),
    Independent(Vec<usize>),
}

/// A digraph with no transitive `n`-set and no independent `m`-set, which
/// shows `dr(n, m) > order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrCertificate {
    pub n: usize,
    pub m: usize,
    pub digraph: BitDigraph,
    pub verified_no_transitive: bool,
    pub verified_no_independent: bool,
}

impl DrCertificate {
    pub fn order(&self) -> usize {
        self.digraph.order()
    }

    pub fn is_verified(&self) -> bool {
        self.verified_no_transitive && self.verified_no_independent
    }

    /// Recomputes both flags from scratch.
    pub fn reverify(&self) -> Result<DrCertificate> {
        check_counterexample(&self.digraph, self.n, self.m)
    }
}

pub fn check_counterexample(d: &BitDigraph, n: usize, m: usize) -> Result<DrCertificate> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("n and m must be at least 1".into()));
    }
    if let Some(t) = d.find_transitive_tuple(n) {
        return Err(Error::NotACounterexample {
            witness: Witness::Transitive(t),
        });
    }
    if let Some(s) = d.find_independent(m) {
        return Err(Error::NotACounterexample {
            witness: Witness::Independent(s),
        });
    }
    Ok(DrCertificate {
        n,
        m,
        digraph: d.clone(),
        verified_no_transitive: true,
        verified_no_independent: true,
    })
}

/// How the reported value was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProofMethod {
    Exhaustive,
    BoundTable,
    Recurrence,
}

#[derive(Clone, Debug)]
pub struct DrResult {
    pub n: usize,
    pub m: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub certificate: Option<DrCertificate>,
    pub proof_method: ProofMethod,
}

impl DrResult {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

/// Forbids transitive `n`-sets and independent `m`-sets.
#[derive(Clone, Copy, Debug)]
pub struct DrProperty {
    pub n: usize,
    pub m: usize,
}

impl Hereditary for DrProperty {
    fn violated(&self, d: &BitDigraph, v: usize, newest: usize, allowed: u128) -> bool {
        let must = 1u128 << v | 1u128 << newest;
        d.transitive_tuple_in(self.n, allowed, must).is_some()
            || d.independent_in(self.m, allowed, must).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directed_triangle_certifies_dr32_above_three() {
        let c = check_counterexample(&BitDigraph::directed_cycle(3), 3, 2).unwrap();
        assert!(c.is_verified());
        assert_eq!(c.order() + 1, 4);
    }

    #[test]
    fn empty_digraph_certifies_dr_at_least_m() {
        for m in 2..7 {
            for n in 2..5 {
                assert!(check_counterexample(&BitDigraph::new(m - 1), n, m).is_ok());
            }
        }
    }

    #[test]
    fn transitive_triangle_is_rejected_with_identity_witness() {
        match check_counterexample(&BitDigraph::transitive_tournament(3), 3, 2) {
            Err(Error::NotACounterexample { witness }) => {
                assert_eq!(witness, Witness::Transitive(vec![0, 1, 2]))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn independent_witness_reported() {
        match check_counterexample(&BitDigraph::new(3), 3, 2) {
            Err(Error::NotACounterexample { witness }) => {
                assert_eq!(witness, Witness::Independent(vec![0, 1]))
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
