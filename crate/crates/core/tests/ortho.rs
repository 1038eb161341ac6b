use num_bigint::BigInt;
use proptest::prelude::*;
use transversal_lab::budget::Budget;
use transversal_lab::ortho::*;

fn arb_vec(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-6i64..=6, dim).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

/// Independence number of the orthogonality graph by subset enumeration.
fn naive_independence(f: &VectorFamily) -> usize {
    let v = f.vectors();
    (0u32..1 << v.len())
        .filter(|mask| {
            (0..v.len()).all(|i| {
                (i + 1..v.len()).all(|j| mask >> i & 1 == 0 || mask >> j & 1 == 0 || !v[i].is_orthogonal(&v[j]))
            })
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[test]
fn pairs_family_has_independence_m_minus_one() {
    for m in 2..=5 {
        let f = orthogonal_pairs_family(m);
        assert_eq!(f.len(), 2 * (m - 1));
        assert_eq!(naive_independence(&f), m - 1);
        assert!(alpha_check(&f, m - 1).unwrap());
        if m >= 3 {
            assert!(!alpha_check(&f, m - 2).unwrap());
        }
    }
}

#[test]
fn basis_pool_search_recovers_dimension() {
    for n in 1..=4 {
        let s = alpha_lower_search(1, &integer_pool(n, 1), &Budget::UNLIMITED).unwrap();
        assert!(s.exact);
        assert_eq!(s.best.len(), n);
        assert!(alpha_check(&s.best, 1).unwrap());
    }
}

#[test]
fn plane_pool_search_gives_two_m() {
    let pool = integer_pool(2, 3);
    for m in 1..=3 {
        let s = alpha_lower_search(m, &pool, &Budget::UNLIMITED).unwrap();
        assert!(s.exact);
        assert_eq!(s.best.len(), 2 * m);
        assert_eq!(naive_independence(&s.best), m);
        let rel = rstar_relation(s.best.len(), m);
        assert_eq!(rel.rstar_next, 2 * m + 1);
    }
}

#[test]
fn json_round_trip() {
    let f = VectorFamily::from_i64_rows(&[&[1, 2, 0], &[0, 0, -3], &[2, -1, 5]]).unwrap();
    let back = VectorFamily::from_json(&f.to_json()).unwrap();
    assert_eq!(back, f);
    let parsed = VectorFamily::from_json(&serde_json::json!([[[1, 2], [1, 3]], [[0, 1], [5, 1]]])).unwrap();
    assert_eq!(parsed.vectors()[0], RatVec::from_i64(&[3, 2]).unwrap());
    assert_eq!(parsed.vectors()[1], RatVec::from_i64(&[0, 1]).unwrap());
}

proptest! {
    #[test]
    fn canonical_form_ignores_scaling(v in arb_vec(4), num in 1i64..9, den in 1i64..9, neg in any::<bool>()) {
        let base = RatVec::from_i64(&v).unwrap();
        let s = if neg { -num } else { num };
        let scaled: Vec<(BigInt, BigInt)> = v.iter().map(|&x| (BigInt::from(x * s), BigInt::from(den))).collect();
        prop_assert_eq!(RatVec::from_rationals(&scaled).unwrap(), base.clone());
        let again = RatVec::from_integers(base.coords().to_vec()).unwrap();
        prop_assert_eq!(again, base);
    }

    #[test]
    fn orthogonality_is_symmetric_and_scale_free(a in arb_vec(3), b in arb_vec(3)) {
        let (x, y) = (RatVec::from_i64(&a).unwrap(), RatVec::from_i64(&b).unwrap());
        let dot: i64 = a.iter().zip(&b).map(|(p, q)| p * q).sum();
        prop_assert_eq!(x.is_orthogonal(&y), dot == 0);
        prop_assert_eq!(x.is_orthogonal(&y), y.is_orthogonal(&x));
    }

    #[test]
    fn alpha_check_is_monotone(rows in proptest::collection::vec(arb_vec(3), 1..12), m in 1usize..4, drop in 0usize..12) {
        let f = VectorFamily::from_vectors(3, rows.iter().map(|r| RatVec::from_i64(r).unwrap())).unwrap();
        let ok = alpha_check(&f, m).unwrap();
        prop_assert_eq!(ok, naive_independence(&f) <= m);
        if ok {
            prop_assert!(alpha_check(&f, m + 1).unwrap());
            let keep: Vec<usize> = (0..f.len()).filter(|&i| i != drop).collect();
            prop_assert!(alpha_check(&f.subfamily(&keep), m).unwrap());
        }
    }
}
