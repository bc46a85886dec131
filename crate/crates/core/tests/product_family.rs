use modfact::factors::build_modular_factorization;
use modfact::numtheory::gcd;
use modfact::pairing::{count_perfect_pairs, is_perfect_by_gcd};
use modfact::product::{
    build_product_factor, classify_product_pair, count_perfect_product_pairs,
    is_perfect_product_pair, product_bound,
};

fn odd_orders() -> impl Iterator<Item = usize> + Clone {
    (3..=9).step_by(2)
}

fn coprime(s: usize, t: usize) -> bool {
    gcd(s as i64, t as i64) == 1
}

#[test]
fn traversal_matches_two_gcd_rule_for_coprime_orders() {
    for s in odd_orders() {
        for t in odd_orders().filter(|&t| coprime(s, t)) {
            let c = count_perfect_product_pairs(s, t).unwrap();
            assert_eq!(c.mismatches, 0, "s={s} t={t}");
            assert_eq!(c.traversal, c.predicted);
        }
    }
}

#[test]
fn two_gcd_rule_overpredicts_for_shared_factors() {
    // Along the walk both coordinates advance by the same step index j, so
    // the visited pairs are (x + j·dk mod s, y + j·dl mod t). That map has
    // period at most lcm(s, t) < st when gcd(s, t) > 1, so no walk spans.
    for s in odd_orders() {
        for t in odd_orders().filter(|&t| !coprime(s, t)) {
            let c = count_perfect_product_pairs(s, t).unwrap();
            assert_eq!(c.traversal, 0, "s={s} t={t}");
            assert!(c.predicted > 0);
        }
    }
}

#[test]
fn every_perfect_constituent_pair_doubles() {
    for (s, t) in [(3, 5), (3, 7), (5, 7), (5, 9), (7, 9)] {
        let mut doubled = 0u64;
        for k in 0..s {
            for k2 in k + 1..s {
                if !is_perfect_by_gcd(k, k2, s).unwrap() {
                    continue;
                }
                for l in 0..t {
                    for l2 in l + 1..t {
                        if !is_perfect_by_gcd(l, l2, t).unwrap() {
                            continue;
                        }
                        let d = |a, b| build_product_factor(s, t, a, b).unwrap();
                        assert!(classify_product_pair(&d(k, l), &d(k2, l2)).unwrap().perfect);
                        assert!(classify_product_pair(&d(k2, l), &d(k, l2)).unwrap().perfect);
                        doubled += 2;
                    }
                }
            }
        }
        let c_s = count_perfect_pairs(&build_modular_factorization(s).unwrap()) as u64;
        let c_t = count_perfect_pairs(&build_modular_factorization(t).unwrap()) as u64;
        assert_eq!(doubled, product_bound(c_s, c_t));
        let total = count_perfect_product_pairs(s, t).unwrap().traversal as u64;
        assert!(total >= doubled);
    }
}

#[test]
fn edge_count_is_conserved_for_coprime_orders() {
    for s in odd_orders() {
        for t in odd_orders().filter(|&t| coprime(s, t)) {
            let n = s * t;
            let total: usize = (0..s)
                .flat_map(|k| (0..t).map(move |l| (k, l)))
                .map(|(k, l)| build_product_factor(s, t, k, l).unwrap().edges().len())
                .sum();
            assert_eq!(total, n * (n - 1) / 2);
        }
    }
}

#[test]
fn perfect_pair_count_transfers_between_families() {
    for s in odd_orders() {
        for t in odd_orders().filter(|&t| coprime(s, t)) {
            let direct = count_perfect_pairs(&build_modular_factorization(s * t).unwrap());
            assert_eq!(direct, count_perfect_product_pairs(s, t).unwrap().traversal);
        }
    }
}

#[test]
fn identical_index_pairs_are_rejected() {
    assert!(is_perfect_product_pair(3, 5, (2, 4), (2, 4)).is_err());
    let d = build_product_factor(3, 5, 2, 4).unwrap();
    assert!(classify_product_pair(&d, &d).is_err());
}
