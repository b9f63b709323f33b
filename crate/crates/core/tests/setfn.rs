use std::collections::BTreeMap;

use dctp_core::schubert::index_from_list;
use dctp_core::setfn::*;
use dctp_core::subset::{self, bit, card, from_elements as set, GroundSet};
use dctp_core::{IntSetFn, Rational, SetFn, Verdict};
use num_traits::Zero;
use proptest::prelude::*;

fn g(n: usize) -> GroundSet {
    GroundSet::new(n).unwrap()
}

fn theta(n: usize, elems: &[usize]) -> IntSetFn {
    index_from_list(n, elems).unwrap().rank_function()
}

fn card_fn(n: usize, f: impl Fn(i64) -> i64) -> IntSetFn {
    SetFunction::from_fn(g(n), |m| f(card(m) as i64)).unwrap()
}

#[test]
fn submodular_examples() {
    assert!(is_submodular(&card_fn(3, |c| c)).holds());
    assert_eq!(is_submodular(&card_fn(3, |c| c * c)), Verdict::Fails(LocalWitness { x: 0, i: 1, j: 2 }));
    assert!(is_submodular(&theta(10, &[4, 5, 6, 8, 9])).holds());
}

#[test]
fn supermodular_examples() {
    assert!(is_supermodular(&card_fn(3, |c| c)).holds());
    assert!(!is_supermodular(&card_fn(3, |c| c.min(1))).holds());
    let f = theta(5, &[2, 4]);
    assert!(is_supermodular(&f.natural_dual()).holds());
}

/// Recomputes the three Plücker terms directly.
fn plucker_fails_at(f: &IntSetFn, w: &PluckerWitness) -> bool {
    let (x, i, j, k) = (w.x, bit(w.i), bit(w.j), bit(w.k));
    let lhs = f.at(x | i | k) + f.at(x | j);
    let rhs = (f.at(x | i | j) + f.at(x | k)).max(f.at(x | j | k) + f.at(x | i));
    lhs != rhs
}

#[test]
fn plucker_examples() {
    assert!(is_tropical_plucker(&card_fn(2, |c| c * c)).holds());
    assert!(is_tropical_plucker(&theta(4, &[1, 3])).holds());
    let sum = &theta(3, &[1, 3]) + &theta(3, &[2]);
    match is_tropical_plucker(&sum) {
        Verdict::Fails(w) => assert!(plucker_fails_at(&sum, &w)),
        Verdict::Holds => panic!("{{1,3}} and {{2}} are not weakly separated"),
    }
}

#[test]
fn dctp_examples() {
    assert!(is_dctp(&SetFn::zero(g(4)).unwrap()).holds());
    assert!(matches!(is_dctp(&card_fn(3, |c| c * c)), Verdict::Fails(DctpWitness::Submodular(_))));
    for n in 1..=6 {
        for s in g(n).subsets() {
            assert!(is_dctp(&dctp_core::schubert::SchubertIndex::new(g(n), s).unwrap().rank_function()).holds());
        }
    }
}

#[test]
fn strong_pair_examples() {
    let f = theta(4, &[2, 4]);
    assert!(is_strong_pair(&f, &f.natural_dual()).unwrap().holds());
    let m = card_fn(3, |c| c);
    assert!(is_strong_pair(&m, &m).unwrap().holds());
    let u12 = card_fn(2, |c| c.min(1));
    let bad = SetFunction::new(g(2), vec![0, 1, 1, 1]).unwrap();
    assert!(!is_strong_pair(&u12, &bad).unwrap().holds());
    assert!(is_strong_pair(&u12, &card_fn(3, |c| c)).is_err());
}

#[test]
fn mobius_examples() {
    let z = [3i64, -1, 4, 2];
    let f = SetFunction::modular(g(4), &z).unwrap();
    let mu = mobius(&f);
    for m in g(4).subsets() {
        let want = if card(m) == 1 { z[m.trailing_zeros() as usize] } else { 0 };
        assert_eq!(*mu.at(m), want);
    }
    assert!(mobius(&IntSetFn::zero(g(3)).unwrap()).mu.iter().all(|v| *v == 0));
}

#[test]
fn natural_dual_examples() {
    let f = card_fn(3, |c| c.min(2));
    let d = f.natural_dual();
    assert_eq!(*d.at(set(&[1])), 0);
    assert_eq!(*d.at(set(&[1, 2])), 1);
    assert_eq!(*d.at(set(&[1, 2, 3])), 2);
    assert_eq!(card_fn(3, |c| c).natural_dual(), card_fn(3, |c| c));
}

#[test]
fn interval_extension_examples() {
    let mut zero = BTreeMap::new();
    let mut len = BTreeMap::new();
    for a in 1..=4 {
        for b in a..=4 {
            zero.insert((a, b), 0i64);
            len.insert((a, b), (b - a + 1) as i64);
        }
    }
    assert!(interval_extension(g(4), &zero).unwrap().values().iter().all(|v| *v == 0));
    assert_eq!(interval_extension(g(4), &len).unwrap(), card_fn(4, |c| c));
    zero.remove(&(2, 3));
    assert!(interval_extension(g(4), &zero).is_err());
}

#[test]
fn local_exchange_examples() {
    let f = SetFunction::modular(g(3), &[1i64, 2, 3]).unwrap();
    assert_eq!(local_exchange(&f, 0, 1, 2).unwrap(), 0);
    let t = theta(3, &[2, 3]);
    let phi = local_exchange(&t, 0, 1, 2).unwrap();
    assert!(phi == 0 || phi == 1);
    assert!(local_exchange(&t, set(&[1]), 1, 2).is_err());
}

#[test]
fn exchange_is_zero_or_one_on_schubert_ranks() {
    for n in 2..=7 {
        for s in g(n).subsets() {
            let f = dctp_core::schubert::SchubertIndex::new(g(n), s).unwrap().rank_function();
            for x in g(n).subsets() {
                for a in 1..=n {
                    for b in a + 1..=n {
                        if subset::has(x, a) || subset::has(x, b) {
                            continue;
                        }
                        let phi = local_exchange(&f, x, a, b).unwrap();
                        assert!(phi == 0 || phi == 1);
                    }
                }
            }
        }
    }
}

#[test]
fn compatibility_examples() {
    assert!(compatibility(&theta(3, &[1, 2]), &theta(3, &[1, 3])).unwrap().holds());
    assert!(!compatibility(&theta(3, &[1, 3]), &theta(3, &[2])).unwrap().holds());
    let f = theta(4, &[2, 4]);
    assert!(compatibility(&f, &IntSetFn::zero(g(4)).unwrap()).unwrap().holds());
    assert!(compatibility(&card_fn(4, |c| c * c), &f).is_err());
}

#[test]
fn compatibility_is_pairwise() {
    // A family sum is DCTP exactly when every pair is compatible.
    let n = 4;
    let thetas: Vec<IntSetFn> = g(n).subsets().map(|s| dctp_core::schubert::SchubertIndex::new(g(n), s).unwrap().rank_function()).collect();
    for a in 0..16 {
        for b in a + 1..16 {
            for c in b + 1..16 {
                let trio = &(&thetas[a] + &thetas[b]) + &thetas[c];
                let pairs = [(a, b), (a, c), (b, c)].iter().all(|&(p, q)| is_dctp(&(&thetas[p] + &thetas[q])).holds());
                assert_eq!(is_dctp(&trio).holds(), pairs, "{a} {b} {c}");
            }
        }
    }
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..12).prop_map(|(p, q)| dctp_core::scalar::rat(p, q))
}

fn arb_table(n: usize) -> impl Strategy<Value = SetFn> {
    proptest::collection::vec(arb_rational(), 1 << n).prop_map(move |v| SetFunction::new(g(n), v).unwrap())
}

/// Random submodular function: a nonnegative combination of Schubert ranks,
/// a concave function of cardinality, and a modular part.
fn arb_submodular(n: usize) -> impl Strategy<Value = IntSetFn> {
    (
        proptest::collection::vec((0u32..(1 << n), 0i64..4), 1..4),
        proptest::collection::vec(-3i64..4, n),
        0i64..3,
    )
        .prop_map(move |(terms, z, w)| {
            let mut f = SetFunction::modular(g(n), &z).unwrap();
            for (s, c) in terms {
                f = &f + &dctp_core::schubert::SchubertIndex::new(g(n), s).unwrap().rank_function().scale(&c);
            }
            let concave = SetFunction::from_fn(g(n), |m| w * (card(m) as i64) * (n as i64 - card(m) as i64)).unwrap();
            &f + &concave
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mobius_roundtrip(n in 1usize..=10, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = SetFunction::from_fn(g(n), |_| dctp_core::scalar::rat(rng.gen_range(-99..100), rng.gen_range(1..20))).unwrap();
        prop_assert_eq!(inverse_mobius(&mobius(&f)), f);
    }

    #[test]
    fn local_and_global_submodularity_agree(f in (1usize..=5).prop_flat_map(arb_table)) {
        prop_assert_eq!(is_submodular(&f).holds(), submodular_global_violation(&f).is_none());
    }

    #[test]
    fn random_submodular_passes_both_forms(f in (1usize..=6).prop_flat_map(arb_submodular)) {
        prop_assert!(is_submodular(&f).holds());
        prop_assert!(submodular_global_violation(&f).is_none());
        prop_assert!(is_supermodular(&f.natural_dual()).holds());
        prop_assert!(is_strong_pair(&f.normalized(), &f.normalized().natural_dual()).unwrap().holds());
    }

    #[test]
    fn natural_dual_is_an_involution(f in (1usize..=6).prop_flat_map(arb_table)) {
        let f = f.normalized();
        prop_assert_eq!(f.natural_dual().natural_dual(), f);
    }

    #[test]
    fn interval_extension_has_interval_support(n in 1usize..=6, ws in proptest::collection::vec(0i64..5, 21)) {
        // h(I) = sum of nonnegative weights over subintervals, so h~ is supermodular.
        let mut y = BTreeMap::new();
        let mut it = ws.into_iter().cycle();
        for a in 1..=n { for b in a..=n { y.insert((a, b), it.next().unwrap()); } }
        let mut h = BTreeMap::new();
        for a in 1..=n { for b in a..=n {
            let v: i64 = y.iter().filter(|((c, d), _)| *c >= a && *d <= b).map(|(_, v)| *v).sum();
            h.insert((a, b), v);
        } }
        let ht = interval_extension(g(n), &h).unwrap();
        let mu = mobius(&ht);
        for m in g(n).subsets() {
            if maximal_intervals(m).len() > 1 { prop_assert!(mu.at(m).is_zero()); }
        }
        prop_assert!(is_supermodular(&ht).holds());
    }

    #[test]
    fn laminar_concave_is_dctp(n in 1usize..=6, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        // Nested and disjoint intervals form a laminar family.
        let mut parts = Vec::new();
        let mut stack = vec![(1usize, n)];
        while let Some((a, b)) = stack.pop() {
            let len = b - a + 1;
            // Concave weights: increments are non-increasing.
            let mut inc: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..6)).collect();
            inc.sort_unstable_by(|x, y| y.cmp(x));
            let mut w = vec![0i64];
            for d in inc { let last = *w.last().unwrap(); w.push(last + d); }
            parts.push((subset::interval(a, b), w));
            if len >= 2 && rng.gen_bool(0.7) {
                let cut = rng.gen_range(a..b);
                stack.push((a, cut));
                stack.push((cut + 1, b));
            }
        }
        let f = laminar_function(g(n), &parts).unwrap();
        prop_assert!(is_dctp(&f).holds());
    }
}
