use dctp_core::schubert::SchubertIndex;
use dctp_core::separation::*;
use dctp_core::setfn::is_dctp;
use dctp_core::subset::{self, card, from_elements as set, interval, GroundSet, Mask};
use dctp_core::Verdict;
use rand::{Rng, SeedableRng};

/// Weak separation straight from the definition: try every split point.
fn ws_oracle(a: Mask, b: Mask) -> bool {
    let cond = |a: Mask, b: Mask| {
        if card(a) < card(b) {
            return false;
        }
        let (amb, bma) = (subset::elements(a & !b), subset::elements(b & !a));
        (0..=bma.len()).any(|cut| {
            let (lo, hi) = bma.split_at(cut);
            lo.iter().all(|x| amb.iter().all(|y| x < y)) && hi.iter().all(|x| amb.iter().all(|y| y < x))
        })
    };
    cond(a, b) || cond(b, a)
}

fn chord_oracle(a: Mask, b: Mask) -> bool {
    let (p, q) = (a & !b, b & !a);
    let e: Vec<usize> = subset::elements(p | q);
    for (x, &i) in e.iter().enumerate() {
        for (y, &j) in e.iter().enumerate().skip(x + 1) {
            for (z, &k) in e.iter().enumerate().skip(y + 1) {
                for &l in &e[z + 1..] {
                    let side = |t| subset::has(p, t);
                    if side(i) == side(k) && side(j) == side(l) && side(i) != side(j) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn definition_examples() {
    assert!(weakly_separated(set(&[1]), set(&[1, 2])));
    assert!(!weakly_separated(set(&[1, 3]), set(&[2, 4])));
    assert!(!weakly_separated(set(&[1, 3]), set(&[2])));
    assert!(strongly_separated(set(&[1, 2]), set(&[3, 4])));
    assert!(surrounds(set(&[1, 3]), set(&[2])));
    assert!(!surrounds(set(&[2]), set(&[1, 3])));
    assert!(strongly_separated(set(&[2, 5]), set(&[2, 5])));
    assert!(!chord_separated(set(&[1, 3]), set(&[2, 4])).unwrap());
    assert!(chord_separated(set(&[1, 2]), set(&[2, 3])).unwrap());
    assert!(chord_separated(set(&[1]), set(&[2, 3])).is_err());
    assert!(weakly_separated(0, set(&[1, 3])));
}

#[test]
fn predicates_match_oracles() {
    for n in 1..=7 {
        let full = 1u32 << n;
        for a in 0..full {
            for b in 0..full {
                let ws = weakly_separated(a, b);
                assert_eq!(ws, ws_oracle(a, b), "{a:b} {b:b}");
                assert_eq!(ws, weakly_separated(b, a));
                if strongly_separated(a, b) {
                    assert!(ws);
                }
                if card(a) == card(b) {
                    assert_eq!(chord_separated(a, b).unwrap(), ws);
                    assert_eq!(chord_oracle(a, b), ws);
                }
            }
        }
    }
}

#[test]
fn family_examples() {
    for n in 1..=8 {
        let intervals: Vec<Mask> = (1..=n).flat_map(|a| (a..=n).map(move |b| interval(a, b))).collect();
        assert!(is_ws_family(&intervals).holds());
    }
    assert!(matches!(is_ws_family(&[set(&[1, 3]), set(&[2, 4])]), Verdict::Fails(_)));
    assert!(is_ws_family(&[]).holds());
}

#[test]
fn grid_reduce_example() {
    let r = grid_reduce(6, set(&[1, 4, 5]), set(&[1, 3, 4, 6]));
    assert_eq!(r.i1, set(&[3, 5, 6]));
    assert_eq!(r.i2, set(&[2, 4, 5, 6]));
    assert_eq!(r.word(), "s4s3s2s1s5s4");
    // The printed word s5s4s3s2s1s5s4 ends with a swap of two equal columns.
    let (mut a, mut b) = (set(&[1, 4, 5]), set(&[1, 3, 4, 6]));
    for i in [4, 5, 1, 2, 3, 4, 5] {
        a = subset::swap_adjacent(a, i);
        b = subset::swap_adjacent(b, i);
    }
    assert_eq!((a, b), (r.i1, r.i2));
    let secs = sections(6, r.i1, r.i2).unwrap();
    let sets: Vec<Mask> = secs.iter().map(|s| s.set).collect();
    assert_eq!(sets, vec![set(&[1]), set(&[2]), set(&[3]), set(&[4]), set(&[5, 6])]);
    assert_eq!(secs[4].kind, SectionKind::Both);
    assert!(grid_reduce(4, 0, 0).swaps.is_empty());
    let s = sections(3, interval(1, 3), interval(1, 3)).unwrap();
    assert_eq!(s.last().unwrap().set, interval(1, 3));
    assert!(sections(6, set(&[1]), 0).is_err());
}

#[test]
fn grid_reduce_confluent_and_preserves_ws() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for n in 1..=6 {
        let full = 1u32 << n;
        for a in 0..full {
            for b in 0..full {
                let r = grid_reduce(n, a, b);
                assert!(r.swaps.len() <= n * (n - 1));
                for _ in 0..3 {
                    let s = grid_reduce_by(n, a, b, |asc| asc[rng.gen_range(0..asc.len())]);
                    assert_eq!((s.i1, s.i2), (r.i1, r.i2));
                }
                assert_eq!(weakly_separated(a, b), weakly_separated(r.i1, r.i2));
                let secs = sections(n, r.i1, r.i2).unwrap();
                assert_eq!(ws_from_sections(&secs), weakly_separated(a, b), "{a:b} {b:b}");
            }
        }
    }
}

#[test]
fn ws_pairs_are_exactly_the_compatible_pairs() {
    for n in 1..=5 {
        let g = GroundSet::new(n).unwrap();
        let th: Vec<_> = g.subsets().map(|s| SchubertIndex::new(g, s).unwrap().rank_function()).collect();
        for a in g.subsets() {
            for b in g.subsets() {
                assert_eq!(weakly_separated(a, b), is_dctp(&(&th[a as usize] + &th[b as usize])).holds());
            }
        }
    }
}

#[test]
fn max_ws_extend_sizes() {
    for n in 1..=6 {
        let fam = max_ws_extend(n, &[]).unwrap();
        assert_eq!(fam.len(), n * (n + 1) / 2 + 1);
        assert!(is_ws_family(&fam).holds());
    }
    let fam = max_ws_extend(4, &[set(&[2, 4])]).unwrap();
    assert_eq!(fam.len(), 11);
    assert!(fam.contains(&set(&[2, 4])));
    assert!(max_ws_extend(4, &[set(&[1, 3]), set(&[2, 4])]).is_err());
}

#[test]
fn pad_preserves_weak_separation() {
    use dctp_core::schubert::{pad, pad_tilde};
    for n in 1..=4 {
        for a in 0..1u32 << n {
            for b in 0..1u32 << n {
                assert_eq!(weakly_separated(a, b), weakly_separated(pad(n, a), pad(n, b)));
            }
        }
        // Maximal families glued through pad and pad~ stay maximal.
        let c = max_ws_extend(n, &[]).unwrap();
        let upper: Vec<Mask> = (0..1u32 << n).map(|m| m << n).collect();
        let mut d_fam: Vec<Mask> = Vec::new();
        for &m in &upper {
            if d_fam.iter().all(|&x| weakly_separated(x, m)) {
                d_fam.push(m);
            }
        }
        let mut glued: Vec<Mask> = c.iter().map(|&x| pad(n, x)).collect();
        for &y in &d_fam {
            let p = pad_tilde(n, y).unwrap();
            if !glued.contains(&p) {
                glued.push(p);
            }
        }
        assert!(is_ws_family(&glued).holds());
        assert_eq!(glued.len(), n * n + 1);
        let extended = max_ws_extend_layer(2 * n, n, &glued);
        assert_eq!(extended.len(), glued.len());
    }
}

/// Greedy extension inside the weight-k layer only.
fn max_ws_extend_layer(n: usize, k: usize, fam: &[Mask]) -> Vec<Mask> {
    let mut out = fam.to_vec();
    for m in subset::k_subsets(n, k) {
        if !out.contains(&m) && out.iter().all(|&x| weakly_separated(x, m)) {
            out.push(m);
        }
    }
    out
}

#[test]
fn noncrossing_examples() {
    assert!(is_noncrossing_partition(4, &[set(&[1, 2]), set(&[3, 4])]).unwrap());
    assert!(!is_noncrossing_partition(4, &[set(&[1, 3]), set(&[2, 4])]).unwrap());
    assert!(is_noncrossing_partition(4, &[set(&[1, 4]), set(&[2, 3])]).unwrap());
    assert!(is_noncrossing_partition(4, &[set(&[1, 4]), set(&[2])]).is_err());
}
