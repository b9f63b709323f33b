use dctp_core::crystal::*;
use dctp_core::schubert::SchubertIndex;
use dctp_core::separation::{ascents, grid_reduce, weakly_separated};
use dctp_core::setfn::{is_dctp, SetFunction};
use dctp_core::subset::{from_elements as set, has, swap_adjacent, GroundSet, Mask};
use dctp_core::IntSetFn;

fn theta(g: GroundSet, s: Mask) -> IntSetFn {
    SchubertIndex::new(g, s).unwrap().rank_function()
}

fn pair(g: GroundSet, a: Mask, b: Mask) -> IntSetFn {
    &theta(g, a) + &theta(g, b)
}

fn ascent_multiplicity(a: Mask, b: Mask, i: usize) -> usize {
    [a, b].iter().filter(|&&r| has(r, i) && !has(r, i + 1)).count()
}

#[test]
fn ascent_swap_identity() {
    for n in 2..=5 {
        let g = GroundSet::new(n).unwrap();
        for a in g.subsets() {
            for b in g.subsets() {
                for i in ascents(n, &[a, b]) {
                    let l = ascent_multiplicity(a, b, i);
                    let mut raised = pair(g, a, b);
                    for _ in 0..l {
                        raised = raise_table(&raised, i);
                    }
                    if weakly_separated(a, b) {
                        assert_eq!(raise_pow(&pair(g, a, b), i, l).unwrap(), raised);
                    }
                    let swapped = pair(g, swap_adjacent(a, i), swap_adjacent(b, i));
                    assert_eq!(raised, swapped, "n={n} {a:b} {b:b} i={i}");
                }
            }
        }
    }
}

#[test]
fn raise_preserves_dctp_and_fixes_inactive_sets() {
    for n in 2..=5 {
        let g = GroundSet::new(n).unwrap();
        for a in g.subsets() {
            for b in g.subsets().filter(|&b| weakly_separated(a, b)) {
                let f = pair(g, a, b);
                for i in 1..n {
                    let r = raise(&f, i).unwrap();
                    assert!(is_dctp(&r).holds());
                    for x in g.subsets().filter(|&x| !is_active(x, i)) {
                        assert_eq!(r.at(x), f.at(x));
                    }
                }
            }
        }
    }
}

#[test]
fn raise_rejects_bad_input() {
    let g = GroundSet::new(3).unwrap();
    let sq = SetFunction::from_fn(g, |m| (m.count_ones() as i64).pow(2)).unwrap();
    assert!(raise(&sq, 1).is_err());
    assert!(raise(&theta(g, set(&[1])), 3).is_err());
}

#[test]
fn lower_inverts_raise() {
    for n in 2..=4 {
        let g = GroundSet::new(n).unwrap();
        for a in g.subsets() {
            for b in g.subsets().filter(|&b| weakly_separated(a, b)) {
                let f = pair(g, a, b);
                for i in 1..n {
                    let r = raise(&f, i).unwrap();
                    assert_ne!(r, f);
                    assert_eq!(lower(&r, i).unwrap(), Some(f.clone()), "n={n} {a:b} {b:b} i={i}");
                }
            }
        }
    }
}

#[test]
fn lower_absent_for_unraisable() {
    // theta_{[1,j]} sums sit at the bottom of the crystal: nothing lowers to a
    // function that raises onto the zero function.
    let g = GroundSet::new(3).unwrap();
    let zero = IntSetFn::zero(g).unwrap();
    assert_eq!(lower(&zero, 1).unwrap(), None);
    let sq = SetFunction::from_fn(g, |m| (m.count_ones() as i64).pow(2)).unwrap();
    assert_eq!(lower(&sq, 1).unwrap(), None);
}

#[test]
fn example_swap_word_replays_backwards() {
    // The example pair is not weakly separated, so the walk back searches
    // Schubert pairs rather than DCTP preimages.
    let n = 6;
    let g = GroundSet::new(n).unwrap();
    let (i1, i2) = (set(&[1, 4, 5]), set(&[1, 3, 4, 6]));
    let red = grid_reduce(n, i1, i2);
    let mut states = vec![(i1, i2)];
    for &i in &red.swaps {
        let (a, b) = *states.last().unwrap();
        states.push((swap_adjacent(a, i), swap_adjacent(b, i)));
    }
    let mut f = pair(g, red.i1, red.i2);
    for (step, &i) in red.swaps.iter().enumerate().rev() {
        let (a, b) = states[step];
        let found = lower_schubert_pairs(&f, i, ascent_multiplicity(a, b, i)).unwrap();
        let key = (a.min(b), a.max(b));
        assert!(found.contains(&key), "step {step}: {found:?}");
        f = pair(g, a, b);
    }
    assert_eq!(f, pair(g, i1, i2));
}

#[test]
fn dctp_replay_with_lower() {
    // A weakly separated pair walked back with the DCTP preimage search.
    let n = 5;
    let g = GroundSet::new(n).unwrap();
    let (i1, i2) = (set(&[1, 2, 4]), set(&[1, 4]));
    assert!(weakly_separated(i1, i2));
    let red = grid_reduce(n, i1, i2);
    let mut states = vec![(i1, i2)];
    for &i in &red.swaps {
        let (a, b) = *states.last().unwrap();
        states.push((swap_adjacent(a, i), swap_adjacent(b, i)));
    }
    let mut f = pair(g, red.i1, red.i2);
    for (step, &i) in red.swaps.iter().enumerate().rev() {
        let (a, b) = states[step];
        for _ in 0..ascent_multiplicity(a, b, i) {
            f = lower(&f, i).unwrap().expect("preimage exists");
        }
        assert_eq!(f, pair(g, a, b));
    }
}

#[test]
fn compatibility_survives_reduction() {
    for n in 1..=5 {
        let g = GroundSet::new(n).unwrap();
        for a in g.subsets() {
            for b in g.subsets() {
                let r = grid_reduce(n, a, b);
                assert_eq!(is_dctp(&pair(g, a, b)).holds(), is_dctp(&pair(g, r.i1, r.i2)).holds());
            }
        }
    }
}
