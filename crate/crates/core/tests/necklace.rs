use dctp_core::necklace::*;
use dctp_core::polyhedra::{is_gmatroid, is_gpositroid, Polytope};
use dctp_core::schubert::index_from_list;
use dctp_core::separation::weakly_separated;
use dctp_core::subset::{self, card, from_elements as set, Mask};

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

/// Basis exchange, checked directly.
fn is_matroid(bases: &[Mask]) -> bool {
    !bases.is_empty()
        && bases.iter().all(|&a| {
            bases.iter().all(|&b| {
                subset::elements(a & !b)
                    .into_iter()
                    .all(|x| subset::elements(b & !a).into_iter().any(|y| bases.contains(&(a & !subset::bit(x) | subset::bit(y)))))
            })
        })
}

#[test]
fn schubert_matroids_roundtrip() {
    for n in 1..=6 {
        for i in 0..1u32 << n {
            let bases = index_from_list(n, &subset::elements(i)).unwrap().bases();
            let seq = positroid_to_necklace(n, &bases).unwrap();
            let neck = GrassmannNecklace::new(n, card(i), seq).unwrap();
            assert_eq!(necklace_to_positroid(&neck), bases, "n={n} I={i:b}");
            assert!(is_positroid(n, &bases));
            assert!(neck.is_connected());
        }
    }
}

#[test]
fn uniform_matroid_necklace() {
    let (n, k) = (5, 2);
    let seq = positroid_to_necklace(n, &subset::k_subsets(n, k)).unwrap();
    let expect: Vec<Mask> = (1..=n).map(|i| subset::bit(i) | subset::bit(i % n + 1)).collect();
    assert_eq!(seq, expect);
}

#[test]
fn rank_one_necklaces() {
    // Every nonempty set of singletons is a positroid.
    let n = 4;
    for fam in 1u32..1 << n {
        let bases: Vec<Mask> = (1..=n).filter(|&i| fam >> (i - 1) & 1 == 1).map(subset::bit).collect();
        assert!(is_positroid(n, &bases));
    }
}

#[test]
fn non_positroid_example() {
    let b = vec![set(&[1, 3]), set(&[2, 4])];
    let seq = positroid_to_necklace(4, &b).unwrap();
    assert!(GrassmannNecklace::new(4, 2, seq).is_err());
    assert!(!is_positroid(4, &b));
}

#[test]
fn positroids_in_gr24() {
    // The rank-2 matroids on [4] that are positroids: one per positroid cell.
    let all = subset::k_subsets(4, 2);
    let mut count = 0;
    for fam in 1u32..1 << all.len() {
        let bases: Vec<Mask> = all.iter().enumerate().filter(|(j, _)| fam >> j & 1 == 1).map(|(_, &b)| b).collect();
        if is_matroid(&bases) && is_positroid(4, &bases) {
            count += 1;
        }
    }
    assert_eq!(count, 33);
}

#[test]
fn necklace_validation() {
    assert!(GrassmannNecklace::new(3, 1, vec![1, 2, 4]).is_ok());
    assert!(GrassmannNecklace::new(3, 1, vec![2, 2, 4]).is_ok());
    assert!(GrassmannNecklace::new(3, 1, vec![4, 2, 1]).is_err());
    assert!(GrassmannNecklace::new(3, 1, vec![1, 2]).is_err());
}

#[test]
fn chambers() {
    let n = 4;
    let prefixes: Vec<Mask> = (0..=n).map(|j| subset::interval(1, j)).collect();
    assert_eq!(omega_chamber(&Permutation::identity(n), None).unwrap(), prefixes);
    assert_eq!(omega_chamber(&Permutation::longest(n), None).unwrap().len(), 16);
    assert_eq!(omega_domain(&Permutation::identity(n)).len(), 16);
    let suffixes: Vec<Mask> = omega_domain(&Permutation::longest(n));
    assert_eq!(suffixes.len(), n + 1);
    assert!(omega_chamber(&perm(&[1, 3, 2, 4]), Some(&perm(&[2, 1, 3, 4]))).is_err());
    assert!(Permutation::new(vec![1, 1, 2]).is_err());
}

/// Sizes of all maximal pairwise weakly separated subfamilies
/// (Bron–Kerbosch on the compatibility graph).
fn maximal_ws_sizes(family: &[Mask]) -> std::collections::BTreeSet<usize> {
    fn go(r: usize, mut p: Vec<usize>, mut x: Vec<usize>, adj: &[Vec<bool>], out: &mut std::collections::BTreeSet<usize>) {
        if p.is_empty() && x.is_empty() {
            out.insert(r);
            return;
        }
        while let Some(v) = p.pop() {
            let keep = |w: &usize| adj[v][*w];
            go(r + 1, p.iter().copied().filter(keep).collect(), x.iter().copied().filter(keep).collect(), adj, out);
            x.push(v);
        }
    }
    let adj: Vec<Vec<bool>> = family.iter().map(|&a| family.iter().map(|&b| a != b && weakly_separated(a, b)).collect()).collect();
    let mut out = std::collections::BTreeSet::new();
    go(0, (0..family.len()).collect(), vec![], &adj, &mut out);
    out
}

#[test]
fn chamber_domains_are_pure() {
    for n in 1..=4 {
        for w in Permutation::all(n) {
            let d = omega_domain(&w);
            assert_eq!(maximal_ws_sizes(&d).len(), 1, "{w:?}");
            // D(ω, ω₀) is cut out of 2^[n] by Inv(ω): count by brute force.
            let inv = w.inversions();
            let brute = (0..1u32 << n)
                .filter(|&x| inv.iter().all(|&(i, j)| !subset::has(x, i) || subset::has(x, j)))
                .count();
            assert_eq!(d.len(), brute);
        }
    }
    // The full cube: maximal weakly separated families have C(n+1, 2) + 1 sets.
    assert_eq!(maximal_ws_sizes(&(0..16).collect::<Vec<_>>()).into_iter().collect::<Vec<_>>(), vec![11]);
}

#[test]
fn embeddings() {
    for n in 1..=8 {
        assert!(ZonogonEmbedding::binary(n).is_ok());
        assert!(ZonogonEmbedding::ternary(n).is_ok());
    }
    // Equal-height vectors spaced evenly collide at n = 4 (1 + 4 = 2 + 3).
    assert!(ZonogonEmbedding::new(vec![(-3, 2), (-1, 2), (1, 2), (3, 2)]).is_err());
    assert!(ZonogonEmbedding::new(vec![(1, 1), (-1, 1)]).is_err());
}

#[test]
fn boundary_pattern_fills_the_zonogon() {
    let n = 4;
    let id = CyclicPattern::omega(&Permutation::identity(n)).unwrap();
    for e in [ZonogonEmbedding::binary(n).unwrap(), ZonogonEmbedding::ternary(n).unwrap()] {
        let d = zonogon_domains(&id, &e).unwrap();
        assert_eq!(d.inside.len(), 16);
        assert!(d.outside.is_empty() && d.ambiguous.is_empty());
    }
}

#[test]
fn omega_patterns_bound_their_chambers() {
    for n in 1..=6 {
        let embs = [ZonogonEmbedding::binary(n).unwrap(), ZonogonEmbedding::ternary(n).unwrap()];
        for w in Permutation::all(n) {
            let pat = CyclicPattern::omega(&w).unwrap();
            let expect = omega_domain(&w);
            for e in &embs {
                let d = zonogon_domains(&pat, e).unwrap();
                assert_eq!(d.inside, expect, "{w:?}");
                assert_eq!(zonogon_domains(&pat.reversed(), e).unwrap(), d);
                assert_eq!(d.inside.len() + d.outside.len() + d.ambiguous.len(), 1 << n);
            }
        }
    }
}

#[test]
fn omega_polytopes() {
    for n in 1..=4 {
        let e = ZonogonEmbedding::binary(n).unwrap();
        let cube = Polytope::from_masks(n, &(0..1 << n).collect::<Vec<_>>()).unwrap();
        for w in Permutation::all(n) {
            let pat = CyclicPattern::omega(&w).unwrap();
            let p = gm_from_pattern(&pat, &e).unwrap();
            assert_eq!(p, Polytope::from_masks(n, &omega_domain(&w)).unwrap());
            assert_eq!(padded_necklace(&pat).unwrap().k(), n);
            // The projected positroid always contains P(ω) and is a g-positroid.
            let proj = Polytope::from_masks(n, &projected_positroid(&pat).unwrap()).unwrap();
            let r = is_gpositroid(&proj).unwrap();
            assert!(r.agree() && r.holds(), "{w:?}");
            assert!(p.vertices().iter().all(|v| proj.contains(v)));
            // P(ω) is a g-matroid only at the identity, where it is the cube.
            let id = w == Permutation::identity(n);
            assert_eq!(is_gmatroid(&p), id, "{w:?}");
            if id {
                assert_eq!(p, cube);
            }
        }
    }
    // Smallest case by hand: Conv{0, e_2, e_1 + e_2} has the facet x_1 ≤ x_2.
    let p = Polytope::from_masks(2, &omega_domain(&perm(&[2, 1]))).unwrap();
    assert_eq!(p, Polytope::from_masks(2, &[0, 2, 3]).unwrap());
    assert!(!is_gmatroid(&p));
}

#[test]
fn retraced_segment_is_weakly_simple() {
    let e = ZonogonEmbedding::binary(3).unwrap();
    let seg = CyclicPattern::new(3, vec![set(&[1]), set(&[2])]).unwrap();
    assert!(is_non_self_intersecting(&seg, &e).holds());
    let d = zonogon_domains(&seg, &e).unwrap();
    assert!(d.inside.contains(&set(&[1])) && d.inside.contains(&set(&[2])));
    assert!(CyclicPattern::new(3, vec![set(&[1]), set(&[2, 3])]).is_err());
    assert!(CyclicPattern::new(4, vec![set(&[1, 3]), set(&[2, 4])]).is_err());
}
