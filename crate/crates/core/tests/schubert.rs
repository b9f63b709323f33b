use dctp_core::schubert::*;
use dctp_core::setfn::{is_dctp, is_submodular};
use dctp_core::subset::{self, card, from_elements as set, interval, GroundSet};
use dctp_core::scalar::{int, rat};
use dctp_core::Rational;

fn idx(n: usize, elems: &[usize]) -> SchubertIndex {
    index_from_list(n, elems).unwrap()
}

/// Matroid rank from the basis list: max |B ∩ J|.
fn oracle_rank(bases: &[u32], j: u32) -> usize {
    bases.iter().map(|&b| card(b & j)).max().unwrap_or(0)
}

#[test]
fn figure_one_instance() {
    let i = idx(10, &[4, 5, 6, 8, 9]);
    assert_eq!(i.rank(set(&[1, 2, 3, 4, 7, 8])), 5);
    assert_eq!(bracket_word(10, set(&[4, 5, 6, 8, 9]), set(&[1, 2, 3, 4, 7, 8])), "(((*))(*) ");
}

#[test]
fn bracket_rank_matches_basis_oracle() {
    for n in 1..=6 {
        let g = GroundSet::new(n).unwrap();
        for s in g.subsets() {
            let i = SchubertIndex::new(g, s).unwrap();
            let bases = i.bases();
            for j in g.subsets() {
                assert_eq!(i.rank(j), oracle_rank(&bases, j), "n={n} I={s:b} J={j:b}");
            }
        }
    }
}

#[test]
fn bases_examples() {
    let i = idx(4, &[2, 4]);
    let expect: Vec<u32> = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4]].iter().map(|e| set(e)).collect();
    let mut got = i.bases();
    got.sort();
    let mut want = expect.clone();
    want.sort();
    assert_eq!(got, want);
    assert_eq!(idx(5, &[1, 2]).bases(), vec![set(&[1, 2])]);
    assert_eq!(idx(6, &[4, 5, 6]).bases().len(), 20);
}

#[test]
fn ranks_are_dctp() {
    for n in 1..=6 {
        let g = GroundSet::new(n).unwrap();
        for s in g.subsets() {
            let f = SchubertIndex::new(g, s).unwrap().rank_function();
            assert!(is_submodular(&f).holds());
            assert!(is_dctp(&f).holds(), "n={n} I={s:b}");
        }
    }
}

#[test]
fn decomposition_examples() {
    let d = idx(6, &[1, 3, 5]).cyclic_decomposition().unwrap();
    assert_eq!(d.sigma(), 3);
    let parts: Vec<u32> = d.blocks.iter().map(|b| b.i_part).collect();
    assert_eq!(parts, vec![set(&[1]), set(&[3]), set(&[5])]);
    assert_eq!(d.blocks[0].s, set(&[1, 6]));
    let ends: Vec<usize> = d.blocks.iter().map(|b| b.end).collect();
    assert_eq!(ends, vec![1, 3, 5]);
    assert_eq!(idx(10, &[4, 5, 6, 8, 9]).cyclic_decomposition().unwrap().sigma(), 2);
    assert_eq!(idx(7, &[1, 6, 7]).cyclic_decomposition().unwrap().sigma(), 1);
    assert!(idx(4, &[]).cyclic_decomposition().is_err());
}

#[test]
fn hypersimplex_forms_example() {
    let d = idx(6, &[1, 3, 5]).cyclic_decomposition().unwrap();
    let forms = d.forms();
    assert_eq!(forms[0], PrefixForm { prefix: 5, constant: 0 });
    assert_eq!(forms[1], PrefixForm { prefix: 1, constant: 2 });
    assert_eq!(forms[2], PrefixForm { prefix: 3, constant: 1 });
    // e_{123}: the three forms give 3, 3, 4.
    let x: Vec<Rational> = subset::indicator(6, set(&[1, 2, 3])).into_iter().map(int).collect();
    let cones = d.cones();
    let i = cones.membership(&x).unwrap();
    let vals: Vec<Rational> = forms.iter().map(|f| f.eval(&x)).collect();
    let min = vals.iter().min().unwrap();
    assert_eq!(&vals[i], min);
}

#[test]
fn lemma_one_counting_formula() {
    // On the weight-k layer the rank equals the form of the cone holding e_J.
    for n in 1..=7 {
        let g = GroundSet::new(n).unwrap();
        for s in g.subsets().filter(|&s| s != 0) {
            let i = SchubertIndex::new(g, s).unwrap();
            let d = i.cyclic_decomposition().unwrap();
            let cones = d.cones();
            let forms = d.forms();
            for j in subset::k_subsets(n, i.k()) {
                let x: Vec<Rational> = subset::indicator(n, j).into_iter().map(int).collect();
                let c = cones.membership(&x).unwrap();
                assert_eq!(forms[c].eval_set(j), i.rank(j) as i64, "n={n} I={s:b} J={j:b}");
                let m = forms.iter().map(|f| f.eval_set(j)).min().unwrap();
                assert_eq!(m, i.rank(j) as i64);
            }
        }
    }
}

#[test]
fn cube_forms_agree_with_case_table_and_ranks() {
    for n in 1..=7 {
        let g = GroundSet::new(n).unwrap();
        for s in g.subsets() {
            let i = SchubertIndex::new(g, s).unwrap();
            let pad_forms = cube_forms(&i);
            let case_forms = cube_forms_by_case(&i);
            for j in g.subsets() {
                let a = pad_forms.iter().map(|f| f.eval_set(j)).min().unwrap();
                let b = case_forms.iter().map(|f| f.eval_set(j)).min().unwrap();
                assert_eq!(a, i.rank(j) as i64, "pad n={n} I={s:b} J={j:b}");
                assert_eq!(b, i.rank(j) as i64, "case n={n} I={s:b} J={j:b} {:?}", cube_case(&i));
            }
            if !i.is_prefix() {
                assert_eq!(pad_forms.len(), case_forms.len());
            }
        }
    }
}

#[test]
fn pad_examples_and_lemma() {
    assert_eq!(pad(4, set(&[2, 4])), set(&[2, 4, 7, 8]));
    assert_eq!(pad(5, interval(1, 2)), interval(1, 2) | interval(8, 10));
    assert_eq!(pad_tilde(3, set(&[5, 6])).unwrap(), set(&[3, 5, 6]));
    for n in 1..=4 {
        let g = GroundSet::new(n).unwrap();
        for s in g.subsets() {
            let k = card(s);
            let p = pad(n, s);
            for x in subset::k_subsets(2 * n, n) {
                assert_eq!(rank_bracket(2 * n, p, x), rank_bracket(n, s, x & interval(1, n)) + n - k);
            }
        }
    }
}

#[test]
fn cube_extension_at_unit_point() {
    let i = idx(6, &[1, 3, 5]);
    let x: Vec<Rational> = subset::indicator(6, i.set()).into_iter().map(int).collect();
    assert_eq!(concave_ext_cube(&i, &x).unwrap(), int(3));
    let half = vec![rat(1, 2); 6];
    assert!(concave_ext_cube(&i, &half).is_ok());
    assert!(concave_ext_cube(&i, &[int(2), int(0), int(0), int(0), int(0), int(0)]).is_err());
}

#[test]
fn common_face_cases() {
    let f = common_face(&idx(6, &[1, 3, 5])).unwrap();
    assert_eq!(f.case, CubeCase::One);
    assert!(f.factors.contains(&FaceFactor::Cube { s: set(&[1, 6]) }));
    assert_eq!(f.codim(), 2);
    let f = common_face(&idx(3, &[2, 3])).unwrap();
    assert_eq!(f.case, CubeCase::TwoB);
    assert_eq!(f.factors, vec![FaceFactor::Simplex { s: set(&[1, 2, 3]), k: 2 }]);
    assert!(matches!(common_face(&idx(4, &[1, 2])), Err(dctp_core::Error::Trivial(_))));
}
