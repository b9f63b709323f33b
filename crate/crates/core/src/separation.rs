//! Weak, strong and chord separation, grid reduction at ascents, and
//! non-crossing partitions.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::subset::{self, bit, card, has, max_elem, min_elem, ser_mask, Mask};
use crate::verdict::Verdict;

/// Every element of `b` exceeds every element of `a` (vacuous if either is empty).
pub fn precedes(a: Mask, b: Mask) -> bool {
    match (max_elem(a), min_elem(b)) {
        (Some(x), Some(y)) => x < y,
        _ => true,
    }
}

/// `B − A` splits as `B' ≺ A − B ≺ B''`: no element of `B − A` lies between
/// the extremes of `A − B`.
fn splits_around(a: Mask, b: Mask) -> bool {
    let (amb, bma) = (a & !b, b & !a);
    match (min_elem(amb), max_elem(amb)) {
        (Some(lo), Some(hi)) => bma & subset::interval(lo, hi) == 0,
        _ => true,
    }
}

pub fn weakly_separated(a: Mask, b: Mask) -> bool {
    (card(a) >= card(b) && splits_around(a, b)) || (card(b) >= card(a) && splits_around(b, a))
}

/// One difference lies entirely before the other.
pub fn strongly_separated(a: Mask, b: Mask) -> bool {
    precedes(a & !b, b & !a) || precedes(b & !a, a & !b)
}

/// `outer` surrounds `inner`: `outer − inner` has elements on both sides of
/// `inner − outer` and none between.
pub fn surrounds(outer: Mask, inner: Mask) -> bool {
    let (o, i) = (outer & !inner, inner & !outer);
    let (Some(lo), Some(hi)) = (min_elem(i), max_elem(i)) else {
        return false;
    };
    o & subset::interval(lo, hi) == 0 && o & subset::full(lo - 1) != 0 && o >> hi != 0
}

/// No `i<j<k<l` alternating between `A − B` and `B − A`. Sizes must agree.
pub fn chord_separated(a: Mask, b: Mask) -> Result<bool> {
    if card(a) != card(b) {
        return invalid("chord separation compares sets of equal size");
    }
    // Runs of the symmetric difference, labelled by side; crossing needs 4 runs.
    let mut runs = 0;
    let mut last = None;
    for e in subset::elements(a ^ b) {
        let side = has(a, e);
        if last != Some(side) {
            runs += 1;
            last = Some(side);
        }
    }
    Ok(runs <= 3)
}

/// Pair of family members that fail weak separation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    #[serde(serialize_with = "ser_mask")]
    pub a: Mask,
    #[serde(serialize_with = "ser_mask")]
    pub b: Mask,
}

/// Pairwise check of a family against `sep`.
pub fn family_check(family: &[Mask], sep: impl Fn(Mask, Mask) -> bool) -> Verdict<PairWitness> {
    for (i, &a) in family.iter().enumerate() {
        for &b in &family[i + 1..] {
            if !sep(a, b) {
                return Verdict::Fails(PairWitness { a, b });
            }
        }
    }
    Verdict::Holds
}

pub fn is_ws_family(family: &[Mask]) -> Verdict<PairWitness> {
    family_check(family, weakly_separated)
}

/// `i` is an ascent when no row meets `{i, i+1}` in exactly `{i+1}` and some
/// row meets it in exactly `{i}` (otherwise the swap does nothing).
pub fn is_ascent(rows: &[Mask], i: usize) -> bool {
    let pattern = |r: Mask| (has(r, i), has(r, i + 1));
    rows.iter().all(|&r| pattern(r) != (false, true)) && rows.iter().any(|&r| pattern(r) == (true, false))
}

pub fn ascents(n: usize, rows: &[Mask]) -> Vec<usize> {
    (1..n).filter(|&i| is_ascent(rows, i)).collect()
}

/// Result of swapping columns at ascents until none remain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridReduction {
    #[serde(serialize_with = "ser_mask")]
    pub i1: Mask,
    #[serde(serialize_with = "ser_mask")]
    pub i2: Mask,
    /// Swaps in the order they were applied.
    pub swaps: Vec<usize>,
}

impl GridReduction {
    /// The word written as an operator product, e.g. `s5s4s3`.
    pub fn word(&self) -> String {
        self.swaps.iter().rev().map(|i| format!("s{i}")).collect()
    }
}

/// Grid reduction choosing the largest ascent each time.
pub fn grid_reduce(n: usize, i1: Mask, i2: Mask) -> GridReduction {
    grid_reduce_by(n, i1, i2, |asc| *asc.last().unwrap())
}

/// Grid reduction with a caller-chosen ascent at each step.
pub fn grid_reduce_by(n: usize, mut i1: Mask, mut i2: Mask, mut pick: impl FnMut(&[usize]) -> usize) -> GridReduction {
    let mut swaps = Vec::new();
    loop {
        let asc = ascents(n, &[i1, i2]);
        if asc.is_empty() {
            return GridReduction { i1, i2, swaps };
        }
        let i = pick(&asc);
        debug_assert!(asc.contains(&i));
        i1 = subset::swap_adjacent(i1, i);
        i2 = subset::swap_adjacent(i2, i);
        swaps.push(i);
    }
}

/// Which rows a section belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    Neither,
    First,
    Second,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    #[serde(serialize_with = "ser_mask")]
    pub set: Mask,
    pub kind: SectionKind,
}

/// Sections `A_0 < A_1 < ... < A_s` of an ascent-free grid. `A_0` (neither
/// row) and `A_s` (both rows) are always present, possibly empty.
pub fn sections(n: usize, i1: Mask, i2: Mask) -> Result<Vec<Section>> {
    if !ascents(n, &[i1, i2]).is_empty() {
        return invalid("grid still has ascents");
    }
    let kind = |e: usize| match (has(i1, e), has(i2, e)) {
        (false, false) => SectionKind::Neither,
        (true, false) => SectionKind::First,
        (false, true) => SectionKind::Second,
        (true, true) => SectionKind::Both,
    };
    let mut out: Vec<Section> = vec![Section { set: 0, kind: SectionKind::Neither }];
    for e in 1..=n {
        let k = kind(e);
        let last = out.last_mut().unwrap();
        if last.kind == k {
            last.set |= bit(e);
        } else {
            out.push(Section { set: bit(e), kind: k });
        }
    }
    if out.last().unwrap().kind != SectionKind::Both {
        out.push(Section { set: 0, kind: SectionKind::Both });
    }
    Ok(out)
}

/// Weak separation read off the sections: fails exactly when some inner
/// single-row section is outweighed by its two neighbours.
pub fn ws_from_sections(secs: &[Section]) -> bool {
    let single: Vec<usize> = secs
        .iter()
        .filter(|s| matches!(s.kind, SectionKind::First | SectionKind::Second))
        .map(|s| card(s.set))
        .collect();
    single.windows(3).all(|w| w[0] + w[2] <= w[1])
}

/// Greedy maximal weakly separated extension in `(size, mask)` order.
pub fn max_ws_extend(n: usize, family: &[Mask]) -> Result<Vec<Mask>> {
    if let Verdict::Fails(w) = is_ws_family(family) {
        return invalid(format!("family is not weakly separated: {} vs {}", subset::show(w.a), subset::show(w.b)));
    }
    let mut out: Vec<Mask> = family.to_vec();
    let mut order: Vec<Mask> = (0..1u32 << n).collect();
    order.sort_by_key(|&m| (card(m), m));
    for m in order {
        if !out.contains(&m) && out.iter().all(|&c| weakly_separated(c, m)) {
            out.push(m);
        }
    }
    out.sort_by_key(|&m| (card(m), m));
    Ok(out)
}

/// No two parts interleave as `a<b<c<d` with `a,c` in one part and `b,d` in another.
pub fn is_noncrossing_partition(n: usize, parts: &[Mask]) -> Result<bool> {
    let mut seen = 0;
    for &p in parts {
        if p == 0 || p & seen != 0 {
            return invalid("parts must be nonempty and disjoint");
        }
        seen |= p;
    }
    if seen != subset::full(n) {
        return invalid("parts do not cover [n]");
    }
    Ok(parts.iter().enumerate().all(|(i, &p)| parts[i + 1..].iter().all(|&q| !crossing(p, q))))
}

/// Two disjoint sets interleave as `a<b<c<d`, `a,c ∈ p`, `b,d ∈ q` (either way).
pub fn crossing(p: Mask, q: Mask) -> bool {
    let mut runs = 0;
    let mut last = None;
    for e in subset::elements(p | q) {
        let side = has(p, e);
        if last != Some(side) {
            runs += 1;
            last = Some(side);
        }
    }
    runs >= 4
}
