//! g-polymatroids, g-matroids and the three g-positroid tests.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::polytope::{indicator, ser_point, Point, Polytope};
use crate::error::{invalid, precondition, Result};
use crate::necklace::is_positroid;
use crate::separation::{crossing, surrounds};
use crate::setfn::{is_strong_pair, SetFunction, StrongPairWitness};
use crate::subset::{self, card, elements, full, ser_mask, ser_masks, GroundSet, Mask};
use crate::verdict::Verdict;
use crate::{IntSetFn, SetFn};

/// `(f, g)` with `f(S) = max x(S)` and `g(S) = min x(S)` over the polytope.
pub fn support_pair(p: &Polytope) -> Result<(SetFn, SetFn)> {
    if p.is_empty() {
        return invalid("support functions of the empty polytope");
    }
    let ground = GroundSet::new(p.n())?;
    let sums = |m: Mask| -> Vec<BigRational> {
        p.vertices().iter().map(|v| elements(m).iter().map(|&i| &v[i - 1]).sum()).collect()
    };
    let f = SetFunction::from_fn(ground, |m| sums(m).into_iter().max().unwrap())?;
    let g = SetFunction::from_fn(ground, |m| sums(m).into_iter().min().unwrap())?;
    Ok((f, g))
}

/// Support pair of a 01 point set.
pub fn support_pair_masks(n: usize, pts: &[Mask]) -> Result<(IntSetFn, IntSetFn)> {
    if pts.is_empty() {
        return invalid("support functions of the empty point set");
    }
    let ground = GroundSet::new(n)?;
    let f = SetFunction::from_fn(ground, |m| pts.iter().map(|&y| card(y & m) as i64).max().unwrap())?;
    let g = SetFunction::from_fn(ground, |m| pts.iter().map(|&y| card(y & m) as i64).min().unwrap())?;
    Ok((f, g))
}

/// 01 points of `Q(f, g) = {x : g(S) ≤ x(S) ≤ f(S)}`.
pub fn q_points(f: &IntSetFn, g: &IntSetFn) -> Vec<Mask> {
    let n = f.n();
    (0..1u32 << n)
        .filter(|&y| (0..1u32 << n).all(|s| (g.at(s)..=f.at(s)).contains(&&(card(y & s) as i64))))
        .collect()
}

/// Parallel to `±e_i` or `e_i − e_j`.
pub fn edge_direction_ok(d: &[BigRational]) -> bool {
    let nz: Vec<&BigRational> = d.iter().filter(|x| !x.is_zero()).collect();
    match nz.as_slice() {
        [_] => true,
        [a, b] => *a == &-(*b).clone(),
        _ => false,
    }
}

/// An edge whose direction is not in `A_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeWitness {
    #[serde(serialize_with = "ser_point")]
    pub from: Point,
    #[serde(serialize_with = "ser_point")]
    pub to: Point,
}

/// Every edge is parallel to some `±e_i` or `e_i − e_j`.
pub fn is_gpolymatroid(p: &Polytope) -> Verdict<EdgeWitness> {
    let vs = p.vertices();
    Verdict::from_option(p.edges().into_iter().find_map(|(u, v)| {
        let d: Point = vs[u].iter().zip(&vs[v]).map(|(a, b)| a - b).collect();
        (!edge_direction_ok(&d)).then(|| EdgeWitness { from: vs[u].clone(), to: vs[v].clone() })
    }))
}

/// 01 vertices and `A_n` edges.
pub fn is_gmatroid(p: &Polytope) -> bool {
    !p.is_empty() && p.is_zero_one() && is_gpolymatroid(p).holds()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum GMatroidWitness {
    /// The recovered support functions are not a strong pair.
    Pair { failure: StrongPairWitness },
    /// A 01 point of `Q(f, g)` missing from the set.
    Extra {
        #[serde(serialize_with = "ser_mask")]
        point: Mask,
    },
}

/// A 01 point set is the vertex set of a g-matroid: its support pair is a
/// strong pair whose 01 points are exactly the set.
pub fn is_gmatroid_points(n: usize, pts: &[Mask]) -> Result<Verdict<GMatroidWitness>> {
    let (f, g) = support_pair_masks(n, pts)?;
    if let Verdict::Fails(failure) = is_strong_pair(&f, &g)? {
        return Ok(Verdict::Fails(GMatroidWitness::Pair { failure }));
    }
    let mut own = pts.to_vec();
    own.sort_unstable();
    Ok(Verdict::from_option(
        q_points(&f, &g).into_iter().find(|y| own.binary_search(y).is_err()).map(|point| GMatroidWitness::Extra { point }),
    ))
}

/// The polytope `QI(f, g)` cut out by interval constraints only.
pub fn interval_polytope(f: &SetFn, g: &SetFn) -> Result<Polytope> {
    let n = f.n();
    let mut ineqs = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            let m = subset::interval(a, b);
            let row = indicator(n, m);
            let neg: Point = row.iter().map(|x| -x).collect();
            ineqs.push((row, f.at(m).clone()));
            ineqs.push((neg, -g.at(m).clone()));
        }
    }
    Polytope::from_hrep(n, &[], &ineqs)
}

/// Interval test: `Q(f, g) = QI(f, g)` for the recovered pair. Compares the
/// polytopes exactly: a vertex of `QI` outside `P` is the witness.
pub fn gpositroid_by_intervals(p: &Polytope) -> Result<Verdict<IntervalWitness>> {
    let (f, g) = support_pair(p)?;
    let qi = interval_polytope(&f, &g)?;
    Ok(Verdict::from_option(qi.vertices().iter().find(|v| !p.contains(v)).map(|v| IntervalWitness { point: v.clone() })))
}

/// A vertex of the interval relaxation that is not in the polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalWitness {
    #[serde(serialize_with = "ser_point")]
    pub point: Point,
}

/// `P = P_1 × ⋯ × P_k × Q_0` along the minimal sum-sets `S_i` and the rest `T`.
#[derive(Clone, Debug, Serialize)]
pub struct ProductDecomposition {
    #[serde(serialize_with = "ser_masks")]
    pub parts: Vec<Mask>,
    #[serde(serialize_with = "ser_mask")]
    pub rest: Mask,
    /// Factor on each `S_i`, in the induced coordinates.
    pub factors: Vec<Polytope>,
    /// Factor on `T`; `None` when `T` is empty.
    pub free: Option<Polytope>,
    /// `dim P = n − k`.
    pub dim_matches: bool,
}

/// Minimal nonempty `S` with `f(S) = g(S)`.
pub fn minimal_sum_sets(f: &SetFn, g: &SetFn) -> Vec<Mask> {
    let sum: Vec<Mask> = (1..1u32 << f.n()).filter(|&s| f.at(s) == g.at(s)).collect();
    sum.iter().copied().filter(|&s| !sum.iter().any(|&t| t != s && t & !s == 0)).collect()
}

pub fn product_decomposition(p: &Polytope) -> Result<ProductDecomposition> {
    if let Verdict::Fails(w) = is_gpolymatroid(p) {
        return precondition(format!("not a g-polymatroid: edge {w:?}"));
    }
    let (f, g) = support_pair(p)?;
    let n = p.n();
    let parts = minimal_sum_sets(&f, &g);
    let rest = full(n) & !parts.iter().fold(0, |a, &s| a | s);
    let coords = |m: Mask| elements(m).into_iter().map(|i| i - 1).collect::<Vec<_>>();
    let factors = parts.iter().map(|&s| p.project(&coords(s))).collect::<Result<Vec<_>>>()?;
    let free = if rest == 0 { None } else { Some(p.project(&coords(rest))?) };
    Ok(ProductDecomposition { dim_matches: p.dim() == Some(n - parts.len()), parts, rest, factors, free })
}

/// Why the product test failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ProductWitness {
    Crossing {
        #[serde(serialize_with = "ser_mask")]
        a: Mask,
        #[serde(serialize_with = "ser_mask")]
        b: Mask,
    },
    Surrounds {
        #[serde(serialize_with = "ser_mask")]
        part: Mask,
    },
    /// The base factor on this part is not a positroid.
    Factor {
        #[serde(serialize_with = "ser_mask")]
        part: Mask,
    },
    /// The full-dimensional factor is not a g-positroid.
    Free,
}

/// Relabels 01 points on the elements of `m` to `[|m|]`.
fn restrict(pts: &[Mask], m: Mask) -> Vec<Mask> {
    let es = elements(m);
    let mut out: Vec<Mask> = pts
        .iter()
        .map(|&y| es.iter().enumerate().filter(|(_, &e)| subset::has(y, e)).fold(0, |a, (k, _)| a | 1 << k))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Lifts points on `[m]` to `C([2m], m)` by completing with new elements
/// `m+1, …, 2m`.
fn lift(m: usize, pts: &[Mask]) -> Vec<Mask> {
    let mut out = Vec::new();
    for &y in pts {
        for z in subset::k_subsets(m, m - card(y)) {
            out.push(y | z << m);
        }
    }
    out.sort_unstable();
    out
}

/// Product test: the minimal sum-sets and the rest form a non-crossing
/// partition, no sum-set surrounds the rest, every base factor is a
/// positroid and the free factor is a g-positroid.
pub fn gpositroid_by_product(p: &Polytope) -> Result<Verdict<ProductWitness>> {
    if !is_gmatroid(p) {
        return precondition("not a g-matroid");
    }
    let dec = product_decomposition(p)?;
    let mut blocks = dec.parts.clone();
    if dec.rest != 0 {
        blocks.push(dec.rest);
    }
    for (i, &a) in blocks.iter().enumerate() {
        for &b in &blocks[i + 1..] {
            if crossing(a, b) {
                return Ok(Verdict::Fails(ProductWitness::Crossing { a, b }));
            }
        }
    }
    if dec.rest != 0 {
        if let Some(&part) = dec.parts.iter().find(|&&s| surrounds(s, dec.rest)) {
            return Ok(Verdict::Fails(ProductWitness::Surrounds { part }));
        }
    }
    let pts = p.zero_one_vertices();
    for &s in &dec.parts {
        if !is_positroid(card(s), &restrict(&pts, s)) {
            return Ok(Verdict::Fails(ProductWitness::Factor { part: s }));
        }
    }
    if dec.rest != 0 {
        let m = card(dec.rest);
        if !is_positroid(2 * m, &lift(m, &restrict(&pts, dec.rest))) {
            return Ok(Verdict::Fails(ProductWitness::Free));
        }
    }
    Ok(Verdict::Holds)
}

/// A 2-face with vertices `e_X` plus one of the forbidden square patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    #[serde(serialize_with = "ser_mask")]
    pub x: Mask,
    pub indices: Vec<usize>,
    #[serde(serialize_with = "ser_masks")]
    pub vertices: Vec<Mask>,
}

/// Face test: no 2-face has vertices `{Xij, Xjk, Xk, Xi}` (`i<j<k`) or
/// `{Xij, Xjk, Xkl, Xli}` (`i<j<k<l`).
pub fn gpositroid_by_faces(p: &Polytope) -> Result<Verdict<SquareWitness>> {
    if !is_gmatroid(p) {
        return precondition("not a g-matroid");
    }
    let n = p.n();
    let index: HashMap<Mask, usize> = p.zero_one_vertices().into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let b = subset::bit;
    let is_face = |sq: &[Mask]| -> bool {
        let ids: Option<Vec<usize>> = sq.iter().map(|m| index.get(m).copied()).collect();
        ids.is_some_and(|ids| p.face_closure(&ids).len() == 4)
    };
    for x in 0..1u32 << n {
        let free: Vec<usize> = (1..=n).filter(|&e| !subset::has(x, e)).collect();
        for (ai, &i) in free.iter().enumerate() {
            for (bj, &j) in free.iter().enumerate().skip(ai + 1) {
                for (ck, &k) in free.iter().enumerate().skip(bj + 1) {
                    let sq = [x | b(i) | b(j), x | b(j) | b(k), x | b(k), x | b(i)];
                    if is_face(&sq) {
                        return Ok(Verdict::Fails(SquareWitness { x, indices: vec![i, j, k], vertices: sq.to_vec() }));
                    }
                    for &l in &free[ck + 1..] {
                        let sq = [x | b(i) | b(j), x | b(j) | b(k), x | b(k) | b(l), x | b(l) | b(i)];
                        if is_face(&sq) {
                            return Ok(Verdict::Fails(SquareWitness { x, indices: vec![i, j, k, l], vertices: sq.to_vec() }));
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Outcome of all three g-positroid tests.
#[derive(Clone, Debug, Serialize)]
pub struct GPositroidReport {
    pub intervals: Verdict<IntervalWitness>,
    pub product: Verdict<ProductWitness>,
    pub faces: Verdict<SquareWitness>,
}

impl GPositroidReport {
    pub fn agree(&self) -> bool {
        self.intervals.holds() == self.product.holds() && self.product.holds() == self.faces.holds()
    }

    /// Verdict of the interval test.
    pub fn holds(&self) -> bool {
        self.intervals.holds()
    }
}

pub fn is_gpositroid(p: &Polytope) -> Result<GPositroidReport> {
    if !is_gmatroid(p) {
        return precondition("not a g-matroid (01 vertices and A_n edges required)");
    }
    Ok(GPositroidReport {
        intervals: gpositroid_by_intervals(p)?,
        product: gpositroid_by_product(p)?,
        faces: gpositroid_by_faces(p)?,
    })
}

/// A g-polymatroid whose recovered pair passes the interval test.
pub fn is_gpolypositroid(p: &Polytope) -> Result<bool> {
    Ok(is_gpolymatroid(p).holds() && gpositroid_by_intervals(p)?.holds())
}

fn ones(n: usize) -> Point {
    vec![BigRational::from_integer(BigInt::from(1)); n]
}

/// `P ∩ {α ≤ x([n]) ≤ β}`.
pub fn intersect_plank(p: &Polytope, alpha: &BigRational, beta: &BigRational) -> Result<Polytope> {
    if alpha > beta {
        return invalid("plank needs α ≤ β");
    }
    let n = p.n();
    let neg: Point = ones(n).iter().map(|x| -x).collect();
    p.intersect(&[(ones(n), beta.clone()), (neg, -alpha.clone())])
}

/// `P ∩ {α ≤ x ≤ β}` coordinatewise.
pub fn intersect_box(p: &Polytope, alpha: &[BigRational], beta: &[BigRational]) -> Result<Polytope> {
    let n = p.n();
    if alpha.len() != n || beta.len() != n || alpha.iter().zip(beta).any(|(a, b)| a > b) {
        return invalid("box needs n coordinates with α ≤ β");
    }
    let mut extra = Vec::new();
    for i in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::from_integer(BigInt::from(1));
        let neg: Point = e.iter().map(|x| -x).collect();
        extra.push((e, beta[i].clone()));
        extra.push((neg, -alpha[i].clone()));
    }
    p.intersect(&extra)
}

/// Projection onto the first `m` coordinates.
pub fn project_prefix(p: &Polytope, m: usize) -> Result<Polytope> {
    if m > p.n() {
        return invalid("prefix longer than the ground set");
    }
    p.project(&(0..m).collect::<Vec<_>>())
}
