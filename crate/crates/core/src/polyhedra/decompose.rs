//! Base polytopes from the greedy algorithm, g-polymatroids from strong
//! pairs, and Möbius decompositions into (truncated) simplices.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::polytope::{indicator, Point, Polytope};
use crate::error::{invalid, precondition, Result};
use crate::scalar::{fmt_rational, Scalar};
use crate::setfn::{is_strong_pair, is_submodular, is_supermodular, mobius, natural_dual, SetFunction};
use crate::subset::{self, elements, ser_mask, GroundSet, Mask};
use crate::verdict::Verdict;

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    crate::necklace::Permutation::all(n)
        .into_iter()
        .map(|p| p.values().iter().map(|v| v - 1).collect())
        .collect()
}

/// `v_π(π(t)) = f(π[1..t]) − f(π[1..t−1])` for every permutation `π`.
pub fn greedy_vertices<T: Scalar>(f: &SetFunction<T>) -> Vec<Point> {
    let n = f.n();
    let mut out: Vec<Point> = permutations(n)
        .into_iter()
        .map(|pi| {
            let mut v = vec![BigRational::zero(); n];
            let mut prefix: Mask = 0;
            for &i in &pi {
                let next = prefix | 1 << i;
                v[i] = (f.at(next).clone() - f.at(prefix).clone()).to_rational();
                prefix = next;
            }
            v
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `{x : x(S) ≤ f(S), x([n]) = f([n])}` for normalized submodular `f`.
pub fn base_polytope<T: Scalar>(f: &SetFunction<T>) -> Result<Polytope> {
    if !f.is_normalized() {
        return precondition("f(∅) must be 0");
    }
    if let Verdict::Fails(w) = is_submodular(f) {
        return precondition(format!("not submodular at {w:?}"));
    }
    Polytope::from_points(f.n(), &greedy_vertices(f))
}

/// `Δ(g) = {x : x(S) ≥ g(S), x([n]) = g([n])}` for normalized supermodular `g`.
pub fn supermodular_base_polytope<T: Scalar>(g: &SetFunction<T>) -> Result<Polytope> {
    if !g.is_normalized() {
        return precondition("g(∅) must be 0");
    }
    if let Verdict::Fails(w) = is_supermodular(g) {
        return precondition(format!("not supermodular at {w:?}"));
    }
    Polytope::from_points(g.n(), &greedy_vertices(g))
}

/// `Q(f, g)` for a strong pair, as the projection of the base polytope of
/// the supermodular lift `h(X) = g(X)`, `h(X ∪ ê) = f(N) − f(N − X)`.
pub fn gpoly_from_pair<T: Scalar>(f: &SetFunction<T>, g: &SetFunction<T>) -> Result<Polytope> {
    if !f.is_normalized() || !g.is_normalized() {
        return precondition("f(∅) and g(∅) must be 0");
    }
    if let Verdict::Fails(w) = is_strong_pair(f, g)? {
        return precondition(format!("not a strong pair: {w:?}"));
    }
    let n = f.n();
    let h = lift(f, g)?;
    let lifted = greedy_vertices(&h);
    let pts: Vec<Point> = lifted.into_iter().map(|mut v| {
        v.truncate(n);
        v
    }).collect();
    Polytope::from_points(n, &pts)
}

/// The supermodular function on `N ∪ {ê}` (ê is element `n+1`).
pub fn lift<T: Scalar>(f: &SetFunction<T>, g: &SetFunction<T>) -> Result<SetFunction<T>> {
    let n = f.n();
    let full = subset::full(n);
    let e = subset::bit(n + 1);
    SetFunction::from_fn(GroundSet::new(n + 1)?, |m| {
        if m & e == 0 {
            g.at(m).clone()
        } else {
            let x = m & full;
            f.at(full).clone() - f.at(full & !x).clone()
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplexKind {
    /// `Δ_S = Conv{e_i : i ∈ S}`.
    Simplex,
    /// `\barΔ_S = Conv{0, Δ_S}`.
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub set: Mask,
    pub coeff: BigRational,
    pub kind: SimplexKind,
}

impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(serialize_with = "ser_mask")]
            set: &'a Mask,
            coeff: String,
            kind: SimplexKind,
        }
        Out { set: &self.set, coeff: fmt_rational(&self.coeff), kind: self.kind }.serialize(s)
    }
}

impl Term {
    /// `coeff · Δ_S` or `coeff · \barΔ_S`.
    pub fn polytope(&self, n: usize) -> Result<Polytope> {
        let mut pts: Vec<Point> = elements(self.set).into_iter().map(|i| indicator(n, subset::bit(i))).collect();
        if self.kind == SimplexKind::Truncated {
            pts.push(vec![BigRational::zero(); n]);
        }
        Polytope::from_points(n, &pts)?.scale(&self.coeff)
    }
}

/// `LHS + Σ negative = Σ positive`, all coefficients positive.
#[derive(Clone, Debug, Serialize)]
pub struct SimplexDecomposition {
    pub n: usize,
    pub positive: Vec<Term>,
    pub negative: Vec<Term>,
}

impl SimplexDecomposition {
    fn push(&mut self, set: Mask, c: BigRational, kind: SimplexKind) {
        if c.is_positive() {
            self.positive.push(Term { set, coeff: c, kind });
        } else if c.is_negative() {
            self.negative.push(Term { set, coeff: -c, kind });
        }
    }

    /// Minkowski sum of the given terms; `{0}` when there are none.
    pub fn sum(n: usize, terms: &[Term]) -> Result<Polytope> {
        let mut acc = Polytope::from_points(n, &[vec![BigRational::zero(); n]])?;
        for t in terms {
            acc = acc.minkowski_sum(&t.polytope(n)?)?;
        }
        Ok(acc)
    }

    /// Checks `lhs + Σ negative = Σ positive` by vertex-hull equality.
    pub fn verify(&self, lhs: &Polytope) -> Result<bool> {
        if lhs.n() != self.n {
            return invalid("decomposition and polytope have different dimensions");
        }
        let left = lhs.minkowski_sum(&Self::sum(self.n, &self.negative)?)?;
        Ok(left == Self::sum(self.n, &self.positive)?)
    }
}

/// `Δ(f) = Σ_{μ>0} μ Δ_S − Σ_{μ<0} (−μ) Δ_T` for supermodular `f`.
pub fn simplex_decomposition_base<T: Scalar>(f: &SetFunction<T>) -> Result<SimplexDecomposition> {
    if !f.is_normalized() {
        return precondition("f(∅) must be 0");
    }
    if let Verdict::Fails(w) = is_supermodular(f) {
        return precondition(format!("not supermodular at {w:?}"));
    }
    let mu = mobius(f);
    let mut d = SimplexDecomposition { n: f.n(), positive: vec![], negative: vec![] };
    for s in 1..1u32 << f.n() {
        d.push(s, mu.at(s).to_rational(), SimplexKind::Simplex);
    }
    Ok(d)
}

/// `Q(f, g) = Σ (μ_{f♮} − μ_g)(S) \barΔ_S + Σ μ_g(S) Δ_S`, split by sign.
pub fn simplex_decomposition_gpoly<T: Scalar>(f: &SetFunction<T>, g: &SetFunction<T>) -> Result<SimplexDecomposition> {
    if !f.is_normalized() || !g.is_normalized() {
        return precondition("f(∅) and g(∅) must be 0");
    }
    if let Verdict::Fails(w) = is_strong_pair(f, g)? {
        return precondition(format!("not a strong pair: {w:?}"));
    }
    let mu_fd = mobius(&natural_dual(f));
    let mu_g = mobius(g);
    let mut d = SimplexDecomposition { n: f.n(), positive: vec![], negative: vec![] };
    for s in 1..1u32 << f.n() {
        d.push(s, (mu_fd.at(s).clone() - mu_g.at(s).clone()).to_rational(), SimplexKind::Truncated);
        d.push(s, mu_g.at(s).to_rational(), SimplexKind::Simplex);
    }
    Ok(d)
}
