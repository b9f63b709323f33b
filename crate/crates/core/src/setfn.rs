//! Set functions on `2^[n]` and the submodular / tropical Plücker / strong-pair
//! predicates.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{invalid, precondition, Error, Result};
use crate::scalar::Scalar;
use crate::subset::{self, bit, card, has, ser_mask, GroundSet, Mask, MAX_TABLE_N};
use crate::verdict::Verdict;

/// A dense table of values on all subsets of `[n]`, indexed by mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFunction<T> {
    ground: GroundSet,
    values: Vec<T>,
}

/// Violation of `f(Xi) + f(Xj) >= f(X) + f(Xij)` (or its reverse).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalWitness {
    #[serde(serialize_with = "ser_mask")]
    pub x: Mask,
    pub i: usize,
    pub j: usize,
}

/// Violation of the three-term tropical Plücker relation at `(X, i<j<k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PluckerWitness {
    #[serde(serialize_with = "ser_mask")]
    pub x: Mask,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum DctpWitness {
    Submodular(LocalWitness),
    Plucker(PluckerWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum StrongPairWitness {
    /// `f` is not submodular.
    Submodular(LocalWitness),
    /// `g` is not supermodular.
    Supermodular(LocalWitness),
    /// `f(B) - f(B-A) < g(A) - g(A-B)`.
    Cross {
        #[serde(serialize_with = "ser_mask")]
        a: Mask,
        #[serde(serialize_with = "ser_mask")]
        b: Mask,
    },
}

impl<T> SetFunction<T> {
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    #[inline]
    pub fn at(&self, mask: Mask) -> &T {
        &self.values[mask as usize]
    }
}

impl<T: Scalar> SetFunction<T> {
    pub fn new(ground: GroundSet, values: Vec<T>) -> Result<Self> {
        if ground.n() > MAX_TABLE_N {
            return Err(Error::GroundSize(ground.n(), MAX_TABLE_N));
        }
        if values.len() != ground.size() {
            return invalid(format!("table has {} entries, expected 2^{} = {}", values.len(), ground.n(), ground.size()));
        }
        Ok(SetFunction { ground, values })
    }

    /// Tabulates `f` over all subsets.
    pub fn from_fn(ground: GroundSet, f: impl FnMut(Mask) -> T) -> Result<Self> {
        if ground.n() > MAX_TABLE_N {
            return Err(Error::GroundSize(ground.n(), MAX_TABLE_N));
        }
        let values = ground.subsets().map(f).collect();
        Ok(SetFunction { ground, values })
    }

    pub fn zero(ground: GroundSet) -> Result<Self> {
        Self::from_fn(ground, |_| T::zero())
    }

    /// The modular function `S -> sum_{i in S} z_i`.
    pub fn modular(ground: GroundSet, z: &[T]) -> Result<Self> {
        if z.len() != ground.n() {
            return invalid("weight vector length differs from n");
        }
        Self::from_fn(ground, |m| {
            subset::elements(m).iter().fold(T::zero(), |acc, &i| acc + z[i - 1].clone())
        })
    }

    pub fn is_normalized(&self) -> bool {
        self.values[0].is_zero()
    }

    /// Subtracts `f(∅)` from every value.
    pub fn normalized(&self) -> Self {
        let c = self.values[0].clone();
        self.map(|v| v.clone() - c.clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> SetFunction<U> {
        SetFunction { ground: self.ground, values: self.values.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn to_rational(&self) -> SetFunction<BigRational> {
        self.map(|v| v.to_rational())
    }

    /// Pointwise sum; errors on a ground-set mismatch.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ground.same(other.ground)?;
        Ok(self.zip(other, |a, b| a.clone() + b.clone()))
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        SetFunction { ground: self.ground, values }
    }

    /// `f^♮(A) = f(N) - f(N - A)`.
    pub fn natural_dual(&self) -> Self {
        let full = self.ground.full();
        let top = self.at(full).clone();
        SetFunction::from_fn(self.ground, |a| top.clone() - self.at(full & !a).clone()).unwrap()
    }

    /// Restriction to the weight-`k` layer, as `(mask, value)` pairs.
    pub fn layer(&self, k: usize) -> Vec<(Mask, T)> {
        self.ground.subsets().filter(|&m| card(m) == k).map(|m| (m, self.at(m).clone())).collect()
    }
}

impl<T: Scalar> Add for &SetFunction<T> {
    type Output = SetFunction<T>;
    /// Panics on a ground mismatch; use [`SetFunction::try_add`] for input data.
    fn add(self, rhs: Self) -> SetFunction<T> {
        self.try_add(rhs).expect("ground sets differ")
    }
}

impl<T: Scalar> Sub for &SetFunction<T> {
    type Output = SetFunction<T>;
    fn sub(self, rhs: Self) -> SetFunction<T> {
        self.ground.same(rhs.ground).expect("ground sets differ");
        self.zip(rhs, |a, b| a.clone() - b.clone())
    }
}

impl<T: Scalar> Neg for &SetFunction<T> {
    type Output = SetFunction<T>;
    fn neg(self) -> SetFunction<T> {
        self.map(|v| -v.clone())
    }
}

/// Pairwise form: `f(Xi) + f(Xj) >= f(X) + f(Xij)` for all `X` and distinct `i, j ∉ X`.
pub fn is_submodular<T: Scalar>(f: &SetFunction<T>) -> Verdict<LocalWitness> {
    Verdict::from_option(local_violation(f, |lhs, rhs| lhs >= rhs))
}

/// Reverse of [`is_submodular`].
pub fn is_supermodular<T: Scalar>(f: &SetFunction<T>) -> Verdict<LocalWitness> {
    Verdict::from_option(local_violation(f, |lhs, rhs| lhs <= rhs))
}

fn local_violation<T: Scalar>(f: &SetFunction<T>, ok: impl Fn(&T, &T) -> bool) -> Option<LocalWitness> {
    let n = f.n();
    for x in f.ground.subsets() {
        for i in 1..=n {
            if has(x, i) {
                continue;
            }
            for j in i + 1..=n {
                if has(x, j) {
                    continue;
                }
                let lhs = f.at(x | bit(i)).clone() + f.at(x | bit(j)).clone();
                let rhs = f.at(x).clone() + f.at(x | bit(i) | bit(j)).clone();
                if !ok(&lhs, &rhs) {
                    return Some(LocalWitness { x, i, j });
                }
            }
        }
    }
    None
}

/// The global form `f(X) + f(Y) >= f(X∩Y) + f(X∪Y)`, O(4^n). Returns a violating pair.
pub fn submodular_global_violation<T: Scalar>(f: &SetFunction<T>) -> Option<(Mask, Mask)> {
    for x in f.ground.subsets() {
        for y in f.ground.subsets() {
            if f.at(x).clone() + f.at(y).clone() < f.at(x & y).clone() + f.at(x | y).clone() {
                return Some((x, y));
            }
        }
    }
    None
}

/// `f(Xik) + f(Xj) = max(f(Xij) + f(Xk), f(Xjk) + f(Xi))` for all `X` and `i<j<k` outside `X`.
pub fn is_tropical_plucker<T: Scalar>(f: &SetFunction<T>) -> Verdict<PluckerWitness> {
    let n = f.n();
    for x in f.ground.subsets() {
        for i in 1..=n {
            if has(x, i) {
                continue;
            }
            for j in i + 1..=n {
                if has(x, j) {
                    continue;
                }
                for k in j + 1..=n {
                    if has(x, k) {
                        continue;
                    }
                    let (bi, bj, bk) = (bit(i), bit(j), bit(k));
                    let lhs = f.at(x | bi | bk).clone() + f.at(x | bj).clone();
                    let r1 = f.at(x | bi | bj).clone() + f.at(x | bk).clone();
                    let r2 = f.at(x | bj | bk).clone() + f.at(x | bi).clone();
                    if lhs != r1.max(r2) {
                        return Verdict::Fails(PluckerWitness { x, i, j, k });
                    }
                }
            }
        }
    }
    Verdict::Holds
}

/// Submodular and tropical Plücker.
pub fn is_dctp<T: Scalar>(f: &SetFunction<T>) -> Verdict<DctpWitness> {
    if let Verdict::Fails(w) = is_submodular(f) {
        return Verdict::Fails(DctpWitness::Submodular(w));
    }
    is_tropical_plucker(f).map(DctpWitness::Plucker)
}

/// The three strong-pair conditions, checked exhaustively.
pub fn is_strong_pair<T: Scalar>(f: &SetFunction<T>, g: &SetFunction<T>) -> Result<Verdict<StrongPairWitness>> {
    f.ground.same(g.ground)?;
    if let Verdict::Fails(w) = is_submodular(f) {
        return Ok(Verdict::Fails(StrongPairWitness::Submodular(w)));
    }
    if let Verdict::Fails(w) = is_supermodular(g) {
        return Ok(Verdict::Fails(StrongPairWitness::Supermodular(w)));
    }
    for a in f.ground.subsets() {
        for b in f.ground.subsets() {
            let lhs = f.at(b).clone() - f.at(b & !a).clone();
            let rhs = g.at(a).clone() - g.at(a & !b).clone();
            if lhs < rhs {
                return Ok(Verdict::Fails(StrongPairWitness::Cross { a, b }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Möbius coefficients `μ_f(T) = Σ_{S⊆T} (-1)^{|T|-|S|} f(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusVector<T> {
    pub ground: GroundSet,
    pub mu: Vec<T>,
}

impl<T: Scalar> MobiusVector<T> {
    pub fn at(&self, mask: Mask) -> &T {
        &self.mu[mask as usize]
    }
}

/// Fast subset-sum inversion, O(n 2^n).
pub fn mobius<T: Scalar>(f: &SetFunction<T>) -> MobiusVector<T> {
    let mut mu = f.values.clone();
    for i in 0..f.n() {
        for m in 0..mu.len() {
            if m >> i & 1 == 1 {
                let low = mu[m ^ (1 << i)].clone();
                mu[m] = mu[m].clone() - low;
            }
        }
    }
    MobiusVector { ground: f.ground, mu }
}

/// `f(S) = Σ_{T⊆S} μ(T)`.
pub fn inverse_mobius<T: Scalar>(mu: &MobiusVector<T>) -> SetFunction<T> {
    let mut v = mu.mu.clone();
    for i in 0..mu.ground.n() {
        for m in 0..v.len() {
            if m >> i & 1 == 1 {
                let low = v[m ^ (1 << i)].clone();
                v[m] = v[m].clone() + low;
            }
        }
    }
    SetFunction { ground: mu.ground, values: v }
}

/// `f^♮(A) = f(N) - f(N - A)`.
pub fn natural_dual<T: Scalar>(f: &SetFunction<T>) -> SetFunction<T> {
    f.natural_dual()
}

/// Maximal runs of consecutive elements of `mask`, as `(a, b)` pairs.
pub fn maximal_intervals(mask: Mask) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for i in subset::elements(mask) {
        match start {
            Some((a, b)) if b + 1 == i => start = Some((a, i)),
            Some(run) => {
                out.push(run);
                start = Some((i, i));
            }
            None => start = Some((i, i)),
        }
    }
    out.extend(start);
    out
}

/// Extends a function on intervals `[a,b]` additively over maximal intervals.
pub fn interval_extension<T: Scalar>(ground: GroundSet, h: &BTreeMap<(usize, usize), T>) -> Result<SetFunction<T>> {
    let n = ground.n();
    for a in 1..=n {
        for b in a..=n {
            if !h.contains_key(&(a, b)) {
                return invalid(format!("interval function missing [{a},{b}]"));
            }
        }
    }
    SetFunction::from_fn(ground, |m| {
        maximal_intervals(m).iter().fold(T::zero(), |acc, iv| acc + h[iv].clone())
    })
}

/// `Φ(X,a,b) = f(Xa) + f(Xb) - f(Xab) - f(X)`.
pub fn local_exchange<T: Scalar>(f: &SetFunction<T>, x: Mask, a: usize, b: usize) -> Result<T> {
    let n = f.n();
    if a == b || a == 0 || b == 0 || a > n || b > n {
        return invalid(format!("exchange elements {a}, {b} must be distinct members of [{n}]"));
    }
    f.ground.check(x)?;
    if has(x, a) || has(x, b) {
        return invalid("exchange elements must lie outside X");
    }
    let (ba, bb) = (bit(a), bit(b));
    Ok(f.at(x | ba).clone() + f.at(x | bb).clone() - f.at(x | ba | bb).clone() - f.at(x).clone())
}

/// Two DCTP functions are compatible when their sum is DCTP.
pub fn compatibility<T: Scalar>(f1: &SetFunction<T>, f2: &SetFunction<T>) -> Result<Verdict<DctpWitness>> {
    f1.ground.same(f2.ground)?;
    if !is_dctp(f1).holds() || !is_dctp(f2).holds() {
        return precondition("compatibility is defined for DCTP inputs");
    }
    Ok(is_dctp(&(f1 + f2)))
}

/// `f(X) = Σ_A φ_A(|X ∩ A|)` over a laminar family with univariate weights
/// `φ_A` given as value lists indexed by `0..=|A|`.
pub fn laminar_function<T: Scalar>(ground: GroundSet, parts: &[(Mask, Vec<T>)]) -> Result<SetFunction<T>> {
    for (i, (a, w)) in parts.iter().enumerate() {
        ground.check(*a)?;
        if w.len() != card(*a) + 1 {
            return invalid("laminar weight list must have |A|+1 entries");
        }
        for (b, _) in &parts[i + 1..] {
            let meet = a & b;
            if meet != 0 && meet != *a && meet != *b {
                return invalid("family is not laminar");
            }
        }
    }
    SetFunction::from_fn(ground, |x| {
        parts.iter().fold(T::zero(), |acc, (a, w)| acc + w[card(x & a)].clone())
    })
}
