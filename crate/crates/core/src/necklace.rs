//! Grassmann necklaces, generalized cyclic patterns in the zonogon, and
//! ω-chambers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{invalid, precondition, Error, Result};
use crate::polyhedra::Polytope;
use crate::separation::{is_ws_family, weakly_separated};
use crate::subset::{self, card, elements, full, k_subsets, ser_masks, Mask};
use crate::verdict::Verdict;

/// Rank of element `e` in the shifted order `i <_i i+1 <_i … <_i i-1`.
fn shifted_rank(n: usize, i: usize, e: usize) -> usize {
    (e + n - i) % n
}

fn shifted_ranks(n: usize, i: usize, m: Mask) -> Vec<usize> {
    let mut r: Vec<usize> = elements(m).into_iter().map(|e| shifted_rank(n, i, e)).collect();
    r.sort_unstable();
    r
}

/// Gale order with respect to `<_i`: sorted ranks compared componentwise.
pub fn gale_leq_shifted(n: usize, i: usize, a: Mask, b: Mask) -> bool {
    card(a) == card(b) && shifted_ranks(n, i, a).iter().zip(shifted_ranks(n, i, b)).all(|(x, y)| *x <= y)
}

/// A Grassmann necklace `(S_1, …, S_n)` of `k`-subsets of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrassmannNecklace {
    n: usize,
    k: usize,
    #[serde(serialize_with = "ser_masks")]
    sets: Vec<Mask>,
}

impl GrassmannNecklace {
    /// Checks that each `S_i` is a `k`-subset and `S_i ∖ S_{i+1} ⊆ {i}`.
    pub fn new(n: usize, k: usize, sets: Vec<Mask>) -> Result<Self> {
        if n == 0 || n > subset::MAX_GROUND_N {
            return invalid(format!("necklace ground size {n} out of range"));
        }
        if sets.len() != n {
            return invalid(format!("a necklace on [{n}] has {n} sets, got {}", sets.len()));
        }
        if let Some(i) = necklace_violation(n, k, &sets) {
            return invalid(format!("not a Grassmann necklace at position {i}"));
        }
        Ok(GrassmannNecklace { n, k, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sets(&self) -> &[Mask] {
        &self.sets
    }

    /// Stable under the positroid roundtrip. Used as the connectivity flag
    /// for padded necklaces.
    pub fn is_connected(&self) -> bool {
        positroid_to_necklace(self.n, &necklace_to_positroid(self)).ok().as_deref() == Some(&self.sets[..])
    }
}

/// First position `i` (1-based) where the necklace condition fails.
fn necklace_violation(n: usize, k: usize, sets: &[Mask]) -> Option<usize> {
    (1..=n).find(|&i| {
        let (a, b) = (sets[i - 1], sets[i % n]);
        let diff = a & !b;
        a & !full(n) != 0 || card(a) != k || card(b) != k || (diff != 0 && diff != subset::bit(i))
    })
}

/// Positroid of a necklace: all `J` with `S_i ≤_i J` for every `i`.
pub fn necklace_to_positroid(neck: &GrassmannNecklace) -> Vec<Mask> {
    let n = neck.n;
    k_subsets(n, neck.k)
        .into_iter()
        .filter(|&j| neck.sets.iter().enumerate().all(|(i, &s)| gale_leq_shifted(n, i + 1, s, j)))
        .collect()
}

/// Minimum of each shifted order, `S_i = min_{<_i} B` (lexicographic in the
/// shifted order, which is the Gale minimum when `B` is a matroid).
pub fn positroid_to_necklace(n: usize, bases: &[Mask]) -> Result<Vec<Mask>> {
    let Some(&first) = bases.first() else {
        return invalid("empty basis family");
    };
    if bases.iter().any(|&b| card(b) != card(first) || b & !full(n) != 0) {
        return invalid("bases must be subsets of [n] of one size");
    }
    Ok((1..=n).map(|i| *bases.iter().min_by_key(|&&b| shifted_ranks(n, i, b)).unwrap()).collect())
}

/// `B` is a positroid: its shifted minima form a Grassmann necklace whose
/// positroid is `B` again.
pub fn is_positroid(n: usize, bases: &[Mask]) -> bool {
    let Ok(seq) = positroid_to_necklace(n, bases) else {
        return false;
    };
    let Ok(neck) = GrassmannNecklace::new(n, card(bases[0]), seq) else {
        return false;
    };
    let mut b = bases.to_vec();
    b.sort_unstable();
    b.dedup();
    necklace_to_positroid(&neck) == b
}

/// A cyclic sequence of subsets whose consecutive pairs differ in one
/// element, or swap one element for another, forming a weakly separated
/// family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicPattern {
    n: usize,
    #[serde(serialize_with = "ser_masks")]
    sets: Vec<Mask>,
}

impl CyclicPattern {
    pub fn new(n: usize, sets: Vec<Mask>) -> Result<Self> {
        if n == 0 || n > subset::MAX_TABLE_N {
            return invalid(format!("pattern ground size {n} out of range"));
        }
        if sets.is_empty() || sets.iter().any(|&s| s & !full(n) != 0) {
            return invalid("pattern sets must be nonempty subsets of [n]");
        }
        let r = sets.len();
        for p in 0..r {
            let (a, b) = (sets[p], sets[(p + 1) % r]);
            let d = card(a ^ b);
            if r > 1 && !(d == 1 || (d == 2 && card(a) == card(b))) {
                return invalid(format!("pattern step {} -> {} is neither a 1- nor a 2-distance pair", p + 1, (p + 1) % r + 1));
            }
        }
        if let Verdict::Fails(w) = is_ws_family(&sets) {
            return invalid(format!("pattern is not weakly separated: {w:?}"));
        }
        Ok(CyclicPattern { n, sets })
    }

    /// Drops cyclically consecutive repeats before validating.
    pub fn dedup(n: usize, sets: &[Mask]) -> Result<Self> {
        let mut out: Vec<Mask> = Vec::new();
        for &s in sets {
            if out.last() != Some(&s) {
                out.push(s);
            }
        }
        while out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        Self::new(n, out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Mask] {
        &self.sets
    }

    pub fn reversed(&self) -> Self {
        let mut s = self.sets.clone();
        s.reverse();
        CyclicPattern { n: self.n, sets: s }
    }

    /// The pattern of `𝒟(ω, ω₀)`: the right zonogon boundary `[n], [2,n], …,
    /// {n}, ∅` followed by `ω⁻¹([1]), …, ω⁻¹([n-1])`.
    pub fn omega(omega: &Permutation) -> Result<Self> {
        let n = omega.n();
        let mut sets: Vec<Mask> = (1..=n).map(|k| subset::interval(k, n)).collect();
        sets.push(0);
        for k in 1..n {
            sets.push(omega.preimage_of_prefix(k));
        }
        Self::new(n, sets)
    }
}

/// Vectors `ξ_1, …, ξ_n` in the open upper half plane, clockwise, with
/// distinct subset sums. Stored scaled to integers; a common positive
/// scaling does not change any inside/outside question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZonogonEmbedding {
    xi: Vec<(i64, i64)>,
}

impl ZonogonEmbedding {
    /// `ξ_j = (2^{j-1} − (2^n − 1)/n, 1)`, scaled by `n`.
    pub fn binary(n: usize) -> Result<Self> {
        let top = (1i64 << n) - 1;
        Self::new((1..=n).map(|j| ((n as i64) << (j - 1), n as i64)).map(|(x, y)| (x - top, y)).collect())
    }

    /// `ξ_j = (3^{j-1} − c, 1)` with `c` centring the first and last vector.
    pub fn ternary(n: usize) -> Result<Self> {
        let p: Vec<i64> = (0..n).map(|j| 3i64.pow(j as u32)).collect();
        let c2 = p[0] + p[n - 1];
        Self::new(p.iter().map(|&x| (2 * x - c2, 2)).collect())
    }

    /// Scales rational vectors to a common integer lattice and validates.
    pub fn from_rational(xi: &[(BigRational, BigRational)]) -> Result<Self> {
        let l = xi.iter().fold(BigInt::one(), |l, (a, b)| l.lcm(a.denom()).lcm(b.denom()));
        let conv = |r: &BigRational| (r * &l).to_integer().to_i64();
        let v: Option<Vec<(i64, i64)>> = xi.iter().map(|(a, b)| Some((conv(a)?, conv(b)?))).collect();
        match v {
            Some(v) => Self::new(v),
            None => invalid("embedding coordinates too large"),
        }
    }

    pub fn new(xi: Vec<(i64, i64)>) -> Result<Self> {
        let n = xi.len();
        if n == 0 || n > subset::MAX_TABLE_N {
            return invalid("embedding needs 1..=12 vectors");
        }
        if xi.iter().any(|&(_, y)| y <= 0) {
            return invalid("embedding vectors must lie in the open upper half plane");
        }
        if xi.windows(2).any(|w| cross(w[0], w[1]) >= 0) {
            return invalid("embedding vectors must be in strictly clockwise order");
        }
        let e = ZonogonEmbedding { xi };
        let mut sums: Vec<(i64, i64)> = (0..1u32 << n).map(|m| e.point(m)).collect();
        sums.sort_unstable();
        if sums.windows(2).any(|w| w[0] == w[1]) {
            return invalid("embedding has coinciding subset sums");
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.xi.len()
    }

    pub fn vectors(&self) -> &[(i64, i64)] {
        &self.xi
    }

    /// `ξ_X`.
    pub fn point(&self, m: Mask) -> (i64, i64) {
        elements(m).into_iter().fold((0, 0), |(x, y), e| (x + self.xi[e - 1].0, y + self.xi[e - 1].1))
    }
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

fn orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i128 {
    cross((b.0 - a.0, b.1 - a.1), (c.0 - a.0, c.1 - a.1))
}

fn on_segment(p: (i64, i64), a: (i64, i64), b: (i64, i64)) -> bool {
    orient(a, b, p) == 0
        && (a.0.min(b.0)..=a.0.max(b.0)).contains(&p.0)
        && (a.1.min(b.1)..=a.1.max(b.1)).contains(&p.1)
}

/// Segments cross at a single interior point of both.
fn proper_crossing(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    o1.signum() * o2.signum() < 0 && o3.signum() * o4.signum() < 0
}

/// Winding number of the closed polygon around `p` (not on the polygon).
fn winding(poly: &[(i64, i64)], p: (i64, i64)) -> i32 {
    let mut w = 0;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        if a.1 <= p.1 {
            if b.1 > p.1 && orient(a, b, p) > 0 {
                w += 1;
            }
        } else if b.1 <= p.1 && orient(a, b, p) < 0 {
            w -= 1;
        }
    }
    w
}

/// Two non-adjacent segments of the curve that cross.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingWitness {
    pub first: usize,
    pub second: usize,
}

/// The curve `ξ_𝒮` has no proper self-crossing.
pub fn is_non_self_intersecting(pattern: &CyclicPattern, emb: &ZonogonEmbedding) -> Verdict<CrossingWitness> {
    let pts: Vec<(i64, i64)> = pattern.sets.iter().map(|&s| emb.point(s)).collect();
    let r = pts.len();
    for i in 0..r {
        for j in i + 1..r {
            if j == i + 1 || (i == 0 && j == r - 1) {
                continue;
            }
            if proper_crossing(pts[i], pts[(i + 1) % r], pts[j], pts[(j + 1) % r]) {
                return Verdict::Fails(CrossingWitness { first: i + 1, second: j + 1 });
            }
        }
    }
    Verdict::Holds
}

/// Sets whose points lie in the closed region bounded by the curve, and
/// those outside it. A set that is not weakly separated from some set of the
/// pattern has an embedding-dependent side and is listed as ambiguous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Domains {
    #[serde(serialize_with = "ser_masks")]
    pub inside: Vec<Mask>,
    #[serde(serialize_with = "ser_masks")]
    pub outside: Vec<Mask>,
    #[serde(serialize_with = "ser_masks")]
    pub ambiguous: Vec<Mask>,
}

pub fn zonogon_domains(pattern: &CyclicPattern, emb: &ZonogonEmbedding) -> Result<Domains> {
    if pattern.n != emb.n() {
        return invalid("pattern and embedding have different ground sets");
    }
    if let Verdict::Fails(w) = is_non_self_intersecting(pattern, emb) {
        return precondition(format!("curve crosses itself at segments {} and {}", w.first, w.second));
    }
    let poly: Vec<(i64, i64)> = pattern.sets.iter().map(|&s| emb.point(s)).collect();
    let r = poly.len();
    let mut d = Domains { inside: vec![], outside: vec![], ambiguous: vec![] };
    for x in 0..1u32 << pattern.n {
        if !pattern.sets.iter().all(|&s| weakly_separated(x, s)) {
            d.ambiguous.push(x);
            continue;
        }
        let p = emb.point(x);
        let on = (0..r).any(|i| on_segment(p, poly[i], poly[(i + 1) % r]));
        if on || winding(&poly, p) != 0 {
            d.inside.push(x);
        } else {
            d.outside.push(x);
        }
    }
    Ok(d)
}

/// A permutation of `[n]`, stored as the values `ω(1), …, ω(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return invalid(format!("{values:?} is not a permutation of [{n}]"));
            }
            seen[v] = true;
        }
        if n == 0 || n > subset::MAX_TABLE_N {
            return invalid("permutation size out of range");
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// `i ↦ n − i + 1`.
    pub fn longest(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// Pairs `i < j` with `ω(i) > ω(j)`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.at(i) > self.at(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `ω⁻¹([k])`.
    pub fn preimage_of_prefix(&self, k: usize) -> Mask {
        (1..=self.n()).filter(|&i| self.at(i) <= k).fold(0, |m, i| m | subset::bit(i))
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // Next permutation.
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
    }
}

/// `𝒟(ω)`, or `𝒟(ω′, ω)` when `omega_prime` is given.
pub fn omega_chamber(omega: &Permutation, omega_prime: Option<&Permutation>) -> Result<Vec<Mask>> {
    let n = omega.n();
    let inv = omega.inversions();
    let mut forward = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if omega.at(i) < omega.at(j) {
                forward.push((i, j));
            }
        }
    }
    let backward = match omega_prime {
        None => Vec::new(),
        Some(w) => {
            if w.n() != n {
                return invalid("permutations act on different ground sets");
            }
            let inv_w = w.inversions();
            if inv_w.iter().any(|p| !inv.contains(p)) {
                return precondition("Inv(ω′) must be contained in Inv(ω)");
            }
            inv_w
        }
    };
    Ok((0..1u32 << n)
        .filter(|&x| {
            forward.iter().all(|&(i, j)| !subset::has(x, j) || subset::has(x, i))
                && backward.iter().all(|&(i, j)| !subset::has(x, i) || subset::has(x, j))
        })
        .collect())
}

/// `𝒟(ω, ω₀)`.
pub fn omega_domain(omega: &Permutation) -> Vec<Mask> {
    omega_chamber(&Permutation::longest(omega.n()), Some(omega)).expect("every inversion set lies in Inv(ω₀)")
}

/// Pads every set of the pattern into `C([2n], n)`; the result must be a
/// Grassmann necklace on `[2n]`.
pub fn padded_necklace(pattern: &CyclicPattern) -> Result<GrassmannNecklace> {
    let n = pattern.n;
    let sets: Vec<Mask> = pattern.sets.iter().map(|&s| crate::schubert::pad(n, s)).collect();
    GrassmannNecklace::new(2 * n, n, sets)
}

/// `π(𝓜(S̃))`: the positroid of the padded necklace projected to the first
/// `n` coordinates.
pub fn projected_positroid(pattern: &CyclicPattern) -> Result<Vec<Mask>> {
    let neck = padded_necklace(pattern)?;
    let mut out: Vec<Mask> = necklace_to_positroid(&neck).into_iter().map(|b| b & full(pattern.n)).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `Conv{e_Y : Y ∈ 𝒟^in}` for a pattern whose padding is a connected
/// Grassmann necklace.
///
/// The hull is not always a g-matroid. The ω-chamber pattern of `ω = 21`
/// gives the triangle `0 ≤ x_1 ≤ x_2 ≤ 1`, while the projected positroid is
/// the whole square.
pub fn gm_from_pattern(pattern: &CyclicPattern, emb: &ZonogonEmbedding) -> Result<Polytope> {
    let neck = padded_necklace(pattern).map_err(|e| Error::Precondition(format!("padded pattern: {e}")))?;
    if !neck.is_connected() {
        return precondition("padded necklace is not connected");
    }
    let d = zonogon_domains(pattern, emb)?;
    Polytope::from_masks(pattern.n, &d.inside)
}
