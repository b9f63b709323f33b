//! Schubert matroids `Ω_I`: bases, bracket-word ranks, cyclic decompositions,
//! the cones `Π_i`, closed-form concave extensions and the pad lift.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::scalar::int;
use crate::setfn::SetFunction;
use crate::subset::{self, card, gale_leq, has, interval, ser_mask, GroundSet, Mask};

/// A subset `I ⊆ [n]` indexing the Schubert matroid `Ω_I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchubertIndex {
    ground: GroundSet,
    set: Mask,
}

impl SchubertIndex {
    pub fn new(ground: GroundSet, set: Mask) -> Result<Self> {
        ground.check(set)?;
        Ok(SchubertIndex { ground, set })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn set(&self) -> Mask {
        self.set
    }

    pub fn k(&self) -> usize {
        card(self.set)
    }

    /// True for `I = [1, j]` (including `∅` and `[n]`): `Ω_I` has a single basis.
    pub fn is_prefix(&self) -> bool {
        self.set == interval(1, self.k())
    }

    /// All `L` with `|L| = |I|` and `L ≤_G I`.
    pub fn bases(&self) -> Vec<Mask> {
        subset::k_subsets(self.n(), self.k()).into_iter().filter(|&l| gale_leq(l, self.set)).collect()
    }

    /// `θ_I(J)` by pairing the word `W_I(J)` left to right with a stack.
    pub fn rank(&self, j: Mask) -> usize {
        rank_bracket(self.n(), self.set, j)
    }

    /// The rank function as a table.
    pub fn rank_function(&self) -> SetFunction<i64> {
        SetFunction::from_fn(self.ground, |j| self.rank(j) as i64).expect("table size")
    }

    pub fn cyclic_decomposition(&self) -> Result<CyclicDecomposition> {
        CyclicDecomposition::new(self.n(), self.set)
    }

    /// `I ∪ [n+k+1, 2n]` on the ground set `[2n]`.
    pub fn pad(&self) -> Result<SchubertIndex> {
        let n = self.n();
        SchubertIndex::new(GroundSet::new(2 * n)?, pad(n, self.set))
    }
}

/// `θ_I(J)`: `*` for `i ∈ I∩J`, `(` for `i ∈ J∖I`, `)` for `i ∈ I∖J`; the rank
/// counts stars plus matched pairs.
pub fn rank_bracket(n: usize, i_set: Mask, j_set: Mask) -> usize {
    let mut open = 0usize;
    let mut rank = 0usize;
    for e in 1..=n {
        match (has(i_set, e), has(j_set, e)) {
            (true, true) => rank += 1,
            (false, true) => open += 1,
            (true, false) if open > 0 => {
                open -= 1;
                rank += 1;
            }
            _ => {}
        }
    }
    rank
}

/// The word `W_I(J)` with blanks as spaces.
pub fn bracket_word(n: usize, i_set: Mask, j_set: Mask) -> String {
    (1..=n)
        .map(|e| match (has(i_set, e), has(j_set, e)) {
            (true, true) => '*',
            (false, true) => '(',
            (true, false) => ')',
            (false, false) => ' ',
        })
        .collect()
}

/// `I ∪ [n+k+1, 2n]`.
pub fn pad(n: usize, i_set: Mask) -> Mask {
    i_set | interval(n + card(i_set) + 1, 2 * n)
}

/// `[|I|+1, n] ⊔ I` for `I ⊆ [n+1, 2n]`.
pub fn pad_tilde(n: usize, i_set: Mask) -> Result<Mask> {
    if i_set & interval(1, n) != 0 || i_set & !subset::full(2 * n) != 0 {
        return invalid("pad~ expects a subset of [n+1, 2n]");
    }
    Ok(interval(card(i_set) + 1, n) | i_set)
}

/// One block `S_i = (C_i, I_i)` of a cyclic decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    #[serde(serialize_with = "ser_mask")]
    pub s: Mask,
    #[serde(rename = "i", serialize_with = "ser_mask")]
    pub i_part: Mask,
    #[serde(serialize_with = "ser_mask")]
    pub c: Mask,
    /// `E(S_i)`, the last element of `I_i` in cyclic order.
    pub end: usize,
}

/// The decomposition `[n] = (C_1, I_1, ..., C_l, I_l)` with `1 ∈ S_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicDecomposition {
    pub n: usize,
    pub blocks: Vec<Block>,
}

impl CyclicDecomposition {
    pub fn new(n: usize, i_set: Mask) -> Result<Self> {
        if i_set == 0 {
            return invalid("cyclic decomposition of the empty set");
        }
        let next = |e: usize| if e == n { 1 } else { e + 1 };
        let prev = |e: usize| if e == 1 { n } else { e - 1 };
        if i_set == subset::full(n) {
            let b = Block { s: i_set, i_part: i_set, c: 0, end: n };
            return Ok(CyclicDecomposition { n, blocks: vec![b] });
        }
        // Start at the first element of some run of I, walk once around.
        let start = (1..=n).find(|&e| has(i_set, e) && !has(i_set, prev(e))).unwrap();
        let mut runs: Vec<(Mask, usize)> = Vec::new();
        let mut e = start;
        for _ in 0..n {
            if has(i_set, e) {
                if !has(i_set, prev(e)) {
                    runs.push((0, e));
                }
                let last = runs.last_mut().unwrap();
                last.0 |= subset::bit(e);
                last.1 = e;
            }
            e = next(e);
        }
        let mut blocks: Vec<Block> = runs
            .iter()
            .map(|&(run, end)| {
                let first = (1..=n).find(|&x| has(run, x) && !has(run, prev(x))).unwrap();
                let mut c = 0;
                let mut x = prev(first);
                while !has(i_set, x) {
                    c |= subset::bit(x);
                    x = prev(x);
                }
                Block { s: c | run, i_part: run, c, end }
            })
            .collect();
        let first = blocks.iter().position(|b| has(b.s, 1)).unwrap();
        blocks.rotate_left(first);
        Ok(CyclicDecomposition { n, blocks })
    }

    /// `σ(I)`.
    pub fn sigma(&self) -> usize {
        self.blocks.len()
    }

    /// `|I_1 ∖ [1, E(S_1)]|`, the wrapped part of the first block.
    pub fn wrap_offset(&self) -> usize {
        card(self.blocks[0].i_part & !interval(1, self.blocks[0].end))
    }

    /// The forms `f_{Π_i}`, i = 1..l.
    pub fn forms(&self) -> Vec<PrefixForm> {
        let l = self.sigma();
        let off = self.wrap_offset() as i64;
        (0..l)
            .map(|i| {
                if i == 0 {
                    PrefixForm { prefix: self.blocks[l - 1].end, constant: off }
                } else {
                    let tail: usize = self.blocks[i..].iter().map(|b| card(b.i_part)).sum();
                    PrefixForm { prefix: self.blocks[i - 1].end, constant: off + tail as i64 }
                }
            })
            .collect()
    }

    /// The cones `Π_i` on the hyperplane `x([n]) = k`.
    pub fn cones(&self) -> ConeSystem {
        let l = self.sigma();
        let k = self.blocks.iter().map(|b| card(b.i_part)).sum();
        let cones = (0..l)
            .map(|i| {
                let mut region = 0;
                let mut bound = 0;
                (0..l - 1)
                    .map(|t| {
                        let b = &self.blocks[(i + t) % l];
                        region |= b.s;
                        bound += card(b.i_part);
                        HalfSpace { region, bound }
                    })
                    .collect()
            })
            .collect();
        ConeSystem { n: self.n, k, cones, forms: self.forms() }
    }
}

/// The linear form `x_1 + ... + x_prefix + constant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PrefixForm {
    pub prefix: usize,
    pub constant: i64,
}

impl PrefixForm {
    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        x[..self.prefix].iter().fold(int(self.constant), |a, v| a + v)
    }

    pub fn eval_set(&self, j: Mask) -> i64 {
        card(j & interval(1, self.prefix)) as i64 + self.constant
    }
}

/// `x(region) ≥ bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HalfSpace {
    #[serde(serialize_with = "ser_mask")]
    pub region: Mask,
    pub bound: usize,
}

impl HalfSpace {
    pub fn holds(&self, x: &[BigRational]) -> bool {
        region_sum(x, self.region) >= int(self.bound as i64)
    }
}

fn region_sum(x: &[BigRational], region: Mask) -> BigRational {
    subset::elements(region).iter().fold(BigRational::zero(), |a, &i| a + &x[i - 1])
}

/// The cones `Π_1..Π_l` of a Schubert index together with their linear forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeSystem {
    pub n: usize,
    pub k: usize,
    pub cones: Vec<Vec<HalfSpace>>,
    pub forms: Vec<PrefixForm>,
}

impl ConeSystem {
    /// Smallest `i` (0-based) with `x ∈ Π_i`.
    pub fn membership(&self, x: &[BigRational]) -> Result<usize> {
        if x.len() != self.n {
            return invalid("point has the wrong dimension");
        }
        if region_sum(x, subset::full(self.n)) != int(self.k as i64) {
            return invalid(format!("point is off the hyperplane x([n]) = {}", self.k));
        }
        self.cones
            .iter()
            .position(|c| c.iter().all(|h| h.holds(x)))
            .ok_or_else(|| Error::Invalid("no cone contains the point".into()))
    }

    /// Indices of all cones containing `x`.
    pub fn all_memberships(&self, x: &[BigRational]) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| self.cones[i].iter().all(|h| h.holds(x))).collect()
    }
}

fn check_unit_box(x: &[BigRational], n: usize) -> Result<()> {
    if x.len() != n {
        return invalid(format!("point has {} coordinates, expected {n}", x.len()));
    }
    if x.iter().any(|v| v < &BigRational::zero() || v > &BigRational::one()) {
        return invalid("point lies outside [0,1]^n");
    }
    Ok(())
}

/// `min_i f_{Π_i}(x)` on the hypersimplex `Δ_{k,n}`.
pub fn concave_ext_hypersimplex(idx: &SchubertIndex, x: &[BigRational]) -> Result<BigRational> {
    check_unit_box(x, idx.n())?;
    if region_sum(x, subset::full(idx.n())) != int(idx.k() as i64) {
        return invalid(format!("point is off the hyperplane x([n]) = {}", idx.k()));
    }
    if idx.k() == 0 {
        return Ok(BigRational::zero());
    }
    let dec = idx.cyclic_decomposition()?;
    Ok(dec.forms().iter().map(|f| f.eval(x)).min().unwrap())
}

/// Which of the four cube cases applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CubeCase {
    /// `I = [1, j]`: a single affine piece.
    Trivial,
    /// `1 ∈ I`, `n ∉ I`.
    One,
    /// `1 ∈ I`, `n ∈ I`.
    TwoA,
    /// `1 ∉ I`, `n ∈ I`.
    TwoB,
    /// `1 ∉ I`, `n ∉ I`.
    TwoC,
}

pub fn cube_case(idx: &SchubertIndex) -> CubeCase {
    let (s, n) = (idx.set(), idx.n());
    if idx.is_prefix() {
        return CubeCase::Trivial;
    }
    match (has(s, 1), has(s, n)) {
        (true, false) => CubeCase::One,
        (true, true) => CubeCase::TwoA,
        (false, true) => CubeCase::TwoB,
        (false, false) => CubeCase::TwoC,
    }
}

/// The affine pieces of `θ̂_I` on `[0,1]^n`, obtained from the hypersimplex
/// forms of `pad(I)` on `[2n]` shifted by `k - n`. Every endpoint is either
/// at most `n` or equal to `2n`, so each form depends on `x` alone.
pub fn cube_forms(idx: &SchubertIndex) -> Vec<PrefixForm> {
    let (n, k) = (idx.n(), idx.k());
    let padded = pad(n, idx.set());
    let dec = CyclicDecomposition::new(2 * n, padded).expect("pad(I) has n elements");
    dec.forms()
        .into_iter()
        .map(|f| {
            let shift = k as i64 - n as i64;
            if f.prefix <= n {
                PrefixForm { prefix: f.prefix, constant: f.constant + shift }
            } else {
                debug_assert_eq!(f.prefix, 2 * n);
                PrefixForm { prefix: 0, constant: f.constant + n as i64 + shift }
            }
        })
        .collect()
}

/// The same pieces written out case by case (1, 2a, 2b, 2c), as stated for
/// the cube extension. Kept separate from [`cube_forms`] so the two
/// derivations can be compared.
pub fn cube_forms_by_case(idx: &SchubertIndex) -> Vec<PrefixForm> {
    let (n, k) = (idx.n(), idx.k());
    if idx.is_prefix() {
        return vec![PrefixForm { prefix: k, constant: 0 }];
    }
    let dec = idx.cyclic_decomposition().expect("non-prefix I is nonempty");
    let b = &dec.blocks;
    let l = b.len();
    let tail = |i: usize| -> i64 { b[i..].iter().map(|x| card(x.i_part) as i64).sum() };
    let mut out = Vec::new();
    match cube_case(idx) {
        CubeCase::One => {
            out.push(PrefixForm { prefix: b[l - 1].end, constant: 0 });
            for i in 1..l {
                out.push(PrefixForm { prefix: b[i - 1].end, constant: tail(i) });
            }
        }
        CubeCase::TwoA => {
            let extra = card(b[0].i_part & interval(b[l - 1].end + 1, n)) as i64;
            out.push(PrefixForm { prefix: n, constant: 0 });
            for i in 1..=l {
                let t = if i < l { tail(i) } else { 0 };
                out.push(PrefixForm { prefix: b[i - 1].end, constant: t + extra });
            }
        }
        CubeCase::TwoB | CubeCase::TwoC => {
            let off = if cube_case(idx) == CubeCase::TwoB { dec.wrap_offset() as i64 } else { 0 };
            out.push(PrefixForm { prefix: 0, constant: k as i64 });
            for i in 1..=l {
                let t = if i < l { tail(i) } else { 0 };
                out.push(PrefixForm { prefix: b[i - 1].end, constant: off + t });
            }
        }
        CubeCase::Trivial => unreachable!(),
    }
    out
}

/// `θ̂_I(x)` for `x ∈ [0,1]^n`.
pub fn concave_ext_cube(idx: &SchubertIndex, x: &[BigRational]) -> Result<BigRational> {
    check_unit_box(x, idx.n())?;
    Ok(cube_forms(idx).iter().map(|f| f.eval(x)).min().unwrap())
}

/// One factor of the common face: `Δ_{k,S}` or the subcube `[0,1]^S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FaceFactor {
    Simplex {
        #[serde(serialize_with = "ser_mask")]
        s: Mask,
        k: usize,
    },
    Cube {
        #[serde(serialize_with = "ser_mask")]
        s: Mask,
    },
}

/// A product of hypersimplices and subcubes over a partition of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommonFace {
    pub n: usize,
    pub case: CubeCase,
    pub factors: Vec<FaceFactor>,
}

impl CommonFace {
    /// Number of independent equations.
    pub fn codim(&self) -> usize {
        self.factors.iter().filter(|f| matches!(f, FaceFactor::Simplex { .. })).count()
    }

    pub fn contains(&self, x: Mask) -> bool {
        self.factors.iter().all(|f| match *f {
            FaceFactor::Simplex { s, k } => card(x & s) == k,
            FaceFactor::Cube { .. } => true,
        })
    }

    /// The 01 points of the face.
    pub fn points(&self) -> Vec<Mask> {
        (0..1u32 << self.n).filter(|&x| self.contains(x)).collect()
    }
}

/// The face shared by all maximal cells of `Σ_I`.
pub fn common_face(idx: &SchubertIndex) -> Result<CommonFace> {
    let case = cube_case(idx);
    if case == CubeCase::Trivial {
        return Err(Error::Trivial(format!("I = {} is a prefix", subset::show(idx.set()))));
    }
    let n = idx.n();
    let dec = idx.cyclic_decomposition()?;
    let b = &dec.blocks;
    let l = b.len();
    let simplex = |x: &Block| FaceFactor::Simplex { s: x.s, k: card(x.i_part) };
    let mut factors = Vec::new();
    match case {
        CubeCase::One => {
            factors.extend(b[1..].iter().map(simplex));
            factors.push(FaceFactor::Cube { s: b[0].s });
        }
        CubeCase::TwoA => {
            factors.extend(b[1..].iter().map(simplex));
            let s = interval(b[l - 1].end + 1, n);
            factors.push(FaceFactor::Simplex { s, k: card(b[0].i_part & s) });
            factors.push(FaceFactor::Cube { s: interval(1, b[0].end) });
        }
        CubeCase::TwoB => factors.extend(b.iter().map(simplex)),
        CubeCase::TwoC => {
            let s1 = interval(1, b[0].end);
            factors.push(FaceFactor::Simplex { s: s1, k: card(b[0].i_part) });
            factors.extend(b[1..].iter().map(simplex));
            factors.push(FaceFactor::Cube { s: interval(b[l - 1].end + 1, n) });
        }
        CubeCase::Trivial => unreachable!(),
    }
    Ok(CommonFace { n, case, factors })
}

/// Parses a Schubert index from a 1-based element list.
pub fn index_from_list(n: usize, elems: &[usize]) -> Result<SchubertIndex> {
    SchubertIndex::new(GroundSet::new(n)?, subset::from_list(n, elems)?)
}
