//! Concave closures over `[0,1]^n` and the regular subdivisions they induce.
//!
//! Cells are stored as their 01 points together with the affine functional
//! `a·x + b` that agrees with the closure on the cell. Only full-dimensional
//! cells are kept.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::dd;
use crate::error::{invalid, precondition, Result};
use crate::exact::{self, affine_rank_masks};
use crate::lp::{self, LpStatus};
use crate::polyhedra::{is_gmatroid_points, is_gpositroid, GMatroidWitness, Polytope};
use crate::scalar::{fmt_rational, Scalar};
use crate::setfn::{is_dctp, SetFunction};
use crate::subset::{self, card, ser_masks, Mask};
use crate::verdict::Verdict;

/// `\widehat f(x) = max{Σ λ_S f(S) : λ ≥ 0, Σ λ_S = 1, Σ λ_S e_S = x}`.
pub fn concave_closure<T: Scalar>(f: &SetFunction<T>, x: &[BigRational]) -> Result<BigRational> {
    let n = f.n();
    if x.len() != n {
        return invalid(format!("point has {} coordinates, expected {n}", x.len()));
    }
    if x.iter().any(|v| v.is_negative() || *v > BigRational::one()) {
        return invalid("point lies outside [0,1]^n");
    }
    let cols = 1usize << n;
    let mut a = vec![vec![BigRational::zero(); cols]; n + 1];
    for s in 0..cols {
        for i in 0..n {
            if s >> i & 1 == 1 {
                a[i][s] = BigRational::one();
            }
        }
        a[n][s] = BigRational::one();
    }
    let mut b = x.to_vec();
    b.push(BigRational::one());
    let c: Vec<BigRational> = (0..cols).map(|s| f.at(s as Mask).to_rational()).collect();
    let sol = lp::maximize(&a, &b, &c)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol.value),
        // The cube is the hull of its vertices and the objective is bounded.
        s => unreachable!("concave closure LP ended {s:?}"),
    }
}

/// A maximal cell and the functional `a·x + b` of the closure on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub points: Vec<Mask>,
    pub a: Vec<BigRational>,
    pub b: BigRational,
}

impl Cell {
    pub fn eval(&self, s: Mask) -> BigRational {
        let mut v = self.b.clone();
        for i in subset::elements(s) {
            v += &self.a[i - 1];
        }
        v
    }

    pub fn polytope(&self, n: usize) -> Result<Polytope> {
        Polytope::from_masks(n, &self.points)
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Affine {
            a: Vec<String>,
            b: String,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(serialize_with = "ser_masks")]
            points: &'a [Mask],
            affine: Affine,
        }
        let affine = Affine { a: self.a.iter().map(fmt_rational).collect(), b: fmt_rational(&self.b) };
        Out { points: &self.points, affine }.serialize(s)
    }
}

/// Full-dimensional cells, sorted by point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subdivision {
    pub n: usize,
    pub cells: Vec<Cell>,
}

impl Subdivision {
    fn new(n: usize, mut cells: Vec<Cell>) -> Self {
        cells.sort();
        cells.dedup_by(|x, y| x.points == y.points);
        Subdivision { n, cells }
    }

    /// The single cell `[0,1]^n` with the zero functional.
    pub fn trivial(n: usize) -> Self {
        let cell = Cell { points: (0..1 << n).collect(), a: vec![BigRational::zero(); n], b: BigRational::zero() };
        Subdivision { n, cells: vec![cell] }
    }

    /// The cell complex as a set of point sets, forgetting the functionals.
    pub fn point_sets(&self) -> BTreeSet<Vec<Mask>> {
        self.cells.iter().map(|c| c.points.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

fn rational_values<T: Scalar>(f: &SetFunction<T>) -> Vec<BigRational> {
    f.values().iter().map(Scalar::to_rational).collect()
}

fn slack(vals: &[BigRational], a: &[BigRational], b: &BigRational, s: Mask) -> BigRational {
    let mut v = b - &vals[s as usize];
    for i in subset::elements(s) {
        v += &a[i - 1];
    }
    v
}

fn tight(vals: &[BigRational], a: &[BigRational], b: &BigRational) -> Vec<Mask> {
    (0..vals.len() as Mask).filter(|&s| slack(vals, a, b, s).is_zero()).collect()
}

/// One full-dimensional cell: start from the horizontal supporting plane and
/// tilt it inside the space of functionals vanishing on the tight points
/// until those points span the cube.
fn first_cell(n: usize, vals: &[BigRational]) -> Cell {
    let mut a = vec![BigRational::zero(); n];
    let mut b = vals.iter().max().expect("nonempty table").clone();
    loop {
        let pts = tight(vals, &a, &b);
        if affine_rank_masks(n, &pts) == n + 1 {
            return Cell { points: pts, a, b };
        }
        let rows: Vec<Vec<BigRational>> = pts.iter().map(|&s| lifted(n, s)).collect();
        let mut dir = exact::nullspace(&rows, n + 1).swap_remove(0);
        let along = |d: &[BigRational], s: Mask| exact::dot_rational(d, &lifted(n, s));
        if (0..vals.len() as Mask).all(|s| !along(&dir, s).is_negative()) {
            dir.iter_mut().for_each(|v| *v = -v.clone());
        }
        let t = (0..vals.len() as Mask)
            .filter_map(|s| {
                let l = along(&dir, s);
                l.is_negative().then(|| slack(vals, &a, &b, s) / -l)
            })
            .min()
            .expect("a nonzero functional is negative somewhere on the cube");
        for i in 0..n {
            a[i] += &t * &dir[i];
        }
        b += &t * &dir[n];
    }
}

fn lifted(n: usize, s: Mask) -> Vec<BigRational> {
    (0..n)
        .map(|i| if s >> i & 1 == 1 { BigRational::one() } else { BigRational::zero() })
        .chain(std::iter::once(BigRational::one()))
        .collect()
}

/// Interior facets of a g-matroid cell, as `(S, sign, c)` meaning
/// `sign·x(S) ≤ sign·c` with the facet on the boundary.
fn interior_facets(n: usize, pts: &[Mask]) -> Vec<(Mask, i8, usize)> {
    let mut out = vec![];
    for s in 1..=subset::full(n) {
        let weights: Vec<usize> = pts.iter().map(|&p| card(p & s)).collect();
        let (lo, hi) = (*weights.iter().min().unwrap(), *weights.iter().max().unwrap());
        for (sign, c) in [(1i8, hi), (-1i8, lo)] {
            let face: Vec<Mask> = pts.iter().zip(&weights).filter(|(_, &w)| w == c).map(|(&p, _)| p).collect();
            if affine_rank_masks(n, &face) != n {
                continue;
            }
            let on_boundary = (0..n).any(|i| face.iter().all(|&p| p >> i & 1 == face[0] >> i & 1));
            if !on_boundary {
                out.push((s, sign, c));
            }
        }
    }
    out
}

/// The regular subdivision of `[0,1]^n` induced by a DCTP function.
///
/// Walks from one cell to the next across interior facets. Facets are read
/// off the cell's support pair, which is complete because every cell is a
/// g-polymatroid.
pub fn regular_subdivision<T: Scalar>(f: &SetFunction<T>) -> Result<Subdivision> {
    if let Verdict::Fails(w) = is_dctp(f) {
        return precondition(format!("not DCTP: {w:?}"));
    }
    let n = f.n();
    let vals = rational_values(f);
    let start = first_cell(n, &vals);
    let mut seen: BTreeSet<Vec<Mask>> = BTreeSet::from([start.points.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut cells = vec![];
    while let Some(cell) = queue.pop_front() {
        for (s, sign, c) in interior_facets(n, &cell.points) {
            // ℓ(x) = sign·(x(S) − c) is ≤ 0 on the cell; tilt by −tℓ.
            let ell = |p: Mask| BigRational::from_integer(BigInt::from(sign) * (card(p & s) as i64 - c as i64));
            let t = (0..vals.len() as Mask)
                .filter_map(|p| {
                    let l = ell(p);
                    l.is_positive().then(|| slack(&vals, &cell.a, &cell.b, p) / l)
                })
                .min()
                .expect("an interior facet has cube vertices beyond it");
            let step = BigRational::from_integer(sign.into()) * &t;
            let a: Vec<BigRational> = (0..n).map(|i| if s >> i & 1 == 1 { &cell.a[i] - &step } else { cell.a[i].clone() }).collect();
            let b = &cell.b + &step * BigRational::from_integer(c.into());
            let points = tight(&vals, &a, &b);
            if seen.insert(points.clone()) {
                queue.push_back(Cell { points, a, b });
            }
        }
        cells.push(cell);
    }
    Ok(Subdivision::new(n, cells))
}

/// The same subdivision for an arbitrary function, from the vertices of
/// `{(a, b) : a·e_S + b ≥ f(S)}` by double description. Exponential in the
/// number of cells; meant for small `n` and for cross-checks.
pub fn regular_subdivision_dd<T: Scalar>(f: &SetFunction<T>) -> Result<Subdivision> {
    let n = f.n();
    let vals = rational_values(f);
    let scale = exact::denom_lcm(&vals);
    // Homogenized with t: a·e_S + b − f(S)·t ≥ 0 and t ≥ 0.
    let mut rows: Vec<Vec<BigInt>> = (0..vals.len() as Mask)
        .map(|s| {
            let fs = (&vals[s as usize] * BigRational::from_integer(scale.clone())).to_integer();
            (0..n).map(|i| BigInt::from(s >> i & 1)).chain([BigInt::one(), -fs]).collect()
        })
        .collect();
    rows.push((0..n + 1).map(|_| BigInt::zero()).chain([BigInt::one()]).collect());
    let rays = dd::extreme_rays(&rows).expect("the dual cone is pointed");
    let scale = BigRational::from_integer(scale);
    let cells = rays
        .into_iter()
        .filter(|r| r[n + 1].is_positive())
        .map(|r| {
            let t = BigRational::from_integer(r[n + 1].clone()) / &scale;
            let a: Vec<BigRational> = r[..n].iter().map(|v| BigRational::from_integer(v.clone()) / &t).collect();
            let b = BigRational::from_integer(r[n].clone()) / &t;
            Cell { points: tight(&vals, &a, &b), a, b }
        })
        .collect();
    Ok(Subdivision::new(n, cells))
}

/// Cells cut down to the weight-`k` layer, keeping those of full dimension
/// in `Δ_{k,n}`.
pub fn restrict_to_hypersimplex(sub: &Subdivision, k: usize) -> Result<Vec<Vec<Mask>>> {
    let n = sub.n;
    if k == 0 || k >= n {
        return invalid(format!("layer {k} of the {n}-cube is a single point"));
    }
    let mut out: Vec<Vec<Mask>> = sub
        .cells
        .iter()
        .map(|c| c.points.iter().copied().filter(|&p| card(p) == k).collect::<Vec<_>>())
        .filter(|pts| affine_rank_masks(n, pts) == n)
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Full-dimensional pairwise intersections, with summed functionals.
///
/// Intersections are taken on 01 points, which matches the geometric
/// intersection whenever both cells are g-polymatroids (their intersection
/// is integral).
pub fn common_refinement(s1: &Subdivision, s2: &Subdivision) -> Result<Subdivision> {
    if s1.n != s2.n {
        return invalid("subdivisions live in cubes of different dimension");
    }
    let n = s1.n;
    let mut cells = vec![];
    for c1 in &s1.cells {
        for c2 in &s2.cells {
            let points: Vec<Mask> = c1.points.iter().copied().filter(|p| c2.points.binary_search(p).is_ok()).collect();
            if affine_rank_masks(n, &points) == n + 1 {
                let a = c1.a.iter().zip(&c2.a).map(|(x, y)| x + y).collect();
                cells.push(Cell { points, a, b: &c1.b + &c2.b });
            }
        }
    }
    Ok(Subdivision::new(n, cells))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellFailure<W> {
    pub cell: usize,
    pub witness: W,
}

/// Every cell is a g-matroid (01 points, edges in directions `e_i`, `e_i − e_j`).
pub fn is_gmatroid_subdivision(sub: &Subdivision) -> Result<Verdict<CellFailure<GMatroidWitness>>> {
    for (i, c) in sub.cells.iter().enumerate() {
        if let Verdict::Fails(w) = is_gmatroid_points(sub.n, &c.points)? {
            return Ok(Verdict::Fails(CellFailure { cell: i, witness: w }));
        }
    }
    Ok(Verdict::Holds)
}

/// Every cell is a g-positroid, all three tests agreeing.
pub fn is_gpositroid_subdivision(sub: &Subdivision) -> Result<Verdict<usize>> {
    for (i, c) in sub.cells.iter().enumerate() {
        let p = c.polytope(sub.n)?;
        if !is_gmatroid_points(sub.n, &c.points)?.holds() {
            return Ok(Verdict::Fails(i));
        }
        let r = is_gpositroid(&p)?;
        if !r.agree() || !r.holds() {
            return Ok(Verdict::Fails(i));
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiSplit {
    pub is_split: bool,
    /// Number of maximal cells.
    pub l: usize,
    /// 01 points common to every cell.
    #[serde(serialize_with = "ser_masks")]
    pub face: Vec<Mask>,
    pub codim: usize,
}

/// An `l`-split: all `l` maximal cells share a face of codimension `l − 1`.
pub fn is_multisplit(sub: &Subdivision) -> MultiSplit {
    let n = sub.n;
    let mut face: Vec<Mask> = sub.cells.first().map(|c| c.points.clone()).unwrap_or_default();
    for c in &sub.cells[1.min(sub.cells.len())..] {
        face.retain(|p| c.points.binary_search(p).is_ok());
    }
    let rank = affine_rank_masks(n, &face);
    let codim = if rank == 0 { n + 1 } else { n + 1 - rank };
    let l = sub.cells.len();
    MultiSplit { is_split: l >= 1 && codim + 1 == l, l, face, codim }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FinestWitness {
    /// `θ(Ta) + θ(Tb) = θ(T) + θ(Tab)`.
    Modular { t: Mask, a: usize, b: usize },
    /// `θ(Tab) + θ(Tc) = θ(Tbc) + θ(Ta)`.
    Plucker { t: Mask, a: usize, b: usize, c: usize },
}

/// The finest-subdivision certificate: strict submodularity on every square
/// and `θ(Tab) + θ(Tc) ≠ θ(Tbc) + θ(Ta)` for every `a < b < c`.
pub fn is_finest<T: Scalar>(theta: &SetFunction<T>) -> Result<Verdict<FinestWitness>> {
    if let Verdict::Fails(w) = is_dctp(theta) {
        return precondition(format!("not DCTP: {w:?}"));
    }
    let n = theta.n();
    let at = |m: Mask| theta.at(m).clone();
    let bit = subset::bit;
    for t in 0..1 << n as Mask {
        let free: Vec<usize> = (1..=n).filter(|&i| !subset::has(t, i)).collect();
        for (x, &a) in free.iter().enumerate() {
            for (y, &b) in free.iter().enumerate().skip(x + 1) {
                let (ta, tb, tab) = (t | bit(a), t | bit(b), t | bit(a) | bit(b));
                if at(ta) + at(tb) == at(t) + at(tab) {
                    return Ok(Verdict::Fails(FinestWitness::Modular { t, a, b }));
                }
                for &c in &free[y + 1..] {
                    if at(tab) + at(t | bit(c)) == at(t | bit(b) | bit(c)) + at(ta) {
                        return Ok(Verdict::Fails(FinestWitness::Plucker { t, a, b, c }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Same cell complex, i.e. the same cone of the secondary fan.
pub fn same_cone<T: Scalar>(f1: &SetFunction<T>, f2: &SetFunction<T>) -> Result<bool> {
    f1.ground().same(f2.ground())?;
    Ok(regular_subdivision(f1)?.point_sets() == regular_subdivision(f2)?.point_sets())
}
