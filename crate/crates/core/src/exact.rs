//! Exact integer and rational linear algebra shared by the LP, the double
//! description method and the polytope code.
//!
//! Inner loops run over `i128` with checked arithmetic; any overflow makes
//! the routine return `None` and the caller reruns it over `BigInt`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer type for fraction-free algorithms. Arithmetic returns `None` on
/// overflow.
pub trait ExactInt: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    /// -1, 0 or 1.
    fn sign(&self) -> i32;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Division known to be exact.
    fn div_exact(&self, o: &Self) -> Self;
    /// Nonnegative gcd.
    fn gcd(&self, o: &Self) -> Self;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn sign(&self) -> i32 {
        self.signum() as i32
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
}

/// Converts a matrix of big integers, failing if an entry does not fit.
pub fn convert<T: ExactInt>(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<T>>> {
    rows.iter().map(|r| r.iter().map(T::from_big).collect()).collect()
}

/// Tries the machine-integer path first; `None` there means overflow.
pub fn with_fallback<R>(fast: impl FnOnce() -> Option<R>, slow: impl FnOnce() -> Option<R>) -> Option<R> {
    fast().or_else(slow)
}

/// Dot product, `None` on overflow.
pub fn dot<T: ExactInt>(a: &[T], b: &[T]) -> Option<T> {
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s = s.add(&x.mul(y)?)?;
        }
    }
    Some(s)
}

/// Divides a vector by the gcd of its entries.
pub fn primitive<T: ExactInt>(v: &mut [T]) {
    let mut g = T::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if !g.is_zero() && g != T::one() {
        for x in v.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn bareiss_rank<T: ExactInt>(rows: &[Vec<T>]) -> Option<usize> {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = T::one();
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for j in c + 1..cols {
                let v = m[rank][c].mul(&m[r][j])?.sub(&m[r][c].mul(&m[rank][j])?)?;
                m[r][j] = v.div_exact(&prev);
            }
            m[r][c] = T::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    Some(rank)
}

/// Rank of an integer matrix.
pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    with_fallback(
        || bareiss_rank(&convert::<i128>(rows)?),
        || bareiss_rank(rows),
    )
    .expect("bigint arithmetic does not overflow")
}

/// Rank of a small integer matrix given as `i64` rows.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let fast: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    bareiss_rank(&fast).unwrap_or_else(|| {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        rank_int(&big)
    })
}

/// Affine rank (dimension + 1) of a set of 01 points, given as masks.
pub fn affine_rank_masks(n: usize, masks: &[u32]) -> usize {
    let rows: Vec<Vec<i64>> = masks
        .iter()
        .map(|&m| std::iter::once(1).chain((0..n).map(|i| i64::from((m >> i) & 1))).collect())
        .collect();
    rank_i64(&rows)
}

/// Reduced row echelon form over the rationals; returns the nonzero rows and
/// their pivot columns.
pub fn rref(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let d = &factor * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    rref(rows).1.len()
}

/// A basis of `{v : rows · v = 0}`.
pub fn nullspace(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `a x = b`, or `None` if inconsistent.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<BigRational>> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// Least common multiple of the denominators.
pub fn denom_lcm(v: &[BigRational]) -> BigInt {
    v.iter().fold(<BigInt as One>::one(), |l, x| l.lcm(x.denom()))
}

/// Positive multiple of `v` with coprime integer entries.
pub fn integer_row(v: &[BigRational]) -> Vec<BigInt> {
    let l = denom_lcm(v);
    let mut out: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    primitive(&mut out);
    out
}

pub fn to_rational_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

pub fn dot_rational(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |s, (x, y)| s + x * y)
}

/// `Σ a_i x_i` for an integer row and rational point.
pub fn dot_mixed(a: &[BigInt], x: &[BigRational]) -> BigRational {
    a.iter()
        .zip(x)
        .filter(|(c, _)| !Zero::is_zero(*c))
        .fold(BigRational::zero(), |s, (c, v)| s + v * c)
}

/// A small fixed-width bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }

    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_superset(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| b & !a == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}
