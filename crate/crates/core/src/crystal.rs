//! The type-A crystal raising operator on DCTP functions and a preimage
//! search for its inverse.

use crate::error::{invalid, precondition, Result};
use crate::scalar::Scalar;
use crate::schubert::SchubertIndex;
use crate::setfn::{is_dctp, SetFunction};
use crate::subset::{bit, has, interval, Mask};

fn check_index<T>(f: &SetFunction<T>, i: usize) -> Result<()> {
    let n = f.ground().n();
    if i == 0 || i >= n {
        return invalid(format!("crystal index {i} outside [1, {}]", n.saturating_sub(1)));
    }
    Ok(())
}

/// `X` is updated by the operator: `i ∉ X`, `i+1 ∈ X`.
pub fn is_active(x: Mask, i: usize) -> bool {
    !has(x, i) && has(x, i + 1)
}

/// `c = f({i} ∪ [i+2,n]) − f([i+1,n]) − 1`.
fn shift<T: Scalar>(f: &SetFunction<T>, i: usize) -> T {
    let n = f.n();
    let w = interval(i + 1, n);
    f.at(bit(i) | interval(i + 2, n)).clone() - f.at(w).clone() - T::one()
}

/// `e_i f` as a formal operator on tables, without the DCTP precondition.
pub fn raise_table<T: Scalar>(f: &SetFunction<T>, i: usize) -> SetFunction<T> {
    let c = shift(f, i);
    SetFunction::from_fn(f.ground(), |x| {
        if is_active(x, i) {
            let swapped = (x & !bit(i + 1)) | bit(i);
            f.at(x).clone().max(f.at(swapped).clone() - c.clone())
        } else {
            f.at(x).clone()
        }
    })
    .unwrap()
}

/// `e_i f(X) = max(f(X), f(X − {i+1} ∪ {i}) − c)` on active `X`, unchanged elsewhere.
pub fn raise<T: Scalar>(f: &SetFunction<T>, i: usize) -> Result<SetFunction<T>> {
    check_index(f, i)?;
    if !is_dctp(f).holds() {
        return precondition("raise expects a DCTP function");
    }
    Ok(raise_table(f, i))
}

/// `e_i^l f`.
pub fn raise_pow<T: Scalar>(f: &SetFunction<T>, i: usize, l: usize) -> Result<SetFunction<T>> {
    let mut g = f.clone();
    for _ in 0..l {
        g = raise(&g, i)?;
    }
    Ok(g)
}

/// Largest number of candidate tables the preimage search will try.
pub const LOWER_SEARCH_LIMIT: usize = 1 << 20;

/// A DCTP `g` with `e_i g = f`, if one exists.
///
/// Raising always adds one at `[i+1,n]`, so `g` is pinned there. At every
/// other active `X` the value is forced unless `f(X)` equals the raised
/// candidate `f(s_i X) − c_g`; there `g(X)` ranges from the submodular bound
/// of its `{i,i+1}` square up to `f(X)`. Values must be integers.
pub fn lower<T: Scalar>(f: &SetFunction<T>, i: usize) -> Result<Option<SetFunction<T>>> {
    check_index(f, i)?;
    if !is_dctp(f).holds() {
        check_integral(f)?;
        return Ok(None);
    }
    Ok(preimages(f, i, 1, |g| is_dctp(g).holds())?.pop())
}

/// All pairs `A ≤ B` (as masks) with `e_i^l (θ_A + θ_B) = f`, the formal
/// operator applied to tables. This searches the Schubert-generated space, so
/// it also covers sums that are not DCTP.
pub fn lower_schubert_pairs(f: &SetFunction<i64>, i: usize, l: usize) -> Result<Vec<(Mask, Mask)>> {
    check_index(f, i)?;
    let g = f.ground();
    let thetas: Vec<SetFunction<i64>> =
        g.subsets().map(|s| SchubertIndex::new(g, s).map(|x| x.rank_function())).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for a in g.subsets() {
        for b in g.subsets().filter(|&b| b >= a) {
            let mut h = &thetas[a as usize] + &thetas[b as usize];
            for _ in 0..l {
                h = raise_table(&h, i);
            }
            if h == *f {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

fn check_integral<T: Scalar>(f: &SetFunction<T>) -> Result<()> {
    if f.values().iter().any(|v| !v.is_integral()) {
        return precondition("lower searches integer-valued tables only");
    }
    Ok(())
}

/// Enumerates up to `limit` tables `g` with `raise_table(g) = f` and `accept(g)`.
fn preimages<T: Scalar>(
    f: &SetFunction<T>,
    i: usize,
    limit: usize,
    accept: impl Fn(&SetFunction<T>) -> bool,
) -> Result<Vec<SetFunction<T>>> {
    check_integral(f)?;
    let n = f.n();
    let w = interval(i + 1, n);
    let (bi, bj) = (bit(i), bit(i + 1));
    let c_g = shift(f, i) + T::one();
    let mut base = f.values().to_vec();
    base[w as usize] = f.at(w).clone() - T::one();
    let mut free: Vec<(Mask, Vec<T>)> = Vec::new();
    for x in f.ground().subsets().filter(|&x| is_active(x, i) && x != w) {
        let swapped = (x & !bj) | bi;
        let t = f.at(swapped).clone() - c_g.clone();
        let fx = f.at(x).clone();
        if fx < t {
            return Ok(Vec::new());
        }
        if fx > t {
            continue;
        }
        let z = x & !bj;
        let lb = f.at(z).clone() + f.at(z | bi | bj).clone() - f.at(z | bi).clone();
        let mut vals = Vec::new();
        let mut v = fx;
        while v >= lb {
            vals.push(v.clone());
            v = v - T::one();
        }
        if vals.is_empty() {
            return Ok(Vec::new());
        }
        free.push((x, vals));
    }
    let total = free.iter().try_fold(1usize, |acc, (_, v)| acc.checked_mul(v.len()));
    if total.is_none_or(|t| t > LOWER_SEARCH_LIMIT) {
        return precondition("preimage search space too large");
    }
    let mut found = Vec::new();
    let mut choice = vec![0usize; free.len()];
    loop {
        let mut vals = base.clone();
        for (slot, (x, cands)) in choice.iter().zip(&free) {
            vals[*x as usize] = cands[*slot].clone();
        }
        let g = SetFunction::new(f.ground(), vals)?;
        if raise_table(&g, i) == *f && accept(&g) {
            found.push(g);
            if found.len() >= limit {
                return Ok(found);
            }
        }
        // Odometer step.
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(found);
            }
            choice[pos] += 1;
            if choice[pos] < free[pos].1.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}
