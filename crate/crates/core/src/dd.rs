//! Double description: extreme rays of a pointed cone `{y : A y ≥ 0}`.
//!
//! Rows are inserted one at a time. Two rays on opposite sides of the new
//! hyperplane are combined only when they are adjacent, which is decided
//! combinatorially: no third ray lies on every processed hyperplane the pair
//! shares.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::{self, Bits, ExactInt};

/// Extreme rays of `{y : A y ≥ 0}`, primitive integer vectors. Returns `None`
/// when `A` does not have full column rank (the cone is not pointed).
pub fn extreme_rays(a: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let d = a.first()?.len();
    let start = initial_rows(a, d)?;
    let init = initial_rays(a, &start);
    let out = exact::with_fallback(
        || {
            let rows = exact::convert::<i128>(a)?;
            let rays = exact::convert::<i128>(&init)?;
            let out = run(&rows, &start, rays)?;
            Some(out.iter().map(|r| r.iter().map(ExactInt::to_big).collect()).collect())
        },
        || run(a, &start, init.clone()),
    )
    .expect("bigint arithmetic does not overflow");
    Some(out)
}

/// Picks `d` linearly independent rows.
fn initial_rows(a: &[Vec<BigInt>], d: usize) -> Option<Vec<usize>> {
    let mut picked: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    for (i, row) in a.iter().enumerate() {
        let q = exact::to_rational_vec(row);
        basis.push(q);
        if exact::rank(&basis) == basis.len() {
            picked.push(i);
            if picked.len() == d {
                return Some(picked);
            }
        } else {
            basis.pop();
        }
    }
    None
}

/// Columns of the inverse of the chosen square block, scaled to integers:
/// ray `j` is tight on every chosen row but row `j`.
fn initial_rays(a: &[Vec<BigInt>], start: &[usize]) -> Vec<Vec<BigInt>> {
    let d = start.len();
    let m: Vec<Vec<BigRational>> = start.iter().map(|&i| exact::to_rational_vec(&a[i])).collect();
    (0..d)
        .map(|j| {
            let e: Vec<BigRational> = (0..d).map(|i| if i == j { 1.into() } else { 0.into() }).map(BigRational::from_integer).collect();
            let x = exact::solve(&m, &e).expect("block is invertible");
            exact::integer_row(&x)
        })
        .collect()
}

struct Ray<T> {
    v: Vec<T>,
    zeros: Bits,
}

fn run<T: ExactInt>(a: &[Vec<T>], start: &[usize], init: Vec<Vec<T>>) -> Option<Vec<Vec<T>>> {
    let m = a.len();
    let d = start.len();
    let mut rays: Vec<Ray<T>> = init
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            let mut zeros = Bits::new(m);
            for (i, &r) in start.iter().enumerate() {
                if i != j {
                    zeros.set(r);
                }
            }
            Ray { v, zeros }
        })
        .collect();
    let mut done = vec![false; m];
    for &r in start {
        done[r] = true;
    }
    for row in 0..m {
        if done[row] {
            continue;
        }
        done[row] = true;
        let vals: Vec<T> = rays.iter().map(|r| exact::dot(&a[row], &r.v)).collect::<Option<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].sign() > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].sign() < 0).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    r.zeros.set(row);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 2 < d {
                    continue;
                }
                let blocked = (0..rays.len()).any(|k| k != p && k != q && rays[k].zeros.is_superset(&common));
                if blocked {
                    continue;
                }
                // vals[p] > 0 > vals[q]: vals[p]·q − vals[q]·p vanishes on the row.
                let mut v = Vec::with_capacity(rays[p].v.len());
                for (x, y) in rays[q].v.iter().zip(&rays[p].v) {
                    v.push(vals[p].mul(x)?.sub(&vals[q].mul(y)?)?);
                }
                exact::primitive(&mut v);
                let mut zeros = common;
                zeros.set(row);
                fresh.push(Ray { v, zeros });
            }
        }
        let mut kept = Vec::with_capacity(rays.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            match vals[i].sign() {
                0 => {
                    r.zeros.set(row);
                    kept.push(r);
                }
                1 => kept.push(r),
                _ => {}
            }
        }
        kept.extend(fresh);
        rays = kept;
    }
    Some(rays.into_iter().map(|r| r.v).collect())
}

/// Whether every entry of the vector is zero.
pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn square_cone() {
        // Homogenized unit square: t - x >= 0, x >= 0, t - y >= 0, y >= 0.
        let a = big(&[&[1, -1, 0], &[0, 1, 0], &[1, 0, -1], &[0, 0, 1]]);
        let mut rays = extreme_rays(&a).unwrap();
        rays.sort();
        assert_eq!(rays, big(&[&[1, 0, 0], &[1, 0, 1], &[1, 1, 0], &[1, 1, 1]]));
    }

    #[test]
    fn not_pointed() {
        let a = big(&[&[1, 0], &[-1, 0]]);
        assert!(extreme_rays(&a).is_none());
    }
}
