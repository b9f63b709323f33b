//! Exact linear programming: maximize `c·x` subject to `A x = b`, `x ≥ 0`.
//!
//! A two-phase simplex on a fraction-free integer tableau. Every entry is a
//! minor of the input, so nothing is ever rounded. Dantzig pricing is used
//! until a degenerate step appears; degenerate steps use Bland's rule, which
//! rules out cycling.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{invalid, Result};
use crate::exact::{self, ExactInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal value (zero unless optimal).
    pub value: BigRational,
    /// Optimal primal point.
    pub x: Vec<BigRational>,
    /// Basic columns of the optimal basis, one per independent row.
    pub basis: Vec<usize>,
}

/// Solves `max c·x, A x = b, x ≥ 0` exactly.
pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> Result<LpSolution> {
    let cols = c.len();
    if a.len() != b.len() || a.iter().any(|r| r.len() != cols) {
        return invalid("LP dimensions disagree");
    }
    // Scale rows and objective to integers; make the right-hand side nonnegative.
    let mut ai = Vec::with_capacity(a.len());
    let mut bi = Vec::with_capacity(b.len());
    for (row, rhs) in a.iter().zip(b) {
        let mut full: Vec<BigRational> = row.clone();
        full.push(rhs.clone());
        let l = exact::denom_lcm(&full);
        let mut ints: Vec<BigInt> = full.iter().map(|x| (x * &l).to_integer()).collect();
        if ints[cols].is_negative() {
            ints.iter_mut().for_each(|x| *x = -&*x);
        }
        bi.push(ints.pop().unwrap());
        ai.push(ints);
    }
    let cl = exact::denom_lcm(c);
    let ci: Vec<BigInt> = c.iter().map(|x| (x * &cl).to_integer()).collect();
    let out = exact::with_fallback(
        || {
            let a = exact::convert::<i128>(&ai)?;
            let b = bi.iter().map(i128::from_big).collect::<Option<Vec<_>>>()?;
            let c = ci.iter().map(i128::from_big).collect::<Option<Vec<_>>>()?;
            Tableau::solve(&a, &b, &c)
        },
        || Tableau::solve(&ai, &bi, &ci),
    )
    .expect("bigint arithmetic does not overflow");
    let scale = BigRational::from_integer(cl);
    Ok(LpSolution { value: out.value / scale, ..out })
}

struct Tableau<T> {
    /// `d · B⁻¹ [A | I | b]`, one row per kept constraint.
    rows: Vec<Vec<T>>,
    /// `d · (c_B B⁻¹ A − c)` with the value in the last slot.
    obj: Vec<T>,
    d: T,
    basis: Vec<usize>,
    /// Columns allowed to enter.
    cols: usize,
}

impl<T: ExactInt> Tableau<T> {
    fn solve(a: &[Vec<T>], b: &[T], c: &[T]) -> Option<LpSolution> {
        let m = a.len();
        let n = c.len();
        let width = n + m + 1;
        let rows = (0..m)
            .map(|r| {
                let mut row = a[r].clone();
                row.extend((0..m).map(|j| if j == r { T::one() } else { T::zero() }));
                row.push(b[r].clone());
                row
            })
            .collect();
        let mut t = Tableau { rows, obj: vec![T::zero(); width], d: T::one(), basis: (n..n + m).collect(), cols: n };

        // Phase 1: maximize minus the sum of artificials.
        let mut c1 = vec![T::zero(); n + m];
        for x in &mut c1[n..] {
            *x = T::one().neg()?;
        }
        t.price(&c1)?;
        t.run()?;
        if t.obj[width - 1].sign() < 0 {
            return Some(LpSolution {
                status: LpStatus::Infeasible,
                value: BigRational::zero(),
                x: vec![],
                basis: vec![],
            });
        }
        t.drive_out_artificials(n)?;

        // Phase 2.
        let mut c2 = c.to_vec();
        c2.extend((0..m).map(|_| T::zero()));
        t.price(&c2)?;
        let status = t.run()?;
        if status == LpStatus::Unbounded {
            return Some(LpSolution { status, value: BigRational::zero(), x: vec![], basis: t.basis });
        }
        let d = BigRational::from_integer(t.d.to_big());
        let mut x = vec![BigRational::zero(); n];
        for (r, &j) in t.basis.iter().enumerate() {
            x[j] = BigRational::from_integer(t.rows[r][width - 1].to_big()) / &d;
        }
        let value = BigRational::from_integer(t.obj[width - 1].to_big()) / &d;
        Some(LpSolution { status, value, x, basis: t.basis })
    }

    fn rhs(&self) -> usize {
        self.obj.len() - 1
    }

    /// Recomputes the objective row for costs `c` and the current basis.
    fn price(&mut self, c: &[T]) -> Option<()> {
        let w = self.obj.len();
        for j in 0..w {
            let mut s = if j < c.len() { self.d.mul(&c[j])?.neg()? } else { T::zero() };
            for (r, &bj) in self.basis.iter().enumerate() {
                if !c[bj].is_zero() {
                    s = s.add(&c[bj].mul(&self.rows[r][j])?)?;
                }
            }
            self.obj[j] = s;
        }
        Some(())
    }

    fn run(&mut self) -> Option<LpStatus> {
        loop {
            let Some(dantzig) = self.entering(false) else {
                return Some(LpStatus::Optimal);
            };
            let Some((r, degenerate)) = self.leaving(dantzig)? else {
                return Some(LpStatus::Unbounded);
            };
            if !degenerate {
                self.pivot(r, dantzig)?;
                continue;
            }
            let e = self.entering(true).expect("an improving column exists");
            match self.leaving(e)? {
                Some((r, _)) => self.pivot(r, e)?,
                None => return Some(LpStatus::Unbounded),
            }
        }
    }

    /// Improving column: most negative reduced cost, or the first one.
    fn entering(&self, bland: bool) -> Option<usize> {
        let mut best: Option<usize> = None;
        for j in 0..self.cols {
            if self.obj[j].sign() >= 0 {
                continue;
            }
            if bland {
                return Some(j);
            }
            match best {
                Some(b) if self.obj[b].sub(&self.obj[j]).is_none_or(|v| v.sign() <= 0) => {}
                _ => best = Some(j),
            }
        }
        best
    }

    /// Ratio test; ties go to the smallest basic index. Returns the row and
    /// whether the step length is zero.
    fn leaving(&self, e: usize) -> Option<Option<(usize, bool)>> {
        let rhs = self.rhs();
        let mut best: Option<usize> = None;
        for r in 0..self.rows.len() {
            if self.rows[r][e].sign() <= 0 {
                continue;
            }
            best = Some(match best {
                None => r,
                Some(b) => {
                    // Compare rows[r].rhs / rows[r].e with rows[b].rhs / rows[b].e.
                    let lhs = self.rows[r][rhs].mul(&self.rows[b][e])?;
                    let rhs_ = self.rows[b][rhs].mul(&self.rows[r][e])?;
                    let cmp = lhs.sub(&rhs_)?.sign();
                    if cmp < 0 || (cmp == 0 && self.basis[r] < self.basis[b]) {
                        r
                    } else {
                        b
                    }
                }
            });
        }
        Some(best.map(|r| (r, self.rows[r][rhs].is_zero())))
    }

    fn pivot(&mut self, r: usize, e: usize) -> Option<()> {
        let p = self.rows[r][e].clone();
        let w = self.obj.len();
        let pivot_row = self.rows[r].clone();
        let update = |row: &mut Vec<T>, d: &T| -> Option<()> {
            let f = row[e].clone();
            if f.is_zero() {
                for x in row.iter_mut() {
                    *x = x.mul(&p)?.div_exact(d);
                }
            } else {
                for j in 0..w {
                    let v = row[j].mul(&p)?.sub(&f.mul(&pivot_row[j])?)?.div_exact(d);
                    row[j] = v;
                }
            }
            Some(())
        };
        for i in 0..self.rows.len() {
            if i != r {
                let mut row = std::mem::take(&mut self.rows[i]);
                update(&mut row, &self.d)?;
                self.rows[i] = row;
            }
        }
        let mut obj = std::mem::take(&mut self.obj);
        update(&mut obj, &self.d)?;
        self.obj = obj;
        self.d = p;
        self.basis[r] = e;
        if self.d.sign() < 0 {
            for row in self.rows.iter_mut().chain(std::iter::once(&mut self.obj)) {
                for x in row.iter_mut() {
                    *x = x.neg()?;
                }
            }
            self.d = self.d.neg()?;
        }
        Some(())
    }

    /// Pivots zero-level artificials out of the basis; rows where that is
    /// impossible are redundant and dropped.
    fn drive_out_artificials(&mut self, n: usize) -> Option<()> {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < n {
                r += 1;
                continue;
            }
            match (0..n).find(|&j| !self.rows[r][j].is_zero()) {
                Some(j) => {
                    self.pivot(r, j)?;
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
        Some(())
    }
}

/// Convenience for integer data.
pub fn maximize_int(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> Result<LpSolution> {
    let q = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect::<Vec<_>>();
    let a: Vec<Vec<BigRational>> = a.iter().map(|r| q(r)).collect();
    maximize(&a, &q(b), &q(c))
}
