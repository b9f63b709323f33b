//! Subsets of `[n]` as bitmasks. Element `i` (1-based) lives in bit `i-1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of `[n]`, element `i` at bit `i-1`.
pub type Mask = u32;

/// Largest ground set for dense set-function tables.
pub const MAX_TABLE_N: usize = 12;
/// Largest ground set for mask-only computations (pads live on `[2n]`).
pub const MAX_GROUND_N: usize = 24;

/// The ground set `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND_N {
            return Err(Error::GroundSize(n, MAX_GROUND_N));
        }
        Ok(GroundSet { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// The mask of `[n]`.
    pub fn full(self) -> Mask {
        full(self.n)
    }

    /// Number of subsets, `2^n`.
    pub fn size(self) -> usize {
        1usize << self.n
    }

    /// All masks in increasing order.
    pub fn subsets(self) -> impl Iterator<Item = Mask> {
        0..(1u32 << self.n)
    }

    pub fn contains(self, mask: Mask) -> bool {
        mask & !self.full() == 0
    }

    pub fn check(self, mask: Mask) -> Result<Mask> {
        if self.contains(mask) {
            Ok(mask)
        } else {
            Err(Error::MaskOutOfRange { mask, n: self.n })
        }
    }

    pub fn same(self, other: GroundSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroundMismatch(self.n, other.n))
        }
    }
}

/// Mask of `[n]`.
pub fn full(n: usize) -> Mask {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Mask of the single element `i`.
pub fn bit(i: usize) -> Mask {
    1 << (i - 1)
}

pub fn has(mask: Mask, i: usize) -> bool {
    mask >> (i - 1) & 1 == 1
}

pub fn card(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// The interval `[a, b]`; empty when `a > b`.
pub fn interval(a: usize, b: usize) -> Mask {
    if a > b {
        0
    } else {
        full(b) & !full(a - 1)
    }
}

/// Elements in increasing order, 1-based.
pub fn elements(mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(card(mask));
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize + 1);
        m &= m - 1;
    }
    out
}

pub fn from_elements(elems: &[usize]) -> Mask {
    elems.iter().fold(0, |m, &i| m | bit(i))
}

/// Parses a strictly increasing 1-based element list against `[n]`.
pub fn from_list(n: usize, elems: &[usize]) -> Result<Mask> {
    for w in elems.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Invalid(format!("subset {elems:?} is not strictly increasing")));
        }
    }
    if let Some(&bad) = elems.iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::Invalid(format!("element {bad} outside [{n}]")));
    }
    Ok(from_elements(elems))
}

/// Largest element, if any.
pub fn max_elem(mask: Mask) -> Option<usize> {
    (mask != 0).then(|| 32 - mask.leading_zeros() as usize)
}

/// Smallest element, if any.
pub fn min_elem(mask: Mask) -> Option<usize> {
    (mask != 0).then(|| mask.trailing_zeros() as usize + 1)
}

/// `{1,3,5}` style rendering.
pub fn show(mask: Mask) -> String {
    let e: Vec<String> = elements(mask).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", e.join(","))
}

/// All k-subsets of `[n]` in increasing mask order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Mask> {
    (0..(1u32 << n)).filter(|&m| card(m) == k).collect()
}

/// Applies the simple transposition `s_i` (swap `i` and `i+1`).
pub fn swap_adjacent(mask: Mask, i: usize) -> Mask {
    let a = has(mask, i);
    let b = has(mask, i + 1);
    if a == b {
        mask
    } else {
        mask ^ bit(i) ^ bit(i + 1)
    }
}

/// Componentwise Gale order `a <=_G b` on sets of equal size.
pub fn gale_leq(a: Mask, b: Mask) -> bool {
    card(a) == card(b) && elements(a).iter().zip(elements(b).iter()).all(|(x, y)| x <= y)
}

/// A 0/1 vector of the subset.
pub fn indicator(n: usize, mask: Mask) -> Vec<i64> {
    (1..=n).map(|i| has(mask, i) as i64).collect()
}

/// Serde helper: a mask as its 1-based element list.
pub fn ser_mask<S: serde::Serializer>(m: &Mask, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&elements(*m), s)
}

/// Serde helper for a list of masks.
pub fn ser_masks<S: serde::Serializer>(ms: &[Mask], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<usize>> = ms.iter().map(|&m| elements(m)).collect();
    serde::Serialize::serialize(&v, s)
}
