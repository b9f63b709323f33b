//! JSON formats.
//!
//! Rationals are written as integers or `"p/q"` strings and read from
//! either. Subsets are strictly increasing arrays of 1-based elements.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::necklace::GrassmannNecklace;
use crate::polyhedra::Polytope;
use crate::scalar::{fmt_rational, parse_rational, Scalar};
use crate::setfn::SetFunction;
use crate::subset::{self, GroundSet, Mask};
use crate::SetFn;

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed JSON: {e}")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Invalid(format!("missing field \"{key}\"")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Invalid(format!("{what} must be a nonnegative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Invalid(format!("{what} must be an array")))
}

pub fn rational_from(v: &Value) -> Result<BigRational> {
    let parsed = match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        _ => None,
    };
    parsed.ok_or_else(|| Error::Invalid(format!("not an exact rational: {v}")))
}

/// Integers stay numbers; everything else becomes `"p/q"`.
pub fn rational_to(r: &BigRational) -> Value {
    if r.is_integer() {
        if let Ok(i) = r.to_integer().to_string().parse::<i64>() {
            return json!(i);
        }
    }
    json!(fmt_rational(r))
}

pub fn point_from(v: &Value) -> Result<Vec<BigRational>> {
    array(v, "point")?.iter().map(rational_from).collect()
}

pub fn subset_from(n: usize, v: &Value) -> Result<Mask> {
    let elems: Vec<usize> = array(v, "subset")?
        .iter()
        .map(|x| usize_of(x, "subset element"))
        .collect::<Result<_>>()?;
    if elems.windows(2).any(|w| w[0] >= w[1]) {
        return invalid("subset elements must be strictly increasing");
    }
    subset::from_list(n, &elems)
}

pub fn subset_to(m: Mask) -> Value {
    json!(subset::elements(m))
}

pub fn family_from(n: usize, v: &Value) -> Result<Vec<Mask>> {
    array(v, "family")?.iter().map(|s| subset_from(n, s)).collect()
}

pub fn family_to(f: &[Mask]) -> Value {
    Value::Array(f.iter().map(|&m| subset_to(m)).collect())
}

/// `{"n": int, "values": [r_0, ..., r_{2^n-1}]}`.
pub fn setfn_from(v: &Value) -> Result<SetFn> {
    let n = usize_of(field(v, "n")?, "n")?;
    let values: Vec<BigRational> = array(field(v, "values")?, "values")?.iter().map(rational_from).collect::<Result<_>>()?;
    SetFunction::new(GroundSet::new(n)?, values)
}

pub fn setfn_to<T: Scalar>(f: &SetFunction<T>) -> Value {
    json!({ "n": f.n(), "values": f.values().iter().map(|x| rational_to(&x.to_rational())).collect::<Vec<_>>() })
}

/// `{"n": int, "k": int, "sets": [[...], ...]}`.
pub fn necklace_from(v: &Value) -> Result<GrassmannNecklace> {
    let n = usize_of(field(v, "n")?, "n")?;
    let k = usize_of(field(v, "k")?, "k")?;
    GrassmannNecklace::new(n, k, family_from(n, field(v, "sets")?)?)
}

pub fn necklace_to(neck: &GrassmannNecklace) -> Value {
    json!({ "n": neck.n(), "k": neck.k(), "sets": family_to(neck.sets()) })
}

/// `{"n": int, "vertices": [[r, ...], ...]}`.
pub fn polytope_from(v: &Value) -> Result<Polytope> {
    let n = usize_of(field(v, "n")?, "n")?;
    let pts: Vec<Vec<BigRational>> = array(field(v, "vertices")?, "vertices")?.iter().map(point_from).collect::<Result<_>>()?;
    if pts.iter().any(|p| p.len() != n) {
        return invalid(format!("every vertex needs {n} coordinates"));
    }
    Polytope::from_points(n, &pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn rationals_roundtrip() {
        for r in [rat(3, 1), rat(-7, 4), rat(0, 1)] {
            assert_eq!(rational_from(&rational_to(&r)).unwrap(), r);
        }
        assert!(rational_from(&json!(1.5)).is_err());
        assert!(rational_from(&json!("1/0")).is_err());
    }

    #[test]
    fn subsets_must_increase() {
        assert_eq!(subset_from(4, &json!([1, 3])).unwrap(), 0b101);
        assert!(subset_from(4, &json!([3, 1])).is_err());
        assert!(subset_from(4, &json!([5])).is_err());
    }
}
