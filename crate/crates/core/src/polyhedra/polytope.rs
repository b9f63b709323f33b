use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::dd;
use crate::error::{invalid, Result};
use crate::exact::{self, Bits};
use crate::scalar::fmt_rational;
use crate::subset::Mask;

pub type Point = Vec<BigRational>;

/// `normal · x ≤ offset` (or `=` for equations).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: BigRational,
}

impl Halfspace {
    pub fn value(&self, x: &[BigRational]) -> BigRational {
        exact::dot_mixed(&self.normal, x)
    }

    pub fn slack(&self, x: &[BigRational]) -> BigRational {
        &self.offset - self.value(x)
    }
}

/// A bounded polytope with both representations. Vertices are irredundant
/// and sorted, so equality of polytopes is equality of vertex lists.
#[derive(Clone)]
pub struct Polytope {
    n: usize,
    vertices: Vec<Point>,
    equations: Vec<Halfspace>,
    facets: Vec<Halfspace>,
    /// Facets tight at each vertex.
    incidence: Vec<Bits>,
    dim: Option<usize>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("({})", v.iter().map(fmt_rational).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "Polytope(n={}, [{}])", self.n, vs.join(" "))
    }
}

impl Polytope {
    pub fn empty(n: usize) -> Self {
        Polytope { n, vertices: vec![], equations: vec![], facets: vec![], incidence: vec![], dim: None }
    }

    /// Convex hull of a finite point set.
    pub fn from_points(n: usize, points: &[Point]) -> Result<Self> {
        if points.iter().any(|p| p.len() != n) {
            return invalid(format!("points must have {n} coordinates"));
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Ok(Self::empty(n));
        }
        let p0 = pts[0].clone();
        let diffs: Vec<Vec<BigRational>> =
            pts[1..].iter().map(|p| p.iter().zip(&p0).map(|(a, b)| a - b).collect()).collect();
        let (_, local) = exact::rref(&diffs);
        let d = local.len();
        let equations = exact::nullspace(&diffs, n)
            .into_iter()
            .map(|a| {
                let normal = exact::integer_row(&a);
                let offset = exact::dot_mixed(&normal, &p0);
                Halfspace { normal, offset }
            })
            .collect();
        // Polar cone in local coordinates: (b, a) with b + a·p ≥ 0 for every point.
        let rows: Vec<Vec<BigInt>> = pts
            .iter()
            .map(|p| {
                let row: Vec<BigRational> = std::iter::once(BigRational::one()).chain(local.iter().map(|&c| p[c].clone())).collect();
                exact::integer_row(&row)
            })
            .collect();
        let rays = dd::extreme_rays(&rows).expect("points affinely span the local coordinates");
        let facets: Vec<Halfspace> = rays
            .into_iter()
            .filter(|r| !dd::is_zero_vec(&r[1..]))
            .map(|r| {
                let mut normal = vec![BigInt::zero(); n];
                for (k, &c) in local.iter().enumerate() {
                    normal[c] = -r[k + 1].clone();
                }
                Halfspace { normal, offset: BigRational::from_integer(r[0].clone()) }
            })
            .collect();
        let inc: Vec<Bits> = pts.iter().map(|p| tight(&facets, p)).collect();
        let is_vertex: Vec<bool> = (0..pts.len())
            .map(|i| !(0..pts.len()).any(|j| j != i && inc[j].is_superset(&inc[i])))
            .collect();
        let mut vertices = Vec::new();
        let mut incidence = Vec::new();
        for (i, p) in pts.into_iter().enumerate() {
            if is_vertex[i] {
                vertices.push(p);
                incidence.push(inc[i].clone());
            }
        }
        Ok(Polytope { n, vertices, equations, facets, incidence, dim: Some(d) })
    }

    /// Hull of 01 points given as masks.
    pub fn from_masks(n: usize, masks: &[Mask]) -> Result<Self> {
        let pts: Vec<Point> = masks.iter().map(|&m| indicator(n, m)).collect();
        Self::from_points(n, &pts)
    }

    /// Solution set of `equations` and `inequalities` (`normal·x ≤ offset`).
    /// Fails if the set is unbounded.
    pub fn from_hrep(n: usize, equations: &[(Point, BigRational)], inequalities: &[(Point, BigRational)]) -> Result<Self> {
        let e: Vec<Point> = equations.iter().map(|(a, _)| a.clone()).collect();
        let rhs: Vec<BigRational> = equations.iter().map(|(_, b)| b.clone()).collect();
        let x0 = if e.is_empty() {
            vec![BigRational::zero(); n]
        } else {
            match exact::solve(&e, &rhs) {
                Some(x) => x,
                None => return Ok(Self::empty(n)),
            }
        };
        let basis = exact::nullspace(&e, n);
        let k = basis.len();
        if k == 0 {
            let ok = inequalities.iter().all(|(a, b)| exact::dot_rational(a, &x0) <= *b);
            return if ok { Self::from_points(n, &[x0]) } else { Ok(Self::empty(n)) };
        }
        // Cone over the reduced system: t·(b − a·x0) − (a·N) z ≥ 0, t ≥ 0.
        let mut rows: Vec<Vec<BigInt>> = inequalities
            .iter()
            .map(|(a, b)| {
                let row: Vec<BigRational> = std::iter::once(b - exact::dot_rational(a, &x0))
                    .chain(basis.iter().map(|v| -exact::dot_rational(a, v)))
                    .collect();
                exact::integer_row(&row)
            })
            .collect();
        let mut t = vec![BigInt::zero(); k + 1];
        t[0] = BigInt::one();
        rows.push(t);
        let rank = exact::rank_int(&rows);
        if rank < k + 1 {
            return invalid("polyhedron is unbounded");
        }
        let rays = dd::extreme_rays(&rows).expect("full column rank");
        let pts: Vec<Point> = rays
            .into_iter()
            .filter(|r| r[0].is_positive())
            .map(|r| {
                let t = BigRational::from_integer(r[0].clone());
                let mut x = x0.clone();
                for (j, v) in basis.iter().enumerate() {
                    let z = BigRational::from_integer(r[j + 1].clone()) / &t;
                    for (xi, vi) in x.iter_mut().zip(v) {
                        *xi += &z * vi;
                    }
                }
                x
            })
            .collect();
        Self::from_points(n, &pts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Affine dimension; `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn equations(&self) -> &[Halfspace] {
        &self.equations
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    /// Facets tight at vertex `i`.
    pub fn incidence(&self, i: usize) -> &Bits {
        &self.incidence[i]
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        !self.is_empty()
            && self.equations.iter().all(|h| h.value(x) == h.offset)
            && self.facets.iter().all(|h| h.value(x) <= h.offset)
    }

    /// Vertices of the smallest face containing the given vertices.
    pub fn face_closure(&self, ids: &[usize]) -> Vec<usize> {
        let Some((&first, rest)) = ids.split_first() else {
            return (0..self.vertices.len()).collect();
        };
        let common = rest.iter().fold(self.incidence[first].clone(), |acc, &i| acc.and(&self.incidence[i]));
        (0..self.vertices.len()).filter(|&j| self.incidence[j].is_superset(&common)).collect()
    }

    /// Pairs of vertex indices spanning an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.vertices.len();
        let mut out = Vec::new();
        for u in 0..m {
            for v in u + 1..m {
                if self.face_closure(&[u, v]).len() == 2 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertex_index(&self, p: &[BigRational]) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_slice().cmp(p)).ok()
    }

    /// `max_{x ∈ P} c·x`.
    pub fn support(&self, c: &[BigRational]) -> Option<BigRational> {
        self.vertices.iter().map(|v| exact::dot_rational(c, v)).max()
    }

    /// `min_{x ∈ P} c·x`.
    pub fn support_min(&self, c: &[BigRational]) -> Option<BigRational> {
        self.vertices.iter().map(|v| exact::dot_rational(c, v)).min()
    }

    pub fn scale(&self, c: &BigRational) -> Result<Self> {
        if c.is_negative() {
            return invalid("scaling factor must be nonnegative");
        }
        let pts: Vec<Point> = self.vertices.iter().map(|v| v.iter().map(|x| x * c).collect()).collect();
        Self::from_points(self.n, &pts)
    }

    pub fn translate(&self, t: &[BigRational]) -> Result<Self> {
        let pts: Vec<Point> = self.vertices.iter().map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect()).collect();
        Self::from_points(self.n, &pts)
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return invalid("Minkowski sum of polytopes in different dimensions");
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Self::from_points(self.n, &pts)
    }

    /// `{c : c + other ⊆ self}`; may be empty.
    pub fn minkowski_difference(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return invalid("Minkowski difference of polytopes in different dimensions");
        }
        if other.is_empty() {
            return invalid("cannot subtract the empty polytope");
        }
        if self.is_empty() {
            return Ok(Self::empty(self.n));
        }
        let q = |h: &Halfspace| exact::to_rational_vec(&h.normal);
        let mut eqs = Vec::new();
        for h in &self.equations {
            let a = q(h);
            let lo = other.support_min(&a).unwrap();
            let hi = other.support(&a).unwrap();
            if lo != hi {
                return Ok(Self::empty(self.n));
            }
            eqs.push((a, &h.offset - hi));
        }
        let ineqs: Vec<(Point, BigRational)> = self
            .facets
            .iter()
            .map(|h| {
                let a = q(h);
                let hi = other.support(&a).unwrap();
                (a, &h.offset - hi)
            })
            .collect();
        Self::from_hrep(self.n, &eqs, &ineqs)
    }

    /// Adds inequalities `a·x ≤ b`.
    pub fn intersect(&self, extra: &[(Point, BigRational)]) -> Result<Self> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        let q = |h: &Halfspace| (exact::to_rational_vec(&h.normal), h.offset.clone());
        let eqs: Vec<(Point, BigRational)> = self.equations.iter().map(q).collect();
        let mut ineqs: Vec<(Point, BigRational)> = self.facets.iter().map(q).collect();
        ineqs.extend(extra.iter().cloned());
        Self::from_hrep(self.n, &eqs, &ineqs)
    }

    /// Image under the projection onto the listed coordinates.
    pub fn project(&self, coords: &[usize]) -> Result<Self> {
        let pts: Vec<Point> = self.vertices.iter().map(|v| coords.iter().map(|&c| v[c].clone()).collect()).collect();
        Self::from_points(coords.len(), &pts)
    }

    /// Vertices that are 01 vectors, as masks.
    pub fn zero_one_vertices(&self) -> Vec<Mask> {
        self.vertices.iter().filter_map(|v| to_mask(v)).collect()
    }

    /// All vertices are 01 vectors.
    pub fn is_zero_one(&self) -> bool {
        self.vertices.iter().all(|v| to_mask(v).is_some())
    }
}

fn tight(facets: &[Halfspace], p: &[BigRational]) -> Bits {
    let mut b = Bits::new(facets.len());
    for (i, h) in facets.iter().enumerate() {
        if h.value(p) == h.offset {
            b.set(i);
        }
    }
    b
}

/// The 01 vector of a mask.
pub fn indicator(n: usize, m: Mask) -> Point {
    (0..n).map(|i| BigRational::from_integer(BigInt::from((m >> i) & 1))).collect()
}

/// The mask of a 01 vector.
pub fn to_mask(v: &[BigRational]) -> Option<Mask> {
    let mut m = 0;
    for (i, x) in v.iter().enumerate() {
        if x.is_one() {
            m |= 1 << i;
        } else if !x.is_zero() {
            return None;
        }
    }
    Some(m)
}

/// Serde helper: a point as rational strings.
pub fn ser_point<S: serde::Serializer>(p: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<String> = p.iter().map(fmt_rational).collect();
    Serialize::serialize(&v, s)
}

/// JSON form `{"n", "vertices": [[r, ...], ...]}`.
impl Serialize for Polytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let vs: Vec<Vec<String>> = self.vertices.iter().map(|v| v.iter().map(fmt_rational).collect()).collect();
        let mut st = s.serialize_struct("Polytope", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("vertices", &vs)?;
        st.end()
    }
}
