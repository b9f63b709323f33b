//! Brute-force verification of the main theorems at desk scale.
//!
//! Each check enumerates its instances exhaustively (or from a seeded RNG)
//! and reports the first counterexample. Checks are independent and run in
//! parallel.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::crystal::raise_table;
use crate::necklace::{self, GrassmannNecklace, Permutation};
use crate::polyhedra::{
    gpoly_from_pair, intersect_plank, is_gpositroid, simplex_decomposition_base, simplex_decomposition_gpoly, supermodular_base_polytope, Polytope,
};
use crate::scalar::{int, rat};
use crate::schubert::{concave_ext_cube, pad, rank_bracket, SchubertIndex};
use crate::separation::{ascents, max_ws_extend, weakly_separated};
use crate::setfn::{is_dctp, is_strong_pair};
use crate::subdivision::{
    common_refinement, concave_closure, is_finest, is_gmatroid_subdivision, is_multisplit, regular_subdivision, restrict_to_hypersimplex, Subdivision,
};
use crate::subset::{self, card, gale_leq, k_subsets, swap_adjacent, Mask};
use crate::{GroundSet, IntSetFn, Rational};

pub const DEFAULT_SEED: u64 = 0x5eed_d27c;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n_max: 4, seed: DEFAULT_SEED }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: usize,
    pub name: &'static str,
    pub status: Status,
    /// Largest ground set actually used.
    pub n: usize,
    pub cases: usize,
    pub elapsed_ms: u128,
    pub counterexample: Option<String>,
}

impl CheckReport {
    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let mut s = format!("[{tag}] {:>2} {} (n<={}, {} cases, {} ms)", self.id, self.name, self.n, self.cases, self.elapsed_ms);
        if let Some(c) = &self.counterexample {
            s.push_str(&format!(": {c}"));
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub n_max: usize,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

type Outcome = std::result::Result<usize, String>;

struct Check {
    name: &'static str,
    /// Smallest ground set on which the check says anything.
    min_n: usize,
    /// Largest ground set the check is run on.
    cap: usize,
    run: fn(usize, u64) -> Outcome,
}

const CHECKS: [Check; 12] = [
    Check { name: "bracket rank equals basis oracle", min_n: 1, cap: 7, run: bracket_rank },
    Check { name: "figure 1 rank is 5", min_n: 0, cap: 10, run: figure_one },
    Check { name: "WS <=> DCTP sum <=> g-matroid refinement", min_n: 3, cap: 6, run: ws_dctp_refinement },
    Check { name: "pad lemma", min_n: 1, cap: 4, run: pad_lemma },
    Check { name: "closed-form extension equals LP closure", min_n: 1, cap: 6, run: closed_forms },
    Check { name: "restriction to hypersimplex equals cone split", min_n: 4, cap: 7, run: restriction_bridge },
    Check { name: "g-positroid routes agree on >= 500 g-matroids", min_n: 4, cap: 6, run: route_agreement },
    Check { name: "Mobius simplex decompositions", min_n: 2, cap: 4, run: mobius_decompositions },
    Check { name: "crystal raising at ascents", min_n: 2, cap: 5, run: crystal_ascents },
    Check { name: "maximal WS families give finest subdivisions", min_n: 3, cap: 4, run: finest },
    Check { name: "Schubert subdivisions are distinct multi-splits", min_n: 2, cap: 5, run: distinct_splits },
    Check { name: "necklace roundtrip and P(omega) g-positroid", min_n: 1, cap: 6, run: necklaces },
];

/// Runs check `id` (1-based).
pub fn run_check(id: usize, cfg: &VerifyConfig) -> Option<CheckReport> {
    let c = CHECKS.get(id.checked_sub(1)?)?;
    // The figure instance has a fixed size and always runs.
    let n = if c.min_n == 0 { c.cap } else { cfg.n_max.min(c.cap) };
    let start = Instant::now();
    let (status, cases, counterexample) = if n < c.min_n {
        (Status::Skipped, 0, None)
    } else {
        match (c.run)(n, cfg.seed) {
            Ok(k) => (Status::Pass, k, None),
            Err(e) => (Status::Fail, 0, Some(e)),
        }
    };
    Some(CheckReport { id, name: c.name, status, n, cases, elapsed_ms: start.elapsed().as_millis(), counterexample })
}

pub fn run(cfg: &VerifyConfig) -> Report {
    let checks = (1..=CHECKS.len()).into_par_iter().map(|id| run_check(id, cfg).expect("valid id")).collect();
    Report { n_max: cfg.n_max, seed: cfg.seed, checks }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn theta(n: usize, i: Mask) -> IntSetFn {
    SchubertIndex::new(GroundSet::new(n).expect("small n"), i).expect("subset of [n]").rank_function()
}

fn is_prefix(i: Mask) -> bool {
    i & (i + 1) == 0
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn bracket_rank(n_max: usize, _: u64) -> Outcome {
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut cases = 0;
            for i in 0..1u32 << n {
                let bases: Vec<Mask> = k_subsets(n, card(i)).into_iter().filter(|&b| gale_leq(b, i)).collect();
                for j in 0..1u32 << n {
                    let oracle = bases.iter().map(|&b| card(b & j)).max().unwrap_or(0);
                    ensure(rank_bracket(n, i, j) == oracle, || format!("n={n} I={} J={}", subset::show(i), subset::show(j)))?;
                    cases += 1;
                }
            }
            Ok(cases)
        })
        .sum()
}

fn figure_one(_: usize, _: u64) -> Outcome {
    let i = subset::from_elements(&[4, 5, 6, 8, 9]);
    let j = subset::from_elements(&[1, 2, 3, 4, 7, 8]);
    let r = rank_bracket(10, i, j);
    ensure(r == 5, || format!("got {r}"))?;
    Ok(1)
}

fn ws_dctp_refinement(n_max: usize, _: u64) -> Outcome {
    let mut cases = 0;
    for n in 1..=n_max {
        let subs: Vec<Subdivision> = (0..1u32 << n).into_par_iter().map(|i| regular_subdivision(&theta(n, i))).collect::<crate::Result<_>>().map_err(err)?;
        cases += (0..1u32 << n)
            .into_par_iter()
            .map(|i| {
                let mut k = 0;
                for j in 0..i {
                    let ws = weakly_separated(i, j);
                    let dctp = is_dctp(&(&theta(n, i) + &theta(n, j))).holds();
                    let refined = common_refinement(&subs[i as usize], &subs[j as usize]).map_err(err)?;
                    let gm = is_gmatroid_subdivision(&refined).map_err(err)?.holds();
                    ensure(ws == dctp && dctp == gm, || {
                        format!("n={n} I={} J={}: ws={ws} dctp={dctp} gmatroid={gm}", subset::show(i), subset::show(j))
                    })?;
                    k += 1;
                }
                Ok(k)
            })
            .sum::<Outcome>()?;
    }
    Ok(cases)
}

fn pad_lemma(n_max: usize, _: u64) -> Outcome {
    let mut cases = 0;
    for n in 1..=n_max {
        for i in 0..1u32 << n {
            let p = pad(n, i);
            for x in k_subsets(2 * n, n) {
                let lhs = rank_bracket(2 * n, p, x);
                let rhs = rank_bracket(n, i, x & subset::full(n)) + n - card(i);
                ensure(lhs == rhs, || format!("n={n} I={} X={}: {lhs} != {rhs}", subset::show(i), subset::show(x)))?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn closed_forms(n_max: usize, seed: u64) -> Outcome {
    let mut cases = 0;
    for n in 1..=n_max {
        cases += (0..1u32 << n)
            .into_par_iter()
            .map(|i| {
                let idx = SchubertIndex::new(GroundSet::new(n).map_err(err)?, i).map_err(err)?;
                let f = idx.rank_function();
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(i) << 8 | n as u64));
                let vertices = (0..1u32 << n).map(|s| (0..n).map(|t| int(i64::from(s >> t & 1))).collect::<Vec<Rational>>());
                let interior = (0..100).map(|_| (0..n).map(|_| rat(rng.gen_range(1..60), 60)).collect::<Vec<Rational>>());
                let mut k = 0;
                for x in vertices.chain(interior) {
                    let closed = concave_ext_cube(&idx, &x).map_err(err)?;
                    let lp = concave_closure(&f, &x).map_err(err)?;
                    ensure(closed == lp, || format!("n={n} I={} x={x:?}: closed form {closed} vs LP {lp}", subset::show(i)))?;
                    k += 1;
                }
                Ok(k)
            })
            .sum::<Outcome>()?;
    }
    Ok(cases)
}

/// `{J ∈ C([n],k) : e_J ∈ Π_c}` for each cone, keeping full-dimensional ones.
fn cone_split(idx: &SchubertIndex) -> crate::Result<Vec<Vec<Mask>>> {
    let (n, k) = (idx.n(), idx.k());
    let cones = idx.cyclic_decomposition()?.cones();
    let layer = k_subsets(n, k);
    let mut out: Vec<Vec<Mask>> = (0..cones.cones.len())
        .map(|c| {
            layer
                .iter()
                .copied()
                .filter(|&j| {
                    let x: Vec<Rational> = (0..n).map(|t| int(i64::from(j >> t & 1))).collect();
                    cones.all_memberships(&x).contains(&c)
                })
                .collect::<Vec<_>>()
        })
        .filter(|pts| crate::exact::affine_rank_masks(n, pts) == n)
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn restriction_bridge(n_max: usize, _: u64) -> Outcome {
    let mut cases = 0;
    for n in 2..=n_max {
        cases += (1..(1u32 << n) - 1)
            .into_par_iter()
            .map(|i| {
                let idx = SchubertIndex::new(GroundSet::new(n).map_err(err)?, i).map_err(err)?;
                if idx.is_prefix() || idx.cyclic_decomposition().map_err(err)?.sigma() < 2 {
                    return Ok(0);
                }
                let sub = regular_subdivision(&idx.rank_function()).map_err(err)?;
                let got = restrict_to_hypersimplex(&sub, idx.k()).map_err(err)?;
                let expect = cone_split(&idx).map_err(err)?;
                ensure(got == expect, || format!("n={n} I={}: {} cells vs {} cones", subset::show(i), got.len(), expect.len()))?;
                Ok(1)
            })
            .sum::<Outcome>()?;
    }
    Ok(cases)
}

/// Schubert base and independence polytopes, plank cuts, products, and
/// cells of subdivisions of weakly separated sums.
fn gmatroid_corpus(n_max: usize, seed: u64) -> Vec<(String, usize, Vec<Mask>)> {
    let mut out = vec![];
    for n in 1..=n_max {
        for i in 0..1u32 << n {
            let f = theta(n, i);
            let bases: Vec<Mask> = k_subsets(n, card(i)).into_iter().filter(|&b| gale_leq(b, i)).collect();
            let indep: Vec<Mask> = (0..1u32 << n).filter(|&x| *f.at(x) == card(x) as i64).collect();
            out.push((format!("bases n={n} I={}", subset::show(i)), n, bases));
            if n <= 5 {
                let q = Polytope::from_masks(n, &indep).expect("nonempty");
                for (lo, hi) in [(1, 2), (0, 1)] {
                    let cut = intersect_plank(&q, &int(lo), &int(hi)).expect("valid plank");
                    if !cut.is_empty() {
                        out.push((format!("plank {lo}..{hi} of independent sets n={n} I={}", subset::show(i)), n, cut.zero_one_vertices()));
                    }
                }
            }
            out.push((format!("independent sets n={n} I={}", subset::show(i)), n, indep));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..60 {
        let a = rng.gen_range(1..n_max.max(2));
        let b = rng.gen_range(1..=(n_max - a).max(1));
        if a + b > n_max {
            continue;
        }
        let (i, j) = (rng.gen_range(0..1u32 << a), rng.gen_range(0..1u32 << b));
        let pa: Vec<Mask> = k_subsets(a, card(i)).into_iter().filter(|&x| gale_leq(x, i)).collect();
        let pb: Vec<Mask> = k_subsets(b, card(j)).into_iter().filter(|&x| gale_leq(x, j)).collect();
        let pts: Vec<Mask> = pa.iter().flat_map(|&x| pb.iter().map(move |&y| x | y << a)).collect();
        out.push((format!("product {}x{}", subset::show(i), subset::show(j)), a + b, pts));
    }
    for n in 2..=n_max.min(4) {
        for i in 0..1u32 << n {
            for j in 0..i {
                if weakly_separated(i, j) {
                    if let Ok(sub) = regular_subdivision(&(&theta(n, i) + &theta(n, j))) {
                        for c in sub.cells {
                            out.push((format!("cell of n={n} {}+{}", subset::show(i), subset::show(j)), n, c.points));
                        }
                    }
                }
            }
        }
    }
    out
}

fn route_agreement(n_max: usize, seed: u64) -> Outcome {
    let corpus = gmatroid_corpus(n_max, seed);
    let cases = corpus
        .par_iter()
        .map(|(label, n, pts)| {
            let p = Polytope::from_masks(*n, pts).map_err(err)?;
            let r = is_gpositroid(&p).map_err(|e| format!("{label}: {e}"))?;
            ensure(r.agree(), || format!("{label}: {r:?}"))?;
            Ok(1)
        })
        .sum::<Outcome>()?;
    ensure(cases >= 500, || format!("corpus has only {cases} g-matroids"))?;
    Ok(cases)
}

/// `Σ_t c_t · max(0, |X ∩ A_t| − r_t)` plus a modular part.
fn random_supermodular(rng: &mut ChaCha8Rng, n: usize) -> IntSetFn {
    let terms: Vec<(Mask, usize, i64)> = (0..3)
        .map(|_| {
            let a = rng.gen_range(1..1u32 << n);
            (a, rng.gen_range(0..card(a)), rng.gen_range(1..4))
        })
        .collect();
    let modular: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..3)).collect();
    IntSetFn::from_fn(GroundSet::new(n).expect("small n"), |x| {
        let lin: i64 = subset::elements(x).iter().map(|&i| modular[i - 1]).sum();
        lin + terms.iter().map(|&(a, r, c)| c * (card(x & a) as i64 - r as i64).max(0)).sum::<i64>()
    })
    .expect("small n")
}

fn mobius_decompositions(n_max: usize, seed: u64) -> Outcome {
    // Δ_{2,4} = Δ_{123} + Δ_{124} + Δ_{134} + Δ_{234} − 2Δ_{1234}.
    let g4 = GroundSet::new(4).map_err(err)?;
    let f = IntSetFn::from_fn(g4, |m| card(m).min(2) as i64).map_err(err)?.natural_dual();
    let d = simplex_decomposition_base(&f).map_err(err)?;
    let mut pos: Vec<(Mask, Rational)> = d.positive.iter().map(|t| (t.set, t.coeff.clone())).collect();
    pos.sort();
    let triples: Vec<(Mask, Rational)> = k_subsets(4, 3).into_iter().map(|s| (s, int(1))).collect();
    let neg: Vec<(Mask, Rational)> = d.negative.iter().map(|t| (t.set, t.coeff.clone())).collect();
    ensure(pos == triples && neg == vec![(15, int(2))], || format!("hypersimplex decomposition {d:?}"))?;
    let lhs = supermodular_base_polytope(&f).map_err(err)?;
    ensure(lhs == Polytope::from_masks(4, &k_subsets(4, 2)).map_err(err)? && d.verify(&lhs).map_err(err)?, || "hypersimplex identity".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 1;
    for t in 0..100 {
        let n = 2 + t % (n_max - 1);
        let f = random_supermodular(&mut rng, n);
        let d = simplex_decomposition_base(&f).map_err(err)?;
        ensure(d.verify(&supermodular_base_polytope(&f).map_err(err)?).map_err(err)?, || format!("base decomposition of {:?}", f.values()))?;
        cases += 1;
    }
    let mut pairs = 0;
    while pairs < 100 {
        let n = 2 + pairs % (n_max - 1);
        let h = random_supermodular(&mut rng, n + 1);
        let full = subset::full(n);
        let e = subset::bit(n + 1);
        let g = GroundSet::new(n).map_err(err)?;
        let top = h.at(full | e) - h.at(e);
        let lower = IntSetFn::from_fn(g, |x| *h.at(x)).map_err(err)?;
        let upper = IntSetFn::from_fn(g, |y| top - (h.at((full & !y) | e) - h.at(e))).map_err(err)?;
        if !is_strong_pair(&upper, &lower).map_err(err)?.holds() {
            continue;
        }
        let q = gpoly_from_pair(&upper, &lower).map_err(err)?;
        let d = simplex_decomposition_gpoly(&upper, &lower).map_err(err)?;
        ensure(d.verify(&q).map_err(err)?, || format!("g-polymatroid decomposition of ({:?}, {:?})", upper.values(), lower.values()))?;
        pairs += 1;
    }
    Ok(cases + pairs)
}

fn crystal_ascents(n_max: usize, _: u64) -> Outcome {
    let mut cases = 0;
    for n in 2..=n_max {
        cases += (0..1u32 << n)
            .into_par_iter()
            .map(|a| {
                let mut k = 0;
                for b in 0..1u32 << n {
                    for i in ascents(n, &[a, b]) {
                        let l = [a, b].iter().filter(|&&r| subset::has(r, i) && !subset::has(r, i + 1)).count();
                        let mut f = &theta(n, a) + &theta(n, b);
                        for _ in 0..l {
                            f = raise_table(&f, i);
                        }
                        let expect = &theta(n, swap_adjacent(a, i)) + &theta(n, swap_adjacent(b, i));
                        ensure(f == expect, || format!("n={n} I1={} I2={} i={i}", subset::show(a), subset::show(b)))?;
                        k += 1;
                    }
                }
                Ok(k)
            })
            .sum::<Outcome>()?;
    }
    Ok(cases)
}

fn finest(n_max: usize, _: u64) -> Outcome {
    let mut cases = 0;
    for n in 3..=n_max {
        let g = GroundSet::new(n).map_err(err)?;
        for seed in (0..1u32 << n).filter(|&s| !is_prefix(s)) {
            let family = max_ws_extend(n, &[seed]).map_err(err)?;
            ensure(family.len() == n * (n + 1) / 2 + 1, || format!("n={n}: family {family:?} has {} sets", family.len()))?;
            let mut theta_sum = IntSetFn::zero(g).map_err(err)?;
            for &i in family.iter().filter(|&&i| !is_prefix(i)) {
                theta_sum = &theta_sum + &theta(n, i);
            }
            ensure(is_finest(&theta_sum).map_err(err)?.holds(), || format!("n={n}: family {family:?} is not finest"))?;
            cases += 1;
        }
        for i in (0..1u32 << n).filter(|&i| !is_prefix(i)) {
            let idx = SchubertIndex::new(g, i).map_err(err)?;
            if idx.cyclic_decomposition().map_err(err)?.sigma() >= 2 {
                ensure(!is_finest(&idx.rank_function()).map_err(err)?.holds(), || format!("n={n}: θ_{} alone is finest", subset::show(i)))?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn distinct_splits(n_max: usize, _: u64) -> Outcome {
    let mut cases = 0;
    for n in 2..=n_max {
        let ids: Vec<Mask> = (0..1u32 << n).filter(|&i| !is_prefix(i)).collect();
        let subs: Vec<Subdivision> = ids.par_iter().map(|&i| regular_subdivision(&theta(n, i))).collect::<crate::Result<_>>().map_err(err)?;
        for (x, s) in subs.iter().enumerate() {
            ensure(is_multisplit(s).is_split, || format!("n={n}: Σ_{} is not a multi-split", subset::show(ids[x])))?;
            for (y, t) in subs.iter().enumerate().take(x) {
                ensure(s.point_sets() != t.point_sets(), || format!("n={n}: Σ_{} = Σ_{}", subset::show(ids[x]), subset::show(ids[y])))?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn necklaces(n_max: usize, _: u64) -> Outcome {
    let mut cases = 0;
    for n in 1..=n_max {
        for i in 0..1u32 << n {
            let bases: Vec<Mask> = k_subsets(n, card(i)).into_iter().filter(|&b| gale_leq(b, i)).collect();
            let seq = necklace::positroid_to_necklace(n, &bases).map_err(err)?;
            let neck = GrassmannNecklace::new(n, card(i), seq).map_err(|e| format!("n={n} I={}: {e}", subset::show(i)))?;
            ensure(necklace::necklace_to_positroid(&neck) == bases, || format!("roundtrip n={n} I={}", subset::show(i)))?;
            cases += 1;
        }
    }
    for n in 1..=n_max.min(5) {
        for w in Permutation::all(n) {
            let p = Polytope::from_masks(n, &necklace::omega_domain(&w)).map_err(err)?;
            let label = || format!("P(omega) for omega={:?}", w.values());
            let r = is_gpositroid(&p).map_err(|e| format!("{}: {e}", label()))?;
            ensure(r.agree() && r.holds(), label)?;
            cases += 1;
        }
    }
    Ok(cases)
}
