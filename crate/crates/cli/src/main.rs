//! `dctp`: command-line front end for dctp-core.
//!
//! Every command prints JSON (or a short text form with `--format text`).
//! Exit status: 0 when the answer is yes, 1 when it is no (with a witness),
//! 2 on bad input.

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use dctp_core::io;
use dctp_core::necklace::{self, CyclicPattern, GrassmannNecklace, Permutation};
use dctp_core::polyhedra::{self, Polytope, SimplexDecomposition};
use dctp_core::schubert::{concave_ext_cube, SchubertIndex};
use dctp_core::separation::{chord_separated, family_check, strongly_separated, weakly_separated};
use dctp_core::setfn;
use dctp_core::subdivision;
use dctp_core::verify::{self, VerifyConfig, DEFAULT_SEED};
use dctp_core::{crystal, Error, GroundSet, Mask, SetFn, Verdict};

#[derive(Parser)]
#[command(name = "dctp", version, about = "Exact DCTP functions, Schubert ranks, g-positroids and cube subdivisions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    Submodular,
    Supermodular,
    Plucker,
    Dctp,
    StrongPair,
}

#[derive(Clone, Copy, ValueEnum)]
enum SepMode {
    Weak,
    Strong,
    Chord,
}

/// Inputs are file paths or inline JSON.
#[derive(Subcommand)]
enum Cmd {
    /// Test a set function for submodularity, DCTP, etc.
    Check {
        #[arg(long = "fn")]
        f: String,
        /// Second function (the supermodular g) for strong-pair mode.
        #[arg(long = "fn2")]
        g: Option<String>,
        #[arg(long, value_enum, default_value_t = CheckMode::Dctp)]
        mode: CheckMode,
    },
    /// Rank of a subset in the Schubert matroid of an index.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        index: String,
        #[arg(long)]
        subset: String,
    },
    /// Concave extension over the cube, of a Schubert rank or any function.
    Extend {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with = "f")]
        index: Option<String>,
        #[arg(long = "fn")]
        f: Option<String>,
        #[arg(long)]
        point: String,
    },
    /// Is a family pairwise separated?
    Separation {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value_t = SepMode::Weak)]
        mode: SepMode,
    },
    /// Minkowski sum (or difference) of two polytopes, or the sum of the
    /// Schubert polytopes of a family.
    Minkowski {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        difference: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        family: Option<String>,
    },
    /// Regular subdivision of the cube induced by a DCTP function.
    Subdivide {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "fn")]
        f: String,
        /// Use double description; accepts any function.
        #[arg(long)]
        dd: bool,
    },
    /// Common refinement of two induced subdivisions.
    Refine {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "fn")]
        f: String,
        #[arg(long = "fn2")]
        g: String,
    },
    /// Is the induced subdivision finest?
    Finest {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "fn")]
        f: String,
    },
    /// Do two functions induce the same subdivision?
    Samecone {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "fn")]
        f: String,
        #[arg(long = "fn2")]
        g: String,
    },
    /// Signed simplex decomposition of Δ(f), or of Q(f, g) for a strong pair.
    Decompose {
        #[arg(long = "fn")]
        f: String,
        #[arg(long = "fn2")]
        g: Option<String>,
    },
    /// Necklace to positroid, or bases to necklace.
    Necklace {
        #[arg(long, conflicts_with = "bases")]
        necklace: Option<String>,
        #[arg(long)]
        bases: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// ω-chamber D(ω) or D(ω', ω).
    Chamber {
        #[arg(long)]
        omega: String,
        #[arg(long)]
        omega_prime: Option<String>,
    },
    /// Crystal operators on DCTP functions.
    Crystal {
        #[command(subcommand)]
        op: CrystalOp,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Run only this check (1-based).
        #[arg(long)]
        check: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CrystalOp {
    Raise {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "fn")]
        f: String,
        #[arg(long)]
        i: usize,
    },
    Lower {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "fn")]
        f: String,
        #[arg(long)]
        i: usize,
    },
}

/// What a command produced: JSON, a text rendering, and the exit status.
struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn value(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), code: 0 }
    }

    fn verdict<W: Serialize + std::fmt::Debug>(v: &Verdict<W>) -> Self {
        let text = match v {
            Verdict::Holds => "true".to_string(),
            Verdict::Fails(w) => format!("false: {w:?}"),
        };
        Output { json: to_json(v), text, code: u8::from(!v.holds()) }
    }

    fn flag(ok: bool, mut json: Value) -> Self {
        json["ok"] = json!(ok);
        Output { text: ok.to_string(), json, code: u8::from(!ok) }
    }
}

fn to_json<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn read(arg: &str) -> Result<Value, Error> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Error::Invalid(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    io::parse(&text)
}

fn read_fn(arg: &str, n: Option<usize>) -> Result<SetFn, Error> {
    let f = io::setfn_from(&read(arg)?)?;
    match n {
        Some(n) if n != f.n() => Err(Error::GroundMismatch(n, f.n())),
        _ => Ok(f),
    }
}

fn read_subset(n: usize, arg: &str) -> Result<Mask, Error> {
    io::subset_from(n, &read(arg)?)
}

fn parse_perm(s: &str) -> Result<Permutation, Error> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Invalid(format!("bad permutation entry \"{x}\""))))
        .collect::<Result<_, _>>()?;
    Permutation::new(v)
}

fn run(cli: &Cli) -> Result<Output, Error> {
    Ok(match &cli.cmd {
        Cmd::Check { f, g, mode } => {
            let f = read_fn(f, None)?;
            match mode {
                CheckMode::Submodular => Output::verdict(&setfn::is_submodular(&f)),
                CheckMode::Supermodular => Output::verdict(&setfn::is_supermodular(&f)),
                CheckMode::Plucker => Output::verdict(&setfn::is_tropical_plucker(&f)),
                CheckMode::Dctp => Output::verdict(&setfn::is_dctp(&f)),
                CheckMode::StrongPair => {
                    let g = g.as_deref().ok_or_else(|| Error::Invalid("strong-pair mode needs --fn2".into()))?;
                    Output::verdict(&setfn::is_strong_pair(&f, &read_fn(g, Some(f.n()))?)?)
                }
            }
        }
        Cmd::Rank { n, index, subset } => {
            let idx = SchubertIndex::new(GroundSet::new(*n)?, read_subset(*n, index)?)?;
            let r = idx.rank(read_subset(*n, subset)?);
            Output::value(json!(r), r.to_string())
        }
        Cmd::Extend { n, index, f, point } => {
            let x = io::point_from(&read(point)?)?;
            let v = match (index, f) {
                (Some(index), None) => {
                    let n = n.ok_or_else(|| Error::Invalid("--index needs --n".into()))?;
                    concave_ext_cube(&SchubertIndex::new(GroundSet::new(n)?, read_subset(n, index)?)?, &x)?
                }
                (None, Some(f)) => subdivision::concave_closure(&read_fn(f, *n)?, &x)?,
                _ => return Err(Error::Invalid("give exactly one of --index and --fn".into())),
            };
            Output::value(io::rational_to(&v), dctp_core::scalar::fmt_rational(&v))
        }
        Cmd::Separation { n, family, mode } => {
            let fam = io::family_from(*n, &read(family)?)?;
            let v = match mode {
                SepMode::Weak => family_check(&fam, weakly_separated),
                SepMode::Strong => family_check(&fam, strongly_separated),
                SepMode::Chord => {
                    for &a in &fam {
                        for &b in &fam {
                            chord_separated(a, b)?;
                        }
                    }
                    family_check(&fam, |a, b| chord_separated(a, b).unwrap_or(false))
                }
            };
            Output::verdict(&v)
        }
        Cmd::Minkowski { a, b, difference, n, family } => minkowski(a.as_deref(), b.as_deref(), *difference, *n, family.as_deref())?,
        Cmd::Subdivide { n, f, dd } => {
            let f = read_fn(f, *n)?;
            let s = if *dd { subdivision::regular_subdivision_dd(&f)? } else { subdivision::regular_subdivision(&f)? };
            Output::value(to_json(&s), format!("{} cells", s.len()))
        }
        Cmd::Refine { n, f, g } => {
            let f = read_fn(f, *n)?;
            let g = read_fn(g, Some(f.n()))?;
            let r = subdivision::common_refinement(&subdivision::regular_subdivision(&f)?, &subdivision::regular_subdivision(&g)?)?;
            let gm = subdivision::is_gmatroid_subdivision(&r)?;
            let mut json = to_json(&r);
            json["gmatroid"] = to_json(&gm);
            Output::flag(gm.holds(), json)
        }
        Cmd::Finest { n, f } => Output::verdict(&subdivision::is_finest(&read_fn(f, *n)?)?),
        Cmd::Samecone { n, f, g } => {
            let f = read_fn(f, *n)?;
            let same = subdivision::same_cone(&f, &read_fn(g, Some(f.n()))?)?;
            Output::flag(same, json!({}))
        }
        Cmd::Decompose { f, g } => {
            let f = read_fn(f, None)?;
            let (d, lhs): (SimplexDecomposition, Polytope) = match g {
                None => (polyhedra::simplex_decomposition_base(&f)?, polyhedra::supermodular_base_polytope(&f)?),
                Some(g) => {
                    let g = read_fn(g, Some(f.n()))?;
                    (polyhedra::simplex_decomposition_gpoly(&f, &g)?, polyhedra::gpoly_from_pair(&f, &g)?)
                }
            };
            let ok = d.verify(&lhs)?;
            let mut json = to_json(&d);
            json["polytope"] = to_json(&lhs);
            Output::flag(ok, json)
        }
        Cmd::Necklace { necklace: neck, bases, n } => match (neck, bases) {
            (Some(neck), None) => {
                let neck = io::necklace_from(&read(neck)?)?;
                let b = necklace::necklace_to_positroid(&neck);
                Output::value(json!({ "n": neck.n(), "k": neck.k(), "bases": io::family_to(&b), "connected": neck.is_connected() }), format!("{} bases", b.len()))
            }
            (None, Some(bases)) => {
                let n = n.ok_or_else(|| Error::Invalid("--bases needs --n".into()))?;
                let b = io::family_from(n, &read(bases)?)?;
                let seq = necklace::positroid_to_necklace(n, &b)?;
                let k = dctp_core::subset::card(b[0]);
                let positroid = necklace::is_positroid(n, &b);
                let valid = GrassmannNecklace::new(n, k, seq.clone()).is_ok();
                Output::flag(positroid, json!({ "n": n, "k": k, "sets": io::family_to(&seq), "valid_necklace": valid }))
            }
            _ => return Err(Error::Invalid("give exactly one of --necklace and --bases".into())),
        },
        Cmd::Chamber { omega, omega_prime } => {
            let w = parse_perm(omega)?;
            let wp = omega_prime.as_deref().map(parse_perm).transpose()?;
            let fam = necklace::omega_chamber(&w, wp.as_ref())?;
            let mut json = json!({ "n": w.n(), "sets": io::family_to(&fam) });
            if wp.is_none() {
                // The boundary pattern of D(ω, ω₀), for use with the zonogon tools.
                json["pattern"] = io::family_to(CyclicPattern::omega(&w)?.sets());
            }
            Output::value(json, format!("{} sets", fam.len()))
        }
        Cmd::Crystal { op } => match op {
            CrystalOp::Raise { n, f, i } => {
                let r = crystal::raise(&read_fn(f, *n)?, *i)?;
                Output::value(io::setfn_to(&r), io::setfn_to(&r)["values"].to_string())
            }
            CrystalOp::Lower { n, f, i } => match crystal::lower(&read_fn(f, *n)?, *i)? {
                Some(r) => Output::value(io::setfn_to(&r), io::setfn_to(&r)["values"].to_string()),
                None => Output { json: Value::Null, text: "none".into(), code: 1 },
            },
        },
        Cmd::Verify { n, check } => {
            if !(2..=8).contains(n) {
                return Err(Error::Invalid("--n must lie in 2..=8".into()));
            }
            let cfg = VerifyConfig { n_max: *n, seed: cli.seed };
            let report = match check {
                Some(id) => verify::Report {
                    n_max: *n,
                    seed: cli.seed,
                    checks: vec![verify::run_check(*id, &cfg).ok_or_else(|| Error::Invalid(format!("no check {id}")))?],
                },
                None => verify::run(&cfg),
            };
            let text = report.checks.iter().map(|c| c.line()).collect::<Vec<_>>().join("\n");
            Output { json: to_json(&report), text, code: u8::from(!report.all_pass()) }
        }
    })
}

fn minkowski(a: Option<&str>, b: Option<&str>, difference: bool, n: Option<usize>, family: Option<&str>) -> Result<Output, Error> {
    if let Some(family) = family {
        let n = n.ok_or_else(|| Error::Invalid("--family needs --n".into()))?;
        let fam = io::family_from(n, &read(family)?)?;
        let mut sum = Polytope::from_masks(n, &[0])?;
        for &i in &fam {
            let idx = SchubertIndex::new(GroundSet::new(n)?, i)?;
            sum = sum.minkowski_sum(&Polytope::from_masks(n, &idx.bases())?)?;
        }
        let ws = dctp_core::separation::is_ws_family(&fam).holds();
        let support = polyhedra::support_pair(&sum)?.0;
        let dctp = setfn::is_dctp(&support).holds();
        return Ok(Output::value(json!({ "polytope": to_json(&sum), "weakly_separated": ws, "support_dctp": dctp }), format!("{} vertices", sum.vertices().len())));
    }
    let (a, b) = match (a, b) {
        (Some(a), Some(b)) => (io::polytope_from(&read(a)?)?, io::polytope_from(&read(b)?)?),
        _ => return Err(Error::Invalid("give --a and --b, or --n and --family".into())),
    };
    if a.n() != b.n() {
        return Err(Error::GroundMismatch(a.n(), b.n()));
    }
    let p = if difference { a.minkowski_difference(&b)? } else { a.minkowski_sum(&b)? };
    Ok(Output::value(to_json(&p), format!("{} vertices", p.vertices().len())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("valid JSON"),
                Format::Text => out.text,
            };
            // A closed pipe (`| head`) is not an error.
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            match cli.format {
                Format::Json => println!("{}", json!({ "error": e.to_string() })),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(2)
        }
    }
}
