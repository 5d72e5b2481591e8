//! Single entry point wiring the library: generate example complexes, ingest
//! facet/coloring/ears files, compute invariants, run the certificate and
//! dominance searches, and emit machine-readable reports.
//!
//! Exit codes: 0 verified success, 1 verified failure, 2 input error,
//! 3 guard refusal.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::RngCore;
use serde::Serialize;
use serde_json::{json, Value};

use gear_core::building::{self, Building, DEFAULT_CHAMBER_GUARD};
use gear_core::ears;
use gear_core::error::Error;
use gear_core::face_ring;
use gear_core::flags;
use gear_core::generators;
use gear_core::homology;
use gear_core::io;
use gear_core::linalg::FieldSpec;
use gear_core::macaulay;
use gear_core::weak_order;

#[derive(Parser)]
#[command(
    name = "gear",
    version,
    about = "exact combinatorics of simplicial complexes: h-vectors, face rings, buildings, ear decompositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Coefficient field: `q` or `gf:<p>`
    #[arg(long, default_value = "q")]
    field: String,
    /// Seed for randomized searches; drawn and printed when omitted
    #[arg(long)]
    seed: Option<u64>,
    /// Write the full JSON report here (`-` for stdout)
    #[arg(long)]
    json: Option<String>,
    /// Size guard for enumerative sweeps
    #[arg(long)]
    guard: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named example complex into a facet file
    Gen {
        /// simplex-boundary | cross-polytope | ps-sphere | uniform-matroid | barycentric
        name: String,
        /// Numeric parameters, e.g. `3` or `2 4` or `3,3`
        params: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
        /// Where to write the coloring, for balanced generators
        #[arg(long)]
        coloring_out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// f/h-vectors, Betti numbers, CM status, CM-connectivity
    Invariants {
        complex: PathBuf,
        /// Coloring file; adds flag f/h-vectors to the report
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Reisner test, with optional q-CM sweep
    CheckCm {
        complex: PathBuf,
        /// Also check q-CM for this q
        #[arg(long)]
        qcm: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized g-element certificate search
    FindG {
        complex: PathBuf,
        #[arg(long, default_value_t = 5)]
        attempts: usize,
        /// Re-verify a GF(p) certificate over Q
        #[arg(long, default_value_t = false)]
        lift: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Macaulay M-vector test on a comma-separated vector
    Mcheck {
        vector: String,
        #[command(flatten)]
        common: Common,
    },
    /// Weak-order dominance between descent classes of S_n
    Dominance {
        #[arg(long)]
        n: usize,
        /// List every dominating pair
        #[arg(long, default_value_t = false)]
        all: bool,
        /// Two descent sets as comma lists (`-` for the empty set)
        #[arg(long, num_args = 2)]
        pair: Option<Vec<String>>,
        /// Problem kind 1–4
        #[arg(long)]
        problem: Option<u8>,
        #[arg(long, default_value_t = 0)]
        i: usize,
        /// Use the dihedral group I_2(m) instead of S_n
        #[arg(long)]
        dihedral: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Build a type-A building over GF(q); flag vectors and ear decompositions
    Building {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u16,
        /// Compute the flag h-vector by enumeration and by the descent
        /// formula, and compare
        #[arg(long, default_value_t = false)]
        flagh: bool,
        /// Construct and verify the opposite-chamber ear decomposition
        #[arg(long, default_value_t = false)]
        ears: bool,
        /// Base chamber index for the decomposition
        #[arg(long, default_value_t = 0)]
        base: usize,
        /// Ordering of opposite chambers: `lex` or `random:<seed>`
        #[arg(long, default_value = "lex")]
        order: String,
        /// Export the complex as a facet file
        #[arg(long)]
        export: Option<PathBuf>,
        /// Export the type coloring
        #[arg(long)]
        coloring_out: Option<PathBuf>,
        /// Export the computed ear decomposition as an ears file
        #[arg(long)]
        ears_out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Verify a convex ear decomposition from files
    VerifyEars {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        ears: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Serialize)]
struct InputRecord {
    path: String,
    hash: String,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Vec<InputRecord>,
    seed: Option<u64>,
    field: Option<String>,
    results: Value,
    timings_ms: BTreeMap<String, u128>,
}

fn fnv64(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

fn record_input(path: &PathBuf) -> gear_core::Result<InputRecord> {
    let bytes = std::fs::read(path)?;
    Ok(InputRecord {
        path: path.display().to_string(),
        hash: fnv64(&bytes),
    })
}

struct Outcome {
    results: Value,
    verified_ok: bool,
    inputs: Vec<InputRecord>,
    human: Vec<String>,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let started = Instant::now();
    let common = common_of(&cli.command).clone();
    let field = match FieldSpec::parse(&common.field) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let seed = common.seed.unwrap_or_else(|| rand::thread_rng().next_u64());

    let outcome = dispatch(&cli.command, field, seed);
    let elapsed = started.elapsed().as_millis();
    match outcome {
        Ok(out) => {
            for line in &out.human {
                println!("{line}");
            }
            if common.seed.is_none() {
                println!("seed: {seed}");
            }
            let mut timings = BTreeMap::new();
            timings.insert("total".to_string(), elapsed);
            let report = RunReport {
                command: command_name(&cli.command).to_string(),
                inputs: out.inputs,
                seed: Some(seed),
                field: Some(field.to_string()),
                results: out.results,
                timings_ms: timings,
            };
            match common.json.as_deref() {
                Some("-") => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                ),
                Some(path) => {
                    if let Err(e) = std::fs::write(
                        path,
                        serde_json::to_string_pretty(&report).expect("serializable"),
                    ) {
                        eprintln!("error writing report: {e}");
                        return 2;
                    }
                }
                None => {}
            }
            if out.verified_ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::GuardExceeded { .. } => 3,
                _ => 2,
            }
        }
    }
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::Gen { common, .. }
        | Command::Invariants { common, .. }
        | Command::CheckCm { common, .. }
        | Command::FindG { common, .. }
        | Command::Mcheck { common, .. }
        | Command::Dominance { common, .. }
        | Command::Building { common, .. }
        | Command::VerifyEars { common, .. } => common,
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Gen { .. } => "gen",
        Command::Invariants { .. } => "invariants",
        Command::CheckCm { .. } => "check-cm",
        Command::FindG { .. } => "find-g",
        Command::Mcheck { .. } => "mcheck",
        Command::Dominance { .. } => "dominance",
        Command::Building { .. } => "building",
        Command::VerifyEars { .. } => "verify-ears",
    }
}

fn parse_descent_set(s: &str) -> gear_core::Result<Vec<u8>> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u8>()
                .map_err(|_| Error::InvalidInput(format!("bad descent position `{t}`")))
        })
        .collect()
}

fn flag_entries_json(fv: &flags::FlagVector) -> Value {
    serde_json::to_value(fv.entries()).expect("serializable")
}

fn dispatch(cmd: &Command, field: FieldSpec, seed: u64) -> gear_core::Result<Outcome> {
    match cmd {
        Command::Gen {
            name,
            params,
            output,
            coloring_out,
            ..
        } => {
            let nums: Vec<usize> = params
                .iter()
                .flat_map(|p| p.split(','))
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad parameter `{t}`")))
                })
                .collect::<gear_core::Result<_>>()?;
            let (complex, coloring) = match name.as_str() {
                "simplex-boundary" => {
                    let d = *nums.first().ok_or(Error::InvalidInput("need d".into()))?;
                    (generators::simplex_boundary(d), None)
                }
                "cross-polytope" => {
                    let d = *nums.first().ok_or(Error::InvalidInput("need d".into()))?;
                    (generators::cross_polytope_boundary(d), None)
                }
                "ps-sphere" => (generators::ps_sphere(&nums)?, None),
                "uniform-matroid" => {
                    let [k, n] = nums[..] else {
                        return Err(Error::InvalidInput("need k and n".into()));
                    };
                    (generators::uniform_matroid_complex(k, n)?, None)
                }
                "barycentric" => {
                    let d = *nums.first().ok_or(Error::InvalidInput("need d".into()))?;
                    let (c, coloring, _) = generators::barycentric_sd_simplex_boundary(d)?;
                    (c, Some(coloring))
                }
                other => return Err(Error::InvalidInput(format!("unknown generator `{other}`"))),
            };
            io::write_facet_file(output, &complex)?;
            if let (Some(path), Some(coloring)) = (coloring_out, &coloring) {
                io::write_coloring_file(path, coloring)?;
            }
            let f = complex.f_vector()?;
            let results = json!({
                "generator": name,
                "params": nums,
                "f": f.0,
                "h": complex.h_vector()?.0,
                "dim": complex.dim(),
                "output": output.display().to_string(),
            });
            Ok(Outcome {
                human: vec![format!(
                    "wrote {} ({} facets, dim {})",
                    output.display(),
                    complex.facets().len(),
                    complex.dim().unwrap()
                )],
                results,
                verified_ok: true,
                inputs: Vec::new(),
            })
        }

        Command::Invariants {
            complex,
            coloring,
            common,
        } => {
            let mut inputs = vec![record_input(complex)?];
            let c = io::read_facet_file(complex)?;
            let f = c.f_vector()?;
            let h = c.h_vector()?;
            let betti = homology::betti_cross_check(&c, gear_core::linalg::DEFAULT_PRIME)?;
            let cm = homology::is_cm(&c, field)?;
            let guard = common.guard.unwrap_or(20);
            let connectivity = if c.vertex_count() <= guard {
                Some(homology::cm_connectivity(&c, field, guard)?)
            } else {
                None
            };
            let mut human = vec![
                format!("f = {:?}", f.0),
                format!("h = {:?}", h.0),
                format!("dim = {}, pure = {}", c.dim().unwrap(), c.is_pure()),
                format!(
                    "betti (over Q) = {:?}, cm = {}",
                    betti.over_q.betti, cm.is_cm
                ),
                match &connectivity {
                    Some(conn) => format!("cm_connectivity = {}", conn.value),
                    None => format!("cm_connectivity skipped (more than {guard} vertices)"),
                },
            ];
            let mut results = serde_json::Map::new();
            results.insert("f".into(), json!(f.0));
            results.insert("h".into(), json!(h.0));
            results.insert("dim".into(), json!(c.dim()));
            results.insert("pure".into(), json!(c.is_pure()));
            results.insert("betti".into(), serde_json::to_value(&betti).expect("serializable"));
            results.insert("cm".into(), serde_json::to_value(&cm).expect("serializable"));
            results.insert(
                "cm_connectivity".into(),
                json!(connectivity.as_ref().map(|c| c.value)),
            );
            results.insert(
                "cm_connectivity_witness".into(),
                serde_json::to_value(connectivity.as_ref().map(|c| &c.witness))
                    .expect("serializable"),
            );
            if let Some(path) = coloring {
                inputs.push(record_input(path)?);
                let col = io::read_coloring_file(path)?;
                let flag_f = flags::flag_f(&c, &col)?;
                let flag_h = flags::flag_h(&c, &col)?;
                human.push(format!(
                    "balanced: flag vectors over {} colors",
                    col.num_colors()
                ));
                results.insert("flag_f".into(), flag_entries_json(&flag_f));
                results.insert("flag_h".into(), flag_entries_json(&flag_h));
            }
            Ok(Outcome {
                results: Value::Object(results),
                verified_ok: true,
                inputs,
                human,
            })
        }

        Command::CheckCm { complex, qcm, common } => {
            let input = record_input(complex)?;
            let c = io::read_facet_file(complex)?;
            let cm = homology::is_cm(&c, field)?;
            let guard = common.guard.unwrap_or(20);
            let qcm_report = match qcm {
                Some(q) => Some(homology::is_qcm(&c, *q, field, guard)?),
                None => None,
            };
            let ok = cm.is_cm && qcm_report.as_ref().is_none_or(|r| r.holds);
            let mut human = vec![format!("cm = {}", cm.is_cm)];
            if let Some(w) = &cm.witness {
                human.push(format!("witness: face {:?}, degree {}", w.0, w.1));
            }
            if let Some(r) = &qcm_report {
                human.push(format!("{}-cm = {}", r.q, r.holds));
            }
            let results = json!({ "cm": cm, "qcm": qcm_report });
            Ok(Outcome {
                results,
                verified_ok: ok,
                inputs: vec![input],
                human,
            })
        }

        Command::FindG {
            complex,
            attempts,
            lift,
            ..
        } => {
            let input = record_input(complex)?;
            let c = io::read_facet_file(complex)?;
            let search = face_ring::find_g_element(&c, field, *attempts, seed)?;
            let mut human = Vec::new();
            if search.warned_not_cm {
                human.push("warning: complex is not Cohen-Macaulay".to_string());
            }
            let mut ok = search.certificate.is_some();
            let mut lifted_json = Value::Null;
            match &search.certificate {
                Some(cert) => {
                    human.push(format!(
                        "certificate found (seed {}): ranks {:?}",
                        cert.seed, cert.ranks
                    ));
                    if *lift && matches!(field, FieldSpec::Gf(_)) {
                        let lifted = cert.lift_to_q(&c)?;
                        human.push(format!("lift to Q verified: {}", lifted.verified));
                        ok = ok && lifted.verified;
                        lifted_json = serde_json::to_value(&lifted).expect("serializable");
                    }
                }
                None => human.push(format!("no certificate in {attempts} attempts")),
            }
            let results = json!({
                "search": search,
                "lifted": lifted_json,
            });
            Ok(Outcome {
                results,
                verified_ok: ok,
                inputs: vec![input],
                human,
            })
        }

        Command::Mcheck { vector, .. } => {
            let entries: Vec<i64> = vector
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidInput(format!("bad entry `{t}`")))
                })
                .collect::<gear_core::Result<_>>()?;
            let report = macaulay::is_m_vector(&entries);
            let human = vec![match report.fail_index {
                None => format!("{entries:?} is an M-vector"),
                Some(idx) => format!("{entries:?} fails at index {idx}"),
            }];
            let ok = report.pass;
            Ok(Outcome {
                results: serde_json::to_value(&report).expect("serializable"),
                verified_ok: ok,
                inputs: Vec::new(),
                human,
            })
        }

        Command::Dominance {
            n,
            all,
            pair,
            problem,
            i,
            dihedral,
            common,
        } => {
            let guard = common.guard.unwrap_or(weak_order::DEFAULT_RANK_GUARD);
            if let Some(m) = dihedral {
                let group = weak_order::Dihedral::new(*m)?;
                let mut pairs = Vec::new();
                for a in 0u32..4 {
                    for b in 0u32..4 {
                        let r = group.dominates(a, b);
                        if r.dominates {
                            pairs.push(json!({
                                "a": weak_order::mask_to_positions(a),
                                "b": weak_order::mask_to_positions(b),
                                "class_sizes": [r.class_a_size, r.class_b_size],
                            }));
                        }
                    }
                }
                let human = vec![format!(
                    "dihedral I_2({m}): {} dominating pairs",
                    pairs.len()
                )];
                return Ok(Outcome {
                    results: json!({ "dihedral": m, "dominating_pairs": pairs }),
                    verified_ok: true,
                    inputs: Vec::new(),
                    human,
                });
            }
            if let Some(p) = pair {
                let a = parse_descent_set(&p[0])?;
                let b = parse_descent_set(&p[1])?;
                let r = weak_order::dominates(&a, &b, *n, guard)?;
                let human = vec![format!(
                    "{:?} dominates {:?}: {} (|D(A)| = {}, |D(B)| = {})",
                    a, b, r.dominates, r.class_a_size, r.class_b_size
                )];
                let injection: Option<Vec<(Vec<u8>, Vec<u8>)>> = r.injection.map(|inj| {
                    inj.iter()
                        .map(|(x, y)| (x.one_line().to_vec(), y.one_line().to_vec()))
                        .collect()
                });
                let ok = r.dominates;
                return Ok(Outcome {
                    results: json!({
                        "a": a, "b": b,
                        "dominates": ok,
                        "class_a_size": r.class_a_size,
                        "class_b_size": r.class_b_size,
                        "injection": injection,
                    }),
                    verified_ok: ok,
                    inputs: Vec::new(),
                    human,
                });
            }
            if let Some(kind) = problem {
                let report = weak_order::solve_problem(*kind, *n, *i, guard)?;
                let ok = match &report {
                    weak_order::ProblemReport::DominatingPairs { .. } => true,
                    weak_order::ProblemReport::SubsetInjection { exists, .. }
                    | weak_order::ProblemReport::ElementInjection { exists, .. }
                    | weak_order::ProblemReport::ElementBijection { exists, .. } => *exists,
                };
                let human = vec![format!("problem {kind} (n = {n}, i = {i}): {ok}")];
                return Ok(Outcome {
                    results: serde_json::to_value(&report).expect("serializable"),
                    verified_ok: ok,
                    inputs: Vec::new(),
                    human,
                });
            }
            if *all {
                let report = weak_order::solve_problem(1, *n, 0, guard)?;
                let weak_order::ProblemReport::DominatingPairs { pairs } = &report else {
                    unreachable!()
                };
                let human = vec![format!("S_{n}: {} dominating pairs", pairs.len())];
                return Ok(Outcome {
                    results: serde_json::to_value(&report).expect("serializable"),
                    verified_ok: true,
                    inputs: Vec::new(),
                    human,
                });
            }
            Err(Error::InvalidInput(
                "dominance needs --all, --pair, or --problem".into(),
            ))
        }

        Command::Building {
            n,
            q,
            flagh,
            ears: do_ears,
            base,
            order,
            export,
            coloring_out,
            ears_out,
            common,
        } => {
            let guard = common.guard.unwrap_or(DEFAULT_CHAMBER_GUARD);
            let b = Building::build(*n, *q, guard)?;
            let mut ok = true;
            let mut human = vec![format!(
                "A_{}(q = {}): {} vertices, {} chambers, dim {}",
                n - 1,
                q,
                b.complex.vertex_count(),
                b.chamber_count(),
                b.complex.dim().unwrap()
            )];
            let mut results = serde_json::Map::new();
            results.insert("n".into(), json!(n));
            results.insert("q".into(), json!(q));
            results.insert("chambers".into(), json!(b.chamber_count()));
            results.insert("f".into(), json!(b.complex.f_vector()?.0));
            results.insert("h".into(), json!(b.complex.h_vector()?.0));
            results.insert(
                "color_legend".into(),
                json!((1..*n)
                    .map(|k| format!("color {} = subspace dimension {k}", k - 1))
                    .collect::<Vec<_>>()),
            );

            if *flagh {
                let direct = b.flag_h_direct()?;
                let formula = building::flag_h_formula(*n, *q as u64)?;
                let agree = direct == formula;
                ok = ok && agree;
                let total: i64 = direct.iter().map(|(_, v)| v).sum();
                human.push(format!(
                    "flag h by enumeration and by descent formula agree: {agree}; total {total}"
                ));
                results.insert("flag_h_direct".into(), flag_entries_json(&direct));
                results.insert("flag_h_formula".into(), flag_entries_json(&formula));
                results.insert("flag_h_agree".into(), json!(agree));
            }

            if *do_ears {
                let opposites = b.opposite_chambers(*base);
                let ordered = order_opposites(&opposites, order)?;
                let dec = b.ear_decomposition(*base, &ordered)?;
                let comph = ears::comph_check(&b.complex, &dec.ears, FieldSpec::Q)?;
                ok = ok && dec.report.pass && comph.holds;
                human.push(format!(
                    "ear decomposition from base {}: {}; comph identity {}",
                    base,
                    dec.report.summary(),
                    if comph.holds { "holds" } else { "fails" }
                ));
                if let Some(path) = ears_out {
                    io::write_ears_file(path, &dec.ears)?;
                    human.push(format!("wrote {}", path.display()));
                }
                results.insert("ears_m".into(), json!(dec.ears.len()));
                results.insert(
                    "ears_facets".into(),
                    json!(dec
                        .ears
                        .iter()
                        .map(|e| e.facets().len())
                        .collect::<Vec<_>>()),
                );
                results.insert(
                    "ear_report".into(),
                    serde_json::to_value(&dec.report).expect("serializable"),
                );
                results.insert(
                    "comph".into(),
                    serde_json::to_value(&comph).expect("serializable"),
                );
            }

            if let Some(path) = export {
                io::write_facet_file(path, &b.complex)?;
                human.push(format!("wrote {}", path.display()));
            }
            if let Some(path) = coloring_out {
                io::write_coloring_file(path, &b.coloring)?;
                human.push(format!("wrote {}", path.display()));
            }
            Ok(Outcome {
                results: Value::Object(results),
                verified_ok: ok,
                inputs: Vec::new(),
                human,
            })
        }

        Command::VerifyEars {
            complex,
            ears: ears_path,
            ..
        } => {
            let inputs = vec![record_input(complex)?, record_input(ears_path)?];
            let ambient = io::read_facet_file(complex)?;
            let pieces = io::read_ears_file(ears_path)?;
            let report = ears::verify(&ambient, &pieces, field)?;
            let mut human = vec![format!("verify: {}", report.summary())];
            let mut results = serde_json::Map::new();
            results.insert(
                "verify".into(),
                serde_json::to_value(&report).expect("serializable"),
            );
            let mut ok = report.pass;
            if report.pass {
                let comph = ears::comph_check(&ambient, &pieces, field)?;
                human.push(format!(
                    "comph identity: {}; boundary g identity: {}",
                    comph.holds, comph.boundary_g_holds
                ));
                ok = ok && comph.holds && comph.boundary_g_holds;
                results.insert(
                    "comph".into(),
                    serde_json::to_value(&comph).expect("serializable"),
                );
            }
            Ok(Outcome {
                results: Value::Object(results),
                verified_ok: ok,
                inputs,
                human,
            })
        }
    }
}

fn order_opposites(opposites: &[usize], choice: &str) -> gear_core::Result<Vec<usize>> {
    if choice == "lex" {
        return Ok(opposites.to_vec());
    }
    if let Some(seed) = choice.strip_prefix("random:") {
        let seed: u64 = seed
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad order `{choice}`")))?;
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut shuffled = opposites.to_vec();
        shuffled.shuffle(&mut rng);
        return Ok(shuffled);
    }
    Err(Error::InvalidInput(format!(
        "order must be `lex` or `random:<seed>`, got `{choice}`"
    )))
}
