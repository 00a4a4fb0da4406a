//! Command-line surface: build planes, generate constructions, verify
//! certificates, run exact searches, emit Redei profiles.
//!
//! Exit codes: 0 verified / optimum found, 1 verification failed,
//! 2 usage or precondition error, 3 budget exceeded. All structured output
//! goes to stdout as canonical JSON; diagnostics go to stderr.

use clap::{Args, Parser, Subcommand};
use pg2q::cert::{provenance, set_payload, CertKind, Certificate};
use pg2q::construct::{self, SStarParams};
use pg2q::galois::Field;
use pg2q::plane::Plane;
use pg2q::redei;
use pg2q::resolve;
use pg2q::search::{self, Engine, RunStatus, SearchKind, SearchOptions};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pg2q",
    version,
    about = "Finite projective planes: resolving sets, blocking sets, exact searches"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Plane facts for a given order
    Plane {
        #[command(subcommand)]
        cmd: PlaneCmd,
    },
    /// Generate a construction and emit its certificate
    Construct {
        #[command(subcommand)]
        cmd: ConstructCmd,
    },
    /// Re-verify a certificate
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Exact minimum searches
    Search {
        #[command(subcommand)]
        cmd: SearchCmd,
    },
    /// Redei polynomial machinery
    Redei {
        #[command(subcommand)]
        cmd: RedeiCmd,
    },
}

#[derive(Subcommand)]
enum PlaneCmd {
    /// Field and incidence counts
    Info {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Args, Default)]
struct EmitFlags {
    /// Re-check through the verifier and embed the report
    #[arg(long)]
    verify: bool,
    /// Also write the certificate to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Two-line mixed set of size 4q-4
    Canonical {
        #[arg(long)]
        q: u64,
        /// three point indices "a,b,c" in general position
        #[arg(long)]
        triple: Option<String>,
        #[command(flatten)]
        emit: EmitFlags,
    },
    /// The size-five resolving set of the plane of order 2
    Fano5 {
        #[command(flatten)]
        emit: EmitFlags,
    },
    /// The size-ten resolving set of the plane of order 4
    Hyperoval10 {
        #[command(flatten)]
        emit: EmitFlags,
    },
    /// One of the 32 completions of the 4q-6 frame
    C {
        #[arg(long)]
        id: u8,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long)]
        f: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        r_prime: Option<u32>,
        #[arg(long)]
        q_point: Option<u32>,
        #[arg(long)]
        l0: Option<u32>,
        #[arg(long)]
        l1: Option<u32>,
        #[arg(long)]
        u: Option<u32>,
        #[arg(long)]
        v: Option<u32>,
        #[arg(long)]
        z: Option<u32>,
        #[command(flatten)]
        emit: EmitFlags,
    },
    /// Union of two disjoint Baer subplanes, a double blocking set
    BaerPair {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        emit: EmitFlags,
    },
    /// Three lines in general position without their vertices
    VertexlessTriangle {
        #[arg(long)]
        q: u64,
        /// drop one more point (needs q >= 4)
        #[arg(long)]
        drop_extra: bool,
        #[command(flatten)]
        emit: EmitFlags,
    },
    /// All points of three lines in general position
    ThreeLines {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        emit: EmitFlags,
    },
    /// Semi-resolving set from a double blocking set
    #[command(name = "semi-from-2bl")]
    SemiFrom2bl {
        #[arg(long)]
        q: Option<u64>,
        /// double-blocking certificate to start from
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// point to drop (first part in pair mode)
        #[arg(long)]
        drop: Option<u32>,
        /// point to drop from the second part (pair mode)
        #[arg(long)]
        drop2: Option<u32>,
        #[command(flatten)]
        emit: EmitFlags,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Resolving {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Semi {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Split {
        #[arg(long = "in")]
        input: PathBuf,
    },
    #[command(name = "2bl")]
    TwoBl {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Semioval {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct SearchFlags {
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    budget_seconds: Option<u64>,
    /// on|off: restrict the first two chosen elements to canonical pairs
    #[arg(long, default_value = "off")]
    symmetry: String,
    /// on|off: sound prefix cutoffs
    #[arg(long, default_value = "off")]
    prune: String,
    /// exhaustive|bb
    #[arg(long, default_value = "exhaustive")]
    engine: String,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

impl SearchFlags {
    fn to_options(&self) -> Result<SearchOptions, String> {
        let parse_on_off = |name: &str, v: &str| match v {
            "on" => Ok(true),
            "off" => Ok(false),
            other => Err(format!("--{name} must be on or off, got {other}")),
        };
        let engine = match self.engine.as_str() {
            "exhaustive" => Engine::Exhaustive,
            "bb" | "branch-and-bound" => Engine::BranchAndBound,
            other => return Err(format!("--engine must be exhaustive or bb, got {other}")),
        };
        Ok(SearchOptions {
            budget_nodes: self.budget_nodes,
            budget_seconds: self.budget_seconds,
            symmetry: parse_on_off("symmetry", &self.symmetry)?,
            prune: parse_on_off("prune", &self.prune)?,
            engine: Some(engine),
            checkpoint: self.checkpoint.clone(),
        })
    }
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Metric dimension
    Mu {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Minimum semi-resolving set
    Mus {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Minimum double blocking set
    Tau2 {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Certify that no feasible set of size k exists
    NoSmaller {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: u32,
        /// resolving|semi|2bl
        #[arg(long, default_value = "resolving")]
        kind: String,
        #[command(flatten)]
        flags: SearchFlags,
    },
}

#[derive(Subcommand)]
enum RedeiCmd {
    /// Gcd-degree profile of a point set (default: the standard
    /// semi-resolving set of the order)
    Profile {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// pin the line at infinity
        #[arg(long)]
        linf: Option<u32>,
        /// pin the vertical direction (a set-free point of that line)
        #[arg(long)]
        infinity: Option<u32>,
    },
    /// Randomized gcd-degree inequality trials
    SzwRandom {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = 0x5eed_ba5e)]
        seed: u64,
    },
}

fn field_for(q: u64) -> Result<Field, String> {
    Field::from_order(q).map_err(|e| format!("q = {q}: {e}"))
}

fn emit(cert: &Certificate, out: &Option<PathBuf>) -> Result<(), String> {
    let text = cert.to_canonical_json();
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, &text).map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    Ok(())
}

fn parse_triple(s: &str) -> Result<(u32, u32, u32), String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| format!("bad index in --triple: {t}"))
        })
        .collect::<Result<_, _>>()?;
    if parts.len() != 3 {
        return Err("--triple needs exactly three indices".into());
    }
    Ok((parts[0], parts[1], parts[2]))
}

fn run_construct(cmd: ConstructCmd) -> Result<ExitCode, String> {
    match cmd {
        ConstructCmd::Canonical {
            q,
            triple,
            emit: ef,
        } => {
            let plane = Plane::new(field_for(q)?);
            let (a, b, c) = match triple {
                Some(t) => parse_triple(&t)?,
                None => construct::default_triangle(&plane),
            };
            let set = construct::canonical_4q4(&plane, a, b, c).map_err(|e| e.to_string())?;
            let mut payload = set_payload(&set.points, Some(&set.lines), true);
            if ef.verify {
                let report = resolve::is_resolving(&plane, &set);
                payload["verification"] = serde_json::to_value(&report).unwrap();
            }
            let cert = Certificate::new(
                CertKind::Resolving,
                plane.field(),
                payload,
                provenance(
                    "canonical",
                    &[("p", a as u64), ("q_point", b as u64), ("r", c as u64)],
                ),
            );
            emit(&cert, &ef.out)?;
            Ok(ExitCode::SUCCESS)
        }
        ConstructCmd::Fano5 { emit: ef } => {
            let plane = Plane::new(field_for(2)?);
            let set = construct::fano_resolving5(&plane).map_err(|e| e.to_string())?;
            let mut payload = set_payload(&set.points, Some(&set.lines), true);
            if ef.verify {
                payload["verification"] =
                    serde_json::to_value(&resolve::is_resolving(&plane, &set)).unwrap();
            }
            let cert = Certificate::new(
                CertKind::Resolving,
                plane.field(),
                payload,
                provenance("fano5", &[]),
            );
            emit(&cert, &ef.out)?;
            Ok(ExitCode::SUCCESS)
        }
        ConstructCmd::Hyperoval10 { emit: ef } => {
            let plane = Plane::new(field_for(4)?);
            let set = construct::hyperoval_resolving10(&plane).map_err(|e| e.to_string())?;
            let mut payload = set_payload(&set.points, Some(&set.lines), true);
            if ef.verify {
                payload["verification"] =
                    serde_json::to_value(&resolve::is_resolving(&plane, &set)).unwrap();
            }
            let cert = Certificate::new(
                CertKind::Resolving,
                plane.field(),
                payload,
                provenance("hyperoval10", &[]),
            );
            emit(&cert, &ef.out)?;
            Ok(ExitCode::SUCCESS)
        }
        ConstructCmd::C {
            id,
            q,
            e,
            f,
            r,
            r_prime,
            q_point,
            l0,
            l1,
            u,
            v,
            z,
            emit: ef,
        } => {
            let plane = Plane::new(field_for(q)?);
            let params = SStarParams {
                e,
                f,
                r,
                r_prime,
                q_point,
                l0,
                l1,
                u,
                v,
                z,
            };
            let comp = construct::construction_c(&plane, id, &params).map_err(|e| e.to_string())?;
            let mut payload = set_payload(&comp.set.points, Some(&comp.set.lines), true);
            payload["added_points"] = serde_json::to_value(&comp.added_points).unwrap();
            payload["added_lines"] = serde_json::to_value(&comp.added_lines).unwrap();
            if ef.verify {
                payload["verification"] =
                    serde_json::to_value(&resolve::is_resolving(&plane, &comp.set)).unwrap();
            }
            let mut prov_params: Vec<(&str, u64)> =
                comp.params.iter().map(|&(k, v)| (k, v as u64)).collect();
            prov_params.push(("id", id as u64));
            let cert = Certificate::new(
                CertKind::Resolving,
                plane.field(),
                payload,
                provenance("c", &prov_params),
            );
            emit(&cert, &ef.out)?;
            Ok(ExitCode::SUCCESS)
        }
        ConstructCmd::BaerPair { q, emit: ef } => {
            let plane = Plane::new(field_for(q)?);
            let (b1, b2) = construct::disjoint_baer_pair(&plane).map_err(|e| e.to_string())?;
            let mut union: Vec<u32> = b1.iter().chain(b2.iter()).copied().collect();
            union.sort_unstable();
            let mut payload = set_payload(&union, None, true);
            payload["parts"] = json!([b1, b2]);
            if ef.verify {
                payload["profile"] =
                    serde_json::to_value(&resolve::secant_profile(&plane, &union)).unwrap();
            }
            let cert = Certificate::new(
                CertKind::DoubleBlocking,
                plane.field(),
                payload,
                provenance("baer-pair", &[]),
            );
            emit(&cert, &ef.out)?;
            Ok(ExitCode::SUCCESS)
        }
        ConstructCmd::VertexlessTriangle {
            q,
            drop_extra,
            emit: ef,
        } => {
            let plane = Plane::new(field_for(q)?);
            let pts =
                construct::vertexless_triangle(&plane, drop_extra).map_err(|e| e.to_string())?;
            let mut payload = set_payload(&pts, None, true);
            if ef.verify {
                payload["verification"] =
                    serde_json::to_value(&resolve::is_semi_resolving(&plane, &pts)).unwrap();
            }
            let cert = Certificate::new(
                CertKind::SemiResolving,
                plane.field(),
                payload,
                provenance("vertexless-triangle", &[("drop_extra", drop_extra as u64)]),
            );
            emit(&cert, &ef.out)?;
            Ok(ExitCode::SUCCESS)
        }
        ConstructCmd::ThreeLines { q, emit: ef } => {
            let plane = Plane::new(field_for(q)?);
            let pts = construct::three_line_double_blocking(&plane).map_err(|e| e.to_string())?;
            let mut payload = set_payload(&pts, None, true);
            if ef.verify {
                payload["profile"] =
                    serde_json::to_value(&resolve::secant_profile(&plane, &pts)).unwrap();
            }
            let cert = Certificate::new(
                CertKind::DoubleBlocking,
                plane.field(),
                payload,
                provenance("three-lines", &[]),
            );
            emit(&cert, &ef.out)?;
            Ok(ExitCode::SUCCESS)
        }
        ConstructCmd::SemiFrom2bl {
            q,
            input,
            drop,
            drop2,
            emit: ef,
        } => {
            let (plane, pts) = match input {
                Some(path) => {
                    let cert = Certificate::load(&path).map_err(|e| e.to_string())?;
                    cert.expect_kind(&[CertKind::DoubleBlocking])
                        .map_err(|e| e.to_string())?;
                    let plane = cert.field.build_plane().map_err(|e| e.to_string())?;
                    let pts = match cert.parts().map_err(|e| e.to_string())? {
                        Some((b1, b2)) => {
                            construct::semi_from_blocking_pair(&plane, &b1, &b2, drop, drop2)
                                .map_err(|e| e.to_string())?
                        }
                        None => {
                            let b = cert.points().map_err(|e| e.to_string())?;
                            construct::semi_from_2bl_drop_one(&plane, &b, drop)
                                .map_err(|e| e.to_string())?
                        }
                    };
                    (plane, pts)
                }
                None => {
                    let q = q.ok_or("semi-from-2bl needs --q or --in")?;
                    let plane = Plane::new(field_for(q)?);
                    let pts = if plane.field().h() % 2 == 0 {
                        construct::semi_from_baer_pair(&plane).map_err(|e| e.to_string())?
                    } else {
                        let b = construct::three_line_double_blocking(&plane)
                            .map_err(|e| e.to_string())?;
                        construct::semi_from_2bl_drop_one(&plane, &b, drop)
                            .map_err(|e| e.to_string())?
                    };
                    (plane, pts)
                }
            };
            let mut payload = set_payload(&pts, None, true);
            if ef.verify {
                payload["verification"] =
                    serde_json::to_value(&resolve::is_semi_resolving(&plane, &pts)).unwrap();
            }
            let cert = Certificate::new(
                CertKind::SemiResolving,
                plane.field(),
                payload,
                provenance("semi-from-2bl", &[]),
            );
            emit(&cert, &ef.out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_verify(cmd: VerifyCmd) -> Result<ExitCode, String> {
    let (path, expected): (&PathBuf, &[CertKind]) = match &cmd {
        VerifyCmd::Resolving { input } => (input, &[CertKind::Resolving]),
        VerifyCmd::Semi { input } => (input, &[CertKind::SemiResolving]),
        VerifyCmd::Split { input } => (input, &[CertKind::Split, CertKind::Resolving]),
        VerifyCmd::TwoBl { input } => (input, &[CertKind::DoubleBlocking]),
        VerifyCmd::Semioval { input } => (input, &[CertKind::Semioval, CertKind::SemiResolving]),
    };
    let cert = Certificate::load(path).map_err(|e| e.to_string())?;
    cert.expect_kind(expected).map_err(|e| e.to_string())?;
    let plane = cert.field.build_plane().map_err(|e| e.to_string())?;
    let points = cert.points().map_err(|e| e.to_string())?;
    let lines = cert.lines().map_err(|e| e.to_string())?;
    let (ok, report): (bool, Value) = match cmd {
        VerifyCmd::Resolving { .. } => {
            let set = resolve::MixedSet::new(points.clone(), lines.clone());
            let r = resolve::is_resolving(&plane, &set);
            (r.ok, serde_json::to_value(&r).unwrap())
        }
        VerifyCmd::Semi { .. } => {
            let r = resolve::is_semi_resolving(&plane, &points);
            (r.ok, serde_json::to_value(&r).unwrap())
        }
        VerifyCmd::Split { .. } => {
            let r = resolve::is_split_resolving(&plane, &points, &lines);
            (r.ok, serde_json::to_value(&r).unwrap())
        }
        VerifyCmd::TwoBl { .. } => {
            let prof = resolve::secant_profile(&plane, &points);
            (
                prof.is_double_blocking,
                serde_json::to_value(&prof).unwrap(),
            )
        }
        VerifyCmd::Semioval { .. } => {
            let r = resolve::semioval_check(&plane, &points);
            (r.is_semioval, serde_json::to_value(&r).unwrap())
        }
    };
    let out = Certificate::new(
        cert.kind,
        plane.field(),
        json!({"report": report, "ok": ok, "points": points, "lines": lines}),
        json!({"checked": "reverified"}),
    );
    print!("{}", out.to_canonical_json());
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_search(cmd: SearchCmd) -> Result<ExitCode, String> {
    let (q, flags, kind, k) = match &cmd {
        SearchCmd::Mu { q, flags } => (*q, flags, SearchKind::Resolving, None),
        SearchCmd::Mus { q, flags } => (*q, flags, SearchKind::SemiResolving, None),
        SearchCmd::Tau2 { q, flags } => (*q, flags, SearchKind::DoubleBlocking, None),
        SearchCmd::NoSmaller { q, k, kind, flags } => {
            let kind = match kind.as_str() {
                "resolving" => SearchKind::Resolving,
                "semi" => SearchKind::SemiResolving,
                "2bl" => SearchKind::DoubleBlocking,
                other => {
                    return Err(format!(
                        "--kind must be resolving, semi or 2bl, got {other}"
                    ))
                }
            };
            (*q, flags, kind, Some(*k))
        }
    };
    let opts = flags.to_options()?;
    let plane = Plane::new(field_for(q)?);
    let result = match k {
        Some(k) => search::verify_no_smaller(&plane, k, kind, &opts),
        None => match kind {
            SearchKind::Resolving => search::min_resolving(&plane, &opts),
            SearchKind::SemiResolving => search::min_semi_resolving(&plane, &opts),
            SearchKind::DoubleBlocking => search::min_double_blocking(&plane, &opts),
        },
    }
    .map_err(|e| e.to_string())?;
    let mut payload = serde_json::to_value(&result).unwrap();
    if let Some(k) = k {
        payload["k"] = json!(k);
        payload["none_exists"] =
            json!(result.status == RunStatus::Completed && result.optimum.is_none());
    }
    let cert = Certificate::new(
        CertKind::SearchResult,
        plane.field(),
        payload,
        provenance("search", &[("q", q)]),
    );
    print!("{}", cert.to_canonical_json());
    Ok(match result.status {
        RunStatus::Completed => ExitCode::SUCCESS,
        RunStatus::BudgetExceeded => ExitCode::from(3),
    })
}

fn run_redei(cmd: RedeiCmd) -> Result<ExitCode, String> {
    match cmd {
        RedeiCmd::Profile {
            q,
            input,
            linf,
            infinity,
        } => {
            let (plane, pts) = match input {
                Some(path) => {
                    let cert = Certificate::load(&path).map_err(|e| e.to_string())?;
                    let plane = cert.field.build_plane().map_err(|e| e.to_string())?;
                    let pts = cert.points().map_err(|e| e.to_string())?;
                    (plane, pts)
                }
                None => {
                    let q = q.ok_or("redei profile needs --q or --in")?;
                    let plane = Plane::new(field_for(q)?);
                    let pts = if plane.field().h() % 2 == 0 {
                        construct::semi_from_baer_pair(&plane).map_err(|e| e.to_string())?
                    } else {
                        construct::vertexless_triangle(&plane, false).map_err(|e| e.to_string())?
                    };
                    (plane, pts)
                }
            };
            let frame = match (linf, infinity) {
                (Some(l), Some(y)) => Some((l, y)),
                (None, None) => None,
                _ => return Err("--linf and --infinity must be given together".into()),
            };
            let profile = redei::redei_profile(&plane, &pts, frame).map_err(|e| e.to_string())?;
            let ok = profile.consistent();
            let cert = Certificate::new(
                CertKind::RedeiProfile,
                plane.field(),
                json!({
                    "points": pts,
                    "profile": serde_json::to_value(&profile).unwrap(),
                    "q": plane.q(),
                }),
                provenance("redei-profile", &[]),
            );
            print!("{}", cert.to_canonical_json());
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        RedeiCmd::SzwRandom { q, trials, seed } => {
            let field = field_for(q)?;
            let report = redei::szw_random_trials(&field, trials, seed);
            let ok = report.all_hold;
            let cert = Certificate::new(
                CertKind::RedeiProfile,
                &field,
                json!({"trials": serde_json::to_value(&report).unwrap(), "seed": seed}),
                provenance("szw-random", &[("trials", trials)]),
            );
            print!("{}", cert.to_canonical_json());
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Plane { cmd } => match cmd {
            PlaneCmd::Info { q } => {
                let field = field_for(q)?;
                let plane = Plane::new(field);
                let n = plane.n_points();
                let cert = Certificate::new(
                    CertKind::PlaneInfo,
                    plane.field(),
                    json!({
                        "q": plane.q(),
                        "points": n,
                        "lines": n,
                        "points_per_line": plane.q() + 1,
                        "line_at_infinity": plane.line_at_infinity(),
                        "vertical_point": plane.vertical_point(),
                    }),
                    provenance("plane-info", &[]),
                );
                print!("{}", cert.to_canonical_json());
                Ok(ExitCode::SUCCESS)
            }
        },
        Cmd::Construct { cmd } => run_construct(cmd),
        Cmd::Verify { cmd } => run_verify(cmd),
        Cmd::Search { cmd } => run_search(cmd),
        Cmd::Redei { cmd } => run_redei(cmd),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
