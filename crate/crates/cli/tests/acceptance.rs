//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p pg2q-cli --test acceptance -- --nocapture` to see
//! the lines; the ignored `extended_` test reruns the full PG(2,4) lower
//! bound certification on demand.

use pg2q::construct::{self, SStarParams};
use pg2q::galois::Field;
use pg2q::plane::Plane;
use pg2q::redei;
use pg2q::resolve;
use pg2q::search::{self, ProofMode, RunStatus, SearchKind, SearchOptions};
use pg2q::util::SplitMix64;
use std::process::Command;
use std::time::{Duration, Instant};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_pg2q")
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8 output"),
    )
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("valid json on stdout")
}

fn plane(q: u64) -> Plane {
    Plane::new(Field::from_order(q).unwrap())
}

struct Criterion {
    number: u32,
    label: &'static str,
    budget: Duration,
    started: Instant,
}

impl Criterion {
    fn start(number: u32, label: &'static str, budget_secs: u64) -> Criterion {
        Criterion {
            number,
            label,
            budget: Duration::from_secs(budget_secs),
            started: Instant::now(),
        }
    }

    fn pass(self) {
        let elapsed = self.started.elapsed();
        println!(
            "[acceptance] criterion {} ({}): PASS in {:.2?}",
            self.number, self.label, elapsed
        );
        assert!(
            elapsed <= self.budget,
            "criterion {} exceeded its time budget: {:.2?} > {:.2?}",
            self.number,
            elapsed,
            self.budget
        );
    }
}

#[test]
fn criterion_01_mu_fano_is_five() {
    let c = Criterion::start(1, "metric dimension of the order-2 plane is 5", 1);
    let (code, out) = run_cli(&["search", "mu", "--q", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["payload"]["optimum"], 5);
    assert_eq!(v["payload"]["proof_mode"], "exhaustive");
    let levels = v["payload"]["levels"].as_array().unwrap();
    let level4 = levels.iter().find(|l| l["k"] == 4).unwrap();
    assert_eq!(level4["candidates_checked"], 1001);
    let w = &v["payload"]["witness"];
    let size = w["points"].as_array().unwrap().len() + w["lines"].as_array().unwrap().len();
    assert_eq!(size, 5);
    c.pass();
}

#[test]
fn criterion_02_mu_pg23_is_eight() {
    let c = Criterion::start(2, "metric dimension of the order-3 plane is 8", 60);
    let pi = plane(3);
    let res = search::min_resolving(&pi, &SearchOptions::default()).unwrap();
    assert_eq!(res.optimum, Some(8));
    assert_eq!(res.proof_mode, ProofMode::Exhaustive);
    let level7 = res.levels.iter().find(|l| l.k == 7).unwrap();
    assert_eq!(level7.candidates_checked, 657_800);
    assert!(level7.completed && !level7.witness_found);
    let witness = res.witness.unwrap();
    assert!(resolve::is_resolving_naive(&pi, &witness).ok);
    c.pass();
}

#[test]
fn criterion_03_mu_pg24_upper_bound_fast_path() {
    let c = Criterion::start(
        3,
        "hyperoval ten-set verifies; big refutation is checkpointable",
        30,
    );
    let fast = Instant::now();
    let (code, out) = run_cli(&["construct", "hyperoval10", "--verify"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["payload"]["verification"]["ok"], true);
    let size = v["payload"]["points"].as_array().unwrap().len()
        + v["payload"]["lines"].as_array().unwrap().len();
    assert_eq!(size, 10);
    assert!(
        fast.elapsed() <= Duration::from_secs(1),
        "fast path must stay under a second"
    );
    // the k = 9 refutation is a documented extended run; here only the
    // budget/checkpoint machinery is exercised
    let cp = std::env::temp_dir().join("pg2q-acceptance-k9.checkpoint");
    let _ = std::fs::remove_file(&cp);
    let (code, _) = run_cli(&[
        "search",
        "no-smaller",
        "--q",
        "4",
        "--k",
        "9",
        "--kind",
        "resolving",
        "--symmetry",
        "on",
        "--prune",
        "on",
        "--budget-seconds",
        "6",
        "--checkpoint",
        cp.to_str().unwrap(),
    ]);
    if code == 0 {
        // fast machines may finish the whole refutation inside the budget
    } else {
        assert_eq!(code, 3, "budgeted run must exit 3 when unfinished");
        assert!(cp.exists(), "an interrupted run leaves a checkpoint behind");
    }
    let _ = std::fs::remove_file(&cp);
    c.pass();
}

#[test]
fn criterion_04_construction_battery() {
    let c = Criterion::start(
        4,
        "4q-4 constructions across orders, all completions at 23 and 25",
        300,
    );
    for q in [3u64, 4, 5, 7, 8, 9, 11, 13] {
        let pi = plane(q);
        let (a, b, r) = construct::default_triangle(&pi);
        let set = construct::canonical_4q4(&pi, a, b, r).unwrap();
        assert_eq!(set.len(), (4 * q - 4) as usize, "q={}", q);
        assert!(resolve::is_resolving(&pi, &set).ok, "q={}", q);
    }
    for q in [23u64, 25] {
        let pi = plane(q);
        let mut outputs = Vec::new();
        for id in 1..=32u8 {
            let comp = construct::construction_c(&pi, id, &SStarParams::default())
                .unwrap_or_else(|e| panic!("C{} at q={} failed: {}", id, q, e));
            assert_eq!(comp.set.len(), (4 * q - 4) as usize, "C{} at q={}", id, q);
            assert!(
                resolve::is_resolving(&pi, &comp.set).ok,
                "C{} at q={}",
                id,
                q
            );
            let q_on_l1 = pi.incident(comp.frame.q_point, comp.frame.l1);
            outputs.push((comp.set, comp.added_points, comp.added_lines, q_on_l1));
        }
        for i in 0..outputs.len() {
            for j in (i + 1)..outputs.len() {
                assert_ne!(outputs[i].0, outputs[j].0, "duplicate sets at q={}", q);
                let pat_i = (&outputs[i].1, &outputs[i].2, outputs[i].3);
                let pat_j = (&outputs[j].1, &outputs[j].2, outputs[j].3);
                assert_ne!(pat_i, pat_j, "duplicate completion pattern at q={}", q);
            }
        }
    }
    c.pass();
}

#[test]
fn criterion_05_semi_resolving_battery() {
    let c = Criterion::start(5, "semi-resolving constructions and exact minima", 600);
    for q in [3u64, 4, 5, 7, 8, 9, 11, 13] {
        let pi = plane(q);
        let tri = construct::vertexless_triangle(&pi, false).unwrap();
        assert_eq!(tri.len(), (3 * q - 3) as usize);
        assert!(resolve::is_semi_resolving(&pi, &tri).ok);
        assert!(tri.len() >= (2 * q - 1) as usize);
        if q >= 4 {
            let tri2 = construct::vertexless_triangle(&pi, true).unwrap();
            assert_eq!(tri2.len(), (3 * q - 4) as usize);
            assert!(resolve::is_semi_resolving(&pi, &tri2).ok);
            assert!(tri2.len() >= (2 * q - 1) as usize);
        }
    }
    for q in [9u64, 16, 25] {
        let pi = plane(q);
        let root = (q as f64).sqrt() as u64;
        let s = construct::semi_from_baer_pair(&pi).unwrap();
        assert_eq!(s.len(), (2 * q + 2 * root) as usize, "q={}", q);
        assert!(resolve::is_semi_resolving(&pi, &s).ok, "q={}", q);
        assert!(s.len() >= (2 * q - 1) as usize);
    }
    let res3 = search::min_semi_resolving(&plane(3), &SearchOptions::default()).unwrap();
    assert_eq!(res3.optimum, Some(6));
    let res4 = search::min_semi_resolving(&plane(4), &SearchOptions::default()).unwrap();
    assert_eq!(res4.optimum, Some(8));
    c.pass();
}

#[test]
fn criterion_06_double_blocking_battery() {
    let c = Criterion::start(
        6,
        "minimum double blocking sets are 3q at small orders",
        600,
    );
    for (q, expected) in [(2u64, 6u32), (3, 9), (4, 12)] {
        let pi = plane(q);
        let res = search::min_double_blocking(&pi, &SearchOptions::default()).unwrap();
        assert_eq!(res.optimum, Some(expected), "q={}", q);
        let three = construct::three_line_double_blocking(&pi).unwrap();
        assert_eq!(
            three.len() as u32,
            expected,
            "construction matches at q={}",
            q
        );
    }
    // upper bound only at q = 9: the Baer pair gives 26 = 2(q + sqrt(q) + 1)
    let pi9 = plane(9);
    let (b1, b2) = construct::disjoint_baer_pair(&pi9).unwrap();
    let union: Vec<u32> = {
        let mut u: Vec<u32> = b1.iter().chain(b2.iter()).copied().collect();
        u.sort_unstable();
        u
    };
    assert_eq!(union.len(), 26);
    assert!(resolve::secant_profile(&pi9, &union).is_double_blocking);
    c.pass();
}

#[test]
fn criterion_07_checker_equivalence_suite() {
    let c = Criterion::start(
        7,
        "criterion checkers equal the naive oracles on 1000 random sets per order",
        300,
    );
    for q in [2u64, 3, 4, 5] {
        let pi = plane(q);
        let n = pi.n_points();
        let mut rng = SplitMix64::new(0xacce97 + q);
        for _ in 0..1000 {
            let np = rng.below(n as u64 + 1) as usize;
            let nl = rng.below(n as u64 + 1) as usize;
            let set =
                resolve::MixedSet::new(rng.subset(n as usize, np), rng.subset(n as usize, nl));
            assert_eq!(
                resolve::is_resolving(&pi, &set).ok,
                resolve::is_resolving_naive(&pi, &set).ok,
                "q={} set={:?}",
                q,
                set
            );
            assert_eq!(
                resolve::is_semi_resolving(&pi, &set.points).ok,
                resolve::semi_resolving_naive(&pi, &set.points),
                "q={} pts={:?}",
                q,
                set.points
            );
        }
    }
    c.pass();
}

#[test]
fn criterion_08_redei_suite() {
    let c = Criterion::start(
        8,
        "gcd-degree identity, random inequality trials, quadratic bounds",
        300,
    );
    // (a) k_m = 2q - ind(m) on >= 100 random frames per order
    for q in [3u64, 5, 7, 9] {
        let pi = plane(q);
        let n = pi.n_points();
        let mut rng = SplitMix64::new(0x8a + q);
        let mut done = 0;
        while done < 100 {
            let k = (2 * q - 1 + rng.below(q + 2)) as usize;
            let pts = rng.subset(n as usize, k.min(n as usize));
            match redei::redei_profile(&pi, &pts, None) {
                Ok(prof) => {
                    assert!(prof.consistent(), "q={} pts={:?}", q, pts);
                    done += 1;
                }
                Err(redei::RedeiError::NoValidFrame) => continue,
                Err(other) => panic!("q={}: {}", q, other),
            }
        }
    }
    // (b) 500 random gcd-degree inequality instances per order, all must hold
    for q in [3u64, 4, 5, 7, 8, 9] {
        let field = Field::from_order(q).unwrap();
        let trials = redei::szw_random_trials(&field, 500, 0x52ed + q);
        assert!(trials.all_hold, "q={} failures={:?}", q, trials.failures);
    }
    // (c) the quadratic inequalities at every eligible point of the order-9
    // Baer-pair set (beta = 6)
    let pi9 = plane(9);
    let s = construct::semi_from_baer_pair(&pi9).unwrap();
    let rep = resolve::quadratic_index_check(&pi9, &s).unwrap();
    assert_eq!(rep.beta, 6);
    assert!(rep.all_hold);
    assert!(rep
        .evaluated
        .iter()
        .all(|e| e.general >= 0 && e.with_t >= 0));
    c.pass();
}

#[test]
fn criterion_09_index_dichotomy_pg2_121() {
    let c = Criterion::start(9, "index dichotomy for the order-121 Baer-pair set", 600);
    let pi = plane(121);
    let s = construct::semi_from_baer_pair(&pi).unwrap();
    assert_eq!(s.len(), 264);
    let semi = resolve::is_semi_resolving(&pi, &s);
    assert!(semi.ok);
    assert_eq!(semi.stats.beta, Some(22));
    let rep = resolve::quadratic_index_check(&pi, &s).unwrap();
    assert_eq!(rep.beta, 22);
    assert!(rep.all_hold);
    let exceptions = rep
        .dichotomy_exceptions
        .expect("beta <= q/4 - 5/2 activates the dichotomy");
    assert!(
        exceptions.is_empty(),
        "points with middling index: {:?}",
        exceptions
    );
    // direct recount: every point off the set has ind <= 2 or ind >= 97
    let idx = resolve::point_index(&pi, &s);
    let member: std::collections::BTreeSet<u32> = s.iter().copied().collect();
    for p in 0..pi.n_points() {
        if member.contains(&p) {
            continue;
        }
        let ind = idx.ind[p as usize];
        assert!(ind <= 2 || ind >= 97, "point {} has index {}", p, ind);
    }
    c.pass();
}

#[test]
fn criterion_10_byte_identical_reruns() {
    let c = Criterion::start(10, "acceptance commands are byte-deterministic", 300);
    let commands: &[&[&str]] = &[
        &["plane", "info", "--q", "9"],
        &["search", "mu", "--q", "2"],
        &["search", "tau2", "--q", "3"],
        &["search", "no-smaller", "--q", "3", "--k", "7"],
        &["construct", "canonical", "--q", "3", "--verify"],
        &["construct", "fano5", "--verify"],
        &["construct", "hyperoval10", "--verify"],
        &["construct", "c", "--id", "13", "--q", "23", "--verify"],
        &["construct", "baer-pair", "--q", "9", "--verify"],
        &["construct", "vertexless-triangle", "--q", "5", "--verify"],
        &["construct", "semi-from-2bl", "--q", "9", "--verify"],
        &["redei", "profile", "--q", "9"],
        &["redei", "szw-random", "--q", "5", "--trials", "100"],
    ];
    for args in commands {
        let (code1, out1) = run_cli(args);
        let (code2, out2) = run_cli(args);
        assert_eq!(code1, code2, "{:?}", args);
        assert_eq!(out1, out2, "outputs differ for {:?}", args);
        assert!(!out1.is_empty(), "{:?} printed nothing", args);
        // canonical round trip through the parser
        let reparsed = pg2q::cert::Certificate::parse(&out1).unwrap();
        assert_eq!(reparsed.to_canonical_json(), out1, "{:?}", args);
    }
    c.pass();
}

/// Full lower-bound certification for the order-4 plane: refute k = 9 over
/// C(42,9) with symmetry and pruning. Takes tens of seconds; run with
/// `cargo test -p pg2q-cli --test acceptance -- --ignored --nocapture`.
#[test]
#[ignore]
fn extended_certifies_mu_pg24() {
    let pi = plane(4);
    let opts = SearchOptions {
        symmetry: true,
        prune: true,
        ..Default::default()
    };
    let res = search::verify_no_smaller(&pi, 9, SearchKind::Resolving, &opts).unwrap();
    assert_eq!(res.status, RunStatus::Completed);
    assert_eq!(res.optimum, None, "no resolving set of size 9 exists");
    let ten = construct::hyperoval_resolving10(&pi).unwrap();
    assert!(resolve::is_resolving(&pi, &ten).ok);
    println!("[acceptance] extended (metric dimension of the order-4 plane is 10): PASS");
}
