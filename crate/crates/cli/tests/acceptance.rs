//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS line when its assertions hold.
//!
//! The suite exercises the public surfaces end to end: the `goalfix` binary
//! for file-based checks and determinism, the library API for the search,
//! oracle-equivalence, operator, and indicator checks.

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use goalfix_core::analysis::{a12, hypervolume, igd, mann_whitney, FrontPoint2D};
use goalfix_core::ltl::{parse, Alphabet, Formula};
use goalfix_core::objectives::{consistency, is_valid_resolution, resolved_ratio};
use goalfix_core::operators::{
    combine_formulas, mutate_formula, MutationRule, RandomSource,
};
use goalfix_core::search::{run, Algorithm, Problem, SearchConfig};
use goalfix_core::semantics::{bounded_equivalent, count_bases, sat_bounded, Limits};
use goalfix_core::testutil::{
    direct_count, direct_sat, minepump, minepump_resolution, random_formula,
};

fn goalfix() -> Command {
    Command::new(env!("CARGO_BIN_EXE_goalfix"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn limits() -> Limits {
    Limits::default()
}

#[test]
fn criterion_1_minepump_boundary_condition() {
    let start = Instant::now();
    let path = fixture("minepump.spec");
    let out = goalfix()
        .args([
            "check-bc",
            path.to_str().unwrap(),
            "--bound",
            "5",
            "--format",
            "json",
        ])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let records: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let record = &records.as_array().unwrap()[0];
    assert_eq!(record["inconsistency"], true, "inconsistency");
    assert_eq!(record["minimality"][0], true, "minimality of the first goal");
    assert_eq!(record["minimality"][1], true, "minimality of the second goal");
    assert_eq!(record["non_triviality"], true, "non-triviality");
    assert_eq!(record["holds"], true, "holds");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("criterion 1 (minepump boundary condition): PASS in {elapsed:?}");
}

#[test]
fn criterion_2_ground_truth_resolutions() {
    let (_, bcs) = minepump();
    for which in [1, 2] {
        let resolution = minepump_resolution(which);
        assert_eq!(consistency(&resolution, 5, &limits()), 1.0, "resolution {which}");
        assert_eq!(
            resolved_ratio(&resolution, &bcs, 5, &limits()),
            1.0,
            "resolution {which}"
        );
        assert!(
            is_valid_resolution(&resolution, &bcs, 5, &limits()),
            "resolution {which}"
        );
    }
    println!("criterion 2 (ground-truth resolutions valid): PASS");
}

#[test]
fn criterion_3_resolution_reproduction() {
    let (spec, bcs) = minepump();
    let problem = Problem::new(spec.clone(), bcs).unwrap();
    let ground_truth = [
        minepump_resolution(1).conjunction(),
        minepump_resolution(2).conjunction(),
    ];
    let eq_limits = Limits::unlimited();

    let mut front_sizes = Vec::new();
    let mut runs_with_ground_truth = 0;
    for seed in 0..10u64 {
        let cfg = SearchConfig {
            algorithm: Algorithm::Nsga3,
            seed,
            ..SearchConfig::default()
        };
        assert_eq!(cfg.evaluation_budget, 1000);
        let start = Instant::now();
        let outcome = run(&problem, &cfg);
        let elapsed = start.elapsed();
        assert!(
            elapsed < Duration::from_secs(300),
            "seed {seed} took {elapsed:?}"
        );
        assert!(
            !outcome.archive.is_empty(),
            "seed {seed} found no valid resolution"
        );
        front_sizes.push(outcome.archive.len());

        // distinct valid resolutions this run discovered
        let mut seen = HashSet::new();
        let mut found = false;
        for cand in outcome.history.iter().filter(|c| c.fitness.is_valid()) {
            if !seen.insert(cand.spec.goal_key()) {
                continue;
            }
            let conj = cand.spec.conjunction();
            if ground_truth
                .iter()
                .any(|r| bounded_equivalent(&conj, r, 5, spec.alphabet(), &eq_limits).unwrap())
            {
                found = true;
                break;
            }
        }
        if found {
            runs_with_ground_truth += 1;
        }
    }
    let mean = front_sizes.iter().sum::<usize>() as f64 / front_sizes.len() as f64;
    assert!(mean >= 2.0, "mean non-dominated front size {mean}");
    assert!(
        runs_with_ground_truth >= 1,
        "no run reproduced a hand-written resolution"
    );
    println!(
        "criterion 3 (resolution reproduction): PASS — mean front {mean}, \
         {runs_with_ground_truth}/10 runs reproduced a hand-written resolution"
    );
}

#[test]
fn criterion_4_oracle_equivalence() {
    let alphabets: Vec<Alphabet> = [
        vec!["p"],
        vec!["p", "q"],
        vec!["p", "q", "r"],
    ]
    .into_iter()
    .map(|names| Alphabet::new(names).unwrap())
    .collect();
    let lim = Limits::unlimited();

    let mut rng = RandomSource::from_seed(20_240_501);
    for case in 0..500 {
        let al = &alphabets[rng.below(alphabets.len())];
        let f = random_formula(&mut rng, al, 5);
        let k = 1 + rng.below(4);
        let got = sat_bounded(&f, k, al, &lim).unwrap();
        let want = direct_sat(&f, k, al);
        assert_eq!(
            got.is_sat(),
            want.is_some(),
            "case {case}: {f} at bound {k} over {:?}",
            al.names()
        );
    }

    let mut rng = RandomSource::from_seed(20_240_502);
    for case in 0..200 {
        let al = &alphabets[rng.below(alphabets.len())];
        let f = random_formula(&mut rng, al, 5);
        let k = 1 + rng.below(4);
        assert_eq!(
            count_bases(&f, k, al, &lim).unwrap(),
            direct_count(&f, k, al),
            "case {case}: {f} at bound {k} over {:?}",
            al.names()
        );
    }
    println!("criterion 4 (oracle equivalence): PASS — 500 sat + 200 count cases");
}

#[test]
fn criterion_5_operator_suite() {
    let al = Alphabet::new(["p", "q", "r"]).unwrap();

    // every mutation rule fires on a fixed depth-3 formula
    let fixed = parse("(true && X p) U (q || !r)").unwrap();
    let mut rng = RandomSource::from_seed(501);
    let mut seen: HashSet<MutationRule> = HashSet::new();
    for _ in 0..10_000 {
        let (_, rule) = mutate_formula(&fixed, &al, &mut rng);
        seen.insert(rule);
    }
    for rule in MutationRule::ALL {
        assert!(seen.contains(&rule), "{rule:?} never fired in 10000 draws");
    }

    // closure and round-trip over 10 000 random operator applications
    let mut rng = RandomSource::from_seed(502);
    for round in 0..10_000 {
        let f = random_formula(&mut rng, &al, 4);
        let out = if round % 2 == 0 {
            mutate_formula(&f, &al, &mut rng).0
        } else {
            let g = random_formula(&mut rng, &al, 4);
            combine_formulas(&f, &g, &mut rng)
        };
        assert!(
            out.atoms().iter().all(|a| al.contains(a)),
            "round {round}: atom escaped"
        );
        assert_eq!(parse(&out.render().join()).unwrap(), out, "round {round}");
    }

    // the five documented one-step mutants of F(p -> G r) are all reachable
    let f = parse("F(p -> G r)").unwrap();
    let wanted: Vec<Formula> = [
        "G(p -> G r)",
        "F(p && G r)",
        "F(p -> !r)",
        "F(true -> G r)",
        "F(p -> G q)",
    ]
    .iter()
    .map(|s| parse(s).unwrap())
    .collect();
    let mut rng = RandomSource::from_seed(503);
    let mut reached = vec![false; wanted.len()];
    for _ in 0..20_000 {
        let (m, _) = mutate_formula(&f, &al, &mut rng);
        if let Some(i) = wanted.iter().position(|w| *w == m) {
            reached[i] = true;
        }
        if reached.iter().all(|&r| r) {
            break;
        }
    }
    assert!(
        reached.iter().all(|&r| r),
        "unreachable mutants at positions {reached:?}"
    );
    println!("criterion 5 (operator suite): PASS");
}

#[test]
fn criterion_6_indicator_suite() {
    // exact union area on the grid spanned by the points' own coordinates:
    // every cell lies fully inside or outside the union, so judging each
    // cell by its centre is exact
    fn grid_union_area(front: &[FrontPoint2D]) -> f64 {
        let mut xs: Vec<f64> = front.iter().map(|p| p.syntactic).collect();
        let mut ys: Vec<f64> = front.iter().map(|p| p.semantic).collect();
        xs.push(0.0);
        ys.push(0.0);
        xs.sort_by(f64::total_cmp);
        ys.sort_by(f64::total_cmp);
        xs.dedup();
        ys.dedup();
        let mut area = 0.0;
        for wx in xs.windows(2) {
            for wy in ys.windows(2) {
                let cx = (wx[0] + wx[1]) / 2.0;
                let cy = (wy[0] + wy[1]) / 2.0;
                if front.iter().any(|p| p.syntactic >= cx && p.semantic >= cy) {
                    area += (wx[1] - wx[0]) * (wy[1] - wy[0]);
                }
            }
        }
        area
    }

    let mut rng = RandomSource::from_seed(601);
    for case in 0..100 {
        let n = 1 + rng.below(9);
        let front: Vec<FrontPoint2D> = (0..n)
            .map(|_| FrontPoint2D::new(rng.unit(), rng.unit()))
            .collect();
        let hv = hypervolume(&front);
        let grid = grid_union_area(&front);
        assert!((hv - grid).abs() < 1e-3, "case {case}: hv {hv} vs grid {grid}");
    }

    // IGD equals the brute-force nearest-neighbour mean exactly
    let mut rng = RandomSource::from_seed(602);
    for case in 0..100 {
        let front: Vec<FrontPoint2D> = (0..1 + rng.below(6))
            .map(|_| FrontPoint2D::new(rng.unit(), rng.unit()))
            .collect();
        let reference: Vec<FrontPoint2D> = (0..1 + rng.below(6))
            .map(|_| FrontPoint2D::new(rng.unit(), rng.unit()))
            .collect();
        let mut total = 0.0;
        for r in &reference {
            let mut best = f64::INFINITY;
            for p in &front {
                let d = ((p.syntactic - r.syntactic).powi(2)
                    + (p.semantic - r.semantic).powi(2))
                .sqrt();
                if d < best {
                    best = d;
                }
            }
            total += best;
        }
        let want = total / reference.len() as f64;
        assert_eq!(igd(&front, &reference), want, "case {case}");
    }

    // complement identity and U-statistic consistency on tie-free samples
    let mut rng = RandomSource::from_seed(603);
    for case in 0..200 {
        let mut pool: Vec<f64> = Vec::new();
        let mut x = 0.0;
        for _ in 0..16 {
            x += 0.01 + rng.unit();
            pool.push(x);
        }
        let a: Vec<f64> = pool.iter().copied().step_by(2).collect();
        let b: Vec<f64> = pool.iter().copied().skip(1).step_by(2).collect();
        let ab = a12(&a, &b).unwrap().statistic;
        let ba = a12(&b, &a).unwrap().statistic;
        assert!((ab + ba - 1.0).abs() < 1e-12, "case {case}");
        let u = mann_whitney(&a, &b).unwrap().statistic;
        let want = (a.len() * b.len()) as f64 * (1.0 - ba);
        assert!((u - want).abs() < 1e-9, "case {case}: U {u} vs {want}");
    }
    println!("criterion 6 (indicator suite): PASS");
}

#[test]
fn criterion_7_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture("minepump.spec");
    for algorithm in Algorithm::ALL {
        let mut reports = Vec::new();
        for round in 0..2 {
            let out_path = dir.path().join(format!("{algorithm}-{round}.json"));
            let out = goalfix()
                .args([
                    "resolve",
                    path.to_str().unwrap(),
                    "--algorithm",
                    algorithm.name(),
                    "--seed",
                    "7",
                    "--budget",
                    "200",
                    "--population",
                    "20",
                    "--out",
                    out_path.to_str().unwrap(),
                ])
                .output()
                .expect("binary runs");
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            let mut report: serde_json::Value =
                serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
            report["wall_ms"] = serde_json::Value::from(0u64);
            reports.push(serde_json::to_string(&report).unwrap());
        }
        assert_eq!(
            reports[0], reports[1],
            "{algorithm}: reruns differ beyond wall-clock"
        );
    }
    println!("criterion 7 (determinism): PASS for all four algorithms");
}
