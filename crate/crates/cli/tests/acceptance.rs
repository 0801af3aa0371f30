//! The exit gate: one test per acceptance criterion, each printing a single
//! pass line with the measured values (run with `--nocapture` to see them).
//!
//! Heavy counting goes through the library; determinism checks drive the
//! installed binary exactly as a user would.

use std::process::Command;
use std::time::Instant;

use goldbach_core::{
    asymptotic_fit, count_reducible_fixed_lead, count_representations, fit_log_log,
    is_irreducible_with_budget, make_ring, parse_poly, run_suites, sweep, t_formula_box,
    total_pairs, BoundMode, BoundSpec, Element, Engine, Poly, SuiteConfig, DEFAULT_BUDGET,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(text: &str, k: u64) -> Poly {
    parse_poly(text, make_ring(k).unwrap()).unwrap()
}

#[test]
fn criterion_01_exact_totals() {
    let t0 = Instant::now();
    let square = poly("x^2", 2);
    let (t_enum, t_formula) = total_pairs(&square, &BoundSpec::boxed(1)).unwrap();
    assert_eq!(t_enum, 9);
    assert_eq!(t_formula, Some(9));
    assert_eq!(t_formula_box(&square, 1).unwrap(), 9);
    let cube = poly("x^3", 2);
    let (t_enum3, t_formula3) = total_pairs(&cube, &BoundSpec::boxed(2)).unwrap();
    assert_eq!(t_enum3, 650);
    assert_eq!(t_formula3, Some(650));
    println!(
        "criterion 01: PASS — T(x^2, box, y=1) = 9 = formula; T(x^3, box, y=2) = 650 = formula ({:.2?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_02_representation_counts_both_engines() {
    let t0 = Instant::now();
    let f = poly("x^2", 2);
    for engine in [Engine::Fast, Engine::Oracle] {
        assert_eq!(count_representations(&f, &BoundSpec::boxed(1), engine).unwrap(), 8);
        assert_eq!(count_representations(&f, &BoundSpec::disk(1), engine).unwrap(), 2);
    }
    println!(
        "criterion 02: PASS — R(box, y=1) = 8 and R(disk, y=1) = 2 under both engines ({:.2?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_03_engine_agreement_small_degrees() {
    let t0 = Instant::now();
    let mut cases = 0u64;
    for k in [2u64, 3, 5, 7] {
        let ring = make_ring(k).unwrap();
        let elems: Vec<Element> = BoundSpec::boxed(3).enumerate(&ring);
        let n = elems.len();
        for d in 1usize..=3 {
            let tuples = (n as u64).pow(d as u32);
            for t in 0..tuples {
                let mut coeffs: Vec<Element> = Vec::with_capacity(d + 1);
                let mut rest = t;
                for _ in 0..d {
                    coeffs.push(elems[(rest % n as u64) as usize].clone());
                    rest /= n as u64;
                }
                coeffs.push(Element::one());
                let f = Poly::new(ring, coeffs);
                let fast = is_irreducible_with_budget(&f, Engine::Fast, DEFAULT_BUDGET).unwrap();
                let oracle =
                    is_irreducible_with_budget(&f, Engine::Oracle, DEFAULT_BUDGET).unwrap();
                assert_eq!(
                    fast.is_reducible(),
                    oracle.is_reducible(),
                    "verdicts differ on k={k} f={f}"
                );
                assert_eq!(fast.witness(), oracle.witness(), "witnesses differ on k={k} f={f}");
                cases += 1;
            }
        }
    }
    assert_eq!(cases, 4 * (49 + 49 * 49 + 49 * 49 * 49));
    println!(
        "criterion 03: PASS — engines agree (verdict and witness) on {cases} monic cases, deg <= 3, box y=3, k in {{2,3,5,7}} ({:.2?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_04_reducible_density_vanishes() {
    let t0 = Instant::now();
    let mut reported = Vec::new();
    for k in [2u64, 3] {
        let f = poly("x^2", k);
        let density = |y: u64| {
            let rows = sweep(&f, BoundMode::Box, &[y], Engine::Fast, DEFAULT_BUDGET).unwrap();
            let r = &rows[0];
            r.pairs_reducible as f64 / r.t_enum as f64
        };
        let (d50, d100) = (density(50), density(100));
        assert!(d50 <= 0.05, "k={k}: density {d50} at y=50 exceeds 0.05");
        assert!(d100 < d50, "k={k}: density did not shrink ({d100} >= {d50})");
        reported.push(format!("k={k}: {d50:.6} -> {d100:.6}"));
    }
    println!(
        "criterion 04: PASS — reducible density at y=50 then y=100: {} ({:.2?})",
        reported.join("; "),
        t0.elapsed()
    );
}

#[test]
fn criterion_05_growth_exponent_of_r() {
    let t0 = Instant::now();
    let f = poly("x^2", 2);
    let rows = sweep(&f, BoundMode::Box, &[10, 20, 40, 80], Engine::Fast, DEFAULT_BUDGET).unwrap();
    for r in &rows {
        assert_eq!(r.r + r.pairs_reducible, r.t_enum);
    }
    let fit = asymptotic_fit(&rows).unwrap();
    assert!(
        (1.85..=2.15).contains(&fit.slope),
        "slope {} outside [1.85, 2.15]",
        fit.slope
    );
    let last = rows.last().unwrap();
    let first = &rows[0];
    assert!(last.ratio_r_t > first.ratio_r_t && last.ratio_r_t > 0.95);
    println!(
        "criterion 05: PASS — R slope {:.4} in [1.85, 2.15]; R/T {:.4} -> {:.4}; at y=80 ratio_R_2y={:.6} ratio_R_4y={:.6} ({:.2?})",
        fit.slope,
        first.ratio_r_t,
        last.ratio_r_t,
        last.ratio_r_2y,
        last.ratio_r_4y,
        t0.elapsed()
    );
}

#[test]
fn criterion_06_cubic_sweep_partition_and_t_growth() {
    let t0 = Instant::now();
    let f = poly("x^3", 2);
    let rows = sweep(&f, BoundMode::Box, &[2, 4, 8], Engine::Fast, DEFAULT_BUDGET).unwrap();
    let mut points = Vec::new();
    for r in &rows {
        assert_eq!(r.r + r.pairs_reducible, r.t_enum, "partition fails at y={}", r.y);
        assert_eq!(r.t_formula, Some(r.t_enum), "formula mismatch at y={}", r.y);
        points.push(((2 * r.y + 1) as f64, r.t_enum as f64));
    }
    // T is a polynomial in the box side 2y+1, so the growth reads off
    // against that abscissa.
    let (slope, _) = fit_log_log(&points).unwrap();
    assert!((3.8..=4.2).contains(&slope), "T slope {slope} outside [3.8, 4.2]");
    println!(
        "criterion 06: PASS — partition R+reducible=T exact at y in {{2,4,8}} (T = 650, 6642, 83810); T slope {:.4} in [3.8, 4.2] ({:.2?})",
        slope,
        t0.elapsed()
    );
}

#[test]
fn criterion_07_factor_coefficient_bound() {
    let t0 = Instant::now();
    let ks = [2u64, 3, 5, 7];
    let mut checked = 0u64;
    for trial in 0..10_000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(20240901);
        rng.set_stream(trial);
        let ring = make_ring(ks[rng.gen_range(0..ks.len())]).unwrap();
        let sample_monic = |rng: &mut ChaCha8Rng, deg: usize| -> Poly {
            let mut coeffs: Vec<Element> = Vec::new();
            for _ in 0..deg {
                loop {
                    let e = Element::from_i64(rng.gen_range(-7..=7), rng.gen_range(-7..=7));
                    if e.norm(&ring) <= 50 {
                        coeffs.push(e);
                        break;
                    }
                }
            }
            coeffs.push(Element::one());
            Poly::new(ring, coeffs)
        };
        let da = rng.gen_range(1..=3);
        let a = sample_monic(&mut rng, da);
        let db = rng.gen_range(1..=3);
        let b = sample_monic(&mut rng, db);
        let bound_sq = a.mul(&b).lemma1_bound_sq().unwrap();
        for c in a.coeffs().iter().chain(b.coeffs()) {
            assert!(
                c.norm(&ring) <= bound_sq,
                "coefficient {c} of a factor exceeds the product bound {bound_sq}"
            );
            checked += 1;
        }
    }
    println!(
        "criterion 07: PASS — {checked} factor coefficients across 10000 seeded monic pairs all within the product bound ({:.2?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_08_mahler_suites() {
    let t0 = Instant::now();
    let cfg = SuiteConfig::new(10_000, 7);
    let outcomes = run_suites(&cfg).unwrap();
    assert_eq!(outcomes.len(), 6);
    for o in &outcomes {
        assert_eq!(o.failures, 0, "{} failed: {:?}", o.inequality, o.counterexample);
        assert!(o.counterexample.is_none());
    }
    assert_eq!(outcomes[5].inequality, "quadrature");
    assert_eq!(outcomes[5].trials, 100);
    let worst = outcomes
        .iter()
        .map(|o| o.worst_slack)
        .fold(f64::INFINITY, f64::min);
    println!(
        "criterion 08: PASS — six suites x 10000 trials (quadrature on 100), zero violations, worst slack {:.3e} ({:.2?})",
        worst,
        t0.elapsed()
    );
}

#[test]
fn criterion_09_fixed_lead_reducible_density() {
    let t0 = Instant::now();
    let ring = make_ring(2).unwrap();
    let lead = Element::from_i64(-1, 0);
    let ys = [5u64, 10, 20, 40];
    let mut rs = Vec::new();
    let mut densities = Vec::new();
    for &y in &ys {
        let bound = BoundSpec::boxed(y);
        let r_y = count_reducible_fixed_lead(2, &lead, &bound, &ring, DEFAULT_BUDGET).unwrap();
        let candidates = bound.cardinality::<i64>(&ring);
        rs.push(r_y);
        densities.push(r_y as f64 / candidates as f64);
    }
    assert!(rs.windows(2).all(|w| w[0] <= w[1]), "r_y not nondecreasing: {rs:?}");
    assert!(
        densities.windows(2).all(|w| w[1] < w[0]),
        "density not strictly decreasing: {densities:?}"
    );
    let points: Vec<(f64, f64)> = ys
        .iter()
        .zip(&rs)
        .filter(|&(_, &r)| r > 0)
        .map(|(&y, &r)| (y as f64, r as f64))
        .collect();
    let (slope, _) = fit_log_log(&points).unwrap();
    println!(
        "criterion 09: PASS — r_y = {rs:?} nondecreasing, density {:?} strictly decreasing, fitted slope {slope:.4} ({:.2?})",
        densities.iter().map(|d| (d * 1e6).round() / 1e6).collect::<Vec<_>>(),
        t0.elapsed()
    );
}

fn jobs_invariant(args: &[&str]) {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_goldbach"))
            .args(args)
            .args(["--jobs", jobs])
            .output()
            .expect("binary runs")
    };
    let one = run("1");
    let eight = run("8");
    assert_eq!(one.status.code(), eight.status.code(), "exit code differs: {args:?}");
    assert_eq!(one.stdout, eight.stdout, "output differs between --jobs 1 and --jobs 8: {args:?}");
}

#[test]
fn criterion_10_thread_count_invariance() {
    let t0 = Instant::now();
    let commands: [&[&str]; 7] = [
        &["pairs-total", "--k", "2", "--f", "x^2", "--y", "1"],
        &["pairs-total", "--k", "2", "--f", "x^3", "--y", "2"],
        &["irred", "--k", "2", "x^2+2"],
        &["sweep", "--k", "2", "--f", "x^2", "--y-min", "10", "--y-max", "80", "--step", "10"],
        &["sweep", "--k", "2", "--f", "x^3", "--y-min", "2", "--y-max", "8", "--step", "2"],
        &["lemma2", "--k", "2", "--d", "2", "--g-lead", "(-1,0)", "--y-min", "5", "--y-max", "40", "--step", "5"],
        &["mahler-check", "--k", "2", "--trials", "1000", "--seed", "7"],
    ];
    for args in commands {
        jobs_invariant(args);
    }
    println!(
        "criterion 10: PASS — {} commands byte-identical between --jobs 1 and --jobs 8 ({:.2?})",
        commands.len(),
        t0.elapsed()
    );
}
