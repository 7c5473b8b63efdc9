//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. All comparisons are exact (zero tolerance); the only
//! pinned numbers are the wall-clock budgets below.

use std::process::Command;
use std::time::{Duration, Instant};

use biperiodic::cli::verify_exit_code;
use biperiodic::identities::{grid_preset, run_full_suite};
use biperiodic::matrix_seq::{
    cassini_lucas, fib_matrix_binet, fib_matrix_binet_compact, fib_matrix_closed, fib_matrix_rec, lucas_det,
    lucas_matrix_binet, lucas_matrix_closed, lucas_matrix_rec,
};
use biperiodic::report::{FailureRecord, SuiteReport, Value};
use biperiodic::series::{
    infinite_inverse_mismatches, lucas_direct_sum, lucas_partial_sum, verify_finite_inverse_sum,
    verify_generating_function, InverseSumForm,
};
use biperiodic::{Error, Mat2, Rational, SeqParams, SeqTable};

const TRIPLE_BUDGET: Duration = Duration::from_secs(10);
const VERIFY_BUDGET: Duration = Duration::from_secs(60);

const EXPECTED_FAILURES: [&str; 4] = [
    "f1_lucas.fib_neighbors",
    "f1_lucas.fib_neighbors_to_shift",
    "finite_inverse_sum",
    "infinite_inverse_sum.coefficient",
];

type Outcome = Result<String, String>;

fn grid() -> Vec<SeqParams> {
    grid_preset("default").expect("default grid")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn label(p: &SeqParams) -> String {
    format!("a={}, b={}", p.a, p.b)
}

fn triple_agreement() -> Outcome {
    let start = Instant::now();
    let grid = grid();
    let mut binet_pairs = 0;
    for p in &grid {
        if p.binet_allowed() {
            binet_pairs += 1;
        }
        for n in 0..=40u64 {
            let ni = n as i64;
            let (f_rec, l_rec) = (fib_matrix_rec(p, n), lucas_matrix_rec(p, n));
            ensure(f_rec == fib_matrix_closed(p, ni), || format!("F rec != closed at n={n}, {}", label(p)))?;
            ensure(l_rec == lucas_matrix_closed(p, ni), || format!("L rec != closed at n={n}, {}", label(p)))?;
            if p.binet_allowed() {
                let fb = fib_matrix_binet(p, n).map_err(|e| e.to_string())?;
                let fc = fib_matrix_binet_compact(p, n).map_err(|e| e.to_string())?;
                let lb = lucas_matrix_binet(p, n).map_err(|e| e.to_string())?;
                ensure(f_rec == fb && fb == fc, || format!("F Binet mismatch at n={n}, {}", label(p)))?;
                ensure(l_rec == lb, || format!("L Binet mismatch at n={n}, {}", label(p)))?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= TRIPLE_BUDGET, || format!("took {elapsed:?}, budget {TRIPLE_BUDGET:?}"))?;
    Ok(format!("{} pairs ({binet_pairs} with Binet), 0 <= n <= 40, {elapsed:.2?}", grid.len()))
}

fn det_and_cassini() -> Outcome {
    let grid = grid();
    for p in &grid {
        let t = SeqTable::new(p.clone());
        for n in -10..=50 {
            ensure(lucas_matrix_closed(&t, n).det() == lucas_det(p, n), || format!("det at n={n}, {}", label(p)))?;
        }
        for n in 1..=50 {
            ensure(cassini_lucas(&t, n), || format!("Cassini at n={n}, {}", label(p)))?;
        }
    }
    Ok(format!("{} pairs, det -10..=50, Cassini 1..=50", grid.len()))
}

fn series_identities() -> Outcome {
    let grid = grid();
    for p in &grid {
        let ctx = label(p);
        ensure(verify_generating_function(p, 40).map_err(|e| e.to_string())?, || format!("(i) {ctx}"))?;
        for n in 0..=15 {
            ensure(verify_finite_inverse_sum(p, n, InverseSumForm::Corrected), || format!("(ii) n={n} {ctx}"))?;
            ensure(!verify_finite_inverse_sum(p, n, InverseSumForm::Original), || {
                format!("(ii) original form unexpectedly holds at n={n} {ctx}")
            })?;
        }
        let corrected = infinite_inverse_mismatches(p, 30, InverseSumForm::Corrected).map_err(|e| e.to_string())?;
        ensure(corrected.is_empty(), || format!("(iii) coefficients {corrected:?} {ctx}"))?;
        let original = infinite_inverse_mismatches(p, 30, InverseSumForm::Original).map_err(|e| e.to_string())?;
        ensure(!original.is_empty(), || format!("(iii) original form unexpectedly holds {ctx}"))?;
        for n in 1..=50 {
            let closed = lucas_partial_sum(p, n).map_err(|e| e.to_string())?;
            ensure(closed == lucas_direct_sum(p, n), || format!("(iv) n={n} {ctx}"))?;
        }
    }
    Ok(format!(
        "{} pairs: (i) 40 coefficients, (ii) n <= 15, (iii) 30 coefficients, (iv) n <= 50; \
         (ii)/(iii) on the corrected forms, original forms fail as expected",
        grid.len()
    ))
}

fn matrix_identities() -> Outcome {
    let grid = grid();
    let report = run_full_suite(&grid, 20).map_err(|e| e.to_string())?;
    ensure(report.failures.is_empty(), || {
        let first: Vec<_> = report.failures.iter().take(3).map(|f| (f.name.clone(), f.indices.clone())).collect();
        format!("{} unexplained failures, first {first:?}", report.failures.len())
    })?;
    let names: Vec<_> = report.expected_failures.iter().map(|e| e.name.as_str()).collect();
    ensure(names == EXPECTED_FAILURES, || format!("unexpected expected-failure set {names:?}"))?;
    ensure(report.expected_failures.iter().all(|e| e.occurrences > 0), || "an expected failure never fails".into())?;
    Ok(format!(
        "{} pairs, m, n <= 20, r <= n: {} checks, 0 unexplained failures, {} explained failures of the original forms",
        grid.len(),
        report.checks_run,
        report.expected_failures.iter().map(|e| e.occurrences).sum::<usize>()
    ))
}

fn int_oracle(x0: i64, x1: i64, c: i64, len: usize) -> Vec<i64> {
    let mut v = vec![x0, x1];
    while v.len() < len {
        let k = v.len();
        v.push(c * v[k - 1] + v[k - 2]);
    }
    v
}

fn specializations() -> Outcome {
    let lucas_lit = [2, 1, 3, 4, 7, 11, 18, 29];
    let fib_lit = [0, 1, 1, 2, 3, 5, 8];
    ensure(int_oracle(2, 1, 1, 8) == lucas_lit && int_oracle(0, 1, 1, 7) == fib_lit, || "oracle".into())?;
    for (p, c, name) in [(SeqParams::classical(), 1, "a=b=1"), (SeqParams::pell(), 2, "a=b=2")] {
        let q_oracle = int_oracle(0, 1, c, 21);
        let l_oracle = int_oracle(2, c, c, 21);
        for n in 0..=20u64 {
            let ni = n as i64;
            for f in [fib_matrix_rec(&p, n), fib_matrix_closed(&p, ni), fib_matrix_binet(&p, n).unwrap()] {
                ensure(f.e21 == Rational::from(q_oracle[n as usize]), || format!("{name} q_{n}"))?;
            }
            for l in [lucas_matrix_rec(&p, n), lucas_matrix_closed(&p, ni), lucas_matrix_binet(&p, n).unwrap()] {
                ensure(l.e12 == Rational::from(l_oracle[n as usize]), || format!("{name} l_{n}"))?;
            }
        }
    }
    Ok("classical Lucas/Fibonacci and Pell/Pell-Lucas entries through n = 20, all three routes".into())
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_biperiodic"))
}

fn degenerate() -> Outcome {
    let p = SeqParams::from_i64(2, -2).unwrap();
    for n in [0, 1, 7] {
        ensure(fib_matrix_binet(&p, n) == Err(Error::BinetDegenerate), || format!("fib Binet at n={n}"))?;
        ensure(fib_matrix_binet_compact(&p, n) == Err(Error::BinetDegenerate), || format!("compact at n={n}"))?;
        ensure(lucas_matrix_binet(&p, n) == Err(Error::BinetDegenerate), || format!("lucas Binet at n={n}"))?;
    }
    let report = run_full_suite(&[p], 20).map_err(|e| e.to_string())?;
    ensure(report.failures.is_empty(), || format!("{} failures", report.failures.len()))?;
    ensure(!report.skipped.is_empty(), || "no skip records".into())?;

    let out = bin().args(["verify", "--a", "2", "--b", "-2", "--n-max", "12"]).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("verify exit {:?}", out.status.code()))?;
    let cli: SuiteReport = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(
        !cli.skipped.is_empty() && cli.skipped.iter().all(|s| s.reason.contains("ab = -4 degenerate")),
        || "skip annotation".into(),
    )?;
    Ok(format!(
        "a=2, b=-2: Binet -> BinetDegenerate, {} non-Binet checks pass, verify exits 0 with {} annotated skips",
        report.checks_run,
        cli.skipped.len()
    ))
}

fn cli_contract() -> Outcome {
    let code = |args: &[&str]| bin().args(args).output().map(|o| o.status.code()).map_err(|e| e.to_string());
    ensure(code(&["term", "--kind", "lucas", "--a", "1", "--b", "1", "--n", "6"])? == Some(0), || "exit 0".into())?;
    for bad in [
        &["term", "--kind", "fib", "--a", "0", "--b", "1", "--n", "3"][..],
        &["series", "--order", "0"],
        &["term", "--kind", "nope", "--n", "1"],
        &["verify", "--grid", "nope"],
    ] {
        ensure(code(bad)? == Some(2), || format!("{bad:?} should exit 2"))?;
    }
    // No correct identity fails, so exit 1 is checked on the mapping the CLI uses.
    let mut failing = SuiteReport {
        suite: "x".into(),
        params: vec![],
        checks_run: 1,
        failures: vec![],
        skipped: vec![],
        expected_failures: vec![],
        generated_at_unix: None,
    };
    ensure(verify_exit_code(&failing) == 0, || "clean report should map to 0".into())?;
    failing.failures.push(FailureRecord {
        name: "x".into(),
        indices: vec![1],
        params: SeqParams::classical().pair(),
        lhs: Value::Matrix(Mat2::identity()),
        rhs: Value::Matrix(Mat2::zero()),
    });
    ensure(verify_exit_code(&failing) == 1, || "failing report should map to 1".into())?;

    let start = Instant::now();
    let out = bin().args(["verify", "--grid", "default", "--n-max", "12"]).output().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.code() == Some(0), || format!("verify exit {:?}", out.status.code()))?;
    ensure(elapsed <= VERIFY_BUDGET, || format!("verify took {elapsed:?}"))?;

    let raw: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    for key in ["suite", "params", "checks_run", "failures", "skipped"] {
        ensure(raw.get(key).is_some(), || format!("missing key {key}"))?;
    }
    let report: SuiteReport = serde_json::from_value(raw.clone()).map_err(|e| e.to_string())?;
    ensure(report.params.len() == 49 && report.failures.is_empty(), || "report contents".into())?;
    let again = serde_json::to_value(&report).map_err(|e| e.to_string())?;
    ensure(again == raw, || "JSON did not round-trip".into())?;
    Ok(format!("exit codes 0/1/2, JSON round-trip, verify --grid default --n-max 12 in {elapsed:.2?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("triple agreement", triple_agreement),
        ("determinant and Cassini", det_and_cassini),
        ("generating function and sums", series_identities),
        ("matrix product/power identities", matrix_identities),
        ("classical and Pell specializations", specializations),
        ("degenerate discriminant", degenerate),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
