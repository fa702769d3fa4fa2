//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_FAILURES` are unattainable as stated; they are
//! still run in full and reported as FAIL. The process exits nonzero when
//! any outcome differs from expectation.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use bspline_obstructions::bspline::{build_bspline, periodization, verify_partly_pou};
use bspline_obstructions::certify::{build_certificate, CertificateStatus};
use bspline_obstructions::cli;
use bspline_obstructions::rational::{floor_int, gcd_u64, int, parse_rational, rat, to_f64, Rational};
use bspline_obstructions::sets::{
    enum_p, enum_p_grochenig, local_gaps, point_set, point_set_grochenig, segment_h, verify_containment,
    ObstructionParams,
};
use bspline_obstructions::verify::{pou_test_matrix, suite_cancellation};
use bspline_obstructions::zak::{scan, zak_eval, LatticeParams};

const KNOWN_FAILURES: [u32; 2] = [1, 3];

/// σ_min minimum of the painless scan `(n, a, b) = (2, 1/3, 1/2)` at `M = 32`.
const PAINLESS_BASELINE: f64 = 1.9720265943665385;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn points_q_le_60() -> Vec<ObstructionParams> {
    // q = rμ <= 60 with r >= 2 forces μ <= 30, and b₀ < μ
    enum_p(&int(30), 30).into_iter().filter(|p| p.q() <= 60).collect()
}

fn criterion_1() -> Outcome {
    let points = points_q_le_60();
    let cases: Vec<(usize, ObstructionParams, &'static str)> = (1..=3)
        .flat_map(|n| points.iter().flat_map(move |p| ["b_lo", "b0", "b_hi"].map(|w| (n, *p, w))))
        .collect();
    let results: Vec<(usize, &str, Option<String>)> = cases
        .par_iter()
        .map(|&(n, p, which)| {
            let seg = segment_h(p, n);
            let b = match which {
                "b_lo" => seg.b_lo.clone(),
                "b0" => p.b0(),
                _ => seg.b_hi.clone(),
            };
            let failure = match build_certificate(n, p, &b) {
                Ok(c) => {
                    let tau = c.tolerance;
                    let ok = matches!(c.status, CertificateStatus::Verified)
                        && c.residuals.iter().all(|r| *r <= tau)
                        && c.sigma_min <= tau
                        && c.kernel_dimension() as u64 > p.q() - p.p();
                    (!ok).then(|| format!("{p:?} n={n} b={b}: {:?}", c.status))
                }
                Err(e) => Some(format!("{p:?} n={n} b={b}: {e}")),
            };
            (n, which, failure)
        })
        .collect();
    let mut failures: BTreeMap<(usize, &str), usize> = BTreeMap::new();
    let mut first = None;
    for (n, which, f) in &results {
        if let Some(f) = f {
            *failures.entry((*n, *which)).or_default() += 1;
            first.get_or_insert_with(|| f.clone());
        }
    }
    let total_failed: usize = failures.values().sum();
    let breakdown: Vec<String> = failures.iter().map(|((n, w), c)| format!("n={n}@{w}: {c}")).collect();
    Outcome {
        pass: total_failed == 0,
        detail: format!(
            "{} points, {} cases, {} failed [{}]{}",
            points.len(),
            results.len(),
            total_failed,
            breakdown.join(", "),
            first.map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    }
}

fn criterion_2() -> Outcome {
    let a = point_set(&enum_p(&int(15), 50));
    let b = point_set_grochenig(&enum_p_grochenig(&int(15), 50));
    Outcome { pass: a == b, detail: format!("|P| = {}, |P'| = {}, symmetric difference {}", a.len(), b.len(), a.symmetric_difference(&b).count()) }
}

fn criterion_3() -> Outcome {
    let mut violations = Vec::new();
    for n in 1..=4 {
        let r = verify_containment(&int(30), 50, n, false);
        violations.push(format!("n={n}: {} of {}", r.violations.len(), r.checked));
    }
    let clean = violations.iter().all(|v| v.contains(": 0 of"));
    let widened = verify_containment(&int(30), 50, 2, true);
    let probe_hits = widened.violations.len();
    Outcome {
        pass: clean && probe_hits > 0,
        detail: format!(
            "violations {}; widened n=2 probe: {probe_hits} violations, smallest slacks {} / {}",
            violations.join(", "),
            widened.min_lower_slack.map_or("-".into(), |s| s.to_string()),
            widened.min_upper_slack.map_or("-".into(), |s| s.to_string())
        ),
    }
}

fn criterion_4() -> Outcome {
    let points = enum_p(&int(30), 50);
    let lower_ok = points.iter().all(|p| local_gaps(*p).lower_ok);
    let corollary_ok = points.iter().all(|p| {
        let b0 = p.b0();
        let n = int(floor_int(&b0).try_into().unwrap());
        b0 >= &n + int(1) / &n
    });
    // exhaustive oracle over μ = 5, N = 4
    let mut best: Option<(Rational, u64, u64)> = None;
    for r in 2..=200u64 {
        for k in 1..=3u64 {
            if gcd_u64(k, 5) != 1 || gcd_u64(k, r) != 1 {
                continue;
            }
            let b0 = int(5) - rat(k as i64, r as i64);
            if floor_int(&b0) != 4.into() {
                continue;
            }
            let gap = b0 - int(4);
            if best.as_ref().is_none_or(|(g, _, _)| &gap < g) {
                best = Some((gap, r, k));
            }
        }
    }
    let (gap, r, k) = best.expect("μ = 5 has points in [4, 5)");
    let lib_gap = local_gaps(ObstructionParams::new(5, r, k).unwrap()).lower_gap;
    Outcome {
        pass: lower_ok && corollary_ok && gap == rat(1, 4) && (r, k) == (4, 3) && lib_gap == gap,
        detail: format!(
            "{} points, lower bounds {}, corollary {}, μ=5 minimum gap {gap} at (r, k) = ({r}, {k})",
            points.len(),
            if lower_ok { "hold" } else { "VIOLATED" },
            if corollary_ok { "holds" } else { "VIOLATED" }
        ),
    }
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=8 {
        let spline = build_bspline(n).unwrap();
        for i in 0..1000i64 {
            let x = rat(2 * i + 1, 2000) + rat(i % 7, 1);
            if periodization(&spline, &int(1), &x) != int(1) {
                bad.push(format!("PoU n={n} x={x}"));
            }
        }
        for c in 1..=5 {
            for i in 0..50i64 {
                let x = rat(2 * i + 1, 100);
                if periodization(&spline, &int(c), &x) != int(c) {
                    bad.push(format!("dilation n={n} c={c} x={x}"));
                }
            }
        }
    }
    let matrix = pou_test_matrix(&[1, 2, 3, 4]);
    for (n, c) in &matrix {
        let r = verify_partly_pou(*n, c, 64).unwrap();
        if !r.pass {
            bad.push(format!("constancy n={n} c={c}"));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "8000 PoU probes, 2000 dilation probes, {} (n, c) constancy cases, {} failures{}",
            matrix.len(),
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    }
}

fn criterion_6() -> Outcome {
    let splines: Vec<_> = (1..=4).map(|n| build_bspline(n).unwrap()).collect();
    let mut worst: f64 = 0.0;
    for i in 0..1000i64 {
        let spline = &splines[(i % 4) as usize];
        let lambda = rat(1 + i % 7, 1 + i % 4);
        let x = rat((i * 31) % 401 - 200, 61);
        let gamma = rat((i * 13) % 89, 89);
        let z = zak_eval(spline, &lambda, &x, &gamma);
        let zx = zak_eval(spline, &lambda, &(&x + int(1)), &gamma);
        let zg = zak_eval(spline, &lambda, &x, &(&gamma + int(1)));
        let phase = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * to_f64(&gamma));
        worst = worst.max((zx - phase * z).norm()).max((zg - z).norm());
    }
    let points = points_q_le_60();
    let mut checked = 0;
    let mut failed = 0;
    let mut first = None;
    for n in 1..=3 {
        let s = suite_cancellation(&points, n, 60, 50).unwrap();
        checked += s.checked;
        failed += s.failed;
        if first.is_none() {
            first = s.first_violation;
        }
    }
    Outcome {
        pass: worst <= 1e-12 && failed == 0,
        detail: format!(
            "quasi-periodicity worst {worst:.2e} over 1000 samples; cancellation {checked} probes on {} points, {failed} failed{}",
            points.len(),
            first.map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    }
}

fn criterion_7() -> Outcome {
    let n2 = build_bspline(2).unwrap();
    let obstruction = scan(&n2, &LatticeParams::new(rat(1, 3), rat(5, 2)).unwrap(), 64).unwrap();
    let painless = LatticeParams::new(rat(1, 3), rat(1, 2)).unwrap();
    let coarse = scan(&n2, &painless, 32).unwrap();
    let fine = scan(&n2, &painless, 64).unwrap();
    let change = (fine.min - coarse.min).abs() / coarse.min;
    let baseline_drift = (coarse.min - PAINLESS_BASELINE).abs() / PAINLESS_BASELINE;
    Outcome {
        pass: obstruction.min <= 1e-6
            && obstruction.argmin.1 == 0
            && coarse.min > 0.0
            && change < 0.1
            && baseline_drift < 1e-9,
        detail: format!(
            "obstruction min {:.2e} at (i, j) = {:?}; painless min {} (M=32) -> {} (M=64), baseline {PAINLESS_BASELINE}",
            obstruction.min, obstruction.argmin, coarse.min, fine.min
        ),
    }
}

fn run_cli(args: &[&str]) -> String {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("gabor-obs").chain(args.iter().copied()), &mut out, &mut err);
    assert_eq!(code, cli::EXIT_OK, "{}", String::from_utf8_lossy(&err));
    String::from_utf8(out).unwrap()
}

fn criterion_8() -> Outcome {
    let points = run_cli(&["enum-p", "--b-max", "15", "--r-max", "50"]);
    let rows: Vec<Vec<&str>> = points.lines().skip(1).map(|l| l.split(',').collect()).collect();
    let half = rat(1, 2);
    let ab_ok = rows.iter().all(|r| {
        let ab = parse_rational(r[2]).unwrap();
        ab > half && ab < int(1)
    });
    let pairs: Vec<(Rational, Rational)> =
        rows.iter().map(|r| (parse_rational(r[0]).unwrap(), parse_rational(r[1]).unwrap())).collect();
    let missing: Vec<i64> = (2..=50)
        .filter(|r| !pairs.contains(&(rat(1, 5), int(5) - rat(1, *r))))
        .collect();

    let h2 = run_cli(&["enum-h", "--n", "2", "--b-max", "15", "--r-max", "50"]);
    let h4 = run_cli(&["enum-h", "--n", "4", "--b-max", "15", "--r-max", "50"]);
    let widths = |text: &str| -> Vec<Rational> {
        text.lines().skip(1).map(|l| parse_rational(l.split(',').nth(11).unwrap()).unwrap()).collect()
    };
    let (w2, w4) = (widths(&h2), widths(&h4));
    let ratio_ok = w2.len() == w4.len() && !w2.is_empty() && w2.iter().zip(&w4).all(|(a, b)| a == &(int(2) * b));
    Outcome {
        pass: ab_ok && missing.is_empty() && ratio_ok,
        detail: format!(
            "{} points, ab in (1/2, 1): {ab_ok}, accumulation family missing r = {missing:?}, {} segments with exact 2x half-width ratio: {ratio_ok}",
            rows.len(),
            w2.len()
        ),
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "certificate suite", criterion_1),
        (2, "parameterization equivalence", criterion_2),
        (3, "containment and widen probe", criterion_3),
        (4, "gap bounds", criterion_4),
        (5, "exact analysis identities", criterion_5),
        (6, "Zak/ZZ numerics", criterion_6),
        (7, "scan sanity", criterion_7),
        (8, "figure parity", criterion_8),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let known = KNOWN_FAILURES.contains(&id);
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        let note = match (outcome.pass, known) {
            (false, true) => " (known failure)",
            (true, true) => " (known failure now passes)",
            (false, false) => " (unexpected)",
            (true, false) => "",
        };
        if outcome.pass == known {
            unexpected += 1;
        }
        println!("[{verdict}] criterion {id} {name}{note} ({:.1}s): {}", start.elapsed().as_secs_f64(), outcome.detail);
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria differ from their expected outcome");
        std::process::exit(1);
    }
}
