//! Umbrella runner for the exact property suites.
//!
//! Each suite counts the cases it checked and keeps the first violation it
//! saw, so a failing run names a concrete counterexample.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bspline::{build_bspline, periodization, region_probes, verify_partly_pou};
use crate::error::Result;
use crate::rational::{int, rat, Rational};
use crate::sets::{
    enum_p, enum_p_grochenig, local_gaps, point_set, point_set_grochenig, segment_h, verify_containment,
    ObstructionParams,
};
use crate::zak::{column_group_sum, group_region, LatticeParams};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub b_max: Rational,
    pub r_max: u64,
    pub orders: Vec<usize>,
    /// Use the widened segments in the containment suite.
    pub widen: bool,
    /// Largest `q` used by the cancellation suite.
    pub cancellation_q_max: u64,
    /// Region probes per point in the cancellation suite.
    pub cancellation_probes: usize,
    /// Probes per order in the partition-of-unity suites.
    pub pou_probes: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            b_max: int(15),
            r_max: 50,
            orders: vec![1, 2, 3],
            widen: false,
            cancellation_q_max: 60,
            cancellation_probes: 50,
            pou_probes: 1000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub first_violation: Option<String>,
}

impl SuiteResult {
    fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), checked: 0, failed: 0, first_violation: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(describe());
            }
        }
    }

    fn merge(mut self, other: SuiteResult) -> Self {
        self.checked += other.checked;
        self.failed += other.failed;
        if self.first_violation.is_none() {
            self.first_violation = other.first_violation;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

fn label(p: &ObstructionParams) -> String {
    format!("(μ, r, k) = ({}, {}, {})", p.mu(), p.r(), p.k())
}

pub fn suite_equivalence(b_max: &Rational, r_max: u64) -> SuiteResult {
    let mut s = SuiteResult::new("P = P'");
    let a = point_set(&enum_p(b_max, r_max));
    let b = point_set_grochenig(&enum_p_grochenig(b_max, r_max));
    for pt in a.symmetric_difference(&b) {
        s.record(false, || format!("point ({}, {}) is in only one parameterization", pt.0, pt.1));
    }
    s.checked = a.len().max(b.len());
    s
}

pub fn suite_density(points: &[ObstructionParams]) -> SuiteResult {
    let mut s = SuiteResult::new("density bounds");
    let half = rat(1, 2);
    for p in points {
        let ab = p.density();
        let (mu, r) = (int(p.mu() as i64), int(p.r() as i64));
        let b0 = p.b0();
        let ok = ab > half && ab < Rational::one() && (&r - Rational::one()) * &mu / &r < b0 && b0 < mu;
        s.record(ok, || format!("{}: ab = {ab}, b0 = {b0}", label(p)));
    }
    s
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn suite_composite_q(points: &[ObstructionParams]) -> SuiteResult {
    let mut s = SuiteResult::new("composite q");
    for p in points {
        let ok = p.q() == p.r() * p.mu() && p.r() >= 2 && p.mu() >= 3 && !is_prime(p.q());
        s.record(ok, || format!("{}: q = {}", label(p), p.q()));
    }
    s
}

pub fn suite_gaps(points: &[ObstructionParams]) -> SuiteResult {
    let mut s = SuiteResult::new("local gaps");
    for p in points {
        let g = local_gaps(*p);
        s.record(g.all_ok(), || format!("{}: {g:?}", label(p)));
    }
    s
}

pub fn suite_containment(b_max: &Rational, r_max: u64, n: usize, widen: bool) -> SuiteResult {
    let name = if widen { format!("containment n={n} (widened)") } else { format!("containment n={n}") };
    let mut s = SuiteResult::new(name);
    let report = verify_containment(b_max, r_max, n, widen);
    s.checked = report.checked;
    s.failed = report.violations.len();
    s.first_violation = report
        .violations
        .first()
        .map(|v| format!("{}: ({}, {}) {}", label(&v.params), v.a, v.b, v.reason));
    s
}

/// `∑_k N_n(x + k) = 1` for `n = 1..=max_order` at `probes` points of `[0, 1)`.
pub fn suite_partition_of_unity(max_order: usize, probes: usize) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("partition of unity");
    for n in 1..=max_order {
        let spline = build_bspline(n)?;
        for i in 0..probes {
            let x = rat(2 * i as i64 + 1, 2 * probes as i64);
            let v = periodization(&spline, &Rational::one(), &x);
            s.record(v.is_one(), || format!("n = {n}, x = {x}: sum = {v}"));
        }
    }
    Ok(s)
}

/// The `(n, c)` test matrix: `c = m ± j/(2 n m')` with `|{c}| <= 1/n`.
pub fn pou_test_matrix(orders: &[usize]) -> Vec<(usize, Rational)> {
    let mut out = Vec::new();
    for &n in orders {
        for m in 1..=4i64 {
            for mp in 1..=3i64 {
                for j in 0..=2 * mp {
                    let d = rat(j, 2 * n as i64 * mp);
                    for c in [int(m) + &d, int(m) - &d] {
                        if c > Rational::zero() && !out.contains(&(n, c.clone())) {
                            out.push((n, c));
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn suite_partly_pou(orders: &[usize], probes: usize) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("partly PoU");
    for (n, c) in pou_test_matrix(orders) {
        let report = verify_partly_pou(n, &c, probes)?;
        s.record(report.pass, || format!("n = {n}, c = {c}: region {}", report.region));
    }
    Ok(s)
}

/// Column-group cancellation at `b ∈ {b_lo, b₀, b_hi}` for all points with
/// `q <= q_max`.
pub fn suite_cancellation(points: &[ObstructionParams], n: usize, q_max: u64, probes: usize) -> Result<SuiteResult> {
    let spline = build_bspline(n)?;
    let selected: Vec<_> = points.iter().filter(|p| p.q() <= q_max).collect();
    let parts: Vec<Result<SuiteResult>> = selected
        .par_iter()
        .map(|p| {
            let mut s = SuiteResult::new("");
            let seg = segment_h(**p, n);
            for b in [seg.b_lo.clone(), p.b0(), seg.b_hi.clone()] {
                let lat = LatticeParams::new(seg.a_at(&b), b.clone())?;
                let (_, region) = group_region(n, &lat, p.r())?;
                for x in region_probes(&region, probes, n >= 2) {
                    let g = column_group_sum(&spline, &lat, p.mu(), p.r(), &x)?;
                    let k = g.values[0].norm();
                    let off = g.off_axis_max();
                    s.record(off <= 1e-10 * (1.0 + k), || {
                        format!("{}, b = {b}, x = {x}: off-axis {off:e}, |K| = {k}", label(p))
                    });
                }
            }
            Ok(s)
        })
        .collect();
    let mut total = SuiteResult::new(format!("cancellation n={n}"));
    for part in parts {
        total = total.merge(part?);
    }
    Ok(total)
}

pub fn run_suites(cfg: &VerifyConfig) -> Result<Vec<SuiteResult>> {
    let points = enum_p(&cfg.b_max, cfg.r_max);
    let mut out = vec![
        suite_equivalence(&cfg.b_max, cfg.r_max),
        suite_density(&points),
        suite_composite_q(&points),
        suite_gaps(&points),
    ];
    for &n in &cfg.orders {
        out.push(suite_containment(&cfg.b_max, cfg.r_max, n, cfg.widen));
    }
    out.push(suite_partition_of_unity(8, cfg.pou_probes)?);
    out.push(suite_partly_pou(&cfg.orders, 64)?);
    for &n in &cfg.orders {
        out.push(suite_cancellation(&points, n, cfg.cancellation_q_max, cfg.cancellation_probes)?);
    }
    Ok(out)
}

pub fn format_table(results: &[SuiteResult]) -> String {
    let width = results.iter().map(|r| r.name.chars().count()).max().unwrap_or(5).max(5);
    let mut out = String::new();
    let _ = writeln!(out, "{:<width$}  {:>8}  {:>6}  result", "suite", "checked", "failed");
    for r in results {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        let pad = width - r.name.chars().count();
        let _ = writeln!(out, "{}{}  {:>8}  {:>6}  {verdict}", r.name, " ".repeat(pad), r.checked, r.failed);
    }
    if let Some(r) = results.iter().find(|r| !r.passed()) {
        let _ = writeln!(out, "first violation [{}]: {}", r.name, r.first_violation.as_deref().unwrap_or("?"));
    }
    out
}
