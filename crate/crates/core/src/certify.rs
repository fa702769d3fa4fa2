//! Constructive non-frame certificates for points of the hyperbolic set.
//!
//! At a point `(a, b)` of a segment centered at `(1/μ, μ - k/r)` the columns
//! of `Φ(x, 0)` split into `μ` groups `{ℓμ + s : ℓ = 0..r}`. Each group sums
//! to `K_s e_0` whenever `r x - s p/μ` lies in the cancellation region, so
//! with `x₀` chosen in the common region of `k + 2` groups the vectors
//! `v_s = (1/K_s) ∑_ℓ e_{ℓμ+s}` all map to `e_0`, and the differences
//! `v_s - v_{s₀}` give `q - p + 1 = k + 1` independent kernel vectors. The
//! rank of `Φ(x₀, 0)` is then at most `p - 1`.
//!
//! The witness point and the feasible region are exact rationals; only the
//! matrix residuals are floating point.

use std::fmt::{self, Write as _};

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::bspline::{build_bspline, constancy_region, PiecewisePolynomial};
use crate::circle::{circle_intersect, CircleIntervalSet};
use crate::error::{Error, Result};
use crate::rational::{int, parse_rational, rat, Rational};
use crate::sets::{params_on_hyperbola, segment_h, ObstructionParams};
use crate::zak::{sigma_min, zero_tolerance, zz_matrix, LatticeParams, ZZPoint};

/// How the `k + 2` column groups were chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupSelection {
    /// Groups `s = 0, 1, ..., q - p + 1`.
    Literal,
    /// Groups whose sample points `r x₀ - s p/μ` are consecutive multiples of
    /// `1/μ`; used when the literal groups have no common region.
    Consecutive,
}

impl GroupSelection {
    fn as_str(self) -> &'static str {
        match self {
            GroupSelection::Literal => "literal",
            GroupSelection::Consecutive => "consecutive",
        }
    }
}

/// The exact part of a certificate.
#[derive(Clone, Debug)]
pub struct Witness {
    /// `δ = rb - p`.
    pub offset: Rational,
    /// Cancellation region for the scaled variable `y = r x`.
    pub region: CircleIntervalSet,
    /// Points `y` (mod 1) where every chosen group cancels.
    pub feasible: CircleIntervalSet,
    pub groups: Vec<u64>,
    pub selection: GroupSelection,
    pub x0: Rational,
}

fn check_on_segment(n: usize, params: ObstructionParams, b: &Rational) -> Result<()> {
    let seg = segment_h(params, n);
    if !seg.contains_b(b) {
        return Err(Error::PreconditionViolated(format!(
            "b = {b} is outside [{}, {}] for (μ, r, k) = ({}, {}, {}), n = {n}",
            seg.b_lo,
            seg.b_hi,
            params.mu(),
            params.r(),
            params.k()
        )));
    }
    Ok(())
}

fn modular_inverse(k: u64, m: u64) -> u64 {
    (1..m).find(|x| (k * x) % m == 1).expect("k is invertible modulo μ")
}

/// Feasible region for `y = r x₀` given the chosen group offsets.
fn feasible_for(region: &CircleIntervalSet, params: ObstructionParams, groups: &[u64]) -> CircleIntervalSet {
    let step = rat(params.p() as i64, params.mu() as i64);
    let shifted: Vec<CircleIntervalSet> = groups.iter().map(|s| region.shift(&(int(*s as i64) * &step))).collect();
    circle_intersect(&shifted)
}

/// Groups `s = 0, 1, ..., q - p + 1`.
pub fn literal_groups(params: ObstructionParams) -> Vec<u64> {
    (0..params.q() - params.p() + 2).collect()
}

/// The `k + 2` groups `s_j ≡ -j k⁻¹ (mod μ)`, whose samples are `j/μ`.
pub fn consecutive_groups(params: ObstructionParams) -> Vec<u64> {
    let mu = params.mu();
    let k_inv = modular_inverse(params.k() % mu, mu);
    (0..params.q() - params.p() + 2).map(|j| (mu - (j * k_inv) % mu) % mu).collect()
}

/// The set of `y = r x₀` (mod 1) at which every group in `groups` cancels.
pub fn feasible_set(n: usize, params: ObstructionParams, b: &Rational, groups: &[u64]) -> Result<CircleIntervalSet> {
    check_on_segment(n, params, b)?;
    let offset = int(params.r() as i64) * b - int(params.p() as i64);
    let region = constancy_region(n, &offset)?;
    Ok(feasible_for(&region, params, groups))
}

/// Picks the witness `x₀` in exact arithmetic.
///
/// The literal groups are tried first. Their sample points are
/// `-s k/μ (mod 1)`, which spread around the circle once `k >= 2`, so when
/// they share no common region the consecutive groups are used instead;
/// those span exactly `(k+1)/μ`, which fits into the region whenever `b`
/// lies on the segment.
pub fn find_x0(n: usize, params: ObstructionParams, b: &Rational) -> Result<Witness> {
    check_on_segment(n, params, b)?;
    let offset = int(params.r() as i64) * b - int(params.p() as i64);
    let region = constancy_region(n, &offset)?;

    let mut selection = GroupSelection::Literal;
    let mut groups = literal_groups(params);
    let mut feasible = feasible_for(&region, params, &groups);
    if feasible.is_empty() {
        groups = consecutive_groups(params);
        selection = GroupSelection::Consecutive;
        feasible = feasible_for(&region, params, &groups);
    }
    let arc = feasible.largest_arc().ok_or_else(|| {
        Error::InfeasibleWitness(format!(
            "no common cancellation region for (μ, r, k) = ({}, {}, {}), b = {b}, n = {n}",
            params.mu(),
            params.r(),
            params.k()
        ))
    })?;
    let x0 = arc.midpoint() / int(params.r() as i64);
    Ok(Witness { offset, region, feasible, groups, selection, x0 })
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertificateStatus {
    Verified,
    Failed(String),
}

impl CertificateStatus {
    pub fn is_verified(&self) -> bool {
        matches!(self, CertificateStatus::Verified)
    }
}

/// A self-contained non-frame witness.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub n: usize,
    pub params: ObstructionParams,
    pub a: Rational,
    pub b: Rational,
    pub x0: Rational,
    pub selection: GroupSelection,
    /// Column-group offsets `s`, one per group.
    pub groups: Vec<u64>,
    /// `K_s`, the common value of each group sum at `(x₀, 0)`.
    pub group_constants: Vec<Complex64>,
    /// `v_s - v_{s₀}` for every group after the first.
    pub kernel_vectors: Vec<Vec<Complex64>>,
    /// `max_k |(Φ w)_k|` per kernel vector.
    pub residuals: Vec<f64>,
    /// `max_s ‖Φ v_s - e_0‖_∞`.
    pub unit_residual: f64,
    pub sigma_min: f64,
    pub frobenius: f64,
    pub tolerance: f64,
    pub status: CertificateStatus,
}

impl Certificate {
    pub fn p(&self) -> u64 {
        self.params.p()
    }

    pub fn q(&self) -> u64 {
        self.params.q()
    }

    /// Upper bound on the rank of `Φ(x₀, 0)` witnessed by the kernel vectors.
    pub fn claimed_rank_bound(&self) -> u64 {
        self.q() - self.kernel_dimension() as u64
    }

    pub fn kernel_dimension(&self) -> usize {
        self.kernel_vectors.len()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// The `key = value` record.
    pub fn to_record(&self) -> String {
        let mut s = String::new();
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "mu = {}", self.params.mu());
        let _ = writeln!(s, "r = {}", self.params.r());
        let _ = writeln!(s, "k = {}", self.params.k());
        let _ = writeln!(s, "p = {}", self.p());
        let _ = writeln!(s, "q = {}", self.q());
        let _ = writeln!(s, "a = {}", self.a);
        let _ = writeln!(s, "b = {}", self.b);
        let _ = writeln!(s, "x0 = {}", self.x0);
        let _ = writeln!(s, "gamma0 = 0");
        let _ = writeln!(s, "selection = {}", self.selection.as_str());
        let _ = writeln!(s, "S = {}", self.groups.len());
        let _ = writeln!(s, "groups = {}", join(&self.groups));
        for (s_idx, kc) in self.groups.iter().zip(&self.group_constants) {
            let _ = writeln!(s, "K_{s_idx} = {:.16e} {:.16e}", kc.re, kc.im);
        }
        for (i, res) in self.residuals.iter().enumerate() {
            let _ = writeln!(s, "residual_{} = {:?}", i + 1, res);
        }
        let _ = writeln!(s, "unit_residual = {:?}", self.unit_residual);
        let _ = writeln!(s, "sigma_min = {:?}", self.sigma_min);
        let _ = writeln!(s, "frobenius = {:?}", self.frobenius);
        let _ = writeln!(s, "tolerance = {:?}", self.tolerance);
        let _ = writeln!(s, "kernel_dimension = {}", self.kernel_dimension());
        let _ = writeln!(s, "rank_bound = {}", self.claimed_rank_bound());
        match &self.status {
            CertificateStatus::Verified => {
                let _ = writeln!(s, "status = verified");
            }
            CertificateStatus::Failed(why) => {
                let _ = writeln!(s, "status = failed: {why}");
            }
        }
        s
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_record())
    }
}

/// Assembles `Φ(x₀, 0)`, the vectors `v_s` and the kernel, and checks them.
pub fn build_certificate(n: usize, params: ObstructionParams, b: &Rational) -> Result<Certificate> {
    let witness = find_x0(n, params, b)?;
    let spline = build_bspline(n)?;
    assemble(&spline, params, b, &witness.x0, witness.groups, witness.selection)
}

fn assemble(
    spline: &PiecewisePolynomial,
    params: ObstructionParams,
    b: &Rational,
    x0: &Rational,
    groups: Vec<u64>,
    selection: GroupSelection,
) -> Result<Certificate> {
    let n = spline.order();
    let a = params.density() / b;
    let lat = LatticeParams::new(a.clone(), b.clone())?;
    if (lat.p(), lat.q()) != (params.p(), params.q()) {
        return Err(Error::PreconditionViolated(format!(
            "lattice density {}/{} does not match p/q = {}/{}",
            lat.p(),
            lat.q(),
            params.p(),
            params.q()
        )));
    }
    let phi = zz_matrix(spline, &lat, &ZZPoint::new(x0, &Rational::zero()));
    let frobenius = phi.frobenius_norm();
    let tolerance = zero_tolerance(frobenius);
    let (mu, r, q) = (params.mu() as usize, params.r() as usize, params.q() as usize);

    let mut constants = Vec::with_capacity(groups.len());
    let mut v_vectors = Vec::with_capacity(groups.len());
    let mut unit_residual: f64 = 0.0;
    for &s in &groups {
        let cols: Vec<usize> = (0..r).map(|l| l * mu + s as usize).collect();
        let k_s: Complex64 = cols.iter().map(|&c| phi.entries[(0, c)]).sum();
        if k_s.norm() <= tolerance {
            return Err(Error::DegenerateConstant { group: s as usize, modulus: k_s.norm() });
        }
        let mut v = vec![Complex64::zero(); q];
        for &c in &cols {
            v[c] = Complex64::new(1.0, 0.0) / k_s;
        }
        let image = phi.apply(&v);
        let dev = image
            .iter()
            .enumerate()
            .map(|(row, z)| if row == 0 { (z - 1.0).norm() } else { z.norm() })
            .fold(0.0, f64::max);
        unit_residual = unit_residual.max(dev);
        constants.push(k_s);
        v_vectors.push(v);
    }

    let base = &v_vectors[0];
    let kernel_vectors: Vec<Vec<Complex64>> = v_vectors[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(x, y)| x - y).collect())
        .collect();
    let residuals: Vec<f64> = kernel_vectors
        .iter()
        .map(|w| phi.apply(w).iter().map(|z| z.norm()).fold(0.0, f64::max))
        .collect();
    let sigma = sigma_min(&phi.entries);

    let required = params.q() - params.p() + 1;
    let max_res = residuals.iter().copied().fold(0.0, f64::max);
    let status = if (kernel_vectors.len() as u64) < required {
        CertificateStatus::Failed(format!("only {} kernel vectors, need {required}", kernel_vectors.len()))
    } else if unit_residual > tolerance {
        CertificateStatus::Failed(format!("|Φ v_s - e_0| = {unit_residual:e} exceeds {tolerance:e}"))
    } else if max_res > tolerance {
        CertificateStatus::Failed(format!("kernel residual {max_res:e} exceeds {tolerance:e}"))
    } else if sigma > tolerance {
        CertificateStatus::Failed(format!("σ_min = {sigma:e} exceeds {tolerance:e}"))
    } else {
        CertificateStatus::Verified
    };

    Ok(Certificate {
        n,
        params,
        a,
        b: b.clone(),
        x0: x0.clone(),
        selection,
        groups,
        group_constants: constants,
        kernel_vectors,
        residuals,
        unit_residual,
        sigma_min: sigma,
        frobenius,
        tolerance,
        status,
    })
}

#[derive(Clone, Debug)]
pub enum CertifyOutcome {
    Certified(Box<Certificate>),
    /// No segment of `H` contains `(a, b)`; lists the `(r, μ)` factorizations
    /// of `q` that were examined.
    NotInH { p: u64, q: u64, examined: Vec<(u64, u64)> },
}

/// Locates the segment of `H` containing `(a, b)`, if any, and certifies it.
pub fn certify_nonframe(n: usize, a: &Rational, b: &Rational) -> Result<CertifyOutcome> {
    let lat = LatticeParams::new(a.clone(), b.clone())?;
    let (candidates, examined) = params_on_hyperbola(lat.p(), lat.q());
    for params in candidates {
        if segment_h(params, n).contains_b(b) {
            return build_certificate(n, params, b).map(|c| CertifyOutcome::Certified(Box::new(c)));
        }
    }
    Ok(CertifyOutcome::NotInH { p: lat.p(), q: lat.q(), examined })
}

/// Re-checks a serialized certificate from its exact fields alone.
///
/// Rebuilds `Φ(x₀, 0)` from `n`, `a`, `b` and `x₀`, recomputes every `K_s`
/// from the recorded groups and returns the fresh certificate.
pub fn reverify_record(record: &str) -> Result<Certificate> {
    let mut fields = std::collections::BTreeMap::new();
    for line in record.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(" = ")
            .ok_or_else(|| Error::MalformedRecord(format!("expected `key = value`, got {line:?}")))?;
        fields.insert(key.trim().to_string(), value.trim().to_string());
    }
    let get = |key: &str| fields.get(key).ok_or_else(|| Error::MalformedRecord(format!("missing field {key}")));
    let int_field = |key: &str| -> Result<u64> {
        get(key)?.parse().map_err(|_| Error::MalformedRecord(format!("field {key} is not an integer")))
    };
    let n = int_field("n")? as usize;
    let params = ObstructionParams::new(int_field("mu")?, int_field("r")?, int_field("k")?)?;
    let a = parse_rational(get("a")?)?;
    let b = parse_rational(get("b")?)?;
    let x0 = parse_rational(get("x0")?)?;
    if a.is_negative() || &a * &b != params.density() {
        return Err(Error::MalformedRecord("a·b does not equal p/q".into()));
    }
    let selection = match get("selection")?.as_str() {
        "literal" => GroupSelection::Literal,
        "consecutive" => GroupSelection::Consecutive,
        other => return Err(Error::MalformedRecord(format!("unknown selection {other}"))),
    };
    let groups: Vec<u64> = get("groups")?
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::MalformedRecord("bad group list".into())))
        .collect::<Result<_>>()?;
    if groups.is_empty() || groups.iter().any(|s| *s >= params.mu()) {
        return Err(Error::MalformedRecord("group offsets must lie in 0..μ".into()));
    }
    check_on_segment(n, params, &b)?;
    let spline = build_bspline(n)?;
    assemble(&spline, params, &b, &x0, groups, selection)
}
