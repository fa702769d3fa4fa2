//! Zak transform of B-splines and the Zibulski–Zeevi matrix of a rationally
//! oversampled lattice.
//!
//! Spline arguments are formed exactly; only the spline values (exact
//! rationals) and the unit phases `e^{2πiθ}` meet in double precision. Phase
//! angles are reduced modulo 1 in exact arithmetic before `sin`/`cos`.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::bspline::{constancy_region, PiecewisePolynomial};
use crate::circle::CircleIntervalSet;
use crate::error::{Error, Result};
use crate::rational::{floor_int, frac_part, int, to_f64, Rational};

/// Lattice `aZ x bZ` with `ab = p/q`, `gcd(p, q) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeParams {
    a: Rational,
    b: Rational,
    p: u64,
    q: u64,
}

impl LatticeParams {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::PreconditionViolated("lattice constants must be positive".into()));
        }
        let ab = &a * &b;
        let p = ab.numer().to_u64();
        let q = ab.denom().to_u64();
        match (p, q) {
            (Some(p), Some(q)) => Ok(Self { a, b, p, q }),
            _ => Err(Error::PreconditionViolated(format!("density {ab} too large"))),
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `ab` as an exact fraction.
    pub fn density(&self) -> Rational {
        &self.a * &self.b
    }
}

/// A point of the unit torus, both coordinates reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZZPoint {
    x: Rational,
    gamma: Rational,
}

impl ZZPoint {
    pub fn new(x: &Rational, gamma: &Rational) -> Self {
        Self { x: frac_part(x), gamma: frac_part(gamma) }
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }
}

/// `e^{2πi·frac(z·theta)}` with the product reduced exactly.
fn unit_phase(z: &BigInt, theta: &Rational) -> Complex64 {
    let num = (theta.numer() * z).mod_floor(theta.denom());
    let t = to_f64(&Rational::new(num, theta.denom().clone()));
    Complex64::from_polar(1.0, TAU * t)
}

/// Nonzero terms `(k, N_n(λ(x - k)))` of the Zak sum.
fn zak_terms(spline: &PiecewisePolynomial, lambda: &Rational, x: &Rational) -> Vec<(BigInt, f64)> {
    // 0 <= λ(x - k) < n  <=>  x - n/λ < k <= x
    let n = int(spline.order() as i64);
    let hi = floor_int(x);
    let lo = floor_int(&(x - n / lambda)) + BigInt::one();
    if let Some(terms) = zak_terms_i128(spline, lambda, x, &lo, &hi) {
        return terms;
    }
    let mut out = Vec::new();
    let mut k = lo;
    while k <= hi {
        let v = spline.eval(&(lambda * (x - Rational::from_integer(k.clone()))));
        if !v.is_zero() {
            out.push((k.clone(), to_f64(&v)));
        }
        k += BigInt::one();
    }
    out
}

/// Same terms over the common denominator `D` of `λx` and `λ`:
/// `λ(x - k) = (λx·D - k·λD)/D`, all in `i128`.
fn zak_terms_i128(
    spline: &PiecewisePolynomial,
    lambda: &Rational,
    x: &Rational,
    lo: &BigInt,
    hi: &BigInt,
) -> Option<Vec<(BigInt, f64)>> {
    let lx = lambda * x;
    let den = lx.denom().lcm(lambda.denom());
    let base = (lx.numer() * (&den / lx.denom())).to_i128()?;
    let step = (lambda.numer() * (&den / lambda.denom())).to_i128()?;
    let den = den.to_i128()?;
    let (lo, hi) = (lo.to_i128()?, hi.to_i128()?);
    let mut out = Vec::with_capacity((hi - lo + 1).max(0) as usize);
    for k in lo..=hi {
        let num = base.checked_sub(k.checked_mul(step)?)?;
        let v = spline.eval_ratio_f64(num, den)?;
        if v != 0.0 {
            out.push((BigInt::from(k), v));
        }
    }
    Some(out)
}

/// `(Z_λ N_n)(x, γ) = √λ ∑_k N_n(λ(x - k)) e^{2πikγ}`.
pub fn zak_eval(spline: &PiecewisePolynomial, lambda: &Rational, x: &Rational, gamma: &Rational) -> Complex64 {
    assert!(lambda.is_positive(), "Zak parameter must be positive");
    let sum: Complex64 = zak_terms(spline, lambda, x)
        .into_iter()
        .map(|(k, w)| unit_phase(&k, gamma) * w)
        .sum();
    sum * to_f64(lambda).sqrt()
}

/// The `p x q` Zibulski–Zeevi matrix at one torus point.
#[derive(Clone, Debug)]
pub struct ZZMatrix {
    pub n: usize,
    pub lattice: LatticeParams,
    pub point: ZZPoint,
    pub entries: DMatrix<Complex64>,
}

impl ZZMatrix {
    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn cols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm()
    }

    /// `Φ v` for a length-`q` vector.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols());
        (0..self.rows())
            .map(|k| (0..self.cols()).map(|l| self.entries[(k, l)] * v[l]).sum())
            .collect()
    }
}

/// Column `φ_ℓ(x, γ)` of the Zibulski–Zeevi matrix.
pub fn zz_column(
    spline: &PiecewisePolynomial,
    lat: &LatticeParams,
    x: &Rational,
    gamma: &Rational,
    ell: u64,
) -> Vec<Complex64> {
    let roots = roots_of_unity(lat.p());
    zz_column_with(spline, lat, x, gamma, ell, &roots)
}

/// `e^{2πij/p}` for `j = 0..p`.
fn roots_of_unity(p: u64) -> Vec<Complex64> {
    (0..p).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / p as f64)).collect()
}

fn zz_column_with(
    spline: &PiecewisePolynomial,
    lat: &LatticeParams,
    x: &Rational,
    gamma: &Rational,
    ell: u64,
    roots: &[Complex64],
) -> Vec<Complex64> {
    let p = lat.p();
    let lambda = lat.b().recip();
    let arg = x - int(ell as i64) * Rational::new(BigInt::from(p), BigInt::from(lat.q()));
    // e^{2πiz(γ + k/p)} = e^{2πizγ} · ω^{(z mod p)·k}
    let terms: Vec<(u64, Complex64)> = zak_terms(spline, &lambda, &arg)
        .into_iter()
        .map(|(z, w)| {
            let residue = z.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p");
            (residue, unit_phase(&z, gamma) * w)
        })
        .collect();
    let scale = (to_f64(&lambda) / p as f64).sqrt();
    (0..p)
        .map(|k| {
            let s: Complex64 = terms.iter().map(|(res, t)| roots[((res * k) % p) as usize] * t).sum();
            s * scale
        })
        .collect()
}

/// Entry `(k, ℓ)` is `p^{-1/2} (Z_{1/b} N_n)(x - ℓp/q, γ + k/p)`.
pub fn zz_matrix(spline: &PiecewisePolynomial, lat: &LatticeParams, pt: &ZZPoint) -> ZZMatrix {
    let p = lat.p() as usize;
    let q = lat.q() as usize;
    let mut entries = DMatrix::<Complex64>::zeros(p, q);
    let roots = roots_of_unity(lat.p());
    for ell in 0..q {
        let col = zz_column_with(spline, lat, pt.x(), pt.gamma(), ell as u64, &roots);
        for (k, v) in col.into_iter().enumerate() {
            entries[(k, ell)] = v;
        }
    }
    ZZMatrix { n: spline.order(), lattice: lat.clone(), point: pt.clone(), entries }
}

/// Smallest singular value of a `rows x cols` matrix, read as the lower
/// frame bound of its columns in `C^rows`. When `rows > cols` the columns
/// cannot span, and the result is `0`.
pub fn sigma_min(m: &DMatrix<Complex64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    if m.nrows() > m.ncols() {
        return 0.0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    sv.iter().copied().fold(f64::INFINITY, f64::min)
}

pub fn smallest_singular_value(m: &ZZMatrix) -> f64 {
    sigma_min(&m.entries)
}

/// `τ = 1e-9 · max(1, ‖Φ‖_F)`: anything at or below counts as zero.
pub fn zero_tolerance(frobenius: f64) -> f64 {
    1e-9 * frobenius.max(1.0)
}

/// Sum of the `r` columns `ℓμ`, `ℓ = 0..r`, evaluated at `(x/r, 0)`.
#[derive(Clone, Debug)]
pub struct GroupSum {
    pub values: Vec<Complex64>,
    /// Offset `δ = rb - p` of `rb` from the integer `p`.
    pub offset: Rational,
    /// Region (in the variable `x`, mod 1) where the sum collapses to `K e_0`.
    pub region: CircleIntervalSet,
    pub in_region: bool,
}

impl GroupSum {
    /// `K`, the first component, when `x` lies in the cancellation region.
    pub fn constant(&self) -> Option<Complex64> {
        self.in_region.then(|| self.values[0])
    }

    /// Largest modulus among components `1..p`.
    pub fn off_axis_max(&self) -> f64 {
        self.values.iter().skip(1).map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// The cancellation region for the column-group sums: `[nδ, 1]` when
/// `δ = rb - p >= 0`, `[0, 1 + nδ]` otherwise.
pub fn group_region(n: usize, lat: &LatticeParams, r: u64) -> Result<(Rational, CircleIntervalSet)> {
    let offset = int(r as i64) * lat.b() - int(lat.p() as i64);
    let region = constancy_region(n, &offset).map_err(|_| {
        Error::PreconditionViolated(format!("|rb - p| = |{offset}| exceeds 1/{n}"))
    })?;
    Ok((offset, region))
}

/// `∑_{ℓ=0}^{r-1} φ_{ℓμ}(x/r, 0)`.
pub fn column_group_sum(
    spline: &PiecewisePolynomial,
    lat: &LatticeParams,
    mu: u64,
    r: u64,
    x: &Rational,
) -> Result<GroupSum> {
    if r * mu != lat.q() {
        return Err(Error::PreconditionViolated(format!("q = {} is not r·μ = {}", lat.q(), r * mu)));
    }
    let (offset, region) = group_region(spline.order(), lat, r)?;
    let x_scaled = x / int(r as i64);
    let mut values = vec![Complex64::zero(); lat.p() as usize];
    let roots = roots_of_unity(lat.p());
    for ell in 0..r {
        let col = zz_column_with(spline, lat, &x_scaled, &Rational::zero(), ell * mu, &roots);
        for (acc, v) in values.iter_mut().zip(col) {
            *acc += v;
        }
    }
    let in_region = region.contains(x);
    Ok(GroupSum { values, offset, region, in_region })
}

/// Smallest singular values over the grid `{(i/M, j/M)}`.
#[derive(Clone, Debug)]
pub struct ScanResult {
    pub resolution: usize,
    /// Row-major: `values[i * M + j]` is at `x = i/M`, `γ = j/M`.
    pub values: Vec<f64>,
    pub argmin: (usize, usize),
    pub min: f64,
}

impl ScanResult {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.resolution + j]
    }
}

/// Grid search for the smallest `σ_min(Φ(x, γ))`.
///
/// This is evidence, not proof: the frame property is an almost-everywhere
/// statement about a continuum of points. Cells are evaluated in parallel and
/// the argmin tie-break is the lexicographically smallest `(i, j)`.
pub fn scan(spline: &PiecewisePolynomial, lat: &LatticeParams, resolution: usize) -> Result<ScanResult> {
    if resolution < 2 {
        return Err(Error::PreconditionViolated("grid resolution must be at least 2".into()));
    }
    let m = resolution;
    let denom = int(m as i64);
    let values: Vec<f64> = (0..m * m)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / m, idx % m);
            let pt = ZZPoint::new(&(int(i as i64) / &denom), &(int(j as i64) / &denom));
            smallest_singular_value(&zz_matrix(spline, lat, &pt))
        })
        .collect();
    let mut best = 0;
    for (idx, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = idx;
        }
    }
    Ok(ScanResult { resolution: m, min: values[best], argmin: (best / m, best % m), values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bspline::build_bspline;
    use crate::rational::rat;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn zak_examples() {
        let n1 = build_bspline(1).unwrap();
        let n2 = build_bspline(2).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert!(close(zak_eval(&n1, &int(1), &rat(1, 2), &rat(1, 3)), one, 1e-15));
        assert!(close(zak_eval(&n2, &int(1), &rat(1, 2), &rat(1, 2)), Complex64::zero(), 1e-15));
        assert!(close(zak_eval(&n2, &int(1), &int(1), &int(0)), one, 1e-15));
    }

    #[test]
    fn zak_brute_force() {
        // direct sum over a generous window, independent of the support logic
        let n3 = build_bspline(3).unwrap();
        let lambda = rat(2, 5);
        let (x, g) = (rat(7, 3), rat(2, 9));
        let mut s = Complex64::zero();
        for k in -40i64..40 {
            let v = to_f64(&n3.eval(&(&lambda * (&x - int(k)))));
            s += Complex64::from_polar(v, TAU * k as f64 * to_f64(&g));
        }
        s *= to_f64(&lambda).sqrt();
        assert!(close(zak_eval(&n3, &lambda, &x, &g), s, 1e-13));
    }

    #[test]
    fn lattice_reduces_density() {
        let lat = LatticeParams::new(rat(1, 3), rat(5, 2)).unwrap();
        assert_eq!((lat.p(), lat.q()), (5, 6));
        let lat = LatticeParams::new(rat(2, 4), int(2)).unwrap();
        assert_eq!((lat.p(), lat.q()), (1, 1));
        assert!(LatticeParams::new(int(0), int(1)).is_err());
    }

    #[test]
    fn zz_shapes_and_unit_case() {
        let n2 = build_bspline(2).unwrap();
        let lat = LatticeParams::new(rat(1, 3), rat(5, 2)).unwrap();
        let m = zz_matrix(&n2, &lat, &ZZPoint::new(&int(0), &int(0)));
        assert_eq!((m.rows(), m.cols()), (5, 6));
        assert_eq!(m.lattice, lat);

        let n1 = build_bspline(1).unwrap();
        let lat = LatticeParams::new(int(1), int(1)).unwrap();
        let m = zz_matrix(&n1, &lat, &ZZPoint::new(&rat(1, 2), &rat(1, 2)));
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!((m.entries[(0, 0)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn point_reduction() {
        let pt = ZZPoint::new(&rat(7, 3), &rat(-1, 4));
        assert_eq!(pt.x(), &rat(1, 3));
        assert_eq!(pt.gamma(), &rat(3, 4));
    }

    #[test]
    fn sigma_min_basics() {
        let z = DMatrix::<Complex64>::zeros(2, 3);
        assert_eq!(sigma_min(&z), 0.0);
        let mut e = DMatrix::<Complex64>::zeros(2, 3);
        e[(0, 0)] = Complex64::new(1.0, 0.0);
        e[(1, 1)] = Complex64::new(1.0, 0.0);
        assert!((sigma_min(&e) - 1.0).abs() < 1e-15);
        assert_eq!(sigma_min(&DMatrix::<Complex64>::identity(3, 2)), 0.0);
    }

    #[test]
    fn group_sum_center_example() {
        let n2 = build_bspline(2).unwrap();
        let lat = LatticeParams::new(rat(1, 3), rat(5, 2)).unwrap();
        let g = column_group_sum(&n2, &lat, 3, 2, &rat(1, 2)).unwrap();
        assert!(g.in_region);
        let k = g.constant().unwrap();
        assert!((k - Complex64::new(2f64.sqrt(), 0.0)).norm() < 1e-12);
        assert!(g.off_axis_max() < 1e-12);
        // q = 6 = 3·2 but 3b - p = 5/2 is far from an integer
        assert!(column_group_sum(&n2, &lat, 2, 3, &rat(1, 2)).is_err());
        assert!(column_group_sum(&n2, &lat, 4, 2, &rat(1, 2)).is_err());
    }

    #[test]
    fn group_sum_matches_matrix_columns() {
        let n2 = build_bspline(2).unwrap();
        let lat = LatticeParams::new(rat(1, 3), rat(5, 2)).unwrap();
        let x = rat(1, 2);
        let g = column_group_sum(&n2, &lat, 3, 2, &x).unwrap();
        let m = zz_matrix(&n2, &lat, &ZZPoint::new(&(x / int(2)), &int(0)));
        for k in 0..5 {
            let direct = m.entries[(k, 0)] + m.entries[(k, 3)];
            assert!((direct - g.values[k]).norm() < 1e-13);
        }
    }

    #[test]
    fn group_sum_outside_region() {
        // b = 31/12: rb - p = 1/6, region [1/3, 1]
        let n2 = build_bspline(2).unwrap();
        let lat = LatticeParams::new(rat(5, 6) / rat(31, 12), rat(31, 12)).unwrap();
        let g = column_group_sum(&n2, &lat, 3, 2, &rat(1, 6)).unwrap();
        assert!(!g.in_region);
        assert!(g.constant().is_none());
        let g = column_group_sum(&n2, &lat, 3, 2, &rat(2, 3)).unwrap();
        assert!(g.in_region);
        assert!(g.off_axis_max() < 1e-12);
    }

    #[test]
    fn scan_tiny_grid() {
        let n2 = build_bspline(2).unwrap();
        let lat = LatticeParams::new(rat(1, 3), rat(1, 2)).unwrap();
        let s = scan(&n2, &lat, 2).unwrap();
        assert_eq!(s.values.len(), 4);
        assert_eq!(s.min, s.at(s.argmin.0, s.argmin.1));
        assert!(s.values.iter().all(|v| *v >= s.min));
        assert!(scan(&n2, &lat, 1).is_err());
    }
}
