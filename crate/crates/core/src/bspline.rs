//! Cardinal B-splines `N_n` as exact piecewise polynomials.
//!
//! `N_1` is the indicator of `[0, 1)`; `N_{n+1}(x) = ∫_{x-1}^{x} N_n(t) dt`.
//! The right-open indicator keeps `∑_k N_1(x + k) = 1` exact at integers.
//! Since every statement about the Gabor system holds almost everywhere, the
//! choice at the jump points does not matter for the mathematics, but it does
//! make the exact identities below hold at every rational probe.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::circle::CircleIntervalSet;
use crate::error::{Error, Result};
use crate::rational::{ceil_int, floor_int, int, signed_frac, Rational};

/// `N_n` with one polynomial per unit interval `[j, j+1)`, `j = 0..n`.
///
/// `pieces[j][i]` is the coefficient of `t^i`, where `t = x - j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    order: usize,
    pieces: Vec<Vec<Rational>>,
    /// The same coefficients over the common denominator `scaled_den`, when
    /// they fit in `i128`.
    scaled: Option<(Vec<Vec<i128>>, i128)>,
}

impl PiecewisePolynomial {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn pieces(&self) -> &[Vec<Rational>] {
        &self.pieces
    }

    /// Exact value at `x`; zero outside `[0, n)`.
    pub fn eval(&self, x: &Rational) -> Rational {
        if x.is_negative() {
            return Rational::zero();
        }
        let j = floor_int(x);
        let idx = match usize::try_from(&j) {
            Ok(i) if i < self.order => i,
            _ => return Rational::zero(),
        };
        let t = x - Rational::from_integer(j);
        horner(&self.pieces[idx], &t)
    }

    /// Value at `num/den` (`den > 0`) in double precision.
    ///
    /// The value is formed exactly as an `i128` fraction and rounded once per
    /// operand at the final division. Returns `None` if an intermediate would
    /// overflow, in which case callers fall back to [`Self::eval`].
    pub fn eval_ratio_f64(&self, num: i128, den: i128) -> Option<f64> {
        let (coeffs, cden) = self.scaled.as_ref()?;
        if num < 0 {
            return Some(0.0);
        }
        let j = num / den;
        if j >= self.order as i128 {
            return Some(0.0);
        }
        let rem = num - j * den;
        let piece = &coeffs[j as usize];
        // ∑ a_i rem^i den^{d-i} / (cden · den^d)
        let degree = piece.len() as u32 - 1;
        let mut numer: i128 = 0;
        let mut rem_pow: i128 = 1;
        for (i, a) in piece.iter().enumerate() {
            let den_pow = den.checked_pow(degree - i as u32)?;
            numer = numer.checked_add(a.checked_mul(rem_pow)?.checked_mul(den_pow)?)?;
            if i < degree as usize {
                rem_pow = rem_pow.checked_mul(rem)?;
            }
        }
        let denom = cden.checked_mul(den.checked_pow(degree)?)?;
        Some(numer as f64 / denom as f64)
    }

    /// Exact integral of piece `j` over `[j, j+1]`.
    pub fn piece_integral(&self, j: usize) -> Rational {
        self.pieces[j].iter().enumerate().map(|(i, c)| c / int(i as i64 + 1)).sum()
    }

    /// Antiderivative `F(x) = ∫_0^x N_n`, exact.
    pub fn antiderivative(&self, x: &Rational) -> Rational {
        if !x.is_positive() {
            return Rational::zero();
        }
        let j = floor_int(x);
        let idx = match usize::try_from(&j) {
            Ok(i) if i < self.order => i,
            _ => return Rational::one(),
        };
        let before: Rational = (0..idx).map(|i| self.piece_integral(i)).sum();
        let t = x - Rational::from_integer(j);
        before + horner(&integrate(&self.pieces[idx]), &t)
    }
}

fn horner(coeffs: &[Rational], t: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

/// Coefficients of `∫_0^t P(s) ds`.
fn integrate(coeffs: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(coeffs.len() + 1);
    out.push(Rational::zero());
    for (i, c) in coeffs.iter().enumerate() {
        out.push(c / int(i as i64 + 1));
    }
    out
}

/// Builds `N_n` by repeated running integration of `N_1`.
pub fn build_bspline(n: usize) -> Result<PiecewisePolynomial> {
    if n == 0 {
        return Err(Error::PreconditionViolated("B-spline order must be at least 1".into()));
    }
    let mut pieces: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for order in 1..n {
        // G_j(t) = F(j + t) for the current order; G_order = 1, G_{-1} = 0.
        let mut g: Vec<Vec<Rational>> = Vec::with_capacity(order + 1);
        let mut carry = Rational::zero();
        for piece in &pieces {
            let mut anti = integrate(piece);
            anti[0] = carry.clone();
            carry = horner(&anti, &Rational::one());
            g.push(anti);
        }
        g.push(vec![Rational::one()]);
        let mut next = Vec::with_capacity(order + 1);
        for j in 0..=order {
            let mut coeffs = vec![Rational::zero(); order + 1];
            for (i, c) in g[j].iter().enumerate() {
                coeffs[i] += c;
            }
            if j > 0 {
                for (i, c) in g[j - 1].iter().enumerate() {
                    coeffs[i] -= c;
                }
            }
            next.push(coeffs);
        }
        pieces = next;
    }
    let scaled = scale_to_integers(&pieces);
    Ok(PiecewisePolynomial { order: n, pieces, scaled })
}

fn scale_to_integers(pieces: &[Vec<Rational>]) -> Option<(Vec<Vec<i128>>, i128)> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let den = pieces.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled = pieces
        .iter()
        .map(|piece| {
            piece
                .iter()
                .map(|c| (c.numer() * (&den / c.denom())).to_i128())
                .collect::<Option<Vec<i128>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Some((scaled, den.to_i128()?))
}

/// Free-function form of [`PiecewisePolynomial::eval`].
pub fn eval(spline: &PiecewisePolynomial, x: &Rational) -> Rational {
    spline.eval(x)
}

/// `∑_k N_n((x + k)/c)`, summed over the finitely many `k` in the support.
pub fn periodization(spline: &PiecewisePolynomial, c: &Rational, x: &Rational) -> Rational {
    assert!(c.is_positive(), "dilation must be positive");
    let n = int(spline.order() as i64);
    // 0 <= (x + k)/c < n  <=>  -x <= k < n c - x
    let k_lo = ceil_int(&-x);
    let k_hi = ceil_int(&(&n * c - x));
    let mut sum = Rational::zero();
    let mut k = k_lo;
    while k < k_hi {
        sum += spline.eval(&((x + Rational::from_integer(k.clone())) / c));
        k += BigInt::one();
    }
    sum
}

/// Region (mod 1) on which `∑_k N_n((x + k)/c)` is constant, for `c` within
/// `offset` of an integer: `[n·offset, 1]` for `offset >= 0`, otherwise
/// `[0, 1 + n·offset]`.
pub fn constancy_region(n: usize, offset: &Rational) -> Result<CircleIntervalSet> {
    let n_r = int(n as i64);
    if offset.abs() * &n_r > Rational::one() {
        return Err(Error::PreconditionViolated(format!(
            "offset {offset} exceeds 1/{n} in magnitude"
        )));
    }
    if offset.is_zero() {
        return Ok(CircleIntervalSet::full());
    }
    let shifted = &n_r * offset;
    Ok(if offset.is_positive() {
        CircleIntervalSet::arc(&shifted, &Rational::one())
    } else {
        CircleIntervalSet::arc(&Rational::zero(), &(Rational::one() + shifted))
    })
}

/// Constancy region of the dilated periodization, keyed on `{c}`.
pub fn pou_region(n: usize, c: &Rational) -> Result<CircleIntervalSet> {
    if !c.is_positive() {
        return Err(Error::PreconditionViolated("dilation must be positive".into()));
    }
    constancy_region(n, &signed_frac(c))
}

#[derive(Clone, Debug)]
pub struct PouReport {
    pub n: usize,
    pub c: Rational,
    pub region: CircleIntervalSet,
    pub probes: Vec<Rational>,
    /// Value shared by every probe, if they agree.
    pub constant: Option<Rational>,
    pub pass: bool,
}

/// Deterministic probes spread across `region`.
///
/// Each arc receives stratified interior points `start + (i + 1/2)/m · len`.
/// For `n >= 2` the arc endpoints are added as well. `N_1` jumps exactly at
/// the region boundary, and constancy there holds only almost everywhere, so
/// endpoints are left out for `n = 1`.
pub fn region_probes(region: &CircleIntervalSet, count: usize, include_endpoints: bool) -> Vec<Rational> {
    let arcs = region.arcs();
    if arcs.is_empty() || count == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(count + 2 * arcs.len());
    let per_arc = count.div_ceil(arcs.len()).max(1);
    for arc in &arcs {
        if arc.length.is_zero() {
            out.push(arc.start.clone());
            continue;
        }
        let m = int(per_arc as i64);
        for i in 0..per_arc {
            let t = (int(2 * i as i64 + 1)) / (int(2) * &m);
            out.push(&arc.start + t * &arc.length);
        }
        if include_endpoints {
            out.push(arc.start.clone());
            out.push(&arc.start + &arc.length);
        }
    }
    out
}

/// Checks exact constancy of the dilated periodization over its region.
pub fn verify_partly_pou(n: usize, c: &Rational, sample_count: usize) -> Result<PouReport> {
    let spline = build_bspline(n)?;
    let region = pou_region(n, c)?;
    let probes = region_probes(&region, sample_count, n >= 2);
    let mut values = probes.iter().map(|x| periodization(&spline, c, x));
    let first = values.next();
    let pass = match &first {
        Some(v0) => values.all(|v| &v == v0),
        None => false,
    };
    Ok(PouReport {
        n,
        c: c.clone(),
        region,
        probes,
        constant: if pass { first } else { None },
        pass,
    })
}
