//! The obstruction geometry: the point set `P`, its hyperbolic segments `H`,
//! the comparison families, the Janssen tie tiles and the local gap bounds.
//!
//! Everything here is exact. Enumerations are returned in `(μ, r, k)`
//! lexicographic order.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{floor_int, int, rat, signed_frac, to_i64, Rational};

/// One point `(1/μ, μ - k/r)` of `P`, with `ab = p/q`, `p = rμ - k`, `q = rμ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObstructionParams {
    mu: u64,
    r: u64,
    k: u64,
}

impl ObstructionParams {
    /// Validates `μ >= 3`, `r >= 2`, `1 <= k <= μ - 2`, `gcd(k, μ) = gcd(k, r) = 1`.
    pub fn new(mu: u64, r: u64, k: u64) -> Result<Self> {
        let bad = |why: &str| Err(Error::PreconditionViolated(format!("(μ, r, k) = ({mu}, {r}, {k}): {why}")));
        if mu < 3 {
            return bad("μ must be at least 3");
        }
        if r < 2 {
            return bad("r must be at least 2");
        }
        if k < 1 || k > mu - 2 {
            return bad("k must lie in 1..=μ-2");
        }
        if k.gcd(&mu) != 1 || k.gcd(&r) != 1 {
            return bad("k must be coprime to μ and r");
        }
        let params = Self { mu, r, k };
        debug_assert_eq!(params.p().gcd(&params.q()), 1);
        Ok(params)
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn p(&self) -> u64 {
        self.r * self.mu - self.k
    }

    pub fn q(&self) -> u64 {
        self.r * self.mu
    }

    pub fn a0(&self) -> Rational {
        rat(1, self.mu as i64)
    }

    pub fn b0(&self) -> Rational {
        int(self.mu as i64) - rat(self.k as i64, self.r as i64)
    }

    /// `a₀b₀ = p/q`.
    pub fn density(&self) -> Rational {
        rat(self.p() as i64, self.q() as i64)
    }
}

/// `(μ, ν, r, j)` with `p = rν + j`, `q = rμ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrochenigParams {
    pub mu: u64,
    pub nu: u64,
    pub r: u64,
    pub j: u64,
}

impl GrochenigParams {
    pub fn p(&self) -> u64 {
        self.r * self.nu + self.j
    }

    pub fn q(&self) -> u64 {
        self.r * self.mu
    }

    pub fn a0(&self) -> Rational {
        rat(1, self.mu as i64)
    }

    pub fn b0(&self) -> Rational {
        rat(self.p() as i64, self.r as i64)
    }
}

/// Largest `μ` for which some point of `P` can have `b₀ <= b_max`.
///
/// From `b₀ > (r-1)μ/r >= μ/2` every admissible `μ` is below `2 b_max`.
fn mu_ceiling(b_max: &Rational) -> u64 {
    let bound = floor_int(&(int(2) * b_max));
    to_i64(&Rational::from_integer(bound)).map_or(0, |v| v.max(0) as u64)
}

/// All `(μ, r, k)` with `b₀ <= b_max` and `r <= r_max`.
pub fn enum_p(b_max: &Rational, r_max: u64) -> Vec<ObstructionParams> {
    let mut out = Vec::new();
    for mu in 3..=mu_ceiling(b_max) {
        for r in 2..=r_max {
            for k in 1..=mu - 2 {
                if let Ok(params) = ObstructionParams::new(mu, r, k) {
                    if &params.b0() <= b_max {
                        out.push(params);
                    }
                }
            }
        }
    }
    out
}

/// All `(μ, ν, r, j)` with `gcd(p, q) = 1`, `q - μ + 1 < p < q`, `b₀ <= b_max`.
pub fn enum_p_grochenig(b_max: &Rational, r_max: u64) -> Vec<GrochenigParams> {
    let mut out = Vec::new();
    for mu in 1..=mu_ceiling(b_max) {
        for r in 2..=r_max {
            let q = r * mu;
            // q - μ + 1 < p < q
            let p_lo = (q + 2).saturating_sub(mu).max(1);
            for p in p_lo..q {
                if p.gcd(&q) != 1 || p % r == 0 {
                    continue;
                }
                let (nu, j) = p.div_rem(&r);
                if nu < 1 {
                    continue;
                }
                let g = GrochenigParams { mu, nu, r, j };
                if &g.b0() <= b_max {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Point sets `{(a₀, b₀)}` of both enumerations, for direct comparison.
pub fn point_set(params: &[ObstructionParams]) -> BTreeSet<(Rational, Rational)> {
    params.iter().map(|p| (p.a0(), p.b0())).collect()
}

pub fn point_set_grochenig(params: &[GrochenigParams]) -> BTreeSet<(Rational, Rational)> {
    params.iter().map(|p| (p.a0(), p.b0())).collect()
}

/// Every `(μ, r, k)` lying on the hyperbola `ab = p/q`.
///
/// These come from the factorizations `q = rμ` with `r >= 2`, `μ >= 3` and
/// `k = q - p`; the second component lists every factorization examined.
pub fn params_on_hyperbola(p: u64, q: u64) -> (Vec<ObstructionParams>, Vec<(u64, u64)>) {
    let mut found = Vec::new();
    let mut examined = Vec::new();
    if p == 0 || p >= q || p.gcd(&q) != 1 {
        return (found, examined);
    }
    let k = q - p;
    for mu in 3..=q / 2 {
        if !q.is_multiple_of(mu) {
            continue;
        }
        let r = q / mu;
        if r < 2 {
            continue;
        }
        examined.push((r, mu));
        if let Ok(params) = ObstructionParams::new(mu, r, k) {
            found.push(params);
        }
    }
    (found, examined)
}

/// `H_{(a₀,b₀)}`: the arc of `ab = p/q` with `|b - b₀| <= (μ-k-1)/(nq)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicSegment {
    pub center: ObstructionParams,
    pub n: usize,
    pub half_width: Rational,
    pub b_lo: Rational,
    pub b_hi: Rational,
    pub ab: Rational,
}

impl HyperbolicSegment {
    /// The `a` coordinate on this hyperbola at height `b`.
    pub fn a_at(&self, b: &Rational) -> Rational {
        &self.ab / b
    }

    pub fn contains_b(&self, b: &Rational) -> bool {
        &self.b_lo <= b && b <= &self.b_hi
    }

    /// Membership of a point `(a, b)`: on the hyperbola and within range.
    pub fn contains(&self, a: &Rational, b: &Rational) -> bool {
        a * b == self.ab && self.contains_b(b)
    }
}

fn segment_with_numerator(params: ObstructionParams, n: usize, width_numerator: u64) -> HyperbolicSegment {
    let half_width = rat(width_numerator as i64, (n as u64 * params.q()) as i64);
    let b0 = params.b0();
    HyperbolicSegment {
        center: params,
        n,
        b_lo: &b0 - &half_width,
        b_hi: &b0 + &half_width,
        half_width,
        ab: params.density(),
    }
}

pub fn segment_h(params: ObstructionParams, n: usize) -> HyperbolicSegment {
    assert!(n >= 1, "spline order must be positive");
    segment_with_numerator(params, n, params.mu() - params.k() - 1)
}

/// The same segment with the half-width numerator `μ - k` instead of
/// `μ - k - 1`. Used to probe how tight the tile containment is.
pub fn segment_h_widened(params: ObstructionParams, n: usize) -> HyperbolicSegment {
    assert!(n >= 1, "spline order must be positive");
    segment_with_numerator(params, n, params.mu() - params.k())
}

/// Membership in the older family `ab = p/q < 1`, `|{b}| <= 1/(nq)`, `b > 3/2`.
pub fn in_old_hyperbolas(n: usize, a: &Rational, b: &Rational) -> bool {
    let ab = a * b;
    if ab >= Rational::one() || !ab.is_positive() || b <= &rat(3, 2) {
        return false;
    }
    let q = ab.denom().clone();
    let bound = Rational::new(1.into(), q * n);
    signed_frac(b).abs() <= bound
}

/// One hat-spline segment `|b - b₀| <= (k-m)/(2(2m+1))` on
/// `ab = (2k+1)/(2(2m+1))`, centered at `(1/(2m+1), (2k+1)/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatSegment {
    pub m: u64,
    pub k: u64,
    pub a0: Rational,
    pub b0: Rational,
    pub ab: Rational,
    pub half_width: Rational,
    pub b_lo: Rational,
    pub b_hi: Rational,
}

pub fn ghosh_selvan_segment(m: u64, k: u64) -> Result<HatSegment> {
    if m < 1 || k <= m {
        return Err(Error::PreconditionViolated(format!("need 1 <= m < k, got m = {m}, k = {k}")));
    }
    let a0 = rat(1, (2 * m + 1) as i64);
    let b0 = rat((2 * k + 1) as i64, 2);
    let ab = &a0 * &b0;
    if ab >= Rational::one() {
        return Err(Error::PreconditionViolated(format!("a₀b₀ = {ab} is not below 1")));
    }
    let half_width = rat((k - m) as i64, (2 * (2 * m + 1)) as i64);
    Ok(HatSegment {
        m,
        k,
        b_lo: &b0 - &half_width,
        b_hi: &b0 + &half_width,
        a0,
        b0,
        ab,
        half_width,
    })
}

/// Membership in the tile `T_N`: `b(1+a) >= N+1`, `b(1-a) <= N`, `ab < 1`.
pub fn in_tile(a: &Rational, b: &Rational, tile: u64) -> bool {
    let n = int(tile as i64);
    let one = Rational::one();
    a * b < one && b * (&one + a) >= &n + &one && b * (&one - a) <= n
}

/// The tile `T_N`, `N >= 2`, containing `(a, b)`; the smaller `N` on a shared
/// boundary.
pub fn tile_of(a: &Rational, b: &Rational) -> Option<u64> {
    if !a.is_positive() || !b.is_positive() || a * b >= Rational::one() {
        return None;
    }
    let one = Rational::one();
    let lo = (b * (&one - a)).ceil();
    let hi = (b * (&one + a) - &one).floor();
    let lo = to_i64(&lo)?.max(2);
    let hi = to_i64(&hi)?;
    (lo..=hi).map(|t| t as u64).find(|t| in_tile(a, b, *t))
}

/// Proof intermediates and verdicts for the local gap bounds at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub params: ObstructionParams,
    /// `N = floor(b₀)`.
    pub floor_b0: u64,
    /// `M = μ - N`.
    pub m: i64,
    /// `X = r(μ - N) - k`, so that `b₀ - N = X/r`.
    pub x: i64,
    /// `Y = k - r(μ - N - 1)`, so that `N + 1 - b₀ = Y/r`.
    pub y: i64,
    pub lower_gap: Rational,
    pub upper_gap: Rational,
    /// `(μ - N)/(μ - 1)`.
    pub lower_bound: Rational,
    /// `(μ - N - 1)/(μ - 3)`, only defined when `μ >= N + 2`.
    pub upper_bound: Option<Rational>,
    pub lower_ok: bool,
    /// `None` when the upper bound does not apply (`μ = N + 1`).
    pub upper_ok: Option<bool>,
    /// `b₀ - N >= 1/N`.
    pub corollary_ok: bool,
    /// `N + 1 <= μ <= 2N + 1`.
    pub band_ok: bool,
}

impl GapReport {
    pub fn all_ok(&self) -> bool {
        self.lower_ok && self.upper_ok.unwrap_or(true) && self.corollary_ok && self.band_ok && self.x >= 1 && self.y >= 1
    }
}

pub fn local_gaps(params: ObstructionParams) -> GapReport {
    let b0 = params.b0();
    let floor_b0 = to_i64(&b0.floor()).expect("b₀ fits in i64");
    let (mu, r, k) = (params.mu() as i64, params.r() as i64, params.k() as i64);
    let m = mu - floor_b0;
    let x = r * m - k;
    let y = k - r * (m - 1);
    let lower_gap = &b0 - int(floor_b0);
    let upper_gap = int(floor_b0 + 1) - &b0;
    let lower_bound = rat(m, mu - 1);
    let upper_bound = (mu >= floor_b0 + 2).then(|| rat(m - 1, mu - 3));
    let upper_ok = upper_bound.as_ref().map(|ub| &upper_gap >= ub);
    GapReport {
        params,
        floor_b0: floor_b0 as u64,
        m,
        x,
        y,
        lower_ok: lower_gap >= lower_bound,
        corollary_ok: lower_gap >= rat(1, floor_b0),
        band_ok: floor_b0 < mu && mu <= 2 * floor_b0 + 1,
        lower_gap,
        upper_gap,
        lower_bound,
        upper_bound,
        upper_ok,
    }
}

/// Why a segment endpoint failed to land in its tile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentViolation {
    pub params: ObstructionParams,
    pub tile: u64,
    pub a: Rational,
    pub b: Rational,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct ContainmentReport {
    pub n: usize,
    pub widened: bool,
    pub checked: usize,
    /// Smallest slack `b_lo - (N + 1 - ab)` over all segments.
    pub min_lower_slack: Option<Rational>,
    /// Smallest slack `(N + ab) - b_hi` over all segments.
    pub min_upper_slack: Option<Rational>,
    pub gaps: Vec<GapReport>,
    pub violations: Vec<ContainmentViolation>,
}

impl ContainmentReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `P ⊂ H ⊂ T` segment by segment, in exact arithmetic.
pub fn verify_containment(b_max: &Rational, r_max: u64, n: usize, widen: bool) -> ContainmentReport {
    let mut report = ContainmentReport {
        n,
        widened: widen,
        checked: 0,
        min_lower_slack: None,
        min_upper_slack: None,
        gaps: Vec::new(),
        violations: Vec::new(),
    };
    for params in enum_p(b_max, r_max) {
        let seg = if widen { segment_h_widened(params, n) } else { segment_h(params, n) };
        let gaps = local_gaps(params);
        let tile = gaps.floor_b0;
        let b0 = params.b0();
        let mut violate = |a: Rational, b: Rational, reason: String| {
            report.violations.push(ContainmentViolation { params, tile, a, b, reason });
        };
        if !seg.contains(&params.a0(), &b0) {
            violate(params.a0(), b0.clone(), "center not on its own segment".into());
        }
        for b in [&seg.b_lo, &seg.b_hi] {
            let a = seg.a_at(b);
            if !in_tile(&a, b, tile) {
                violate(a, b.clone(), format!("endpoint outside T_{tile}"));
            }
        }
        let tile_r = int(tile as i64);
        let lower_slack = &seg.b_lo - (&tile_r + Rational::one() - &seg.ab);
        let upper_slack = (&tile_r + &seg.ab) - &seg.b_hi;
        if report.min_lower_slack.as_ref().is_none_or(|s| &lower_slack < s) {
            report.min_lower_slack = Some(lower_slack);
        }
        if report.min_upper_slack.as_ref().is_none_or(|s| &upper_slack < s) {
            report.min_upper_slack = Some(upper_slack);
        }
        report.gaps.push(gaps);
        report.checked += 1;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn params_validation() {
        assert!(ObstructionParams::new(3, 2, 1).is_ok());
        assert!(ObstructionParams::new(4, 2, 2).is_err());
        assert!(ObstructionParams::new(2, 2, 1).is_err());
        assert!(ObstructionParams::new(5, 1, 1).is_err());
        assert!(ObstructionParams::new(5, 4, 2).is_err());
        let p = ObstructionParams::new(3, 3, 1).unwrap();
        assert_eq!(p.b0(), rat(8, 3));
        assert_eq!((p.p(), p.q()), (8, 9));
    }

    #[test]
    fn enum_p_small() {
        let pts = enum_p(&int(15), 2);
        let mu3: Vec<_> = pts.iter().filter(|p| p.mu() == 3).collect();
        assert_eq!(mu3.len(), 1);
        assert_eq!((mu3[0].a0(), mu3[0].b0()), (rat(1, 3), rat(5, 2)));
        let pts = enum_p(&int(15), 10);
        assert!(pts.iter().filter(|p| p.mu() == 4).all(|p| p.k() == 1));
        assert_eq!(pts.iter().filter(|p| p.mu() == 4).count(), 9);
        assert!(pts.contains(&ObstructionParams::new(3, 3, 1).unwrap()));
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(sorted, pts);
    }

    #[test]
    fn grochenig_decomposition() {
        let g = enum_p_grochenig(&int(15), 2);
        let hit = g.iter().find(|g| g.mu == 3).unwrap();
        assert_eq!((hit.nu, hit.j, hit.p(), hit.q()), (2, 1, 5, 6));
        assert!(enum_p_grochenig(&int(2), 50).is_empty());
        assert!(enum_p(&int(2), 50).is_empty());
    }

    #[test]
    fn segment_examples() {
        let c = ObstructionParams::new(3, 2, 1).unwrap();
        let s2 = segment_h(c, 2);
        assert_eq!((s2.b_lo.clone(), s2.b_hi.clone()), (rat(29, 12), rat(31, 12)));
        let s4 = segment_h(c, 4);
        assert_eq!((s4.b_lo.clone(), s4.b_hi.clone()), (rat(59, 24), rat(61, 24)));
        let thin = segment_h(ObstructionParams::new(7, 2, 5).unwrap(), 3);
        assert_eq!(thin.half_width, rat(1, 3 * 14));
        assert!(s2.contains(&(rat(5, 6) / rat(31, 12)), &rat(31, 12)));
    }

    #[test]
    fn old_hyperbola_examples() {
        assert!(in_old_hyperbolas(2, &rat(2, 5), &int(2)));
        assert!(!in_old_hyperbolas(2, &rat(1, 3), &rat(5, 2)));
        assert!(!in_old_hyperbolas(2, &int(1), &int(1)));
        // b must exceed 3/2 strictly
        assert!(!in_old_hyperbolas(2, &rat(1, 3), &rat(3, 2)));
    }

    #[test]
    fn hat_segment_examples() {
        let s = ghosh_selvan_segment(1, 2).unwrap();
        assert_eq!((s.a0.clone(), s.b0.clone(), s.half_width.clone()), (rat(1, 3), rat(5, 2), rat(1, 6)));
        let h = segment_h(ObstructionParams::new(3, 2, 1).unwrap(), 2);
        assert_eq!(&s.half_width - &h.half_width, rat(1, 12));
        let s = ghosh_selvan_segment(2, 3).unwrap();
        assert_eq!((s.a0, s.b0, s.half_width), (rat(1, 5), rat(7, 2), rat(1, 10)));
        assert!(ghosh_selvan_segment(1, 3).is_err());
        assert!(ghosh_selvan_segment(2, 2).is_err());
    }

    #[test]
    fn tile_examples() {
        assert_eq!(tile_of(&rat(1, 3), &rat(5, 2)), Some(2));
        assert_eq!(tile_of(&rat(1, 10), &rat(5, 2)), None);
        assert_eq!(tile_of(&rat(1, 2), &int(2)), None);
        assert_eq!(tile_of(&rat(1, 2), &int(3)), None);
    }

    #[test]
    fn gap_examples() {
        let g = local_gaps(ObstructionParams::new(5, 4, 3).unwrap());
        assert_eq!(g.floor_b0, 4);
        assert_eq!(g.lower_gap, rat(1, 4));
        assert_eq!(g.lower_gap, g.lower_bound);
        assert_eq!((g.x, g.y), (1, 3));
        assert_eq!(g.upper_ok, None);
        assert!(g.all_ok());

        let g = local_gaps(ObstructionParams::new(3, 2, 1).unwrap());
        assert_eq!((g.floor_b0, g.lower_gap.clone(), g.lower_bound.clone()), (2, rat(1, 2), rat(1, 2)));
        assert!(g.all_ok());

        let g = local_gaps(ObstructionParams::new(7, 2, 5).unwrap());
        assert_eq!(g.floor_b0, 4);
        assert_eq!(g.upper_bound, Some(rat(2, 4)));
        assert_eq!(g.upper_ok, Some(true));
    }

    #[test]
    fn hyperbola_factorizations() {
        let (found, examined) = params_on_hyperbola(5, 6);
        assert_eq!(found, vec![ObstructionParams::new(3, 2, 1).unwrap()]);
        assert_eq!(examined, vec![(2, 3)]);
        let (found, examined) = params_on_hyperbola(4, 5);
        assert!(found.is_empty() && examined.is_empty());
    }

    #[test]
    fn containment_small() {
        let rep = verify_containment(&int(10), 10, 2, false);
        assert!(rep.passed(), "{:?}", rep.violations.first());
        assert!(rep.checked > 0);
        assert!(rep.min_lower_slack.unwrap() >= Rational::zero());
    }
}
