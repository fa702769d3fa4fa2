//! Closed subsets of the unit circle `R/Z` built from finitely many arcs.
//!
//! A set is stored as sorted, pairwise non-touching closed intervals inside
//! `[0, 1]`. The circle point `0` and the endpoint `1` are the same point; the
//! canonical form records that point through any interval starting at `0` or
//! ending at `1`, and uses the degenerate interval `[0, 0]` only when no other
//! interval touches it. With this rule equal point sets have equal
//! representations, so `==` is set equality.

use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{frac_part, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircleIntervalSet {
    intervals: Vec<(Rational, Rational)>,
}

/// A maximal connected piece of a circle set, possibly wrapping through 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub start: Rational,
    pub length: Rational,
}

impl Arc {
    /// Midpoint reduced into `[0, 1)`.
    pub fn midpoint(&self) -> Rational {
        frac_part(&(&self.start + &self.length / Rational::from_integer(2.into())))
    }
}

impl CircleIntervalSet {
    pub fn empty() -> Self {
        Self { intervals: Vec::new() }
    }

    pub fn full() -> Self {
        Self { intervals: vec![(Rational::zero(), Rational::one())] }
    }

    pub fn point(x: &Rational) -> Self {
        Self::arc(x, x)
    }

    /// The closed arc running counter-clockwise from `lo` to `hi` (real
    /// numbers, `lo <= hi`), reduced modulo 1. An arc of length ≥ 1 is the
    /// whole circle.
    pub fn arc(lo: &Rational, hi: &Rational) -> Self {
        let mut raw = Vec::with_capacity(2);
        push_arc(&mut raw, lo, hi);
        Self::normalize(raw)
    }

    /// Union of arcs given as `(lo, hi)` pairs.
    pub fn from_arcs<'a, I>(arcs: I) -> Self
    where
        I: IntoIterator<Item = (&'a Rational, &'a Rational)>,
    {
        let mut raw = Vec::new();
        for (lo, hi) in arcs {
            push_arc(&mut raw, lo, hi);
        }
        Self::normalize(raw)
    }

    fn normalize(mut raw: Vec<(Rational, Rational)>) -> Self {
        raw.sort();
        let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        let zero = Rational::zero();
        let one = Rational::one();
        let has_origin = merged.iter().any(|(lo, hi)| *lo == zero || *hi == one);
        merged.retain(|(lo, hi)| !(lo == hi && (*lo == zero || *lo == one)));
        if has_origin && !merged.iter().any(|(lo, hi)| *lo == zero || *hi == one) {
            merged.insert(0, (zero.clone(), zero));
        }
        Self { intervals: merged }
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.intervals.len() == 1 && self.intervals[0].0.is_zero() && self.intervals[0].1.is_one()
    }

    fn contains_origin(&self) -> bool {
        self.intervals.iter().any(|(lo, hi)| lo.is_zero() || hi.is_one())
    }

    /// Membership of the circle point `x mod 1`.
    pub fn contains(&self, x: &Rational) -> bool {
        let y = frac_part(x);
        if y.is_zero() {
            return self.contains_origin();
        }
        self.intervals.iter().any(|(lo, hi)| *lo <= y && y <= *hi)
    }

    /// Total arc length.
    pub fn measure(&self) -> Rational {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }

    /// Intervals as a subset of the real segment `[0, 1]`, with both `0` and
    /// `1` present whenever the circle point 0 is.
    fn linear(&self) -> Vec<(Rational, Rational)> {
        let mut out = self.intervals.clone();
        if self.contains_origin() {
            if !out.iter().any(|(lo, _)| lo.is_zero()) {
                out.insert(0, (Rational::zero(), Rational::zero()));
            }
            if !out.iter().any(|(_, hi)| hi.is_one()) {
                out.push((Rational::one(), Rational::one()));
            }
        }
        out
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let a = self.linear();
        let b = other.linear();
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = std::cmp::max(&a[i].0, &b[j].0);
            let hi = std::cmp::min(&a[i].1, &b[j].1);
            if lo <= hi {
                out.push((lo.clone(), hi.clone()));
            }
            if a[i].1 < b[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::normalize(out)
    }

    /// Every point `x` maps to `(x + t) mod 1`.
    pub fn shift(&self, t: &Rational) -> Self {
        let t = frac_part(t);
        let mut raw = Vec::with_capacity(self.intervals.len() + 1);
        for (lo, hi) in &self.intervals {
            push_arc(&mut raw, &(lo + &t), &(hi + &t));
        }
        Self::normalize(raw)
    }

    /// Maximal arcs, joining the pieces that meet at the origin.
    pub fn arcs(&self) -> Vec<Arc> {
        if self.is_empty() {
            return Vec::new();
        }
        if self.is_full() {
            return vec![Arc { start: Rational::zero(), length: Rational::one() }];
        }
        let mut pieces = self.intervals.clone();
        let first_at_zero = pieces.first().is_some_and(|(lo, _)| lo.is_zero());
        let last_at_one = pieces.last().is_some_and(|(_, hi)| hi.is_one());
        let mut arcs = Vec::with_capacity(pieces.len());
        let mut wrapped = None;
        if first_at_zero && last_at_one && pieces.len() >= 2 {
            let head = pieces.remove(0);
            let tail = pieces.pop().expect("at least two pieces");
            wrapped = Some(Arc { length: &head.1 + (Rational::one() - &tail.0), start: tail.0 });
        }
        for (lo, hi) in pieces {
            arcs.push(Arc { length: &hi - &lo, start: lo });
        }
        if let Some(w) = wrapped {
            arcs.push(w);
        }
        arcs.sort_by(|x, y| x.start.cmp(&y.start));
        arcs
    }

    /// The longest arc; ties go to the smallest start point.
    pub fn largest_arc(&self) -> Option<Arc> {
        let mut best: Option<Arc> = None;
        for arc in self.arcs() {
            match &best {
                Some(b) if arc.length <= b.length => {}
                _ => best = Some(arc),
            }
        }
        best
    }
}

fn push_arc(raw: &mut Vec<(Rational, Rational)>, lo: &Rational, hi: &Rational) {
    assert!(lo <= hi, "arc endpoints out of order");
    let len = hi - lo;
    if len >= Rational::one() {
        raw.push((Rational::zero(), Rational::one()));
        return;
    }
    let start = frac_part(lo);
    let end = &start + len;
    if end <= Rational::one() {
        raw.push((start, end));
    } else {
        raw.push((start, Rational::one()));
        raw.push((Rational::zero(), end - Rational::one()));
    }
}

/// Intersection of a sequence of sets; the empty sequence gives the full circle.
pub fn circle_intersect<'a, I>(sets: I) -> CircleIntervalSet
where
    I: IntoIterator<Item = &'a CircleIntervalSet>,
{
    sets.into_iter().fold(CircleIntervalSet::full(), |acc, s| acc.intersect(s))
}

pub fn circle_shift(set: &CircleIntervalSet, t: &Rational) -> CircleIntervalSet {
    set.shift(t)
}

impl fmt::Display for CircleIntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.intervals.iter().map(|(lo, hi)| format!("[{lo}, {hi}]")).collect();
        write!(f, "{{{}}}", parts.join(" u "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn iv(lo: Rational, hi: Rational) -> CircleIntervalSet {
        CircleIntervalSet::arc(&lo, &hi)
    }

    #[test]
    fn intersect_examples() {
        let full = CircleIntervalSet::full();
        assert_eq!(full.intersect(&full), full);
        let a = iv(rat(1, 4), rat(3, 4));
        let b = iv(rat(1, 2), int(1));
        assert_eq!(a.intersect(&b).intervals(), &[(rat(1, 2), rat(3, 4))]);
        let c = iv(int(0), rat(1, 4));
        let d = iv(rat(1, 2), rat(3, 4));
        assert!(c.intersect(&d).is_empty());
    }

    #[test]
    fn shift_examples() {
        let s = iv(int(0), rat(1, 2)).shift(&rat(1, 2));
        assert_eq!(s.intervals(), &[(rat(1, 2), int(1))]);
        let s = iv(rat(3, 4), int(1)).shift(&rat(1, 2));
        assert_eq!(s.intervals(), &[(rat(1, 4), rat(1, 2))]);
        assert!(CircleIntervalSet::empty().shift(&rat(1, 3)).is_empty());
    }

    #[test]
    fn origin_canonical_forms() {
        assert_eq!(CircleIntervalSet::point(&int(0)).intervals(), &[(int(0), int(0))]);
        assert_eq!(CircleIntervalSet::point(&int(1)), CircleIntervalSet::point(&int(0)));
        assert_eq!(CircleIntervalSet::point(&int(3)), CircleIntervalSet::point(&int(0)));
        let wrap = iv(rat(3, 4), rat(5, 4));
        assert_eq!(wrap.intervals(), &[(int(0), rat(1, 4)), (rat(3, 4), int(1))]);
        assert!(wrap.contains(&int(0)));
        assert!(wrap.contains(&int(7)));
        assert!(!wrap.contains(&rat(1, 2)));
        // wrap arc intersected with a set touching only 1 keeps the origin
        let tail = iv(rat(7, 8), int(1));
        assert_eq!(wrap.intersect(&tail), tail);
        let head = iv(int(0), rat(1, 8));
        assert_eq!(tail.intersect(&head), CircleIntervalSet::point(&int(0)));
    }

    #[test]
    fn touching_intervals_merge() {
        let s = CircleIntervalSet::from_arcs([(&int(0), &rat(1, 2)), (&rat(1, 2), &int(1))]);
        assert!(s.is_full());
        let t = CircleIntervalSet::from_arcs([(&rat(1, 4), &rat(1, 2)), (&rat(1, 2), &rat(3, 4))]);
        assert_eq!(t.intervals(), &[(rat(1, 4), rat(3, 4))]);
    }

    #[test]
    fn arcs_join_at_origin() {
        let s = CircleIntervalSet::from_arcs([(&rat(-1, 8), &rat(1, 4)), (&rat(1, 2), &rat(5, 8))]);
        let arcs = s.arcs();
        assert_eq!(arcs.len(), 2);
        let big = s.largest_arc().unwrap();
        assert_eq!(big.start, rat(7, 8));
        assert_eq!(big.length, rat(3, 8));
        assert_eq!(big.midpoint(), rat(1, 16));
        let pt = CircleIntervalSet::point(&rat(1, 3));
        assert_eq!(pt.largest_arc().unwrap().midpoint(), rat(1, 3));
    }

    fn arb_set() -> impl Strategy<Value = CircleIntervalSet> {
        prop::collection::vec((-24i64..24, 0i64..14), 0..4).prop_map(|v| {
            let arcs: Vec<(Rational, Rational)> =
                v.into_iter().map(|(lo, len)| (rat(lo, 12), rat(lo + len, 12))).collect();
            CircleIntervalSet::from_arcs(arcs.iter().map(|(a, b)| (a, b)))
        })
    }

    fn arb_probe() -> impl Strategy<Value = Rational> {
        (0i64..240, prop::sample::select(vec![12i64, 24, 60, 7, 240])).prop_map(|(n, d)| rat(n % d, d))
    }

    proptest! {
        #[test]
        fn intersect_is_commutative_associative_idempotent(a in arb_set(), b in arb_set(), c in arb_set()) {
            prop_assert_eq!(a.intersect(&b), b.intersect(&a));
            prop_assert_eq!(a.intersect(&b).intersect(&c), a.intersect(&b.intersect(&c)));
            prop_assert_eq!(a.intersect(&a), a.clone());
        }

        #[test]
        fn intersect_membership(a in arb_set(), b in arb_set(), probes in prop::collection::vec(arb_probe(), 50)) {
            let ab = a.intersect(&b);
            for p in &probes {
                prop_assert_eq!(ab.contains(p), a.contains(p) && b.contains(p));
            }
        }

        #[test]
        fn shift_round_trip(a in arb_set(), t in (-50i64..50, 1i64..30)) {
            let t = rat(t.0, t.1);
            prop_assert_eq!(a.shift(&t).shift(&-t.clone()), a);
        }

        #[test]
        fn shift_membership(a in arb_set(), t in (-50i64..50, 1i64..30), p in arb_probe()) {
            let t = rat(t.0, t.1);
            prop_assert_eq!(a.shift(&t).contains(&(&p + &t)), a.contains(&p));
        }
    }
}
