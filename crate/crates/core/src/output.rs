//! CSV and SVG emitters for the point set, the segments and scans.
//!
//! CSV is UTF-8, comma separated, LF line endings, with a header row. Exact
//! values are written as fractions and floats in shortest round-trip form,
//! so the output is byte-for-byte reproducible. SVG is a convenience view:
//! every data record becomes exactly one element with `class="record"`.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::rational::{rat, to_f64, Rational};
use crate::sets::{HyperbolicSegment, ObstructionParams};
use crate::zak::ScanResult;

pub const POINTS_HEADER: &str = "a,b,ab,mu,r,k,p,q,a_f64,b_f64,ab_f64";
pub const SEGMENTS_HEADER: &str =
    "mu,r,k,p,q,n,a0,b0,ab,b_lo,b_hi,half_width,a_at_b_lo,a_at_b_hi,b0_f64,b_lo_f64,b_hi_f64,ab_f64";

pub fn write_points_csv<W: Write>(mut w: W, points: &[ObstructionParams]) -> io::Result<()> {
    writeln!(w, "{POINTS_HEADER}")?;
    for p in points {
        let (a, b, ab) = (p.a0(), p.b0(), p.density());
        writeln!(
            w,
            "{a},{b},{ab},{},{},{},{},{},{:?},{:?},{:?}",
            p.mu(),
            p.r(),
            p.k(),
            p.p(),
            p.q(),
            to_f64(&a),
            to_f64(&b),
            to_f64(&ab)
        )?;
    }
    Ok(())
}

pub fn write_segments_csv<W: Write>(mut w: W, segments: &[HyperbolicSegment]) -> io::Result<()> {
    writeln!(w, "{SEGMENTS_HEADER}")?;
    for s in segments {
        let c = &s.center;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:?},{:?},{:?},{:?}",
            c.mu(),
            c.r(),
            c.k(),
            c.p(),
            c.q(),
            s.n,
            c.a0(),
            c.b0(),
            s.ab,
            s.b_lo,
            s.b_hi,
            s.half_width,
            s.a_at(&s.b_lo),
            s.a_at(&s.b_hi),
            to_f64(&c.b0()),
            to_f64(&s.b_lo),
            to_f64(&s.b_hi),
            to_f64(&s.ab)
        )?;
    }
    Ok(())
}

/// One row per `x = i/M`, one column per `γ = j/M`, then a `#` summary line.
pub fn write_scan_csv<W: Write>(mut w: W, scan: &ScanResult) -> io::Result<()> {
    let m = scan.resolution;
    let mut header = String::from("x\\gamma");
    for j in 0..m {
        let _ = write!(header, ",{}", rat(j as i64, m as i64));
    }
    writeln!(w, "{header}")?;
    for i in 0..m {
        let mut line = rat(i as i64, m as i64).to_string();
        for j in 0..m {
            let _ = write!(line, ",{:?}", scan.at(i, j));
        }
        writeln!(w, "{line}")?;
    }
    let (i, j) = scan.argmin;
    writeln!(
        w,
        "# argmin i={i} j={j} x={} gamma={} sigma_min={:?}",
        rat(i as i64, m as i64),
        rat(j as i64, m as i64),
        scan.min
    )
}

/// Segments whose center `b₀` lies in `[b_min, b_max]`.
pub fn segments_in_window(segments: &[HyperbolicSegment], b_min: &Rational, b_max: &Rational) -> Vec<HyperbolicSegment> {
    segments
        .iter()
        .filter(|s| {
            let b0 = s.center.b0();
            &b0 >= b_min && &b0 <= b_max
        })
        .cloned()
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorBy {
    /// `ab` mapped linearly from `(1/2, 1)`.
    Density,
    /// `log r` relative to the largest `r` drawn.
    LogR,
}

#[derive(Clone, Debug)]
pub struct SvgOptions {
    pub a_range: (f64, f64),
    pub b_range: (f64, f64),
    pub width: f64,
    pub height: f64,
    pub color: ColorBy,
    /// Overlay the tie boundaries `b(1-a) = N` and `b(1+a) = N+1`.
    pub tiles: bool,
    /// Mark segment centers with black dots.
    pub centers: bool,
}

impl SvgOptions {
    pub fn new(a_range: (f64, f64), b_range: (f64, f64)) -> Self {
        Self { a_range, b_range, width: 800.0, height: 600.0, color: ColorBy::Density, tiles: false, centers: false }
    }

    /// Sets `a_range` to the span of `values` padded by 5% on each side.
    pub fn fit_a(&mut self, values: impl IntoIterator<Item = f64>) {
        let (lo, hi) = values.into_iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
        if lo.is_finite() && hi.is_finite() {
            let pad = ((hi - lo) * 0.05).max(1e-3);
            self.a_range = ((lo - pad).max(0.0), hi + pad);
        }
    }

    fn map(&self, a: f64, b: f64) -> (f64, f64) {
        let (a0, a1) = self.a_range;
        let (b0, b1) = self.b_range;
        let px = (a - a0) / (a1 - a0) * self.width;
        let py = self.height - (b - b0) / (b1 - b0) * self.height;
        (px, py)
    }
}

/// Five-stop approximation of the viridis ramp; `t` is clamped to `[0, 1]`.
fn ramp(t: f64) -> String {
    const STOPS: [(f64, f64, f64); 5] = [
        (68.0, 1.0, 84.0),
        (59.0, 82.0, 139.0),
        (33.0, 145.0, 140.0),
        (94.0, 201.0, 98.0),
        (253.0, 231.0, 37.0),
    ];
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let pos = t * (STOPS.len() - 1) as f64;
    let i = (pos.floor() as usize).min(STOPS.len() - 2);
    let f = pos - i as f64;
    let lerp = |x: f64, y: f64| (x + (y - x) * f).round() as u8;
    let (c0, c1) = (STOPS[i], STOPS[i + 1]);
    format!("#{:02x}{:02x}{:02x}", lerp(c0.0, c1.0), lerp(c0.1, c1.1), lerp(c0.2, c1.2))
}

fn color_value(opts: &SvgOptions, ab: &Rational, r: u64, r_max: u64) -> f64 {
    match opts.color {
        ColorBy::Density => (to_f64(ab) - 0.5) / 0.5,
        ColorBy::LogR => {
            if r_max <= 2 {
                0.0
            } else {
                ((r as f64).ln() - 2f64.ln()) / ((r_max as f64).ln() - 2f64.ln())
            }
        }
    }
}

fn svg_open(opts: &SvgOptions) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#,
        w = opts.width,
        h = opts.height
    );
    let _ = writeln!(s, r#"<rect class="frame" x="0" y="0" width="{}" height="{}" fill="white" stroke="black"/>"#, opts.width, opts.height);
    s
}

/// Tie boundary curves for every tile meeting the visible `b` range.
fn tile_overlay(opts: &SvgOptions) -> String {
    let mut s = String::new();
    let (b_lo, b_hi) = opts.b_range;
    let first = (b_lo.floor() as i64 - 1).max(2);
    let last = b_hi.ceil() as i64;
    let samples = 64;
    for n in first..=last {
        let nf = n as f64;
        let curve = |f: &dyn Fn(f64) -> f64, a_end: f64| {
            let mut pts = String::new();
            for i in 0..=samples {
                let a = opts.a_range.0.max(0.0) + (a_end - opts.a_range.0.max(0.0)) * i as f64 / samples as f64;
                let (x, y) = opts.map(a, f(a));
                let _ = write!(pts, "{x:.3},{y:.3} ");
            }
            pts
        };
        // b(1-a) = N meets ab = 1 at a = 1/(N+1); b(1+a) = N+1 meets it at a = 1/N
        let upper = curve(&|a| nf / (1.0 - a), 1.0 / (nf + 1.0));
        let lower = curve(&|a| (nf + 1.0) / (1.0 + a), 1.0 / nf);
        let _ = writeln!(s, r#"<polyline class="tile-upper" data-n="{n}" fill="none" stroke="purple" stroke-dasharray="6 3 2 3" points="{}"/>"#, upper.trim_end());
        let _ = writeln!(s, r#"<polyline class="tile-lower" data-n="{n}" fill="none" stroke="sienna" stroke-dasharray="6 3 2 3" points="{}"/>"#, lower.trim_end());
    }
    s
}

pub fn points_svg(points: &[ObstructionParams], opts: &SvgOptions) -> String {
    let mut s = svg_open(opts);
    if opts.tiles {
        s.push_str(&tile_overlay(opts));
    }
    let r_max = points.iter().map(|p| p.r()).max().unwrap_or(2);
    for p in points {
        let (x, y) = opts.map(to_f64(&p.a0()), to_f64(&p.b0()));
        let fill = ramp(color_value(opts, &p.density(), p.r(), r_max));
        let _ = writeln!(
            s,
            r#"<circle class="record" data-mu="{}" data-r="{}" data-k="{}" cx="{x:.3}" cy="{y:.3}" r="2" fill="{fill}"/>"#,
            p.mu(),
            p.r(),
            p.k()
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Segments drawn as polylines along their hyperbolas.
pub fn segments_svg(segments: &[HyperbolicSegment], opts: &SvgOptions) -> String {
    let mut s = svg_open(opts);
    if opts.tiles {
        s.push_str(&tile_overlay(opts));
    }
    let r_max = segments.iter().map(|g| g.center.r()).max().unwrap_or(2);
    let samples = 16;
    for seg in segments {
        let (lo, hi) = (to_f64(&seg.b_lo), to_f64(&seg.b_hi));
        let ab = to_f64(&seg.ab);
        let mut pts = String::new();
        for i in 0..=samples {
            let b = lo + (hi - lo) * i as f64 / samples as f64;
            let (x, y) = opts.map(ab / b, b);
            let _ = write!(pts, "{x:.3},{y:.3} ");
        }
        let stroke = ramp(color_value(opts, &seg.ab, seg.center.r(), r_max));
        let c = &seg.center;
        let _ = writeln!(
            s,
            r#"<polyline class="record" data-mu="{}" data-r="{}" data-k="{}" fill="none" stroke="{stroke}" stroke-width="1.5" points="{}"/>"#,
            c.mu(),
            c.r(),
            c.k(),
            pts.trim_end()
        );
    }
    if opts.centers {
        for seg in segments {
            let (x, y) = opts.map(to_f64(&seg.center.a0()), to_f64(&seg.center.b0()));
            let _ = writeln!(s, r#"<circle class="center" cx="{x:.3}" cy="{y:.3}" r="1.5" fill="black"/>"#);
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Only the tile boundaries, `ab = 1` and `ab = 1/2`.
pub fn tie_svg(opts: &SvgOptions) -> String {
    let mut s = svg_open(opts);
    s.push_str(&tile_overlay(opts));
    for (class, density) in [("density-one", 1.0), ("density-half", 0.5)] {
        let mut pts = String::new();
        let samples = 64;
        for i in 0..=samples {
            let b = opts.b_range.0 + (opts.b_range.1 - opts.b_range.0) * i as f64 / samples as f64;
            let (x, y) = opts.map(density / b, b);
            let _ = write!(pts, "{x:.3},{y:.3} ");
        }
        let _ = writeln!(s, r#"<polyline class="{class}" fill="none" stroke="gray" stroke-dasharray="4 4" points="{}"/>"#, pts.trim_end());
    }
    s.push_str("</svg>\n");
    s
}

/// Counts `class="record"` elements, for checking SVG against CSV.
pub fn svg_record_count(svg: &str) -> usize {
    svg.matches(r#"class="record""#).count()
}
