// CSV and SVG data for the six standard views of the obstruction sets.
//
// Files go to the directory given as the first argument, or to a fresh
// directory under the system temp dir.

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};

use bspline_obstructions::output::{
    points_svg, segments_in_window, segments_svg, svg_record_count, tie_svg, write_points_csv, write_segments_csv,
    ColorBy, SvgOptions,
};
use bspline_obstructions::rational::{int, to_f64, Rational};
use bspline_obstructions::sets::{enum_p, segment_h, HyperbolicSegment};

fn window(b_lo: i64, b_hi: i64, r_max: u64, n: usize) -> Vec<HyperbolicSegment> {
    let segs: Vec<_> = enum_p(&int(b_hi), r_max).into_iter().map(|p| segment_h(p, n)).collect();
    segments_in_window(&segs, &int(b_lo), &int(b_hi))
}

fn write_segments(dir: &Path, name: &str, segs: &[HyperbolicSegment], opts: &mut SvgOptions) -> Result<(), Box<dyn Error>> {
    let mut csv = Vec::new();
    write_segments_csv(&mut csv, segs)?;
    opts.fit_a(segs.iter().flat_map(|s| [to_f64(&s.a_at(&s.b_lo)), to_f64(&s.a_at(&s.b_hi))]));
    let svg = segments_svg(segs, opts);
    assert_eq!(svg_record_count(&svg), segs.len());
    fs::write(dir.join(format!("{name}.csv")), csv)?;
    fs::write(dir.join(format!("{name}.svg")), svg)?;
    println!("{name}: {} segments", segs.len());
    Ok(())
}

pub fn run_figures(dir: &Path, b_max: i64, r_max: u64) -> Result<(), Box<dyn Error>> {
    fs::create_dir_all(dir)?;

    // point set colored by ab
    let points = enum_p(&int(b_max), r_max);
    let mut csv = Vec::new();
    write_points_csv(&mut csv, &points)?;
    fs::write(dir.join("fig1_points.csv"), csv)?;
    let opts = SvgOptions::new((0.0, 0.35), (2.0, b_max as f64));
    fs::write(dir.join("fig1_points.svg"), points_svg(&points, &opts))?;
    println!("fig1_points: {} points", points.len());

    // hyperbolic set for n = 2
    let mut opts = SvgOptions::new((0.0, 0.35), (2.0, b_max as f64));
    write_segments(dir, "fig2_segments", &window(0, b_max, r_max, 2), &mut opts)?;

    // tie sketch for one band
    let opts = SvgOptions::new((0.0, 0.2), (6.0, 7.0));
    fs::write(dir.join("fig3_tie.svg"), tie_svg(&opts))?;

    // zooms with tiles and centers
    for (name, lo, hi) in [("fig4a_zoom_6_8", 6, 8), ("fig4b_zoom_21_23", 21, 23), ("fig5_large_b", 2, 2 * b_max)] {
        let mut opts = SvgOptions::new((0.0, 0.35), (lo as f64, hi as f64));
        opts.tiles = true;
        opts.centers = true;
        write_segments(dir, name, &window(lo, hi, r_max, 2), &mut opts)?;
    }

    // near the accumulation point (1/5, 5), colored by log r
    let near: Vec<_> = window(4, 5, r_max, 2)
        .into_iter()
        .filter(|s| s.center.b0() >= int(9) / int(2) && s.center.a0() == Rational::new(1.into(), 5.into()))
        .collect();
    let mut opts = SvgOptions::new((0.0, 0.35), (4.5, 5.0));
    opts.color = ColorBy::LogR;
    opts.centers = true;
    write_segments(dir, "fig6_accumulation", &near, &mut opts)?;
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join(format!("gabor-obs-figures-{}", std::process::id())));
    run_figures(&dir, 15, 50)?;
    println!("written to {}", dir.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
