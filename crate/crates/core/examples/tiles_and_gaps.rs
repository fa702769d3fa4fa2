// Tie tiles, local gaps below integer `b` and the containment check.

use std::error::Error;

use bspline_obstructions::rational::{int, rat};
use bspline_obstructions::sets::{local_gaps, tile_of, verify_containment, ObstructionParams};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    assert_eq!(tile_of(&rat(1, 3), &rat(5, 2)), Some(2));
    assert_eq!(tile_of(&rat(1, 10), &rat(5, 2)), None);

    let g = local_gaps(ObstructionParams::new(5, 4, 3)?);
    println!(
        "(5, 4, 3): b0 = {}, N = {}, X = {}, Y = {}, lower gap {} ≥ {}",
        g.params.b0(),
        g.floor_b0,
        g.x,
        g.y,
        g.lower_gap,
        g.lower_bound
    );
    assert_eq!(g.lower_gap, rat(1, 4));

    for n in 1..=4 {
        let report = verify_containment(&int(12), 20, n, false);
        println!(
            "n = {n}: {} segments, {} violations, smallest slacks {} / {}",
            report.checked,
            report.violations.len(),
            report.min_lower_slack.as_ref().map_or("-".into(), ToString::to_string),
            report.min_upper_slack.as_ref().map_or("-".into(), ToString::to_string)
        );
        assert!(report.passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
