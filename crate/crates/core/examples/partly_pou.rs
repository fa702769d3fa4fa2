// Periodizations at non-integer period: where they stay constant.
//
// For `c` close to an integer the sum `∑_k N_n((x + k)/c)` is constant on an
// arc of the circle and varies elsewhere.

use std::error::Error;

use bspline_obstructions::bspline::{build_bspline, periodization, pou_region, verify_partly_pou};
use bspline_obstructions::rational::{int, rat, Rational};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (n, c) in [(2, rat(9, 4)), (3, rat(31, 10)), (2, int(9) / int(4) + rat(1, 1000)), (4, rat(39, 8))] {
        let report = verify_partly_pou(n, &c, 32)?;
        println!(
            "n = {n}, c = {c}: region {} holds constant {} at {} probes -> {}",
            report.region,
            report.constant.as_ref().map_or("-".to_string(), ToString::to_string),
            report.probes.len(),
            if report.pass { "ok" } else { "FAILED" }
        );
        assert!(report.pass);
    }

    let n2 = build_bspline(2)?;
    let c = rat(9, 4);
    let region = pou_region(2, &c)?;
    let inside = rat(3, 4);
    let outside = rat(1, 4);
    assert!(region.contains(&inside) && !region.contains(&outside));
    let constant = verify_partly_pou(2, &c, 8)?.constant.ok_or("no constant")?;
    let at = |x: &Rational| periodization(&n2, &c, x);
    println!("sum at x = 3/4: {}, at x = 1/4: {}", at(&inside), at(&outside));
    assert_eq!(at(&inside), constant);
    assert_ne!(at(&outside), constant);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
