// Exact B-splines: pieces, values, unit mass and the partition of unity.
//
// Run with `cargo run --example bspline_basics`.

use std::error::Error;

use bspline_obstructions::bspline::{build_bspline, periodization};
use bspline_obstructions::rational::{int, rat};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n3 = build_bspline(3)?;
    println!("N_3 pieces (coefficients in t = x - j):");
    for (j, piece) in n3.pieces().iter().enumerate() {
        let coeffs: Vec<String> = piece.iter().map(ToString::to_string).collect();
        println!("  [{j}, {}): {}", j + 1, coeffs.join(", "));
    }
    assert_eq!(n3.eval(&rat(3, 2)), rat(3, 4));
    assert_eq!(n3.antiderivative(&int(3)), int(1));

    for n in 1..=6 {
        let spline = build_bspline(n)?;
        let x = rat(2, 7);
        let sum = periodization(&spline, &int(1), &x);
        let dilated = periodization(&spline, &int(3), &x);
        println!("n = {n}: sum_k N_n(x + k) = {sum}, sum_k N_n((x + k)/3) = {dilated}");
        assert_eq!(sum, int(1));
        assert_eq!(dilated, int(3));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
