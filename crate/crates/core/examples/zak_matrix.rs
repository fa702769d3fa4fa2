// The Zak transform of a B-spline and the Zibulski-Zeevi matrix built from it.

use std::error::Error;

use num_complex::Complex64;

use bspline_obstructions::bspline::build_bspline;
use bspline_obstructions::rational::{rat, Rational};
use bspline_obstructions::zak::{smallest_singular_value, zak_eval, zz_matrix, LatticeParams, ZZPoint};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n2 = build_bspline(2)?;
    let lambda = rat(2, 1);
    let (x, gamma) = (rat(1, 3), rat(1, 5));

    let z = zak_eval(&n2, &lambda, &x, &gamma);
    let shifted = zak_eval(&n2, &lambda, &(&x + Rational::from_integer(1.into())), &gamma);
    let phase = Complex64::from_polar(1.0, std::f64::consts::TAU * 0.2);
    println!("Z f(x, γ) = {z:.6}, Z f(x + 1, γ) = {shifted:.6}");
    assert!((shifted - phase * z).norm() < 1e-12);

    let lat = LatticeParams::new(rat(1, 3), rat(5, 2))?;
    println!("lattice a = {}, b = {}, ab = {}/{}", lat.a(), lat.b(), lat.p(), lat.q());
    for (x, g) in [(rat(1, 4), rat(0, 1)), (rat(1, 10), rat(1, 3))] {
        let m = zz_matrix(&n2, &lat, &ZZPoint::new(&x, &g));
        println!(
            "Φ({x}, {g}): {}×{}, ‖Φ‖_F = {:.6}, σ_min = {:.3e}",
            m.rows(),
            m.cols(),
            m.frobenius_norm(),
            smallest_singular_value(&m)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
