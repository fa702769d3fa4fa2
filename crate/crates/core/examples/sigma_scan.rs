// Grid scans of σ_min over `(x, γ)`: an obstruction point against a frame.

use std::error::Error;

use bspline_obstructions::bspline::build_bspline;
use bspline_obstructions::rational::rat;
use bspline_obstructions::zak::{scan, LatticeParams};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n2 = build_bspline(2)?;
    let obstruction = LatticeParams::new(rat(1, 3), rat(5, 2))?;
    let painless = LatticeParams::new(rat(1, 3), rat(1, 2))?;

    let s = scan(&n2, &obstruction, 16)?;
    println!("(1/3, 5/2): min σ = {:.3e} at (i, j) = {:?}", s.min, s.argmin);
    assert!(s.min <= 1e-6 && s.argmin.1 == 0);

    for m in [8, 16, 32] {
        let s = scan(&n2, &painless, m)?;
        println!("(1/3, 1/2), M = {m}: min σ = {:.6}", s.min);
        assert!(s.min > 0.0);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
