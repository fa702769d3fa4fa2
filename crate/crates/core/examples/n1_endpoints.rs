// Why the certificates for `N_1` break down at the ends of a segment.
//
// At `b = b₀ ± (μ-k-1)/q` the common cancellation region of the column
// groups shrinks to a single point, and `N_1` jumps exactly there. The
// example prints the certificate failure, then scans `σ_min(Φ(x, 0))`
// over `x` to show the matrix stays well conditioned at `γ = 0`.

use std::error::Error;

use bspline_obstructions::bspline::build_bspline;
use bspline_obstructions::certify::{build_certificate, find_x0};
use bspline_obstructions::rational::rat;
use bspline_obstructions::sets::{segment_h, ObstructionParams};
use bspline_obstructions::zak::{smallest_singular_value, zz_matrix, LatticeParams, ZZPoint};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let params = ObstructionParams::new(3, 2, 1)?;
    let seg = segment_h(params, 1);
    let n1 = build_bspline(1)?;
    for b in [seg.b_lo.clone(), params.b0(), seg.b_hi.clone()] {
        let w = find_x0(1, params, &b)?;
        let cert = build_certificate(1, params, &b)?;
        let lat = LatticeParams::new(seg.a_at(&b), b.clone())?;
        let samples = 2400;
        let floor = (0..samples)
            .map(|i| smallest_singular_value(&zz_matrix(&n1, &lat, &ZZPoint::new(&rat(i, samples), &rat(0, 1)))))
            .fold(f64::INFINITY, f64::min);
        println!(
            "b = {b}: feasible {} x0 = {} status {:?}; min over x of σ_min(Φ(x, 0)) = {floor:.4}",
            w.feasible, w.x0, cert.status
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
