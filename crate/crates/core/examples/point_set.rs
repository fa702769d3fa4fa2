// The point obstruction set in both parameterizations, written as CSV.

use std::error::Error;
use std::io;

use bspline_obstructions::output::write_points_csv;
use bspline_obstructions::rational::int;
use bspline_obstructions::sets::{enum_p, enum_p_grochenig, point_set, point_set_grochenig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (b_max, r_max) = (int(6), 5);
    let points = enum_p(&b_max, r_max);
    let alt = enum_p_grochenig(&b_max, r_max);
    println!("{} points with b ≤ {b_max} and r ≤ {r_max}", points.len());
    assert_eq!(point_set(&points), point_set_grochenig(&alt));

    for g in alt.iter().take(3) {
        println!("(μ, ν, r, j) = ({}, {}, {}, {}) -> ({}, {})", g.mu, g.nu, g.r, g.j, g.a0(), g.b0());
    }
    write_points_csv(io::stdout().lock(), &points)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
