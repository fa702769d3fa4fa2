// Segments of the hyperbolic set and the older comparison sets.

use std::error::Error;

use bspline_obstructions::rational::{int, rat};
use bspline_obstructions::sets::{enum_p, ghosh_selvan_segment, in_old_hyperbolas, segment_h, ObstructionParams};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let center = ObstructionParams::new(3, 2, 1)?;
    for n in [1, 2, 4] {
        let s = segment_h(center, n);
        println!("n = {n}: b ∈ [{}, {}], ab = {}, a ∈ [{}, {}]", s.b_lo, s.b_hi, s.ab, s.a_at(&s.b_hi), s.a_at(&s.b_lo));
    }

    let hat = ghosh_selvan_segment(1, 2)?;
    let h2 = segment_h(center, 2);
    println!("older segment around (1/3, 5/2): half-width {} vs {}", hat.half_width, h2.half_width);
    assert_eq!(&hat.half_width - &h2.half_width, rat(1, 12));

    assert!(in_old_hyperbolas(2, &rat(2, 5), &int(2)));
    assert!(!in_old_hyperbolas(2, &rat(1, 3), &rat(5, 2)));

    let longest = enum_p(&int(10), 10)
        .into_iter()
        .map(|p| segment_h(p, 2))
        .max_by(|x, y| x.half_width.cmp(&y.half_width))
        .expect("non-empty");
    let c = &longest.center;
    println!("longest n = 2 segment: (μ, r, k) = ({}, {}, {}), half-width {}", c.mu(), c.r(), c.k(), longest.half_width);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
