// The exact property suites on a small range, printed as a table.

use std::error::Error;

use bspline_obstructions::rational::int;
use bspline_obstructions::verify::{format_table, run_suites, VerifyConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = VerifyConfig {
        b_max: int(10),
        r_max: 6,
        orders: vec![1, 2],
        cancellation_probes: 10,
        pou_probes: 50,
        ..VerifyConfig::default()
    };
    let results = run_suites(&cfg)?;
    print!("{}", format_table(&results));
    assert!(results.iter().all(|r| r.passed()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
