// A non-frame certificate, its record, and an independent recheck.

use std::error::Error;

use bspline_obstructions::certify::{certify_nonframe, reverify_record, CertifyOutcome};
use bspline_obstructions::rational::rat;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // μ = 7, r = 3, k = 2, halfway between the center and the upper end
    let (a, b) = (rat(57, 401), rat(401, 63));
    let CertifyOutcome::Certified(cert) = certify_nonframe(3, &a, &b)? else {
        return Err("expected (57/401, 401/63) to be in H".into());
    };
    let record = cert.to_record();
    print!("{record}");
    assert!(cert.status.is_verified());

    let again = reverify_record(&record)?;
    assert!(again.status.is_verified());
    assert_eq!(again.kernel_vectors.len(), cert.kernel_vectors.len());

    match certify_nonframe(2, &rat(1, 3), &rat(3, 2))? {
        CertifyOutcome::NotInH { p, q, .. } => println!("(1/3, 3/2) is not in H (ab = {p}/{q})"),
        CertifyOutcome::Certified(_) => return Err("(1/3, 3/2) should not be in H".into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
