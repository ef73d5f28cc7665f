//! Iterate maps exactly and watch the certificate functional grow.

use pwlfix::dynamics::{certificate_check, simulate, simulate_certified};
use pwlfix::fixtures::{counterexample, divergent_fold, iv, rq, rv};

fn main() -> pwlfix::Result<()> {
    let (orbit, cert) = simulate_certified(&divergent_fold(), &iv(&[0, 0]), 40, rq(1_000_000, 1))?;
    let cert = cert.expect("divergent map carries a certificate");
    println!("verdict {:?}", orbit.verdict);
    for (k, v) in orbit.certificate_values.iter().enumerate().take(6) {
        println!("  u . x_{k} = {v}");
    }
    println!("certificate holds along the orbit: {}", certificate_check(&divergent_fold(), &orbit, &cert.functional, &cert.increment)?);

    let x0 = rv(&[(-2, 15), (-7, 5), (3, 7)]);
    let orbit = simulate(&counterexample(), &x0, 100, rq(1_000, 1))?;
    println!("rank-deficient map from {x0}: {:?}", orbit.verdict);
    for p in &orbit.points {
        println!("  {p}");
    }

    let float_map = divergent_fold().convert::<f64>();
    let orbit = simulate(&float_map, &pwlfix::Vector::new(vec![0.25, 0.0]), 100, 1e12)?;
    println!("float backend: {:?} after {} points", orbit.verdict, orbit.points.len());
    Ok(())
}
