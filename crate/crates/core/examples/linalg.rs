//! Exact determinants, adjugates and nullspaces.

use pwlfix::fixtures::{counterexample, im, iv};
use pwlfix::linalg::{adjugate, adjugate_first_row, det, nullspace_1d, solve_unique};
use pwlfix::Matrix;

fn main() -> pwlfix::Result<()> {
    let m = im(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
    let adj = adjugate(&m)?;
    println!("det = {}", det(&m)?);
    println!("adj = {adj}");
    println!("adj * m = {}", adj.mul(&m)?);

    let rhs = iv(&[1, 0, 0]);
    println!("m^-1 e1 = {}", solve_unique(&m, &rhs)?);

    let f = counterexample();
    let i_minus_a = Matrix::identity(3).sub(f.a())?;
    println!("first row of adj(I - A) = {}", adjugate_first_row(&i_minus_a)?);
    println!("kernel of M- = {}", nullspace_1d(&f.piece_data().m_minus)?);

    let float = m.map(pwlfix::Scalar::to_f64);
    println!("float det = {}", det(&float)?);
    Ok(())
}
