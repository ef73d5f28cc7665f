//! Named example maps and terse constructors for exact data.
//!
//! Used by the runnable examples, the test suites and the CLI docs.

use crate::linalg::{Matrix, Vector};
use crate::pwlmap::PwlMap;
use crate::scalar::Rational;

/// `p / q` as an exact rational.
pub fn rq(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Vector of rationals from `(p, q)` pairs.
pub fn rv(entries: &[(i64, i64)]) -> Vector<Rational> {
    Vector::new(entries.iter().map(|&(p, q)| rq(p, q)).collect())
}

/// Vector of integers.
pub fn iv(entries: &[i64]) -> Vector<Rational> {
    Vector::new(entries.iter().map(|&p| rq(p, 1)).collect())
}

/// Matrix of integers, given by rows.
pub fn im(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&p| rq(p, 1)).collect()).collect())
        .expect("rows of equal length")
}

/// Three-dimensional map whose `P` is rank deficient, which has no fixed
/// point, yet has a one-parameter family of period-3 orbits
/// `(-2/15, -7/5, s) -> (-2/5, -1/15, s + 1/15) -> (14/15, -1/5, s + 4/15)`.
pub fn counterexample() -> PwlMap<Rational> {
    let a = Matrix::from_rows(vec![
        vec![rq(-1, 2), rq(1, 1), rq(0, 1)],
        vec![rq(-1, 2), rq(0, 1), rq(0, 1)],
        vec![rq(-11, 28), rq(0, 1), rq(1, 1)],
    ])
    .expect("3x3");
    let b = rv(&[(-1, 2), (-1, 1), (3, 28)]);
    let c = iv(&[1, 0, 0]);
    PwlMap::new(a, b, c).expect("valid map")
}

/// `A = 0, b = (2, 0), c = (1, 0)`: `x1 -> 2|x1| + 1`, every orbit diverges.
pub fn divergent_fold() -> PwlMap<Rational> {
    PwlMap::new(im(&[&[0, 0], &[0, 0]]), iv(&[2, 0]), iv(&[1, 0])).expect("valid map")
}

/// `A = 0, b = 0, c = (1, 0)`: constant map with the single fixed point `(1, 0)`.
pub fn translation() -> PwlMap<Rational> {
    PwlMap::new(im(&[&[0, 0], &[0, 0]]), iv(&[0, 0]), iv(&[1, 0])).expect("valid map")
}

/// `A = [[2, 0], [0, 0]], b = (1, 0), c = (0, 1)`: `u . c = 0` with a singular
/// left piece; the left piece fixes the half-line `{(t, 1) : t <= 0}`.
pub fn fixed_half_line() -> PwlMap<Rational> {
    PwlMap::new(im(&[&[2, 0], &[0, 0]]), iv(&[1, 0]), iv(&[0, 1])).expect("valid map")
}

/// `A = [[0, 1], [0, 1]], b = 0, c = (0, 1)`: `(x1, x2) -> (x2, x2 + 1)`.
/// Certified divergent with `u = (0, 1)`, `s = 1`, but orbits drift by one
/// unit per step and take about `R` steps to leave a ball of radius `R`.
pub fn linear_drift() -> PwlMap<Rational> {
    PwlMap::new(im(&[&[0, 1], &[0, 1]]), iv(&[0, 0]), iv(&[0, 1])).expect("valid map")
}
