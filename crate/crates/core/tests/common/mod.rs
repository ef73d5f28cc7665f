//! Strategies and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num::{BigInt, Integer, One, Signed, Zero};
use proptest::prelude::*;
use pwlfix::fixtures::rq;
use pwlfix::{Matrix, PwlMap, Rational, Vector};

/// `p / q` with `|p| <= 10`, `1 <= q <= 10`.
pub fn rational() -> impl Strategy<Value = Rational> {
    (-10i64..=10, 1i64..=10).prop_map(|(p, q)| rq(p, q))
}

pub fn vector(n: usize) -> impl Strategy<Value = Vector<Rational>> {
    proptest::collection::vec(rational(), n).prop_map(Vector::new)
}

pub fn matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    proptest::collection::vec(rational(), n * n).prop_map(move |d| Matrix::new(n, n, d).unwrap())
}

pub fn map_of_dim(n: usize) -> impl Strategy<Value = PwlMap<Rational>> {
    (matrix(n), vector(n), vector(n)).prop_map(|(a, b, c)| PwlMap::new(a, b, c).unwrap())
}

pub fn map() -> impl Strategy<Value = PwlMap<Rational>> {
    (2usize..=4).prop_flat_map(map_of_dim)
}

/// Point with coordinates in `[-10, 10]`.
pub fn point(n: usize) -> impl Strategy<Value = Vector<Rational>> {
    let coord = (1i64..=10).prop_flat_map(|q| (-10 * q..=10 * q).prop_map(move |p| rq(p, q)));
    proptest::collection::vec(coord, n).prop_map(Vector::new)
}

/// Map that may sit on degenerate strata: small integer entries make
/// singular pieces and `u . c = 0` common.
pub fn small_integer_map() -> impl Strategy<Value = PwlMap<Rational>> {
    (2usize..=3).prop_flat_map(|n| {
        let e = || proptest::collection::vec(-1i64..=1, n);
        (proptest::collection::vec(-1i64..=1, n * n), e(), e()).prop_map(move |(a, b, c)| {
            let q = |v: Vec<i64>| v.into_iter().map(|p| rq(p, 1)).collect::<Vec<_>>();
            PwlMap::new(Matrix::new(n, n, q(a)).unwrap(), Vector::new(q(b)), Vector::new(q(c))).unwrap()
        })
    })
}

/// Determinant by Laplace expansion along the first row.
pub fn laplace_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = m[0][j].clone() * laplace_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Rank by integer elimination: rows are scaled to integers, pivots are
/// eliminated by cross multiplication and rows reduced by their content.
pub fn integer_rank(rows: &[Vec<Rational>]) -> usize {
    let mut r: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            row.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let cols = r.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..r.len()).find(|&i| !r[i][col].is_zero()) else { continue };
        r.swap(rank, p);
        for i in 0..r.len() {
            if i == rank || r[i][col].is_zero() {
                continue;
            }
            let (f, g) = (r[rank][col].clone(), r[i][col].clone());
            let pivot_row = r[rank].clone();
            for (x, y) in r[i].iter_mut().zip(&pivot_row) {
                *x = &*x * &f - y * &g;
            }
            let content = r[i].iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            if !content.is_zero() && !content.abs().is_one() {
                r[i].iter_mut().for_each(|v| *v /= &content);
            }
        }
        rank += 1;
    }
    rank
}

pub fn rows_of(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].clone()).collect())
        .collect()
}

/// Columns `2..n` of `I - A`, as rows of its transpose.
pub fn p_columns(map: &PwlMap<Rational>) -> Vec<Vec<Rational>> {
    let n = map.dim();
    (1..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let id = if i == j { Rational::one() } else { Rational::zero() };
                    id - map.a()[(i, j)].clone()
                })
                .collect()
        })
        .collect()
}
