//! Dense small-matrix kernels over [`Scalar`].
//!
//! Determinants are fraction-free Bareiss elimination on the exact backend and
//! LU with partial pivoting on floats. The adjugate is built from explicit
//! minors, which is fine at the sizes this crate targets (n up to about 12).

use std::fmt;
use std::ops::{Index, IndexMut};

use num::{BigInt, Integer, One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar, DEFAULT_EPSILON};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector<T>(Vec<T>);

impl<T> Vector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Vector(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Vector<U> {
        Vector(self.0.iter().map(f).collect())
    }
}

impl<T: Scalar> Vector<T> {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![T::zero(); n])
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = T::one();
        v
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = T::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            let mut t = a.clone();
            t *= b;
            acc += &t;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| {
                    let mut t = a.clone();
                    t += b;
                    t
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| {
                    let mut t = a.clone();
                    t -= b;
                    t
                })
                .collect(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|a| {
            let mut t = a.clone();
            t *= k;
            t
        })
    }

    /// `self + k * other`
    pub fn axpy(&self, k: &T, other: &Self) -> Self {
        self.add(&other.scale(k))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }

    pub fn norm_inf(&self) -> T {
        self.0
            .iter()
            .map(|a| a.abs())
            .fold(T::zero(), |m, a| if a.compare(&m).is_gt() { a } else { m })
    }

    /// Entrywise equality; exact on rationals, relative tolerance on floats.
    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a.approx_eq(b, eps))
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for Vector<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

impl<T> From<Vec<T>> for Vector<T> {
    fn from(v: Vec<T>) -> Self {
        Vector(v)
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl<T: fmt::Debug> fmt::Debug for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != c) {
            return Err(Error::dim(format!("row {} has {} entries, expected {c}", i + 1, row.len())));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        Vector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn set_column(&mut self, j: usize, v: &Vector<T>) {
        for i in 0..self.rows {
            self[(i, j)] = v[i].clone();
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let mut t = a.clone();
                    t *= &other[(k, j)];
                    out[(i, j)] += &t;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Result<Vector<T>> {
        if self.cols != v.dim() {
            return Err(Error::dim(format!(
                "cannot apply a {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(Vector(
            (0..self.rows)
                .map(|i| Vector(self.row(i).to_vec()).dot(v))
                .collect(),
        ))
    }

    fn zip_with(&self, other: &Self, what: &str, f: impl Fn(&mut T, &T)) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            f(a, b);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| *a += b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "subtract", |a, b| *a -= b)
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|a| {
            let mut t = a.clone();
            t *= k;
            t
        })
    }

    /// The matrix with row `row` and column `col` deleted.
    pub fn minor_matrix(&self, row: usize, col: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != row) {
            for j in (0..self.cols).filter(|&j| j != col) {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// Columns `from..` of the matrix.
    pub fn columns_from(&self, from: usize) -> Self {
        let mut data = Vec::with_capacity(self.rows * (self.cols - from));
        for i in 0..self.rows {
            data.extend_from_slice(&self.row(i)[from..]);
        }
        Matrix {
            rows: self.rows,
            cols: self.cols - from,
            data,
        }
    }

    /// Product of the row max-norms, the scale used by the float singularity test.
    pub fn row_norm_product(&self) -> T {
        let mut p = T::one();
        for i in 0..self.rows {
            let m = Vector(self.row(i).to_vec()).norm_inf();
            p *= &m;
        }
        p
    }

    fn max_abs(&self) -> T {
        Vector(self.data.clone()).norm_inf()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1))).finish()
    }
}

fn require_square<T>(m: &Matrix<T>, what: &str) -> Result<()> {
    if m.rows != m.cols {
        return Err(Error::dim(format!(
            "{what} needs a square matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    Ok(())
}

pub fn det<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    require_square(m, "determinant")?;
    Ok(T::determinant(&m.data, m.rows))
}

/// Exact determinant by Bareiss elimination on the integer matrix obtained
/// by clearing each row's denominators.
pub(crate) fn bareiss_det(entries: &[Rational], n: usize) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = &entries[i * n..(i + 1) * n];
        let l = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        a.push(row.iter().map(|q| q.numer() * (&l / q.denom())).collect());
        scale *= l;
    }

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    let d = if negate { -d } else { d };
    Rational::new(d, scale)
}

/// Float determinant by LU with partial pivoting.
pub(crate) fn lu_det(entries: &[f64], n: usize) -> f64 {
    let mut a = entries.to_vec();
    let mut d = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[x * n + k].abs().total_cmp(&a[y * n + k].abs()))
            .unwrap_or(k);
        if a[p * n + k] == 0.0 {
            return 0.0;
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            d = -d;
        }
        let pivot = a[k * n + k];
        d *= pivot;
        for i in k + 1..n {
            let factor = a[i * n + k] / pivot;
            for j in k + 1..n {
                a[i * n + j] -= factor * a[k * n + j];
            }
        }
    }
    d
}

fn cofactor_sign<T: Scalar>(i: usize, j: usize, v: T) -> T {
    if (i + j).is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Adjugate with `(i, j)` entry `(-1)^(i+j) m_ji`, where `m_ji` is the minor
/// with row `j` and column `i` deleted.
pub fn adjugate<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    require_square(m, "adjugate")?;
    let n = m.rows;
    if n == 1 {
        return Ok(Matrix::identity(1));
    }
    let mut adj = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor = T::determinant(&m.minor_matrix(j, i).data, n - 1);
            adj[(i, j)] = cofactor_sign(i, j, minor);
        }
    }
    Ok(adj)
}

/// First row of the adjugate only: entry `j` is `(-1)^j` times the minor
/// with row `j` and column 0 deleted. Never reads column 0 of `m`.
pub fn adjugate_first_row<T: Scalar>(m: &Matrix<T>) -> Result<Vector<T>> {
    require_square(m, "adjugate")?;
    let n = m.rows;
    if n == 1 {
        return Ok(Vector(vec![T::one()]));
    }
    Ok(Vector(
        (0..n)
            .map(|j| cofactor_sign(0, j, T::determinant(&m.minor_matrix(j, 0).data, n - 1)))
            .collect(),
    ))
}

/// Whether a square matrix counts as singular: exact zero determinant on
/// rationals, `|det| <= eps * prod(row max-norms)` on floats.
pub fn is_singular<T: Scalar>(m: &Matrix<T>, eps: f64) -> Result<bool> {
    let d = det(m)?;
    Ok(d.is_negligible(&m.row_norm_product(), eps))
}

pub fn solve_unique<T: Scalar>(m: &Matrix<T>, rhs: &Vector<T>) -> Result<Vector<T>> {
    solve_unique_with(m, rhs, DEFAULT_EPSILON)
}

/// Unique solution of `m x = rhs`; [`Error::Singular`] when `m` is singular.
pub fn solve_unique_with<T: Scalar>(m: &Matrix<T>, rhs: &Vector<T>, eps: f64) -> Result<Vector<T>> {
    require_square(m, "solve")?;
    if rhs.dim() != m.rows {
        return Err(Error::dim(format!(
            "right-hand side has length {}, matrix has {} rows",
            rhs.dim(),
            m.rows
        )));
    }
    if is_singular(m, eps)? {
        return Err(Error::Singular);
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut b = rhs.clone();
    for k in 0..n {
        let p = pivot_row(&a, k, k, n);
        a_swap_rows(&mut a, k, p);
        b.0.swap(k, p);
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let mut factor = a[(i, k)].clone();
            factor = factor / a[(k, k)].clone();
            for j in k..n {
                let mut t = a[(k, j)].clone();
                t *= &factor;
                a[(i, j)] -= &t;
            }
            let mut t = b[k].clone();
            t *= &factor;
            b[i] -= &t;
        }
    }
    let mut x = Vector::zeros(n);
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            let mut t = a[(i, j)].clone();
            t *= &x[j];
            acc -= &t;
        }
        x[i] = acc / a[(i, i)].clone();
    }
    Ok(x)
}

fn pivot_row<T: Scalar>(a: &Matrix<T>, col: usize, from: usize, to: usize) -> usize {
    let mut best = from;
    let mut best_abs = a[(from, col)].abs();
    for i in from + 1..to {
        let v = a[(i, col)].abs();
        if v > best_abs {
            best = i;
            best_abs = v;
        }
    }
    best
}

fn a_swap_rows<T>(a: &mut Matrix<T>, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    let cols = a.cols;
    for j in 0..cols {
        a.data.swap(r1 * cols + j, r2 * cols + j);
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<T> {
    pub matrix: Matrix<T>,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination with partial pivoting. Entries negligible
/// relative to the largest entry of `m` are treated as zero on floats.
pub fn rref<T: Scalar>(m: &Matrix<T>, eps: f64) -> Rref<T> {
    let scale = m.max_abs();
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..a.cols {
        if r == a.rows {
            break;
        }
        let p = pivot_row(&a, col, r, a.rows);
        if a[(p, col)].is_negligible(&scale, eps) {
            for i in r..a.rows {
                a[(i, col)] = T::zero();
            }
            continue;
        }
        a_swap_rows(&mut a, r, p);
        let pivot = a[(r, col)].clone();
        for j in col..a.cols {
            a[(r, j)] = a[(r, j)].clone() / pivot.clone();
        }
        for i in (0..a.rows).filter(|&i| i != r) {
            if a[(i, col)].is_zero() {
                continue;
            }
            let factor = a[(i, col)].clone();
            for j in col..a.cols {
                let mut t = a[(r, j)].clone();
                t *= &factor;
                a[(i, j)] -= &t;
            }
            a[(i, col)] = T::zero();
        }
        pivots.push(col);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank<T: Scalar>(m: &Matrix<T>, eps: f64) -> usize {
    rref(m, eps).pivots.len()
}

/// Nullspace basis, one vector per free column with that column set to 1.
pub fn nullspace<T: Scalar>(m: &Matrix<T>, eps: f64) -> Vec<Vector<T>> {
    let Rref { matrix: r, pivots } = rref(m, eps);
    let free: Vec<usize> = (0..m.cols).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = Vector::zeros(m.cols);
            v[f] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// A solution of `m x = rhs` with every free variable set to zero, or `None`
/// when the system is inconsistent.
pub fn solve_particular<T: Scalar>(m: &Matrix<T>, rhs: &Vector<T>, eps: f64) -> Result<Option<Vector<T>>> {
    if rhs.dim() != m.rows {
        return Err(Error::dim(format!(
            "right-hand side has length {}, matrix has {} rows",
            rhs.dim(),
            m.rows
        )));
    }
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = rhs[i].clone();
    }
    let Rref { matrix: r, pivots } = rref(&aug, eps);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = Vector::zeros(m.cols);
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, m.cols)].clone();
    }
    Ok(Some(x))
}

pub fn nullspace_1d<T: Scalar>(m: &Matrix<T>) -> Result<Vector<T>> {
    nullspace_1d_with(m, DEFAULT_EPSILON)
}

/// Spanning vector of a one-dimensional nullspace. Rationals are scaled so
/// the first non-zero entry is 1; floats have unit Euclidean norm with the
/// first significant entry positive.
pub fn nullspace_1d_with<T: Scalar>(m: &Matrix<T>, eps: f64) -> Result<Vector<T>> {
    require_square(m, "nullspace")?;
    let mut basis = nullspace(m, eps);
    match basis.len() {
        0 => Err(Error::NoNullspace),
        1 => {
            let mut v = basis.pop().expect("one basis vector");
            normalize_direction(&mut v, eps);
            Ok(v)
        }
        k => Err(Error::NullityTooLarge { nullity: k }),
    }
}

/// Applies the scale convention of [`nullspace_1d`] to a non-zero vector.
pub fn normalize_direction<T: Scalar>(v: &mut Vector<T>, eps: f64) {
    if T::EXACT {
        if let Some(lead) = v.iter().find(|a| !a.is_zero()).cloned() {
            for a in v.0.iter_mut() {
                *a = a.clone() / lead.clone();
            }
        }
        return;
    }
    let norm = v.iter().map(|a| a.to_f64().powi(2)).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    let scale = v.norm_inf();
    let lead_negative = v
        .iter()
        .find(|a| !a.is_negligible(&scale, eps))
        .is_some_and(|a| a.is_negative());
    let k = T::from_rational(&Rational::from_float(if lead_negative { -1.0 / norm } else { 1.0 / norm }).expect("finite"));
    *v = v.scale(&k);
}
