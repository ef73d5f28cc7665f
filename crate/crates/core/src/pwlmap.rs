//! Continuous two-piece piecewise-linear maps `f(x) = A x + b |x1| + c`.
//!
//! The switching manifold is always `x1 = 0` (component 0 in code). On the
//! left half-space `x1 <= 0` the map is `(A - b e1^T) x + c`, on the right
//! `(A + b e1^T) x + c`; the two agree on the switching manifold.

use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::scalar::{Rational, Scalar, DEFAULT_EPSILON};

/// Which half-space a point (or a piece) belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Boundary,
    Right,
}

impl Side {
    pub fn of<T: Scalar>(x1: &T) -> Side {
        if x1.is_zero() {
            Side::Boundary
        } else if x1.is_negative() {
            Side::Left
        } else {
            Side::Right
        }
    }

    /// Image of the side under `x -> -x`.
    pub fn mirrored(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Boundary => Side::Boundary,
            Side::Right => Side::Left,
        }
    }

    /// Whether a point with this side may be used by the piece `piece`.
    pub fn admissible_for(self, piece: Side) -> bool {
        self == Side::Boundary || self == piece
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Side::Left => "L",
            Side::Boundary => "B",
            Side::Right => "R",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Boundary => "boundary",
            Side::Right => "right",
        })
    }
}

/// Quantities derived from `(A, b, c)` that every analysis needs.
#[derive(Clone, Debug, PartialEq)]
pub struct PieceData<T> {
    /// `I - A + b e1^T`, governs fixed points of the left piece.
    pub m_minus: Matrix<T>,
    /// `I - A - b e1^T`, governs fixed points of the right piece.
    pub m_plus: Matrix<T>,
    pub det_minus: T,
    pub det_plus: T,
    /// First row of `adj(I - A)`, equal to the first row of `adj(M-)` and `adj(M+)`.
    pub u: Vector<T>,
    /// `u . c`
    pub s: T,
    /// Columns 2..n of `I - A` are linearly independent.
    pub p_full_rank: bool,
}

impl<T: Scalar> PieceData<T> {
    pub fn m(&self, piece: Side) -> &Matrix<T> {
        match piece {
            Side::Left => &self.m_minus,
            _ => &self.m_plus,
        }
    }

    pub fn det(&self, piece: Side) -> &T {
        match piece {
            Side::Left => &self.det_minus,
            _ => &self.det_plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PwlMap<T> {
    a: Matrix<T>,
    b: Vector<T>,
    c: Vector<T>,
    pieces: PieceData<T>,
}

impl<T: Scalar> PwlMap<T> {
    pub fn new(a: Matrix<T>, b: Vector<T>, c: Vector<T>) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() {
            return Err(Error::dim(format!("A must be square, got {}x{}", a.rows(), a.cols())));
        }
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if b.dim() != n {
            return Err(Error::dim(format!("b has length {}, expected {n}", b.dim())));
        }
        if c.dim() != n {
            return Err(Error::dim(format!("c has length {}, expected {n}", c.dim())));
        }
        let pieces = compute_piece_data(&a, &b, &c);
        Ok(PwlMap { a, b, c, pieces })
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn b(&self) -> &Vector<T> {
        &self.b
    }

    pub fn c(&self) -> &Vector<T> {
        &self.c
    }

    pub fn piece_data(&self) -> &PieceData<T> {
        &self.pieces
    }

    /// Linear part of one piece: `A - b e1^T` (left) or `A + b e1^T` (right).
    /// `Side::Boundary` is treated as the right piece.
    pub fn piece_matrix(&self, piece: Side) -> Matrix<T> {
        let mut m = self.a.clone();
        for i in 0..self.dim() {
            match piece {
                Side::Left => m[(i, 0)] -= &self.b[i],
                _ => m[(i, 0)] += &self.b[i],
            }
        }
        m
    }

    fn check_dim(&self, x: &Vector<T>) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::dim(format!("point has length {}, map has dimension {}", x.dim(), self.dim())));
        }
        Ok(())
    }

    /// `A x + b |x1| + c`
    pub fn eval(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.check_dim(x)?;
        let mut y = self.a.mul_vec(x)?;
        let abs_x1 = x[0].abs();
        for i in 0..self.dim() {
            let mut t = self.b[i].clone();
            t *= &abs_x1;
            y[i] += &t;
            y[i] += &self.c[i];
        }
        Ok(y)
    }

    /// `f^k(x0)`, with `f^0` the identity.
    pub fn iterate(&self, x0: &Vector<T>, k: usize) -> Result<Vector<T>> {
        self.check_dim(x0)?;
        let mut x = x0.clone();
        for _ in 0..k {
            x = self.eval(&x)?;
        }
        Ok(x)
    }

    /// The conjugate `h . f . h` with `h(x) = -x`, which is `(A, -b, -c)`.
    pub fn negate_conjugate(&self) -> PwlMap<T> {
        let b = self.b.neg();
        let c = self.c.neg();
        let mut pieces = self.pieces.clone();
        // Negating b swaps the roles of M- and M+.
        std::mem::swap(&mut pieces.m_minus, &mut pieces.m_plus);
        std::mem::swap(&mut pieces.det_minus, &mut pieces.det_plus);
        pieces.s = -pieces.s;
        PwlMap {
            a: self.a.clone(),
            b,
            c,
            pieces,
        }
    }

    /// Same `A` and `b` with a new constant term.
    pub fn with_constant(&self, c: Vector<T>) -> Result<PwlMap<T>> {
        PwlMap::new(self.a.clone(), self.b.clone(), c)
    }

    /// Converts every entry to the exact backend.
    pub fn to_exact(&self) -> Result<PwlMap<Rational>> {
        let conv = |x: &T, what: &str| {
            x.to_rational()
                .ok_or_else(|| Error::parse(what, format!("non-finite entry {x}")))
        };
        let a = Matrix::new(
            self.dim(),
            self.dim(),
            self.a.as_slice().iter().map(|x| conv(x, "A")).collect::<Result<_>>()?,
        )?;
        let b = Vector::new(self.b.iter().map(|x| conv(x, "b")).collect::<Result<_>>()?);
        let c = Vector::new(self.c.iter().map(|x| conv(x, "c")).collect::<Result<_>>()?);
        PwlMap::new(a, b, c)
    }

    /// Converts every entry to backend `U`.
    pub fn convert<U: Scalar>(&self) -> PwlMap<U> {
        let conv = |x: &T| U::from_rational(&x.to_rational().unwrap_or_else(Rational::zero));
        PwlMap::new(self.a.map(conv), self.b.map(conv), self.c.map(conv))
            .expect("dimensions already validated")
    }
}

fn compute_piece_data<T: Scalar>(a: &Matrix<T>, b: &Vector<T>, c: &Vector<T>) -> PieceData<T> {
    let n = a.rows();
    let i_minus_a = Matrix::identity(n).sub(a).expect("square");
    let mut m_minus = i_minus_a.clone();
    let mut m_plus = i_minus_a.clone();
    for i in 0..n {
        m_minus[(i, 0)] += &b[i];
        m_plus[(i, 0)] -= &b[i];
    }
    let det_minus = linalg::det(&m_minus).expect("square");
    let det_plus = linalg::det(&m_plus).expect("square");
    let u = linalg::adjugate_first_row(&i_minus_a).expect("square");
    let s = u.dot(c);

    let p = i_minus_a.columns_from(1);
    let p_rank_full = linalg::rank(&p, DEFAULT_EPSILON) == n - 1;
    let p_full_rank = if T::EXACT {
        let from_u = !u.is_zero();
        assert_eq!(
            from_u, p_rank_full,
            "u != 0 must agree with rank(P) = n - 1 for exact input"
        );
        from_u
    } else {
        p_rank_full
    };

    PieceData {
        m_minus,
        m_plus,
        det_minus,
        det_plus,
        u,
        s,
        p_full_rank,
    }
}

/// Builds the normal form from two affine pieces `x -> A_L x + c_L` (for
/// `x1 <= 0`) and `x -> A_R x + c_R` (for `x1 >= 0`). Continuity across
/// `x1 = 0` requires equal constants and equal columns 2..n.
pub fn from_two_pieces<T: Scalar>(
    a_left: &Matrix<T>,
    a_right: &Matrix<T>,
    c_left: &Vector<T>,
    c_right: &Vector<T>,
) -> Result<PwlMap<T>> {
    let n = a_left.rows();
    if !a_left.is_square() || a_right.rows() != n || a_right.cols() != n {
        return Err(Error::dim(format!(
            "piece matrices must both be {n}x{n}, got {}x{} and {}x{}",
            a_left.rows(),
            a_left.cols(),
            a_right.rows(),
            a_right.cols()
        )));
    }
    if c_left.dim() != n || c_right.dim() != n {
        return Err(Error::dim(format!(
            "constant terms must have length {n}, got {} and {}",
            c_left.dim(),
            c_right.dim()
        )));
    }
    for j in 1..n {
        for i in 0..n {
            if !a_left[(i, j)].approx_eq(&a_right[(i, j)], DEFAULT_EPSILON) {
                return Err(Error::NotContinuous(format!(
                    "column {} differs (row {}: {} vs {})",
                    j + 1,
                    i + 1,
                    a_left[(i, j)],
                    a_right[(i, j)]
                )));
            }
        }
    }
    for i in 0..n {
        if !c_left[i].approx_eq(&c_right[i], DEFAULT_EPSILON) {
            return Err(Error::NotContinuous(format!(
                "constant term differs in component {} ({} vs {})",
                i + 1,
                c_left[i],
                c_right[i]
            )));
        }
    }
    let two = T::from_i64(2);
    let a = a_left.add(a_right)?.map(|x| x.clone() / two.clone());
    let b = a_right.column(0).sub(&a_left.column(0)).map(|x| x.clone() / two.clone());
    PwlMap::new(a, b, c_left.clone())
}
