//! Fixed points and the existence-or-divergence classifier.
//!
//! Write `M- = I - A + b e1^T`, `M+ = I - A - b e1^T` and `u^T = e1^T adj(I - A)`.
//! Because `u` does not depend on the first column, `u^T` is also the first
//! row of `adj(M-)` and `adj(M+)`, which gives
//!
//! ```text
//! y-_1 det(M-) = u^T c = y+_1 det(M+)
//! ```
//!
//! for the fixed points `y-`, `y+` of the two linear pieces. When `u != 0`
//! this decides everything: either an admissible fixed point exists, or
//! (after the sign change `x -> -x` that makes `u^T c > 0`) `det(M-) >= 0`,
//! `det(M+) <= 0` and every orbit satisfies `u^T f(x) >= u^T x + u^T c`.
//!
//! All decisions here are made on [`Rational`] input.

use std::fmt;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::pwlmap::{PieceData, PwlMap, Side};
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixedKind {
    /// The unique fixed point of a piece with `det(M) != 0`.
    Isolated,
    /// A point picked from a line of fixed points.
    OnLine,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    pub point: Vector<Rational>,
    pub side: Side,
    pub kind: FixedKind,
}

impl FixedPoint {
    pub fn negated(&self) -> FixedPoint {
        FixedPoint {
            point: self.point.neg(),
            side: self.side.mirrored(),
            kind: self.kind,
        }
    }
}

/// Admissible values of the line parameter `t`. Never empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ParamRange {
    All,
    AtMost(Rational),
    AtLeast(Rational),
}

impl ParamRange {
    pub fn contains(&self, t: &Rational) -> bool {
        match self {
            ParamRange::All => true,
            ParamRange::AtMost(m) => t <= m,
            ParamRange::AtLeast(m) => t >= m,
        }
    }

    /// The range of `-t`.
    pub fn negated(&self) -> ParamRange {
        match self {
            ParamRange::All => ParamRange::All,
            ParamRange::AtMost(m) => ParamRange::AtLeast(-m.clone()),
            ParamRange::AtLeast(m) => ParamRange::AtMost(-m.clone()),
        }
    }

    /// A deterministic member: 0 if admissible, otherwise the endpoint.
    pub fn sample(&self) -> Rational {
        match self {
            ParamRange::AtMost(m) | ParamRange::AtLeast(m) if !self.contains(&Rational::zero()) => m.clone(),
            _ => Rational::zero(),
        }
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamRange::All => f.write_str("t any"),
            ParamRange::AtMost(m) => write!(f, "t <= {m}"),
            ParamRange::AtLeast(m) => write!(f, "t >= {m}"),
        }
    }
}

/// Fixed points `base + t * direction` of one piece, for every `t` in `range`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedLine {
    /// `Left` or `Right`; `Boundary` when the whole line lies on `x1 = 0`.
    pub piece: Side,
    pub base: Vector<Rational>,
    pub direction: Vector<Rational>,
    pub range: ParamRange,
}

impl FixedLine {
    pub fn point_at(&self, t: &Rational) -> Vector<Rational> {
        self.base.axpy(t, &self.direction)
    }

    /// Whether `p` lies on the admissible part of the line.
    pub fn contains(&self, p: &Vector<Rational>) -> bool {
        line_parameter(&self.direction, &p.sub(&self.base)).is_some_and(|t| self.range.contains(&t))
    }

    pub fn negated(&self) -> FixedLine {
        FixedLine {
            piece: self.piece.mirrored(),
            base: self.base.neg(),
            direction: self.direction.clone(),
            range: self.range.negated(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    Point(FixedPoint),
    Line(FixedLine),
}

impl Witness {
    fn order_key(&self) -> Side {
        match self {
            Witness::Point(p) => p.side,
            Witness::Line(l) => l.piece,
        }
    }

    pub fn negated(&self) -> Witness {
        match self {
            Witness::Point(p) => Witness::Point(p.negated()),
            Witness::Line(l) => Witness::Line(l.negated()),
        }
    }

    /// A concrete fixed point carried by this witness.
    pub fn representative(&self) -> Vector<Rational> {
        match self {
            Witness::Point(p) => p.point.clone(),
            Witness::Line(l) => l.point_at(&l.range.sample()),
        }
    }
}

/// A piece whose matrix has nullity two or more. Only possible when `u = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneratePiece {
    pub piece: Side,
    pub nullity: usize,
    /// An admissible fixed point of the piece, if one exists.
    pub sample: Option<Vector<Rational>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixedPointSet {
    /// Ordered left, boundary, right.
    pub witnesses: Vec<Witness>,
    pub degenerate: Vec<DegeneratePiece>,
}

impl FixedPointSet {
    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }
}

/// All admissible fixed points of `f`.
///
/// A piece with `det(M) != 0` contributes its unique fixed point when it lies
/// in the piece's half-space. A singular piece with a one-dimensional kernel
/// contributes a half-line or line when `M z = c` is solvable; when `u != 0`
/// solvability is exactly `u^T c = 0`, since `u` then spans the left kernel.
/// In particular a singular piece with `u^T c != 0` has no fixed points.
pub fn fixed_points(map: &PwlMap<Rational>) -> FixedPointSet {
    let pd = map.piece_data();
    let mut points: Vec<FixedPoint> = Vec::new();
    let mut lines: Vec<FixedLine> = Vec::new();
    let mut degenerate = Vec::new();

    for piece in [Side::Left, Side::Right] {
        let m = pd.m(piece);
        if !pd.det(piece).is_zero() {
            let y = linalg::solve_unique(m, map.c()).expect("non-singular");
            let side = Side::of(&y[0]);
            if side.admissible_for(piece) {
                points.push(FixedPoint {
                    point: y,
                    side,
                    kind: FixedKind::Isolated,
                });
            }
            continue;
        }
        let kernel = linalg::nullspace(m, 0.0);
        let Some(z) = linalg::solve_particular(m, map.c(), 0.0).expect("square") else {
            continue;
        };
        if kernel.len() == 1 {
            debug_assert!(pd.u.is_zero() || pd.s.is_zero());
            let mut v = kernel.into_iter().next().expect("one vector");
            linalg::normalize_direction(&mut v, 0.0);
            if let Some(line) = admissible_line(piece, z, v) {
                lines.push(line);
            }
        } else {
            let sample = kernel
                .iter()
                .find(|w| !w[0].is_zero())
                .map(|w| z.axpy(&(-z[0].clone() / w[0].clone()), w))
                .or_else(|| Side::of(&z[0]).admissible_for(piece).then(|| z.clone()));
            degenerate.push(DegeneratePiece {
                piece,
                nullity: kernel.len(),
                sample,
            });
        }
    }

    // A line lying on the switching manifold is fixed by both pieces.
    if lines.len() == 2 && lines[0].piece == Side::Boundary && lines[1].piece == Side::Boundary {
        let d = lines[1].base.sub(&lines[0].base);
        if lines[0].direction == lines[1].direction && line_parameter(&lines[0].direction, &d).is_some() {
            lines.pop();
        }
    }
    points.dedup_by(|b, a| a.point == b.point);
    points.retain(|p| !lines.iter().any(|l| l.contains(&p.point)));

    let mut witnesses: Vec<Witness> = lines
        .into_iter()
        .map(Witness::Line)
        .chain(points.into_iter().map(Witness::Point))
        .collect();
    witnesses.sort_by_key(Witness::order_key);
    FixedPointSet {
        witnesses,
        degenerate,
    }
}

/// `t` with `offset = t * direction`, if any.
fn line_parameter(direction: &Vector<Rational>, offset: &Vector<Rational>) -> Option<Rational> {
    let k = direction.iter().position(|x| !x.is_zero())?;
    let t = offset[k].clone() / direction[k].clone();
    (*offset == direction.scale(&t)).then_some(t)
}

/// The admissible part of `{z + t v}` for `piece`, or `None` if empty.
fn admissible_line(piece: Side, z: Vector<Rational>, v: Vector<Rational>) -> Option<FixedLine> {
    let (range, piece) = if v[0].is_zero() {
        let side = Side::of(&z[0]);
        if !side.admissible_for(piece) {
            return None;
        }
        let piece = if side == Side::Boundary { Side::Boundary } else { piece };
        (ParamRange::All, piece)
    } else {
        // z1 + t v1 <= 0 on the left, >= 0 on the right.
        let tau = -z[0].clone() / v[0].clone();
        let below = (piece == Side::Left) == v[0].is_positive();
        let range = if below {
            ParamRange::AtMost(tau)
        } else {
            ParamRange::AtLeast(tau)
        };
        (range, piece)
    };
    Some(FixedLine {
        piece,
        base: z,
        direction: v,
        range,
    })
}

/// A fixed point guaranteed to exist when `u != 0` and `u^T c = 0`.
///
/// If `M-` is invertible its fixed point has first component
/// `u^T c / det(M-) = 0`. Otherwise `M-` has a one-dimensional kernel spanned
/// by `v` with `v1 != 0`, `M- z = c` is solvable, and `z + t v` with
/// `t = -z1 / v1` is a fixed point on the switching manifold.
pub fn lemma_construct(map: &PwlMap<Rational>) -> Result<FixedPoint> {
    let pd = map.piece_data();
    if pd.u.is_zero() {
        return Err(Error::Contract("u = 0, columns 2..n of I - A are dependent".into()));
    }
    if !pd.s.is_zero() {
        return Err(Error::Contract(format!("u^T c = {} is not zero", pd.s)));
    }
    if !pd.det_minus.is_zero() {
        let y = linalg::solve_unique(&pd.m_minus, map.c())?;
        debug_assert!(y[0].is_zero());
        return Ok(FixedPoint {
            point: y,
            side: Side::Boundary,
            kind: FixedKind::Isolated,
        });
    }
    let v = linalg::nullspace_1d(&pd.m_minus)?;
    let z = linalg::solve_particular(&pd.m_minus, map.c(), 0.0)?
        .ok_or_else(|| Error::Contract("M- z = c has no solution".into()))?;
    if v[0].is_zero() {
        return Err(Error::Contract("kernel of M- lies in x1 = 0".into()));
    }
    let t = -z[0].clone() / v[0].clone();
    Ok(FixedPoint {
        point: z.axpy(&t, &v),
        side: Side::Boundary,
        kind: FixedKind::OnLine,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    FixedPointExists,
    AllOrbitsDiverge,
    NondegeneracyFails,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::FixedPointExists => "fixed_point_exists",
            Verdict::AllOrbitsDiverge => "all_orbits_diverge",
            Verdict::NondegeneracyFails => "nondegeneracy_fails",
        }
    }
}

/// `functional . f(x) >= functional . x + increment` for every `x`, with
/// `increment > 0`. Expressed in the coordinates of the classified map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub functional: Vector<Rational>,
    pub increment: Rational,
    /// The map had `u^T c < 0`; the certificate is `(-u, -u^T c)`.
    pub sign_flipped: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    /// Every admissible fixed point (best effort when nondegeneracy fails).
    pub witnesses: Vec<Witness>,
    /// Point constructed by [`lemma_construct`] when `u^T c = 0`.
    pub lemma_witness: Option<FixedPoint>,
    pub certificate: Option<Certificate>,
    pub degenerate: Vec<DegeneratePiece>,
    pub diagnostics: PieceData<Rational>,
}

pub fn classify(map: &PwlMap<Rational>) -> Classification {
    let pd = map.piece_data();
    let found = fixed_points(map);
    let mut out = Classification {
        verdict: Verdict::NondegeneracyFails,
        witnesses: Vec::new(),
        lemma_witness: None,
        certificate: None,
        degenerate: found.degenerate,
        diagnostics: pd.clone(),
    };

    if pd.u.is_zero() {
        out.witnesses = found.witnesses;
        return out;
    }

    if pd.s.is_zero() {
        out.verdict = Verdict::FixedPointExists;
        out.lemma_witness = Some(lemma_construct(map).expect("preconditions hold"));
        out.witnesses = found.witnesses;
    } else if pd.s.is_negative() {
        let mirrored = classify(&map.negate_conjugate());
        out.verdict = mirrored.verdict;
        out.witnesses = mirrored.witnesses.iter().map(Witness::negated).collect();
        out.witnesses.sort_by_key(Witness::order_key);
        debug_assert_eq!(out.witnesses, found.witnesses);
        out.certificate = mirrored.certificate.map(|c| Certificate {
            functional: c.functional.neg(),
            increment: c.increment,
            sign_flipped: true,
        });
    } else if pd.det_minus.is_negative() || pd.det_plus.is_positive() {
        out.verdict = Verdict::FixedPointExists;
        out.witnesses = found.witnesses;
    } else {
        out.verdict = Verdict::AllOrbitsDiverge;
        out.certificate = Some(Certificate {
            functional: pd.u.clone(),
            increment: pd.s.clone(),
            sign_flipped: false,
        });
    }

    debug_assert_eq!(
        out.verdict == Verdict::FixedPointExists,
        !out.witnesses.is_empty(),
        "verdict disagrees with the fixed point search"
    );
    out
}
