//! One-parameter border-collision families `f_mu(x) = A x + b |x1| + mu c`.
//!
//! With `A` and `b` fixed, `u` and `det(M-)`, `det(M+)` do not depend on `mu`
//! and the candidate fixed points move linearly:
//! `y-_1(mu) = mu u^T c / det(M-)`, `y+_1(mu) = mu u^T c / det(M+)`.
//! If the determinants share a sign there is one admissible fixed point on
//! each side of `mu = 0` (persistence); if they have opposite signs both are
//! admissible on one side and neither on the other (nonsmooth fold).

use std::fmt;
use std::io::{self, Write};

use num::{Signed, Zero};
use rayon::prelude::*;

use crate::analysis::{self, Verdict, Witness};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::pwlmap::PwlMap;
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct BcbFamily {
    base: PwlMap<Rational>,
}

impl BcbFamily {
    pub fn new(a: Matrix<Rational>, b: Vector<Rational>, c_dir: Vector<Rational>) -> Result<Self> {
        Ok(BcbFamily {
            base: PwlMap::new(a, b, c_dir)?,
        })
    }

    /// The family through a map, with `c` as the parameter direction.
    pub fn from_map(map: &PwlMap<Rational>) -> Self {
        BcbFamily { base: map.clone() }
    }

    pub fn c_dir(&self) -> &Vector<Rational> {
        self.base.c()
    }

    /// `f_mu`
    pub fn at(&self, mu: &Rational) -> PwlMap<Rational> {
        self.base
            .with_constant(self.base.c().scale(mu))
            .expect("dimensions fixed at construction")
    }

    /// `u^T c_dir`, the rate at which the border is crossed.
    pub fn transversality(&self) -> &Rational {
        &self.base.piece_data().s
    }

    /// `(y-_1(mu), y+_1(mu))`; `None` where the piece matrix is singular.
    pub fn branch_first_components(&self, mu: &Rational) -> (Option<Rational>, Option<Rational>) {
        let pd = self.base.piece_data();
        let t = mu.clone() * self.transversality().clone();
        let y = |d: &Rational| (!d.is_zero()).then(|| t.clone() / d.clone());
        (y(&pd.det_minus), y(&pd.det_plus))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyClass {
    Persistence,
    NonsmoothFold,
    Degenerate,
}

impl FamilyClass {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyClass::Persistence => "persistence",
            FamilyClass::NonsmoothFold => "nonsmooth_fold",
            FamilyClass::Degenerate => "degenerate",
        }
    }
}

/// The sign of `mu` on which a nonsmooth fold has its two fixed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FoldSide {
    Negative,
    Positive,
    NotApplicable,
}

impl fmt::Display for FoldSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FoldSide::Negative => "mu<0",
            FoldSide::Positive => "mu>0",
            FoldSide::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyClassification {
    pub class: FamilyClass,
    pub fold_side: FoldSide,
    pub det_minus: Rational,
    pub det_plus: Rational,
    pub transversality: Rational,
}

pub fn classify_family(family: &BcbFamily) -> FamilyClassification {
    let pd = family.base.piece_data();
    let t = family.transversality().clone();
    let product = pd.det_minus.clone() * pd.det_plus.clone();
    let (class, fold_side) = if product.is_zero() || t.is_zero() {
        (FamilyClass::Degenerate, FoldSide::NotApplicable)
    } else if product.is_positive() {
        (FamilyClass::Persistence, FoldSide::NotApplicable)
    } else {
        // Both branches admissible when mu * t / det(M-) <= 0, i.e. sign(mu) = -sign(t det(M-)).
        let side = if (t.clone() * pd.det_minus.clone()).is_positive() {
            FoldSide::Negative
        } else {
            FoldSide::Positive
        };
        (FamilyClass::NonsmoothFold, side)
    };
    FamilyClassification {
        class,
        fold_side,
        det_minus: pd.det_minus.clone(),
        det_plus: pd.det_plus.clone(),
        transversality: t,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixedCount {
    Finite(usize),
    /// A line or larger set of fixed points.
    Infinite,
}

impl fmt::Display for FixedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedCount::Finite(k) => write!(f, "{k}"),
            FixedCount::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub mu: Rational,
    pub y_minus_1: Option<Rational>,
    pub y_plus_1: Option<Rational>,
    pub adm_minus: bool,
    pub adm_plus: bool,
    pub n_fixed_points: FixedCount,
    pub verdict: Verdict,
    /// The branch-formula count agrees with the fixed-point search and the
    /// classifier at this `mu`.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BcbReport {
    pub family: FamilyClassification,
    pub rows: Vec<ScanRow>,
}

impl BcbReport {
    pub fn all_consistent(&self) -> bool {
        self.rows.iter().all(|r| r.consistent)
    }

    pub fn counts(&self) -> Vec<FixedCount> {
        self.rows.iter().map(|r| r.n_fixed_points).collect()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "mu,y_minus_1,y_plus_1,adm_minus,adm_plus,n_fixed_points")?;
        let opt = |q: &Option<Rational>| q.as_ref().map_or_else(|| "NA".to_string(), Rational::to_string);
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                r.mu,
                opt(&r.y_minus_1),
                opt(&r.y_plus_1),
                u8::from(r.adm_minus),
                u8::from(r.adm_plus),
                r.n_fixed_points
            )?;
        }
        Ok(())
    }
}

/// `grid` equally spaced exact values from `mu_from` to `mu_to` inclusive.
pub fn mu_grid(mu_from: &Rational, mu_to: &Rational, grid: usize) -> Result<Vec<Rational>> {
    if grid < 2 {
        return Err(Error::InvalidConfig(format!("grid must have at least 2 points, got {grid}")));
    }
    if mu_from >= mu_to {
        return Err(Error::InvalidConfig(format!("need mu_from < mu_to, got {mu_from} and {mu_to}")));
    }
    let step = (mu_to.clone() - mu_from.clone()) / Rational::from_integer((grid as i64 - 1).into());
    Ok((0..grid)
        .map(|i| mu_from.clone() + step.clone() * Rational::from_integer((i as i64).into()))
        .collect())
}

pub fn scan(family: &BcbFamily, mu_from: &Rational, mu_to: &Rational, grid: usize) -> Result<BcbReport> {
    let mus = mu_grid(mu_from, mu_to, grid)?;
    let rows = mus.par_iter().map(|mu| scan_row(family, mu)).collect();
    Ok(BcbReport {
        family: classify_family(family),
        rows,
    })
}

fn scan_row(family: &BcbFamily, mu: &Rational) -> ScanRow {
    let (y_minus_1, y_plus_1) = family.branch_first_components(mu);
    let adm_minus = y_minus_1.as_ref().is_some_and(|y| !y.is_positive());
    let adm_plus = y_plus_1.as_ref().is_some_and(|y| !y.is_negative());

    let map = family.at(mu);
    let found = analysis::fixed_points(&map);
    let searched = if found.witnesses.iter().any(|w| matches!(w, Witness::Line(_))) 
        || found.degenerate.iter().any(|d| d.sample.is_some())
    {
        FixedCount::Infinite
    } else {
        FixedCount::Finite(found.len())
    };

    let formula = match (&y_minus_1, &y_plus_1) {
        (Some(ym), Some(yp)) => {
            // y-_1 = y+_1 = 0 means y- = y+, a single boundary point.
            let both_boundary = ym.is_zero() && yp.is_zero();
            Some(usize::from(adm_minus) + usize::from(adm_plus) - usize::from(both_boundary))
        }
        _ => None,
    };
    let classification = analysis::classify(&map);
    let verdict_agrees = match classification.verdict {
        Verdict::NondegeneracyFails => true,
        v => (v == Verdict::FixedPointExists) == (searched != FixedCount::Finite(0)),
    };
    let consistent = verdict_agrees && formula.is_none_or(|k| FixedCount::Finite(k) == searched);

    ScanRow {
        mu: mu.clone(),
        y_minus_1,
        y_plus_1,
        adm_minus,
        adm_plus,
        n_fixed_points: searched,
        verdict: classification.verdict,
        consistent,
    }
}
