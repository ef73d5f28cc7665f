//! Machine-readable reports and their human renderings.
//!
//! Every value in a DTO is a string, integer, bool or null, so parsing an
//! emitted report and serializing it again reproduces the same bytes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::{Classification, DegeneratePiece, FixedPointSet, ParamRange, Verdict, Witness};
use crate::bcb::{BcbReport, FamilyClass};
use crate::dynamics::{CycleWitness, Orbit, OrbitVerdict};
use crate::linalg::Vector;
use crate::scalar::Scalar;
use crate::verify::VerifyReport;

fn strs<T: Scalar>(v: &Vector<T>) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDto {
    Point {
        side: String,
        on_line: bool,
        point: Vec<String>,
    },
    Line {
        piece: String,
        base: Vec<String>,
        direction: Vec<String>,
        /// Admissible `t` is `t_min <= t <= t_max`; null means unbounded.
        t_min: Option<String>,
        t_max: Option<String>,
    },
}

impl From<&Witness> for WitnessDto {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Point(p) => WitnessDto::Point {
                side: p.side.to_string(),
                on_line: p.kind == crate::analysis::FixedKind::OnLine,
                point: strs(&p.point),
            },
            Witness::Line(l) => {
                let (t_min, t_max) = match &l.range {
                    ParamRange::All => (None, None),
                    ParamRange::AtLeast(m) => (Some(m.to_string()), None),
                    ParamRange::AtMost(m) => (None, Some(m.to_string())),
                };
                WitnessDto::Line {
                    piece: l.piece.to_string(),
                    base: strs(&l.base),
                    direction: strs(&l.direction),
                    t_min,
                    t_max,
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateDto {
    pub piece: String,
    pub nullity: usize,
    pub sample: Option<Vec<String>>,
}

impl From<&DegeneratePiece> for DegenerateDto {
    fn from(d: &DegeneratePiece) -> Self {
        DegenerateDto {
            piece: d.piece.to_string(),
            nullity: d.nullity,
            sample: d.sample.as_ref().map(strs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDto {
    pub functional: Vec<String>,
    pub increment: String,
    pub sign_flipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub verdict: String,
    pub n: usize,
    pub u: Vec<String>,
    pub s: String,
    pub det_minus: String,
    pub det_plus: String,
    pub p_full_rank: bool,
    pub witnesses: Vec<WitnessDto>,
    pub lemma_witness: Option<Vec<String>>,
    pub certificate: Option<CertificateDto>,
    pub degenerate: Vec<DegenerateDto>,
}

impl From<&Classification> for ClassifyReport {
    fn from(c: &Classification) -> Self {
        let d = &c.diagnostics;
        ClassifyReport {
            verdict: c.verdict.as_str().to_string(),
            n: d.u.dim(),
            u: strs(&d.u),
            s: d.s.to_string(),
            det_minus: d.det_minus.to_string(),
            det_plus: d.det_plus.to_string(),
            p_full_rank: d.p_full_rank,
            witnesses: c.witnesses.iter().map(WitnessDto::from).collect(),
            lemma_witness: c.lemma_witness.as_ref().map(|p| strs(&p.point)),
            certificate: c.certificate.as_ref().map(|cert| CertificateDto {
                functional: strs(&cert.functional),
                increment: cert.increment.to_string(),
                sign_flipped: cert.sign_flipped,
            }),
            degenerate: c.degenerate.iter().map(DegenerateDto::from).collect(),
        }
    }
}

fn witness_line(out: &mut String, w: &Witness) {
    match w {
        Witness::Point(p) => {
            let _ = writeln!(out, "  {} fixed point {}", p.side, p.point);
        }
        Witness::Line(l) => {
            let _ = writeln!(out, "  {} fixed line {} + t {}, {}", l.piece, l.base, l.direction, l.range);
        }
    }
}

fn degenerate_lines(out: &mut String, degenerate: &[DegeneratePiece]) {
    for d in degenerate {
        let _ = match &d.sample {
            Some(p) => writeln!(out, "  {} piece fixes a set of dimension {}, e.g. {p}", d.piece, d.nullity),
            None => writeln!(out, "  {} piece has nullity {}, no admissible fixed point", d.piece, d.nullity),
        };
    }
}

pub fn classify_human(c: &Classification) -> String {
    let d = &c.diagnostics;
    let mut out = String::new();
    match c.verdict {
        Verdict::NondegeneracyFails => {
            let found = if c.witnesses.is_empty() {
                "no fixed points found".to_string()
            } else {
                format!("{} fixed point witnesses found", c.witnesses.len())
            };
            let _ = writeln!(out, "nondegeneracy fails: u = 0; Theorem inapplicable; {found}");
        }
        Verdict::FixedPointExists => {
            let _ = writeln!(out, "fixed point exists");
        }
        Verdict::AllOrbitsDiverge => {
            let _ = writeln!(out, "all orbits diverge");
        }
    }
    for w in &c.witnesses {
        witness_line(&mut out, w);
    }
    if let Some(p) = &c.lemma_witness {
        let _ = writeln!(out, "  switching-manifold fixed point {}", p.point);
    }
    degenerate_lines(&mut out, &c.degenerate);
    if let Some(cert) = &c.certificate {
        let _ = writeln!(out, "certificate: u = {}, s = {}", cert.functional, cert.increment);
        let _ = writeln!(out, "  u . f(x) >= u . x + s for every x");
    }
    let _ = writeln!(out, "u = {}, u . c = {}", d.u, d.s);
    let _ = writeln!(out, "det(M-) = {}, det(M+) = {}", d.det_minus, d.det_plus);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointsReport {
    pub witnesses: Vec<WitnessDto>,
    pub degenerate: Vec<DegenerateDto>,
}

impl From<&FixedPointSet> for FixedPointsReport {
    fn from(f: &FixedPointSet) -> Self {
        FixedPointsReport {
            witnesses: f.witnesses.iter().map(WitnessDto::from).collect(),
            degenerate: f.degenerate.iter().map(DegenerateDto::from).collect(),
        }
    }
}

pub fn fixed_points_human(f: &FixedPointSet) -> String {
    let mut out = String::new();
    if f.is_empty() && f.degenerate.is_empty() {
        out.push_str("no fixed points\n");
    } else {
        let _ = writeln!(out, "{} fixed point witnesses", f.len());
    }
    for w in &f.witnesses {
        witness_line(&mut out, w);
    }
    degenerate_lines(&mut out, &f.degenerate);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitVerdictDto {
    ReachedFixedPoint { step: usize },
    Periodic { period: usize, start: usize },
    /// Heuristic: a large excursion does not prove divergence.
    ExitedRadius { step: usize },
    Undetermined,
}

impl From<OrbitVerdict> for OrbitVerdictDto {
    fn from(v: OrbitVerdict) -> Self {
        match v {
            OrbitVerdict::ReachedFixedPoint { step } => OrbitVerdictDto::ReachedFixedPoint { step },
            OrbitVerdict::PeriodicDetected { period, start } => OrbitVerdictDto::Periodic { period, start },
            OrbitVerdict::ExitedRadius { step } => OrbitVerdictDto::ExitedRadius { step },
            OrbitVerdict::Undetermined => OrbitVerdictDto::Undetermined,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub backend: String,
    pub verdict: OrbitVerdictDto,
    pub heuristic: bool,
    pub points: Vec<Vec<String>>,
    pub certificate_values: Vec<String>,
}

impl<T: Scalar> From<&Orbit<T>> for SimulateReport {
    fn from(o: &Orbit<T>) -> Self {
        SimulateReport {
            backend: if T::EXACT { "rational" } else { "float" }.to_string(),
            verdict: o.verdict.into(),
            heuristic: matches!(o.verdict, OrbitVerdict::ExitedRadius { .. }),
            points: o.points.iter().map(strs).collect(),
            certificate_values: o.certificate_values.iter().map(ToString::to_string).collect(),
        }
    }
}

pub fn simulate_human<T: Scalar>(o: &Orbit<T>) -> String {
    let mut out = String::new();
    let _ = match o.verdict {
        OrbitVerdict::ReachedFixedPoint { step } => writeln!(out, "fixed point reached at step {step}"),
        OrbitVerdict::PeriodicDetected { period, start } => {
            writeln!(out, "periodic, period {period} (from step {start})")
        }
        OrbitVerdict::ExitedRadius { step } => writeln!(
            out,
            "exited radius at step {step} (heuristic, not a proof of divergence)"
        ),
        OrbitVerdict::Undetermined => writeln!(out, "undetermined after {} steps", o.points.len() - 1),
    };
    for (k, p) in o.points.iter().enumerate() {
        let _ = match o.certificate_values.get(k) {
            Some(v) => writeln!(out, "{k:>6}  {p}  u.x = {v}"),
            None => writeln!(out, "{k:>6}  {p}"),
        };
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDto {
    pub period: usize,
    pub symbols: String,
    pub orbit: Vec<Vec<String>>,
    pub degenerate_family: bool,
    pub family_directions: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclesReport {
    pub max_period: usize,
    pub cycles: Vec<CycleDto>,
}

impl CyclesReport {
    pub fn new(max_period: usize, cycles: &[CycleWitness]) -> Self {
        CyclesReport {
            max_period,
            cycles: cycles
                .iter()
                .map(|c| CycleDto {
                    period: c.period,
                    symbols: c.symbol_string(),
                    orbit: c.orbit.iter().map(strs).collect(),
                    degenerate_family: c.degenerate_family,
                    family_directions: c.family_directions.iter().map(strs).collect(),
                })
                .collect(),
        }
    }
}

pub fn cycles_human(max_period: usize, cycles: &[CycleWitness]) -> String {
    let mut out = String::new();
    if cycles.is_empty() {
        let _ = writeln!(out, "no periodic orbits with period 2..={max_period}");
    }
    for c in cycles {
        let _ = writeln!(out, "period {} {}", c.period, c.symbol_string());
        for p in &c.orbit {
            let _ = writeln!(out, "  {p}");
        }
        for d in &c.family_directions {
            let _ = writeln!(out, "  family direction {d}");
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRowDto {
    pub mu: String,
    pub y_minus_1: Option<String>,
    pub y_plus_1: Option<String>,
    pub adm_minus: bool,
    pub adm_plus: bool,
    pub n_fixed_points: String,
    pub verdict: String,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BcbReportDto {
    pub class: String,
    pub fold_side: String,
    pub det_minus: String,
    pub det_plus: String,
    pub transversality: String,
    pub all_consistent: bool,
    pub rows: Vec<ScanRowDto>,
}

impl From<&BcbReport> for BcbReportDto {
    fn from(r: &BcbReport) -> Self {
        BcbReportDto {
            class: r.family.class.as_str().to_string(),
            fold_side: r.family.fold_side.to_string(),
            det_minus: r.family.det_minus.to_string(),
            det_plus: r.family.det_plus.to_string(),
            transversality: r.family.transversality.to_string(),
            all_consistent: r.all_consistent(),
            rows: r
                .rows
                .iter()
                .map(|row| ScanRowDto {
                    mu: row.mu.to_string(),
                    y_minus_1: row.y_minus_1.as_ref().map(ToString::to_string),
                    y_plus_1: row.y_plus_1.as_ref().map(ToString::to_string),
                    adm_minus: row.adm_minus,
                    adm_plus: row.adm_plus,
                    n_fixed_points: row.n_fixed_points.to_string(),
                    verdict: row.verdict.as_str().to_string(),
                    consistent: row.consistent,
                })
                .collect(),
        }
    }
}

pub fn bcb_human(r: &BcbReport) -> String {
    let f = &r.family;
    let mut out = String::new();
    let _ = match f.class {
        FamilyClass::Persistence => writeln!(out, "persistence: one fixed point on each side of mu = 0"),
        FamilyClass::NonsmoothFold => writeln!(out, "nonsmooth fold: two fixed points for {}, none on the other side", f.fold_side),
        FamilyClass::Degenerate => writeln!(out, "degenerate border collision"),
    };
    let _ = writeln!(
        out,
        "det(M-) = {}, det(M+) = {}, transversality u . c = {}",
        f.det_minus, f.det_plus, f.transversality
    );
    let bad = r.rows.iter().filter(|row| !row.consistent).count();
    let _ = writeln!(out, "{} grid points, {} inconsistent", r.rows.len(), bad);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDto {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReportDto {
    pub digest: String,
    pub n: usize,
    pub seed: u64,
    pub verdict: String,
    pub passed: bool,
    pub checks: Vec<CheckDto>,
    pub diagnostic_cycles: usize,
    pub summary: String,
}

impl From<&VerifyReport> for VerifyReportDto {
    fn from(r: &VerifyReport) -> Self {
        VerifyReportDto {
            digest: r.digest.clone(),
            n: r.n,
            seed: r.seed,
            verdict: r.verdict.as_str().to_string(),
            passed: r.passed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckDto {
                    name: c.name.to_string(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
            diagnostic_cycles: r.diagnostic_cycles,
            summary: r.summary_line(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("DTOs serialize");
    s.push('\n');
    s
}
