//! Seeded random maps and an oracle harness that re-checks classifier
//! verdicts by brute force.
//!
//! # Generator
//!
//! Maps are drawn from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! whose output stream is fixed across platforms and releases. Each entry is
//! `p / q` with `p` uniform in `[-numerator_bound, numerator_bound]` and `q`
//! uniform in `[1, denominator_bound]`, both drawn by rejection sampling on
//! raw `u64` output. Entries are drawn in the order `A` (row-major), `b`, `c`.

use std::fmt;

use num::{Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::analysis::{self, classify, Verdict, Witness};
use crate::dynamics::{self, certificate_check, find_cycles, OrbitVerdict, SimulateOptions};
use crate::error::{Error, Result};
use crate::io::map_to_json;
use crate::linalg::{Matrix, Vector};
use crate::pwlmap::PwlMap;
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    pub seed: u64,
    pub numerator_bound: u32,
    pub denominator_bound: u32,
}

impl GenConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        GenConfig {
            n,
            seed,
            numerator_bound: 10,
            denominator_bound: 10,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!("n must be at least 2, got {}", self.n)));
        }
        if self.numerator_bound < 1 || self.denominator_bound < 1 {
            return Err(Error::InvalidConfig("bounds must be at least 1".into()));
        }
        Ok(())
    }
}

/// Deterministic source of bounded rationals.
pub struct RationalSampler {
    rng: ChaCha8Rng,
    numerator_bound: i64,
    denominator_bound: i64,
}

impl RationalSampler {
    pub fn new(seed: u64, numerator_bound: u32, denominator_bound: u32) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            numerator_bound: numerator_bound.into(),
            denominator_bound: denominator_bound.into(),
        }
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo) as u64 + 1;
        let zone = u64::MAX - (u64::MAX - span + 1) % span;
        loop {
            let v = self.rng.next_u64();
            if v <= zone {
                return lo + (v % span) as i64;
            }
        }
    }

    pub fn entry(&mut self) -> Rational {
        let p = self.int(-self.numerator_bound, self.numerator_bound);
        let q = self.int(1, self.denominator_bound);
        Rational::new(p.into(), q.into())
    }

    pub fn vector(&mut self, n: usize) -> Vector<Rational> {
        Vector::new((0..n).map(|_| self.entry()).collect())
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix<Rational> {
        Matrix::new(rows, cols, (0..rows * cols).map(|_| self.entry()).collect()).expect("sized")
    }

    /// Point with coordinates `p / q`, `q` in `[1, denominator_bound]`, `|p / q| <= bound`.
    pub fn point(&mut self, n: usize, bound: i64) -> Vector<Rational> {
        Vector::new(
            (0..n)
                .map(|_| {
                    let q = self.int(1, self.denominator_bound);
                    let p = self.int(-bound * q, bound * q);
                    Rational::new(p.into(), q.into())
                })
                .collect(),
        )
    }
}

pub fn random_map(config: &GenConfig) -> Result<PwlMap<Rational>> {
    config.validate()?;
    let mut s = RationalSampler::new(config.seed, config.numerator_bound, config.denominator_bound);
    let a = s.matrix(config.n, config.n);
    let b = s.vector(config.n);
    let c = s.vector(config.n);
    PwlMap::new(a, b, c)
}

/// First 16 hex digits of the SHA-256 of the map's canonical JSON.
pub fn map_digest(map: &PwlMap<Rational>) -> String {
    let hash = Sha256::digest(map_to_json(map).as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValidateConfig {
    pub trials: usize,
    pub steps: usize,
    pub max_period: usize,
    /// Seed for initial points of the random orbits.
    pub seed: u64,
    /// Coordinates of initial points lie in `[-point_bound, point_bound]`.
    pub point_bound: i64,
    /// Escape radius for orbits of divergent maps.
    pub radius: i64,
}

impl ValidateConfig {
    pub fn new(trials: usize, steps: usize, max_period: usize, seed: u64) -> Self {
        ValidateConfig {
            trials,
            steps,
            max_period,
            seed,
            point_bound: 10,
            radius: 100_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub digest: String,
    pub n: usize,
    pub seed: u64,
    pub verdict: Verdict,
    pub checks: Vec<CheckResult>,
    /// Periodic orbits found when nondegeneracy fails (diagnostic only).
    pub diagnostic_cycles: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// `PASS n=3 seed=7` or `FAIL n=3 seed=7 check=no_cycles`.
    pub fn summary_line(&self) -> String {
        match self.first_failure() {
            None => format!("PASS n={} seed={}", self.n, self.seed),
            Some(c) => format!("FAIL n={} seed={} check={}", self.n, self.seed, c.name),
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "map {} (n = {}), verdict {}", self.digest, self.n, self.verdict.as_str())?;
        for c in &self.checks {
            writeln!(f, "  [{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail)?;
        }
        if self.diagnostic_cycles > 0 {
            writeln!(f, "  periodic orbits found: {}", self.diagnostic_cycles)?;
        }
        write!(f, "{}", self.summary_line())
    }
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name,
        passed,
        detail: detail.into(),
    }
}

/// Classifies `map` and attacks the verdict with independent evidence.
///
/// Any failed check is an implementation bug: the verdicts are theorems.
pub fn oracle_validate(map: &PwlMap<Rational>, config: &ValidateConfig) -> Result<VerifyReport> {
    let c = classify(map);
    let mut checks = Vec::new();
    let mut diagnostic_cycles = 0;
    let pd = map.piece_data();

    match c.verdict {
        Verdict::FixedPointExists => {
            let mut bad = Vec::new();
            for (i, w) in c.witnesses.iter().enumerate() {
                if !witness_is_exact(map, w)? {
                    bad.push(i);
                }
            }
            if let Some(fp) = &c.lemma_witness {
                if map.eval(&fp.point)? != fp.point || !fp.point[0].is_zero() {
                    bad.push(usize::MAX);
                }
            }
            checks.push(check(
                "witness_exactness",
                bad.is_empty() && !c.witnesses.is_empty(),
                format!("{} witnesses, {} failing", c.witnesses.len(), bad.len()),
            ));
        }
        Verdict::AllOrbitsDiverge => {
            let cert = c.certificate.clone().expect("divergent verdict carries a certificate");
            let normalized = if cert.sign_flipped { map.negate_conjugate() } else { map.clone() };
            let npd = normalized.piece_data();
            checks.push(check(
                "certificate_signs",
                npd.p_full_rank && npd.s.is_positive() && !npd.det_minus.is_negative() && !npd.det_plus.is_positive(),
                format!("s = {}, det(M-) = {}, det(M+) = {}", npd.s, npd.det_minus, npd.det_plus),
            ));

            let mut sampler = RationalSampler::new(config.seed, 10, 10);
            let mut opts = SimulateOptions::new(config.steps.max(1), Rational::from_integer(config.radius.into()));
            opts.certificate = None;
            let mut monotone_failures = Vec::new();
            let mut escape_failures = Vec::new();
            for trial in 0..config.trials {
                let x0 = sampler.point(map.dim(), config.point_bound);
                let orbit = dynamics::simulate_with(map, &x0, &opts)?;
                let monotone = certificate_check(map, &orbit, &cert.functional, &cert.increment)?;
                if !monotone {
                    monotone_failures.push(trial);
                }
                // Slowly drifting orbits may stay inside the radius; strictly
                // growing u . x along the whole orbit is accepted instead.
                let escaped = match orbit.verdict {
                    OrbitVerdict::ExitedRadius { .. } => true,
                    OrbitVerdict::Undetermined => monotone,
                    OrbitVerdict::ReachedFixedPoint { .. } | OrbitVerdict::PeriodicDetected { .. } => false,
                };
                if !escaped {
                    escape_failures.push(trial);
                }
            }
            checks.push(check(
                "certificate_monotonicity",
                monotone_failures.is_empty(),
                format!("{} orbits, failing trials {:?}", config.trials, monotone_failures),
            ));
            checks.push(check(
                "orbit_escape",
                escape_failures.is_empty(),
                format!("{} orbits, recurrent trials {:?}", config.trials, escape_failures),
            ));

            let cycles = find_cycles(map, config.max_period)?;
            checks.push(check(
                "no_cycles",
                cycles.is_empty(),
                format!("{} periodic orbits up to period {}", cycles.len(), config.max_period),
            ));
            let fps = analysis::fixed_points(map);
            checks.push(check(
                "no_fixed_points",
                fps.is_empty() && fps.degenerate.is_empty(),
                format!("{} fixed point witnesses", fps.len()),
            ));
        }
        Verdict::NondegeneracyFails => {
            checks.push(check("u_is_zero", pd.u.is_zero(), format!("u = {}", pd.u)));
            diagnostic_cycles = find_cycles(map, config.max_period)?.len();
        }
    }

    Ok(VerifyReport {
        digest: map_digest(map),
        n: map.dim(),
        seed: config.seed,
        verdict: c.verdict,
        checks,
        diagnostic_cycles,
    })
}

/// Generates and validates one map per config in parallel. Each config's
/// seed also seeds the orbit starts; reports come back in input order.
pub fn validate_batch(
    configs: &[GenConfig],
    trials: usize,
    steps: usize,
    max_period: usize,
) -> Result<Vec<VerifyReport>> {
    configs
        .par_iter()
        .map(|g| oracle_validate(&random_map(g)?, &ValidateConfig::new(trials, steps, max_period, g.seed)))
        .collect()
}

/// Re-checks a witness by direct evaluation, including for lines the
/// defining equations and a sample point in the admissible range.
fn witness_is_exact(map: &PwlMap<Rational>, w: &Witness) -> Result<bool> {
    Ok(match w {
        Witness::Point(p) => {
            map.eval(&p.point)? == p.point && crate::pwlmap::Side::of(&p.point[0]) == p.side
        }
        Witness::Line(l) => {
            let m = map.piece_data().m(l.piece);
            let on_line = m.mul_vec(&l.base)? == *map.c() && m.mul_vec(&l.direction)?.is_zero();
            let sample = l.range.sample();
            let far = match &l.range {
                analysis::ParamRange::AtMost(e) => e.clone() - Rational::from_integer(7.into()),
                analysis::ParamRange::AtLeast(e) => e.clone() + Rational::from_integer(7.into()),
                analysis::ParamRange::All => Rational::from_integer(7.into()),
            };
            let all_fixed = [sample, far].iter().all(|t| {
                let x = l.point_at(t);
                map.eval(&x).map(|y| y == x).unwrap_or(false)
            });
            on_line && all_fixed
        }
    })
}
