//! Orbits, certificate checks along orbits, and exact periodic-orbit search.

use std::collections::HashMap;

use num::{BigInt, Integer, One, Signed, Zero};
use rayon::prelude::*;

use crate::analysis::{classify, Certificate};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::pwlmap::{PwlMap, Side};
use crate::scalar::{Rational, Scalar, DEFAULT_EPSILON};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitVerdict {
    /// `points[step]` is a fixed point.
    ReachedFixedPoint { step: usize },
    /// `points[start]` recurs after `period` steps.
    PeriodicDetected { period: usize, start: usize },
    /// `points[step]` left the ball of the given radius. Heuristic only:
    /// a large excursion does not prove divergence.
    ExitedRadius { step: usize },
    Undetermined,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Orbit<T> {
    /// `points[k + 1] = f(points[k])`.
    pub points: Vec<Vector<T>>,
    pub verdict: OrbitVerdict,
    /// `u . points[k]` for the attached certificate functional, else empty.
    pub certificate_values: Vec<T>,
}

#[derive(Clone, Debug)]
pub struct SimulateOptions<T> {
    pub max_steps: usize,
    /// Exit once `||x||_inf > radius`.
    pub radius: T,
    /// Relative tolerance for float recurrence tests.
    pub eps: f64,
    /// Number of recent points a float orbit is compared against.
    pub window: usize,
    pub certificate: Option<Vector<T>>,
}

impl<T: Scalar> SimulateOptions<T> {
    pub fn new(max_steps: usize, radius: T) -> Self {
        SimulateOptions {
            max_steps,
            radius,
            eps: DEFAULT_EPSILON,
            window: 2 * DEFAULT_MAX_PERIOD,
            certificate: None,
        }
    }
}

pub fn simulate<T: Scalar>(map: &PwlMap<T>, x0: &Vector<T>, max_steps: usize, radius: T) -> Result<Orbit<T>> {
    simulate_with(map, x0, &SimulateOptions::new(max_steps, radius))
}

/// Like [`simulate`] on an exact map, recording `u . x_k` whenever the map
/// is classified as divergent.
pub fn simulate_certified(
    map: &PwlMap<Rational>,
    x0: &Vector<Rational>,
    max_steps: usize,
    radius: Rational,
) -> Result<(Orbit<Rational>, Option<Certificate>)> {
    let certificate = classify(map).certificate;
    let mut opts = SimulateOptions::new(max_steps, radius);
    opts.certificate = certificate.as_ref().map(|c| c.functional.clone());
    Ok((simulate_with(map, x0, &opts)?, certificate))
}

/// Recurrence lookup: exact hashing on rationals, a window of recent points
/// compared with tolerance on floats.
enum Visited {
    /// Keyed by normalized `(numer, denom)` pairs; hashing `Ratio` itself
    /// expands a continued fraction.
    Exact(HashMap<Vec<(BigInt, BigInt)>, usize>),
    Window { eps: f64, size: usize },
}

impl Visited {
    fn new<T: Scalar>(opts: &SimulateOptions<T>) -> Self {
        if T::EXACT {
            Visited::Exact(HashMap::new())
        } else {
            Visited::Window {
                eps: opts.eps,
                size: opts.window.max(1),
            }
        }
    }

    /// Index of an earlier point equal to `points[k]`, then records it.
    fn check_and_insert<T: Scalar>(&mut self, points: &[Vector<T>], k: usize) -> Option<usize> {
        let x = &points[k];
        match self {
            Visited::Exact(seen) => {
                let key: Vec<(BigInt, BigInt)> = x
                    .iter()
                    .map(|v| v.to_rational().expect("exact").into_raw())
                    .collect();
                match seen.get(&key) {
                    Some(&j) => Some(j),
                    None => {
                        seen.insert(key, k);
                        None
                    }
                }
            }
            Visited::Window { eps, size } => {
                let from = k.saturating_sub(*size);
                (from..k).find(|&j| points[j].approx_eq(x, *eps))
            }
        }
    }
}

/// Exact orbit held as `X / d` with integer `X` and `d`. Stepping uses
/// integer arithmetic only; gcd reductions happen every few steps.
struct ScaledOrbit {
    n: usize,
    a: Vec<BigInt>,
    b: Vec<BigInt>,
    c: Vec<BigInt>,
    /// Common denominator of the map's entries.
    l: BigInt,
    x: Vec<BigInt>,
    d: BigInt,
    steps: usize,
}

impl ScaledOrbit {
    const REDUCE_EVERY: usize = 8;

    fn new(map: &PwlMap<Rational>, x0: &Vector<Rational>) -> Self {
        let entries = map.a().as_slice().iter().chain(map.b().iter()).chain(map.c().iter());
        let l = entries.fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let scale = |q: &Rational| (q * Rational::from_integer(l.clone())).to_integer();
        let d = x0.iter().fold(BigInt::one(), |d, q| d.lcm(q.denom()));
        ScaledOrbit {
            n: map.dim(),
            a: map.a().as_slice().iter().map(scale).collect(),
            b: map.b().iter().map(scale).collect(),
            c: map.c().iter().map(scale).collect(),
            x: x0.iter().map(|q| (q * Rational::from_integer(d.clone())).to_integer()).collect(),
            l,
            d,
            steps: 0,
        }
    }

    fn step(&mut self) {
        let abs_x1 = self.x[0].abs();
        let next: Vec<BigInt> = (0..self.n)
            .map(|i| {
                let mut y = &self.b[i] * &abs_x1 + &self.c[i] * &self.d;
                for (a, x) in self.a[i * self.n..(i + 1) * self.n].iter().zip(&self.x) {
                    if !a.is_zero() {
                        y += a * x;
                    }
                }
                y
            })
            .collect();
        self.x = next;
        self.d *= &self.l;
        self.steps += 1;
        if self.steps.is_multiple_of(Self::REDUCE_EVERY) {
            let g = self.x.iter().fold(self.d.clone(), |g, v| g.gcd(v));
            if !g.is_one() {
                self.x.iter_mut().for_each(|v| *v /= &g);
                self.d /= &g;
            }
        }
    }

    /// `||X / d||_inf > r`.
    fn exceeds(&self, r: &Rational) -> bool {
        let bound = r.numer() * &self.d;
        self.x.iter().any(|v| (v.abs() * r.denom()).cmp(&bound).is_gt())
    }

    fn point(&self) -> Vector<Rational> {
        Vector::new(self.x.iter().map(|v| Rational::new(v.clone(), self.d.clone())).collect())
    }
}

pub fn simulate_with<T: Scalar>(map: &PwlMap<T>, x0: &Vector<T>, opts: &SimulateOptions<T>) -> Result<Orbit<T>> {
    if x0.dim() != map.dim() {
        return Err(Error::dim(format!(
            "initial point has length {}, map has dimension {}",
            x0.dim(),
            map.dim()
        )));
    }
    if let Some(u) = &opts.certificate {
        if u.dim() != map.dim() {
            return Err(Error::dim("certificate functional has the wrong length"));
        }
    }
    if opts.max_steps == 0 {
        return Err(Error::InvalidConfig("max_steps must be at least 1".into()));
    }
    if !opts.radius.is_positive() {
        return Err(Error::InvalidConfig("radius must be positive".into()));
    }

    let mut points = vec![x0.clone()];
    let mut visited = Visited::new(opts);
    visited.check_and_insert(&points, 0);
    let mut verdict = OrbitVerdict::Undetermined;
    let radius_exact = opts.radius.to_rational();
    if x0.norm_inf().compare(&opts.radius).is_gt() {
        verdict = OrbitVerdict::ExitedRadius { step: 0 };
    } else {
        let mut scaled = if T::EXACT {
            Some(ScaledOrbit::new(&map.to_exact()?, &x0.map(|v| v.to_rational().expect("exact"))))
        } else {
            None
        };
        for k in 0..opts.max_steps {
            let next = match &mut scaled {
                Some(s) => {
                    s.step();
                    s.point().map(T::from_rational)
                }
                None => map.eval(&points[k])?,
            };
            points.push(next);
            if let Some(j) = visited.check_and_insert(&points, k + 1) {
                let period = k + 1 - j;
                verdict = if period == 1 {
                    OrbitVerdict::ReachedFixedPoint { step: j }
                } else {
                    OrbitVerdict::PeriodicDetected { period, start: j }
                };
                break;
            }
            let exited = match (&scaled, &radius_exact) {
                (Some(s), Some(r)) => s.exceeds(r),
                _ => points[k + 1].norm_inf().compare(&opts.radius).is_gt(),
            };
            if exited {
                verdict = OrbitVerdict::ExitedRadius { step: k + 1 };
                break;
            }
        }
    }
    let certificate_values = match &opts.certificate {
        Some(u) => points.iter().map(|x| u.dot(x)).collect(),
        None => Vec::new(),
    };
    Ok(Orbit {
        points,
        verdict,
        certificate_values,
    })
}

/// Whether `u . x_{k+1} >= u . x_k + s` for every consecutive pair.
/// Vacuously true for orbits with a single point.
pub fn certificate_check<T: Scalar>(map: &PwlMap<T>, orbit: &Orbit<T>, u: &Vector<T>, s: &T) -> Result<bool> {
    if u.dim() != map.dim() {
        return Err(Error::dim(format!("functional has length {}, map has dimension {}", u.dim(), map.dim())));
    }
    if let Some(p) = orbit.points.iter().find(|p| p.dim() != map.dim()) {
        return Err(Error::dim(format!("orbit point has length {}, map has dimension {}", p.dim(), map.dim())));
    }
    if T::EXACT {
        let q = |v: &T| v.to_rational().expect("exact");
        let u: Vec<Rational> = u.iter().map(q).collect();
        let values: Vec<(BigInt, BigInt)> = orbit
            .points
            .iter()
            .map(|x| unreduced_dot(&u, &x.iter().map(q).collect::<Vec<_>>()))
            .collect();
        let s = q(s);
        return Ok(values.windows(2).all(|w| {
            let ((n0, d0), (n1, d1)) = (&w[0], &w[1]);
            // n1/d1 - n0/d0 - s >= 0 with all denominators positive.
            let lhs = n1 * d0 * s.denom() - n0 * d1 * s.denom() - s.numer() * d1 * d0;
            !lhs.is_negative()
        }));
    }
    let values: Vec<T> = orbit.points.iter().map(|x| u.dot(x)).collect();
    Ok(values.windows(2).all(|w| {
        let mut bound = w[0].clone();
        bound += s;
        w[1].compare(&bound).is_ge()
    }))
}

/// `u . x` as an unreduced fraction `(numer, denom)` with `denom > 0`.
fn unreduced_dot(u: &[Rational], x: &[Rational]) -> (BigInt, BigInt) {
    u.iter().zip(x).fold((BigInt::zero(), BigInt::one()), |(n, d), (a, b)| {
        let (bn, bd) = (a.numer() * b.numer(), a.denom() * b.denom());
        (n * &bd + bn * &d, d * bd)
    })
}

/// Period search depth used when none is given.
pub const DEFAULT_MAX_PERIOD: usize = 8;

/// Largest period [`find_cycles`] accepts unless raised.
pub const DEFAULT_PERIOD_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    /// Minimal period, at least 2.
    pub period: usize,
    /// Side of each orbit point; `Boundary` where the first component is 0.
    pub symbols: Vec<Side>,
    /// First point of the orbit.
    pub point: Vector<Rational>,
    /// `orbit[i] = f^i(point)` for `i < period`.
    pub orbit: Vec<Vector<Rational>>,
    /// The cycle equation is singular and `point` belongs to a family.
    pub degenerate_family: bool,
    /// Kernel basis of the cycle equation, first non-zero entry 1.
    pub family_directions: Vec<Vector<Rational>>,
}

impl CycleWitness {
    /// Pattern of `L`, `R` and `B` symbols, e.g. `"LLR"`.
    pub fn symbol_string(&self) -> String {
        self.symbols.iter().map(|s| s.symbol()).collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CycleSearch {
    pub max_period: usize,
    pub period_limit: usize,
}

impl CycleSearch {
    pub fn new(max_period: usize) -> Self {
        CycleSearch {
            max_period,
            period_limit: DEFAULT_PERIOD_LIMIT,
        }
    }
}

pub fn find_cycles(map: &PwlMap<Rational>, max_period: usize) -> Result<Vec<CycleWitness>> {
    find_cycles_with(map, &CycleSearch::new(max_period))
}

/// Exact search for periodic orbits of minimal period `2..=max_period`.
///
/// For every primitive symbol word over `{L, R}` taken up to rotation (the
/// Lyndon words), composes the affine pieces along the word and solves
/// `(I - M) x0 = d` for `x0 = M x0 + d`. A solution is kept when every
/// iterate lies in the half-space its symbol names (boundary points fit
/// both). Singular systems yield a family: the particular solution with free
/// variables at zero is reported when admissible, otherwise an admissible
/// member found by exact Fourier-Motzkin elimination.
pub fn find_cycles_with(map: &PwlMap<Rational>, search: &CycleSearch) -> Result<Vec<CycleWitness>> {
    if search.max_period > search.period_limit {
        return Err(Error::PeriodTooLarge {
            requested: search.max_period,
            limit: search.period_limit,
        });
    }
    if search.max_period == 0 {
        return Err(Error::InvalidConfig("max period must be at least 1".into()));
    }
    let words: Vec<Vec<Side>> = (2..=search.max_period).flat_map(lyndon_words).collect();
    let left = map.piece_matrix(Side::Left);
    let right = map.piece_matrix(Side::Right);
    let found: Vec<Option<CycleWitness>> = words
        .par_iter()
        .map(|w| solve_word(map, &left, &right, w))
        .collect::<Result<_>>()?;

    let mut out: Vec<CycleWitness> = Vec::new();
    let mut seen: Vec<Vec<Vector<Rational>>> = Vec::new();
    for w in found.into_iter().flatten() {
        let mut key = w.orbit.clone();
        key.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
        if !seen.contains(&key) {
            seen.push(key);
            out.push(w);
        }
    }
    Ok(out)
}

/// Lyndon words of length `k` over `L < R`, in lexicographic order (Duval).
fn lyndon_words(k: usize) -> Vec<Vec<Side>> {
    let mut out = Vec::new();
    let mut w: Vec<u8> = vec![0];
    while !w.is_empty() {
        if w.len() == k {
            out.push(w.iter().map(|&b| if b == 0 { Side::Left } else { Side::Right }).collect());
        }
        let len = w.len();
        while w.len() < k {
            let c = w[w.len() - len];
            w.push(c);
        }
        while w.last() == Some(&1) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last = 1;
        }
    }
    out
}

fn solve_word(
    map: &PwlMap<Rational>,
    left: &Matrix<Rational>,
    right: &Matrix<Rational>,
    word: &[Side],
) -> Result<Option<CycleWitness>> {
    let n = map.dim();
    let k = word.len();
    // x_i = P_i x0 + d_i
    let mut prefix: Vec<(Matrix<Rational>, Vector<Rational>)> = Vec::with_capacity(k + 1);
    prefix.push((Matrix::identity(n), Vector::zeros(n)));
    for &s in word {
        let a = if s == Side::Left { left } else { right };
        let (p, d) = prefix.last().expect("non-empty");
        prefix.push((a.mul(p)?, a.mul_vec(d)?.add(map.c())));
    }
    let (m, d) = &prefix[k];
    let system = Matrix::identity(n).sub(m)?;
    let Some(z) = linalg::solve_particular(&system, d, 0.0)? else {
        return Ok(None);
    };
    let kernel = linalg::nullspace(&system, 0.0);

    // Sign constraints sigma_i * (x_i)_1 <= 0 as affine functions of the kernel parameters.
    let constraints: Vec<(Vec<Rational>, Rational)> = word
        .iter()
        .zip(&prefix)
        .map(|(&s, (p, d))| {
            let sign = if s == Side::Left { 1 } else { -1 };
            let flip = |q: Rational| if sign > 0 { q } else { -q };
            let row = Vector::new(p.row(0).to_vec());
            let coeffs = kernel.iter().map(|w| flip(row.dot(w))).collect();
            let offset = flip(row.dot(&z) + d[0].clone());
            // coeffs . t + offset <= 0  <=>  coeffs . t <= -offset
            (coeffs, -offset)
        })
        .collect();

    let base_admissible = constraints.iter().all(|(_, rhs)| !rhs.is_negative());
    let point = if base_admissible {
        z
    } else if kernel.is_empty() {
        return Ok(None);
    } else {
        match fourier_motzkin(&constraints, kernel.len()) {
            Some(t) => kernel.iter().zip(&t).fold(z, |x, (w, ti)| x.axpy(ti, w)),
            None => return Ok(None),
        }
    };

    let orbit: Vec<Vector<Rational>> = std::iter::successors(Some(point.clone()), |x| map.eval(x).ok())
        .take(k + 1)
        .collect();
    assert_eq!(orbit[k], point, "cycle equation solution must return to itself");
    for (x, &s) in orbit.iter().zip(word) {
        debug_assert!(Side::of(&x[0]).admissible_for(s));
    }
    let minimal = (1..=k).find(|&p| k.is_multiple_of(p) && orbit[p] == point).expect("k is a period");
    if minimal < k {
        return Ok(None);
    }
    let mut orbit = orbit;
    orbit.truncate(k);
    let family_directions = kernel
        .into_iter()
        .map(|mut w| {
            linalg::normalize_direction(&mut w, 0.0);
            w
        })
        .collect::<Vec<_>>();
    Ok(Some(CycleWitness {
        period: k,
        symbols: orbit.iter().map(|x| Side::of(&x[0])).collect(),
        point,
        orbit,
        degenerate_family: !family_directions.is_empty(),
        family_directions,
    }))
}

/// A point `t` with `a . t <= b` for every `(a, b)`, or `None` if infeasible.
/// Exact Fourier-Motzkin elimination; back-substitution prefers `t_j = 0`,
/// otherwise the nearest bound.
fn fourier_motzkin(constraints: &[(Vec<Rational>, Rational)], vars: usize) -> Option<Vec<Rational>> {
    let mut levels: Vec<Vec<(Vec<Rational>, Rational)>> = vec![constraints.to_vec()];
    for j in (0..vars).rev() {
        let current = levels.last().expect("non-empty");
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in current {
            match c.0[j].cmp(&Rational::zero()) {
                std::cmp::Ordering::Greater => pos.push(c),
                std::cmp::Ordering::Less => neg.push(c),
                std::cmp::Ordering::Equal => rest.push(c.clone()),
            }
        }
        for p in &pos {
            for q in &neg {
                // Scale so the t_j coefficients are +1 and -1, then add.
                let sp = p.0[j].clone();
                let sq = -q.0[j].clone();
                let a: Vec<Rational> = (0..vars)
                    .map(|i| p.0[i].clone() / sp.clone() + q.0[i].clone() / sq.clone())
                    .collect();
                let b = p.1.clone() / sp.clone() + q.1.clone() / sq.clone();
                let c = (a, b);
                if !rest.contains(&c) {
                    rest.push(c);
                }
            }
        }
        levels.push(rest);
    }
    if levels.last().expect("non-empty").iter().any(|(_, b)| b.is_negative()) {
        return None;
    }

    let mut t = vec![Rational::zero(); vars];
    for j in 0..vars {
        // Constraints over t_0..=t_j, with t_0..t_{j-1} already fixed.
        let level = &levels[vars - 1 - j];
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for (a, b) in level {
            if a[j].is_zero() {
                continue;
            }
            let known: Rational = (0..j).map(|i| a[i].clone() * t[i].clone()).sum();
            let bound = (b.clone() - known) / a[j].clone();
            if a[j].is_positive() {
                upper = Some(upper.map_or(bound.clone(), |u| if bound < u { bound.clone() } else { u }));
            } else {
                lower = Some(lower.map_or(bound.clone(), |l| if bound > l { bound.clone() } else { l }));
            }
        }
        let zero = Rational::zero();
        t[j] = match (lower, upper) {
            (Some(l), _) if l > zero => l,
            (_, Some(u)) if u < zero => u,
            _ => zero,
        };
    }
    constraints
        .iter()
        .all(|(a, b)| a.iter().zip(&t).map(|(x, y)| x.clone() * y.clone()).sum::<Rational>() <= *b)
        .then_some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn lyndon_word_counts() {
        // Number of binary Lyndon words: 2, 1, 2, 3, 6, 9, 18, 30 for k = 1..8.
        let counts: Vec<usize> = (1..=8).map(|k| lyndon_words(k).len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9, 18, 30]);
        assert_eq!(lyndon_words(3), vec![
            vec![Side::Left, Side::Left, Side::Right],
            vec![Side::Left, Side::Right, Side::Right],
        ]);
    }

    #[test]
    fn counterexample_orbit_is_periodic() {
        let orbit = simulate(&counterexample(), &rv(&[(-2, 15), (-7, 5), (0, 1)]), 100, rq(1_000_000, 1)).unwrap();
        assert_eq!(orbit.verdict, OrbitVerdict::PeriodicDetected { period: 3, start: 0 });
        assert_eq!(orbit.points.len(), 4);
    }

    #[test]
    fn fixed_point_start() {
        let orbit = simulate(&translation(), &iv(&[1, 0]), 10, rq(100, 1)).unwrap();
        assert_eq!(orbit.verdict, OrbitVerdict::ReachedFixedPoint { step: 0 });
    }

    #[test]
    fn divergent_orbit_exits_with_certificate_values() {
        let (orbit, cert) = simulate_certified(&divergent_fold(), &iv(&[0, 0]), 1000, rq(1_000_000, 1)).unwrap();
        assert_eq!(orbit.verdict, OrbitVerdict::ExitedRadius { step: 20 });
        let head: Vec<Rational> = orbit.certificate_values[..5].to_vec();
        assert_eq!(head, vec![rq(0, 1), rq(1, 1), rq(3, 1), rq(7, 1), rq(15, 1)]);
        let cert = cert.unwrap();
        assert!(certificate_check(&divergent_fold(), &orbit, &cert.functional, &cert.increment).unwrap());
    }

    #[test]
    fn certificate_check_rejects_stationary_orbit() {
        let orbit = simulate(&translation(), &iv(&[1, 0]), 5, rq(10, 1)).unwrap();
        assert!(!certificate_check(&translation(), &orbit, &iv(&[1, 0]), &rq(1, 1)).unwrap());
        let single = Orbit {
            points: vec![iv(&[1, 0])],
            verdict: OrbitVerdict::Undetermined,
            certificate_values: vec![],
        };
        assert!(certificate_check(&translation(), &single, &iv(&[1, 0]), &rq(1, 1)).unwrap());
        assert!(certificate_check(&translation(), &single, &iv(&[1, 0, 0]), &rq(1, 1)).is_err());
    }

    #[test]
    fn simulate_validates_input() {
        let f = divergent_fold();
        assert!(matches!(simulate(&f, &iv(&[0, 0, 0]), 5, rq(1, 1)), Err(Error::Dimension(_))));
        assert!(simulate(&f, &iv(&[0, 0]), 0, rq(1, 1)).is_err());
        assert!(simulate(&f, &iv(&[0, 0]), 5, rq(0, 1)).is_err());
        let far = simulate(&f, &iv(&[50, 0]), 5, rq(10, 1)).unwrap();
        assert_eq!(far.verdict, OrbitVerdict::ExitedRadius { step: 0 });
    }

    #[test]
    fn float_orbit_detects_period_with_tolerance() {
        let f: PwlMap<f64> = counterexample().convert();
        let x0 = Vector::new(vec![-2.0 / 15.0, -7.0 / 5.0, 0.0]);
        let mut opts = SimulateOptions::new(100, 1e6);
        opts.eps = 1e-9;
        let orbit = simulate_with(&f, &x0, &opts).unwrap();
        assert_eq!(orbit.verdict, OrbitVerdict::PeriodicDetected { period: 3, start: 0 });
    }

    #[test]
    fn counterexample_cycle_family() {
        let cycles = find_cycles(&counterexample(), 3).unwrap();
        assert_eq!(cycles.len(), 1);
        let w = &cycles[0];
        assert_eq!(w.period, 3);
        assert_eq!(w.symbol_string(), "LLR");
        assert!(w.degenerate_family);
        assert_eq!(w.family_directions, vec![iv(&[0, 0, 1])]);
        assert_eq!(w.point, rv(&[(-2, 15), (-7, 5), (0, 1)]));
    }

    #[test]
    fn no_cycles_for_divergent_or_translation() {
        assert!(find_cycles(&divergent_fold(), 8).unwrap().is_empty());
        assert!(find_cycles(&translation(), 4).unwrap().is_empty());
    }

    #[test]
    fn period_guard() {
        assert_eq!(
            find_cycles(&translation(), 21).unwrap_err(),
            Error::PeriodTooLarge { requested: 21, limit: 20 }
        );
    }

    #[test]
    fn period_two_orbit_of_a_tent_like_map() {
        // x1 -> 1 - 2|x1| has the 2-cycle {-1/5, 3/5} among others.
        let map = PwlMap::new(im(&[&[0, 0], &[0, 0]]), iv(&[-2, 0]), iv(&[1, 0])).unwrap();
        let cycles = find_cycles(&map, 4).unwrap();
        assert!(!cycles.is_empty());
        for w in &cycles {
            assert_eq!(map.iterate(&w.point, w.period).unwrap(), w.point);
            for p in 1..w.period {
                assert_ne!(map.iterate(&w.point, p).unwrap(), w.point);
            }
            for (x, s) in w.orbit.iter().zip(&w.symbols) {
                assert_eq!(Side::of(&x[0]), *s);
            }
        }
        // No orbit is reported twice.
        let mut all: Vec<_> = cycles.iter().flat_map(|w| w.orbit.clone()).collect();
        let before = all.len();
        all.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
        all.dedup();
        assert_eq!(all.len(), before);
    }

    #[test]
    fn fourier_motzkin_finds_points() {
        // t0 + t1 <= -1, -t0 <= 3, -t1 <= 3
        let cs = vec![
            (vec![rq(1, 1), rq(1, 1)], rq(-1, 1)),
            (vec![rq(-1, 1), rq(0, 1)], rq(3, 1)),
            (vec![rq(0, 1), rq(-1, 1)], rq(3, 1)),
        ];
        let t = fourier_motzkin(&cs, 2).unwrap();
        for (a, b) in &cs {
            assert!(a[0].clone() * t[0].clone() + a[1].clone() * t[1].clone() <= *b);
        }
        // t0 <= -1 and -t0 <= 0 is infeasible.
        let bad = vec![(vec![rq(1, 1)], rq(-1, 1)), (vec![rq(-1, 1)], rq(0, 1))];
        assert!(fourier_motzkin(&bad, 1).is_none());
    }
}
