//! Generating-curve ODEs and their fixed-step integration.
//!
//! A problem fixes the ambient group, the curvature condition imposed on the
//! swept surface, and the initial state `γ(0)`. The state `(x, y, θ)` evolves by
//! `x' = cosθ, y' = sinθ, θ' = κ(x, y, θ)`.

mod intersect;

pub use intersect::{detect_self_intersections, Crossing};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fundforms::{theta_prime_for_h, CurveState};
use crate::liegroup::Ambient;

/// Default RK4 step.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Integration aborts when `|y cosθ − x sinθ|` drops below this on a zero-K run.
pub const DEFAULT_ZERO_K_GUARD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Target {
    /// Constant mean curvature `H`.
    MeanCurvature(f64),
    /// Zero Gaussian curvature; only defined for the flat `Ẽ(2)`.
    ZeroGauss,
}

impl Target {
    pub const MINIMAL: Target = Target::MeanCurvature(0.0);
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeProblem {
    pub ambient: Ambient,
    pub target: Target,
    /// State at `t = 0`.
    pub initial: CurveState,
    /// Sampled window; `t0 > t1` yields samples in decreasing `t`.
    pub t_span: (f64, f64),
    pub step: f64,
}

impl OdeProblem {
    pub fn new(
        ambient: Ambient,
        target: Target,
        initial: CurveState,
        t_span: (f64, f64),
        step: f64,
    ) -> Result<Self> {
        let p = OdeProblem {
            ambient,
            target,
            initial,
            t_span,
            step,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.ambient.validate()?;
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidStep(self.step));
        }
        let (t0, t1) = self.t_span;
        if !(t0.is_finite() && t1.is_finite()) || t0 == t1 {
            return Err(Error::InvalidParameter(format!(
                "t_span must be two distinct finite values, got ({t0}, {t1})"
            )));
        }
        if !self.initial.is_finite() {
            return Err(Error::InvalidParameter("initial state must be finite".into()));
        }
        match self.target {
            Target::MeanCurvature(h) if !h.is_finite() => Err(Error::InvalidParameter(
                "mean curvature must be finite".into(),
            )),
            Target::ZeroGauss if !self.ambient.is_flat_e2() => Err(Error::InvalidParameter(
                format!("zero Gaussian curvature target needs ambient e2:1, got {}", self.ambient),
            )),
            _ => Ok(()),
        }
    }
}

/// One node of a generating curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    /// Curvature κ = θ′ at the node.
    pub theta_prime: f64,
}

impl Sample {
    pub fn state(&self) -> CurveState {
        CurveState::new(self.x, self.y, self.theta)
    }

    pub fn radius(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Rk4,
    ClosedForm,
}

/// Ordered samples of a generating curve plus the problem they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    samples: Vec<Sample>,
    problem: OdeProblem,
    method: Method,
}

impl Trajectory {
    /// Wraps externally produced samples (closed forms, parsed files).
    ///
    /// Samples must be strictly monotone in `t`.
    pub fn from_samples(problem: OdeProblem, method: Method, samples: Vec<Sample>) -> Result<Self> {
        let increasing = samples.windows(2).all(|w| w[1].t > w[0].t);
        let decreasing = samples.windows(2).all(|w| w[1].t < w[0].t);
        if !(increasing || decreasing) {
            return Err(Error::InvalidParameter(
                "trajectory samples must be strictly monotone in t".into(),
            ));
        }
        Ok(Trajectory {
            samples,
            problem,
            method,
        })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn problem(&self) -> &OdeProblem {
        &self.problem
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn max_abs_kappa(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.theta_prime.abs())
            .fold(0.0, f64::max)
    }

    /// Index of the sample with parameter exactly `t`, if any.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.samples.iter().position(|s| s.t == t)
    }
}

/// θ′ from the closed-form specialization of the CMC equation for the
/// canonical ambients; `None` for custom matrices.
pub fn specialized_theta_prime(ambient: &Ambient, s: &CurveState, h: f64) -> Option<f64> {
    let (x, y) = (s.x, s.y);
    let (sn, co) = s.theta.sin_cos();
    let tp = match *ambient {
        Ambient::Euclid => -2.0 * h,
        Ambient::Nil3 => {
            -(y * co * sn * sn + 2.0 * h * (1.0 + y * y * sn * sn).powf(1.5)) / (1.0 + y * y)
        }
        Ambient::Sol3 { c } => {
            let c2 = c * c;
            let p = ((1.0 + c2) * (2.0 * s.theta).cos() + 1.0 - c2) * (c2 * y * co + x * sn);
            let q = c2 + x * x + c2 * c2 * y * y;
            let w = 1.0 + (x * co / c - c * y * sn).powi(2);
            (p - 4.0 * c2 * w.powf(1.5) * h) / (2.0 * q)
        }
        Ambient::E2tilde { c } if c == 1.0 => {
            let w = 1.0 + (x * co + y * sn).powi(2);
            (x * sn - y * co - 2.0 * h * w.powf(1.5)) / (1.0 + x * x + y * y)
        }
        Ambient::E2tilde { c } => {
            let c2 = c * c;
            let p = (1.0 + c2 + (1.0 - c2) * (2.0 * s.theta).cos()) * (x * sn - c2 * y * co);
            let q = c2 + x * x + c2 * c2 * y * y;
            let d = (x * co + c2 * y * sn).powi(2) + c2;
            let w = 1.0 + (x * co / c + c * y * sn).powi(2);
            (p - 4.0 * d * w.sqrt() * h) / (2.0 * q)
        }
        Ambient::Custom(_) => return None,
    };
    Some(tp)
}

/// `(x', y', θ')` for the given target.
///
/// Zero-K states exactly on the singular locus are rejected.
pub fn rhs(ambient: &Ambient, target: &Target, s: &CurveState) -> Result<[f64; 3]> {
    rhs_guarded(ambient, target, s, 0.0)
}

fn rhs_guarded(ambient: &Ambient, target: &Target, s: &CurveState, guard: f64) -> Result<[f64; 3]> {
    let (sn, co) = s.theta.sin_cos();
    let tp = match *target {
        Target::MeanCurvature(h) => specialized_theta_prime(ambient, s, h)
            .unwrap_or_else(|| theta_prime_for_h(ambient, s, h)),
        Target::ZeroGauss => {
            let w = s.y * co - s.x * sn;
            if w.abs() <= guard || w == 0.0 {
                return Err(Error::Singular { t: None, state: *s });
            }
            -1.0 / w
        }
    };
    Ok([co, sn, tp])
}

/// Node layout of one integration leg: `start + k·h`, ending exactly on `end`.
struct Leg {
    start: f64,
    end: f64,
    h: f64,
    n_full: usize,
    partial: bool,
}

impl Leg {
    fn new(start: f64, end: f64, step: f64) -> Self {
        let span = end - start;
        let h = step.copysign(span);
        let ratio = span / h;
        let slack = 1e-9 * ratio.max(1.0);
        let full = (ratio + slack).floor().max(0.0);
        let partial = ratio - full > slack;
        Leg {
            start,
            end,
            h,
            n_full: full as usize,
            partial,
        }
    }

    fn len(&self) -> usize {
        1 + self.n_full + usize::from(self.partial)
    }

    fn time(&self, k: usize) -> f64 {
        if k + 1 == self.len() && k > 0 {
            self.end
        } else {
            self.start + k as f64 * self.h
        }
    }

    fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|k| self.time(k))
    }
}

/// Sample times used by [`integrate`] for a window and step, in output order.
///
/// Useful to evaluate closed-form curves on the same grid as the integrator.
pub fn node_times(t_span: (f64, f64), step: f64) -> Vec<f64> {
    let (t0, t1) = t_span;
    let (lo, hi) = (t0.min(t1), t0.max(t1));
    let mut ts: Vec<f64> = if lo <= 0.0 && 0.0 <= hi {
        let mut back: Vec<f64> = Leg::new(0.0, lo, step).times().collect();
        back.reverse();
        back.pop();
        back.extend(Leg::new(0.0, hi, step).times());
        back
    } else {
        let near = if lo > 0.0 { lo } else { hi };
        let far = if lo > 0.0 { hi } else { lo };
        let entry = Leg::new(0.0, near, step);
        let start = entry.time(entry.len() - 1);
        let mut leg: Vec<f64> = Leg::new(start, far, step).times().collect();
        if lo <= 0.0 {
            leg.reverse();
        }
        leg
    };
    if t0 > t1 {
        ts.reverse();
    }
    ts
}

/// Classical fixed-step RK4.
#[derive(Debug, Clone, Copy)]
pub struct Integrator {
    pub zero_k_guard: f64,
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator {
            zero_k_guard: DEFAULT_ZERO_K_GUARD,
        }
    }
}

impl Integrator {
    pub fn integrate(&self, problem: &OdeProblem) -> Result<Trajectory> {
        problem.validate()?;
        let (t0, t1) = problem.t_span;
        let (lo, hi) = (t0.min(t1), t0.max(t1));
        let start = self.node(problem, 0.0, problem.initial)?;

        let mut samples = if lo <= 0.0 && 0.0 <= hi {
            let mut back = self.march(problem, start, lo)?;
            back.reverse();
            back.pop();
            back.extend(self.march(problem, start, hi)?);
            back
        } else {
            // Window excludes t = 0: run up to the near end, then sample the window.
            let near = if lo > 0.0 { lo } else { hi };
            let far = if lo > 0.0 { hi } else { lo };
            let entry = *self.march(problem, start, near)?.last().expect("at least one node");
            let mut leg = self.march(problem, entry, far)?;
            if lo <= 0.0 {
                leg.reverse();
            }
            leg
        };
        if t0 > t1 {
            samples.reverse();
        }
        Ok(Trajectory {
            samples,
            problem: *problem,
            method: Method::Rk4,
        })
    }

    fn field(&self, problem: &OdeProblem, t: f64, y: &[f64; 3]) -> Result<[f64; 3]> {
        let s = CurveState::new(y[0], y[1], y[2]);
        rhs_guarded(&problem.ambient, &problem.target, &s, self.zero_k_guard).map_err(|e| match e {
            Error::Singular { state, .. } => Error::Singular { t: Some(t), state },
            e => e,
        })
    }

    fn node(&self, problem: &OdeProblem, t: f64, s: CurveState) -> Result<Sample> {
        let f = self.field(problem, t, &[s.x, s.y, s.theta])?;
        Ok(Sample {
            t,
            x: s.x,
            y: s.y,
            theta: s.theta,
            theta_prime: f[2],
        })
    }

    /// Nodes `start.t + k·h` towards `t_end` (negated step when going back),
    /// closing with a short step onto `t_end` when needed.
    fn march(&self, problem: &OdeProblem, start: Sample, t_end: f64) -> Result<Vec<Sample>> {
        let leg = Leg::new(start.t, t_end, problem.step);
        let mut out = Vec::with_capacity(leg.len());
        out.push(start);
        let mut y = [start.x, start.y, start.theta];
        let mut t = start.t;
        for k in 1..leg.len() {
            let tk = leg.time(k);
            let h = if k <= leg.n_full { leg.h } else { tk - t };
            y = self.rk4_step(problem, t, &y, h)?;
            t = tk;
            out.push(self.node(problem, t, CurveState::new(y[0], y[1], y[2]))?);
        }
        Ok(out)
    }

    fn rk4_step(&self, problem: &OdeProblem, t: f64, y: &[f64; 3], h: f64) -> Result<[f64; 3]> {
        let add = |y: &[f64; 3], k: &[f64; 3], s: f64| [y[0] + s * k[0], y[1] + s * k[1], y[2] + s * k[2]];
        let k1 = self.field(problem, t, y)?;
        let y2 = add(y, &k1, h / 2.0);
        let k2 = self.field(problem, t + h / 2.0, &y2)?;
        let y3 = add(y, &k2, h / 2.0);
        let k3 = self.field(problem, t + h / 2.0, &y3)?;
        let y4 = add(y, &k3, h);
        let k4 = self.field(problem, t + h, &y4)?;
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if problem.target == Target::ZeroGauss {
            // Solutions never cross the singular locus; a step that jumps over it aborts.
            let side = |v: &[f64; 3]| (v[1] * v[2].cos() - v[0] * v[2].sin()).signum();
            let s0 = side(y);
            if let Some(bad) = [y2, y3, y4, out].iter().find(|v| side(v) != s0) {
                return Err(Error::Singular {
                    t: Some(t),
                    state: CurveState::new(bad[0], bad[1], bad[2]),
                });
            }
        }
        Ok(out)
    }
}

/// Integrates with the default settings.
pub fn integrate(problem: &OdeProblem) -> Result<Trajectory> {
    Integrator::default().integrate(problem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liegroup::GroupMatrix;
    use rand::{rngs::StdRng, Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn e2() -> Ambient {
        Ambient::E2tilde { c: 1.0 }
    }

    fn minimal(amb: Ambient, ic: CurveState, t_span: (f64, f64), step: f64) -> OdeProblem {
        OdeProblem::new(amb, Target::MINIMAL, ic, t_span, step).unwrap()
    }

    #[test]
    fn rhs_examples() {
        let r = rhs(&Ambient::Nil3, &Target::MINIMAL, &CurveState::new(3.0, 0.0, 0.8)).unwrap();
        assert_eq!(r[2], 0.0);
        let s = CurveState::new(0.7, -1.2, 2.1);
        let r = rhs(&e2(), &Target::MINIMAL, &s).unwrap();
        let expect = (s.x * s.theta.sin() - s.y * s.theta.cos()) / (1.0 + s.x * s.x + s.y * s.y);
        assert!((r[2] - expect).abs() < 1e-15);
        assert_eq!([r[0], r[1]], s.tangent());
    }

    #[test]
    fn specialized_matches_general_path() {
        let mut rng = StdRng::seed_from_u64(21);
        let ambients = [
            Ambient::Euclid,
            Ambient::Nil3,
            Ambient::Sol3 { c: 1.0 },
            Ambient::Sol3 { c: 2.2 },
            Ambient::E2tilde { c: 1.0 },
            Ambient::E2tilde { c: 2.0 },
            Ambient::E2tilde { c: 3.5 },
        ];
        for amb in ambients {
            for _ in 0..10_000 {
                let s = CurveState::new(
                    rng.gen_range(-5.0..5.0),
                    rng.gen_range(-5.0..5.0),
                    rng.gen_range(-2.0 * PI..2.0 * PI),
                );
                for h in [0.0, rng.gen_range(-2.0..2.0)] {
                    let spec = specialized_theta_prime(&amb, &s, h).unwrap();
                    let gen = theta_prime_for_h(&amb, &s, h);
                    let tol = if h == 0.0 { 1e-12 } else { 1e-10 * (1.0 + gen.abs()) };
                    assert!((spec - gen).abs() <= tol, "{amb} H={h}: {spec} vs {gen}");
                }
            }
        }
        assert!(specialized_theta_prime(
            &Ambient::Custom(GroupMatrix::new(1.0, 0.0, 0.0, 1.0)),
            &CurveState::new(0.0, 0.0, 0.0),
            0.0
        )
        .is_none());
    }

    #[test]
    fn zero_gauss_rhs() {
        let s = CurveState::new(2.0, 1.0, FRAC_PI_4);
        let r = rhs(&e2(), &Target::ZeroGauss, &s).unwrap();
        let w = s.y * s.theta.cos() - s.x * s.theta.sin();
        assert!((r[2] + 1.0 / w).abs() < 1e-15);
        let on_locus = CurveState::new(1.0, 0.0, 0.0);
        assert!(matches!(
            rhs(&e2(), &Target::ZeroGauss, &on_locus),
            Err(Error::Singular { t: None, .. })
        ));
    }

    #[test]
    fn problem_validation() {
        let ic = CurveState::new(0.0, 0.0, 0.0);
        assert!(matches!(
            OdeProblem::new(e2(), Target::MINIMAL, ic, (0.0, 1.0), 0.0),
            Err(Error::InvalidStep(_))
        ));
        assert!(OdeProblem::new(e2(), Target::MINIMAL, ic, (0.0, 1.0), -1e-3).is_err());
        assert!(OdeProblem::new(e2(), Target::MINIMAL, ic, (1.0, 1.0), 1e-3).is_err());
        assert!(OdeProblem::new(Ambient::Nil3, Target::ZeroGauss, ic, (0.0, 1.0), 1e-3).is_err());
        assert!(OdeProblem::new(Ambient::E2tilde { c: 0.5 }, Target::MINIMAL, ic, (0.0, 1.0), 1e-3).is_err());
        assert!(OdeProblem::new(e2(), Target::MINIMAL, ic, (1.0, 0.0), 1e-3).is_ok());
    }

    #[test]
    fn euclid_lines() {
        let ic = CurveState::new(1.0, 2.0, 0.3);
        let traj = integrate(&minimal(Ambient::Euclid, ic, (-3.0, 5.0), 0.01)).unwrap();
        for s in traj.samples() {
            assert!((s.x - (1.0 + s.t * 0.3f64.cos())).abs() < 1e-12);
            assert!((s.y - (2.0 + s.t * 0.3f64.sin())).abs() < 1e-12);
            assert_eq!(s.theta, 0.3);
            assert_eq!(s.theta_prime, 0.0);
        }
        assert_eq!(traj.samples().first().unwrap().t, -3.0);
        assert_eq!(traj.samples().last().unwrap().t, 5.0);
        assert_eq!(traj.len(), 801);
    }

    #[test]
    fn e2_lines_through_origin() {
        let th0 = 0.9;
        let traj = integrate(&minimal(e2(), CurveState::new(0.0, 0.0, th0), (-20.0, 20.0), 1e-2)).unwrap();
        for s in traj.samples() {
            assert!((s.x - s.t * th0.cos()).abs() < 1e-12);
            assert!((s.y - s.t * th0.sin()).abs() < 1e-12);
            assert!((s.theta - th0).abs() < 1e-14);
        }
    }

    #[test]
    fn node_layout_and_ordering() {
        let ic = CurveState::new(1.0, 0.0, FRAC_PI_2);
        let traj = integrate(&minimal(e2(), ic, (-1.0, 0.25), 0.1)).unwrap();
        let ts: Vec<f64> = traj.samples().iter().map(|s| s.t).collect();
        assert_eq!(ts.len(), 14);
        assert_eq!(ts[0], -1.0);
        assert_eq!(*ts.last().unwrap(), 0.25);
        assert!(ts.windows(2).all(|w| w[1] > w[0]));
        assert!(traj.index_of(0.0).is_some());

        let back = integrate(&minimal(e2(), ic, (0.25, -1.0), 0.1)).unwrap();
        let rev: Vec<f64> = back.samples().iter().rev().map(|s| s.t).collect();
        assert_eq!(rev, ts);

        // Window not containing 0.
        let later = integrate(&minimal(e2(), ic, (0.5, 1.0), 0.1)).unwrap();
        assert_eq!(later.samples()[0].t, 0.5);
        let full = integrate(&minimal(e2(), ic, (0.0, 1.0), 0.1)).unwrap();
        let at_half = full.samples().iter().find(|s| (s.t - 0.5).abs() < 1e-12).unwrap();
        assert!((later.samples()[0].x - at_half.x).abs() < 1e-14);
        let earlier = integrate(&minimal(e2(), ic, (-1.0, -0.5), 0.1)).unwrap();
        assert_eq!(earlier.samples()[0].t, -1.0);
        assert_eq!(earlier.samples().last().unwrap().t, -0.5);

        for (span, traj) in [((-1.0, 0.25), &traj), ((0.25, -1.0), &back), ((0.5, 1.0), &later), ((-1.0, -0.5), &earlier)] {
            let expect: Vec<f64> = traj.samples().iter().map(|s| s.t).collect();
            assert_eq!(node_times(span, 0.1), expect);
        }
    }

    #[test]
    fn arclength_and_monotone_time() {
        let traj = integrate(&minimal(Ambient::Sol3 { c: 1.5 }, CurveState::new(0.3, -0.2, 1.0), (-5.0, 5.0), 1e-2)).unwrap();
        for s in traj.samples() {
            let [dx, dy] = s.state().tangent();
            assert!((dx * dx + dy * dy - 1.0).abs() <= 1e-12);
        }
        assert!(traj.samples().windows(2).all(|w| w[1].t > w[0].t));
    }

    #[test]
    fn rk4_is_fourth_order() {
        let ic = CurveState::new(1.0, 0.0, FRAC_PI_2);
        let end = |h: f64| {
            let traj = integrate(&minimal(e2(), ic, (0.0, 10.0), h)).unwrap();
            *traj.samples().last().unwrap()
        };
        let h = 0.1;
        let reference = end(h / 16.0);
        let err = |s: Sample| {
            ((s.x - reference.x).powi(2) + (s.y - reference.y).powi(2) + (s.theta - reference.theta).powi(2)).sqrt()
        };
        let ratio = err(end(h)) / err(end(h / 2.0));
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn rotation_equivariance() {
        let ic = CurveState::new(1.3, -0.4, 0.7);
        let phi: f64 = 1.1;
        let (sp, cp) = phi.sin_cos();
        let rotated = CurveState::new(cp * ic.x - sp * ic.y, sp * ic.x + cp * ic.y, ic.theta + phi);
        let a = integrate(&minimal(e2(), ic, (0.0, 50.0), 1e-3)).unwrap();
        let b = integrate(&minimal(e2(), rotated, (0.0, 50.0), 1e-3)).unwrap();
        for (p, q) in a.samples().iter().zip(b.samples()) {
            let rx = cp * p.x - sp * p.y;
            let ry = sp * p.x + cp * p.y;
            assert!((rx - q.x).abs() <= 1e-8 && (ry - q.y).abs() <= 1e-8);
            assert!((p.theta + phi - q.theta).abs() <= 1e-8);
        }
    }

    #[test]
    fn e2_curvature_bound() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..5 {
            let ic = CurveState::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(0.0..2.0 * PI));
            let traj = integrate(&minimal(e2(), ic, (-30.0, 30.0), 1e-2)).unwrap();
            assert!(traj.max_abs_kappa() <= 0.5 + 1e-12);
        }
    }

    #[test]
    fn nil_theta_stays_in_open_quadrant() {
        for th0 in [0.05, 0.4, FRAC_PI_4, 1.2, 1.55] {
            let traj = integrate(&minimal(Ambient::Nil3, CurveState::new(0.2, -0.7, th0), (-10.0, 10.0), 1e-3)).unwrap();
            let margin = traj
                .samples()
                .iter()
                .map(|s| s.theta.min(FRAC_PI_2 - s.theta))
                .fold(f64::INFINITY, f64::min);
            assert!(margin > 0.0, "theta0={th0}: margin {margin}");
        }
    }

    #[test]
    fn zero_gauss_guard_band_aborts() {
        // a > 0 run pushed backwards past the start of its maximal interval.
        let ic = CurveState::new(2.0, 1.0, FRAC_PI_4);
        let p = OdeProblem::new(e2(), Target::ZeroGauss, ic, (-1.0, 0.0), 1e-3).unwrap();
        match integrate(&p) {
            Err(Error::Singular { t: Some(t), .. }) => assert!(t < -0.1 && t > -0.2, "t = {t}"),
            other => panic!("expected singular abort, got {other:?}"),
        }
    }
}
