//! Explicit generating curves.
//!
//! * Minimal surfaces in `Nil₃`: away from the constant-angle lines the
//!   quantity `(1+y²)tan²θ = a` is conserved, and `y` is recovered by inverting
//!   the increasing function [`nil_f`].
//! * The graph model of `Nil₃` (product `(x1+x2, y1+y2, z1+z2+½(x1y2−x2y1))`),
//!   related to the semidirect model by [`nil_model_map`], where minimal
//!   vertically invariant surfaces are graphs [`fmp_graph`].
//! * Zero Gaussian curvature in flat `Ẽ(2)`: `|γ|² = at + |γ(0)|²` and the polar
//!   angle has an elementary antiderivative.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::cmc_ode::{node_times, Method, OdeProblem, Sample, Target, Trajectory};
use crate::error::{Error, Result};
use crate::fundforms::CurveState;
use crate::liegroup::{Ambient, GroupPoint};

/// Relative residual accepted by [`nil_f_inv`].
pub const NIL_INV_TOL: f64 = 1e-12;

/// Constants of a non-constant-angle minimal curve in `Nil₃`:
/// `y(t) = f⁻¹(√a·t + c1)`, `x(t) = c2 + h(y(t))/√a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NilParams {
    pub a: f64,
    pub c1: f64,
    pub c2: f64,
}

impl NilParams {
    pub fn new(a: f64, c1: f64, c2: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite() && c1.is_finite() && c2.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "nil parameters need finite a >= 0, got a = {a}, c1 = {c1}, c2 = {c2}"
            )));
        }
        Ok(NilParams { a, c1, c2 })
    }

    /// Constants matching `γ(0) = s`, for `θ0 ∈ (0, π/2)`.
    pub fn from_initial(s: &CurveState) -> Result<Self> {
        if !(s.is_finite() && s.theta > 0.0 && s.theta < FRAC_PI_2) {
            return Err(Error::InvalidParameter(format!(
                "closed-form nil curves are normalized to theta in (0, pi/2), got {}",
                s.theta
            )));
        }
        let a = nil_first_integral(s)?;
        let sa = a.sqrt();
        NilParams::new(a, nil_f(a, s.y), s.x - nil_h(s.y) / sa)
    }
}

/// `f(a, t) = ½(1+a)·ln(t + √(1+a+t²)) + ½·t·√(1+a+t²)`, with `f' = √(1+a+t²)`.
pub fn nil_f(a: f64, t: f64) -> f64 {
    let b = 1.0 + a;
    let root = (b + t * t).sqrt();
    // t + √(b+t²) cancels for t < 0; use b / (√(b+t²) − t) there.
    let arg = if t >= 0.0 { t + root } else { b / (root - t) };
    0.5 * b * arg.ln() + 0.5 * t * root
}

/// Inverse of [`nil_f`] in its second argument.
///
/// Newton steps safeguarded by a bisection bracket; the result satisfies
/// `|f(a, t) − v| ≤ 1e−12·max(1, |v|)` up to the resolution of `f64`.
pub fn nil_f_inv(a: f64, v: f64) -> f64 {
    if !v.is_finite() || !(a >= 0.0) {
        return f64::NAN;
    }
    let tol = NIL_INV_TOL * v.abs().max(1.0);
    let mut b = v.abs().max(1.0);
    while !(nil_f(a, -b) <= v && v <= nil_f(a, b)) {
        b *= 2.0;
        if !b.is_finite() {
            return f64::NAN;
        }
    }
    let (mut lo, mut hi) = (-b, b);
    let f0 = nil_f(a, 0.0);
    let mut t = ((v - f0) / (1.0 + a).sqrt()).clamp(lo, hi);
    for _ in 0..200 {
        let r = nil_f(a, t) - v;
        if r.abs() <= tol {
            return t;
        }
        if r < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let mut next = t - r / (1.0 + a + t * t).sqrt();
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if next == t || hi - lo <= f64::EPSILON * t.abs().max(1.0) {
            return next;
        }
        t = next;
    }
    t
}

/// `h(u) = ½(arcsinh u + u√(1+u²))`, the antiderivative of `√(1+u²)`.
fn nil_h(u: f64) -> f64 {
    0.5 * (u.asinh() + u * (1.0 + u * u).sqrt())
}

/// Point of the closed-form minimal curve in `Nil₃`, with `θ ∈ (0, π/2)`.
pub fn nil_solution(p: &NilParams, t: f64) -> Result<CurveState> {
    if !(p.a > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "closed form needs a > 0 (a = 0 is a constant-angle line), got {}",
            p.a
        )));
    }
    let sa = p.a.sqrt();
    let y = nil_f_inv(p.a, sa * t + p.c1);
    let x = p.c2 + nil_h(y) / sa;
    let theta = (sa / (1.0 + y * y).sqrt()).atan();
    Ok(CurveState::new(x, y, theta))
}

/// θ′ of the `Nil₃` minimal system.
fn nil_kappa(s: &CurveState) -> f64 {
    let (sn, co) = s.theta.sin_cos();
    -s.y * co * sn * sn / (1.0 + s.y * s.y)
}

/// Closed-form `Nil₃` minimal curve through `initial`, sampled like [`crate::cmc_ode::integrate`].
pub fn nil_trajectory(initial: CurveState, t_span: (f64, f64), step: f64) -> Result<Trajectory> {
    let problem = OdeProblem::new(Ambient::Nil3, Target::MINIMAL, initial, t_span, step)?;
    let p = NilParams::from_initial(&initial)?;
    let samples = node_times(t_span, step)
        .into_iter()
        .map(|t| {
            let s = nil_solution(&p, t)?;
            Ok(Sample {
                t,
                x: s.x,
                y: s.y,
                theta: s.theta,
                theta_prime: nil_kappa(&s),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Trajectory::from_samples(problem, Method::ClosedForm, samples)
}

/// A straight line `origin + t(cosθ, sinθ)` with constant `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantThetaLine {
    pub origin: [f64; 2],
    pub theta: f64,
}

impl ConstantThetaLine {
    pub fn at(&self, t: f64) -> CurveState {
        let (sn, co) = self.theta.sin_cos();
        CurveState::new(self.origin[0] + t * co, self.origin[1] + t * sn, self.theta)
    }
}

/// The constant-angle minimal curves through `(x0, y0)`: `θ = kπ` (parallel to
/// the x-axis) and `θ = π/2 + kπ` (parallel to the y-axis).
pub fn nil_constant_solutions(k: i32, x0: f64, y0: f64) -> [ConstantThetaLine; 2] {
    let base = f64::from(k) * PI;
    [
        ConstantThetaLine {
            origin: [x0, y0],
            theta: base,
        },
        ConstantThetaLine {
            origin: [x0, y0],
            theta: base + FRAC_PI_2,
        },
    ]
}

/// `J = (1+y²)·tan²θ`, conserved along `Nil₃` minimal curves.
pub fn nil_first_integral(s: &CurveState) -> Result<f64> {
    let (sn, co) = s.theta.sin_cos();
    if co.abs() <= f64::EPSILON {
        return Err(Error::Pole(s.theta));
    }
    let tan = sn / co;
    Ok((1.0 + s.y * s.y) * tan * tan)
}

/// `Ξ(x, y, z) = (z + xy/2, y, x)`, from the graph model to the semidirect model.
pub fn nil_model_map(p: &GroupPoint) -> GroupPoint {
    GroupPoint::new(p.z + 0.5 * p.x * p.y, p.y, p.x)
}

/// Group law of the graph model of `Nil₃`.
pub fn fmp_mul(p: &GroupPoint, q: &GroupPoint) -> GroupPoint {
    GroupPoint::new(
        p.x + q.x,
        p.y + q.y,
        p.z + q.z + 0.5 * (p.x * q.y - q.x * p.y),
    )
}

/// Height of the minimal graph `z = xy/2 − c·(½y√(1+y²) + ½ln(y + √(1+y²)))`.
pub fn fmp_graph(c: f64, x: f64, y: f64) -> f64 {
    0.5 * x * y - c * nil_h(y)
}

/// Image under [`nil_model_map`] of the graph point over `(0, u)`; lies in `z = 0`.
pub fn fmp_generating_curve(c: f64, u: f64) -> GroupPoint {
    nil_model_map(&GroupPoint::new(0.0, u, fmp_graph(c, 0.0, u)))
}

/// Graph constant whose generating curve is the closed-form curve with level `a`.
pub fn fmp_constant(a: f64) -> f64 {
    -1.0 / a.sqrt()
}

/// Maximal interval of a zero-K generating curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroKDomain {
    Full,
    /// `[t*, ∞)`.
    From(f64),
    /// `(−∞, t*]`.
    UpTo(f64),
}

impl ZeroKDomain {
    pub fn contains(&self, t: f64) -> bool {
        match *self {
            ZeroKDomain::Full => t.is_finite(),
            ZeroKDomain::From(e) => t >= e && t.is_finite(),
            ZeroKDomain::UpTo(e) => t <= e && t.is_finite(),
        }
    }

    pub fn endpoint(&self) -> Option<f64> {
        match *self {
            ZeroKDomain::Full => None,
            ZeroKDomain::From(e) | ZeroKDomain::UpTo(e) => Some(e),
        }
    }
}

/// Data of a zero-K curve in flat `Ẽ(2)` from its initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroKParams {
    pub x0: f64,
    pub y0: f64,
    pub theta0: f64,
    /// `2(x0 cosθ0 + y0 sinθ0)`.
    pub a: f64,
    pub rho0_sq: f64,
    /// Sign of `α′`: `+1` counterclockwise about the origin.
    pub orientation: f64,
    alpha0: f64,
    g0: f64,
    theta_shift: f64,
}

impl ZeroKParams {
    /// Errors when `γ(0)` is parallel to `γ′(0)` (including `γ(0) = 0`).
    pub fn new(initial: &CurveState) -> Result<Self> {
        if !initial.is_finite() {
            return Err(Error::InvalidParameter("initial state must be finite".into()));
        }
        let CurveState { x, y, theta } = *initial;
        let (sn, co) = theta.sin_cos();
        let w = y * co - x * sn;
        if w == 0.0 {
            return Err(Error::Singular {
                t: Some(0.0),
                state: *initial,
            });
        }
        let a = 2.0 * (x * co + y * sn);
        let rho0_sq = x * x + y * y;
        let orientation = (-w).signum();
        let g0 = radicand(a, rho0_sq, 0.0).sqrt();
        let mut p = ZeroKParams {
            x0: x,
            y0: y,
            theta0: theta,
            a,
            rho0_sq,
            orientation,
            alpha0: y.atan2(x),
            g0,
            theta_shift: 0.0,
        };
        let raw = p.alpha0 + (orientation * g0).atan2(a);
        p.theta_shift = TAU * ((theta - raw) / TAU).round();
        Ok(p)
    }

    /// `g(t) = √(−a² + 4at + 4ρ0²)`, clamped at the domain endpoint.
    pub fn g(&self, t: f64) -> f64 {
        radicand(self.a, self.rho0_sq, t).max(0.0).sqrt()
    }
}

fn radicand(a: f64, rho0_sq: f64, t: f64) -> f64 {
    -a * a + 4.0 * a * t + 4.0 * rho0_sq
}

pub fn zero_k_domain(p: &ZeroKParams) -> ZeroKDomain {
    if p.a == 0.0 {
        return ZeroKDomain::Full;
    }
    let e = p.a / 4.0 - p.rho0_sq / p.a;
    if p.a > 0.0 {
        ZeroKDomain::From(e)
    } else {
        ZeroKDomain::UpTo(e)
    }
}

/// Polar coordinates `(r, α)` of the zero-K curve at `t`.
///
/// `r = √(at + ρ0²)` and `α(t) = α(0) ± (Φ(t) − Φ(0))` with
/// `Φ(τ) = (g(τ) − a·arccot(a/g(τ)))/a`, `arccot ∈ (0, π)`. The difference of
/// the `g/a` terms is evaluated as `4t/(g(t) + g(0))`, which is also the
/// circle limit `t/ρ0` at `a = 0`.
pub fn zero_k_solution(p: &ZeroKParams, t: f64) -> Result<(f64, f64)> {
    if !zero_k_domain(p).contains(t) {
        return Err(Error::Domain { t });
    }
    let r = (p.a * t + p.rho0_sq).max(0.0).sqrt();
    let gt = p.g(t);
    let arccot = |g: f64| FRAC_PI_2 - (p.a / g).atan();
    let delta = 4.0 * t / (gt + p.g0) - (arccot(gt) - arccot(p.g0));
    Ok((r, p.alpha0 + p.orientation * delta))
}

/// Full sample `(t, x, y, θ, κ)` of the zero-K curve.
///
/// Errors at the domain endpoint, where `κ = ±2/g` blows up.
pub fn zero_k_point(p: &ZeroKParams, t: f64) -> Result<Sample> {
    let (r, alpha) = zero_k_solution(p, t)?;
    let g = p.g(t);
    let (x, y) = (r * alpha.cos(), r * alpha.sin());
    if g == 0.0 {
        return Err(Error::Singular {
            t: Some(t),
            state: CurveState::new(x, y, alpha),
        });
    }
    // γ′ = r′ e_r + rα′ e_α with r′ = a/(2r), rα′ = ±g/(2r).
    let theta = alpha + (p.orientation * g).atan2(p.a) + p.theta_shift;
    Ok(Sample {
        t,
        x,
        y,
        theta,
        theta_prime: p.orientation * 2.0 / g,
    })
}

/// Closed-form zero-K curve through `initial`, sampled like [`crate::cmc_ode::integrate`].
pub fn zero_k_trajectory(initial: CurveState, t_span: (f64, f64), step: f64) -> Result<Trajectory> {
    let problem = OdeProblem::new(Ambient::E2tilde { c: 1.0 }, Target::ZeroGauss, initial, t_span, step)?;
    let p = ZeroKParams::new(&initial)?;
    let samples = node_times(t_span, step)
        .into_iter()
        .map(|t| zero_k_point(&p, t))
        .collect::<Result<Vec<_>>>()?;
    Trajectory::from_samples(problem, Method::ClosedForm, samples)
}

/// `J = x cosθ + y sinθ = ½ d/dt |γ|²`, conserved along zero-K curves.
pub fn zero_k_first_integral(s: &CurveState) -> f64 {
    let (sn, co) = s.theta.sin_cos();
    s.x * co + s.y * sn
}
