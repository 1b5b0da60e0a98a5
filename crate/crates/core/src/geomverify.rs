//! Executable checks of geometric properties of generating curves.
//!
//! Each check returns a [`VerifyReport`] carrying the measured extremal value
//! and the tolerance it was held to; `pass` is exactly `measured <= tolerance`.
//! Checks with a structural (yes/no) component report `measured = ∞` when the
//! structure is violated.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closedform::{nil_first_integral, zero_k_first_integral};
use crate::cmc_ode::{
    detect_self_intersections, integrate, rhs, specialized_theta_prime, OdeProblem, Sample, Target,
    Trajectory, DEFAULT_STEP,
};
use crate::error::{Error, Result};
use crate::fundforms::CurveState;
use crate::liegroup::Ambient;

/// Slack added to the curvature bounds.
pub const CURVATURE_SLACK: f64 = 1e-12;
/// Default bound on the finite-difference residual of the curvature ODE.
pub const KAPPA_RESIDUAL_TOL: f64 = 1e-5;
/// Parity tolerance of [`symmetry_check`].
pub const SYMMETRY_TOL: f64 = 1e-8;
/// Default drift tolerance of [`first_integral_drift`].
pub const FIRST_INTEGRAL_TOL: f64 = 1e-8;
/// Tolerances of the crossing structure in [`self_intersection_check`].
pub const CROSSING_PAIR_TOL: f64 = 1e-4;
pub const CROSSING_AXIS_TOL: f64 = 1e-3;
/// Spatial resolution of crossing refinement.
pub const CROSSING_SPATIAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: f64,
    /// Sample where the measured extremum occurs.
    pub witness: Option<Sample>,
    pub detail: String,
}

impl VerifyReport {
    pub fn new(name: &str, measured: f64, tolerance: f64, witness: Option<Sample>, detail: impl Into<String>) -> Self {
        VerifyReport {
            name: name.to_string(),
            pass: measured <= tolerance,
            measured,
            tolerance,
            witness,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: measured = {:.6e}, tolerance = {:.3e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.tolerance
        )?;
        if !self.detail.is_empty() {
            write!(f, ", {}", self.detail)?;
        }
        if let (false, Some(w)) = (self.pass, &self.witness) {
            write!(f, " [witness t = {}, x = {}, y = {}, theta = {}]", w.t, w.x, w.y, w.theta)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolutionType {
    /// Straight line through the origin.
    TypeI,
    /// Strictly convex curve avoiding the origin.
    TypeII,
}

impl fmt::Display for SolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolutionType::TypeI => "type I",
            SolutionType::TypeII => "type II",
        })
    }
}

/// Parameter `c` of a minimal `Ẽ(2)` run, or a usage error.
fn minimal_e2(traj: &Trajectory, check: &str) -> Result<f64> {
    match (traj.problem().ambient, traj.problem().target) {
        (Ambient::E2tilde { c }, Target::MeanCurvature(h)) if h == 0.0 => Ok(c),
        (amb, target) => Err(Error::Usage(format!(
            "{check} needs a minimal e2 trajectory, got ambient {amb} with target {target:?}"
        ))),
    }
}

fn minimal_flat_e2(traj: &Trajectory, check: &str) -> Result<()> {
    match minimal_e2(traj, check)? {
        c if c == 1.0 => Ok(()),
        c => Err(Error::Usage(format!("{check} needs ambient e2:1, got e2:{c}"))),
    }
}

/// `|κ| ≤ 1/2` and `|κ| ≤ |γ|/(1+|γ|²)` for `c = 1`; `|κ| ≤ c/2` for `c > 1`.
///
/// `measured` is the largest excess of `|κ|` over the bound.
pub fn curvature_bound(traj: &Trajectory) -> Result<VerifyReport> {
    let c = minimal_e2(traj, "curvature_bound")?;
    let global = c / 2.0;
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for s in traj.samples() {
        let k = s.theta_prime.abs();
        let mut excess = k - global;
        if c == 1.0 {
            let r = s.radius();
            excess = excess.max(k - r / (1.0 + r * r));
        }
        if excess > worst {
            worst = excess;
            witness = Some(*s);
        }
    }
    Ok(VerifyReport::new(
        "curvature_bound",
        worst,
        CURVATURE_SLACK,
        witness,
        format!("max|kappa| = {:.6e}, bound = {global}", traj.max_abs_kappa()),
    ))
}

/// Derivative of the sampled κ at interior node `i` (three-point, non-uniform).
fn kappa_derivative(s: &[Sample], i: usize) -> f64 {
    let (a, b, c) = (&s[i - 1], &s[i], &s[i + 1]);
    let (h0, h1) = (b.t - a.t, c.t - b.t);
    -(h1 / (h0 * (h0 + h1))) * a.theta_prime
        + ((h1 - h0) / (h0 * h1)) * b.theta_prime
        + (h0 / (h1 * (h0 + h1))) * c.theta_prime
}

/// Residual of `⟨γ,γ′⟩κ + (1+|γ|²)κ′ = 0` with κ′ from finite differences.
pub fn kappa_ode_residual(traj: &Trajectory, tol: f64) -> Result<VerifyReport> {
    minimal_flat_e2(traj, "kappa_ode_residual")?;
    let s = traj.samples();
    if s.len() < 3 {
        return Err(Error::Usage(format!(
            "kappa_ode_residual needs at least 3 samples, got {}",
            s.len()
        )));
    }
    let mut worst = 0.0;
    let mut witness = None;
    for i in 1..s.len() - 1 {
        let p = &s[i];
        let (sn, co) = p.theta.sin_cos();
        let radial = p.x * co + p.y * sn;
        let r2 = p.x * p.x + p.y * p.y;
        let res = (radial * p.theta_prime + (1.0 + r2) * kappa_derivative(s, i)).abs();
        if res > worst {
            worst = res;
            witness = Some(*p);
        }
    }
    Ok(VerifyReport::new("kappa_ode_residual", worst, tol, witness, ""))
}

/// `ξ = ⟨γ, Jγ′⟩ = −x sinθ + y cosθ`.
pub fn support_function(s: &CurveState) -> f64 {
    let (sn, co) = s.theta.sin_cos();
    -s.x * sn + s.y * co
}

/// Type I iff the curve meets the origin (within `tol`) or starts radially.
pub fn classify_type(traj: &Trajectory, tol: f64) -> SolutionType {
    let ic = traj.problem().initial;
    let (sn, co) = ic.theta.sin_cos();
    let radial = (ic.x * sn - ic.y * co).abs() <= tol;
    if radial || traj.samples().iter().any(|s| s.radius() <= tol) {
        SolutionType::TypeI
    } else {
        SolutionType::TypeII
    }
}

/// Number of discrete strict local minima of `v` outside `skip`, ignoring
/// differences at rounding level.
fn interior_minima(t: &[f64], v: &[f64], skip: impl Fn(f64) -> bool) -> Vec<usize> {
    let noise = |x: f64| 64.0 * f64::EPSILON * (1.0 + x.abs());
    (1..v.len().saturating_sub(1))
        .filter(|&i| !skip(t[i]))
        .filter(|&i| v[i] < v[i - 1] - noise(v[i]) && v[i] < v[i + 1] - noise(v[i]))
        .collect()
}

/// Indices where the forward differences of `v` change sign outside `skip`.
fn critical_points(t: &[f64], v: &[f64], skip: impl Fn(f64) -> bool) -> Vec<usize> {
    let noise = |x: f64| 64.0 * f64::EPSILON * (1.0 + x.abs());
    let mut out = Vec::new();
    let mut last_sign = 0.0;
    for i in 0..v.len().saturating_sub(1) {
        let d = v[i + 1] - v[i];
        if d.abs() <= noise(v[i]) {
            continue;
        }
        let sign = d.signum();
        if last_sign != 0.0 && sign != last_sign && !skip(t[i]) {
            out.push(i);
        }
        last_sign = sign;
    }
    out
}

/// Mirror symmetry of a normalized type-II run about its closest point.
///
/// The initial state must be `(r0, 0, ±π/2)` with `r0 > 0` (rotate first
/// otherwise). Asserts `x(−t) = x(t)`, `y(−t) = −y(t)`, `ξ(−t) = ξ(t)`, that
/// `|γ|` has its only minimum at `t = 0`, and that ξ has no other critical
/// point (dead band `2·step` around 0).
pub fn symmetry_check(traj: &Trajectory) -> Result<VerifyReport> {
    minimal_flat_e2(traj, "symmetry_check")?;
    let ic = traj.problem().initial;
    if !(ic.x > 0.0 && ic.y.abs() <= 1e-12 && ic.theta.cos().abs() <= 1e-9) {
        return Err(Error::Usage(format!(
            "symmetry_check needs an initial state (r0, 0, ±pi/2) with r0 > 0, got ({}, {}, {}); \
             rotate the initial condition first",
            ic.x, ic.y, ic.theta
        )));
    }
    let s = traj.samples();
    let increasing = s.len() < 2 || s[1].t > s[0].t;
    let Some(i0) = traj.index_of(0.0) else {
        return Err(Error::Usage("symmetry_check needs a sample at t = 0".into()));
    };
    let (fwd, back): (isize, isize) = if increasing { (1, -1) } else { (-1, 1) };

    let mut parity = 0.0;
    let mut witness = None;
    let mut k = 1isize;
    loop {
        let (ip, im) = (i0 as isize + fwd * k, i0 as isize + back * k);
        if ip < 0 || im < 0 || ip as usize >= s.len() || im as usize >= s.len() {
            break;
        }
        let (p, m) = (&s[ip as usize], &s[im as usize]);
        if p.t != -m.t {
            break;
        }
        let err = (p.x - m.x)
            .abs()
            .max((p.y + m.y).abs())
            .max((support_function(&p.state()) - support_function(&m.state())).abs());
        if err > parity {
            parity = err;
            witness = Some(*p);
        }
        k += 1;
    }
    if k == 1 {
        return Err(Error::Usage("symmetry_check needs samples on both sides of t = 0".into()));
    }

    let mut ordered: Vec<Sample> = s.to_vec();
    if !increasing {
        ordered.reverse();
    }
    let t: Vec<f64> = ordered.iter().map(|s| s.t).collect();
    let rho: Vec<f64> = ordered.iter().map(|s| s.x * s.x + s.y * s.y).collect();
    let xi: Vec<f64> = ordered.iter().map(|s| support_function(&s.state())).collect();
    let band = 2.0 * traj.problem().step;
    let near_zero = |t: f64| t.abs() <= band;

    let argmin = (0..rho.len()).min_by(|&a, &b| rho[a].total_cmp(&rho[b])).unwrap_or(0);
    let extra_min = interior_minima(&t, &rho, near_zero);
    let extra_crit = critical_points(&t, &xi, near_zero);

    let mut detail = format!("parity = {parity:.3e}");
    let structural = if !near_zero(t[argmin]) {
        detail.push_str(&format!(", min |gamma| at t = {}", t[argmin]));
        Some(ordered[argmin])
    } else if let Some(&i) = extra_min.first() {
        detail.push_str(&format!(", {} extra local minima of |gamma|", extra_min.len()));
        Some(ordered[i])
    } else if let Some(&i) = extra_crit.first() {
        detail.push_str(&format!(", {} extra critical points of xi", extra_crit.len()));
        Some(ordered[i])
    } else {
        None
    };
    Ok(match structural {
        Some(w) => VerifyReport::new("symmetry", f64::INFINITY, SYMMETRY_TOL, Some(w), detail),
        None => VerifyReport::new("symmetry", parity, SYMMETRY_TOL, witness, detail),
    })
}

/// For `Ẽ(2)` with `c > 1`, the coordinate axes are the only lines through the
/// origin with constant θ: θ′ vanishes along both axes and is nonzero somewhere
/// on each of the other 356 whole-degree directions.
pub fn constant_theta_axes_check(c: f64) -> Result<VerifyReport> {
    if !(c > 1.0 && c.is_finite()) {
        return Err(Error::Usage(format!(
            "constant_theta_axes_check needs c > 1 (for c = 1 every line through the origin has constant theta), got {c}"
        )));
    }
    let amb = Ambient::E2tilde { c };
    let kappa = |s: &CurveState| specialized_theta_prime(&amb, s, 0.0).expect("canonical ambient");
    let ts: Vec<f64> = (-200..=200).map(|k| 0.05 * k as f64).collect();

    let mut axis = 0.0;
    let mut witness = None;
    for theta in [0.0, FRAC_PI_2] {
        for &t in &ts {
            let (sn, co) = if theta == 0.0 { (0.0, 1.0) } else { (1.0, 0.0) };
            let s = CurveState::new(t * co, t * sn, theta);
            let k = kappa(&s).abs();
            if k > axis {
                axis = k;
                witness = Some(Sample { t, x: s.x, y: s.y, theta, theta_prime: k });
            }
        }
    }
    let flat: Vec<u32> = (0..360)
        .filter(|d| d % 90 != 0)
        .filter(|&d| {
            let phi = f64::from(d) * PI / 180.0;
            let (sn, co) = phi.sin_cos();
            ts.iter().all(|&t| kappa(&CurveState::new(t * co, t * sn, phi)).abs() <= 1e-9)
        })
        .collect();
    let tol = 1e-12;
    Ok(if flat.is_empty() {
        VerifyReport::new("constant_theta_axes", axis, tol, witness, format!("c = {c}, 356 other directions curve"))
    } else {
        VerifyReport::new(
            "constant_theta_axes",
            f64::INFINITY,
            tol,
            None,
            format!("c = {c}, constant theta also along directions {flat:?} degrees"),
        )
    })
}

/// Sup distance between the `Ẽ(2)(c)` and `Ẽ(2)(1)` minimal curves from `ic`.
fn family_gap(ic: CurveState, interval: (f64, f64), step: f64, c: f64, base: &Trajectory) -> Result<f64> {
    let p = OdeProblem::new(Ambient::E2tilde { c }, Target::MINIMAL, ic, interval, step)?;
    let traj = integrate(&p)?;
    Ok(traj
        .samples()
        .iter()
        .zip(base.samples())
        .map(|(a, b)| (a.x - b.x).hypot(a.y - b.y))
        .fold(0.0, f64::max))
}

/// Finds `δ > 0` with `sup_t |γ_c(t) − γ_1(t)| < eps` for `c ∈ [1, 1+δ)`.
///
/// The half-open range is probed at `c = 1 + kδ/4`, `k = 1..4`. δ doubles from
/// 1 while admissible (up to 1024), and is otherwise bisected on `(0, 1]`.
/// Returns `(δ, sup distance at the probes)`.
pub fn continuity_delta(ic: CurveState, interval: (f64, f64), eps: f64, step: f64) -> Result<(f64, f64)> {
    let base = integrate(&OdeProblem::new(Ambient::E2tilde { c: 1.0 }, Target::MINIMAL, ic, interval, step)?)?;
    let probe = |delta: f64| -> Result<f64> {
        let mut worst = 0.0f64;
        for k in 1..=4 {
            worst = worst.max(family_gap(ic, interval, step, 1.0 + delta * f64::from(k) / 4.0, &base)?);
        }
        Ok(worst)
    };
    let first = probe(1.0)?;
    if first < eps {
        let (mut delta, mut gap) = (1.0, first);
        while delta < 1024.0 {
            let g = probe(2.0 * delta)?;
            if g >= eps {
                break;
            }
            delta *= 2.0;
            gap = g;
        }
        return Ok((delta, gap));
    }
    let (mut lo, mut hi, mut lo_gap, mut hi_gap) = (0.0, 1.0, 0.0, first);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        let g = probe(mid)?;
        if g < eps {
            lo = mid;
            lo_gap = g;
        } else {
            hi = mid;
            hi_gap = g;
        }
    }
    Ok(if lo > 0.0 { (lo, lo_gap) } else { (0.0, hi_gap) })
}

pub fn continuous_dependence_check(ic: CurveState, interval: (f64, f64), eps: f64) -> Result<VerifyReport> {
    continuous_dependence_check_with_step(ic, interval, eps, DEFAULT_STEP)
}

pub fn continuous_dependence_check_with_step(
    ic: CurveState,
    interval: (f64, f64),
    eps: f64,
    step: f64,
) -> Result<VerifyReport> {
    let (delta, gap) = continuity_delta(ic, interval, eps, step)?;
    let mut r = VerifyReport::new("continuous_dependence", gap, eps, None, format!("delta = {delta}"));
    // `sup < eps` is strict, and δ = 0 means no admissible range was found.
    r.pass = delta > 0.0 && gap < eps;
    Ok(r)
}

/// Drift of the first integral of the run's system from its initial sample.
pub fn first_integral_drift(traj: &Trajectory, tol: f64) -> Result<VerifyReport> {
    let p = traj.problem();
    let j: Box<dyn Fn(&CurveState) -> Result<f64>> = match (p.ambient, p.target) {
        (Ambient::Nil3, Target::MeanCurvature(h)) if h == 0.0 => Box::new(nil_first_integral),
        (Ambient::E2tilde { c }, Target::ZeroGauss) if c == 1.0 => {
            Box::new(|s: &CurveState| Ok(zero_k_first_integral(s)))
        }
        (amb, target) => {
            return Err(Error::Usage(format!(
                "no first integral known for ambient {amb} with target {target:?}"
            )))
        }
    };
    let Some(first) = traj.samples().first() else {
        return Err(Error::Usage("first_integral_drift needs a nonempty trajectory".into()));
    };
    let j0 = j(&first.state())?;
    let mut worst = 0.0;
    let mut witness = None;
    for s in traj.samples() {
        let d = (j(&s.state())? - j0).abs();
        if d > worst {
            worst = d;
            witness = Some(*s);
        }
    }
    Ok(VerifyReport::new("first_integral", worst, tol, witness, format!("J = {j0}")))
}

/// Crossing count, `t1 ≈ −t2` pairing and location on the x-axis.
pub fn self_intersection_check(traj: &Trajectory, expected: usize) -> Vec<VerifyReport> {
    let hits = detect_self_intersections(traj, CROSSING_SPATIAL_TOL);
    let count = hits.len();
    let detail = hits
        .iter()
        .map(|c| format!("(t1 = {:.6}, t2 = {:.6}, x = {:.6}, y = {:.3e})", c.t1, c.t2, c.point[0], c.point[1]))
        .collect::<Vec<_>>()
        .join(" ");
    let pair = hits.iter().map(|c| (c.t1 + c.t2).abs()).fold(0.0, f64::max);
    let axis = hits.iter().map(|c| c.point[1].abs()).fold(0.0, f64::max);
    vec![
        VerifyReport::new(
            "self_intersection_count",
            count.abs_diff(expected) as f64,
            0.0,
            None,
            format!("found {count}, expected {expected} {detail}"),
        ),
        VerifyReport::new("self_intersection_pairing", pair, CROSSING_PAIR_TOL, None, "max |t1 + t2|"),
        VerifyReport::new("self_intersection_axis", axis, CROSSING_AXIS_TOL, None, "max |y|"),
    ]
}

/// `max|κ|` on `late` stays below both `cap` and `max|κ|` on `early`.
pub fn kappa_decay_check(traj: &Trajectory, early: (f64, f64), late: (f64, f64), cap: f64) -> VerifyReport {
    let max_on = |(a, b): (f64, f64)| {
        traj.samples()
            .iter()
            .filter(|s| s.t >= a && s.t <= b)
            .map(|s| s.theta_prime.abs())
            .fold(0.0, f64::max)
    };
    let (e, l) = (max_on(early), max_on(late));
    VerifyReport::new(
        "kappa_decay",
        l,
        cap.min(e),
        None,
        format!("max|kappa| on {early:?} = {e:.6e}, on {late:?} = {l:.6e}"),
    )
}

/// Sample of largest `|κ|`; for normalized type-II runs this is the closest point.
pub fn kappa_argmax(traj: &Trajectory) -> Option<Sample> {
    traj.samples()
        .iter()
        .copied()
        .max_by(|a, b| a.theta_prime.abs().total_cmp(&b.theta_prime.abs()))
}

/// Residual of `κ = −ξ/(1+|γ|²)` along a flat `Ẽ(2)` minimal run.
pub fn support_relation_residual(traj: &Trajectory) -> Result<f64> {
    minimal_flat_e2(traj, "support_relation_residual")?;
    Ok(traj
        .samples()
        .iter()
        .map(|s| {
            let r2 = s.x * s.x + s.y * s.y;
            (s.theta_prime + support_function(&s.state()) / (1.0 + r2)).abs()
        })
        .fold(0.0, f64::max))
}

/// Sup norm of the θ′ sample against the right-hand side at each node.
pub fn kappa_consistency(traj: &Trajectory) -> Result<f64> {
    let p = traj.problem();
    let mut worst = 0.0f64;
    for s in traj.samples() {
        let k = rhs(&p.ambient, &p.target, &s.state())?[2];
        worst = worst.max((k - s.theta_prime).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmc_ode::Method;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn e2_run(c: f64, ic: CurveState, span: (f64, f64), step: f64) -> Trajectory {
        integrate(&OdeProblem::new(Ambient::E2tilde { c }, Target::MINIMAL, ic, span, step).unwrap()).unwrap()
    }

    #[test]
    fn report_pass_matches_measurement() {
        let r = VerifyReport::new("x", 1.0, 2.0, None, "");
        assert!(r.pass);
        let r = VerifyReport::new("x", f64::INFINITY, 2.0, None, "");
        assert!(!r.pass);
        assert!(r.to_string().starts_with("FAIL x: measured = inf"));
    }

    #[test]
    fn line_has_zero_curvature_excess() {
        let line = e2_run(1.0, CurveState::new(0.0, 0.0, 0.7), (-5.0, 5.0), 1e-2);
        let r = curvature_bound(&line).unwrap();
        assert!(r.pass);
        assert!(line.max_abs_kappa() <= 1e-12);
        assert!(kappa_ode_residual(&line, KAPPA_RESIDUAL_TOL).unwrap().measured <= 1e-12);
        assert_eq!(classify_type(&line, 1e-9), SolutionType::TypeI);
    }

    #[test]
    fn bound_for_c_two() {
        let traj = e2_run(2.0, CurveState::new(1.0, 0.0, 1.0), (-20.0, 20.0), 1e-3);
        let r = curvature_bound(&traj).unwrap();
        assert!(r.pass, "{r}");
        assert!(traj.max_abs_kappa() <= 1.0);
    }

    #[test]
    fn wrong_ambient_is_usage_error() {
        let nil = integrate(&OdeProblem::new(Ambient::Nil3, Target::MINIMAL, CurveState::new(0.0, 0.0, 0.5), (0.0, 1.0), 0.1).unwrap()).unwrap();
        assert!(matches!(curvature_bound(&nil), Err(Error::Usage(_))));
        assert!(matches!(kappa_ode_residual(&nil, 1e-5), Err(Error::Usage(_))));
        let e2c = e2_run(2.0, CurveState::new(1.0, 0.0, FRAC_PI_2), (-1.0, 1.0), 0.1);
        assert!(matches!(symmetry_check(&e2c), Err(Error::Usage(_))));
    }

    #[test]
    fn residual_needs_three_samples() {
        let p = OdeProblem::new(Ambient::E2tilde { c: 1.0 }, Target::MINIMAL, CurveState::new(1.0, 0.0, 1.0), (0.0, 1.0), 1.0).unwrap();
        let short = Trajectory::from_samples(p, Method::Rk4, integrate(&p).unwrap().samples().to_vec()).unwrap();
        assert_eq!(short.len(), 2);
        assert!(matches!(kappa_ode_residual(&short, 1e-5), Err(Error::Usage(_))));
    }

    #[test]
    fn residual_is_second_order() {
        let ic = CurveState::new(1.0, 0.0, FRAC_PI_2);
        let r1 = kappa_ode_residual(&e2_run(1.0, ic, (-20.0, 20.0), 2e-2), 1.0).unwrap().measured;
        let r2 = kappa_ode_residual(&e2_run(1.0, ic, (-20.0, 20.0), 1e-2), 1.0).unwrap().measured;
        let ratio = r1 / r2;
        assert!((3.0..5.0).contains(&ratio), "{r1:e} {r2:e} {ratio}");
    }

    #[test]
    fn support_function_values() {
        assert_eq!(support_function(&CurveState::new(0.0, 0.0, 1.3)), 0.0);
        assert!((support_function(&CurveState::new(1.0, 0.0, FRAC_PI_2)) + 1.0).abs() < 1e-15);
        let traj = e2_run(1.0, CurveState::new(1.0, 0.0, FRAC_PI_2), (-30.0, 30.0), 1e-2);
        assert!(support_relation_residual(&traj).unwrap() <= 1e-10);
    }

    #[test]
    fn classification() {
        let radial = e2_run(1.0, CurveState::new(3.0, 4.0, 4.0f64.atan2(3.0)), (-1.0, 1.0), 0.1);
        assert_eq!(classify_type(&radial, 1e-9), SolutionType::TypeI);
        let fig = e2_run(1.0, CurveState::new(1.0, 0.0, FRAC_PI_2), (-1.0, 1.0), 0.1);
        assert_eq!(classify_type(&fig, 1e-9), SolutionType::TypeII);
    }

    #[test]
    fn symmetry_of_normalized_runs() {
        let up = e2_run(1.0, CurveState::new(1.0, 0.0, FRAC_PI_2), (-50.0, 50.0), 1e-3);
        let r = symmetry_check(&up).unwrap();
        assert!(r.pass, "{r}");
        let down = e2_run(1.0, CurveState::new(1.0, 0.0, -FRAC_PI_2), (-50.0, 50.0), 1e-3);
        let r = symmetry_check(&down).unwrap();
        assert!(r.pass, "{r}");
        let reversed = e2_run(1.0, CurveState::new(1.0, 0.0, FRAC_PI_2), (50.0, -50.0), 1e-2);
        assert!(symmetry_check(&reversed).unwrap().pass);
        let skew = e2_run(1.0, CurveState::new(1.0, 0.0, 1.0), (-5.0, 5.0), 1e-2);
        assert!(matches!(symmetry_check(&skew), Err(Error::Usage(_))));
    }

    #[test]
    fn symmetry_detects_broken_parity() {
        let good = e2_run(1.0, CurveState::new(1.0, 0.0, FRAC_PI_2), (-5.0, 5.0), 1e-2);
        let mut samples = good.samples().to_vec();
        let last = samples.len() - 1;
        samples[last].y += 1e-6;
        let bad = Trajectory::from_samples(*good.problem(), Method::Rk4, samples).unwrap();
        let r = symmetry_check(&bad).unwrap();
        assert!(!r.pass && r.measured > 9e-7);
    }

    #[test]
    fn randomized_type_two_runs() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..20 {
            let r0 = rng.gen_range(0.5..5.0);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let traj = e2_run(1.0, CurveState::new(r0, 0.0, sign * FRAC_PI_2), (-30.0, 30.0), 1e-3);
            assert_eq!(classify_type(&traj, 1e-9), SolutionType::TypeII);
            for r in [
                curvature_bound(&traj).unwrap(),
                kappa_ode_residual(&traj, KAPPA_RESIDUAL_TOL).unwrap(),
                symmetry_check(&traj).unwrap(),
            ] {
                assert!(r.pass, "r0 = {r0}: {r}");
            }
            let top = kappa_argmax(&traj).unwrap();
            assert!(top.t.abs() <= 2e-3);
        }
    }

    #[test]
    fn type_one_runs_have_zero_curvature() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let (x, y) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let through_origin = rng.gen_bool(0.5);
            let ic = if through_origin {
                CurveState::new(0.0, 0.0, rng.gen_range(-PI..PI))
            } else {
                CurveState::new(x, y, f64::atan2(y, x))
            };
            let traj = e2_run(1.0, ic, (-10.0, 10.0), 1e-2);
            assert_eq!(classify_type(&traj, 1e-9), SolutionType::TypeI);
            assert!(traj.max_abs_kappa() <= 1e-12, "{ic:?}: {}", traj.max_abs_kappa());
        }
    }

    #[test]
    fn axes_check() {
        let r = constant_theta_axes_check(2.0).unwrap();
        assert!(r.pass, "{r}");
        assert!(r.measured <= 1e-12);
        assert!(constant_theta_axes_check(1.5).unwrap().pass);
        assert!(matches!(constant_theta_axes_check(1.0), Err(Error::Usage(_))));
        let diag = CurveState::new(1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt(), PI / 4.0);
        let k = specialized_theta_prime(&Ambient::E2tilde { c: 2.0 }, &diag, 0.0).unwrap();
        assert!(k.abs() > 1e-3);
    }

    #[test]
    fn continuous_dependence() {
        let ic = CurveState::new(1.0, 0.0, FRAC_PI_2);
        let wide = continuous_dependence_check_with_step(ic, (0.0, 10.0), 1e3, 1e-2).unwrap();
        assert!(wide.pass);
        let (delta, _) = continuity_delta(ic, (0.0, 10.0), 1e3, 1e-2).unwrap();
        assert!(delta >= 1.0);

        let r = continuous_dependence_check_with_step(ic, (0.0, 10.0), 1e-2, 1e-2).unwrap();
        assert!(r.pass, "{r}");
        let (delta, gap) = continuity_delta(ic, (0.0, 10.0), 1e-2, 1e-2).unwrap();
        assert!(delta > 0.0 && gap < 1e-2);

        let base = e2_run(1.0, ic, (0.0, 10.0), 1e-2);
        assert_eq!(family_gap(ic, (0.0, 10.0), 1e-2, 1.0, &base).unwrap(), 0.0);
    }

    #[test]
    fn drift_checks() {
        let nil = integrate(&OdeProblem::new(Ambient::Nil3, Target::MINIMAL, CurveState::new(0.0, 0.0, PI / 4.0), (-10.0, 10.0), 1e-3).unwrap()).unwrap();
        assert!(first_integral_drift(&nil, FIRST_INTEGRAL_TOL).unwrap().pass);
        let zk = integrate(&OdeProblem::new(Ambient::E2tilde { c: 1.0 }, Target::ZeroGauss, CurveState::new(2.0, 1.0, PI / 4.0), (0.0, 5.0), 1e-3).unwrap()).unwrap();
        assert!(first_integral_drift(&zk, FIRST_INTEGRAL_TOL).unwrap().pass);
        let e2 = e2_run(1.0, CurveState::new(1.0, 0.0, 1.0), (0.0, 1.0), 0.1);
        assert!(matches!(first_integral_drift(&e2, 1e-8), Err(Error::Usage(_))));
    }

    #[test]
    fn samples_carry_rhs_curvature() {
        let traj = e2_run(1.0, CurveState::new(1.0, 0.0, 1.0), (-3.0, 3.0), 1e-2);
        assert_eq!(kappa_consistency(&traj).unwrap(), 0.0);
    }
}
