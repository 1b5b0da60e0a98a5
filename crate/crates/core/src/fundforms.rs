//! Fundamental forms of the surface swept by a horizontal curve.
//!
//! Everything is evaluated at `s = 0`, i.e. on the generating curve
//! `γ(t) = (x(t), y(t), 0)` itself, where the frame and coordinate bases agree.
//! Vertical translations are isometries, so the values hold along each orbit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liegroup::{Ambient, GroupMatrix, GroupPoint, Vec3};

/// `(x, y, θ)` of an arclength-parameterized horizontal curve.
///
/// `theta` is unwrapped; trigonometric evaluation does not care.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveState {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl CurveState {
    pub const fn new(x: f64, y: f64, theta: f64) -> Self {
        Self { x, y, theta }
    }

    pub fn tangent(&self) -> [f64; 2] {
        let (s, c) = self.theta.sin_cos();
        [c, s]
    }

    pub fn radius(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn lift(&self) -> GroupPoint {
        GroupPoint::new(self.x, self.y, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.theta.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FirstForm {
    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundForms {
    pub first: FirstForm,
    pub second: SecondForm,
    /// Unit normal in frame coordinates.
    pub normal: Vec3,
}

/// `(δ, ε) = (ax + by, cx + dy)`.
pub fn delta_eps(ambient: &Ambient, s: &CurveState) -> (f64, f64) {
    let GroupMatrix { a, b, c, d } = ambient.matrix();
    (a * s.x + b * s.y, c * s.x + d * s.y)
}

/// `Φ_t` and `Φ_s` at `(t, 0)` in frame coordinates.
pub fn tangent_fields(ambient: &Ambient, s: &CurveState) -> (Vec3, Vec3) {
    let (de, ep) = delta_eps(ambient, s);
    let [c, sn] = s.tangent();
    ([c, sn, 0.0], [de, ep, 1.0])
}

pub fn first_form(ambient: &Ambient, s: &CurveState) -> FirstForm {
    let (de, ep) = delta_eps(ambient, s);
    let (sn, c) = s.theta.sin_cos();
    FirstForm {
        e: 1.0,
        f: de * c + ep * sn,
        g: 1.0 + de * de + ep * ep,
    }
}

/// `ε cosθ − δ sinθ`, the third component of `Φ_t × Φ_s`.
fn twist(de: f64, ep: f64, sn: f64, c: f64) -> f64 {
    ep * c - de * sn
}

pub fn second_form(ambient: &Ambient, s: &CurveState, theta_prime: f64) -> SecondForm {
    let GroupMatrix { a, b, c, d } = ambient.matrix();
    let (de, ep) = delta_eps(ambient, s);
    let (sn, co) = s.theta.sin_cos();
    let (sn2, co2) = (2.0 * s.theta).sin_cos();
    let w = twist(de, ep, sn, co);
    let root = (1.0 + w * w).sqrt();
    let bc = b + c;

    let e = (-w * (-(a - d) * co2 - a - bc * sn2 - d) - 2.0 * theta_prime) / (2.0 * root);
    let f = (w * (co * (2.0 * a * de + bc * ep) + sn * (bc * de + 2.0 * d * ep)) + b - c)
        / (2.0 * root);
    let g = (co * (a * de * de * ep + de * (bc * ep * ep + b) + d * ep * (ep * ep + 1.0))
        - sn * (de * (a * de * de + a + bc * de * ep + d * ep * ep) + c * ep))
        / root;
    SecondForm { e, f, g }
}

/// `N = (Φ_t × Φ_s) / |Φ_t × Φ_s|` in frame coordinates.
pub fn normal(ambient: &Ambient, s: &CurveState) -> Vec3 {
    let (de, ep) = delta_eps(ambient, s);
    let (sn, co) = s.theta.sin_cos();
    let w = twist(de, ep, sn, co);
    let root = (1.0 + w * w).sqrt();
    [sn / root, -co / root, w / root]
}

pub fn fundamental_forms(ambient: &Ambient, s: &CurveState, theta_prime: f64) -> FundForms {
    FundForms {
        first: first_form(ambient, s),
        second: second_form(ambient, s, theta_prime),
        normal: normal(ambient, s),
    }
}

fn checked_det(first: &FirstForm) -> Result<f64> {
    let det = first.det();
    if det > 0.0 && det.is_finite() {
        Ok(det)
    } else {
        Err(Error::DegenerateForm(det))
    }
}

/// `H = (Eg − 2Ff + eG) / (2(EG − F²))`, sign fixed by the normal above.
pub fn mean_curvature(ambient: &Ambient, s: &CurveState, theta_prime: f64) -> Result<f64> {
    let first = first_form(ambient, s);
    let det = checked_det(&first)?;
    let second = second_form(ambient, s, theta_prime);
    Ok((first.e * second.g - 2.0 * first.f * second.f + second.e * first.g) / (2.0 * det))
}

/// `K = (eg − f²) / (EG − F²)`.
pub fn gaussian_curvature(ambient: &Ambient, s: &CurveState, theta_prime: f64) -> Result<f64> {
    let first = first_form(ambient, s);
    let det = checked_det(&first)?;
    let second = second_form(ambient, s, theta_prime);
    Ok((second.e * second.g - second.f * second.f) / det)
}

/// Curvature of the generating curve making the swept surface have mean curvature `h`.
///
/// Solves the mean-curvature equation written as a polynomial identity in
/// `δ, ε, sinθ, sin3θ, cosθ, cos3θ`; it is affine in θ′ with coefficient
/// `−4(1 + δ² + ε²)`.
pub fn theta_prime_for_h(ambient: &Ambient, s: &CurveState, h: f64) -> f64 {
    let GroupMatrix { a, b, c, d } = ambient.matrix();
    let (de, ep) = delta_eps(ambient, s);
    let th = s.theta;
    let (sn, co) = th.sin_cos();
    let (sn3, co3) = (3.0 * th).sin_cos();
    let tr = a + d;
    let de2 = de * de;
    let ep2 = ep * ep;

    let rest = -sn * (de * (3.0 * tr * (de2 + ep2) + 5.0 * a + 3.0 * d) + (3.0 * b - c) * ep)
        + sn3 * (de * (tr * (de2 - 3.0 * ep2) - a + d) + (b + c) * ep)
        + co * (ep * (3.0 * tr * de2 + 3.0 * a + 5.0 * d) - (b - 3.0 * c) * de + 3.0 * tr * ep2 * ep)
        + co3 * (-ep * (3.0 * tr * de2 - a + d) + (b + c) * de + tr * ep2 * ep);
    let w = twist(de, ep, sn, co);
    let lhs = 8.0 * (w * w + 1.0).powf(1.5) * h;
    (rest - lhs) / (4.0 * (1.0 + de2 + ep2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    const TOL: f64 = 1e-12;

    fn ambients() -> Vec<Ambient> {
        vec![
            Ambient::Euclid,
            Ambient::Nil3,
            Ambient::Sol3 { c: 1.0 },
            Ambient::Sol3 { c: 2.5 },
            Ambient::E2tilde { c: 1.0 },
            Ambient::E2tilde { c: 1.7 },
            Ambient::Custom(GroupMatrix::new(0.5, -1.0, 0.3, 1.2)),
        ]
    }

    fn random_state(rng: &mut StdRng) -> CurveState {
        CurveState::new(
            rng.gen_range(-4.0..4.0),
            rng.gen_range(-4.0..4.0),
            rng.gen_range(-10.0..10.0),
        )
    }

    #[test]
    fn delta_eps_examples() {
        assert_eq!(delta_eps(&Ambient::Euclid, &CurveState::new(1.0, 2.0, 0.0)), (0.0, 0.0));
        assert_eq!(delta_eps(&Ambient::Nil3, &CurveState::new(3.0, 2.0, 0.0)), (2.0, 0.0));
        assert_eq!(
            delta_eps(&Ambient::E2tilde { c: 2.0 }, &CurveState::new(1.0, 1.0, 0.0)),
            (-2.0, 0.5)
        );
    }

    #[test]
    fn first_form_examples() {
        let f = first_form(&Ambient::Euclid, &CurveState::new(2.0, -1.0, 0.4));
        assert_eq!((f.e, f.f, f.g), (1.0, 0.0, 1.0));
        let (y, th) = (1.7, 0.9);
        let f = first_form(&Ambient::Nil3, &CurveState::new(0.0, y, th));
        assert_eq!(f.e, 1.0);
        assert!((f.f - y * th.cos()).abs() < TOL);
        assert!((f.g - (1.0 + y * y)).abs() < TOL);
        for amb in ambients() {
            let f = first_form(&amb, &CurveState::new(0.0, 0.0, 1.3));
            assert_eq!((f.e, f.f, f.g), (1.0, 0.0, 1.0));
        }
    }

    #[test]
    fn second_form_examples() {
        let s = CurveState::new(0.4, -0.2, 0.8);
        let sf = second_form(&Ambient::Euclid, &s, 0.0);
        assert_eq!((sf.e, sf.f, sf.g), (0.0, 0.0, 0.0));
        let sf = second_form(&Ambient::Euclid, &s, 0.3);
        assert!((sf.e + 0.3).abs() < TOL && sf.f == 0.0 && sf.g == 0.0);
        let sf = second_form(&Ambient::Nil3, &CurveState::new(0.0, 0.0, 0.6), 0.25);
        assert!((sf.e + 0.25).abs() < TOL);
        assert!((sf.f - 0.5).abs() < TOL);
        assert!(sf.g.abs() < TOL);
    }

    #[test]
    fn normal_examples() {
        let n = normal(&Ambient::Euclid, &CurveState::new(1.0, 1.0, 0.0));
        assert_eq!(n, [0.0, -1.0, 0.0]);
        for amb in ambients() {
            let n = normal(&amb, &CurveState::new(0.0, 0.0, FRAC_PI_2));
            assert!((n[0] - 1.0).abs() < TOL && n[1].abs() < TOL && n[2].abs() < TOL);
        }
        let n = normal(&Ambient::Nil3, &CurveState::new(0.0, 1.0, 0.0));
        assert!((n[1] + 1.0).abs() < TOL && n[0].abs() < TOL && n[2].abs() < TOL);
        let n = normal(&Ambient::Nil3, &CurveState::new(0.0, 1.0, FRAC_PI_4));
        let r = 1.5f64.sqrt();
        let h = SQRT_2 / 2.0;
        assert!((n[0] - h / r).abs() < TOL);
        assert!((n[1] + h / r).abs() < TOL);
        assert!((n[2] + h / r).abs() < TOL);
    }

    #[test]
    fn normal_is_unit_and_orthogonal() {
        let mut rng = StdRng::seed_from_u64(7);
        for amb in ambients() {
            for _ in 0..500 {
                let s = random_state(&mut rng);
                let n = normal(&amb, &s);
                let (pt, ps) = tangent_fields(&amb, &s);
                let dot = |u: &Vec3, v: &Vec3| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
                assert!((dot(&n, &n) - 1.0).abs() < TOL);
                assert!(dot(&n, &pt).abs() < TOL);
                assert!(dot(&n, &ps).abs() < TOL * (1.0 + dot(&ps, &ps)));
            }
        }
    }

    #[test]
    fn first_form_is_positive_definite() {
        let mut rng = StdRng::seed_from_u64(11);
        for amb in ambients() {
            for _ in 0..500 {
                let f = first_form(&amb, &random_state(&mut rng));
                assert_eq!(f.e, 1.0);
                assert!(f.g >= 1.0 && f.det() > 0.0);
            }
        }
    }

    #[test]
    fn mean_curvature_examples() {
        let s = CurveState::new(0.3, 0.9, 2.0);
        assert_eq!(mean_curvature(&Ambient::Euclid, &s, 0.0).unwrap(), 0.0);

        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..1000 {
            let s = random_state(&mut rng);
            let tp: f64 = rng.gen_range(-2.0..2.0);
            let (x, y, th) = (s.x, s.y, s.theta);
            let (sn, co) = th.sin_cos();

            let nil = -(y * co * sn * sn + (1.0 + y * y) * tp)
                / (2.0 * (1.0 + y * y * sn * sn).powf(1.5));
            let got = mean_curvature(&Ambient::Nil3, &s, tp).unwrap();
            assert!((got - nil).abs() < 1e-12, "nil {got} vs {nil}");

            let e2 = (x * sn - y * co - (1.0 + x * x + y * y) * tp)
                / (2.0 * (1.0 + (x * co + y * sn).powi(2)).powf(1.5));
            let got = mean_curvature(&Ambient::E2tilde { c: 1.0 }, &s, tp).unwrap();
            assert!((got - e2).abs() < 1e-12, "e2 {got} vs {e2}");
        }
    }

    #[test]
    fn gaussian_curvature_examples() {
        let s = CurveState::new(1.0, -2.0, 0.7);
        for tp in [-1.0, 0.0, 0.4] {
            assert_eq!(gaussian_curvature(&Ambient::Euclid, &s, tp).unwrap(), 0.0);
        }
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..1000 {
            let s = random_state(&mut rng);
            let tp: f64 = rng.gen_range(-2.0..2.0);
            let (sn, co) = s.theta.sin_cos();
            let w = s.x * co + s.y * sn;
            let k = -(1.0 + (s.y * co - s.x * sn) * tp) / (1.0 + w * w).powi(2);
            let got = gaussian_curvature(&Ambient::E2tilde { c: 1.0 }, &s, tp).unwrap();
            assert!((got - k).abs() < 1e-12, "{got} vs {k}");
        }
    }

    #[test]
    fn degenerate_first_form_is_rejected() {
        let s = CurveState::new(f64::NAN, 0.0, 0.0);
        assert!(matches!(
            mean_curvature(&Ambient::Nil3, &s, 0.0),
            Err(Error::DegenerateForm(_))
        ));
        assert!(gaussian_curvature(&Ambient::Sol3 { c: 1.0 }, &s, 0.0).is_err());
    }

    #[test]
    fn theta_prime_examples() {
        let s = CurveState::new(0.5, -1.5, 0.3);
        assert_eq!(theta_prime_for_h(&Ambient::Euclid, &s, 0.0), 0.0);
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..1000 {
            let s = random_state(&mut rng);
            let (sn, co) = s.theta.sin_cos();
            let expect = -s.y * co * sn * sn / (1.0 + s.y * s.y);
            assert!((theta_prime_for_h(&Ambient::Nil3, &s, 0.0) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn theta_prime_round_trips_through_mean_curvature() {
        let mut rng = StdRng::seed_from_u64(13);
        for amb in ambients() {
            for _ in 0..2000 {
                let s = random_state(&mut rng);
                let h = rng.gen_range(-2.0..2.0);
                let tp = theta_prime_for_h(&amb, &s, h);
                let back = mean_curvature(&amb, &s, tp).unwrap();
                assert!((back - h).abs() <= 1e-10, "{amb}: {back} vs {h}");
            }
        }
    }
}
