//! Transversal self-crossings of a sampled planar curve.
//!
//! Segments are bucketed in a uniform hash grid whose cell size is the longest
//! segment, so each segment touches at most four cells. Candidate crossings are
//! then refined by repeatedly halving both segments along the cubic Hermite
//! interpolant given by the sample positions and unit tangents.

use std::collections::HashMap;

use super::{Sample, Trajectory};

/// A crossing `γ(t1) = γ(t2)` with `t1 < t2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub t1: f64,
    pub t2: f64,
    pub point: [f64; 2],
}

const MAX_REFINE: usize = 64;

pub fn detect_self_intersections(traj: &Trajectory, spatial_tol: f64) -> Vec<Crossing> {
    let samples = traj.samples();
    if samples.len() < 4 {
        return Vec::new();
    }
    let pts: Vec<[f64; 2]> = samples.iter().map(|s| [s.x, s.y]).collect();
    let n_seg = pts.len() - 1;
    let cell = (0..n_seg)
        .map(|i| dist(&pts[i], &pts[i + 1]))
        .fold(0.0, f64::max);
    if !(cell > 0.0) {
        return Vec::new();
    }

    let key = |v: f64| (v / cell).floor() as i64;
    let mut grid: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
    for i in 0..n_seg {
        let (p, q) = (pts[i], pts[i + 1]);
        for cx in key(p[0].min(q[0]))..=key(p[0].max(q[0])) {
            for cy in key(p[1].min(q[1]))..=key(p[1].max(q[1])) {
                grid.entry((cx, cy)).or_default().push(i as u32);
            }
        }
    }

    let mut candidates: Vec<(u32, u32)> = Vec::new();
    for bucket in grid.values() {
        for (k, &i) in bucket.iter().enumerate() {
            for &j in &bucket[k + 1..] {
                let (i, j) = if i < j { (i, j) } else { (j, i) };
                if j > i + 1 {
                    candidates.push((i, j));
                }
            }
        }
    }
    candidates.sort_unstable();
    candidates.dedup();

    let mut out = Vec::new();
    for (i, j) in candidates {
        let (i, j) = (i as usize, j as usize);
        // Half-open parameters so a crossing through a shared vertex counts once.
        match chord_intersection(&pts[i], &pts[i + 1], &pts[j], &pts[j + 1]) {
            Some((u, v)) if u < 1.0 && v < 1.0 => {
                out.push(refine(&samples[i], &samples[i + 1], &samples[j], &samples[j + 1], u, v, spatial_tol));
            }
            _ => {}
        }
    }
    out.sort_by(|a, b| a.t1.total_cmp(&b.t1).then(a.t2.total_cmp(&b.t2)));
    out
}

fn dist(p: &[f64; 2], q: &[f64; 2]) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// Parameters `(u, v) ∈ [0,1]²` where chords `p0p1` and `q0q1` cross transversally.
fn chord_intersection(p0: &[f64; 2], p1: &[f64; 2], q0: &[f64; 2], q1: &[f64; 2]) -> Option<(f64, f64)> {
    let r = [p1[0] - p0[0], p1[1] - p0[1]];
    let s = [q1[0] - q0[0], q1[1] - q0[1]];
    let denom = r[0] * s[1] - r[1] * s[0];
    let scale = (r[0].hypot(r[1])) * (s[0].hypot(s[1]));
    if denom.abs() <= 1e-14 * scale || scale == 0.0 {
        return None;
    }
    let w = [q0[0] - p0[0], q0[1] - p0[1]];
    let u = (w[0] * s[1] - w[1] * s[0]) / denom;
    let v = (w[0] * r[1] - w[1] * r[0]) / denom;
    ((0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v)).then_some((u, v))
}

/// Cubic Hermite piece through two samples, parameterized on `[0, 1]`.
struct Hermite {
    t0: f64,
    dt: f64,
    p0: [f64; 2],
    p1: [f64; 2],
    m0: [f64; 2],
    m1: [f64; 2],
}

impl Hermite {
    fn new(a: &Sample, b: &Sample) -> Self {
        let dt = b.t - a.t;
        let len = (b.x - a.x).hypot(b.y - a.y);
        let dir = dt.signum();
        // Unit tangent scaled by the chord length; tangents follow increasing t.
        let m = |s: &Sample| [dir * len * s.theta.cos(), dir * len * s.theta.sin()];
        Hermite {
            t0: a.t,
            dt,
            p0: [a.x, a.y],
            p1: [b.x, b.y],
            m0: m(a),
            m1: m(b),
        }
    }

    fn eval(&self, u: f64) -> [f64; 2] {
        let u2 = u * u;
        let u3 = u2 * u;
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        [
            h00 * self.p0[0] + h10 * self.m0[0] + h01 * self.p1[0] + h11 * self.m1[0],
            h00 * self.p0[1] + h10 * self.m0[1] + h01 * self.p1[1] + h11 * self.m1[1],
        ]
    }

    fn t_at(&self, u: f64) -> f64 {
        self.t0 + u * self.dt
    }
}

fn refine(a0: &Sample, a1: &Sample, b0: &Sample, b1: &Sample, u: f64, v: f64, tol: f64) -> Crossing {
    let ha = Hermite::new(a0, a1);
    let hb = Hermite::new(b0, b1);
    let (mut ua, mut ub) = ((0.0, 1.0), (0.0, 1.0));
    let (mut u_hit, mut v_hit) = (u, v);

    for _ in 0..MAX_REFINE {
        let (pa0, pa1) = (ha.eval(ua.0), ha.eval(ua.1));
        let (pb0, pb1) = (hb.eval(ub.0), hb.eval(ub.1));
        if let Some((s, r)) = chord_intersection(&pa0, &pa1, &pb0, &pb1) {
            u_hit = ua.0 + s * (ua.1 - ua.0);
            v_hit = ub.0 + r * (ub.1 - ub.0);
        }
        if dist(&pa0, &pa1) < tol && dist(&pb0, &pb1) < tol {
            break;
        }
        let halves = |iv: (f64, f64)| {
            let mid = 0.5 * (iv.0 + iv.1);
            [(iv.0, mid), (mid, iv.1)]
        };
        let next = halves(ua)
            .into_iter()
            .flat_map(|sa| halves(ub).into_iter().map(move |sb| (sa, sb)))
            .find(|(sa, sb)| {
                chord_intersection(&ha.eval(sa.0), &ha.eval(sa.1), &hb.eval(sb.0), &hb.eval(sb.1)).is_some()
            });
        match next {
            Some((sa, sb)) => {
                ua = sa;
                ub = sb;
            }
            None => break,
        }
    }

    let pa = ha.eval(u_hit);
    let pb = hb.eval(v_hit);
    let (ta, tb) = (ha.t_at(u_hit), hb.t_at(v_hit));
    Crossing {
        t1: ta.min(tb),
        t2: ta.max(tb),
        point: [0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmc_ode::{integrate, Method, OdeProblem, Target};
    use crate::fundforms::CurveState;
    use crate::liegroup::Ambient;
    use std::f64::consts::PI;

    fn sampled(f: impl Fn(f64) -> (f64, f64, f64), t0: f64, t1: f64, n: usize) -> Trajectory {
        let problem = OdeProblem::new(Ambient::Euclid, Target::MINIMAL, CurveState::new(0.0, 0.0, 0.0), (t0, t1), 1.0).unwrap();
        let samples = (0..=n)
            .map(|k| {
                let t = t0 + (t1 - t0) * k as f64 / n as f64;
                let (x, y, theta) = f(t);
                Sample { t, x, y, theta, theta_prime: 0.0 }
            })
            .collect();
        Trajectory::from_samples(problem, Method::ClosedForm, samples).unwrap()
    }

    #[test]
    fn straight_line_has_none() {
        let p = OdeProblem::new(Ambient::Euclid, Target::MINIMAL, CurveState::new(1.0, 2.0, 0.3), (-5.0, 5.0), 1e-2).unwrap();
        assert!(detect_self_intersections(&integrate(&p).unwrap(), 1e-9).is_empty());
    }

    #[test]
    fn lemniscate_crossing_is_refined() {
        // Gerono lemniscate (sin t, sin t cos t) crosses itself at the origin at t = 0 and t = π.
        // Parameter is not arclength, so only the chord location is checked.
        let f = |t: f64| {
            let (x, y) = (t.sin(), t.sin() * t.cos());
            let (dx, dy) = (t.cos(), (2.0 * t).cos());
            (x, y, dy.atan2(dx))
        };
        let traj = sampled(f, -1.0, PI + 1.0, 2000);
        let hits = detect_self_intersections(&traj, 1e-9);
        assert_eq!(hits.len(), 1);
        let c = hits[0];
        assert!(c.point[0].abs() < 1e-5 && c.point[1].abs() < 1e-5, "{c:?}");
        assert!(c.t1.abs() < 1e-3 && (c.t2 - PI).abs() < 1e-3);
    }

    #[test]
    fn circle_traversed_twice_is_not_transversal() {
        // Overlapping coincident pieces are parallel, not transversal crossings.
        let f = |t: f64| (t.cos(), t.sin(), t + PI / 2.0);
        let traj = sampled(f, 0.0, 1.5 * PI, 300);
        assert!(detect_self_intersections(&traj, 1e-9).is_empty());
    }

    #[test]
    fn polyline_corner_crossing() {
        // Right along y = 0, then a straight return through (0.8, 0).
        let mut samples = Vec::new();
        for k in 0..=400 {
            let t = -2.0 + 0.01 * k as f64;
            samples.push(Sample { t, x: t, y: 0.0, theta: 0.0, theta_prime: 0.0 });
        }
        let (dx, dy) = (-1.2f64, -1.0f64);
        let (ux, uy) = (dx / dx.hypot(dy), dy / dx.hypot(dy));
        let theta = uy.atan2(ux);
        for k in 1..=400 {
            let s = 0.01 * k as f64;
            samples.push(Sample { t: 2.0 + s, x: 2.0 + s * ux, y: 1.0 + s * uy, theta, theta_prime: 0.0 });
        }
        let problem = OdeProblem::new(Ambient::Euclid, Target::MINIMAL, CurveState::new(0.0, 0.0, 0.0), (-2.0, 6.0), 1.0).unwrap();
        let traj = Trajectory::from_samples(problem, Method::ClosedForm, samples).unwrap();
        let hits = detect_self_intersections(&traj, 1e-9);
        assert_eq!(hits.len(), 1);
        let c = hits[0];
        assert!((c.point[0] - 0.8).abs() < 1e-9 && c.point[1].abs() < 1e-9, "{c:?}");
        assert!((c.t1 - 0.8).abs() < 1e-9 && (c.t2 - (2.0 + 1.2f64.hypot(1.0))).abs() < 1e-9);
    }
}
