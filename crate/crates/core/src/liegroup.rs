//! The metric Lie group R² ⋊_A R with its canonical left-invariant metric.
//!
//! Points are written in the global chart `(x, y, z)`. The product is
//! `(p1, z1) * (p2, z2) = (p1 + e^{z1 A} p2, z1 + z2)` and the frame
//! `E1, E2, E3` is built from the columns of `e^{zA}`, so it is orthonormal
//! for the metric returned by [`metric_at`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Series evaluation of `e^{M}` scales `M` down until its norm is below this.
pub const EXP_SERIES_THRESHOLD: f64 = 0.5;

/// Coordinates with respect to `∂x, ∂y, ∂z` or `E1, E2, E3`.
pub type Vec3 = [f64; 3];

/// The 2×2 matrix `A = [[a, b], [c, d]]` defining the semidirect product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GroupMatrix {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }
}

/// The ambient group, either one of the canonical unimodular families or an
/// arbitrary matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Ambient {
    /// `A = 0`, Euclidean R³.
    Euclid,
    /// `A = [[0, c], [1/c, 0]]`, `c ≥ 1`.
    Sol3 { c: f64 },
    /// `A = [[0, 1], [0, 0]]`.
    Nil3,
    /// `A = [[0, -c], [1/c, 0]]`, `c ≥ 1`; `c = 1` is the flat metric.
    E2tilde { c: f64 },
    Custom(GroupMatrix),
}

impl Ambient {
    pub fn sol3(c: f64) -> Result<Self> {
        let amb = Ambient::Sol3 { c };
        amb.validate()?;
        Ok(amb)
    }

    pub fn e2tilde(c: f64) -> Result<Self> {
        let amb = Ambient::E2tilde { c };
        amb.validate()?;
        Ok(amb)
    }

    pub fn custom(m: GroupMatrix) -> Result<Self> {
        let amb = Ambient::Custom(m);
        amb.validate()?;
        Ok(amb)
    }

    /// Checks the family parameter lies in `[1, ∞)` and custom entries are finite.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Ambient::Sol3 { c } | Ambient::E2tilde { c } => {
                if c.is_finite() && c >= 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "family parameter c must lie in [1, inf), got {c}"
                    )))
                }
            }
            Ambient::Custom(m) if !m.is_finite() => Err(Error::InvalidParameter(
                "custom matrix entries must be finite".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn matrix(&self) -> GroupMatrix {
        match *self {
            Ambient::Euclid => GroupMatrix::new(0.0, 0.0, 0.0, 0.0),
            Ambient::Sol3 { c } => GroupMatrix::new(0.0, c, 1.0 / c, 0.0),
            Ambient::Nil3 => GroupMatrix::new(0.0, 1.0, 0.0, 0.0),
            Ambient::E2tilde { c } => GroupMatrix::new(0.0, -c, 1.0 / c, 0.0),
            Ambient::Custom(m) => m,
        }
    }

    /// True for the flat `Ẽ(2)` metric, whose chart metric is Euclidean.
    pub fn is_flat_e2(&self) -> bool {
        matches!(*self, Ambient::E2tilde { c } if c == 1.0)
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Euclid => write!(f, "euclid"),
            Ambient::Sol3 { c } => write!(f, "sol3:{c}"),
            Ambient::Nil3 => write!(f, "nil3"),
            Ambient::E2tilde { c } => write!(f, "e2:{c}"),
            Ambient::Custom(m) => write!(f, "custom:{},{},{},{}", m.a, m.b, m.c, m.d),
        }
    }
}

impl FromStr for Ambient {
    type Err = Error;

    /// Parses `euclid`, `nil3`, `sol3[:c]`, `e2[:c]` or `custom:a,b,c,d`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (s, None),
        };
        let parse_c = |p: Option<&str>| -> Result<f64> {
            match p {
                None => Ok(1.0),
                Some(p) => p
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad ambient parameter '{p}'"))),
            }
        };
        match name.to_ascii_lowercase().as_str() {
            "euclid" | "r3" if param.is_none() => Ok(Ambient::Euclid),
            "nil3" | "nil" if param.is_none() => Ok(Ambient::Nil3),
            "sol3" | "sol" => Ambient::sol3(parse_c(param)?),
            "e2" | "e2tilde" => Ambient::e2tilde(parse_c(param)?),
            "custom" => {
                let entries = param
                    .ok_or_else(|| Error::Parse("custom ambient needs a,b,c,d".into()))?
                    .split(',')
                    .map(|v| v.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::Parse(format!("bad custom matrix: {e}")))?;
                match entries[..] {
                    [a, b, c, d] => Ambient::custom(GroupMatrix::new(a, b, c, d)),
                    _ => Err(Error::Parse("custom ambient needs exactly 4 entries".into())),
                }
            }
            _ => Err(Error::Parse(format!("unknown ambient '{s}'"))),
        }
    }
}

/// A point `(x, y, z)` of the group in the global chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl GroupPoint {
    pub const IDENTITY: GroupPoint = GroupPoint::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dist(&self, other: &GroupPoint) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + (self.z - other.z).powi(2))
            .sqrt()
    }
}

/// Entries of `e^{zA}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameCoeffs {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl FrameCoeffs {
    pub const IDENTITY: FrameCoeffs = FrameCoeffs::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        (self.a11 * x + self.a12 * y, self.a21 * x + self.a22 * y)
    }

    pub fn mul(&self, o: &FrameCoeffs) -> FrameCoeffs {
        FrameCoeffs::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }

    pub fn max_abs_diff(&self, o: &FrameCoeffs) -> f64 {
        (self.a11 - o.a11)
            .abs()
            .max((self.a12 - o.a12).abs())
            .max((self.a21 - o.a21).abs())
            .max((self.a22 - o.a22).abs())
    }

    fn scale(&self, s: f64) -> FrameCoeffs {
        FrameCoeffs::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    fn add(&self, o: &FrameCoeffs) -> FrameCoeffs {
        FrameCoeffs::new(
            self.a11 + o.a11,
            self.a12 + o.a12,
            self.a21 + o.a21,
            self.a22 + o.a22,
        )
    }

    /// Max absolute row sum.
    fn norm_inf(&self) -> f64 {
        (self.a11.abs() + self.a12.abs()).max(self.a21.abs() + self.a22.abs())
    }
}

/// `e^{zA}`, in closed form for the canonical families.
pub fn exp_za(ambient: &Ambient, z: f64) -> FrameCoeffs {
    match *ambient {
        Ambient::Euclid => FrameCoeffs::IDENTITY,
        Ambient::Sol3 { c } => {
            let (ch, sh) = (z.cosh(), z.sinh());
            FrameCoeffs::new(ch, c * sh, sh / c, ch)
        }
        Ambient::Nil3 => FrameCoeffs::new(1.0, z, 0.0, 1.0),
        Ambient::E2tilde { c } => {
            let (s, co) = z.sin_cos();
            FrameCoeffs::new(co, -c * s, s / c, co)
        }
        Ambient::Custom(m) => exp_series(&m, z),
    }
}

/// Scaling and squaring with a truncated Taylor series, for any matrix.
pub fn exp_series(m: &GroupMatrix, z: f64) -> FrameCoeffs {
    let za = FrameCoeffs::new(z * m.a, z * m.b, z * m.c, z * m.d);
    let norm = za.norm_inf();
    let mut squarings = 0u32;
    if norm > EXP_SERIES_THRESHOLD {
        squarings = (norm / EXP_SERIES_THRESHOLD).log2().ceil() as u32;
    }
    let scaled = za.scale(0.5f64.powi(squarings as i32));

    let mut sum = FrameCoeffs::IDENTITY;
    let mut term = FrameCoeffs::IDENTITY;
    for k in 1..=30 {
        term = term.mul(&scaled).scale(1.0 / k as f64);
        sum = sum.add(&term);
        if term.norm_inf() <= f64::EPSILON * 1e-3 * sum.norm_inf() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    sum
}

/// `(x1, y1, z1) * (x2, y2, z2)`.
pub fn group_mul(p1: &GroupPoint, p2: &GroupPoint, ambient: &Ambient) -> GroupPoint {
    let m = exp_za(ambient, p1.z);
    let (u, v) = m.apply(p2.x, p2.y);
    GroupPoint::new(p1.x + u, p1.y + v, p1.z + p2.z)
}

/// Left translation by `(0, 0, s)`.
pub fn vertical_flow(ambient: &Ambient, s: f64, p: &GroupPoint) -> GroupPoint {
    let m = exp_za(ambient, s);
    let (u, v) = m.apply(p.x, p.y);
    GroupPoint::new(u, v, s + p.z)
}

/// `[E1, E2, E3]` at `p`, each in `∂x, ∂y, ∂z` coordinates.
pub fn frame_fields(ambient: &Ambient, p: &GroupPoint) -> [Vec3; 3] {
    let m = exp_za(ambient, p.z);
    [
        [m.a11, m.a21, 0.0],
        [m.a12, m.a22, 0.0],
        [0.0, 0.0, 1.0],
    ]
}

/// Metric components in `∂x, ∂y, ∂z`, read off `e^{-zA}`.
pub fn metric_at(ambient: &Ambient, p: &GroupPoint) -> [[f64; 3]; 3] {
    let m = exp_za(ambient, -p.z);
    let gxx = m.a11 * m.a11 + m.a21 * m.a21;
    let gyy = m.a12 * m.a12 + m.a22 * m.a22;
    let gxy = m.a11 * m.a12 + m.a21 * m.a22;
    [[gxx, gxy, 0.0], [gxy, gyy, 0.0], [0.0, 0.0, 1.0]]
}

/// `⟨u, v⟩` with the metric at `p`, both vectors in `∂x, ∂y, ∂z` coordinates.
pub fn inner_at(ambient: &Ambient, p: &GroupPoint, u: &Vec3, v: &Vec3) -> f64 {
    let g = metric_at(ambient, p);
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            acc += u[i] * g[i][j] * v[j];
        }
    }
    acc
}

/// Levi-Civita connection on the left-invariant frame.
///
/// `entries[i][j]` holds the frame coordinates of `∇_{E_{i+1}} E_{j+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionTable {
    pub entries: [[Vec3; 3]; 3],
}

impl ConnectionTable {
    /// `∇_{Ei} Ej` with 1-based indices as in the usual notation.
    pub fn nabla(&self, i: usize, j: usize) -> Vec3 {
        self.entries[i - 1][j - 1]
    }
}

pub fn connection_table(ambient: &Ambient) -> ConnectionTable {
    let GroupMatrix { a, b, c, d } = ambient.matrix();
    let s = (b + c) / 2.0;
    ConnectionTable {
        entries: [
            [[0.0, 0.0, a], [0.0, 0.0, s], [-a, -s, 0.0]],
            [[0.0, 0.0, s], [0.0, 0.0, d], [-s, -d, 0.0]],
            [[0.0, (c - b) / 2.0, 0.0], [(b - c) / 2.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
        ],
    }
}

/// The right-invariant Killing field `F3 = δ∂x + ε∂y + ∂z`, in frame coordinates.
pub fn right_field_f3(ambient: &Ambient, p: &GroupPoint) -> Vec3 {
    let GroupMatrix { a, b, c, d } = ambient.matrix();
    let delta = a * p.x + b * p.y;
    let eps = c * p.x + d * p.y;
    let m = exp_za(ambient, -p.z);
    [
        delta * m.a11 + eps * m.a12,
        delta * m.a21 + eps * m.a22,
        1.0,
    ]
}
