//! Flat `key = value` run descriptions.
//!
//! ```text
//! # Figure-2 style run
//! ambient = e2:1
//! target = 0
//! ic = 1, 0, 1.5707963267948966
//! t0 = -250
//! t1 = 250
//! checks = curvature_bound, symmetry, self_intersections
//! expected_crossings = 2
//! tol.kappa_ode_residual = 1e-5
//! ```
//!
//! Blank lines and `#` comments are ignored; unknown keys are errors.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use vertinv::cmc_ode::{Method, DEFAULT_STEP};
use vertinv::{Ambient, CurveState, Error, OdeProblem, Result, Target};

/// Verifier names accepted in `checks`.
pub const CHECKS: &[&str] = &[
    "curvature_bound",
    "kappa_ode_residual",
    "symmetry",
    "self_intersections",
    "classify_type",
    "first_integral",
    "constant_theta_axes",
    "continuous_dependence",
    "kappa_decay",
    "support_relation",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub ambient: Option<Ambient>,
    pub target: Option<Target>,
    pub ic: Option<CurveState>,
    pub t0: f64,
    pub t1: f64,
    pub step: f64,
    pub method: Method,
    pub s0: f64,
    pub s1: f64,
    pub ns: usize,
    pub decimate: usize,
    pub out: Option<PathBuf>,
    pub mesh_out: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub checks: Vec<String>,
    pub tolerances: BTreeMap<String, f64>,
    pub expected_crossings: Option<usize>,
    pub expected_type: Option<String>,
    pub decay_early: (f64, f64),
    pub decay_late: (f64, f64),
}

impl Default for RunSpec {
    fn default() -> Self {
        RunSpec {
            ambient: None,
            target: None,
            ic: None,
            t0: -10.0,
            t1: 10.0,
            step: DEFAULT_STEP,
            method: Method::Rk4,
            s0: 0.0,
            s1: TAU,
            ns: 64,
            decimate: 1,
            out: None,
            mesh_out: None,
            report: None,
            checks: Vec::new(),
            tolerances: BTreeMap::new(),
            expected_crossings: None,
            expected_type: None,
            decay_early: (0.0, 50.0),
            decay_late: (200.0, 250.0),
        }
    }
}

fn bad(key: &str, value: &str, what: &str) -> Error {
    Error::Parse(format!("{key} = {value:?}: {what}"))
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    let x: f64 = v.trim().parse().map_err(|_| bad(key, v, "expected a number"))?;
    if !x.is_finite() {
        return Err(bad(key, v, "expected a finite number"));
    }
    Ok(x)
}

fn parse_list(key: &str, v: &str, n: usize) -> Result<Vec<f64>> {
    let xs = v.split(',').map(|p| parse_f64(key, p)).collect::<Result<Vec<_>>>()?;
    if xs.len() != n {
        return Err(bad(key, v, &format!("expected {n} comma-separated numbers")));
    }
    Ok(xs)
}

pub fn parse_ic(v: &str) -> Result<CurveState> {
    let xs = parse_list("ic", v, 3)?;
    Ok(CurveState::new(xs[0], xs[1], xs[2]))
}

pub fn parse_target(v: &str) -> Result<Target> {
    let t = v.trim();
    if t.eq_ignore_ascii_case("k0") {
        Ok(Target::ZeroGauss)
    } else {
        Ok(Target::MeanCurvature(parse_f64("target", t)?))
    }
}

fn parse_method(v: &str) -> Result<Method> {
    match v.trim() {
        "rk4" => Ok(Method::Rk4),
        "closed-form" | "closed_form" => Ok(Method::ClosedForm),
        _ => Err(bad("method", v, "expected rk4 or closed-form")),
    }
}

fn render_method(m: Method) -> &'static str {
    match m {
        Method::Rk4 => "rk4",
        Method::ClosedForm => "closed-form",
    }
}

fn check_name(key: &str, name: &str) -> Result<String> {
    let name = name.trim();
    if CHECKS.contains(&name) {
        Ok(name.to_string())
    } else {
        Err(bad(key, name, &format!("unknown check; known: {}", CHECKS.join(", "))))
    }
}

pub fn parse_checks(v: &str) -> Result<Vec<String>> {
    v.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| check_name("checks", s))
        .collect()
}

impl RunSpec {
    /// Applies one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        let pair = |k: &str| -> Result<(f64, f64)> {
            let xs = parse_list(k, v, 2)?;
            Ok((xs[0], xs[1]))
        };
        match key {
            "ambient" => self.ambient = Some(v.parse()?),
            "target" => self.target = Some(parse_target(v)?),
            "ic" => self.ic = Some(parse_ic(v)?),
            "t0" => self.t0 = parse_f64(key, v)?,
            "t1" => self.t1 = parse_f64(key, v)?,
            "step" => self.step = parse_f64(key, v)?,
            "method" => self.method = parse_method(v)?,
            "s0" => self.s0 = parse_f64(key, v)?,
            "s1" => self.s1 = parse_f64(key, v)?,
            "ns" => self.ns = v.parse().map_err(|_| bad(key, v, "expected a count"))?,
            "decimate" => self.decimate = v.parse().map_err(|_| bad(key, v, "expected a count"))?,
            "out" => self.out = Some(PathBuf::from(v)),
            "mesh_out" => self.mesh_out = Some(PathBuf::from(v)),
            "report" => self.report = Some(PathBuf::from(v)),
            "checks" => self.checks = parse_checks(v)?,
            "expected_crossings" => {
                self.expected_crossings = Some(v.parse().map_err(|_| bad(key, v, "expected a count"))?)
            }
            "expected_type" => match v {
                "I" | "II" => self.expected_type = Some(v.to_string()),
                _ => return Err(bad(key, v, "expected I or II")),
            },
            "decay_early" => self.decay_early = pair(key)?,
            "decay_late" => self.decay_late = pair(key)?,
            _ => match key.strip_prefix("tol.") {
                Some(name) => {
                    let name = check_name(key, name)?;
                    self.tolerances.insert(name, parse_f64(key, v)?);
                }
                None => return Err(Error::Parse(format!("unknown key {key:?}"))),
            },
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = RunSpec::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value, got {raw:?}", n + 1)))?;
            spec.set(k.trim(), v).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("line {}: {m}", n + 1)),
                e => Error::Parse(format!("line {}: {e}", n + 1)),
            })?;
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        RunSpec::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    /// The problem this spec describes; ambient, target and ic are required.
    pub fn problem(&self) -> Result<OdeProblem> {
        let ambient = self.ambient.ok_or_else(|| Error::Usage("missing ambient (--ambient)".into()))?;
        let target = self.target.ok_or_else(|| Error::Usage("missing target (--H <value> or --K0)".into()))?;
        let ic = self.ic.ok_or_else(|| Error::Usage("missing initial condition (--ic x,y,theta)".into()))?;
        OdeProblem::new(ambient, target, ic, self.t_span(), self.step)
    }

    pub fn t_span(&self) -> (f64, f64) {
        (self.t0, self.t1)
    }

    pub fn tolerance(&self, check: &str) -> Option<f64> {
        self.tolerances.get(check).copied()
    }
}

/// Canonical text form; parsing it yields the same spec.
impl fmt::Display for RunSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(a) = &self.ambient {
            writeln!(f, "ambient = {a}")?;
        }
        match self.target {
            Some(Target::MeanCurvature(h)) => writeln!(f, "target = {h}")?,
            Some(Target::ZeroGauss) => writeln!(f, "target = K0")?,
            None => {}
        }
        if let Some(ic) = &self.ic {
            writeln!(f, "ic = {}, {}, {}", ic.x, ic.y, ic.theta)?;
        }
        writeln!(f, "t0 = {}", self.t0)?;
        writeln!(f, "t1 = {}", self.t1)?;
        writeln!(f, "step = {}", self.step)?;
        writeln!(f, "method = {}", render_method(self.method))?;
        writeln!(f, "s0 = {}", self.s0)?;
        writeln!(f, "s1 = {}", self.s1)?;
        writeln!(f, "ns = {}", self.ns)?;
        writeln!(f, "decimate = {}", self.decimate)?;
        for (k, p) in [("out", &self.out), ("mesh_out", &self.mesh_out), ("report", &self.report)] {
            if let Some(p) = p {
                writeln!(f, "{k} = {}", p.display())?;
            }
        }
        if !self.checks.is_empty() {
            writeln!(f, "checks = {}", self.checks.join(", "))?;
        }
        for (k, v) in &self.tolerances {
            writeln!(f, "tol.{k} = {v}")?;
        }
        if let Some(n) = self.expected_crossings {
            writeln!(f, "expected_crossings = {n}")?;
        }
        if let Some(t) = &self.expected_type {
            writeln!(f, "expected_type = {t}")?;
        }
        writeln!(f, "decay_early = {}, {}", self.decay_early.0, self.decay_early.1)?;
        write!(f, "decay_late = {}, {}", self.decay_late.0, self.decay_late.1)
    }
}

impl FromStr for RunSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RunSpec::parse(s)
    }
}
