//! Subcommand bodies. Each reads a resolved [`RunSpec`] and writes to the given streams.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use vertinv::closedform::{nil_trajectory, zero_k_trajectory};
use vertinv::cmc_ode::Method;
use vertinv::geomverify::{
    classify_type, constant_theta_axes_check, continuous_dependence_check_with_step, curvature_bound,
    first_integral_drift, kappa_decay_check, kappa_ode_residual, self_intersection_check, support_relation_residual,
    symmetry_check, SolutionType, VerifyReport, FIRST_INTEGRAL_TOL, KAPPA_RESIDUAL_TOL,
};
use vertinv::surfacegen::{generate_mesh_decimated, write_mesh, write_trajectory_csv};
use vertinv::{integrate, Ambient, Error, Result, Target, Trajectory};

use crate::runspec::RunSpec;
use crate::CliError;

/// Default `eps` for the continuous-dependence check.
pub const CONTINUITY_EPS: f64 = 1e-2;
/// Default cap on late `|κ|` for the decay check.
pub const DECAY_CAP: f64 = 0.05;
/// Default tolerance for `κ = −ξ/(1+|γ|²)`.
pub const SUPPORT_RELATION_TOL: f64 = 1e-10;
/// Radius below which a curve counts as passing through the origin.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Comment header embedded in every output file.
pub fn provenance_header(command: &str, spec: &RunSpec) -> String {
    format!("vertinv {} {command}\n{spec}", env!("CARGO_PKG_VERSION"))
}

/// Integrates or evaluates the closed form, as `spec.method` selects.
pub fn trajectory(spec: &RunSpec) -> Result<Trajectory> {
    let problem = spec.problem()?;
    match spec.method {
        Method::Rk4 => integrate(&problem),
        Method::ClosedForm => match (problem.ambient, problem.target) {
            (Ambient::Nil3, Target::MeanCurvature(h)) if h == 0.0 => {
                nil_trajectory(problem.initial, problem.t_span, problem.step)
            }
            (Ambient::E2tilde { c }, Target::ZeroGauss) if c == 1.0 => {
                zero_k_trajectory(problem.initial, problem.t_span, problem.step)
            }
            (amb, target) => Err(Error::Usage(format!(
                "no closed form for ambient {amb} with target {target:?}; closed forms exist for nil3 with H = 0 and e2:1 with K0"
            ))),
        },
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `path`, or to `fallback` when no path is given.
fn emit(
    path: Option<&Path>,
    fallback: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<()> {
    let stdout_err = |source| Error::Io {
        path: "<stdout>".into(),
        source,
    };
    match path {
        Some(p) => {
            let io = |source| Error::Io {
                path: p.to_path_buf(),
                source,
            };
            let mut w = create(p)?;
            body(&mut w).map_err(io)?;
            w.flush().map_err(io)
        }
        None => body(fallback).map_err(stdout_err),
    }
}

fn summary(traj: &Trajectory, log: &mut dyn Write) -> std::io::Result<()> {
    writeln!(log, "samples: {}", traj.len())?;
    writeln!(log, "max|kappa|: {:e}", traj.max_abs_kappa())?;
    if let Ok(r) = first_integral_drift(traj, FIRST_INTEGRAL_TOL) {
        writeln!(log, "first integral drift: {:e} ({})", r.measured, r.detail)?;
    }
    Ok(())
}

/// Summary goes to stdout when the data went to a file, else to stderr.
fn log_stream<'a>(spec_out: bool, out: &'a mut dyn Write, err: &'a mut dyn Write) -> &'a mut dyn Write {
    if spec_out {
        out
    } else {
        err
    }
}

pub fn cmd_integrate(command: &str, spec: &RunSpec, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let traj = trajectory(spec)?;
    let header = provenance_header(command, spec);
    emit(spec.out.as_deref(), out, |w| write_trajectory_csv(&traj, w, &header))?;
    summary(&traj, log_stream(spec.out.is_some(), out, err)).map_err(|source| Error::Io {
        path: "<stdout>".into(),
        source,
    })
}

pub fn cmd_surface(spec: &RunSpec, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let traj = trajectory(spec)?;
    let problem = traj.problem();
    let mesh = generate_mesh_decimated(&problem.ambient, &traj, (spec.s0, spec.s1), spec.ns, spec.decimate)?;
    let header = provenance_header("surface", spec);
    if let Some(p) = &spec.out {
        emit(Some(p), out, |w| write_trajectory_csv(&traj, w, &header))?;
    }
    emit(spec.mesh_out.as_deref(), out, |w| write_mesh(&mesh, w, &header))?;
    let log = log_stream(spec.mesh_out.is_some(), out, err);
    let io = |source| Error::Io {
        path: "<stdout>".into(),
        source,
    };
    summary(&traj, log).map_err(io)?;
    writeln!(log, "vertices: {}", mesh.vertices.len()).map_err(io)?;
    writeln!(log, "faces: {}", mesh.faces.len()).map_err(io)
}

/// Overrides a report's tolerance and re-evaluates it.
fn with_tolerance(mut r: VerifyReport, tol: Option<f64>) -> VerifyReport {
    if let Some(t) = tol {
        r.tolerance = t;
        r.pass = r.measured <= t;
    }
    r
}

/// Checks that work from the run-spec alone, without a trajectory.
const TRAJECTORY_FREE: &[&str] = &["constant_theta_axes", "continuous_dependence"];

/// Runs one named check; `run` is present whenever the check needs it.
fn run_check(spec: &RunSpec, name: &str, run: Option<&Trajectory>) -> Result<Vec<VerifyReport>> {
    let tol = spec.tolerance(name);
    let traj = || run.ok_or_else(|| Error::Usage(format!("{name} needs a trajectory")));
    Ok(match name {
        "curvature_bound" => vec![with_tolerance(curvature_bound(traj()?)?, tol)],
        "kappa_ode_residual" => vec![kappa_ode_residual(traj()?, tol.unwrap_or(KAPPA_RESIDUAL_TOL))?],
        "symmetry" => vec![with_tolerance(symmetry_check(traj()?)?, tol)],
        "self_intersections" => {
            let expected = spec
                .expected_crossings
                .ok_or_else(|| Error::Usage("self_intersections needs expected_crossings".into()))?;
            let mut rs = self_intersection_check(traj()?, expected);
            if let Some(t) = tol {
                rs = rs.into_iter().map(|r| with_tolerance(r, Some(t))).collect();
            }
            rs
        }
        "classify_type" => {
            let expected = spec
                .expected_type
                .as_deref()
                .ok_or_else(|| Error::Usage("classify_type needs expected_type (I or II)".into()))?;
            let found = classify_type(traj()?, tol.unwrap_or(CLASSIFY_TOL));
            let want = if expected == "I" { SolutionType::TypeI } else { SolutionType::TypeII };
            let miss = if found == want { 0.0 } else { 1.0 };
            vec![VerifyReport::new(
                "classify_type",
                miss,
                0.0,
                None,
                format!("found {found}, expected {want}"),
            )]
        }
        "first_integral" => vec![first_integral_drift(traj()?, tol.unwrap_or(FIRST_INTEGRAL_TOL))?],
        "constant_theta_axes" => {
            let amb = spec.ambient.ok_or_else(|| Error::Usage("constant_theta_axes needs an ambient".into()))?;
            let Ambient::E2tilde { c } = amb else {
                return Err(Error::Usage(format!("constant_theta_axes needs ambient e2:c, got {amb}")));
            };
            vec![with_tolerance(constant_theta_axes_check(c)?, tol)]
        }
        "continuous_dependence" => {
            let ic = spec.problem()?.initial;
            vec![continuous_dependence_check_with_step(
                ic,
                spec.t_span(),
                tol.unwrap_or(CONTINUITY_EPS),
                spec.step,
            )?]
        }
        "kappa_decay" => vec![kappa_decay_check(
            traj()?,
            spec.decay_early,
            spec.decay_late,
            tol.unwrap_or(DECAY_CAP),
        )],
        "support_relation" => {
            let res = support_relation_residual(traj()?)?;
            vec![VerifyReport::new(
                "support_relation",
                res,
                tol.unwrap_or(SUPPORT_RELATION_TOL),
                None,
                "max |kappa + xi/(1+|gamma|^2)|",
            )]
        }
        other => return Err(Error::Usage(format!("unknown check {other:?}"))),
    })
}

#[derive(Serialize)]
struct ReportFile<'a> {
    spec: String,
    pass: bool,
    reports: &'a [VerifyReport],
}

pub fn cmd_verify(spec: &RunSpec, out: &mut dyn Write) -> std::result::Result<(), CliError> {
    if spec.checks.is_empty() {
        return Err(Error::Usage("no checks selected (checks = … or --checks)".into()).into());
    }
    let needs_run = spec.checks.iter().any(|c| !TRAJECTORY_FREE.contains(&c.as_str()));
    let traj = if needs_run { Some(trajectory(spec)?) } else { None };
    let mut reports = Vec::new();
    for name in &spec.checks {
        reports.extend(run_check(spec, name, traj.as_ref())?);
    }
    let io = |source| Error::Io {
        path: "<stdout>".into(),
        source,
    };
    for r in &reports {
        writeln!(out, "{r}").map_err(io)?;
    }
    let pass = reports.iter().all(|r| r.pass);
    if let Some(p) = &spec.report {
        let file = ReportFile {
            spec: provenance_header("verify", spec),
            pass,
            reports: &reports,
        };
        let json = serde_json::to_string_pretty(&file).map_err(|e| Error::Parse(e.to_string()))?;
        emit(Some(p), out, |w| writeln!(w, "{json}"))?;
    }
    match reports.into_iter().find(|r| !r.pass) {
        Some(r) => Err(CliError::VerifyFailed(Box::new(r))),
        None => Ok(()),
    }
}
