//! `vertinv` command-line front-end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad arguments or input,
//! 3 singular locus reached, 4 a verifier failed.

pub mod commands;
pub mod runspec;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use vertinv::cmc_ode::Method;
use vertinv::geomverify::VerifyReport;
use vertinv::Error;

use crate::runspec::{parse_checks, parse_ic, parse_target, RunSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),

    #[error("verification failed: {0}")]
    VerifyFailed(Box<VerifyReport>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Io { .. }) => 1,
            CliError::Core(Error::Singular { .. }) => 3,
            CliError::Core(_) => 2,
            CliError::VerifyFailed(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "vertinv", version, about = "Vertically invariant CMC and flat surfaces in R^2 x_A R")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate the generating curve and write it as CSV.
    Integrate(RunArgs),
    /// Evaluate a closed-form solution (nil3 with H = 0, e2:1 with K0) as CSV.
    ClosedForm(RunArgs),
    /// Build the invariant surface and write it as an OBJ-style mesh.
    Surface {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        mesh: MeshArgs,
    },
    /// Run verifiers from a run-spec file.
    Verify(VerifyArgs),
}

/// Problem description; flags override values read from `--spec`.
#[derive(Debug, Args)]
pub struct RunArgs {
    /// Run-spec file supplying defaults.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// euclid | sol3:c | nil3 | e2:c (c >= 1, default 1) | custom:a,b,c,d
    #[arg(long)]
    pub ambient: Option<String>,
    /// Prescribed mean curvature.
    #[arg(long = "H", allow_hyphen_values = true, conflicts_with = "k0")]
    pub h: Option<f64>,
    /// Prescribe zero Gaussian curvature instead (flat e2 only).
    #[arg(long = "K0", id = "k0")]
    pub k0: bool,
    /// Initial state at t = 0 as x,y,theta (radians).
    #[arg(long, allow_hyphen_values = true)]
    pub ic: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
    /// Trajectory CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub s0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s1: Option<f64>,
    /// Vertices along the vertical direction.
    #[arg(long)]
    pub ns: Option<usize>,
    /// Use every k-th trajectory node.
    #[arg(long)]
    pub decimate: Option<usize>,
    /// Mesh path; stdout when absent.
    #[arg(long)]
    pub mesh_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run-spec file.
    pub spec: PathBuf,
    /// Comma-separated checks, replacing those in the spec.
    #[arg(long)]
    pub checks: Option<String>,
    /// JSON report path.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

impl RunArgs {
    fn resolve(&self) -> vertinv::Result<RunSpec> {
        let mut spec = match &self.spec {
            Some(p) => RunSpec::load(p)?,
            None => RunSpec::default(),
        };
        if let Some(a) = &self.ambient {
            spec.ambient = Some(a.parse()?);
        }
        if let Some(h) = self.h {
            spec.target = Some(vertinv::Target::MeanCurvature(h));
        }
        if self.k0 {
            spec.target = Some(parse_target("K0")?);
        }
        if let Some(ic) = &self.ic {
            spec.ic = Some(parse_ic(ic)?);
        }
        if let Some(t) = self.t0 {
            spec.t0 = t;
        }
        if let Some(t) = self.t1 {
            spec.t1 = t;
        }
        if let Some(h) = self.step {
            spec.step = h;
        }
        if let Some(p) = &self.out {
            spec.out = Some(p.clone());
        }
        Ok(spec)
    }
}

impl MeshArgs {
    fn apply(&self, spec: &mut RunSpec) {
        if let Some(v) = self.s0 {
            spec.s0 = v;
        }
        if let Some(v) = self.s1 {
            spec.s1 = v;
        }
        if let Some(v) = self.ns {
            spec.ns = v;
        }
        if let Some(v) = self.decimate {
            spec.decimate = v;
        }
        if let Some(p) = &self.mesh_out {
            spec.mesh_out = Some(p.clone());
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Integrate(run) => commands::cmd_integrate("integrate", &run.resolve()?, out, err)?,
        Command::ClosedForm(run) => {
            let mut spec = run.resolve()?;
            spec.method = Method::ClosedForm;
            commands::cmd_integrate("closed-form", &spec, out, err)?
        }
        Command::Surface { run, mesh } => {
            let mut spec = run.resolve()?;
            mesh.apply(&mut spec);
            commands::cmd_surface(&spec, out, err)?
        }
        Command::Verify(v) => {
            let mut spec = RunSpec::load(&v.spec)?;
            if let Some(c) = &v.checks {
                spec.checks = parse_checks(c)?;
            }
            if let Some(p) = &v.report {
                spec.report = Some(p.clone());
            }
            commands::cmd_verify(&spec, out)?
        }
    }
    Ok(())
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return e.exit_code();
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
