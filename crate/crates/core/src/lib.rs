//! Vertically invariant surfaces with prescribed curvature in three-dimensional
//! semidirect products `R² ⋊_A R`.
//!
//! A surface invariant under the flow of `∂z` is determined by a planar curve
//! `γ(t) = (x(t), y(t))` with tangent angle `θ(t)`. Prescribing the mean
//! curvature (or zero Gaussian curvature) turns into a first-order system for
//! `(x, y, θ)`, integrated by [`cmc_ode`], with closed-form solutions in
//! [`closedform`] and mesh export in [`surfacegen`].

pub mod closedform;
pub mod cmc_ode;
pub mod error;
pub mod fundforms;
pub mod geomverify;
pub mod liegroup;
pub mod numfmt;
pub mod surfacegen;

pub use error::{Error, Result};
pub use fundforms::CurveState;
pub use liegroup::{Ambient, GroupMatrix};
pub use cmc_ode::{integrate, OdeProblem, Sample, Target, Trajectory};
