//! Hessify writes surface metrics in Hessian form.
//!
//! Given an analytic nondegenerate metric `g = g_ij(y) dy^i dy^j` around a
//! point, the crate computes truncated power-series coordinates
//! `(x1, x2)` and a potential `f` with `g = (∂²f/∂x^i ∂x^j) dx^i ∘ dx^j`,
//! and verifies the identity through an independent composition route. The
//! supporting layers are useful on their own:
//!
//! - [`jet`]: dense truncated bivariate power series, the scalar type of
//!   every computation here;
//! - [`metric`]: surface metrics as jets, Levi-Civita symbols, Gauss
//!   curvature;
//! - [`eds`]: the pointwise algebra of the exterior differential system
//!   behind the solver — integral elements, the characteristic cubic,
//!   hyperbolic elements, polar spaces, Cartan characters;
//! - [`solver`]: the degree-by-degree formal solve plus verification;
//! - [`expr`]: closed-form metric components evaluated in the jet algebra;
//! - [`config`] and [`report`]: the file formats used by the `hessify`
//!   binary.
//!
//! ```
//! use hessify::metric::MetricJet;
//! use hessify::solver::{default_initial_data, solve, verify};
//!
//! let m = MetricJet::round_sphere(8);
//! let data = default_initial_data(&m, 8, None)?;
//! let chart = solve(&m, &data, 8)?;
//! assert!(verify(&m, &chart)?.max_residual <= 1e-7);
//! # Ok::<(), hessify::Error>(())
//! ```

pub mod cli;
pub mod config;
pub mod eds;
pub mod error;
pub mod expr;
pub mod jet;
pub mod linalg;
pub mod metric;
pub mod report;
pub mod solver;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book;
