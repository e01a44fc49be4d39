//! Tensor-product multivariate Bessel-type functions and n-dimensional
//! Hankel transforms.
//!
//! The crate is organised bottom-up:
//!
//! - [`bessel`]: scalar `J_ν`, `Y_ν`, `j_ν`, `y_ν`, `P_l^m` with first and
//!   second derivatives, and positive zeros of `J_ν`.
//! - [`tensor`]: products `∏ F_{α_j}(k_j x_j)` evaluated at points and on
//!   tensor grids, plus the [`SampledField`](tensor::SampledField) container.
//! - [`operators`]: the radial operator `(1/x)(x u')' − (α²/x²) u`, its
//!   spherical and Legendre analogues, sums, iterates and polynomials in
//!   those operators, and finite-difference application on sampled data.
//! - [`hankel`]: quasi-discrete Hankel transform plans on Bessel-zero grids,
//!   separable n-D transforms and a separable Helmholtz solver.
//! - [`verify`]: named numerical checks aggregated into a JSON report.
//! - [`io`]: CSV/JSON serialisation of sampled fields.
//! - [`cli`]: the `hankel-nd` command line front end.
//!
//! ```
//! use hankel_nd::bessel::{bessel_j, Order};
//!
//! let j0 = bessel_j(Order::new(0.0).unwrap(), 1.0).unwrap();
//! assert!((j0.value - 0.765_197_686_557_966_6).abs() < 1e-14);
//! ```

pub mod bessel;
pub mod cli;
pub mod error;
pub mod hankel;
pub mod io;
pub mod operators;
pub mod quadrature;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
