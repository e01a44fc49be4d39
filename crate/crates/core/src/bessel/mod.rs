//! Scalar special functions.
//!
//! Every evaluator returns an [`EvalResult`] holding the value together with
//! the first and second derivative. First derivatives come from the
//! evaluation algorithm itself; second derivatives are obtained by solving
//! the defining ODE for `u''`, so they cost no extra special-function call.
//!
//! Only real, non-negative orders are supported.

mod cylindrical;
mod legendre;
mod spherical;
mod zeros;

pub use cylindrical::{bessel_j, bessel_y};
pub use legendre::assoc_legendre;
pub use spherical::{spherical_j, spherical_y};
pub use zeros::bessel_zeros;

use crate::error::{domain, Result};
use serde::{Deserialize, Serialize};

/// Real order `ν ≥ 0` of a Bessel-type function.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(domain(format!("order must be finite and non-negative, got {nu}")));
        }
        Ok(Order(nu))
    }

    #[inline]
    pub fn nu(self) -> f64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0.fract() == 0.0
    }
}

impl TryFrom<f64> for Order {
    type Error = crate::Error;
    fn try_from(nu: f64) -> Result<Self> {
        Order::new(nu)
    }
}

impl From<Order> for f64 {
    fn from(o: Order) -> f64 {
        o.0
    }
}

/// Degree `l` and order `m` of an associated Legendre function, `0 ≤ m ≤ l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LegendreIndex {
    degree: u32,
    order: u32,
}

impl LegendreIndex {
    pub fn new(degree: u32, order: u32) -> Result<Self> {
        if order > degree {
            return Err(domain(format!("Legendre order m={order} exceeds degree l={degree}")));
        }
        Ok(LegendreIndex { degree, order })
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn order(self) -> u32 {
        self.order
    }

    /// `l(l+1)`.
    pub fn eigenvalue(self) -> f64 {
        let l = self.degree as f64;
        l * (l + 1.0)
    }
}

/// Value with first and second derivative with respect to the argument.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub first_derivative: f64,
    pub second_derivative: f64,
}

impl EvalResult {
    pub fn new(value: f64, first_derivative: f64, second_derivative: f64) -> Self {
        EvalResult { value, first_derivative, second_derivative }
    }
}

pub(crate) fn check_arg(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() {
        return Err(domain(format!("{what}: argument must be finite, got {x}")));
    }
    Ok(())
}
