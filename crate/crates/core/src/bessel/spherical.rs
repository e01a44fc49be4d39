//! Spherical Bessel functions `j_ν(x) = √(π/2x) J_{ν+1/2}(x)` and
//! `y_ν(x) = √(π/2x) Y_{ν+1/2}(x)`.

use super::cylindrical::{jy, recip_gamma_one_plus};
use super::{check_arg, EvalResult, Order};
use crate::error::{domain, Error, Result};
use std::f64::consts::PI;

pub fn spherical_j(order: Order, x: f64) -> Result<EvalResult> {
    check_arg(x, "spherical_j")?;
    if x < 0.0 {
        return Err(domain(format!("spherical_j: x must be non-negative, got {x}")));
    }
    let nu = order.nu();
    if x == 0.0 {
        return Ok(at_origin(nu));
    }
    if x < 1e-6 {
        return Ok(small(nu, x));
    }
    let r = jy(nu + 0.5, x)?;
    Ok(from_cylindrical(nu, x, r.j, r.jp))
}

pub fn spherical_y(order: Order, x: f64) -> Result<EvalResult> {
    check_arg(x, "spherical_y")?;
    if x <= 0.0 {
        return Err(domain(format!("spherical_y: x must be positive, got {x}")));
    }
    let nu = order.nu();
    let r = jy(nu + 0.5, x)?;
    if !r.y.is_finite() {
        return Err(Error::Overflow(format!("y_{nu}({x}) overflows")));
    }
    Ok(from_cylindrical(nu, x, r.y, r.yp))
}

fn from_cylindrical(nu: f64, x: f64, c: f64, cp: f64) -> EvalResult {
    let s = (0.5 * PI / x).sqrt();
    let value = s * c;
    let first = s * (cp - c / (2.0 * x));
    EvalResult::new(value, first, second_derivative(nu, x, value, first))
}

#[inline]
fn second_derivative(nu: f64, x: f64, u: f64, up: f64) -> f64 {
    -2.0 * up / x - (1.0 - nu * (nu + 1.0) / (x * x)) * u
}

fn at_origin(nu: f64) -> EvalResult {
    let value = if nu == 0.0 { 1.0 } else { 0.0 };
    let first = if nu == 0.0 || nu > 1.0 {
        0.0
    } else if nu == 1.0 {
        1.0 / 3.0
    } else {
        f64::INFINITY
    };
    let second = if nu == 0.0 {
        -1.0 / 3.0
    } else if nu == 1.0 || nu > 2.0 {
        0.0
    } else if nu == 2.0 {
        2.0 / 15.0
    } else if nu < 1.0 {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    };
    EvalResult::new(value, first, second)
}

/// `j_ν(x) ≈ c x^ν (1 − x²/(2(2ν+3)))` with `c = √π / (2^{ν+1} Γ(ν+3/2))`.
fn small(nu: f64, x: f64) -> EvalResult {
    let c = PI.sqrt() / 2f64.powf(nu + 1.0) * recip_gamma_one_plus(nu + 0.5);
    let lead = c * x.powf(nu);
    let t = x * x / (2.0 * (2.0 * nu + 3.0));
    let value = lead * (1.0 - t);
    let first = lead / x * (nu - (nu + 2.0) * t);
    EvalResult::new(value, first, second_derivative(nu, x, value, first))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn ord(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(spherical_j(ord(0.0), 0.0).unwrap().value, 1.0);
        assert!(spherical_j(ord(0.0), PI).unwrap().value.abs() < 1e-14);
        let j1 = spherical_j(ord(1.0), PI).unwrap().value;
        assert!((j1 - 1.0 / PI).abs() < 1e-15);
        assert!(spherical_y(ord(0.0), FRAC_PI_2).unwrap().value.abs() < 1e-14);
        assert!((spherical_y(ord(0.0), PI).unwrap().value - 1.0 / PI).abs() < 1e-15);
        let y1 = spherical_y(ord(1.0), FRAC_PI_2).unwrap().value;
        assert!((y1 + 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn small_branch_agrees() {
        for &nu in &[0.0, 1.0, 2.0, 0.7] {
            let x = 1.5e-6;
            let a = small(nu, x);
            let r = jy(nu + 0.5, x).unwrap();
            let b = from_cylindrical(nu, x, r.j, r.jp);
            assert!(((a.value - b.value) / b.value).abs() < 1e-12, "nu={nu}");
        }
    }

    #[test]
    fn derivative_closed_form() {
        for &x in &[0.2, 1.0, 3.0, 20.0, 80.0] {
            let d = spherical_j(ord(0.0), x).unwrap();
            let exact = x.cos() / x - x.sin() / (x * x);
            assert!((d.first_derivative - exact).abs() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(spherical_j(ord(0.0), -0.1).is_err());
        assert!(spherical_y(ord(0.0), 0.0).is_err());
    }
}
