//! Numerical checks of transform identities: the derivative property,
//! truncated orthogonality integrals and the discrete involution.

use super::{involution_defect, HankelPlan};
use crate::bessel::Order;
use crate::error::{domain, Error, Result};
use crate::quadrature::CompositeRule;
use crate::tensor::{check_len, eval_scalar, FactorIndex, Family};
use serde::Serialize;
use std::f64::consts::PI;

/// Largest accepted `|f(r_N)|·r_N²` before the derivative check warns that
/// boundary terms may not vanish.
pub const TAIL_LIMIT: f64 = 1e-12;

/// Fraction of the largest frequency treated as resolved.
const RESOLVED_FRACTION: f64 = 0.5;

const GAUSS_POINTS: usize = 8;

/// Outcome of [`verify_derivative_property`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeReport {
    /// `max |𝒦[𝒟f] + k²𝒦[f]| / max |k²𝒦[f]|` over resolved modes.
    pub max_relative_error: f64,
    pub resolved_modes: usize,
    pub k_cut: f64,
    /// `|f(r_N)|·r_N²` at the last sample.
    pub tail: f64,
    pub tail_warning: bool,
}

/// Compares `𝒦_ν[𝒟_ν f]` with `−k² 𝒦_ν[f]` on modes with
/// `k_m ≤ min(k_cut, 0.5·k_max)`.
///
/// The error is normwise over the resolved band so that modes where the
/// spectrum has decayed to rounding level do not dominate.
pub fn verify_derivative_property(
    plan: &HankelPlan,
    samples: &[f64],
    operator_samples: &[f64],
    k_cut: Option<f64>,
) -> Result<DerivativeReport> {
    check_len(plan.n_points(), samples.len())?;
    check_len(plan.n_points(), operator_samples.len())?;
    let cut = k_cut.unwrap_or(f64::INFINITY).min(RESOLVED_FRACTION * plan.max_frequency());
    let lhs = plan.forward(operator_samples)?;
    let base = plan.forward(samples)?;
    let mut diff = 0.0_f64;
    let mut scale = 0.0_f64;
    let mut resolved_modes = 0;
    for ((&k, l), b) in plan.frequency_points().iter().zip(&lhs).zip(&base) {
        if k > cut {
            break;
        }
        let rhs = -k * k * b;
        diff = diff.max((l - rhs).abs());
        scale = scale.max(rhs.abs());
        resolved_modes += 1;
    }
    let max_relative_error = if diff == 0.0 { 0.0 } else { diff / scale };
    let r_last = *plan.sample_points().last().expect("plan has points");
    let tail = samples.last().expect("plan has points").abs() * r_last * r_last;
    let tail_warning = tail > TAIL_LIMIT;
    if tail_warning {
        log::warn!("profile tail {tail:e} at r = {r_last}; boundary terms may not vanish");
    }
    Ok(DerivativeReport { max_relative_error, resolved_modes, k_cut: cut, tail, tail_warning })
}

/// Truncated orthogonality integral and its Cesàro mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthogonalityEstimate {
    /// `∫₀^R w(x) dx` for the orthogonality integrand `w`.
    pub truncated: f64,
    /// Mean of the truncated integral over upper limits in `[R − L, R]`.
    pub cesaro: f64,
    /// Averaging window `L`: ten half-periods of the difference frequency,
    /// at most `R/2`.
    pub window: f64,
}

/// Approximates `∫₀^R x J_ν(ux) J_ν(vx) dx` (`bessel`) or
/// `∫₀^R x² j_ν(ux) j_ν(vx) dx` (`spherical`) for `u ≠ v`.
///
/// The integrand does not decay, so the truncated value oscillates; the
/// Cesàro mean over the last ten half-periods removes the leading
/// oscillation and tends to zero as `R` grows.
pub fn verify_orthogonality(
    family: Family,
    order: Order,
    u: f64,
    v: f64,
    radius: f64,
    n_quad: usize,
) -> Result<OrthogonalityEstimate> {
    let weight_power = match family {
        Family::BesselFirst => 1,
        Family::SphericalFirst => 2,
        other => return Err(Error::Config(format!("orthogonality is checked for bessel and spherical, not {other}"))),
    };
    for (name, val) in [("u", u), ("v", v), ("radius", radius)] {
        if !(val.is_finite() && val > 0.0) {
            return Err(domain(format!("{name} must be positive, got {val}")));
        }
    }
    if u == v {
        return Err(domain("u and v must differ; the diagonal is a delta"));
    }
    if n_quad < 1000 {
        return Err(Error::Config(format!("n_quad must be at least 1000, got {n_quad}")));
    }

    let index = FactorIndex::Order(order);
    let integrand = |x: f64| -> f64 {
        let a = eval_scalar(family, index, u * x).map(|e| e.value).unwrap_or(f64::NAN);
        let b = eval_scalar(family, index, v * x).map(|e| e.value).unwrap_or(f64::NAN);
        x.powi(weight_power) * a * b
    };

    let window = (10.0 * PI / (u - v).abs()).min(0.5 * radius);
    let split = radius - window;
    let rule = CompositeRule::new(GAUSS_POINTS);
    let total_panels = (n_quad / GAUSS_POINTS).max((radius * (u + v) / 2.0).ceil() as usize);
    let panels = |len: f64| ((total_panels as f64 * len / radius).ceil() as usize).max(1);

    let head = rule.integrate(0.0, split, panels(split), integrand);
    let tail = rule.integrate(split, radius, panels(window), integrand);
    let ramp = rule.integrate(split, radius, panels(window), |x| integrand(x) * (radius - x) / window);
    let truncated = head + tail;
    let cesaro = head + ramp;
    if !(truncated.is_finite() && cesaro.is_finite()) {
        return Err(Error::Convergence("orthogonality integrand could not be evaluated".into()));
    }
    Ok(OrthogonalityEstimate { truncated, cesaro, window })
}

/// `max |T² − I|` of the plan's kernel: the discrete orthogonality relation.
pub fn discrete_orthogonality_defect(plan: &HankelPlan) -> f64 {
    involution_defect(plan.matrix())
}

/// Decaying radial test profiles `f(r) = r^ν g(r)` with closed-form
/// `𝒟_ν f = r^ν (g'' + (2ν+1) g'/r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Profile {
    /// `g = exp(−a r²)`.
    Gaussian { a: f64 },
    /// `g = (1 + r²) exp(−r²)`.
    PolyGaussian,
    /// `g = cos(r) exp(−r²/2)`.
    CosGaussian,
}

impl Profile {
    /// The five profiles used by the verification suite.
    pub fn suite() -> [Profile; 5] {
        [
            Profile::Gaussian { a: 0.5 },
            Profile::Gaussian { a: 1.0 },
            Profile::Gaussian { a: 2.0 },
            Profile::PolyGaussian,
            Profile::CosGaussian,
        ]
    }

    pub fn name(&self) -> String {
        match self {
            Profile::Gaussian { a } => format!("gaussian(a={a})"),
            Profile::PolyGaussian => "poly-gaussian".into(),
            Profile::CosGaussian => "cos-gaussian".into(),
        }
    }

    /// `(g, g'/r, g'')`.
    fn envelope(&self, r: f64) -> (f64, f64, f64) {
        match *self {
            Profile::Gaussian { a } => {
                let e = (-a * r * r).exp();
                (e, -2.0 * a * e, (4.0 * a * a * r * r - 2.0 * a) * e)
            }
            Profile::PolyGaussian => {
                let e = (-r * r).exp();
                let r2 = r * r;
                ((1.0 + r2) * e, -2.0 * r2 * e, (4.0 * r2 * r2 - 6.0 * r2) * e)
            }
            Profile::CosGaussian => {
                let e = (-0.5 * r * r).exp();
                let (s, c) = r.sin_cos();
                let sinc = if r == 0.0 { 1.0 } else { s / r };
                (c * e, -(sinc + c) * e, (r * r * c + 2.0 * r * s - 2.0 * c) * e)
            }
        }
    }

    pub fn value(&self, nu: f64, r: f64) -> f64 {
        r.powf(nu) * self.envelope(r).0
    }

    /// `𝒟_ν f` at `r > 0`.
    pub fn operator(&self, nu: f64, r: f64) -> f64 {
        let (_, dg_over_r, d2g) = self.envelope(r);
        r.powf(nu) * (d2g + (2.0 * nu + 1.0) * dg_over_r)
    }

    /// `∫₀^∞ f(r) J_ν(kr) r dr` where a closed form is available.
    pub fn transform(&self, nu: f64, k: f64) -> Option<f64> {
        match *self {
            Profile::Gaussian { a } => Some(k.powf(nu) / (2.0 * a).powf(nu + 1.0) * (-k * k / (4.0 * a)).exp()),
            _ => None,
        }
    }
}
