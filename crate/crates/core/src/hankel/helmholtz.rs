//! Separable Helmholtz problems `(Σ_j 𝒟_{ν_j; r_j} + c) u = rhs`.

use super::NDPlan;
use crate::error::{Error, Result};
use crate::operators::{apply_axis_numeric, AxisOperator};
use crate::tensor::{FactorIndex, Family, SampledField, TensorGrid};
use ndarray::{ArrayD, Dimension};
use serde::Serialize;

/// Denominators smaller than this (relative to `|c| + Σk²`) are resonant.
const RESONANCE_TOL: f64 = 1e-12;

/// Solves in transform space, `û = r̂hs / (c − Σ_j k_j²)`, and maps back.
pub fn solve_helmholtz_separable(plan: &NDPlan, rhs: &SampledField, c: f64) -> Result<SampledField> {
    if !c.is_finite() {
        return Err(Error::Config(format!("c must be finite, got {c}")));
    }
    let spectrum = plan.forward_nd(rhs)?;
    let freq = spectrum.grid().clone();
    let mut values = spectrum.into_values();
    for (idx, v) in values.indexed_iter_mut() {
        let k = freq.point(idx.slice());
        let k2: f64 = k.iter().map(|k| k * k).sum();
        let denominator = c - k2;
        if denominator.abs() <= RESONANCE_TOL * (c.abs() + k2) {
            return Err(Error::Resonance { frequencies: k, denominator });
        }
        *v /= denominator;
    }
    plan.inverse_nd(&SampledField::new(freq, values)?)
}

/// Finite-difference residual of a Helmholtz solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HelmholtzResidual {
    /// `max |(Σ𝒟 + c)u − rhs|` over interior points of the check grid.
    pub max_abs: f64,
    /// `max |rhs|` over the same points.
    pub rhs_max_abs: f64,
    pub relative: f64,
}

/// Interpolates `solution` and `rhs` onto the uniform `check_grid`
/// (spacing `step` on every axis), applies the operators by finite
/// differences and compares, skipping the end points of every axis.
pub fn helmholtz_residual(
    plan: &NDPlan,
    rhs: &SampledField,
    c: f64,
    solution: &SampledField,
    check_grid: &TensorGrid,
    step: f64,
) -> Result<HelmholtzResidual> {
    let u = plan.synthesize_on(&plan.forward_nd(solution)?, check_grid)?;
    let f = plan.synthesize_on(&plan.forward_nd(rhs)?, check_grid)?;
    let mut lhs: ArrayD<f64> = u.values() * c;
    for (axis, p) in plan.axis_plans().iter().enumerate() {
        let op = AxisOperator::new(axis, Family::BesselFirst, FactorIndex::Order(p.order()))?;
        lhs += apply_axis_numeric(&op, &u, step)?.field().values();
    }
    let shape = check_grid.shape();
    let interior = |idx: &[usize]| idx.iter().zip(&shape).all(|(&i, &n)| i > 0 && i + 1 < n);
    let mut max_abs = 0.0_f64;
    let mut rhs_max_abs = 0.0_f64;
    for (idx, l) in lhs.indexed_iter() {
        if interior(idx.slice()) {
            let r = f.values()[&idx];
            max_abs = max_abs.max((l - r).abs());
            rhs_max_abs = rhs_max_abs.max(r.abs());
        }
    }
    let relative = if max_abs == 0.0 { 0.0 } else { max_abs / rhs_max_abs };
    Ok(HelmholtzResidual { max_abs, rhs_max_abs, relative })
}
