//! Finite-difference application of an axis operator to sampled data.

use super::AxisOperator;
use crate::error::{Error, Result};
use crate::tensor::SampledField;
use ndarray::{ArrayD, Axis, Dimension, Zip};

/// Relative deviation of grid spacing from `step` that is still accepted.
const SPACING_TOL: f64 = 1e-9;

/// Result of [`apply_axis_numeric`]: the operator samples plus which
/// positions along the operator axis used one-sided stencils.
#[derive(Debug, Clone, PartialEq)]
pub struct StencilField {
    field: SampledField,
    axis: usize,
}

impl StencilField {
    pub fn field(&self) -> &SampledField {
        &self.field
    }

    pub fn into_field(self) -> SampledField {
        self.field
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    /// True for the first and last position along the operator axis.
    pub fn is_boundary(&self, index: &[usize]) -> bool {
        let i = index[self.axis];
        i == 0 || i + 1 == self.field.grid().axis(self.axis).len()
    }

    /// Largest `|self − reference|` over points not flagged as boundary.
    pub fn interior_max_abs_diff(&self, reference: &ArrayD<f64>) -> Result<f64> {
        if reference.shape() != self.field.values().shape() {
            return Err(Error::GridMismatch(format!(
                "reference shape {:?} does not match {:?}",
                reference.shape(),
                self.field.values().shape()
            )));
        }
        Ok(self
            .field
            .values()
            .indexed_iter()
            .filter(|(idx, _)| !self.is_boundary(idx.slice()))
            .map(|(idx, v)| (v - reference[&idx]).abs())
            .fold(0.0, f64::max))
    }
}

/// Second-order finite-difference application of `op` along its axis.
///
/// Interior points use central differences; the end points use one-sided
/// second-order stencils (three-point for `u''` when the axis is shorter
/// than four points) and are flagged in the result.
pub fn apply_axis_numeric(op: &AxisOperator, field: &SampledField, step: f64) -> Result<StencilField> {
    let axis = op.axis();
    if axis >= field.ndim() {
        return Err(Error::LengthMismatch { expected: field.ndim(), found: axis + 1 });
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::Config(format!("step must be positive, got {step}")));
    }
    let coords = field.grid().axis(axis);
    let n = coords.len();
    if n < 3 {
        return Err(Error::GridMismatch(format!("axis {axis} needs at least 3 points, has {n}")));
    }
    for w in coords.windows(2) {
        let deviation = ((w[1] - w[0]) - step).abs() / step;
        if deviation > SPACING_TOL {
            return Err(Error::NonUniformGrid { axis, step, deviation });
        }
    }
    for &x in coords {
        op.check_interior(x)?;
    }

    let h = step;
    let h2 = h * h;
    let mut out = ArrayD::zeros(field.values().raw_dim());
    Zip::from(out.lanes_mut(Axis(axis))).and(field.values().lanes(Axis(axis))).for_each(|mut dst, u| {
        for i in 0..n {
            let (du, d2u) = if i == 0 {
                let du = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
                (du, forward_second(&u, 0, 1, n, h2))
            } else if i + 1 == n {
                let du = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
                (du, forward_second(&u, n - 1, -1, n, h2))
            } else {
                ((u[i + 1] - u[i - 1]) / (2.0 * h), (u[i + 1] - 2.0 * u[i] + u[i - 1]) / h2)
            };
            dst[i] = op.apply_pointwise(coords[i], u[i], du, d2u);
        }
    });
    Ok(StencilField { field: SampledField::new(field.grid().clone(), out)?, axis })
}

/// One-sided `u''` at `start`, stepping in direction `dir`.
fn forward_second(u: &ndarray::ArrayView1<f64>, start: usize, dir: isize, n: usize, h2: f64) -> f64 {
    let at = |k: isize| u[(start as isize + dir * k) as usize];
    if n >= 4 {
        (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / h2
    } else {
        (at(0) - 2.0 * at(1) + at(2)) / h2
    }
}
