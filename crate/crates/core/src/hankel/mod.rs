//! Discrete Hankel transforms on Bessel-zero grids.
//!
//! For order `ν`, `N` points and radius `R`, with `j_1 < … < j_{N+1}` the
//! positive zeros of `J_ν` and `S = j_{N+1}`, the plan samples at
//! `r_i = j_i R / S` and returns the spectrum at `k_m = j_m / R`.
//!
//! The kernel is stored in symmetric form
//!
//! ```text
//! T_{mi} = 2 J_ν(j_m j_i / S) / (S |J_{ν+1}(j_m)| |J_{ν+1}(j_i)|)
//! ```
//!
//! and the transforms are
//!
//! ```text
//! F_m = (R²/S) |J_{ν+1}(j_m)| Σ_i T_{mi} f_i / |J_{ν+1}(j_i)|
//! f_i = (S/R²) |J_{ν+1}(j_i)| Σ_m T_{im} F_m / |J_{ν+1}(j_m)|
//! ```
//!
//! so a forward/inverse round trip multiplies by `T²`. The raw kernel is
//! only involutory up to a truncation defect that shrinks with `N`
//! (about `1e-8` at `N = 32`), so the plan replaces it by its nearest
//! involution: Newton–Schulz iteration for the matrix sign function brings
//! `‖T² − I‖` to rounding level while moving each entry by about the
//! original defect. Both defects are kept on the plan.

mod checks;
mod helmholtz;

pub use checks::{
    discrete_orthogonality_defect, verify_derivative_property, verify_orthogonality, DerivativeReport,
    OrthogonalityEstimate, Profile, TAIL_LIMIT,
};
pub use helmholtz::{helmholtz_residual, solve_helmholtz_separable, HelmholtzResidual};

use crate::bessel::{bessel_j, bessel_zeros, Order};
use crate::error::{domain, Error, Result};
use crate::tensor::{check_len, SampledField, TensorGrid};
use ndarray::{Array1, Array2, ArrayD, ArrayView1, ArrayViewMut1, Axis, Zip};

/// Smallest accepted number of sample points.
pub const MIN_POINTS: usize = 4;

const MAX_SIGN_ITERATIONS: usize = 12;

/// Precomputed one-axis transform.
#[derive(Debug, Clone)]
pub struct HankelPlan {
    order: Order,
    radius: f64,
    zeros: Vec<f64>,
    sample_points: Vec<f64>,
    frequency_points: Vec<f64>,
    jp1_abs: Vec<f64>,
    matrix: Array2<f64>,
    raw_defect: f64,
    defect: f64,
}

/// Builds the plan for order `order` with `n_points` samples on `[0, radius]`.
pub fn build_plan(order: Order, n_points: usize, radius: f64) -> Result<HankelPlan> {
    if n_points < MIN_POINTS {
        return Err(Error::Config(format!("need at least {MIN_POINTS} points, got {n_points}")));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(domain(format!("radius must be positive, got {radius}")));
    }
    let n = n_points;
    let zeros = bessel_zeros(order, n + 1)?;
    let s = zeros[n];
    let next = Order::new(order.nu() + 1.0)?;
    let jp1_abs = zeros[..n].iter().map(|&j| bessel_j(next, j).map(|e| e.value.abs())).collect::<Result<Vec<_>>>()?;

    let mut raw = Array2::zeros((n, n));
    for m in 0..n {
        for i in m..n {
            let t = 2.0 * bessel_j(order, zeros[m] * zeros[i] / s)?.value / (s * jp1_abs[m] * jp1_abs[i]);
            raw[[m, i]] = t;
            raw[[i, m]] = t;
        }
    }
    let raw_defect = involution_defect(&raw);
    let (matrix, defect) = nearest_involution(raw);
    log::debug!("plan nu={} N={n} R={radius}: raw defect {raw_defect:e}, corrected {defect:e}", order.nu());

    Ok(HankelPlan {
        order,
        radius,
        sample_points: zeros[..n].iter().map(|j| j * radius / s).collect(),
        frequency_points: zeros[..n].iter().map(|j| j / radius).collect(),
        zeros,
        jp1_abs,
        matrix,
        raw_defect,
        defect,
    })
}

/// `max |T² − I|`.
pub(crate) fn involution_defect(t: &Array2<f64>) -> f64 {
    let sq = t.dot(t);
    sq.indexed_iter().map(|((i, j), v)| (v - if i == j { 1.0 } else { 0.0 }).abs()).fold(0.0, f64::max)
}

/// Newton–Schulz iteration `X ← X(3I − X²)/2` from a symmetric matrix
/// close to an involution. Returns the result and its defect.
fn nearest_involution(mut x: Array2<f64>) -> (Array2<f64>, f64) {
    let mut defect = involution_defect(&x);
    for _ in 0..MAX_SIGN_ITERATIONS {
        if defect < 1e-15 {
            break;
        }
        let mut step = x.dot(&x) * -0.5;
        step.diag_mut().mapv_inplace(|v| v + 1.5);
        let mut next = x.dot(&step);
        let sym = (&next + &next.t()) * 0.5;
        next.assign(&sym);
        let next_defect = involution_defect(&next);
        if next_defect >= defect {
            break;
        }
        x = next;
        defect = next_defect;
    }
    (x, defect)
}

impl HankelPlan {
    pub fn order(&self) -> Order {
        self.order
    }

    pub fn n_points(&self) -> usize {
        self.sample_points.len()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The first `N + 1` positive zeros of `J_ν`.
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// `j_{N+1}`.
    pub fn truncation_zero(&self) -> f64 {
        self.zeros[self.n_points()]
    }

    pub fn sample_points(&self) -> &[f64] {
        &self.sample_points
    }

    pub fn frequency_points(&self) -> &[f64] {
        &self.frequency_points
    }

    /// Largest frequency `k_N`.
    pub fn max_frequency(&self) -> f64 {
        self.frequency_points[self.n_points() - 1]
    }

    /// `j_{N+1} / R`, the bandwidth of the plan.
    pub fn bandwidth(&self) -> f64 {
        self.truncation_zero() / self.radius
    }

    /// The symmetric kernel `T`.
    pub fn matrix(&self) -> &Array2<f64> {
        &self.matrix
    }

    /// `max |T² − I|` of the kernel before correction.
    pub fn raw_defect(&self) -> f64 {
        self.raw_defect
    }

    /// `max |T² − I|` of the stored kernel.
    pub fn defect(&self) -> f64 {
        self.defect
    }

    /// Approximates `∫₀^∞ f(r) J_ν(k r) r dr` at the frequency points.
    pub fn forward(&self, samples: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n_points(), samples.len())?;
        let mut out = Array1::zeros(self.n_points());
        self.forward_into(ArrayView1::from(samples), out.view_mut());
        Ok(out.to_vec())
    }

    /// Recovers samples at `r_i` from a spectrum at `k_m`.
    pub fn inverse(&self, spectrum: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n_points(), spectrum.len())?;
        let mut out = Array1::zeros(self.n_points());
        self.inverse_into(ArrayView1::from(spectrum), out.view_mut());
        Ok(out.to_vec())
    }

    fn forward_into(&self, f: ArrayView1<f64>, out: ArrayViewMut1<f64>) {
        let scale = self.radius * self.radius / self.truncation_zero();
        self.apply_scaled(f, out, scale);
    }

    fn inverse_into(&self, f: ArrayView1<f64>, out: ArrayViewMut1<f64>) {
        let scale = self.truncation_zero() / (self.radius * self.radius);
        self.apply_scaled(f, out, scale);
    }

    fn apply_scaled(&self, f: ArrayView1<f64>, mut out: ArrayViewMut1<f64>, scale: f64) {
        let w = Zip::from(&f).and(&self.jp1_abs[..]).map_collect(|v, j| v / j);
        let t = self.matrix.dot(&w);
        Zip::from(&mut out).and(&t).and(&self.jp1_abs[..]).for_each(|o, t, j| *o = scale * j * t);
    }

    /// Band-limited interpolant of the samples behind `spectrum`, evaluated
    /// at arbitrary radii `r ∈ [0, R]`.
    pub fn synthesize(&self, spectrum: &[f64], points: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n_points(), spectrum.len())?;
        let b = self.synthesis_matrix(points)?;
        Ok(b.dot(&ArrayView1::from(spectrum)).to_vec())
    }

    /// Rows map a spectrum to values at `points`:
    /// `B_{pm} = 2 J_ν(k_m x_p) / (R² J_{ν+1}(j_m)²)`.
    pub fn synthesis_matrix(&self, points: &[f64]) -> Result<Array2<f64>> {
        if let Some(bad) = points.iter().find(|x| !(x.is_finite() && **x >= 0.0 && **x <= self.radius)) {
            return Err(domain(format!("synthesis point {bad} outside [0, {}]", self.radius)));
        }
        let r2 = self.radius * self.radius;
        let mut b = Array2::zeros((points.len(), self.n_points()));
        for (p, &x) in points.iter().enumerate() {
            for (m, (&k, &j)) in self.frequency_points.iter().zip(&self.jp1_abs).enumerate() {
                b[[p, m]] = 2.0 * bessel_j(self.order, k * x)?.value / (r2 * j * j);
            }
        }
        Ok(b)
    }
}

/// Separable transform: one plan per axis.
#[derive(Debug, Clone)]
pub struct NDPlan {
    axis_plans: Vec<HankelPlan>,
}

impl NDPlan {
    pub fn new(axis_plans: Vec<HankelPlan>) -> Result<Self> {
        if axis_plans.is_empty() {
            return Err(Error::Config("an n-D plan needs at least one axis".into()));
        }
        Ok(NDPlan { axis_plans })
    }

    /// One plan per order, all with the same `N` and `R`.
    pub fn build(orders: &[Order], n_points: usize, radius: f64) -> Result<Self> {
        Self::new(orders.iter().map(|&o| build_plan(o, n_points, radius)).collect::<Result<_>>()?)
    }

    pub fn ndim(&self) -> usize {
        self.axis_plans.len()
    }

    pub fn axis_plans(&self) -> &[HankelPlan] {
        &self.axis_plans
    }

    pub fn plan(&self, axis: usize) -> &HankelPlan {
        &self.axis_plans[axis]
    }

    /// Tensor grid of sample points.
    pub fn sample_grid(&self) -> Result<TensorGrid> {
        TensorGrid::new(
            self.axis_plans.iter().map(|p| p.sample_points.clone()).collect(),
            self.axis_plans.iter().map(|p| p.radius).collect(),
        )
    }

    /// Tensor grid of frequency points, with the bandwidth as radius.
    pub fn frequency_grid(&self) -> Result<TensorGrid> {
        TensorGrid::new(
            self.axis_plans.iter().map(|p| p.frequency_points.clone()).collect(),
            self.axis_plans.iter().map(|p| p.bandwidth()).collect(),
        )
    }

    pub fn forward_nd(&self, field: &SampledField) -> Result<SampledField> {
        let order: Vec<usize> = (0..self.ndim()).collect();
        self.forward_nd_in_order(field, &order)
    }

    /// [`NDPlan::forward_nd`] processing the axes in the given sequence.
    pub fn forward_nd_in_order(&self, field: &SampledField, axes: &[usize]) -> Result<SampledField> {
        self.check_grid(field.grid(), &self.sample_grid()?, "sample")?;
        let values = self.transform_axes(field.values().clone(), axes, HankelPlan::forward_into)?;
        SampledField::new(self.frequency_grid()?, values)
    }

    pub fn inverse_nd(&self, spectrum: &SampledField) -> Result<SampledField> {
        self.check_grid(spectrum.grid(), &self.frequency_grid()?, "frequency")?;
        let axes: Vec<usize> = (0..self.ndim()).collect();
        let values = self.transform_axes(spectrum.values().clone(), &axes, HankelPlan::inverse_into)?;
        SampledField::new(self.sample_grid()?, values)
    }

    /// Evaluates the band-limited interpolant of `spectrum` on `grid`.
    pub fn synthesize_on(&self, spectrum: &SampledField, grid: &TensorGrid) -> Result<SampledField> {
        self.check_grid(spectrum.grid(), &self.frequency_grid()?, "frequency")?;
        check_len(self.ndim(), grid.ndim())?;
        let mut values = spectrum.values().clone();
        for (axis, plan) in self.axis_plans.iter().enumerate() {
            let b = plan.synthesis_matrix(grid.axis(axis))?;
            let mut shape = values.shape().to_vec();
            shape[axis] = grid.axis(axis).len();
            let mut out = ArrayD::zeros(shape);
            Zip::from(out.lanes_mut(Axis(axis)))
                .and(values.lanes(Axis(axis)))
                .for_each(|mut o, v| o.assign(&b.dot(&v)));
            values = out;
        }
        SampledField::new(grid.clone(), values)
    }

    fn transform_axes(
        &self,
        mut values: ArrayD<f64>,
        axes: &[usize],
        apply: fn(&HankelPlan, ArrayView1<f64>, ArrayViewMut1<f64>),
    ) -> Result<ArrayD<f64>> {
        check_len(self.ndim(), axes.len())?;
        let mut seen = vec![false; self.ndim()];
        for &a in axes {
            if a >= self.ndim() || std::mem::replace(&mut seen[a], true) {
                return Err(Error::Config(format!("axis order {axes:?} is not a permutation")));
            }
        }
        for &axis in axes {
            let plan = &self.axis_plans[axis];
            let mut out = ArrayD::zeros(values.raw_dim());
            Zip::from(out.lanes_mut(Axis(axis))).and(values.lanes(Axis(axis))).for_each(|o, v| apply(plan, v, o));
            values = out;
        }
        Ok(values)
    }

    fn check_grid(&self, found: &TensorGrid, expected: &TensorGrid, what: &str) -> Result<()> {
        if !found.matches(expected, 1e-12) {
            return Err(Error::GridMismatch(format!(
                "field is not sampled on the plan's {what} grid (shape {:?}, expected {:?})",
                found.shape(),
                expected.shape()
            )));
        }
        Ok(())
    }
}
