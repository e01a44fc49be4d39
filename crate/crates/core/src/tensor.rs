//! Tensor-product functions `∏_j F_{α_j}(k_j x_j)` and sampled fields.
//!
//! Sampled values are stored row-major with axis 0 varying slowest, which is
//! also the row order of the CSV serialisation.

use crate::bessel::{assoc_legendre, bessel_j, bessel_y, spherical_j, spherical_y, EvalResult, LegendreIndex, Order};
use crate::error::{domain, Error, Result};
use ndarray::{ArrayD, Dimension, IxDyn};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The scalar family every factor of a product belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    BesselFirst,
    BesselSecond,
    SphericalFirst,
    SphericalSecond,
    Legendre,
}

impl Family {
    /// Cylindrical or spherical Bessel family (as opposed to Legendre).
    pub fn is_radial(self) -> bool {
        !matches!(self, Family::Legendre)
    }

    pub fn is_spherical(self) -> bool {
        matches!(self, Family::SphericalFirst | Family::SphericalSecond)
    }

    /// Short name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Family::BesselFirst => "bessel",
            Family::BesselSecond => "bessel2",
            Family::SphericalFirst => "spherical",
            Family::SphericalSecond => "spherical2",
            Family::Legendre => "legendre",
        }
    }

    fn check_domain(self, x: f64) -> Result<()> {
        match self {
            Family::BesselFirst | Family::SphericalFirst if x < 0.0 => {
                Err(domain(format!("{}: argument {x} is negative", self.cli_name())))
            }
            Family::BesselSecond | Family::SphericalSecond if x <= 0.0 => {
                Err(domain(format!("{}: argument {x} is not positive", self.cli_name())))
            }
            Family::Legendre if x.abs() > 1.0 => Err(domain(format!("legendre: argument {x} outside [-1, 1]"))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bessel" => Ok(Family::BesselFirst),
            "bessel2" => Ok(Family::BesselSecond),
            "spherical" => Ok(Family::SphericalFirst),
            "spherical2" => Ok(Family::SphericalSecond),
            "legendre" => Ok(Family::Legendre),
            other => Err(Error::Config(format!("unknown family '{other}'"))),
        }
    }
}

/// Per-axis index: an order for the Bessel families, `(l, m)` for Legendre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorIndex {
    Order(Order),
    Legendre(LegendreIndex),
}

impl FactorIndex {
    /// The order `α` that appears in `α²/x²` (Bessel) or `α(α+1)/x²`
    /// (spherical), or `m` for Legendre.
    pub fn alpha(self) -> f64 {
        match self {
            FactorIndex::Order(o) => o.nu(),
            FactorIndex::Legendre(i) => i.order() as f64,
        }
    }
}

/// Scalar evaluation of one factor.
pub fn eval_scalar(family: Family, index: FactorIndex, x: f64) -> Result<EvalResult> {
    family.check_domain(x)?;
    match (family, index) {
        (Family::BesselFirst, FactorIndex::Order(o)) => bessel_j(o, x),
        (Family::BesselSecond, FactorIndex::Order(o)) => bessel_y(o, x),
        (Family::SphericalFirst, FactorIndex::Order(o)) => spherical_j(o, x),
        (Family::SphericalSecond, FactorIndex::Order(o)) => spherical_y(o, x),
        (Family::Legendre, FactorIndex::Legendre(i)) => assoc_legendre(i, x),
        (f, i) => Err(Error::Config(format!("index {i:?} does not belong to family {f}"))),
    }
}

/// Orders `(α_1, …, α_n)` of a product function, all of one family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiOrder {
    family: Family,
    indices: Vec<FactorIndex>,
}

impl MultiOrder {
    /// Bessel-type product with the given real orders.
    pub fn new(family: Family, orders: &[f64]) -> Result<Self> {
        if family == Family::Legendre {
            return Err(Error::Config("use MultiOrder::legendre for the Legendre family".into()));
        }
        let indices = orders.iter().map(|&nu| Order::new(nu).map(FactorIndex::Order)).collect::<Result<Vec<_>>>()?;
        Self::from_indices(family, indices)
    }

    pub fn bessel(orders: &[f64]) -> Result<Self> {
        Self::new(Family::BesselFirst, orders)
    }

    pub fn legendre(indices: &[(u32, u32)]) -> Result<Self> {
        let indices = indices
            .iter()
            .map(|&(l, m)| LegendreIndex::new(l, m).map(FactorIndex::Legendre))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(Family::Legendre, indices)
    }

    /// Rejects empty lists and indices that do not match the family.
    pub fn from_indices(family: Family, indices: Vec<FactorIndex>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::Config("a multi-order needs at least one axis".into()));
        }
        let ok = indices.iter().all(|i| match i {
            FactorIndex::Order(_) => family.is_radial(),
            FactorIndex::Legendre(_) => !family.is_radial(),
        });
        if !ok {
            return Err(Error::Config(format!("mixed index kinds for family {family}")));
        }
        Ok(MultiOrder { family, indices })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[FactorIndex] {
        &self.indices
    }

    pub fn index(&self, axis: usize) -> FactorIndex {
        self.indices[axis]
    }

    /// Order on `axis` for the Bessel families.
    pub fn order(&self, axis: usize) -> Option<Order> {
        match self.indices.get(axis) {
            Some(FactorIndex::Order(o)) => Some(*o),
            _ => None,
        }
    }

    /// Reorders axes: axis `i` of the result is axis `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_len(self.len(), perm.len())?;
        Self::from_indices(self.family, perm.iter().map(|&p| self.indices[p]).collect())
    }

    pub fn eval_factor(&self, axis: usize, x: f64) -> Result<EvalResult> {
        eval_scalar(self.family, self.indices[axis], x)
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::LengthMismatch { expected, found });
    }
    Ok(())
}

/// Validated per-axis scale factors; `None` means all ones.
pub(crate) fn resolve_scale(n: usize, scale: Option<&[f64]>) -> Result<Vec<f64>> {
    match scale {
        None => Ok(vec![1.0; n]),
        Some(k) => {
            check_len(n, k.len())?;
            if let Some(bad) = k.iter().find(|k| !(k.is_finite() && **k > 0.0)) {
                return Err(domain(format!("scale factors must be positive and finite, got {bad}")));
            }
            Ok(k.to_vec())
        }
    }
}

/// `∏_j F_{α_j}(k_j x_j)`.
pub fn eval_product(order: &MultiOrder, point: &[f64], scale: Option<&[f64]>) -> Result<f64> {
    check_len(order.len(), point.len())?;
    let k = resolve_scale(order.len(), scale)?;
    let mut acc = 1.0;
    for (axis, (&x, &k)) in point.iter().zip(&k).enumerate() {
        acc *= order.eval_factor(axis, k * x)?.value;
    }
    Ok(acc)
}

/// The product sampled on a tensor grid, built as an outer product of the
/// per-axis factor vectors.
pub fn eval_on_grid(order: &MultiOrder, grid: &TensorGrid, scale: Option<&[f64]>) -> Result<SampledField> {
    check_len(order.len(), grid.ndim())?;
    let k = resolve_scale(order.len(), scale)?;
    let factors = grid
        .axes()
        .iter()
        .enumerate()
        .map(|(axis, points)| points.iter().map(|&x| order.eval_factor(axis, k[axis] * x).map(|r| r.value)).collect())
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let values = outer_product(&factors);
    SampledField::new(grid.clone(), values)
}

/// Row-major outer product of per-axis vectors.
pub(crate) fn outer_product(factors: &[Vec<f64>]) -> ArrayD<f64> {
    let shape: Vec<usize> = factors.iter().map(Vec::len).collect();
    let mut flat = vec![1.0];
    for v in factors {
        flat = flat.iter().flat_map(|&a| v.iter().map(move |&b| a * b)).collect();
    }
    ArrayD::from_shape_vec(IxDyn(&shape), flat).expect("shape matches product of axis lengths")
}

/// Strictly increasing sample coordinates on each axis plus a domain radius
/// per axis with `|x| ≤ R_j` for every sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorGrid {
    axes: Vec<Vec<f64>>,
    radii: Vec<f64>,
}

impl TensorGrid {
    pub fn new(axes: Vec<Vec<f64>>, radii: Vec<f64>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::GridMismatch("grid needs at least one axis".into()));
        }
        check_len(axes.len(), radii.len())?;
        for (j, (axis, &r)) in axes.iter().zip(&radii).enumerate() {
            if axis.is_empty() {
                return Err(Error::GridMismatch(format!("axis {j} is empty")));
            }
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::GridMismatch(format!("axis {j}: radius {r} must be positive")));
            }
            if axis.iter().any(|x| !x.is_finite() || x.abs() > r) {
                return Err(Error::GridMismatch(format!("axis {j}: sample outside [-{r}, {r}]")));
            }
            if axis.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::GridMismatch(format!("axis {j} is not strictly increasing")));
            }
        }
        Ok(TensorGrid { axes, radii })
    }

    /// Grid whose radii are the largest absolute sample on each axis.
    pub fn from_axes(axes: Vec<Vec<f64>>) -> Result<Self> {
        let radii = axes.iter().map(|a| a.iter().fold(0.0_f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE)).collect();
        Self::new(axes, radii)
    }

    /// `m` equally spaced points `start, start + h, …` on every axis.
    pub fn uniform(starts: &[f64], step: f64, counts: &[usize]) -> Result<Self> {
        check_len(starts.len(), counts.len())?;
        let axes = starts.iter().zip(counts).map(|(&s, &m)| (0..m).map(|i| s + step * i as f64).collect()).collect();
        Self::from_axes(axes)
    }

    pub fn ndim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Vec<f64>] {
        &self.axes
    }

    pub fn axis(&self, j: usize) -> &[f64] {
        &self.axes[j]
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinates of the grid point at a multi-index.
    pub fn point(&self, index: &[usize]) -> Vec<f64> {
        index.iter().zip(&self.axes).map(|(&i, a)| a[i]).collect()
    }

    /// Axis coordinates equal within `rel_tol` relative to the radius.
    pub fn matches(&self, other: &TensorGrid, rel_tol: f64) -> bool {
        self.ndim() == other.ndim()
            && self
                .axes
                .iter()
                .zip(&other.axes)
                .zip(&self.radii)
                .all(|((a, b), r)| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= rel_tol * r))
    }
}

/// Values of a function on a [`TensorGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    grid: TensorGrid,
    values: ArrayD<f64>,
}

impl SampledField {
    pub fn new(grid: TensorGrid, values: ArrayD<f64>) -> Result<Self> {
        if values.shape() != grid.shape().as_slice() {
            return Err(Error::GridMismatch(format!(
                "value shape {:?} does not match grid shape {:?}",
                values.shape(),
                grid.shape()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(domain("sampled field contains non-finite values"));
        }
        Ok(SampledField { grid, values: values.as_standard_layout().into_owned() })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(grid: TensorGrid, mut f: impl FnMut(&[f64]) -> f64) -> Result<Self> {
        let shape = grid.shape();
        let values = ArrayD::from_shape_fn(IxDyn(&shape), |idx| f(&grid.point(idx.slice())));
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &TensorGrid {
        &self.grid
    }

    pub fn values(&self) -> &ArrayD<f64> {
        &self.values
    }

    pub fn into_values(self) -> ArrayD<f64> {
        self.values
    }

    pub fn ndim(&self) -> usize {
        self.grid.ndim()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Rows of `(coordinates, value)` in storage order.
    pub fn rows(&self) -> impl Iterator<Item = (Vec<f64>, f64)> + '_ {
        self.values.indexed_iter().map(move |(idx, &v)| (self.grid.point(idx.slice()), v))
    }
}
