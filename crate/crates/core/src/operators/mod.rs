//! Radial operators acting on tensor-product functions.
//!
//! For an axis of order `α` the operator is
//!
//! - cylindrical: `(1/x)(x u')' − (α²/x²) u`,
//! - spherical: `(1/x²)(x² u')' − (α(α+1)/x²) u`,
//! - Legendre: `((1−x²) u')' − (m²/(1−x²)) u`.
//!
//! `F_α(k·)` is an eigenfunction with eigenvalue `−k²` in the first two
//! cases and `−l(l+1)` in the third. Operators on different axes act on
//! different variables of a product, so polynomials in them are applied
//! factor by factor.
//!
//! Two analytic routes are provided: [`apply_axis_analytic`] uses the
//! scalar evaluator's first and second derivatives directly, while
//! [`apply_iterated`] and [`apply_polynomial`] iterate the operator in
//! closed form (see `expansion`). [`apply_axis_numeric`] works on sampled
//! data with finite differences.

mod expansion;
mod numeric;

pub use numeric::{apply_axis_numeric, StencilField};

use crate::bessel::{EvalResult, Order};
use crate::error::{domain, Error, Result};
use crate::tensor::{
    check_len, outer_product, resolve_scale, FactorIndex, Family, MultiOrder, SampledField, TensorGrid,
};
use expansion::AxisPowers;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

/// Highest power accepted by [`apply_iterated`].
pub const MAX_ITERATION: u32 = 8;

/// The operator of one family acting on variable `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisOperator {
    axis: usize,
    family: Family,
    index: FactorIndex,
}

impl AxisOperator {
    pub fn new(axis: usize, family: Family, index: FactorIndex) -> Result<Self> {
        let ok = match index {
            FactorIndex::Order(_) => family.is_radial(),
            FactorIndex::Legendre(_) => !family.is_radial(),
        };
        if !ok {
            return Err(Error::Config(format!("index {index:?} does not belong to family {family}")));
        }
        Ok(AxisOperator { axis, family, index })
    }

    /// The operator matching `order` on `axis`.
    pub fn for_axis(order: &MultiOrder, axis: usize) -> Result<Self> {
        if axis >= order.len() {
            return Err(Error::LengthMismatch { expected: order.len(), found: axis + 1 });
        }
        Self::new(axis, order.family(), order.index(axis))
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> FactorIndex {
        self.index
    }

    /// Applies the differential form to `u(x)` given `u`, `u'`, `u''` at `x`.
    pub fn apply_pointwise(&self, x: f64, u: f64, du: f64, d2u: f64) -> f64 {
        let a = self.index.alpha();
        match self.family {
            Family::BesselFirst | Family::BesselSecond => d2u + du / x - a * a * u / (x * x),
            Family::SphericalFirst | Family::SphericalSecond => d2u + 2.0 * du / x - a * (a + 1.0) * u / (x * x),
            Family::Legendre => {
                let w = (1.0 - x) * (1.0 + x);
                w * d2u - 2.0 * x * du - a * a * u / w
            }
        }
    }

    /// The operator on `x ↦ F(kx)` from scalar derivatives at `kx`.
    fn apply_to_factor(&self, e: &EvalResult, x: f64, k: f64) -> f64 {
        self.apply_pointwise(x, e.value, k * e.first_derivative, k * k * e.second_derivative)
    }

    fn check_interior(&self, x: f64) -> Result<()> {
        let interior = match self.family {
            Family::Legendre => x.abs() < 1.0,
            _ => x > 0.0,
        };
        if !interior || !x.is_finite() {
            return Err(domain(format!("{} operator needs a strictly interior point, got x = {x}", self.family)));
        }
        Ok(())
    }
}

fn check_interior_point(order: &MultiOrder, point: &[f64]) -> Result<()> {
    for (axis, &x) in point.iter().enumerate() {
        AxisOperator::for_axis(order, axis)?.check_interior(x)?;
    }
    Ok(())
}

/// `𝒟_{α_j; x_j}` applied to `∏ F_{α_i}(k_i x_i)` at `point`.
pub fn apply_axis_analytic(op: &AxisOperator, order: &MultiOrder, point: &[f64], scale: Option<&[f64]>) -> Result<f64> {
    check_len(order.len(), point.len())?;
    let k = resolve_scale(order.len(), scale)?;
    if op.axis >= order.len() {
        return Err(Error::LengthMismatch { expected: order.len(), found: op.axis + 1 });
    }
    if op.family != order.family() || op.index != order.index(op.axis) {
        return Err(Error::Config(format!(
            "operator {:?} does not match axis {} of {:?}",
            op,
            op.axis,
            order.indices()
        )));
    }
    check_interior_point(order, point)?;
    let mut acc = 1.0;
    for (axis, (&x, &kj)) in point.iter().zip(&k).enumerate() {
        let e = order.eval_factor(axis, kj * x)?;
        acc *= if axis == op.axis { op.apply_to_factor(&e, x, kj) } else { e.value };
    }
    Ok(acc)
}

/// `Σ_j 𝒟_{α_j; x_j}` applied to the product at `point`.
pub fn apply_sum(order: &MultiOrder, point: &[f64], scale: Option<&[f64]>) -> Result<f64> {
    (0..order.len()).map(|axis| apply_axis_analytic(&AxisOperator::for_axis(order, axis)?, order, point, scale)).sum()
}

/// `𝒟_{ν;r}^m J_ν(k r)`, computed by `m` successive closed-form
/// applications of the operator (not by the eigenvalue shortcut).
pub fn apply_iterated(order: Order, k: f64, r: f64, m: u32) -> Result<f64> {
    if m > MAX_ITERATION {
        return Err(Error::Config(format!("iteration count {m} exceeds {MAX_ITERATION}")));
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(domain(format!("scale must be positive, got {k}")));
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(domain(format!("r must be positive, got {r}")));
    }
    let powers = AxisPowers::new(Family::BesselFirst, FactorIndex::Order(order), k, m)?;
    let value = powers.evaluate_all(r)?[m as usize];
    if !value.is_finite() {
        return Err(Error::Overflow(format!("D^{m} J_{}({k} r) is not representable", order.nu())));
    }
    Ok(value)
}

/// Real polynomial in the commuting symbols `𝒟_1, …, 𝒟_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorPolynomial {
    n_axes: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl OperatorPolynomial {
    pub fn new(n_axes: usize, terms: Vec<(f64, Vec<u32>)>) -> Result<Self> {
        if n_axes == 0 {
            return Err(Error::Config("polynomial needs at least one variable".into()));
        }
        if terms.is_empty() {
            return Err(Error::Config("polynomial needs at least one term".into()));
        }
        let mut seen = HashSet::new();
        for (c, exps) in &terms {
            check_len(n_axes, exps.len())?;
            if !c.is_finite() {
                return Err(domain(format!("coefficient {c} is not finite")));
            }
            if !seen.insert(exps.clone()) {
                return Err(Error::Config(format!("duplicate exponent tuple {exps:?}")));
            }
        }
        Ok(OperatorPolynomial { n_axes, terms })
    }

    /// The constant polynomial `c`.
    pub fn constant(n_axes: usize, c: f64) -> Result<Self> {
        Self::new(n_axes, vec![(c, vec![0; n_axes])])
    }

    /// `t_1 + … + t_n`.
    pub fn laplacian(n_axes: usize) -> Result<Self> {
        let terms = (0..n_axes)
            .map(|j| {
                let mut e = vec![0; n_axes];
                e[j] = 1;
                (1.0, e)
            })
            .collect();
        Self::new(n_axes, terms)
    }

    pub fn n_axes(&self) -> usize {
        self.n_axes
    }

    pub fn terms(&self) -> &[(f64, Vec<u32>)] {
        &self.terms
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(_, e)| e.iter().sum()).max().unwrap_or(0)
    }

    /// `P(t_1, …, t_n)` at numeric arguments.
    pub fn evaluate(&self, t: &[f64]) -> Result<f64> {
        check_len(self.n_axes, t.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(c, e)| c * e.iter().zip(t).map(|(&p, &tj)| tj.powi(p as i32)).product::<f64>())
            .sum())
    }

    fn max_power(&self, axis: usize) -> u32 {
        self.terms.iter().map(|(_, e)| e[axis]).max().unwrap_or(0)
    }
}

impl fmt::Display for OperatorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, e)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (j, p) in e.iter().enumerate().filter(|(_, p)| **p > 0) {
                write!(f, "·D{}^{p}", j + 1)?;
            }
        }
        Ok(())
    }
}

/// `P(𝒟_{α_1;x_1}, …, 𝒟_{α_n;x_n})` applied to `∏ F_{α_j}(k_j x_j)`.
///
/// Within every monomial the axis operators are applied in ascending axis
/// order, each one only touching its own factor.
pub fn apply_polynomial(
    poly: &OperatorPolynomial,
    order: &MultiOrder,
    scale: Option<&[f64]>,
    point: &[f64],
) -> Result<f64> {
    check_len(order.len(), poly.n_axes())?;
    check_len(order.len(), point.len())?;
    let k = resolve_scale(order.len(), scale)?;
    check_interior_point(order, point)?;
    let per_axis = (0..order.len())
        .map(|axis| {
            AxisPowers::new(order.family(), order.index(axis), k[axis], poly.max_power(axis))?.evaluate_all(point[axis])
        })
        .collect::<Result<Vec<_>>>()?;
    let value: f64 = poly
        .terms()
        .iter()
        .map(|(c, exps)| {
            let mut acc = *c;
            for (axis, &p) in exps.iter().enumerate() {
                acc *= per_axis[axis][p as usize];
            }
            acc
        })
        .sum();
    if !value.is_finite() {
        return Err(Error::Overflow(format!("polynomial {poly} overflows at {point:?}")));
    }
    Ok(value)
}

/// Equations whose left-hand side [`residual`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Equation {
    /// `𝒟_ν u + k² u = 0` in one variable.
    RadialEigen,
    /// `[𝒟_α + 𝒟_β] u + 2u = 0` for the cylindrical pair.
    CylindricalPair,
    /// `[𝒟_α + 𝒟_β] u + 2u = 0` for the spherical pair.
    SphericalPair,
    /// `[𝒟_1 + 𝒟_2] u + (l_1(l_1+1) + l_2(l_2+1)) u = 0` for Legendre.
    LegendrePair,
    /// `Σ_j 𝒟_j u + Σ_j k_j² u = 0` in any dimension.
    Radial,
}

impl Equation {
    pub fn name(self) -> &'static str {
        match self {
            Equation::RadialEigen => "eq10",
            Equation::CylindricalPair => "eq2",
            Equation::SphericalPair => "eq4",
            Equation::LegendrePair => "eq7",
            Equation::Radial => "ndim",
        }
    }
}

impl FromStr for Equation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq10" => Ok(Equation::RadialEigen),
            "eq2" => Ok(Equation::CylindricalPair),
            "eq4" => Ok(Equation::SphericalPair),
            "eq7" => Ok(Equation::LegendrePair),
            "ndim" => Ok(Equation::Radial),
            other => Err(Error::Config(format!("unknown equation '{other}'"))),
        }
    }
}

/// Left-hand side of `equation` with the product solution substituted,
/// on every point of `grid`. Should vanish up to rounding.
pub fn residual(
    equation: Equation,
    order: &MultiOrder,
    grid: &TensorGrid,
    scale: Option<&[f64]>,
) -> Result<SampledField> {
    check_len(order.len(), grid.ndim())?;
    let family = order.family();
    let arity_ok = match equation {
        Equation::RadialEigen => order.len() == 1,
        Equation::CylindricalPair | Equation::SphericalPair | Equation::LegendrePair => order.len() == 2,
        Equation::Radial => true,
    };
    if !arity_ok {
        return Err(Error::Config(format!("{} does not apply to {} axes", equation.name(), order.len())));
    }
    let family_ok = match equation {
        Equation::RadialEigen | Equation::CylindricalPair => {
            matches!(family, Family::BesselFirst | Family::BesselSecond)
        }
        Equation::SphericalPair => family.is_spherical(),
        Equation::LegendrePair => family == Family::Legendre,
        Equation::Radial => family.is_radial(),
    };
    if !family_ok {
        return Err(Error::Config(format!("{} does not apply to family {family}", equation.name())));
    }
    let k = resolve_scale(order.len(), scale)?;
    let unit_only = matches!(equation, Equation::CylindricalPair | Equation::SphericalPair | Equation::LegendrePair);
    if unit_only && k.iter().any(|&kj| kj != 1.0) {
        return Err(Error::Config(format!("{} is stated for unit scale", equation.name())));
    }

    let constant: f64 = match equation {
        Equation::LegendrePair => order
            .indices()
            .iter()
            .map(|i| match i {
                FactorIndex::Legendre(l) => l.eigenvalue(),
                FactorIndex::Order(_) => unreachable!("family checked above"),
            })
            .sum(),
        _ => k.iter().map(|kj| kj * kj).sum(),
    };

    let mut values = Vec::with_capacity(order.len());
    let mut applied = Vec::with_capacity(order.len());
    for (axis, &ka) in k.iter().enumerate().take(order.len()) {
        let op = AxisOperator::for_axis(order, axis)?;
        let mut v = Vec::with_capacity(grid.axis(axis).len());
        let mut d = Vec::with_capacity(grid.axis(axis).len());
        for &x in grid.axis(axis) {
            op.check_interior(x)?;
            let e = order.eval_factor(axis, ka * x)?;
            v.push(e.value);
            d.push(op.apply_to_factor(&e, x, ka));
        }
        values.push(v);
        applied.push(d);
    }

    let mut total = outer_product(&values) * constant;
    for axis in 0..order.len() {
        let mut factors = values.clone();
        factors[axis] = applied[axis].clone();
        total = total + outer_product(&factors);
    }
    SampledField::new(grid.clone(), total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::bessel_j;
    use crate::tensor::eval_product;
    use std::f64::consts::FRAC_PI_2;

    const J0_1: f64 = 0.765_197_686_557_966_6;
    const J0_2: f64 = 0.223_890_779_141_235_67;

    fn j(nu: f64, x: f64) -> f64 {
        bessel_j(Order::new(nu).unwrap(), x).unwrap().value
    }

    #[test]
    fn axis_analytic_examples() {
        let o = MultiOrder::bessel(&[0.0]).unwrap();
        let op = AxisOperator::for_axis(&o, 0).unwrap();
        let v = apply_axis_analytic(&op, &o, &[1.0], Some(&[1.0])).unwrap();
        assert!((v + J0_1).abs() < 1e-14);
        let v = apply_axis_analytic(&op, &o, &[1.0], Some(&[2.0])).unwrap();
        assert!((v + 4.0 * J0_2).abs() < 1e-14);
        let s = MultiOrder::new(Family::SphericalFirst, &[0.0]).unwrap();
        let op = AxisOperator::for_axis(&s, 0).unwrap();
        let v = apply_axis_analytic(&op, &s, &[FRAC_PI_2], None).unwrap();
        assert!((v + 2.0 / std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn axis_analytic_rejects_boundary_and_mismatch() {
        let o = MultiOrder::bessel(&[0.0, 1.0]).unwrap();
        let op = AxisOperator::for_axis(&o, 0).unwrap();
        assert!(apply_axis_analytic(&op, &o, &[0.0, 1.0], None).is_err());
        let wrong = AxisOperator::for_axis(&o, 1).unwrap();
        let shifted = AxisOperator::new(0, wrong.family(), wrong.index()).unwrap();
        assert!(apply_axis_analytic(&shifted, &o, &[1.0, 1.0], None).is_err());
        let p = MultiOrder::legendre(&[(2, 1)]).unwrap();
        let op = AxisOperator::for_axis(&p, 0).unwrap();
        assert!(apply_axis_analytic(&op, &p, &[1.0], None).is_err());
    }

    #[test]
    fn sum_examples() {
        let o = MultiOrder::bessel(&[0.0, 0.0]).unwrap();
        let v = apply_sum(&o, &[1.0, 2.0], Some(&[1.0, 1.0])).unwrap();
        assert!((v + 2.0 * J0_1 * J0_2).abs() < 1e-14);
        let o3 = MultiOrder::bessel(&[0.0, 0.0, 0.0]).unwrap();
        let v = apply_sum(&o3, &[1.0, 1.0, 1.0], None).unwrap();
        assert!((v + 3.0 * J0_1.powi(3)).abs() < 1e-14);
        let p = MultiOrder::legendre(&[(1, 0), (1, 0)]).unwrap();
        let v = apply_sum(&p, &[0.3, 0.5], None).unwrap();
        assert!((v + 0.6).abs() < 1e-15);
    }

    #[test]
    fn iterated_examples() {
        let o0 = Order::new(0.0).unwrap();
        assert!((apply_iterated(o0, 1.0, 1.0, 0).unwrap() - J0_1).abs() < 1e-15);
        assert!((apply_iterated(o0, 1.0, 1.0, 2).unwrap() - J0_1).abs() < 1e-13);
        let o1 = Order::new(1.0).unwrap();
        let v = apply_iterated(o1, 2.0, 1.5, 3).unwrap();
        assert!((v + 64.0 * j(1.0, 3.0)).abs() < 1e-10 * 64.0);
        assert!(apply_iterated(o1, 2.0, 1.5, MAX_ITERATION + 1).is_err());
        assert!(apply_iterated(o1, 2.0, 0.0, 1).is_err());
    }

    #[test]
    fn polynomial_examples() {
        let o = MultiOrder::bessel(&[0.0, 0.0]).unwrap();
        let one = OperatorPolynomial::constant(2, 1.0).unwrap();
        let prod = eval_product(&o, &[1.0, 2.0], None).unwrap();
        assert!((apply_polynomial(&one, &o, None, &[1.0, 2.0]).unwrap() - prod).abs() < 1e-16);
        let lap = OperatorPolynomial::laplacian(2).unwrap();
        let v = apply_polynomial(&lap, &o, Some(&[1.0, 1.0]), &[1.0, 2.0]).unwrap();
        assert!((v + 2.0 * J0_1 * J0_2).abs() < 1e-13);

        let p = OperatorPolynomial::new(2, vec![(1.0, vec![1, 1]), (3.0, vec![1, 0])]).unwrap();
        let o01 = MultiOrder::bessel(&[0.0, 1.0]).unwrap();
        let v = apply_polynomial(&p, &o01, Some(&[2.0, 3.0]), &[0.7, 1.1]).unwrap();
        let expected = 24.0 * j(0.0, 1.4) * j(1.0, 3.3);
        assert!((v - expected).abs() < 1e-10 * expected.abs().max(1.0), "{v} vs {expected}");
    }

    #[test]
    fn polynomial_validation() {
        assert!(OperatorPolynomial::new(2, vec![]).is_err());
        assert!(OperatorPolynomial::new(2, vec![(1.0, vec![1])]).is_err());
        assert!(OperatorPolynomial::new(1, vec![(1.0, vec![1]), (2.0, vec![1])]).is_err());
        let p = OperatorPolynomial::new(2, vec![(1.0, vec![2, 1]), (3.0, vec![1, 0])]).unwrap();
        assert_eq!(p.total_degree(), 3);
        assert_eq!(p.evaluate(&[2.0, 3.0]).unwrap(), 18.0);
    }

    #[test]
    fn residual_examples() {
        let o = MultiOrder::bessel(&[0.0]).unwrap();
        let g = TensorGrid::new(vec![(1..=50).map(|i| 0.2 * i as f64).collect()], vec![10.0]).unwrap();
        let r = residual(Equation::RadialEigen, &o, &g, None).unwrap();
        assert!(r.max_abs() < 1e-8);

        let o2 = MultiOrder::bessel(&[0.0, 1.0]).unwrap();
        let axis: Vec<f64> = (1..=20).map(|i| 0.5 * i as f64).collect();
        let g2 = TensorGrid::new(vec![axis.clone(), axis], vec![10.0, 10.0]).unwrap();
        assert!(residual(Equation::CylindricalPair, &o2, &g2, None).unwrap().max_abs() < 1e-8);

        let p = MultiOrder::legendre(&[(1, 0), (2, 1)]).unwrap();
        let ax: Vec<f64> = (0..19).map(|i| -0.9 + 0.1 * i as f64).collect();
        let gp = TensorGrid::new(vec![ax.clone(), ax], vec![1.0, 1.0]).unwrap();
        assert!(residual(Equation::LegendrePair, &p, &gp, None).unwrap().max_abs() < 1e-8);
    }

    #[test]
    fn residual_rejects_bad_configurations() {
        let o2 = MultiOrder::bessel(&[0.0, 1.0]).unwrap();
        let g2 = TensorGrid::new(vec![vec![1.0], vec![1.0]], vec![2.0, 2.0]).unwrap();
        assert!(residual(Equation::RadialEigen, &o2, &g2, None).is_err());
        assert!(residual(Equation::SphericalPair, &o2, &g2, None).is_err());
        assert!(residual(Equation::CylindricalPair, &o2, &g2, Some(&[2.0, 1.0])).is_err());
        assert!(residual(Equation::Radial, &o2, &g2, Some(&[2.0, 1.0])).is_ok());
        assert_eq!("eq7".parse::<Equation>().unwrap(), Equation::LegendrePair);
    }

    #[test]
    fn two_analytic_routes_agree() {
        // single closed-form application vs the derivative-based route
        for &(nu, k, x) in &[(0.0, 1.0, 0.3), (1.0, 2.5, 1.7), (2.5, 0.4, 9.0), (0.5, 3.0, 0.05)] {
            let o = MultiOrder::bessel(&[nu]).unwrap();
            let op = AxisOperator::for_axis(&o, 0).unwrap();
            let a = apply_axis_analytic(&op, &o, &[x], Some(&[k])).unwrap();
            let lap = OperatorPolynomial::laplacian(1).unwrap();
            let b = apply_polynomial(&lap, &o, Some(&[k]), &[x]).unwrap();
            assert!((a - b).abs() < 1e-10 * (1.0 + a.abs()), "nu={nu} k={k} x={x}: {a} vs {b}");
        }
    }
}
