//! Named numerical checks and the JSON verification report.
//!
//! Every check reduces to one number, `max_residual`, compared against a
//! tolerance. Randomised checks draw from a ChaCha8 stream derived from the
//! report seed, so a report is a deterministic function of its
//! [`VerifyConfig`].

use crate::bessel::{assoc_legendre, bessel_j, bessel_y, spherical_j, spherical_y, EvalResult, LegendreIndex, Order};
use crate::error::{Error, Result};
use crate::hankel::{
    build_plan, discrete_orthogonality_defect, helmholtz_residual, solve_helmholtz_separable,
    verify_derivative_property, verify_orthogonality, NDPlan, Profile,
};
use crate::operators::{
    apply_axis_analytic, apply_axis_numeric, apply_iterated, apply_polynomial, apply_sum, residual, AxisOperator,
    Equation, OperatorPolynomial,
};
use crate::tensor::{eval_on_grid, eval_product, Family, MultiOrder, SampledField, TensorGrid};
use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::f64::consts::PI;

/// Parameters shared by all checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Points per axis for transform checks.
    pub n: usize,
    /// Domain radius for transform checks.
    pub radius: f64,
    pub seed: u64,
    /// Replaces every check's default tolerance when set.
    pub tolerance: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n: 128, radius: 10.0, seed: 0, tolerance: None }
    }
}

/// One line of the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub n: usize,
    pub radius: f64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

type CheckFn = fn(&VerifyConfig, &mut ChaCha8Rng) -> Result<f64>;

/// `(name, default tolerance, check)` in report order.
const CHECKS: &[(&str, f64, CheckFn)] = &[
    ("eq1", 1e-8, check_eq1),
    ("eq1-wronskian", 1e-10, check_wronskian),
    ("spherical-ode", 1e-8, check_spherical_ode),
    ("legendre-ode", 1e-8, check_legendre_ode),
    ("derivative-fd", 0.5, check_derivative_fd),
    ("eq2", 1e-8, check_eq2),
    ("eq2-second", 1e-8, check_eq2_second),
    ("eq4", 1e-8, check_eq4),
    ("eq4-second", 1e-8, check_eq4_second),
    ("eq7", 1e-8, check_eq7),
    ("ndim", 1e-8, check_ndim),
    ("eq10", 1e-8, check_eq10),
    ("eq13", 1e-9, check_eq13),
    ("iteration", 1e-8, check_iteration),
    ("theorem1", 1e-10, check_theorem1),
    ("theorem2", 1e-7, check_theorem2),
    ("theorem2-second", 1e-7, check_theorem2_second),
    ("commutativity", 1e-10, check_commutativity),
    ("fd-convergence", 0.5, check_fd_convergence),
    ("eq14-discrete", 1e-10, check_discrete_orthogonality),
    ("inverse", 1e-10, check_inverse),
    ("linearity", 1e-12, check_linearity),
    ("gaussian", 1e-6, check_gaussian),
    ("eq12", 1e-4, check_eq12),
    ("eq14-decay", 1e-5, check_eq14_decay),
    ("eq16-decay", 1e-5, check_eq16_decay),
    ("eq17", 1e-12, check_eq17),
    ("eq17-gaussian", 1e-5, check_eq17_gaussian),
    ("axis-order", 1e-12, check_axis_order),
    ("theorem2-spectral", 1e-4, check_theorem2_spectral),
    ("helmholtz-mode", 1e-10, check_helmholtz_mode),
    ("helmholtz-gaussian", 1e-3, check_helmholtz_gaussian),
];

/// Names accepted by [`run_suite`] besides `all`.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

/// Runs one named check, or every check for `all`.
pub fn run_suite(suite: &str, config: &VerifyConfig) -> Result<Report> {
    if config.n < crate::hankel::MIN_POINTS {
        return Err(Error::Config(format!("--n must be at least {}", crate::hankel::MIN_POINTS)));
    }
    if !(config.radius.is_finite() && config.radius > 0.0) {
        return Err(Error::Config(format!("--radius must be positive, got {}", config.radius)));
    }
    if let Some(t) = config.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Config(format!("--tol must be positive, got {t}")));
        }
    }
    let selected: Vec<usize> = if suite == "all" {
        (0..CHECKS.len()).collect()
    } else {
        match CHECKS.iter().position(|c| c.0 == suite) {
            Some(i) => vec![i],
            None => return Err(Error::Config(format!("unknown check '{suite}'"))),
        }
    };
    let checks = selected.into_iter().map(|i| run_one(i, config)).collect();
    Ok(Report { seed: config.seed, n: config.n, radius: config.radius, checks })
}

fn run_one(i: usize, config: &VerifyConfig) -> CheckResult {
    let (name, default_tol, check) = CHECKS[i];
    let tolerance = config.tolerance.unwrap_or(default_tol);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(i as u64);
    let max_residual = match check(config, &mut rng) {
        Ok(r) if r.is_finite() => r,
        Ok(r) => {
            log::error!("{name}: non-finite residual {r}");
            f64::MAX
        }
        Err(e) => {
            log::error!("{name}: {e}");
            f64::MAX
        }
    };
    let pass = max_residual <= tolerance;
    log::info!("{name}: residual {max_residual:e} (tolerance {tolerance:e}) {}", if pass { "pass" } else { "FAIL" });
    CheckResult { name: name.to_string(), max_residual, tolerance, pass }
}

const BESSEL_ORDERS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 3.7];
const PAIR_ORDERS: [f64; 4] = [0.0, 1.0, 2.0, 0.5];

fn order(nu: f64) -> Order {
    Order::new(nu).expect("fixed orders are valid")
}

/// 200 points on `(0, 40]`.
fn ode_grid() -> impl Iterator<Item = f64> {
    (1..=200).map(|i| 0.2 * i as f64)
}

/// `x²u'' + w·x·u' + (x² − λ)u` from the evaluator's own derivatives,
/// scaled by `max(1, |u|·x²)`.
fn bessel_type_ode_residual(eval: impl Fn(f64) -> Result<EvalResult>, weight: f64, lambda: f64) -> Result<f64> {
    let mut worst = 0.0_f64;
    for x in ode_grid() {
        let e = eval(x)?;
        let r = x * x * e.second_derivative + weight * x * e.first_derivative + (x * x - lambda) * e.value;
        worst = worst.max(r.abs() / (e.value.abs() * x * x).max(1.0));
    }
    Ok(worst)
}

fn check_eq1(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for nu in BESSEL_ORDERS {
        let o = order(nu);
        worst = worst.max(bessel_type_ode_residual(|x| bessel_j(o, x), 1.0, nu * nu)?);
        worst = worst.max(bessel_type_ode_residual(|x| bessel_y(o, x), 1.0, nu * nu)?);
    }
    Ok(worst)
}

fn check_wronskian(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for nu in BESSEL_ORDERS {
        let o = order(nu);
        for x in ode_grid() {
            let j = bessel_j(o, x)?;
            let y = bessel_y(o, x)?;
            let w = j.value * y.first_derivative - j.first_derivative * y.value;
            let exact = 2.0 / (PI * x);
            worst = worst.max((w - exact).abs() / exact);
        }
    }
    Ok(worst)
}

fn check_spherical_ode(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for nu in BESSEL_ORDERS {
        let o = order(nu);
        let lambda = nu * (nu + 1.0);
        worst = worst.max(bessel_type_ode_residual(|x| spherical_j(o, x), 2.0, lambda)?);
        worst = worst.max(bessel_type_ode_residual(|x| spherical_y(o, x), 2.0, lambda)?);
    }
    Ok(worst)
}

fn check_legendre_ode(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for l in 0..=6u32 {
        for m in 0..=l {
            let idx = LegendreIndex::new(l, m)?;
            let lam = idx.eigenvalue();
            for i in 1..199 {
                let x = -0.99 + 0.01 * i as f64;
                let w = 1.0 - x * x;
                let e = assoc_legendre(idx, x)?;
                let r = w * e.second_derivative - 2.0 * x * e.first_derivative + (lam - (m * m) as f64 / w) * e.value;
                let scale = (e.value.abs() * (lam + (m * m) as f64 / w)).max(1.0);
                worst = worst.max(r.abs() / scale);
            }
        }
    }
    Ok(worst)
}

/// `|ratio − 4|` of central-difference errors of `u'` (from `u`) and of
/// `u''` (from `u'`) as `h` halves.
fn check_derivative_fd(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    let cases: [(Family, f64, f64); 4] = [
        (Family::BesselFirst, 1.0, 1.3),
        (Family::BesselSecond, 0.5, 2.1),
        (Family::SphericalFirst, 2.0, 3.4),
        (Family::SphericalSecond, 1.0, 1.7),
    ];
    for (family, nu, x) in cases {
        let o = MultiOrder::new(family, &[nu])?;
        let f = |t: f64| o.eval_factor(0, t);
        let at = f(x)?;
        let err1 = |h: f64| -> Result<f64> {
            Ok(((f(x + h)?.value - f(x - h)?.value) / (2.0 * h) - at.first_derivative).abs())
        };
        let err2 = |h: f64| -> Result<f64> {
            Ok(((f(x + h)?.first_derivative - f(x - h)?.first_derivative) / (2.0 * h) - at.second_derivative).abs())
        };
        worst = worst.max((err1(1e-2)? / err1(5e-3)? - 4.0).abs());
        worst = worst.max((err2(1e-2)? / err2(5e-3)? - 4.0).abs());
    }
    Ok(worst)
}

fn interior_axis(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect()
}

fn square_grid(axis: Vec<f64>, radius: f64) -> Result<TensorGrid> {
    TensorGrid::new(vec![axis.clone(), axis], vec![radius, radius])
}

fn pair_residual(equation: Equation, family: Family, lo: f64) -> Result<f64> {
    let grid = square_grid(interior_axis(lo, 10.0, 20), 10.0)?;
    let mut worst = 0.0_f64;
    for a in PAIR_ORDERS {
        for b in PAIR_ORDERS {
            let o = MultiOrder::new(family, &[a, b])?;
            worst = worst.max(residual(equation, &o, &grid, None)?.max_abs());
        }
    }
    Ok(worst)
}

fn check_eq2(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    pair_residual(Equation::CylindricalPair, Family::BesselFirst, 0.5)
}

fn check_eq2_second(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    pair_residual(Equation::CylindricalPair, Family::BesselSecond, 1.0)
}

fn check_eq4(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    pair_residual(Equation::SphericalPair, Family::SphericalFirst, 0.5)
}

fn check_eq4_second(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    pair_residual(Equation::SphericalPair, Family::SphericalSecond, 1.0)
}

fn check_eq7(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let grid = square_grid(interior_axis(-0.9, 0.9, 19), 1.0)?;
    let indices: Vec<(u32, u32)> = (1..=3).flat_map(|l| (0..=l).map(move |m| (l, m))).collect();
    let mut worst = 0.0_f64;
    for &a in &indices {
        for &b in &indices {
            let o = MultiOrder::legendre(&[a, b])?;
            worst = worst.max(residual(Equation::LegendrePair, &o, &grid, None)?.max_abs());
        }
    }
    Ok(worst)
}

fn check_ndim(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let axis = interior_axis(0.5, 8.0, 8);
    let grid = TensorGrid::new(vec![axis.clone(), axis.clone(), axis], vec![8.0; 3])?;
    let mut worst = 0.0_f64;
    for family in [Family::BesselFirst, Family::SphericalFirst] {
        let o = MultiOrder::new(family, &[0.0, 1.0, 2.0])?;
        worst = worst.max(residual(Equation::Radial, &o, &grid, Some(&[0.5, 1.0, 2.0]))?.max_abs());
    }
    Ok(worst)
}

fn check_eq10(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let grid = TensorGrid::new(vec![(1..=50).map(|i| 0.2 * i as f64).collect()], vec![10.0])?;
    let mut worst = 0.0_f64;
    for nu in BESSEL_ORDERS {
        worst = worst.max(residual(Equation::RadialEigen, &MultiOrder::bessel(&[nu])?, &grid, None)?.max_abs());
    }
    Ok(worst)
}

/// `|𝒟 J_ν(k·) + k² J_ν(k·)| / max(1, k²)`.
fn check_eq13(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for nu in [0.0, 1.0, 2.0] {
        let o = MultiOrder::bessel(&[nu])?;
        let op = AxisOperator::for_axis(&o, 0)?;
        for k in [0.5, 1.0, 2.0, 5.0] {
            for i in 1..=50 {
                let r = 0.2 * i as f64;
                let lhs = apply_axis_analytic(&op, &o, &[r], Some(&[k]))?;
                let j = eval_product(&o, &[r], Some(&[k]))?;
                worst = worst.max((lhs + k * k * j).abs() / (k * k).max(1.0));
            }
        }
    }
    Ok(worst)
}

/// `|𝒟^m J_ν(k·) − (−k²)^m J_ν(k·)| / (k²)^m` for `m ≤ 4`.
fn check_iteration(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for nu in [0.0, 1.0, 2.0, 0.5] {
        let o = order(nu);
        for k in [0.5, 1.0, 2.0] {
            for r in [0.3, 1.5, 4.0, 9.0] {
                let j = bessel_j(o, k * r)?.value;
                for m in 0..=4 {
                    let eig = (-k * k).powi(m as i32);
                    let got = apply_iterated(o, k, r, m)?;
                    worst = worst.max((got - eig * j).abs() / eig.abs());
                }
            }
        }
    }
    Ok(worst)
}

fn check_theorem1(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for a in PAIR_ORDERS {
        for b in PAIR_ORDERS {
            let o = MultiOrder::bessel(&[a, b])?;
            for x in interior_axis(0.5, 10.0, 8) {
                for y in interior_axis(0.5, 10.0, 8) {
                    let lhs = apply_sum(&o, &[x, y], None)?;
                    worst = worst.max((lhs + 2.0 * eval_product(&o, &[x, y], None)?).abs());
                }
            }
        }
    }
    Ok(worst)
}

/// A random polynomial with `n ≤ 3` variables, total degree `≤ 3` and
/// coefficients in `[−5, 5]`.
pub fn random_polynomial(rng: &mut impl Rng) -> OperatorPolynomial {
    let n = rng.gen_range(1..=3);
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    for total in 0..=3u32 {
        push_compositions(n, total, &mut Vec::new(), &mut monomials);
    }
    monomials.shuffle(rng);
    let count = rng.gen_range(1..=monomials.len().min(5));
    let terms = monomials.into_iter().take(count).map(|e| (rng.gen_range(-5.0..=5.0), e)).collect();
    OperatorPolynomial::new(n, terms).expect("distinct monomials")
}

fn push_compositions(n: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == n {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        push_compositions(n, total - first, prefix, out);
        prefix.pop();
    }
}

fn theorem2_residual(family: Family, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let poly = random_polynomial(rng);
        let n = poly.n_axes();
        let orders: Vec<f64> = (0..n).map(|_| *[0.0, 0.5, 1.0, 2.0, 3.0].choose(rng).expect("non-empty")).collect();
        let o = MultiOrder::new(family, &orders)?;
        let k: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0)).collect();
        let point: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..5.0)).collect();
        let lhs = apply_polynomial(&poly, &o, Some(&k), &point)?;
        let symbol = poly.evaluate(&k.iter().map(|k| -k * k).collect::<Vec<_>>())?;
        let product = eval_product(&o, &point, Some(&k))?;
        let rhs = symbol * product;
        worst = worst.max((lhs - rhs).abs() / (1.0 + symbol.abs() * product.abs()));
    }
    Ok(worst)
}

fn check_theorem2(_: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    theorem2_residual(Family::BesselFirst, rng)
}

fn check_theorem2_second(_: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    theorem2_residual(Family::BesselSecond, rng)
}

/// `𝒟_1 𝒟_2` versus `𝒟_2 𝒟_1` through single-monomial polynomials with
/// the exponent tuple written in both axis orders.
fn check_commutativity(_: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let orders = [rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0)];
        let k = [rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0)];
        let point = [rng.gen_range(0.5..5.0), rng.gen_range(0.5..5.0)];
        let o = MultiOrder::bessel(&orders)?;
        let swapped = o.permuted(&[1, 0])?;
        let p = OperatorPolynomial::new(2, vec![(1.0, vec![1, 2])])?;
        let q = OperatorPolynomial::new(2, vec![(1.0, vec![2, 1])])?;
        let a = apply_polynomial(&p, &o, Some(&k), &point)?;
        let b = apply_polynomial(&q, &swapped, Some(&[k[1], k[0]]), &[point[1], point[0]])?;
        worst = worst.max((a - b).abs() / a.abs().max(1e-300));
    }
    Ok(worst)
}

/// Largest `|e(h)/e(h/2) − 4|` of the finite-difference operator error.
fn check_fd_convergence(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let cases: Vec<(MultiOrder, f64, f64, f64)> = vec![
        (MultiOrder::bessel(&[1.0])?, 1.5, 1.0, 6.0),
        (MultiOrder::new(Family::SphericalFirst, &[2.0])?, 1.0, 1.0, 6.0),
        (MultiOrder::legendre(&[(3, 1)])?, 1.0, -0.8, 0.8),
    ];
    let mut worst = 0.0_f64;
    for (o, k, lo, hi) in cases {
        let op = AxisOperator::for_axis(&o, 0)?;
        let coarse = fd_error(&o, &op, k, lo, hi, 40)?;
        let fine = fd_error(&o, &op, k, lo, hi, 80)?;
        worst = worst.max((coarse / fine - 4.0).abs());
    }
    Ok(worst)
}

/// Max error of the numeric operator on the interior of a grid with
/// `intervals` steps, at the points shared with the coarsest grid.
fn fd_error(o: &MultiOrder, op: &AxisOperator, k: f64, lo: f64, hi: f64, intervals: usize) -> Result<f64> {
    let h = (hi - lo) / intervals as f64;
    let axis: Vec<f64> = (0..=intervals).map(|i| lo + h * i as f64).collect();
    let radius = if o.family() == Family::Legendre { 1.0 } else { hi };
    let grid = TensorGrid::new(vec![axis.clone()], vec![radius])?;
    let field = eval_on_grid(o, &grid, Some(&[k]))?;
    let numeric = apply_axis_numeric(op, &field, h)?;
    let stride = intervals / 40;
    let mut worst = 0.0_f64;
    for (i, &x) in axis.iter().enumerate().skip(stride).step_by(stride) {
        if i + stride > intervals {
            break;
        }
        let exact = apply_axis_analytic(op, o, &[x], Some(&[k]))?;
        worst = worst.max((numeric.field().values()[[i]] - exact).abs());
    }
    Ok(worst)
}

fn check_discrete_orthogonality(config: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let sizes: BTreeSet<usize> = [32, 64, 256, config.n].into_iter().collect();
    let mut worst = 0.0_f64;
    for nu in [0.0, 1.0, 2.0] {
        for &n in &sizes {
            worst = worst.max(discrete_orthogonality_defect(&build_plan(order(nu), n, config.radius)?));
        }
    }
    Ok(worst)
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn check_inverse(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for nu in [0.0, 1.0, 2.0] {
        let plan = build_plan(order(nu), config.n, config.radius)?;
        for _ in 0..3 {
            let v: Vec<f64> = (0..config.n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            worst = worst.max(max_abs_diff(&plan.inverse(&plan.forward(&v)?)?, &v));
            worst = worst.max(max_abs_diff(&plan.forward(&plan.inverse(&v)?)?, &v));
        }
    }
    Ok(worst)
}

/// `max |𝒦[ax + by] − a𝒦[x] − b𝒦[y]| / max |𝒦[ax + by]|`.
fn check_linearity(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let plan = build_plan(order(0.0), config.n, config.radius)?;
    let mut worst = 0.0_f64;
    for _ in 0..5 {
        let (a, b) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let x: Vec<f64> = (0..config.n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..config.n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mix: Vec<f64> = x.iter().zip(&y).map(|(x, y)| a * x + b * y).collect();
        let lhs = plan.forward(&mix)?;
        let fx = plan.forward(&x)?;
        let fy = plan.forward(&y)?;
        let rhs: Vec<f64> = fx.iter().zip(&fy).map(|(x, y)| a * x + b * y).collect();
        let scale = lhs.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        worst = worst.max(max_abs_diff(&lhs, &rhs) / scale);
    }
    Ok(worst)
}

/// Forward transform of `exp(−r²/2)` (ν = 0, N = 256, R = 12) against
/// `exp(−k²/2)`, pointwise relative error on `k ≤ 6`.
fn check_gaussian(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let plan = build_plan(order(0.0), 256, 12.0)?;
    let f: Vec<f64> = plan.sample_points().iter().map(|r| (-0.5 * r * r).exp()).collect();
    let spectrum = plan.forward(&f)?;
    Ok(plan
        .frequency_points()
        .iter()
        .zip(&spectrum)
        .filter(|(k, _)| **k <= 6.0)
        .map(|(k, v)| {
            let exact = (-0.5 * k * k).exp();
            ((v - exact) / exact).abs()
        })
        .fold(0.0, f64::max))
}

fn check_eq12(config: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for nu in [0.0, 1.0, 2.0] {
        let plan = build_plan(order(nu), config.n, config.radius)?;
        for profile in Profile::suite() {
            let f: Vec<f64> = plan.sample_points().iter().map(|&r| profile.value(nu, r)).collect();
            let d: Vec<f64> = plan.sample_points().iter().map(|&r| profile.operator(nu, r)).collect();
            let report = verify_derivative_property(&plan, &f, &d, None)?;
            worst = worst.max(report.max_relative_error);
        }
    }
    Ok(worst)
}

/// Cesàro means at `R = 50, 100, 200` must not grow (beyond a rounding
/// floor); the residual is the last magnitude, or the largest growth.
fn decay_residual(family: Family, u: f64, v: f64) -> Result<f64> {
    const FLOOR: f64 = 1e-12;
    let means = [50.0, 100.0, 200.0]
        .iter()
        .map(|&r| verify_orthogonality(family, order(0.0), u, v, r, 4000).map(|e| e.cesaro.abs()))
        .collect::<Result<Vec<f64>>>()?;
    let growth = means.windows(2).map(|w| w[1] - w[0].max(FLOOR)).fold(f64::NEG_INFINITY, f64::max);
    Ok(growth.max(means[means.len() - 1]))
}

fn check_eq14_decay(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    decay_residual(Family::BesselFirst, 1.0, 3.0)
}

fn check_eq16_decay(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    decay_residual(Family::SphericalFirst, 1.0, 2.0)
}

fn two_axis_plan(nu: [f64; 2], n: usize, radius: f64) -> Result<NDPlan> {
    NDPlan::build(&[order(nu[0]), order(nu[1])], n, radius)
}

fn relative_max_diff(a: &ndarray::ArrayD<f64>, b: &ndarray::ArrayD<f64>) -> f64 {
    let scale = b.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale
}

/// n-D transform of `f(r₁)g(r₂)` against the outer product of 1-D spectra.
fn check_eq17(config: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let nd = two_axis_plan([0.0, 1.0], config.n, config.radius)?;
    let f = |r: f64| Profile::Gaussian { a: 1.0 }.value(0.0, r);
    let g = |r: f64| Profile::CosGaussian.value(1.0, r);
    let field = SampledField::from_fn(nd.sample_grid()?, |p| f(p[0]) * g(p[1]))?;
    let spectrum = nd.forward_nd(&field)?;
    let f1 = nd.plan(0).forward(&nd.plan(0).sample_points().iter().map(|&r| f(r)).collect::<Vec<_>>())?;
    let g1 = nd.plan(1).forward(&nd.plan(1).sample_points().iter().map(|&r| g(r)).collect::<Vec<_>>())?;
    let outer = Array2::from_shape_fn((f1.len(), g1.len()), |(i, j)| f1[i] * g1[j]).into_dyn();
    Ok(relative_max_diff(spectrum.values(), &outer))
}

/// 2-D Gaussian, `N = 128` per axis, `R = 12`: relative error against
/// `exp(−(k₁² + k₂²)/2)` on `k₁² + k₂² ≤ 36`, the radial analogue of the
/// 1-D band `k ≤ 6`.
fn check_eq17_gaussian(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let nd = two_axis_plan([0.0, 0.0], 128, 12.0)?;
    let field = SampledField::from_fn(nd.sample_grid()?, |p| (-0.5 * (p[0] * p[0] + p[1] * p[1])).exp())?;
    let spectrum = nd.forward_nd(&field)?;
    let cut = 6.0_f64.min(0.5 * nd.plan(0).max_frequency());
    Ok(spectrum
        .rows()
        .filter(|(k, _)| k[0] * k[0] + k[1] * k[1] <= cut * cut)
        .map(|(k, v)| {
            let exact = (-0.5 * (k[0] * k[0] + k[1] * k[1])).exp();
            ((v - exact) / exact).abs()
        })
        .fold(0.0, f64::max))
}

fn check_axis_order(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let n = config.n.min(64);
    let orders = [order(0.0), order(1.0), order(2.0)];
    let nd = NDPlan::build(&orders, n, config.radius)?;
    let field = SampledField::from_fn(nd.sample_grid()?, |_| rng.gen_range(-1.0..1.0))?;
    let reference = nd.forward_nd(&field)?;
    let mut worst = 0.0_f64;
    for perm in [[2, 1, 0], [1, 0, 2], [0, 2, 1]] {
        let other = nd.forward_nd_in_order(&field, &perm)?;
        worst = worst.max(relative_max_diff(other.values(), reference.values()));
    }
    Ok(worst)
}

/// `𝒦[(𝒟₁ + 𝒟₂)u]` against `−(k₁² + k₂²)𝒦[u]` for separable profiles,
/// normwise over resolved modes.
fn check_theorem2_spectral(config: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let nu = [0.0, 1.0];
    let nd = two_axis_plan(nu, config.n, config.radius)?;
    let (pf, pg) = (Profile::Gaussian { a: 1.0 }, Profile::PolyGaussian);
    let grid = nd.sample_grid()?;
    let u = SampledField::from_fn(grid.clone(), |p| pf.value(nu[0], p[0]) * pg.value(nu[1], p[1]))?;
    let du = SampledField::from_fn(grid, |p| {
        pf.operator(nu[0], p[0]) * pg.value(nu[1], p[1]) + pf.value(nu[0], p[0]) * pg.operator(nu[1], p[1])
    })?;
    let lhs = nd.forward_nd(&du)?;
    let base = nd.forward_nd(&u)?;
    let cut: Vec<f64> = nd.axis_plans().iter().map(|p| 0.5 * p.max_frequency()).collect();
    let mut diff = 0.0_f64;
    let mut scale = 0.0_f64;
    for ((k, l), (_, b)) in lhs.rows().zip(base.rows()) {
        if k.iter().zip(&cut).all(|(k, c)| k <= c) {
            let rhs = -(k[0] * k[0] + k[1] * k[1]) * b;
            diff = diff.max((l - rhs).abs());
            scale = scale.max(rhs.abs());
        }
    }
    Ok(diff / scale)
}

/// Basis modes `J_ν(k_m r)` (1-D) and `J_0(k_a r₁)J_1(k_b r₂)` (2-D) as
/// right-hand sides scaled by `c − Σk²` must come back unchanged.
fn check_helmholtz_mode(config: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let c = -1.0;
    let mut worst = 0.0_f64;
    for nu in [0.0, 1.0, 2.0] {
        let nd = NDPlan::build(&[order(nu)], config.n, config.radius)?;
        let k = nd.plan(0).frequency_points()[4];
        let mode =
            SampledField::from_fn(nd.sample_grid()?, |p| bessel_j(order(nu), k * p[0]).map_or(f64::NAN, |e| e.value))?;
        worst = worst.max(mode_error(&nd, &mode, c, k * k)?);
    }
    let n2 = config.n.min(64);
    let nd = two_axis_plan([0.0, 1.0], n2, config.radius)?;
    let (ka, kb) = (nd.plan(0).frequency_points()[2], nd.plan(1).frequency_points()[5]);
    let o = MultiOrder::bessel(&[0.0, 1.0])?;
    let mode = eval_on_grid(&o, &nd.sample_grid()?, Some(&[ka, kb]))?;
    worst = worst.max(mode_error(&nd, &mode, c, ka * ka + kb * kb)?);
    Ok(worst)
}

fn mode_error(nd: &NDPlan, mode: &SampledField, c: f64, k2: f64) -> Result<f64> {
    let rhs = SampledField::new(mode.grid().clone(), mode.values() * (c - k2))?;
    let u = solve_helmholtz_separable(nd, &rhs, c)?;
    Ok((u.values() - mode.values()).iter().fold(0.0_f64, |m, v| m.max(v.abs())))
}

/// 1-D, ν = 0, `c = −1`, rhs `exp(−r²)` on a plan of `N` points over
/// `R = 20`; finite-difference residual on `(0, 8]` with step 0.01.
fn check_helmholtz_gaussian(config: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<f64> {
    let c = -1.0;
    let nd = NDPlan::build(&[order(0.0)], config.n, 20.0)?;
    let rhs = SampledField::from_fn(nd.sample_grid()?, |p| (-p[0] * p[0]).exp())?;
    let u = solve_helmholtz_separable(&nd, &rhs, c)?;
    let h = 0.01;
    let check = TensorGrid::uniform(&[h], h, &[800])?;
    Ok(helmholtz_residual(&nd, &rhs, c, &u, &check, h)?.relative)
}
