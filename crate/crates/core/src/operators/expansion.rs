//! Closed-form iteration of the radial operators.
//!
//! A function of one variable of the form `a(x) F(kx) + b(x) F'(kx)`, where
//! `F` solves the family's ODE, stays in that form under differentiation
//! once `F''` is eliminated with the ODE. The coefficients `a`, `b` are
//! finite sums `Σ c x^i (1 − x²)^{−p}`; for the Bessel families `p` is always
//! zero, for Legendre the sums are kept in the canonical basis
//! `x^e (1 − x²)^q`, `e ∈ {0, 1}`. Applying an operator `m` times therefore
//! reduces to coefficient arithmetic followed by one evaluation of `F` and
//! `F'`.

use crate::error::{Error, Result};
use crate::tensor::{eval_scalar, FactorIndex, Family};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct Coeffs(BTreeMap<(i32, i32), f64>);

impl Coeffs {
    fn constant(c: f64) -> Self {
        let mut out = Coeffs::default();
        out.add_term(0, 0, c);
        out
    }

    fn monomial(i: i32, p: i32, c: f64) -> Self {
        let mut out = Coeffs::default();
        out.add_term(i, p, c);
        out
    }

    fn add_term(&mut self, i: i32, p: i32, c: f64) {
        if c == 0.0 {
            return;
        }
        let e = self.0.entry((i, p)).or_insert(0.0);
        *e += c;
        if *e == 0.0 {
            self.0.remove(&(i, p));
        }
    }

    fn add_scaled(&mut self, other: &Coeffs, s: f64) {
        for (&(i, p), &c) in &other.0 {
            self.add_term(i, p, s * c);
        }
    }

    /// Multiplies by `s · x^di (1 − x²)^{−dp}`.
    fn shifted(&self, di: i32, dp: i32, s: f64) -> Coeffs {
        let mut out = Coeffs::default();
        for (&(i, p), &c) in &self.0 {
            out.add_term(i + di, p + dp, s * c);
        }
        out
    }

    fn mul(&self, other: &Coeffs) -> Coeffs {
        let mut out = Coeffs::default();
        for (&(i1, p1), &c1) in &self.0 {
            for (&(i2, p2), &c2) in &other.0 {
                out.add_term(i1 + i2, p1 + p2, c1 * c2);
            }
        }
        out
    }

    fn derivative(&self) -> Coeffs {
        // d/dx x^i (1−x²)^{−p} = i x^{i−1} (1−x²)^{−p} + 2p x^{i+1} (1−x²)^{−p−1}
        let mut out = Coeffs::default();
        for (&(i, p), &c) in &self.0 {
            if i != 0 {
                out.add_term(i - 1, p, i as f64 * c);
            }
            if p != 0 {
                out.add_term(i + 1, p + 1, 2.0 * p as f64 * c);
            }
        }
        out
    }

    /// Rewrites `x^i`, `i ≥ 2`, through `x² = 1 − (1 − x²)`.
    fn canonicalize(&self) -> Coeffs {
        let mut pending: Vec<((i32, i32), f64)> = self.0.iter().map(|(&k, &c)| (k, c)).collect();
        let mut out = Coeffs::default();
        while let Some(((i, p), c)) = pending.pop() {
            if i >= 2 {
                pending.push(((i - 2, p), c));
                pending.push(((i - 2, p - 1), -c));
            } else {
                out.add_term(i, p, c);
            }
        }
        out
    }

    pub(crate) fn eval(&self, x: f64) -> f64 {
        let w = (1.0 - x) * (1.0 + x);
        self.0.iter().map(|(&(i, p), &c)| c * x.powi(i) * w.powi(-p)).sum()
    }
}

/// Differential form of one axis operator together with the ODE of its
/// factor, at scale `k`.
#[derive(Debug, Clone, Copy)]
enum Rule {
    /// `u'' + u'/x − α²u/x²`
    Cylindrical { alpha2: f64, k: f64 },
    /// `u'' + 2u'/x − α(α+1)u/x²`
    Spherical { alpha_pair: f64, k: f64 },
    /// `(1−x²)u'' − 2x u' − m²u/(1−x²)`
    Legendre { lambda: f64, m2: f64 },
}

impl Rule {
    fn new(family: Family, index: FactorIndex, k: f64) -> Result<Rule> {
        match (family, index) {
            (Family::BesselFirst | Family::BesselSecond, FactorIndex::Order(o)) => {
                Ok(Rule::Cylindrical { alpha2: o.nu() * o.nu(), k })
            }
            (Family::SphericalFirst | Family::SphericalSecond, FactorIndex::Order(o)) => {
                Ok(Rule::Spherical { alpha_pair: o.nu() * (o.nu() + 1.0), k })
            }
            (Family::Legendre, FactorIndex::Legendre(i)) => {
                if k != 1.0 {
                    return Err(Error::Config("Legendre operators require unit scale".into()));
                }
                let m = i.order() as f64;
                Ok(Rule::Legendre { lambda: i.eigenvalue(), m2: m * m })
            }
            (f, i) => Err(Error::Config(format!("index {i:?} does not belong to family {f}"))),
        }
    }

    fn k(self) -> f64 {
        match self {
            Rule::Cylindrical { k, .. } | Rule::Spherical { k, .. } => k,
            Rule::Legendre { .. } => 1.0,
        }
    }

    /// `d/dx F'(kx) = A(x) F(kx) + B(x) F'(kx)`.
    fn second_derivative_reduction(self) -> (Coeffs, Coeffs) {
        match self {
            Rule::Cylindrical { alpha2, k } => {
                let mut a = Coeffs::constant(-k);
                a.add_term(-2, 0, alpha2 / k);
                (a, Coeffs::monomial(-1, 0, -1.0))
            }
            Rule::Spherical { alpha_pair, k } => {
                let mut a = Coeffs::constant(-k);
                a.add_term(-2, 0, alpha_pair / k);
                (a, Coeffs::monomial(-1, 0, -2.0))
            }
            Rule::Legendre { lambda, m2 } => {
                let mut a = Coeffs::monomial(0, 1, -lambda);
                a.add_term(0, 2, m2);
                (a, Coeffs::monomial(1, 1, 2.0))
            }
        }
    }
}

/// `f(x) F(kx) + df(x) F'(kx)` for one axis.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct AxisExpansion {
    pub f: Coeffs,
    pub df: Coeffs,
}

impl AxisExpansion {
    fn identity() -> Self {
        AxisExpansion { f: Coeffs::constant(1.0), df: Coeffs::default() }
    }

    fn derivative(&self, rule: Rule) -> Self {
        let (a_red, b_red) = rule.second_derivative_reduction();
        let mut f = self.f.derivative();
        f.add_scaled(&self.df.mul(&a_red), 1.0);
        let mut df = self.f.shifted(0, 0, rule.k());
        df.add_scaled(&self.df.derivative(), 1.0);
        df.add_scaled(&self.df.mul(&b_red), 1.0);
        AxisExpansion { f, df }
    }

    fn shifted(&self, di: i32, dp: i32, s: f64) -> Self {
        AxisExpansion { f: self.f.shifted(di, dp, s), df: self.df.shifted(di, dp, s) }
    }

    fn add_scaled(&mut self, other: &Self, s: f64) {
        self.f.add_scaled(&other.f, s);
        self.df.add_scaled(&other.df, s);
    }

    fn apply(&self, rule: Rule) -> Self {
        let d1 = self.derivative(rule);
        let mut out = d1.derivative(rule);
        match rule {
            Rule::Cylindrical { alpha2, .. } => {
                out.add_scaled(&d1.shifted(-1, 0, 1.0), 1.0);
                out.add_scaled(&self.shifted(-2, 0, 1.0), -alpha2);
            }
            Rule::Spherical { alpha_pair, .. } => {
                out.add_scaled(&d1.shifted(-1, 0, 1.0), 2.0);
                out.add_scaled(&self.shifted(-2, 0, 1.0), -alpha_pair);
            }
            Rule::Legendre { m2, .. } => {
                out = out.shifted(0, -1, 1.0);
                out.add_scaled(&d1.shifted(1, 0, 1.0), -2.0);
                out.add_scaled(&self.shifted(0, 1, 1.0), -m2);
                out.f = out.f.canonicalize();
                out.df = out.df.canonicalize();
            }
        }
        out
    }
}

/// Successive operator powers `𝒟^0, 𝒟^1, …, 𝒟^max_power` of one factor.
pub(crate) struct AxisPowers {
    family: Family,
    index: FactorIndex,
    k: f64,
    powers: Vec<AxisExpansion>,
}

impl AxisPowers {
    pub(crate) fn new(family: Family, index: FactorIndex, k: f64, max_power: u32) -> Result<Self> {
        let rule = Rule::new(family, index, k)?;
        let mut powers = vec![AxisExpansion::identity()];
        for _ in 0..max_power {
            let next = powers.last().expect("non-empty").apply(rule);
            powers.push(next);
        }
        Ok(AxisPowers { family, index, k, powers })
    }

    #[cfg(test)]
    pub(crate) fn power(&self, m: u32) -> &AxisExpansion {
        &self.powers[m as usize]
    }

    /// Values of `𝒟^m [F(k·)](x)` for every stored power.
    pub(crate) fn evaluate_all(&self, x: f64) -> Result<Vec<f64>> {
        let e = eval_scalar(self.family, self.index, self.k * x)?;
        Ok(self.powers.iter().map(|p| p.f.eval(x) * e.value + p.df.eval(x) * e.first_derivative).collect())
    }
}
