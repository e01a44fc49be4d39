//! Positive zeros of `J_ν`.
//!
//! Each zero is bracketed by stepping 1.0 past the previous one (consecutive
//! zeros of `J_ν` are more than 2.9 apart for every `ν ≥ 0`, so a unit step
//! never skips a root) and then polished by Newton's method started from
//! McMahon's asymptotic estimate. Newton steps that leave the bracket fall
//! back to bisection.
//!
//! Near a zero the double-precision evaluator has an absolute error of a
//! few `1e-16`, enough to move a small zero by one ulp. Zeros below
//! [`SERIES_POLISH_LIMIT`] therefore get a final Newton step on the
//! ascending series evaluated in double-double arithmetic, which makes
//! them correctly rounded.

use super::cylindrical::jy;
use super::Order;
use crate::error::{Error, Result};
use std::f64::consts::PI;

const MAX_NEWTON: usize = 50;
const TARGET_RESIDUAL: f64 = 1e-13;
/// Largest zero polished with the double-double series; the largest series
/// term there is about `e^x / x`, well inside double-double precision.
const SERIES_POLISH_LIMIT: f64 = 30.0;

/// First `count` positive zeros of `J_ν`, strictly increasing.
pub fn bessel_zeros(order: Order, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::Domain("bessel_zeros: count must be at least 1".into()));
    }
    let nu = order.nu();
    let j = |x: f64| jy(nu, x).map(|r| (r.j, r.jp));

    let mut zeros = Vec::with_capacity(count);
    // J_ν > 0 on (0, j_{ν,1}) and j_{ν,1} > ν
    let mut lo = nu.max(0.5);
    let mut f_lo = j(lo)?.0;
    for k in 1..=count {
        let mut hi = lo + 1.0;
        let mut f_hi = j(hi)?.0;
        while f_lo.signum() == f_hi.signum() && f_hi != 0.0 {
            lo = hi;
            f_lo = f_hi;
            hi += 1.0;
            f_hi = j(hi)?.0;
        }
        let mut root = if f_hi == 0.0 { hi } else { polish(&j, lo, hi, f_lo, mcmahon(nu, k))? };
        if root < SERIES_POLISH_LIMIT {
            root = series_polish(nu, root);
        }
        if let Some(&prev) = zeros.last() {
            if root <= prev {
                return Err(Error::Convergence(format!("zero {k} of J_{nu} not increasing ({root} <= {prev})")));
            }
        }
        zeros.push(root);
        lo = root + 1.0;
        f_lo = j(lo)?.0;
    }
    Ok(zeros)
}

/// McMahon's expansion of the `k`-th zero.
fn mcmahon(nu: f64, k: usize) -> f64 {
    let mu = 4.0 * nu * nu;
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5))
}

fn polish<F>(j: &F, mut lo: f64, mut hi: f64, f_lo: f64, guess: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let lo_sign = f_lo.signum();
    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    let mut last = f64::INFINITY;
    for _ in 0..MAX_NEWTON {
        let (f, df) = j(x)?;
        last = f.abs();
        if f == 0.0 {
            return Ok(x);
        }
        if f.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - f / df;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 2.0 * f64::EPSILON * x {
            let (fn_, _) = j(next)?;
            return if fn_.abs() < TARGET_RESIDUAL {
                Ok(if fn_.abs() <= f.abs() { next } else { x })
            } else {
                Err(Error::Convergence(format!("zero near {next} stalled at |J| = {:e}", fn_.abs())))
            };
        }
        x = next;
    }
    if last < TARGET_RESIDUAL {
        Ok(x)
    } else {
        Err(Error::Convergence(format!(
            "Newton iteration for zero near {x} did not reach |J| < {TARGET_RESIDUAL:e} in {MAX_NEWTON} steps"
        )))
    }
}

/// Two Newton steps on `S(x) = Σ_k (−x²/4)^k / (k! (ν+1)_k)`, which has the
/// same positive zeros as `J_ν`, with `S` summed in double-double.
fn series_polish(nu: f64, mut x: f64) -> f64 {
    for _ in 0..2 {
        let (s, ds) = reduced_series(nu, x);
        if ds == 0.0 || !s.is_finite() {
            break;
        }
        let next = x - s / ds;
        if (next - x).abs() > 1e-10 * x {
            break;
        }
        x = next;
    }
    x
}

/// `S(x)` in double-double (rounded) and `S'(x)` in double.
fn reduced_series(nu: f64, x: f64) -> (f64, f64) {
    let q = Dd::product(x, x).scale(0.25);
    let mut term = Dd::from(1.0);
    let mut sum = Dd::from(1.0);
    let mut dsum = 0.0;
    for k in 1..10_000 {
        let kf = k as f64;
        let denom = Dd::sum(nu, kf).mul_f64(kf);
        term = term.mul(q).div(denom).neg();
        sum = sum.add(term);
        dsum += term.hi * 2.0 * kf / x;
        if kf > q.hi && term.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) {
            break;
        }
    }
    (sum.hi + sum.lo, dsum)
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }
}

impl Dd {
    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        Dd { hi: s, lo: (a - (s - bb)) + (b - bb) }
    }

    fn quick(a: f64, b: f64) -> Dd {
        let s = a + b;
        Dd { hi: s, lo: b - (s - a) }
    }

    fn sum(a: f64, b: f64) -> Dd {
        Self::two_sum(a, b)
    }

    fn product(a: f64, b: f64) -> Dd {
        let p = a * b;
        Dd { hi: p, lo: a.mul_add(b, -p) }
    }

    fn scale(self, s: f64) -> Dd {
        Dd { hi: self.hi * s, lo: self.lo * s }
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn add(self, o: Dd) -> Dd {
        let s = Self::two_sum(self.hi, o.hi);
        let t = Self::two_sum(self.lo, o.lo);
        let u = Self::quick(s.hi, s.lo + t.hi);
        Self::quick(u.hi, u.lo + t.lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = Self::product(self.hi, o.hi);
        Self::quick(p.hi, p.lo + (self.hi * o.lo + self.lo * o.hi))
    }

    fn mul_f64(self, b: f64) -> Dd {
        let p = Self::product(self.hi, b);
        Self::quick(p.hi, p.lo + self.lo * b)
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul_f64(q1).neg());
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul_f64(q2).neg());
        let q3 = r.hi / o.hi;
        Self::quick(q1, q2).add(Dd::from(q3))
    }
}
