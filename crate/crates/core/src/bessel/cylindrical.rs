//! Cylindrical Bessel functions `J_ν`, `Y_ν` of real order.
//!
//! Three regimes:
//!
//! - `x < 2`: Temme's series for `Y_μ`, `Y_{μ+1}` with `|μ| ≤ 1/2`, combined
//!   with the continued fraction for `J_ν'/J_ν` and the Wronskian.
//! - `2 ≤ x < 50 + ν²`: the same continued fraction for `J_ν'/J_ν` and
//!   Steed's complex continued fraction for `(J_μ' + i Y_μ')/(J_μ + i Y_μ)`.
//! - `x ≥ 50 + ν²`: Hankel's asymptotic expansion, derivatives through
//!   `C_ν' = (ν/x) C_ν − C_{ν+1}`.
//!
//! `Y_ν` for `ν > |μ|` comes from upward recurrence, which is stable for the
//! second kind.

use super::{check_arg, EvalResult, Order};
use crate::error::{domain, Error, Result};
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;
const FPMIN: f64 = f64::MIN_POSITIVE / f64::EPSILON;
const MAX_ITER: usize = 200_000;
const TEMME_LIMIT: f64 = 2.0;
const SMALL_X: f64 = 1e-6;
const RESCALE: f64 = 1e250;
const MAX_ASYMPTOTIC_TERMS: usize = 100;

/// Taylor coefficients `c_k` of `1/Γ(z) = Σ_{k≥1} c_k z^k`, `k = 1..=28`.
#[allow(clippy::excessive_precision)]
const RGAMMA_TAYLOR: [f64; 28] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
    1.412_380_655_318_031_781_6e-18,
];

/// `J_ν`, `J_ν'`, `Y_ν`, `Y_ν'` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Jy {
    pub j: f64,
    pub jp: f64,
    pub y: f64,
    pub yp: f64,
}

/// Cylindrical Bessel function of the first kind with derivatives.
///
/// At `x = 0` the one-sided limits are returned; derivatives that diverge
/// there (`0 < ν < 1` for the first, `0 < ν < 2`, `ν ≠ 1` for the second)
/// are reported as signed infinities.
pub fn bessel_j(order: Order, x: f64) -> Result<EvalResult> {
    check_arg(x, "bessel_j")?;
    if x < 0.0 {
        return Err(domain(format!("bessel_j: x must be non-negative, got {x}")));
    }
    let nu = order.nu();
    if x == 0.0 {
        return Ok(first_kind_at_origin(nu));
    }
    if x < SMALL_X {
        return Ok(first_kind_small(nu, x));
    }
    let r = jy(nu, x)?;
    Ok(EvalResult::new(r.j, r.jp, second_derivative(nu, x, r.j, r.jp)))
}

/// Cylindrical Bessel function of the second kind with derivatives, `x > 0`.
pub fn bessel_y(order: Order, x: f64) -> Result<EvalResult> {
    check_arg(x, "bessel_y")?;
    if x <= 0.0 {
        return Err(domain(format!("bessel_y: x must be positive, got {x}")));
    }
    let nu = order.nu();
    let r = jy(nu, x)?;
    if !r.y.is_finite() {
        return Err(Error::Overflow(format!("Y_{nu}({x}) overflows")));
    }
    Ok(EvalResult::new(r.y, r.yp, second_derivative(nu, x, r.y, r.yp)))
}

#[inline]
fn second_derivative(nu: f64, x: f64, u: f64, up: f64) -> f64 {
    -up / x - (1.0 - (nu / x) * (nu / x)) * u
}

fn first_kind_at_origin(nu: f64) -> EvalResult {
    let value = if nu == 0.0 { 1.0 } else { 0.0 };
    let first = if nu == 0.0 || nu > 1.0 {
        0.0
    } else if nu == 1.0 {
        0.5
    } else {
        f64::INFINITY
    };
    let second = if nu == 0.0 {
        -0.5
    } else if nu == 1.0 || nu > 2.0 {
        0.0
    } else if nu == 2.0 {
        0.25
    } else if nu < 1.0 {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    };
    EvalResult::new(value, first, second)
}

/// Two leading series terms; truncation error is `O(x⁴)` relative.
fn first_kind_small(nu: f64, x: f64) -> EvalResult {
    let h = 0.5 * x;
    let h2 = h * h;
    let lead = h.powf(nu) * recip_gamma_one_plus(nu);
    let value = lead * (1.0 - h2 / (nu + 1.0));
    let first = lead / x * (nu - (nu + 2.0) * h2 / (nu + 1.0));
    EvalResult::new(value, first, second_derivative(nu, x, value, first))
}

/// `1/Γ(1+ν)` for `ν ≥ 0`.
pub(crate) fn recip_gamma_one_plus(nu: f64) -> f64 {
    let n = (nu + 0.5).floor();
    let mu = nu - n;
    let (_, _, gampl, _) = temme_gammas(mu);
    let mut out = gampl;
    let mut i = 1.0;
    while i <= n {
        out /= mu + i;
        i += 1.0;
    }
    out
}

/// `(Γ₁, Γ₂, 1/Γ(1+μ), 1/Γ(1−μ))` for `|μ| ≤ 1/2`, where
/// `Γ₁ = (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ)` and `Γ₂ = (1/Γ(1−μ) + 1/Γ(1+μ))/2`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mu2 = mu * mu;
    let mut odd = 0.0;
    let mut even = 0.0;
    for pair in RGAMMA_TAYLOR.chunks(2).rev() {
        odd = odd * mu2 + pair[0];
        even = even * mu2 + pair[1];
    }
    let gam1 = -even;
    let gam2 = odd;
    (gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1)
}

pub(crate) fn jy(nu: f64, x: f64) -> Result<Jy> {
    debug_assert!(x > 0.0 && nu >= 0.0);
    if x >= 50.0 + nu * nu {
        if let Some(r) = hankel_asymptotic(nu, x) {
            return Ok(r);
        }
    }
    temme_steed(nu, x)
}

fn hankel_asymptotic(nu: f64, x: f64) -> Option<Jy> {
    let (j0, y0) = hankel_pair(nu, x)?;
    let (j1, y1) = hankel_pair(nu + 1.0, x)?;
    let ratio = nu / x;
    Some(Jy { j: j0, jp: ratio * j0 - j1, y: y0, yp: ratio * y0 - y1 })
}

/// `(J_ν(x), Y_ν(x))` from the Hankel expansion, `None` if it stops
/// converging before reaching machine precision.
fn hankel_pair(nu: f64, x: f64) -> Option<(f64, f64)> {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut prev = f64::INFINITY;
    let mut converged = false;
    for k in 1..=MAX_ASYMPTOTIC_TERMS {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        let size = term.abs();
        if size <= 0.5 * EPS * (p.abs() + q.abs()) {
            converged = true;
            break;
        }
        if size > prev {
            return None;
        }
        prev = size;
    }
    if !converged {
        return None;
    }
    // cos/sin of x − (ν/2 + 1/4)π without forming the shifted argument
    let (sp, cp) = ((0.5 * nu + 0.25) * PI).sin_cos();
    let (sx, cx) = x.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    let amp = (2.0 / (PI * x)).sqrt();
    Some((amp * (p * cos_chi - q * sin_chi), amp * (p * sin_chi + q * cos_chi)))
}

fn temme_steed(xnu: f64, x: f64) -> Result<Jy> {
    let nl = if x < TEMME_LIMIT { (xnu + 0.5).floor() as usize } else { (xnu - x + 1.5).max(0.0).floor() as usize };
    let xmu = xnu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // continued fraction for J_ν'/J_ν; isign tracks the sign of J_ν
    let mut isign = 1.0;
    let mut h = (xnu * xi).max(FPMIN);
    let mut b = xi2 * xnu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence(format!("J ratio continued fraction at nu={xnu}, x={x}")));
    }

    // downward recurrence from ν to μ with unnormalised values
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut rjp1 = rjpl;
    let mut fact = xnu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > RESCALE {
            let s = 1.0 / RESCALE;
            rjl *= s;
            rjpl *= s;
            rjl1 *= s;
            rjp1 *= s;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < TEMME_LIMIT {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let dl = -x2.ln();
        let e = xmu * dl;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * dl);
        let ee = e.exp();
        let mut p = ee / (gampl * PI);
        let mut q = 1.0 / (ee * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut cc = 1.0;
        let dd = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..MAX_ITER {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * (ff + r * q);
            sum += del;
            let del1 = cc * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence(format!("Temme series at nu={xnu}, x={x}")));
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut converged = false;
        for i in 2..MAX_ITER {
            a += (2 * (i - 1)) as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence(format!("Steed continued fraction at nu={xnu}, x={x}")));
        }
        let gam = (p - f) / q;
        rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let scale = rjmu / rjl;
    let j = rjl1 * scale;
    let jp = rjp1 * scale;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    Ok(Jy { j, jp, y: rymu, yp: xnu * xi * rymu - ry1 })
}
