//! Associated Legendre functions `P_l^m` with the Condon–Shortley phase,
//! so that `P_1^1(x) = −√(1−x²)`.

use super::{check_arg, EvalResult, LegendreIndex};
use crate::error::{domain, Result};

/// `P_l^m(x)` for `x ∈ [−1, 1]` with derivatives.
///
/// At `x = ±1` derivatives are exact for `m = 0`; for `m > 0` they are not
/// generally finite there and are returned as NaN.
pub fn assoc_legendre(index: LegendreIndex, x: f64) -> Result<EvalResult> {
    check_arg(x, "assoc_legendre")?;
    if x.abs() > 1.0 {
        return Err(domain(format!("assoc_legendre: |x| must be <= 1, got {x}")));
    }
    let l = index.degree();
    let m = index.order();
    let (p, p_lower) = values(l, m, x);

    if x.abs() == 1.0 {
        if m > 0 {
            return Ok(EvalResult::new(0.0, f64::NAN, f64::NAN));
        }
        let lf = l as f64;
        let sign = |k: u32| if x < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
        let first = sign(l + 1) * lf * (lf + 1.0) / 2.0;
        let second = sign(l) * (lf - 1.0) * lf * (lf + 1.0) * (lf + 2.0) / 8.0;
        return Ok(EvalResult::new(p, first, second));
    }

    let lf = l as f64;
    let mf = m as f64;
    let one_minus = (1.0 - x) * (1.0 + x);
    let first = ((lf + mf) * p_lower - lf * x * p) / one_minus;
    let second = (2.0 * x * first - (lf * (lf + 1.0) - mf * mf / one_minus) * p) / one_minus;
    Ok(EvalResult::new(p, first, second))
}

/// `(P_l^m(x), P_{l−1}^m(x))` by upward recurrence in degree; the second is
/// zero when `l = m`.
fn values(l: u32, m: u32, x: f64) -> (f64, f64) {
    let mut pmm = 1.0;
    if m > 0 {
        let somx2 = ((1.0 - x) * (1.0 + x)).sqrt();
        let mut fact = 1.0;
        for _ in 0..m {
            pmm *= -fact * somx2;
            fact += 2.0;
        }
    }
    if l == m {
        return (pmm, 0.0);
    }
    let mf = m as f64;
    let mut prev = pmm;
    let mut cur = x * (2.0 * mf + 1.0) * pmm;
    for ll in (m + 2)..=l {
        let llf = ll as f64;
        let next = (x * (2.0 * llf - 1.0) * cur - (llf + mf - 1.0) * prev) / (llf - mf);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}
