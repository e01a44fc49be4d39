//! Tensor-product transforms in two and three dimensions: a separable
//! input transforms to the outer product of one-dimensional spectra.

use hankel_nd::bessel::Order;
use hankel_nd::hankel::NDPlan;
use hankel_nd::tensor::SampledField;

fn main() -> hankel_nd::Result<()> {
    let plan = NDPlan::build(&[Order::new(0.0)?, Order::new(0.0)?], 128, 12.0)?;
    let field = SampledField::from_fn(plan.sample_grid()?, |p| (-0.5 * (p[0] * p[0] + p[1] * p[1])).exp())?;
    let spectrum = plan.forward_nd(&field)?;
    let mut worst = 0.0_f64;
    for (k, v) in spectrum.rows() {
        let k2 = k[0] * k[0] + k[1] * k[1];
        if k2 <= 36.0 {
            let exact = (-0.5 * k2).exp();
            worst = worst.max(((v - exact) / exact).abs());
        }
    }
    println!("2-D Gaussian: max relative error on k1² + k2² ≤ 36: {worst:e}");

    let orders = [Order::new(0.0)?, Order::new(1.0)?, Order::new(2.0)?];
    let plan = NDPlan::build(&orders, 24, 6.0)?;
    let f = |p: &[f64]| (-p[0] * p[0]).exp() * p[1] * (-p[1] * p[1]).exp() * p[2] * p[2] * (-p[2] * p[2]).exp();
    let field = SampledField::from_fn(plan.sample_grid()?, f)?;
    let a = plan.forward_nd(&field)?;
    let b = plan.forward_nd_in_order(&field, &[2, 0, 1])?;
    let diff = (a.values() - b.values()).iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    println!("3-D: axis order changes the spectrum by at most {diff:e}");
    let back = plan.inverse_nd(&a)?;
    let err = (back.values() - field.values()).iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    println!("3-D round trip error: {err:e}");
    Ok(())
}
