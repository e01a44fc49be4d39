//! Separable Helmholtz problems `(Σ_j 𝒟_j + c) u = f` solved in transform
//! space, with a finite-difference residual check.

use hankel_nd::bessel::{bessel_j, Order};
use hankel_nd::hankel::{helmholtz_residual, solve_helmholtz_separable, NDPlan};
use hankel_nd::tensor::{SampledField, TensorGrid};

fn main() -> hankel_nd::Result<()> {
    let c = -1.0;
    let o = Order::new(0.0)?;

    let plan = NDPlan::build(&[o], 128, 10.0)?;
    let k = plan.plan(0).frequency_points()[5];
    let mode = SampledField::from_fn(plan.sample_grid()?, |p| bessel_j(o, k * p[0]).map_or(f64::NAN, |e| e.value))?;
    let rhs = SampledField::new(mode.grid().clone(), mode.values() * (c - k * k))?;
    let u = solve_helmholtz_separable(&plan, &rhs, c)?;
    let err = (u.values() - mode.values()).iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    println!("basis mode k = {k:.6}: recovered within {err:e}");

    let plan = NDPlan::build(&[o], 256, 20.0)?;
    let rhs = SampledField::from_fn(plan.sample_grid()?, |p| (-p[0] * p[0]).exp())?;
    let u = solve_helmholtz_separable(&plan, &rhs, c)?;
    let h = 0.01;
    let check = TensorGrid::uniform(&[h], h, &[800])?;
    let res = helmholtz_residual(&plan, &rhs, c, &u, &check, h)?;
    println!("Gaussian right-hand side: u(r_1) = {:.10}, relative residual {:e}", u.values()[[0]], res.relative);

    let plan = NDPlan::build(&[o, Order::new(1.0)?], 64, 10.0)?;
    let rhs = SampledField::from_fn(plan.sample_grid()?, |p| (-p[0] * p[0]).exp() * p[1] * (-p[1] * p[1]).exp())?;
    let u = solve_helmholtz_separable(&plan, &rhs, -2.0)?;
    println!("2-D solve: max |u| = {:.10}", u.max_abs());

    let resonant = plan.plan(0).frequency_points()[0].powi(2) + plan.plan(1).frequency_points()[0].powi(2);
    match solve_helmholtz_separable(&plan, &rhs, resonant) {
        Err(e) => println!("c = {resonant:.6}: {e}"),
        Ok(_) => println!("c = {resonant:.6}: solved"),
    }
    Ok(())
}
