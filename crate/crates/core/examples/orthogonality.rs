//! Truncated and Cesàro-averaged cross integrals `∫₀^R J_ν(ur)J_ν(vr) r dr`
//! for growing R, and the derivative property on a set of profiles.

use hankel_nd::bessel::Order;
use hankel_nd::hankel::{build_plan, verify_derivative_property, verify_orthogonality, Profile};
use hankel_nd::tensor::Family;

fn main() -> hankel_nd::Result<()> {
    let o = Order::new(0.0)?;
    for family in [Family::BesselFirst, Family::SphericalFirst] {
        let (u, v) = if family == Family::BesselFirst { (1.0, 3.0) } else { (1.0, 2.0) };
        println!("{} u = {u}, v = {v}", family.cli_name());
        for radius in [50.0, 100.0, 200.0, 400.0] {
            let e = verify_orthogonality(family, o, u, v, radius, 4000)?;
            println!("  R = {radius:>5}: truncated {:>12.4e}, Cesàro {:>12.4e}", e.truncated, e.cesaro);
        }
    }

    for nu in [0.0, 1.0, 2.0] {
        let plan = build_plan(Order::new(nu)?, 128, 10.0)?;
        for profile in Profile::suite() {
            let f: Vec<f64> = plan.sample_points().iter().map(|&r| profile.value(nu, r)).collect();
            let d: Vec<f64> = plan.sample_points().iter().map(|&r| profile.operator(nu, r)).collect();
            let rep = verify_derivative_property(&plan, &f, &d, None)?;
            println!(
                "nu = {nu}, {:<16} error {:.2e} over {} modes (tail {:.1e})",
                profile.name(),
                rep.max_relative_error,
                rep.resolved_modes,
                rep.tail
            );
        }
    }
    Ok(())
}
