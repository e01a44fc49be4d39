//! One-dimensional discrete Hankel transform of a Gaussian, compared with
//! its closed form, plus the round trip and the involution defect.

use hankel_nd::bessel::Order;
use hankel_nd::hankel::{build_plan, discrete_orthogonality_defect};

fn main() -> hankel_nd::Result<()> {
    let plan = build_plan(Order::new(0.0)?, 256, 12.0)?;
    println!("N = {}, R = {}, k_max = {:.4}", plan.n_points(), plan.radius(), plan.max_frequency());
    println!("|T·T − I| = {:e} (before correction {:e})", discrete_orthogonality_defect(&plan), plan.raw_defect());

    let samples: Vec<f64> = plan.sample_points().iter().map(|r| (-0.5 * r * r).exp()).collect();
    let spectrum = plan.forward(&samples)?;
    println!("{:>10} {:>22} {:>22}", "k", "transform", "exp(-k^2/2)");
    for (k, v) in plan.frequency_points().iter().zip(&spectrum).step_by(16).take_while(|(k, _)| **k <= 6.0) {
        println!("{k:>10.5} {v:>22.15e} {:>22.15e}", (-0.5 * k * k).exp());
    }

    let back = plan.inverse(&spectrum)?;
    let err = back.iter().zip(&samples).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("round-trip max error: {err:e}");
    Ok(())
}
