//! The Bessel operator `𝒟_ν = (1/x)(x u')' − (ν²/x²)u` and its identities:
//! eigenrelation, pair equations, iteration and polynomials of operators.

use hankel_nd::bessel::Order;
use hankel_nd::operators::{
    apply_axis_analytic, apply_iterated, apply_polynomial, apply_sum, residual, AxisOperator, Equation,
    OperatorPolynomial,
};
use hankel_nd::tensor::{eval_product, MultiOrder, TensorGrid};

fn main() -> hankel_nd::Result<()> {
    let o = MultiOrder::bessel(&[1.0])?;
    let op = AxisOperator::for_axis(&o, 0)?;
    for k in [0.5, 2.0, 5.0] {
        let lhs = apply_axis_analytic(&op, &o, &[1.3], Some(&[k]))?;
        let j = eval_product(&o, &[1.3], Some(&[k]))?;
        println!("k = {k}: 𝒟J = {lhs:.15}, −k²J = {:.15}", -k * k * j);
    }

    let pair = MultiOrder::bessel(&[0.0, 2.0])?;
    let sum = apply_sum(&pair, &[1.0, 3.0], None)?;
    println!("(𝒟_0 + 𝒟_2) J_0 J_2 = {sum}, −2 J_0 J_2 = {}", -2.0 * eval_product(&pair, &[1.0, 3.0], None)?);

    let nu = Order::new(1.0)?;
    for m in 0..=4 {
        println!("𝒟^{m} J_1(2r) at r = 1.5: {}", apply_iterated(nu, 2.0, 1.5, m)?);
    }

    // P(t1, t2) = t1 t2 + 3 t1 acts as P(−k1², −k2²)
    let p = OperatorPolynomial::new(2, vec![(1.0, vec![1, 1]), (3.0, vec![1, 0])])?;
    let o01 = MultiOrder::bessel(&[0.0, 1.0])?;
    let lhs = apply_polynomial(&p, &o01, Some(&[2.0, 3.0]), &[0.7, 1.1])?;
    let symbol = p.evaluate(&[-4.0, -9.0])?;
    println!(
        "P = {p}: operator {lhs}, symbol·product {}",
        symbol * eval_product(&o01, &[0.7, 1.1], Some(&[2.0, 3.0]))?
    );

    let axis: Vec<f64> = (1..=20).map(|i| 0.5 * i as f64).collect();
    let grid = TensorGrid::new(vec![axis.clone(), axis], vec![10.0, 10.0])?;
    let r = residual(Equation::CylindricalPair, &pair, &grid, None)?;
    println!("max residual of the cylindrical pair equation on a 20x20 grid: {:e}", r.max_abs());
    Ok(())
}
