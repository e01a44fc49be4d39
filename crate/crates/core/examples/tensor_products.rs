//! Tensor-product functions `∏ F_j(k_j x_j)` at a point and on a grid.

use hankel_nd::io::write_csv;
use hankel_nd::tensor::{eval_on_grid, eval_product, Family, MultiOrder, TensorGrid};

fn main() -> hankel_nd::Result<()> {
    let order = MultiOrder::bessel(&[0.0, 1.0])?;
    let v = eval_product(&order, &[1.0, 2.0], Some(&[1.0, 0.5]))?;
    println!("J_0(1)·J_1(1) = {v}");

    let spherical = MultiOrder::new(Family::SphericalFirst, &[0.0, 2.0, 1.0])?;
    println!("j_0(1)·j_2(2)·j_1(3) = {}", eval_product(&spherical, &[1.0, 2.0, 3.0], None)?);

    let legendre = MultiOrder::legendre(&[(2, 1), (3, 0)])?;
    println!("P_2^1(0.2)·P_3^0(-0.4) = {}", eval_product(&legendre, &[0.2, -0.4], None)?);

    // a 4 x 3 grid, written as CSV rows x_1,x_2,value
    let grid = TensorGrid::uniform(&[0.5, 0.5], 1.0, &[4, 3])?;
    let field = eval_on_grid(&order, &grid, None)?;
    write_csv(&field, std::io::stdout().lock())?;
    Ok(())
}
