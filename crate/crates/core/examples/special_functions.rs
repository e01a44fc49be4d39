//! Scalar special functions: J, Y, spherical j and y, associated Legendre,
//! and the positive zeros of J.

use hankel_nd::bessel::{
    assoc_legendre, bessel_j, bessel_y, bessel_zeros, spherical_j, spherical_y, LegendreIndex, Order,
};

fn main() -> hankel_nd::Result<()> {
    println!("{:>5} {:>8} {:>22} {:>22}", "nu", "x", "J_nu(x)", "Y_nu(x)");
    for nu in [0.0, 0.5, 1.0, 2.0, 3.7] {
        let o = Order::new(nu)?;
        for x in [0.5, 2.0, 10.0, 60.0] {
            println!("{nu:>5} {x:>8} {:>22.15e} {:>22.15e}", bessel_j(o, x)?.value, bessel_y(o, x)?.value);
        }
    }

    let o = Order::new(1.0)?;
    let j1 = spherical_j(o, 3.0)?;
    let y1 = spherical_y(o, 3.0)?;
    println!("\nj_1(3) = {:.15} (derivatives {:.15}, {:.15})", j1.value, j1.first_derivative, j1.second_derivative);
    println!("y_1(3) = {:.15}", y1.value);

    for (l, m) in [(2, 0), (2, 1), (3, 2)] {
        let p = assoc_legendre(LegendreIndex::new(l, m)?, 0.3)?;
        println!("P_{l}^{m}(0.3) = {:.15}", p.value);
    }

    for nu in [0.0, 1.0, 2.5] {
        println!("zeros of J_{nu}: {:?}", bessel_zeros(Order::new(nu)?, 5)?);
    }
    Ok(())
}
