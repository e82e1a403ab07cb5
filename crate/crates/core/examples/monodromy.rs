//! Exact monodromy matrices: Milnor number, determinant, order and
//! characteristic polynomial.

use brieskorn_lab::monodromy::{char_poly, lcm, matrix_order_check, monodromy_matrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for tail in [vec![3, 2], vec![2, 2, 2], vec![2, 3, 5], vec![3, 4]] {
        let m = monodromy_matrix(&tail)?;
        let order = matrix_order_check(&m.psi, lcm(&tail) * 2)?;
        println!("{tail:?}: mu = {}, det = {}, order = {order:?}", m.mu, m.psi.det()?);
        println!("  char poly {}", char_poly(&m.psi)?);
        if m.mu <= 4 {
            println!("  Psi = {}", m.psi);
        }
    }
    Ok(())
}
