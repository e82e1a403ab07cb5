//! Binding components of the open book for two exponents and the
//! integrals of the weighted form along them.

use brieskorn_lab::exterior::DiagonalOneForm;
use brieskorn_lab::openbook::{binding_components, binding_orientation_integrals, binding_report, QUADRATURE_NODES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (a0, a1) in [(2, 2), (3, 2), (4, 6)] {
        let loops = binding_components(a0, a1)?;
        let form = DiagonalOneForm::weighted(&[a0, a1]);
        let ints = binding_orientation_integrals(a0, a1, &form, QUADRATURE_NODES)?;
        println!("({a0},{a1}): {} component(s)", loops.len());
        for (l, v) in loops.iter().zip(&ints) {
            println!("  index {} radii ({:.6}, {:.6}) period {:.6}  integral / pi = {:.9}", l.index, l.r0, l.r1, l.period, v / std::f64::consts::PI);
        }
        println!("  report pass = {}", binding_report(a0, a1, QUADRATURE_NODES)?.pass);
    }
    Ok(())
}
