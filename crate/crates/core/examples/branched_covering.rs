//! Projection of Σ(a) to the sphere forgetting z_0: lifts of one point, and
//! the lifted phase compared with the downstairs phase.

use brieskorn_lab::brieskorn::{f_eval, sample_manifold, Exponents};
use brieskorn_lab::exterior::CPoint;
use brieskorn_lab::openbook::{fibers_over, pi0, sample_lifts, theta_tilde_power_residual, CoveringSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = CoveringSpec::new(Exponents::parse("3,2,3")?);
    let book = spec.open_book()?;
    let w = book.sphere();
    let base = sample_manifold(&w, 1, 42)?.points.remove(0);

    let lifts = fibers_over(&spec, &base)?;
    println!("{} lifts over one point (a_0 = {})", lifts.len(), spec.a0());
    for z in &lifts {
        let back = direction_gap(&pi0(z), &base);
        println!("  |f(z)| = {:.2e}  direction gap to w = {back:.2e}", f_eval(&spec.exponents, z).norm());
    }

    let samples = sample_lifts(&spec, 200, 42)?;
    println!("max |theta~^a0 - theta| = {:.2e}", theta_tilde_power_residual(&spec, &samples)?);
    Ok(())
}

fn direction_gap(a: &CPoint, b: &CPoint) -> f64 {
    let na: f64 = a.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let nb: f64 = b.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    a.0.iter().zip(&b.0).map(|(x, y)| (x / na - y / nb).norm_sqr()).sum::<f64>().sqrt()
}
