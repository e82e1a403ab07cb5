//! Contact check of the standard form on spheres and of α_s on Σ_s(3,2,2).

use brieskorn_lab::brieskorn::{sample_manifold, Exponents, LevelSpec, Manifold};
use brieskorn_lab::contact::{verify_contact, CONTACT_THRESHOLD};
use brieskorn_lab::exterior::DiagonalOneForm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for m in [2, 3] {
        let sphere = Manifold::Sphere(m);
        let samples = sample_manifold(&sphere, 200, 42)?.points;
        let r = verify_contact(&DiagonalOneForm::standard(m), &sphere, &samples, CONTACT_THRESHOLD)?;
        println!(
            "{:<6} min |value| = {:.6}  max residual = {:.2e}  pass = {}",
            sphere.label(),
            r.min_abs_value.unwrap_or(f64::NAN),
            r.max_residual.unwrap_or(f64::NAN),
            r.pass
        );
    }

    let e = Exponents::parse("3,2,2")?;
    for s in [0.25, 0.5, 1.0] {
        let level = Manifold::Level(LevelSpec::interpolated(e.clone(), s)?);
        let samples = sample_manifold(&level, 200, 42)?.points;
        let r = verify_contact(&DiagonalOneForm::alpha_s(e.as_slice(), s), &level, &samples, CONTACT_THRESHOLD)?;
        println!("{:<16} min |value| = {:.6}  pass = {}", level.label(), r.min_abs_value.unwrap_or(f64::NAN), r.pass);
    }
    Ok(())
}
