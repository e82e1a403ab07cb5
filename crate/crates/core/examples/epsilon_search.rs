//! Halving search for ε making α_0 + εγ contact on the cylinder model.

use brieskorn_lab::brieskorn::{sample_level_set, Exponents, LevelSpec};
use brieskorn_lab::contact::{branch_points, epsilon_search, CONTACT_THRESHOLD};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["2,2,2", "3,2,3"] {
        let e = Exponents::parse(text)?;
        let samples = sample_level_set(&LevelSpec::cylinder(e.clone()), 300, 42)?;
        let branch = branch_points(&e, 50, 42)?;
        let s = epsilon_search(&e, &samples, &branch, 1.0, CONTACT_THRESHOLD)?;
        println!("{e}: eps* = {:?}, monotone = {}", s.eps_star, s.monotone);
        for (eps, min_abs, pass) in &s.trajectory {
            println!("  eps = {eps:<10} min |value| = {min_abs:.6e}  {}", if *pass { "ok" } else { "fails" });
        }
    }
    Ok(())
}
