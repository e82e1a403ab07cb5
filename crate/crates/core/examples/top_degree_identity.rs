//! Both sides of the top-degree identity for α_s at random points of
//! complex space, off and on the level set.

use brieskorn_lab::brieskorn::{sample_level_set, Exponents, LevelSpec};
use brieskorn_lab::contact::{lemma44_ratio, omega_value};
use brieskorn_lab::exterior::{CPoint, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = Exponents::parse("2,3,4")?;
    println!("exponents {e}, Omega = {}", omega_value(&e));

    let mut rng = ChaCha20Rng::seed_from_u64(7);
    for _ in 0..3 {
        let z = CPoint((0..e.len()).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect());
        let v = lemma44_ratio(&e, 0.5, &z)?;
        match v.ratio {
            Some(r) => println!("off level: lhs = {:.6}  |ratio - 1| = {:.2e}", v.lhs, (r - 1.0).norm()),
            None => println!("off level: bracket vanishes"),
        }
    }

    let s = 0.5;
    for z in sample_level_set(&LevelSpec::interpolated(e.clone(), s)?, 3, 42)? {
        let v = lemma44_ratio(&e, s, &z)?;
        if let Some(r) = v.ratio_on_manifold {
            println!("on level:  lhs = {:.6}  |ratio - 1| = {:.2e}", v.lhs, (r - 1.0).norm());
        }
    }
    Ok(())
}
