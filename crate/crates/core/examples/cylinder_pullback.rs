//! The cylinder model: α_0 as a pullback of the tail form, and the
//! s-derivative of the pulled-back family compared with γ and with the
//! closed form.

use brieskorn_lab::brieskorn::{sample_level_set, Exponents, LevelSpec};
use brieskorn_lab::contact::{pullback_check, s_derivative_convergence, s_derivative_samples, S_DERIVATIVE_STEP};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = Exponents::parse("3,2,2")?;
    let samples = sample_level_set(&LevelSpec::cylinder(e.clone()), 100, 42)?;

    let pb = pullback_check(&e, &samples, 42)?;
    println!("pullback: pass = {}", pb.pass);
    for r in &pb.results {
        println!("  {} = {}", r.name, r.value);
    }

    let ds = s_derivative_samples(&e, &samples[..5], S_DERIVATIVE_STEP, 42)?;
    println!("finite difference    closed form    gamma(v)");
    for d in &ds {
        println!("{:>17.8} {:>14.8} {:>11.8}", d.estimate, d.closed_form, d.gamma);
    }

    let (err_h, err_half, slope) = s_derivative_convergence(&e, &samples, 1e-3, 42)?;
    println!("error at h = {err_h:.3e}, at h/2 = {err_half:.3e}, observed order {slope:.3}");
    Ok(())
}
