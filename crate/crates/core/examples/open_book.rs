//! Milnor open book on the sphere: Reeb flow shifts pages by a constant and
//! dβ is symplectic on pages.

use brieskorn_lab::brieskorn::Exponents;
use brieskorn_lab::exterior::{CPoint, C64};
use brieskorn_lab::openbook::{
    page_symplectic_check, reeb_checks, reeb_flow, reeb_page_shift, sample_off_binding, theta, OpenBookSpec,
    PAGE_THRESHOLD,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = OpenBookSpec::new(Exponents::parse("2,3")?);
    let samples = sample_off_binding(&spec, 200, 42)?;

    let z = &samples[0];
    for t in [0.0, 0.25, 1.0] {
        let w = reeb_flow(&spec, z, t);
        println!("t = {t:<5} theta = {:.6}  |w| = {:.12}  |theta(w) - e^{{it}} theta(z)| = {:.1e}", theta(&spec, &w)?, norm(&w), reeb_page_shift(&spec, z, t)?);
    }

    let reeb = reeb_checks(&spec, &samples, &[0.1, 0.5, 1.0, 2.0])?;
    println!("reeb checks pass = {}", reeb.pass);
    let pages = page_symplectic_check(&spec, &samples, PAGE_THRESHOLD)?;
    println!("pages symplectic: pass = {}, min |top power| = {:?}", pages.pass, pages.min_abs_value);
    Ok(())
}

fn norm(z: &CPoint) -> f64 {
    z.0.iter().map(C64::norm_sqr).sum::<f64>().sqrt()
}
