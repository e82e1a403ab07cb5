//! Sign of the α₋ bracket on Σ(a) for a few tuples and constants.

use brieskorn_lab::brieskorn::Exponents;
use brieskorn_lab::contact::{alpha_minus_search, alpha_minus_witnesses};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = ["2,2,2", "3,2,2", "2,3,4", "3,4,5"]
        .iter()
        .map(|t| Exponents::parse(t))
        .collect::<Result<Vec<_>, _>>()?;
    let cases = alpha_minus_search(&grid, &[2.0, 10.0, 100.0], 300, 42)?;
    for c in &cases {
        println!(
            "{:?} C = {:<5} bracket in [{:.4}, {:.4}]  uniform = {}  direct min |value| = {:.4e}",
            c.exponents, c.c, c.min, c.max, c.uniform_sign, c.direct_min_abs
        );
    }
    println!("{} case(s) with a sign change", alpha_minus_witnesses(&cases).len());
    Ok(())
}
