//! Reduced homology of joins of finite sets and the map on top homology
//! induced by cyclic rotation, compared with the monodromy matrix.

use brieskorn_lab::monodromy::{
    char_poly, compare_char_polys, monodromy_matrix, reduced_homology_ranks, rotation_induced_map, JoinComplex,
    SIMPLEX_BUDGET,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for parts in [vec![2, 2, 2], vec![3, 2], vec![3, 3], vec![2, 3, 5]] {
        let j = JoinComplex::new(parts.clone())?;
        let h = reduced_homology_ranks(&j, SIMPLEX_BUDGET)?;
        let rot = rotation_induced_map(&j, None, SIMPLEX_BUDGET)?;
        let psi = monodromy_matrix(&parts)?.psi;
        let rel = compare_char_polys(&char_poly(&rot)?, &char_poly(&psi)?);
        println!("{parts:?}: ranks {:?}, torsion free {}, rotation vs Psi: {rel:?}", h.ranks, h.torsion_free());
    }
    Ok(())
}
