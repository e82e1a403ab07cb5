//! The join of finite vertex sets `Ω_{a_1} * ⋯ * Ω_{a_n}` and its homology.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::snf::{integer_kernel, rank_and_torsion};
use super::IntMatrix;
use crate::error::{Error, Result};

pub const SIMPLEX_BUDGET: usize = 100_000;

/// A simplex as its vertices `(part, index)`, sorted by part.
pub type Simplex = Vec<(usize, u32)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinComplex {
    pub parts: Vec<u32>,
}

impl JoinComplex {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidInput(format!("join parts {parts:?} must be nonempty and positive")));
        }
        Ok(JoinComplex { parts })
    }

    /// Dimension of the top simplices.
    pub fn dim(&self) -> usize {
        self.parts.len() - 1
    }

    /// `Π(a_i + 1) − 1`.
    pub fn simplex_count(&self) -> usize {
        self.parts.iter().map(|&a| a as usize + 1).product::<usize>() - 1
    }

    pub fn check_budget(&self, budget: usize) -> Result<()> {
        let count = self.simplex_count();
        if count > budget {
            return Err(Error::BudgetExceeded { count, budget });
        }
        Ok(())
    }

    /// All `k`-simplices in lexicographic order of `(part, index)` lists.
    pub fn simplices(&self, k: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        if k < self.parts.len() {
            self.collect(0, k + 1, &mut Vec::with_capacity(k + 1), &mut out);
        }
        out
    }

    fn collect(&self, start: usize, left: usize, chosen: &mut Simplex, out: &mut Vec<Simplex>) {
        if left == 0 {
            out.push(chosen.clone());
            return;
        }
        for p in start..=self.parts.len() - left {
            for v in 0..self.parts[p] {
                chosen.push((p, v));
                self.collect(p + 1, left - 1, chosen, out);
                chosen.pop();
            }
        }
    }

    /// `∂_k : C_k → C_{k−1}`; for `k = 0` the augmentation `C_0 → ℤ`.
    pub fn boundary_matrix(&self, k: usize) -> Result<IntMatrix> {
        if k > self.dim() {
            return Err(Error::InvalidInput(format!("boundary degree {k} exceeds {}", self.dim())));
        }
        let cols = self.simplices(k);
        if k == 0 {
            let mut m = IntMatrix::zeros(1, cols.len());
            for j in 0..cols.len() {
                m.set(0, j, BigInt::one());
            }
            return Ok(m);
        }
        let rows = self.simplices(k - 1);
        let index: HashMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (j, s) in cols.iter().enumerate() {
            for drop in 0..s.len() {
                let face: Simplex = s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, v)| *v).collect();
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                m.set(index[&face], j, BigInt::from(sign));
            }
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyRanks {
    /// Reduced Betti numbers in degrees `0..=dim`.
    pub ranks: Vec<usize>,
    /// Torsion coefficients per degree, as decimal strings.
    pub torsion: Vec<Vec<String>>,
}

impl HomologyRanks {
    pub fn torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }
}

/// Reduced integral homology from Smith normal forms of the boundaries.
pub fn reduced_homology_ranks(j: &JoinComplex, budget: usize) -> Result<HomologyRanks> {
    j.check_budget(budget)?;
    let n = j.dim();
    let mut rank = Vec::with_capacity(n + 2);
    let mut tors = Vec::with_capacity(n + 2);
    for k in 0..=n {
        let (r, t) = rank_and_torsion(&j.boundary_matrix(k)?);
        rank.push(r);
        tors.push(t);
    }
    rank.push(0);
    tors.push(Vec::new());
    let ranks = (0..=n).map(|k| j.simplices(k).len() - rank[k] - rank[k + 1]).collect();
    let torsion = (0..=n).map(|k| tors[k + 1].iter().map(ToString::to_string).collect()).collect();
    Ok(HomologyRanks { ranks, torsion })
}

/// Integer basis of `H̃_dim(J) = ker ∂_dim`, as columns.
pub fn top_homology_basis(j: &JoinComplex, budget: usize) -> Result<IntMatrix> {
    j.check_budget(budget)?;
    Ok(integer_kernel(&j.boundary_matrix(j.dim())?))
}

/// Matrix of the chain map `(i, k) ↦ (i, k + shifts[i] mod a_i)` on the
/// basis of [`top_homology_basis`]: the unique `M` with `P K = K M`.
/// With `shifts = None` every part is rotated by one step.
pub fn rotation_induced_map(j: &JoinComplex, shifts: Option<&[u32]>, budget: usize) -> Result<IntMatrix> {
    let ones = vec![1; j.parts.len()];
    let shifts = shifts.unwrap_or(&ones);
    if shifts.len() != j.parts.len() {
        return Err(Error::LengthMismatch { expected: j.parts.len(), got: shifts.len() });
    }
    let basis = top_homology_basis(j, budget)?;
    let top = j.simplices(j.dim());
    let index: HashMap<&Simplex, usize> = top.iter().enumerate().map(|(i, s)| (s, i)).collect();
    // rotation keeps every vertex in its part, so the vertex order and
    // hence the orientation of each simplex is preserved
    let mut image = IntMatrix::zeros(basis.rows(), basis.cols());
    for (r, s) in top.iter().enumerate() {
        let moved: Simplex = s.iter().map(|&(p, v)| (p, (v + shifts[p]) % j.parts[p])).collect();
        let target = index[&moved];
        for c in 0..basis.cols() {
            image.set(target, c, basis.get(r, c).clone());
        }
    }
    solve_exact(&basis, &image)
}

/// Solves `K M = B` for `M` when `K` has full column rank and a solution
/// exists in integers.
fn solve_exact(k: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    let (rows, mu) = (k.rows(), k.cols());
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut a: Vec<Vec<BigRational>> =
        (0..rows).map(|i| k.row(i).iter().chain(b.row(i)).map(q).collect()).collect();
    let width = mu + b.cols();
    let mut pivot_row = 0;
    for col in 0..mu {
        let p = (pivot_row..rows)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::NoSolution("homology basis is rank deficient".into()))?;
        a.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip();
        a[pivot_row].iter_mut().for_each(|x| *x *= &inv);
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..width {
                    let d = &f * &a[pivot_row][c];
                    a[r][c] -= d;
                }
            }
        }
        pivot_row += 1;
    }
    if a[mu..].iter().any(|r| r[mu..].iter().any(|x| !x.is_zero())) {
        return Err(Error::NoSolution("image is not in the span of the basis".into()));
    }
    let mut m = IntMatrix::zeros(mu, b.cols());
    for i in 0..mu {
        for c in 0..b.cols() {
            let x = &a[i][mu + c];
            if !x.is_integer() {
                return Err(Error::NoSolution("induced map is not integral".into()));
            }
            m.set(i, c, x.to_integer());
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::char_poly;
    use proptest::prelude::*;

    fn j(parts: &[u32]) -> JoinComplex {
        JoinComplex::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn counts() {
        let c = j(&[3, 2]);
        assert_eq!(c.simplices(0).len(), 5);
        assert_eq!(c.simplices(1).len(), 6);
        assert_eq!(c.boundary_matrix(1).unwrap().cols(), 6);
        assert_eq!(j(&[2, 3, 4]).simplices(2).len(), 24);
        assert!(c.boundary_matrix(2).is_err());
    }

    #[test]
    fn k22_incidence() {
        let d = j(&[2, 2]).boundary_matrix(1).unwrap();
        assert_eq!((d.rows(), d.cols()), (4, 4));
        for c in 0..4 {
            let col: Vec<i64> = (0..4).map(|r| i64::try_from(d.get(r, c)).unwrap()).collect();
            assert_eq!(col.iter().filter(|&&x| x == 1).count(), 1);
            assert_eq!(col.iter().filter(|&&x| x == -1).count(), 1);
        }
    }

    #[test]
    fn homology_examples() {
        assert_eq!(reduced_homology_ranks(&j(&[3, 2]), SIMPLEX_BUDGET).unwrap().ranks, vec![0, 2]);
        let oct = reduced_homology_ranks(&j(&[2, 2, 2]), SIMPLEX_BUDGET).unwrap();
        assert_eq!(oct.ranks, vec![0, 0, 1]);
        assert!(oct.torsion_free());
        assert_eq!(reduced_homology_ranks(&j(&[3, 3]), SIMPLEX_BUDGET).unwrap().ranks, vec![0, 4]);
        assert_eq!(reduced_homology_ranks(&j(&[4]), SIMPLEX_BUDGET).unwrap().ranks, vec![3]);
    }

    #[test]
    fn budget_enforced() {
        assert!(matches!(
            reduced_homology_ranks(&j(&[9, 9, 9, 9, 9, 9]), SIMPLEX_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn rotation_examples() {
        let m = rotation_induced_map(&j(&[2, 2]), None, SIMPLEX_BUDGET).unwrap();
        assert_eq!(m.rows(), 1);
        assert!(m.pow(2).unwrap().is_identity());
        let id = rotation_induced_map(&j(&[3, 2, 2]), Some(&[0, 0, 0]), SIMPLEX_BUDGET).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn rotation_eigenvalues_are_products_of_roots() {
        // on H̃_0(Ω_a) the rotation has the nontrivial a-th roots of unity as
        // eigenvalues, so its characteristic polynomial is 1 + t + ⋯ + t^{a−1}
        let m = rotation_induced_map(&j(&[5]), None, SIMPLEX_BUDGET).unwrap();
        assert_eq!(char_poly(&m).unwrap().to_string(), "t^4 + t^3 + t^2 + t + 1");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn boundary_squares_to_zero(parts in prop::collection::vec(1u32..5, 1..4)) {
            let c = JoinComplex::new(parts).unwrap();
            for k in 1..=c.dim() {
                let dd = c.boundary_matrix(k - 1).unwrap().mul(&c.boundary_matrix(k).unwrap()).unwrap();
                prop_assert!(dd.max_abs().is_zero());
            }
        }

        #[test]
        fn homology_concentrated_in_top(parts in prop::collection::vec(2u32..5, 1..4)) {
            let c = JoinComplex::new(parts.clone()).unwrap();
            let h = reduced_homology_ranks(&c, SIMPLEX_BUDGET).unwrap();
            let mu: usize = parts.iter().map(|&a| a as usize - 1).product();
            let mut expected = vec![0; c.dim() + 1];
            expected[c.dim()] = mu;
            prop_assert_eq!(&h.ranks, &expected);
            prop_assert!(h.torsion_free());
        }
    }
}
