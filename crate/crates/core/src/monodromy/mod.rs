//! Exact monodromy algebra: the matrices `A_p`, their Kronecker product `Ψ`,
//! characteristic polynomials, and the homology of the join skeleton.

mod intmatrix;
pub mod join;
mod poly;
pub mod snf;

pub use intmatrix::IntMatrix;
pub use join::{reduced_homology_ranks, rotation_induced_map, HomologyRanks, JoinComplex, SIMPLEX_BUDGET};
pub use poly::IntPolynomial;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `p × p`: first row all ones, `−1` on the subdiagonal.
pub fn a_matrix(p: usize) -> Result<IntMatrix> {
    if p < 1 {
        return Err(Error::InvalidInput("A_p needs p >= 1".into()));
    }
    let mut m = IntMatrix::zeros(p, p);
    for j in 0..p {
        m.set(0, j, BigInt::one());
    }
    for j in 1..p {
        m.set(j, j - 1, BigInt::from(-1));
    }
    Ok(m)
}

pub fn milnor_number(tail: &[u32]) -> u64 {
    tail.iter().map(|&a| (a as u64).saturating_sub(1)).product()
}

#[derive(Clone, Debug, Serialize)]
pub struct Monodromy {
    pub tail: Vec<u32>,
    pub psi: IntMatrix,
    pub mu: u64,
    /// More than one variable in the tail.
    pub n_gt_1: bool,
    pub gcd_is_one: bool,
}

/// `Ψ = A_{a_1−1} ⊗ ⋯ ⊗ A_{a_n−1}`, factors left to right.
pub fn monodromy_matrix(tail: &[u32]) -> Result<Monodromy> {
    if tail.is_empty() {
        return Err(Error::InvalidInput("empty exponent tuple".into()));
    }
    if let Some(a) = tail.iter().find(|&&a| a <= 1) {
        return Err(Error::InvalidInput(format!("exponent {a} gives an empty factor (mu = 0)")));
    }
    let mut psi = IntMatrix::identity(1);
    for &a in tail {
        psi = psi.kron(&a_matrix(a as usize - 1)?);
    }
    Ok(Monodromy {
        tail: tail.to_vec(),
        mu: milnor_number(tail),
        psi,
        n_gt_1: tail.len() > 1,
        gcd_is_one: tail.iter().fold(0u32, |g, &a| g.gcd(&a)) == 1,
    })
}

/// `det(tI − M)` from exact determinants at `t = 0, …, dim` and exact
/// interpolation.
pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
    }
    let n = m.rows();
    let values = (0..=n)
        .map(|t| {
            let mut s = IntMatrix::identity(n);
            for i in 0..n {
                for j in 0..n {
                    let diag = if i == j { BigInt::from(t) } else { BigInt::zero() };
                    s.set(i, j, diag - m.get(i, j));
                }
            }
            s.det()
        })
        .collect::<Result<Vec<_>>>()?;
    IntPolynomial::interpolate(&values).ok_or_else(|| Error::NoSolution("non-integral interpolant".into()))
}

/// Least `k ≤ bound` with `M^k = I`.
pub fn matrix_order_check(m: &IntMatrix, bound: u64) -> Result<Option<u64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
    }
    let mut p = m.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Ok(Some(k));
        }
        p = p.mul(m)?;
    }
    Ok(None)
}

pub fn lcm(a: &[u32]) -> u64 {
    a.iter().fold(1u64, |l, &x| l.lcm(&(x as u64)))
}

/// How the characteristic polynomial of the rotation compares with that
/// of `Ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CharPolyRelation {
    Equal,
    Reciprocal,
    /// Equal to that of `−Ψ`.
    Negated,
    Unrelated,
}

/// `(−1)^d p(−t)` for `p` of degree `d`: the characteristic polynomial of
/// `−M` when `p` is that of `M`.
pub fn negate_variable(p: &IntPolynomial) -> IntPolynomial {
    let d = p.degree().unwrap_or(0);
    IntPolynomial::new(
        p.coeffs().iter().enumerate().map(|(k, c)| if (d - k).is_multiple_of(2) { c.clone() } else { -c.clone() }).collect(),
    )
}

pub fn compare_char_polys(rotation: &IntPolynomial, psi: &IntPolynomial) -> CharPolyRelation {
    if rotation == psi {
        CharPolyRelation::Equal
    } else if *rotation == psi.reciprocal() {
        CharPolyRelation::Reciprocal
    } else if *rotation == negate_variable(psi) || *rotation == negate_variable(&psi.reciprocal()) {
        CharPolyRelation::Negated
    } else {
        CharPolyRelation::Unrelated
    }
}
