//! Points and tangent vectors of complex space, the diagonal family of
//! 1-forms `(i/2) Σ c_j (z_j dz̄_j − z̄_j dz_j)`, and exterior-algebra
//! evaluation on real frames.
//!
//! Complex `m`-space is identified with real `2m`-space through the ordered
//! real basis `∂x_0, ∂y_0, ∂x_1, ∂y_1, …`. Every real-valued computation in
//! this crate uses that ordering.

mod forms;
mod frame;
mod pfaffian;
mod topform;

pub use forms::{eval_one_form, eval_two_form, DiagonalOneForm};
pub use frame::{
    check_gradients, newton_project, tangent_frame, Constraint, ConstraintSet, FnConstraint,
    PolyPart, TangentFrame, WeightedNorm, NEWTON_MAX_ITER, NEWTON_TOL,
};
pub use pfaffian::{pfaffian, SkewMatrix};
pub use topform::{
    contact_value, top_form_value, top_form_value_hybrid, top_form_value_permutation, Covector,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// A point of complex `m`-space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CPoint(pub Vec<C64>);

/// A real tangent vector written in complex coordinates. It need not be
/// complex-linear in anything; `comps[j] = dx_j + i dy_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RTangent(pub Vec<C64>);

macro_rules! complex_vec_common {
    ($ty:ident) => {
        impl $ty {
            pub fn new(coords: Vec<C64>) -> Self {
                $ty(coords)
            }

            pub fn zeros(m: usize) -> Self {
                $ty(vec![C64::new(0.0, 0.0); m])
            }

            /// Builds from interleaved real coordinates `(x_0, y_0, x_1, …)`.
            pub fn from_real(real: &[f64]) -> Self {
                debug_assert!(real.len() % 2 == 0);
                $ty(real.chunks(2).map(|c| C64::new(c[0], c[1])).collect())
            }

            pub fn to_real(&self) -> Vec<f64> {
                self.0.iter().flat_map(|c| [c.re, c.im]).collect()
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn norm_sqr(&self) -> f64 {
                self.0.iter().map(|c| c.norm_sqr()).sum()
            }

            pub fn norm(&self) -> f64 {
                self.norm_sqr().sqrt()
            }

            pub fn is_finite(&self) -> bool {
                self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
            }

            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max)
            }
        }

        impl std::ops::Index<usize> for $ty {
            type Output = C64;
            fn index(&self, i: usize) -> &C64 {
                &self.0[i]
            }
        }
    };
}

complex_vec_common!(CPoint);
complex_vec_common!(RTangent);

impl CPoint {
    /// `self + t·v`.
    pub fn offset(&self, v: &RTangent, t: f64) -> CPoint {
        CPoint(self.0.iter().zip(&v.0).map(|(z, w)| z + w * t).collect())
    }

    pub fn as_tangent(&self) -> RTangent {
        RTangent(self.0.clone())
    }
}

impl RTangent {
    /// Standard real inner product of the underlying real vectors.
    pub fn dot(&self, other: &RTangent) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a * b.conj()).re).sum()
    }

    pub fn scale(&self, t: f64) -> RTangent {
        RTangent(self.0.iter().map(|c| c * t).collect())
    }

    pub fn add_scaled(&self, other: &RTangent, t: f64) -> RTangent {
        RTangent(self.0.iter().zip(&other.0).map(|(a, b)| a + b * t).collect())
    }

    /// Basis vector `∂x_j` (`imaginary = false`) or `∂y_j`.
    pub fn basis(m: usize, j: usize, imaginary: bool) -> RTangent {
        let mut v = RTangent::zeros(m);
        v.0[j] = if imaginary { C64::new(0.0, 1.0) } else { C64::new(1.0, 0.0) };
        v
    }

    /// The `k`-th vector of the standard ordered real basis.
    pub fn real_basis(m: usize, k: usize) -> RTangent {
        RTangent::basis(m, k / 2, k % 2 == 1)
    }
}

pub(crate) fn ensure_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}
