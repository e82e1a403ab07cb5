use serde::{Deserialize, Serialize};

use super::{ensure_len, CPoint, RTangent, SkewMatrix};
use crate::error::Result;

/// `(i/2) Σ c_j (z_j dz̄_j − z̄_j dz_j)` for a real coefficient vector `c`.
///
/// Evaluated on a real vector `v` this is `Σ c_j Im(z̄_j v_j)`; its exterior
/// derivative is `i Σ c_j dz_j ∧ dz̄_j`, which takes the value
/// `2 Σ c_j Im(ū_j v_j)` on a pair `(u, v)` and does not depend on the point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalOneForm {
    pub coeffs: Vec<f64>,
}

impl DiagonalOneForm {
    pub fn new(coeffs: Vec<f64>) -> Self {
        DiagonalOneForm { coeffs }
    }

    /// The standard contact form of the unit sphere in complex `m`-space.
    pub fn standard(m: usize) -> Self {
        DiagonalOneForm::new(vec![1.0; m])
    }

    /// Coefficients equal to the given exponents.
    pub fn weighted(exponents: &[u32]) -> Self {
        DiagonalOneForm::new(exponents.iter().map(|&a| a as f64).collect())
    }

    /// `s·a_0` on the first coordinate, `a_j` on the others.
    pub fn alpha_s(exponents: &[u32], s: f64) -> Self {
        let mut form = DiagonalOneForm::weighted(exponents);
        form.coeffs[0] *= s;
        form
    }

    /// `−C·a_0` on the first coordinate, `a_j` on the others.
    pub fn alpha_minus(exponents: &[u32], c: f64) -> Self {
        let mut form = DiagonalOneForm::weighted(exponents);
        form.coeffs[0] *= -c;
        form
    }

    /// The form supported on the first coordinate only.
    pub fn gamma(m: usize) -> Self {
        let mut coeffs = vec![0.0; m];
        coeffs[0] = 1.0;
        DiagonalOneForm::new(coeffs)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// `(1 − t)·self + t·other`.
    pub fn lerp(&self, other: &DiagonalOneForm, t: f64) -> DiagonalOneForm {
        DiagonalOneForm::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| (1.0 - t) * a + t * b)
                .collect(),
        )
    }

    /// `self + eps·other`.
    pub fn plus_scaled(&self, other: &DiagonalOneForm, eps: f64) -> DiagonalOneForm {
        DiagonalOneForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + eps * b).collect())
    }

    /// Matrix of the exterior derivative on the standard ordered real basis.
    pub fn differential_matrix(&self) -> SkewMatrix {
        let d = 2 * self.dim();
        let mut m = SkewMatrix::zeros(d);
        for (j, c) in self.coeffs.iter().enumerate() {
            m.set(2 * j, 2 * j + 1, 2.0 * c);
        }
        m
    }
}

pub fn eval_one_form(form: &DiagonalOneForm, z: &CPoint, v: &RTangent) -> Result<f64> {
    ensure_len(form.dim(), z.len())?;
    ensure_len(form.dim(), v.len())?;
    Ok(form
        .coeffs
        .iter()
        .zip(z.0.iter().zip(&v.0))
        .map(|(c, (zj, vj))| c * (zj.conj() * vj).im)
        .sum())
}

/// Value of `dα` on `(u, v)`; the point never enters.
pub fn eval_two_form(form: &DiagonalOneForm, u: &RTangent, v: &RTangent) -> Result<f64> {
    ensure_len(form.dim(), u.len())?;
    ensure_len(form.dim(), v.len())?;
    Ok(form
        .coeffs
        .iter()
        .zip(u.0.iter().zip(&v.0))
        .map(|(c, (uj, vj))| 2.0 * c * (uj.conj() * vj).im)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::C64;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn one_form_examples() {
        let std1 = DiagonalOneForm::standard(1);
        let z = CPoint(vec![c(1.0, 0.0)]);
        assert_eq!(eval_one_form(&std1, &z, &RTangent(vec![c(0.0, 1.0)])).unwrap(), 1.0);
        assert_eq!(eval_one_form(&std1, &z, &RTangent(vec![c(1.0, 0.0)])).unwrap(), 0.0);

        // (i/2)[2(z_0 v̄_0 − z̄_0 v_0) + 3(z_1 v̄_1 − z̄_1 v_1)] with z = (1, 0), v = (i, 5):
        // (i/2)·2·(−i − i) = 2.
        let form = DiagonalOneForm::new(vec![2.0, 3.0]);
        let z = CPoint(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let v = RTangent(vec![c(0.0, 1.0), c(5.0, 0.0)]);
        assert!((eval_one_form(&form, &z, &v).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn two_form_examples() {
        let std1 = DiagonalOneForm::standard(1);
        let u = RTangent(vec![c(1.0, 0.0)]);
        let v = RTangent(vec![c(0.0, 1.0)]);
        // i(u v̄ − v ū) = i(−i − i) = 2
        assert_eq!(eval_two_form(&std1, &u, &v).unwrap(), 2.0);
        assert_eq!(eval_two_form(&std1, &v, &v).unwrap(), 0.0);

        let std2 = DiagonalOneForm::standard(2);
        let u = RTangent(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let v = RTangent(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(eval_two_form(&std2, &u, &v).unwrap(), 0.0);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let form = DiagonalOneForm::standard(2);
        let z = CPoint(vec![c(1.0, 0.0)]);
        let v = RTangent(vec![c(1.0, 0.0)]);
        assert!(eval_one_form(&form, &z, &v).is_err());
        assert!(eval_two_form(&form, &v, &v).is_err());
    }

    #[test]
    fn differential_matrix_matches_two_form() {
        let form = DiagonalOneForm::new(vec![1.5, -2.0, 0.25]);
        let m = form.differential_matrix();
        for a in 0..6 {
            for b in 0..6 {
                let u = RTangent::real_basis(3, a);
                let v = RTangent::real_basis(3, b);
                assert_eq!(m.get(a, b), eval_two_form(&form, &u, &v).unwrap());
            }
        }
    }

    fn arb_vec(m: usize) -> impl Strategy<Value = Vec<C64>> {
        prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b)| C64::new(a, b)), m)
    }

    proptest! {
        #[test]
        fn forms_are_linear(
            coeffs in prop::collection::vec(-4.0f64..4.0, 3),
            z in arb_vec(3), u in arb_vec(3), v in arb_vec(3), w in arb_vec(3),
            lambda in -5.0f64..5.0,
        ) {
            let form = DiagonalOneForm::new(coeffs);
            let z = CPoint(z);
            let (u, v, w) = (RTangent(u), RTangent(v), RTangent(w));
            let uv = u.add_scaled(&v, lambda);
            let lhs = eval_one_form(&form, &z, &uv).unwrap();
            let rhs = eval_one_form(&form, &z, &u).unwrap() + lambda * eval_one_form(&form, &z, &v).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));

            let lhs = eval_two_form(&form, &uv, &w).unwrap();
            let rhs = eval_two_form(&form, &u, &w).unwrap() + lambda * eval_two_form(&form, &v, &w).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
            let anti = eval_two_form(&form, &u, &w).unwrap() + eval_two_form(&form, &w, &u).unwrap();
            prop_assert!(anti.abs() < 1e-12);
        }
    }
}
