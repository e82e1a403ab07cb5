use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{CPoint, RTangent, C64};
use crate::error::{Error, Result};

pub const NEWTON_TOL: f64 = 1e-12;
pub const NEWTON_MAX_ITER: usize = 50;

/// Relative singular-value threshold below which a Jacobian is treated as
/// rank deficient.
const RANK_RTOL: f64 = 1e-10;

/// Residual a point must satisfy before a frame is built at it.
const ON_MANIFOLD_TOL: f64 = 1e-9;

/// A scalar real function on complex space together with its real gradient.
///
/// The gradient is returned in complex coordinates:
/// `grad_j = ∂g/∂x_j + i ∂g/∂y_j`, so that the directional derivative along
/// `v` is `grad.dot(v)`.
pub trait Constraint: Send + Sync + fmt::Debug {
    fn value(&self, z: &CPoint) -> f64;
    fn gradient(&self, z: &CPoint) -> RTangent;
}

/// Real or imaginary part of `phase · Σ z_j^{a_j}`.
#[derive(Clone, Debug)]
pub struct PolyPart {
    pub exponents: Vec<u32>,
    pub phase: C64,
    pub imaginary: bool,
}

impl PolyPart {
    pub fn real(exponents: &[u32]) -> Self {
        PolyPart { exponents: exponents.to_vec(), phase: C64::new(1.0, 0.0), imaginary: false }
    }

    pub fn imag(exponents: &[u32]) -> Self {
        PolyPart { exponents: exponents.to_vec(), phase: C64::new(1.0, 0.0), imaginary: true }
    }

    fn poly(&self, z: &CPoint) -> C64 {
        self.phase * self.exponents.iter().zip(&z.0).map(|(&a, zj)| zj.powu(a)).sum::<C64>()
    }
}

impl Constraint for PolyPart {
    fn value(&self, z: &CPoint) -> f64 {
        let h = self.poly(z);
        if self.imaginary {
            h.im
        } else {
            h.re
        }
    }

    fn gradient(&self, z: &CPoint) -> RTangent {
        RTangent(
            self.exponents
                .iter()
                .zip(&z.0)
                .map(|(&a, zj)| {
                    let d = self.phase * (a as f64) * zj.powu(a - 1);
                    if self.imaginary {
                        C64::new(0.0, 1.0) * d.conj()
                    } else {
                        d.conj()
                    }
                })
                .collect(),
        )
    }
}

/// `Σ w_j |z_j|²`.
#[derive(Clone, Debug)]
pub struct WeightedNorm {
    pub weights: Vec<f64>,
}

impl Constraint for WeightedNorm {
    fn value(&self, z: &CPoint) -> f64 {
        self.weights.iter().zip(&z.0).map(|(w, zj)| w * zj.norm_sqr()).sum()
    }

    fn gradient(&self, z: &CPoint) -> RTangent {
        RTangent(self.weights.iter().zip(&z.0).map(|(w, zj)| zj * (2.0 * w)).collect())
    }
}

type ValueFn = dyn Fn(&CPoint) -> f64 + Send + Sync;
type GradFn = dyn Fn(&CPoint) -> RTangent + Send + Sync;

/// A constraint given by closures.
#[derive(Clone)]
pub struct FnConstraint {
    pub name: String,
    pub value: Arc<ValueFn>,
    pub gradient: Arc<GradFn>,
}

impl fmt::Debug for FnConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FnConstraint({})", self.name)
    }
}

impl Constraint for FnConstraint {
    fn value(&self, z: &CPoint) -> f64 {
        (self.value)(z)
    }

    fn gradient(&self, z: &CPoint) -> RTangent {
        (self.gradient)(z)
    }
}

/// The level set `{ g_i(z) = target_i }` in complex `dim`-space.
#[derive(Clone, Debug)]
pub struct ConstraintSet {
    pub dim: usize,
    pub constraints: Vec<Arc<dyn Constraint>>,
    pub targets: Vec<f64>,
}

impl ConstraintSet {
    pub fn new(dim: usize) -> Self {
        ConstraintSet { dim, constraints: Vec::new(), targets: Vec::new() }
    }

    pub fn with(mut self, c: impl Constraint + 'static, target: f64) -> Self {
        self.constraints.push(Arc::new(c));
        self.targets.push(target);
        self
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Real dimension of the level set at regular points.
    pub fn manifold_dim(&self) -> usize {
        2 * self.dim - self.len()
    }

    pub fn residuals(&self, z: &CPoint) -> Vec<f64> {
        self.constraints.iter().zip(&self.targets).map(|(c, t)| c.value(z) - t).collect()
    }

    pub fn max_residual(&self, z: &CPoint) -> f64 {
        self.residuals(z).iter().fold(0.0f64, |m, r| m.max(r.abs()))
    }

    pub fn gradients(&self, z: &CPoint) -> Vec<RTangent> {
        self.constraints.iter().map(|c| c.gradient(z)).collect()
    }

    /// Real Jacobian, one row per constraint.
    pub fn jacobian(&self, z: &CPoint) -> DMatrix<f64> {
        let grads = self.gradients(z);
        let mut jac = DMatrix::zeros(self.len(), 2 * self.dim);
        for (i, g) in grads.iter().enumerate() {
            for (k, x) in g.to_real().into_iter().enumerate() {
                jac[(i, k)] = x;
            }
        }
        jac
    }
}

fn numerical_rank(jac: &DMatrix<f64>) -> usize {
    if jac.nrows() == 0 {
        return 0;
    }
    let sv = jac.singular_values();
    let top = sv.max();
    if top == 0.0 || !top.is_finite() {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_RTOL * top).count()
}

/// Checks each gradient against a central finite difference at `z` along
/// every real basis direction. Returns the worst relative deviation.
pub fn check_gradients(cs: &ConstraintSet, z: &CPoint, h: f64) -> f64 {
    let mut worst = 0.0f64;
    for c in &cs.constraints {
        let grad = c.gradient(z).to_real();
        let scale = grad.iter().fold(0.0f64, |m, g| m.max(g.abs())).max(1.0);
        for (k, g) in grad.iter().enumerate() {
            let e = RTangent::real_basis(cs.dim, k);
            let fd = (c.value(&z.offset(&e, h)) - c.value(&z.offset(&e, -h))) / (2.0 * h);
            worst = worst.max((fd - g).abs() / scale);
        }
    }
    worst
}

/// A point on a level set with an orthonormal basis of its tangent space.
///
/// The basis is oriented so that (constraint gradients in order, basis)
/// is a positively oriented basis of the ambient real space.
#[derive(Clone, Debug)]
pub struct TangentFrame {
    pub base: CPoint,
    pub basis: Vec<RTangent>,
}

impl TangentFrame {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn gram_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, u) in self.basis.iter().enumerate() {
            for (j, v) in self.basis.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((u.dot(v) - target).abs());
            }
        }
        worst
    }

    /// Linear combination of the basis vectors.
    pub fn combine(&self, weights: &[f64]) -> RTangent {
        let mut v = RTangent::zeros(self.base.len());
        for (b, w) in self.basis.iter().zip(weights) {
            v = v.add_scaled(b, *w);
        }
        v
    }
}

/// Orthonormal basis of the kernel of the constraint Jacobian at `z`.
pub fn tangent_frame(cs: &ConstraintSet, z: &CPoint, expected_dim: usize) -> Result<TangentFrame> {
    if z.len() != cs.dim {
        return Err(Error::LengthMismatch { expected: cs.dim, got: z.len() });
    }
    let res = cs.max_residual(z);
    if !(res <= ON_MANIFOLD_TOL) {
        return Err(Error::OffManifold(res));
    }
    let jac = cs.jacobian(z);
    let rank = numerical_rank(&jac);
    if rank < cs.len() {
        return Err(Error::RankDeficient { rank, needed: cs.len() });
    }
    let ambient = 2 * cs.dim;
    let dim = ambient - cs.len();
    if dim != expected_dim {
        return Err(Error::DimensionMismatch { expected: expected_dim, got: dim });
    }

    // Orthonormalize the gradients, then complete with standard basis vectors,
    // always taking the candidate with the largest remaining component.
    let grads: Vec<DVector<f64>> =
        (0..cs.len()).map(|i| jac.row(i).transpose().into_owned()).collect();
    let mut ortho: Vec<DVector<f64>> = Vec::with_capacity(ambient);
    for g in &grads {
        let v = orthogonalize(g.clone(), &ortho);
        let n = v.norm();
        ortho.push(v / n);
    }
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(dim);
    let mut used = vec![false; ambient];
    for _ in 0..dim {
        let mut best: Option<(usize, DVector<f64>, f64)> = None;
        for k in 0..ambient {
            if used[k] {
                continue;
            }
            let mut e = DVector::zeros(ambient);
            e[k] = 1.0;
            let v = orthogonalize(e, &ortho);
            let n = v.norm();
            if best.as_ref().is_none_or(|b| n > b.2) {
                best = Some((k, v, n));
            }
        }
        let (k, v, n) = best.expect("candidate available");
        used[k] = true;
        let v = v / n;
        ortho.push(v.clone());
        basis.push(v);
    }

    if dim > 0 {
        let mut m = DMatrix::zeros(ambient, ambient);
        for (c, g) in grads.iter().chain(basis.iter()).enumerate() {
            m.set_column(c, g);
        }
        if m.determinant() < 0.0 {
            let last = basis.len() - 1;
            basis[last] = -basis[last].clone();
        }
    }

    Ok(TangentFrame {
        base: z.clone(),
        basis: basis.into_iter().map(|v| RTangent::from_real(v.as_slice())).collect(),
    })
}

fn orthogonalize(mut v: DVector<f64>, against: &[DVector<f64>]) -> DVector<f64> {
    // two passes of modified Gram-Schmidt
    for _ in 0..2 {
        for q in against {
            let c = q.dot(&v);
            v -= q * c;
        }
    }
    v
}

/// Gauss–Newton projection onto the level set with the Moore–Penrose step.
/// Once the residual is below `tol`, one more step is taken and kept if it
/// lowers the residual further.
pub fn newton_project(cs: &ConstraintSet, z0: &CPoint, tol: f64, max_iter: usize) -> Result<CPoint> {
    if z0.len() != cs.dim {
        return Err(Error::LengthMismatch { expected: cs.dim, got: z0.len() });
    }
    let mut z = z0.clone();
    let mut residual = f64::INFINITY;
    for _ in 0..=max_iter {
        residual = cs.max_residual(&z);
        if !residual.is_finite() || !z.is_finite() {
            break;
        }
        if residual <= tol {
            if let Ok(p) = newton_step(cs, &z) {
                if cs.max_residual(&p) < residual {
                    return Ok(p);
                }
            }
            return Ok(z);
        }
        z = newton_step(cs, &z)?;
    }
    Err(Error::NoConvergence { iterations: max_iter, residual })
}

fn newton_step(cs: &ConstraintSet, z: &CPoint) -> Result<CPoint> {
    let r = cs.residuals(z);
    let jac = cs.jacobian(z);
    let rank = numerical_rank(&jac);
    if rank < cs.len() {
        return Err(Error::RankDeficient { rank, needed: cs.len() });
    }
    let jjt = &jac * jac.transpose();
    let y = jjt.lu().solve(&DVector::from_vec(r)).ok_or(Error::RankDeficient { rank, needed: cs.len() })?;
    let step = -(jac.transpose() * y);
    Ok(z.offset(&RTangent::from_real(step.as_slice()), 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sphere(m: usize) -> ConstraintSet {
        ConstraintSet::new(m).with(WeightedNorm { weights: vec![1.0; m] }, 1.0)
    }

    #[test]
    fn circle_frame_is_rotation_direction() {
        let f = tangent_frame(&sphere(1), &CPoint(vec![c(1.0, 0.0)]), 1).unwrap();
        assert_eq!(f.dim(), 1);
        assert!((f.basis[0][0] - c(0.0, 1.0)).norm() < 1e-15 || (f.basis[0][0] + c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn three_sphere_frame() {
        let z = CPoint(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let f = tangent_frame(&sphere(2), &z, 3).unwrap();
        assert_eq!(f.dim(), 3);
        assert!(f.gram_error() < 1e-12);
        for b in &f.basis {
            assert!(b.dot(&z.as_tangent()).abs() < 1e-15);
        }
    }

    #[test]
    fn frame_errors() {
        let z = CPoint(vec![c(2.0, 0.0)]);
        assert!(matches!(tangent_frame(&sphere(1), &z, 1), Err(Error::OffManifold(_))));
        let z = CPoint(vec![c(1.0, 0.0)]);
        assert!(matches!(tangent_frame(&sphere(1), &z, 2), Err(Error::DimensionMismatch { .. })));

        // V_f for f = z_0^2 + z_1^2 is singular at the origin.
        let cs = ConstraintSet::new(2).with(PolyPart::real(&[2, 2]), 0.0).with(PolyPart::imag(&[2, 2]), 0.0);
        let origin = CPoint::zeros(2);
        assert!(matches!(tangent_frame(&cs, &origin, 2), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn newton_radial_projection() {
        let p = newton_project(&sphere(1), &CPoint(vec![c(2.0, 0.0)]), NEWTON_TOL, NEWTON_MAX_ITER).unwrap();
        assert!((p[0] - c(1.0, 0.0)).norm() < 1e-12);

        let on = CPoint(vec![c(0.6, 0.8)]);
        let q = newton_project(&sphere(1), &on, NEWTON_TOL, NEWTON_MAX_ITER).unwrap();
        assert_eq!(q, on);
    }

    #[test]
    fn newton_reports_non_convergence() {
        let z = CPoint(vec![c(5.0, 1.0)]);
        assert!(matches!(newton_project(&sphere(1), &z, 1e-12, 0), Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn gradients_match_finite_differences() {
        let e = [3u32, 2, 5];
        let cs = ConstraintSet::new(3)
            .with(PolyPart::real(&e), 0.0)
            .with(PolyPart::imag(&e), 0.0)
            .with(PolyPart { exponents: e.to_vec(), phase: C64::from_polar(1.0, 0.7), imaginary: true }, 0.0)
            .with(WeightedNorm { weights: vec![0.3, 1.0, 1.0] }, 1.0);
        let z = CPoint(vec![c(0.3, -0.4), c(0.5, 0.2), c(-0.6, 0.1)]);
        assert!(check_gradients(&cs, &z, 1e-6) < 1e-5);
    }
}
