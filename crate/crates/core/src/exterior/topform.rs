//! Top-degree evaluation.
//!
//! Wedge products follow the determinant convention
//! `(φ_1 ∧ … ∧ φ_k)(v_1, …, v_k) = det[φ_a(v_b)]`. Under it a 2-form `σ`
//! satisfies `σ^m(e_1, …, e_2m) = m!·Pf(σ)`. `contact_value` is normalized
//! differently (see its doc); `top_form_value` is not.

use nalgebra::DMatrix;

use super::{pfaffian, DiagonalOneForm, RTangent, SkewMatrix, TangentFrame, C64};
use crate::error::{Error, Result};

/// A complex-valued 1-form at a point, stored as its values on the standard
/// ordered real basis `∂x_0, ∂y_0, …`.
#[derive(Clone, Debug, PartialEq)]
pub struct Covector(pub Vec<C64>);

impl Covector {
    pub fn real(values: &[f64]) -> Self {
        Covector(values.iter().map(|&v| C64::new(v, 0.0)).collect())
    }

    /// The diagonal 1-form at `z`.
    pub fn from_one_form(form: &DiagonalOneForm, z: &[C64]) -> Self {
        let mut out = Vec::with_capacity(2 * z.len());
        for (c, zj) in form.coeffs.iter().zip(z) {
            out.push(C64::new(-c * zj.im, 0.0));
            out.push(C64::new(c * zj.re, 0.0));
        }
        Covector(out)
    }

    /// Differential of a real function from its gradient.
    pub fn from_gradient(g: &RTangent) -> Self {
        Covector::real(&g.to_real())
    }

    /// `Σ h_j dz_j`.
    pub fn holomorphic(h: &[C64]) -> Self {
        let i = C64::new(0.0, 1.0);
        Covector(h.iter().flat_map(|&hj| [hj, i * hj]).collect())
    }

    /// `dz_j` in complex `m`-space.
    pub fn dz(m: usize, j: usize) -> Self {
        let mut h = vec![C64::new(0.0, 0.0); m];
        h[j] = C64::new(1.0, 0.0);
        Covector::holomorphic(&h)
    }

    pub fn conj(&self) -> Self {
        Covector(self.0.iter().map(|c| c.conj()).collect())
    }

    pub fn apply(&self, v: &RTangent) -> C64 {
        self.0.iter().zip(v.to_real()).map(|(c, x)| c * x).sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

fn check_degree(factors: &[Covector], sigma: Option<&SkewMatrix>, power: usize) -> Result<usize> {
    let dim = factors
        .first()
        .map(Covector::dim)
        .or_else(|| sigma.map(SkewMatrix::dim))
        .unwrap_or(0);
    for f in factors {
        if f.dim() != dim {
            return Err(Error::LengthMismatch { expected: dim, got: f.dim() });
        }
    }
    if let Some(s) = sigma {
        if s.dim() != dim {
            return Err(Error::LengthMismatch { expected: dim, got: s.dim() });
        }
    }
    let sigma_degree = if sigma.is_some() { 2 * power } else { 0 };
    if sigma.is_none() && power > 0 {
        return Err(Error::InvalidInput("positive power without a 2-form".into()));
    }
    let degree = factors.len() + sigma_degree;
    if degree != dim {
        return Err(Error::DegreeMismatch { degree, dim });
    }
    Ok(dim)
}

/// `(φ_1 ∧ … ∧ φ_k ∧ σ^m)(e_1, …, e_D)` on the standard ordered real basis.
///
/// Uses the permutation expansion up to `D = 8` and the subset/Pfaffian
/// expansion above.
pub fn top_form_value(factors: &[Covector], sigma: Option<&SkewMatrix>, power: usize) -> Result<C64> {
    let dim = check_degree(factors, sigma, power)?;
    if dim <= 8 {
        top_form_value_permutation(factors, sigma, power)
    } else {
        top_form_value_hybrid(factors, sigma, power)
    }
}

/// Full expansion over `S_D`:
/// `Σ_π sgn π · Π_a φ_a(e_π(a)) · Π_l σ(e_π(k+2l), e_π(k+2l+1)) / 2^m`.
pub fn top_form_value_permutation(
    factors: &[Covector],
    sigma: Option<&SkewMatrix>,
    power: usize,
) -> Result<C64> {
    let dim = check_degree(factors, sigma, power)?;
    let k = factors.len();
    let mut total = C64::new(0.0, 0.0);
    for_each_permutation(dim, |perm, sign| {
        let mut term = C64::new(sign, 0.0);
        for (a, f) in factors.iter().enumerate() {
            term *= f.0[perm[a]];
            if term == C64::new(0.0, 0.0) {
                return;
            }
        }
        if let Some(s) = sigma {
            for l in 0..power {
                term *= s.get(perm[k + 2 * l], perm[k + 2 * l + 1]);
            }
        }
        total += term;
    });
    Ok(total / 2f64.powi(power as i32))
}

/// `Σ_S sgn(S, Sᶜ) · det[φ_a(e_{S_b})] · m!·Pf(σ|_{Sᶜ})` over increasing
/// index subsets `S` of size `k`.
pub fn top_form_value_hybrid(factors: &[Covector], sigma: Option<&SkewMatrix>, power: usize) -> Result<C64> {
    let dim = check_degree(factors, sigma, power)?;
    let k = factors.len();
    let factorial: f64 = (1..=power).map(|i| i as f64).product();
    let mut total = C64::new(0.0, 0.0);
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let complement: Vec<usize> = (0..dim).filter(|i| !subset.contains(i)).collect();
        let pf = match sigma {
            Some(s) if !complement.is_empty() => pfaffian(&s.submatrix(&complement))?,
            _ => 1.0,
        };
        if pf != 0.0 {
            let det = if k == 0 {
                C64::new(1.0, 0.0)
            } else {
                DMatrix::from_fn(k, k, |a, b| factors[a].0[subset[b]]).determinant()
            };
            let inversions: usize = subset.iter().enumerate().map(|(i, &s)| s - i).sum();
            let sign = if inversions.is_multiple_of(2) { 1.0 } else { -1.0 };
            total += det * (sign * factorial * pf);
        }
        if !next_combination(&mut subset, dim) {
            break;
        }
    }
    Ok(total)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Heap's algorithm, passing each permutation with its sign.
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize], f64)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut sign = 1.0;
    visit(&perm, sign);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            sign = -sign;
            visit(&perm, sign);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

/// `α ∧ (dα)^m` on an ordered frame of `2m+1` vectors, normalized as
/// `Σ_k (−1)^k α(v_k) Pf(D^(k))`, where `D^(k)` is the matrix of `dα` on the
/// frame with `v_k` removed. This equals the determinant-convention value
/// divided by `m!`; for `m = 1` the two agree.
pub fn contact_value(form: &DiagonalOneForm, frame: &TangentFrame) -> Result<f64> {
    let d = frame.dim();
    if d.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("contact value needs an odd frame, got {d}")));
    }
    let alphas = frame
        .basis
        .iter()
        .map(|v| super::eval_one_form(form, &frame.base, v))
        .collect::<Result<Vec<_>>>()?;
    let mut omega = SkewMatrix::zeros(d);
    for i in 0..d {
        for j in i + 1..d {
            omega.set(i, j, super::eval_two_form(form, &frame.basis[i], &frame.basis[j])?);
        }
    }
    let mut total = 0.0;
    for (k, a) in alphas.iter().enumerate() {
        if *a == 0.0 {
            continue;
        }
        let rest: Vec<usize> = (0..d).filter(|&i| i != k).collect();
        let pf = pfaffian(&omega.submatrix(&rest))?;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * a * pf;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::CPoint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn s3_frame() -> TangentFrame {
        TangentFrame {
            base: CPoint(vec![c(1.0, 0.0), c(0.0, 0.0)]),
            basis: vec![
                RTangent(vec![c(0.0, 1.0), c(0.0, 0.0)]),
                RTangent(vec![c(0.0, 0.0), c(1.0, 0.0)]),
                RTangent(vec![c(0.0, 0.0), c(0.0, 1.0)]),
            ],
        }
    }

    #[test]
    fn calibration_on_three_sphere() {
        let v = contact_value(&DiagonalOneForm::standard(2), &s3_frame()).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn contact_value_alternates() {
        let mut f = s3_frame();
        f.basis.swap(0, 2);
        let v = contact_value(&DiagonalOneForm::standard(2), &f).unwrap();
        assert!((v + 2.0).abs() < 1e-12);
        let mut f = s3_frame();
        f.basis.swap(1, 2);
        assert!((contact_value(&DiagonalOneForm::standard(2), &f).unwrap() + 2.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_on_frame_avoiding_first_coordinate() {
        let frame = TangentFrame {
            base: CPoint(vec![c(0.3, 0.1), c(0.5, 0.5), c(0.2, -0.4)]),
            basis: vec![
                RTangent(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
                RTangent(vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]),
                RTangent(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
            ],
        };
        assert_eq!(contact_value(&DiagonalOneForm::gamma(3), &frame).unwrap(), 0.0);
    }

    #[test]
    fn even_frame_is_rejected() {
        let mut f = s3_frame();
        f.basis.pop();
        assert!(contact_value(&DiagonalOneForm::standard(2), &f).is_err());
    }

    #[test]
    fn volume_form_and_antisymmetry() {
        let dx = Covector::real(&[1.0, 0.0]);
        let dy = Covector::real(&[0.0, 1.0]);
        assert_eq!(top_form_value(&[dx.clone(), dy.clone()], None, 0).unwrap(), c(1.0, 0.0));
        assert_eq!(top_form_value(&[dy, dx], None, 0).unwrap(), c(-1.0, 0.0));
    }

    #[test]
    fn degree_mismatch() {
        let dx = Covector::real(&[1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(top_form_value(&[dx], None, 0), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn power_of_symplectic_form() {
        // (2dx0∧dy0 + 2dx1∧dy1)^2 = 8 vol
        let sigma = DiagonalOneForm::standard(2).differential_matrix();
        let v = top_form_value(&[], Some(&sigma), 2).unwrap();
        assert!((v - c(8.0, 0.0)).norm() < 1e-12);
        let h = top_form_value_hybrid(&[], Some(&sigma), 2).unwrap();
        assert!((h - c(8.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn complex_volume_normalization() {
        // dz_0∧dz̄_0∧dz_1∧dz̄_1 on the standard basis is (−2i)^2.
        let mut factors = Vec::new();
        for j in 0..2 {
            factors.push(Covector::dz(2, j));
            factors.push(Covector::dz(2, j).conj());
        }
        let v = top_form_value(&factors, None, 0).unwrap();
        assert!((v - c(0.0, -2.0).powu(2)).norm() < 1e-12);
    }

    #[test]
    fn hybrid_agrees_with_permutations_in_dimension_eight() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for k in [0usize, 2, 4, 6, 8] {
            for _ in 0..3 {
                let factors: Vec<Covector> = (0..k)
                    .map(|_| Covector((0..8).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()))
                    .collect();
                let sigma = SkewMatrix::from_upper(8, |_, _| rng.random_range(-1.0..1.0));
                let power = (8 - k) / 2;
                let s = if power > 0 { Some(&sigma) } else { None };
                let a = top_form_value_permutation(&factors, s, power).unwrap();
                let b = top_form_value_hybrid(&factors, s, power).unwrap();
                assert!((a - b).norm() <= 1e-9 * a.norm().max(1.0), "k={k}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn contact_value_matches_top_form_up_to_factorial() {
        // On the full ambient basis of complex 2-space, α∧(dα) with one vector
        // dropped is the contact value; compare against the determinant
        // convention through a 3-vector frame padded by a covector.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let form = DiagonalOneForm::new(vec![1.3, -0.7, 2.1]);
        let z: Vec<C64> = (0..3).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        // frame = first five standard basis vectors; extra factor dy_2 selects them
        let frame = TangentFrame {
            base: CPoint(z.clone()),
            basis: (0..5).map(|k| RTangent::real_basis(3, k)).collect(),
        };
        let cv = contact_value(&form, &frame).unwrap();
        let alpha = Covector::from_one_form(&form, &z);
        let mut dy2 = vec![0.0; 6];
        dy2[5] = 1.0;
        let tv = top_form_value(&[alpha, Covector::real(&dy2)], Some(&form.differential_matrix()), 2).unwrap();
        assert!((tv.re - 2.0 * cv).abs() < 1e-12, "{tv} vs {cv}");
    }
}
