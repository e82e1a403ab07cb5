//! The Milnor open book `θ = f/|f|` on the sphere, its Reeb field, the
//! two-exponent binding, and the cyclic branched covering `π₀`.

use std::f64::consts::PI;

use num_integer::Integer;
use rayon::prelude::*;

use crate::brieskorn::{f_eval, sample_constraint_set, Exponents, Manifold};
use crate::error::{Error, Result};
use crate::exterior::{
    eval_one_form, eval_two_form, pfaffian, tangent_frame, CPoint, ConstraintSet, DiagonalOneForm, PolyPart,
    RTangent, SkewMatrix, TangentFrame, WeightedNorm, C64,
};
use crate::report::{CheckResult, VerificationReport, Witness};
use crate::roots::bisect_increasing;

/// `|f|` below which a point counts as on the binding.
pub const BINDING_TOL: f64 = 1e-12;
/// Samples are kept at `|f|` above this.
pub const OFF_BINDING: f64 = 1e-6;
pub const BRANCH_TOL: f64 = 1e-12;
pub const SPHERE_TOL: f64 = 1e-9;
pub const ETA_TOL: f64 = 1e-14;
pub const PAGE_THRESHOLD: f64 = 1e-6;
pub const PAGE_KERNEL_TOL: f64 = 1e-10;
pub const REEB_VALUE_TOL: f64 = 1e-12;
pub const REEB_KERNEL_TOL: f64 = 1e-10;
pub const SHIFT_TOL: f64 = 1e-12;
pub const QUADRATURE_NODES: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct OpenBookSpec {
    pub tail: Exponents,
    /// Phase of a distinguished page.
    pub theta0: C64,
}

impl OpenBookSpec {
    pub fn new(tail: Exponents) -> Self {
        OpenBookSpec { tail, theta0: C64::new(1.0, 0.0) }
    }

    pub fn with_theta0(mut self, theta0: C64) -> Result<Self> {
        if (theta0.norm() - 1.0).abs() > ETA_TOL {
            return Err(Error::InvalidInput(format!("page phase {theta0} is not unimodular")));
        }
        self.theta0 = theta0;
        Ok(self)
    }

    fn m(&self) -> usize {
        self.tail.len()
    }

    /// `β` with coefficients `a_j`.
    pub fn beta(&self) -> DiagonalOneForm {
        DiagonalOneForm::weighted(self.tail.as_slice())
    }

    pub fn sphere(&self) -> Manifold {
        Manifold::Sphere(self.m())
    }
}

pub fn theta(spec: &OpenBookSpec, z: &CPoint) -> Result<C64> {
    let f = f_eval(&spec.tail, z);
    let r = f.norm();
    if r < BINDING_TOL {
        return Err(Error::NearBinding(r));
    }
    Ok(f / r)
}

/// `d arg f (v) = Im(df(v) / f)`.
pub fn d_arg_f(spec: &OpenBookSpec, z: &CPoint, v: &RTangent) -> Result<f64> {
    let f = f_eval(&spec.tail, z);
    if f.norm() < BINDING_TOL {
        return Err(Error::NearBinding(f.norm()));
    }
    let df: C64 =
        spec.tail.as_slice().iter().zip(z.0.iter().zip(&v.0)).map(|(&a, (zj, vj))| zj.powu(a - 1) * vj * a as f64).sum();
    Ok((df / f).im)
}

/// `X_j = i z_j / a_j`.
pub fn reeb_field(spec: &OpenBookSpec, z: &CPoint) -> RTangent {
    let i = C64::new(0.0, 1.0);
    RTangent(spec.tail.as_slice().iter().zip(&z.0).map(|(&a, zj)| i * zj / a as f64).collect())
}

/// Time-`t` flow of the Reeb field: `z_j ↦ e^{it/a_j} z_j`.
pub fn reeb_flow(spec: &OpenBookSpec, z: &CPoint, t: f64) -> CPoint {
    CPoint(spec.tail.as_slice().iter().zip(&z.0).map(|(&a, zj)| zj * C64::from_polar(1.0, t / a as f64)).collect())
}

/// `|θ(flow_t z) − e^{it} θ(z)|`.
pub fn reeb_page_shift(spec: &OpenBookSpec, z: &CPoint, t: f64) -> Result<f64> {
    let moved = theta(spec, &reeb_flow(spec, z, t))?;
    Ok((moved - C64::from_polar(1.0, t) * theta(spec, z)?).norm())
}

/// Orthonormal basis of the page through `z`: tangent to the sphere and in
/// the kernel of `d arg f`.
pub fn page_frame(spec: &OpenBookSpec, z: &CPoint) -> Result<TangentFrame> {
    let th = theta(spec, z)?;
    let cs = ConstraintSet::new(spec.m())
        .with(WeightedNorm { weights: vec![1.0; spec.m()] }, 1.0)
        .with(PolyPart { exponents: spec.tail.as_slice().to_vec(), phase: th.conj(), imaginary: true }, 0.0);
    tangent_frame(&cs, z, 2 * spec.m() - 2)
}

/// Sphere samples with `|f| > OFF_BINDING`.
pub fn sample_off_binding(spec: &OpenBookSpec, count: usize, seed: u64) -> Result<Vec<CPoint>> {
    let tail = spec.tail.clone();
    Ok(sample_constraint_set(&spec.sphere().constraint_set(), count, seed, move |z| {
        f_eval(&tail, z).norm() > OFF_BINDING
    })?
    .points)
}

/// `dβ` restricted to the page is nondegenerate, `d arg f(X) = 1`, and page
/// vectors lie in the kernel of `d arg f`.
pub fn page_symplectic_check(spec: &OpenBookSpec, samples: &[CPoint], threshold: f64) -> Result<VerificationReport> {
    let beta = spec.beta();
    let rows: Vec<(f64, f64, f64)> = samples
        .par_iter()
        .map(|z| {
            let frame = page_frame(spec, z)?;
            let k = frame.dim();
            let mut m = SkewMatrix::zeros(k);
            for i in 0..k {
                for j in i + 1..k {
                    m.set(i, j, eval_two_form(&beta, &frame.basis[i], &frame.basis[j])?);
                }
            }
            let pf = pfaffian(&m)?;
            let mut kernel = 0.0f64;
            for b in &frame.basis {
                kernel = kernel.max(d_arg_f(spec, z, b)?.abs());
            }
            let reeb = d_arg_f(spec, z, &reeb_field(spec, z))?;
            Ok((pf, kernel, reeb))
        })
        .collect::<Result<_>>()?;
    let (imin, min_pf) =
        rows.iter().map(|r| r.0.abs()).enumerate().fold((0, f64::INFINITY), |a, (i, v)| if v < a.1 { (i, v) } else { a });
    let kernel = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let reeb_dev = rows.iter().map(|r| (r.2 - 1.0).abs()).fold(0.0, f64::max);
    let mut report = VerificationReport::new("page_symplectic_check")
        .param("tail", spec.tail.as_slice())
        .tolerance("pfaffian", threshold)
        .tolerance("page_kernel", PAGE_KERNEL_TOL)
        .tolerance("reeb_transverse", REEB_VALUE_TOL);
    report.sample_count = samples.len();
    report.min_abs_value = Some(min_pf);
    report.sign_consistent = Some(rows.iter().all(|r| r.0 > 0.0) || rows.iter().all(|r| r.0 < 0.0));
    let mut row = CheckResult::above("min_abs_page_pfaffian", min_pf, threshold);
    if let Some(z) = samples.get(imin) {
        let w = Witness { label: "min |Pf(dβ|page)|".into(), parameter: None, point: z.clone(), value: rows[imin].0 };
        row = row.with_witness(&w);
        report.witnesses.push(w);
    }
    report.push(row);
    report.push(CheckResult::at_most("max_page_d_arg_f", kernel, PAGE_KERNEL_TOL));
    report.push(CheckResult::at_most("max_reeb_d_arg_f_minus_one", reeb_dev, REEB_VALUE_TOL));
    Ok(report.finish())
}

/// `β(X) = 1`, `ι_X dβ = 0` on sphere tangents, and the page shift under
/// the Reeb flow over `t_grid`.
pub fn reeb_checks(spec: &OpenBookSpec, samples: &[CPoint], t_grid: &[f64]) -> Result<VerificationReport> {
    let beta = spec.beta();
    let sphere = spec.sphere();
    let cs = sphere.constraint_set();
    let dim = sphere.dim();
    let rows: Vec<[f64; 3]> = samples
        .par_iter()
        .map(|z| {
            let x = reeb_field(spec, z);
            let value = (eval_one_form(&beta, z, &x)? - 1.0).abs();
            let frame = tangent_frame(&cs, z, dim)?;
            let mut kernel = 0.0f64;
            for v in &frame.basis {
                kernel = kernel.max(eval_two_form(&beta, &x, v)?.abs());
            }
            let mut shift = 0.0f64;
            for &t in t_grid {
                shift = shift.max(reeb_page_shift(spec, z, t)?);
            }
            Ok([value, kernel, shift])
        })
        .collect::<Result<_>>()?;
    let mut report = VerificationReport::new("reeb_checks")
        .param("tail", spec.tail.as_slice())
        .param("t_grid", t_grid)
        .tolerance("beta_of_reeb", REEB_VALUE_TOL)
        .tolerance("reeb_kernel", REEB_KERNEL_TOL)
        .tolerance("page_shift", SHIFT_TOL);
    report.sample_count = samples.len();
    let names = ["max_beta_reeb_minus_one", "max_reeb_contraction_dbeta", "max_page_shift_residual"];
    let tols = [REEB_VALUE_TOL, REEB_KERNEL_TOL, SHIFT_TOL];
    for k in 0..3 {
        let (i, worst) = rows.iter().map(|r| r[k]).enumerate().fold((0, 0.0f64), |a, (i, v)| if v > a.1 { (i, v) } else { a });
        let mut row = CheckResult::at_most(names[k], worst, tols[k]);
        if let Some(z) = samples.get(i) {
            row = row.with_witness(z);
        }
        report.push(row);
    }
    Ok(report.finish())
}

/// One component of the binding `{z_0^{a_0} + z_1^{a_1} = 0} ∩ S³`:
/// `ψ ↦ (r_0 e^{i(π + a_1ψ + 2πk)/a_0}, r_1 e^{iψ})`, `ψ ∈ [0, period]`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct BindingLoop {
    pub a0: u32,
    pub a1: u32,
    pub index: u32,
    pub r0: f64,
    pub r1: f64,
    pub period: f64,
}

impl BindingLoop {
    pub fn point(&self, psi: f64) -> CPoint {
        let phase0 = (PI + self.a1 as f64 * psi + 2.0 * PI * self.index as f64) / self.a0 as f64;
        CPoint(vec![C64::from_polar(self.r0, phase0), C64::from_polar(self.r1, psi)])
    }

    pub fn velocity(&self, psi: f64) -> RTangent {
        let z = self.point(psi);
        let i = C64::new(0.0, 1.0);
        RTangent(vec![z[0] * i * (self.a1 as f64 / self.a0 as f64), z[1] * i])
    }
}

/// Radii with `r_0^{a_0} = r_1^{a_1}` and `r_0² + r_1² = 1`.
pub fn binding_radii(a0: u32, a1: u32) -> (f64, f64) {
    // u = r_0²: a_0 ln u − a_1 ln(1 − u) is increasing on (0, 1)
    let h = |u: f64| a0 as f64 * u.ln() - a1 as f64 * (1.0 - u).ln();
    let u = bisect_increasing(h, 0.0, 1.0, 1e-17);
    (u.sqrt(), (1.0 - u).sqrt())
}

pub fn binding_components(a0: u32, a1: u32) -> Result<Vec<BindingLoop>> {
    if a0 == 0 || a1 == 0 {
        return Err(Error::InvalidInput("exponents must be positive".into()));
    }
    let g = a0.gcd(&a1);
    let (r0, r1) = binding_radii(a0, a1);
    let period = 2.0 * PI * (a0 / g) as f64;
    Ok((0..g).map(|index| BindingLoop { a0, a1, index, r0, r1, period }).collect())
}

/// Periodic trapezoid rule for `∫ form` along each loop, with `nodes` nodes.
pub fn binding_orientation_integrals(a0: u32, a1: u32, form: &DiagonalOneForm, nodes: usize) -> Result<Vec<f64>> {
    if nodes == 0 {
        return Err(Error::InvalidInput("at least one quadrature node".into()));
    }
    binding_components(a0, a1)?
        .iter()
        .map(|c| {
            let h = c.period / nodes as f64;
            let mut sum = 0.0;
            for k in 0..nodes {
                let psi = k as f64 * h;
                sum += eval_one_form(form, &c.point(psi), &c.velocity(psi))?;
            }
            Ok(sum * h)
        })
        .collect()
}

/// Component count, loop residuals, positivity and equality of the
/// `β`-integrals, and their change under doubling of the nodes.
pub fn binding_report(a0: u32, a1: u32, nodes: usize) -> Result<VerificationReport> {
    let nodes = nodes.max(QUADRATURE_NODES);
    let beta = DiagonalOneForm::weighted(&[a0, a1]);
    let loops = binding_components(a0, a1)?;
    let e = Exponents::new(vec![a0, a1])?;
    let mut residual = 0.0f64;
    for c in &loops {
        for k in 0..256 {
            let z = c.point(c.period * k as f64 / 256.0);
            residual = residual.max(f_eval(&e, &z).norm()).max((z.norm_sqr() - 1.0).abs());
        }
    }
    let ints = binding_orientation_integrals(a0, a1, &beta, nodes)?;
    let fine = binding_orientation_integrals(a0, a1, &beta, 2 * nodes)?;
    let scale = ints.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let spread = ints.iter().fold(0.0f64, |m, v| m.max((v - ints[0]).abs())) / scale;
    let change = ints.iter().zip(&fine).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let min = ints.iter().cloned().fold(f64::INFINITY, f64::min);
    let g = a0.gcd(&a1) as usize;
    let mut report = VerificationReport::new("binding_components")
        .param("a0", a0)
        .param("a1", a1)
        .param("nodes", nodes)
        .tolerance("loop_residual", BINDING_TOL)
        .tolerance("integral_spread", 1e-8)
        .tolerance("quadrature_change", 1e-8);
    report.push(CheckResult::flag("component_count", loops.len(), loops.len() == g));
    report.push(CheckResult::at_most("max_loop_residual", residual, BINDING_TOL));
    report.push(CheckResult::flag("beta_integrals", &ints, min > 0.0));
    report.push(CheckResult::at_most("relative_integral_spread", spread, 1e-8));
    report.push(CheckResult::at_most("quadrature_doubling_change", change, 1e-8));
    Ok(report.finish())
}

/// Drops `z_0`.
pub fn pi0(z: &CPoint) -> CPoint {
    CPoint(z.0[1..].to_vec())
}

/// The covering `π₀` from the cylinder model with a fixed `a_0`-th root `η`
/// of `−1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringSpec {
    pub exponents: Exponents,
    pub eta: C64,
}

impl CoveringSpec {
    /// `η = e^{iπ/a_0}`.
    pub fn new(exponents: Exponents) -> Self {
        let eta = C64::from_polar(1.0, PI / exponents.as_slice()[0] as f64);
        CoveringSpec { exponents, eta }
    }

    pub fn with_eta(exponents: Exponents, eta: C64) -> Result<Self> {
        let dev = (eta.powu(exponents.as_slice()[0]) + 1.0).norm();
        if dev > ETA_TOL {
            return Err(Error::InvalidInput(format!("eta^a0 deviates from -1 by {dev:e}")));
        }
        Ok(CoveringSpec { exponents, eta })
    }

    pub fn a0(&self) -> u32 {
        self.exponents.as_slice()[0]
    }

    pub fn open_book(&self) -> Result<OpenBookSpec> {
        Ok(OpenBookSpec::new(Exponents::new(self.exponents.tail().to_vec())?))
    }
}

/// All `(z_0, w)` with `z_0^{a_0} = −f'(w)`: `a_0` points off the branch
/// locus, the single point `(0, w)` on it.
pub fn fibers_over(spec: &CoveringSpec, w: &CPoint) -> Result<Vec<CPoint>> {
    let n = spec.exponents.len() - 1;
    if w.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: w.len() });
    }
    if (w.norm_sqr() - 1.0).abs() > SPHERE_TOL {
        return Err(Error::OffManifold((w.norm_sqr() - 1.0).abs()));
    }
    let target: C64 = -spec.exponents.tail().iter().zip(&w.0).map(|(&a, wj)| wj.powu(a)).sum::<C64>();
    let lift = |z0: C64| CPoint(std::iter::once(z0).chain(w.0.iter().copied()).collect());
    if target.norm() < BRANCH_TOL {
        return Ok(vec![lift(C64::new(0.0, 0.0))]);
    }
    let a0 = spec.a0();
    let r = target.norm().powf(1.0 / a0 as f64);
    let arg = target.arg();
    Ok((0..a0).map(|k| lift(C64::from_polar(r, (arg + 2.0 * PI * k as f64) / a0 as f64))).collect())
}

/// Points of the cylinder model obtained by lifting sphere samples off the
/// branch locus: sample `i` is the `(i mod a_0)`-th point of its fiber.
/// Unlike Newton-projected samples, these satisfy `z_0^{a_0} = −f'(w)` to
/// rounding even where `|f'(w)|` is small.
pub fn sample_lifts(spec: &CoveringSpec, count: usize, seed: u64) -> Result<Vec<CPoint>> {
    let tail = spec.exponents.tail().to_vec();
    let off = move |w: &CPoint| tail.iter().zip(&w.0).map(|(&a, wj)| wj.powu(a)).sum::<C64>().norm() > OFF_BINDING;
    let m = spec.exponents.len() - 1;
    let sphere = ConstraintSet::new(m).with(WeightedNorm { weights: vec![1.0; m] }, 1.0);
    let base = sample_constraint_set(&sphere, count, seed, off)?.points;
    base.iter()
        .enumerate()
        .map(|(i, w)| Ok(fibers_over(spec, w)?.swap_remove(i % spec.a0() as usize)))
        .collect()
}

/// `η z_0 / |z_0|`, an `a_0`-th root of `θ ∘ π₀`.
pub fn theta_tilde(spec: &CoveringSpec, z: &CPoint) -> Result<C64> {
    let r = z[0].norm();
    if r < BINDING_TOL {
        return Err(Error::NearBinding(r));
    }
    Ok(spec.eta * z[0] / r)
}

/// Max of `|θ̃^{a_0} − θ∘π₀|` over the samples.
pub fn theta_tilde_power_residual(spec: &CoveringSpec, samples: &[CPoint]) -> Result<f64> {
    let ob = spec.open_book()?;
    let mut worst = 0.0f64;
    for z in samples {
        let lhs = theta_tilde(spec, z)?.powu(spec.a0());
        worst = worst.max((lhs - theta(&ob, &pi0(z))?).norm());
    }
    Ok(worst)
}

/// `φ(t) / (φ(t) + φ(1 − t))` with `φ(t) = e^{−1/t}`.
pub fn smoothstep(t: f64) -> f64 {
    let phi = |t: f64| if t <= 0.0 { 0.0 } else { (-1.0 / t).exp() };
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        phi(t) / (phi(t) + phi(1.0 - t))
    }
}

/// `r^{p(r)}` with `p = k` on `[0, δ/2]`, `p = 1` on `[δ, ∞)`, and `p`
/// blended by [`smoothstep`] in between. Strictly increasing for `δ ≤ 1`;
/// larger `δ` is rejected since `r^p` then decreases in `p` and the blend
/// can overturn monotonicity.
pub fn radial_profile(k: u32, delta: f64, r: f64) -> Result<f64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidInput(format!("delta = {delta} outside (0, 1]")));
    }
    if k == 0 || !(r >= 0.0) {
        return Err(Error::InvalidInput(format!("k = {k}, r = {r}")));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let s = smoothstep((r - delta / 2.0) / (delta / 2.0));
    let p = k as f64 + (1.0 - k as f64) * s;
    Ok(r.powf(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn ob(a: &[u32]) -> OpenBookSpec {
        OpenBookSpec::new(Exponents::new(a.to_vec()).unwrap())
    }

    #[test]
    fn theta_examples() {
        let s = ob(&[2, 2]);
        assert!((theta(&s, &CPoint(vec![c(1.0, 0.0), c(0.0, 0.0)])).unwrap() - 1.0).norm() < 1e-15);
        let z = CPoint(vec![c(0.0, 0.0), C64::from_polar(1.0, PI / 4.0)]);
        assert!((theta(&s, &z).unwrap() - c(0.0, 1.0)).norm() < 1e-15);
        let r = 0.5f64.sqrt();
        assert!(matches!(theta(&s, &CPoint(vec![c(r, 0.0), c(0.0, r)])), Err(Error::NearBinding(_))));
    }

    #[test]
    fn reeb_examples() {
        let s = ob(&[2, 2]);
        let x = reeb_field(&s, &CPoint(vec![c(1.0, 0.0), c(0.0, 0.0)]));
        assert_eq!(x.0, vec![c(0.0, 0.5), c(0.0, 0.0)]);
        let z = CPoint(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(reeb_page_shift(&s, &z, 0.0).unwrap(), 0.0);
        assert!(reeb_page_shift(&s, &z, PI).unwrap() < 1e-15);
    }

    #[test]
    fn reeb_suite_passes() {
        for a in [&[2u32, 2, 2][..], &[3, 2]] {
            let s = ob(a);
            let pts = sample_off_binding(&s, 100, 3).unwrap();
            let r = reeb_checks(&s, &pts, &[0.0, 0.7, PI, 5.0]).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn pages_are_symplectic() {
        for a in [&[2u32, 2, 2][..], &[3, 2]] {
            let s = ob(a);
            let pts = sample_off_binding(&s, 100, 4).unwrap();
            let r = page_symplectic_check(&s, &pts, PAGE_THRESHOLD).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn binding_examples() {
        let l = binding_components(2, 2).unwrap();
        assert_eq!(l.len(), 2);
        assert!((l[0].r0 - 0.5f64.sqrt()).abs() < 1e-15 && (l[0].r1 - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(binding_components(3, 2).unwrap().len(), 1);
        assert_eq!(binding_components(4, 6).unwrap().len(), 2);
        for (a0, a1) in [(2, 2), (3, 2), (2, 5), (6, 4)] {
            assert!(binding_report(a0, a1, QUADRATURE_NODES).unwrap().pass);
        }
    }

    #[test]
    fn binding_loops_close_and_are_disjoint() {
        for (a0, a1) in [(2u32, 2u32), (4, 6), (3, 3)] {
            let l = binding_components(a0, a1).unwrap();
            for c in &l {
                assert!(c.point(0.0).max_abs_diff(&c.point(c.period)) < 1e-12);
            }
            // loops are distinct orbits: starting point of one is never on another
            for c in &l[1..] {
                let p = c.point(0.0);
                for k in 0..4096 {
                    let q = l[0].point(l[0].period * k as f64 / 4096.0);
                    assert!(p.max_abs_diff(&q) > 1e-3);
                }
            }
        }
    }

    #[test]
    fn covering_examples() {
        let spec = CoveringSpec::new(Exponents::new(vec![2, 2]).unwrap());
        let f = fibers_over(&spec, &CPoint(vec![c(1.0, 0.0)])).unwrap();
        assert_eq!(f.len(), 2);
        let mut z0: Vec<f64> = f.iter().map(|p| p[0].im).collect();
        z0.sort_by(f64::total_cmp);
        assert!((z0[0] + 1.0).abs() < 1e-15 && (z0[1] - 1.0).abs() < 1e-15);
        assert!(f.iter().all(|p| p[0].re.abs() < 1e-15));

        let spec = CoveringSpec::new(Exponents::new(vec![3, 2, 2]).unwrap());
        let r = 0.5f64.sqrt();
        let branch = CPoint(vec![c(r, 0.0), c(0.0, r)]);
        let f = fibers_over(&spec, &branch).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(pi0(&f[0]), branch);
        assert!(theta_tilde(&spec, &f[0]).is_err());
        let z = CPoint(vec![c(0.5, 0.0), c(0.3, 0.0), c(0.0, 0.2)]);
        assert!((theta_tilde(&spec, &z).unwrap() - C64::from_polar(1.0, PI / 3.0)).norm() < 1e-15);
        assert!(CoveringSpec::with_eta(spec.exponents.clone(), c(1.0, 0.0)).is_err());
        assert!(CoveringSpec::with_eta(spec.exponents.clone(), c(-1.0, 0.0)).is_ok());
    }

    #[test]
    fn radial_profile_examples() {
        assert_eq!(radial_profile(3, 0.5, 0.0).unwrap(), 0.0);
        assert_eq!(radial_profile(3, 0.5, 0.7).unwrap(), 0.7);
        assert_eq!(radial_profile(3, 0.5, 0.1).unwrap(), 0.1f64.powi(3));
        assert!(radial_profile(3, 2.0, 0.5).is_err());
    }

    #[test]
    fn radial_profile_monotone_grid() {
        for k in [2u32, 3, 5] {
            for delta in [0.1, 0.5, 1.0] {
                let g: Vec<f64> = (0..=10_000).map(|i| radial_profile(k, delta, 1.5 * i as f64 / 10_000.0).unwrap()).collect();
                assert!(g.windows(2).all(|w| w[1] > w[0]), "k={k} delta={delta}");
            }
        }
    }

    proptest! {
        #[test]
        fn fibers_cover_and_project(re in prop::collection::vec(-1.0f64..1.0, 4), a0 in 2u32..6) {
            let w = CPoint(vec![c(re[0], re[1]), c(re[2], re[3])]);
            prop_assume!(w.norm() > 0.1);
            let w = CPoint(w.0.iter().map(|x| x / w.norm()).collect());
            let spec = CoveringSpec::new(Exponents::new(vec![a0, 2, 3]).unwrap());
            let f = fibers_over(&spec, &w).unwrap();
            prop_assert_eq!(f.len(), a0 as usize);
            let e = &spec.exponents;
            for p in &f {
                prop_assert!(f_eval(e, p).norm() < 1e-12);
                prop_assert_eq!(pi0(p), w.clone());
            }
            prop_assert!(theta_tilde_power_residual(&spec, &f).unwrap() < 1e-12);
        }

        #[test]
        fn reeb_shift_exact(t in -10.0f64..10.0, re in prop::collection::vec(-1.0f64..1.0, 6)) {
            let s = ob(&[2, 3, 5]);
            let z = CPoint(vec![c(re[0], re[1]), c(re[2], re[3]), c(re[4], re[5])]);
            prop_assume!(f_eval(&s.tail, &z).norm() > 1e-3);
            prop_assert!(reeb_page_shift(&s, &z, t).unwrap() < 1e-12);
        }
    }
}
