//! Contact-condition checks on sampled points: single forms, families of
//! forms, the closed-form top-degree identity for `α_s`, the ε-perturbation
//! of the pulled-back form on the cylinder model, and the `α₋` criterion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::brieskorn::{
    f_derivative, f_eval, flow_to_level, sample_level_set, Exponents, LevelSpec, Manifold, ON_MANIFOLD_TOL,
};
use crate::error::{Error, Result};
use crate::openbook::pi0;
use crate::exterior::{
    contact_value, eval_one_form, eval_two_form, tangent_frame, top_form_value, CPoint, Covector, DiagonalOneForm,
    RTangent, TangentFrame, WeightedNorm, C64, Constraint,
};
use crate::report::{CheckResult, VerificationReport, Witness};

/// Default floor for `|α ∧ (dα)^m|` on orthonormal frames.
pub const CONTACT_THRESHOLD: f64 = 1e-6;
/// Largest constraint residual accepted for a sample.
pub const RESIDUAL_TOL: f64 = ON_MANIFOLD_TOL;
/// `|value|` below which the degenerate locus counts as degenerate.
pub const DEGENERATE_TOL: f64 = 1e-8;
/// Exponent range of the ε-search: `ε = ε_max · 2^{-k}`, `k ≤ 40`.
pub const EPS_HALVINGS: u32 = 40;
/// Extra halvings tested past the first passing ε to confirm monotonicity.
pub const EPS_MONOTONE_EXTRA: u32 = 4;
pub const PULLBACK_TOL: f64 = 1e-10;
pub const S_DERIVATIVE_STEP: f64 = 1e-4;
pub const JACOBIAN_FD_STEP: f64 = 1e-5;

fn per_sample_rng(seed: u64, index: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn random_tangent(frame: &TangentFrame, rng: &mut impl Rng) -> RTangent {
    let w: Vec<f64> = (0..frame.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
    frame.combine(&w)
}

/// Contact values of `form` on canonical frames at each sample.
pub fn contact_values(form: &DiagonalOneForm, manifold: &Manifold, samples: &[CPoint]) -> Result<Vec<(f64, f64)>> {
    let cs = manifold.constraint_set();
    let dim = manifold.dim();
    samples
        .par_iter()
        .map(|p| {
            let frame = tangent_frame(&cs, p, dim)?;
            Ok((contact_value(form, &frame)?, cs.max_residual(p)))
        })
        .collect()
}

/// Evaluates the contact condition at every sample. Passes when every
/// `|α ∧ (dα)^m|` exceeds `threshold` and every residual is below
/// [`RESIDUAL_TOL`]. Frames carry the orientation induced by the ordered
/// constraints, so a uniform sign is expected on connected samples; it is
/// recorded but not gated on.
pub fn verify_contact(
    form: &DiagonalOneForm,
    manifold: &Manifold,
    samples: &[CPoint],
    threshold: f64,
) -> Result<VerificationReport> {
    let values = contact_values(form, manifold, samples)?;
    let mut report = VerificationReport::new("verify_contact")
        .param("manifold", manifold.label())
        .param("form", &form.coeffs)
        .tolerance("contact_threshold", threshold)
        .tolerance("residual", RESIDUAL_TOL);
    report.sample_count = samples.len();
    summarize_values(&mut report, &values, samples, threshold, None);
    Ok(report.finish())
}

fn summarize_values(
    report: &mut VerificationReport,
    values: &[(f64, f64)],
    samples: &[CPoint],
    threshold: f64,
    parameter: Option<f64>,
) {
    let (imin, min_abs) = values
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (i, v.abs()))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    let max_res = values.iter().fold(0.0f64, |m, (_, r)| m.max(*r));
    let all_pos = values.iter().all(|(v, _)| *v > 0.0);
    let all_neg = values.iter().all(|(v, _)| *v < 0.0);
    report.min_abs_value = Some(min_abs);
    report.max_residual = Some(max_res);
    report.sign_consistent = Some(all_pos || all_neg);
    let prefix = parameter.map(|t| format!("t={t}: ")).unwrap_or_default();
    if let Some(p) = samples.get(imin) {
        let w = Witness { label: format!("{prefix}min |contact value|"), parameter, point: p.clone(), value: values[imin].0 };
        report.push(CheckResult::above(format!("{prefix}min_abs_contact_value"), min_abs, threshold).with_witness(&w));
        report.witnesses.push(w);
    }
    report.push(CheckResult::at_most(format!("{prefix}max_constraint_residual"), max_res, RESIDUAL_TOL));
}

/// `verify_contact` at every grid value of a family `t ↦ α_t` on a fixed
/// manifold and sample set.
pub fn verify_family(
    family: impl Fn(f64) -> DiagonalOneForm,
    t_grid: &[f64],
    manifold: &Manifold,
    samples: &[CPoint],
    threshold: f64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("verify_family")
        .param("manifold", manifold.label())
        .param("t_grid", t_grid)
        .tolerance("contact_threshold", threshold)
        .tolerance("residual", RESIDUAL_TOL);
    report.sample_count = samples.len();
    let mut global: Option<Witness> = None;
    let mut signs = true;
    let mut max_res = 0.0f64;
    for &t in t_grid {
        let values = contact_values(&family(t), manifold, samples)?;
        let mut sub = VerificationReport::new("t");
        summarize_values(&mut sub, &values, samples, threshold, Some(t));
        signs &= sub.sign_consistent.unwrap_or(true);
        max_res = max_res.max(sub.max_residual.unwrap_or(0.0));
        if let Some(w) = sub.witnesses.pop() {
            if global.as_ref().is_none_or(|g| w.value.abs() < g.value.abs()) {
                global = Some(w);
            }
        }
        report.results.extend(sub.results);
    }
    report.min_abs_value = global.as_ref().map(|w| w.value.abs());
    report.max_residual = Some(max_res);
    report.sign_consistent = Some(signs);
    report.witnesses.extend(global);
    Ok(report.finish())
}

/// `α_s` on freshly sampled `Σ_s` for each `s` in the grid.
pub fn verify_alpha_s_family(
    e: &Exponents,
    s_grid: &[f64],
    count: usize,
    seed: u64,
    threshold: f64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("verify_alpha_s_family")
        .param("exponents", e.as_slice())
        .param("s_grid", s_grid)
        .tolerance("contact_threshold", threshold)
        .tolerance("residual", RESIDUAL_TOL);
    report.sample_count = count;
    report.seed = Some(seed);
    let mut min_abs = f64::INFINITY;
    let mut signs = true;
    for &s in s_grid {
        let spec = LevelSpec::interpolated(e.clone(), s)?;
        let samples = sample_level_set(&spec, count, seed)?;
        let values = contact_values(&DiagonalOneForm::alpha_s(e.as_slice(), s), &Manifold::Level(spec), &samples)?;
        let mut sub = VerificationReport::new("s");
        summarize_values(&mut sub, &values, &samples, threshold, Some(s));
        min_abs = min_abs.min(sub.min_abs_value.unwrap_or(f64::INFINITY));
        signs &= sub.sign_consistent.unwrap_or(true);
        report.witnesses.extend(sub.witnesses);
        report.results.extend(sub.results);
    }
    report.min_abs_value = Some(min_abs);
    report.sign_consistent = Some(signs);
    if e.has_unit_exponent() {
        report.notes.push("exponent tuple contains a_j = 1".into());
    }
    Ok(report.finish())
}

/// Both sides of the top-degree identity for
/// `α_s ∧ (dα_s)^{n−1} ∧ dR_s ∧ df ∧ df̄` at one point.
#[derive(Clone, Debug)]
pub struct Lemma44Value {
    /// Direct evaluation on the standard real basis.
    pub lhs: C64,
    /// `Ω` on the standard real basis.
    pub omega: C64,
    /// Scalar bracket, valid at every point.
    pub bracket_general: f64,
    /// The same bracket simplified with `f = 0`, `R_s = 1`.
    pub bracket_on_manifold: f64,
    /// `lhs / (bracket_general · Ω)`, absent when the denominator is tiny.
    pub ratio: Option<C64>,
    /// `lhs / (bracket_on_manifold · Ω)`; meaningful only on `Σ_s`.
    pub ratio_on_manifold: Option<C64>,
}

/// `Ω = (iⁿ/2)(n−1)! a_0⋯a_n` times `dz_0∧dz̄_0∧⋯∧dz_n∧dz̄_n` on the standard
/// basis, which is `(−2i)^{n+1}`.
pub fn omega_value(e: &Exponents) -> C64 {
    let n = e.len() - 1;
    let i = C64::new(0.0, 1.0);
    let fact: f64 = (1..n).map(|k| k as f64).product();
    let prod: f64 = e.as_slice().iter().map(|&a| a as f64).product();
    i.powu(n as u32) / 2.0 * fact * prod * C64::new(0.0, -2.0).powu(e.len() as u32)
}

pub fn lemma44_ratio(e: &Exponents, s: f64, z: &CPoint) -> Result<Lemma44Value> {
    if z.len() != e.len() {
        return Err(Error::LengthMismatch { expected: e.len(), got: z.len() });
    }
    let a = e.as_slice();
    let n = e.len() - 1;
    let alpha = DiagonalOneForm::alpha_s(a, s);
    let weights: Vec<f64> = std::iter::once(s).chain(std::iter::repeat_n(1.0, n)).collect();
    let r_s = WeightedNorm { weights: weights.clone() };
    let df = Covector::holomorphic(&f_derivative(e, z));
    let factors = [
        Covector::from_one_form(&alpha, &z.0),
        Covector::from_gradient(&r_s.gradient(z)),
        df.clone(),
        df.conj(),
    ];
    let sigma = alpha.differential_matrix();
    let lhs = top_form_value(&factors, Some(&sigma), n - 1)?;

    let f = f_eval(e, z);
    let r = r_s.value(z);
    let sum_holo: C64 = a.iter().zip(&z.0).map(|(&aj, zj)| zj.powu(aj) * aj as f64).sum();
    let pow_term = |j: usize| a[j] as f64 * z[j].norm_sqr().powi(a[j] as i32 - 1);
    let tail: f64 = (1..=n).map(pow_term).sum();
    let bracket_general = (s * f.conj() * sum_holo + s * f * sum_holo.conj()).re
        - 2.0 * a[0] as f64 * r * z[0].norm_sqr().powi(a[0] as i32 - 1)
        - 2.0 * s * r * tail;
    let bracket_on_manifold = -2.0 * (pow_term(0) + s * tail);
    let omega = omega_value(e);
    let ratio_of = |b: f64| {
        let den = omega * b;
        (den.norm() >= 1e-12).then(|| lhs / den)
    };
    Ok(Lemma44Value {
        lhs,
        omega,
        bracket_general,
        bracket_on_manifold,
        ratio: ratio_of(bracket_general),
        ratio_on_manifold: ratio_of(bracket_on_manifold),
    })
}

/// Branch points `(0, w)` of the cylinder model, `w` sampled on the tail
/// Brieskorn manifold in the unit sphere.
pub fn branch_points(e: &Exponents, count: usize, seed: u64) -> Result<Vec<CPoint>> {
    let tail = Exponents::new(e.tail().to_vec())?;
    let w = sample_level_set(&LevelSpec::brieskorn(tail), count, seed)?;
    Ok(w.into_iter().map(|w| CPoint(std::iter::once(C64::new(0.0, 0.0)).chain(w.0).collect())).collect())
}

#[derive(Clone, Debug)]
pub struct EpsilonSearch {
    pub eps_star: Option<f64>,
    /// `(ε, min |contact value|, pass)` for every tested ε, in order.
    pub trajectory: Vec<(f64, f64, bool)>,
    pub monotone: bool,
    pub report: VerificationReport,
}

/// Largest `ε = ε_max·2^{-k}` for which `α_0 + ε γ` is contact on all
/// samples of the cylinder model, plus positivity of `dγ` on `ker dπ_0` at
/// the branch samples (where `ker dπ_0` is the `z_0`-plane).
pub fn epsilon_search(
    e: &Exponents,
    samples: &[CPoint],
    branch_samples: &[CPoint],
    eps_max: f64,
    threshold: f64,
) -> Result<EpsilonSearch> {
    let m = e.len();
    let cyl = Manifold::Level(LevelSpec::cylinder(e.clone()));
    let all: Vec<CPoint> = samples.iter().chain(branch_samples).cloned().collect();
    let alpha0 = DiagonalOneForm::alpha_s(e.as_slice(), 0.0);
    let gamma = DiagonalOneForm::gamma(m);

    let mut trajectory = Vec::new();
    let mut eps_star = None;
    let mut star_report = None;
    let mut stop_at = EPS_HALVINGS;
    let mut k = 0;
    while k <= stop_at {
        let eps = eps_max * 2f64.powi(-(k as i32));
        let rep = verify_contact(&alpha0.plus_scaled(&gamma, eps), &cyl, &all, threshold)?;
        trajectory.push((eps, rep.min_abs_value.unwrap_or(0.0), rep.pass));
        if rep.pass && eps_star.is_none() {
            eps_star = Some(eps);
            star_report = Some(rep);
            stop_at = (k + EPS_MONOTONE_EXTRA).min(EPS_HALVINGS);
        }
        k += 1;
    }
    let monotone = match trajectory.iter().position(|t| t.2) {
        Some(first) => trajectory[first..].iter().all(|t| t.2),
        None => true,
    };

    // dγ on the z_0-plane at branch points: the plane must be tangent and
    // dγ(∂x_0, ∂y_0) positive.
    let cs = cyl.constraint_set();
    let e0 = RTangent::basis(m, 0, false);
    let ie0 = RTangent::basis(m, 0, true);
    let mut min_dgamma = f64::INFINITY;
    let mut max_normal = 0.0f64;
    for p in branch_samples {
        for g in cs.gradients(p) {
            max_normal = max_normal.max(g.dot(&e0).abs()).max(g.dot(&ie0).abs());
        }
        min_dgamma = min_dgamma.min(eval_two_form(&gamma, &e0, &ie0)?);
    }

    let mut report = VerificationReport::new("epsilon_search")
        .param("exponents", e.as_slice())
        .param("eps_max", eps_max)
        .param("trajectory", &trajectory)
        .tolerance("contact_threshold", threshold)
        .tolerance("branch_tangency", DEGENERATE_TOL);
    report.sample_count = all.len();
    if let Some(r) = &star_report {
        report.min_abs_value = r.min_abs_value;
        report.max_residual = r.max_residual;
        report.sign_consistent = r.sign_consistent;
        report.witnesses = r.witnesses.clone();
    }
    report.push(CheckResult::flag("eps_star", eps_star, eps_star.is_some()));
    report.push(CheckResult::flag("monotone_trajectory", monotone, monotone));
    report.push(CheckResult::flag("branch_samples", branch_samples.len(), !branch_samples.is_empty()));
    report.push(CheckResult::at_most("z0_plane_normal_component", max_normal, DEGENERATE_TOL));
    report.push(CheckResult::above("min_dgamma_on_ker_dpi0", min_dgamma, 0.0));
    if e.has_unit_exponent() {
        report.notes.push("exponent tuple contains a_j = 1".into());
    }
    Ok(EpsilonSearch { eps_star, trajectory, monotone, report: report.finish() })
}

/// `α_0(v) = β(dπ_0 v)` for random tangent vectors on the cylinder model,
/// `β` having coefficients `(a_1, …, a_n)`.
pub fn pullback_check(e: &Exponents, samples: &[CPoint], seed: u64) -> Result<VerificationReport> {
    let cyl = Manifold::Level(LevelSpec::cylinder(e.clone()));
    let cs = cyl.constraint_set();
    let dim = cyl.dim();
    let alpha0 = DiagonalOneForm::alpha_s(e.as_slice(), 0.0);
    let beta = DiagonalOneForm::weighted(e.tail());
    let devs: Vec<(f64, usize)> = samples
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let frame = tangent_frame(&cs, p, dim)?;
            let mut rng = per_sample_rng(seed, i);
            let mut worst = 0.0f64;
            for _ in 0..4 {
                let v = random_tangent(&frame, &mut rng);
                let lhs = eval_one_form(&alpha0, p, &v)?;
                let rhs = eval_one_form(&beta, &pi0(p), &RTangent(v.0[1..].to_vec()))?;
                worst = worst.max((lhs - rhs).abs());
            }
            Ok((worst, i))
        })
        .collect::<Result<_>>()?;
    let (worst, idx) = devs.iter().fold((0.0f64, 0usize), |acc, x| if x.0 > acc.0 { *x } else { acc });
    let mut report = VerificationReport::new("pullback_check")
        .param("exponents", e.as_slice())
        .tolerance("pullback", PULLBACK_TOL);
    report.sample_count = samples.len();
    report.seed = Some(seed);
    let mut row = CheckResult::at_most("max_pullback_deviation", worst, PULLBACK_TOL);
    if let Some(p) = samples.get(idx) {
        row = row.with_witness(p);
    }
    report.push(row);
    Ok(report.finish())
}

/// The map from the cylinder model to `Σ_s` along orbits of the ℝ-action,
/// i.e. `Φ_s ∘ Φ_0⁻¹`; defined off the manifold too.
pub fn cylinder_to_level(e: &Exponents, z: &CPoint, s: f64) -> Result<CPoint> {
    flow_to_level(e, z, s)
}

/// `(Φ_s ∘ Φ_0⁻¹)^* α_s` evaluated at `(z, v)`, with the differential of the
/// map approximated by a central difference of step [`JACOBIAN_FD_STEP`].
pub fn pulled_back_alpha_s(e: &Exponents, z: &CPoint, v: &RTangent, s: f64) -> Result<f64> {
    let h = JACOBIAN_FD_STEP;
    let base = cylinder_to_level(e, z, s)?;
    let plus = cylinder_to_level(e, &z.offset(v, h), s)?;
    let minus = cylinder_to_level(e, &z.offset(v, -h), s)?;
    let dv = RTangent(plus.0.iter().zip(&minus.0).map(|(a, b)| (a - b) / (2.0 * h)).collect());
    eval_one_form(&DiagonalOneForm::alpha_s(e.as_slice(), s), &base, &dv)
}

/// Closed form of `d/ds|_{s=0} (Φ_s ∘ Φ_0⁻¹)^* α_s` on `v` at `z`:
/// `a_0 γ(v) − |z_0|² / (Σ_{j≥1} |z_j|²/a_j) · Σ_{j≥1} Im(z̄_j v_j)`.
///
/// The second term comes from the `s`-dependence of the flow time,
/// `∂T/∂s = −|z_0|² / (2 Σ_{j≥1} |z_j|²/a_j)`, acting through
/// `L_Z α_0 = 2 Σ_{j≥1} Im(z̄_j dz_j)`.
pub fn s_derivative_closed_form(e: &Exponents, z: &CPoint, v: &RTangent) -> f64 {
    let a = e.as_slice();
    let gamma_v = (z[0].conj() * v[0]).im;
    let denom: f64 = (1..a.len()).map(|j| z[j].norm_sqr() / a[j] as f64).sum();
    let tail: f64 = (1..a.len()).map(|j| (z[j].conj() * v[j]).im).sum();
    a[0] as f64 * gamma_v - z[0].norm_sqr() / denom * tail
}

#[derive(Clone, Debug)]
pub struct SDerivativeSample {
    pub point: CPoint,
    pub vector: RTangent,
    pub estimate: f64,
    pub closed_form: f64,
    pub gamma: f64,
}

/// Finite-difference estimates of the `s`-derivative at `s = 0`, using the
/// difference `(g(2h) − g(0)) / 2h` (central about `s = h`, first order at 0).
pub fn s_derivative_samples(e: &Exponents, samples: &[CPoint], h: f64, seed: u64) -> Result<Vec<SDerivativeSample>> {
    let cyl = Manifold::Level(LevelSpec::cylinder(e.clone()));
    let cs = cyl.constraint_set();
    let dim = cyl.dim();
    let gamma = DiagonalOneForm::gamma(e.len());
    samples
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let frame = tangent_frame(&cs, p, dim)?;
            let mut rng = per_sample_rng(seed, i);
            let v = random_tangent(&frame, &mut rng);
            let g0 = pulled_back_alpha_s(e, p, &v, 0.0)?;
            let g2 = pulled_back_alpha_s(e, p, &v, 2.0 * h)?;
            Ok(SDerivativeSample {
                point: p.clone(),
                closed_form: s_derivative_closed_form(e, p, &v),
                gamma: eval_one_form(&gamma, p, &v)?,
                estimate: (g2 - g0) / (2.0 * h),
                vector: v,
            })
        })
        .collect()
}

/// Compares the finite-difference `s`-derivative of the pulled-back family
/// with its closed form (gated at `10·h`) and records how far it is from
/// `γ` alone (informational).
pub fn s_derivative_check(e: &Exponents, samples: &[CPoint], h: f64, seed: u64) -> Result<VerificationReport> {
    let rows = s_derivative_samples(e, samples, h, seed)?;
    let worst = rows
        .iter()
        .map(|r| (r.estimate - r.closed_form).abs())
        .enumerate()
        .fold((0usize, 0.0f64), |acc, (i, d)| if d > acc.1 { (i, d) } else { acc });
    let gamma_dev = rows.iter().map(|r| (r.estimate - r.gamma).abs()).fold(0.0f64, f64::max);
    let mut report = VerificationReport::new("s_derivative_check")
        .param("exponents", e.as_slice())
        .param("h", h)
        .tolerance("closed_form", 10.0 * h);
    report.sample_count = samples.len();
    report.seed = Some(seed);
    let mut row = CheckResult::at_most("max_deviation_from_closed_form", worst.1, 10.0 * h);
    if let Some(r) = rows.get(worst.0) {
        row = row.with_witness(&r.point);
    }
    report.push(row);
    report.notes.push(format!("max deviation from gamma alone: {gamma_dev:e}"));
    Ok(report.finish())
}

/// Errors of the finite-difference estimate at `h` and `h/2` and the observed
/// order `log2(err(h) / err(h/2))`.
pub fn s_derivative_convergence(e: &Exponents, samples: &[CPoint], h: f64, seed: u64) -> Result<(f64, f64, f64)> {
    let err = |h: f64| -> Result<f64> {
        Ok(s_derivative_samples(e, samples, h, seed)?
            .iter()
            .map(|r| (r.estimate - r.closed_form).abs())
            .fold(0.0f64, f64::max))
    };
    let (e1, e2) = (err(h)?, err(h / 2.0)?);
    Ok((e1, e2, (e1 / e2).log2()))
}

/// The scalar bracket governing the contact condition for `α₋`:
/// `−2a_0|z_0|^{2(a_0−1)} + 2C Σ_{j≥1} a_j|z_j|^{2(a_j−1)}
///  − (C−1)(a_0−1)(z̄_0^{a_0} Σ_{j≥1} a_j z_j^{a_j} + z_0^{a_0} Σ_{j≥1} a_j z̄_j^{a_j})`.
pub fn alpha_minus_value(e: &Exponents, c: f64, z: &CPoint) -> Result<f64> {
    let spec = LevelSpec::brieskorn(e.clone());
    let res = spec.constraint_set().max_residual(z);
    if !(res <= ON_MANIFOLD_TOL) {
        return Err(Error::OffManifold(res));
    }
    let a = e.as_slice();
    let a0 = a[0] as f64;
    let tail_abs: f64 = (1..a.len()).map(|j| a[j] as f64 * z[j].norm_sqr().powi(a[j] as i32 - 1)).sum();
    let tail_holo: C64 = (1..a.len()).map(|j| z[j].powu(a[j]) * a[j] as f64).sum();
    let z0a = z[0].powu(a[0]);
    let cross = (z0a.conj() * tail_holo + z0a * tail_holo.conj()).re;
    Ok(-2.0 * a0 * z[0].norm_sqr().powi(a[0] as i32 - 1) + 2.0 * c * tail_abs - (c - 1.0) * (a0 - 1.0) * cross)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct AlphaMinusCase {
    pub exponents: Vec<u32>,
    pub c: f64,
    pub min: f64,
    pub max: f64,
    pub uniform_sign: bool,
    /// A pair of samples with opposite signs, if one exists.
    pub witness: Option<(CPoint, CPoint)>,
    /// Whether the contact value of the `α₋` form itself has uniform sign on
    /// canonically oriented frames.
    pub direct_uniform_sign: bool,
    pub direct_min_abs: f64,
}

/// Evaluates [`alpha_minus_value`] over samples of `Σ(a)` for every
/// `(a, C)` in the grid. Cases with both signs carry a witness pair.
pub fn alpha_minus_search(
    exponent_grid: &[Exponents],
    c_grid: &[f64],
    samples_per_case: usize,
    seed: u64,
) -> Result<Vec<AlphaMinusCase>> {
    let mut cases = Vec::new();
    for e in exponent_grid {
        let spec = LevelSpec::brieskorn(e.clone());
        let samples = sample_level_set(&spec, samples_per_case, seed)?;
        let manifold = Manifold::Level(spec);
        for &c in c_grid {
            let vals = samples.iter().map(|z| alpha_minus_value(e, c, z)).collect::<Result<Vec<_>>>()?;
            let argmin = vals.iter().enumerate().fold(0, |b, (i, v)| if *v < vals[b] { i } else { b });
            let argmax = vals.iter().enumerate().fold(0, |b, (i, v)| if *v > vals[b] { i } else { b });
            let (min, max) = (vals[argmin], vals[argmax]);
            let uniform = min > 0.0 || max < 0.0;
            let direct = contact_values(&DiagonalOneForm::alpha_minus(e.as_slice(), c), &manifold, &samples)?;
            let direct_uniform = direct.iter().all(|d| d.0 > 0.0) || direct.iter().all(|d| d.0 < 0.0);
            let direct_min_abs = direct.iter().map(|d| d.0.abs()).fold(f64::INFINITY, f64::min);
            cases.push(AlphaMinusCase {
                exponents: e.as_slice().to_vec(),
                c,
                min,
                max,
                uniform_sign: uniform,
                witness: (!uniform).then(|| (samples[argmin].clone(), samples[argmax].clone())),
                direct_uniform_sign: direct_uniform,
                direct_min_abs,
            });
        }
    }
    Ok(cases)
}

pub fn alpha_minus_witnesses(cases: &[AlphaMinusCase]) -> Vec<&AlphaMinusCase> {
    cases.iter().filter(|c| c.witness.is_some()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: &[u32]) -> Exponents {
        Exponents::new(a.to_vec()).unwrap()
    }

    #[test]
    fn alpha_s_contact_on_brieskorn() {
        let ex = e(&[2, 2, 2]);
        let spec = LevelSpec::brieskorn(ex.clone());
        let pts = sample_level_set(&spec, 500, 1).unwrap();
        let r = verify_contact(&DiagonalOneForm::alpha_s(ex.as_slice(), 1.0), &Manifold::Level(spec), &pts, CONTACT_THRESHOLD)
            .unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.sign_consistent, Some(true));
    }

    #[test]
    fn alpha_0_degenerates_on_branch_points() {
        let ex = e(&[2, 2, 2]);
        let pts = branch_points(&ex, 50, 2).unwrap();
        let cyl = Manifold::Level(LevelSpec::cylinder(ex.clone()));
        for (v, _) in contact_values(&DiagonalOneForm::alpha_s(ex.as_slice(), 0.0), &cyl, &pts).unwrap() {
            assert!(v.abs() < DEGENERATE_TOL);
        }
        let r = verify_contact(&DiagonalOneForm::alpha_s(ex.as_slice(), 0.0), &cyl, &pts, CONTACT_THRESHOLD).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn beta_on_three_sphere() {
        let sphere = Manifold::Sphere(2);
        let pts = crate::brieskorn::sample_manifold(&sphere, 500, 3).unwrap().points;
        let r = verify_contact(&DiagonalOneForm::weighted(&[2, 3]), &sphere, &pts, CONTACT_THRESHOLD).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn constant_family_repeats_results() {
        let sphere = Manifold::Sphere(2);
        let pts = crate::brieskorn::sample_manifold(&sphere, 40, 3).unwrap().points;
        let r = verify_family(|_| DiagonalOneForm::standard(2), &[0.0, 0.5, 1.0], &sphere, &pts, CONTACT_THRESHOLD).unwrap();
        let mins: Vec<_> = r.results.iter().filter(|x| x.name.ends_with("min_abs_contact_value")).map(|x| x.value.clone()).collect();
        assert_eq!(mins.len(), 3);
        assert!(mins.iter().all(|m| *m == mins[0]));
    }

    #[test]
    fn lemma44_holds_off_manifold() {
        let mut rng = per_sample_rng(5, 0);
        for a in [[2u32, 2, 2], [3, 2, 2], [2, 3, 5]] {
            for s in [0.25, 0.5, 1.0] {
                let z = CPoint((0..3).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect());
                let v = lemma44_ratio(&e(&a), s, &z).unwrap();
                let r = v.ratio.unwrap();
                assert!((r - 1.0).norm() < 1e-9, "{a:?} {s}: {r}");
            }
        }
    }

    #[test]
    fn lemma44_degenerate_locus() {
        let ex = e(&[2, 2, 2]);
        for p in branch_points(&ex, 10, 4).unwrap() {
            let v = lemma44_ratio(&ex, 0.0, &p).unwrap();
            assert!(v.lhs.norm() < DEGENERATE_TOL);
            assert_eq!(v.bracket_on_manifold, 0.0);
            assert!(v.ratio.is_none());
        }
    }

    #[test]
    fn alpha_minus_on_equal_tail() {
        let ex = e(&[2, 2, 2]);
        let r = 0.5f64.sqrt();
        // z_0 = 0, z' = (1, i)/√2
        let z = CPoint(vec![C64::new(0.0, 0.0), C64::new(r, 0.0), C64::new(0.0, r)]);
        for c in [1.0, 7.0, 100.0] {
            assert!((alpha_minus_value(&ex, c, &z).unwrap() - 4.0 * c).abs() < 1e-12);
        }
        assert!(alpha_minus_value(&ex, 1.0, &CPoint::zeros(3)).is_err());
    }

    #[test]
    fn alpha_minus_empty_grid() {
        assert!(alpha_minus_search(&[], &[10.0], 5, 1).unwrap().is_empty());
    }

    #[test]
    fn pullback_in_z0_plane_at_branch_point() {
        let ex = e(&[2, 2, 2]);
        let p = &branch_points(&ex, 1, 9).unwrap()[0];
        let v = RTangent::basis(3, 0, true);
        let alpha0 = DiagonalOneForm::alpha_s(ex.as_slice(), 0.0);
        assert_eq!(eval_one_form(&alpha0, p, &v).unwrap(), 0.0);
        let beta = DiagonalOneForm::weighted(ex.tail());
        assert_eq!(eval_one_form(&beta, &pi0(p), &RTangent(v.0[1..].to_vec())).unwrap(), 0.0);
    }

    #[test]
    fn cylinder_to_level_matches_phi_composition() {
        let ex = e(&[3, 2, 2]);
        for p in sample_level_set(&LevelSpec::cylinder(ex.clone()), 20, 3).unwrap() {
            let on_sigma = crate::brieskorn::phi_s_inverse(&ex, &p, 0.0).unwrap();
            let direct = cylinder_to_level(&ex, &p, 0.4).unwrap();
            let composed = crate::brieskorn::phi_s(&ex, &on_sigma, 0.4).unwrap();
            assert!(direct.max_abs_diff(&composed) < 1e-12);
        }
    }

    #[test]
    fn s_derivative_vanishes_on_tail_directions_at_branch_points() {
        let ex = e(&[2, 2, 2]);
        let p = &branch_points(&ex, 1, 2).unwrap()[0];
        let cyl = Manifold::Level(LevelSpec::cylinder(ex.clone()));
        let frame = tangent_frame(&cyl.constraint_set(), p, cyl.dim()).unwrap();
        for v in &frame.basis {
            if v[0].norm() == 0.0 {
                assert_eq!(s_derivative_closed_form(&ex, p, v), 0.0);
            }
        }
        // any vector with zero z_0-component
        let v = RTangent(vec![C64::new(0.0, 0.0), C64::new(0.3, 0.1), C64::new(-0.2, 0.5)]);
        assert_eq!(s_derivative_closed_form(&ex, p, &v), 0.0);
    }
}
