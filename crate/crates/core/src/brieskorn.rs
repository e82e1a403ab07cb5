//! The Brieskorn polynomial `f(z) = Σ z_j^{a_j}`, the level sets
//! `Σ_s = {f = 0} ∩ {s|z_0|² + |z_1|² + … + |z_n|² = 1}`, deterministic point
//! sampling, and the weighted ℝ-action `z_j ↦ e^{T/a_j} z_j` used to move
//! points between the level sets.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{
    newton_project, CPoint, ConstraintSet, PolyPart, RTangent, WeightedNorm, C64, NEWTON_MAX_ITER,
    NEWTON_TOL,
};
use crate::roots::{bisect_increasing, bracket_increasing};

/// Tolerance for "the point lies on the manifold" preconditions.
pub const ON_MANIFOLD_TOL: f64 = 1e-9;

/// Attempts per sample index before sampling gives up.
const MAX_ATTEMPTS: usize = 200;

/// Exponents `(a_0, …, a_n)`, each at least 1, at least two of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(a: Vec<u32>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::InvalidInput(format!("need at least two exponents, got {}", a.len())));
        }
        if a.contains(&0) {
            return Err(Error::InvalidInput("exponents must be positive".into()));
        }
        Ok(Exponents(a))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(a_1, …, a_n)`.
    pub fn tail(&self) -> &[u32] {
        &self.0[1..]
    }

    /// True when some `a_j = 1`: `V_f` is then smooth at the origin and the
    /// branched-cover picture degenerates. Such tuples are accepted but
    /// flagged in reports.
    pub fn has_unit_exponent(&self) -> bool {
        self.0.contains(&1)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let a = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| Error::InvalidInput(format!("bad exponent {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Exponents::new(a)
    }
}

impl std::fmt::Display for Exponents {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelVariant {
    Interpolated,
    Cylinder,
}

/// `Σ_s(a)` for `s ∈ [0, 1]`; the cylinder variant is `Σ_0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelSpec {
    pub exponents: Exponents,
    pub s: f64,
    pub variant: LevelVariant,
}

impl LevelSpec {
    pub fn interpolated(exponents: Exponents, s: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidInput(format!("s = {s} outside [0, 1]")));
        }
        Ok(LevelSpec { exponents, s, variant: LevelVariant::Interpolated })
    }

    pub fn brieskorn(exponents: Exponents) -> Self {
        LevelSpec { exponents, s: 1.0, variant: LevelVariant::Interpolated }
    }

    pub fn cylinder(exponents: Exponents) -> Self {
        LevelSpec { exponents, s: 0.0, variant: LevelVariant::Cylinder }
    }

    /// Weights of `R_s`: `s` on `z_0`, 1 elsewhere.
    pub fn weights(&self) -> Vec<f64> {
        let s = match self.variant {
            LevelVariant::Cylinder => 0.0,
            LevelVariant::Interpolated => self.s,
        };
        std::iter::once(s).chain(std::iter::repeat_n(1.0, self.exponents.len() - 1)).collect()
    }

    pub fn constraint_set(&self) -> ConstraintSet {
        let a = self.exponents.as_slice();
        ConstraintSet::new(a.len())
            .with(PolyPart::real(a), 0.0)
            .with(PolyPart::imag(a), 0.0)
            .with(WeightedNorm { weights: self.weights() }, 1.0)
    }
}

/// Manifolds the sampler and the contact checks run on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Manifold {
    Level(LevelSpec),
    /// The unit sphere in complex `m`-space.
    Sphere(usize),
}

impl Manifold {
    pub fn constraint_set(&self) -> ConstraintSet {
        match self {
            Manifold::Level(spec) => spec.constraint_set(),
            Manifold::Sphere(m) => ConstraintSet::new(*m).with(WeightedNorm { weights: vec![1.0; *m] }, 1.0),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Manifold::Level(spec) => spec.exponents.len(),
            Manifold::Sphere(m) => *m,
        }
    }

    /// Real dimension.
    pub fn dim(&self) -> usize {
        self.constraint_set().manifold_dim()
    }

    pub fn label(&self) -> String {
        match self {
            Manifold::Level(spec) => match spec.variant {
                LevelVariant::Cylinder => format!("cylinder{}", spec.exponents),
                LevelVariant::Interpolated => format!("Sigma_{}{}", spec.s, spec.exponents),
            },
            Manifold::Sphere(m) => format!("S^{}", 2 * m - 1),
        }
    }
}

pub fn f_eval(e: &Exponents, z: &CPoint) -> C64 {
    e.as_slice().iter().zip(&z.0).map(|(&a, zj)| zj.powu(a)).sum()
}

/// `(a_j z_j^{a_j − 1})_j`, the holomorphic derivative of `f`.
pub fn f_derivative(e: &Exponents, z: &CPoint) -> Vec<C64> {
    e.as_slice().iter().zip(&z.0).map(|(&a, zj)| zj.powu(a - 1) * a as f64).collect()
}

/// Rank test of the `2 × 2(n+1)` matrix `[[∂f, ∂̄f], [∂f̄, ∂̄f̄]]`.
pub fn jacobian_full_rank(e: &Exponents, z: &CPoint) -> bool {
    let d = f_derivative(e, z);
    let m = d.len();
    let mat = DMatrix::from_fn(2, 2 * m, |r, c| match (r, c < m) {
        (0, true) => d[c],
        (1, false) => d[c - m].conj(),
        _ => C64::new(0.0, 0.0),
    });
    let sv = mat.singular_values();
    let top = sv.max();
    top > 0.0 && sv.iter().filter(|&&s| s > 1e-10 * top).count() == 2
}

/// Generator of the ℝ-action: `(z_0/a_0, …, z_n/a_n)`.
pub fn z_field(e: &Exponents, z: &CPoint) -> RTangent {
    RTangent(e.as_slice().iter().zip(&z.0).map(|(&a, zj)| zj / a as f64).collect())
}

/// `Σ weight_j |z_j|² / a_j`, the derivative of the defining function of
/// `R_s` along the ℝ-action up to the normalization used for it in the
/// transversality argument.
pub fn transversality_value(spec: &LevelSpec, z: &CPoint) -> Result<f64> {
    let res = spec.constraint_set().max_residual(z);
    if !(res <= ON_MANIFOLD_TOL) {
        return Err(Error::OffManifold(res));
    }
    Ok(spec
        .weights()
        .iter()
        .zip(spec.exponents.as_slice())
        .zip(&z.0)
        .map(|((w, &a), zj)| w * zj.norm_sqr() / a as f64)
        .sum())
}

/// Sampled points plus rejection statistics.
#[derive(Clone, Debug, Default)]
pub struct SampleSet {
    pub points: Vec<CPoint>,
    pub rejected_rank: usize,
    pub rejected_convergence: usize,
    pub rejected_filter: usize,
}

fn stream_rng(seed: u64, index: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Draws `count` points of the constraint set, point `i` from the ChaCha
/// stream `i` under `seed`. Each attempt is a unit-normalized Gaussian start
/// followed by Newton projection; points where `accept` is false or the
/// constraint Jacobian is rank deficient are rejected and redrawn.
pub fn sample_constraint_set(
    cs: &ConstraintSet,
    count: usize,
    seed: u64,
    accept: impl Fn(&CPoint) -> bool + Sync,
) -> Result<SampleSet> {
    if count == 0 {
        return Err(Error::InvalidInput("sample count must be at least 1".into()));
    }
    let per_point: Vec<Result<(CPoint, [usize; 3])>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let mut stats = [0usize; 3];
            let mut last_start = None;
            for _ in 0..MAX_ATTEMPTS {
                let mut real: Vec<f64> = (0..2 * cs.dim).map(|_| StandardNormal.sample(&mut rng)).collect();
                let norm = real.iter().map(|x| x * x).sum::<f64>().sqrt();
                real.iter_mut().for_each(|x| *x /= norm);
                let start = CPoint::from_real(&real);
                match newton_project(cs, &start, NEWTON_TOL, NEWTON_MAX_ITER) {
                    Ok(p) => {
                        if !accept(&p) {
                            stats[2] += 1;
                        } else if !full_rank(cs, &p) {
                            stats[0] += 1;
                        } else {
                            return Ok((p, stats));
                        }
                    }
                    Err(Error::RankDeficient { .. }) => stats[0] += 1,
                    Err(_) => stats[1] += 1,
                }
                last_start = Some(start);
            }
            Err(Error::Sampling(format!(
                "index {i}: {MAX_ATTEMPTS} attempts failed, last start {:?}",
                last_start.map(|s| s.0)
            )))
        })
        .collect();
    let mut out = SampleSet::default();
    for r in per_point {
        let (p, stats) = r?;
        out.points.push(p);
        out.rejected_rank += stats[0];
        out.rejected_convergence += stats[1];
        out.rejected_filter += stats[2];
    }
    Ok(out)
}

fn full_rank(cs: &ConstraintSet, z: &CPoint) -> bool {
    let jac = cs.jacobian(z);
    let sv = jac.singular_values();
    let top = sv.max();
    top > 0.0 && sv.iter().filter(|&&s| s > 1e-10 * top).count() == cs.len()
}

pub fn sample_manifold(manifold: &Manifold, count: usize, seed: u64) -> Result<SampleSet> {
    sample_constraint_set(&manifold.constraint_set(), count, seed, |_| true)
}

pub fn sample_level_set(spec: &LevelSpec, count: usize, seed: u64) -> Result<Vec<CPoint>> {
    Ok(sample_manifold(&Manifold::Level(spec.clone()), count, seed)?.points)
}

/// The ℝ-action at time `t`.
pub fn flow(e: &Exponents, z: &CPoint, t: f64) -> CPoint {
    CPoint(e.as_slice().iter().zip(&z.0).map(|(&a, zj)| zj * (t / a as f64).exp()).collect())
}

/// The time `T` at which the ℝ-orbit of `z` meets `Σ w_j |z_j|² = 1`.
///
/// `Σ w_j e^{2T/a_j} |z_j|²` is strictly increasing in `T` whenever some
/// weighted coordinate is nonzero, so the root is unique; it is bracketed by
/// doubling, bisected to `1e-14` and polished with one Newton step.
pub fn flow_time(e: &Exponents, weights: &[f64], z: &CPoint) -> Result<f64> {
    let terms: Vec<(f64, f64)> = e
        .as_slice()
        .iter()
        .zip(weights)
        .zip(&z.0)
        .map(|((&a, w), zj)| (w * zj.norm_sqr(), 2.0 / a as f64))
        .filter(|(c, _)| *c > 0.0)
        .collect();
    if terms.is_empty() {
        return Err(Error::NoSolution("all weighted coordinates vanish".into()));
    }
    let g = |t: f64| terms.iter().map(|(c, k)| c * (k * t).exp()).sum::<f64>() - 1.0;
    let dg = |t: f64| terms.iter().map(|(c, k)| c * k * (k * t).exp()).sum::<f64>();
    let (lo, hi) = bracket_increasing(g, 0.0)?;
    let mut t = bisect_increasing(g, lo, hi, 1e-14);
    let slope = dg(t);
    if slope > 0.0 {
        t -= g(t) / slope;
    }
    Ok(t)
}

fn check_on(spec: &LevelSpec, z: &CPoint) -> Result<()> {
    if z.len() != spec.exponents.len() {
        return Err(Error::LengthMismatch { expected: spec.exponents.len(), got: z.len() });
    }
    let res = spec.constraint_set().max_residual(z);
    if res <= ON_MANIFOLD_TOL {
        Ok(())
    } else {
        Err(Error::OffManifold(res))
    }
}

fn s_weights(e: &Exponents, s: f64) -> Vec<f64> {
    std::iter::once(s).chain(std::iter::repeat_n(1.0, e.len() - 1)).collect()
}

/// The unique `T ≥ 0` with `s e^{2T/a_0}|z_0|² + Σ_{j≥1} e^{2T/a_j}|z_j|² = 1`
/// for `z` on `Σ_1`.
pub fn solve_t(e: &Exponents, z: &CPoint, s: f64) -> Result<f64> {
    check_on(&LevelSpec::brieskorn(e.clone()), z)?;
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidInput(format!("s = {s} outside [0, 1]")));
    }
    if s == 0.0 && z.0[1..].iter().all(|c| c.norm_sqr() == 0.0) {
        return Err(Error::NoSolution("s = 0 and z' = 0".into()));
    }
    Ok(flow_time(e, &s_weights(e, s), z)?.max(0.0))
}

/// `Φ_s`: moves a point of `Σ_1` along its ℝ-orbit onto `Σ_s`.
pub fn phi_s(e: &Exponents, z: &CPoint, s: f64) -> Result<CPoint> {
    let t = solve_t(e, z, s)?;
    Ok(flow(e, z, t))
}

/// Inverse of `Φ_s`: moves a point of `Σ_s` back onto `Σ_1`.
pub fn phi_s_inverse(e: &Exponents, w: &CPoint, s: f64) -> Result<CPoint> {
    check_on(&LevelSpec::interpolated(e.clone(), s)?, w)?;
    let t = flow_time(e, &vec![1.0; e.len()], w)?;
    Ok(flow(e, w, t))
}

/// Point of `Σ_s` on the ℝ-orbit of an arbitrary `z`; no precondition. Used
/// for finite differences, where `z` is perturbed off the manifold.
pub fn flow_to_level(e: &Exponents, z: &CPoint, s: f64) -> Result<CPoint> {
    let t = flow_time(e, &s_weights(e, s), z)?;
    Ok(flow(e, z, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn e(a: &[u32]) -> Exponents {
        Exponents::new(a.to_vec()).unwrap()
    }

    fn diag22() -> CPoint {
        let r = 0.5f64.sqrt();
        CPoint(vec![c(r, 0.0), c(0.0, r)])
    }

    #[test]
    fn exponents_validation() {
        assert!(Exponents::new(vec![2]).is_err());
        assert!(Exponents::new(vec![2, 0]).is_err());
        assert!(e(&[1, 2]).has_unit_exponent());
        assert_eq!(Exponents::parse("3, 2,2").unwrap(), e(&[3, 2, 2]));
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_eval(&e(&[2, 2]), &CPoint(vec![c(1.0, 0.0), c(0.0, 1.0)])), c(0.0, 0.0));
        assert_eq!(f_eval(&e(&[2, 2, 2]), &CPoint::zeros(3)), c(0.0, 0.0));
        assert_eq!(f_eval(&e(&[3, 2]), &CPoint(vec![c(1.0, 0.0), c(1.0, 0.0)])), c(2.0, 0.0));
    }

    #[test]
    fn jacobian_rank_examples() {
        assert!(!jacobian_full_rank(&e(&[2, 2, 2]), &CPoint::zeros(3)));
        assert!(!jacobian_full_rank(&e(&[3, 5]), &CPoint::zeros(2)));
        assert!(jacobian_full_rank(&e(&[2, 2]), &CPoint(vec![c(1.0, 0.0), c(0.0, 1.0)])));
        let r = 0.5f64.sqrt();
        assert!(jacobian_full_rank(&e(&[2, 2, 2]), &CPoint(vec![c(0.0, 0.0), c(r, 0.0), c(0.0, r)])));
    }

    #[test]
    fn z_field_examples() {
        let v = z_field(&e(&[2, 2]), &CPoint(vec![c(1.0, 0.0), c(0.0, 1.0)]));
        assert_eq!(v.0, vec![c(0.5, 0.0), c(0.0, 0.5)]);
        assert_eq!(z_field(&e(&[2, 3]), &CPoint::zeros(2)).0, vec![c(0.0, 0.0); 2]);
        let z = CPoint(vec![c(0.3, 0.2), c(-1.0, 0.5)]);
        assert_eq!(z_field(&e(&[1, 1]), &z).0, z.0);
    }

    #[test]
    fn transversality_examples() {
        let spec = LevelSpec::brieskorn(e(&[2, 2]));
        assert!((transversality_value(&spec, &diag22()).unwrap() - 0.5).abs() < 1e-15);

        // cylinder point with z' = (0.6, 0.8i), z_0^2 = −(0.36 − 0.64)
        let z = CPoint(vec![c(0.28f64.sqrt(), 0.0), c(0.6, 0.0), c(0.0, 0.8)]);
        let cyl = LevelSpec::cylinder(e(&[2, 2, 2]));
        assert!((transversality_value(&cyl, &z).unwrap() - 0.5).abs() < 1e-14);

        let off = CPoint(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(transversality_value(&spec, &off).is_err());
    }

    #[test]
    fn sampling_residuals_and_determinism() {
        let spec = LevelSpec::brieskorn(e(&[2, 2, 2]));
        let pts = sample_level_set(&spec, 100, 7).unwrap();
        assert_eq!(pts.len(), 100);
        let cs = spec.constraint_set();
        assert!(pts.iter().all(|p| cs.max_residual(p) < 1e-12));
        assert_eq!(pts, sample_level_set(&spec, 100, 7).unwrap());
        assert_ne!(pts, sample_level_set(&spec, 100, 8).unwrap());

        let cyl = LevelSpec::cylinder(e(&[2, 2, 2]));
        for p in sample_level_set(&cyl, 10, 1).unwrap() {
            assert!((p[1].norm_sqr() + p[2].norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sampling_rejects_zero_count() {
        assert!(sample_level_set(&LevelSpec::brieskorn(e(&[2, 2])), 0, 1).is_err());
    }

    #[test]
    fn solve_t_examples() {
        let ex = e(&[2, 2]);
        assert_eq!(solve_t(&ex, &diag22(), 1.0).unwrap(), 0.0);
        assert!((solve_t(&ex, &diag22(), 0.0).unwrap() - 2f64.ln()).abs() < 1e-12);
        // e^T (1/3 + 1)/2 = 1
        assert!((solve_t(&ex, &diag22(), 1.0 / 3.0).unwrap() - 1.5f64.ln()).abs() < 1e-12);
        // off-manifold input
        assert!(solve_t(&ex, &CPoint(vec![c(1.0, 0.0), c(0.0, 0.0)]), 0.5).is_err());
    }

    #[test]
    fn solve_t_rejects_degenerate_point() {
        // z' = 0 never occurs on Σ_1; the input is rejected either way.
        let z = CPoint(vec![c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(solve_t(&e(&[2, 2]), &z, 0.0).is_err());
    }

    #[test]
    fn phi_s_examples() {
        let ex = e(&[2, 2]);
        assert!(phi_s(&ex, &diag22(), 1.0).unwrap().max_abs_diff(&diag22()) < 1e-15);
        let w = phi_s(&ex, &diag22(), 0.0).unwrap();
        assert!(w.max_abs_diff(&CPoint(vec![c(1.0, 0.0), c(0.0, 1.0)])) < 1e-12);
        let back = phi_s_inverse(&ex, &CPoint(vec![c(1.0, 0.0), c(0.0, 1.0)]), 0.0).unwrap();
        assert!(back.max_abs_diff(&diag22()) < 1e-12);
        assert!(phi_s_inverse(&ex, &diag22(), 1.0).unwrap().max_abs_diff(&diag22()) < 1e-15);
    }

    #[test]
    fn phi_s_preserves_variety_and_round_trips() {
        let ex = e(&[3, 2, 2]);
        let pts = sample_level_set(&LevelSpec::brieskorn(ex.clone()), 100, 11).unwrap();
        for s in [0.0, 0.25, 0.5, 0.75] {
            let target = LevelSpec::interpolated(ex.clone(), s).unwrap().constraint_set();
            for p in &pts {
                let w = phi_s(&ex, p, s).unwrap();
                assert!(f_eval(&ex, &w).norm() < 1e-10);
                assert!(target.max_residual(&w) < 1e-10);
                let back = phi_s_inverse(&ex, &w, s).unwrap();
                assert!(back.max_abs_diff(p) < 1e-9);
            }
        }
        let half = LevelSpec::interpolated(e(&[2, 2, 2]), 0.5).unwrap();
        for w in sample_level_set(&half, 100, 5).unwrap() {
            let z = phi_s_inverse(&half.exponents, &w, 0.5).unwrap();
            assert!(phi_s(&half.exponents, &z, 0.5).unwrap().max_abs_diff(&w) < 1e-9);
        }
    }

    #[test]
    fn time_equation_is_increasing_at_solution() {
        let ex = e(&[2, 3, 5]);
        for p in sample_level_set(&LevelSpec::brieskorn(ex.clone()), 50, 2).unwrap() {
            for s in [0.0, 0.3, 0.9] {
                let t = solve_t(&ex, &p, s).unwrap();
                let deriv: f64 = ex
                    .as_slice()
                    .iter()
                    .zip(s_weights(&ex, s))
                    .zip(&p.0)
                    .map(|((&a, w), zj)| w * 2.0 / a as f64 * (2.0 * t / a as f64).exp() * zj.norm_sqr())
                    .sum();
                assert!(deriv > 0.0);
            }
        }
    }
}
