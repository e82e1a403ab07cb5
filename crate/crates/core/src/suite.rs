//! The acceptance suite: one deterministic check per criterion, each
//! returning a [`CheckResult`] row whose `value` holds the measurements.

use std::f64::consts::{LN_2, PI};

use serde_json::{json, Value};

use crate::brieskorn::{
    phi_s, phi_s_inverse, sample_constraint_set, sample_level_set, sample_manifold, solve_t, Exponents, LevelSpec,
    Manifold,
};
use crate::contact::{
    alpha_minus_search, alpha_minus_witnesses, branch_points, epsilon_search, lemma44_ratio,
    verify_alpha_s_family, verify_family, CONTACT_THRESHOLD, DEGENERATE_TOL,
};
use crate::error::Result;
use crate::exterior::{contact_value, CPoint, DiagonalOneForm, RTangent, TangentFrame, C64};
use crate::monodromy::{
    a_matrix, char_poly, compare_char_polys, lcm, monodromy_matrix, reduced_homology_ranks, rotation_induced_map,
    CharPolyRelation, JoinComplex, SIMPLEX_BUDGET,
};
use crate::openbook::{
    binding_report, fibers_over, sample_lifts, sample_off_binding, theta_tilde_power_residual, CoveringSpec, OpenBookSpec,
    BRANCH_TOL, OFF_BINDING, QUADRATURE_NODES,
};
use crate::report::{json_f64, CheckResult};

pub const DEFAULT_SEED: u64 = 42;

pub const TITLES: [&str; 13] = [
    "calibration on S^3",
    "linear interpolation beta to alpha_std on S^5",
    "top-degree identity for alpha_s",
    "alpha_s contact on Sigma_s",
    "branched covering fibers and theta_tilde",
    "Reeb field suite",
    "epsilon search on the cylinder model",
    "isotopy time solver",
    "monodromy matrix suite",
    "join homology and induced rotation",
    "binding components",
    "alpha_minus sign",
    "determinism",
];

fn e(a: &[u32]) -> Exponents {
    Exponents::new(a.to_vec()).expect("valid exponent literal")
}

fn row(id: usize, value: Value, threshold: Option<f64>, pass: bool) -> CheckResult {
    CheckResult { name: format!("criterion_{id:02}"), value, threshold, pass, witness: None }
}

pub fn criterion_1() -> Result<CheckResult> {
    let c = |re: f64, im: f64| C64::new(re, im);
    let frame = TangentFrame {
        base: CPoint(vec![c(1.0, 0.0), c(0.0, 0.0)]),
        basis: vec![
            RTangent(vec![c(0.0, 1.0), c(0.0, 0.0)]),
            RTangent(vec![c(0.0, 0.0), c(1.0, 0.0)]),
            RTangent(vec![c(0.0, 0.0), c(0.0, 1.0)]),
        ],
    };
    let v = contact_value(&DiagonalOneForm::standard(2), &frame)?;
    let dev = (v - 2.0).abs();
    Ok(row(1, json!({"value": v, "deviation": dev}), Some(1e-12), dev <= 1e-12))
}

pub fn criterion_2(seed: u64) -> Result<CheckResult> {
    let a = [2u32, 3, 4];
    let sphere = Manifold::Sphere(3);
    let samples = sample_manifold(&sphere, 200, seed)?.points;
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let beta = DiagonalOneForm::weighted(&a);
    let std = DiagonalOneForm::standard(3);
    let r = verify_family(|t| beta.lerp(&std, t), &grid, &sphere, &samples, CONTACT_THRESHOLD)?;
    let mut out = row(
        2,
        json!({"min_abs_value": r.min_abs_value.map(json_f64), "max_residual": r.max_residual, "t_values": grid.len(), "samples": samples.len()}),
        Some(CONTACT_THRESHOLD),
        r.pass,
    );
    out.witness = r.witnesses.first().and_then(|w| serde_json::to_value(w).ok());
    Ok(out)
}

pub fn criterion_3(seed: u64) -> Result<CheckResult> {
    let mut worst_general = 0.0f64;
    let mut worst_on = 0.0f64;
    let mut missing = 0usize;
    for a in [[2u32, 2, 2], [3, 2, 2]] {
        for s in [0.25, 0.5, 1.0] {
            let ex = e(&a);
            for z in sample_level_set(&LevelSpec::interpolated(ex.clone(), s)?, 100, seed)? {
                let v = lemma44_ratio(&ex, s, &z)?;
                match (v.ratio, v.ratio_on_manifold) {
                    (Some(r), Some(q)) => {
                        worst_general = worst_general.max((r - 1.0).norm());
                        worst_on = worst_on.max((q - 1.0).norm());
                    }
                    _ => missing += 1,
                }
            }
        }
    }
    let mut max_lhs = 0.0f64;
    let mut max_bracket = 0.0f64;
    for a in [[2u32, 2, 2], [3, 2, 2]] {
        let ex = e(&a);
        for z in branch_points(&ex, 20, seed)? {
            let v = lemma44_ratio(&ex, 0.0, &z)?;
            max_lhs = max_lhs.max(v.lhs.norm());
            max_bracket = max_bracket.max(v.bracket_on_manifold.abs());
        }
    }
    let pass = missing == 0 && worst_general <= 1e-6 && worst_on <= 1e-6 && max_lhs < DEGENERATE_TOL && max_bracket == 0.0;
    Ok(row(
        3,
        json!({
            "max_ratio_deviation_general": worst_general,
            "max_ratio_deviation_on_manifold": worst_on,
            "degenerate_denominators": missing,
            "locus_max_abs_lhs": max_lhs,
            "locus_max_abs_bracket": max_bracket,
        }),
        Some(1e-6),
        pass,
    ))
}

pub fn criterion_4(seed: u64) -> Result<CheckResult> {
    let grid: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
    let mut cases = Vec::new();
    let mut pass = true;
    for a in [[2u32, 2, 2], [3, 2, 2]] {
        let r = verify_alpha_s_family(&e(&a), &grid, 300, seed, CONTACT_THRESHOLD)?;
        pass &= r.pass;
        cases.push(json!({"exponents": a, "min_abs_value": r.min_abs_value.map(json_f64), "pass": r.pass}));
    }
    Ok(row(4, Value::Array(cases), Some(CONTACT_THRESHOLD), pass))
}

pub fn criterion_5(seed: u64) -> Result<CheckResult> {
    let spec = CoveringSpec::new(e(&[3, 2, 2]));
    let tail = e(&[2, 2]);
    let generic = sample_constraint_set(&Manifold::Sphere(2).constraint_set(), 100, seed, |w| {
        crate::brieskorn::f_eval(&tail, w).norm() > OFF_BINDING
    })?
    .points;
    let generic_counts: Vec<usize> =
        generic.iter().map(|w| fibers_over(&spec, w).map(|f| f.len())).collect::<Result<_>>()?;
    let branch = sample_level_set(&LevelSpec::brieskorn(tail.clone()), 20, seed)?;
    let branch_counts: Vec<usize> =
        branch.iter().map(|w| fibers_over(&spec, w).map(|f| f.len())).collect::<Result<_>>()?;
    let cyl = sample_lifts(&spec, 500, seed)?;
    let power = theta_tilde_power_residual(&spec, &cyl)?;
    let g_ok = generic_counts.iter().all(|&c| c == 3);
    let b_ok = branch_counts.iter().all(|&c| c == 1);
    Ok(row(
        5,
        json!({
            "generic_points": generic.len(),
            "generic_all_three": g_ok,
            "branch_points": branch.len(),
            "branch_all_one": b_ok,
            "branch_tolerance": BRANCH_TOL,
            "theta_tilde_power_residual": power,
        }),
        Some(1e-12),
        g_ok && b_ok && power <= 1e-12,
    ))
}

pub fn criterion_6(seed: u64) -> Result<CheckResult> {
    let t_grid = [0.0, 0.5, 1.0, PI, 2.0 * PI, 10.0];
    let mut cases = Vec::new();
    let mut pass = true;
    for a in [&[2u32, 2, 2][..], &[3, 2]] {
        let spec = OpenBookSpec::new(e(a));
        let samples = sample_off_binding(&spec, 300, seed)?;
        let r = crate::openbook::reeb_checks(&spec, &samples, &t_grid)?;
        pass &= r.pass;
        let vals: Vec<(&str, &Value)> = r.results.iter().map(|x| (x.name.as_str(), &x.value)).collect();
        cases.push(json!({"tail": a, "results": vals, "pass": r.pass}));
    }
    Ok(row(6, Value::Array(cases), None, pass))
}

pub fn criterion_7(seed: u64) -> Result<CheckResult> {
    let mut cases = Vec::new();
    let mut pass = true;
    for a in [[2u32, 2, 2], [3, 2, 2]] {
        let ex = e(&a);
        let samples = sample_level_set(&LevelSpec::cylinder(ex.clone()), 500, seed)?;
        let branch = branch_points(&ex, 50, seed)?;
        let r = epsilon_search(&ex, &samples, &branch, 1.0, CONTACT_THRESHOLD)?;
        pass &= r.report.pass && r.eps_star.is_some_and(|x| x > 0.0);
        cases.push(json!({"exponents": a, "eps_star": r.eps_star, "monotone": r.monotone, "pass": r.report.pass}));
    }
    Ok(row(7, Value::Array(cases), Some(CONTACT_THRESHOLD), pass))
}

pub fn criterion_8(seed: u64) -> Result<CheckResult> {
    let s_grid = [0.0, 0.1, 0.25, 0.5, 0.75, 1.0];
    let mut max_res = 0.0f64;
    let mut max_trip = 0.0f64;
    for a in [[2u32, 2, 2], [3, 2, 2]] {
        let ex = e(&a);
        let pts = sample_level_set(&LevelSpec::brieskorn(ex.clone()), 200, seed)?;
        for z in &pts {
            for &s in &s_grid {
                let t = solve_t(&ex, z, s)?;
                let lhs: f64 = ex
                    .as_slice()
                    .iter()
                    .zip(&z.0)
                    .enumerate()
                    .map(|(j, (&aj, zj))| if j == 0 { s } else { 1.0 } * (2.0 * t / aj as f64).exp() * zj.norm_sqr())
                    .sum();
                max_res = max_res.max((lhs - 1.0).abs());
                let w = phi_s(&ex, z, s)?;
                max_trip = max_trip.max(phi_s_inverse(&ex, &w, s)?.max_abs_diff(z));
            }
        }
    }
    let r = 0.5f64.sqrt();
    let z = CPoint(vec![C64::new(r, 0.0), C64::new(0.0, r)]);
    let t = solve_t(&e(&[2, 2]), &z, 0.0)?;
    let closed = (t - LN_2).abs();
    Ok(row(
        8,
        json!({"max_equation_residual": max_res, "closed_form_deviation": closed, "max_round_trip": max_trip}),
        Some(1e-12),
        max_res < 1e-12 && closed <= 1e-12 && max_trip <= 1e-9,
    ))
}

pub fn criterion_9() -> Result<CheckResult> {
    let mut cases = Vec::new();
    let mut pass = true;
    for tail in [&[3u32, 2][..], &[3, 3], &[2, 2, 2], &[2, 3, 5]] {
        let m = monodromy_matrix(tail)?;
        let dim_ok = m.psi.rows() as u64 == m.mu;
        let det = m.psi.det()?;
        let period = 2 * lcm(tail);
        let order_ok = m.psi.pow(period)?.is_identity();
        let ok = dim_ok && det == 1.into() && order_ok;
        pass &= ok;
        cases.push(json!({
            "tail": tail, "mu": m.mu, "dim": m.psi.rows(), "det": det.to_string(),
            "power": period, "power_is_identity": order_ok, "gcd_is_one": m.gcd_is_one,
        }));
    }
    let cp = char_poly(&a_matrix(2)?)?;
    let cp_ok = cp.to_string() == "t^2 - t + 1";
    Ok(row(9, json!({"cases": cases, "char_poly_A2": cp.to_string()}), None, pass && cp_ok))
}

pub fn criterion_10() -> Result<CheckResult> {
    let mut homology = Vec::new();
    let mut pass = true;
    for (parts, expected) in [(&[3u32, 2][..], &[0usize, 2][..]), (&[2, 2, 2], &[0, 0, 1]), (&[3, 3], &[0, 4])] {
        let h = reduced_homology_ranks(&JoinComplex::new(parts.to_vec())?, SIMPLEX_BUDGET)?;
        let ok = h.ranks == expected && h.torsion_free();
        pass &= ok;
        homology.push(json!({"parts": parts, "ranks": h.ranks, "torsion_free": h.torsion_free(), "pass": ok}));
    }
    let mut rotation = Vec::new();
    for parts in [&[3u32, 2][..], &[2, 3, 5]] {
        let rot = rotation_induced_map(&JoinComplex::new(parts.to_vec())?, None, SIMPLEX_BUDGET)?;
        let a = char_poly(&rot)?;
        let b = char_poly(&monodromy_matrix(parts)?.psi)?;
        let rel = compare_char_polys(&a, &b);
        let ok = matches!(rel, CharPolyRelation::Equal | CharPolyRelation::Reciprocal);
        pass &= ok;
        rotation.push(json!({
            "parts": parts, "rotation_char_poly": a.to_string(), "psi_char_poly": b.to_string(),
            "relation": rel, "pass": ok,
        }));
    }
    Ok(row(10, json!({"homology": homology, "rotation": rotation}), None, pass))
}

pub fn criterion_11() -> Result<CheckResult> {
    let mut cases = Vec::new();
    let mut pass = true;
    for (a0, a1) in [(2u32, 2u32), (3, 2)] {
        let r = binding_report(a0, a1, QUADRATURE_NODES)?;
        pass &= r.pass;
        let vals: Vec<(&str, &Value)> = r.results.iter().map(|x| (x.name.as_str(), &x.value)).collect();
        cases.push(json!({"a0": a0, "a1": a1, "results": vals, "pass": r.pass}));
    }
    Ok(row(11, Value::Array(cases), Some(1e-8), pass))
}

/// Exploratory tuples for the `α₋` search.
pub const ALPHA_MINUS_EXPLORE: [&[u32]; 5] = [&[2, 3, 4], &[3, 3, 4], &[2, 3, 5], &[3, 4, 5], &[5, 3, 3]];

pub fn criterion_12(seed: u64) -> Result<CheckResult> {
    let grid: Vec<Exponents> = (2..=5).map(|k| e(&[k, 2, 2])).collect();
    let cases = alpha_minus_search(&grid, &[100.0], 500, seed)?;
    let uniform = cases.iter().all(|c| c.uniform_sign);
    let explore_grid: Vec<Exponents> = ALPHA_MINUS_EXPLORE.iter().map(|a| e(a)).collect();
    let explore = alpha_minus_search(&explore_grid, &[10.0, 100.0], 200, seed)?;
    let witnesses = alpha_minus_witnesses(&explore);
    let summary = |c: &crate::contact::AlphaMinusCase| {
        json!({"exponents": c.exponents, "C": c.c, "min": c.min, "max": c.max, "uniform_sign": c.uniform_sign,
               "direct_uniform_sign": c.direct_uniform_sign})
    };
    Ok(row(
        12,
        json!({
            "cases": cases.iter().map(summary).collect::<Vec<_>>(),
            "explore": explore.iter().map(summary).collect::<Vec<_>>(),
            "explore_witness_count": witnesses.len(),
            "explore_witnesses": witnesses,
        }),
        None,
        uniform,
    ))
}

/// Runs criteria 1 to 12.
pub fn run_numbered(seed: u64) -> Result<Vec<CheckResult>> {
    Ok(vec![
        criterion_1()?,
        criterion_2(seed)?,
        criterion_3(seed)?,
        criterion_4(seed)?,
        criterion_5(seed)?,
        criterion_6(seed)?,
        criterion_7(seed)?,
        criterion_8(seed)?,
        criterion_9()?,
        criterion_10()?,
        criterion_11()?,
        criterion_12(seed)?,
    ])
}

/// Byte-compares the JSON of two independent runs of criteria 1 to 12.
pub fn criterion_13(seed: u64) -> Result<CheckResult> {
    let first = serde_json::to_string(&run_numbered(seed)?)?;
    let second = serde_json::to_string(&run_numbered(seed)?)?;
    let same = first == second;
    Ok(row(13, json!({"bytes": first.len(), "identical": same}), None, same))
}

/// Criteria 1 to 12 plus a determinism row comparing that run with a
/// second one.
pub fn run_all(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rows = run_numbered(seed)?;
    let first = serde_json::to_string(&rows)?;
    let second = serde_json::to_string(&run_numbered(seed)?)?;
    let same = first == second;
    rows.push(row(13, json!({"bytes": first.len(), "identical": same}), None, same));
    Ok(rows)
}

/// `"criterion 7: PASS (epsilon search on the cylinder model)"`.
pub fn status_line(id: usize, r: &CheckResult) -> String {
    format!("criterion {id}: {} ({})", if r.pass { "PASS" } else { "FAIL" }, TITLES[id - 1])
}
