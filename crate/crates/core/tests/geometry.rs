use brieskorn_lab::brieskorn::{f_eval, sample_manifold, Exponents, LevelSpec, Manifold};
use brieskorn_lab::exterior::{
    contact_value, newton_project, tangent_frame, CPoint, DiagonalOneForm, NEWTON_MAX_ITER, NEWTON_TOL,
};
use proptest::prelude::*;

fn levels() -> Vec<Manifold> {
    let mut out = vec![Manifold::Sphere(2), Manifold::Sphere(4)];
    for (a, s) in [("2,2,2", 0.5), ("3,2,2", 1.0), ("2,3,5", 0.3), ("3,2,3", 0.0)] {
        let e = Exponents::parse(a).unwrap();
        out.push(Manifold::Level(if s == 0.0 {
            LevelSpec::cylinder(e)
        } else {
            LevelSpec::interpolated(e, s).unwrap()
        }));
    }
    out
}

fn dist(a: &CPoint, b: &CPoint) -> f64 {
    a.0.iter().zip(&b.0).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

#[test]
fn frames_are_orthonormal_and_tangent() {
    for m in levels() {
        let cs = m.constraint_set();
        for p in sample_manifold(&m, 50, 3).unwrap().points {
            assert!(cs.max_residual(&p) < 1e-9, "{}", m.label());
            let f = tangent_frame(&cs, &p, m.dim()).unwrap();
            assert_eq!(f.dim(), m.dim());
            assert!(f.gram_error() < 1e-12, "{}", m.label());
            for g in cs.gradients(&p) {
                for b in &f.basis {
                    assert!(g.dot(b).abs() < 1e-9 * (1.0 + g.dot(&g).sqrt()), "{}", m.label());
                }
            }
        }
    }
}

#[test]
fn newton_fixes_points_on_the_manifold() {
    for m in levels() {
        let cs = m.constraint_set();
        for p in sample_manifold(&m, 20, 5).unwrap().points {
            let q = newton_project(&cs, &p, NEWTON_TOL, NEWTON_MAX_ITER).unwrap();
            assert!(dist(&p, &q) < 1e-10, "{}", m.label());
        }
    }
}

#[test]
fn brieskorn_samples_lie_on_the_variety() {
    let e = Exponents::parse("2,3,5").unwrap();
    let m = Manifold::Level(LevelSpec::brieskorn(e.clone()));
    for p in sample_manifold(&m, 100, 11).unwrap().points {
        assert!(f_eval(&e, &p).norm() < 1e-9);
        let r: f64 = p.0.iter().map(|z| z.norm_sqr()).sum();
        assert!((r - 1.0).abs() < 1e-9);
    }
}

// α_std is U(m)-invariant, so its contact value on the unit sphere is the
// value at (1, 0, …, 0): α(i e_0) = 1 times the Pfaffian of 2J on the
// remaining 2m−2 directions, which is 2^{m−1}.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn standard_form_on_spheres(m in 2usize..5, seed in any::<u64>()) {
        let sphere = Manifold::Sphere(m);
        let cs = sphere.constraint_set();
        let oracle = 2f64.powi(m as i32 - 1);
        for p in sample_manifold(&sphere, 10, seed).unwrap().points {
            let f = tangent_frame(&cs, &p, sphere.dim()).unwrap();
            let v = contact_value(&DiagonalOneForm::standard(m), &f).unwrap();
            prop_assert!((v.abs() - oracle).abs() < 1e-10 * oracle, "m = {m}: {v}");
        }
    }

    #[test]
    fn sampling_is_seed_deterministic(seed in any::<u64>()) {
        let m = Manifold::Level(LevelSpec::brieskorn(Exponents::parse("3,2,2").unwrap()));
        let a = sample_manifold(&m, 8, seed).unwrap().points;
        let b = sample_manifold(&m, 8, seed).unwrap().points;
        prop_assert_eq!(a, b);
    }
}
