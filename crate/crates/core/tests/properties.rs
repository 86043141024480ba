mod common;

use proptest::prelude::*;

use hypervol::bounds::{growth_ratio, lower_bound, upper_bound};
use hypervol::geometry::circumradius;
use hypervol::quadrature::{monte_carlo_simplex, Method};
use hypervol::volume::{
    facet_volume_projective, volume_halfspace, volume_orthoscheme, volume_projective, zn_bounds,
    VolumeForm,
};
use hypervol::{halfspace_embedding, QuadratureConfig, SimplexParams};

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn three_forms_agree(n in 2usize..=4, t in 0.05f64..1.5) {
        let p = SimplexParams::new(n, t).unwrap();
        let a = volume_projective(&p, &cfg()).unwrap();
        let b = volume_orthoscheme(&p, &cfg()).unwrap();
        let c = volume_halfspace(&p, &cfg()).unwrap();
        for (x, y) in [(&a, &b), (&a, &c), (&b, &c)] {
            let tol = (1e-8 * x.value).max(x.error_estimate + y.error_estimate);
            prop_assert!((x.value - y.value).abs() <= tol, "{x} vs {y}");
        }
    }

    #[test]
    fn facet_equals_lower_dimensional_simplex(n in 3usize..=5, t in 0.05f64..1.5) {
        let p = SimplexParams::new(n, t).unwrap();
        let f = facet_volume_projective(&p, &cfg()).unwrap();
        let s = circumradius(&p, n - 1).unwrap().tanh();
        let q = SimplexParams::from_sin(n - 1, s).unwrap();
        let v = volume_projective(&q, &cfg()).unwrap();
        prop_assert!((f.value - v.value).abs() <= 1e-8 * v.value);
    }

    #[test]
    fn ratio_between_bounds(n in 3usize..=5, t in 0.02f64..1.57) {
        let p = SimplexParams::new(n, t).unwrap();
        let r = growth_ratio(&p, &cfg()).unwrap();
        prop_assert!(lower_bound(&p).unwrap() - r.error_estimate <= r.value);
        prop_assert!(r.value <= upper_bound(&p) + r.error_estimate);
    }

    #[test]
    fn height_interval_inside_simplex(n in 2usize..=6, s in 0.05f64..0.999, seed in any::<u64>()) {
        let emb = halfspace_embedding(&SimplexParams::from_sin(n, s).unwrap()).unwrap();
        let (fails, worst) = hypervol::check::zn_sandwich(&emb, 200, seed).unwrap();
        prop_assert_eq!(fails, 0);
        prop_assert!(worst <= 1e-12);
        prop_assert!(zn_bounds(&emb, &vec![0.0; n - 1]).is_ok());
    }
}

#[test]
fn monte_carlo_agrees_with_adaptive() {
    for (n, s) in [(2, 0.6), (3, 0.8), (4, 0.5)] {
        let p = SimplexParams::from_sin(n, s).unwrap();
        let exact = volume_projective(&p, &cfg()).unwrap().value;
        let mc_cfg = QuadratureConfig {
            method: Method::MonteCarlo,
            mc_samples: 400_000,
            ..cfg()
        };
        let mc = volume_projective(&p, &mc_cfg).unwrap();
        assert!(
            (mc.value - exact).abs() <= 4.0 * mc.error_estimate,
            "n={n}: {mc} vs {exact}"
        );
        let pw = 0.5 * (n as f64 + 1.0);
        let direct = monte_carlo_simplex(
            n,
            s,
            |x: &[f64]| (1.0 - x.iter().map(|v| v * v).sum::<f64>()).powf(-pw),
            &mc_cfg,
        )
        .unwrap();
        assert_eq!(direct.value.to_bits(), mc.value.to_bits());
    }
}

#[test]
fn volumes_increase_with_t() {
    for n in 2..=4 {
        for form in VolumeForm::ALL {
            let mut prev = -1.0;
            for k in 1..=15 {
                let p = SimplexParams::new(n, 0.1 * k as f64).unwrap();
                let v = form.compute(&p, &cfg()).unwrap().value;
                assert!(v > prev, "{} n={n} k={k}", form.name());
                prev = v;
            }
        }
    }
}

#[test]
fn triangle_areas_at_several_t() {
    let refs: [(f64, f64); 3] = [
        (0.3, 0.117_334_555_840_863),
        (0.8, 0.846_957_484_124_585),
        (1.3, 2.222_213_249_084_00),
    ];
    for (t, area) in refs {
        assert!((common::triangle_area(t.sin()) - area).abs() < 1e-13);
        let p = SimplexParams::new(2, t).unwrap();
        for form in VolumeForm::ALL {
            let v = form.compute(&p, &cfg()).unwrap();
            assert!((v.value - area).abs() < 1e-10, "{} t={t}: {v}", form.name());
        }
    }
}

#[test]
fn tightening_tolerance_does_not_move_results() {
    let tight = QuadratureConfig::default().with_rel_tol(5e-11);
    for (n, t) in [(3, 0.8), (4, 1.3), (5, 0.3)] {
        let p = SimplexParams::new(n, t).unwrap();
        for form in VolumeForm::ALL {
            let a = form.compute(&p, &cfg()).unwrap();
            let b = form.compute(&p, &tight).unwrap();
            assert!(
                (a.value - b.value).abs() <= 1e-9 * b.value,
                "{} n={n} t={t}",
                form.name()
            );
            assert!(b.error_estimate <= 1e-9 * b.value);
        }
    }
}

#[test]
fn ideal_volumes() {
    let exact = common::ideal_tetrahedron();
    let p = SimplexParams::ideal(3).unwrap();
    assert!((volume_projective(&p, &cfg()).unwrap().value - exact).abs() < 1e-9);
    assert!((volume_orthoscheme(&p, &cfg()).unwrap().value - exact).abs() < 1e-9);
    let facet = facet_volume_projective(&p, &cfg()).unwrap().value;
    assert!((facet - std::f64::consts::PI).abs() < 1e-9);
    let r = growth_ratio(&p, &cfg()).unwrap();
    assert!((r.value - exact / std::f64::consts::PI).abs() < 1e-9);
}

#[test]
fn euclidean_scaling_for_small_t() {
    for n in 3..=4 {
        let t: f64 = 0.01;
        let r = growth_ratio(&SimplexParams::new(n, t).unwrap(), &cfg()).unwrap();
        let scaled = r.value / t.sin().atanh();
        let target = hypervol::bounds::euclidean_limit_ratio(n);
        assert!((scaled - target).abs() <= 0.01 * target);
    }
}
