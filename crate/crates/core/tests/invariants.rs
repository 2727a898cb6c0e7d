//! Cross-module invariants on random instances.

mod common;

use ddfkit::ddf::DdfEvaluator;
use ddfkit::oracle::{grid_frontier, GridSpec};
use ddfkit::quad_translation::{eval_q_both, homogeneity_deviation, restrict_parameters, FreeQuadraticParams};
use ddfkit::{
    eval_ddf, unsymmetric_t, Bundle, Direction, ExtendedValue, FrontierKind, Method, Sampler, Side, TechnologyKind,
};

use common::{figure4, mixed_technology, random_quadratic};

#[test]
fn closed_form_matches_bisection_on_random_quadratics() {
    let mut s = Sampler::new(11);
    for k in 0..300 {
        let (m, n) = (1 + k % 3, 1 + (k / 3) % 3);
        let tech = random_quadratic(&mut s, m, n);
        let ev = DdfEvaluator::new(&tech).unwrap();
        let bundle = s.bundle(m, n);
        let dir = s.mixed_direction(m, n);
        let closed = ev.evaluate(&bundle, &dir, Method::Closed).unwrap().value;
        let bisect = ev.evaluate(&bundle, &dir, Method::Bisect).unwrap().value;
        match (closed, bisect) {
            (ExtendedValue::Finite(c), ExtendedValue::Finite(b)) => {
                assert!(
                    (c - b).abs() <= 1e-8 * c.abs().max(1.0),
                    "{bundle:?} {dir:?}: {c} vs {b}"
                )
            }
            _ => assert_eq!(closed, bisect, "{bundle:?} {dir:?}"),
        }
    }
}

#[test]
fn boundary_bundles_have_zero_distance() {
    let mut s = Sampler::new(12);
    for _ in 0..200 {
        let tech = random_quadratic(&mut s, 2, 2);
        let p = tech.quadratic().unwrap();
        let y = s.vector(2, 0.0, 2.0);
        let x0 = s.vector(2, 0.1, 2.0);
        // F is affine and decreasing in x: scale x so that F(y, x) = 0.
        let out = p.output_value(&y);
        let x: Vec<f64> = x0.iter().map(|c| c * out / p.input_value(&x0)).collect();
        let bundle = Bundle::new(y, x).unwrap();
        assert!(tech.eval_f(&bundle).unwrap().abs() <= 1e-12);
        let dir = s.direction(2, 2);
        let v = eval_ddf(&tech, &bundle, &dir).unwrap().finite().unwrap();
        assert!(v.abs() <= 1e-9, "{bundle:?} {dir:?}: {v}");
    }
}

#[test]
fn unsymmetric_t_is_monotone_in_inputs() {
    let mut s = Sampler::new(13);
    for k in 0..200 {
        let tech = mixed_technology(&mut s, k);
        let (m, n) = tech.dims();
        let bundle = s.bundle(m, n);
        let i = s.index(m);
        let more: Vec<f64> = bundle.x().iter().map(|c| c + s.uniform(0.1, 1.0)).collect();
        let bigger = Bundle::new(bundle.y().to_vec(), more).unwrap();
        let t0 = unsymmetric_t(&tech, i, &bundle).unwrap();
        let t1 = unsymmetric_t(&tech, i, &bigger).unwrap();
        assert!(
            t1.to_f64() >= t0.to_f64() - 1e-12,
            "{} {bundle:?}: {t0} > {t1}",
            tech.name()
        );
        if tech.quadratic().is_some() {
            if let (Some(a), Some(b)) = (t0.finite(), t1.finite()) {
                assert!(b > a, "quadratic t must increase strictly: {a} vs {b}");
            }
        }
    }
}

#[test]
fn grid_frontier_chain() {
    let techs = [
        // x = (1.5, 1.5) puts the grid point y = (1, 1) exactly on the Figure 4 boundary.
        (figure4(), vec![1.5, 1.5]),
        (TechnologyKind::Staircase, vec![2.0]),
        (TechnologyKind::PolyhedralA, vec![1.0]),
        (TechnologyKind::PolyhedralB, vec![1.0, 1.0]),
    ];
    for (tech, x) in techs {
        let (m, _) = tech.dims();
        let grid = GridSpec::cube(m, 0.0, 3.0, 0.25).unwrap();
        let frontier = |kind| grid_frontier(&tech, Side::Output, &x, &grid, kind).unwrap();
        let (eff, weff, isoq) = (
            frontier(FrontierKind::Eff),
            frontier(FrontierKind::Weff),
            frontier(FrontierKind::Isoq),
        );
        let feasible: Vec<Vec<f64>> = grid
            .points()
            .into_iter()
            .filter(|y| tech.contains(&Bundle::new(y.clone(), x.clone()).unwrap()).unwrap())
            .collect();
        assert!(!eff.is_empty(), "{}", tech.name());
        assert!(eff.iter().all(|p| weff.contains(p)), "{}: eff ⊄ weff", tech.name());
        assert!(weff.iter().all(|p| isoq.contains(p)), "{}: weff ⊄ isoq", tech.name());
        assert!(
            isoq.iter().all(|p| feasible.contains(p)),
            "{}: isoq ⊄ P(x)",
            tech.name()
        );
    }
}

#[test]
fn quadratic_efficient_points_are_isoquant_points() {
    // Theorem 2.2.3: for the quadratic technology the frontiers coincide.
    let mut s = Sampler::new(14);
    for _ in 0..50 {
        let tech = random_quadratic(&mut s, 2, 1);
        let x = s.vector(1, 0.5, 2.0);
        let i = s.index(2);
        let mut y = vec![0.0; 2];
        y[1 - i] = s.uniform(0.0, 0.2);
        let t = unsymmetric_t(&tech, i, &Bundle::new(y.clone(), x.clone()).unwrap()).unwrap();
        let Some(t) = t.finite() else { continue };
        y[i] = t;
        for kind in [FrontierKind::Isoq, FrontierKind::Weff, FrontierKind::Eff] {
            assert!(
                tech.frontier_member(Side::Output, &x, &y, kind).unwrap(),
                "{kind:?} {y:?} {x:?}"
            );
        }
    }
}

#[test]
fn translation_invariants_on_random_draws() {
    for seed in 0..100 {
        let (m, n) = (1 + (seed % 3) as usize, 1 + (seed / 3 % 3) as usize);
        let free = FreeQuadraticParams::random(m, n, seed).unwrap();
        let mut s = Sampler::new(seed + 1000);
        let bundle = s.bundle(m, n);
        let dir = Direction::new(s.vector(m, 0.2, 2.0), s.vector(n, 0.2, 2.0)).unwrap();
        let restricted = restrict_parameters(&free, &dir).unwrap();
        assert!(restricted.residuals().max_abs() <= 1e-12, "seed {seed}");
        assert!(
            restricted.translation_residual(&bundle, 0.7).unwrap() <= 1e-10,
            "seed {seed}"
        );
        let q = eval_q_both(&restricted, &bundle).unwrap();
        assert!(q.gap() <= 1e-10, "seed {seed}: gap {}", q.gap());
        assert!(homogeneity_deviation(&free, &bundle, &dir, 1.0).unwrap() <= 1e-12);
    }
}
