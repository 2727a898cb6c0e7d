#![allow(dead_code)]

use ddfkit::{QuadraticSeparableParams, Sampler, TechnologyKind};

pub fn figure4() -> TechnologyKind {
    TechnologyKind::QuadraticSeparable(QuadraticSeparableParams::figure4())
}

/// Valid random parameters: `b, a` in `[0.1, 2]`, `B = M M'` with `M` in `[0, 1]`
/// (entrywise nonnegative and positive semidefinite).
pub fn random_quadratic(s: &mut Sampler, m: usize, n: usize) -> TechnologyKind {
    let b = s.vector(m, 0.1, 2.0);
    let a = s.vector(n, 0.1, 2.0);
    let factor: Vec<Vec<f64>> = (0..m).map(|_| s.vector(m, 0.0, 1.0)).collect();
    let bmat = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).map(|k| factor[i][k] * factor[j][k]).sum())
                .collect()
        })
        .collect();
    let p = QuadraticSeparableParams::new(b, a, bmat).unwrap();
    assert!(p.validate().is_valid(), "{}", p.validate());
    TechnologyKind::QuadraticSeparable(p)
}

/// Cycles through the quadratic (Figure 4 and random) and polyhedral technologies.
pub fn mixed_technology(s: &mut Sampler, k: usize) -> TechnologyKind {
    match k % 5 {
        0 => figure4(),
        1 => random_quadratic(s, 2, 2),
        2 => random_quadratic(s, 3, 1),
        3 => TechnologyKind::PolyhedralA,
        _ => TechnologyKind::PolyhedralB,
    }
}
