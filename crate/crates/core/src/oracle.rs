//! Brute-force grid references: line-search DTDF, dominance-filtered frontier
//! subsets and grid checks of the joint-production-function existence conditions.
//!
//! Grid results are only valid up to grid resolution; reports say "holds on grid".

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ddf::{gamma_interval, unsymmetric_t};
use crate::error::{check_len, Error, Result};
use crate::order::{Bundle, Direction, ExtendedValue};
use crate::technology::{FrontierKind, PartitionCell, Side, TechnologyKind};
use crate::tolerance::{BOUNDARY_TOL, DOM_EPS};

/// Unbounded ends of `Gamma` are truncated to `[-TRUNCATION_BOUND, TRUNCATION_BOUND]`.
pub const TRUNCATION_BOUND: f64 = 1e4;
/// Coarse stride (in grid steps) of the top-down DTDF scan.
const COARSE_STRIDE: u64 = 1000;
/// Dominator candidates for frontier filtering come from a grid this many times finer.
pub const DOMINATOR_REFINEMENT: u32 = 4;
/// Two values within this tolerance count as equal (`t` reproducing `y_i`).
pub const WITNESS_TOL: f64 = 1e-9;

/// A rectangular grid: points `lo_i + k step` for integer `k` inside each axis interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    step: f64,
    bounds: Vec<(f64, f64)>,
}

fn check_step(step: f64) -> Result<()> {
    if step.is_finite() && step > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "grid step must be positive and finite, got {step}"
        )))
    }
}

impl GridSpec {
    pub fn new(step: f64, bounds: Vec<(f64, f64)>) -> Result<Self> {
        check_step(step)?;
        if bounds.is_empty() {
            return Err(Error::InvalidInput("grid needs at least one axis".into()));
        }
        if let Some((lo, hi)) = bounds
            .iter()
            .find(|(lo, hi)| !(lo.is_finite() && hi.is_finite() && lo <= hi))
        {
            return Err(Error::InvalidInput(format!(
                "grid axis [{lo}, {hi}] is empty or non-finite"
            )));
        }
        Ok(Self { step, bounds })
    }

    /// The same interval `[lo, hi]` on each of `dim` axes.
    pub fn cube(dim: usize, lo: f64, hi: f64, step: f64) -> Result<Self> {
        Self::new(step, vec![(lo, hi); dim])
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    /// Same bounds, step divided by `factor`.
    pub fn refined(&self, factor: u32) -> Self {
        Self {
            step: self.step / f64::from(factor),
            bounds: self.bounds.clone(),
        }
    }

    /// Coordinates on axis `i`, generated as index x step.
    pub fn axis(&self, i: usize) -> Vec<f64> {
        let (lo, hi) = self.bounds[i];
        let count = ((hi - lo) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|k| lo + k as f64 * self.step).collect()
    }

    /// All grid points in lexicographic order (last axis fastest).
    pub fn points(&self) -> Vec<Vec<f64>> {
        let axes: Vec<Vec<f64>> = (0..self.dim()).map(|i| self.axis(i)).collect();
        let mut out = vec![Vec::with_capacity(self.dim())];
        for axis in &axes {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    axis.iter().map(move |c| {
                        let mut p = prefix.clone();
                        p.push(*c);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// The sub-grid on axes `range`.
    fn project(&self, range: std::ops::Range<usize>) -> Self {
        Self {
            step: self.step,
            bounds: self.bounds[range].to_vec(),
        }
    }
}

/// Grid DTDF with scan diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridDdf {
    pub value: ExtendedValue,
    /// An unbounded end of `Gamma` was cut at `±TRUNCATION_BOUND`.
    pub truncated: bool,
    /// Scanned interval.
    pub lower: f64,
    pub upper: f64,
    /// Number of `F` evaluations.
    pub evaluations: u64,
}

/// Largest feasible `beta` among `lower + k step` (and `upper` itself) in the
/// truncated `Gamma`, or `-inf` when none is feasible.
pub fn grid_ddf(tech: &TechnologyKind, bundle: &Bundle, dir: &Direction, step: f64) -> Result<ExtendedValue> {
    Ok(grid_ddf_detailed(tech, bundle, dir, step)?.value)
}

/// [`grid_ddf`] with diagnostics.
///
/// The scan is top-down and coarse-to-fine: every `COARSE_STRIDE`-th grid point
/// from the top, then the fine points above the highest feasible coarse point.
/// Monotonicity of `F` makes the feasible grid points a prefix of the scan, so
/// this finds exactly the point a full scan would.
pub fn grid_ddf_detailed(tech: &TechnologyKind, bundle: &Bundle, dir: &Direction, step: f64) -> Result<GridDdf> {
    check_step(step)?;
    tech.check_bundle(bundle)?;
    let gamma = gamma_interval(bundle, dir)?;
    let mut truncated = false;
    let lower = match gamma.lower.finite() {
        Some(lo) if lo >= -TRUNCATION_BOUND => lo,
        _ => {
            truncated = true;
            -TRUNCATION_BOUND
        }
    };
    let upper = match gamma.upper {
        Some(hi) if hi <= TRUNCATION_BOUND => hi,
        _ => {
            truncated = true;
            TRUNCATION_BOUND
        }
    };

    let (m, n) = tech.dims();
    let (mut y, mut x) = (vec![0.0; m], vec![0.0; n]);
    let mut evaluations = 0u64;
    let mut feasible = |beta: f64| {
        for (j, yj) in y.iter_mut().enumerate() {
            *yj = (bundle.y()[j] + beta * dir.gy()[j]).max(0.0);
        }
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = (bundle.x()[i] - beta * dir.gx()[i]).max(0.0);
        }
        evaluations += 1;
        tech.eval_f_unchecked(&y, &x) <= 0.0
    };

    let top = ((upper - lower) / step + 1e-9).floor() as u64;
    let at = |k: u64| lower + k as f64 * step;
    let value = if feasible(upper) {
        ExtendedValue::Finite(upper)
    } else {
        // Highest feasible coarse index, scanning down from the top.
        let coarse = (0..=top / COARSE_STRIDE)
            .rev()
            .map(|c| c * COARSE_STRIDE)
            .find(|&k| feasible(at(k)));
        match coarse {
            None => ExtendedValue::NegInfinity,
            Some(kc) => {
                let hi = (kc + COARSE_STRIDE - 1).min(top);
                let k = (kc..=hi).rev().find(|&k| feasible(at(k))).unwrap_or(kc);
                ExtendedValue::Finite(at(k))
            }
        }
    };
    Ok(GridDdf {
        value,
        truncated,
        lower,
        upper,
        evaluations,
    })
}

fn side_dims(tech: &TechnologyKind, side: Side) -> (usize, usize) {
    let (m, n) = tech.dims();
    match side {
        Side::Output => (n, m),
        Side::Input => (m, n),
    }
}

/// `F` at `point` with the other side held at `fixed`.
fn f_at(tech: &TechnologyKind, side: Side, fixed: &[f64], point: &[f64]) -> f64 {
    match side {
        Side::Output => tech.eval_f_unchecked(point, fixed),
        Side::Input => tech.eval_f_unchecked(fixed, point),
    }
}

/// `q` is better than `p` in the weak vector order (`>=` and `!=`), orienting
/// inputs so that less is better.
fn weakly_better(side: Side, q: &[f64], p: &[f64]) -> bool {
    let oriented = |a: f64, b: f64| match side {
        Side::Output => a - b,
        Side::Input => b - a,
    };
    let diffs = q.iter().zip(p).map(|(a, b)| oriented(*a, *b));
    diffs.clone().all(|d| d >= -DOM_EPS) && diffs.into_iter().any(|d| d > DOM_EPS)
}

/// `q` is better than `p` in every coordinate.
fn strictly_better(side: Side, q: &[f64], p: &[f64]) -> bool {
    q.iter().zip(p).all(|(a, b)| match side {
        Side::Output => *a > b + DOM_EPS,
        Side::Input => *a < b - DOM_EPS,
    })
}

/// Feasible points of `grid` (within `BOUNDARY_TOL`) not dominated per `kind`.
///
/// * `eff`: no feasible point of the refined grid is weakly better;
/// * `weff`: no feasible point of the refined grid is better in every coordinate;
/// * `isoq`: the smallest grid-aligned radial move (`θ = 1 ± s / max_i p_i`,
///   `s` the refined step) leaves the set. Convexity and disposability make the
///   radial feasible set an interval, so one `θ` suffices.
///
/// Dominators come from a grid `DOMINATOR_REFINEMENT` times finer than `grid`
/// so that near-boundary dominators between coarse points are not missed.
pub fn grid_frontier(
    tech: &TechnologyKind,
    side: Side,
    fixed: &[f64],
    grid: &GridSpec,
    kind: FrontierKind,
) -> Result<Vec<Vec<f64>>> {
    let (fixed_dim, point_dim) = side_dims(tech, side);
    check_len("grid_frontier (fixed)", fixed_dim, fixed.len())?;
    check_len("grid_frontier (grid axes)", point_dim, grid.dim())?;
    let fixed_side = match side {
        Side::Output => Side::Input,
        Side::Input => Side::Output,
    };
    match tech.classify(fixed_side, fixed)? {
        PartitionCell::X1 | PartitionCell::Y1 => {}
        cell => {
            return Err(Error::Precondition(format!(
                "grid_frontier needs the fixed vector in X1/Y1, got {cell:?}"
            )))
        }
    }
    let feasible = |p: &[f64]| f_at(tech, side, fixed, p) <= BOUNDARY_TOL;
    let points: Vec<Vec<f64>> = grid.points().into_iter().filter(|p| feasible(p)).collect();
    if points.is_empty() {
        return Ok(points);
    }
    let fine = grid.refined(DOMINATOR_REFINEMENT);
    let dominators: Vec<Vec<f64>> = match kind {
        FrontierKind::Isoq => Vec::new(),
        _ => fine.points().into_iter().filter(|p| feasible(p)).collect(),
    };
    let radial_step = fine.step();

    Ok(points
        .into_iter()
        .filter(|p| match kind {
            FrontierKind::Eff => !dominators.iter().any(|q| weakly_better(side, q, p)),
            FrontierKind::Weff => !dominators.iter().any(|q| strictly_better(side, q, p)),
            FrontierKind::Isoq => {
                let scale = p.iter().fold(0.0_f64, |acc, c| acc.max(*c));
                if scale == 0.0 {
                    // 0 is never on the isoquant of P(x) for x in X1; for
                    // L(y), y in Y1, the zero input is infeasible anyway.
                    return false;
                }
                let theta = match side {
                    Side::Output => 1.0 + radial_step / scale,
                    Side::Input => 1.0 - radial_step / scale,
                };
                if theta <= 0.0 {
                    // Any shrink reaches the origin; treat as non-isoquant only if 0 is feasible.
                    return !feasible(&vec![0.0; p.len()]);
                }
                let moved: Vec<f64> = p.iter().map(|c| theta * c).collect();
                !feasible(&moved)
            }
        })
        .collect())
}

/// Which biconditional [`jpf_existence_check`] tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JpfKind {
    /// `x ∈ Isoq L(y) ⟺ y ∈ Isoq P(x)`.
    Isoquant,
    /// `y ∈ Eff P(x) ⟺ x ∈ Eff L(y)` (Lemma 2.1.8).
    Efficient,
}

impl JpfKind {
    pub fn frontier(self) -> FrontierKind {
        match self {
            Self::Isoquant => FrontierKind::Isoq,
            Self::Efficient => FrontierKind::Eff,
        }
    }
}

impl fmt::Display for JpfKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Isoquant => "isoquant",
            Self::Efficient => "efficient",
        })
    }
}

impl FromStr for JpfKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "isoquant" | "isoq" => Ok(Self::Isoquant),
            "efficient" | "eff" => Ok(Self::Efficient),
            other => Err(Error::InvalidInput(format!("unknown JPF kind {other:?}"))),
        }
    }
}

/// A grid pair where the two frontier memberships disagree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JpfViolation {
    pub y: Vec<f64>,
    pub x: Vec<f64>,
    /// `y` in the output-set frontier of `P(x)`.
    pub output_member: bool,
    /// `x` in the input-set frontier of `L(y)`.
    pub input_member: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JpfReport {
    pub kind: JpfKind,
    /// The biconditional holds at every grid pair in `Y1 x X1` ("holds on grid").
    pub holds: bool,
    /// First violating pair in scan order (`y` outer, `x` inner, lexicographic).
    pub counterexample: Option<JpfViolation>,
    pub violations: Vec<JpfViolation>,
    /// Grid pairs in `Y1 x X1` that were tested.
    pub pairs_checked: usize,
}

/// Evaluates the JPF existence biconditional at every grid pair `(y, x)` in
/// `Y1 x X1`. `grid` has `m + n` axes, outputs first.
pub fn jpf_existence_check(tech: &TechnologyKind, grid: &GridSpec, kind: JpfKind) -> Result<JpfReport> {
    let (m, n) = tech.dims();
    check_len("jpf_existence_check (grid axes)", m + n, grid.dim())?;
    let ys: Vec<Vec<f64>> = grid
        .project(0..m)
        .points()
        .into_iter()
        .filter(|y| matches!(tech.classify(Side::Output, y), Ok(PartitionCell::Y1)))
        .collect();
    let xs: Vec<Vec<f64>> = grid
        .project(m..m + n)
        .points()
        .into_iter()
        .filter(|x| matches!(tech.classify(Side::Input, x), Ok(PartitionCell::X1)))
        .collect();
    if ys.is_empty() || xs.is_empty() {
        return Err(Error::Precondition("grid contains no (y, x) pair in Y1 x X1".into()));
    }
    let frontier = kind.frontier();
    let mut violations = Vec::new();
    for y in &ys {
        for x in &xs {
            let output_member = tech.frontier_member(Side::Output, x, y, frontier)?;
            let input_member = tech.frontier_member(Side::Input, y, x, frontier)?;
            if output_member != input_member {
                violations.push(JpfViolation {
                    y: y.clone(),
                    x: x.clone(),
                    output_member,
                    input_member,
                });
            }
        }
    }
    Ok(JpfReport {
        kind,
        holds: violations.is_empty(),
        counterexample: violations.first().cloned(),
        violations,
        pairs_checked: ys.len() * xs.len(),
    })
}

/// A grid point of `WEff P(x) \ Eff P(x)` with its unsymmetric transformation values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrontierGapWitness {
    pub y: Vec<f64>,
    pub x: Vec<f64>,
    /// `t(y^{-i}, x)` for each output `i` (0-based).
    pub t: Vec<ExtendedValue>,
    /// Outputs `i` with `t(y^{-i}, x) = y_i`, i.e. `F^i(y, x) = 0` although `y ∉ Eff P(x)`
    /// (the phenomenon behind Lemma 2.1.10).
    pub reproducing: Vec<usize>,
    /// Outputs `i` with `t(y^{-i}, x) > y_i`, i.e. `F^i(y, x) < 0` (Lemma 2.1.7).
    pub slack: Vec<usize>,
}

/// Grid points of `grid_frontier(weff) \ grid_frontier(eff)` on the output side
/// of `x`, each with `t(y^{-i}, x)` for every `i`.
pub fn weff_not_eff_witnesses(tech: &TechnologyKind, x: &[f64], grid: &GridSpec) -> Result<Vec<FrontierGapWitness>> {
    let weff = grid_frontier(tech, Side::Output, x, grid, FrontierKind::Weff)?;
    let eff = grid_frontier(tech, Side::Output, x, grid, FrontierKind::Eff)?;
    let m = tech.dims().0;
    weff.into_iter()
        .filter(|y| !eff.contains(y))
        .map(|y| {
            let bundle = Bundle::new(y.clone(), x.to_vec())?;
            let t = (0..m)
                .map(|i| unsymmetric_t(tech, i, &bundle))
                .collect::<Result<Vec<_>>>()?;
            let gap = |i: usize| t[i].finite().map(|ti| ti - y[i]);
            let reproducing = (0..m)
                .filter(|&i| gap(i).is_some_and(|g| g.abs() <= WITNESS_TOL))
                .collect();
            let slack = (0..m).filter(|&i| gap(i).is_some_and(|g| g > WITNESS_TOL)).collect();
            Ok(FrontierGapWitness {
                y,
                x: x.to_vec(),
                t,
                reproducing,
                slack,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ddf::eval_ddf;
    use crate::technology::QuadraticSeparableParams;

    fn fig4() -> TechnologyKind {
        TechnologyKind::QuadraticSeparable(QuadraticSeparableParams::figure4())
    }

    fn sorted(mut v: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn grid_axes_use_integer_indices() {
        let g = GridSpec::cube(2, 0.0, 1.0, 0.1).unwrap();
        let axis = g.axis(0);
        assert_eq!(axis.len(), 11);
        assert_eq!(axis[3], 3.0 * 0.1);
        assert_eq!(g.points().len(), 121);
        assert!(GridSpec::new(0.0, vec![(0.0, 1.0)]).is_err());
        assert!(GridSpec::new(0.1, vec![(1.0, 0.0)]).is_err());
    }

    #[test]
    fn figure4_grid_value() {
        let b = Bundle::new(vec![0.5, 0.5], vec![1.0, 1.0]).unwrap();
        let d = Direction::new(vec![0.5, 0.5], vec![0.0, 0.0]).unwrap();
        let r = grid_ddf_detailed(&fig4(), &b, &d, 1e-4).unwrap();
        let exact = 2.0 * 3.0_f64.sqrt() - 3.0;
        assert!((r.value.to_f64() - exact).abs() <= 1e-4, "{r:?}");
        assert!(r.truncated);
    }

    #[test]
    fn polyhedral_examples() {
        let b = Bundle::new(vec![1.0, 0.5], vec![1.0]).unwrap();
        let d = Direction::new(vec![1.0, 0.0], vec![0.0]).unwrap();
        let v = grid_ddf(&TechnologyKind::PolyhedralA, &b, &d, 1e-3).unwrap();
        assert!((v.to_f64() - 0.5).abs() <= 1e-3);
        let b = Bundle::new(vec![0.0, 5.0], vec![1.0]).unwrap();
        assert_eq!(
            grid_ddf(&TechnologyKind::PolyhedralA, &b, &d, 1e-3).unwrap(),
            ExtendedValue::NegInfinity
        );
    }

    #[test]
    fn full_gamma_returns_upper() {
        // y = 0 and x shrinking keeps F = -a'x <= 0, so the value is min x_i / g_xi.
        let b = Bundle::new(vec![0.0, 0.0], vec![1.0, 2.0]).unwrap();
        let d = Direction::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let g = grid_ddf(&fig4(), &b, &d, 1e-3).unwrap();
        assert_eq!(g, eval_ddf(&fig4(), &b, &d).unwrap());
        assert_eq!(g, ExtendedValue::Finite(1.0));
    }

    #[test]
    fn polyhedral_b_frontiers() {
        let grid = GridSpec::cube(2, 0.0, 2.0, 0.25).unwrap();
        let x = [1.0, 1.0];
        let tech = TechnologyKind::PolyhedralB;
        let eff = sorted(grid_frontier(&tech, Side::Output, &x, &grid, FrontierKind::Eff).unwrap());
        let expected: Vec<Vec<f64>> = (4..=8).map(|k| vec![k as f64 * 0.25, 2.0 - k as f64 * 0.25]).collect();
        assert_eq!(eff, sorted(expected));

        let weff = sorted(grid_frontier(&tech, Side::Output, &x, &grid, FrontierKind::Weff).unwrap());
        let mut expected_weff: Vec<Vec<f64>> = (0..4).map(|k| vec![k as f64 * 0.25, 1.0]).collect();
        expected_weff.extend(eff.iter().cloned());
        assert_eq!(weff, sorted(expected_weff));

        let isoq = grid_frontier(&tech, Side::Output, &x, &grid, FrontierKind::Isoq).unwrap();
        for p in &weff {
            assert!(isoq.contains(p));
        }
    }

    #[test]
    fn quadratic_eff_matches_weff_membership() {
        let tech = fig4();
        let grid = GridSpec::cube(2, 0.0, 2.0, 0.25).unwrap();
        let x = [1.0, 1.0];
        let eff = grid_frontier(&tech, Side::Output, &x, &grid, FrontierKind::Eff).unwrap();
        let weff = grid_frontier(&tech, Side::Output, &x, &grid, FrontierKind::Weff).unwrap();
        assert!(eff.iter().all(|p| weff.contains(p)));
        for p in grid.points() {
            assert_eq!(
                tech.frontier_member(Side::Output, &x, &p, FrontierKind::Eff).unwrap(),
                tech.frontier_member(Side::Output, &x, &p, FrontierKind::Weff).unwrap()
            );
        }
    }

    #[test]
    fn linear_quadratic_grid_eff_is_on_boundary() {
        // B = 0: F = y1 + y2 - x1 - x2, boundary lies on the 0.25 grid.
        let p = QuadraticSeparableParams::new(vec![1.0, 1.0], vec![1.0, 1.0], vec![vec![0.0, 0.0], vec![0.0, 0.0]])
            .unwrap();
        let tech = TechnologyKind::QuadraticSeparable(p);
        let grid = GridSpec::cube(2, 0.0, 3.0, 0.25).unwrap();
        let x = [1.0, 0.5];
        let eff = grid_frontier(&tech, Side::Output, &x, &grid, FrontierKind::Eff).unwrap();
        assert_eq!(eff.len(), 7);
        for y in &eff {
            assert!(tech.eval_f_unchecked(y, &x).abs() <= BOUNDARY_TOL);
        }
    }

    #[test]
    fn staircase_isoquant_jpf_fails() {
        let grid = GridSpec::cube(2, 0.0, 3.0, 0.25).unwrap();
        let r = jpf_existence_check(&TechnologyKind::Staircase, &grid, JpfKind::Isoquant).unwrap();
        assert!(!r.holds);
        assert!(r.violations.iter().any(|v| v.y == [1.0] && v.x == [2.0]));
    }

    #[test]
    fn polyhedral_a_jpf() {
        let grid = GridSpec::cube(3, 0.0, 2.0, 0.25).unwrap();
        let tech = TechnologyKind::PolyhedralA;
        assert!(jpf_existence_check(&tech, &grid, JpfKind::Isoquant).unwrap().holds);
        let r = jpf_existence_check(&tech, &grid, JpfKind::Efficient).unwrap();
        assert!(!r.holds);
        assert!(r.violations.iter().any(|v| v.y == [0.5, 1.0] && v.x == [1.0]));
    }

    #[test]
    fn lemma_witnesses() {
        let grid = GridSpec::cube(2, 0.0, 2.0, 0.25).unwrap();
        let b = weff_not_eff_witnesses(&TechnologyKind::PolyhedralB, &[1.0, 1.0], &grid).unwrap();
        let w = b.iter().find(|w| w.y == [0.5, 1.0]).unwrap();
        assert_eq!(w.t[1], ExtendedValue::Finite(1.0));
        assert!(w.reproducing.contains(&1));

        let a = weff_not_eff_witnesses(&TechnologyKind::PolyhedralA, &[1.0], &grid).unwrap();
        let w = a.iter().find(|w| w.y == [0.5, 1.0]).unwrap();
        assert_eq!(w.t[0], ExtendedValue::Finite(1.0));
        assert!(w.slack.contains(&0));
    }

    #[test]
    fn frontier_needs_x1() {
        let grid = GridSpec::cube(2, 0.0, 2.0, 0.25).unwrap();
        let e = grid_frontier(
            &TechnologyKind::PolyhedralB,
            Side::Output,
            &[0.0, 0.0],
            &grid,
            FrontierKind::Eff,
        );
        assert!(matches!(e, Err(Error::Precondition(_))));
    }
}
