//! Production technologies described by a transformation function `F`, with
//! `T = {(y, x) >= 0 : F(y, x) <= 0}`.
//!
//! Four technologies are shipped: the quadratic-separable family
//! `F(y, x) = b'y + y'By/2 - a'x` and three small worked examples used to
//! exhibit how isoquants, weak efficient and efficient subsets can differ.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{check_len, Error, Result};
use crate::order::Bundle;
use crate::report::{PropertyReport, Worst};
use crate::sampling::{SampleConfig, Sampler};
use crate::search;
use crate::tolerance::{BOUNDARY_TOL, CONV_TOL, PSD_TOL, SYMMETRY_TOL};

/// Parameters `(b, a, B)` of `F(y, x) = b'y + y'By/2 - a'x`.
///
/// Construction only checks shapes; call [`QuadraticSeparableParams::validate`]
/// for the sign, symmetry and definiteness constraints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticSeparableParams {
    b: Vec<f64>,
    a: Vec<f64>,
    /// Row-major `m x m`.
    #[serde(rename = "B")]
    bmat: Vec<Vec<f64>>,
}

impl QuadraticSeparableParams {
    pub fn new(b: Vec<f64>, a: Vec<f64>, bmat: Vec<Vec<f64>>) -> Result<Self> {
        if b.is_empty() || a.is_empty() {
            return Err(Error::InvalidInput("b and a must be nonempty".into()));
        }
        check_len("B rows", b.len(), bmat.len())?;
        for row in &bmat {
            check_len("B columns", b.len(), row.len())?;
        }
        let all = b.iter().chain(&a).chain(bmat.iter().flatten());
        if let Some(v) = all.into_iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite parameter {v}")));
        }
        Ok(Self { b, a, bmat })
    }

    /// `b = (1, 1)`, `a = (1, 1)`, `B = I`.
    pub fn figure4() -> Self {
        Self::new(vec![1.0, 1.0], vec![1.0, 1.0], vec![vec![1.0, 0.0], vec![0.0, 1.0]]).expect("static parameters")
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn bmat(&self) -> &[Vec<f64>] {
        &self.bmat
    }

    pub fn m(&self) -> usize {
        self.b.len()
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let m = self.m();
        if self.b.iter().any(|v| *v <= 0.0) {
            violations.push("b not strictly positive".to_string());
        }
        if self.a.iter().any(|v| *v <= 0.0) {
            violations.push("a not strictly positive".to_string());
        }
        let symmetric = (0..m).all(|k| (0..k).all(|l| (self.bmat[k][l] - self.bmat[l][k]).abs() <= SYMMETRY_TOL));
        if !symmetric {
            violations.push("B not symmetric".to_string());
        }
        if self.bmat.iter().flatten().any(|v| *v < 0.0) {
            violations.push("B not entrywise nonnegative".to_string());
        }
        if symmetric {
            let min_eig = self.min_eigenvalue();
            if min_eig < -PSD_TOL {
                violations.push(format!(
                    "B not positive semidefinite (smallest eigenvalue {min_eig:.6e})"
                ));
            }
        }
        ValidationReport { violations }
    }

    fn min_eigenvalue(&self) -> f64 {
        let m = self.m();
        let mat = DMatrix::from_fn(m, m, |k, l| self.bmat[k][l]);
        mat.symmetric_eigenvalues().min()
    }

    /// `sum_l B[k][l] * v[l]`.
    pub fn bmat_times(&self, v: &[f64]) -> Vec<f64> {
        self.bmat.iter().map(|row| dot(row, v)).collect()
    }

    /// `u' B v`.
    pub fn bilinear(&self, u: &[f64], v: &[f64]) -> f64 {
        self.bmat.iter().zip(u).map(|(row, uk)| uk * dot(row, v)).sum()
    }

    /// Output function `q(y) = b'y + y'By/2`.
    pub fn output_value(&self, y: &[f64]) -> f64 {
        dot(&self.b, y) + 0.5 * self.bilinear(y, y)
    }

    /// Input function `f(x) = a'x`.
    pub fn input_value(&self, x: &[f64]) -> f64 {
        dot(&self.a, x)
    }

    pub fn eval(&self, y: &[f64], x: &[f64]) -> f64 {
        self.output_value(y) - self.input_value(x)
    }
}

pub(crate) fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Violated parameter constraints; empty when the parameters are valid.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidParams(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            f.write_str("valid")
        } else {
            f.write_str(&self.violations.join("; "))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TechnologyKind {
    QuadraticSeparable(QuadraticSeparableParams),
    /// One output, one input: `y <= h(x)` with `h(x) = x` on `[0, 1)` and `1` afterwards.
    Staircase,
    /// Two outputs, one input: `y2 <= x` and `y1 + y2 <= 2x`.
    PolyhedralA,
    /// Two outputs, two inputs: `y2 <= x2` and `y1 + y2 <= x1 + x2`.
    PolyhedralB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Input sets `L(y)`; the point is an input vector.
    Input,
    /// Output sets `P(x)`; the point is an output vector.
    Output,
}

/// Boundary subsets of an input or output set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontierKind {
    Isoq,
    Weff,
    Eff,
}

/// Cell of the partition of the input space (`X*`) or output space (`Y*`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PartitionCell {
    /// Nonzero input vector that can produce some nonzero output.
    X1,
    /// Nonzero input vector whose output set is `{0}`.
    X2,
    X3,
    /// Nonzero output vector with a nonempty input set.
    Y1,
    /// Nonzero output vector that no input can produce.
    Y2,
    Y3,
}

impl FromStr for FrontierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "isoq" | "isoquant" => Ok(Self::Isoq),
            "weff" => Ok(Self::Weff),
            "eff" | "efficient" => Ok(Self::Eff),
            other => Err(Error::InvalidInput(format!("unknown frontier kind {other:?}"))),
        }
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "input" => Ok(Self::Input),
            "output" => Ok(Self::Output),
            other => Err(Error::InvalidInput(format!("unknown side {other:?}"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TechnologyJson {
    kind: String,
    b: Option<Vec<f64>>,
    a: Option<Vec<f64>>,
    #[serde(rename = "B")]
    bmat: Option<Vec<Vec<f64>>>,
}

fn staircase_h(x: f64) -> f64 {
    if x < 1.0 {
        x
    } else {
        1.0
    }
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= BOUNDARY_TOL
}

impl TechnologyKind {
    /// Parses the technology JSON document
    /// `{"kind": ..., "b": [...], "a": [...], "B": [[...]]}`.
    ///
    /// Parameters are shape-checked but not validated.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TechnologyJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("technology JSON: {e}")))?;
        let simple = |tech: Self| {
            if raw.b.is_some() || raw.a.is_some() || raw.bmat.is_some() {
                Err(Error::InvalidInput(format!(
                    "kind {:?} takes no b/a/B parameters",
                    raw.kind
                )))
            } else {
                Ok(tech)
            }
        };
        match raw.kind.as_str() {
            "quadratic_separable" => {
                let (Some(b), Some(a), Some(bmat)) = (raw.b.clone(), raw.a.clone(), raw.bmat.clone()) else {
                    return Err(Error::InvalidInput("quadratic_separable requires b, a and B".into()));
                };
                Ok(Self::QuadraticSeparable(QuadraticSeparableParams::new(b, a, bmat)?))
            }
            "staircase" => simple(Self::Staircase),
            "polyhedral_a" => simple(Self::PolyhedralA),
            "polyhedral_b" => simple(Self::PolyhedralB),
            other => Err(Error::InvalidInput(format!("unknown technology kind {other:?}"))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Self::QuadraticSeparable(p) => {
                json!({"kind": "quadratic_separable", "b": p.b, "a": p.a, "B": p.bmat})
            }
            Self::Staircase => json!({"kind": "staircase"}),
            Self::PolyhedralA => json!({"kind": "polyhedral_a"}),
            Self::PolyhedralB => json!({"kind": "polyhedral_b"}),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::QuadraticSeparable(_) => "quadratic_separable",
            Self::Staircase => "staircase",
            Self::PolyhedralA => "polyhedral_a",
            Self::PolyhedralB => "polyhedral_b",
        }
    }

    /// `(m, n)`: number of outputs and inputs.
    pub fn dims(&self) -> (usize, usize) {
        match self {
            Self::QuadraticSeparable(p) => (p.m(), p.n()),
            Self::Staircase => (1, 1),
            Self::PolyhedralA => (2, 1),
            Self::PolyhedralB => (2, 2),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            Self::QuadraticSeparable(p) => p.validate(),
            _ => ValidationReport::default(),
        }
    }

    pub fn quadratic(&self) -> Option<&QuadraticSeparableParams> {
        match self {
            Self::QuadraticSeparable(p) => Some(p),
            _ => None,
        }
    }

    pub fn check_bundle(&self, bundle: &Bundle) -> Result<()> {
        let (m, n) = self.dims();
        check_len("bundle outputs", m, bundle.m())?;
        check_len("bundle inputs", n, bundle.n())
    }

    /// `F(y, x)`. The polyhedral kinds return the largest constraint slack
    /// `lhs - rhs`, so `F <= 0` exactly on the technology.
    pub fn eval_f(&self, bundle: &Bundle) -> Result<f64> {
        self.check_bundle(bundle)?;
        Ok(self.eval_f_unchecked(bundle.y(), bundle.x()))
    }

    /// [`TechnologyKind::eval_f`] on raw slices of the right lengths.
    pub fn eval_f_unchecked(&self, y: &[f64], x: &[f64]) -> f64 {
        match self {
            Self::QuadraticSeparable(p) => p.eval(y, x),
            Self::Staircase => y[0] - staircase_h(x[0]),
            Self::PolyhedralA => (y[1] - x[0]).max(y[0] + y[1] - 2.0 * x[0]),
            Self::PolyhedralB => (y[1] - x[1]).max(y[0] + y[1] - x[0] - x[1]),
        }
    }

    pub fn contains(&self, bundle: &Bundle) -> Result<bool> {
        Ok(self.eval_f(bundle)? <= 0.0)
    }

    fn check_side_vector(&self, side: Side, v: &[f64], context: &'static str) -> Result<()> {
        let (m, n) = self.dims();
        let expected = match side {
            Side::Input => n,
            Side::Output => m,
        };
        check_len(context, expected, v.len())?;
        if let Some(c) = v.iter().find(|c| !c.is_finite() || **c < 0.0) {
            return Err(Error::InvalidInput(format!(
                "{context}: component {c} is negative or non-finite"
            )));
        }
        Ok(())
    }

    /// Partition cell of an input vector (`side = Input`) or an output vector.
    pub fn classify(&self, side: Side, v: &[f64]) -> Result<PartitionCell> {
        self.check_side_vector(side, v, "classify")?;
        let zero = v.iter().all(|c| *c == 0.0);
        Ok(match (side, zero) {
            (Side::Input, true) => PartitionCell::X3,
            (Side::Output, true) => PartitionCell::Y3,
            // Every shipped technology can produce something from any nonzero
            // input: the quadratic has F(eps e_1, x) < 0 once a'x > 0, and the
            // polyhedral/staircase sets contain (x1 + x2, 0), (2x, 0) and min(x, 1).
            (Side::Input, false) => PartitionCell::X1,
            (Side::Output, false) => {
                if self.input_set_nonempty(v) {
                    PartitionCell::Y1
                } else {
                    PartitionCell::Y2
                }
            }
        })
    }

    fn input_set_nonempty(&self, y: &[f64]) -> bool {
        match self {
            Self::QuadraticSeparable(_) => {
                // Grow the input bundle along the all-ones ray until y becomes producible.
                let n = self.dims().1;
                search::expand(1.0, |t| self.eval_f_unchecked(y, &vec![t; n]) <= 0.0).is_some()
            }
            Self::Staircase => y[0] <= 1.0,
            Self::PolyhedralA | Self::PolyhedralB => true,
        }
    }

    /// Membership of `point` in the isoquant, weak efficient or efficient
    /// subset of `P(fixed)` (`side = Output`) or `L(fixed)` (`side = Input`).
    ///
    /// Boundary equalities are tested with [`BOUNDARY_TOL`].
    pub fn frontier_member(&self, side: Side, fixed: &[f64], point: &[f64], kind: FrontierKind) -> Result<bool> {
        let (fixed_side, point_side) = match side {
            Side::Output => (Side::Input, Side::Output),
            Side::Input => (Side::Output, Side::Input),
        };
        self.check_side_vector(fixed_side, fixed, "frontier_member (fixed)")?;
        self.check_side_vector(point_side, point, "frontier_member (point)")?;
        let point_is_zero = point.iter().all(|c| *c == 0.0);
        let (y, x) = match side {
            Side::Output => (point, fixed),
            Side::Input => (fixed, point),
        };
        match self.classify(fixed_side, fixed)? {
            PartitionCell::X2 | PartitionCell::X3 | PartitionCell::Y3 => return Ok(point_is_zero),
            PartitionCell::Y2 => return Ok(false),
            PartitionCell::X1 | PartitionCell::Y1 => {}
        }
        if self.eval_f_unchecked(y, x) > BOUNDARY_TOL {
            return Ok(false);
        }
        Ok(match (self, side) {
            // F1-F4 force Isoq = WEff = Eff = {F = 0}.
            (Self::QuadraticSeparable(p), _) => p.eval(y, x).abs() <= BOUNDARY_TOL,
            (Self::Staircase, Side::Output) => near(y[0], staircase_h(x[0])),
            (Self::Staircase, Side::Input) => near(x[0], y[0]),
            (Self::PolyhedralA, Side::Output) => {
                let x = x[0];
                let upper_edge = y[0] <= x + BOUNDARY_TOL && near(y[1], x);
                let sum_edge = y[1] <= x + BOUNDARY_TOL && near(y[0], 2.0 * x - y[1]);
                match kind {
                    FrontierKind::Isoq | FrontierKind::Weff => upper_edge || sum_edge,
                    FrontierKind::Eff => sum_edge,
                }
            }
            (Self::PolyhedralA, Side::Input) => near(x[0], y[1].max(0.5 * (y[0] + y[1]))),
            (Self::PolyhedralB, Side::Output) => {
                let total = x[0] + x[1];
                let eff = y[0] >= x[0] - BOUNDARY_TOL && y[0] <= total + BOUNDARY_TOL && near(y[1], total - y[0]);
                match kind {
                    FrontierKind::Eff => eff,
                    FrontierKind::Isoq | FrontierKind::Weff => {
                        eff || (x[1] > 0.0 && near(y[1], x[1]) && y[0] <= x[0] + BOUNDARY_TOL)
                    }
                }
            }
            (Self::PolyhedralB, Side::Input) => {
                let total = y[0] + y[1];
                let eff = x[0] <= y[0] + BOUNDARY_TOL && near(x[1], total - x[0]);
                match kind {
                    FrontierKind::Eff => eff,
                    FrontierKind::Isoq | FrontierKind::Weff => {
                        near(x[0] + x[1], total) || (y[1] > 0.0 && near(x[1], y[1]))
                    }
                }
            }
        })
    }
}

/// Sampled technology properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TechProperty {
    /// `F(0, 0) = 0`.
    F1,
    /// Continuity, checked as a local Lipschitz bound.
    F2,
    /// Strictly increasing in outputs, strictly decreasing in inputs.
    F3,
    /// Midpoint convexity.
    F4,
    /// `(0, 0)` is feasible.
    T1,
    /// Free disposability of outputs and inputs.
    T4,
    /// Output sets bounded by the axis roots `F(mu e_i, x) = 0`.
    T5,
}

impl TechProperty {
    pub const ALL: [TechProperty; 7] = [Self::F1, Self::F2, Self::F3, Self::F4, Self::T1, Self::T4, Self::T5];

    pub fn requires_quadratic(self) -> bool {
        !matches!(self, Self::T1 | Self::T4)
    }
}

impl fmt::Display for TechProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for TechProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown technology property {s:?}")))
    }
}

fn perturb_up(s: &mut Sampler, v: &[f64]) -> Vec<f64> {
    // at least one component moves by >= 0.01 so strict comparisons are not lost to rounding
    let bump = s.index(v.len());
    v.iter()
        .enumerate()
        .map(|(i, c)| {
            let lo = if i == bump { 0.01 } else { 0.0 };
            c + if i == bump || s.coin(0.5) {
                s.uniform(lo, 1.0)
            } else {
                0.0
            }
        })
        .collect()
}

fn perturb_down(s: &mut Sampler, v: &[f64]) -> Vec<f64> {
    v.iter().map(|c| (c - s.uniform(0.0, 1.0) * c).max(0.0)).collect()
}

/// Root `mu > 0` of `F(mu e_i, x) = 0`; `x` must be nonzero.
pub fn axis_root(p: &QuadraticSeparableParams, i: usize, x: &[f64]) -> Option<f64> {
    let mut y = vec![0.0; p.m()];
    let mut g = |mu: f64| {
        y[i] = mu;
        p.eval(&y, x)
    };
    if g(0.0) >= 0.0 {
        return None;
    }
    let hi = search::expand(1.0, |mu| g(mu) > 0.0)?;
    Some(search::bisect_sup(0.0, hi, g).root)
}

/// Samples `config.samples` instances and checks `prop` on them.
pub fn check_technology_property(
    tech: &TechnologyKind,
    prop: TechProperty,
    config: SampleConfig,
) -> Result<PropertyReport> {
    tech.validate().into_result()?;
    let quad = match (tech.quadratic(), prop.requires_quadratic()) {
        (None, true) => {
            return Err(Error::Precondition(format!(
                "{prop} is only checked for quadratic_separable technologies"
            )))
        }
        (q, _) => q,
    };
    let (m, n) = tech.dims();
    let f = |y: &[f64], x: &[f64]| tech.eval_f_unchecked(y, x);
    let mut s = Sampler::new(config.seed);
    let mut worst = Worst::new();
    let tolerance = match prop {
        TechProperty::F4 => CONV_TOL,
        _ => 0.0,
    };
    match prop {
        TechProperty::F1 | TechProperty::T1 => {
            let zero = Bundle::zeros(m, n)?;
            let value = tech.eval_f(&zero)?;
            let violation = if prop == TechProperty::F1 {
                value.abs()
            } else {
                value.max(0.0)
            };
            worst.record(violation, || json!({"F(0,0)": value}));
        }
        TechProperty::F2 => {
            let p = quad.expect("checked above");
            let h = 1e-7;
            for _ in 0..config.samples {
                let z = s.bundle(m, n);
                let dy = s.vector(m, -h, h);
                let dx = s.vector(n, -h, h);
                let y2: Vec<f64> = z.y().iter().zip(&dy).map(|(a, d)| (a + d).max(0.0)).collect();
                let x2: Vec<f64> = z.x().iter().zip(&dx).map(|(a, d)| (a + d).max(0.0)).collect();
                let row_sums: f64 = p
                    .bmat()
                    .iter()
                    .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
                    .fold(0.0, f64::max);
                let ymax = z.y().iter().fold(0.0_f64, |a, b| a.max(*b)) + h;
                let lipschitz = p.b().iter().map(|v| v.abs()).sum::<f64>()
                    + m as f64 * row_sums * ymax
                    + p.a().iter().map(|v| v.abs()).sum::<f64>();
                let change = (f(&y2, &x2) - f(z.y(), z.x())).abs();
                let bound = lipschitz * h * (1.0 + 1e-6) + 1e-12;
                worst.record(
                    (change - bound).max(0.0),
                    || json!({"y": z.y(), "x": z.x(), "change": change, "bound": bound}),
                );
            }
        }
        TechProperty::F3 => {
            for _ in 0..config.samples {
                let z = s.bundle(m, n);
                let base = f(z.y(), z.x());
                let y_up = perturb_up(&mut s, z.y());
                let more_out = f(&y_up, z.x());
                let v = if more_out > base {
                    0.0
                } else {
                    base - more_out + f64::EPSILON
                };
                worst.record(
                    v,
                    || json!({"y": z.y(), "x": z.x(), "y_up": y_up, "F": base, "F_up": more_out}),
                );
                let x_up = perturb_up(&mut s, z.x());
                let more_in = f(z.y(), &x_up);
                let v = if more_in < base {
                    0.0
                } else {
                    more_in - base + f64::EPSILON
                };
                worst.record(
                    v,
                    || json!({"y": z.y(), "x": z.x(), "x_up": x_up, "F": base, "F_up": more_in}),
                );
            }
        }
        TechProperty::F4 => {
            for _ in 0..config.samples {
                let z1 = s.bundle(m, n);
                let z2 = s.bundle(m, n);
                let mid = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| 0.5 * (a + b)).collect::<Vec<_>>();
                let (ym, xm) = (mid(z1.y(), z2.y()), mid(z1.x(), z2.x()));
                let lhs = f(&ym, &xm);
                let rhs = 0.5 * f(z1.y(), z1.x()) + 0.5 * f(z2.y(), z2.x());
                worst.record(lhs - rhs, || json!({"z1": z1, "z2": z2, "F_mid": lhs, "chord": rhs}));
            }
        }
        TechProperty::T4 => {
            let mut drawn = 0;
            while drawn < config.samples {
                let z = s.bundle(m, n);
                if f(z.y(), z.x()) > 0.0 {
                    // shrink outputs toward zero until feasible, keeping the draw
                    let t = s.uniform(0.0, 1.0);
                    let y: Vec<f64> = z.y().iter().map(|c| c * t).collect();
                    if f(&y, z.x()) > 0.0 {
                        continue;
                    }
                    drawn += 1;
                    check_disposal(&mut s, &mut worst, &f, &y, z.x());
                } else {
                    drawn += 1;
                    check_disposal(&mut s, &mut worst, &f, z.y(), z.x());
                }
            }
        }
        TechProperty::T5 => {
            let p = quad.expect("checked above");
            for _ in 0..config.samples {
                let x = s.vector(n, 0.0, crate::sampling::BUNDLE_RANGE);
                if x.iter().all(|c| *c == 0.0) {
                    continue;
                }
                for i in 0..m {
                    let Some(mu) = axis_root(p, i, &x) else {
                        worst.record(f64::INFINITY, || json!({"x": x, "output": i, "reason": "no axis root"}));
                        continue;
                    };
                    let mut y = vec![0.0; m];
                    y[i] = 1.01 * mu;
                    let beyond = f(&y, &x);
                    worst.record(
                        if beyond > 0.0 { 0.0 } else { -beyond + f64::EPSILON },
                        || json!({"x": x, "output": i, "mu": mu, "F_beyond": beyond}),
                    );
                }
                // any feasible output vector lies in the cell spanned by the axis roots
                let y = s.vector(m, 0.0, crate::sampling::BUNDLE_RANGE);
                if f(&y, &x) <= 0.0 {
                    for (i, yi) in y.iter().enumerate() {
                        let mu = axis_root(p, i, &x).unwrap_or(f64::NEG_INFINITY);
                        worst.record(
                            (yi - mu - 1e-9).max(0.0),
                            || json!({"x": x, "y": y, "output": i, "mu": mu}),
                        );
                    }
                }
            }
        }
    }
    Ok(worst.finish(&prop.to_string(), config, tolerance))
}

fn check_disposal(s: &mut Sampler, worst: &mut Worst, f: &impl Fn(&[f64], &[f64]) -> f64, y: &[f64], x: &[f64]) {
    let y_less = perturb_down(s, y);
    let x_more = perturb_up(s, x);
    let value = f(&y_less, &x_more);
    worst.record(
        value.max(0.0),
        || json!({"y": y, "x": x, "y_less": y_less, "x_more": x_more, "F": value}),
    );
}
