//! Directional technology distance function
//! `D(y, x; g_y, g_x) = sup{beta : (y + beta g_y, x - beta g_x) in T}`.
//!
//! Nonnegativity of the shifted bundle confines `beta` to an interval
//! `Gamma`. On `Gamma` the restricted function `F_S(beta) = F(y + beta g_y,
//! x - beta g_x)` is nondecreasing (strictly increasing for the quadratic
//! family), so the feasible part `Lambda = {beta in Gamma : F_S(beta) <= 0}` is
//! empty, all of `Gamma`, or a proper initial segment ending at the root of
//! `F_S`. The value is `-inf`, `min x_i / g_xi` or that root, respectively.

mod properties;

pub use properties::{check_property, DProperty, D2_SCALES};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::order::{Bundle, Direction, ExtendedValue};
use crate::search;
use crate::technology::{dot, QuadraticSeparableParams, TechnologyKind};

/// Below this, `g_y' B g_y` is treated as zero and `F_S` as linear.
pub const LINEAR_BRANCH_TOL: f64 = 1e-14;
/// Negative discriminants down to `-DISCRIMINANT_TOL` are clamped to zero.
pub const DISCRIMINANT_TOL: f64 = 1e-12;
/// Lower bound for `beta` before one starts doubling when `Gamma` is unbounded below.
pub const FIRST_LOWER_CANDIDATE: f64 = -1.0;

/// The interval `Gamma` of step lengths keeping the shifted bundle nonnegative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaInterval {
    /// `max_{j in J+} -y_j / g_yj`, or `-inf` when `g_y = 0`.
    pub lower: ExtendedValue,
    /// `min_{i in I+} x_i / g_xi`, or `None` (unbounded) when `g_x = 0`.
    pub upper: Option<f64>,
    /// Input indices with `g_xi > 0`.
    pub i_plus: Vec<usize>,
    /// Output indices with `g_yj > 0`.
    pub j_plus: Vec<usize>,
}

impl GammaInterval {
    pub fn contains(&self, beta: f64) -> bool {
        self.lower.finite().is_none_or(|lo| beta >= lo) && self.upper.is_none_or(|hi| beta <= hi)
    }
}

pub fn gamma_interval(bundle: &Bundle, dir: &Direction) -> Result<GammaInterval> {
    check_len("direction outputs", bundle.m(), dir.m())?;
    check_len("direction inputs", bundle.n(), dir.n())?;
    let j_plus: Vec<usize> = (0..dir.m()).filter(|&j| dir.gy()[j] > 0.0).collect();
    let i_plus: Vec<usize> = (0..dir.n()).filter(|&i| dir.gx()[i] > 0.0).collect();
    let lower = j_plus
        .iter()
        .map(|&j| -bundle.y()[j] / dir.gy()[j])
        .reduce(f64::max)
        .map_or(ExtendedValue::NegInfinity, ExtendedValue::Finite);
    // strict comparison keeps the smallest index on ties
    let upper = i_plus
        .iter()
        .map(|&i| bundle.x()[i] / dir.gx()[i])
        .reduce(|best, r| if r < best { r } else { best });
    Ok(GammaInterval {
        lower,
        upper,
        i_plus,
        j_plus,
    })
}

/// Shape of the feasible set `Lambda` inside `Gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum LambdaClass {
    Empty,
    /// `Lambda` is a proper subset of `Gamma`; its supremum is the root of `F_S`.
    ProperSubset {
        root: f64,
    },
    /// `Lambda = Gamma`, which is then bounded above.
    Full {
        upper: f64,
    },
}

impl LambdaClass {
    pub fn value(self) -> ExtendedValue {
        match self {
            Self::Empty => ExtendedValue::NegInfinity,
            Self::ProperSubset { root } => ExtendedValue::Finite(root),
            Self::Full { upper } => ExtendedValue::Finite(upper),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Closed form for the quadratic family, bisection otherwise.
    Auto,
    /// Closed-form root of the quadratic `F_S`; quadratic technologies only.
    Closed,
    Bisect,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Auto => "auto",
            Self::Closed => "closed",
            Self::Bisect => "bisect",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "closed" => Ok(Self::Closed),
            "bisect" => Ok(Self::Bisect),
            other => Err(Error::InvalidInput(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DdfEvaluation {
    pub value: ExtendedValue,
    pub lambda: LambdaClass,
    /// Method actually used (never `Auto`).
    pub method: Method,
    /// Bisection iterations; zero for the closed form.
    pub iterations: u32,
    /// The downward bracket search ran out of doublings before finding a
    /// feasible point, and `Lambda` was declared empty.
    pub exhausted: bool,
}

/// Coefficients of `F_S(beta) = c2/2 beta^2 + c1 beta + c0` for the quadratic family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RestrictedQuadratic {
    /// `g_y' B g_y`.
    pub c2: f64,
    /// `b'g_y + y'B g_y + a'g_x`.
    pub c1: f64,
    /// `F(y, x)`.
    pub c0: f64,
}

impl RestrictedQuadratic {
    pub fn new(p: &QuadraticSeparableParams, bundle: &Bundle, dir: &Direction) -> Self {
        Self {
            c2: p.bilinear(dir.gy(), dir.gy()),
            c1: dot(p.b(), dir.gy()) + p.bilinear(bundle.y(), dir.gy()) + dot(p.a(), dir.gx()),
            c0: p.eval(bundle.y(), bundle.x()),
        }
    }

    pub fn eval(&self, beta: f64) -> f64 {
        0.5 * self.c2 * beta * beta + self.c1 * beta + self.c0
    }

    /// Largest zero of the polynomial, `None` when it stays positive.
    ///
    /// Uses `-2 c0 / (c1 + sqrt(c1^2 - 2 c2 c0))`, the rationalised form of
    /// `(-c1 + sqrt(c1^2 - 2 c2 c0)) / c2`, which does not cancel when
    /// `c2 c0` is small next to `c1^2`.
    pub fn root(&self) -> Option<f64> {
        if self.c2 <= LINEAR_BRANCH_TOL {
            return Some(-self.c0 / self.c1);
        }
        let disc = self.c1 * self.c1 - 2.0 * self.c2 * self.c0;
        if disc < -DISCRIMINANT_TOL {
            return None;
        }
        Some(-2.0 * self.c0 / (self.c1 + disc.max(0.0).sqrt()))
    }
}

/// Evaluator bound to a technology whose parameters were validated once.
#[derive(Debug, Clone)]
pub struct DdfEvaluator<'a> {
    tech: &'a TechnologyKind,
}

impl<'a> DdfEvaluator<'a> {
    pub fn new(tech: &'a TechnologyKind) -> Result<Self> {
        tech.validate().into_result()?;
        Ok(Self { tech })
    }

    pub fn technology(&self) -> &TechnologyKind {
        self.tech
    }

    fn check(&self, bundle: &Bundle, dir: &Direction) -> Result<()> {
        self.tech.check_bundle(bundle)?;
        let (m, n) = self.tech.dims();
        check_len("direction outputs", m, dir.m())?;
        check_len("direction inputs", n, dir.n())
    }

    /// `F_S(beta)`.
    pub fn restricted(&self, bundle: &Bundle, dir: &Direction, beta: f64) -> f64 {
        let y: Vec<f64> = bundle.y().iter().zip(dir.gy()).map(|(y, g)| y + beta * g).collect();
        let x: Vec<f64> = bundle.x().iter().zip(dir.gx()).map(|(x, g)| x - beta * g).collect();
        self.tech.eval_f_unchecked(&y, &x)
    }

    pub fn value(&self, bundle: &Bundle, dir: &Direction) -> Result<ExtendedValue> {
        Ok(self.evaluate(bundle, dir, Method::Auto)?.value)
    }

    pub fn evaluate(&self, bundle: &Bundle, dir: &Direction, method: Method) -> Result<DdfEvaluation> {
        self.check(bundle, dir)?;
        let method = match (method, self.tech) {
            (Method::Auto, TechnologyKind::QuadraticSeparable(_)) => Method::Closed,
            (Method::Auto, _) => Method::Bisect,
            (Method::Closed, TechnologyKind::QuadraticSeparable(_)) | (Method::Bisect, _) => method,
            (Method::Closed, other) => {
                return Err(Error::Precondition(format!(
                    "closed form is only available for quadratic_separable, not {}",
                    other.name()
                )))
            }
        };
        let gamma = gamma_interval(bundle, dir)?;
        let f = |beta: f64| self.restricted(bundle, dir, beta);

        let mut eval = DdfEvaluation {
            value: ExtendedValue::NegInfinity,
            lambda: LambdaClass::Empty,
            method,
            iterations: 0,
            exhausted: false,
        };
        // Lambda = Gamma needs Gamma bounded above and the endpoint feasible;
        // a tie F_S(upper) = 0 is classified here and gives the same value.
        if let Some(upper) = gamma.upper {
            if f(upper) <= 0.0 {
                eval.lambda = LambdaClass::Full { upper };
                eval.value = eval.lambda.value();
                return Ok(eval);
            }
        }

        eval.lambda = match method {
            Method::Closed => {
                let p = self.tech.quadratic().expect("method resolved above");
                closed_form(&RestrictedQuadratic::new(p, bundle, dir), &gamma)
            }
            _ => {
                let lo = match gamma.lower {
                    ExtendedValue::Finite(lower) if f(lower) > 0.0 => None,
                    ExtendedValue::Finite(lower) => Some(lower),
                    ExtendedValue::NegInfinity => {
                        let found = search::expand(FIRST_LOWER_CANDIDATE, |b| f(b) <= 0.0);
                        eval.exhausted = found.is_none();
                        found
                    }
                };
                match lo {
                    None => LambdaClass::Empty,
                    Some(lo) => {
                        let hi = match gamma.upper {
                            Some(upper) => upper,
                            None => search::expand(1.0, |b| f(b) > 0.0).ok_or_else(|| {
                                Error::ContractViolation(
                                    "restricted function stays feasible on an unbounded interval \
                                     with g_x = 0; the output set is unbounded"
                                        .into(),
                                )
                            })?,
                        };
                        let b = search::bisect_sup(lo, hi, f);
                        eval.iterations = b.iterations;
                        LambdaClass::ProperSubset { root: b.root }
                    }
                }
            }
        };
        eval.value = eval.lambda.value();
        Ok(eval)
    }
}

fn closed_form(q: &RestrictedQuadratic, gamma: &GammaInterval) -> LambdaClass {
    let Some(mut root) = q.root() else {
        return LambdaClass::Empty;
    };
    if let ExtendedValue::Finite(lower) = gamma.lower {
        // F_S increases on Gamma, so a root left of Gamma means F_S(lower) > 0
        if root < lower - DISCRIMINANT_TOL * lower.abs().max(1.0) {
            return LambdaClass::Empty;
        }
        root = root.max(lower);
    }
    if let Some(upper) = gamma.upper {
        root = root.min(upper);
    }
    LambdaClass::ProperSubset { root }
}

/// DTDF value with the default method for the technology.
pub fn eval_ddf(tech: &TechnologyKind, bundle: &Bundle, dir: &Direction) -> Result<ExtendedValue> {
    DdfEvaluator::new(tech)?.value(bundle, dir)
}

/// Largest feasible quantity of output `i` (0-based) given the other outputs
/// and the inputs of `bundle`; `-inf` when no nonnegative quantity is feasible.
///
/// Computed as `D((y with y_i = 0, x); e_i, 0)`: along `(e_i, 0)` starting
/// from `y_i = 0` the step length is the output quantity itself.
pub fn unsymmetric_t(tech: &TechnologyKind, i: usize, bundle: &Bundle) -> Result<ExtendedValue> {
    let (m, n) = tech.dims();
    if i >= m {
        return Err(Error::IndexOutOfRange { index: i, len: m });
    }
    tech.check_bundle(bundle)?;
    let mut y = bundle.y().to_vec();
    y[i] = 0.0;
    let base = Bundle::new(y, bundle.x().to_vec())?;
    eval_ddf(tech, &base, &Direction::output_axis(i, m, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::technology::QuadraticSeparableParams;

    fn fig4() -> TechnologyKind {
        TechnologyKind::QuadraticSeparable(QuadraticSeparableParams::figure4())
    }

    fn b(y: &[f64], x: &[f64]) -> Bundle {
        Bundle::new(y.to_vec(), x.to_vec()).unwrap()
    }

    fn d(gy: &[f64], gx: &[f64]) -> Direction {
        Direction::new(gy.to_vec(), gx.to_vec()).unwrap()
    }

    #[test]
    fn gamma_examples() {
        let g = gamma_interval(&b(&[0.5, 0.5], &[1.0, 1.0]), &d(&[0.5, 0.5], &[0.0, 0.0])).unwrap();
        assert_eq!(g.lower, ExtendedValue::Finite(-1.0));
        assert_eq!(g.upper, None);
        assert!(g.i_plus.is_empty());
        assert_eq!(g.j_plus, vec![0, 1]);

        let g = gamma_interval(&b(&[0.0, 0.0], &[1.0, 2.0]), &d(&[0.0, 0.0], &[1.0, 1.0])).unwrap();
        assert_eq!(g.lower, ExtendedValue::NegInfinity);
        assert_eq!(g.upper, Some(1.0));

        let g = gamma_interval(&b(&[1.0, 1.0], &[1.0, 1.0]), &d(&[1.0, 1.0], &[1.0, 1.0])).unwrap();
        assert_eq!(g.lower, ExtendedValue::Finite(-1.0));
        assert_eq!(g.upper, Some(1.0));
        assert!(g.contains(0.0) && !g.contains(1.5));
    }

    #[test]
    fn figure4_value() {
        let exact = 2.0 * 3f64.sqrt() - 3.0;
        let t = fig4();
        let ev = DdfEvaluator::new(&t).unwrap();
        let (bundle, dir) = (b(&[0.5, 0.5], &[1.0, 1.0]), d(&[0.5, 0.5], &[0.0, 0.0]));
        let closed = ev.evaluate(&bundle, &dir, Method::Closed).unwrap();
        assert!((closed.value.to_f64() - exact).abs() <= 1e-12);
        assert_eq!(closed.method, Method::Closed);
        let bisect = ev.evaluate(&bundle, &dir, Method::Bisect).unwrap();
        assert!((bisect.value.to_f64() - exact).abs() <= 1e-8);
        assert!(bisect.iterations > 0);
        assert!(matches!(bisect.lambda, LambdaClass::ProperSubset { .. }));
    }

    #[test]
    fn zero_bundle_is_zero() {
        let t = fig4();
        for dir in [
            d(&[1.0, 0.0], &[0.0, 0.0]),
            d(&[0.0, 0.0], &[0.3, 1.0]),
            d(&[0.2, 0.7], &[0.5, 0.0]),
        ] {
            assert_eq!(
                eval_ddf(&t, &b(&[0.0, 0.0], &[0.0, 0.0]), &dir).unwrap(),
                ExtendedValue::Finite(0.0)
            );
        }
    }

    #[test]
    fn full_lambda_uses_input_bound() {
        let t = fig4();
        let ev = DdfEvaluator::new(&t).unwrap();
        let r = ev
            .evaluate(&b(&[0.0, 0.0], &[1.0, 1.0]), &d(&[0.0, 0.0], &[1.0, 1.0]), Method::Auto)
            .unwrap();
        assert_eq!(r.lambda, LambdaClass::Full { upper: 1.0 });
        assert_eq!(r.value, ExtendedValue::Finite(1.0));
    }

    #[test]
    fn empty_lambda() {
        // y2 can never drop below 1.9 while removing y1 along (1, 0.05)
        let t = fig4();
        let (bundle, dir) = (b(&[0.1, 2.0], &[0.2, 0.2]), d(&[1.0, 0.05], &[0.0, 0.0]));
        let ev = DdfEvaluator::new(&t).unwrap();
        assert_eq!(
            ev.evaluate(&bundle, &dir, Method::Closed).unwrap().value,
            ExtendedValue::NegInfinity
        );
        assert_eq!(
            ev.evaluate(&bundle, &dir, Method::Bisect).unwrap().value,
            ExtendedValue::NegInfinity
        );
    }

    #[test]
    fn exhausted_bracket_is_flagged() {
        // y = 2 cannot be produced by any input under the staircase technology
        let t = TechnologyKind::Staircase;
        let r = DdfEvaluator::new(&t)
            .unwrap()
            .evaluate(&b(&[2.0], &[1.0]), &d(&[0.0], &[1.0]), Method::Auto)
            .unwrap();
        assert_eq!(r.value, ExtendedValue::NegInfinity);
        assert!(r.exhausted);
    }

    #[test]
    fn closed_form_rejected_for_polyhedral() {
        let t = TechnologyKind::PolyhedralA;
        let err = DdfEvaluator::new(&t)
            .unwrap()
            .evaluate(&b(&[1.0, 0.5], &[1.0]), &d(&[1.0, 0.0], &[0.0]), Method::Closed)
            .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn invalid_params_rejected() {
        let bad = TechnologyKind::QuadraticSeparable(
            QuadraticSeparableParams::new(vec![1.0, 1.0], vec![1.0, 1.0], vec![vec![1.0, 2.0], vec![2.0, 1.0]])
                .unwrap(),
        );
        assert!(matches!(DdfEvaluator::new(&bad), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn polyhedral_bisection() {
        // max beta with (1 + beta) + 0.5 <= 2
        let v = eval_ddf(
            &TechnologyKind::PolyhedralA,
            &b(&[1.0, 0.5], &[1.0]),
            &d(&[1.0, 0.0], &[0.0]),
        )
        .unwrap();
        assert!((v.to_f64() - 0.5).abs() < 1e-11);
    }

    #[test]
    fn unsymmetric_t_examples() {
        let a = TechnologyKind::PolyhedralA;
        let t = unsymmetric_t(&a, 0, &b(&[0.0, 0.5], &[1.0])).unwrap();
        assert!((t.to_f64() - 1.5).abs() < 1e-11);
        // the starting value of the maximised output is ignored
        let t2 = unsymmetric_t(&a, 0, &b(&[7.0, 0.5], &[1.0])).unwrap();
        assert_eq!(t, t2);
        let s = unsymmetric_t(&TechnologyKind::Staircase, 0, &b(&[0.0], &[2.0])).unwrap();
        assert!((s.to_f64() - 1.0).abs() < 1e-11);
        assert_eq!(
            unsymmetric_t(&a, 0, &b(&[0.0, 5.0], &[1.0])).unwrap(),
            ExtendedValue::NegInfinity
        );
        assert!(matches!(
            unsymmetric_t(&a, 2, &b(&[0.0, 5.0], &[1.0])),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn linear_branch() {
        // B = 0: F_S is linear and G_S(0) = -F / (b'g_y + a'g_x)
        let t = TechnologyKind::QuadraticSeparable(
            QuadraticSeparableParams::new(vec![1.0, 2.0], vec![1.0], vec![vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap(),
        );
        let v = eval_ddf(&t, &b(&[1.0, 1.0], &[2.5]), &d(&[1.0, 0.0], &[0.0])).unwrap();
        assert!((v.to_f64() - (-0.5)).abs() < 1e-15);
    }
}
