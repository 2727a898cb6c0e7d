//! Vector orders and the bundle/direction data model.
//!
//! Relations are evaluated exactly on the stored floats. Callers that need
//! slack (the grid oracles) apply their own tolerance.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};

/// Componentwise vector relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `u_i >= v_i` for every `i`.
    Geqq,
    /// `Geqq` and `u != v`.
    Geq,
    /// Every `i` has `u_i > v_i` or `u_i = v_i = 0`.
    StarGt,
    /// `u_i > v_i` for every `i`.
    Gt,
}

pub fn compare(u: &[f64], v: &[f64], relation: Relation) -> Result<bool> {
    check_len("compare", u.len(), v.len())?;
    let pairs = || u.iter().zip(v);
    Ok(match relation {
        Relation::Geqq => pairs().all(|(a, b)| a >= b),
        Relation::Geq => pairs().all(|(a, b)| a >= b) && pairs().any(|(a, b)| a != b),
        Relation::StarGt => pairs().all(|(a, b)| a > b || (*a == 0.0 && *b == 0.0)),
        Relation::Gt => pairs().all(|(a, b)| a > b),
    })
}

fn check_nonnegative(what: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidInput(format!("{what} must have at least one component")));
    }
    match v.iter().position(|c| !c.is_finite() || *c < 0.0) {
        Some(i) => Err(Error::InvalidInput(format!(
            "{what}[{i}] = {} is not a finite nonnegative number",
            v[i]
        ))),
        None => Ok(()),
    }
}

/// A nonnegative output vector `y` together with a nonnegative input vector `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bundle {
    y: Vec<f64>,
    x: Vec<f64>,
}

impl Bundle {
    pub fn new(y: Vec<f64>, x: Vec<f64>) -> Result<Self> {
        check_nonnegative("y", &y)?;
        check_nonnegative("x", &x)?;
        Ok(Self { y, x })
    }

    /// Builds a bundle after clamping components in `[-1e-12, 0)` to zero.
    ///
    /// Points obtained by moving along a direction to an endpoint of the
    /// feasible interval can land a few ulps below zero.
    pub fn new_clamped(mut y: Vec<f64>, mut x: Vec<f64>) -> Result<Self> {
        for c in y.iter_mut().chain(x.iter_mut()) {
            if *c < 0.0 && *c >= -1e-12 {
                *c = 0.0;
            }
        }
        Self::new(y, x)
    }

    pub fn zeros(m: usize, n: usize) -> Result<Self> {
        Self::new(vec![0.0; m], vec![0.0; n])
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn m(&self) -> usize {
        self.y.len()
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn is_zero(&self) -> bool {
        self.y.iter().chain(&self.x).all(|c| *c == 0.0)
    }

    /// `(y + beta * g_y, x - beta * g_x)`, clamped as in [`Bundle::new_clamped`].
    pub fn shifted(&self, dir: &Direction, beta: f64) -> Result<Self> {
        check_len("shifted (outputs)", self.m(), dir.m())?;
        check_len("shifted (inputs)", self.n(), dir.n())?;
        let y = self.y.iter().zip(dir.gy()).map(|(y, g)| y + beta * g).collect();
        let x = self.x.iter().zip(dir.gx()).map(|(x, g)| x - beta * g).collect();
        Self::new_clamped(y, x)
    }
}

/// A nonnegative, nonzero direction `(g_y, g_x)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Direction {
    gy: Vec<f64>,
    gx: Vec<f64>,
}

impl Direction {
    pub fn new(gy: Vec<f64>, gx: Vec<f64>) -> Result<Self> {
        check_nonnegative("g_y", &gy)?;
        check_nonnegative("g_x", &gx)?;
        if gy.iter().chain(&gx).all(|c| *c == 0.0) {
            return Err(Error::InvalidInput("direction (g_y, g_x) must be nonzero".into()));
        }
        Ok(Self { gy, gx })
    }

    /// The output axis direction `(e_i, 0)`.
    pub fn output_axis(i: usize, m: usize, n: usize) -> Result<Self> {
        if i >= m {
            return Err(Error::IndexOutOfRange { index: i, len: m });
        }
        let mut gy = vec![0.0; m];
        gy[i] = 1.0;
        Self::new(gy, vec![0.0; n])
    }

    pub fn gy(&self) -> &[f64] {
        &self.gy
    }

    pub fn gx(&self) -> &[f64] {
        &self.gx
    }

    pub fn m(&self) -> usize {
        self.gy.len()
    }

    pub fn n(&self) -> usize {
        self.gx.len()
    }

    pub fn scaled(&self, psi: f64) -> Result<Self> {
        if !(psi.is_finite() && psi > 0.0) {
            return Err(Error::InvalidInput(format!("scale factor {psi} must be positive")));
        }
        Self::new(
            self.gy.iter().map(|g| psi * g).collect(),
            self.gx.iter().map(|g| psi * g).collect(),
        )
    }
}

/// A real number or negative infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedValue {
    Finite(f64),
    NegInfinity,
}

impl ExtendedValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(v),
            Self::NegInfinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }

    /// Maps `NegInfinity` to `f64::NEG_INFINITY`.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::NEG_INFINITY)
    }

    pub fn from_f64(v: f64) -> Result<Self> {
        if v == f64::NEG_INFINITY {
            Ok(Self::NegInfinity)
        } else if v.is_finite() {
            Ok(Self::Finite(v))
        } else {
            Err(Error::InvalidInput(format!("{v} is neither finite nor -inf")))
        }
    }

    /// Adds a finite offset; `NegInfinity` absorbs it.
    pub fn offset(self, delta: f64) -> Self {
        match self {
            Self::Finite(v) => Self::Finite(v + delta),
            Self::NegInfinity => Self::NegInfinity,
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::NegInfinity => f.write_str("-inf"),
        }
    }
}

// JSON has no infinity literal, so -inf travels as the string "-inf".
impl Serialize for ExtendedValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(v) => s.serialize_f64(*v),
            Self::NegInfinity => s.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Self::Finite(v)),
            Raw::Str(s) if s == "-inf" => Ok(Self::NegInfinity),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a number or \"-inf\", got {s:?}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn relation_examples() {
        assert!(compare(&[1.0, 2.0], &[1.0, 2.0], Relation::Geqq).unwrap());
        assert!(!compare(&[1.0, 2.0], &[1.0, 2.0], Relation::Geq).unwrap());
        assert!(compare(&[2.0, 0.0], &[1.0, 0.0], Relation::StarGt).unwrap());
        assert!(!compare(&[2.0, 0.0], &[1.0, 0.0], Relation::Gt).unwrap());
    }

    #[test]
    fn length_mismatch_is_dimension_error() {
        let err = compare(&[1.0], &[1.0, 2.0], Relation::Gt).unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
    }

    #[test]
    fn star_gt_reflexive_only_at_zero() {
        assert!(compare(&[0.0, 0.0], &[0.0, 0.0], Relation::StarGt).unwrap());
        assert!(!compare(&[0.0, 1.0], &[0.0, 1.0], Relation::StarGt).unwrap());
    }

    #[test]
    fn bundle_and_direction_validation() {
        assert!(Bundle::new(vec![-1.0], vec![1.0]).is_err());
        assert!(Bundle::new(vec![], vec![1.0]).is_err());
        assert!(Bundle::new(vec![f64::NAN], vec![1.0]).is_err());
        assert!(Direction::new(vec![0.0, 0.0], vec![0.0]).is_err());
        assert!(Direction::new(vec![0.0, 0.0], vec![1.0]).is_ok());
        let b = Bundle::new_clamped(vec![-1e-15], vec![1.0]).unwrap();
        assert_eq!(b.y(), &[0.0]);
    }

    #[test]
    fn extended_value_json() {
        let v = serde_json::to_string(&ExtendedValue::NegInfinity).unwrap();
        assert_eq!(v, "\"-inf\"");
        let back: ExtendedValue = serde_json::from_str(&v).unwrap();
        assert_eq!(back, ExtendedValue::NegInfinity);
        let f: ExtendedValue = serde_json::from_str("0.5").unwrap();
        assert_eq!(f, ExtendedValue::Finite(0.5));
    }

    fn pair(len: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        // small integer lattice so equal components actually occur
        let comp = (0u8..4).prop_map(f64::from);
        (
            proptest::collection::vec(comp.clone(), len),
            proptest::collection::vec(comp, len),
        )
    }

    proptest! {
        #[test]
        fn relation_chain((u, v) in pair(3)) {
            prop_assume!(u != v);
            let gt = compare(&u, &v, Relation::Gt).unwrap();
            let star = compare(&u, &v, Relation::StarGt).unwrap();
            let geq = compare(&u, &v, Relation::Geq).unwrap();
            let geqq = compare(&u, &v, Relation::Geqq).unwrap();
            prop_assert!(!gt || star);
            prop_assert!(!star || geq);
            prop_assert!(!geq || geqq);
        }
    }
}
