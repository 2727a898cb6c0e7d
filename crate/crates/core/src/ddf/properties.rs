//! Sampled checks of the DTDF properties D1-D6 on quadratic-separable technologies.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{gamma_interval, DdfEvaluator};
use crate::error::{Error, Result};
use crate::order::{Bundle, Direction, ExtendedValue};
use crate::report::{PropertyReport, Worst};
use crate::sampling::{SampleConfig, Sampler, BUNDLE_RANGE};
use crate::technology::TechnologyKind;

/// Direction scale factors used for the homogeneity check.
pub const D2_SCALES: [f64; 3] = [0.5, 2.0, 10.0];

/// `F` values this close to zero are skipped by the sign-equivalence check.
pub const D4_GUARD_BAND: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DProperty {
    /// Translation: `D(y + a g_y, x - a g_x) = D(y, x) - a`.
    D1,
    /// Homogeneity of degree -1 in the direction.
    D2,
    /// `D(0, 0) = 0`.
    D3,
    /// `D >= 0` iff `F <= 0`.
    D4,
    /// Nondecreasing in inputs, nonincreasing in outputs.
    D5,
    /// Concavity in `(y, x)`.
    D6,
}

impl DProperty {
    pub const ALL: [DProperty; 6] = [Self::D1, Self::D2, Self::D3, Self::D4, Self::D5, Self::D6];

    pub fn tolerance(self) -> f64 {
        match self {
            Self::D1 => 1e-8,
            Self::D2 => 1e-9,
            Self::D3 | Self::D4 => 0.0,
            Self::D5 | Self::D6 => 1e-10,
        }
    }
}

impl fmt::Display for DProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for DProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown DTDF property {s:?}")))
    }
}

/// Absolute gap between two extended values; a finite/-inf mismatch is infinite.
fn gap(a: ExtendedValue, b: ExtendedValue) -> f64 {
    match (a, b) {
        (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => (a - b).abs(),
        (ExtendedValue::NegInfinity, ExtendedValue::NegInfinity) => 0.0,
        _ => f64::INFINITY,
    }
}

/// How far `small >= large` is from holding, with `-inf` below every real.
fn shortfall(small: ExtendedValue, large: ExtendedValue) -> f64 {
    match (small, large) {
        (_, ExtendedValue::NegInfinity) => 0.0,
        (ExtendedValue::NegInfinity, ExtendedValue::Finite(_)) => f64::INFINITY,
        (ExtendedValue::Finite(s), ExtendedValue::Finite(l)) => (l - s).max(0.0),
    }
}

fn midpoint(u: &[f64], v: &[f64]) -> Vec<f64> {
    u.iter().zip(v).map(|(a, b)| 0.5 * (a + b)).collect()
}

/// Samples `config.samples` instances from `[0, 3]^(m+n) x [0, 1]^(m+n)` and
/// checks `prop`. The technology must be quadratic-separable with valid parameters.
pub fn check_property(tech: &TechnologyKind, prop: DProperty, config: SampleConfig) -> Result<PropertyReport> {
    if tech.quadratic().is_none() {
        return Err(Error::Precondition(format!(
            "D-properties are only guaranteed for quadratic_separable technologies, not {}",
            tech.name()
        )));
    }
    let ev = DdfEvaluator::new(tech)?;
    let (m, n) = tech.dims();
    let mut s = Sampler::new(config.seed);
    let mut worst = Worst::new();
    let value = |b: &Bundle, d: &Direction| ev.value(b, d);

    match prop {
        DProperty::D1 => {
            for _ in 0..config.samples {
                let z = s.bundle(m, n);
                let dir = s.direction(m, n);
                let gamma = gamma_interval(&z, &dir)?;
                let lo = gamma.lower.finite().unwrap_or(-BUNDLE_RANGE);
                let hi = gamma.upper.unwrap_or(BUNDLE_RANGE);
                let alpha = s.uniform(lo, hi);
                let shifted = z.shifted(&dir, alpha)?;
                let lhs = value(&shifted, &dir)?;
                let rhs = value(&z, &dir)?.offset(-alpha);
                worst.record(
                    gap(lhs, rhs),
                    || json!({"bundle": z, "direction": dir, "alpha": alpha, "shifted": lhs, "expected": rhs}),
                );
            }
        }
        DProperty::D2 => {
            for _ in 0..config.samples {
                let z = s.bundle(m, n);
                let dir = s.direction(m, n);
                let base = value(&z, &dir)?;
                for psi in D2_SCALES {
                    let scaled = value(&z, &dir.scaled(psi)?)?;
                    let rel = match (scaled, base) {
                        (ExtendedValue::Finite(v), ExtendedValue::Finite(b)) => (psi * v - b).abs() / b.abs().max(1.0),
                        _ => gap(scaled, base),
                    };
                    worst.record(
                        rel,
                        || json!({"bundle": z, "direction": dir, "psi": psi, "scaled": scaled, "base": base}),
                    );
                }
            }
        }
        DProperty::D3 => {
            let zero = Bundle::zeros(m, n)?;
            for _ in 0..config.samples {
                let dir = s.mixed_direction(m, n);
                let v = value(&zero, &dir)?;
                worst.record(
                    gap(v, ExtendedValue::Finite(0.0)),
                    || json!({"direction": dir, "value": v}),
                );
            }
        }
        DProperty::D4 => {
            for _ in 0..config.samples {
                let z = s.bundle(m, n);
                let dir = s.mixed_direction(m, n);
                let f = tech.eval_f(&z)?;
                if f.abs() <= D4_GUARD_BAND {
                    continue;
                }
                let v = value(&z, &dir)?;
                let nonneg = v.finite().is_some_and(|v| v >= 0.0);
                let mismatch = if nonneg == (f <= 0.0) { 0.0 } else { 1.0 };
                worst.record(mismatch, || json!({"bundle": z, "direction": dir, "F": f, "value": v}));
            }
        }
        DProperty::D5 => {
            for _ in 0..config.samples {
                let z = s.bundle(m, n);
                let dir = s.direction(m, n);
                let base = value(&z, &dir)?;

                let x_more: Vec<f64> = z.x().iter().map(|c| c + s.uniform(0.0, 1.0)).collect();
                let more_inputs = value(&Bundle::new(z.y().to_vec(), x_more.clone())?, &dir)?;
                worst.record(shortfall(more_inputs, base), || {
                    json!({"bundle": z, "direction": dir, "x_more": x_more, "value": base, "value_more_inputs": more_inputs})
                });

                let y_less: Vec<f64> = z.y().iter().map(|c| c * s.uniform(0.0, 1.0)).collect();
                let fewer_outputs = value(&Bundle::new(y_less.clone(), z.x().to_vec())?, &dir)?;
                if fewer_outputs.is_finite() {
                    worst.record(shortfall(fewer_outputs, base), || {
                        json!({"bundle": z, "direction": dir, "y_less": y_less, "value": base, "value_fewer_outputs": fewer_outputs})
                    });
                }
            }
        }
        DProperty::D6 => {
            for _ in 0..config.samples {
                let z1 = s.bundle(m, n);
                let z2 = s.bundle(m, n);
                let dir = s.direction(m, n);
                let zm = Bundle::new(midpoint(z1.y(), z2.y()), midpoint(z1.x(), z2.x()))?;
                let (v1, v2, vm) = (value(&z1, &dir)?, value(&z2, &dir)?, value(&zm, &dir)?);
                if let (Some(a), Some(b), Some(c)) = (v1.finite(), v2.finite(), vm.finite()) {
                    let chord = 0.5 * a + 0.5 * b;
                    worst.record(
                        chord - c,
                        || json!({"z1": z1, "z2": z2, "direction": dir, "chord": chord, "midpoint": c}),
                    );
                }
            }
        }
    }
    Ok(worst.finish(&prop.to_string(), config, prop.tolerance()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::technology::QuadraticSeparableParams;

    #[test]
    fn figure4_passes_every_property() {
        let t = TechnologyKind::QuadraticSeparable(QuadraticSeparableParams::figure4());
        for prop in DProperty::ALL {
            let r = check_property(&t, prop, SampleConfig::new(100, 11)).unwrap();
            assert!(r.passed, "{prop}: {r:?}");
            assert!(r.checked > 0, "{prop} never evaluated");
        }
    }

    #[test]
    fn polyhedral_rejected() {
        let err = check_property(&TechnologyKind::PolyhedralA, DProperty::D1, SampleConfig::new(5, 0)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn parse_names() {
        assert_eq!("d4".parse::<DProperty>().unwrap(), DProperty::D4);
        assert!("D7".parse::<DProperty>().is_err());
    }
}
