use serde::Serialize;
use serde_json::Value;

/// Outcome of a sampled property check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub passed: bool,
    pub seed: u64,
    /// Samples drawn.
    pub samples: usize,
    /// Samples on which the property was actually evaluated (the rest were
    /// outside the property's hypotheses, e.g. a -inf value for D6).
    pub checked: usize,
    pub tolerance: f64,
    pub worst_violation: f64,
    /// Instance attaining `worst_violation`, if any violation was positive.
    pub witness: Option<Value>,
}

/// Running max of violations with the instance that produced it.
pub(crate) struct Worst {
    pub violation: f64,
    pub witness: Option<Value>,
    pub checked: usize,
}

impl Worst {
    pub fn new() -> Self {
        Self {
            violation: 0.0,
            witness: None,
            checked: 0,
        }
    }

    pub fn record(&mut self, violation: f64, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        // NaN counts as an infinite violation
        let v = if violation.is_nan() { f64::INFINITY } else { violation };
        if v > self.violation {
            self.violation = v;
            self.witness = Some(witness());
        }
    }

    pub fn finish(self, property: &str, config: crate::SampleConfig, tolerance: f64) -> PropertyReport {
        PropertyReport {
            property: property.to_string(),
            passed: self.violation <= tolerance,
            seed: config.seed,
            samples: config.samples,
            checked: self.checked,
            tolerance,
            worst_violation: self.violation,
            witness: self.witness,
        }
    }
}
