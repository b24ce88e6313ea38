use serde::Serialize;

/// A named residual from a verification routine.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Residual {
    pub name: String,
    pub value: f64,
}

/// Residuals are reported, never thresholded here; callers pick tolerances.
#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct ResidualReport {
    pub entries: Vec<Residual>,
}

impl ResidualReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, value: f64) {
        self.entries.push(Residual {
            name: name.into(),
            value,
        });
    }

    /// Keeps the worst value seen under `name`.
    pub fn record_max(&mut self, name: &str, value: f64) {
        match self.entries.iter_mut().find(|r| r.name == name) {
            Some(r) => {
                if value > r.value || value.is_nan() {
                    r.value = value;
                }
            }
            None => self.push(name, value),
        }
    }

    pub fn merge(&mut self, other: &ResidualReport) {
        for r in &other.entries {
            self.record_max(&r.name, r.value);
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|r| r.name == name).map(|r| r.value)
    }

    /// Worst residual; NaN propagates so that it can never pass a threshold.
    pub fn max(&self) -> f64 {
        self.entries.iter().map(|r| r.value).fold(0.0, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
    }

    pub fn within(&self, tol: f64) -> bool {
        let m = self.max();
        !m.is_nan() && m <= tol
    }
}
