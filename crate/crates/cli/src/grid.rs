use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Upper bound on generated grid sizes.
pub const MAX_POINTS: usize = 10_000_000;

/// Inclusive arithmetic grid `start:stop:step`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self, String> {
        let g = Self { start, stop, step };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), String> {
        let Self { start, stop, step } = *self;
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(format!("grid {self} has non-finite bounds"));
        }
        if start >= stop {
            return Err(format!("grid {self} needs start < stop"));
        }
        if step <= 0.0 {
            return Err(format!("grid {self} needs a positive step"));
        }
        if (stop - start) / step >= MAX_POINTS as f64 {
            return Err(format!("grid {self} exceeds {MAX_POINTS} points"));
        }
        Ok(())
    }

    /// `start + k·step` for every `k` with the point not beyond `stop`
    /// (up to a relative slack of `1e-9` steps).
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(format!("expected start:stop:step, got {s:?}"));
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
        Self::new(num(start)?, num(stop)?, num(step)?)
    }
}
