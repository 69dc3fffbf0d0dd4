//! Algorithm parameters.

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// Parameters of the isomorphism test and its subroutines.
///
/// `a` is the average-degree constant: a graph excluding `K_h` as a minor has
/// average degree at most `a * h * log(h)`. Every "minor found" conclusion that
/// relies on a degree bound is only as good as this constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub h: usize,
    pub a: f64,
    pub log_base: f64,
    /// Closure threshold; `None` means `t_for_h(h)`.
    pub t: Option<usize>,
    /// Largest coset `enumerate_small` will list.
    pub enumerate_cap: usize,
    /// Largest group order `composition_factors_small` accepts.
    pub composition_cap: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { h: 5, a: 4.0, log_base: 2.0, t: None, enumerate_cap: 1_000_000, composition_cap: 10_000, seed: 0 }
    }
}

impl Config {
    pub fn with_h(h: usize) -> Self {
        Config { h, ..Config::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.h < 2 {
            return input(format!("h must be at least 2, got {}", self.h));
        }
        if self.t == Some(0) {
            return input("t must be at least 1");
        }
        if self.a.is_nan() || self.a <= 0.0 || self.log_base.is_nan() || self.log_base <= 1.0 {
            return input("a must be positive and log_base greater than 1");
        }
        Ok(())
    }

    /// `log(h)` in the configured base.
    pub fn log_h(&self) -> f64 {
        (self.h as f64).ln() / self.log_base.ln()
    }

    /// The average-degree bound `a * h * log(h)`.
    pub fn degree_bound(&self) -> f64 {
        self.a * self.h as f64 * self.log_h()
    }

    /// The closure threshold in effect.
    pub fn t(&self) -> usize {
        self.t.unwrap_or_else(|| t_for_h_with(self.h, self.a, self.log_base))
    }
}

/// `ceil((a * h * log2 h)^3)` with the default constant `a = 4`.
pub fn t_for_h(h: usize) -> usize {
    t_for_h_with(h, 4.0, 2.0)
}

/// `ceil((a * h * log_base h)^3)`, never below `h`.
pub fn t_for_h_with(h: usize, a: f64, log_base: f64) -> usize {
    let l = (h as f64).ln() / log_base.ln();
    let t = (a * h as f64 * l).powi(3).ceil();
    (t as usize).max(h).max(1)
}
