//! Scalar numerics used by the secrecy formulas.

mod bessel;
mod marcum;
mod quadrature;
mod roots;

pub use bessel::{bessel_i0, bessel_i0_scaled};
pub use marcum::{marcum_q1, marcum_q1_complement};
pub use quadrature::integrate_semiinfinite;
pub use roots::{bisect_monotone, golden_section_max};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Convergence controls shared by the iterative routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    rel: f64,
    abs: f64,
    max_iter: usize,
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64, max_iter: usize) -> Result<Self> {
        let valid = |v: f64| v.is_finite() && v >= 0.0;
        if !valid(rel) || !valid(abs) {
            return Err(Error::domain(format!(
                "tolerances must be finite and non-negative (rel {rel}, abs {abs})"
            )));
        }
        if rel == 0.0 && abs == 0.0 {
            return Err(Error::domain("at least one of rel/abs must be positive"));
        }
        if max_iter == 0 {
            return Err(Error::domain("max_iter must be at least 1"));
        }
        Ok(Self { rel, abs, max_iter })
    }

    pub fn rel(&self) -> f64 {
        self.rel
    }

    pub fn abs(&self) -> f64 {
        self.abs
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: 1e-10,
            abs: 1e-12,
            max_iter: 200,
        }
    }
}
