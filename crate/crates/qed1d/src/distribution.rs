//! Delta-plus-regular distributions: alpha * delta(x) plus a regular part
//! sampled on a grid. Every density in the model has this structure.

use crate::matrix::Mat2;
use crate::quadrature::{composite_irregular, IntegrandValue};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DistributionError {
    #[error("grid must contain at least one point")]
    EmptyGrid,
    #[error("grid must be strictly increasing (violated at index {0})")]
    NotIncreasing(usize),
    #[error("grid and value lengths differ ({grid} vs {values})")]
    LengthMismatch { grid: usize, values: usize },
    #[error("non-finite sample at index {0}")]
    NonFiniteSample(usize),
    #[error("grid must exclude x = 0 for this density (index {0})")]
    ContainsOrigin(usize),
}

/// A distribution `delta_coeff * delta(x) + regular(x)`, with the regular
/// part sampled on a strictly increasing grid.
///
/// For matrix-valued densities the delta term is `delta_coeff * delta(x) * I2`,
/// i.e. `delta_coeff` is the coefficient per diagonal entry.
#[derive(Debug, Clone)]
pub struct DeltaPlusRegular<T: IntegrandValue> {
    delta_coeff: f64,
    grid: Vec<f64>,
    values: Vec<T>,
}

impl<T: IntegrandValue> DeltaPlusRegular<T> {
    pub fn new(delta_coeff: f64, grid: Vec<f64>, values: Vec<T>) -> Result<Self, DistributionError> {
        if grid.is_empty() {
            return Err(DistributionError::EmptyGrid);
        }
        if grid.len() != values.len() {
            return Err(DistributionError::LengthMismatch {
                grid: grid.len(),
                values: values.len(),
            });
        }
        for i in 1..grid.len() {
            if !(grid[i] > grid[i - 1]) {
                return Err(DistributionError::NotIncreasing(i));
            }
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite_value() {
                return Err(DistributionError::NonFiniteSample(i));
            }
        }
        Ok(Self {
            delta_coeff,
            grid,
            values,
        })
    }

    pub fn delta_coeff(&self) -> f64 {
        self.delta_coeff
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Quadrature of the regular part over the sampled grid.
    pub fn regular_integral(&self) -> T {
        composite_irregular(&self.grid, &self.values)
    }
}

impl DeltaPlusRegular<f64> {
    /// delta coefficient plus the quadrature of the regular part.
    pub fn integral(&self) -> f64 {
        self.delta_coeff + self.regular_integral()
    }
}

impl DeltaPlusRegular<Mat2> {
    /// Scalar (trace) distribution: the per-diagonal delta coefficient
    /// doubles and the samples collapse to their traces.
    pub fn trace(&self) -> DeltaPlusRegular<f64> {
        DeltaPlusRegular {
            delta_coeff: 2.0 * self.delta_coeff,
            grid: self.grid.clone(),
            values: self.values.iter().map(|m| m.trace().re).collect(),
        }
    }

    /// Trace integral: 2 * delta_coeff + quadrature of the regular traces.
    pub fn trace_integral(&self) -> f64 {
        self.trace().integral()
    }
}
