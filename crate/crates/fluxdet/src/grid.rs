//! Uniform spatial grid for the sine-basis discretization.
//!
//! The eigensolver works in a Dirichlet box `[x_min, x_max]`: wavefunctions
//! vanish at both walls. The `n_points` grid nodes are the *interior* points
//! `x_i = x_min + (i+1)·h` with spacing `h = (x_max − x_min)/(n_points + 1)`
//! — the walls themselves carry no unknowns.
//!
//! With that layout the discrete quadrature `h·Σᵢ f(xᵢ)` is the trapezoidal
//! rule for functions that vanish at the walls, which keeps grid-sampled
//! eigenfunctions orthonormal to machine precision whenever the eigenvector
//! coefficients are orthonormal.

use crate::error::{FluxdetError, Result};

/// Minimum number of grid points accepted; coarser grids cannot resolve even
/// toy double wells.
pub const MIN_POINTS: usize = 64;

/// A uniform Dirichlet grid on `[x_min, x_max]` with `n_points` interior
/// nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid {
    /// Create a grid, validating `x_min < x_max` and `n_points ≥ 64`.
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(FluxdetError::InvalidParameter(format!(
                "grid bounds must satisfy x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < MIN_POINTS {
            return Err(FluxdetError::InvalidParameter(format!(
                "grid needs at least {MIN_POINTS} points, got {n_points}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    /// Default production grid: wide enough that all bound states of the
    /// devices studied here decay far below the boundary-check threshold,
    /// dense enough to converge tunneling splittings of order 10⁻⁸ K.
    pub fn default_spectral() -> Self {
        Self {
            x_min: -0.3,
            x_max: 1.3,
            n_points: 2048,
        }
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Box length `x_max − x_min`.
    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    /// Node spacing `h = L/(n_points + 1)`.
    pub fn spacing(&self) -> f64 {
        self.length() / (self.n_points as f64 + 1.0)
    }

    /// Interior node positions `x_i = x_min + (i+1)·h`, `i = 0..n_points`.
    pub fn points(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.n_points)
            .map(|i| self.x_min + (i as f64 + 1.0) * h)
            .collect()
    }

    /// Same box with the point count scaled by an integer factor (used by
    /// refinement studies and the convergence certificate).
    pub fn with_points(&self, n_points: usize) -> Result<Self> {
        Self::new(self.x_min, self.x_max, n_points)
    }

    /// Same point count in a wider box (used by automatic expansion when a
    /// wavefunction fails the boundary-decay check). The point count grows
    /// proportionally so the spacing never coarsens.
    pub fn expanded(&self, pad: f64) -> Result<Self> {
        let old_len = self.length();
        let new_len = old_len + 2.0 * pad;
        let n = ((self.n_points as f64) * new_len / old_len).ceil() as usize;
        Self::new(self.x_min - pad, self.x_max + pad, n)
    }
}
