//! Lattice geometry, model selection and parameter sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Hubbard,
    TJ,
}

impl Model {
    pub const ALL: [Model; 2] = [Model::Hubbard, Model::TJ];

    pub fn name(&self) -> &'static str {
        match self {
            Model::Hubbard => "hubbard",
            Model::TJ => "t-j",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hubbard" => Ok(Model::Hubbard),
            "tj" | "t-j" | "t_j" => Ok(Model::TJ),
            other => Err(Error::InvalidParams(format!("unknown model `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    Open,
    Periodic,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Open => "obc",
            Boundary::Periodic => "pbc",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dimension {
    #[serde(rename = "1d")]
    One,
    #[serde(rename = "2d")]
    Two,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dimension::One => "1d",
            Dimension::Two => "2d",
        })
    }
}

impl FromStr for Boundary {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "obc" | "open" => Ok(Boundary::Open),
            "pbc" | "periodic" => Ok(Boundary::Periodic),
            other => Err(Error::InvalidParams(format!("unknown boundary `{other}`"))),
        }
    }
}

impl FromStr for Dimension {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "1d" => Ok(Dimension::One),
            "2" | "2d" => Ok(Dimension::Two),
            other => Err(Error::InvalidParams(format!("unknown dimension `{other}`"))),
        }
    }
}

/// Rectangular lattice of `n_x` columns and `n_y` rows. A chain has `n_y == 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub n_x: usize,
    pub n_y: usize,
    pub dimension: Dimension,
    pub boundary: Boundary,
}

impl LatticeSpec {
    pub fn new(n_x: usize, n_y: usize, dimension: Dimension, boundary: Boundary) -> Result<Self> {
        if n_x == 0 || n_y == 0 {
            return Err(Error::InvalidLattice(format!("{n_x}x{n_y} has no sites")));
        }
        if dimension == Dimension::One && n_y != 1 {
            return Err(Error::InvalidLattice(format!(
                "a chain has a single row, got n_y = {n_y}"
            )));
        }
        Ok(LatticeSpec {
            n_x,
            n_y,
            dimension,
            boundary,
        })
    }

    pub fn square(n: usize, boundary: Boundary) -> Result<Self> {
        Self::new(n, n, Dimension::Two, boundary)
    }

    pub fn rect(n_x: usize, n_y: usize, boundary: Boundary) -> Result<Self> {
        Self::new(n_x, n_y, Dimension::Two, boundary)
    }

    pub fn chain(n: usize, boundary: Boundary) -> Result<Self> {
        Self::new(n, 1, Dimension::One, boundary)
    }

    pub fn n_sites(&self) -> usize {
        self.n_x * self.n_y
    }

    /// Two spin-orbitals per site.
    pub fn n_qubits(&self) -> usize {
        2 * self.n_sites()
    }

    /// Columns of the spinless register (`2 n_x`).
    pub fn spinless_cols(&self) -> usize {
        2 * self.n_x
    }

    pub fn site_index(&self, row: usize, col: usize) -> usize {
        row * self.n_x + col
    }

    pub fn sites(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_y).flat_map(move |r| (0..self.n_x).map(move |c| (r, c)))
    }

    /// Qubit holding spin `down == false` (up) or `true` (down) at `(row, col)`.
    pub fn qubit(&self, row: usize, col: usize, down: bool) -> usize {
        row * self.spinless_cols() + 2 * col + usize::from(down)
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dimension {
            Dimension::One => write!(f, "1d-{} N={}", self.boundary, self.n_x),
            Dimension::Two => write!(f, "2d-{} {}x{}", self.boundary, self.n_x, self.n_y),
        }
    }
}

/// Numeric model parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams<F = f64> {
    pub t: F,
    pub u: F,
    pub j: F,
    /// When set, `j` was fixed to `4 t^2 / u`.
    pub j_derived: bool,
}

impl<F: Real> ModelParams<F> {
    pub fn new(t: F, u: F, j: F) -> Self {
        ModelParams {
            t,
            u,
            j,
            j_derived: false,
        }
    }

    /// Parameters with `J = 4 t^2 / U`.
    pub fn derived(t: F, u: F) -> Result<Self> {
        if u == F::zero() {
            return Err(Error::InvalidParams("J = 4t^2/U needs U != 0".into()));
        }
        let four = F::from_f64(4.0).expect("4");
        Ok(ModelParams {
            t,
            u,
            j: four * t * t / u,
            j_derived: true,
        })
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("t", self.t), ("U", self.u), ("J", self.j)] {
            if !num_traits::Float::is_finite(v) {
                return Err(Error::InvalidParams(format!("{name} is not finite")));
            }
        }
        Ok(())
    }
}

/// Total evolution time and target error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimParams<F = f64> {
    pub tau: F,
    pub epsilon: F,
}

impl<F: Real> SimParams<F> {
    pub fn new(tau: F, epsilon: F) -> Result<Self> {
        if !(epsilon > F::zero()) {
            return Err(Error::InvalidParams("epsilon must be positive".into()));
        }
        if !(tau > F::zero()) {
            return Err(Error::InvalidParams("tau must be positive".into()));
        }
        Ok(SimParams { tau, epsilon })
    }

    /// `tau^2 / epsilon`.
    pub fn prefactor(&self) -> F {
        self.tau * self.tau / self.epsilon
    }
}
