//! First-order Trotter step-count bounds.
//!
//! Every bound is a polynomial in `t`, `U` and `J` equal to `r epsilon / tau^2`;
//! [`BoundResult::numeric_r`] multiplies in `tau^2 / epsilon`.

mod atable;
mod brute;
mod closed;
mod expanded;
mod one_norm;
mod sweep;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Boundary, LatticeSpec, Model, ModelParams, SimParams};
use crate::models::Accounting;
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::Rational;

pub use atable::{compute_a, AEntry, ATable, Offset};
pub use brute::{bound_brute, bound_brute_for, commutator_tally, CommutatorTally};
pub use closed::{bound_closed, closed_polynomial};
pub use expanded::{bound_expanded, bound_nearest, pair_accounting};
pub use one_norm::{bound_one_norm, omega_ratio, omega_ratio_generic, one_norm_generic, one_norm_polynomial};
pub use sweep::{
    grid_linear, grid_log, near_square, sweep, sweep_curves, Curve, CurveSpec, CurveSweep, SweepMetric,
    SweepRow, SweepSpec, SweepTable, SweepVar,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Brute,
    Expanded,
    Nearest,
    Closed,
    OneNorm,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Brute,
        Method::Expanded,
        Method::Nearest,
        Method::Closed,
        Method::OneNorm,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Expanded => "expanded",
            Method::Nearest => "nearest",
            Method::Closed => "closed",
            Method::OneNorm => "one-norm",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s || (s == "one_norm" && *m == Method::OneNorm))
            .ok_or_else(|| Error::InvalidParams(format!("unknown method `{s}`")))
    }
}

/// A bound as a polynomial (`r epsilon / tau^2`) with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundResult<Q = Rational> {
    pub method: Method,
    pub model: Option<Model>,
    pub lattice: Option<LatticeSpec>,
    pub polynomial: Polynomial<Q>,
    pub sim: SimParams,
}

impl<Q: Scalar> BoundResult<Q> {
    /// `r epsilon / tau^2` at `params`. Parameters enter through their absolute values.
    pub fn value(&self, params: &ModelParams) -> f64 {
        let abs = ModelParams {
            t: params.t.abs(),
            u: params.u.abs(),
            j: params.j.abs(),
            j_derived: params.j_derived,
        };
        self.polynomial.evaluate(&abs)
    }

    /// Step count `r`.
    pub fn numeric_r(&self, params: &ModelParams) -> f64 {
        self.sim.prefactor() * self.value(params)
    }
}

/// Default simulation parameters, `tau = epsilon = 1`, for callers that only
/// need `r epsilon / tau^2`.
pub fn unit_sim() -> SimParams {
    SimParams {
        tau: 1.0,
        epsilon: 1.0,
    }
}

/// One bound of `model` on `lattice`. `accounting` applies to the brute-force
/// sum on open lattices; periodic lattices always use their literal terms.
pub fn bound_method(
    model: Model,
    lattice: &LatticeSpec,
    method: Method,
    accounting: Accounting,
    sim: SimParams,
) -> Result<BoundResult> {
    let mut r = match method {
        Method::Brute => {
            let accounting = match lattice.boundary {
                Boundary::Open => accounting,
                Boundary::Periodic => Accounting::Literal,
            };
            bound_brute_for(model, lattice, accounting, sim)?
        }
        Method::Expanded => {
            bound_expanded(&ATable::for_lattice(model, lattice)?, lattice, sim)?
        }
        Method::Nearest => bound_nearest(&ATable::nearest(model, lattice.dimension)?, lattice, sim)?,
        Method::Closed => bound_closed(model, lattice, sim)?,
        Method::OneNorm => bound_one_norm(model, lattice, sim)?,
    };
    r.model = Some(model);
    r.lattice = Some(*lattice);
    Ok(r)
}

/// Every applicable method, and a description of any disagreement between
/// the commutator bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct AllBounds {
    pub results: Vec<BoundResult>,
    pub disagreement: Option<String>,
}

pub fn bound_all(
    model: Model,
    lattice: &LatticeSpec,
    accounting: Accounting,
    sim: SimParams,
) -> Result<AllBounds> {
    let mut results = Vec::new();
    for method in Method::ALL {
        match bound_method(model, lattice, method, accounting, sim) {
            Ok(r) => results.push(r),
            Err(Error::Unsupported(_)) if method == Method::OneNorm => {}
            Err(e) => return Err(e),
        }
    }
    let commutator: Vec<&BoundResult> = results.iter().filter(|r| r.method != Method::OneNorm).collect();
    let disagreement = commutator
        .windows(2)
        .find(|w| w[0].polynomial != w[1].polynomial)
        .map(|w| {
            format!(
                "{} ({}) differs from {} ({})",
                w[1].method, w[1].polynomial, w[0].method, w[0].polynomial
            )
        });
    Ok(AllBounds {
        results,
        disagreement,
    })
}
