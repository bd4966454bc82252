use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{bound_method, omega_ratio, unit_sim, BoundResult, Method};
use crate::error::{Error, Result};
use crate::lattice::{Boundary, Dimension, LatticeSpec, Model, ModelParams};
use crate::models::Accounting;
use crate::poly::Polynomial;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepVar {
    T,
    U,
    J,
    /// `U = value * t` at fixed `t`.
    UOverT,
    /// Number of sites.
    N,
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVar::T => "t",
            SweepVar::U => "U",
            SweepVar::J => "J",
            SweepVar::UOverT => "U/t",
            SweepVar::N => "N",
        })
    }
}

impl FromStr for SweepVar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t" => Ok(SweepVar::T),
            "u" | "U" => Ok(SweepVar::U),
            "j" | "J" => Ok(SweepVar::J),
            "u/t" | "U/t" | "u-over-t" => Ok(SweepVar::UOverT),
            "n" | "N" => Ok(SweepVar::N),
            other => Err(Error::InvalidGrid(format!("unknown sweep variable `{other}`"))),
        }
    }
}

/// What each sweep row reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMetric {
    /// `r epsilon / tau^2` of a bound.
    Bound(Method),
    /// `r_1-norm / r_commutator`.
    Omega,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub model: Model,
    /// Lattice; for `N` sweeps only its dimension and boundary are used.
    pub lattice: LatticeSpec,
    pub vary: SweepVar,
    pub values: Vec<f64>,
    pub fixed: ModelParams,
    /// When varying `t`, keep `U = u_over_t * t`.
    pub u_over_t: Option<f64>,
    /// Set `J = 4 t^2 / U` on every row.
    pub derive_j: bool,
    pub metric: SweepMetric,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub bound: f64,
}

pub fn grid_linear(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if !from.is_finite() || !to.is_finite() {
        return Err(Error::InvalidGrid("non-finite endpoint".into()));
    }
    match steps {
        0 => Err(Error::InvalidGrid("zero steps".into())),
        1 => Ok(vec![from]),
        _ => Ok((0..steps)
            .map(|k| from + (to - from) * k as f64 / (steps - 1) as f64)
            .collect()),
    }
}

pub fn grid_log(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if !(from > 0.0 && to > 0.0) {
        return Err(Error::InvalidGrid("log grid needs positive endpoints".into()));
    }
    Ok(grid_linear(from.ln(), to.ln(), steps)?
        .into_iter()
        .map(f64::exp)
        .collect())
}

/// Rectangle of `n` sites with the most square aspect ratio (`n_x >= n_y`).
pub fn near_square(n: usize, boundary: Boundary) -> Result<LatticeSpec> {
    if n == 0 {
        return Err(Error::InvalidLattice("zero sites".into()));
    }
    let ny = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).last().unwrap_or(1);
    LatticeSpec::rect(n / ny, ny, boundary)
}

fn row_params(spec: &SweepSpec, v: f64) -> Result<ModelParams> {
    let mut p = spec.fixed;
    match spec.vary {
        SweepVar::T => {
            p.t = v;
            if let Some(k) = spec.u_over_t {
                p.u = k * v;
            }
        }
        SweepVar::U => p.u = v,
        SweepVar::J => {
            if spec.derive_j {
                return Err(Error::InvalidGrid("J is derived, it cannot be swept".into()));
            }
            p.j = v;
        }
        SweepVar::UOverT => p.u = v * p.t,
        SweepVar::N => {}
    }
    if spec.derive_j {
        p = ModelParams::derived(p.t, p.u).map_err(|e| Error::InvalidGrid(e.to_string()))?;
    }
    p.validate()?;
    Ok(p)
}

fn row_lattice(spec: &SweepSpec, v: f64) -> Result<LatticeSpec> {
    if spec.vary != SweepVar::N {
        return Ok(spec.lattice);
    }
    if v < 1.0 || v.fract() != 0.0 {
        return Err(Error::InvalidGrid(format!("site count {v} is not a positive integer")));
    }
    let n = v as usize;
    match spec.lattice.dimension {
        Dimension::One => LatticeSpec::chain(n, spec.lattice.boundary),
        Dimension::Two => near_square(n, spec.lattice.boundary),
    }
}

fn bound_polynomial(model: Model, lattice: &LatticeSpec, method: Method) -> Result<Polynomial<Rational>> {
    Ok(bound_method(model, lattice, method, Accounting::Complete, unit_sim())?.polynomial)
}

/// One row per grid value.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if spec.values.is_empty() {
        return Err(Error::InvalidGrid("empty grid".into()));
    }
    if spec.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidGrid("non-finite grid value".into()));
    }
    let mut cached: Option<(LatticeSpec, Polynomial<Rational>)> = None;
    let mut rows = Vec::with_capacity(spec.values.len());
    for &v in &spec.values {
        let params = row_params(spec, v)?;
        let lattice = row_lattice(spec, v)?;
        let bound = match spec.metric {
            SweepMetric::Omega => omega_ratio(spec.model, &lattice, &params)?,
            SweepMetric::Bound(method) => {
                let poly = match &cached {
                    Some((l, p)) if *l == lattice => p.clone(),
                    _ => {
                        let p = bound_polynomial(spec.model, &lattice, method)?;
                        cached = Some((lattice, p.clone()));
                        p
                    }
                };
                BoundResult {
                    method,
                    model: Some(spec.model),
                    lattice: Some(lattice),
                    polynomial: poly,
                    sim: unit_sim(),
                }
                .value(&params)
            }
        };
        rows.push(SweepRow { value: v, bound });
    }
    Ok(rows)
}

/// One curve of a sweep table: a model on one kind of lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub model: Model,
    pub dimension: Dimension,
    pub boundary: Boundary,
}

impl CurveSpec {
    /// `hubbard-2d-obc` style column name.
    pub fn name(&self) -> String {
        format!("{}-{}-{}", self.model, self.dimension, self.boundary)
    }

    /// Lattice with `sites` sites: a chain, or the most square rectangle.
    pub fn lattice(&self, sites: usize) -> Result<LatticeSpec> {
        match self.dimension {
            Dimension::One => LatticeSpec::chain(sites, self.boundary),
            Dimension::Two => near_square(sites, self.boundary),
        }
    }
}

/// Several curves over one grid.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSweep {
    pub curves: Vec<CurveSpec>,
    /// Lattice size when not sweeping `N`.
    pub sites: usize,
    pub vary: SweepVar,
    pub values: Vec<f64>,
    pub fixed: ModelParams,
    pub u_over_t: Option<f64>,
    pub derive_j: bool,
    pub metric: SweepMetric,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub variable: String,
    pub values: Vec<f64>,
    pub curves: Vec<Curve>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Curve {
    pub name: String,
    pub values: Vec<f64>,
}

pub fn sweep_curves(s: &CurveSweep) -> Result<SweepTable> {
    if s.curves.is_empty() {
        return Err(Error::InvalidGrid("no curves".into()));
    }
    let curves = s
        .curves
        .par_iter()
        .map(|c| {
            let rows = sweep(&SweepSpec {
                model: c.model,
                lattice: c.lattice(s.sites)?,
                vary: s.vary,
                values: s.values.clone(),
                fixed: s.fixed,
                u_over_t: s.u_over_t,
                derive_j: s.derive_j,
                metric: s.metric,
            })?;
            Ok(Curve {
                name: c.name(),
                values: rows.into_iter().map(|r| r.bound).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        variable: s.vary.to_string(),
        values: s.values.clone(),
        curves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(vary: SweepVar, values: Vec<f64>) -> SweepSpec {
        SweepSpec {
            model: Model::Hubbard,
            lattice: LatticeSpec::square(6, Boundary::Open).unwrap(),
            vary,
            values,
            fixed: ModelParams::new(1.0, 1.0, 0.0),
            u_over_t: None,
            derive_j: false,
            metric: SweepMetric::Bound(Method::Closed),
        }
    }

    #[test]
    fn grids() {
        assert_eq!(grid_linear(0.0, 1.0, 3).unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(grid_linear(0.0, 1.0, 0).is_err());
        let g = grid_log(1.0, 100.0, 3).unwrap();
        assert!((g[1] - 10.0).abs() < 1e-9);
        assert!(grid_log(0.0, 1.0, 3).is_err());
    }

    #[test]
    fn near_square_shapes() {
        let l = near_square(12, Boundary::Open).unwrap();
        assert_eq!((l.n_x, l.n_y), (4, 3));
        let l = near_square(7, Boundary::Open).unwrap();
        assert_eq!((l.n_x, l.n_y), (7, 1));
    }

    #[test]
    fn quadratic_in_t() {
        let rows = sweep(&spec(SweepVar::T, vec![1.0, 2.0, 4.0])).unwrap();
        // 4t^2-type growth dominates: ratios approach 4 from below.
        assert!(rows[2].bound / rows[1].bound > rows[1].bound / rows[0].bound);
    }

    #[test]
    fn invalid_grids() {
        assert!(sweep(&spec(SweepVar::T, vec![])).is_err());
        assert!(sweep(&spec(SweepVar::N, vec![2.5])).is_err());
        let mut s = spec(SweepVar::J, vec![1.0]);
        s.derive_j = true;
        assert!(sweep(&s).is_err());
        let mut s = spec(SweepVar::U, vec![0.0]);
        s.derive_j = true;
        assert!(matches!(sweep(&s), Err(Error::InvalidGrid(_))));
    }
}
