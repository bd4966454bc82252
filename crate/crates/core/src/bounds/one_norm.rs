use super::{closed_polynomial, unit_sim, BoundResult, Method};
use crate::error::{Error, Result};
use crate::lattice::{Dimension, LatticeSpec, Model, ModelParams, SimParams};
use crate::models::{build_complete, SiteTermGroup};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

/// `N^2 (sum_delta ||H^delta||)^2` with the per-site norm sums
/// `4t + 3U/4` (Hubbard) and `2t + 15J/8` (t-J).
pub fn one_norm_polynomial<Q: Scalar>(model: Model, lattice: &LatticeSpec) -> Result<Polynomial<Q>> {
    if lattice.dimension != Dimension::Two {
        return Err(Error::Unsupported(format!(
            "closed 1-norm bound for a {} lattice",
            lattice.dimension
        )));
    }
    let per_site: Polynomial<Q> = match model {
        Model::Hubbard => Polynomial::from_terms([
            (Monomial::T, Q::ratio(4, 1)),
            (Monomial::U, Q::ratio(3, 4)),
        ]),
        Model::TJ => Polynomial::from_terms([
            (Monomial::T, Q::ratio(2, 1)),
            (Monomial::J, Q::ratio(15, 8)),
        ]),
    };
    let n = lattice.n_sites() as u64;
    Ok((&per_site * &per_site).scale(&Q::from_count(n * n)))
}

pub fn bound_one_norm<Q: Scalar>(
    model: Model,
    lattice: &LatticeSpec,
    sim: SimParams,
) -> Result<BoundResult<Q>> {
    Ok(BoundResult {
        method: Method::OneNorm,
        model: Some(model),
        lattice: Some(*lattice),
        polynomial: one_norm_polynomial(model, lattice)?,
        sim,
    })
}

/// `(sum |c|)^2` over the non-identity terms of `groups`.
pub fn one_norm_generic<Q: Scalar>(groups: &[SiteTermGroup<Q>]) -> Polynomial<Q> {
    let sum = groups
        .iter()
        .flat_map(|g| g.terms.iter())
        .filter(|t| !t.pauli.is_identity())
        .fold(Polynomial::zero(), |acc, t| &acc + &t.coefficient.abs());
    &sum * &sum
}

fn ratio(one_norm: f64, commutator: f64) -> Result<f64> {
    if commutator == 0.0 {
        return Err(Error::CommutingHamiltonian);
    }
    Ok(one_norm / commutator)
}

/// `r_1-norm / r_commutator` from the closed forms.
pub fn omega_ratio(model: Model, lattice: &LatticeSpec, params: &ModelParams) -> Result<f64> {
    let sim = unit_sim();
    let one: BoundResult = bound_one_norm(model, lattice, sim)?;
    let com: BoundResult = BoundResult {
        method: Method::Closed,
        model: Some(model),
        lattice: Some(*lattice),
        polynomial: closed_polynomial(model, lattice)?,
        sim,
    };
    ratio(one.value(params), com.value(params))
}

/// Same ratio with the 1-norm summed from the generated terms.
pub fn omega_ratio_generic(model: Model, lattice: &LatticeSpec, params: &ModelParams) -> Result<f64> {
    let groups = build_complete(model, lattice)?;
    let one = BoundResult {
        method: Method::OneNorm,
        model: Some(model),
        lattice: Some(*lattice),
        polynomial: one_norm_generic(&groups),
        sim: unit_sim(),
    };
    let com = BoundResult {
        polynomial: closed_polynomial(model, lattice)?,
        method: Method::Closed,
        ..one.clone()
    };
    ratio(one.value(params), com.value(params))
}
