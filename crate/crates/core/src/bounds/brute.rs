use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{BoundResult, Method};
use crate::error::Result;
use crate::lattice::{LatticeSpec, Model, SimParams};
use crate::models::{build_with, Accounting, BuildOptions, SiteTermGroup};
use crate::pauli::HamTerm;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

/// Ordered-pair commutator sum over a flat term list.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorTally<Q> {
    pub polynomial: Polynomial<Q>,
    /// Non-commuting ordered pairs per monomial of `|c_1| |c_2|`.
    pub counts: BTreeMap<Monomial, u64>,
    pub ordered_pairs: u64,
}

/// `sum_{g1, g2} || [H_g1, H_g2] ||` over ordered pairs (self pairs included, they vanish).
pub fn commutator_tally<Q: Scalar>(terms: &[&HamTerm<Q>]) -> Result<CommutatorTally<Q>> {
    // Terms are bucketed by |coefficient|; only the bucket pair counts are accumulated.
    let mut classes: Vec<Polynomial<Q>> = Vec::new();
    let mut class_of = Vec::with_capacity(terms.len());
    for t in terms {
        let a = t.coefficient.abs();
        let idx = match classes.iter().position(|c| *c == a) {
            Some(i) => i,
            None => {
                classes.push(a);
                classes.len() - 1
            }
        };
        class_of.push(idx);
    }
    if let Some(first) = terms.first() {
        let n = first.pauli.n_qubits();
        for t in terms {
            if t.pauli.n_qubits() != n {
                return Err(crate::Error::SizeMismatch {
                    left: n,
                    right: t.pauli.n_qubits(),
                });
            }
        }
    }
    let k = classes.len();
    let counts = (0..terms.len())
        .into_par_iter()
        .fold(
            || vec![0u64; k * k],
            |mut acc, i| {
                let pi = &terms[i].pauli;
                let ci = class_of[i];
                for j in (i + 1)..terms.len() {
                    if !pi.commutes_unchecked(&terms[j].pauli) {
                        acc[ci * k + class_of[j]] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; k * k],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let mut polynomial = Polynomial::zero();
    let mut by_monomial = BTreeMap::new();
    let two = Q::ratio(2, 1);
    for a in 0..k {
        for b in 0..k {
            let unordered = counts[a * k + b];
            if unordered == 0 {
                continue;
            }
            let ordered = 2 * unordered;
            let product = &classes[a] * &classes[b];
            polynomial += &product.scale(&(two.clone() * Q::from_count(ordered)));
            for m in product.monomials() {
                *by_monomial.entry(*m).or_insert(0) += ordered;
            }
        }
    }
    Ok(CommutatorTally {
        polynomial,
        counts: by_monomial,
        ordered_pairs: (terms.len() as u64).pow(2),
    })
}

/// Commutator bound summed over every pair of terms of `groups`.
pub fn bound_brute<Q: Scalar>(groups: &[SiteTermGroup<Q>], sim: SimParams) -> Result<BoundResult<Q>> {
    let terms: Vec<&HamTerm<Q>> = groups.iter().flat_map(|g| g.terms.iter()).collect();
    let tally = commutator_tally(&terms)?;
    Ok(BoundResult {
        method: Method::Brute,
        model: None,
        lattice: None,
        polynomial: tally.polynomial,
        sim,
    })
}

/// [`bound_brute`] on a fresh build of `model` on `lattice`.
pub fn bound_brute_for<Q: Scalar>(
    model: Model,
    lattice: &LatticeSpec,
    accounting: Accounting,
    sim: SimParams,
) -> Result<BoundResult<Q>> {
    let groups = build_with::<Q>(
        model,
        lattice,
        BuildOptions {
            accounting,
            ..BuildOptions::default()
        },
    )?;
    let mut r = bound_brute(&groups, sim)?;
    r.model = Some(model);
    r.lattice = Some(*lattice);
    Ok(r)
}
