//! Hubbard and t-J Hamiltonians as per-site groups of Pauli terms.
//!
//! Site `(row, col)` of a lattice with `n_x` columns owns spin-orbitals
//! `(row, 2 col)` (up) and `(row, 2 col + 1)` (down) of the spinless register,
//! together with the bonds to its right and lower neighbors.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jw::{jw_hermitian, FermionMonomial, FermionOp, JwOrdering};
use crate::lattice::{Boundary, Dimension, LatticeSpec, Model};
use crate::pauli::HamTerm;
use crate::poly::{Polynomial, Var};
use crate::scalar::Scalar;
use crate::Rational;

/// Which piece of the site Hamiltonian a term comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermSource {
    HopDown,
    HopRight,
    OnSite,
    ExchangeDown,
    ExchangeRight,
}

impl fmt::Display for TermSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TermSource::HopDown => "hop-down",
            TermSource::HopRight => "hop-right",
            TermSource::OnSite => "on-site",
            TermSource::ExchangeDown => "exchange-down",
            TermSource::ExchangeRight => "exchange-right",
        })
    }
}

/// All terms owned by one site. `sources[k]` tags `terms[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SiteTermGroup<Q = Rational> {
    pub site: (usize, usize),
    pub terms: Vec<HamTerm<Q>>,
    pub sources: Vec<TermSource>,
}

impl<Q: Scalar> SiteTermGroup<Q> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_qubits(&self) -> Option<usize> {
        self.terms.first().map(|t| t.pauli.n_qubits())
    }
}

/// How boundary sites are treated under open boundaries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Accounting {
    /// Bonds leaving the lattice are dropped.
    #[default]
    Literal,
    /// Every site keeps its full interior group. The groups live on a register
    /// one row and one column larger, so the outgoing bonds have a partner.
    Complete,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct BuildOptions {
    pub accounting: Accounting,
    /// Multiply vertical hops by `(-1)^{n_x}`. A gauge choice for open boundaries.
    pub alternating_vertical_sign: bool,
}

pub fn build_hubbard(lattice: &LatticeSpec) -> Result<Vec<SiteTermGroup>> {
    build_with(Model::Hubbard, lattice, BuildOptions::default())
}

pub fn build_tj(lattice: &LatticeSpec) -> Result<Vec<SiteTermGroup>> {
    build_with(Model::TJ, lattice, BuildOptions::default())
}

pub fn build(model: Model, lattice: &LatticeSpec) -> Result<Vec<SiteTermGroup>> {
    build_with(model, lattice, BuildOptions::default())
}

/// Groups with every site carrying its full set of bonds.
pub fn build_complete(model: Model, lattice: &LatticeSpec) -> Result<Vec<SiteTermGroup>> {
    build_with(
        model,
        lattice,
        BuildOptions {
            accounting: Accounting::Complete,
            ..BuildOptions::default()
        },
    )
}

/// Register on which the groups of `lattice` are laid out.
pub fn register(lattice: &LatticeSpec, accounting: Accounting) -> LatticeSpec {
    match (accounting, lattice.boundary) {
        (Accounting::Complete, Boundary::Open) => LatticeSpec {
            n_x: lattice.n_x + 1,
            n_y: match lattice.dimension {
                Dimension::One => 1,
                Dimension::Two => lattice.n_y + 1,
            },
            ..*lattice
        },
        _ => *lattice,
    }
}

pub fn build_with<Q: Scalar>(
    model: Model,
    lattice: &LatticeSpec,
    opts: BuildOptions,
) -> Result<Vec<SiteTermGroup<Q>>> {
    let reg = register(lattice, opts.accounting);
    let ordering = JwOrdering::for_lattice(&reg);
    let sites: Vec<(usize, usize)> = lattice.sites().collect();
    let vertical_sign = if opts.alternating_vertical_sign && lattice.n_x % 2 == 1 {
        -1
    } else {
        1
    };
    sites
        .into_par_iter()
        .map(|site| site_group(model, &reg, &ordering, site, vertical_sign))
        .collect()
}

fn right_of(reg: &LatticeSpec, (r, c): (usize, usize)) -> Option<(usize, usize)> {
    if c + 1 < reg.n_x {
        Some((r, c + 1))
    } else if reg.boundary == Boundary::Periodic && reg.n_x > 1 {
        Some((r, 0))
    } else {
        None
    }
}

fn below(reg: &LatticeSpec, (r, c): (usize, usize)) -> Option<(usize, usize)> {
    if reg.dimension == Dimension::One {
        None
    } else if r + 1 < reg.n_y {
        Some((r + 1, c))
    } else if reg.boundary == Boundary::Periodic && reg.n_y > 1 {
        Some((0, c))
    } else {
        None
    }
}

fn scalar<Q: Scalar>(var: Var, num: i64, den: i64) -> Polynomial<Q> {
    Polynomial::var(var, num, den)
}

fn hop_monomials<Q: Scalar>(
    model: Model,
    reg: &LatticeSpec,
    a: (usize, usize),
    b: (usize, usize),
    sign: i64,
) -> Vec<FermionMonomial<Q>> {
    let q = |s: (usize, usize), down: bool| reg.qubit(s.0, s.1, down);
    let mut out = Vec::new();
    for down in [false, true] {
        let (qa, qb) = (q(a, down), q(b, down));
        let coeff = scalar::<Q>(Var::T, -sign, 1);
        for (from, to) in [(qb, qa), (qa, qb)] {
            let core = vec![FermionOp::create(to), FermionOp::annihilate(from)];
            let factors = match model {
                Model::Hubbard => core,
                Model::TJ => {
                    let mut f = vec![FermionOp::one_minus_number(q(a, !down))];
                    f.extend(core);
                    f.push(FermionOp::one_minus_number(q(b, !down)));
                    f
                }
            };
            out.push(FermionMonomial::new(coeff.clone(), factors));
        }
    }
    out
}

fn exchange_monomials<Q: Scalar>(
    reg: &LatticeSpec,
    a: (usize, usize),
    b: (usize, usize),
) -> Vec<FermionMonomial<Q>> {
    let q = |s: (usize, usize), down: bool| reg.qubit(s.0, s.1, down);
    let mut out = Vec::new();
    for down in [false, true] {
        let (s, sb) = (down, !down);
        out.push(FermionMonomial::new(
            scalar(Var::J, 1, 2),
            vec![
                FermionOp::create(q(a, s)),
                FermionOp::annihilate(q(a, sb)),
                FermionOp::create(q(b, sb)),
                FermionOp::annihilate(q(b, s)),
            ],
        ));
        out.push(FermionMonomial::new(
            scalar(Var::J, -1, 2),
            vec![
                FermionOp::one_minus_number(q(a, sb)),
                FermionOp::number(q(a, s)),
                FermionOp::number(q(b, sb)),
                FermionOp::one_minus_number(q(b, s)),
            ],
        ));
    }
    out
}

fn site_group<Q: Scalar>(
    model: Model,
    reg: &LatticeSpec,
    ordering: &JwOrdering,
    site: (usize, usize),
    vertical_sign: i64,
) -> Result<SiteTermGroup<Q>> {
    let mut components: Vec<(TermSource, Vec<FermionMonomial<Q>>)> = Vec::new();
    let down = below(reg, site);
    let right = right_of(reg, site);
    if let Some(b) = down {
        components.push((
            TermSource::HopDown,
            hop_monomials(model, reg, site, b, vertical_sign),
        ));
    }
    if let Some(b) = right {
        components.push((TermSource::HopRight, hop_monomials(model, reg, site, b, 1)));
    }
    match model {
        Model::Hubbard => {
            let (up, dn) = (
                reg.qubit(site.0, site.1, false),
                reg.qubit(site.0, site.1, true),
            );
            components.push((
                TermSource::OnSite,
                vec![FermionMonomial::new(
                    scalar(Var::U, 1, 1),
                    vec![FermionOp::number(up), FermionOp::number(dn)],
                )],
            ));
        }
        Model::TJ => {
            if let Some(b) = down {
                components.push((TermSource::ExchangeDown, exchange_monomials(reg, site, b)));
            }
            if let Some(b) = right {
                components.push((TermSource::ExchangeRight, exchange_monomials(reg, site, b)));
            }
        }
    }
    let mut group = SiteTermGroup {
        site,
        terms: Vec::new(),
        sources: Vec::new(),
    };
    // Like terms merge within a component only.
    for (source, monomials) in components {
        for term in jw_hermitian(&monomials, ordering)? {
            group.terms.push(term);
            group.sources.push(source);
        }
    }
    Ok(group)
}

/// Largest Pauli weight over all terms.
pub fn pauli_depth<Q: Scalar>(groups: &[SiteTermGroup<Q>]) -> Result<usize> {
    groups
        .iter()
        .flat_map(|g| g.terms.iter())
        .map(|t| t.pauli.weight())
        .max()
        .ok_or(Error::EmptyInput("no terms"))
}

/// Total number of terms.
pub fn term_count<Q: Scalar>(groups: &[SiteTermGroup<Q>]) -> usize {
    groups.iter().map(|g| g.terms.len()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;

    fn abs_coeffs(g: &SiteTermGroup) -> Vec<String> {
        let mut v: Vec<String> = g.terms.iter().map(|t| t.coefficient.abs().to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn hubbard_interior_group() {
        let l = LatticeSpec::square(3, Boundary::Open).unwrap();
        let groups = build_hubbard(&l).unwrap();
        let g = &groups[0];
        assert_eq!(g.len(), 12);
        let c = abs_coeffs(g);
        assert_eq!(c.iter().filter(|s| *s == "1/2 t").count(), 8);
        assert_eq!(c.iter().filter(|s| *s == "1/4 U").count(), 4);
        let identity = PauliString::identity(l.n_qubits());
        assert_eq!(g.terms.iter().filter(|t| t.pauli == identity).count(), 1);
    }

    #[test]
    fn tj_interior_group() {
        let l = LatticeSpec::square(3, Boundary::Open).unwrap();
        let groups = build_tj(&l).unwrap();
        let g = &groups[0];
        assert_eq!(g.len(), 64);
        let c = abs_coeffs(g);
        assert_eq!(c.iter().filter(|s| *s == "1/8 t").count(), 32);
        assert_eq!(c.iter().filter(|s| *s == "1/16 J").count(), 32);
        assert!(g.terms.iter().all(|t| t.pauli.weight() <= 4 || t.coefficient.degree_in(Var::T) == 1));
    }

    #[test]
    fn single_site_has_only_interaction() {
        let l = LatticeSpec::square(1, Boundary::Open).unwrap();
        let g = build_hubbard(&l).unwrap();
        assert_eq!(g[0].len(), 4);
        assert!(g[0].sources.iter().all(|s| *s == TermSource::OnSite));
        let tj = build_tj(&l).unwrap();
        assert!(tj[0].is_empty());
        assert!(pauli_depth(&tj).is_err());
    }

    #[test]
    fn open_boundary_drops_outgoing_bonds() {
        let l = LatticeSpec::rect(3, 2, Boundary::Open).unwrap();
        let groups = build_hubbard(&l).unwrap();
        // corner (1,2) keeps only U terms; (1,0) keeps the right bond.
        assert_eq!(groups[5].len(), 4);
        assert_eq!(groups[3].len(), 8);
        // 2 interior-ish (0,0),(0,1): 12; (0,2): 8 ; (1,0),(1,1): 8 ; (1,2): 4
        assert_eq!(term_count(&groups), 12 + 12 + 8 + 8 + 8 + 4);
    }

    #[test]
    fn complete_accounting_gives_full_groups() {
        let l = LatticeSpec::rect(2, 2, Boundary::Open).unwrap();
        let groups = build_complete(Model::TJ, &l).unwrap();
        assert!(groups.iter().all(|g| g.len() == 64));
        assert_eq!(groups[0].n_qubits(), Some(18));
    }

    #[test]
    fn chain_depths() {
        let l = LatticeSpec::chain(5, Boundary::Open).unwrap();
        assert_eq!(pauli_depth(&build_hubbard(&l).unwrap()).unwrap(), 3);
        assert_eq!(pauli_depth(&build_tj(&l).unwrap()).unwrap(), 4);
    }

    #[test]
    fn projectors_off_recover_hubbard_hops() {
        // With J = 0 and the projectors replaced by the identity the t-J hop
        // component is the Hubbard hop component.
        let l = LatticeSpec::rect(3, 3, Boundary::Open).unwrap();
        let reg = l;
        let ordering = JwOrdering::for_lattice(&reg);
        let strip = |ms: Vec<FermionMonomial<Rational>>| -> Vec<FermionMonomial<Rational>> {
            ms.into_iter()
                .map(|m| FermionMonomial {
                    factors: m
                        .factors
                        .into_iter()
                        .filter(|f| f.kind != crate::jw::FermionOpKind::OneMinusNumber)
                        .collect(),
                    scalar: m.scalar,
                })
                .collect()
        };
        for (a, b) in [((0, 0), (0, 1)), ((1, 1), (2, 1))] {
            let tj = jw_hermitian(&strip(hop_monomials(Model::TJ, &reg, a, b, 1)), &ordering).unwrap();
            let hub = jw_hermitian(&hop_monomials::<Rational>(Model::Hubbard, &reg, a, b, 1), &ordering).unwrap();
            assert_eq!(tj, hub);
        }
    }
}
