//! Jordan-Wigner transformation of fermionic operators.
//!
//! Spin-orbitals are laid out on a rectangular grid and numbered row by row.
//! With this numbering
//!
//! ```text
//! c^dag_s = (prod_{k<s} Z_k) (X_s + i Y_s) / 2
//! c_s     = (prod_{k<s} Z_k) (X_s - i Y_s) / 2
//! n_s     = (I + Z_s) / 2
//! ```
//!
//! so an occupied orbital has `Z = +1`.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::dense::{max_abs, sum_matrix};
use crate::error::{Error, Result};
use crate::lattice::{Dimension, LatticeSpec, ModelParams};
use crate::pauli::{HamTerm, Pauli, PauliString, PauliSum, Phase};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FermionOpKind {
    Create,
    Annihilate,
    Number,
    OneMinusNumber,
}

/// Operator acting on spin-orbital `site` (linear index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FermionOp {
    pub kind: FermionOpKind,
    pub site: usize,
}

impl FermionOp {
    pub fn create(site: usize) -> Self {
        FermionOp {
            kind: FermionOpKind::Create,
            site,
        }
    }

    pub fn annihilate(site: usize) -> Self {
        FermionOp {
            kind: FermionOpKind::Annihilate,
            site,
        }
    }

    pub fn number(site: usize) -> Self {
        FermionOp {
            kind: FermionOpKind::Number,
            site,
        }
    }

    pub fn one_minus_number(site: usize) -> Self {
        FermionOp {
            kind: FermionOpKind::OneMinusNumber,
            site,
        }
    }
}

/// `scalar * factors[0] * factors[1] * ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionMonomial<Q> {
    pub factors: Vec<FermionOp>,
    pub scalar: Polynomial<Q>,
}

impl<Q: Scalar> FermionMonomial<Q> {
    pub fn new(scalar: Polynomial<Q>, factors: Vec<FermionOp>) -> Self {
        FermionMonomial { factors, scalar }
    }
}

/// Ordering of the spin-orbitals: a chain, or a grid of `n_rows x n_cols`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JwOrdering {
    pub dimension: Dimension,
    pub n_rows: usize,
    pub n_cols: usize,
}

impl JwOrdering {
    pub fn linear(n_sites: usize) -> Self {
        JwOrdering {
            dimension: Dimension::One,
            n_rows: 1,
            n_cols: n_sites,
        }
    }

    pub fn grid(n_rows: usize, n_cols: usize) -> Self {
        JwOrdering {
            dimension: Dimension::Two,
            n_rows,
            n_cols,
        }
    }

    /// Spinless register of a lattice: two columns per site.
    pub fn for_lattice(lattice: &LatticeSpec) -> Self {
        match lattice.dimension {
            Dimension::One => Self::linear(lattice.n_qubits()),
            Dimension::Two => Self::grid(lattice.n_y, lattice.spinless_cols()),
        }
    }

    pub fn n_sites(&self) -> usize {
        self.n_rows * self.n_cols
    }

    fn check(&self, site: usize) -> Result<()> {
        if site >= self.n_sites() {
            return Err(Error::InvalidSite {
                site,
                n_sites: self.n_sites(),
            });
        }
        Ok(())
    }

    /// Orbitals carrying a Z factor in the string attached to `site`.
    ///
    /// On a grid the string covers every row above and the columns to the
    /// left in the same row.
    pub fn string(&self, site: usize) -> Result<Vec<usize>> {
        self.check(site)?;
        Ok(match self.dimension {
            Dimension::One => (0..site).collect(),
            Dimension::Two => {
                let (row, col) = (site / self.n_cols, site % self.n_cols);
                let mut out = Vec::with_capacity(site);
                for r in 0..row {
                    out.extend((0..self.n_cols).map(|c| r * self.n_cols + c));
                }
                out.extend((0..col).map(|c| row * self.n_cols + c));
                out
            }
        })
    }
}

fn half<Q: Scalar>() -> Polynomial<Q> {
    Polynomial::constant(Q::ratio(1, 2))
}

/// Image of a single operator as a Pauli sum.
pub fn jw_op_sum<Q: Scalar>(op: FermionOp, ordering: &JwOrdering) -> Result<PauliSum<Q>> {
    let n = ordering.n_sites();
    let s = op.site;
    ordering.check(s)?;
    let mut out = PauliSum::zero(n);
    match op.kind {
        FermionOpKind::Number | FermionOpKind::OneMinusNumber => {
            let z = PauliString::single(n, s, Pauli::Z)?;
            let sign = if op.kind == FermionOpKind::Number {
                Phase::One
            } else {
                Phase::MinusOne
            };
            out.add_pauli(PauliString::identity(n), half());
            out.add_pauli(z.with_phase(sign), half());
        }
        FermionOpKind::Create | FermionOpKind::Annihilate => {
            let string =
                PauliString::from_ops(n, ordering.string(s)?.into_iter().map(|k| (k, Pauli::Z)))?;
            let x = string.multiply(&PauliString::single(n, s, Pauli::X)?)?;
            let y = string.multiply(&PauliString::single(n, s, Pauli::Y)?)?;
            let phase = if op.kind == FermionOpKind::Create {
                Phase::I
            } else {
                Phase::MinusI
            };
            let y_phase = y.phase().times(phase);
            out.add_pauli(x, half());
            out.add_pauli(y.with_phase(y_phase), half());
        }
    }
    Ok(out)
}

/// Image of a single operator. Terms with an imaginary weight carry phase `+i`.
pub fn jw_transform_op<Q: Scalar>(op: FermionOp, ordering: &JwOrdering) -> Result<Vec<HamTerm<Q>>> {
    Ok(jw_op_sum(op, ordering)?.to_terms())
}

pub fn jw_monomial_sum<Q: Scalar>(
    monomial: &FermionMonomial<Q>,
    ordering: &JwOrdering,
) -> Result<PauliSum<Q>> {
    let mut acc = PauliSum::identity(ordering.n_sites());
    for op in &monomial.factors {
        acc = acc.multiply(&jw_op_sum(*op, ordering)?)?;
    }
    Ok(acc.scale(&monomial.scalar))
}

/// Image of a product of operators with like strings merged.
pub fn jw_transform_monomial<Q: Scalar>(
    monomial: &FermionMonomial<Q>,
    ordering: &JwOrdering,
) -> Result<Vec<HamTerm<Q>>> {
    Ok(jw_monomial_sum(monomial, ordering)?.to_terms())
}

/// Image of a Hermitian sum of monomials; fails if the sum is not Hermitian.
pub fn jw_hermitian<Q: Scalar>(
    monomials: &[FermionMonomial<Q>],
    ordering: &JwOrdering,
) -> Result<Vec<HamTerm<Q>>> {
    let mut total = PauliSum::zero(ordering.n_sites());
    for m in monomials {
        total.add_sum(&jw_monomial_sum(m, ordering)?)?;
    }
    total.into_hermitian_terms()
}

/// Largest register checked by [`verify_car`].
pub const MAX_CAR_SITES: usize = 6;

/// Largest deviation from the canonical anticommutation relations over all
/// pairs of orbitals, computed on dense matrices.
pub fn verify_car(ordering: &JwOrdering) -> Result<f64> {
    let n = ordering.n_sites();
    if n > MAX_CAR_SITES {
        return Err(Error::QubitBudget {
            needed: n,
            budget: MAX_CAR_SITES,
        });
    }
    let params = ModelParams::new(1.0, 1.0, 1.0);
    let dim = 1usize << n;
    let dense = |op: FermionOp| -> Result<DMatrix<Complex<f64>>> {
        sum_matrix(&jw_op_sum::<Rational>(op, ordering)?, &params)
    };
    let mut worst = 0.0f64;
    let identity = DMatrix::<Complex<f64>>::identity(dim, dim);
    let zero = DMatrix::<Complex<f64>>::zeros(dim, dim);
    for a in 0..n {
        let ca = dense(FermionOp::annihilate(a))?;
        let na = dense(FermionOp::number(a))?;
        let cda = dense(FermionOp::create(a))?;
        worst = worst.max(max_abs(&(&cda * &ca - &na)));
        for b in 0..n {
            let cb = dense(FermionOp::annihilate(b))?;
            let cdb = dense(FermionOp::create(b))?;
            let target = if a == b { &identity } else { &zero };
            worst = worst.max(max_abs(&(&ca * &cdb + &cdb * &ca - target)));
            worst = worst.max(max_abs(&(&ca * &cb + &cb * &ca)));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_string_equals_linear_string() {
        let grid = JwOrdering::grid(3, 4);
        let line = JwOrdering::linear(12);
        for s in 0..12 {
            assert_eq!(grid.string(s).unwrap(), line.string(s).unwrap());
        }
        assert!(grid.string(12).is_err());
    }

    #[test]
    fn creation_operator_image() {
        let o = JwOrdering::linear(3);
        let terms = jw_transform_op::<Rational>(FermionOp::create(2), &o).unwrap();
        assert_eq!(terms.len(), 2);
        let labels: Vec<String> = terms.iter().map(|t| t.pauli.to_string()).collect();
        assert!(labels.contains(&"Z0 Z1 X2".to_string()));
        assert!(labels.contains(&"+i Z0 Z1 Y2".to_string()));
    }

    #[test]
    fn hopping_pair_image() {
        // -(c^dag_0 c_2 + c^dag_2 c_0) = 1/2 (X0 Z1 X2 + Y0 Z1 Y2)
        let o = JwOrdering::linear(3);
        let m = |a, b| {
            FermionMonomial::new(
                Polynomial::<Rational>::constant(Rational::from_integer(-1)),
                vec![FermionOp::create(a), FermionOp::annihilate(b)],
            )
        };
        let terms = jw_hermitian(&[m(0, 2), m(2, 0)], &o).unwrap();
        assert_eq!(terms.len(), 2);
        for t in &terms {
            assert_eq!(t.coefficient, Polynomial::constant(Rational::new(1, 2)));
            assert_eq!(t.pauli.weight(), 3);
        }
    }

    #[test]
    fn non_hermitian_sum_is_rejected() {
        let o = JwOrdering::linear(2);
        let m = FermionMonomial::new(
            Polynomial::<Rational>::constant(Rational::from_integer(1)),
            vec![FermionOp::create(0), FermionOp::annihilate(1)],
        );
        assert!(matches!(jw_hermitian(&[m], &o), Err(Error::NonHermitian(_))));
    }

    #[test]
    fn car_small_registers() {
        assert!(verify_car(&JwOrdering::linear(4)).unwrap() < 1e-12);
        assert!(verify_car(&JwOrdering::grid(2, 3)).unwrap() < 1e-12);
        assert!(verify_car(&JwOrdering::linear(7)).is_err());
    }
}
