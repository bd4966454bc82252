//! Dense matrices of Pauli strings and sums, for small registers.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::lattice::ModelParams;
use crate::pauli::{HamTerm, PauliString, PauliSum};
use crate::scalar::{Real, Scalar};

/// Largest register turned into a dense matrix.
pub const MAX_DENSE_QUBITS: usize = 14;

fn check_budget(n_qubits: usize) -> Result<()> {
    if n_qubits > MAX_DENSE_QUBITS {
        return Err(Error::QubitBudget {
            needed: n_qubits,
            budget: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

fn i_power<T: Real>(k: u32) -> Complex<T> {
    match k % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

/// Add `weight * p` into `m`. Bit `q` of a basis index is the value of qubit `q`.
fn accumulate<T: Real>(m: &mut DMatrix<Complex<T>>, p: &PauliString, weight: Complex<T>) {
    let x = p.x_words().first().copied().unwrap_or(0) as usize;
    let z = p.z_words().first().copied().unwrap_or(0) as usize;
    let base = weight * i_power::<T>(p.phase().exponent() as u32 + (x & z).count_ones());
    for b in 0..m.ncols() {
        let v = if (b & z).count_ones() % 2 == 1 { -base } else { base };
        m[(b ^ x, b)] += v;
    }
}

pub fn pauli_matrix<T: Real>(p: &PauliString) -> Result<DMatrix<Complex<T>>> {
    check_budget(p.n_qubits())?;
    let dim = 1usize << p.n_qubits();
    let mut m = DMatrix::zeros(dim, dim);
    accumulate(&mut m, p, Complex::new(T::one(), T::zero()));
    Ok(m)
}

pub fn sum_matrix<Q: Scalar, T: Real>(
    sum: &PauliSum<Q>,
    params: &ModelParams<T>,
) -> Result<DMatrix<Complex<T>>> {
    check_budget(sum.n_qubits())?;
    let dim = 1usize << sum.n_qubits();
    let mut m = DMatrix::zeros(dim, dim);
    for (p, c) in sum.iter() {
        let w = Complex::new(c.re.evaluate(params), c.im.evaluate(params));
        accumulate(&mut m, p, w);
    }
    Ok(m)
}

pub fn terms_matrix<Q: Scalar, T: Real>(
    terms: &[HamTerm<Q>],
    n_qubits: usize,
    params: &ModelParams<T>,
) -> Result<DMatrix<Complex<T>>> {
    check_budget(n_qubits)?;
    let dim = 1usize << n_qubits;
    let mut m = DMatrix::zeros(dim, dim);
    for term in terms {
        if term.pauli.n_qubits() != n_qubits {
            return Err(Error::SizeMismatch {
                left: term.pauli.n_qubits(),
                right: n_qubits,
            });
        }
        let w = Complex::new(term.coefficient.evaluate(params), T::zero());
        accumulate(&mut m, &term.pauli, w);
    }
    Ok(m)
}

/// Largest singular value.
pub fn spectral_norm<T: Real>(m: &DMatrix<Complex<T>>) -> T {
    m.clone()
        .singular_values()
        .iter()
        .fold(T::zero(), |acc, &s| if s > acc { s } else { acc })
}

/// Largest entry modulus.
pub fn max_abs<T: Real>(m: &DMatrix<Complex<T>>) -> T {
    m.iter()
        .fold(T::zero(), |acc, z| {
            let n = z.norm();
            if n > acc {
                n
            } else {
                acc
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn single_qubit_matrices() {
        let y: DMatrix<Complex<f64>> = pauli_matrix(&PauliString::parse("Y").unwrap()).unwrap();
        // Y|0> = i|1>
        assert_eq!(y[(1, 0)], c(0.0, 1.0));
        assert_eq!(y[(0, 1)], c(0.0, -1.0));
        let z: DMatrix<Complex<f64>> = pauli_matrix(&PauliString::parse("Z").unwrap()).unwrap();
        assert_eq!(z[(1, 1)], c(-1.0, 0.0));
    }

    #[test]
    fn symbolic_product_matches_matrix_product() {
        let labels = ["XYZI", "YYXZ", "ZIYX", "IXXY", "YZZZ"];
        for a in labels {
            for b in labels {
                let pa = PauliString::parse(a).unwrap();
                let pb = PauliString::parse(b).unwrap();
                let ma: DMatrix<Complex<f64>> = pauli_matrix(&pa).unwrap();
                let mb = pauli_matrix(&pb).unwrap();
                let mp = pauli_matrix(&pa.multiply(&pb).unwrap()).unwrap();
                assert!(max_abs(&(&ma * &mb - &mp)) < 1e-14, "{a} * {b}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let p = PauliString::identity(MAX_DENSE_QUBITS + 1);
        assert!(matches!(
            pauli_matrix::<f64>(&p),
            Err(Error::QubitBudget { .. })
        ));
    }

    #[test]
    fn sum_matrix_is_weighted() {
        let mut s = PauliSum::<Rational>::zero(1);
        s.add_pauli(
            PauliString::parse("X").unwrap(),
            crate::Polynomial::var(crate::Var::T, 1, 2),
        );
        let m = sum_matrix(&s, &ModelParams::new(2.0, 0.0, 0.0)).unwrap();
        assert_eq!(m[(0, 1)], c(1.0, 0.0));
        assert!((spectral_norm(&m) - 1.0).abs() < 1e-12);
    }
}
