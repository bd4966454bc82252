use super::{BoundResult, Method};
use crate::error::Result;
use crate::lattice::{Boundary, Dimension, LatticeSpec, Model, SimParams};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

/// `sum coeff * t^a U^b J^c` from `(a, b, c, num, den)` tuples.
fn poly<Q: Scalar>(terms: &[(u8, u8, u8, i64, i64)]) -> Polynomial<Q> {
    Polynomial::from_terms(
        terms
            .iter()
            .map(|&(a, b, c, n, d)| (Monomial::new(a, b, c), Q::ratio(n, d))),
    )
}

fn times<Q: Scalar>(p: &Polynomial<Q>, n: i64) -> Polynomial<Q> {
    p.scale(&Q::ratio(n, 1))
}

/// Closed-form commutator bound `r epsilon / tau^2` for `model` on `lattice`.
pub fn closed_polynomial<Q: Scalar>(model: Model, lattice: &LatticeSpec) -> Result<Polynomial<Q>> {
    let nx = lattice.n_x as i64;
    let ny = lattice.n_y as i64;
    let periodic = lattice.boundary == Boundary::Periodic;
    Ok(match (model, lattice.dimension) {
        (Model::Hubbard, Dimension::Two) => {
            let a00 = poly(&[(2, 0, 0, 4, 1), (1, 1, 0, 8, 1)]);
            let a01 = poly(&[(2, 0, 0, 4, 1), (1, 1, 0, 2, 1)]);
            let anti = poly(&[(2, 0, 0, 2, 1)]);
            if periodic {
                let inner = &(&(&a00 + &times(&a01, 2)) + &times(&a01, 2)) + &times(&anti, 2);
                times(&inner, nx * ny)
            } else {
                let mut p = times(&a00, nx * ny);
                p += &times(&a01, 2 * ny * (nx - 1));
                p += &times(&a01, 2 * nx * (ny - 1));
                p += &poly(&[(2, 0, 0, 4 * (ny - 1) * (nx - 1), 1)]);
                p
            }
        }
        (Model::TJ, Dimension::Two) => {
            let a00 = poly(&[(2, 0, 0, 12, 1), (1, 0, 1, 16, 1), (0, 0, 2, 3, 2)]);
            let a01 = poly(&[(2, 0, 0, 8, 1), (1, 0, 1, 8, 1), (0, 0, 2, 3, 2)]);
            let anti = poly(&[(2, 0, 0, 4, 1), (1, 0, 1, 4, 1), (0, 0, 2, 3, 4)]);
            if periodic {
                let inner = &(&(&a00 + &times(&a01, 2)) + &times(&a01, 2)) + &times(&anti, 2);
                times(&inner, nx * ny)
            } else {
                let mut p = times(&a00, nx * ny);
                p += &times(&a01, 2 * ny * (nx - 1));
                p += &times(&a01, 2 * nx * (ny - 1));
                p += &times(&anti, 2 * (ny - 1) * (nx - 1));
                p
            }
        }
        (Model::Hubbard, Dimension::One) => {
            let a11 = poly(&[(1, 1, 0, 4, 1)]);
            let a12 = poly(&[(2, 0, 0, 2, 1), (1, 1, 0, 2, 1)]);
            one_dim(&a11, &a12, nx, periodic)
        }
        (Model::TJ, Dimension::One) => {
            let a11 = poly(&[(2, 0, 0, 2, 1), (1, 0, 1, 4, 1)]);
            let a12 = poly(&[(2, 0, 0, 4, 1), (1, 0, 1, 4, 1), (0, 0, 2, 3, 4)]);
            one_dim(&a11, &a12, nx, periodic)
        }
    })
}

fn one_dim<Q: Scalar>(a11: &Polynomial<Q>, a12: &Polynomial<Q>, n: i64, periodic: bool) -> Polynomial<Q> {
    if periodic {
        times(&(a11 + &times(a12, 2)), n)
    } else {
        &times(a11, n) + &times(a12, 2 * (n - 1))
    }
}

pub fn bound_closed<Q: Scalar>(
    model: Model,
    lattice: &LatticeSpec,
    sim: SimParams,
) -> Result<BoundResult<Q>> {
    Ok(BoundResult {
        method: Method::Closed,
        model: Some(model),
        lattice: Some(*lattice),
        polynomial: closed_polynomial(model, lattice)?,
        sim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ModelParams;
    use crate::poly::Var;
    use crate::Rational;

    #[test]
    fn worked_example_values() {
        let l = LatticeSpec::square(6, Boundary::Open).unwrap();
        let sim = SimParams::new(1.0, 0.0004).unwrap();
        let h: BoundResult<Rational> = bound_closed(Model::Hubbard, &l, sim).unwrap();
        let r = h.numeric_r(&ModelParams::new(0.1, 10.0, 0.0));
        assert!((r - 1.3381e6).abs() / 1.3381e6 < 1e-3, "{r}");
        let t: BoundResult<Rational> = bound_closed(Model::TJ, &l, sim).unwrap();
        let r = t.numeric_r(&ModelParams::new(0.1, 0.0, 0.004));
        assert!((r - 4.1547e4).abs() / 4.1547e4 < 1e-3, "{r}");
    }

    #[test]
    fn single_site_chain() {
        let l = LatticeSpec::chain(1, Boundary::Open).unwrap();
        let p: Polynomial<Rational> = closed_polynomial(Model::Hubbard, &l).unwrap();
        assert_eq!(p.to_string(), "4 t U");
    }

    #[test]
    fn degrees() {
        let l = LatticeSpec::square(4, Boundary::Periodic).unwrap();
        let h: Polynomial<Rational> = closed_polynomial(Model::Hubbard, &l).unwrap();
        assert_eq!((h.degree_in(Var::T), h.degree_in(Var::U)), (2, 1));
        let t: Polynomial<Rational> = closed_polynomial(Model::TJ, &l).unwrap();
        assert_eq!(t.degree_in(Var::J), 2);
        let f: Polynomial<f64> = closed_polynomial(Model::TJ, &l).unwrap();
        let p = ModelParams::<f64>::new(1.0, 0.0, 1.0);
        assert!((f.evaluate(&p) - t.evaluate(&p)).abs() < 1e-9);
    }
}
