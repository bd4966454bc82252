use super::{ATable, BoundResult, Method, Offset};
use crate::error::{Error, Result};
use crate::lattice::{Boundary, Dimension, LatticeSpec, SimParams};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

fn times<Q: Scalar>(p: &Polynomial<Q>, n: u64) -> Polynomial<Q> {
    p.scale(&Q::from_count(n))
}

/// Ordered site pairs accounted for by the translation-invariant expansion:
/// `N_x N_y + N_y N_x (N_x-1) + N_x N_y (N_y-1) + N_x (N_x-1) N_y (N_y-1)`.
pub fn pair_accounting(lattice: &LatticeSpec) -> u64 {
    let (nx, ny) = (lattice.n_x as u64, lattice.n_y as u64);
    let mut pairs = nx * ny;
    for p in 1..nx {
        pairs += 2 * ny * (nx - p);
    }
    for q in 1..ny {
        pairs += 2 * nx * (ny - q);
    }
    for p in 1..nx {
        for q in 1..ny {
            pairs += 4 * (nx - p) * (ny - q);
        }
    }
    pairs
}

fn check_table<Q: Scalar>(table: &ATable<Q>, lattice: &LatticeSpec) -> Result<()> {
    if table.dimension != lattice.dimension {
        return Err(Error::Unsupported(format!(
            "{} A-table on a {} lattice",
            table.dimension, lattice.dimension
        )));
    }
    Ok(())
}

/// Wrap-around pairs of a periodic lattice with nearest-neighbor couplings.
fn boundary_terms<Q: Scalar>(table: &ATable<Q>, lattice: &LatticeSpec) -> Polynomial<Q> {
    let (nx, ny) = (lattice.n_x as u64, lattice.n_y as u64);
    let horizontal = nx > 1;
    let vertical = lattice.dimension == Dimension::Two && ny > 1;
    let mut bt = Polynomial::zero();
    if horizontal {
        bt += &times(&table.get(Offset::HORIZONTAL), 2 * ny);
    }
    if vertical {
        bt += &times(&table.get(Offset::VERTICAL), 2 * nx);
    }
    if horizontal && vertical {
        let diag = &table.get(Offset::DIAGONAL) + &table.get(Offset::ANTI_DIAGONAL);
        bt += &times(&diag, 2 * nx + 2 * ny - 2);
    }
    bt
}

/// Translation-invariant expansion of the commutator sum over displacements,
/// plus the wrap-around pairs for periodic lattices.
pub fn bound_expanded<Q: Scalar>(
    table: &ATable<Q>,
    lattice: &LatticeSpec,
    sim: SimParams,
) -> Result<BoundResult<Q>> {
    check_table(table, lattice)?;
    if !table.covers(lattice) {
        return Err(Error::Unsupported(format!(
            "A-table reach {:?} does not cover {lattice}",
            table.reach
        )));
    }
    let (nx, ny) = (lattice.n_x as u64, lattice.n_y as u64);
    let mut poly = times(&table.get(Offset::SELF), nx * ny);
    let mut pairs = nx * ny;
    for p in 1..nx {
        let m = 2 * ny * (nx - p);
        poly += &times(&table.get(Offset::new(0, p as i64)), m);
        pairs += m;
    }
    for q in 1..ny {
        let m = 2 * nx * (ny - q);
        poly += &times(&table.get(Offset::new(q as i64, 0)), m);
        pairs += m;
    }
    for p in 1..nx {
        for q in 1..ny {
            let m = 2 * (nx - p) * (ny - q);
            poly += &times(&table.get(Offset::new(q as i64, p as i64)), m);
            poly += &times(&table.get(Offset::new(q as i64, -(p as i64))), m);
            pairs += 2 * m;
        }
    }
    let expected = (nx * ny).pow(2);
    if pairs != expected {
        return Err(Error::PairAccounting {
            accounted: pairs,
            expected,
        });
    }
    if lattice.boundary == Boundary::Periodic {
        if !table.is_nearest_neighbor() {
            return Err(Error::Unsupported(
                "periodic expansion needs a nearest-neighbor A-table".into(),
            ));
        }
        poly += &boundary_terms(table, lattice);
    }
    Ok(BoundResult {
        method: Method::Expanded,
        model: None,
        lattice: Some(*lattice),
        polynomial: poly,
        sim,
    })
}

/// Expansion truncated to nearest-neighbor displacements.
pub fn bound_nearest<Q: Scalar>(
    table: &ATable<Q>,
    lattice: &LatticeSpec,
    sim: SimParams,
) -> Result<BoundResult<Q>> {
    check_table(table, lattice)?;
    let (nx, ny) = (lattice.n_x as u64, lattice.n_y as u64);
    let mut poly = times(&table.get(Offset::SELF), nx * ny);
    poly += &times(&table.get(Offset::HORIZONTAL), 2 * ny * (nx - 1));
    if lattice.dimension == Dimension::Two {
        poly += &times(&table.get(Offset::VERTICAL), 2 * nx * (ny - 1));
        let diag = &table.get(Offset::DIAGONAL) + &table.get(Offset::ANTI_DIAGONAL);
        poly += &times(&diag, 2 * (nx - 1) * (ny - 1));
    }
    if lattice.boundary == Boundary::Periodic {
        poly += &boundary_terms(table, lattice);
    }
    Ok(BoundResult {
        method: Method::Nearest,
        model: None,
        lattice: Some(*lattice),
        polynomial: poly,
        sim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::unit_sim;
    use crate::Rational;

    #[test]
    fn pair_count_matches_square() {
        for (nx, ny) in [(1, 1), (2, 3), (4, 4), (6, 6), (7, 2)] {
            let l = LatticeSpec::rect(nx, ny, Boundary::Open).unwrap();
            assert_eq!(pair_accounting(&l), (nx * ny * nx * ny) as u64);
        }
    }

    #[test]
    fn zero_table_gives_zero() {
        let l = LatticeSpec::rect(3, 3, Boundary::Open).unwrap();
        let table = ATable::<Rational>::new(Dimension::Two, (2, 2));
        let r = bound_expanded(&table, &l, unit_sim()).unwrap();
        assert!(r.polynomial.is_zero());
    }

    #[test]
    fn short_table_is_rejected() {
        let l = LatticeSpec::rect(4, 3, Boundary::Open).unwrap();
        let table = ATable::<Rational>::new(Dimension::Two, (1, 1));
        assert!(matches!(
            bound_expanded(&table, &l, unit_sim()),
            Err(Error::Unsupported(_))
        ));
    }
}
