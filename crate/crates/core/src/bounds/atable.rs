use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Boundary, Dimension, LatticeSpec, Model};
use crate::models::{build_with, Accounting, BuildOptions, SiteTermGroup};
use crate::pauli::commutator_norm;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;
use crate::Rational;

/// Displacement `(rows, cols)` from the first site of a pair to the second.
///
/// Stored in canonical form: `rows > 0`, or `rows == 0` and `cols >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Offset {
    pub rows: i64,
    pub cols: i64,
}

impl Offset {
    pub const SELF: Offset = Offset { rows: 0, cols: 0 };
    pub const HORIZONTAL: Offset = Offset { rows: 0, cols: 1 };
    pub const VERTICAL: Offset = Offset { rows: 1, cols: 0 };
    pub const DIAGONAL: Offset = Offset { rows: 1, cols: 1 };
    pub const ANTI_DIAGONAL: Offset = Offset { rows: 1, cols: -1 };

    pub const fn new(rows: i64, cols: i64) -> Self {
        Offset { rows, cols }
    }

    pub fn canonical(self) -> Offset {
        if self.rows > 0 || (self.rows == 0 && self.cols >= 0) {
            self
        } else {
            Offset {
                rows: -self.rows,
                cols: -self.cols,
            }
        }
    }

    pub fn is_nearest(self) -> bool {
        let c = self.canonical();
        c.rows <= 1 && c.cols.abs() <= 1
    }
}

impl fmt::Display for Offset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rows, self.cols)
    }
}

/// `A` for one pair of groups: the commutator-norm sum and the number of
/// non-commuting ordered term pairs per monomial of `|c_1| |c_2|`.
#[derive(Clone, Debug, PartialEq)]
pub struct AEntry<Q = Rational> {
    pub polynomial: Polynomial<Q>,
    pub counts: BTreeMap<Monomial, u64>,
}

impl<Q: Scalar> AEntry<Q> {
    pub fn zero() -> Self {
        AEntry {
            polynomial: Polynomial::zero(),
            counts: BTreeMap::new(),
        }
    }

    pub fn nonzero_pairs(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Sum of `|| [H^d1, H^d2] ||` over all term pairs of two groups.
pub fn compute_a<Q: Scalar>(g1: &SiteTermGroup<Q>, g2: &SiteTermGroup<Q>) -> Result<AEntry<Q>> {
    let mut entry = AEntry::zero();
    for a in &g1.terms {
        for b in &g2.terms {
            let c = commutator_norm(a, b)?;
            if c.is_zero() {
                continue;
            }
            for m in c.monomials() {
                *entry.counts.entry(*m).or_insert(0) += 1;
            }
            entry.polynomial += &c;
        }
    }
    Ok(entry)
}

/// `A` values of a translation-invariant model keyed by canonical offset.
#[derive(Clone, Debug, PartialEq)]
pub struct ATable<Q = Rational> {
    pub dimension: Dimension,
    /// Largest `|rows|` and `|cols|` covered.
    pub reach: (i64, i64),
    entries: BTreeMap<Offset, AEntry<Q>>,
}

impl<Q: Scalar> ATable<Q> {
    pub fn new(dimension: Dimension, reach: (i64, i64)) -> Self {
        ATable {
            dimension,
            reach,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, offset: Offset, entry: AEntry<Q>) {
        self.entries.insert(offset.canonical(), entry);
    }

    pub fn entry(&self, offset: Offset) -> Option<&AEntry<Q>> {
        self.entries.get(&offset.canonical())
    }

    /// `A` at `offset`; zero when not stored.
    pub fn get(&self, offset: Offset) -> Polynomial<Q> {
        self.entry(offset)
            .map(|e| e.polynomial.clone())
            .unwrap_or_else(Polynomial::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Offset, &AEntry<Q>)> {
        self.entries.iter()
    }

    pub fn covers(&self, lattice: &LatticeSpec) -> bool {
        self.reach.0 >= lattice.n_y as i64 - 1 && self.reach.1 >= lattice.n_x as i64 - 1
    }

    /// True when every stored entry beyond nearest neighbors is zero.
    pub fn is_nearest_neighbor(&self) -> bool {
        self.entries
            .iter()
            .all(|(o, e)| o.is_nearest() || e.polynomial.is_zero())
    }

    /// Table of `model` for every offset with `|rows| <= reach.0`, `|cols| <= reach.1`.
    ///
    /// The values are read off complete groups of an open lattice large enough
    /// that the first site of every pair sits in the middle column.
    pub fn from_model(model: Model, dimension: Dimension, reach: (i64, i64)) -> Result<Self> {
        let (rr, rc) = reach;
        if rr < 0 || rc < 0 || (dimension == Dimension::One && rr != 0) {
            return Err(Error::InvalidParams(format!("bad A-table reach {reach:?}")));
        }
        let (lattice, origin) = match dimension {
            Dimension::One => (LatticeSpec::chain(rc as usize + 1, Boundary::Open)?, (0, 0)),
            Dimension::Two => (
                LatticeSpec::rect(2 * rc as usize + 1, rr as usize + 1, Boundary::Open)?,
                (0, rc as usize),
            ),
        };
        let groups = build_with::<Q>(
            model,
            &lattice,
            BuildOptions {
                accounting: Accounting::Complete,
                ..BuildOptions::default()
            },
        )?;
        let at = |r: usize, c: usize| &groups[lattice.site_index(r, c)];
        let g0 = at(origin.0, origin.1);
        let mut table = ATable::new(dimension, reach);
        for q in 0..=rr {
            let min_p = if q == 0 { 0 } else { -rc };
            for p in min_p..=rc {
                let col = origin.1 as i64 + p;
                if col < 0 || col >= lattice.n_x as i64 {
                    continue;
                }
                let g = at(q as usize, col as usize);
                table.insert(Offset::new(q, p), compute_a(g0, g)?);
            }
        }
        Ok(table)
    }

    /// Table covering every displacement that fits in `lattice`.
    pub fn for_lattice(model: Model, lattice: &LatticeSpec) -> Result<Self> {
        Self::from_model(
            model,
            lattice.dimension,
            (lattice.n_y as i64 - 1, lattice.n_x as i64 - 1),
        )
    }

    /// Nearest-neighbor table.
    pub fn nearest(model: Model, dimension: Dimension) -> Result<Self> {
        match dimension {
            Dimension::One => Self::from_model(model, dimension, (0, 1)),
            Dimension::Two => Self::from_model(model, dimension, (1, 1)),
        }
    }
}
