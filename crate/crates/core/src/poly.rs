//! Sparse polynomials in the model parameters t, U and J.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};


use crate::lattice::ModelParams;
use crate::scalar::{to_real, Real, Scalar};

/// Model parameter appearing in a coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T,
    U,
    J,
}

/// Exponents of t, U and J.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub t: u8,
    pub u: u8,
    pub j: u8,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { t: 0, u: 0, j: 0 };
    pub const T: Monomial = Monomial { t: 1, u: 0, j: 0 };
    pub const U: Monomial = Monomial { t: 0, u: 1, j: 0 };
    pub const J: Monomial = Monomial { t: 0, u: 0, j: 1 };

    pub const fn new(t: u8, u: u8, j: u8) -> Self {
        Monomial { t, u, j }
    }

    pub fn degree(&self) -> u32 {
        self.t as u32 + self.u as u32 + self.j as u32
    }

    pub fn exponent(&self, var: Var) -> u8 {
        match var {
            Var::T => self.t,
            Var::U => self.u,
            Var::J => self.j,
        }
    }

    pub fn evaluate<F: Real>(&self, params: &ModelParams<F>) -> F {
        num_traits::Float::powi(params.t, self.t as i32)
            * num_traits::Float::powi(params.u, self.u as i32)
            * num_traits::Float::powi(params.j, self.j as i32)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial {
            t: self.t + rhs.t,
            u: self.u + rhs.u,
            j: self.j + rhs.j,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("t", self.t), ("U", self.u), ("J", self.j)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Sparse polynomial `sum_m q_m * m` over [`Monomial`]s; zero weights are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<Q> {
    terms: BTreeMap<Monomial, Q>,
}

impl<Q> Default for Polynomial<Q> {
    fn default() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }
}

impl<Q: Scalar> Polynomial<Q> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: Q) -> Self {
        Self::monomial(Monomial::ONE, q)
    }

    pub fn monomial(m: Monomial, q: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(m, q);
        p
    }

    /// `num/den * var`.
    pub fn var(var: Var, num: i64, den: i64) -> Self {
        let m = match var {
            Var::T => Monomial::T,
            Var::U => Monomial::U,
            Var::J => Monomial::J,
        };
        Self::monomial(m, Q::ratio(num, den))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, q) in iter {
            p.add_term(m, q);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, q: Q) {
        if q.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = existing.clone() + q;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, q);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn scale(&self, q: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.clone() * q.clone())))
    }

    /// Monomial-wise absolute value.
    pub fn abs(&self) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, c.abs())).collect(),
        }
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Highest exponent of `var` over all monomials.
    pub fn degree_in(&self, var: Var) -> u8 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// True when every monomial has total degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn evaluate<F: Real>(&self, params: &ModelParams<F>) -> F {
        self.terms
            .iter()
            .fold(F::zero(), |acc, (m, q)| acc + to_real::<Q, F>(q) * m.evaluate(params))
    }

    /// Convert the weights to another scalar type.
    pub fn cast<R: Scalar>(&self) -> Polynomial<R> {
        Polynomial::from_terms(self.terms.iter().map(|(m, q)| {
            let r = R::from_f64(q.to_f64().expect("finite")).expect("representable");
            (*m, r)
        }))
    }
}

impl<Q: Scalar> Add for &Polynomial<Q> {
    type Output = Polynomial<Q>;
    fn add(self, rhs: &Polynomial<Q>) -> Polynomial<Q> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<Q: Scalar> Add for Polynomial<Q> {
    type Output = Polynomial<Q>;
    fn add(mut self, rhs: Polynomial<Q>) -> Polynomial<Q> {
        self += &rhs;
        self
    }
}

impl<Q: Scalar> AddAssign<&Polynomial<Q>> for Polynomial<Q> {
    fn add_assign(&mut self, rhs: &Polynomial<Q>) {
        for (m, q) in &rhs.terms {
            self.add_term(*m, q.clone());
        }
    }
}

impl<Q: Scalar> Neg for &Polynomial<Q> {
    type Output = Polynomial<Q>;
    fn neg(self) -> Polynomial<Q> {
        Polynomial {
            terms: self.terms.iter().map(|(m, q)| (*m, -q.clone())).collect(),
        }
    }
}

impl<Q: Scalar> Neg for Polynomial<Q> {
    type Output = Polynomial<Q>;
    fn neg(self) -> Polynomial<Q> {
        -&self
    }
}

impl<Q: Scalar> Sub for &Polynomial<Q> {
    type Output = Polynomial<Q>;
    fn sub(self, rhs: &Polynomial<Q>) -> Polynomial<Q> {
        self + &(-rhs)
    }
}

impl<Q: Scalar> Sub for Polynomial<Q> {
    type Output = Polynomial<Q>;
    fn sub(self, rhs: Polynomial<Q>) -> Polynomial<Q> {
        &self - &rhs
    }
}

impl<Q: Scalar> Mul for &Polynomial<Q> {
    type Output = Polynomial<Q>;
    fn mul(self, rhs: &Polynomial<Q>) -> Polynomial<Q> {
        let mut out = Polynomial::zero();
        for (ma, qa) in &self.terms {
            for (mb, qb) in &rhs.terms {
                out.add_term(*ma * *mb, qa.clone() * qb.clone());
            }
        }
        out
    }
}

impl<Q: Scalar> Mul for Polynomial<Q> {
    type Output = Polynomial<Q>;
    fn mul(self, rhs: Polynomial<Q>) -> Polynomial<Q> {
        &self * &rhs
    }
}

impl<Q: fmt::Debug> fmt::Debug for Polynomial<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<Q: Scalar> fmt::Display for Polynomial<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest degree first, then t before U before J.
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|(a, _), (b, _)| {
            b.degree()
                .cmp(&a.degree())
                .then(b.t.cmp(&a.t))
                .then(b.u.cmp(&a.u))
                .then(b.j.cmp(&a.j))
        });
        for (idx, (m, q)) in entries.into_iter().enumerate() {
            let negative = q.is_negative();
            let mag = q.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag} {m}")?;
            }
        }
        Ok(())
    }
}
