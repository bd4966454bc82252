//! Pauli strings in symplectic form and weighted sums of them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Global phase `i^k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    #[default]
    One,
    I,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn exponent(self) -> u8 {
        match self {
            Phase::One => 0,
            Phase::I => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn from_exponent(k: u32) -> Phase {
        match k % 4 {
            0 => Phase::One,
            1 => Phase::I,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn times(self, other: Phase) -> Phase {
        Phase::from_exponent(self.exponent() as u32 + other.exponent() as u32)
    }

    pub fn is_real(self) -> bool {
        matches!(self, Phase::One | Phase::MinusOne)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::One => "+",
            Phase::I => "+i",
            Phase::MinusOne => "-",
            Phase::MinusI => "-i",
        })
    }
}

/// Single-qubit Pauli operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }
}

const WORD: usize = 64;

fn n_words(n_qubits: usize) -> usize {
    n_qubits.div_ceil(WORD)
}

fn popcount_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// `phase * P_1 (x) P_2 (x) ...` stored as x/z bit masks.
///
/// Y on a qubit sets both its x and z bit. The canonical ordering is
/// lexicographic on `(x mask, z mask)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n_qubits: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: Phase,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        let w = n_words(n_qubits);
        PauliString {
            n_qubits,
            x: vec![0; w],
            z: vec![0; w],
            phase: Phase::One,
        }
    }

    /// Single-qubit operator `p` on `qubit`.
    pub fn single(n_qubits: usize, qubit: usize, p: Pauli) -> Result<Self> {
        let mut s = Self::identity(n_qubits);
        s.set(qubit, p)?;
        Ok(s)
    }

    /// Product of the listed single-qubit operators, taken left to right.
    pub fn from_ops<I>(n_qubits: usize, ops: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Pauli)>,
    {
        let mut acc = Self::identity(n_qubits);
        for (q, p) in ops {
            acc = acc.multiply(&Self::single(n_qubits, q, p)?)?;
        }
        Ok(acc)
    }

    /// Parse a dense label such as `XIZY`; character `k` acts on qubit `k`.
    pub fn parse(label: &str) -> Result<Self> {
        let chars: Vec<char> = label.chars().collect();
        let mut s = Self::identity(chars.len());
        for (q, c) in chars.into_iter().enumerate() {
            let p = Pauli::from_char(c)
                .ok_or_else(|| Error::InvalidParams(format!("bad Pauli character `{c}`")))?;
            s.set(q, p)?;
        }
        Ok(s)
    }

    fn set(&mut self, qubit: usize, p: Pauli) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::InvalidSite {
                site: qubit,
                n_sites: self.n_qubits,
            });
        }
        let (xb, zb) = p.bits();
        let (w, b) = (qubit / WORD, qubit % WORD);
        let mask = 1u64 << b;
        self.x[w] = (self.x[w] & !mask) | if xb { mask } else { 0 };
        self.z[w] = (self.z[w] & !mask) | if zb { mask } else { 0 };
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn pauli_at(&self, qubit: usize) -> Pauli {
        let (w, b) = (qubit / WORD, qubit % WORD);
        let xb = (self.x[w] >> b) & 1 == 1;
        let zb = (self.z[w] >> b) & 1 == 1;
        match (xb, zb) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|&q| self.pauli_at(q) != Pauli::I)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    fn check_size(&self, other: &PauliString) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::SizeMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(())
    }

    /// Operator product `self * other`, phase included.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_size(other)?;
        let x: Vec<u64> = self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect();
        let z: Vec<u64> = self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect();
        // Each factor is i^{|x&z|} X^x Z^z; moving Z^{z1} past X^{x2} costs (-1)^{|z1&x2|}.
        let k = 2 * popcount_and(&self.z, &other.x)
            + popcount_and(&self.x, &self.z)
            + popcount_and(&other.x, &other.z)
            + 3 * popcount_and(&x, &z)
            + self.phase.exponent() as u32
            + other.phase.exponent() as u32;
        Ok(PauliString {
            n_qubits: self.n_qubits,
            x,
            z,
            phase: Phase::from_exponent(k),
        })
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &PauliString) -> bool {
        let mut parity = 0u32;
        for i in 0..self.x.len() {
            parity ^= (self.x[i] & other.z[i]).count_ones() ^ (self.z[i] & other.x[i]).count_ones();
        }
        parity & 1 == 0
    }

    /// Dense label, one character per qubit.
    pub fn label(&self) -> String {
        (0..self.n_qubits).map(|q| self.pauli_at(q).as_char()).collect()
    }

    /// Sparse label such as `X0 Z1 Y5`, or `I`.
    pub fn sparse_label(&self) -> String {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|q| format!("{}{}", self.pauli_at(q).as_char(), q))
            .collect();
        if parts.is_empty() {
            "I".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase != Phase::One {
            write!(f, "{} ", self.phase)?;
        }
        f.write_str(&self.sparse_label())
    }
}

/// Weighted Hermitian Pauli term `coefficient * pauli`.
#[derive(Clone, Debug, PartialEq)]
pub struct HamTerm<Q> {
    pub coefficient: Polynomial<Q>,
    pub pauli: PauliString,
}

impl<Q: Scalar> HamTerm<Q> {
    /// Folds a real phase of `pauli` into the coefficient; imaginary phases are rejected.
    pub fn new(coefficient: Polynomial<Q>, pauli: PauliString) -> Result<Self> {
        match pauli.phase() {
            Phase::One => Ok(HamTerm { coefficient, pauli }),
            Phase::MinusOne => Ok(HamTerm {
                coefficient: -coefficient,
                pauli: pauli.with_phase(Phase::One),
            }),
            _ => Err(Error::NonHermitian(format!("{coefficient} * ({pauli})"))),
        }
    }
}

impl<Q: Scalar> fmt::Display for HamTerm<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.coefficient, self.pauli)
    }
}

/// `|| [a, b] ||` bound for two Hermitian terms: zero when they commute,
/// `2 |c_a| |c_b|` (monomial-wise) otherwise.
pub fn commutator_norm<Q: Scalar>(a: &HamTerm<Q>, b: &HamTerm<Q>) -> Result<Polynomial<Q>> {
    if a.pauli.commutes(&b.pauli)? {
        Ok(Polynomial::zero())
    } else {
        Ok((&a.coefficient.abs() * &b.coefficient.abs()).scale(&Q::ratio(2, 1)))
    }
}

/// Complex coefficient `re + i im`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly<Q> {
    pub re: Polynomial<Q>,
    pub im: Polynomial<Q>,
}

impl<Q: Scalar> ComplexPoly<Q> {
    pub fn real(re: Polynomial<Q>) -> Self {
        ComplexPoly {
            re,
            im: Polynomial::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, other: &ComplexPoly<Q>) -> ComplexPoly<Q> {
        ComplexPoly {
            re: &(&self.re * &other.re) - &(&self.im * &other.im),
            im: &(&self.re * &other.im) + &(&self.im * &other.re),
        }
    }

    /// Multiply by `i^k`.
    fn rotate(self, phase: Phase) -> ComplexPoly<Q> {
        match phase {
            Phase::One => self,
            Phase::I => ComplexPoly {
                re: -self.im,
                im: self.re,
            },
            Phase::MinusOne => ComplexPoly {
                re: -self.re,
                im: -self.im,
            },
            Phase::MinusI => ComplexPoly {
                re: self.im,
                im: -self.re,
            },
        }
    }
}

/// Sum of Pauli strings with complex polynomial coefficients; like strings are merged.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum<Q> {
    n_qubits: usize,
    terms: BTreeMap<PauliString, ComplexPoly<Q>>,
}

impl<Q: Scalar> PauliSum<Q> {
    pub fn zero(n_qubits: usize) -> Self {
        PauliSum {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_qubits: usize) -> Self {
        let mut s = Self::zero(n_qubits);
        s.add_pauli(PauliString::identity(n_qubits), Polynomial::constant(Q::one()));
        s
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `coefficient * pauli`, the phase of `pauli` included.
    pub fn add_pauli(&mut self, pauli: PauliString, coefficient: Polynomial<Q>) {
        self.add_complex(pauli, ComplexPoly::real(coefficient));
    }

    pub fn add_complex(&mut self, pauli: PauliString, coefficient: ComplexPoly<Q>) {
        let phase = pauli.phase();
        let key = pauli.with_phase(Phase::One);
        let c = coefficient.rotate(phase);
        let entry = self.terms.entry(key.clone()).or_insert_with(|| ComplexPoly {
            re: Polynomial::zero(),
            im: Polynomial::zero(),
        });
        entry.re += &c.re;
        entry.im += &c.im;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_sum(&mut self, other: &PauliSum<Q>) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::SizeMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        for (p, c) in &other.terms {
            self.add_complex(p.clone(), c.clone());
        }
        Ok(())
    }

    pub fn multiply(&self, other: &PauliSum<Q>) -> Result<PauliSum<Q>> {
        let mut out = PauliSum::zero(self.n_qubits);
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let p = pa.multiply(pb)?;
                out.add_complex(p, ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Polynomial<Q>) -> PauliSum<Q> {
        let mut out = PauliSum::zero(self.n_qubits);
        for (p, c) in &self.terms {
            out.add_complex(
                p.clone(),
                ComplexPoly {
                    re: &c.re * factor,
                    im: &c.im * factor,
                },
            );
        }
        out
    }

    /// Hermitian conjugate.
    pub fn adjoint(&self) -> PauliSum<Q> {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| {
                    (
                        p.clone(),
                        ComplexPoly {
                            re: c.re.clone(),
                            im: -&c.im,
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &ComplexPoly<Q>)> {
        self.terms.iter()
    }

    /// Real-weighted terms; fails if any string carries an imaginary weight.
    pub fn into_hermitian_terms(self) -> Result<Vec<HamTerm<Q>>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (p, c) in self.terms {
            if !c.im.is_zero() {
                return Err(Error::NonHermitian(format!("i ({}) {}", c.im, p)));
            }
            out.push(HamTerm {
                coefficient: c.re,
                pauli: p,
            });
        }
        Ok(out)
    }

    /// Terms with phase `+1` or `+i`; the imaginary parts are kept as `+i` strings.
    pub fn to_terms(&self) -> Vec<HamTerm<Q>> {
        let mut out = Vec::new();
        for (p, c) in &self.terms {
            if !c.re.is_zero() {
                out.push(HamTerm {
                    coefficient: c.re.clone(),
                    pauli: p.clone(),
                });
            }
            if !c.im.is_zero() {
                out.push(HamTerm {
                    coefficient: c.im.clone(),
                    pauli: p.clone().with_phase(Phase::I),
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn p(s: &str) -> PauliString {
        PauliString::parse(s).unwrap()
    }

    #[test]
    fn single_qubit_products() {
        assert_eq!(p("X").multiply(&p("Y")).unwrap(), p("Z").with_phase(Phase::I));
        assert_eq!(p("Y").multiply(&p("X")).unwrap(), p("Z").with_phase(Phase::MinusI));
        assert_eq!(p("Y").multiply(&p("Z")).unwrap(), p("X").with_phase(Phase::I));
        assert_eq!(p("Z").multiply(&p("X")).unwrap(), p("Y").with_phase(Phase::I));
        assert_eq!(p("Y").multiply(&p("Y")).unwrap(), p("I"));
        assert_eq!(p("Z").multiply(&p("Y")).unwrap(), p("X").with_phase(Phase::MinusI));
    }

    #[test]
    fn two_qubit_product() {
        // (X Y)(Y X) = (XY) (x) (YX) = (iZ) (x) (-iZ) = ZZ
        assert_eq!(p("XY").multiply(&p("YX")).unwrap(), p("ZZ"));
        assert!(p("XY").commutes(&p("YX")).unwrap());
        assert!(!p("XI").commutes(&p("ZZ")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
    }

    #[test]
    fn multiword_masks() {
        let a = PauliString::from_ops(130, [(0, Pauli::X), (70, Pauli::Y), (129, Pauli::Z)]).unwrap();
        let b = PauliString::from_ops(130, [(70, Pauli::Z), (129, Pauli::X)]).unwrap();
        assert_eq!(a.weight(), 3);
        assert_eq!(a.support(), vec![0, 70, 129]);
        assert!(a.commutes(&b).unwrap());
        let c = PauliString::single(130, 129, Pauli::X).unwrap();
        assert!(!a.commutes(&c).unwrap());
        assert_eq!(a.pauli_at(70), Pauli::Y);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(matches!(
            p("XX").multiply(&p("X")),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(p("XX").commutes(&p("XXX")).is_err());
    }

    #[test]
    fn commutator_norm_rule() {
        let half = Polynomial::var(crate::Var::T, -1, 2);
        let a = HamTerm::<Rational>::new(half.clone(), p("XZ")).unwrap();
        let b = HamTerm::new(Polynomial::var(crate::Var::U, 1, 4), p("ZI")).unwrap();
        let n = commutator_norm(&a, &b).unwrap();
        assert_eq!(n.to_string(), "1/4 t U");
        let c = HamTerm::new(half, p("ZZ")).unwrap();
        assert!(commutator_norm(&b, &c).unwrap().is_zero());
    }

    #[test]
    fn ham_term_rejects_imaginary_phase() {
        let c = Polynomial::<Rational>::var(crate::Var::T, 1, 1);
        assert!(HamTerm::new(c.clone(), p("X").with_phase(Phase::I)).is_err());
        let t = HamTerm::new(c, p("X").with_phase(Phase::MinusOne)).unwrap();
        assert_eq!(t.coefficient.to_string(), "-t");
    }

    #[test]
    fn pauli_sum_merges_and_conjugates() {
        let one = || Polynomial::<Rational>::constant(Rational::new(1, 2));
        // sigma^+ = (X + iY)/2 ; sigma^+ sigma^- = (I + Z)/2
        let mut sp = PauliSum::zero(1);
        sp.add_pauli(p("X"), one());
        sp.add_pauli(p("Y").with_phase(Phase::I), one());
        let sm = sp.adjoint();
        let prod = sp.multiply(&sm).unwrap();
        assert!(prod.is_hermitian());
        let terms = prod.into_hermitian_terms().unwrap();
        assert_eq!(terms.len(), 2);
        let z = terms.iter().find(|t| t.pauli == p("Z")).unwrap();
        assert_eq!(z.coefficient, one());
        let sq = sp.multiply(&sp).unwrap();
        assert!(sq.is_empty());
    }
}
