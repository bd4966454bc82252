use nalgebra::DMatrix;
use num_complex::Complex;
use proptest::prelude::*;

use trotter_depth::dense::{max_abs, pauli_matrix, spectral_norm};
use trotter_depth::{PauliString, Phase};

fn label(n: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('I'), Just('X'), Just('Y'), Just('Z')], n)
        .prop_map(|v| v.into_iter().collect())
}

fn same_size_pair() -> impl Strategy<Value = (String, String)> {
    (1usize..=5).prop_flat_map(|n| (label(n), label(n)))
}

fn dense(p: &PauliString) -> DMatrix<Complex<f64>> {
    pauli_matrix(p).unwrap()
}

proptest! {
    #[test]
    fn product_matches_matrices((a, b) in same_size_pair(), k in 0u32..4) {
        let pa = PauliString::parse(&a).unwrap().with_phase(Phase::from_exponent(k));
        let pb = PauliString::parse(&b).unwrap();
        let prod = pa.multiply(&pb).unwrap();
        prop_assert!(max_abs(&(dense(&pa) * dense(&pb) - dense(&prod))) < 1e-13);
    }

    #[test]
    fn commutation_matches_matrices((a, b) in same_size_pair()) {
        let pa = PauliString::parse(&a).unwrap();
        let pb = PauliString::parse(&b).unwrap();
        let (ma, mb) = (dense(&pa), dense(&pb));
        let commutator = max_abs(&(&ma * &mb - &mb * &ma));
        prop_assert_eq!(pa.commutes(&pb).unwrap(), commutator < 1e-13);
        prop_assert_eq!(pa.commutes(&pb).unwrap(), pb.commutes(&pa).unwrap());
    }

    #[test]
    fn hermitian_strings_square_to_identity(a in (1usize..=6).prop_flat_map(label)) {
        let p = PauliString::parse(&a).unwrap();
        let sq = p.multiply(&p).unwrap();
        prop_assert!(sq.is_identity());
        prop_assert_eq!(sq.phase(), Phase::One);
    }

    #[test]
    fn weight_counts_non_identity(a in (1usize..=8).prop_flat_map(label)) {
        let p = PauliString::parse(&a).unwrap();
        prop_assert_eq!(p.weight(), a.chars().filter(|&c| c != 'I').count());
        prop_assert_eq!(p.label(), a);
    }

    #[test]
    fn unit_spectral_norm(a in (1usize..=5).prop_flat_map(label), k in 0u32..4) {
        let p = PauliString::parse(&a).unwrap().with_phase(Phase::from_exponent(k));
        prop_assert!((spectral_norm(&dense(&p)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn associativity((a, b) in same_size_pair(), c in 0u32..4) {
        let pa = PauliString::parse(&a).unwrap();
        let pb = PauliString::parse(&b).unwrap().with_phase(Phase::from_exponent(c));
        let pc = PauliString::parse(&a.chars().rev().collect::<String>()).unwrap();
        let left = pa.multiply(&pb).unwrap().multiply(&pc).unwrap();
        let right = pa.multiply(&pb.multiply(&pc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn wide_registers_span_words() {
    let n = 130;
    let mut a = "I".repeat(n);
    a.replace_range(0..1, "X");
    a.replace_range(129..130, "Z");
    let mut b = "I".repeat(n);
    b.replace_range(0..1, "Z");
    b.replace_range(129..130, "X");
    let pa = PauliString::parse(&a).unwrap();
    let pb = PauliString::parse(&b).unwrap();
    // Two anticommuting positions: the strings commute.
    assert!(pa.commutes(&pb).unwrap());
    let prod = pa.multiply(&pb).unwrap();
    assert_eq!(prod.weight(), 2);
    assert_eq!(prod.support(), vec![0, 129]);
}
