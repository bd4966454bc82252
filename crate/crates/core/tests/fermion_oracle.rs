//! Hamiltonians built from Pauli terms against the same Hamiltonians assembled
//! from dense fermion operator matrices.

use nalgebra::DMatrix;
use num_complex::Complex;

use trotter_depth::dense::{max_abs, sum_matrix};
use trotter_depth::jw::{jw_op_sum, verify_car, FermionOp, JwOrdering};
use trotter_depth::models::{build, build_with, pauli_depth, BuildOptions};
use trotter_depth::spectra::{eigenvalues, to_dense, DenseOperator, SectorFilter};
use trotter_depth::{Boundary, LatticeSpec, Model, ModelParams, Rational};

// Jordan-Wigner images of c and c^dag are real in the computational basis.
type M = DMatrix<f64>;

fn real(m: DMatrix<Complex<f64>>) -> M {
    assert!(m.iter().all(|z| z.im == 0.0));
    m.map(|z| z.re)
}

struct Fermions {
    lattice: LatticeSpec,
    c: Vec<M>,
    cd: Vec<M>,
    n: Vec<M>,
    id: M,
}

impl Fermions {
    fn new(lattice: LatticeSpec) -> Self {
        let ordering = JwOrdering::for_lattice(&lattice);
        let p = ModelParams::new(1.0, 1.0, 1.0);
        let m = |op| real(sum_matrix(&jw_op_sum::<Rational>(op, &ordering).unwrap(), &p).unwrap());
        let q = lattice.n_qubits();
        let c: Vec<M> = (0..q).map(|k| m(FermionOp::annihilate(k))).collect();
        let cd: Vec<M> = (0..q).map(|k| m(FermionOp::create(k))).collect();
        let n = (0..q).map(|k| &cd[k] * &c[k]).collect();
        Fermions {
            lattice,
            c,
            cd,
            n,
            id: M::identity(1 << q, 1 << q),
        }
    }

    fn q(&self, s: (usize, usize), down: bool) -> usize {
        self.lattice.qubit(s.0, s.1, down)
    }

    /// Nearest-neighbor bonds, each once; periodic wraps of length-1 sides skipped.
    fn bonds(&self) -> Vec<((usize, usize), (usize, usize))> {
        let l = &self.lattice;
        let periodic = l.boundary == Boundary::Periodic;
        let mut out = Vec::new();
        for (r, c) in l.sites() {
            if c + 1 < l.n_x {
                out.push(((r, c), (r, c + 1)));
            } else if periodic && l.n_x > 1 {
                out.push(((r, c), (r, 0)));
            }
            if l.n_y > 1 {
                if r + 1 < l.n_y {
                    out.push(((r, c), (r + 1, c)));
                } else if periodic {
                    out.push(((r, c), (0, c)));
                }
            }
        }
        out
    }

    fn hubbard(&self, t: f64, u: f64) -> M {
        let mut h = M::zeros(self.id.nrows(), self.id.ncols());
        for (a, b) in self.bonds() {
            for down in [false, true] {
                let (i, j) = (self.q(a, down), self.q(b, down));
                h -= (&self.cd[i] * &self.c[j] + &self.cd[j] * &self.c[i]) * t;
            }
        }
        for s in self.lattice.sites() {
            h += (&self.n[self.q(s, false)] * &self.n[self.q(s, true)]) * u;
        }
        h
    }

    /// Projected hopping plus `J (S_a . S_b - n_a n_b / 4)`.
    fn tj(&self, t: f64, j: f64) -> M {
        let mut h = M::zeros(self.id.nrows(), self.id.ncols());
        let hole = |k: usize| &self.id - &self.n[k];
        for (a, b) in self.bonds() {
            for down in [false, true] {
                let (i, k) = (self.q(a, down), self.q(b, down));
                let (ia, kb) = (hole(self.q(a, !down)), hole(self.q(b, !down)));
                let hop = &ia * (&self.cd[i] * &self.c[k] + &self.cd[k] * &self.c[i]) * &kb;
                h -= hop * t;
            }
            let spin = |s: (usize, usize)| {
                let (u, d) = (self.q(s, false), self.q(s, true));
                let plus = &self.cd[u] * &self.c[d];
                let minus = &self.cd[d] * &self.c[u];
                let z = (&self.n[u] - &self.n[d]) * 0.5;
                let n = &self.n[u] + &self.n[d];
                (plus, minus, z, n)
            };
            let (pa, ma, za, na) = spin(a);
            let (pb, mb, zb, nb) = spin(b);
            let ss = (&pa * &mb + &ma * &pb) * 0.5 + &za * &zb;
            h += (ss - (&na * &nb) * 0.25) * j;
        }
        h
    }
}

fn lattices() -> Vec<LatticeSpec> {
    vec![
        LatticeSpec::chain(4, Boundary::Open).unwrap(),
        LatticeSpec::chain(4, Boundary::Periodic).unwrap(),
        LatticeSpec::chain(3, Boundary::Periodic).unwrap(),
        LatticeSpec::rect(2, 2, Boundary::Open).unwrap(),
        LatticeSpec::rect(2, 2, Boundary::Periodic).unwrap(),
    ]
}

fn restrict(m: &DMatrix<Complex<f64>>, basis: &[usize]) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(basis.len(), basis.len(), |r, c| m[(basis[r], basis[c])])
}

#[test]
fn hubbard_matches_fermion_construction() {
    let (t, u) = (0.7, 2.3);
    for l in lattices() {
        let f = Fermions::new(l);
        let groups = build(Model::Hubbard, &l).unwrap();
        let ours: DenseOperator = to_dense(&groups, &ModelParams::new(t, u, 0.0)).unwrap();
        let diff = max_abs(&(&ours.matrix - f.hubbard(t, u).map(Complex::from)));
        assert!(diff < 1e-12, "{l}: {diff}");
    }
}

#[test]
fn tj_matches_heisenberg_form_without_double_occupancy() {
    let (t, j) = (0.4, 1.3);
    for l in lattices() {
        let f = Fermions::new(l);
        let groups = build(Model::TJ, &l).unwrap();
        let ours: DenseOperator = to_dense(&groups, &ModelParams::new(t, 0.0, j)).unwrap();
        let basis = SectorFilter::all().no_double_occupancy().basis(l.n_qubits());
        let tj = f.tj(t, j).map(Complex::from);
        let diff = max_abs(&(restrict(&ours.matrix, &basis) - restrict(&tj, &basis)));
        assert!(diff < 1e-12, "{l}: {diff}");
    }
}

#[test]
fn hubbard_trace() {
    // Hops are traceless; each n_up n_dn has trace 2^(q-2).
    let l = LatticeSpec::chain(4, Boundary::Open).unwrap();
    let groups = build(Model::Hubbard, &l).unwrap();
    let op: DenseOperator = to_dense(&groups, &ModelParams::new(0.1, 10.0, 0.0)).unwrap();
    assert_eq!(op.dimension(), 256);
    assert!(op.is_hermitian());
    let trace: f64 = (0..256).map(|k| op.matrix[(k, k)].re).sum();
    assert!((trace - 10.0 * 4.0 * 64.0).abs() < 1e-9, "{trace}");
}

#[test]
fn particle_number_is_conserved() {
    for l in lattices() {
        let n = DenseOperator::<f64>::number_operator(l.n_qubits());
        for model in Model::ALL {
            let groups = build(model, &l).unwrap();
            let h: DenseOperator = to_dense(&groups, &ModelParams::new(0.3, 1.7, 0.9)).unwrap();
            assert!(h.commutator_defect(&n).unwrap() < 1e-10, "{model} {l}");
        }
    }
}

#[test]
fn vertical_sign_convention_leaves_spectrum_unchanged() {
    // The sign only changes for odd n_x.
    let l = LatticeSpec::rect(3, 2, Boundary::Open).unwrap();
    let p = ModelParams::new(0.5, 2.0, 0.8);
    for model in Model::ALL {
        let spectrum = |flip: bool| {
            let opts = BuildOptions {
                alternating_vertical_sign: flip,
                ..BuildOptions::default()
            };
            let groups = build_with::<Rational>(model, &l, opts).unwrap();
            let h: DenseOperator = to_dense(&groups, &p).unwrap();
            (1..=3)
                .flat_map(|k| eigenvalues(&h, SectorFilter::particles(k)).unwrap())
                .collect::<Vec<f64>>()
        };
        let (a, b) = (spectrum(false), spectrum(true));
        let worst = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-10, "{model}: {worst}");
    }
}

#[test]
fn car_on_linear_and_grid_orderings() {
    for o in (1..=6).map(JwOrdering::linear).chain([(2, 3), (3, 2), (2, 2)].map(|(r, c)| JwOrdering::grid(r, c))) {
        assert!(verify_car(&o).unwrap() < 1e-12);
    }
    assert!(verify_car(&JwOrdering::linear(7)).is_err());
}

#[test]
fn depth_grows_with_width_in_two_dimensions() {
    for model in Model::ALL {
        for n in 2..=6 {
            let l = LatticeSpec::square(n, Boundary::Open).unwrap();
            assert!(pauli_depth(&build(model, &l).unwrap()).unwrap() >= n);
        }
        let chain = LatticeSpec::chain(6, Boundary::Open).unwrap();
        let want = if model == Model::Hubbard { 3 } else { 4 };
        assert_eq!(pauli_depth(&build(model, &chain).unwrap()).unwrap(), want);
    }
}
