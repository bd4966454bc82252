//! Dense Hamiltonians and exact diagonalization in particle-number sectors.
//!
//! Basis index bit `q` is the value of qubit `q`; a spin-orbital is occupied
//! when its qubit is `0` (`n = (I + Z) / 2`).

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::dense::{max_abs, terms_matrix};
use crate::error::{Error, Result};
use crate::lattice::{Boundary, LatticeSpec, Model, ModelParams};
use crate::models::{build_with, BuildOptions, SiteTermGroup};
use crate::pauli::HamTerm;
use crate::scalar::{Real, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator<T: Real = f64> {
    pub n_qubits: usize,
    pub matrix: DMatrix<Complex<T>>,
}

fn tolerance<T: Real>(scale: T) -> T {
    let floor = T::from_f64(1e-12).expect("tolerance");
    let eps = T::epsilon() * T::from_f64(100.0).expect("tolerance");
    let base = if eps > floor { eps } else { floor };
    let one = T::one();
    base * if scale > one { scale } else { one }
}

impl<T: Real> DenseOperator<T> {
    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    /// Largest entry of `M - M^dagger`.
    pub fn hermiticity_defect(&self) -> T {
        let m = &self.matrix;
        let mut worst = T::zero();
        for c in 0..m.ncols() {
            for r in 0..=c {
                let d = (m[(r, c)] - m[(c, r)].conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= tolerance(max_abs(&self.matrix))
    }

    /// `sum_k n_k` on `n_qubits` spin-orbitals.
    pub fn number_operator(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let mut matrix = DMatrix::zeros(dim, dim);
        for b in 0..dim {
            matrix[(b, b)] = Complex::new(T::from_usize(occupation(b, n_qubits)).expect("count"), T::zero());
        }
        DenseOperator { n_qubits, matrix }
    }

    /// Largest entry of `[self, other]`.
    pub fn commutator_defect(&self, other: &Self) -> Result<T> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::SizeMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        let c = &self.matrix * &other.matrix - &other.matrix * &self.matrix;
        Ok(max_abs(&c))
    }
}

/// Number of occupied spin-orbitals in basis state `b`.
pub fn occupation(b: usize, n_qubits: usize) -> usize {
    n_qubits - (b & ((1usize << n_qubits) - 1)).count_ones() as usize
}

/// True when some pair `(2k, 2k+1)` is occupied twice.
pub fn doubly_occupied(b: usize, n_qubits: usize) -> bool {
    (0..n_qubits / 2).any(|k| (b >> (2 * k)) & 0b11 == 0)
}

/// Dense sum of flat terms at `params`.
pub fn terms_to_dense<Q: Scalar, T: Real>(
    terms: &[HamTerm<Q>],
    n_qubits: usize,
    params: &ModelParams<T>,
) -> Result<DenseOperator<T>> {
    Ok(DenseOperator {
        n_qubits,
        matrix: terms_matrix(terms, n_qubits, params)?,
    })
}

/// Dense Hamiltonian of all groups at `params`.
pub fn to_dense<Q: Scalar, T: Real>(
    groups: &[SiteTermGroup<Q>],
    params: &ModelParams<T>,
) -> Result<DenseOperator<T>> {
    let n_qubits = groups
        .iter()
        .find_map(|g| g.n_qubits())
        .ok_or(Error::EmptyInput("term groups"))?;
    let terms: Vec<HamTerm<Q>> = groups.iter().flat_map(|g| g.terms.iter().cloned()).collect();
    terms_to_dense(&terms, n_qubits, params)
}

/// Basis-state mask selecting a sector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorFilter {
    pub particle_number: Option<usize>,
    pub exclude_double_occupancy: bool,
}

impl SectorFilter {
    pub fn all() -> Self {
        Self::default()
    }

    pub fn particles(n: usize) -> Self {
        SectorFilter {
            particle_number: Some(n),
            exclude_double_occupancy: false,
        }
    }

    pub fn no_double_occupancy(mut self) -> Self {
        self.exclude_double_occupancy = true;
        self
    }

    pub fn accepts(&self, b: usize, n_qubits: usize) -> bool {
        self.particle_number.map_or(true, |n| occupation(b, n_qubits) == n)
            && !(self.exclude_double_occupancy && doubly_occupied(b, n_qubits))
    }

    pub fn basis(&self, n_qubits: usize) -> Vec<usize> {
        (0..1usize << n_qubits).filter(|&b| self.accepts(b, n_qubits)).collect()
    }
}

/// Ascending eigenvalues of `op` restricted to the states accepted by `filter`.
pub fn eigenvalues<T: Real>(op: &DenseOperator<T>, filter: SectorFilter) -> Result<Vec<T>> {
    let defect = op.hermiticity_defect();
    if defect > tolerance(max_abs(&op.matrix)) {
        return Err(Error::NonHermitian(format!("max |M - M^dagger| = {defect}")));
    }
    let basis = filter.basis(op.n_qubits);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let block = DMatrix::from_fn(basis.len(), basis.len(), |r, c| op.matrix[(basis[r], basis[c])]);
    let mut values: Vec<T> = SymmetricEigen::new(block).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalue"));
    Ok(values)
}

/// Deviation in units of `J` between the two four-site spectra at
/// `t = 0.1`, `U = 10`, from a reference diagonalization.
pub const FOUR_SITE_DEVIATION_J: f64 = 9.3236e-4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub levels: usize,
    /// Hubbard ground energy minus t-J ground energy.
    pub offset: f64,
    pub max_deviation: f64,
    /// `max_deviation / J`.
    pub deviation_in_j: f64,
}

/// Compare the lowest `tj.len()` Hubbard levels with the t-J levels after
/// shifting both ground states to zero.
pub fn spectrum_overlap(hub: &[f64], tj: &[f64], tolerance_scale: f64) -> Result<OverlapReport> {
    if hub.is_empty() || tj.is_empty() {
        return Err(Error::EmptyInput("spectrum"));
    }
    if tj.len() > hub.len() {
        return Err(Error::Spectrum(format!(
            "{} t-J levels but only {} Hubbard levels",
            tj.len(),
            hub.len()
        )));
    }
    if !(tolerance_scale > 0.0) {
        return Err(Error::InvalidParams("tolerance scale must be positive".into()));
    }
    let max_deviation = hub
        .iter()
        .zip(tj)
        .map(|(h, j)| ((h - hub[0]) - (j - tj[0])).abs())
        .fold(0.0, f64::max);
    Ok(OverlapReport {
        levels: tj.len(),
        offset: hub[0] - tj[0],
        max_deviation,
        deviation_in_j: max_deviation / tolerance_scale,
    })
}

/// Low-energy comparison of the two models on an open chain at fixed filling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapSetup {
    pub n_sites: usize,
    pub particles: usize,
    pub t: f64,
    pub u: f64,
    /// Restrict the t-J spectrum to states without doubly occupied sites.
    pub exclude_double_occupancy: bool,
}

impl OverlapSetup {
    /// Four sites at half filling, `t = 0.1`, `U = 10`.
    pub fn four_site() -> Self {
        OverlapSetup {
            n_sites: 4,
            particles: 4,
            t: 0.1,
            u: 10.0,
            exclude_double_occupancy: true,
        }
    }

    pub fn with_u(mut self, u: f64) -> Self {
        self.u = u;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapRun {
    pub setup: OverlapSetup,
    pub j: f64,
    pub hubbard: Vec<f64>,
    pub tj: Vec<f64>,
    pub report: OverlapReport,
}

/// Spectrum of `model` on `lattice` in `filter`.
pub fn lattice_spectrum(
    model: Model,
    lattice: &LatticeSpec,
    options: BuildOptions,
    params: &ModelParams,
    filter: SectorFilter,
) -> Result<Vec<f64>> {
    let groups = build_with::<crate::Rational>(model, lattice, options)?;
    eigenvalues(&to_dense(&groups, params)?, filter)
}

/// Spectrum of `model` on an open chain in `filter`.
pub fn chain_spectrum(
    model: Model,
    n_sites: usize,
    params: &ModelParams,
    filter: SectorFilter,
) -> Result<Vec<f64>> {
    let lattice = LatticeSpec::chain(n_sites, Boundary::Open)?;
    lattice_spectrum(model, &lattice, BuildOptions::default(), params, filter)
}

pub fn overlap_run(setup: OverlapSetup) -> Result<OverlapRun> {
    let params = ModelParams::derived(setup.t, setup.u)?;
    let sector = SectorFilter::particles(setup.particles);
    let tj_sector = SectorFilter {
        exclude_double_occupancy: setup.exclude_double_occupancy,
        ..sector
    };
    let (hubbard, tj) = rayon::join(
        || chain_spectrum(Model::Hubbard, setup.n_sites, &params, sector),
        || chain_spectrum(Model::TJ, setup.n_sites, &params, tj_sector),
    );
    let (hubbard, tj) = (hubbard?, tj?);
    let report = spectrum_overlap(&hubbard, &tj, params.j)?;
    Ok(OverlapRun {
        setup,
        j: params.j,
        hubbard,
        tj,
        report,
    })
}
