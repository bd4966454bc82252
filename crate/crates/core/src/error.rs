use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("site {site} is outside a register of {n_sites} sites")]
    InvalidSite { site: usize, n_sites: usize },

    #[error("operator is not Hermitian: {0}")]
    NonHermitian(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("dense construction needs {needed} qubits, budget is {budget}")]
    QubitBudget { needed: usize, budget: usize },

    #[error("pair accounting mismatch: accounted {accounted} pairs, expected {expected}")]
    PairAccounting { accounted: u64, expected: u64 },

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("commutator bound is zero; the Hamiltonian is commuting")]
    CommutingHamiltonian,

    #[error("golden table mismatch for {model}:\n{diff}")]
    GoldenMismatch { model: String, diff: String },

    #[error("fixture parse error at line {line}: {message}")]
    Fixture { line: usize, message: String },

    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),

    #[error("spectrum comparison: {0}")]
    Spectrum(String),

    #[error("output: {0}")]
    Output(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
