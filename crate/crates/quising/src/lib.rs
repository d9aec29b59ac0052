//! Free-fermion toolbox for clean and disordered quantum Ising/XY chains.
//!
//! The spin chain
//!
//! ```text
//! H = -Σ_j (Jx_j σˣ_j σˣ_{j+1} + Jy_j σʸ_j σʸ_{j+1}) - Σ_j h_j σᶻ_j
//! ```
//!
//! with `Jx_j = J_j (1+κ)/2`, `Jy_j = J_j (1-κ)/2` maps under the Jordan-Wigner
//! transformation onto a quadratic fermion problem, one per fermion-parity
//! sector. Everything in this crate flows from that mapping:
//!
//! - [`model`] — chain specifications and the 2L×2L Nambu (Bogoliubov-de Gennes)
//!   matrix per parity sector;
//! - [`uniform`] — closed-form momentum-space results for the translation
//!   invariant chain (dispersion, sector ground energies, winding index);
//! - [`bdg`] — dense diagonalization of arbitrary BdG matrices, zero-mode
//!   canonicalization, localization diagnostics;
//! - [`gaussian`] — pairing matrices, Pfaffians, Onishi overlaps between
//!   Bogoliubov vacua and excited Fock states;
//! - [`dynamics`] — time-dependent BdG propagation, Green functions, Majorana
//!   correlations, quench/annealing observables;
//! - [`floquet`] — one-period monodromy, quasi-energies, periodic modes;
//! - [`thermal`] — parity-projected thermal averages;
//! - [`observables`] — spin observables from Gaussian data: magnetization,
//!   string correlators, fermion parity, entanglement entropy;
//! - [`ed_oracle`] — brute-force exact diagonalization of the spin chain at
//!   small size, the ground truth the rest of the crate is tested against;
//! - [`cli`] — the experiment harness behind the `quising` binary.
//!
//! All energies are in units of a reference coupling (J = 1 by default) and
//! ħ = 1 throughout. Static matrices are real: the momentum-space phase
//! convention is fixed so that pairing amplitudes stay in the y-z pseudo-spin
//! plane.

pub mod bdg;
pub mod cli;
pub mod dynamics;
pub mod ed_oracle;
pub mod floquet;
pub mod gaussian;
pub mod model;
pub mod observables;
pub mod thermal;
pub mod uniform;

use thiserror::Error;

pub use model::{BdgMatrix, BoundaryCondition, ChainSpec, ParitySector};

/// Crate version string, echoed in all data-file headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum Error {
    #[error("chain needs at least {min} sites, got {got}")]
    InvalidSize { got: usize, min: usize },
    #[error("invalid range [{lo}, {hi}]: {why}")]
    InvalidRange { lo: f64, hi: f64, why: &'static str },
    #[error("momentum grids require an even site count, got {0}")]
    UnsupportedSize(usize),
    #[error("dispersion vanishes at k = {k}: Bogoliubov amplitudes undefined")]
    DegeneratePoint { k: f64 },
    #[error("winding index undefined: dispersion curve passes within {min_r:.3e} of the origin")]
    UndefinedIndex { min_r: f64 },
    #[error("winding index requires nonzero anisotropy")]
    DegenerateEllipse,
    #[error("invalid input matrix: {0}")]
    InvalidInput(String),
    #[error("numerically-zero subspace has odd dimension {0}; adjust the kernel threshold")]
    KernelParity(usize),
    #[error("canonical structure could not be restored: {0}")]
    StructureFailure(String),
    #[error("vacua are numerically orthogonal: {0}")]
    OrthogonalVacuum(String),
    #[error("antisymmetric matrix must have even dimension, got {0}")]
    InvalidDimension(usize),
    #[error("unitarity drift {drift:.3e} exceeds {limit:.1e}; halve the time step")]
    StepSize { drift: f64, limit: f64 },
    #[error("schedule is not periodic over tau = {tau}: endpoint mismatch {mismatch:.3e}")]
    InvalidSchedule { tau: f64, mismatch: f64 },
    #[error("quasi-energy particle-hole pairing violated by {0:.3e}")]
    ParticleHoleViolation(f64),
    #[error("Majorana correlation matrix has imaginary residue {0:.3e}")]
    InconsistentGreen(f64),
    #[error("string correlators need equilibrium (real) Green functions; imaginary residue {0:.3e}")]
    NonequilibriumUnsupported(f64),
    #[error("entanglement block is empty")]
    EmptyBlock,
    #[error("dense spin systems are limited to {max} sites, got {got}")]
    SizeLimit { got: usize, max: usize },
    #[error("no bound state detected outside the continuum [{lo:.6}, {hi:.6}]")]
    NoBoundState { lo: f64, hi: f64 },
    #[error("vacuum parity determinant {0:.6} is not close to ±1: unresolved zero modes")]
    DegenerateVacuum(f64),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("validation breach: {0}")]
    ValidationBreach(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("linear algebra failure: {0}")]
    Linalg(String),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Linalg(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
