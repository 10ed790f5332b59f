//! Exact weight combinatorics for the classical Lie algebras gl(n), sl(n),
//! so(n), and sp(2n).
//!
//! Everything here is integer or rational arithmetic; there is no floating
//! point anywhere. The crate is organized bottom-up:
//!
//! - [`rootdata`]: root systems, dominance, Weyl groups of signed
//!   permutations, dot actions, and the Weyl dimension formula.
//! - [`charring`]: weight multiplicity maps and formal characters, with
//!   tensor products, branching, and symmetric/exterior powers, all
//!   decomposed by highest-weight peeling.
//! - [`towers`]: chains gl(p) in gl(p*theta_1) in ... built from diagonal
//!   block embeddings, weight padding, and branching along a tower.
//! - [`parabolic`]: parabolic subalgebras cut out by a rational torus
//!   element, exact centralizer computations, and symmetric pair data.
//! - [`induction`]: the weight-level calculus behind cohomological
//!   induction: dotted Weyl images, Bott-Borel-Weil degrees, bottom-layer
//!   candidates, and the Fernando-Kac classification of small subalgebras.
//! - [`stabilize`]: tensor power length stabilization scans across ranks
//!   and the finite-type probe along diagonal towers.
//!
//! Multiplicities are `i64` and every addition or multiplication of
//! multiplicities is checked; overflow aborts with a panic rather than
//! returning a wrong answer. All map types are ordered (`BTreeMap`) so
//! that output is deterministic byte for byte.

pub mod charring;
pub mod induction;
pub mod linalg;
pub mod parabolic;
pub mod rng;
pub mod rootdata;
pub mod stabilize;
pub mod towers;
pub mod verify;

use thiserror::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Errors surfaced by the library. Variant names are stable and used by the
/// CLI as machine-readable error names.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("non-dominant weight: {0}")]
    NonDominant(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("not Weyl invariant: {0}")]
    NotWeylInvariant(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("borel incompatible: {0}")]
    BorelIncompatible(String),
    #[error("not proper: {0}")]
    NotProper(String),
    #[error("not symmetric setup: {0}")]
    NotSymmetricSetup(String),
    #[error("non-integral: {0}")]
    NonIntegral(String),
    #[error("duplicate: {0}")]
    Duplicate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Parse(_) => "Parse",
            Error::InvalidType(_) => "InvalidType",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::TypeMismatch(_) => "TypeMismatch",
            Error::NonDominant(_) => "NonDominant",
            Error::NotAModule(_) => "NotAModule",
            Error::NotWeylInvariant(_) => "NotWeylInvariant",
            Error::CapExceeded(_) => "CapExceeded",
            Error::BorelIncompatible(_) => "BorelIncompatible",
            Error::NotProper(_) => "NotProper",
            Error::NotSymmetricSetup(_) => "NotSymmetricSetup",
            Error::NonIntegral(_) => "NonIntegral",
            Error::Duplicate(_) => "Duplicate",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Size guards for matrix materialization and tensor-power scans.
///
/// The environment variable `BL_CAP` overrides the defaults. A bare integer
/// sets `matrix_size`; a comma list like `matrix=128,factor=32,k=5,t=5`
/// sets fields individually.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest matrix size materialized by tower and centralizer code.
    pub matrix_size: usize,
    /// Largest dimension of a single tensor factor in a scan.
    pub factor_dim: usize,
    /// Largest tensor power k in a stabilization scan.
    pub max_k: usize,
    /// Largest symmetric power t in the finite-type probe.
    pub max_t: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { matrix_size: 64, factor_dim: 16, max_k: 4, max_t: 4 }
    }
}

impl Caps {
    /// Defaults adjusted by the `BL_CAP` environment variable, if set.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Ok(raw) = std::env::var("BL_CAP") {
            caps.apply_override(&raw);
        }
        caps
    }

    /// Applies an override string; silently ignores malformed pieces so a
    /// stray environment variable can never make the caps stricter than the
    /// defaults by accident.
    pub fn apply_override(&mut self, raw: &str) {
        let raw = raw.trim();
        if let Ok(n) = raw.parse::<usize>() {
            self.matrix_size = n;
            return;
        }
        for piece in raw.split(',') {
            let Some((key, value)) = piece.split_once('=') else { continue };
            let Ok(n) = value.trim().parse::<usize>() else { continue };
            match key.trim() {
                "matrix" => self.matrix_size = n,
                "factor" => self.factor_dim = n,
                "k" => self.max_k = n,
                "t" => self.max_t = n,
                _ => {}
            }
        }
    }
}

/// Adds multiplicities, aborting on overflow. A wrong count is worse than a
/// crash in every caller of this crate.
pub(crate) fn add_mult(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("multiplicity overflow in i64 arithmetic")
}

/// Multiplies multiplicities with the same overflow policy as [`add_mult`].
pub(crate) fn mul_mult(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("multiplicity overflow in i64 arithmetic")
}
