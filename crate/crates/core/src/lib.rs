//! Exact exterior algebra over Q and spectral analysis of the duality
//! operators `b_Omega` built from an invariant form `Omega`.

pub mod catalog;
pub mod duality;
pub mod error;
pub mod exterior;
pub mod identities;
pub mod lifts;
pub mod linalg;
pub mod numfield;
pub mod operator;
pub mod polynomial;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod symmetry;
pub mod tensor;
pub mod verify;

pub use duality::{build_duality_operator, contraction_map, Contraction, DualityOperator};
pub use error::{Error, Result};
pub use exterior::{basis, normalize_component, KForm, MultiIndex};
pub use linalg::{poly_eval_matrix, RationalMatrix};
pub use operator::LinearOperator;
pub use polynomial::RationalPolynomial;
pub use scalar::Q;
pub use spectral::{spectrum, EigenvalueDescriptor, SpectrumReport};

/// Builds the global thread pool, honouring `FORMDUAL_THREADS` when set.
/// Safe to call more than once; later calls are no-ops.
pub fn configure_threads() {
    let threads = std::env::var("FORMDUAL_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
