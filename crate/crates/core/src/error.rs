use thiserror::Error;

use crate::multipole::InteractionKind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "basis not converged for state N~={label} M_N={m} at eta={eta}: \
         |c_Nmax|^2 = {weight:e} >= {threshold:e} (N_max={n_max})"
    )]
    ConvergenceFailure {
        label: u32,
        m: i32,
        eta: f64,
        n_max: u32,
        weight: f64,
        threshold: f64,
    },

    #[error("matrix element between states at different fields (eta={bra} vs eta={ket})")]
    MismatchedField { bra: f64, ket: f64 },

    #[error("expected {expected} matrix elements, got {found}")]
    KindMismatch {
        expected: InteractionKind,
        found: InteractionKind,
    },

    #[error("{0} spins exceed the dense-matrix limit of {max}", max = crate::spinmodel::MAX_SPINS)]
    SizeLimit(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
