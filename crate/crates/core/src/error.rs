use thiserror::Error;

use crate::signature::Signature;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliffordError {
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },

    #[error("dimension p+q = {0} exceeds the supported maximum of {max}", max = crate::signature::MAX_DIM)]
    DimensionTooLarge(usize),

    #[error("blade mask {mask:#b} has generators beyond n = {n}")]
    BladeOutOfRange { mask: u32, n: usize },

    #[error("grade {k} out of range 0..={n}")]
    GradeOutOfRange { k: usize, n: usize },

    #[error("non-finite coefficient")]
    NonFinite,

    #[error("imaginary coefficient in a multivector flagged as real")]
    ImaginaryInRealAlgebra,

    #[error("element is not invertible")]
    NotInvertible,

    #[error("expected a pure bivector")]
    NotBivector,

    #[error("expected a pure vector")]
    NotVector,

    #[error("expected an even element")]
    NotEven,

    #[error("operation requires signature {expected}, got {found}")]
    WrongSignature {
        expected: Signature,
        found: Signature,
    },

    #[error("element is not idempotent (residual {0:e})")]
    NotIdempotent(f64),

    #[error("idempotent is not primitive: {0}")]
    NotPrimitive(String),

    #[error("element does not lie in the minimal left ideal (residual {0:e})")]
    NotInIdeal(f64),

    #[error("element fails the Spin^e membership test: {0}")]
    NotSpinE(String),

    #[error("singular spinor: sigma^2 + omega^2 = {0:e}; the polar decomposition psi = rho^(1/2) exp(beta gamma5 / 2) R needs psi psi~ != 0")]
    SingularSpinor(f64),

    #[error("v + w is null; build the rotor in two steps")]
    NullRotorPath,

    #[error("primitive idempotent search exhausted for Cl({p},{q})")]
    SearchExhausted { p: usize, q: usize },

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, CliffordError>;
