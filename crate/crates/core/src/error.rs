use crate::scalar::Ring;

/// Errors raised by the structural operations. Verification failures are
/// reported in result values, not here.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("data length {len} does not fit a {rows}x{cols} matrix")]
    DataLength {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is {rows}x{cols}, expected even dimensions")]
    OddDimension { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("ring mismatch: expected {expected}, found {found}", expected = .expected.name(), found = .found.name())]
    RingMismatch { expected: Ring, found: Ring },
    #[error("matrix is not in the image of {0}")]
    NotInImage(&'static str),
    #[error("unsupported signature ({p},{q})")]
    UnsupportedSignature { p: usize, q: usize },
    #[error("quaternion is not unit imaginary")]
    NotUnitImaginary,
    #[error("no conjugating quaternion with coefficients in Q[sqrt2]")]
    NoConjugatingQuaternion,
    #[error("classical element rejected: {0}")]
    RecognizerFailed(&'static str),
    #[error("element is not in the bivector span")]
    NotInBivectorSpan,
    #[error("g X_{generator} g^cc is not a 1-vector")]
    NotOneVectorPreserving { generator: usize },
    #[error("matrix is not in so({p},{q})")]
    NotInSo { p: usize, q: usize },
    #[error("non-finite entry")]
    NonFinite,
    #[error("base operation {0} is not an anti-automorphism")]
    NotAntiAutomorphism(&'static str),
    #[error("computed {0} form is not a real multiple of the printed one")]
    PrintedFormMismatch(&'static str),
}
