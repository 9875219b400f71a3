use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the layer that raises them. The CLI prints
/// [`Error::name`] next to the message, so variant names are part of the
/// user-facing surface.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // algebra
    #[error("algebra specs differ: {left:?} vs {right:?}")]
    SpecMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),
    #[error("element is not self-adjoint (residual {residual:.3e})")]
    NotSelfAdjoint { residual: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("element is not positive (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("eigenvalue {eigenvalue:.3e} is at or below the cutoff {cutoff:.3e}")]
    SingularBelowCutoff { eigenvalue: f64, cutoff: f64 },

    // modules and operators
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operator is not a projection (residual {residual:.3e})")]
    NotAProjection { residual: f64 },
    #[error("frames live in different modules")]
    ModuleMismatch,

    // frames
    #[error("frame has no elements")]
    EmptyFrame,
    #[error("frame element {index} lies outside the module (residual {residual:.3e})")]
    ElementOutsideModule { index: usize, residual: f64 },
    #[error("family is not a frame (lower bound {lower_bound:.3e})")]
    NotAFrame { lower_bound: f64 },
    #[error("frame is not normalized tight (bounds {lower_bound:.6}, {upper_bound:.6})")]
    NotNormalizedTight { lower_bound: f64, upper_bound: f64 },
    #[error("coefficients do not synthesize the element (residual {residual:.3e})")]
    NotADecomposition { residual: f64 },
    #[error("weight operator does not define an inner product on the module: {0}")]
    InvalidInnerProduct(String),

    // dilation
    #[error("operator is not a partial isometry on the module (residual {residual:.3e})")]
    NotAPartialIsometry { residual: f64 },
    #[error("family is not an orthonormal basis of its module")]
    NotOrthonormalBasis,

    // applications
    #[error("algebra is not commutative (block sizes {0:?})")]
    NotCommutative(Vec<usize>),
    #[error("component {index} of the trace sum is {value}, not an integer")]
    NotInteger { index: usize, value: f64 },
    #[error("quasi-basis identity failed (residual {residual:.3e})")]
    IdentityFailed { residual: f64 },
    #[error("grid point {value} is outside (0, 1]")]
    GridOutOfRange { value: f64 },
    #[error("grid is not strictly increasing at position {index}")]
    UnsortedGrid { index: usize },
    #[error("J = {given} elements cannot cover the grid, need at least {required}")]
    InsufficientJ { given: usize, required: usize },

    // oracle
    #[error("random instance generation gave up after {attempts} attempts")]
    DegenerateInstance { attempts: usize },
}

impl Error {
    /// Variant name, as printed by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SpecMismatch { .. } => "SpecMismatch",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::NotSelfAdjoint { .. } => "NotSelfAdjoint",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NotPositive { .. } => "NotPositive",
            Error::SingularBelowCutoff { .. } => "SingularBelowCutoff",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotAProjection { .. } => "NotAProjection",
            Error::ModuleMismatch => "ModuleMismatch",
            Error::EmptyFrame => "EmptyFrame",
            Error::ElementOutsideModule { .. } => "ElementOutsideModule",
            Error::NotAFrame { .. } => "NotAFrame",
            Error::NotNormalizedTight { .. } => "NotNormalizedTight",
            Error::NotADecomposition { .. } => "NotADecomposition",
            Error::InvalidInnerProduct(_) => "InvalidInnerProduct",
            Error::NotAPartialIsometry { .. } => "NotAPartialIsometry",
            Error::NotOrthonormalBasis => "NotOrthonormalBasis",
            Error::NotCommutative(_) => "NotCommutative",
            Error::NotInteger { .. } => "NotInteger",
            Error::IdentityFailed { .. } => "IdentityFailed",
            Error::GridOutOfRange { .. } => "GridOutOfRange",
            Error::UnsortedGrid { .. } => "UnsortedGrid",
            Error::InsufficientJ { .. } => "InsufficientJ",
            Error::DegenerateInstance { .. } => "DegenerateInstance",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
