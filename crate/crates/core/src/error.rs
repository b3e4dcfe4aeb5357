//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("non-rational literal at position {0}")]
    NonRationalLiteral(usize),
    #[error("target degree {requested} is smaller than polynomial degree {actual}")]
    DegreeTooSmall { requested: u32, actual: u32 },
    #[error("polynomial has degree zero or is identically zero")]
    DegeneratePolynomial,
    #[error("root finding did not converge; best residual {residual:.3e}")]
    RootsNonConvergence { residual: f64 },
    #[error("point is not outside the curve")]
    PointNotOutside,
    #[error("tangency refinement did not converge")]
    TangencyNonConvergence,
    #[error("orbit iterate entered the forbidden region at step {step}")]
    OrbitEnteredCurve { step: usize },
    #[error("finite-difference stencil straddles a tangency discontinuity")]
    JacobianStencilDiscontinuity,
    #[error("point does not lie on the curve (|value| = {value:.3e})")]
    PointNotOnCurve { value: f64 },
    #[error("singular point of the curve: gradient vanishes")]
    SingularPoint,
    #[error("base point lies on the branching locus (g = 0)")]
    BranchingLocus,
    #[error("empty sample set")]
    EmptySamples,
    #[error("truncation budget exhausted before branch exponents were determined")]
    TruncationExhausted,
    #[error("non-reduced curve: repeated factor detected to truncation order")]
    NonReduced,
    #[error("line germ has no finite exponent data")]
    LineGerm,
    #[error("intersection order not determined within truncation; raise the budget")]
    OrderNotDetermined,
    #[error("generic shear failed after {0} retries")]
    ShearFailed(usize),
    #[error("invariant {name} = {value} is farther than {tol} from an integer")]
    NonIntegerInvariant {
        name: &'static str,
        value: f64,
        tol: f64,
    },
    #[error("invariant inconsistency: {0}")]
    Inconsistency(String),
    #[error("triples do not share the ratio r = {0}")]
    MixedRatio(String),
    #[error("intersection family tracking lost at t = {0:.3e}")]
    TrackingLost(f64),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
