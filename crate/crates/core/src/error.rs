use thiserror::Error;

/// Errors raised by the geometry kernel.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("conformal factor vanishes at ({x}, {y}): |1 + κ/4 (x² − δy²)| = {value:e}")]
    SingularConformalFactor { x: f64, y: f64, value: f64 },
    #[error("operation requires κ = 0, got κ = {0}")]
    UnsupportedKappa(f64),
    #[error("operation requires τ ≠ 0")]
    ZeroTau,
    #[error("coordinate metric is numerically singular (det = {0:e})")]
    SingularMetric(f64),
    #[error("plane is degenerate: g(X,X)g(Y,Y) − g(X,Y)² = {0:e}")]
    DegeneratePlane(f64),
    #[error("tangent vectors are based at different points")]
    BaseMismatch,
    #[error("sample ({u}, {v}) lies outside the usable domain")]
    OutOfDomain { u: f64, v: f64 },
    #[error("patch has no analytic jets")]
    NoAnalyticJet,
    #[error("induced metric is degenerate at ({u}, {v}): det = {det:e}")]
    DegenerateInducedMetric { u: f64, v: f64, det: f64 },
    #[error("adapted frame degenerates at ({u}, {v}): g(T,T) = {gtt:e}")]
    DegenerateAdaptedFrame { u: f64, v: f64, gtt: f64 },
    #[error("no pseudo-orthonormal tangent frame at ({u}, {v})")]
    DegenerateFrame { u: f64, v: f64 },
    #[error("quadrature did not reach tolerance on [{a}, {b}]")]
    QuadratureFailure { a: f64, b: f64 },
    #[error("invalid family: {0}")]
    InvalidCombination(String),
    #[error("invalid helix profile: {0}")]
    InvalidProfile(String),
    #[error("patch is not a helix: angle function varies by {0:e}")]
    NotAHelixPatch(f64),
    #[error("stencil step {step:e} is too coarse for grid spacing {spacing:e}")]
    StencilTooCoarse { step: f64, spacing: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
