//! Numerical differential geometry of the Lorentzian Heisenberg group `H₃(τ)`
//! and of helix surfaces in it.
//!
//! The kernel is generic over the base float ([`Real`], `f32` or `f64`); the
//! aliases below fix it to `f64`, which is what the verification suites and
//! the command-line tool use.

pub mod ambient;
pub mod error;
pub mod families;
pub mod fd;
pub mod linalg;
pub mod scalar;
pub mod surface;
pub mod verify;

pub use ambient::{Frame, FrameIndex, Point, Sign, SpaceParams, TangentVector};
pub use error::{GeomError, Result};
pub use linalg::V3;
pub use scalar::{Dual, Jet2, Real, Scalar};

pub type SpaceParams64 = SpaceParams<f64>;
pub type Point64 = Point<f64>;
pub type TangentVector64 = TangentVector<f64>;
pub type SpaceParams32 = SpaceParams<f32>;
pub type Point32 = Point<f32>;
