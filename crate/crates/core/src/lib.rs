//! Module frames in Hilbert C*-modules over finite-dimensional C*-algebras.

pub mod algebra;
pub mod applications;
pub mod cli;
pub mod dilation;
pub mod error;
pub mod frame;
pub mod linalg;
pub mod module;
pub mod oracle;
pub mod tol;

pub use algebra::{AlgebraElement, AlgebraSpec};
pub use error::{Error, Result};
pub use frame::{FrameAnalysis, FrameBounds, FrameTransform, ModuleFrame};
pub use module::{ModuleElement, ModuleOperator, ProjectiveModule};
