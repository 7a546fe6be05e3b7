//! Exact and floating-point tools for moment sequences, positive-semidefinite
//! and totally non-negative matrices, and entrywise transforms.

pub mod error;
pub mod exactmat;
pub mod moments;
pub mod scalar;
pub mod tnlab;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use exactmat::{AnyMatrix, Matrix, PsdCertificate};
pub use moments::{Measure, MomentSeq, SupportSet};
pub use scalar::{Mode, Rational, Scalar};
pub use transforms::Transform;
pub use verify::{Family, PreserverReport};
