//! Exterior algebra over real and complex inner-product spaces.

pub mod cli;
pub mod error;
pub mod fock;
pub mod geometry;
pub mod grades;
pub mod linalg;
pub mod multiindex;
pub mod multivector;
pub mod outermorphism;
pub mod spaces;
pub mod star;

pub use error::{Error, Result};
pub use multiindex::{IndexSeq, MultiIndex};
pub use multivector::{Blade, Convention, Multivector, Scalar};
pub use star::{Orientation, Side};
