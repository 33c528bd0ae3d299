pub mod cli;
pub mod error;
pub mod hypergeom;
pub mod jet;
pub mod mobius;
pub mod oracle;
pub mod papperitz;
pub mod suites;

pub use error::{Error, Result};
pub use num_complex::Complex64;
