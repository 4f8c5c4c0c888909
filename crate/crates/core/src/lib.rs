//! Linear codes over finite fields, with constructions of Euclidean and
//! Hermitian LCD MDS codes and independent brute-force checkers.

pub mod caps;
pub mod cli;
pub mod code;
pub mod codefile;
pub mod construct;
pub mod error;
pub mod gf;
pub mod matrix;
pub mod oracle;

pub use caps::Caps;
pub use codefile::CodeFile;
pub use code::{certify, Certificate, CertifyOptions, LinearCode};
pub use construct::{euclidean_lcd_mds, hermitian_lcd_mds, lcd_mds, ConstructionResult};
pub use error::{Error, Result};
pub use gf::{Felt, FieldSpec};
pub use matrix::{Form, Mat};
