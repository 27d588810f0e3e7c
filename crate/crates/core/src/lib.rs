pub mod cohomology;
pub mod descriptor;
pub mod error;
pub mod exactpoly;
pub mod linalg;

pub use error::{Error, Result};
pub mod exec;
pub mod groebner;
pub mod gwsymbols;
pub mod pipeline;
pub mod quantum;
pub mod semisimple;
