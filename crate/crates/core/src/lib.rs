pub mod config;
pub mod error;
pub mod ffla;
pub mod frobcat;
pub mod hallcore;
pub mod par;
pub mod quiverrep;
pub mod report;
pub mod scalar;
pub mod sdh;

pub use config::{Caps, Exec};
pub use error::{HallError, Result};
pub use ffla::{Field, Matrix};
