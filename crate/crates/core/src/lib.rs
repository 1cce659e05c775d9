pub mod dynamics;
pub mod error;
pub mod ftle;
pub mod interval_cert;
pub mod linalg;
pub mod mean_reactivity;
pub mod net_sync;
pub mod norms;
pub mod run;

pub use error::{Error, Result};
