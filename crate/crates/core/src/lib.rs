pub mod braid;
pub mod cli;
pub mod discriminate;
pub mod dqc1;
pub mod error;
pub mod fibrep;
pub mod jones;
pub mod oracle;

pub use error::{Error, Result};
