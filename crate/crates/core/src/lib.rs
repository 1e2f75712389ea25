pub mod algebra;
pub mod commands;
pub mod comodule;
pub mod coring;
pub mod dual;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod group;
pub mod instance;
pub mod linalg;
pub mod morita;
pub mod partial_action;
pub mod random;
pub mod report;

pub use error::{Error, Result};
