pub mod checks;
pub mod cli;
pub mod cmat;
pub mod error;
pub mod io;
pub mod means;
pub mod posmap;
pub mod rng;
pub mod sector;

pub use cmat::{CMatrix, C64};
pub use error::{Error, Result};
