pub mod blocks;
pub mod chars;
pub mod error;
pub mod exactnum;
pub mod groups;
pub mod morita;

pub use error::{Error, Result};
