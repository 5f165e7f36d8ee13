pub mod covering;
pub mod error;
pub mod field;
pub mod fincat;
pub mod fixtures;
pub mod grading;
pub mod groups;
pub mod intmat;
pub mod payload;
pub mod pi1;
pub mod random;
pub mod schema;

pub use error::{Error, Result};
