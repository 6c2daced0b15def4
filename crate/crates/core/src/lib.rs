pub mod corpus;
pub mod cover;
pub mod dinv;
pub mod error;
pub mod format;
pub mod knot;
pub mod laurent;
pub mod library;
pub mod linalg;
pub mod linkform;
pub mod obstruct;

pub use error::{Error, Result};
