pub mod action;
pub mod corpus;
pub mod equivariant;
pub mod effective;
pub mod error;
pub mod fintop;
pub mod fixture;
pub mod gerbe;
pub mod gets;
pub mod group;
pub mod groupoid;
pub mod ledger;
pub mod point;
pub mod suite;

pub use error::{Error, Result};
pub use point::Point;
