pub mod approx;
pub mod bridge;
pub mod error;
pub mod group;
pub mod linalg;
pub mod rank;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
