//! Finitary polynomial functors between finite groupoids.

pub mod bij;
pub mod cart;
pub mod cli;
pub mod closure;
pub mod fam;
pub mod gen;
pub mod grpd;
pub mod json;
pub mod laws;
pub mod poly;
pub mod rational;

pub use grpd::{FiniteGroupoid, GroupoidFunctor, Grpd};
pub use rational::Rational;
