//! Exact lattice, cone and wall computations for the nef cone of the Hilbert
//! scheme of points on a general rational elliptic surface.

pub mod bridgeland;
pub mod coneconj;
pub mod error;
pub mod hilb;
pub mod lattice;
pub mod rational;
pub mod report;
pub mod surface;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::DivisorClass;
pub use rational::Rational;
