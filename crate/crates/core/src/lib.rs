#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod par;
pub mod properties;
pub mod report;
pub mod representation;
pub mod scalarq;
pub mod soq3;

pub use algebra::{Algebra, Element, Letter, Monomial, XiWord};
pub use error::{Error, Result};
pub use scalarq::ScalarQ;
