//! Frame, inner derivations, flips, connections, metric, curvature and volume
//! form, each identity checked exactly.

pub mod connection;
pub mod frame;
pub mod star;
pub mod tensor;

pub use frame::Frame;
pub use tensor::Tensor;

use crate::algebra::Algebra;
use crate::error::Result;

/// The algebra together with its frame.
pub struct Geometry {
    alg: Algebra,
    frame: Frame,
}

impl Geometry {
    pub fn new() -> Result<Self> {
        Geometry::from_algebra(Algebra::new()?)
    }

    pub fn from_algebra(alg: Algebra) -> Result<Self> {
        let frame = Frame::build(&alg)?;
        Ok(Geometry { alg, frame })
    }

    pub fn alg(&self) -> &Algebra {
        &self.alg
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }
}
