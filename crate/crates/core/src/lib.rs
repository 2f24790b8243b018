//! Exact projective geometry of the complete quadrangle: nine-point conics,
//! the quadratic transformation attached to a quadrangle, the envelope of
//! the lines joining corresponding points, and the classical triangle
//! results that fall out as special cases.

pub mod census;
pub mod conic;
pub mod cremona;
pub mod envelope;
pub mod error;
pub mod extremal;
pub mod pencil;
pub mod plane;
pub mod quadrangle;
pub mod scalar;
pub mod sixteen;
pub mod triangle;

pub use error::{GeomError, Result};
