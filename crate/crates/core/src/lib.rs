//! Exact computation in the Temperley-Lieb algebra over `Z[A, A^-1]`:
//! planar diagrams, Jones-Wenzl projectors, trivalent recoupling, the
//! caterpillar basis and the Gram determinant of the trace pairing.

pub mod bases;
pub mod diagram;
pub mod dyck;
pub mod error;
pub mod gram;
pub mod jw;
pub mod linalg;
pub mod modular;
pub mod ortho;
pub mod recoupling;
pub mod ring;
pub mod tlcat;
pub mod verify;

pub use error::{Result, TlError};
pub use ring::{delta, quantum_delta, LaurentPoly, RatFunc};
