//! Bound states of a nonrelativistic spin-1/2 particle held inside the
//! coordinate singularity of a rotating frame in the cosmic dislocation
//! spacetime.
//!
//! * [`geometry`]: rotating-frame metric, Fermi-Walker tetrad, connection
//!   1-forms and the structure equations.
//! * [`specfun`]: real-order Bessel functions of the first kind and their zeros.
//! * [`spectrum`]: quantum numbers, exact and asymptotic energy levels, radial
//!   modes and operator residuals.
//! * [`oracle`]: a finite-difference eigensolver for the radial problem that
//!   shares no code with [`specfun`].
//! * [`verify`]: the invariant suite behind `dspec verify`.

pub mod error;
pub mod geometry;
pub mod oracle;
pub mod specfun;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
