//! Numerics for the ratio w_{a,b,c}(z) = 2F1(a+1,b;c;z) / 2F1(a,b;c;z):
//! evaluation, continued fractions and value-region enclosures, the
//! convexity functional 1 + z w''/w', closed-form convexity bounds,
//! boundary asymptotics near z = 1, and parameter-plane classification.

pub mod asymptotics;
pub mod bounds;
pub mod contfrac;
pub mod convexity;
pub mod dd;
pub mod error;
pub mod hyp2f1;
pub mod sampling;
pub mod scan;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use hyp2f1::{Params, C64};
