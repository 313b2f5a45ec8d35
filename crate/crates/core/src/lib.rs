//! Exact characteristic-2 algebra for the line-S4 quartic family
//! `h_a = a z^4 + (x^2 + yz)(y^2 + xz)`.
//!
//! Modules, bottom up: [`unipoly`] (F_2[w]), [`binaryfield`] (F_{2^d}),
//! [`dynamics`] (escape times), [`trivarring`] (truncated trivariate rings),
//! [`gflinalg`] (exact elimination), [`parity`] (Lucas parity tilings),
//! [`hilbertkunz`] and [`tightverify`] (the membership computations).

pub mod binaryfield;
pub mod dynamics;
pub mod error;
pub mod gflinalg;
pub mod hilbertkunz;
pub mod parity;
pub mod tightverify;
pub mod trivarring;
pub mod unipoly;

pub use error::{Error, Result};
