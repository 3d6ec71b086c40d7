//! Exact truncated power-series algebra for analytic map germs.

pub mod approx;
pub mod blowup;
pub mod error;
pub mod field;
pub mod hfrac;
pub mod homogeneous;
pub mod hpoly;
pub mod io;
pub mod linalg;
pub mod npe;
pub mod rank;
pub mod registry;
mod residue;
pub mod series;
pub mod tower;
pub mod upoly;
pub mod weierstrass;

pub use error::{ErrorClass, PfError, Result};
pub use field::Gq;
pub use hpoly::HPoly;
pub use series::{RamifiedSeries, TruncatedSeries};
pub use upoly::UPoly;
pub use weierstrass::MonicPoly;
