//! Exact affine sl2 Mirkovic-Vilonen polytopes from Littelmann paths.
//!
//! Module order follows the data flow: [`rootdata`] and [`paths`] provide the
//! path crystal, [`upsilon`] extracts bottom vertices, [`mvpoly`] handles
//! polytopes, [`decorations`] reads partitions off paths and [`treefold`]
//! models the retraction step on folded paths.

pub mod decorations;
pub mod error;
pub mod linalg;
pub mod mvpoly;
pub mod paths;
pub mod rootdata;
pub mod treefold;
pub mod upsilon;

pub use error::{Error, Result};
pub use linalg::{q, qr, Form, Vector, Q};
pub use paths::{Crystal, Path, Segment};
pub use rootdata::{CartanMatrix, RealRoot, Root, RootDatum};
