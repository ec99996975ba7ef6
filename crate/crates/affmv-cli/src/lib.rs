//! Command-line front end for `affmv`: element specifications, JSON codecs and SVG output.

pub mod app;
pub mod codec;
pub mod spec;
pub mod svg;

pub use app::run;
