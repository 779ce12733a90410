//! Decision procedures for interval systems, cosilting classes and
//! filtrations over the spectrum of a valuation domain.

pub mod coaisle;
pub mod cosilting;
pub mod error;
pub mod filtrations;
pub mod fixtures;
pub mod ideals;
pub mod io;
pub mod params;
pub mod spectrum;
pub mod svg;
pub mod systems;

pub use error::{Error, Result};
