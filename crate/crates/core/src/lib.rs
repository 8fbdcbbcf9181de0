//! Online hitting set driven by unique-max colorings and vertex rankings.

pub mod arena;
pub mod decomp;
pub mod error;
pub mod geom;
pub mod hypercore;
pub mod online;
pub mod umcolor;

pub use error::{Error, Result};
