//! Support and dimension inequalities for finite permutation modules.

pub mod cli;
pub mod error;
pub mod exact;
pub mod ff;
pub mod field;
pub mod linalg;
pub mod permgrp;
pub mod permod;
pub mod poly;
pub mod uncertainty;

pub use error::{Error, Result};
pub use field::{Field, Rationals};
