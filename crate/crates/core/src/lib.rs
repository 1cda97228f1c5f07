//! Exact finite localization of group-ring modules, G-groups and chain
//! complexes at ring maps ℤ[G] → R.

pub mod error;
pub mod group;
pub mod groupring;
pub mod ring;
pub mod scalar;

pub use error::{Error, ErrorKind, Result};
pub mod cancel;
pub mod laurent;
pub mod smith;
pub mod parse;
pub mod wclass;
pub mod cohn;
pub mod modloc;
pub mod ggroup;
pub mod chainloc;
pub mod knot;
pub mod formats;
pub mod report;
pub mod selftest;
pub mod commands;
