//! ABox abduction over inconsistent DL-Lite and EL-bot knowledge bases under brave
//! and AR repair semantics, plus classical abduction for consistent ones.

pub mod abduction;
pub mod bits;
pub mod classical;
pub mod duality;
pub mod error;
pub mod kb;
pub mod oracle;
pub mod reduction;
pub mod repair;
pub mod selftest;

pub use error::{Error, PromiseKind, Result};
