//! Simulation side of the LLPS workspace: the flat config format, alist
//! import/export, seeded Monte Carlo FER runs for the reference and
//! dirty-paper schemes, and CSV output.

pub mod alist;
pub mod config;
pub mod demo;
pub mod error;
pub mod frame;
pub mod harness;
pub mod output;

pub use config::{Scheme, SimConfig};
pub use error::SimError;
pub use harness::{FerRecord, PointResult};
