//! Discrete resource-time tradeoff scheduling where resource units travel
//! source-to-sink paths and are reused by every job they pass.
//!
//! Start from an [`Instance`], compute a schedule from an integral
//! [`Flow`] with [`evaluate`], or call one of the solvers:
//!
//! - [`oracle::brute_min_makespan`] for exact answers on small instances,
//! - [`approx`] for the LP-rounding approximations,
//! - [`series_parallel`] for exact answers on series-parallel graphs.

pub mod approx;
pub mod cli;
pub mod duration;
pub mod error;
pub mod generators;
pub mod instance;
pub mod io;
pub mod lp;
pub mod maxflow;
pub mod oracle;
pub mod race;
pub mod rational;
pub mod rounding;
pub mod schedule;
pub mod series_parallel;
pub mod transform;

pub use duration::{DurationFunction, Family, Tuple};
pub use error::{Error, Result};
pub use instance::{Builder, Form, Instance};
pub use rational::Rational;
pub use schedule::{evaluate, Flow, Schedule};
