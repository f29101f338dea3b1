//! Solvers for the multi-vehicle Traveling Deliveryman Problem (mTDP) and
//! the multi-vehicle Graph Search Problem (mGSP): a fleet starting at given
//! vertices must visit every vertex of a complete graph so that the
//! probability-weighted sum of arrival times is minimal.
//!
//! The main solver clusters vertices greedily by latency and then improves
//! each vehicle's order with GRASP (randomized greedy construction, VND
//! with Swap and 2-opt, and an LK-style chain of 2-opt moves). A k-means++
//! cluster-first baseline and a benchmark harness are included.

pub mod baseline;
pub mod bench;
pub mod bks;
pub mod clustering;
pub mod error;
pub mod grasp;
pub mod instance;
pub mod objective;
pub mod rng;

pub use error::{ConfigError, Error, KMeansError, ParseError, Result, ValidationError};
pub use grasp::SolverConfig;
pub use instance::{Instance, LatencyModel, Mode};
pub use objective::{evaluate, Route, Solution};
