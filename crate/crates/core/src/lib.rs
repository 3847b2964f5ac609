//! Age-of-information scheduling over unreliable wireless links with
//! interference constraints.
//!
//! A network is a set of links, each with a weight `w_e` and a per-slot
//! probability `γ_e` that its channel is ON. Every slot a scheduler picks a
//! feasible activation set; a scheduled link whose channel is ON delivers a
//! fresh update and its age drops to 1, every other link's age grows by 1.
//!
//! The crate provides:
//!
//! - [`model`]: networks, interference constraints, and the i.i.d. channel.
//! - [`policies`]: the max-weight kernel and every scheduling policy built
//!   on it (virtual-queue, age-based, stationary, S-only, priority).
//! - [`optimizer`]: Frank–Wolfe solvers for the optimal peak age with and
//!   without channel observation, the K-of-N water-filling solution, and the
//!   performance bounds of the two max-weight policies.
//! - [`simulator`]: the slotted simulation loop, age estimators and exact
//!   pathwise identity checks.
//! - [`experiment`]: JSON-configured sweeps with CSV output and presets.
//!
//! ```
//! use aoi_sched::model::{InterferenceModel, Network};
//! use aoi_sched::optimizer::{solve_unknown_peak, SolverSettings};
//!
//! let network = Network::uniform(2, 0.5)?;
//! let one_at_a_time = InterferenceModel::k_of_n(2, 1)?;
//! let best = solve_unknown_peak(&network, &one_at_a_time, &SolverSettings::default())?;
//! assert!((best.value - 8.0).abs() < 1e-6);
//! # Ok::<(), aoi_sched::Error>(())
//! ```
//!
//! The accompanying guide in `book/` walks through the model and every
//! algorithm; its code listings are compiled and run as doc tests.

pub mod error;
pub mod experiment;
pub mod model;
pub mod optimizer;
pub mod policies;
pub mod rng;
pub mod simulator;

#[cfg(doctest)]
mod book;

pub use error::{Error, Result};
pub use model::{ChannelState, InterferenceModel, LinkSet, Network};
pub use rng::RngStream;
