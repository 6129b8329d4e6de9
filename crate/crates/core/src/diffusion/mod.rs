//! Discrete-time diffusion models (IC, LT, SI, SIR), Monte Carlo spread
//! estimation and an exact IC oracle.
//!
//! All models update synchronously. IC gives every newly active node one
//! chance to activate each inactive neighbor in the following round. LT
//! weights each in-arc of `v` by `1 / in_degree(v)` and fires `v` once the
//! weight of its active in-neighbors reaches a threshold drawn uniformly per
//! run. SI and SIR let every infected node try each susceptible neighbor
//! once per round with probability `beta`; SIR nodes then recover with
//! probability `gamma` (the order is configurable through [`SirOrder`]).

mod config;
mod exact;
mod simulate;

pub use config::{DiffusionConfig, ModelKind, SirOrder, DEFAULT_IC_P, DEFAULT_MAX_STEPS};
pub use exact::{exact_expected_spread, ExactSpreadTable, EXACT_EDGE_LIMIT, EXACT_NODE_LIMIT, TABLE_EDGE_LIMIT};
pub use simulate::{
    expected_spread, simulate, simulate_with_thresholds, SpreadEstimate, Termination, Trace, ACTIVE, RECOVERED,
    SUSCEPTIBLE,
};

pub(crate) use simulate::{mean_spread, Run};
#[cfg(test)]
pub(crate) use simulate::spread_samples;
