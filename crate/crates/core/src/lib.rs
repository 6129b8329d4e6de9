pub mod cli;
pub mod diffusion;
pub mod error;
pub mod graph;
pub mod ibm;
pub mod im;
pub mod rng;
pub mod runner;
pub mod seeding;
pub mod sl;

pub use error::{Error, Result};
pub use graph::{Graph, GraphGenSpec, NodeId};
