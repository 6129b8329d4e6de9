//! Batch experiments: a TOML spec expands to the Cartesian product of its
//! graph, diffusion, seed and method lists, each run is replicated for a
//! number of epochs, and results go to CSV, trace JSON and a text summary.
//!
//! ```toml
//! task = "im"            # im | ibm | sl
//! epochs = 10
//! master_seed = 42
//! outputs = ["csv", "summary"]
//!
//! [[graph]]
//! kind = "watts_strogatz"
//! n = 1000
//!
//! [[diffusion]]
//! model = "si"
//! beta = 0.1
//! max_steps = 10
//!
//! [[seed]]
//! strategy = "random"
//! budget = 5
//!
//! [[method]]
//! name = "celf"
//! sims = 100
//! ```

mod execute;
mod output;
mod spec;

pub use execute::{epoch_key, graph_seed, run_experiments, ResultRecord, RunReport, TraceRecord};
pub use output::{
    format_real, read_csv, read_csv_from, summary, trace_json, write_csv, write_csv_to, write_outputs,
    write_trace_json, CSV_FILE, CSV_HEADER, SUMMARY_FILE, TRACE_DIR,
};
pub use spec::{
    expand_spec, ExperimentSpec, GraphSource, Method, MethodEntry, Output, RunDescriptor, SeedEntry, Task,
    DEFAULT_BLOCK_BUDGET, DEFAULT_EVAL_RUNS,
};
