//! Problem model: instances, validation, intersection graphs, SDR checks and
//! the exact searches used as ground truth.

mod assignment;
mod bitset;
mod graph;
mod instance;
mod oracle;
mod rainbow;
mod validate;

pub use assignment::{is_sdr, SdrAssignment};
pub use graph::{build_intersection_graph, IntersectionGraph};
pub use instance::{Block, Context, Instance, Member, MemberId, Payload, PayloadKind};
pub use oracle::{
    max_sdr_bruteforce, max_sdr_bruteforce_with, node_budget_from_env, OracleOptions, OracleResult,
    DEFAULT_NODE_BUDGET, NODE_BUDGET_ENV,
};
pub use rainbow::rainbow_independent_set;
pub use validate::{ensure_valid, validate_instance, Diagnostic};
