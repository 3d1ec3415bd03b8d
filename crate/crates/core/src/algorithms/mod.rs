//! SDR-finding procedures.

mod dispatch;
mod few_lines;
mod flat;
mod greedy;
mod pigeonhole;
mod pipeline;
mod two_sweep;
mod trace;

pub use few_lines::{
    potential_ascent_few_lines, potential_ascent_few_lines_report, potential_ascent_few_lines_traced, FewLinesReport,
    Move,
};
pub use greedy::{greedy_disjoint_curves, greedy_disjoint_curves_traced};
pub use trace::Trace;
pub use two_sweep::{two_sweep_hv, two_sweep_hv_traced};
pub use pigeonhole::{pigeonhole_curve_reduction, pigeonhole_curve_reduction_traced, Reduction};
pub use pipeline::{solve_bounded_directions, solve_bounded_directions_report, solve_bounded_directions_traced, PipelineReport, Route};
pub use dispatch::{run_algorithm, Algorithm, Outcome};
