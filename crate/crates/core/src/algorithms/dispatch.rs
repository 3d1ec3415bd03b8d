use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::few_lines::potential_ascent_few_lines_report;
use super::greedy::greedy_disjoint_curves_traced;
use super::pipeline::solve_bounded_directions_report;
use super::trace::Trace;
use super::two_sweep::two_sweep_hv_traced;
use crate::error::{Error, Result};
use crate::model::{build_intersection_graph, max_sdr_bruteforce_with, rainbow_independent_set, Instance, OracleOptions, SdrAssignment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Greedy,
    FewLines,
    TwoSweep,
    Pipeline,
    Oracle,
    Rainbow,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Greedy,
        Algorithm::FewLines,
        Algorithm::TwoSweep,
        Algorithm::Pipeline,
        Algorithm::Oracle,
        Algorithm::Rainbow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::FewLines => "few-lines",
            Algorithm::TwoSweep => "two-sweep",
            Algorithm::Pipeline => "pipeline",
            Algorithm::Oracle => "oracle",
            Algorithm::Rainbow => "rainbow",
        }
    }

    /// The constructive algorithms promise size `n`; the exact searches report
    /// whatever is optimal.
    pub fn guarantees_n(self) -> bool {
        !matches!(self, Algorithm::Oracle | Algorithm::Rainbow)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s || a.name().replace('-', "_") == s)
            .ok_or_else(|| {
                Error::InvalidParameters(format!(
                    "unknown algorithm `{s}` (expected one of {})",
                    Algorithm::ALL.map(|a| a.name()).join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub assignment: SdrAssignment,
    /// Search nodes, for the oracle.
    pub nodes: Option<u64>,
    /// Algorithm-specific summary (potential history, pipeline route).
    pub details: Option<serde_json::Value>,
}

/// Runs `algo` on `inst`. The rainbow search returns an empty assignment when
/// no rainbow independent set of size `n` exists.
pub fn run_algorithm(inst: &Instance, algo: Algorithm, options: &OracleOptions, trace: &mut Trace) -> Result<Outcome> {
    let plain = |assignment| Outcome {
        assignment,
        nodes: None,
        details: None,
    };
    Ok(match algo {
        Algorithm::Greedy => plain(greedy_disjoint_curves_traced(inst, trace)?),
        Algorithm::TwoSweep => plain(two_sweep_hv_traced(inst, trace)?),
        Algorithm::FewLines => {
            let r = potential_ascent_few_lines_report(inst, inst.block_size(), trace)?;
            Outcome {
                details: Some(serde_json::json!({ "phi_history": r.phi_history, "moves": r.moves })),
                assignment: r.assignment,
                nodes: None,
            }
        }
        Algorithm::Pipeline => {
            let r = solve_bounded_directions_report(inst, trace)?;
            Outcome {
                details: Some(serde_json::json!({
                    "composition": r.composition,
                    "class_size": r.class_size,
                    "route": r.route,
                })),
                assignment: r.assignment,
                nodes: None,
            }
        }
        Algorithm::Oracle => {
            let r = max_sdr_bruteforce_with(inst, options)?;
            Outcome {
                assignment: r.witness,
                nodes: Some(r.nodes),
                details: None,
            }
        }
        Algorithm::Rainbow => {
            let g = build_intersection_graph(inst)?;
            plain(rainbow_independent_set(&g, inst.blocks(), inst.n())?.unwrap_or_default())
        }
    })
}
