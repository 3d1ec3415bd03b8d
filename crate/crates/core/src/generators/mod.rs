//! Instance constructors: the no-SDR families and seeded samplers.

mod constructions;
mod random;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use constructions::{gen_box_cycle_power, gen_cycle_power_blocks, gen_few_lines_tight, gen_hv_tight, gen_quadratic_lower};
pub use random::{
    random_curves, random_few_lines, random_intervals, random_segments, random_two_sweep, CurveParams, REJECTION_BUDGET,
};

use crate::error::{Error, Result};
use crate::model::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    FewLinesTight,
    HvTight,
    QuadraticLower,
    CyclePower,
    BoxCyclePower,
    RandomSegments,
    RandomCurves,
    RandomIntervals,
    RandomFewLines,
    RandomTwoSweep,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::FewLinesTight,
        Family::HvTight,
        Family::QuadraticLower,
        Family::CyclePower,
        Family::BoxCyclePower,
        Family::RandomSegments,
        Family::RandomCurves,
        Family::RandomIntervals,
        Family::RandomFewLines,
        Family::RandomTwoSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::FewLinesTight => "few_lines_tight",
            Family::HvTight => "hv_tight",
            Family::QuadraticLower => "quadratic_lower",
            Family::CyclePower => "cycle_power",
            Family::BoxCyclePower => "box_cycle_power",
            Family::RandomSegments => "random_segments",
            Family::RandomCurves => "random_curves",
            Family::RandomIntervals => "random_intervals",
            Family::RandomFewLines => "random_few_lines",
            Family::RandomTwoSweep => "random_two_sweep",
        }
    }

    /// Parameter names with defaults (`None` = required).
    pub fn parameters(self) -> &'static [(&'static str, Option<i64>)] {
        match self {
            Family::FewLinesTight => &[("n", None), ("m", None), ("count", None)],
            Family::HvTight => &[("n", None)],
            Family::QuadraticLower => &[("n", None), ("m", None)],
            Family::CyclePower => &[("n", None), ("q", None)],
            Family::BoxCyclePower => &[("k", None), ("n", None)],
            Family::RandomSegments => &[("n", None), ("blocks", None), ("k", Some(2)), ("range", Some(10))],
            Family::RandomCurves => &[
                ("n", None),
                ("blocks", None),
                ("k", Some(2)),
                ("t", Some(1)),
                ("curves_per_group", Some(2)),
                ("bends", Some(0)),
            ],
            Family::RandomIntervals => &[("n", None), ("blocks", None), ("lines", Some(1))],
            Family::RandomFewLines => &[("n", None), ("m", None), ("lines", Some(0))],
            Family::RandomTwoSweep => &[("n", None)],
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown family `{s}`")))
    }
}

/// A family, its integer parameters and a seed (ignored by the deterministic
/// constructions).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
    #[serde(default)]
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, params: impl IntoIterator<Item = (&'static str, i64)>, seed: u64) -> Self {
        GenSpec {
            family,
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            seed,
        }
    }

    fn get(&self, name: &str) -> Result<usize> {
        let default = self
            .family
            .parameters()
            .iter()
            .find(|(p, _)| *p == name)
            .and_then(|(_, d)| *d);
        let v = self
            .params
            .get(name)
            .copied()
            .or(default)
            .ok_or_else(|| Error::InvalidParameters(format!("{} needs parameter `{name}`", self.family.name())))?;
        usize::try_from(v).map_err(|_| Error::InvalidParameters(format!("parameter `{name}` must be >= 0, got {v}")))
    }

    fn check_names(&self) -> Result<()> {
        for k in self.params.keys() {
            if !self.family.parameters().iter().any(|(p, _)| p == k) {
                return Err(Error::InvalidParameters(format!(
                    "{} has no parameter `{k}`",
                    self.family.name()
                )));
            }
        }
        Ok(())
    }
}

/// Builds the instance named by `spec`; the same spec always gives the same
/// instance.
pub fn gen_random_instance(spec: &GenSpec) -> Result<Instance> {
    spec.check_names()?;
    let rng = &mut ChaCha8Rng::seed_from_u64(spec.seed);
    let g = |k: &str| spec.get(k);
    match spec.family {
        Family::FewLinesTight => gen_few_lines_tight(g("n")?, g("m")?, g("count")?),
        Family::HvTight => gen_hv_tight(g("n")?),
        Family::QuadraticLower => gen_quadratic_lower(g("n")?, g("m")?),
        Family::CyclePower => gen_cycle_power_blocks(g("n")?, g("q")?),
        Family::BoxCyclePower => gen_box_cycle_power(g("k")?, g("n")?),
        Family::RandomSegments => random_segments(rng, g("n")?, g("blocks")?, g("k")?, g("range")? as i64),
        Family::RandomCurves => random_curves(
            rng,
            &CurveParams {
                n: g("n")?,
                blocks: g("blocks")?,
                k: g("k")?,
                t: g("t")?,
                curves_per_group: g("curves_per_group")?,
                bends: g("bends")?,
            },
        ),
        Family::RandomIntervals => random_intervals(rng, g("n")?, g("blocks")?, g("lines")?),
        Family::RandomFewLines => {
            let (n, m) = (g("n")?, g("m")?);
            let lines = match g("lines")? {
                0 => m * n.saturating_sub(m) + 1,
                l => l,
            };
            random_few_lines(rng, n, m, lines)
        }
        Family::RandomTwoSweep => random_two_sweep(rng, g("n")?),
    }
}
