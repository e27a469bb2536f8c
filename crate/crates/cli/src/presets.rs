use clap::ValueEnum;
use prnopt_core::{Error, Result};
use serde::Serialize;

/// Named problem sizes matching deployed GNSS signal families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// 63 codes of length 1023
    GpsL1ca,
    /// 100 codes of length 4092
    GalileoE1,
    /// 210 codes of length 10230
    GpsL1c,
}

impl Preset {
    pub fn dims(self) -> (usize, usize) {
        match self {
            Preset::GpsL1ca => (63, 1023),
            Preset::GalileoE1 => (100, 4092),
            Preset::GpsL1c => (210, 10230),
        }
    }
}

/// Problem size: either a preset or explicit dimensions.
#[derive(Debug, clap::Args)]
pub struct ProblemArgs {
    /// Named problem size (alternative to --n/--length)
    #[arg(long, value_enum, conflicts_with_all = ["n", "length"])]
    pub preset: Option<Preset>,
    /// Number of codes in the family
    #[arg(long, requires = "length")]
    pub n: Option<usize>,
    /// Code length in chips
    #[arg(long, requires = "n")]
    pub length: Option<usize>,
}

impl ProblemArgs {
    pub fn resolve(&self) -> Result<(usize, usize)> {
        match (self.preset, self.n, self.length) {
            (Some(p), None, None) => Ok(p.dims()),
            (None, Some(n), Some(t)) => Ok((n, t)),
            _ => Err(Error::InvalidConfig(
                "specify either --preset or both --n and --length".into(),
            )),
        }
    }
}
