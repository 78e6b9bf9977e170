use std::sync::Arc;

use anyhow::{bail, Context};
use clap::ValueEnum;
use kplane::algebra::MAX_MATRIX_DEGREE;
use kplane::gf2n::default_modulus;
use kplane::{FieldContext, Plane, PlaneId, Presemifield};

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "KPLANE_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneChoice {
    Kn,
    #[value(name = "kn_t")]
    KnT,
    #[value(name = "kn_td")]
    KnTd,
}

impl PlaneChoice {
    pub fn id(self) -> PlaneId {
        match self {
            PlaneChoice::Kn => PlaneId::Kn,
            PlaneChoice::KnT => PlaneId::KnT,
            PlaneChoice::KnTd => PlaneId::KnTd,
        }
    }

    pub fn from_id(id: PlaneId) -> Option<Self> {
        match id {
            PlaneId::Kn => Some(PlaneChoice::Kn),
            PlaneId::KnT => Some(PlaneChoice::KnT),
            PlaneId::KnTd => Some(PlaneChoice::KnTd),
            PlaneId::Custom => None,
        }
    }

    pub fn name(self) -> &'static str {
        self.id().name()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub n: u32,
    pub plane: PlaneChoice,
    pub modulus: Option<u32>,
    pub workers: usize,
    pub seed: u64,
    pub samples: usize,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { n: 5, plane: PlaneChoice::Kn, modulus: None, workers: 1, seed: 1, samples: 10_000, format: Format::Json }
    }
}

impl RunConfig {
    pub fn modulus_bits(&self) -> u32 {
        self.modulus.or_else(|| default_modulus(self.n)).unwrap_or(0)
    }

    pub fn field(&self) -> anyhow::Result<Arc<FieldContext>> {
        Ok(Arc::new(FieldContext::new(self.n, self.modulus)?))
    }

    pub fn presemifield(&self, which: PlaneChoice) -> anyhow::Result<Presemifield> {
        let ctx = self.field()?;
        Ok(match which {
            PlaneChoice::Kn => Presemifield::knuth(ctx),
            PlaneChoice::KnTd => Presemifield::knuth_symplectic(ctx),
            PlaneChoice::KnT => {
                if self.n > MAX_MATRIX_DEGREE {
                    bail!("plane kn_t is only available for n <= {MAX_MATRIX_DEGREE}");
                }
                Presemifield::knuth_transpose(ctx)?
            }
        })
    }

    pub fn plane_of(&self, which: PlaneChoice) -> anyhow::Result<Plane> {
        Ok(Plane::new(self.presemifield(which)?))
    }

    pub fn plane(&self) -> anyhow::Result<Plane> {
        self.plane_of(self.plane)
    }
}

/// Parses `0x25`, `25` (hex) or a polynomial bit pattern.
pub fn parse_hex(s: &str) -> anyhow::Result<u32> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u32::from_str_radix(t, 16).with_context(|| format!("not a hex number: {s}"))
}

/// Worker count from the flag, else the environment, else 1.
pub fn resolve_workers(flag: Option<usize>) -> anyhow::Result<usize> {
    if let Some(w) = flag {
        return Ok(w.max(1));
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => Ok(v.trim().parse::<usize>().with_context(|| format!("{WORKERS_ENV}={v} is not a number"))?.max(1)),
        Err(_) => Ok(1),
    }
}
