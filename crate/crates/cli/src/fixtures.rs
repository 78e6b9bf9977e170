//! Known classes at n = 5, stored as machine-readable fixtures and matched by digest.

use anyhow::{ensure, Context};
use kplane::ovals::{type_a_hyperoval, type_b_hyperoval};
use kplane::search::{canonical_form, check_type_a, check_type_b, HyperovalRecord, TypeTag};
use kplane::{Fe, FieldContext, LinearizedPoly, Plane};
use serde::{Deserialize, Serialize};

use crate::config::{parse_hex, PlaneChoice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub no: usize,
    pub alpha_omega: Option<u32>,
    pub coeffs_omega: Vec<Option<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceTable {
    pub plane: PlaneChoice,
    pub n: u32,
    pub modulus_bits: String,
    #[serde(rename = "type")]
    pub type_tag: String,
    pub rows: Vec<ReferenceRow>,
}

const SOURCES: [(&str, &str); 3] = [
    ("kn5_type_a", include_str!("../fixtures/reference/kn5_type_a.json")),
    ("kn5_type_b", include_str!("../fixtures/reference/kn5_type_b.json")),
    ("kn_td5_type_b", include_str!("../fixtures/reference/kn_td5_type_b.json")),
];

impl ReferenceTable {
    pub fn tag(&self) -> TypeTag {
        if self.type_tag == "a" {
            TypeTag::A
        } else {
            TypeTag::B
        }
    }

    pub fn modulus(&self) -> anyhow::Result<u32> {
        parse_hex(&self.modulus_bits)
    }
}

impl ReferenceRow {
    pub fn poly(&self, ctx: &FieldContext) -> LinearizedPoly {
        LinearizedPoly::from_omega_exponents(ctx, &self.coeffs_omega)
    }

    pub fn alpha(&self, ctx: &FieldContext) -> Option<Fe> {
        self.alpha_omega.map(|e| ctx.exp(e))
    }

    /// Checks the row in `plane` and returns its canonical digest.
    pub fn digest(&self, plane: &Plane, tag: TypeTag) -> anyhow::Result<[u8; 32]> {
        let ctx = plane.ctx();
        let l = self.poly(ctx);
        let o = match tag {
            TypeTag::A => {
                ensure!(check_type_a(plane, &l), "row {} fails the type (a) check", self.no);
                type_a_hyperoval(ctx, &l)
            }
            TypeTag::B => {
                let alpha = self.alpha(ctx).context("type (b) row without α")?;
                ensure!(check_type_b(plane, &l) == Some(alpha), "row {} fails the type (b) check", self.no);
                type_b_hyperoval(ctx, &l, alpha)
            }
        };
        Ok(canonical_form(plane, &o).digest())
    }
}

/// All reference tables, keyed by name.
pub fn reference_tables() -> Vec<(&'static str, ReferenceTable)> {
    SOURCES
        .iter()
        .map(|(name, src)| (*name, serde_json::from_str(src).expect("fixture is valid JSON")))
        .collect()
}

pub fn reference_table(plane: PlaneChoice, n: u32, tag: TypeTag) -> Option<ReferenceTable> {
    reference_tables().into_iter().map(|(_, t)| t).find(|t| t.plane == plane && t.n == n && t.tag() == tag)
}

/// For every record, the number of the reference row with the same digest.
pub fn match_records(plane: &Plane, table: &ReferenceTable, records: &[HyperovalRecord]) -> anyhow::Result<Vec<Option<usize>>> {
    let digests: Vec<(usize, [u8; 32])> =
        table.rows.iter().map(|r| Ok((r.no, r.digest(plane, table.tag())?))).collect::<anyhow::Result<_>>()?;
    Ok(records
        .iter()
        .map(|rec| digests.iter().find(|(_, d)| *d == rec.digest).map(|(no, _)| *no))
        .collect())
}
