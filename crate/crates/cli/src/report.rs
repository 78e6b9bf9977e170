//! Serialisable reports. Field elements are lowercase hex bit patterns.

use std::fmt::Write as _;

use anyhow::Context;
use kplane::search::{HyperovalRecord, TypeTag};
use kplane::{Fe, FieldContext, LinearizedPoly, PlaneId};
use serde::{Deserialize, Serialize};

use crate::config::{parse_hex, Format};

pub const SCHEMA_VERSION: u32 = 1;

pub fn fe_hex(x: Fe) -> String {
    format!("{:x}", x)
}

pub fn digest_hex(d: &[u8; 32]) -> String {
    d.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub no: usize,
    pub alpha: Option<String>,
    pub alpha_omega: Option<u32>,
    /// `a_0, …, a_{n-1}` as hex.
    pub coeffs_bits: Vec<String>,
    /// `a_i = ω^e`, `null` for zero.
    pub coeffs_omega: Vec<Option<u32>>,
    pub function: String,
    pub digest: String,
    pub orbit_size: u64,
    pub hits: u64,
    pub reference_no: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub plane: String,
    pub n: u32,
    pub modulus_bits: String,
    #[serde(rename = "type")]
    pub type_tag: String,
    pub domain: String,
    pub classes: Vec<ClassRow>,
}

impl ClassRow {
    pub fn from_record(ctx: &FieldContext, no: usize, r: &HyperovalRecord, reference_no: Option<usize>) -> Self {
        let var = match r.type_tag {
            TypeTag::A => "x",
            TypeTag::B => "y",
        };
        ClassRow {
            no,
            alpha: r.alpha.map(fe_hex),
            alpha_omega: r.alpha.and_then(|a| ctx.log(a)),
            coeffs_bits: r.coeffs.coeffs().iter().map(|&c| fe_hex(c)).collect(),
            coeffs_omega: r.coeffs.coeffs().iter().map(|&c| ctx.log(c)).collect(),
            function: r.coeffs.display(ctx, var).to_string(),
            digest: digest_hex(&r.digest),
            orbit_size: r.orbit_size,
            hits: r.hits,
            reference_no,
        }
    }

    pub fn coeffs(&self) -> anyhow::Result<LinearizedPoly> {
        let c = self.coeffs_bits.iter().map(|s| parse_hex(s).map(Fe)).collect::<anyhow::Result<Vec<_>>>()?;
        Ok(LinearizedPoly::new(c))
    }

    pub fn alpha_fe(&self) -> anyhow::Result<Option<Fe>> {
        self.alpha.as_deref().map(|s| parse_hex(s).map(Fe)).transpose()
    }
}

impl SearchReport {
    pub fn new(
        ctx: &FieldContext,
        plane: PlaneId,
        tag: TypeTag,
        domain: &str,
        records: &[HyperovalRecord],
        reference: &[Option<usize>],
    ) -> Self {
        SearchReport {
            schema_version: SCHEMA_VERSION,
            plane: plane.name().to_string(),
            n: ctx.n(),
            modulus_bits: format!("{:#x}", ctx.modulus()),
            type_tag: tag.name().to_string(),
            domain: domain.to_string(),
            classes: records
                .iter()
                .enumerate()
                .map(|(i, r)| ClassRow::from_record(ctx, i + 1, r, reference.get(i).copied().flatten()))
                .collect(),
        }
    }

    pub fn from_json(s: &str) -> anyhow::Result<Self> {
        let r: SearchReport = serde_json::from_str(s).context("malformed report")?;
        anyhow::ensure!(r.schema_version == SCHEMA_VERSION, "unsupported schema_version {}", r.schema_version);
        Ok(r)
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => self.to_csv(),
            Format::Md => Ok(self.to_markdown()),
        }
    }

    fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "schema_version",
            "plane",
            "n",
            "modulus_bits",
            "type",
            "domain",
            "no",
            "alpha",
            "alpha_omega",
            "coeffs_bits",
            "coeffs_omega",
            "function",
            "digest",
            "orbit_size",
            "hits",
            "reference_no",
        ])?;
        let opt = |v: Option<u32>| v.map_or(String::new(), |e| e.to_string());
        for c in &self.classes {
            let omega: Vec<String> = c.coeffs_omega.iter().map(|&e| opt(e)).collect();
            w.write_record([
                self.schema_version.to_string(),
                self.plane.clone(),
                self.n.to_string(),
                self.modulus_bits.clone(),
                self.type_tag.clone(),
                self.domain.clone(),
                c.no.to_string(),
                c.alpha.clone().unwrap_or_default(),
                opt(c.alpha_omega),
                c.coeffs_bits.join(";"),
                omega.join(";"),
                c.function.clone(),
                c.digest.clone(),
                c.orbit_size.to_string(),
                c.hits.to_string(),
                c.reference_no.map_or(String::new(), |n| n.to_string()),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# Translation hyperovals of type ({}) in the {} plane, n = {}\n",
            self.type_tag, self.plane, self.n
        );
        let _ = writeln!(
            s,
            "Modulus {}, domain {}, {} classes. ω is a root of the modulus.\n",
            self.modulus_bits,
            self.domain,
            self.classes.len()
        );
        s.push_str("| No. | α | Function | Orbit size | Reference No. | Digest |\n");
        s.push_str("|---|---|---|---|---|---|\n");
        for c in &self.classes {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                c.no,
                alpha_cell(c.alpha_omega, c.alpha.is_some()),
                c.function,
                c.orbit_size,
                c.reference_no.map_or(String::new(), |n| n.to_string()),
                &c.digest[..16]
            );
        }
        s
    }
}

/// `1`, `ω`, `ω^k`, or empty.
pub fn alpha_cell(exp: Option<u32>, present: bool) -> String {
    match (exp, present) {
        (Some(e), true) => kplane::gf2n::OmegaPower(Some(e)).to_string(),
        _ => String::new(),
    }
}
