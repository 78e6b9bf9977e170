//! Command-line front end for `kplane`: configuration, parallel drivers,
//! report formats and the reference classes at n = 5.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or input errors.

pub mod config;
pub mod driver;
pub mod fixtures;
pub mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kplane::algebra::Derivation;
use kplane::designs::{
    bent_design, bent_from_hyperoval, build_design, design_invariants, difference_set, distinguish_designs,
    group_order_stats, orbit_intersections, Distinction, GroupId, Witness,
};
use kplane::ovals::{
    dualize_type_a, dualize_type_b, is_hyperoval, is_line_hyperoval, od_hyperoval, og_hyperoval, standard_hyperoval,
    type_a_hyperoval, type_b_hyperoval,
};
use kplane::search::{check_type_a, check_type_b, Domain, TypeTag};
use kplane::{Fe, FieldContext, LinearizedPoly, Plane, Presemifield};
use serde_json::json;

use config::{parse_hex, resolve_workers, Format, PlaneChoice, RunConfig, WORKERS_ENV};
use report::{alpha_cell, fe_hex, SearchReport, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "kplane", version, about = "Hyperovals, line hyperovals and designs in Knuth's binary presemifield planes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Extension degree (odd, 3..=21).
    #[arg(long, global = true, default_value_t = 5)]
    n: u32,
    #[arg(long, global = true, value_enum, default_value_t = PlaneChoice::Kn)]
    plane: PlaneChoice,
    /// Primitive modulus as a hex bitmask, e.g. 0x25.
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// Worker threads (default 1).
    #[arg(long, global = true, env = WORKERS_ENV)]
    workers: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Sample size for sampled checks.
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Field parameters and the cubic root-count check.
    Field,
    /// Exhaustive presemifield axiom checks for the Knuth derivatives.
    CheckAxioms,
    /// Check one construction and print PASS or FAIL.
    Verify(VerifyArgs),
    /// Exhaustive isomorph-free search for translation hyperovals.
    Search(SearchArgs),
    /// Search both types and match the results against the reference classes.
    Classify(SearchDomain),
    /// Intersection sizes of a type (b) hyperoval with its orbit.
    Orbit(Construction),
    /// Symmetric design of a type (a) hyperoval, optionally compared with its bent design.
    Design(DesignArgs),
    /// Difference sets in G1 or G2.
    Diffset(DiffsetArgs),
    /// Walsh spectrum of the bent function of a type (a) hyperoval.
    Bent(FunctionArgs),
    /// Write the reference tables and search reports into a directory.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstructionKind {
    Standard,
    Og,
    Od,
    TypeA,
    TypeB,
    LineA,
    LineB,
}

#[derive(Args, Debug)]
struct FunctionArgs {
    /// Coefficients a_0..a_{n-1} as hex bit patterns, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "omega")]
    coeffs: Option<Vec<String>>,
    /// Coefficients a_0..a_{n-1} as powers of ω, `-` for zero, comma separated.
    #[arg(long, value_delimiter = ',')]
    omega: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct Construction {
    #[arg(long, value_enum, default_value_t = ConstructionKind::Og)]
    construction: ConstructionKind,
    /// Shift for the od family.
    #[arg(long, default_value_t = 1)]
    d: u32,
    #[command(flatten)]
    function: FunctionArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    inner: Construction,
}

/// Coefficient domain of a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Full,
    ZeroOne,
}

#[derive(Args, Debug)]
struct SearchDomain {
    #[arg(long, value_enum, default_value_t = DomainArg::Full)]
    domain: DomainArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TypeArg {
    A,
    B,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long = "type", value_enum)]
    type_tag: TypeArg,
    #[command(flatten)]
    domain: SearchDomain,
}

#[derive(Args, Debug)]
struct DesignArgs {
    #[command(flatten)]
    function: FunctionArgs,
    /// Also build the bent design and try to tell the two apart.
    #[arg(long)]
    compare_bent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    G1,
    G2,
}

#[derive(Args, Debug)]
struct DiffsetArgs {
    #[arg(long, value_enum, default_value_t = GroupArg::G1)]
    group: GroupArg,
    #[command(flatten)]
    function: FunctionArgs,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

enum Status {
    Ok,
    Failed,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(Status::Ok) => 0,
        Ok(Status::Failed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            let _ = writeln!(err, "usage: kplane [--n N] [--plane kn|kn_t|kn_td] <command> [options]; see --help");
            2
        }
    }
}

fn config(g: &Global) -> anyhow::Result<RunConfig> {
    Ok(RunConfig {
        n: g.n,
        plane: g.plane,
        modulus: g.modulus.as_deref().map(parse_hex).transpose()?,
        workers: resolve_workers(g.workers).with_context(|| format!("reading {WORKERS_ENV}"))?,
        seed: g.seed,
        samples: g.samples,
        format: g.format,
    })
}

fn emit(g: &Global, out: &mut dyn Write, text: &str) -> anyhow::Result<()> {
    match &g.output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(text.as_bytes()).context("writing output"),
    }
}

fn emit_json(g: &Global, out: &mut dyn Write, v: serde_json::Value) -> anyhow::Result<()> {
    emit(g, out, &(serde_json::to_string_pretty(&v)? + "\n"))
}

fn parse_function(ctx: &FieldContext, f: &FunctionArgs) -> anyhow::Result<Option<LinearizedPoly>> {
    let n = ctx.n() as usize;
    if let Some(c) = &f.coeffs {
        anyhow::ensure!(c.len() == n, "expected {n} coefficients, got {}", c.len());
        let mut v = Vec::with_capacity(n);
        for s in c {
            let x = parse_hex(s)?;
            anyhow::ensure!(x < ctx.q() as u32, "coefficient {s} is not in GF(2^{n})");
            v.push(Fe(x));
        }
        return Ok(Some(LinearizedPoly::new(v)));
    }
    if let Some(c) = &f.omega {
        anyhow::ensure!(c.len() == n, "expected {n} exponents, got {}", c.len());
        let exps = c
            .iter()
            .map(|s| match s.trim() {
                "-" | "" => Ok(None),
                t => t.parse::<u32>().map(Some).with_context(|| format!("bad exponent {t}")),
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        return Ok(Some(LinearizedPoly::from_omega_exponents(ctx, &exps)));
    }
    Ok(None)
}

fn function_or_square(ctx: &FieldContext, f: &FunctionArgs) -> anyhow::Result<LinearizedPoly> {
    Ok(parse_function(ctx, f)?.unwrap_or_else(|| LinearizedPoly::from_exponents(ctx.n(), &[1])))
}

fn domain_of(d: DomainArg) -> (Domain, &'static str) {
    match d {
        DomainArg::Full => (Domain::Full, "full"),
        DomainArg::ZeroOne => (Domain::ZeroOne, "zero_one"),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> anyhow::Result<Status> {
    let g = &cli.global;
    let cfg = config(g)?;
    match cli.command {
        Command::Field => cmd_field(&cfg, g, out),
        Command::CheckAxioms => cmd_check_axioms(&cfg, g, out),
        Command::Verify(a) => cmd_verify(&cfg, g, out, &a.inner),
        Command::Search(a) => {
            let tag = match a.type_tag {
                TypeArg::A => TypeTag::A,
                TypeArg::B => TypeTag::B,
            };
            let plane = cfg.plane()?;
            let text = search_report(&cfg, &plane, tag, a.domain.domain)?.render(cfg.format)?;
            emit(g, out, &text)?;
            Ok(Status::Ok)
        }
        Command::Classify(d) => cmd_classify(&cfg, g, out, d.domain),
        Command::Orbit(c) => cmd_orbit(&cfg, g, out, &c),
        Command::Design(a) => cmd_design(&cfg, g, out, &a),
        Command::Diffset(a) => cmd_diffset(&cfg, g, out, &a),
        Command::Bent(f) => cmd_bent(&cfg, g, out, &f),
        Command::Report(r) => cmd_report(&cfg, out, &r.out),
    }
}

/// Runs a search and attaches reference row numbers when a reference table exists.
pub fn search_report(cfg: &RunConfig, plane: &Plane, tag: TypeTag, domain: DomainArg) -> anyhow::Result<SearchReport> {
    let (dom, dom_name) = domain_of(domain);
    let records = driver::parallel_search(plane, tag, dom, cfg.workers)?;
    let reference = match PlaneChoice::from_id(plane.presemifield().id())
        .and_then(|p| fixtures::reference_table(p, plane.n(), tag))
    {
        Some(t) if t.modulus()? == plane.ctx().modulus() => fixtures::match_records(plane, &t, &records)?,
        _ => vec![None; records.len()],
    };
    Ok(SearchReport::new(plane.ctx(), plane.presemifield().id(), tag, dom_name, &records, &reference))
}

fn cmd_field(cfg: &RunConfig, g: &Global, out: &mut dyn Write) -> anyhow::Result<Status> {
    let ctx = cfg.field()?;
    let mut brute = vec![0u32; ctx.q()];
    for x in ctx.elements() {
        brute[(ctx.mul(ctx.square(x), x) + x).0 as usize] += 1;
    }
    let matches = ctx.elements().all(|t| ctx.dickson3_count(t) == brute[t.0 as usize]);
    let criterion_mismatches: Vec<String> =
        ctx.elements().filter(|&t| ctx.dickson3_trace_criterion(t) != brute[t.0 as usize]).map(fe_hex).collect();
    emit_json(
        g,
        out,
        json!({
            "schema_version": SCHEMA_VERSION,
            "n": ctx.n(),
            "q": ctx.q(),
            "modulus_bits": format!("{:#x}", ctx.modulus()),
            "omega": fe_hex(ctx.omega()),
            "trace_mask": format!("{:#x}", ctx.trace_mask()),
            "trace_omega": ctx.trace(ctx.omega()),
            "cubic_root_count_matches_brute_force": matches,
            "trace_criterion_mismatches": criterion_mismatches.len(),
        }),
    )?;
    Ok(if matches { Status::Ok } else { Status::Failed })
}

/// Exhaustive axiom checks cost `q³` per presemifield.
pub const MAX_AXIOM_DEGREE: u32 = 9;

fn cmd_check_axioms(cfg: &RunConfig, g: &Global, out: &mut dyn Write) -> anyhow::Result<Status> {
    anyhow::ensure!(cfg.n <= MAX_AXIOM_DEGREE, "check-axioms is exhaustive and limited to n <= {MAX_AXIOM_DEGREE}");
    let ctx = cfg.field()?;
    let k = Presemifield::knuth(ctx.clone());
    let mut list = vec![("kn", k.clone(), false)];
    if cfg.n <= kplane::algebra::MAX_MATRIX_DEGREE {
        let t = k.derive(Derivation::Transpose)?;
        let td = t.derive(Derivation::Dual)?;
        list.push(("kn_t", t, false));
        list.push(("dual(kn_t)", td, true));
    }
    list.push(("kn_td", Presemifield::knuth_symplectic(ctx), true));
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, s, symplectic) in list {
        let r = s.verify(symplectic);
        ok &= r.passed();
        rows.push(json!({
            "presemifield": name,
            "left_distributive": r.left_distributive,
            "right_distributive": r.right_distributive,
            "no_zero_divisors": r.no_zero_divisors,
            "commutative": r.commutative,
            "symplectic": r.symplectic,
            "orthogonal_to_knuth": r.orthogonal_to_knuth,
            "passed": r.passed(),
        }));
    }
    emit_json(g, out, json!({ "schema_version": SCHEMA_VERSION, "n": cfg.n, "results": rows }))?;
    Ok(if ok { Status::Ok } else { Status::Failed })
}

fn cmd_verify(cfg: &RunConfig, g: &Global, out: &mut dyn Write, c: &Construction) -> anyhow::Result<Status> {
    let ctx = cfg.field()?;
    let (plane_used, passed, detail) = match c.construction {
        ConstructionKind::Standard => {
            let p = cfg.plane()?;
            let o = standard_hyperoval(&p)?;
            (cfg.plane, is_hyperoval(&p, &o)?, String::new())
        }
        ConstructionKind::Og => {
            let p = cfg.plane_of(PlaneChoice::Kn)?;
            (PlaneChoice::Kn, is_hyperoval(&p, &og_hyperoval(&ctx))?, String::new())
        }
        ConstructionKind::Od => {
            let p = cfg.plane_of(PlaneChoice::KnTd)?;
            let o = od_hyperoval(&ctx, c.d)?;
            (PlaneChoice::KnTd, is_hyperoval(&p, &o)?, format!(" d={}", c.d))
        }
        ConstructionKind::TypeA => {
            let p = cfg.plane()?;
            let l = parse_function(&ctx, &c.function)?.context("--coeffs or --omega is required")?;
            let ok = check_type_a(&p, &l) && is_hyperoval(&p, &type_a_hyperoval(&ctx, &l))?;
            (cfg.plane, ok, String::new())
        }
        ConstructionKind::TypeB => {
            let p = cfg.plane()?;
            let l = parse_function(&ctx, &c.function)?.context("--coeffs or --omega is required")?;
            match check_type_b(&p, &l) {
                Some(alpha) => {
                    (cfg.plane, is_hyperoval(&p, &type_b_hyperoval(&ctx, &l, alpha))?, format!(" alpha={}", fe_hex(alpha)))
                }
                None => (cfg.plane, false, String::new()),
            }
        }
        ConstructionKind::LineA | ConstructionKind::LineB => {
            let kn = cfg.plane_of(PlaneChoice::Kn)?;
            let td = cfg.plane_of(PlaneChoice::KnTd)?;
            let lh = if c.construction == ConstructionKind::LineA {
                dualize_type_a(&kn, &function_or_square(&ctx, &c.function)?)
            } else {
                let l = parse_function(&ctx, &c.function)?.unwrap_or_else(|| LinearizedPoly::from_exponents(cfg.n, &[1, 0]));
                match check_type_b(&kn, &l) {
                    Some(alpha) => dualize_type_b(&kn, &l, alpha),
                    None => Err(kplane::Error::NotTypeB),
                }
            };
            match lh {
                Ok(lh) => (PlaneChoice::KnTd, is_line_hyperoval(&td, &lh)?, String::new()),
                Err(e) => (PlaneChoice::KnTd, false, format!(" ({e})")),
            }
        }
    };
    let name = c.construction.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let line = format!(
        "{} construction={} plane={} n={}{}\n",
        if passed { "PASS" } else { "FAIL" },
        name,
        plane_used.name(),
        cfg.n,
        detail
    );
    emit(g, out, &line)?;
    Ok(if passed { Status::Ok } else { Status::Failed })
}

fn cmd_classify(cfg: &RunConfig, g: &Global, out: &mut dyn Write, domain: DomainArg) -> anyhow::Result<Status> {
    let plane = cfg.plane()?;
    let mut text = String::new();
    let mut ok = true;
    let mut reports = Vec::new();
    for tag in [TypeTag::A, TypeTag::B] {
        let rep = search_report(cfg, &plane, tag, domain)?;
        if let Some(t) = fixtures::reference_table(cfg.plane, cfg.n, tag) {
            for row in &t.rows {
                let hits = rep.classes.iter().filter(|c| c.reference_no == Some(row.no)).count();
                ok &= hits == 1;
            }
        }
        reports.push(rep);
    }
    match cfg.format {
        Format::Json => text = serde_json::to_string_pretty(&reports)? + "\n",
        Format::Csv | Format::Md => {
            for r in &reports {
                text.push_str(&r.render(cfg.format)?);
                if cfg.format == Format::Md {
                    text.push('\n');
                }
            }
        }
    }
    emit(g, out, &text)?;
    Ok(if ok { Status::Ok } else { Status::Failed })
}

fn cmd_orbit(cfg: &RunConfig, g: &Global, out: &mut dyn Write, c: &Construction) -> anyhow::Result<Status> {
    let ctx = cfg.field()?;
    let (choice, o) = match c.construction {
        ConstructionKind::Og => (PlaneChoice::Kn, og_hyperoval(&ctx)),
        ConstructionKind::Od => (PlaneChoice::KnTd, od_hyperoval(&ctx, c.d)?),
        ConstructionKind::TypeB => {
            let p = cfg.plane()?;
            let l = parse_function(&ctx, &c.function)?.context("--coeffs or --omega is required")?;
            let alpha = check_type_b(&p, &l).context("not a type (b) function in this plane")?;
            (cfg.plane, type_b_hyperoval(&ctx, &l, alpha))
        }
        other => bail!("orbit needs a type (b) construction (og, od, type-b), not {other:?}"),
    };
    let plane = cfg.plane_of(choice)?;
    let r = orbit_intersections(&plane, &o)?;
    let consistent = r.has_six() == r.six_condition && r.histogram.keys().all(|k| [0, 2, 4, 6].contains(k));
    let hist: serde_json::Map<String, serde_json::Value> =
        r.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    emit_json(
        g,
        out,
        json!({
            "schema_version": SCHEMA_VERSION,
            "plane": choice.name(),
            "n": cfg.n,
            "distinct_images": r.distinct_images,
            "histogram": hist,
            "has_six": r.has_six(),
            "six_condition": r.six_condition,
            "consistent": consistent,
        }),
    )?;
    Ok(if consistent { Status::Ok } else { Status::Failed })
}

fn type_a_input(cfg: &RunConfig, f: &FunctionArgs) -> anyhow::Result<(Plane, LinearizedPoly)> {
    let plane = cfg.plane()?;
    let l = function_or_square(plane.ctx(), f)?;
    anyhow::ensure!(check_type_a(&plane, &l), "function does not define a type (a) hyperoval in this plane");
    Ok((plane, l))
}

fn cmd_design(cfg: &RunConfig, g: &Global, out: &mut dyn Write, a: &DesignArgs) -> anyhow::Result<Status> {
    let (plane, l) = type_a_input(cfg, &a.function)?;
    let o = type_a_hyperoval(plane.ctx(), &l);
    let d = build_design(&plane, &o)?;
    let inv = design_invariants(&d);
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "plane": cfg.plane.name(),
        "n": cfg.n,
        "function": l.display(plane.ctx(), "x").to_string(),
        "params": inv.params,
        "rank2": inv.rank2,
        "replication_ok": inv.replication_ok,
    });
    if a.compare_bent {
        let bd = bent_design(&plane, &l)?;
        let rep = distinguish_designs(&d, &bd, cfg.samples, cfg.seed)?;
        let outcome = match &rep.outcome {
            Distinction::Inconclusive => json!({ "result": "inconclusive" }),
            Distinction::Distinguished(Witness::Rank2 { first, second }) => {
                json!({ "result": "distinguished", "witness": "rank2", "first": first, "second": second })
            }
            Distinction::Distinguished(Witness::TripleIntersection { value, found_in_first }) => json!({
                "result": "distinguished",
                "witness": "triple_intersection",
                "value": value,
                "found_in_first": found_in_first,
            }),
        };
        v["bent_design"] = json!({
            "params": bd.params(),
            "rank2": rep.rank2.1,
            "comparison": outcome,
            "samples": cfg.samples,
            "seed": cfg.seed,
        });
    }
    emit_json(g, out, v)?;
    Ok(Status::Ok)
}

fn cmd_diffset(cfg: &RunConfig, g: &Global, out: &mut dyn Write, a: &DiffsetArgs) -> anyhow::Result<Status> {
    let (plane, l) = type_a_input(cfg, &a.function)?;
    let o = type_a_hyperoval(plane.ctx(), &l);
    let group = match a.group {
        GroupArg::G1 => GroupId::G1,
        GroupArg::G2 => GroupId::G2,
    };
    let stats = group_order_stats(&plane, group);
    let result = difference_set(&plane, &o, group);
    let ok = result.is_ok() && stats.certified;
    let hist: serde_json::Map<String, serde_json::Value> =
        stats.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let (params, complement) = match &result {
        Ok(ds) => (json!(ds.params), json!(ds.complement_params)),
        Err(_) => (json!(null), json!(null)),
    };
    emit_json(
        g,
        out,
        json!({
            "schema_version": SCHEMA_VERSION,
            "group": format!("{:?}", group),
            "n": cfg.n,
            "params": params,
            "complement_params": complement,
            "group_order": stats.order,
            "abelian": stats.abelian,
            "exponent": stats.exponent,
            "order_histogram": hist,
            "structure_certified": stats.certified,
        }),
    )?;
    Ok(if ok { Status::Ok } else { Status::Failed })
}

fn cmd_bent(cfg: &RunConfig, g: &Global, out: &mut dyn Write, f: &FunctionArgs) -> anyhow::Result<Status> {
    let (plane, l) = type_a_input(cfg, f)?;
    let r = bent_from_hyperoval(&plane, &type_a_hyperoval(plane.ctx(), &l))?;
    let spec: serde_json::Map<String, serde_json::Value> =
        r.spectrum.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    emit_json(
        g,
        out,
        json!({
            "schema_version": SCHEMA_VERSION,
            "n": cfg.n,
            "variables": 2 * cfg.n,
            "function": l.display(plane.ctx(), "x").to_string(),
            "weight": r.indicator.iter().filter(|&&b| b).count(),
            "spectrum": spec,
            "is_bent": r.is_bent,
        }),
    )?;
    Ok(if r.is_bent { Status::Ok } else { Status::Failed })
}

/// Markdown listing of a reference table with the matching search class numbers.
pub fn reference_markdown(cfg: &RunConfig, name: &str) -> anyhow::Result<String> {
    let (_, table) = fixtures::reference_tables()
        .into_iter()
        .find(|(n, _)| *n == name)
        .with_context(|| format!("no reference table {name}"))?;
    let cfg = RunConfig { n: table.n, plane: table.plane, modulus: Some(table.modulus()?), ..cfg.clone() };
    let plane = cfg.plane()?;
    let ctx = plane.ctx();
    let tag = table.tag();
    let report = search_report(&cfg, &plane, tag, DomainArg::Full)?;
    let var = if tag == TypeTag::A { "x" } else { "y" };
    let mut s = String::new();
    let _ = writeln!(s, "# Reference classes of type ({}) in the {} plane, n = {}\n", table.type_tag, table.plane.name(), table.n);
    let _ = writeln!(s, "ω is a root of the modulus {}.\n", table.modulus_bits);
    s.push_str("| No. | α | Function | Search class |\n|---|---|---|---|\n");
    for row in &table.rows {
        let class = report.classes.iter().find(|c| c.reference_no == Some(row.no)).map_or(String::new(), |c| c.no.to_string());
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} |",
            row.no,
            alpha_cell(row.alpha_omega, row.alpha_omega.is_some()),
            row.poly(ctx).display(ctx, var),
            class
        );
    }
    Ok(s)
}

fn cmd_report(cfg: &RunConfig, out: &mut dyn Write, dir: &PathBuf) -> anyhow::Result<Status> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (name, _) in fixtures::reference_tables() {
        let md = reference_markdown(cfg, name)?;
        let path = dir.join(format!("{name}.md"));
        std::fs::write(&path, md).with_context(|| format!("writing {}", path.display()))?;
        writeln!(out, "wrote {}", path.display())?;
    }
    for (choice, tag) in [(PlaneChoice::Kn, TypeTag::A), (PlaneChoice::Kn, TypeTag::B), (PlaneChoice::KnTd, TypeTag::A), (PlaneChoice::KnTd, TypeTag::B)] {
        let c = RunConfig { plane: choice, ..cfg.clone() };
        let plane = c.plane()?;
        let rep = search_report(&c, &plane, tag, DomainArg::Full)?;
        for format in [Format::Json, Format::Csv, Format::Md] {
            let ext = match format {
                Format::Json => "json",
                Format::Csv => "csv",
                Format::Md => "md",
            };
            let path = dir.join(format!("search_{}_{}_n{}.{ext}", choice.name(), tag.name(), c.n));
            std::fs::write(&path, rep.render(format)?).with_context(|| format!("writing {}", path.display()))?;
            writeln!(out, "wrote {}", path.display())?;
        }
    }
    Ok(Status::Ok)
}
