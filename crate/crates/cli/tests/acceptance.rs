//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are reported but do not fail the run.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use kplane::algebra::Derivation;
use kplane::designs::{
    bent_design, bent_from_hyperoval, build_design, difference_set, distinguish_designs, group_order_stats,
    orbit_intersections, Distinction, GroupId,
};
use kplane::ovals::{
    dualize_type_a, dualize_type_b, is_hyperoval, is_line_hyperoval, od_hyperoval, og_hyperoval, standard_hyperoval,
    type_b_hyperoval, LineHyperoval,
};
use kplane::search::{canonical_form, Domain, TypeTag};
use kplane::{Fe, FieldContext, LinearizedPoly, Plane, PlaneLine, Presemifield};
use kplane_cli::config::PlaneChoice;
use kplane_cli::fixtures::{match_records, reference_table, ReferenceTable};
use kplane_cli::report::SearchReport;
use kplane_cli::{driver, search_report, DomainArg};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The cubic root-count criterion cannot hold in full: the trace criterion
/// it quotes disagrees with brute force (e.g. x³ + x = 1 has no root in GF(32)).
const KNOWN_FAILURES: [u32; 1] = [9];

type Outcome = Result<String, String>;

fn field(n: u32) -> Arc<FieldContext> {
    Arc::new(FieldContext::new(n, None).unwrap())
}

fn kn(n: u32) -> Plane {
    Plane::new(Presemifield::knuth(field(n)))
}

fn kn_td(n: u32) -> Plane {
    Plane::new(Presemifield::knuth_symplectic(field(n)))
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(t: Duration, limit: Duration) -> Result<(), String> {
    check(t < limit, || format!("took {:.1}s, limit {:.0}s", t.as_secs_f64(), limit.as_secs_f64()))
}

fn table(plane: PlaneChoice, tag: TypeTag) -> ReferenceTable {
    reference_table(plane, 5, tag).expect("reference table")
}

fn c1_axioms() -> Outcome {
    let start = Instant::now();
    let ctx = field(5);
    let k = Presemifield::knuth(ctx.clone());
    let t = k.derive(Derivation::Transpose).map_err(|e| e.to_string())?;
    let dt = t.derive(Derivation::Dual).map_err(|e| e.to_string())?;
    let td = Presemifield::knuth_symplectic(ctx);
    for (name, s, symplectic) in [("kn", &k, false), ("kn_t", &t, false), ("dual(kn_t)", &dt, true), ("kn_td", &td, true)] {
        let r = s.verify(symplectic);
        check(r.passed(), || format!("{name}: {r:?}"))?;
        if symplectic {
            check(r.symplectic == Some(true) && r.orthogonal_to_knuth == Some(true), || format!("{name}: {r:?}"))?;
        }
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(5))?;
    Ok(format!("4 presemifields, all 32^3 triples, {:.2}s", t.as_secs_f64()))
}

fn c2_classification() -> Outcome {
    let workers = kplane_cli::config::resolve_workers(None).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let mut parts = Vec::new();
    for (choice, plane, tag, expected) in [
        (PlaneChoice::Kn, kn(5), TypeTag::A, 5),
        (PlaneChoice::Kn, kn(5), TypeTag::B, 12),
        (PlaneChoice::KnTd, kn_td(5), TypeTag::A, 0),
        (PlaneChoice::KnTd, kn_td(5), TypeTag::B, 10),
    ] {
        let records = driver::parallel_search(&plane, tag, Domain::Full, workers).map_err(|e| e.to_string())?;
        check(records.len() == expected, || {
            format!("{} type {}: {} classes, expected {expected}", choice.name(), tag.name(), records.len())
        })?;
        if let Some(t) = reference_table(choice, 5, tag) {
            let m = match_records(&plane, &t, &records).map_err(|e| e.to_string())?;
            for row in &t.rows {
                let hits = m.iter().filter(|x| **x == Some(row.no)).count();
                check(hits == 1, || format!("{} row {} matches {hits} classes", choice.name(), row.no))?;
            }
        }
        parts.push(format!("{}/{}={}", choice.name(), tag.name(), records.len()));
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(3600))?;
    let cpus = std::thread::available_parallelism().map_or(1, |n| n.get());
    let scaling = if cpus < 2 { "; speedup not measured, 1 CPU" } else { "" };
    Ok(format!("{}, every table row in exactly one class, {workers} worker(s), {:.1}s{scaling}", parts.join(" "), t.as_secs_f64()))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn c3_families() -> Outcome {
    let start = Instant::now();
    for n in [5, 7, 9, 11] {
        let p = kn(n);
        check(is_hyperoval(&p, &og_hyperoval(p.ctx())).unwrap(), || format!("og fails at n={n}"))?;
    }
    let mut count = 0;
    for n in [5, 7] {
        let p = kn_td(n);
        for d in (1..n).filter(|&d| gcd(d, n) == 1) {
            let o = od_hyperoval(p.ctx(), d).map_err(|e| e.to_string())?;
            check(is_hyperoval(&p, &o).unwrap(), || format!("od fails at n={n}, d={d}"))?;
            count += 1;
        }
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(120))?;
    Ok(format!("og n=5,7,9,11; od {count} shifts at n=5,7; {:.1}s", t.as_secs_f64()))
}

fn od_classes(n: u32) -> Vec<Vec<u32>> {
    let p = kn_td(n);
    let mut by_digest: BTreeMap<[u8; 32], Vec<u32>> = BTreeMap::new();
    for d in 1..n {
        let o = od_hyperoval(p.ctx(), d).unwrap();
        by_digest.entry(canonical_form(&p, &o).digest()).or_default().push(d);
    }
    let mut classes: Vec<Vec<u32>> = by_digest.into_values().collect();
    classes.sort();
    classes
}

fn c4_od_law() -> Outcome {
    let five = od_classes(5);
    check(five == vec![vec![1, 4], vec![2, 3]], || format!("n=5 classes {five:?}"))?;
    let seven = od_classes(7);
    check(seven == vec![vec![1, 6], vec![2, 5], vec![3, 4]], || format!("n=7 classes {seven:?}"))?;
    Ok(format!("n=5 {five:?}, n=7 {seven:?}"))
}

fn c5_line_hyperovals() -> Outcome {
    let p = kn(5);
    let td = kn_td(5);
    let ctx = p.ctx();
    for row in &table(PlaneChoice::Kn, TypeTag::A).rows {
        let lh = dualize_type_a(&p, &row.poly(ctx)).map_err(|e| format!("kn type (a) No. {}: {e}", row.no))?;
        check(is_line_hyperoval(&td, &lh).unwrap(), || format!("kn type (a) No. {} not a line hyperoval", row.no))?;
    }
    for row in &table(PlaneChoice::Kn, TypeTag::B).rows {
        let alpha = row.alpha(ctx).unwrap();
        let lh = dualize_type_b(&p, &row.poly(ctx), alpha).map_err(|e| format!("kn type (b) No. {}: {e}", row.no))?;
        check(is_line_hyperoval(&td, &lh).unwrap(), || format!("kn type (b) No. {} not a line hyperoval", row.no))?;
    }
    for n in [5, 7] {
        let td = kn_td(n);
        let ctx = td.ctx();
        let q = td.q();
        let a = LineHyperoval::from_lines(
            q,
            ctx.elements()
                .map(|m| PlaneLine::Sloped(ctx.square(m), m))
                .chain([PlaneLine::Vertical(Fe::ZERO), PlaneLine::AtInfinity]),
        );
        let b = LineHyperoval::from_lines(
            q,
            ctx.elements()
                .map(|m| PlaneLine::Sloped(m + ctx.sqrt(m), m))
                .chain([PlaneLine::Vertical(Fe::ZERO), PlaneLine::Vertical(Fe::ONE)]),
        );
        check(is_line_hyperoval(&td, &a).unwrap(), || format!("{{l_(m^2,m)}} fails at n={n}"))?;
        check(is_line_hyperoval(&td, &b).unwrap(), || format!("{{l_(m+sqrt m,m)}} fails at n={n}"))?;
    }
    Ok("5 type (a) and 12 type (b) duals, explicit sets at n=5,7".into())
}

fn c6_designs() -> Outcome {
    let start = Instant::now();
    let p = kn(5);
    let o = standard_hyperoval(&p).map_err(|e| e.to_string())?;
    // build_design checks every pair of blocks.
    let d = build_design(&p, &o).map_err(|e| e.to_string())?;
    check(d.params() == Some((1024, 528, 272)), || format!("params {:?}", d.params()))?;
    for (g, structure) in [(GroupId::G1, "C2^10"), (GroupId::G2, "C4^5")] {
        let ds = difference_set(&p, &o, g).map_err(|e| format!("{g:?}: {e}"))?;
        check(ds.params == (1024, 528, 272) && ds.complement_params == (1024, 496, 240), || {
            format!("{g:?}: {:?} / {:?}", ds.params, ds.complement_params)
        })?;
        let s = group_order_stats(&p, g);
        let exponent = if g == GroupId::G1 { 2 } else { 4 };
        check(s.certified && s.abelian && s.exponent == exponent && s.order == 1024, || {
            format!("{g:?} is not {structure}: {s:?}")
        })?;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(60))?;
    Ok(format!("(1024,528,272), complement (1024,496,240), C2^10 and C4^5, {:.1}s", t.as_secs_f64()))
}

fn c7_bent() -> Outcome {
    let p = kn(5);
    for row in &table(PlaneChoice::Kn, TypeTag::A).rows {
        let o = kplane::ovals::type_a_hyperoval(p.ctx(), &row.poly(p.ctx()));
        let r = bent_from_hyperoval(&p, &o).map_err(|e| e.to_string())?;
        check(r.spectrum.keys().all(|&w| w == 32 || w == -32), || format!("row {}: {:?}", row.no, r.spectrum))?;
    }
    Ok("5 functions of 10 variables, spectra in {-32, 32}".into())
}

fn c8_orbits() -> Outcome {
    let mut cases: Vec<(String, Plane, kplane::ovals::Hyperoval, bool)> = Vec::new();
    let p = kn(5);
    cases.push(("O_g".into(), p.clone(), og_hyperoval(p.ctx()), false));
    for (choice, plane, label, sixes) in
        [(PlaneChoice::Kn, kn(5), "kn type (b)", [3, 8, 10, 12]), (PlaneChoice::KnTd, kn_td(5), "kn_td type (b)", [3, 6, 9, 10])]
    {
        for row in &table(choice, TypeTag::B).rows {
            let ctx = plane.ctx();
            let o = type_b_hyperoval(ctx, &row.poly(ctx), row.alpha(ctx).unwrap());
            let expect_six = sixes.contains(&row.no);
            cases.push((format!("{label} No. {}", row.no), plane.clone(), o, expect_six));
        }
    }
    let mut with_six = Vec::new();
    for (name, plane, o, expect_six) in &cases {
        let r = orbit_intersections(plane, o).map_err(|e| format!("{name}: {e}"))?;
        check(r.histogram.keys().all(|k| [0, 2, 4, 6].contains(k)), || format!("{name}: {:?}", r.histogram))?;
        check(r.has_six() == r.six_condition, || format!("{name}: six {} vs condition {}", r.has_six(), r.six_condition))?;
        if *expect_six || name == "O_g" {
            check(r.has_six() == *expect_six, || format!("{name}: has six = {}", r.has_six()))?;
        }
        if r.has_six() {
            with_six.push(name.clone());
        }
    }
    Ok(format!("{} hyperovals checked; 6 occurs for {}", cases.len(), with_six.join(", ")))
}

fn c9_dickson() -> Outcome {
    let mut criterion_mismatch = Vec::new();
    for n in [5, 7, 9, 11] {
        let ctx = field(n);
        let mut brute = vec![0u32; ctx.q()];
        for x in ctx.elements() {
            brute[(ctx.mul(ctx.square(x), x) + x).0 as usize] += 1;
        }
        for t in ctx.elements() {
            let c = ctx.dickson3_count(t);
            check(c == brute[t.0 as usize], || format!("n={n}, t={t:?}: {c} vs {}", brute[t.0 as usize]))?;
        }
        let bad = ctx.elements().filter(|&t| ctx.dickson3_trace_criterion(t) != brute[t.0 as usize]).count();
        if bad > 0 {
            criterion_mismatch.push(format!("n={n}: {bad}"));
        }
    }
    if criterion_mismatch.is_empty() {
        Ok("brute force and trace criterion agree".into())
    } else {
        Err(format!(
            "root counts match brute force, but the trace criterion disagrees for {} values of t",
            criterion_mismatch.join(", ")
        ))
    }
}

fn c10_distinguishing() -> Outcome {
    let p = kn(5);
    let o = standard_hyperoval(&p).map_err(|e| e.to_string())?;
    let d = build_design(&p, &o).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut points: Vec<u32> = (0..1024).collect();
    let mut blocks: Vec<u32> = (0..1024).collect();
    for i in 0..1000 {
        points.shuffle(&mut rng);
        blocks.shuffle(&mut rng);
        let copy = d.permuted(&points, &blocks);
        let r = distinguish_designs(&d, &copy, 64, i).map_err(|e| e.to_string())?;
        check(r.outcome == Distinction::Inconclusive, || format!("permutation {i}: {:?}", r.outcome))?;
    }
    let l = LinearizedPoly::from_exponents(5, &[1]);
    let bd = bent_design(&p, &l).map_err(|e| e.to_string())?;
    let r = distinguish_designs(&d, &bd, 10_000, 1).map_err(|e| e.to_string())?;
    let verdict = match r.outcome {
        Distinction::Distinguished(w) => format!("x^2 block design vs bent design: distinguished by {w:?}"),
        Distinction::Inconclusive => "x^2 block design vs bent design: inconclusive".into(),
    };
    Ok(format!("1000 permuted copies never distinguished; {verdict}"))
}

fn c11_zero_one() -> Outcome {
    let mut parts = Vec::new();
    for (n, fixture) in [
        (7, include_str!("../fixtures/zero_one/kn7_type_a.json")),
        (9, include_str!("../fixtures/zero_one/kn9_type_a.json")),
        (11, include_str!("../fixtures/zero_one/kn11_type_a.json")),
    ] {
        let expected = SearchReport::from_json(fixture).map_err(|e| e.to_string())?;
        let cfg = kplane_cli::config::RunConfig { n, ..Default::default() };
        let plane = cfg.plane().map_err(|e| e.to_string())?;
        let start = Instant::now();
        let first = search_report(&cfg, &plane, TypeTag::A, DomainArg::ZeroOne).map_err(|e| e.to_string())?;
        let t = start.elapsed();
        within(t, Duration::from_secs(10)).map_err(|e| format!("n={n}: {e}"))?;
        let second = search_report(&cfg, &plane, TypeTag::A, DomainArg::ZeroOne).map_err(|e| e.to_string())?;
        check(first == second, || format!("n={n}: runs differ"))?;
        check(first == expected, || format!("n={n}: differs from the regression fixture"))?;
        parts.push(format!("n={n}: {} class(es) in {:.2}s", first.classes.len(), t.as_secs_f64()));
    }
    Ok(parts.join(", "))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "presemifield axioms", c1_axioms),
        (2, "classification counts", c2_classification),
        (3, "infinite families", c3_families),
        (4, "O_d equivalence law", c4_od_law),
        (5, "line hyperovals", c5_line_hyperovals),
        (6, "designs and difference sets", c6_designs),
        (7, "bent functions", c7_bent),
        (8, "orbit intersections", c8_orbits),
        (9, "cubic root counts", c9_dickson),
        (10, "design distinguishing", c10_distinguishing),
        (11, "zero-one searches", c11_zero_one),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (no, name, f) in criteria {
        if !filter.is_empty() && !filter.contains(&no) {
            continue;
        }
        match f() {
            Ok(detail) => println!("PASS {no:>2} {name}: {detail}"),
            Err(detail) => {
                let known = KNOWN_FAILURES.contains(&no);
                println!("FAIL {no:>2} {name}: {detail}{}", if known { " (known)" } else { "" });
                if !known {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        std::process::exit(1);
    }
}
