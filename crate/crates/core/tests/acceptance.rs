//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p tessgroup --test acceptance`. Set
//! `TESSGROUP_ACCEPT_SKIP_A7=1` to skip the A7 run (about 10 s).

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use tessgroup::cells::{cell_isomorphic, polygons, Tri};
use tessgroup::census::{analyze, Analysis, CensusOptions};
use tessgroup::checks::{run_checks, Status};
use tessgroup::decomposition::{decompose, monotonicity_check};
use tessgroup::enumerator::{enumerate, match_datum, Family};
use tessgroup::group::builtin::{
    alternating, dihedral, direct_product, extraspecial_exponent_p, frobenius21, quaternion8, symmetric,
};
use tessgroup::oracles::{compare, Expectation};
use tessgroup::parallel::with_threads;
use tessgroup::{Group, Homomorphism, Perm};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(g: &Group) -> Result<Analysis<'_>, String> {
    analyze(g, CensusOptions::default()).map_err(|e| format!("{}: {e}", g.label()))
}

fn symbols(a: &Analysis<'_>) -> Vec<String> {
    let mut s: Vec<String> = a.census.components.iter().map(|c| c.schlafli.to_string()).collect();
    s.sort();
    s
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took < budget, || format!("{what} took {took:.2?}, budget {budget:?}"))?;
    Ok(format!("{took:.2?}"))
}

fn ac1_dihedral() -> Outcome {
    let start = Instant::now();
    for n in 3..=30usize {
        let g = dihedral(2 * n).map_err(|e| e.to_string())?;
        let a = run(&g)?;
        let cmp = compare(Expectation::Dihedral(n as u64), &a.cells).map_err(|e| e.to_string())?;
        ensure(cmp.matches, || format!("D_{}: expected {:?}, got {:?}", 2 * n, cmp.expected, cmp.observed))?;
        ensure(a.census.genera == vec![0], || format!("D_{} has genera {:?}", 2 * n, a.census.genera))?;
    }
    let t = within(start, Duration::from_secs(1), "dihedral sweep")?;
    Ok(format!("n = 3..30 equal to the closed form, all spheres, {t}"))
}

fn ac2_small_fixtures() -> Outcome {
    let s3 = symmetric(3).map_err(|e| e.to_string())?;
    let a = run(&s3)?;
    ensure(symbols(&a) == ["{3,2}", "{4,2-3}"], || format!("S3 symbols {:?}", symbols(&a)))?;

    let (d8, q8) = (dihedral(8).map_err(|e| e.to_string())?, quaternion8());
    let (ad, aq) = (run(&d8)?, run(&q8)?);
    for a in [&ad, &aq] {
        ensure(symbols(a) == ["{4,2}"; 3], || format!("{} symbols {:?}", a.census.group, symbols(a)))?;
        ensure(a.census.m_g == BTreeMap::from([(0, 3)]), || format!("{} m_g {:?}", a.census.group, a.census.m_g))?;
    }
    ensure(aq.census.circles == 4, || format!("L(Q8) = {}", aq.census.circles))?;
    ensure(ad.census.symbols == aq.census.symbols, || "D8 and Q8 summaries differ".into())?;
    // Pair the components by an explicit cell isomorphism search.
    let pd: Vec<_> = (0..3).map(|i| polygons(&ad.decomposition, i).unwrap()).collect();
    let pq: Vec<_> = (0..3).map(|i| polygons(&aq.decomposition, i).unwrap()).collect();
    let mut used = [false; 3];
    for p in &pd {
        let j = (0..3).find(|&j| !used[j] && cell_isomorphic(p, &pq[j]));
        let j = j.ok_or("a D8 component has no isomorphic Q8 partner")?;
        used[j] = true;
    }
    Ok("S3 = {3,2} + {4,2-3}; D8, Q8 = 3 x {4,2}, cell-isomorphic; L(Q8) = 4, m_0(Q8) = 3".into())
}

fn ac3_extraspecial() -> Outcome {
    let start = Instant::now();
    for (p, comps, genus, symbol, vef) in [(3, 24, 1, "{6,3}", (6, 9, 3)), (5, 240, 6, "{10,5}", (10, 25, 5))] {
        let g = extraspecial_exponent_p(p).map_err(|e| e.to_string())?;
        let a = run(&g)?;
        ensure(a.census.component_count == comps, || format!("U3({p}): {} components", a.census.component_count))?;
        for c in &a.census.components {
            let got = (c.cells.v, c.cells.e, c.cells.f);
            ensure(c.genus == genus && c.schlafli.to_string() == symbol && got == vef, || {
                format!("U3({p}) component g={} {} {:?}", c.genus, c.schlafli, got)
            })?;
            ensure(c.flags.regular_sufficient == Tri::True, || format!("U3({p}) regular flag {:?}", c.flags))?;
        }
        let cmp = compare(Expectation::Extraspecial(p as u64), &a.cells).map_err(|e| e.to_string())?;
        ensure(cmp.matches, || format!("U3({p}) oracle mismatch"))?;
    }
    let t = within(start, Duration::from_secs(5), "extraspecial censuses")?;
    Ok(format!("U3(3): 24 x {{6,3}} g=1; U3(5): 240 x {{10,5}} g=6; regular; {t}"))
}

fn ac4_s5_table() -> Outcome {
    let g = symmetric(5).map_err(|e| e.to_string())?;
    let a = run(&g)?;
    let realized: BTreeSet<(String, u64, u64, u64)> = a
        .census
        .components
        .iter()
        .filter(|c| c.genus == 0)
        .map(|c| (c.schlafli.to_string(), c.cells.v, c.cells.e, c.cells.f))
        .collect();
    let rows: Vec<_> = enumerate(0).into_iter().filter(|d| d.family == Family::Finite).collect();
    ensure(rows.len() == 12, || format!("{} concrete genus-0 rows", rows.len()))?;
    for d in &rows {
        let (v, e, f) = d.counts().ok_or("finite row without counts")?;
        let key = (d.symbol().unwrap().to_string(), v, e, f);
        ensure(realized.contains(&key), || format!("S5 does not realize {key:?}"))?;
    }
    let families: BTreeSet<Family> = a.census.components.iter().map(|c| c.datum.family).collect();
    ensure(
        families.contains(&Family::Hosohedral) && families.contains(&Family::DoubleHosohedral),
        || format!("families seen: {families:?}"),
    )?;
    let torus = a
        .census
        .components
        .iter()
        .any(|c| c.genus == 1 && c.schlafli.to_string() == "{4,4}" && (c.cells.v, c.cells.e, c.cells.f) == (5, 10, 5));
    ensure(torus, || "no genus-1 {4,4} component with (5,10,5)".into())?;
    Ok("all 12 concrete rows, both families, and a (5,10,5) {4,4} torus".into())
}

fn ac5_s6() -> Outcome {
    let start = Instant::now();
    let g = symmetric(6).map_err(|e| e.to_string())?;
    let a = run(&g)?;
    ensure(a.census.component_count == 4477, || format!("{} components", a.census.component_count))?;
    ensure(a.census.genera.len() == 27, || format!("{} genera", a.census.genera.len()))?;
    let t = within(start, Duration::from_secs(120), "S6 census")?;
    Ok(format!("4477 components, 27 genera, {} faces, {t}", a.census.stats.faces))
}

fn ac6_a7() -> Outcome {
    let start = Instant::now();
    let g = alternating(7).map_err(|e| e.to_string())?;
    let a = run(&g)?;
    ensure(a.census.component_count == 16813, || format!("{} components", a.census.component_count))?;
    ensure(a.census.genera.len() == 58, || format!("{} genera", a.census.genera.len()))?;
    Ok(format!(
        "16813 components, 58 genera, {} faces, {:.2?}",
        a.census.stats.faces,
        start.elapsed()
    ))
}

fn corpus() -> Vec<Group> {
    let mut out = Vec::new();
    for n in 3..=6 {
        out.push(symmetric(n).unwrap());
    }
    for n in 4..=6 {
        out.push(alternating(n).unwrap());
    }
    for n in 3..=30 {
        out.push(dihedral(2 * n).unwrap());
    }
    out.push(quaternion8());
    out.push(extraspecial_exponent_p(3).unwrap());
    out.push(extraspecial_exponent_p(5).unwrap());
    out.push(frobenius21());
    out
}

fn ac7_identities() -> Outcome {
    let groups = corpus();
    for g in &groups {
        let report = run_checks(g, CensusOptions::default(), true);
        if let Some(bad) = report.failures().next() {
            return Err(format!("{}: {} failed: {}", g.label(), bad.name, bad.detail));
        }
        for name in [
            "euler_characteristic",
            "alpha_orbit_sum",
            "centralizer_sum",
            "commuting_probability",
            "nonproductive_counts_even",
            "involution_orbits",
            "sheet_predictions",
        ] {
            let found = report.checks.iter().any(|c| c.name == name && c.status == Status::Pass);
            ensure(found, || format!("{}: {name} did not run", g.label()))?;
        }
        let p = g.commuting_probability();
        ensure(p.by_pairs == p.by_classes, || format!("{}: commuting probability", g.label()))?;
    }
    Ok(format!("{} groups, every identity exact", groups.len()))
}

fn ac8_odd_order() -> Outcome {
    for g in [
        extraspecial_exponent_p(3).unwrap(),
        extraspecial_exponent_p(5).unwrap(),
        frobenius21(),
    ] {
        let d = decompose(&g).map_err(|e| e.to_string())?;
        let m = d.genus_census();
        ensure(!m.contains_key(&0), || format!("{} has m_0 = {:?}", g.label(), m.get(&0)))?;
    }
    Ok("U3(3), U3(5), F21 have no spheres".into())
}

/// The genus-0 catalogue: (faces, symbol, vertices, edges).
const GENUS_ZERO_ROWS: [(&str, &str, &str, &str); 14] = [
    ("2", "{n,2}", "n", "n"),
    ("k", "{4,2-k}", "k+2", "2k"),
    ("4", "{3,3}", "4", "6"),
    ("4", "{6,2-3}", "10", "12"),
    ("6", "{4,3}", "8", "12"),
    ("6", "{8,2-3}", "20", "24"),
    ("8", "{3,4}", "6", "12"),
    ("8", "{6,2-4}", "18", "24"),
    ("12", "{5,3}", "20", "30"),
    ("12", "{10,2-3}", "50", "60"),
    ("12", "{4,3-4}", "14", "24"),
    ("20", "{3,5}", "12", "30"),
    ("20", "{6,2-5}", "42", "60"),
    ("30", "{4,3-5}", "32", "60"),
];

fn ac9_enumerator() -> Outcome {
    let show = |c: &tessgroup::enumerator::Count| serde_json::to_value(c).unwrap().to_string().replace('"', "");
    let got: BTreeSet<(String, String, String, String)> = enumerate(0)
        .iter()
        .map(|d| (show(&d.faces), d.schlafli.clone(), show(&d.vertices), show(&d.edges)))
        .collect();
    let want: BTreeSet<(String, String, String, String)> = GENUS_ZERO_ROWS
        .iter()
        .map(|&(f, s, v, e)| (f.into(), s.into(), v.into(), e.into()))
        .collect();
    ensure(got == want, || format!("genus 0 differs: extra {:?}, missing {:?}", &got - &want, &want - &got))?;
    let torus: BTreeSet<String> = enumerate(1).into_iter().map(|d| d.schlafli).collect();
    let expected: BTreeSet<String> = ["{3,6}", "{6,2-6}", "{4,4}", "{8,2-4}", "{6,3}", "{12,2-3}", "{4,3-6}"]
        .into_iter()
        .map(String::from)
        .collect();
    ensure(torus == expected, || format!("genus 1 symbols {torus:?}"))?;
    let mut matched = 0;
    for g in corpus() {
        let a = run(&g)?;
        for cc in &a.cells {
            match_datum(cc.genus, cc.schlafli, cc.v_cell, cc.e_cell, cc.f_cell)
                .map_err(|e| format!("{}: {e}", g.label()))?;
            matched += 1;
        }
    }
    Ok(format!("genus-0 catalogue (14 rows) and 7 torus symbols exact; {matched} corpus components matched"))
}

/// Right regular representation of `g` on the points `0..|g|`.
fn regular_image(g: &Group) -> (Group, Vec<usize>) {
    let perm = |x: usize| Perm::from_images((0..g.order()).map(|h| g.mul(h, x) as u32).collect()).unwrap();
    let image = Group::from_permutations(&(0..g.order()).map(perm).collect::<Vec<_>>(), 1000).unwrap();
    let perms = image.permutations().unwrap();
    let map = (0..g.order()).map(|x| perms.iter().position(|p| *p == perm(x)).unwrap()).collect();
    (image, map)
}

fn ac10_monotonicity() -> Outcome {
    let chain = [symmetric(3).unwrap(), symmetric(4).unwrap(), symmetric(5).unwrap()];
    let decs: Vec<_> = chain.iter().map(|g| decompose(g).unwrap()).collect();
    let mut lines = Vec::new();
    for k in 0..2 {
        let hom = Homomorphism::permutation_inclusion(&chain[k], &chain[k + 1]).map_err(|e| e.to_string())?;
        let r = monotonicity_check(&hom, &decs[k], &decs[k + 1]).map_err(|e| e.to_string())?;
        lines.push(format!("S{} -> S{} ({} -> {} components)", k + 3, k + 4, r.source_components, r.target_components));
    }
    let q8 = quaternion8();
    let (image, map) = regular_image(&q8);
    let hom = Homomorphism::new(&q8, &image, map).map_err(|e| e.to_string())?;
    let (dq, di) = (decompose(&q8).unwrap(), decompose(&image).unwrap());
    monotonicity_check(&hom, &dq, &di).map_err(|e| e.to_string())?;
    lines.push("Q8 -> regular image in S8".into());
    let big = direct_product(&q8, &symmetric(3).unwrap()).unwrap();
    let inclusion = (0..8).map(|x| x * 6).collect();
    let hom = Homomorphism::new(&q8, &big, inclusion).map_err(|e| e.to_string())?;
    let db = decompose(&big).unwrap();
    monotonicity_check(&hom, &dq, &db).map_err(|e| e.to_string())?;
    let spheres = db.genus_census().get(&0).copied().unwrap_or(0);
    ensure(spheres >= 3, || format!("m_0(Q8 x S3) = {spheres}"))?;
    lines.push(format!("Q8 -> Q8 x S3 (m_0 = {spheres})"));
    Ok(lines.join("; "))
}

fn ac11_determinism() -> Outcome {
    let g = symmetric(5).unwrap();
    let outputs: Vec<String> = [1, 2, 8]
        .into_iter()
        .map(|t| with_threads(Some(t), || run(&g).map(|a| a.census.to_json())).unwrap())
        .collect::<Result<_, _>>()?;
    ensure(outputs.iter().all(|o| *o == outputs[0]), || "census JSON differs between thread counts".into())?;
    Ok(format!("S5 census JSON identical for 1, 2, 8 threads ({} bytes)", outputs[0].len()))
}

fn main() {
    let skip_a7 = std::env::var("TESSGROUP_ACCEPT_SKIP_A7").is_ok_and(|v| v == "1");
    let criteria: [(&str, &str, fn() -> Outcome); 11] = [
        ("AC1", "dihedral oracle", ac1_dihedral),
        ("AC2", "S3, D8, Q8 fixtures", ac2_small_fixtures),
        ("AC3", "extraspecial oracle", ac3_extraspecial),
        ("AC4", "S5 realizes every genus-0 datum", ac4_s5_table),
        ("AC5", "S6 headline", ac5_s6),
        ("AC6", "A7 extended", ac6_a7),
        ("AC7", "identity suite", ac7_identities),
        ("AC8", "odd order has no spheres", ac8_odd_order),
        ("AC9", "enumerator", ac9_enumerator),
        ("AC10", "monotonicity", ac10_monotonicity),
        ("AC11", "determinism", ac11_determinism),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        if id == "AC6" && skip_a7 {
            println!("SKIP {id} {name}: TESSGROUP_ACCEPT_SKIP_A7=1");
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {id} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id} {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
