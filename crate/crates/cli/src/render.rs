//! Plain-text views of the reports. JSON output serializes the report types
//! directly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use tessgroup::checks::{CheckReport, Status};
use tessgroup::enumerator::{Count, TesselationDatum};
use tessgroup::{Census, Group};

pub fn census_text(c: &Census) -> String {
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "group {} (order {}, center {}, {} classes)", c.group, c.order, c.center_size, c.class_count).unwrap();
    writeln!(
        w,
        "X(G): {} vertices, {} type-1 edges, {} faces, chi = {}",
        c.stats.vertices, c.stats.e1, c.stats.faces, c.stats.euler
    )
    .unwrap();
    writeln!(w, "components {}, distinct genera {}, L = {}", c.component_count, c.genera.len(), c.circles).unwrap();
    let census: Vec<String> = c.m_g.iter().map(|(g, m)| format!("m_{g}={m}")).collect();
    writeln!(w, "genus census: {}", census.join(" ")).unwrap();
    writeln!(w, "symbols:").unwrap();
    for e in &c.symbols {
        let k = &e.class;
        writeln!(
            w,
            "  {:<12} genus {:<3} (V,E,F) = ({},{},{})  x{}",
            k.schlafli.to_string(),
            k.genus,
            k.v,
            k.e,
            k.f,
            e.count
        )
        .unwrap();
    }
    writeln!(w, "identities:").unwrap();
    for id in &c.identities {
        let verdict = if id.holds { "ok" } else { "FAILED" };
        writeln!(w, "  {:<40} {} = {}  {verdict}", id.name, id.lhs, id.rhs).unwrap();
    }
    s
}

pub fn check_text(r: &CheckReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        writeln!(s, "{tag} {:<40} {}", c.name, c.detail).unwrap();
    }
    let verdict = if r.passed { "all checks passed" } else { "checks FAILED" };
    let early = if r.stopped_early { " (stopped at first failure)" } else { "" };
    writeln!(s, "{}: {verdict}{early}", r.group).unwrap();
    s
}

fn count(c: &Count) -> String {
    match c {
        Count::Exact(v) => v.to_string(),
        Count::Symbolic(v) => v.clone(),
    }
}

pub fn enumerate_text(genus: u64, rows: &[TesselationDatum]) -> String {
    let mut s = String::new();
    writeln!(s, "genus {genus}: {} rows", rows.len()).unwrap();
    writeln!(s, "{:>9}  {:<16} {:>10} {:>9}  Solid Type", "# Faces", "Schlafli Symbol", "# Vertices", "# Edges").unwrap();
    for d in rows {
        let symbol = match &d.double_of {
            Some(under) if !d.schlafli.contains('k') => format!("{}=D{under}", d.schlafli),
            _ => d.schlafli.clone(),
        };
        writeln!(
            s,
            "{:>9}  {:<16} {:>10} {:>9}  {}",
            count(&d.faces),
            symbol,
            count(&d.vertices),
            count(&d.edges),
            d.solid_type.as_deref().unwrap_or("-")
        )
        .unwrap();
    }
    s
}

fn element_orders(g: &Group) -> BTreeMap<usize, usize> {
    let mut orders = BTreeMap::new();
    for x in 0..g.order() {
        *orders.entry(g.element_order(x)).or_insert(0) += 1;
    }
    orders
}

pub fn group_info_json(g: &Group, faces: u64) -> Value {
    let classes: Vec<Value> = g
        .conj_classes()
        .iter()
        .map(|c| {
            json!({
                "representative": g.name(c[0]),
                "size": c.len(),
                "element_order": g.element_order(c[0]),
                "central": g.is_central(c[0]),
            })
        })
        .collect();
    json!({
        "schema_version": tessgroup::census::SCHEMA_VERSION,
        "group": g.label(),
        "order": g.order(),
        "center_size": g.center().len(),
        "class_count": g.class_count(),
        "commutator_subgroup_order": g.commutator_subgroup().len(),
        "commuting_probability": g.commuting_probability().by_classes.to_string(),
        "faces": faces,
        "element_orders": element_orders(g),
        "classes": classes,
        "warnings": g.warnings().iter().map(|w| format!("{w:?}")).collect::<Vec<_>>(),
    })
}

pub fn group_info_text(g: &Group, faces: u64) -> String {
    let mut s = String::new();
    writeln!(s, "group {}", g.label()).unwrap();
    writeln!(s, "order {}, center {}, classes {}", g.order(), g.center().len(), g.class_count()).unwrap();
    writeln!(s, "commutator subgroup order {}", g.commutator_subgroup().len()).unwrap();
    writeln!(s, "commuting probability {}", g.commuting_probability().by_classes).unwrap();
    writeln!(s, "faces of X(G): {faces}").unwrap();
    let orders: Vec<String> = element_orders(g).iter().map(|(o, k)| format!("{o}:{k}")).collect();
    writeln!(s, "element orders (order:count): {}", orders.join(" ")).unwrap();
    writeln!(s, "classes (representative, size):").unwrap();
    for c in g.conj_classes() {
        writeln!(s, "  {:<24} {}", g.name(c[0]), c.len()).unwrap();
    }
    s
}
