//! End-to-end census of `Y(G)` and its cell structures.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::alpha::{all_counts, predicted_sheet_total, AlphaCounts};
use crate::automorphism::DEFAULT_SEARCH_CAP;
use crate::cells::{
    cell_structure, divisibility_report, doubling_relation, polytope_flags, CellComplex, DivisibilityReport, Doubling,
    PolytopeFlags,
};
use crate::complex::{build_stats, ComplexStats};
use crate::decomposition::{decompose, verify_global_identities, Decomposition, IdentityCheck};
use crate::enumerator::{match_datum, Family};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::oracles::{ExpectedCensus, SymbolCount};
use crate::schlafli::Schlafli;

/// Version of the census JSON layout described in `docs/formats.md`.
pub const SCHEMA_VERSION: u32 = 1;

/// Face count above which callers should demand explicit consent.
pub const LARGE_FACE_COUNT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    /// Largest group order for which automorphisms are searched.
    pub search_cap: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            search_cap: DEFAULT_SEARCH_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellSummary {
    #[serde(rename = "V")]
    pub v: u64,
    #[serde(rename = "E")]
    pub e: u64,
    #[serde(rename = "F")]
    pub f: u64,
    pub n: u32,
    pub lambda1: u32,
    pub lambda2: u32,
    #[serde(rename = "V1")]
    pub v1: u64,
    #[serde(rename = "V2")]
    pub v2: u64,
    pub avg_valency: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumSummary {
    pub family: Family,
    pub schlafli: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solid_type: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub double_of: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    /// Canonical face `(x, y)` as element indices and names.
    pub id: [usize; 2],
    pub id_names: [String; 2],
    pub genus: u64,
    #[serde(rename = "F_tri")]
    pub f_tri: u64,
    /// Edges and desingularized vertices of the triangulated surface.
    #[serde(rename = "E")]
    pub e_tri: u64,
    #[serde(rename = "V")]
    pub v_tri: u64,
    pub euler: i64,
    pub schlafli: Schlafli,
    pub cells: CellSummary,
    pub divisibility: DivisibilityReport,
    pub flags: PolytopeFlags,
    pub doubling: Doubling,
    pub datum: DatumSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub schema_version: u32,
    pub group: String,
    pub order: usize,
    pub center_size: usize,
    pub class_count: usize,
    pub commuting_probability: String,
    pub automorphism_search_cap: usize,
    pub stats: ComplexStats,
    pub m_g: BTreeMap<u64, u64>,
    #[serde(rename = "L")]
    pub circles: u64,
    pub component_count: usize,
    pub genera: Vec<u64>,
    pub symbols: Vec<SymbolCount>,
    pub identities: Vec<IdentityCheck>,
    pub components: Vec<ComponentSummary>,
}

impl Census {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("census serializes")
    }

    pub fn identities_hold(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }
}

/// Everything the census is built from, kept for checks and export.
pub struct Analysis<'g> {
    pub decomposition: Decomposition<'g>,
    pub counts: Vec<AlphaCounts>,
    /// Cell structures indexed like the decomposition's components.
    pub cells: Vec<CellComplex>,
    pub census: Census,
}

/// Identities that do not involve the decomposition.
pub fn group_identities(g: &Group, counts: &[AlphaCounts]) -> Vec<IdentityCheck> {
    let n = g.order() as i64;
    let c = g.class_count() as i64;
    let centralizers: i64 = (0..g.order()).map(|x| g.centralizer_size(x) as i64).sum();
    let p = g.commuting_probability();
    let mut out = vec![
        IdentityCheck::new("centralizer_sum", centralizers, n * c),
        IdentityCheck::new(
            "commuting_probability",
            (*p.by_pairs.numer() * *p.by_classes.denom()) as i64,
            (*p.by_classes.numer() * *p.by_pairs.denom()) as i64,
        ),
    ];
    let odd_n = counts.iter().filter(|a| a.nonproductive % 2 != 0).count();
    out.push(IdentityCheck::new("nonproductive_counts_even", odd_n as i64, 0));
    let bad_involutions = (0..g.order())
        .filter(|&a| g.element_order(a) == 2 && !g.is_central(a))
        .filter(|&a| counts[a].productive != 0 || (g.order() - g.centralizer_size(a)) % 4 != 0)
        .count();
    out.push(IdentityCheck::new("involution_orbits", bad_involutions as i64, 0));
    out
}

fn summarize_component(
    g: &Group,
    dec: &Decomposition<'_>,
    cc: &CellComplex,
    search_cap: usize,
) -> Result<ComponentSummary> {
    let comp = dec.component(cc.component);
    let divisibility = divisibility_report(g, cc)?;
    let flags = polytope_flags(dec, cc, search_cap)?;
    let doubling = doubling_relation(cc);
    if !doubling.consistent() {
        return Err(Error::Topology(format!(
            "component {:?}: doubling {doubling:?} changes the genus",
            cc.component_id
        )));
    }
    let datum = match_datum(cc.genus, cc.schlafli, cc.v_cell, cc.e_cell, cc.f_cell)?;
    let (x, y) = (cc.component_id.x, cc.component_id.y);
    Ok(ComponentSummary {
        id: [x, y],
        id_names: [g.name(x).to_string(), g.name(y).to_string()],
        genus: cc.genus,
        f_tri: comp.faces,
        e_tri: comp.tri_edges,
        v_tri: comp.desing_v,
        euler: comp.euler,
        schlafli: cc.schlafli,
        cells: CellSummary {
            v: cc.v_cell,
            e: cc.e_cell,
            f: cc.f_cell,
            n: cc.n,
            lambda1: cc.lambda1,
            lambda2: cc.lambda2,
            v1: cc.v1,
            v2: cc.v2,
            avg_valency: cc.avg_valency.to_string(),
        },
        divisibility,
        flags,
        doubling,
        datum: DatumSummary {
            family: datum.family,
            schlafli: datum.schlafli,
            solid_type: datum.solid_type,
            double_of: datum.double_of,
        },
    })
}

/// Runs the whole pipeline on `g`, stopping at the first violated invariant.
pub fn analyze(g: &Group, opts: CensusOptions) -> Result<Analysis<'_>> {
    let stats = build_stats(g)?;
    let decomposition = decompose(g)?;
    let counts = all_counts(g);
    decomposition.check_sheet_predictions(&counts)?;
    let m_g = decomposition.genus_census();
    let circles = decomposition.circle_count()?;

    let mut identities = verify_global_identities(g, &m_g, circles, &counts)?;
    identities.extend(group_identities(g, &counts));
    identities.push(IdentityCheck::new(
        "sheet_total",
        decomposition.sheets().len() as i64,
        predicted_sheet_total(&counts) as i64,
    ));
    let face_sum: u64 = decomposition.components().iter().map(|c| c.faces).sum();
    identities.push(IdentityCheck::new("face_total", face_sum as i64, stats.faces as i64));
    for id in &identities {
        id.ensure()?;
    }

    let cells: Vec<CellComplex> = (0..decomposition.component_count())
        .into_par_iter()
        .map(|i| cell_structure(&decomposition, i))
        .collect::<Result<_>>()?;
    let mut components: Vec<ComponentSummary> = cells
        .par_iter()
        .map(|cc| summarize_component(g, &decomposition, cc, opts.search_cap))
        .collect::<Result<_>>()?;
    components.sort_by(|a, b| {
        let key = |c: &ComponentSummary| (c.genus, c.cells.n, c.cells.lambda1, c.cells.lambda2, c.cells.f, c.id);
        key(a).cmp(&key(b))
    });

    let census = Census {
        schema_version: SCHEMA_VERSION,
        group: g.label().to_string(),
        order: g.order(),
        center_size: g.center().len(),
        class_count: g.class_count(),
        commuting_probability: g.commuting_probability().by_classes.to_string(),
        automorphism_search_cap: opts.search_cap,
        stats,
        genera: m_g.keys().copied().collect(),
        m_g,
        circles,
        component_count: decomposition.component_count(),
        symbols: ExpectedCensus::observed(&cells).entries,
        identities,
        components,
    };
    Ok(Analysis {
        decomposition,
        counts,
        cells,
        census,
    })
}

pub fn census(g: &Group, opts: CensusOptions) -> Result<Census> {
    Ok(analyze(g, opts)?.census)
}
