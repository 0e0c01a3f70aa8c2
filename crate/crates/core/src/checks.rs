//! The invariant suite behind `tessgroup check`: every structural claim the
//! pipeline relies on, reported one line per check.

use serde::Serialize;

use crate::alpha::{all_counts, predicted_sheet_total, AlphaCounts};
use crate::cells::{cell_structure, check_diamond, divisibility_report, doubling_relation, polytope_flags, CellComplex};
use crate::census::{group_identities, CensusOptions};
use crate::complex::{build_stats, check_edges};
use crate::decomposition::{decompose, verify_global_identities, Decomposition, IdentityCheck};
use crate::enumerator::match_datum;
use crate::error::{Error, Result};
use crate::group::Group;

/// Components whose faces are compared with `<x, y>` when `|G|` is large.
const SUBGROUP_SPOT_CHECKS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
    /// Set when the failure is an input problem rather than an invariant.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub input_error: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub group: String,
    pub order: usize,
    pub passed: bool,
    /// True when the suite stopped at the first failure.
    pub stopped_early: bool,
    pub checks: Vec<CheckResult>,
}

impl CheckReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn has_input_error(&self) -> bool {
        self.failures().any(|c| c.input_error)
    }
}

struct Runner {
    continue_on_error: bool,
    stopped: bool,
    results: Vec<CheckResult>,
}

impl Runner {
    fn record(&mut self, name: &str, status: Status, detail: String, input_error: bool) {
        self.results.push(CheckResult {
            name: name.to_string(),
            status,
            detail,
            input_error,
        });
    }

    fn step<T>(&mut self, name: &str, f: impl FnOnce() -> Result<(T, String)>) -> Option<T> {
        if self.stopped {
            return None;
        }
        match f() {
            Ok((value, detail)) => {
                self.record(name, Status::Pass, detail, false);
                Some(value)
            }
            Err(e) => {
                self.record(name, Status::Fail, e.to_string(), e.is_input_error());
                self.stopped = !self.continue_on_error;
                None
            }
        }
    }

    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<String>) {
        self.step(name, || f().map(|d| ((), d)));
    }

    fn skip(&mut self, name: &str, reason: &str) {
        if !self.stopped {
            self.record(name, Status::Skip, reason.to_string(), false);
        }
    }

    fn identity(&mut self, id: &IdentityCheck) {
        self.check(&id.name, || id.ensure().map(|_| format!("{} = {}", id.lhs, id.rhs)));
    }
}

fn each_component(dec: &Decomposition<'_>, mut f: impl FnMut(usize) -> Result<()>) -> Result<String> {
    for i in 0..dec.component_count() {
        f(i)?;
    }
    Ok(format!("{} components", dec.component_count()))
}

fn faces_in_generated_subgroup(g: &Group, dec: &Decomposition<'_>, i: usize) -> Result<()> {
    let id = dec.component(i).id;
    let inside = g.subgroup_mask(&[id.x, id.y]);
    match dec.faces_of(i).find(|f| !inside[f.x] || !inside[f.y]) {
        None => Ok(()),
        Some(f) => Err(Error::Topology(format!(
            "face {f:?} of component {id:?} leaves the subgroup generated by its canonical face"
        ))),
    }
}

/// Runs the suite on `g`. Without `continue_on_error` it stops at the first
/// failure.
pub fn run_checks(g: &Group, opts: CensusOptions, continue_on_error: bool) -> CheckReport {
    let mut r = Runner {
        continue_on_error,
        stopped: false,
        results: Vec::new(),
    };
    let n = g.order();

    let nonabelian = r.step("nonabelian", || {
        g.ensure_nonabelian().map(|_| ((), format!("|G| = {n}, |Z| = {}", g.center().len())))
    });
    if nonabelian.is_none() {
        return finish(g, r);
    }
    let stats = r.step("simplex_counts", || {
        build_stats(g).map(|s| (s, format!("V = {}, E1 = {}, F = {}, chi = {}", s.vertices, s.e1, s.faces, s.euler)))
    });
    r.check("edges_two_faces_opposite_orientation", || {
        check_edges(g).map(|e| {
            let scope = if e.exhaustive { "all" } else { "sampled" };
            format!("{scope} {} faces", e.faces_checked)
        })
    });

    let counts: Vec<AlphaCounts> = all_counts(g);
    for id in group_identities(g, &counts) {
        r.identity(&id);
    }

    let dec = r.step("decomposition", || {
        decompose(g).map(|d| {
            let detail = format!("{} components", d.component_count());
            (d, detail)
        })
    });
    let Some(dec) = dec else {
        for name in ["sheet_predictions", "circle_count", "euler_characteristic", "alpha_orbit_sum", "cell_structure"] {
            r.skip(name, "decomposition unavailable");
        }
        return finish(g, r);
    };

    r.check("sheet_predictions", || {
        dec.check_sheet_predictions(&counts).map(|k| format!("{k} vertices"))
    });
    r.identity(&IdentityCheck::new(
        "sheet_total",
        dec.sheets().len() as i64,
        predicted_sheet_total(&counts) as i64,
    ));
    if let Some(stats) = stats {
        let face_sum: u64 = dec.components().iter().map(|c| c.faces).sum();
        r.identity(&IdentityCheck::new("face_total", face_sum as i64, stats.faces as i64));
    }
    let m_g = dec.genus_census();
    let circles = r.step("circle_count", || dec.circle_count().map(|l| (l, format!("L = {l}"))));
    match circles {
        Some(l) => match verify_global_identities(g, &m_g, l, &counts) {
            Ok(ids) => ids.iter().for_each(|id| r.identity(id)),
            Err(e) => r.check("global_identities", || Err(e)),
        },
        None => r.skip("global_identities", "circle count unavailable"),
    }

    let noncentral_classes = g.conj_classes().iter().filter(|c| c.len() > 1).count();
    r.check("components_at_least_noncentral_classes", || {
        let detail = format!("{} components, {noncentral_classes} noncentral classes", dec.component_count());
        if dec.component_count() >= noncentral_classes {
            Ok(detail)
        } else {
            Err(Error::Topology(detail))
        }
    });
    if n % 2 == 1 {
        r.identity(&IdentityCheck::new(
            "odd_order_no_spheres",
            m_g.get(&0).copied().unwrap_or(0) as i64,
            0,
        ));
    } else {
        r.skip("odd_order_no_spheres", "group order is even");
    }
    r.check("components_in_generated_subgroup", || {
        let limit = if n <= 1024 { dec.component_count() } else { SUBGROUP_SPOT_CHECKS };
        let checked = dec.component_count().min(limit);
        (0..checked).try_for_each(|i| faces_in_generated_subgroup(g, &dec, i))?;
        Ok(format!("{checked} of {} components", dec.component_count()))
    });

    let cells: Option<Vec<CellComplex>> = r.step("cell_structure", || {
        let cells = (0..dec.component_count())
            .map(|i| cell_structure(&dec, i))
            .collect::<Result<Vec<_>>>()?;
        let detail = format!("{} cell complexes", cells.len());
        Ok((cells, detail))
    });
    r.check("diamond_closed_cell", || each_component(&dec, |i| check_diamond(&dec, i)));
    match cells {
        Some(cells) => {
            r.check("divisibility", || {
                cells.iter().try_for_each(|cc| divisibility_report(g, cc).map(|_| ()))?;
                Ok(format!("{} components", cells.len()))
            });
            r.check("polytope_flags", || {
                cells.iter().try_for_each(|cc| polytope_flags(&dec, cc, opts.search_cap).map(|_| ()))?;
                Ok(format!("search cap {}", opts.search_cap))
            });
            r.check("doubling_preserves_genus", || {
                match cells.iter().find(|cc| !doubling_relation(cc).consistent()) {
                    None => Ok(format!("{} components", cells.len())),
                    Some(cc) => Err(Error::Topology(format!("doubling of {:?} changes the genus", cc.component_id))),
                }
            });
            r.check("enumerator_match", || {
                cells
                    .iter()
                    .try_for_each(|cc| match_datum(cc.genus, cc.schlafli, cc.v_cell, cc.e_cell, cc.f_cell).map(|_| ()))?;
                Ok(format!("{} components", cells.len()))
            });
        }
        None => {
            for name in ["divisibility", "polytope_flags", "doubling_preserves_genus", "enumerator_match"] {
                r.skip(name, "cell structure unavailable");
            }
        }
    }
    finish(g, r)
}

fn finish(g: &Group, r: Runner) -> CheckReport {
    CheckReport {
        schema_version: crate::census::SCHEMA_VERSION,
        group: g.label().to_string(),
        order: g.order(),
        passed: r.results.iter().all(|c| c.status != Status::Fail),
        stopped_early: r.stopped,
        checks: r.results,
    }
}
