//! Pseudomanifold components of X(G), their desingularization into closed
//! surfaces, the genus census and the circle count.
//!
//! Faces are addressed by the slot `x * N + y`. Components are found with a
//! union-find over slots; the root of each set is its smallest slot, which is
//! also the lexicographically smallest face and serves as the canonical id.
//! Sheets are traced per vertex in parallel and recorded per triangle corner,
//! so a desingularized vertex is simply a global sheet id.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU16, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::alpha::AlphaCounts;
use crate::complex::{build_stats, faces_at, induced_map, star_index, walk_fan, FaceKey, Vertex, VertexType};
use crate::error::{Error, Result};
use crate::group::{Group, Homomorphism};
use crate::unionfind::UnionFind;

pub const NO_COMPONENT: u32 = u32::MAX;
const NO_SHEET: u16 = u16::MAX;

/// One disk of the closed star of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sheet {
    pub elem: u32,
    pub kind: VertexType,
    /// Number of triangles in the fan.
    pub size: u32,
    pub component: u32,
    /// Slot of the face the fan walk started from.
    pub start: u32,
}

impl Sheet {
    pub fn vertex(&self) -> Vertex {
        Vertex {
            elem: self.elem as usize,
            kind: self.kind,
        }
    }
}

/// A desingularized component: a closed oriented triangulated surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub index: usize,
    pub id: FaceKey,
    pub faces: u64,
    pub tri_edges: u64,
    pub desing_v: u64,
    pub type1_sheets: u64,
    pub type2_sheets: u64,
    pub euler: i64,
    pub genus: u64,
}

pub struct Decomposition<'g> {
    group: &'g Group,
    face_comp: Vec<u32>,
    comp_face_start: Vec<usize>,
    comp_faces: Vec<u32>,
    components: Vec<Component>,
    sheets: Vec<Sheet>,
    vertex_sheet_start: Vec<usize>,
    corner_sheet: Vec<AtomicU16>,
    comp_sheet_start: Vec<usize>,
    comp_sheets: Vec<u32>,
}

/// Counting-sort `items` into buckets, returning CSR offsets and members.
fn bucket(count: usize, items: impl Iterator<Item = (usize, u32)> + Clone) -> (Vec<usize>, Vec<u32>) {
    let mut start = vec![0usize; count + 1];
    for (b, _) in items.clone() {
        start[b + 1] += 1;
    }
    for i in 0..count {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut members = vec![0u32; start[count]];
    for (b, item) in items {
        members[fill[b]] = item;
        fill[b] += 1;
    }
    (start, members)
}

pub fn decompose(g: &Group) -> Result<Decomposition<'_>> {
    g.ensure_nonabelian()?;
    let n = g.order();
    let slots = n * n;

    let mut uf = UnionFind::new(slots);
    for x in 0..n {
        for y in g.noncommuting(x) {
            let f = FaceKey { x, y };
            let s = f.slot(n) as u32;
            // Edge 2 of every face is edge 1 of its neighbor across it, and
            // edge 0 is symmetric, so these two unions cover all adjacencies.
            if x < y {
                uf.union(s, f.neighbor(g, 0).slot(n) as u32);
            }
            uf.union(s, f.neighbor(g, 1).slot(n) as u32);
        }
    }
    let roots = uf.into_roots();

    let mut face_comp = vec![NO_COMPONENT; slots];
    let mut ids = Vec::new();
    for x in 0..n {
        for y in g.noncommuting(x) {
            let s = x * n + y;
            let r = roots[s] as usize;
            if r == s {
                face_comp[s] = ids.len() as u32;
                ids.push(FaceKey { x, y });
            } else {
                face_comp[s] = face_comp[r];
            }
        }
    }
    drop(roots);
    let comp_count = ids.len();
    let (comp_face_start, comp_faces) = bucket(
        comp_count,
        (0..slots as u32).filter(|&s| face_comp[s as usize] != NO_COMPONENT).map(|s| (face_comp[s as usize] as usize, s)),
    );

    let corner_sheet: Vec<AtomicU16> = (0..3 * slots).into_par_iter().map(|_| AtomicU16::new(NO_SHEET)).collect();
    let per_vertex: Vec<Vec<Sheet>> = (0..2 * n)
        .into_par_iter()
        .map_init(
            || vec![false; 2 * n],
            |seen, vi| -> Result<Vec<Sheet>> {
                let v = if vi < n { Vertex::one(vi) } else { Vertex::two(vi - n) };
                if g.is_central(v.elem) {
                    return Ok(Vec::new());
                }
                let faces = faces_at(g, v);
                let mut out = Vec::new();
                for &f in &faces {
                    if seen[star_index(n, v, f)] {
                        continue;
                    }
                    let local = out.len() as u16;
                    let comp = face_comp[f.slot(n)];
                    let mut mixed = false;
                    let size = walk_fan(g, v, f, |h| {
                        seen[star_index(n, v, h)] = true;
                        let corner = match v.kind {
                            VertexType::Two => 2,
                            VertexType::One if h.x == v.elem => 0,
                            VertexType::One => 1,
                        };
                        let s = h.slot(n);
                        mixed |= face_comp[s] != comp;
                        corner_sheet[3 * s + corner].store(local, Ordering::Relaxed);
                    })?;
                    if mixed {
                        return Err(Error::Topology(format!("a sheet about {v} spans two components")));
                    }
                    out.push(Sheet {
                        elem: v.elem as u32,
                        kind: v.kind,
                        size: size as u32,
                        component: comp,
                        start: f.slot(n) as u32,
                    });
                }
                for &f in &faces {
                    seen[star_index(n, v, f)] = false;
                }
                Ok(out)
            },
        )
        .collect::<Result<_>>()?;

    let mut vertex_sheet_start = Vec::with_capacity(2 * n + 1);
    vertex_sheet_start.push(0);
    for list in &per_vertex {
        vertex_sheet_start.push(vertex_sheet_start.last().unwrap() + list.len());
    }
    let sheets: Vec<Sheet> = per_vertex.into_iter().flatten().collect();
    let (comp_sheet_start, comp_sheets) = bucket(
        comp_count,
        sheets.iter().enumerate().map(|(i, s)| (s.component as usize, i as u32)),
    );

    let components = ids
        .iter()
        .enumerate()
        .map(|(index, &id)| {
            let faces = (comp_face_start[index + 1] - comp_face_start[index]) as u64;
            let mine = &comp_sheets[comp_sheet_start[index]..comp_sheet_start[index + 1]];
            let type2 = mine.iter().filter(|&&i| sheets[i as usize].kind == VertexType::Two).count() as u64;
            let desing_v = mine.len() as u64;
            if faces % 2 != 0 {
                return Err(Error::Topology(format!("component {id:?} has an odd face count {faces}")));
            }
            let tri_edges = 3 * faces / 2;
            let euler = desing_v as i64 - tri_edges as i64 + faces as i64;
            if euler % 2 != 0 || euler > 2 {
                return Err(Error::Topology(format!("component {id:?} has Euler characteristic {euler}")));
            }
            Ok(Component {
                index,
                id,
                faces,
                tri_edges,
                desing_v,
                type1_sheets: desing_v - type2,
                type2_sheets: type2,
                euler,
                genus: ((2 - euler) / 2) as u64,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Decomposition {
        group: g,
        face_comp,
        comp_face_start,
        comp_faces,
        components,
        sheets,
        vertex_sheet_start,
        corner_sheet,
        comp_sheet_start,
        comp_sheets,
    })
}

impl<'g> Decomposition<'g> {
    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Component {
        &self.components[i]
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, f: FaceKey) -> Option<usize> {
        let c = *self.face_comp.get(f.slot(self.group.order()))?;
        (c != NO_COMPONENT).then_some(c as usize)
    }

    /// Faces of component `i` in slot order.
    pub fn faces_of(&self, i: usize) -> impl Iterator<Item = FaceKey> + '_ {
        let n = self.group.order();
        self.comp_faces[self.comp_face_start[i]..self.comp_face_start[i + 1]]
            .iter()
            .map(move |&s| FaceKey::from_slot(s as usize, n))
    }

    pub fn sheets(&self) -> &[Sheet] {
        &self.sheets
    }

    pub fn sheet(&self, id: usize) -> &Sheet {
        &self.sheets[id]
    }

    /// Global ids of the sheets about `v`.
    pub fn sheet_range(&self, v: Vertex) -> std::ops::Range<usize> {
        let i = v.index(self.group.order());
        self.vertex_sheet_start[i]..self.vertex_sheet_start[i + 1]
    }

    pub fn sheets_at(&self, v: Vertex) -> &[Sheet] {
        &self.sheets[self.sheet_range(v)]
    }

    /// Global ids of the sheets belonging to component `i`.
    pub fn sheet_ids_of(&self, i: usize) -> &[u32] {
        &self.comp_sheets[self.comp_sheet_start[i]..self.comp_sheet_start[i + 1]]
    }

    /// Global id of the sheet containing corner `corner` of face `f`, i.e.
    /// the desingularized vertex at that corner.
    pub fn corner_sheet(&self, f: FaceKey, corner: usize) -> usize {
        let n = self.group.order();
        let local = self.corner_sheet[3 * f.slot(n) + corner].load(Ordering::Relaxed);
        debug_assert_ne!(local, NO_SHEET);
        let v = f.vertices(self.group)[corner];
        self.vertex_sheet_start[v.index(n)] + local as usize
    }

    /// `m_g`: number of components of each genus.
    pub fn genus_census(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for c in &self.components {
            *m.entry(c.genus).or_insert(0) += 1;
        }
        m
    }

    pub fn vertex_count(&self) -> usize {
        2 * (self.group.order() - self.group.center().len())
    }

    /// First Betti number of the bipartite graph whose nodes are components
    /// and vertices of X(G) and whose edges are sheets.
    pub fn circle_count(&self) -> Result<u64> {
        let n = self.group.order();
        let comps = self.components.len();
        let mut uf = UnionFind::new(comps + 2 * n);
        for s in &self.sheets {
            uf.union(s.component, (comps + s.vertex().index(n)) as u32);
        }
        let mut root = None;
        for node in 0..comps + 2 * n {
            if node >= comps && self.group.is_central((node - comps) % n) {
                continue;
            }
            let r = uf.find(node as u32);
            if *root.get_or_insert(r) != r {
                return Err(Error::DisconnectedIncidenceGraph);
            }
        }
        let nodes = (comps + self.vertex_count()) as i64;
        let betti = self.sheets.len() as i64 - nodes + 1;
        u64::try_from(betti).map_err(|_| Error::Topology(format!("negative circle count {betti}")))
    }

    /// Compares the sheets found about every vertex with the orbit-count
    /// predictions. Also checks the sheet sizes about involutions (4) and
    /// about elements of prime order `p` (`p` or `2p`).
    pub fn check_sheet_predictions(&self, counts: &[AlphaCounts]) -> Result<u64> {
        let g = self.group;
        let mut checked = 0;
        for w in (0..g.order()).filter(|&w| !g.is_central(w)) {
            let predicted = counts[w].predicted_sheets();
            let got1 = self.sheets_at(Vertex::one(w)).len();
            let type2 = self.sheets_at(Vertex::two(w));
            if got1 != predicted.type1 || type2.len() != predicted.type2 {
                return Err(Error::Topology(format!(
                    "sheets about {}: found ({}, {}), predicted ({}, {})",
                    g.name(w),
                    type2.len(),
                    got1,
                    predicted.type2,
                    predicted.type1
                )));
            }
            let ord = g.element_order(w) as u32;
            if is_prime(ord) && !type2.iter().all(|s| s.size == ord || s.size == 2 * ord) {
                return Err(Error::Topology(format!(
                    "a sheet about ({},2) has a size other than {ord} or {}",
                    g.name(w),
                    2 * ord
                )));
            }
            if ord == 2 && !type2.iter().all(|s| s.size == 4) {
                return Err(Error::Topology(format!("a sheet about involution {} is not a square", g.name(w))));
            }
            checked += 2;
        }
        Ok(checked)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// One exact integer identity with both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl IdentityCheck {
    pub fn new(name: &str, lhs: i64, rhs: i64) -> Self {
        IdentityCheck {
            name: name.to_string(),
            lhs,
            rhs,
            holds: lhs == rhs,
        }
    }

    pub fn ensure(&self) -> Result<()> {
        if self.holds {
            Ok(())
        } else {
            Err(Error::IdentityViolation {
                name: self.name.clone(),
                lhs: self.lhs,
                rhs: self.rhs,
            })
        }
    }
}

/// The two global Euler identities:
///
/// * `2(N - |Z|) - (N^2 - N c)/2 = 1 - L + sum_g (1 - 2g) m_g`
/// * `sum_alpha (3 n_alpha + 4 p_alpha) + sum_g (4g - 4) m_g = N (N - c)`
pub fn verify_global_identities(
    g: &Group,
    m_g: &BTreeMap<u64, u64>,
    circles: u64,
    counts: &[AlphaCounts],
) -> Result<Vec<IdentityCheck>> {
    let stats = build_stats(g)?;
    let n = g.order() as i64;
    let c = g.class_count() as i64;
    let weighted = |f: &dyn Fn(i64) -> i64| m_g.iter().map(|(&genus, &m)| f(genus as i64) * m as i64).sum::<i64>();
    let euler_rhs = 1 - circles as i64 + weighted(&|genus| 1 - 2 * genus);
    let orbit_sum: i64 = counts
        .iter()
        .map(|a| 3 * a.nonproductive as i64 + 4 * a.productive as i64)
        .sum();
    Ok(vec![
        IdentityCheck::new("euler_characteristic", stats.euler, euler_rhs),
        IdentityCheck::new("alpha_orbit_sum", orbit_sum + weighted(&|genus| 4 * genus - 4), n * (n - c)),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub source_components: usize,
    pub target_components: usize,
    pub source_census: BTreeMap<u64, u64>,
    pub target_census: BTreeMap<u64, u64>,
}

/// Checks that an embedding `H -> G` carries each component of `H` onto a
/// single component of `G` with the same face count and genus, injectively,
/// and that `m_g(H) <= m_g(G)` for every genus.
pub fn monotonicity_check(
    hom: &Homomorphism<'_>,
    source: &Decomposition<'_>,
    target: &Decomposition<'_>,
) -> Result<MonotonicityReport> {
    if !std::ptr::eq(hom.source(), source.group()) || !std::ptr::eq(hom.target(), target.group()) {
        return Err(Error::InvalidParameter("decompositions do not belong to the homomorphism's groups".into()));
    }
    let map = induced_map(hom)?;
    let mut hit = vec![false; target.component_count()];
    for comp in source.components() {
        let image = target.component_of(map.apply(comp.id)).expect("image of a face is a face");
        if source.faces_of(comp.index).any(|f| target.component_of(map.apply(f)) != Some(image)) {
            return Err(Error::MonotonicityViolation(format!(
                "component {:?} is split by the induced map",
                comp.id
            )));
        }
        let t = target.component(image);
        if t.faces != comp.faces || t.genus != comp.genus {
            return Err(Error::MonotonicityViolation(format!(
                "component {:?} (F={}, g={}) maps into {:?} (F={}, g={})",
                comp.id, comp.faces, comp.genus, t.id, t.faces, t.genus
            )));
        }
        if std::mem::replace(&mut hit[image], true) {
            return Err(Error::MonotonicityViolation(format!("two components map onto {:?}", t.id)));
        }
    }
    let (sc, tc) = (source.genus_census(), target.genus_census());
    for (genus, &m) in &sc {
        let available = tc.get(genus).copied().unwrap_or(0);
        if m > available {
            return Err(Error::MonotonicityViolation(format!("m_{genus}: {m} > {available}")));
        }
    }
    Ok(MonotonicityReport {
        source_components: source.component_count(),
        target_components: target.component_count(),
        source_census: sc,
        target_census: tc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::all_counts;
    use crate::group::builtin::{dihedral, extraspecial_exponent_p, frobenius21, quaternion8, symmetric};

    #[test]
    fn s3_has_two_spheres_and_two_circles() {
        let g = symmetric(3).unwrap();
        let d = decompose(&g).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.genus_census(), BTreeMap::from([(0, 2)]));
        assert_eq!(d.sheets().len(), 13);
        assert_eq!(d.circle_count().unwrap(), 2);
    }

    #[test]
    fn q8_has_three_octahedra() {
        let g = quaternion8();
        let d = decompose(&g).unwrap();
        assert_eq!(d.component_count(), 3);
        for c in d.components() {
            assert_eq!((c.desing_v, c.tri_edges, c.faces, c.euler, c.genus), (6, 12, 8, 2, 0));
        }
        assert_eq!(d.circle_count().unwrap(), 4);
    }

    #[test]
    fn extraspecial_components() {
        let g = extraspecial_exponent_p(3).unwrap();
        let d = decompose(&g).unwrap();
        assert_eq!(d.component_count(), 24);
        assert!(d.components().iter().all(|c| c.genus == 1));
        let g = extraspecial_exponent_p(5).unwrap();
        let d = decompose(&g).unwrap();
        assert_eq!(d.component_count(), 240);
        assert!(d.components().iter().all(|c| c.genus == 6));
    }

    #[test]
    fn component_ids_are_minimal_faces() {
        let g = symmetric(4).unwrap();
        let d = decompose(&g).unwrap();
        for c in d.components() {
            assert_eq!(d.faces_of(c.index).min(), Some(c.id));
            assert_eq!(d.faces_of(c.index).count() as u64, c.faces);
        }
        let ids: Vec<FaceKey> = d.components().iter().map(|c| c.id).collect();
        assert!(ids.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn corner_sheets_are_consistent() {
        let g = symmetric(4).unwrap();
        let d = decompose(&g).unwrap();
        for c in d.components() {
            for f in d.faces_of(c.index) {
                for (corner, v) in f.vertices(&g).into_iter().enumerate() {
                    let s = d.sheet(d.corner_sheet(f, corner));
                    assert_eq!(s.vertex(), v);
                    assert_eq!(s.component as usize, c.index);
                }
            }
        }
    }

    #[test]
    fn identities_hold() {
        for g in [symmetric(3).unwrap(), quaternion8(), symmetric(4).unwrap(), dihedral(12).unwrap(), frobenius21()] {
            let d = decompose(&g).unwrap();
            let counts = all_counts(&g);
            d.check_sheet_predictions(&counts).unwrap();
            let checks = verify_global_identities(&g, &d.genus_census(), d.circle_count().unwrap(), &counts).unwrap();
            for c in checks {
                c.ensure().unwrap();
            }
        }
    }

    #[test]
    fn s3_euler_identity_values() {
        let g = symmetric(3).unwrap();
        let d = decompose(&g).unwrap();
        let checks = verify_global_identities(&g, &d.genus_census(), 2, &all_counts(&g)).unwrap();
        assert_eq!((checks[0].lhs, checks[0].rhs), (1, 1));
        let bad = verify_global_identities(&g, &d.genus_census(), 3, &all_counts(&g)).unwrap();
        assert!(matches!(bad[0].ensure(), Err(Error::IdentityViolation { lhs: 1, rhs: 0, .. })));
    }

    #[test]
    fn odd_order_has_no_spheres() {
        let g = frobenius21();
        let d = decompose(&g).unwrap();
        assert_eq!(d.genus_census().get(&0), None);
    }

    #[test]
    fn s3_in_s4_is_monotone() {
        let s3 = symmetric(3).unwrap();
        let s4 = symmetric(4).unwrap();
        let (d3, d4) = (decompose(&s3).unwrap(), decompose(&s4).unwrap());
        let inc = Homomorphism::permutation_inclusion(&s3, &s4).unwrap();
        let r = monotonicity_check(&inc, &d3, &d4).unwrap();
        assert_eq!(r.source_components, 2);
        let id = Homomorphism::identity(&s4);
        let r = monotonicity_check(&id, &d4, &d4).unwrap();
        assert_eq!(r.source_census, r.target_census);
    }

    #[test]
    fn is_prime_small() {
        let primes: Vec<u32> = (0..20).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
