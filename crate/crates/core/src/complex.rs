//! The oriented 2-complex X(G), kept implicit.
//!
//! Vertices are pairs `(g, 1)` and `(g, 2)` for noncentral `g`. Every ordered
//! noncommuting pair `(x, y)` is the oriented triangle
//! `[(x,1), (y,1), (xy,2)]`. Corners are numbered 0, 1, 2 in that order and
//! edge `e` runs from corner `e` to corner `e + 1 (mod 3)`:
//!
//! * edge 0 is `[(x,1), (y,1)]`,
//! * edge 1 is `[(y,1), (xy,2)]`,
//! * edge 2 is `[(xy,2), (x,1)]`.
//!
//! Nothing but the group table is stored; adjacency is computed on demand.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Group, Homomorphism};

/// Edge index seen from the neighbor across it.
pub const CROSSED_EDGE: [usize; 3] = [0, 2, 1];

/// The two edges of a triangle that meet at each corner.
pub const CORNER_EDGES: [[usize; 2]; 3] = [[0, 2], [0, 1], [1, 2]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FaceKey {
    pub x: usize,
    pub y: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexType {
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Vertex {
    pub elem: usize,
    pub kind: VertexType,
}

impl Vertex {
    pub fn one(elem: usize) -> Self {
        Vertex { elem, kind: VertexType::One }
    }

    pub fn two(elem: usize) -> Self {
        Vertex { elem, kind: VertexType::Two }
    }

    /// Dense index in `0..2N`: type-1 vertices first.
    pub fn index(&self, order: usize) -> usize {
        match self.kind {
            VertexType::One => self.elem,
            VertexType::Two => order + self.elem,
        }
    }

    pub fn type_number(&self) -> u8 {
        match self.kind {
            VertexType::One => 1,
            VertexType::Two => 2,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.elem, self.type_number())
    }
}

impl FaceKey {
    /// `None` when `x` and `y` commute.
    pub fn new(g: &Group, x: usize, y: usize) -> Option<Self> {
        (!g.commutes(x, y)).then_some(FaceKey { x, y })
    }

    #[inline]
    pub fn slot(&self, order: usize) -> usize {
        self.x * order + self.y
    }

    #[inline]
    pub fn from_slot(slot: usize, order: usize) -> Self {
        FaceKey {
            x: slot / order,
            y: slot % order,
        }
    }

    #[inline]
    pub fn alpha(&self, g: &Group) -> usize {
        g.mul(self.x, self.y)
    }

    pub fn vertices(&self, g: &Group) -> [Vertex; 3] {
        [Vertex::one(self.x), Vertex::one(self.y), Vertex::two(self.alpha(g))]
    }

    /// The face sharing edge `edge` with this one.
    #[inline]
    pub fn neighbor(&self, g: &Group, edge: usize) -> FaceKey {
        let (x, y) = (self.x, self.y);
        match edge {
            0 => FaceKey { x: y, y: x },
            1 => FaceKey {
                x: y,
                y: g.mul(g.inv(y), g.mul(x, y)),
            },
            2 => FaceKey {
                x: g.mul(g.mul(x, y), g.inv(x)),
                y: x,
            },
            _ => panic!("edge index {edge} out of range"),
        }
    }

    pub fn neighbors(&self, g: &Group) -> [FaceKey; 3] {
        [self.neighbor(g, 0), self.neighbor(g, 1), self.neighbor(g, 2)]
    }

    /// Corner at which `v` sits, if it is a vertex of this face.
    pub fn corner_of(&self, g: &Group, v: Vertex) -> Option<usize> {
        match v.kind {
            VertexType::Two => (self.alpha(g) == v.elem).then_some(2),
            VertexType::One if self.x == v.elem => Some(0),
            VertexType::One if self.y == v.elem => Some(1),
            VertexType::One => None,
        }
    }

    /// Edge `edge` as a directed pair of vertices, following the orientation.
    pub fn directed_edge(&self, g: &Group, edge: usize) -> (Vertex, Vertex) {
        let v = self.vertices(g);
        (v[edge], v[(edge + 1) % 3])
    }
}

pub fn face_neighbors(g: &Group, f: FaceKey) -> [FaceKey; 3] {
    f.neighbors(g)
}

/// Global simplex counts of X(G).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexStats {
    pub vertices: u64,
    pub e1: u64,
    pub e2: u64,
    pub faces: u64,
    pub euler: i64,
}

/// Largest order for which `build_stats` also counts simplices literally.
pub const LITERAL_STATS_LIMIT: usize = 1024;

pub fn build_stats(g: &Group) -> Result<ComplexStats> {
    g.ensure_nonabelian()?;
    let n = g.order() as u64;
    let z = g.center().len() as u64;
    let c = g.class_count() as u64;
    let vertices = 2 * (n - z);
    let e1 = (n * n - n * c) / 2;
    let stats = ComplexStats {
        vertices,
        e1,
        e2: 2 * e1,
        faces: 2 * e1,
        euler: vertices as i64 - e1 as i64,
    };
    if g.order() <= LITERAL_STATS_LIMIT {
        let literal_faces: u64 = (0..g.order()).map(|x| g.noncommuting(x).count() as u64).sum();
        let literal_vertices = 2 * (0..g.order()).filter(|&x| !g.is_central(x)).count() as u64;
        if literal_faces != stats.faces || literal_vertices != stats.vertices {
            return Err(Error::Topology(format!(
                "simplex counts disagree: formula F={} V={}, literal F={literal_faces} V={literal_vertices}",
                stats.faces, stats.vertices
            )));
        }
    }
    Ok(stats)
}

/// All faces containing `v`, in a fixed order.
pub fn faces_at(g: &Group, v: Vertex) -> Vec<FaceKey> {
    let w = v.elem;
    match v.kind {
        VertexType::Two => g
            .noncommuting(w)
            .map(|a| FaceKey {
                x: a,
                y: g.mul(g.inv(a), w),
            })
            .collect(),
        VertexType::One => g
            .noncommuting(w)
            .map(|y| FaceKey { x: w, y })
            .chain(g.noncommuting(w).map(|y| FaceKey { x: y, y: w }))
            .collect(),
    }
}

/// Position of a face in `faces_at(g, v)`-style local numbering, used as a
/// stamp index: type-2 stars are indexed by `x`, type-1 stars by `y` when
/// `v` is at corner 0 and by `N + x` when it is at corner 1.
#[inline]
pub fn star_index(order: usize, v: Vertex, f: FaceKey) -> usize {
    match v.kind {
        VertexType::Two => f.x,
        VertexType::One if f.x == v.elem => f.y,
        VertexType::One => order + f.x,
    }
}

/// Walks the triangle fan about `v` that contains `start`, crossing only
/// edges incident to `v`, and calls `visit` on each face in order (starting
/// with `start`). Returns the number of faces visited.
pub fn walk_fan(g: &Group, v: Vertex, start: FaceKey, mut visit: impl FnMut(FaceKey)) -> Result<usize> {
    let corner = start
        .corner_of(g, v)
        .ok_or_else(|| Error::Topology(format!("vertex {v} not on face {start:?}")))?;
    let limit = 2 * g.order() + 1;
    visit(start);
    let mut count = 1;
    let mut face = start;
    let mut exit = CORNER_EDGES[corner][1];
    loop {
        let next = face.neighbor(g, exit);
        if next == start {
            return Ok(count);
        }
        let entry = CROSSED_EDGE[exit];
        let c = next
            .corner_of(g, v)
            .ok_or_else(|| Error::Topology(format!("fan about {v} left the star at {next:?}")))?;
        let [p, q] = CORNER_EDGES[c];
        exit = if entry == p { q } else { p };
        visit(next);
        count += 1;
        face = next;
        if count > limit {
            return Err(Error::Topology(format!("fan about {v} does not close")));
        }
    }
}

/// The closed star of `v` split into sheets, each a cyclic list of faces.
pub fn vertex_sheets(g: &Group, v: Vertex) -> Result<Vec<Vec<FaceKey>>> {
    if g.is_central(v.elem) {
        return Err(Error::CentralElement(v.elem));
    }
    let n = g.order();
    let mut seen = vec![false; 2 * n];
    let mut sheets = Vec::new();
    for f in faces_at(g, v) {
        if seen[star_index(n, v, f)] {
            continue;
        }
        let mut sheet = Vec::new();
        walk_fan(g, v, f, |h| {
            seen[star_index(n, v, h)] = true;
            sheet.push(h);
        })?;
        sheets.push(sheet);
    }
    Ok(sheets)
}

/// The simplicial map X(H) -> X(G) induced by a homomorphism.
#[derive(Clone, Debug)]
pub struct FaceMap<'a> {
    hom: &'a Homomorphism<'a>,
}

impl<'a> FaceMap<'a> {
    #[inline]
    pub fn apply(&self, f: FaceKey) -> FaceKey {
        FaceKey {
            x: self.hom.apply(f.x),
            y: self.hom.apply(f.y),
        }
    }

    pub fn homomorphism(&self) -> &'a Homomorphism<'a> {
        self.hom
    }
}

/// Builds the induced face map and checks, over every face of the source,
/// that images are faces and that the map commutes with adjacency.
pub fn induced_map<'a>(hom: &'a Homomorphism<'a>) -> Result<FaceMap<'a>> {
    hom.ensure_injective_on_commutators()?;
    let (h, g) = (hom.source(), hom.target());
    let map = FaceMap { hom };
    for x in 0..h.order() {
        for y in h.noncommuting(x) {
            let f = FaceKey { x, y };
            let image = map.apply(f);
            if g.commutes(image.x, image.y) {
                return Err(Error::Topology(format!("image of face {f:?} is not a face")));
            }
            for e in 0..3 {
                if map.apply(f.neighbor(h, e)) != image.neighbor(g, e) {
                    return Err(Error::Topology(format!(
                        "induced map does not commute with adjacency at {f:?}, edge {e}"
                    )));
                }
            }
        }
    }
    Ok(map)
}

/// Outcome of the edge-structure checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeCheck {
    pub faces_checked: u64,
    pub exhaustive: bool,
    pub edge_index_checked: bool,
}

/// Orders up to which the edge checks visit every face.
pub const EXHAUSTIVE_EDGE_CHECK_LIMIT: usize = 256;
const EDGE_CHECK_SAMPLES: usize = 200_000;

fn check_face_edges(g: &Group, f: FaceKey) -> Result<()> {
    for e in 0..3 {
        let nb = f.neighbor(g, e);
        let back = CROSSED_EDGE[e];
        if nb == f || g.commutes(nb.x, nb.y) {
            return Err(Error::Topology(format!("bad neighbor {nb:?} of {f:?} across edge {e}")));
        }
        if nb.neighbor(g, back) != f {
            return Err(Error::Topology(format!("crossing edge {e} of {f:?} twice is not the identity")));
        }
        let (a, b) = f.directed_edge(g, e);
        let (c, d) = nb.directed_edge(g, back);
        if (a, b) != (d, c) {
            return Err(Error::Topology(format!(
                "orientations do not cancel along edge {e} of {f:?}: {a}->{b} vs {c}->{d}"
            )));
        }
    }
    Ok(())
}

/// Checks that every edge lies in exactly two faces with opposite
/// orientations. Exhaustive up to `EXHAUSTIVE_EDGE_CHECK_LIMIT`, sampled with
/// a fixed seed above; small groups also get a brute-force edge index.
pub fn check_edges(g: &Group) -> Result<EdgeCheck> {
    let n = g.order();
    let mut report = EdgeCheck::default();
    if n <= EXHAUSTIVE_EDGE_CHECK_LIMIT {
        report.exhaustive = true;
        report.edge_index_checked = true;
        let mut index: HashMap<(Vertex, Vertex), Vec<FaceKey>> = HashMap::new();
        for x in 0..n {
            for y in g.noncommuting(x) {
                let f = FaceKey { x, y };
                check_face_edges(g, f)?;
                report.faces_checked += 1;
                for e in 0..3 {
                    let (a, b) = f.directed_edge(g, e);
                    index.entry((a.min(b), a.max(b))).or_default().push(f);
                }
            }
        }
        for ((a, b), faces) in &index {
            if faces.len() != 2 {
                return Err(Error::Topology(format!("edge {a}-{b} lies in {} faces", faces.len())));
            }
            let nb = (0..3).map(|e| faces[0].neighbor(g, e)).find(|&h| h == faces[1]);
            if nb.is_none() {
                return Err(Error::Topology(format!("faces on edge {a}-{b} are not neighbors")));
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        while (report.faces_checked as usize) < EDGE_CHECK_SAMPLES {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if g.commutes(x, y) {
                continue;
            }
            check_face_edges(g, FaceKey { x, y })?;
            report.faces_checked += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::predicted_sheets;
    use crate::group::builtin::{dihedral, extraspecial_exponent_p, quaternion8, symmetric};

    fn find(g: &Group, name: &str) -> usize {
        g.names().iter().position(|s| s == name).unwrap()
    }

    #[test]
    fn stats_of_small_groups() {
        let s3 = build_stats(&symmetric(3).unwrap()).unwrap();
        assert_eq!((s3.vertices, s3.e1, s3.faces, s3.euler), (10, 9, 18, 1));
        let q8 = build_stats(&quaternion8()).unwrap();
        assert_eq!((q8.vertices, q8.e1, q8.faces, q8.euler), (12, 12, 24, 0));
        let u3 = build_stats(&extraspecial_exponent_p(3).unwrap()).unwrap();
        assert_eq!((u3.vertices, u3.e1, u3.faces, u3.euler), (48, 216, 432, -168));
        assert_eq!(u3.e2, u3.faces);
    }

    #[test]
    fn s3_neighbors() {
        let g = symmetric(3).unwrap();
        let (a, b) = (find(&g, "(1,2)"), find(&g, "(1,3)"));
        let f = FaceKey::new(&g, a, b).unwrap();
        let [n0, n1, n2] = f.neighbors(&g);
        assert_eq!(n0, FaceKey { x: b, y: a });
        assert_eq!(n1, FaceKey { x: b, y: find(&g, "(2,3)") });
        assert_eq!(n2, FaceKey { x: find(&g, "(2,3)"), y: a });
        assert_eq!(g.mul(a, b), find(&g, "(1,2,3)"));
        for (e, nb) in f.neighbors(&g).into_iter().enumerate() {
            assert_ne!(nb, f);
            assert_eq!(nb.neighbor(&g, CROSSED_EDGE[e]), f);
        }
    }

    #[test]
    fn edges_are_two_sided_and_cancel() {
        for g in [symmetric(3).unwrap(), quaternion8(), symmetric(4).unwrap(), extraspecial_exponent_p(3).unwrap()] {
            let r = check_edges(&g).unwrap();
            assert!(r.exhaustive && r.edge_index_checked);
            assert_eq!(r.faces_checked, build_stats(&g).unwrap().faces);
        }
    }

    #[test]
    fn sampled_edge_check_runs_on_larger_groups() {
        let g = symmetric(6).unwrap();
        let r = check_edges(&g).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.faces_checked as usize, EDGE_CHECK_SAMPLES);
    }

    #[test]
    fn d6_sheets() {
        let g = dihedral(6).unwrap();
        let tau = find(&g, "(1,2,3)");
        let sheets = vertex_sheets(&g, Vertex::two(tau)).unwrap();
        assert_eq!(sheets.len(), 1);
        assert_eq!(sheets[0].len(), 3);
        let sigma = (1..6).find(|&x| g.element_order(x) == 2).unwrap();
        assert_eq!(vertex_sheets(&g, Vertex::one(sigma)).unwrap().len(), 2);
    }

    #[test]
    fn sheets_partition_stars_and_match_predictions() {
        for g in [symmetric(4).unwrap(), quaternion8(), extraspecial_exponent_p(3).unwrap()] {
            for w in (0..g.order()).filter(|&w| !g.is_central(w)) {
                let predicted = predicted_sheets(&g, w).unwrap();
                for (v, expected) in [(Vertex::one(w), predicted.type1), (Vertex::two(w), predicted.type2)] {
                    let sheets = vertex_sheets(&g, v).unwrap();
                    assert_eq!(sheets.len(), expected, "{v}");
                    let mut all: Vec<FaceKey> = sheets.concat();
                    let total = all.len();
                    all.sort();
                    all.dedup();
                    assert_eq!(all.len(), total);
                    assert_eq!(total, faces_at(&g, v).len());
                    assert!(sheets.iter().all(|s| s.len() >= 3));
                }
            }
        }
    }

    #[test]
    fn central_vertex_has_no_sheets() {
        let g = quaternion8();
        assert!(matches!(vertex_sheets(&g, Vertex::one(0)), Err(Error::CentralElement(0))));
    }

    #[test]
    fn identity_and_inclusion_maps() {
        let s3 = symmetric(3).unwrap();
        let id = Homomorphism::identity(&s3);
        let m = induced_map(&id).unwrap();
        for x in 0..6 {
            for y in s3.noncommuting(x) {
                assert_eq!(m.apply(FaceKey { x, y }), FaceKey { x, y });
            }
        }
        let s4 = symmetric(4).unwrap();
        let inc = Homomorphism::permutation_inclusion(&s3, &s4).unwrap();
        induced_map(&inc).unwrap();
    }

    #[test]
    fn q8_conjugation_permutes_faces() {
        let g = quaternion8();
        let i = find(&g, "i");
        let hom = Homomorphism::conjugation(&g, i);
        let m = induced_map(&hom).unwrap();
        let mut images: Vec<FaceKey> = (0..8)
            .flat_map(|x| g.noncommuting(x).map(move |y| FaceKey { x, y }))
            .map(|f| m.apply(f))
            .collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 24);
    }

    #[test]
    fn trivial_map_is_refused() {
        let s3 = symmetric(3).unwrap();
        let trivial = Homomorphism::new(&s3, &s3, vec![0; 6]).unwrap();
        assert!(matches!(induced_map(&trivial), Err(Error::NotInjectiveOnCommutators)));
    }
}
