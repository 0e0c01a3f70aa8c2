//! The polygonal cell structure of a component: type-2 vertices and mixed
//! edges are erased, each type-2 sheet of `m` triangles becomes an `m`-gon
//! and each type-1 sheet becomes a vertex of valency (sheet size)/2.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::automorphism::find_automorphism;
use crate::complex::{walk_fan, FaceKey, VertexType};
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::schlafli::Schlafli;

fn ratio_string<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellComplex {
    pub component: usize,
    pub component_id: FaceKey,
    pub genus: u64,
    pub v_cell: u64,
    pub e_cell: u64,
    pub f_cell: u64,
    pub n: u32,
    /// `lambda1 <= lambda2`; equal in the equivar case.
    pub lambda1: u32,
    pub lambda2: u32,
    /// Vertices of valency `lambda1` and `lambda2` (`v2 = 0` when equivar).
    pub v1: u64,
    pub v2: u64,
    #[serde(serialize_with = "ratio_string")]
    pub avg_valency: Ratio<u64>,
    pub schlafli: Schlafli,
}

impl CellComplex {
    pub fn is_equivar(&self) -> bool {
        self.lambda1 == self.lambda2
    }
}

fn conj_orbit_len(g: &Group, a: usize, by: usize) -> u32 {
    let mut z = g.conj(a, by);
    let mut len = 1;
    while z != a {
        z = g.conj(z, by);
        len += 1;
    }
    len
}

fn topology(component: &FaceKey, detail: String) -> Error {
    Error::Topology(format!("component {component:?}: {detail}"))
}

/// Builds the cell structure of component `i` and checks it against the
/// group: one gonality, at most two valencies, each valency equal to the
/// conjugation-orbit size of the face label, type-2 labels in one conjugacy
/// class and type-1 labels in at most two, plus the counting relations.
pub fn cell_structure(dec: &Decomposition<'_>, i: usize) -> Result<CellComplex> {
    let g = dec.group();
    let comp = dec.component(i);
    let id = comp.id;
    let mut n: Option<u32> = None;
    let mut valencies: BTreeMap<u32, u64> = BTreeMap::new();
    let mut classes1 = BTreeSet::new();
    let mut classes2 = BTreeSet::new();
    for &sid in dec.sheet_ids_of(i) {
        let s = dec.sheet(sid as usize);
        let w = s.elem as usize;
        match s.kind {
            VertexType::Two => {
                classes2.insert(g.class_of(w));
                match n {
                    None => n = Some(s.size),
                    Some(first) if first != s.size => {
                        return Err(Error::InconsistentGonality {
                            component: i,
                            first,
                            second: s.size,
                        })
                    }
                    _ => {}
                }
            }
            VertexType::One => {
                classes1.insert(g.class_of(w));
                if s.size % 2 != 0 {
                    return Err(topology(&id, format!("type-1 sheet of {} has odd size {}", g.name(w), s.size)));
                }
                let valency = s.size / 2;
                let face = FaceKey::from_slot(s.start as usize, g.order());
                let predicted = conj_orbit_len(g, face.alpha(g), w);
                if predicted != valency {
                    return Err(topology(
                        &id,
                        format!("vertex {} has valency {valency} but its orbit predicts {predicted}", g.name(w)),
                    ));
                }
                *valencies.entry(valency).or_insert(0) += 1;
            }
        }
    }
    let n = n.ok_or_else(|| topology(&id, "no polygons".into()))?;
    if valencies.len() > 2 || valencies.is_empty() {
        return Err(Error::MoreThanTwoValencies {
            component: i,
            valencies: valencies.keys().copied().collect(),
        });
    }
    if classes2.len() != 1 || classes1.len() > 2 {
        return Err(topology(
            &id,
            format!("labels span {} type-2 and {} type-1 conjugacy classes", classes2.len(), classes1.len()),
        ));
    }
    let vals: Vec<(u32, u64)> = valencies.into_iter().collect();
    let (lambda1, v1) = vals[0];
    let (lambda2, v2) = if vals.len() == 2 { vals[1] } else { (lambda1, 0) };

    let e = comp.faces / 2;
    let f = comp.type2_sheets;
    let v = comp.type1_sheets;
    let nn = n as u64;
    if nn * f != 2 * e {
        return Err(topology(&id, format!("nF = {} but 2E = {}", nn * f, 2 * e)));
    }
    if lambda1 as u64 * v1 + lambda2 as u64 * v2 != 2 * e {
        return Err(topology(&id, "valency sum differs from 2E".into()));
    }
    if v2 > 0 {
        if n % 2 != 0 {
            return Err(topology(&id, format!("two valencies with odd n = {n}")));
        }
        if lambda1 as u64 * v1 != e || lambda2 as u64 * v2 != e {
            return Err(topology(&id, "E differs from lambda_i V_i".into()));
        }
    }
    let inv_lambda = (Ratio::new(1i64, lambda1 as i64) + Ratio::new(1, lambda2 as i64)) / 2;
    if inv_lambda != Ratio::new(v as i64, 2 * e as i64) {
        return Err(topology(&id, "average valency is not the harmonic mean".into()));
    }
    let chi = 2 - 2 * comp.genus as i64;
    let cell_chi = (inv_lambda + Ratio::new(1, n as i64) - Ratio::new(1, 2)) * 2 * e as i64;
    if cell_chi != Ratio::from_integer(chi) || v as i64 - e as i64 + f as i64 != chi {
        return Err(topology(&id, format!("cell Euler characteristic {cell_chi} differs from {chi}")));
    }

    Ok(CellComplex {
        component: i,
        component_id: id,
        genus: comp.genus,
        v_cell: v,
        e_cell: e,
        f_cell: f,
        n,
        lambda1,
        lambda2,
        v1: if v2 == 0 { v } else { v1 },
        v2,
        avg_valency: Ratio::new(2 * e, v),
        schlafli: Schlafli::new(n, lambda1, lambda2),
    })
}

/// Vertex labels and valencies of component `i`, in sheet order.
pub fn vertex_valencies(dec: &Decomposition<'_>, i: usize) -> Vec<(usize, u32)> {
    dec.sheet_ids_of(i)
        .iter()
        .map(|&sid| dec.sheet(sid as usize))
        .filter(|s| s.kind == VertexType::One)
        .map(|s| (s.elem as usize, s.size / 2))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub e_divides_order: bool,
    pub f_divides_order: bool,
    pub n_divides_2e: bool,
    /// Two valencies: `lambda_i` and `V_i` divide `E`. One valency:
    /// `lambda` and `V` divide `2E`.
    pub valency_divisibility: bool,
    /// Present when `E = |G|` or `F = |G|`: `C(x) ∩ C(y) = 1` for the
    /// defining edge and `Z(G) = 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_action: Option<bool>,
}

impl DivisibilityReport {
    pub fn holds(&self) -> bool {
        self.e_divides_order
            && self.f_divides_order
            && self.n_divides_2e
            && self.valency_divisibility
            && self.free_action != Some(false)
    }
}

pub fn divisibility_report(g: &Group, cc: &CellComplex) -> Result<DivisibilityReport> {
    let order = g.order() as u64;
    let (e, f, n) = (cc.e_cell, cc.f_cell, cc.n as u64);
    let (l1, l2) = (cc.lambda1 as u64, cc.lambda2 as u64);
    let valency_divisibility = if cc.is_equivar() {
        (2 * e) % l1 == 0 && (2 * e) % cc.v_cell == 0
    } else {
        e % l1 == 0 && e % l2 == 0 && e % cc.v1 == 0 && e % cc.v2 == 0
    };
    let free_action = (e == order || f == order).then(|| {
        let FaceKey { x, y } = cc.component_id;
        let shared = (0..g.order()).filter(|&z| g.commutes(z, x) && g.commutes(z, y)).count();
        shared == 1 && g.center().len() == 1
    });
    let report = DivisibilityReport {
        e_divides_order: order % e == 0,
        f_divides_order: order % f == 0,
        n_divides_2e: (2 * e) % n == 0,
        valency_divisibility,
        free_action,
    };
    if report.holds() {
        Ok(report)
    } else {
        Err(Error::DivisibilityViolation {
            component: cc.component,
            detail: format!("{report:?} for (V,E,F)=({},{e},{f}) in a group of order {order}", cc.v_cell),
        })
    }
}

/// Rims of the polygons of component `i`: each polygon is the cyclic list
/// of desingularized vertex ids met along its boundary, following the
/// orientation.
pub fn polygons(dec: &Decomposition<'_>, i: usize) -> Result<Vec<Vec<usize>>> {
    let g = dec.group();
    let mut out = Vec::new();
    for &sid in dec.sheet_ids_of(i) {
        let s = dec.sheet(sid as usize);
        if s.kind != VertexType::Two {
            continue;
        }
        let mut rim = Vec::with_capacity(s.size as usize);
        walk_fan(g, s.vertex(), FaceKey::from_slot(s.start as usize, g.order()), |f| {
            rim.push(dec.corner_sheet(f, 0));
        })?;
        out.push(rim);
    }
    Ok(out)
}

/// Diamond condition and closed-cell property: every polygon has pairwise
/// distinct rim vertices, and every vertex meets each of its polygons along
/// exactly two edges.
pub fn check_diamond(dec: &Decomposition<'_>, i: usize) -> Result<()> {
    let g = dec.group();
    let violation = |detail: String| Error::DiamondViolation { component: i, detail };
    for mut rim in polygons(dec, i)? {
        let len = rim.len();
        rim.sort_unstable();
        rim.dedup();
        if rim.len() != len {
            return Err(violation(format!("a {len}-gon repeats a rim vertex")));
        }
    }
    for &sid in dec.sheet_ids_of(i) {
        let s = dec.sheet(sid as usize);
        if s.kind != VertexType::One {
            continue;
        }
        let mut around: HashMap<usize, u32> = HashMap::new();
        walk_fan(g, s.vertex(), FaceKey::from_slot(s.start as usize, g.order()), |f| {
            *around.entry(dec.corner_sheet(f, 2)).or_insert(0) += 1;
        })?;
        if let Some((_, &k)) = around.iter().find(|(_, &k)| k != 2) {
            return Err(violation(format!(
                "vertex {} meets a polygon in {k} triangles instead of 2",
                g.name(s.elem as usize)
            )));
        }
    }
    Ok(())
}

/// Three-valued outcome of a sufficient condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    fn from_option(searched: Option<bool>) -> Tri {
        match searched {
            Some(true) => Tri::True,
            Some(false) => Tri::False,
            None => Tri::Unknown,
        }
    }

    fn or(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::True, _) | (_, Tri::True) => Tri::True,
            (Tri::False, Tri::False) => Tri::False,
            _ => Tri::Unknown,
        }
    }

    fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Unknown,
        }
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

/// Flags for the component's face `(x, y)` with `alpha = xy` (the canonical
/// face). `False` means "not established by these conditions", never "not
/// vertex-transitive" or "not regular".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeFlags {
    pub diamond: bool,
    pub equivar: bool,
    /// `y` lies in the `<alpha>`-conjugation orbit of `x`.
    pub alpha_conjugate: bool,
    /// An automorphism with `x -> y`, `y -> y^-1 x y`.
    pub rotation_automorphism: Tri,
    /// An automorphism with `x -> y^-1`, `y -> x^-1`.
    pub reflection_automorphism: Tri,
    pub vertex_transitive_sufficient: Tri,
    pub regular_sufficient: Tri,
    pub doubled: bool,
}

pub fn polytope_flags(dec: &Decomposition<'_>, cc: &CellComplex, search_cap: usize) -> Result<PolytopeFlags> {
    let g = dec.group();
    check_diamond(dec, cc.component)?;
    let FaceKey { x, y } = cc.component_id;
    let alpha = g.mul(x, y);
    let mut z = g.conj(x, alpha);
    let mut alpha_conjugate = z == y;
    while z != x && !alpha_conjugate {
        z = g.conj(z, alpha);
        alpha_conjugate = z == y;
    }
    if alpha_conjugate != (cc.n % 2 == 1) {
        return Err(topology(
            &cc.component_id,
            format!("alpha-conjugacy of the rim ({alpha_conjugate}) disagrees with n = {}", cc.n),
        ));
    }
    let searchable = g.order() <= search_cap;
    let search = |pairs: &[(usize, usize)]| searchable.then(|| find_automorphism(g, pairs).is_some());
    let rotation = Tri::from_option(search(&[(x, y), (y, g.conj(x, y))]));
    let reflection = Tri::from_option(search(&[(x, g.inv(y)), (y, g.inv(x))]));
    let conj = Tri::from(alpha_conjugate);
    Ok(PolytopeFlags {
        diamond: true,
        equivar: cc.is_equivar(),
        alpha_conjugate,
        rotation_automorphism: rotation,
        reflection_automorphism: reflection,
        vertex_transitive_sufficient: conj.or(rotation),
        regular_sufficient: conj.and(reflection).or(rotation.and(reflection)),
        doubled: cc.lambda1 == 2 && cc.lambda2 > 2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Doubling {
    None,
    /// `{n,2}`, two `n`-gons sharing their rim.
    Hosohedral { n: u32, genus_zero: bool },
    /// `{2s,2-k}`, the double of an `{s,k}` complex.
    Double { s: u32, k: u32, genus_preserved: bool },
}

impl Doubling {
    pub fn consistent(&self) -> bool {
        match *self {
            Doubling::None => true,
            Doubling::Hosohedral { genus_zero, .. } => genus_zero,
            Doubling::Double { genus_preserved, .. } => genus_preserved,
        }
    }
}

pub fn doubling_relation(cc: &CellComplex) -> Doubling {
    match (cc.lambda1, cc.lambda2) {
        (2, 2) => Doubling::Hosohedral {
            n: cc.n,
            genus_zero: cc.genus == 0 && cc.f_cell == 2 && cc.e_cell == cc.n as u64 && cc.v_cell == cc.n as u64,
        },
        (2, k) => {
            // Removing the valency-2 midpoints leaves V2 vertices, E/2 edges
            // and the same faces.
            let chi = cc.v2 as i64 - (cc.e_cell / 2) as i64 + cc.f_cell as i64;
            Doubling::Double {
                s: cc.n / 2,
                k,
                genus_preserved: cc.e_cell % 2 == 0 && chi == 2 - 2 * cc.genus as i64,
            }
        }
        _ => Doubling::None,
    }
}

/// Oriented combinatorial map of a polygon list, as darts `(face, position)`.
struct DartMap {
    starts: Vec<usize>,
    tails: Vec<usize>,
    next: Vec<usize>,
    opposite: Vec<usize>,
}

impl DartMap {
    fn new(polys: &[Vec<usize>]) -> Option<DartMap> {
        let mut starts = vec![0];
        let mut tails = Vec::new();
        let mut next = Vec::new();
        let mut heads = Vec::new();
        for p in polys {
            let base = tails.len();
            for (k, &v) in p.iter().enumerate() {
                tails.push(v);
                heads.push(p[(k + 1) % p.len()]);
                next.push(base + (k + 1) % p.len());
            }
            starts.push(tails.len());
        }
        let index: HashMap<(usize, usize), usize> =
            tails.iter().zip(&heads).enumerate().map(|(d, (&t, &h))| ((t, h), d)).collect();
        if index.len() != tails.len() {
            return None;
        }
        let opposite = (0..tails.len())
            .map(|d| index.get(&(heads[d], tails[d])).copied())
            .collect::<Option<Vec<_>>>()?;
        Some(DartMap {
            starts,
            tails,
            next,
            opposite,
        })
    }

    fn len(&self) -> usize {
        self.tails.len()
    }

    /// Tries the isomorphism determined by sending dart 0 to `root`.
    fn maps_onto(&self, other: &DartMap, root: usize) -> bool {
        let mut image = vec![usize::MAX; self.len()];
        let mut taken = vec![false; other.len()];
        let mut vertex_image: HashMap<usize, usize> = HashMap::new();
        let mut vertex_taken: HashMap<usize, usize> = HashMap::new();
        image[0] = root;
        taken[root] = true;
        let mut stack = vec![0];
        while let Some(d) = stack.pop() {
            let e = image[d];
            let (tv, ov) = (self.tails[d], other.tails[e]);
            if *vertex_image.entry(tv).or_insert(ov) != ov || *vertex_taken.entry(ov).or_insert(tv) != tv {
                return false;
            }
            for (a, b) in [(self.next[d], other.next[e]), (self.opposite[d], other.opposite[e])] {
                if image[a] == usize::MAX {
                    if std::mem::replace(&mut taken[b], true) {
                        return false;
                    }
                    image[a] = b;
                    stack.push(a);
                } else if image[a] != b {
                    return false;
                }
            }
        }
        image.iter().all(|&i| i != usize::MAX)
    }
}

/// True when the two polygon complexes are isomorphic as cell complexes
/// (vertices, edges and faces matched bijectively with incidences), allowing
/// an orientation reversal. Both must be connected closed surfaces.
pub fn cell_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let (Some(ma), Some(mb)) = (DartMap::new(a), DartMap::new(b)) else {
        return false;
    };
    if ma.len() != mb.len() || ma.starts.len() != mb.starts.len() || ma.len() == 0 {
        return false;
    }
    let reversed: Vec<Vec<usize>> = b.iter().map(|p| p.iter().rev().copied().collect()).collect();
    let Some(mr) = DartMap::new(&reversed) else {
        return false;
    };
    (0..mb.len()).any(|root| ma.maps_onto(&mb, root) || ma.maps_onto(&mr, root))
}
