//! Group-free enumeration of the admissible face- and edge-transitive
//! closed-cell tesselation data of each genus.
//!
//! With face type `n`, valencies `l1 <= l2` and `1/l = (1/l1 + 1/l2)/2`, the
//! data must satisfy `nF = 2E`, `nF = lV` and `2 - 2g = 2(1/l + 1/n - 1/2)E`.
//! Candidates with `l1 >= 3` are searched inside the finite ranges
//!
//! * `g = 0`: `l, n < 6`,
//! * `g >= 1`: `l, n <= 2(2g+1)`, and for two valencies `l1 < 2g+2`, `l2 <= 6g`,
//!
//! and admitted when `E`, `V_i`, `F` come out as positive integers with
//! `V, F >= 3` (one valency) or `V_1, V_2 >= 2` (two valencies). Valency-2
//! data are the doubles `{2s,2-k}` of admitted `{s,k}` plus, in genus 0, the
//! two infinite families `{n,2}` and `{4,2-k}`. In genus 1 the last equation
//! does not fix `E`, so only the symbol is recorded.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::schlafli::Schlafli;

type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Finite,
    /// Genus one: the symbol is admissible, the counts are unbounded.
    Torus,
    /// `{n,2}`: two `n`-gons glued along their rim.
    Hosohedral,
    /// `{4,2-k}`: the double of the `{2,k}` dual hosohedron.
    DoubleHosohedral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Count {
    Exact(u64),
    Symbolic(String),
}

impl Count {
    pub fn exact(&self) -> Option<u64> {
        match self {
            Count::Exact(v) => Some(*v),
            Count::Symbolic(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TesselationDatum {
    pub genus: u64,
    pub family: Family,
    pub schlafli: String,
    /// `None` where the family leaves the value as a parameter.
    pub n: Option<u32>,
    pub lambda1: Option<u32>,
    pub lambda2: Option<u32>,
    pub faces: Count,
    pub vertices: Count,
    pub edges: Count,
    pub v1: Option<u64>,
    pub v2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub double_of: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solid_type: Option<String>,
}

impl TesselationDatum {
    pub fn symbol(&self) -> Option<Schlafli> {
        Some(Schlafli::new(self.n?, self.lambda1?, self.lambda2?))
    }

    /// `(V, E, F)` when all three are determined.
    pub fn counts(&self) -> Option<(u64, u64, u64)> {
        Some((self.vertices.exact()?, self.edges.exact()?, self.faces.exact()?))
    }
}

/// Search ranges for `l1 >= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub lambda_max: u32,
    pub n_max: u32,
    pub lambda1_max: u32,
    pub lambda2_max: u32,
}

pub fn bounds(genus: u64) -> Bounds {
    if genus == 0 {
        Bounds {
            lambda_max: 5,
            n_max: 5,
            lambda1_max: 5,
            lambda2_max: 5,
        }
    } else {
        let g = u32::try_from(genus).expect("genus fits in u32");
        Bounds {
            lambda_max: 2 * (2 * g + 1),
            n_max: 2 * (2 * g + 1),
            lambda1_max: 2 * g + 1,
            lambda2_max: 6 * g,
        }
    }
}

fn in_bounds(genus: u64, n: u32, l1: u32, l2: u32) -> bool {
    let b = bounds(genus);
    if l1 < 3 || n < 3 || l1 > l2 {
        return false;
    }
    if l1 == l2 {
        l1 <= b.lambda_max && n <= b.n_max
    } else {
        n % 2 == 0 && n >= 4 && n <= b.n_max && l1 <= b.lambda1_max && l2 <= b.lambda2_max
    }
}

/// `1/l + 1/n - 1/2` with `1/l` the mean of `1/l1` and `1/l2`.
fn coefficient(n: u32, l1: u32, l2: u32) -> Q {
    let inv_lambda = (Q::new(1, l1 as i64) + Q::new(1, l2 as i64)) / 2;
    inv_lambda + Q::new(1, n as i64) - Q::new(1, 2)
}

fn integer(q: Q) -> Option<u64> {
    (q.is_integer() && *q.numer() > 0).then(|| *q.numer() as u64)
}

fn solid_name(genus: u64, symbol: &str) -> Option<&'static str> {
    if genus != 0 {
        return None;
    }
    Some(match symbol {
        "{3,3}" => "tetrahedron",
        "{4,3}" => "cube",
        "{3,4}" => "octahedron",
        "{5,3}" => "dodecahedron",
        "{3,5}" => "icosahedron",
        "{6,2-3}" => "double tetrahedron",
        "{8,2-3}" => "double cube",
        "{6,2-4}" => "double octahedron",
        "{10,2-3}" => "double dodecahedron",
        "{6,2-5}" => "double icosahedron",
        "{4,3-4}" => "rhombic dodecahedron",
        "{4,3-5}" => "rhombic triacontahedron",
        _ => return None,
    })
}

/// The datum for `(genus, n, l1, l2)` with `3 <= l1 <= l2`, if admissible.
fn candidate(genus: u64, n: u32, l1: u32, l2: u32) -> Option<TesselationDatum> {
    if !in_bounds(genus, n, l1, l2) {
        return None;
    }
    let symbol = Schlafli::new(n, l1, l2);
    let c = coefficient(n, l1, l2);
    let mut datum = TesselationDatum {
        genus,
        family: Family::Finite,
        schlafli: symbol.to_string(),
        n: Some(n),
        lambda1: Some(l1),
        lambda2: Some(l2),
        faces: Count::Symbolic("unbounded".into()),
        vertices: Count::Symbolic("unbounded".into()),
        edges: Count::Symbolic("unbounded".into()),
        v1: None,
        v2: None,
        double_of: None,
        solid_type: solid_name(genus, &symbol.to_string()).map(String::from),
    };
    if genus == 1 {
        if *c.numer() != 0 {
            return None;
        }
        datum.family = Family::Torus;
        return Some(datum);
    }
    if *c.numer() == 0 {
        return None;
    }
    let e = integer(Q::from_integer(1 - genus as i64) / c)?;
    let f = integer(Q::new(2 * e as i64, n as i64))?;
    let (v1, v2) = if l1 == l2 {
        let v = integer(Q::new(2 * e as i64, l1 as i64))?;
        if v < 3 || f < 3 {
            return None;
        }
        (v, 0)
    } else {
        let v1 = integer(Q::new(e as i64, l1 as i64))?;
        let v2 = integer(Q::new(e as i64, l2 as i64))?;
        if v1 < 2 || v2 < 2 {
            return None;
        }
        (v1, v2)
    };
    datum.faces = Count::Exact(f);
    datum.vertices = Count::Exact(v1 + v2);
    datum.edges = Count::Exact(e);
    datum.v1 = Some(v1);
    datum.v2 = Some(v2);
    Some(datum)
}

/// `{2s,2-k}` from an equivar `{s,k}`: a valency-2 midpoint on every edge.
fn double(base: &TesselationDatum) -> TesselationDatum {
    let (s, k) = (base.n.unwrap(), base.lambda1.unwrap());
    let symbol = Schlafli::new(2 * s, 2, k).to_string();
    let mut d = TesselationDatum {
        genus: base.genus,
        family: base.family,
        solid_type: solid_name(base.genus, &symbol).map(String::from),
        schlafli: symbol,
        n: Some(2 * s),
        lambda1: Some(2),
        lambda2: Some(k),
        faces: base.faces.clone(),
        vertices: base.vertices.clone(),
        edges: base.edges.clone(),
        v1: None,
        v2: None,
        double_of: Some(base.schlafli.clone()),
    };
    if let Some((v, e, f)) = base.counts() {
        d.faces = Count::Exact(f);
        d.vertices = Count::Exact(v + e);
        d.edges = Count::Exact(2 * e);
        d.v1 = Some(e);
        d.v2 = Some(v);
    }
    d
}

fn hosohedral_family() -> TesselationDatum {
    TesselationDatum {
        genus: 0,
        family: Family::Hosohedral,
        schlafli: "{n,2}".into(),
        n: None,
        lambda1: Some(2),
        lambda2: Some(2),
        faces: Count::Exact(2),
        vertices: Count::Symbolic("n".into()),
        edges: Count::Symbolic("n".into()),
        v1: None,
        v2: None,
        double_of: None,
        solid_type: Some("dual hosohedron".into()),
    }
}

fn double_hosohedral_family() -> TesselationDatum {
    TesselationDatum {
        genus: 0,
        family: Family::DoubleHosohedral,
        schlafli: "{4,2-k}".into(),
        n: Some(4),
        lambda1: Some(2),
        lambda2: None,
        faces: Count::Symbolic("k".into()),
        vertices: Count::Symbolic("k+2".into()),
        edges: Count::Symbolic("2k".into()),
        v1: None,
        v2: None,
        double_of: Some("{2,k}".into()),
        solid_type: Some("double hosohedron".into()),
    }
}

fn sort_key(d: &TesselationDatum) -> (u8, u64, u64, Option<Schlafli>) {
    let family = match d.family {
        Family::Hosohedral => 0,
        Family::DoubleHosohedral => 1,
        _ => 2,
    };
    let (v, f) = (d.vertices.exact().unwrap_or(0), d.faces.exact().unwrap_or(0));
    (family, f, v, d.symbol())
}

/// All admissible data of genus `genus`, families first, then by face and
/// vertex count.
pub fn enumerate(genus: u64) -> Vec<TesselationDatum> {
    let b = bounds(genus);
    let mut out = Vec::new();
    if genus == 0 {
        out.push(hosohedral_family());
        out.push(double_hosohedral_family());
    }
    for lambda in 3..=b.lambda_max {
        for n in 3..=b.n_max {
            if let Some(d) = candidate(genus, n, lambda, lambda) {
                out.push(double(&d));
                out.push(d);
            }
        }
    }
    for l1 in 3..=b.lambda1_max {
        for l2 in l1 + 1..=b.lambda2_max {
            for n in (4..=b.n_max).step_by(2) {
                out.extend(candidate(genus, n, l1, l2));
            }
        }
    }
    out.sort_by_key(sort_key);
    out
}

/// Finds the enumerated datum a computed cell structure instantiates. For
/// genus 1 only the symbol is compared. Family members are returned with
/// their parameter filled in.
pub fn match_datum(genus: u64, symbol: Schlafli, v: u64, e: u64, f: u64) -> Result<TesselationDatum> {
    let no_match = || Error::NoMatch(format!("genus {genus} {symbol} (V,E,F)=({v},{e},{f})"));
    let n = symbol.n();
    let (l1, l2) = symbol.valencies();
    let found = if l1 == 2 && l2 == 2 {
        let mut d = hosohedral_family();
        d.n = Some(n);
        d.schlafli = symbol.to_string();
        d.vertices = Count::Exact(n as u64);
        d.edges = Count::Exact(n as u64);
        (genus == 0 && d.counts() == Some((v, e, f))).then_some(d)
    } else if l1 == 2 && n == 4 {
        let k = l2 as u64;
        let mut d = double_hosohedral_family();
        d.lambda2 = Some(l2);
        d.schlafli = symbol.to_string();
        d.double_of = Some(format!("{{2,{k}}}"));
        d.faces = Count::Exact(k);
        d.vertices = Count::Exact(k + 2);
        d.edges = Count::Exact(2 * k);
        d.v1 = Some(k);
        d.v2 = Some(2);
        (genus == 0 && d.counts() == Some((v, e, f))).then_some(d)
    } else if l1 == 2 {
        (n % 2 == 0)
            .then(|| candidate(genus, n / 2, l2, l2))
            .flatten()
            .map(|base| double(&base))
    } else {
        candidate(genus, n, l1, l2)
    };
    let d = found.ok_or_else(no_match)?;
    match d.counts() {
        Some(counts) if counts != (v, e, f) => Err(no_match()),
        _ => Ok(d),
    }
}
