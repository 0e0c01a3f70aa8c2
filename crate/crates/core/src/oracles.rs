//! Closed-form censuses of `Y(D_2n)` and `Y(U_3(p))`. These are computed by
//! arithmetic alone and share no code with the decomposition pipeline.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cells::CellComplex;
use crate::error::{Error, Result};
use crate::schlafli::Schlafli;

/// Components with one symbol, genus and `(V, E, F)` cell counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SymbolClass {
    pub schlafli: Schlafli,
    pub genus: u64,
    pub v: u64,
    pub e: u64,
    pub f: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolCount {
    #[serde(flatten)]
    pub class: SymbolClass,
    pub count: u64,
}

/// Expected census as a multiset of symbol classes, in sorted order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExpectedCensus {
    pub entries: Vec<SymbolCount>,
}

impl ExpectedCensus {
    fn from_map(map: BTreeMap<SymbolClass, u64>) -> Self {
        ExpectedCensus {
            entries: map
                .into_iter()
                .filter(|&(_, count)| count > 0)
                .map(|(class, count)| SymbolCount { class, count })
                .collect(),
        }
    }

    /// Aggregates computed cell structures into the same shape.
    pub fn observed<'a>(cells: impl IntoIterator<Item = &'a CellComplex>) -> Self {
        let mut map = BTreeMap::new();
        for cc in cells {
            let class = SymbolClass {
                schlafli: cc.schlafli,
                genus: cc.genus,
                v: cc.v_cell,
                e: cc.e_cell,
                f: cc.f_cell,
            };
            *map.entry(class).or_insert(0) += 1;
        }
        Self::from_map(map)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn hosohedron(d: u64) -> SymbolClass {
    SymbolClass {
        schlafli: Schlafli::new(d as u32, 2, 2),
        genus: 0,
        v: d,
        e: d,
        f: 2,
    }
}

/// `{4,2-k}`: two poles of valency `k`, `k` equatorial vertices, `k` squares.
fn double_hosohedron(k: u64) -> SymbolClass {
    if k == 2 {
        return hosohedron(4);
    }
    SymbolClass {
        schlafli: Schlafli::new(4, 2, k as u32),
        genus: 0,
        v: k + 2,
        e: 2 * k,
        f: k,
    }
}

/// Census of `Y(D_2n)`: for `n` odd and each divisor `d > 1`,
/// `phi(d) n / 2d` components `{d,2}` and as many `{4,2-d}`; for `n` even and
/// each divisor `d >= 3`, `phi(d) n / 2d` components `{d,2}`, plus
/// `phi(d) n / 2d` of `{4,2-d}` for odd `d` or `phi(d) n / d` of
/// `{4,2-d/2}` for even `d`.
pub fn dihedral_expected(n: u64) -> Result<ExpectedCensus> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("dihedral oracle needs n >= 3, got {n}")));
    }
    let mut map = BTreeMap::new();
    let min_d = if n % 2 == 1 { 2 } else { 3 };
    for d in (min_d..=n).filter(|d| n % d == 0) {
        let half = euler_phi(d) * n / (2 * d);
        *map.entry(hosohedron(d)).or_insert(0) += half;
        if d % 2 == 1 {
            *map.entry(double_hosohedron(d)).or_insert(0) += half;
        } else {
            *map.entry(double_hosohedron(d / 2)).or_insert(0) += 2 * half;
        }
    }
    Ok(ExpectedCensus::from_map(map))
}

fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Census of `Y(U_3(p))`: `(p^2-1)(p^2-p)/2` components of genus
/// `p(p-3)/2 + 1`, each `{2p,p}` with `(V,E,F) = (2p, p^2, p)`.
pub fn extraspecial_expected(p: u64) -> Result<ExpectedCensus> {
    if !is_odd_prime(p) {
        return Err(Error::InvalidParameter(format!("extraspecial oracle needs an odd prime, got {p}")));
    }
    let class = SymbolClass {
        schlafli: Schlafli::new(2 * p as u32, p as u32, p as u32),
        genus: p * (p - 3) / 2 + 1,
        v: 2 * p,
        e: p * p,
        f: p,
    };
    Ok(ExpectedCensus::from_map(BTreeMap::from([(class, (p * p - 1) * (p * p - p) / 2)])))
}

/// `--expect` argument: `dihedral:n` or `extraspecial:p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Dihedral(u64),
    Extraspecial(u64),
}

impl Expectation {
    pub fn expected(&self) -> Result<ExpectedCensus> {
        match *self {
            Expectation::Dihedral(n) => dihedral_expected(n),
            Expectation::Extraspecial(p) => extraspecial_expected(p),
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Dihedral(n) => write!(f, "dihedral:{n}"),
            Expectation::Extraspecial(p) => write!(f, "extraspecial:{p}"),
        }
    }
}

impl FromStr for Expectation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected dihedral:<n> or extraspecial:<p>, got {s:?}"));
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let arg: u64 = arg.trim().parse().map_err(|_| bad())?;
        let e = match kind.trim() {
            "dihedral" => Expectation::Dihedral(arg),
            "extraspecial" => Expectation::Extraspecial(arg),
            _ => return Err(bad()),
        };
        e.expected()?;
        Ok(e)
    }
}

/// Result of comparing a computed census with an oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub expectation: String,
    pub matches: bool,
    pub expected: ExpectedCensus,
    pub observed: ExpectedCensus,
}

pub fn compare<'a>(
    expectation: Expectation,
    cells: impl IntoIterator<Item = &'a CellComplex>,
) -> Result<OracleComparison> {
    let expected = expectation.expected()?;
    let observed = ExpectedCensus::observed(cells);
    Ok(OracleComparison {
        expectation: expectation.to_string(),
        matches: expected == observed,
        expected,
        observed,
    })
}
