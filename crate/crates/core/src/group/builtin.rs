//! Standard families: symmetric, alternating, dihedral, quaternion,
//! extraspecial `U3(p)`, the Frobenius group of order 21, and direct products.

use std::fmt;
use std::str::FromStr;

use super::{Group, Perm};
use crate::error::{Error, Result};

/// Closure cap for permutation groups (A7 has 2520 elements, S7 5040). The
/// multiplication table costs `4 N^2` bytes.
pub const BUILTIN_CAP: usize = 10_080;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Symmetric(usize),
    Alternating(usize),
    /// Dihedral group of the given order `2n`.
    Dihedral(usize),
    Quaternion8,
    /// `U3(p)`, the extraspecial group of order `p^3` and exponent `p`.
    Extraspecial(usize),
    Frobenius21,
    /// Cyclic group; only useful as a direct-product factor.
    Cyclic(usize),
    Product(Box<Builtin>, Box<Builtin>),
}

impl Builtin {
    pub fn build(&self) -> Result<Group> {
        let g = self.build_any()?;
        g.ensure_nonabelian()?;
        Ok(g)
    }

    fn build_any(&self) -> Result<Group> {
        let g = match self {
            Builtin::Symmetric(n) => symmetric(*n)?,
            Builtin::Alternating(n) => alternating(*n)?,
            Builtin::Dihedral(order) => dihedral(*order)?,
            Builtin::Quaternion8 => quaternion8(),
            Builtin::Extraspecial(p) => extraspecial_exponent_p(*p)?,
            Builtin::Frobenius21 => frobenius21(),
            Builtin::Cyclic(n) => cyclic(*n)?,
            Builtin::Product(a, b) => direct_product(&a.build_any()?, &b.build_any()?)?,
        };
        Ok(g.with_label(self.to_string()))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Symmetric(n) => write!(f, "symmetric:{n}"),
            Builtin::Alternating(n) => write!(f, "alternating:{n}"),
            Builtin::Dihedral(n) => write!(f, "dihedral:{n}"),
            Builtin::Quaternion8 => write!(f, "quaternion8"),
            Builtin::Extraspecial(p) => write!(f, "extraspecial:{p}"),
            Builtin::Frobenius21 => write!(f, "frobenius21"),
            Builtin::Cyclic(n) => write!(f, "cyclic:{n}"),
            Builtin::Product(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    /// Accepts `symmetric:n`, `alternating:n`, `dihedral:2n`, `quaternion8`,
    /// `extraspecial:p`, `frobenius21`, `cyclic:n`, and products `A*B`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('*') {
            return Ok(Builtin::Product(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        let (family, param) = match s.split_once(':') {
            Some((f, p)) => {
                let p = p
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad parameter in {s:?}")))?;
                (f.trim(), Some(p))
            }
            None => (s, None),
        };
        let need = |p: Option<usize>| p.ok_or_else(|| Error::Parse(format!("{family} needs a parameter")));
        Ok(match family {
            "symmetric" | "S" => Builtin::Symmetric(need(param)?),
            "alternating" | "A" => Builtin::Alternating(need(param)?),
            "dihedral" | "D" => Builtin::Dihedral(need(param)?),
            "quaternion8" | "Q8" => Builtin::Quaternion8,
            "extraspecial" | "U3" => Builtin::Extraspecial(need(param)?),
            "frobenius21" => Builtin::Frobenius21,
            "cyclic" | "C" => Builtin::Cyclic(need(param)?),
            _ => return Err(Error::Parse(format!("unknown group family {family:?}"))),
        })
    }
}

fn cycle(points: impl IntoIterator<Item = u32>) -> Perm {
    let pts: Vec<u32> = points.into_iter().collect();
    Perm::cycle(&pts).expect("distinct points")
}

pub fn symmetric(n: usize) -> Result<Group> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("symmetric({n}) needs n >= 3")));
    }
    let gens = [cycle([1, 2]), cycle(1..=n as u32)];
    Ok(Group::from_permutations(&gens, BUILTIN_CAP)?.with_label(format!("symmetric:{n}")))
}

pub fn alternating(n: usize) -> Result<Group> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("alternating({n}) needs n >= 4")));
    }
    let long = if n % 2 == 1 { cycle(1..=n as u32) } else { cycle(2..=n as u32) };
    let gens = [cycle([1, 2, 3]), long];
    Ok(Group::from_permutations(&gens, BUILTIN_CAP)?.with_label(format!("alternating:{n}")))
}

/// Dihedral group of order `order = 2n` acting on the vertices `1..=n` of an n-gon.
pub fn dihedral(order: usize) -> Result<Group> {
    if order % 2 != 0 || order < 6 {
        return Err(Error::InvalidParameter(format!(
            "dihedral({order}) needs an even order 2n with n >= 3"
        )));
    }
    let n = (order / 2) as u32;
    let rotation = cycle(1..=n);
    let mut images: Vec<u32> = (0..=n).collect();
    for i in 1..=n {
        images[i as usize] = n + 1 - i;
    }
    let reflection = Perm::from_images(images)?;
    Ok(Group::from_permutations(&[rotation, reflection], BUILTIN_CAP)?.with_label(format!("dihedral:{order}")))
}

/// The quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion8() -> Group {
    // unit index: 0 = 1, 1 = i, 2 = j, 3 = k; element = 2 * unit + sign bit
    const UNIT_NAMES: [&str; 4] = ["1", "i", "j", "k"];
    fn unit_mul(a: usize, b: usize) -> (usize, bool) {
        match (a, b) {
            (0, u) | (u, 0) => (u, false),
            (a, b) if a == b => (0, true),
            (1, 2) => (3, false),
            (2, 1) => (3, true),
            (2, 3) => (1, false),
            (3, 2) => (1, true),
            (3, 1) => (2, false),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    }
    let mut table = vec![vec![0usize; 8]; 8];
    let mut names = Vec::with_capacity(8);
    for x in 0..8 {
        let (ux, sx) = (x / 2, x % 2 == 1);
        names.push(format!("{}{}", if sx { "-" } else { "" }, UNIT_NAMES[ux]));
        for y in 0..8 {
            let (uy, sy) = (y / 2, y % 2 == 1);
            let (u, s) = unit_mul(ux, uy);
            table[x][y] = 2 * u + usize::from(s ^ sx ^ sy);
        }
    }
    Group::from_cayley_table(&table, Some(names))
        .expect("quaternion table is a nonabelian group")
        .with_label("quaternion8")
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `U3(p)`: upper unitriangular 3x3 matrices over `F_p`. The matrix with
/// entries `a` (1,2), `b` (1,3), `c` (2,3) has index `a p^2 + b p + c`.
pub fn extraspecial_exponent_p(p: usize) -> Result<Group> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("extraspecial({p}) needs an odd prime")));
    }
    let n = p * p * p;
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let mut table = vec![vec![0usize; n]; n];
    for (x, row) in table.iter_mut().enumerate() {
        let (a, b, c) = split(x);
        for (y, entry) in row.iter_mut().enumerate() {
            let (a2, b2, c2) = split(y);
            let (a3, b3, c3) = ((a + a2) % p, (b + b2 + a * c2) % p, (c + c2) % p);
            *entry = a3 * p * p + b3 * p + c3;
        }
    }
    Ok(Group::from_cayley_table(&table, None)?.with_label(format!("extraspecial:{p}")))
}

/// The nonabelian group of order 21 as a subgroup of `S7`.
pub fn frobenius21() -> Group {
    let gens = [cycle(1..=7), "(2 3 5)(4 7 6)".parse::<Perm>().expect("literal")];
    Group::from_permutations(&gens, BUILTIN_CAP)
        .expect("order 21")
        .with_label("frobenius21")
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic(0)".into()));
    }
    if n == 1 {
        return Group::from_cayley_table_any(&[vec![0]], Some(vec!["()".into()]));
    }
    Ok(Group::from_permutations_any(&[cycle(1..=n as u32)], BUILTIN_CAP)?.with_label(format!("cyclic:{n}")))
}

/// `G x H` with element `(g, h)` at index `g |H| + h`.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    let (ng, nh) = (g.order(), h.order());
    let n = ng * nh;
    if n > super::MAX_ORDER {
        return Err(Error::InvalidParameter(format!("product order {n} too large")));
    }
    let mut table = vec![vec![0usize; n]; n];
    for (x, row) in table.iter_mut().enumerate() {
        let (gx, hx) = (x / nh, x % nh);
        for (y, entry) in row.iter_mut().enumerate() {
            let (gy, hy) = (y / nh, y % nh);
            *entry = g.mul(gx, gy) * nh + h.mul(hx, hy);
        }
    }
    let names = (0..n)
        .map(|x| format!("({},{})", g.name(x / nh), h.name(x % nh)))
        .collect();
    Ok(Group::from_cayley_table_any(&table, Some(names))?.with_label(format!("{}*{}", g.label(), h.label())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(dihedral(10).unwrap().order(), 10);
        assert_eq!(frobenius21().order(), 21);
        let p = direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(p.order(), 12);
    }

    #[test]
    fn dihedral6_has_trivial_center() {
        let g = dihedral(6).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.center().len(), 1);
        let g8 = dihedral(8).unwrap();
        assert_eq!(g8.center().len(), 2);
    }

    #[test]
    fn quaternion_counts() {
        let q = quaternion8();
        assert_eq!((q.order(), q.center().len(), q.class_count()), (8, 2, 5));
        let i = q.names().iter().position(|s| s == "i").unwrap();
        let j = q.names().iter().position(|s| s == "j").unwrap();
        assert_eq!(q.name(q.mul(i, j)), "k");
        assert_eq!(q.name(q.mul(j, i)), "-k");
    }

    #[test]
    fn extraspecial_counts() {
        let g = extraspecial_exponent_p(3).unwrap();
        assert_eq!((g.order(), g.center().len(), g.class_count()), (27, 3, 11));
        assert!((1..27).all(|x| g.element_order(x) == 3));
        let g5 = extraspecial_exponent_p(5).unwrap();
        assert_eq!((g5.order(), g5.center().len(), g5.class_count()), (125, 5, 29));
    }

    #[test]
    fn invalid_parameters() {
        assert!(symmetric(2).is_err());
        assert!(alternating(3).is_err());
        assert!(dihedral(4).is_err());
        assert!(dihedral(7).is_err());
        assert!(extraspecial_exponent_p(2).is_err());
        assert!(extraspecial_exponent_p(9).is_err());
    }

    #[test]
    fn parse_specs() {
        assert_eq!("symmetric:5".parse::<Builtin>().unwrap(), Builtin::Symmetric(5));
        assert_eq!("quaternion8".parse::<Builtin>().unwrap(), Builtin::Quaternion8);
        let p: Builtin = "quaternion8*symmetric:3".parse().unwrap();
        assert_eq!(p.build().unwrap().order(), 48);
        assert_eq!(p.to_string(), "quaternion8*symmetric:3");
        assert!("cyclic:4".parse::<Builtin>().unwrap().build().is_err());
        assert!("nonsense:3".parse::<Builtin>().is_err());
    }
}
