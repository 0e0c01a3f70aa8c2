//! Permutations on a finite point set, written in cycle notation.
//!
//! Points are the nonnegative integers as written; a permutation is stored
//! as its image vector with trailing fixed points trimmed, so permutations
//! of different nominal degrees compare equal when they move the same points
//! the same way.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity() -> Self {
        Perm(Vec::new())
    }

    /// Builds a permutation from its image vector; `images[p]` is the image of `p`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &q in &images {
            let q = q as usize;
            if q >= images.len() || seen[q] {
                return Err(Error::Parse(format!(
                    "image vector {images:?} is not a bijection"
                )));
            }
            seen[q] = true;
        }
        Ok(Self::trimmed(images))
    }

    /// A single cycle `(c0 c1 ... ck)`.
    pub fn cycle(points: &[u32]) -> Result<Self> {
        let degree = points.iter().map(|&p| p as usize + 1).max().unwrap_or(0);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for (i, &p) in points.iter().enumerate() {
            if seen[p as usize] {
                return Err(Error::Parse(format!("point {p} repeated in cycle {points:?}")));
            }
            seen[p as usize] = true;
            images[p as usize] = points[(i + 1) % points.len()];
        }
        Ok(Self::trimmed(images))
    }

    fn trimmed(mut images: Vec<u32>) -> Self {
        while let Some(&last) = images.last() {
            if last as usize == images.len() - 1 {
                images.pop();
            } else {
                break;
            }
        }
        Perm(images)
    }

    /// Largest moved point plus one (0 for the identity).
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.0.get(p as usize).copied().unwrap_or(p)
    }

    /// The product "first `self`, then `other`".
    pub fn then(&self, other: &Perm) -> Perm {
        let degree = self.degree().max(other.degree());
        let images = (0..degree as u32).map(|p| other.apply(self.apply(p))).collect();
        Self::trimmed(images)
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (p, &q) in self.0.iter().enumerate() {
            images[q as usize] = p as u32;
        }
        Perm(images)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start as u32;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `(1,2,3)`. Cycles are
    /// composed left to right; `()` is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let mut result = Perm::identity();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let body = &open[..close];
            let points = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad point {t:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !points.is_empty() {
                result = result.then(&Perm::cycle(&points)?);
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(result)
    }
}
