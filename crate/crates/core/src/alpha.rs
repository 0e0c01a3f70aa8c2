//! Orbits of conjugation by a cyclic subgroup `<alpha>` and the sheet counts
//! they predict.
//!
//! An orbit of `x -> alpha^-1 x alpha` is *productive* when `alpha` is the
//! product of two distinct members, *nonproductive* when it has at least two
//! members but is not productive. With `p` productive and `n` nonproductive
//! orbits, the closed star of `(alpha, 2)` has `n/2 + p` sheets and the closed
//! star of `(alpha, 1)` has `n + p` sheets.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    Singleton,
    Productive,
    Nonproductive,
}

#[derive(Clone, Debug)]
pub struct AlphaSummary {
    pub alpha: usize,
    /// Each orbit listed as `x, x^alpha, x^(alpha^2), ...` from its smallest element.
    pub orbits: Vec<Vec<usize>>,
    pub kinds: Vec<OrbitKind>,
    pub p_alpha: usize,
    pub n_alpha: usize,
    pub centralizer_size: usize,
}

/// Productive / nonproductive orbit counts for one element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlphaCounts {
    pub productive: u32,
    pub nonproductive: u32,
    pub orbits: u32,
}

/// Predicted sheet counts about `(alpha, 2)` and `(alpha, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SheetPrediction {
    pub type2: usize,
    pub type1: usize,
}

impl AlphaCounts {
    pub fn predicted_sheets(&self) -> SheetPrediction {
        let (p, n) = (self.productive as usize, self.nonproductive as usize);
        SheetPrediction {
            type2: n / 2 + p,
            type1: n + p,
        }
    }
}

pub fn alpha_orbits(g: &Group, alpha: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order()];
    let mut orbits = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut z = x;
        while !seen[z] {
            seen[z] = true;
            orbit.push(z);
            z = g.conj(z, alpha);
        }
        orbits.push(orbit);
    }
    orbits
}

/// Classifies one `<alpha>`-orbit. Only the first listed member is tested:
/// `alpha = x x^(alpha^k)` for some `1 <= k < |orbit|` is independent of the
/// representative.
pub fn classify_orbit(g: &Group, alpha: usize, orbit: &[usize]) -> OrbitKind {
    if orbit.len() <= 1 {
        return OrbitKind::Singleton;
    }
    let x = orbit[0];
    let mut z = x;
    for _ in 1..orbit.len() {
        z = g.conj(z, alpha);
        if g.mul(x, z) == alpha {
            return OrbitKind::Productive;
        }
    }
    OrbitKind::Nonproductive
}

pub fn summarize(g: &Group, alpha: usize) -> AlphaSummary {
    let orbits = alpha_orbits(g, alpha);
    let kinds: Vec<OrbitKind> = orbits.iter().map(|o| classify_orbit(g, alpha, o)).collect();
    AlphaSummary {
        alpha,
        p_alpha: kinds.iter().filter(|&&k| k == OrbitKind::Productive).count(),
        n_alpha: kinds.iter().filter(|&&k| k == OrbitKind::Nonproductive).count(),
        centralizer_size: g.centralizer_size(alpha),
        orbits,
        kinds,
    }
}

pub fn predicted_sheets(g: &Group, alpha: usize) -> Result<SheetPrediction> {
    if g.is_central(alpha) {
        return Err(Error::CentralElement(alpha));
    }
    let s = summarize(g, alpha);
    Ok(AlphaCounts {
        productive: s.p_alpha as u32,
        nonproductive: s.n_alpha as u32,
        orbits: s.orbits.len() as u32,
    }
    .predicted_sheets())
}

/// Orbit counts for every element; central elements get `p = n = 0`.
pub fn all_counts(g: &Group) -> Vec<AlphaCounts> {
    (0..g.order())
        .into_par_iter()
        .map_init(
            || vec![false; g.order()],
            |seen, alpha| {
                seen.fill(false);
                let mut counts = AlphaCounts::default();
                for x in 0..g.order() {
                    if seen[x] {
                        continue;
                    }
                    counts.orbits += 1;
                    seen[x] = true;
                    let mut z = g.conj(x, alpha);
                    if z == x {
                        continue;
                    }
                    let mut productive = false;
                    while z != x {
                        seen[z] = true;
                        productive |= g.mul(x, z) == alpha;
                        z = g.conj(z, alpha);
                    }
                    if productive {
                        counts.productive += 1;
                    } else {
                        counts.nonproductive += 1;
                    }
                }
                counts
            },
        )
        .collect()
}

/// `sum_alpha (3 n_alpha / 2 + 2 p_alpha)`, the predicted total number of sheets.
pub fn predicted_sheet_total(counts: &[AlphaCounts]) -> u64 {
    counts
        .iter()
        .map(|c| 3 * c.nonproductive as u64 / 2 + 2 * c.productive as u64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::{dihedral, extraspecial_exponent_p, quaternion8, symmetric};

    fn find(g: &Group, name: &str) -> usize {
        g.names().iter().position(|s| s == name).unwrap()
    }

    #[test]
    fn d6_rotation_orbits() {
        let g = dihedral(6).unwrap();
        let tau = find(&g, "(1,2,3)");
        let s = summarize(&g, tau);
        let reflections: Vec<usize> = (0..6).filter(|&x| g.element_order(x) == 2).collect();
        let orbit = s.orbits.iter().find(|o| o.contains(&reflections[0])).unwrap();
        let mut sorted = orbit.clone();
        sorted.sort();
        assert_eq!(sorted, reflections);
        assert_eq!(classify_orbit(&g, tau, orbit), OrbitKind::Productive);
        assert_eq!((s.p_alpha, s.n_alpha), (1, 0));
        assert_eq!(predicted_sheets(&g, tau).unwrap(), SheetPrediction { type2: 1, type1: 1 });
    }

    #[test]
    fn d6_reflection_orbits() {
        let g = dihedral(6).unwrap();
        let sigma = (1..6).find(|&x| g.element_order(x) == 2).unwrap();
        let rotations: Vec<usize> = (1..6).filter(|&x| g.element_order(x) == 3).collect();
        let s = summarize(&g, sigma);
        let orbit = s.orbits.iter().find(|o| o.contains(&rotations[0])).unwrap();
        assert_eq!(orbit.len(), 2);
        assert_eq!(classify_orbit(&g, sigma, orbit), OrbitKind::Nonproductive);
        assert_eq!((s.p_alpha, s.n_alpha), (0, 2));
        assert_eq!(predicted_sheets(&g, sigma).unwrap(), SheetPrediction { type2: 1, type1: 2 });
    }

    #[test]
    fn identity_gives_singletons() {
        let g = symmetric(4).unwrap();
        let s = summarize(&g, 0);
        assert_eq!(s.orbits.len(), 24);
        assert!(s.kinds.iter().all(|&k| k == OrbitKind::Singleton));
        assert!(matches!(predicted_sheets(&g, 0), Err(Error::CentralElement(0))));
    }

    #[test]
    fn extraspecial_orbits_have_size_p() {
        let g = extraspecial_exponent_p(3).unwrap();
        for alpha in (0..27).filter(|&a| !g.is_central(a)) {
            for x in g.noncommuting(alpha) {
                let orbit = alpha_orbits(&g, alpha).into_iter().find(|o| o.contains(&x)).unwrap();
                assert_eq!(orbit.len(), 3);
            }
        }
    }

    #[test]
    fn all_counts_agree_with_summaries() {
        for g in [symmetric(4).unwrap(), quaternion8(), dihedral(12).unwrap()] {
            let counts = all_counts(&g);
            for alpha in 0..g.order() {
                let s = summarize(&g, alpha);
                assert_eq!(counts[alpha].productive as usize, s.p_alpha);
                assert_eq!(counts[alpha].nonproductive as usize, s.n_alpha);
                assert_eq!(counts[alpha].orbits as usize, s.orbits.len());
            }
        }
    }

    #[test]
    fn summary_invariants() {
        for g in [symmetric(4).unwrap(), quaternion8(), extraspecial_exponent_p(3).unwrap()] {
            for alpha in 0..g.order() {
                let s = summarize(&g, alpha);
                assert_eq!(s.n_alpha % 2, 0);
                assert_eq!(s.p_alpha + s.n_alpha + s.centralizer_size, s.orbits.len());
                for (o, k) in s.orbits.iter().zip(&s.kinds) {
                    assert_eq!(g.element_order(alpha) % o.len(), 0);
                    assert_eq!(o.len() == 1, g.commutes(alpha, o[0]));
                    if *k == OrbitKind::Productive {
                        assert!(o.len() >= 3);
                    }
                }
                if g.element_order(alpha) == 2 {
                    assert_eq!(s.p_alpha, 0);
                    assert_eq!((g.order() - s.centralizer_size) % 4, 0);
                }
            }
        }
    }
}
