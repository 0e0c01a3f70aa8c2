use std::collections::HashMap;

use super::Group;
use crate::error::{Error, Result};

/// A homomorphism between two groups, stored as its full element map.
#[derive(Clone, Debug)]
pub struct Homomorphism<'a> {
    source: &'a Group,
    target: &'a Group,
    map: Vec<usize>,
}

impl<'a> Homomorphism<'a> {
    /// Checks `map[xy] = map[x] map[y]` for all pairs.
    pub fn new(source: &'a Group, target: &'a Group, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::NotAHomomorphism(format!(
                "map has {} entries for a group of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::NotAHomomorphism(format!("image {bad} out of range")));
        }
        for x in 0..source.order() {
            for y in 0..source.order() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::NotAHomomorphism(format!(
                        "f({x}*{y}) != f({x})*f({y})"
                    )));
                }
            }
        }
        Ok(Homomorphism { source, target, map })
    }

    pub fn identity(g: &'a Group) -> Self {
        Homomorphism {
            source: g,
            target: g,
            map: (0..g.order()).collect(),
        }
    }

    /// The inner automorphism `x -> c^-1 x c`.
    pub fn conjugation(g: &'a Group, c: usize) -> Self {
        Homomorphism {
            source: g,
            target: g,
            map: (0..g.order()).map(|x| g.conj(x, c)).collect(),
        }
    }

    /// The inclusion of one permutation group into another, matching
    /// elements by the permutations they realize.
    pub fn permutation_inclusion(source: &'a Group, target: &'a Group) -> Result<Self> {
        let (Some(sp), Some(tp)) = (source.permutations(), target.permutations()) else {
            return Err(Error::NotAHomomorphism("both groups must be permutation groups".into()));
        };
        let index: HashMap<_, usize> = tp.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let map = sp
            .iter()
            .map(|p| {
                index
                    .get(p)
                    .copied()
                    .ok_or_else(|| Error::NotAHomomorphism(format!("{p} is not in the target")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, map)
    }

    pub fn source(&self) -> &'a Group {
        self.source
    }

    pub fn target(&self) -> &'a Group {
        self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_injective_on_commutators(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.source
            .commutator_subgroup()
            .into_iter()
            .all(|c| !std::mem::replace(&mut seen[self.map[c]], true))
    }

    pub fn ensure_injective_on_commutators(&self) -> Result<()> {
        if self.is_injective_on_commutators() {
            Ok(())
        } else {
            Err(Error::NotInjectiveOnCommutators)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::{cyclic, direct_product, symmetric};

    #[test]
    fn s3_into_s4() {
        let s3 = symmetric(3).unwrap();
        let s4 = symmetric(4).unwrap();
        let f = Homomorphism::permutation_inclusion(&s3, &s4).unwrap();
        assert!(f.is_injective());
        assert!(f.is_injective_on_commutators());
        assert!(Homomorphism::permutation_inclusion(&s4, &s3).is_err());
    }

    #[test]
    fn projection_kills_no_commutators() {
        // S3 x C2 -> S3 is not injective but is injective on [G,G] = A3.
        let s3 = symmetric(3).unwrap();
        let c2 = cyclic(2).unwrap();
        let g = direct_product(&s3, &c2).unwrap();
        let map = (0..g.order()).map(|x| x / 2).collect();
        let f = Homomorphism::new(&g, &s3, map).unwrap();
        assert!(!f.is_injective());
        assert!(f.is_injective_on_commutators());
    }

    #[test]
    fn sign_map_is_not_injective_on_commutators() {
        let s3 = symmetric(3).unwrap();
        let trivial = Homomorphism::new(&s3, &s3, vec![0; 6]).unwrap();
        assert!(matches!(
            trivial.ensure_injective_on_commutators(),
            Err(Error::NotInjectiveOnCommutators)
        ));
    }

    #[test]
    fn rejects_non_homomorphism() {
        let s3 = symmetric(3).unwrap();
        let bad = vec![1; 6];
        assert!(Homomorphism::new(&s3, &s3, bad).is_err());
    }
}
