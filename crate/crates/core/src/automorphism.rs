//! Brute-force search for an automorphism of `G` with prescribed images.
//!
//! The prescribed sources are extended greedily to a generating set. Images
//! of the extra generators are chosen depth first among elements with the
//! same order and centralizer size, and every partial assignment is checked
//! by defining the map along a breadth-first spanning tree of the subgroup
//! generated so far and testing each remaining Cayley-graph edge.

use crate::group::Group;

const UNSET: u32 = u32::MAX;

/// Default largest order for which the search is attempted.
pub const DEFAULT_SEARCH_CAP: usize = 512;

/// Defines the map on `<gens>` from `images`. Returns `None` unless it is a
/// well defined injective homomorphism on that subgroup.
fn extend(g: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<u32>> {
    let n = g.order();
    let mut map = vec![UNSET; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head];
        head += 1;
        let fh = map[h] as usize;
        for (&s, &t) in gens.iter().zip(images) {
            let hs = g.mul(h, s);
            let image = g.mul(fh, t) as u32;
            if map[hs] == UNSET {
                if std::mem::replace(&mut used[image as usize], true) {
                    return None;
                }
                map[hs] = image;
                queue.push(hs);
            } else if map[hs] != image {
                return None;
            }
        }
    }
    Some(map)
}

fn same_type(g: &Group, a: usize, b: usize) -> bool {
    g.element_order(a) == g.element_order(b) && g.centralizer_size(a) == g.centralizer_size(b)
}

/// An automorphism `phi` with `phi(s) = t` for every `(s, t)` in
/// `prescribed`, as a full element map.
pub fn find_automorphism(g: &Group, prescribed: &[(usize, usize)]) -> Option<Vec<usize>> {
    if prescribed.iter().any(|&(s, t)| !same_type(g, s, t)) {
        return None;
    }
    let mut gens: Vec<usize> = prescribed.iter().map(|p| p.0).collect();
    let mut images: Vec<usize> = prescribed.iter().map(|p| p.1).collect();
    let base = gens.len();
    let mut mask = g.subgroup_mask(&gens);
    while let Some(extra) = mask.iter().position(|&inside| !inside) {
        gens.push(extra);
        mask = g.subgroup_mask(&gens);
    }
    let candidates: Vec<Vec<usize>> = gens[base..]
        .iter()
        .map(|&s| (0..g.order()).filter(|&t| same_type(g, s, t)).collect())
        .collect();

    fn search(
        g: &Group,
        gens: &[usize],
        images: &mut Vec<usize>,
        base: usize,
        candidates: &[Vec<usize>],
    ) -> Option<Vec<u32>> {
        let map = extend(g, &gens[..images.len()], images)?;
        if images.len() == gens.len() {
            return Some(map);
        }
        let depth = images.len() - base;
        for &t in &candidates[depth] {
            // The image of a generator outside the previous subgroup must lie
            // outside the image of that subgroup.
            if map.iter().any(|&m| m as usize == t) {
                continue;
            }
            images.push(t);
            if let Some(found) = search(g, gens, images, base, candidates) {
                return Some(found);
            }
            images.pop();
        }
        None
    }

    let map = search(g, &gens, &mut images, base, &candidates)?;
    debug_assert!(map.iter().all(|&m| m != UNSET));
    Some(map.into_iter().map(|m| m as usize).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::{direct_product, dihedral, extraspecial_exponent_p, quaternion8, symmetric};
    use crate::group::Homomorphism;

    fn find(g: &Group, name: &str) -> usize {
        g.names().iter().position(|s| s == name).unwrap()
    }

    #[test]
    fn s4_inner_automorphism_found() {
        let g = symmetric(4).unwrap();
        let (a, b) = (find(&g, "(1,2)"), find(&g, "(1,2,3,4)"));
        let (c, d) = (find(&g, "(2,3)"), find(&g, "(1,3,2,4)"));
        let map = find_automorphism(&g, &[(a, c), (b, d)]);
        let map = map.expect("conjugate generating pairs");
        let phi = Homomorphism::new(&g, &g, map).unwrap();
        assert!(phi.is_injective());
        assert_eq!((phi.apply(a), phi.apply(b)), (c, d));
    }

    #[test]
    fn order_mismatch_is_impossible() {
        let g = symmetric(4).unwrap();
        assert!(find_automorphism(&g, &[(find(&g, "(1,2)"), find(&g, "(1,2,3)"))]).is_none());
        // A transposition cannot go to a double transposition in S4.
        assert!(find_automorphism(&g, &[(find(&g, "(1,2)"), find(&g, "(1,2)(3,4)"))]).is_none());
    }

    #[test]
    fn extension_beyond_prescribed_subgroup() {
        let g = direct_product(&symmetric(3).unwrap(), &dihedral(8).unwrap()).unwrap();
        let x = (0..g.order()).find(|&x| g.element_order(x) == 3).unwrap();
        let map = find_automorphism(&g, &[(x, g.inv(x))]).unwrap();
        let phi = Homomorphism::new(&g, &g, map).unwrap();
        assert!(phi.is_injective());
        assert_eq!(phi.apply(x), g.inv(x));
    }

    #[test]
    fn swapping_noncentral_generators() {
        let g = quaternion8();
        let (i, j) = (find(&g, "i"), find(&g, "j"));
        assert!(find_automorphism(&g, &[(i, j), (j, i)]).is_some());
        let u = extraspecial_exponent_p(3).unwrap();
        let (x, y) = (1, 9);
        assert!(!u.commutes(x, y));
        let map = find_automorphism(&u, &[(x, u.inv(y)), (y, u.inv(x))]).unwrap();
        Homomorphism::new(&u, &u, map).unwrap();
    }
}
