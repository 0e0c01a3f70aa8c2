/// Disjoint sets over `0..len` in which every root is the smallest member of
/// its set, so parents never point upwards.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        assert!(len <= u32::MAX as usize, "union-find over {len} items");
        UnionFind {
            parent: (0..len as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    #[inline]
    pub fn find(&mut self, mut i: u32) -> u32 {
        let p = &mut self.parent;
        while p[i as usize] != i {
            let grand = p[p[i as usize] as usize];
            p[i as usize] = grand;
            i = grand;
        }
        i
    }

    /// Returns true if the sets were distinct.
    #[inline]
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if ra < rb {
            self.parent[rb as usize] = ra;
        } else {
            self.parent[ra as usize] = rb;
        }
        true
    }

    /// Points every item directly at its root and returns the parent array.
    /// A single ascending pass suffices because parents are always smaller.
    pub fn into_roots(mut self) -> Vec<u32> {
        for i in 0..self.parent.len() {
            let p = self.parent[i] as usize;
            self.parent[i] = self.parent[p];
        }
        self.parent
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_are_minimal() {
        let mut uf = UnionFind::new(10);
        assert!(uf.union(7, 3));
        assert!(uf.union(9, 7));
        assert!(uf.union(5, 8));
        assert!(!uf.union(3, 9));
        assert!(uf.union(8, 2));
        let roots = uf.into_roots();
        assert_eq!(roots, vec![0, 1, 2, 3, 4, 2, 6, 3, 2, 3]);
    }

    #[test]
    fn chain_flattens() {
        let n = 1000;
        let mut uf = UnionFind::new(n);
        for i in (1..n as u32).rev() {
            uf.union(i, i - 1);
        }
        assert!(uf.into_roots().iter().all(|&r| r == 0));
    }
}
