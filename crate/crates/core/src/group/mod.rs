//! Finite groups as dense multiplication tables.
//!
//! Elements are indices `0..N` with the identity at `0`. Everything
//! downstream (orbits, faces, sheets) keys flat arrays by these indices.

pub mod builtin;
pub mod hom;
pub mod io;
pub mod perm;

use std::collections::{HashMap, VecDeque};

use num_rational::Ratio;

use crate::error::{Error, Result};
pub use hom::Homomorphism;
pub use perm::Perm;

/// User tables up to this order get a full O(N^3) associativity check.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 256;

/// Largest order whose face slots (N^2) fit in 32-bit indices.
pub const MAX_ORDER: usize = 65_535;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupWarning {
    /// The table was too large for the cubic associativity check; only the
    /// Latin-square, identity and inverse axioms were verified.
    AssociativityUnverified { order: usize },
}

#[derive(Clone, Debug)]
pub struct Group {
    label: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    names: Vec<String>,
    elem_order: Vec<u32>,
    center: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<u32>,
    words: usize,
    commute: Vec<u64>,
    perms: Option<Vec<Perm>>,
    warnings: Vec<GroupWarning>,
}

/// The commuting probability computed two ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommutingProbability {
    /// `c / |G|`.
    pub by_classes: Ratio<u64>,
    /// `sum_x |C(x)| / |G|^2`, i.e. the literal count of commuting pairs.
    pub by_pairs: Ratio<u64>,
}

impl Group {
    /// Validates and normalizes a Cayley table. `table[a][b]` is the index
    /// of the product `a*b`. Abelian tables are rejected.
    pub fn from_cayley_table(table: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Self> {
        let g = Self::from_cayley_table_any(table, names)?;
        g.ensure_nonabelian()?;
        Ok(g)
    }

    /// Like [`Group::from_cayley_table`] but accepts abelian tables. Used
    /// for direct-product factors and the commuting-probability check.
    pub fn from_cayley_table_any(table: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::InvalidParameter(format!(
                "order {n} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::NotAGroup(format!(
                    "{} names given for {n} elements",
                    names.len()
                )));
            }
        }
        let mut mul = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::NotAGroup(format!("entry {v} in row {a} is out of range")));
                }
                mul.push(v as u32);
            }
        }
        check_latin(&mul, n)?;
        let e = (0..n)
            .find(|&e| (0..n).all(|b| mul[e * n + b] as usize == b && mul[b * n + e] as usize == b))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;

        let mut names = names.unwrap_or_else(|| (0..n).map(|k| format!("g{k}")).collect());
        if e != 0 {
            // Relabel by the transposition (0 e).
            let swap = |v: usize| if v == 0 { e } else if v == e { 0 } else { v };
            let mut relabeled = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    relabeled[swap(a) * n + swap(b)] = swap(mul[a * n + b] as usize) as u32;
                }
            }
            mul = relabeled;
            names.swap(0, e);
        }

        let mut warnings = Vec::new();
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul[a * n + b] as usize;
                    for c in 0..n {
                        let bc = mul[b * n + c] as usize;
                        if mul[ab * n + c] != mul[a * n + bc] {
                            return Err(Error::NotAGroup(format!(
                                "({a}*{b})*{c} != {a}*({b}*{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            warnings.push(GroupWarning::AssociativityUnverified { order: n });
        }
        let mut g = Self::from_raw(format!("table{n}"), n, mul, names, None);
        g.warnings = warnings;
        Ok(g)
    }

    /// Closes a set of permutations under multiplication. Rejects abelian results.
    pub fn from_permutations(gens: &[Perm], cap: usize) -> Result<Self> {
        let g = Self::from_permutations_any(gens, cap)?;
        g.ensure_nonabelian()?;
        Ok(g)
    }

    /// Breadth-first closure of `gens`. Element 0 is the identity and the
    /// remaining elements appear in breadth-first order of right
    /// multiplication by the generators.
    pub fn from_permutations_any(gens: &[Perm], cap: usize) -> Result<Self> {
        let cap = cap.min(MAX_ORDER);
        let gens: Vec<Perm> = gens.iter().filter(|p| !p.is_identity()).cloned().collect();
        let k = gens.len();
        let mut elements = vec![Perm::identity()];
        let mut index: HashMap<Perm, u32> = HashMap::from([(Perm::identity(), 0)]);
        // right[e * k + s] = index of elements[e] * gens[s]
        let mut right: Vec<u32> = Vec::new();
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut head = 0;
        while head < elements.len() {
            for (s, gen) in gens.iter().enumerate() {
                let product = elements[head].then(gen);
                let idx = match index.get(&product) {
                    Some(&i) => i,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        let i = elements.len() as u32;
                        index.insert(product.clone(), i);
                        elements.push(product);
                        parent.push((head as u32, s as u32));
                        i
                    }
                };
                right.push(idx);
            }
            head += 1;
        }

        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            mul[x * n] = x as u32;
        }
        // Every y > 0 is parent(y) * gen, so x*y = (x*parent(y)) * gen.
        for y in 1..n {
            let (py, s) = parent[y];
            for x in 0..n {
                let xp = mul[x * n + py as usize] as usize;
                mul[x * n + y] = right[xp * k + s as usize];
            }
        }
        let names = elements.iter().map(|p| p.to_string()).collect();
        Ok(Self::from_raw(format!("perm{n}"), n, mul, names, Some(elements)))
    }

    fn from_raw(label: String, n: usize, mul: Vec<u32>, names: Vec<String>, perms: Option<Vec<Perm>>) -> Self {
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let row = &mul[x * n..(x + 1) * n];
            inv[x] = row.iter().position(|&v| v == 0).expect("latin row contains identity") as u32;
        }

        let words = n.div_ceil(64);
        let mut commute = vec![0u64; n * words];
        for x in 0..n {
            for y in 0..n {
                if mul[x * n + y] == mul[y * n + x] {
                    commute[x * words + y / 64] |= 1 << (y % 64);
                }
            }
        }

        let mut elem_order = vec![0u32; n];
        for x in 0..n {
            let mut p = x;
            let mut k = 1;
            while p != 0 {
                p = mul[p * n + x] as usize;
                k += 1;
            }
            elem_order[x] = k;
        }

        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut class = Vec::new();
            for g in 0..n {
                let c = mul[mul[inv[g] as usize * n + x] as usize * n + g] as usize;
                if class_of[c] == u32::MAX {
                    class_of[c] = id;
                    class.push(c);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }

        let mut g = Group {
            label,
            order: n,
            mul,
            inv,
            names,
            elem_order,
            center: Vec::new(),
            classes,
            class_of,
            words,
            commute,
            perms,
            warnings: Vec::new(),
        };
        g.center = (0..n).filter(|&z| g.centralizer_size(z) == n).collect();
        g
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Short identifier such as `symmetric:5`.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.elem_order[x] as usize
    }

    pub fn center(&self) -> &[usize] {
        &self.center
    }

    pub fn is_central(&self, x: usize) -> bool {
        self.centralizer_size(x) == self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.center.len() == self.order
    }

    pub fn ensure_nonabelian(&self) -> Result<()> {
        if self.is_abelian() {
            Err(Error::Abelian)
        } else {
            Ok(())
        }
    }

    pub fn conj_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn conjugacy_class(&self, x: usize) -> &[usize] {
        &self.classes[self.class_of(x)]
    }

    #[inline]
    pub fn commutes(&self, x: usize, y: usize) -> bool {
        self.commute[x * self.words + y / 64] >> (y % 64) & 1 == 1
    }

    /// Row `x` of the commutation bitmap (bit `y` set iff `xy = yx`).
    pub fn commute_row(&self, x: usize) -> &[u64] {
        &self.commute[x * self.words..(x + 1) * self.words]
    }

    /// Elements not commuting with `x`, in increasing order.
    pub fn noncommuting(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.order;
        self.commute_row(x).iter().enumerate().flat_map(move |(w, &bits)| {
            let mut rest = !bits;
            if (w + 1) * 64 > n {
                rest &= (1u64 << (n - w * 64)) - 1;
            }
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.order).filter(|&y| self.commutes(x, y)).collect()
    }

    pub fn centralizer_size(&self, x: usize) -> usize {
        self.commute_row(x).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn commuting_probability(&self) -> CommutingProbability {
        let n = self.order as u64;
        let pairs: u64 = (0..self.order).map(|x| self.centralizer_size(x) as u64).sum();
        CommutingProbability {
            by_classes: Ratio::new(self.class_count() as u64, n),
            by_pairs: Ratio::new(pairs, n * n),
        }
    }

    /// The Cayley table as nested vectors.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| (0..self.order).map(|y| self.mul(x, y)).collect())
            .collect()
    }

    /// The permutation realizing each element, for groups built from generators.
    pub fn permutations(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    pub fn warnings(&self) -> &[GroupWarning] {
        &self.warnings
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn subgroup_mask(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            for &s in gens {
                let hs = self.mul(h, s);
                if !mask[hs] {
                    mask[hs] = true;
                    queue.push_back(hs);
                }
            }
        }
        mask
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mask = self.subgroup_mask(gens);
        (0..self.order).filter(|&x| mask[x]).collect()
    }

    /// The commutator subgroup `[G, G]`.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut commutators: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.order];
        for x in 0..self.order {
            for y in self.noncommuting(x) {
                // x^-1 y^-1 x y
                let c = self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y));
                if !seen[c] {
                    seen[c] = true;
                    commutators.push(c);
                }
            }
        }
        self.generated_subgroup(&commutators)
    }
}

fn check_latin(mul: &[u32], n: usize) -> Result<()> {
    let mut seen = vec![u32::MAX; n];
    for a in 0..n {
        for b in 0..n {
            let v = mul[a * n + b] as usize;
            if seen[v] == a as u32 {
                return Err(Error::NotAGroup(format!("row {a} is not a permutation")));
            }
            seen[v] = a as u32;
        }
    }
    seen.fill(u32::MAX);
    for b in 0..n {
        for a in 0..n {
            let v = mul[a * n + b] as usize;
            if seen[v] == b as u32 {
                return Err(Error::NotAGroup(format!("column {b} is not a permutation")));
            }
            seen[v] = b as u32;
        }
    }
    Ok(())
}
