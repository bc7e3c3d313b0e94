//! Rooted forests viewed as posets: linearizations, Murua coefficients and
//! tree factorials.
//!
//! A [`ForestPoset`] stores one parent pointer per vertex. Roots are minimal
//! elements and a vertex is smaller than all of its descendants. Vertex ids
//! are topologically sorted: a parent always has a smaller id than its
//! children.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{sign, Q};

/// Largest poset for which the bitmask routines are available.
pub const MAX_POSET_SIZE: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForestPoset {
    parent: Vec<Option<usize>>,
}

impl ForestPoset {
    /// Builds a forest from parent pointers. Every parent id must be smaller
    /// than the id of its child.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                if *p >= v {
                    return Err(Error::Domain(format!(
                        "parent {p} of vertex {v} is not topologically earlier"
                    )));
                }
            }
        }
        Ok(ForestPoset { parent })
    }

    pub fn chain(len: usize) -> Self {
        ForestPoset {
            parent: (0..len).map(|v| v.checked_sub(1)).collect(),
        }
    }

    /// Antichain of `len` roots.
    pub fn antichain(len: usize) -> Self {
        ForestPoset {
            parent: vec![None; len],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&c| self.parent[c] == Some(v))
            .collect()
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.parent[v].is_none())
            .collect()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        !self.parent.contains(&Some(v))
    }

    /// `true` when `a` lies on the path from a root to `b` (inclusive).
    pub fn is_ancestor_or_equal(&self, a: usize, b: usize) -> bool {
        let mut cur = Some(b);
        while let Some(c) = cur {
            if c == a {
                return true;
            }
            cur = self.parent[c];
        }
        false
    }

    /// Number of edges on the longest root-to-leaf chain; 0 when empty.
    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.len()];
        for v in 0..self.len() {
            depth[v] = self.parent[v].map_or(0, |p| depth[p] + 1);
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// Size of the subtree rooted at each vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.len()];
        for v in (0..self.len()).rev() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }

    /// Forest factorial: product over vertices of the size of the subtree
    /// they root.
    pub fn factorial(&self) -> BigInt {
        self.subtree_sizes()
            .into_iter()
            .fold(BigInt::from(1), |acc, s| acc * BigInt::from(s))
    }

    fn check_size(&self) -> Result<()> {
        if self.len() > MAX_POSET_SIZE {
            return Err(Error::SizeLimit {
                what: "poset size",
                value: self.len(),
                cap: MAX_POSET_SIZE,
            });
        }
        Ok(())
    }

    fn available(&self, used: u32) -> u32 {
        let mut avail = 0u32;
        for v in 0..self.len() {
            if used & (1 << v) != 0 {
                continue;
            }
            if self.parent[v].is_none_or(|p| used & (1 << p) != 0) {
                avail |= 1 << v;
            }
        }
        avail
    }

    /// `counts[k]` is the number of surjective strictly order-preserving
    /// maps onto `[k]`, for `k = 0..=len`.
    ///
    /// Memoized over down-sets: each level is a non-empty set of vertices
    /// whose parents were all placed on earlier levels.
    pub fn linearization_counts(&self) -> Result<Vec<u128>> {
        self.check_size()?;
        let full: u32 = if self.is_empty() {
            0
        } else {
            (1u32 << self.len()) - 1
        };
        let mut memo: HashMap<u32, Vec<u128>> = HashMap::new();
        Ok(self.counts_from(0, full, &mut memo))
    }

    fn counts_from(&self, used: u32, full: u32, memo: &mut HashMap<u32, Vec<u128>>) -> Vec<u128> {
        let n = self.len();
        if used == full {
            let mut out = vec![0u128; n + 1];
            out[0] = 1;
            return out;
        }
        if let Some(hit) = memo.get(&used) {
            return hit.clone();
        }
        let avail = self.available(used);
        let mut out = vec![0u128; n + 1];
        let mut sub = avail;
        while sub != 0 {
            let rest = self.counts_from(used | sub, full, memo);
            for k in 0..n {
                out[k + 1] += rest[k];
            }
            sub = (sub - 1) & avail;
        }
        memo.insert(used, out.clone());
        out
    }

    /// Number of `k`-linearizations. Zero outside `1..=len` (and for `k = 0`
    /// unless the poset is empty).
    pub fn count_k_linearizations(&self, k: usize) -> Result<u128> {
        let counts = self.linearization_counts()?;
        Ok(counts.get(k).copied().unwrap_or(0))
    }

    /// All `k`-linearizations, in lexicographic order of their level vectors.
    pub fn k_linearizations(&self, k: usize) -> Result<Vec<Linearization>> {
        self.check_size()?;
        let mut out = Vec::new();
        let mut level = vec![0usize; self.len()];
        let full: u32 = if self.is_empty() {
            0
        } else {
            (1u32 << self.len()) - 1
        };
        self.place_levels(0, full, 1, k, &mut level, &mut out);
        out.sort();
        Ok(out)
    }

    fn place_levels(
        &self,
        used: u32,
        full: u32,
        next: usize,
        k: usize,
        level: &mut Vec<usize>,
        out: &mut Vec<Linearization>,
    ) {
        if used == full {
            if next == k + 1 {
                out.push(Linearization {
                    level: level.clone(),
                    k,
                });
            }
            return;
        }
        if next > k {
            return;
        }
        let remaining = (full & !used).count_ones() as usize;
        if remaining < k + 1 - next {
            return;
        }
        let avail = self.available(used);
        let mut sub = avail;
        while sub != 0 {
            for v in 0..self.len() {
                if sub & (1 << v) != 0 {
                    level[v] = next;
                }
            }
            self.place_levels(used | sub, full, next + 1, k, level, out);
            sub = (sub - 1) & avail;
        }
    }

    /// Murua coefficient `Σ_k (-1)^(k-1)/k · #k-linearizations`.
    pub fn murua_coefficient(&self) -> Result<Q> {
        let counts = self.linearization_counts()?;
        let mut acc = Q::zero();
        for (k, c) in counts.iter().enumerate().skip(1) {
            if *c == 0 {
                continue;
            }
            acc += sign(k - 1) * Q::new(BigInt::from(*c), BigInt::from(k));
        }
        Ok(acc)
    }
}

/// A surjective strictly order-preserving map from a forest poset onto
/// `[k]`, stored as one level per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Linearization {
    level: Vec<usize>,
    k: usize,
}

impl Linearization {
    pub fn new(poset: &ForestPoset, level: Vec<usize>) -> Result<Self> {
        if level.len() != poset.len() {
            return Err(Error::Domain("linearization length mismatch".into()));
        }
        let k = level.iter().copied().max().unwrap_or(0);
        let mut hit = vec![false; k + 1];
        for &l in &level {
            if l == 0 {
                return Err(Error::Domain("levels start at 1".into()));
            }
            hit[l] = true;
        }
        if hit.iter().skip(1).any(|h| !h) {
            return Err(Error::Domain("linearization is not surjective".into()));
        }
        for v in 0..poset.len() {
            if let Some(p) = poset.parent(v) {
                if level[p] >= level[v] {
                    return Err(Error::Domain(format!(
                        "vertex {v} is not strictly above its parent {p}"
                    )));
                }
            }
        }
        Ok(Linearization { level, k })
    }

    pub fn levels(&self) -> &[usize] {
        &self.level
    }

    pub fn level(&self, v: usize) -> usize {
        self.level[v]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Refines to a bijective linearization: vertices are ordered by level,
    /// and by vertex id (planar order for skeletons) within a level.
    pub fn refine(&self) -> Linearization {
        let mut order: Vec<usize> = (0..self.level.len()).collect();
        order.sort_by_key(|&v| (self.level[v], v));
        let mut level = vec![0; self.level.len()];
        for (rank, v) in order.into_iter().enumerate() {
            level[v] = rank + 1;
        }
        Linearization {
            k: level.len(),
            level,
        }
    }

    /// Vertices sorted by (level, id).
    pub fn vertex_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.level.len()).collect();
        order.sort_by_key(|&v| (self.level[v], v));
        order
    }
}

/// A non-planar rooted tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    pub children: Vec<RootedTree>,
}

impl RootedTree {
    pub fn vertex() -> Self {
        RootedTree { children: vec![] }
    }

    pub fn branch(children: Vec<RootedTree>) -> Self {
        RootedTree { children }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(RootedTree::size).sum::<usize>()
    }

    /// `t! = |t| · t₁! ⋯ t_k!`, and `1` for a single vertex.
    pub fn factorial(&self) -> BigInt {
        self.children
            .iter()
            .fold(BigInt::from(self.size()), |acc, c| acc * c.factorial())
    }

    /// Pre-order parent array.
    pub fn to_poset(&self) -> ForestPoset {
        let mut parent = Vec::new();
        fn walk(t: &RootedTree, up: Option<usize>, parent: &mut Vec<Option<usize>>) {
            let id = parent.len();
            parent.push(up);
            for c in &t.children {
                walk(c, Some(id), parent);
            }
        }
        walk(self, None, &mut parent);
        ForestPoset { parent }
    }
}

/// Number of `k`-linearizations of a tree given as a [`RootedTree`].
pub fn count_k_linearizations(tree: &RootedTree, k: usize) -> Result<u128> {
    tree.to_poset().count_k_linearizations(k)
}

pub fn murua_coefficient(tree: &RootedTree) -> Result<Q> {
    tree.to_poset().murua_coefficient()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    fn cherry() -> RootedTree {
        RootedTree::branch(vec![RootedTree::vertex(), RootedTree::vertex()])
    }

    /// Exhaustive oracle: every map into [k], kept when surjective and
    /// strictly increasing along parent edges.
    fn brute_force(p: &ForestPoset, k: usize) -> u128 {
        let n = p.len();
        if n == 0 {
            return u128::from(k == 0);
        }
        if k == 0 {
            return 0;
        }
        let mut count = 0;
        let mut f = vec![1usize; n];
        loop {
            let ok = (0..n).all(|v| p.parent(v).is_none_or(|q| f[q] < f[v]))
                && (1..=k).all(|l| f.contains(&l));
            if ok {
                count += 1;
            }
            let mut i = 0;
            while i < n && f[i] == k {
                f[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
            f[i] += 1;
        }
        count
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(RootedTree::vertex().factorial(), BigInt::from(1));
        let chain2 = RootedTree::branch(vec![RootedTree::vertex()]);
        assert_eq!(chain2.factorial(), BigInt::from(2));
        assert_eq!(cherry().factorial(), BigInt::from(3));
        assert_eq!(ForestPoset::chain(5).factorial(), BigInt::from(120));
        assert_eq!(cherry().to_poset().factorial(), BigInt::from(3));
    }

    #[test]
    fn linearization_examples() {
        let single = RootedTree::vertex();
        assert_eq!(count_k_linearizations(&single, 1).unwrap(), 1);
        let chain = ForestPoset::chain(2);
        assert_eq!(chain.count_k_linearizations(1).unwrap(), 0);
        assert_eq!(chain.count_k_linearizations(2).unwrap(), 1);
        assert_eq!(count_k_linearizations(&cherry(), 2).unwrap(), 1);
        assert_eq!(count_k_linearizations(&cherry(), 3).unwrap(), 2);
    }

    #[test]
    fn murua_examples() {
        assert_eq!(murua_coefficient(&RootedTree::vertex()).unwrap(), q(1));
        assert_eq!(
            ForestPoset::chain(2).murua_coefficient().unwrap(),
            q_frac(-1, 2)
        );
        assert_eq!(murua_coefficient(&cherry()).unwrap(), q_frac(1, 6));
    }

    #[test]
    fn down_set_counts_match_exhaustive_maps() {
        let shapes = vec![
            ForestPoset::chain(4),
            ForestPoset::antichain(4),
            ForestPoset::from_parents(vec![None, Some(0), Some(0), Some(1), Some(1), None])
                .unwrap(),
            ForestPoset::from_parents(vec![
                None,
                Some(0),
                Some(1),
                Some(0),
                Some(3),
                Some(3),
                Some(0),
            ])
            .unwrap(),
        ];
        for p in shapes {
            let counts = p.linearization_counts().unwrap();
            for k in 0..=p.len() + 1 {
                let expected = brute_force(&p, k);
                assert_eq!(counts.get(k).copied().unwrap_or(0), expected, "{p:?} k={k}");
                assert_eq!(p.k_linearizations(k).unwrap().len() as u128, expected);
            }
            for k in 1..=p.height() {
                assert_eq!(p.count_k_linearizations(k).unwrap(), 0);
            }
            assert!(p.is_empty() || p.count_k_linearizations(p.height() + 1).unwrap() > 0);
        }
    }

    #[test]
    fn rejects_bad_linearizations() {
        let chain = ForestPoset::chain(2);
        assert!(Linearization::new(&chain, vec![1, 1]).is_err());
        assert!(Linearization::new(&chain, vec![1, 3]).is_err());
        assert!(Linearization::new(&chain, vec![1, 2]).is_ok());
        assert!(ForestPoset::from_parents(vec![Some(1), None]).is_err());
    }
}
