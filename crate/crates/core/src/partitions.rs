//! Non-crossing, interval and monotone partitions of `[n]`, their Möbius
//! functions, nesting forests, and the map sending a Schröder tree to its
//! non-crossing partition.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poset::ForestPoset;
use crate::trees::{enum_schroder, SchroederTree};

/// Largest `n` accepted by the partition enumerators.
pub const PARTITION_CAP: usize = 12;

/// A partition of `[n]` with no crossing blocks. Blocks are sorted
/// ascending and ordered by their minima.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl NcPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Domain("empty block".into()));
            }
            for &x in b {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::Domain(format!(
                        "element {x} is out of range or repeated"
                    )));
                }
                seen[x] = true;
            }
        }
        if seen.iter().skip(1).any(|s| !s) {
            return Err(Error::Domain("blocks do not cover [n]".into()));
        }
        let p = NcPartition { n, blocks };
        if p.has_crossing() {
            return Err(Error::Domain(format!("{p} is crossing")));
        }
        Ok(p)
    }

    fn has_crossing(&self) -> bool {
        let owner = self.owner();
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                for c in b + 1..=self.n {
                    if owner[a] != owner[c] || owner[a] == owner[b] {
                        continue;
                    }
                    for d in c + 1..=self.n {
                        if owner[b] == owner[d] {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// `owner[x]` is the index of the block containing `x` (index 0 unused).
    fn owner(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.n + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                owner[x] = i;
            }
        }
        owner
    }

    /// Finest partition `0_n`.
    pub fn zero(n: usize) -> Self {
        NcPartition {
            n,
            blocks: (1..=n).map(|x| vec![x]).collect(),
        }
    }

    /// Coarsest partition `1_n`.
    pub fn one(n: usize) -> Self {
        NcPartition {
            n,
            blocks: if n == 0 {
                vec![]
            } else {
                vec![(1..=n).collect()]
            },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_interval(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.windows(2).all(|w| w[1] == w[0] + 1))
    }

    /// Reverse refinement: every block of `self` lies inside a block of
    /// `other`.
    pub fn refines(&self, other: &NcPartition) -> bool {
        if self.n != other.n {
            return false;
        }
        let owner = other.owner();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| owner[x] == owner[b[0]]))
    }

    /// Adds a new minimum `1` as a singleton block and shifts everything
    /// else up by one.
    pub fn hat_extension(&self) -> NcPartition {
        let mut blocks = vec![vec![1]];
        blocks.extend(
            self.blocks
                .iter()
                .map(|b| b.iter().map(|x| x + 1).collect::<Vec<_>>()),
        );
        NcPartition {
            n: self.n + 1,
            blocks,
        }
    }

    /// `inner` is nested in `outer` when it lies between the extremes of
    /// `outer`.
    fn nested_in(inner: &[usize], outer: &[usize]) -> bool {
        let (lo, hi) = (outer[0], *outer.last().unwrap());
        inner.iter().all(|&x| lo <= x && x <= hi)
    }

    /// Parent of each block in the nesting hierarchy: the smallest block
    /// (by span) that it is nested in.
    fn nesting_parents(&self) -> Vec<Option<usize>> {
        let span = |b: &Vec<usize>| b.last().unwrap() - b[0];
        (0..self.blocks.len())
            .map(|i| {
                (0..self.blocks.len())
                    .filter(|&j| j != i && Self::nested_in(&self.blocks[i], &self.blocks[j]))
                    .min_by_key(|&j| span(&self.blocks[j]))
            })
            .collect()
    }

    pub fn nesting_forest(&self) -> NestingForest {
        let parents = self.nesting_parents();
        fn build(i: usize, blocks: &[Vec<usize>], parents: &[Option<usize>]) -> NestingTree {
            NestingTree {
                block: blocks[i].clone(),
                children: (0..blocks.len())
                    .filter(|&j| parents[j] == Some(i))
                    .map(|j| build(j, blocks, parents))
                    .collect(),
            }
        }
        NestingForest {
            roots: (0..self.blocks.len())
                .filter(|&i| parents[i].is_none())
                .map(|i| build(i, &self.blocks, &parents))
                .collect(),
        }
    }

    /// Irreducible components: each outer block together with the blocks
    /// nested in it, relabelled to start at 1.
    pub fn irreducible_components(&self) -> Vec<Component> {
        let parents = self.nesting_parents();
        let mut out = Vec::new();
        for (i, outer) in self.blocks.iter().enumerate() {
            if parents[i].is_some() {
                continue;
            }
            let (lo, hi) = (outer[0], *outer.last().unwrap());
            let blocks = self
                .blocks
                .iter()
                .filter(|b| Self::nested_in(b, outer))
                .map(|b| b.iter().map(|x| x - lo + 1).collect())
                .collect();
            out.push(Component {
                offset: lo - 1,
                partition: NcPartition {
                    n: hi - lo + 1,
                    blocks,
                },
            });
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.n == 0 || self.blocks[0].last() == Some(&self.n)
    }
}

/// One irreducible component; element `x` of `partition` is `x + offset`
/// in the original partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub offset: usize,
    pub partition: NcPartition,
}

impl fmt::Display for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            let items: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            f.write_str(&items.join(","))?;
        }
        f.write_str("}")
    }
}

fn parse_block(s: &str, offset: usize) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim().parse::<usize>().map_err(|_| Error::Parse {
                position: offset,
                message: format!("invalid element \"{}\"", x.trim()),
            })
        })
        .collect()
}

impl FromStr for NcPartition {
    type Err = Error;

    /// Parses `{1,5,6|2,3|4}`; `n` is the largest element.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: "partition must be enclosed in braces".into(),
            })?;
        if inner.trim().is_empty() {
            return Ok(NcPartition::zero(0));
        }
        let blocks = inner
            .split('|')
            .map(|b| parse_block(b, 0))
            .collect::<Result<Vec<_>>>()?;
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        NcPartition::new(n, blocks)
    }
}

/// Non-planar rooted tree of blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingTree {
    pub block: Vec<usize>,
    pub children: Vec<NestingTree>,
}

/// The forest of nestings of a non-crossing partition. Children are kept
/// ordered by block minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingForest {
    pub roots: Vec<NestingTree>,
}

impl NestingForest {
    pub fn size(&self) -> usize {
        fn count(t: &NestingTree) -> usize {
            1 + t.children.iter().map(count).sum::<usize>()
        }
        self.roots.iter().map(count).sum()
    }

    /// Pre-order parent array.
    pub fn to_poset(&self) -> ForestPoset {
        let mut parent = Vec::new();
        fn walk(t: &NestingTree, up: Option<usize>, parent: &mut Vec<Option<usize>>) {
            let id = parent.len();
            parent.push(up);
            for c in &t.children {
                walk(c, Some(id), parent);
            }
        }
        for r in &self.roots {
            walk(r, None, &mut parent);
        }
        ForestPoset::from_parents(parent).expect("pre-order is topological")
    }

    /// Product of the tree factorials of the components.
    pub fn factorial(&self) -> BigInt {
        fn fact(t: &NestingTree) -> (usize, BigInt) {
            let mut size = 1;
            let mut prod = BigInt::from(1);
            for c in &t.children {
                let (s, f) = fact(c);
                size += s;
                prod *= f;
            }
            (size, prod * BigInt::from(size))
        }
        self.roots
            .iter()
            .fold(BigInt::from(1), |acc, r| acc * fact(r).1)
    }
}

impl fmt::Display for NestingForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write(t: &NestingTree, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}", t.block[0])?;
            if !t.children.is_empty() {
                f.write_str("[")?;
                for (i, c) in t.children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write(c, f)?;
                }
                f.write_str("]")?;
            }
            Ok(())
        }
        for (i, r) in self.roots.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write(r, f)?;
        }
        Ok(())
    }
}

pub fn forest_factorial(f: &NestingForest) -> BigInt {
    f.factorial()
}

/// A non-crossing partition with a total order on its blocks in which every
/// block precedes the blocks nested in it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotonePartition {
    n: usize,
    ordered_blocks: Vec<Vec<usize>>,
}

impl MonotonePartition {
    pub fn new(n: usize, ordered_blocks: Vec<Vec<usize>>) -> Result<Self> {
        let ordered_blocks: Vec<Vec<usize>> = ordered_blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        NcPartition::new(n, ordered_blocks.clone())?;
        for (i, b) in ordered_blocks.iter().enumerate() {
            for later in &ordered_blocks[i + 1..] {
                if NcPartition::nested_in(b, later) {
                    return Err(Error::Order(
                        "a nested block precedes the block it is nested in".into(),
                    ));
                }
            }
        }
        Ok(MonotonePartition { n, ordered_blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ordered_blocks(&self) -> &[Vec<usize>] {
        &self.ordered_blocks
    }

    pub fn underlying(&self) -> NcPartition {
        NcPartition::new(self.n, self.ordered_blocks.clone()).expect("validated on construction")
    }
}

impl fmt::Display for MonotonePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ordered_blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "[{}]", parts.join(" ; "))
    }
}

impl FromStr for MonotonePartition {
    type Err = Error;

    /// Parses `[2,3 ; 1,5,6 ; 4]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: "monotone partition must be enclosed in brackets".into(),
            })?;
        if inner.trim().is_empty() {
            return MonotonePartition::new(0, vec![]);
        }
        let blocks = inner
            .split(';')
            .map(|b| parse_block(b, 0))
            .collect::<Result<Vec<_>>>()?;
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        MonotonePartition::new(n, blocks)
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n > PARTITION_CAP {
        return Err(Error::SizeLimit {
            what: "partition size",
            value: n,
            cap: PARTITION_CAP,
        });
    }
    Ok(())
}

/// Non-crossing partitions of `[n]`, sorted.
///
/// The block of the smallest remaining element is chosen first; the gaps
/// between its consecutive elements are partitioned independently.
pub fn enum_nc(n: usize) -> Result<Vec<NcPartition>> {
    check_cap(n)?;
    let mut out: Vec<NcPartition> = nc_blocks(1, n)
        .into_iter()
        .map(|blocks| NcPartition::new(n, blocks).expect("generated partitions are valid"))
        .collect();
    out.sort();
    Ok(out)
}

/// Block lists of all non-crossing partitions of the interval `[lo, hi]`.
fn nc_blocks(lo: usize, hi: usize) -> Vec<Vec<Vec<usize>>> {
    if lo > hi {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    // `block` grows from `lo`; every skipped gap gets its own sub-partition.
    fn extend(
        block: &mut Vec<usize>,
        last: usize,
        hi: usize,
        acc: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        // close the block: everything after `last` is partitioned freely
        for tail in nc_blocks(last + 1, hi) {
            let mut blocks = acc.clone();
            blocks.push(block.clone());
            blocks.extend(tail);
            out.push(blocks);
        }
        for next in last + 1..=hi {
            for gap in nc_blocks(last + 1, next - 1) {
                let mark = acc.len();
                acc.extend(gap);
                block.push(next);
                extend(block, next, hi, acc, out);
                block.pop();
                acc.truncate(mark);
            }
        }
    }
    let mut block = vec![lo];
    let mut acc = Vec::new();
    extend(&mut block, lo, hi, &mut acc, &mut out);
    out
}

/// Interval partitions of `[n]`, one per composition of `n`.
pub fn enum_interval(n: usize) -> Result<Vec<NcPartition>> {
    check_cap(n)?;
    if n == 0 {
        return Ok(vec![NcPartition::zero(0)]);
    }
    let mut out = Vec::new();
    for cuts in 0u32..(1 << (n - 1)) {
        let mut blocks = vec![vec![1]];
        for x in 2..=n {
            if cuts & (1 << (x - 2)) != 0 {
                blocks.push(vec![x]);
            } else {
                blocks.last_mut().unwrap().push(x);
            }
        }
        out.push(NcPartition { n, blocks });
    }
    out.sort();
    Ok(out)
}

/// Monotone partitions of `[n]`: each non-crossing partition with every
/// linear extension of its nesting order.
pub fn enum_monotone(n: usize) -> Result<Vec<MonotonePartition>> {
    let mut out = Vec::new();
    for p in enum_nc(n)? {
        let poset = p.nesting_forest().to_poset();
        let pre_order_blocks = pre_order_blocks(&p.nesting_forest());
        for lin in poset.k_linearizations(poset.len())? {
            let mut ordered = vec![Vec::new(); poset.len()];
            for (v, block) in pre_order_blocks.iter().enumerate() {
                ordered[lin.level(v) - 1] = block.clone();
            }
            out.push(MonotonePartition {
                n,
                ordered_blocks: ordered,
            });
        }
    }
    out.sort();
    Ok(out)
}

fn pre_order_blocks(f: &NestingForest) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn walk(t: &NestingTree, out: &mut Vec<Vec<usize>>) {
        out.push(t.block.clone());
        for c in &t.children {
            walk(c, out);
        }
    }
    for r in &f.roots {
        walk(r, &mut out);
    }
    out
}

/// The non-crossing partition whose blocks are the sector labels around
/// each internal vertex.
pub fn tree_to_ncp(t: &SchroederTree) -> Result<NcPartition> {
    if t.is_leaf() {
        return Err(Error::Domain(
            "the single-vertex tree has no sectors".into(),
        ));
    }
    let s = t.structure();
    Ok(NcPartition::new(t.degree(), s.blocks).expect("sector blocks are non-crossing"))
}

pub fn block_of_root(t: &SchroederTree) -> Result<Vec<usize>> {
    if t.is_leaf() {
        return Err(Error::Domain(
            "the single-vertex tree has no root block".into(),
        ));
    }
    Ok(t.structure().blocks[0].clone())
}

/// Blocks of internal vertex `v` (planar rank) and all of its descendants.
pub fn subtree_blocks(t: &SchroederTree, v: usize) -> Result<Vec<Vec<usize>>> {
    let s = t.structure();
    if v >= s.internal_count() {
        return Err(Error::Domain(format!("{v} is not an internal vertex")));
    }
    let mut out: Vec<Vec<usize>> = (0..s.internal_count())
        .filter(|&u| s.skeleton.is_ancestor_or_equal(v, u))
        .map(|u| s.blocks[u].clone())
        .collect();
    out.sort();
    Ok(out)
}

/// Möbius function of the full partition lattice, `(-1)^(|p|-|s|) ∏ (n_B - 1)!`.
pub fn moebius_partition_lattice(p: &NcPartition, s: &NcPartition) -> Result<BigInt> {
    if !p.refines(s) {
        return Err(Error::Order(format!("{p} is not below {s}")));
    }
    let owner = s.owner();
    let mut refining = vec![0usize; s.block_count()];
    for b in p.blocks() {
        refining[owner[b[0]]] += 1;
    }
    let mut value = BigInt::from(1);
    for nb in refining {
        for f in 2..nb {
            value *= BigInt::from(f);
        }
    }
    if (p.block_count() - s.block_count()) % 2 == 1 {
        value = -value;
    }
    Ok(value)
}

type MoebiusRow = BTreeMap<NcPartition, BigInt>;

fn moebius_cache() -> &'static Mutex<HashMap<NcPartition, MoebiusRow>> {
    static CACHE: std::sync::OnceLock<Mutex<HashMap<NcPartition, MoebiusRow>>> =
        std::sync::OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Möbius function of `NC(n)`, from the defining recursion over the
/// interval `[p, s]`. Rows `μ(p, ·)` are memoized per lower element.
pub fn moebius_nc(p: &NcPartition, s: &NcPartition) -> Result<BigInt> {
    if !p.refines(s) {
        return Err(Error::Order(format!("{p} is not below {s}")));
    }
    if let Some(row) = moebius_cache().lock().unwrap().get(p) {
        return Ok(row[s].clone());
    }
    let row = moebius_row(p)?;
    let value = row[s].clone();
    moebius_cache().lock().unwrap().insert(p.clone(), row);
    Ok(value)
}

fn moebius_row(p: &NcPartition) -> Result<MoebiusRow> {
    let mut above: Vec<NcPartition> = enum_nc(p.n())?
        .into_iter()
        .filter(|q| p.refines(q))
        .collect();
    // finer partitions first
    above.sort_by(|a, b| b.block_count().cmp(&a.block_count()).then(a.cmp(b)));
    let mut row: MoebiusRow = BTreeMap::new();
    for q in &above {
        let value = if q == p {
            BigInt::from(1)
        } else {
            let mut acc = BigInt::from(0);
            for (r, m) in &row {
                if r != q && r.refines(q) {
                    acc -= m;
                }
            }
            acc
        };
        row.insert(q.clone(), value);
    }
    Ok(row)
}

/// Number of Schröder trees of degree `n` mapping to `p`.
pub fn count_trees_for_ncp(p: &NcPartition) -> Result<usize> {
    let mut count = 0;
    for t in enum_schroder(p.n())? {
        if tree_to_ncp(&t)? == *p {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of prime Schröder trees of degree `n` mapping to `p`.
pub fn count_prime_trees_for_ncp(p: &NcPartition) -> Result<usize> {
    let mut count = 0;
    for t in enum_schroder(p.n())? {
        if t.is_prime() && tree_to_ncp(&t)? == *p {
            count += 1;
        }
    }
    Ok(count)
}
