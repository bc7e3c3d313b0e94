//! Planar Schröder trees: every internal vertex has at least two children.
//!
//! A tree of degree `n` has `n + 1` leaves and `n` sectors. Internal vertices
//! are identified by their rank in the planar order (pre-order, left to
//! right), starting at 0 for the root. Sectors carry their natural labels
//! `1..=n`, read left to right and bottom to top.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset::{ForestPoset, Linearization};
use crate::rational::Q;

/// Default upper bound on the degree accepted by the enumerators.
pub const DEFAULT_DEGREE_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchroederTree {
    children: Vec<SchroederTree>,
}

/// Skeleton of a Schröder tree: the forest poset on internal vertices,
/// indexed by planar rank.
pub type SkeletonPoset = ForestPoset;

impl SchroederTree {
    /// The single-vertex tree, the unique tree of degree 0.
    pub fn leaf() -> Self {
        SchroederTree { children: vec![] }
    }

    pub fn node(children: Vec<SchroederTree>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::Domain(
                "an internal vertex needs at least two children".into(),
            ));
        }
        Ok(SchroederTree { children })
    }

    /// Corolla of the given degree (`degree + 1` leaves under one root).
    pub fn corolla(degree: usize) -> Self {
        if degree == 0 {
            return Self::leaf();
        }
        SchroederTree {
            children: vec![Self::leaf(); degree + 1],
        }
    }

    pub fn children(&self) -> &[SchroederTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(Self::leaf_count).sum()
        }
    }

    pub fn degree(&self) -> usize {
        self.leaf_count() - 1
    }

    /// Number of internal vertices, `i(t)`.
    pub fn internal_count(&self) -> usize {
        if self.is_leaf() {
            0
        } else {
            1 + self
                .children
                .iter()
                .map(Self::internal_count)
                .sum::<usize>()
        }
    }

    /// Leftmost subtree is a leaf.
    pub fn is_prime(&self) -> bool {
        self.children.first().is_some_and(Self::is_leaf)
    }

    /// Every internal vertex has only leaves as children, except possibly
    /// its leftmost child.
    pub fn is_boolean(&self) -> bool {
        if self.is_leaf() {
            return false;
        }
        let mut cur = self;
        loop {
            if cur.children[1..].iter().any(|c| !c.is_leaf()) {
                return false;
            }
            match cur.children.first() {
                Some(first) if !first.is_leaf() => cur = first,
                _ => return true,
            }
        }
    }

    /// Parent pointers and sector blocks of the internal vertices.
    pub fn structure(&self) -> TreeStructure {
        let mut parent = Vec::new();
        let mut blocks = Vec::new();
        let mut counter = 0;
        fn walk(
            t: &SchroederTree,
            up: Option<usize>,
            parent: &mut Vec<Option<usize>>,
            blocks: &mut Vec<Vec<usize>>,
            counter: &mut usize,
        ) {
            if t.is_leaf() {
                return;
            }
            let id = parent.len();
            parent.push(up);
            blocks.push(Vec::new());
            for (i, c) in t.children.iter().enumerate() {
                if i > 0 {
                    *counter += 1;
                    blocks[id].push(*counter);
                }
                walk(c, Some(id), parent, blocks, counter);
            }
        }
        walk(self, None, &mut parent, &mut blocks, &mut counter);
        TreeStructure {
            skeleton: ForestPoset::from_parents(parent).expect("pre-order is topological"),
            blocks,
        }
    }

    pub fn skeleton(&self) -> SkeletonPoset {
        self.structure().skeleton
    }

    /// The unique bijective linearization of the skeleton without ascents:
    /// root first, then the subtrees from right to left.
    pub fn ascent_free_linearization(&self) -> Linearization {
        let sk = self.skeleton();
        let mut level = vec![0; sk.len()];
        let mut next = 1;
        fn visit(sk: &ForestPoset, v: usize, next: &mut usize, level: &mut [usize]) {
            level[v] = *next;
            *next += 1;
            for c in sk.children(v).into_iter().rev() {
                visit(sk, c, next, level);
            }
        }
        for r in sk.roots().into_iter().rev() {
            visit(&sk, r, &mut next, &mut level);
        }
        Linearization::new(&sk, level).expect("pre-order levels are a linearization")
    }

    /// Ascents of a linearization of the skeleton, read along its
    /// refinement `g`: consecutive vertices `u = g^-1(j)`, `u' = g^-1(j+1)`
    /// with `u` not the parent of `u'` and `u` before `u'` in planar order.
    pub fn ascent_count(&self, f: &Linearization) -> usize {
        let sk = self.skeleton();
        let order = f.refine().vertex_order();
        order
            .windows(2)
            .filter(|w| sk.parent(w[1]) != Some(w[0]) && w[0] < w[1])
            .count()
    }

    pub fn murua_coefficient(&self) -> Result<Q> {
        self.skeleton().murua_coefficient()
    }
}

/// Internal-vertex data of a Schröder tree, in planar order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeStructure {
    pub skeleton: SkeletonPoset,
    /// Natural labels of the sectors adjacent to each internal vertex,
    /// sorted ascending.
    pub blocks: Vec<Vec<usize>>,
}

impl TreeStructure {
    pub fn internal_count(&self) -> usize {
        self.blocks.len()
    }
}

impl fmt::Display for SchroederTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_leaf() {
            return f.write_str("o");
        }
        f.write_str("(")?;
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

pub fn serialize_tree(t: &SchroederTree) -> String {
    t.to_string()
}

pub fn parse_tree(s: &str) -> Result<SchroederTree> {
    let chars: Vec<(usize, char)> = s
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut pos = 0;
    let tree = parse_node(&chars, &mut pos, s.len())?;
    if pos != chars.len() {
        return Err(Error::Parse {
            position: chars[pos].0,
            message: "trailing input".into(),
        });
    }
    Ok(tree)
}

fn parse_node(chars: &[(usize, char)], pos: &mut usize, end: usize) -> Result<SchroederTree> {
    let here = |pos: usize| chars.get(pos).map_or(end, |c| c.0);
    match chars.get(*pos) {
        Some((_, 'o')) => {
            *pos += 1;
            Ok(SchroederTree::leaf())
        }
        Some((start, '(')) => {
            let start = *start;
            *pos += 1;
            let mut children = vec![parse_node(chars, pos, end)?];
            loop {
                match chars.get(*pos) {
                    Some((_, ',')) => {
                        *pos += 1;
                        children.push(parse_node(chars, pos, end)?);
                    }
                    Some((_, ')')) => {
                        *pos += 1;
                        break;
                    }
                    _ => {
                        return Err(Error::Parse {
                            position: here(*pos),
                            message: "expected ',' or ')'".into(),
                        })
                    }
                }
            }
            SchroederTree::node(children).map_err(|_| Error::Parse {
                position: start,
                message: "internal vertex with fewer than two children".into(),
            })
        }
        _ => Err(Error::Parse {
            position: here(*pos),
            message: "expected 'o' or '('".into(),
        }),
    }
}

impl FromStr for SchroederTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_tree(s)
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::SizeLimit {
            what: "degree",
            value: n,
            cap,
        });
    }
    Ok(())
}

fn sort_canonical(trees: &mut Vec<SchroederTree>) {
    let mut keyed: Vec<(String, SchroederTree)> =
        trees.drain(..).map(|t| (t.to_string(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    trees.extend(keyed.into_iter().map(|(_, t)| t));
}

/// All Schröder trees of degree `n`, sorted by canonical string.
pub fn enum_schroder(n: usize) -> Result<Vec<SchroederTree>> {
    enum_schroder_capped(n, DEFAULT_DEGREE_CAP)
}

pub fn enum_schroder_capped(n: usize, cap: usize) -> Result<Vec<SchroederTree>> {
    check_cap(n, cap)?;
    let mut memo = HashMap::new();
    let mut out = trees_with_leaves(n + 1, &mut memo);
    sort_canonical(&mut out);
    Ok(out)
}

fn trees_with_leaves(
    leaves: usize,
    memo: &mut HashMap<usize, Vec<SchroederTree>>,
) -> Vec<SchroederTree> {
    if leaves == 1 {
        return vec![SchroederTree::leaf()];
    }
    if let Some(hit) = memo.get(&leaves) {
        return hit.clone();
    }
    let mut out = Vec::new();
    for parts in compositions(leaves) {
        if parts.len() < 2 {
            continue;
        }
        let options: Vec<Vec<SchroederTree>> =
            parts.iter().map(|&p| trees_with_leaves(p, memo)).collect();
        let mut idx = vec![0usize; parts.len()];
        'outer: loop {
            out.push(SchroederTree {
                children: idx
                    .iter()
                    .zip(&options)
                    .map(|(&i, o)| o[i].clone())
                    .collect(),
            });
            for j in (0..idx.len()).rev() {
                idx[j] += 1;
                if idx[j] < options[j].len() {
                    continue 'outer;
                }
                idx[j] = 0;
            }
            break;
        }
    }
    memo.insert(leaves, out.clone());
    out
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Trees of degree `n` with exactly `k` internal vertices.
pub fn enum_schroder_by_k(n: usize, k: usize) -> Result<Vec<SchroederTree>> {
    if k < 1 || k > n {
        return Err(Error::Domain(format!(
            "internal vertex count {k} outside 1..={n}"
        )));
    }
    Ok(enum_schroder(n)?
        .into_iter()
        .filter(|t| t.internal_count() == k)
        .collect())
}

pub fn enum_prime(n: usize) -> Result<Vec<SchroederTree>> {
    Ok(enum_schroder(n)?
        .into_iter()
        .filter(|t| t.is_prime())
        .collect())
}

/// Boolean trees of degree `n`, generated directly: the leftmost child is
/// a leaf or a Boolean tree, all other children are leaves.
pub fn enum_boolean(n: usize) -> Result<Vec<SchroederTree>> {
    enum_boolean_capped(n, DEFAULT_DEGREE_CAP)
}

pub fn enum_boolean_capped(n: usize, cap: usize) -> Result<Vec<SchroederTree>> {
    check_cap(n, cap)?;
    if n == 0 {
        return Err(Error::Domain("Boolean trees have degree at least 1".into()));
    }
    fn build(leaves: usize) -> Vec<SchroederTree> {
        if leaves == 1 {
            return vec![SchroederTree::leaf()];
        }
        let mut out = Vec::new();
        for first in 1..leaves {
            for head in build(first) {
                let mut children = vec![head];
                children.extend(std::iter::repeat_n(SchroederTree::leaf(), leaves - first));
                out.push(SchroederTree { children });
            }
        }
        out
    }
    let mut out = build(n + 1);
    sort_canonical(&mut out);
    Ok(out)
}
