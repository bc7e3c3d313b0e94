//! Schröder-tree formulas for iterated reduced coproducts, the reduced
//! coproduct of bar monomials, and the cancellation-free antipode.

use num_traits::One;

use crate::error::{Error, Result};
use crate::hopf::element::TensorElement;
use crate::hopf::word::{BarMonomial, Word};
use crate::poset::{ForestPoset, Linearization};
use crate::rational::{sign, Q};
use crate::trees::{enum_schroder, SchroederTree, TreeStructure};

/// `c(w, t, f)`: slot `j` holds the blocks of the vertices at level `j`,
/// barred in planar order.
pub fn c_term(w: &Word, s: &TreeStructure, f: &Linearization) -> Vec<BarMonomial> {
    let mut slots = vec![BarMonomial::unit(); f.k()];
    for v in 0..s.internal_count() {
        let block = w.at(&s.blocks[v]).expect("blocks are nonempty");
        slots[f.level(v) - 1].push(block);
    }
    slots
}

fn check_word_len(w: &Word) -> Result<()> {
    if w.len() > crate::trees::DEFAULT_DEGREE_CAP {
        return Err(Error::SizeLimit {
            what: "word length",
            value: w.len(),
            cap: crate::trees::DEFAULT_DEGREE_CAP,
        });
    }
    Ok(())
}

/// `Σ_{t ∈ Sch(n)} Σ_{f ∈ k-lin(sk t)} c(w, t, f)`.
pub fn schroder_iterated_terms(w: &Word, k: usize) -> Result<TensorElement> {
    check_word_len(w)?;
    if k == 0 {
        return Err(Error::Domain("iteration count must be at least 1".into()));
    }
    let mut out = TensorElement::zero(k);
    for t in enum_schroder(w.len())? {
        let s = t.structure();
        for f in s.skeleton.k_linearizations(k)? {
            out.add_term(c_term(w, &s, &f), Q::one());
        }
    }
    Ok(out)
}

/// `w_t`: the blocks of `π(t)` barred in the order of the ascent-free
/// linearization.
pub fn tree_monomial(w: &Word, t: &SchroederTree) -> Result<BarMonomial> {
    if t.degree() != w.len() {
        return Err(Error::Domain(format!(
            "tree of degree {} does not match a word of length {}",
            t.degree(),
            w.len()
        )));
    }
    let s = t.structure();
    let g = t.ascent_free_linearization();
    let mut slots = c_term(w, &s, &g);
    let mut out = BarMonomial::unit();
    for m in slots.drain(..) {
        out = out.concat(&m);
    }
    Ok(out)
}

/// `S(w) = Σ_{t ∈ Sch(n)} (-1)^{i(t)} w_t`.
pub fn antipode_schroder_word(w: &Word) -> Result<TensorElement> {
    check_word_len(w)?;
    let mut out = TensorElement::zero(1);
    for t in enum_schroder(w.len())? {
        out.add_term(vec![tree_monomial(w, &t)?], sign(t.internal_count()));
    }
    Ok(out)
}

/// Disjoint union of skeletons, trees in order; ids are shifted so that
/// each tree keeps its planar order.
fn union_structure(forest: &[TreeStructure]) -> (ForestPoset, Vec<(usize, usize)>) {
    let mut parent = Vec::new();
    let mut owner = Vec::new();
    for (i, s) in forest.iter().enumerate() {
        let offset = parent.len();
        for v in 0..s.internal_count() {
            parent.push(s.skeleton.parent(v).map(|p| p + offset));
            owner.push((i, v));
        }
    }
    (
        ForestPoset::from_parents(parent).expect("shifted pre-order is topological"),
        owner,
    )
}

/// Reduced coproduct of `w1|...|wm` as a sum over Schröder forests and
/// 2-linearizations of their skeletons.
pub fn forest_coproduct_terms(m: &BarMonomial) -> Result<TensorElement> {
    if m.is_unit() {
        return Err(Error::Domain("the unit has no forest expansion".into()));
    }
    let words = m.words();
    let per_word: Vec<Vec<TreeStructure>> = words
        .iter()
        .map(|w| {
            check_word_len(w)?;
            Ok(enum_schroder(w.len())?
                .iter()
                .map(SchroederTree::structure)
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut out = TensorElement::zero(2);
    let mut choice = vec![0usize; words.len()];
    loop {
        let forest: Vec<TreeStructure> = choice
            .iter()
            .zip(&per_word)
            .map(|(&c, ts)| ts[c].clone())
            .collect();
        let (poset, owner) = union_structure(&forest);
        for h in poset.k_linearizations(2)? {
            let mut d1 = BarMonomial::unit();
            let mut d2 = BarMonomial::unit();
            for (u, &(i, v)) in owner.iter().enumerate() {
                let block = words[i].at(&forest[i].blocks[v]).expect("nonempty block");
                // planar order within a tree, trees left to right
                if h.level(u) == 1 {
                    d1.push(block);
                } else {
                    d2.push(block);
                }
            }
            out.add_term(vec![d1, d2], Q::one());
        }
        // next forest in mixed-radix order
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < per_word[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// `Σ_k Σ_{f ∈ k-lin(sk t), f̄ = g} (-1)^k` for a bijective linearization `g`.
pub fn cancellation_sum(t: &SchroederTree, g: &Linearization) -> Result<i64> {
    let sk = t.skeleton();
    if g.k() != sk.len() {
        return Err(Error::Domain("g must be a bijective linearization".into()));
    }
    let mut total = 0i64;
    for k in 1..=sk.len() {
        let count = sk
            .k_linearizations(k)?
            .iter()
            .filter(|f| f.refine() == *g)
            .count() as i64;
        total += if k % 2 == 0 { count } else { -count };
    }
    Ok(total)
}
