//! The coproduct, its left/right halves, and iterated reduced coproducts.

use num_traits::One;

use crate::error::{Error, Result};
use crate::hopf::element::{Monomial, Tensor, TensorElement};
use crate::hopf::word::{runs, BarMonomial, Word};
use crate::rational::Q;

/// Which subsets `A ⊆ [n]` a word-level coproduct sums over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Half {
    Full,
    /// `1 ∈ A`
    Left,
    /// `1 ∉ A`
    Right,
}

/// `Σ_A w_A ⊗ w^(A)` over the subsets selected by `half`.
fn word_coproduct(w: &Word, half: Half) -> TensorElement {
    let n = w.len();
    let mut out = TensorElement::zero(2);
    for mask in 0u64..(1 << n) {
        let has_first = mask & 1 == 1;
        match half {
            Half::Left if !has_first => continue,
            Half::Right if has_first => continue,
            _ => {}
        }
        let (inside, outside): (Vec<usize>, Vec<usize>) =
            (1..=n).partition(|&p| mask & (1 << (p - 1)) != 0);
        let left = w
            .at(&inside)
            .map_or_else(BarMonomial::unit, BarMonomial::word);
        let right = BarMonomial::new(runs(&outside).iter().filter_map(|c| w.at(c)).collect());
        out.add_term(vec![left, right], Q::one());
    }
    out
}

/// Coproduct of a word.
pub fn coproduct_word(w: &Word) -> TensorElement {
    word_coproduct(w, Half::Full)
}

fn check_rank_one(x: &TensorElement) -> Result<()> {
    if x.rank() != 1 {
        return Err(Error::RankMismatch {
            left: x.rank(),
            right: 1,
        });
    }
    Ok(())
}

/// Coproduct on a bar monomial, multiplicatively.
pub fn coproduct_monomial(m: &BarMonomial) -> TensorElement {
    m.words().iter().fold(TensorElement::unit(2), |acc, w| {
        acc.product(&coproduct_word(w)).expect("rank 2")
    })
}

/// `Δ`, extended linearly; `Δ(1) = 1 ⊗ 1`.
pub fn coproduct(x: &TensorElement) -> Result<TensorElement> {
    check_rank_one(x)?;
    x.expand_slot(0, 2, |m| Ok(coproduct_monomial(m)))
}

fn half_monomial(m: &BarMonomial, half: Half) -> TensorElement {
    match m.words().split_first() {
        // the unit has no half: both halves vanish on it
        None => TensorElement::zero(2),
        Some((first, rest)) => rest.iter().fold(word_coproduct(first, half), |acc, w| {
            acc.product(&coproduct_word(w)).expect("rank 2")
        }),
    }
}

/// `Δ≺`: on a word, the subsets containing the first position; on
/// `w1|...|wn`, `Δ≺(w1) Δ(w2) ... Δ(wn)`.
pub fn half_coproduct_left(x: &TensorElement) -> Result<TensorElement> {
    check_rank_one(x)?;
    x.expand_slot(0, 2, |m| Ok(half_monomial(m, Half::Left)))
}

/// `Δ≻`: the subsets avoiding the first position.
pub fn half_coproduct_right(x: &TensorElement) -> Result<TensorElement> {
    check_rank_one(x)?;
    x.expand_slot(0, 2, |m| Ok(half_monomial(m, Half::Right)))
}

/// `Δ̄(x) = Δ(x) - 1⊗x - x⊗1` on a monomial other than the unit.
pub fn reduced_coproduct_monomial(m: &BarMonomial) -> TensorElement {
    if m.is_unit() {
        return TensorElement::zero(2);
    }
    coproduct_monomial(m).reduced()
}

/// Reduced coproduct, linear; it vanishes on the unit.
pub fn reduced_coproduct(x: &TensorElement) -> Result<TensorElement> {
    check_rank_one(x)?;
    x.expand_slot(0, 2, |m| Ok(reduced_coproduct_monomial(m)))
}

/// `Δ̄^[1] = id` on the augmentation ideal and
/// `Δ̄^[k] = (id^{⊗(k-1)} ⊗ Δ̄) ∘ Δ̄^[k-1]`.
pub fn iterated_reduced_coproduct(x: &TensorElement, k: usize) -> Result<TensorElement> {
    check_rank_one(x)?;
    if k == 0 {
        return Err(Error::Domain("iteration count must be at least 1".into()));
    }
    let mut acc = x.reduced();
    for step in 1..k {
        acc = acc.expand_slot(step - 1, 2, |m| Ok(reduced_coproduct_monomial(m)))?;
    }
    Ok(acc)
}

/// Counit: the coefficient of the unit.
pub fn counit<M: Monomial>(x: &Tensor<M>) -> Q {
    x.terms()
        .filter(|(k, _)| k.iter().all(Monomial::is_unit))
        .map(|(_, c)| c.clone())
        .sum()
}
