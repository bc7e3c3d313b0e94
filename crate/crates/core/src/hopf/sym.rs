//! The commutative variant `S(T+(V))`: words multiply as a multiset.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::hopf::element::{Monomial, Tensor, TensorElement};
use crate::hopf::word::{runs, Word};
use crate::rational::{sign, Q};
use crate::trees::enum_schroder;

/// A commutative product of words, stored sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommMonomial(Vec<Word>);

impl CommMonomial {
    pub fn new(mut words: Vec<Word>) -> Self {
        words.sort();
        CommMonomial(words)
    }
}

impl Monomial for CommMonomial {
    fn unit() -> Self {
        CommMonomial(Vec::new())
    }

    fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut words = self.0.clone();
        words.extend(other.0.iter().cloned());
        CommMonomial::new(words)
    }

    fn words(&self) -> &[Word] {
        &self.0
    }
}

impl fmt::Display for CommMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        f.write_str(&parts.join("·"))
    }
}

pub type SymElement = Tensor<CommMonomial>;

fn word_coproduct(w: &Word) -> SymElement {
    let n = w.len();
    let mut out = SymElement::zero(2);
    for mask in 0u64..(1 << n) {
        let (inside, outside): (Vec<usize>, Vec<usize>) =
            (1..=n).partition(|&p| mask & (1 << (p - 1)) != 0);
        let left = CommMonomial::new(w.at(&inside).into_iter().collect());
        let right = CommMonomial::new(runs(&outside).iter().filter_map(|c| w.at(c)).collect());
        out.add_term(vec![left, right], Q::one());
    }
    out
}

fn reduced_monomial(m: &CommMonomial) -> SymElement {
    if m.is_unit() {
        return SymElement::zero(2);
    }
    m.words()
        .iter()
        .fold(SymElement::unit(2), |acc, w| {
            acc.product(&word_coproduct(w)).expect("rank 2")
        })
        .reduced()
}

/// `Δ̄_S(w) = Σ_{∅ ≠ A ⊊ [n]} w_A ⊗ w̃^(A)`.
pub fn sym_reduced_coproduct(w: &Word) -> SymElement {
    reduced_monomial(&CommMonomial::new(vec![w.clone()]))
}

/// Iterated reduced coproduct by recursion on the last slot.
pub fn sym_iterated_reduced_coproduct(w: &Word, k: usize) -> Result<SymElement> {
    if k == 0 {
        return Err(Error::Domain("iteration count must be at least 1".into()));
    }
    let mut acc = SymElement::monomial(CommMonomial::new(vec![w.clone()]));
    for step in 1..k {
        acc = acc.expand_slot(step - 1, 2, |m| Ok(reduced_monomial(m)))?;
    }
    Ok(acc)
}

/// `Σ_t Σ_{f ∈ k-lin(sk t)} c̃(w, t, f)`.
pub fn sym_iterated(w: &Word, k: usize) -> Result<SymElement> {
    if k == 0 {
        return Err(Error::Domain("iteration count must be at least 1".into()));
    }
    let mut out = SymElement::zero(k);
    for t in enum_schroder(w.len())? {
        let s = t.structure();
        for f in s.skeleton.k_linearizations(k)? {
            let mut slots = vec![Vec::new(); k];
            for v in 0..s.internal_count() {
                slots[f.level(v) - 1].push(w.at(&s.blocks[v]).expect("nonempty block"));
            }
            out.add_term(slots.into_iter().map(CommMonomial::new).collect(), Q::one());
        }
    }
    Ok(out)
}

/// `S_S(w) = Σ_t (-1)^{i(t)} w̃_t`.
pub fn sym_antipode(w: &Word) -> Result<SymElement> {
    let mut out = SymElement::zero(1);
    for t in enum_schroder(w.len())? {
        let s = t.structure();
        let words = s
            .blocks
            .iter()
            .map(|b| w.at(b).expect("nonempty block"))
            .collect();
        out.add_term(vec![CommMonomial::new(words)], sign(s.internal_count()));
    }
    Ok(out)
}

/// Takeuchi's formula in the commutative algebra.
pub fn sym_antipode_takeuchi(w: &Word) -> Result<SymElement> {
    let mut out = SymElement::zero(1);
    for k in 1..=w.len() {
        out.add_scaled(
            &sym_iterated_reduced_coproduct(w, k)?.multiply_slots(),
            &sign(k),
        )?;
    }
    Ok(out)
}

/// Forgets the order of the bars.
pub fn project(x: &TensorElement) -> SymElement {
    let mut out = SymElement::zero(x.rank());
    for (key, c) in x.terms() {
        out.add_term(
            key.iter()
                .map(|m| CommMonomial::new(m.words().to_vec()))
                .collect(),
            c.clone(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::schroder::antipode_schroder_word;
    use crate::rational::q;

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn comm(ws: &[&str]) -> CommMonomial {
        CommMonomial::new(ws.iter().map(|s| word(s)).collect())
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(
            sym_antipode(&word("1")).unwrap(),
            SymElement::monomial(comm(&["1"])).neg()
        );
        let s = sym_antipode(&word("1 2")).unwrap();
        assert_eq!(s.coefficient(&[comm(&["1 2"])]), q(-1));
        assert_eq!(s.coefficient(&[comm(&["2", "1"])]), q(2));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn reduced_coproduct_example() {
        let d = sym_reduced_coproduct(&word("1 2 3"));
        assert_eq!(d.coefficient(&[comm(&["2"]), comm(&["1", "3"])]), q(1));
        assert_eq!(d.len(), 6);
    }

    #[test]
    fn formulas_agree_up_to_degree_five() {
        for n in 1..=5 {
            let w = Word::standard(n).unwrap();
            assert_eq!(
                sym_antipode(&w).unwrap(),
                sym_antipode_takeuchi(&w).unwrap()
            );
            assert_eq!(
                project(&antipode_schroder_word(&w).unwrap()),
                sym_antipode(&w).unwrap()
            );
            for k in 1..=n {
                assert_eq!(
                    sym_iterated(&w, k).unwrap(),
                    sym_iterated_reduced_coproduct(&w, k).unwrap()
                );
            }
        }
    }
}
