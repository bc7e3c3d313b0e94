//! Four independent antipode evaluations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hopf::coproduct::reduced_coproduct_monomial;
use crate::hopf::element::TensorElement;
use crate::hopf::schroder::antipode_schroder_word;
use crate::hopf::word::BarMonomial;
use crate::rational::sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AntipodeMethod {
    /// Signed sum over Schröder trees, extended by reversal.
    Schroder,
    /// `Σ_k (-1)^k m^[k] Δ̄^[k]`.
    Takeuchi,
    /// `S(x) = -x - Σ S(x') | x''`.
    Bogoliubov,
    /// `S(x) = -x - Σ x' | S(x'')`, i.e. `id * S = ηε`.
    Convolution,
}

impl AntipodeMethod {
    pub const ALL: [AntipodeMethod; 4] = [
        AntipodeMethod::Schroder,
        AntipodeMethod::Takeuchi,
        AntipodeMethod::Bogoliubov,
        AntipodeMethod::Convolution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AntipodeMethod::Schroder => "schroder",
            AntipodeMethod::Takeuchi => "takeuchi",
            AntipodeMethod::Bogoliubov => "bogoliubov",
            AntipodeMethod::Convolution => "convolution",
        }
    }
}

impl fmt::Display for AntipodeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AntipodeMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMethod {
                method: s.to_string(),
                kind: "antipode".into(),
            })
    }
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

/// The antipode of a rank-1 element by the chosen method.
pub fn antipode(x: &TensorElement, method: AntipodeMethod) -> Result<TensorElement> {
    match method {
        AntipodeMethod::Schroder => antipode_schroder(x),
        AntipodeMethod::Takeuchi => antipode_takeuchi(x),
        AntipodeMethod::Bogoliubov => antipode_bogoliubov(x),
        AntipodeMethod::Convolution => antipode_convolution(x),
    }
}

/// Tree formula on words; `S(w1|...|wm) = S(wm)|...|S(w1)`.
pub fn antipode_schroder(x: &TensorElement) -> Result<TensorElement> {
    check_rank_one(x)?;
    x.map_linear(|m| {
        m.words()
            .iter()
            .rev()
            .try_fold(TensorElement::unit(1), |acc, w| {
                acc.product(&antipode_schroder_word(w)?)
            })
    })
}

pub fn antipode_takeuchi(x: &TensorElement) -> Result<TensorElement> {
    check_rank_one(x)?;
    x.map_linear(|m| {
        if m.is_unit() {
            return Ok(TensorElement::unit(1));
        }
        // Δ̄^[k+1] expands the last slot of Δ̄^[k]; the memo serves repeats
        let mut memo: HashMap<BarMonomial, TensorElement> = HashMap::new();
        let mut dk = TensorElement::monomial(m.clone());
        let mut out = TensorElement::zero(1);
        for k in 1..=m.degree() {
            if k > 1 {
                dk = dk.expand_slot(k - 2, 2, |last| {
                    Ok(memo
                        .entry(last.clone())
                        .or_insert_with(|| reduced_coproduct_monomial(last))
                        .clone())
                })?;
            }
            out.add_scaled(&dk.multiply_slots(), &sign(k))?;
        }
        Ok(out)
    })
}

/// Recursion on degree with a memo per call; `left` selects which factor
/// of `Δ̄` the antipode is applied to.
fn recursive(x: &TensorElement, on_left: bool) -> Result<TensorElement> {
    check_rank_one(x)?;
    let mut memo: HashMap<BarMonomial, TensorElement> = HashMap::new();
    x.map_linear(|m| recursive_monomial(m, on_left, &mut memo))
}

fn recursive_monomial(
    m: &BarMonomial,
    on_left: bool,
    memo: &mut HashMap<BarMonomial, TensorElement>,
) -> Result<TensorElement> {
    if m.is_unit() {
        return Ok(TensorElement::unit(1));
    }
    if let Some(s) = memo.get(m) {
        return Ok(s.clone());
    }
    let mut out = TensorElement::monomial(m.clone()).neg();
    for (key, c) in reduced_coproduct_monomial(m).terms() {
        let (l, r) = (&key[0], &key[1]);
        let term = if on_left {
            recursive_monomial(l, on_left, memo)?.product(&TensorElement::monomial(r.clone()))?
        } else {
            TensorElement::monomial(l.clone()).product(&recursive_monomial(r, on_left, memo)?)?
        };
        out.add_scaled(&term, &-c.clone())?;
    }
    memo.insert(m.clone(), out.clone());
    Ok(out)
}

pub fn antipode_bogoliubov(x: &TensorElement) -> Result<TensorElement> {
    recursive(x, true)
}

pub fn antipode_convolution(x: &TensorElement) -> Result<TensorElement> {
    recursive(x, false)
}

/// `m ∘ (S ⊗ id) ∘ Δ` and `m ∘ (id ⊗ S) ∘ Δ`, both of which equal `ε(x) 1`.
pub fn antipode_axiom_sides(
    x: &TensorElement,
    method: AntipodeMethod,
) -> Result<(TensorElement, TensorElement)> {
    let dx = crate::hopf::coproduct::coproduct(x)?;
    let mut left = TensorElement::zero(1);
    let mut right = TensorElement::zero(1);
    for (key, c) in dx.terms() {
        let l = TensorElement::monomial(key[0].clone());
        let r = TensorElement::monomial(key[1].clone());
        left.add_scaled(&antipode(&l, method)?.product(&r)?, c)?;
        right.add_scaled(&l.product(&antipode(&r, method)?)?, c)?;
    }
    Ok((left, right))
}

/// `ε(x) 1`.
pub fn counit_element(x: &TensorElement) -> TensorElement {
    TensorElement::unit(1).scale(&crate::hopf::coproduct::counit(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::bar_monomials;
    use crate::hopf::word::Word;

    fn el(s: &str) -> TensorElement {
        TensorElement::monomial(s.parse().unwrap())
    }

    #[test]
    fn method_names() {
        for m in AntipodeMethod::ALL {
            assert_eq!(m.name().parse::<AntipodeMethod>().unwrap(), m);
        }
        assert!("nope".parse::<AntipodeMethod>().is_err());
    }

    #[test]
    fn small_values() {
        let expected = el("1 2")
            .neg()
            .add(&el("1|2"))
            .unwrap()
            .add(&el("2|1"))
            .unwrap();
        for m in AntipodeMethod::ALL {
            assert_eq!(antipode(&el("1"), m).unwrap(), el("1").neg(), "{m}");
            assert_eq!(antipode(&el("1 2"), m).unwrap(), expected, "{m}");
            assert_eq!(antipode(&el("1|2"), m).unwrap(), el("2|1"), "{m}");
            assert_eq!(
                antipode(&TensorElement::unit(1), m).unwrap(),
                TensorElement::unit(1)
            );
        }
    }

    #[test]
    fn methods_agree_on_words_up_to_four() {
        for n in 1..=4 {
            let x = TensorElement::word(Word::standard(n).unwrap());
            let reference = antipode_takeuchi(&x).unwrap();
            for m in AntipodeMethod::ALL {
                assert_eq!(antipode(&x, m).unwrap(), reference, "n={n} {m}");
            }
        }
    }

    #[test]
    fn axiom_on_monomials_up_to_degree_four() {
        for d in 0..=4 {
            for m in bar_monomials(d, &[1, 2]) {
                let x = TensorElement::monomial(m);
                let (l, r) = antipode_axiom_sides(&x, AntipodeMethod::Schroder).unwrap();
                assert_eq!(l, counit_element(&x));
                assert_eq!(r, counit_element(&x));
            }
        }
    }
}
