//! Free Wick polynomials `W = (id ⊗ Φ^{*-1}) ∘ Δ`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf::{coproduct_word, BarMonomial, TensorElement, Word};
use crate::ncprob::cumulants::{cumulants_from_moments, CumulantKind, CumulantMethod};
use crate::ncprob::functional::Functional;
use crate::ncprob::inverse::interval_inverse;
use crate::ncprob::table::WordTable;
use crate::partitions::block_of_root;
use crate::rational::{sign, Q};
use crate::trees::enum_schroder;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WickMethod {
    /// `(id ⊗ Φ ∘ S) ∘ Δ`.
    Coproduct,
    /// Sum over `B ⊆ [n]` with interval partitions of the gaps, weighted by
    /// free cumulants.
    Interval,
    /// `Σ_t (-1)^{i(t)-1} (w_{B_r} - Φ(w_{B_r}) 1) ∏_{B ≠ B_r} Φ(w_B)`.
    Schroder,
}

impl WickMethod {
    pub const ALL: [WickMethod; 3] = [
        WickMethod::Coproduct,
        WickMethod::Interval,
        WickMethod::Schroder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WickMethod::Coproduct => "coproduct",
            WickMethod::Interval => "interval",
            WickMethod::Schroder => "schroder",
        }
    }
}

impl fmt::Display for WickMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WickMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMethod {
                method: s.to_string(),
                kind: "wick".into(),
            })
    }
}

/// The Wick polynomial of a word, as a rank-1 element whose terms are the
/// unit and single subwords.
pub fn wick(w: &Word, phi: &WordTable, method: WickMethod) -> Result<TensorElement> {
    if w.len() > phi.max_degree() {
        return Err(Error::DegreeOverflow {
            degree: w.len(),
            max: phi.max_degree(),
        });
    }
    match method {
        WickMethod::Coproduct => {
            let inverse = Functional::character(phi).after_antipode();
            let mut out = TensorElement::zero(1);
            for (key, c) in coproduct_word(w).terms() {
                out.add_term(vec![key[0].clone()], c * inverse.eval(&key[1])?);
            }
            Ok(out)
        }
        WickMethod::Interval => {
            let k = cumulants_from_moments(CumulantKind::Free, phi, CumulantMethod::Moebius)?;
            let n = w.len();
            let mut out = TensorElement::zero(1);
            for mask in 0u64..(1 << n) {
                let (inside, outside): (Vec<usize>, Vec<usize>) =
                    (1..=n).partition(|&p| mask & (1 << (p - 1)) != 0);
                let mut coeff = Q::one();
                for comp in crate::hopf::connected_components(&[], &outside)? {
                    coeff *= interval_inverse(&k.table, &w.at(&comp).expect("nonempty"))?;
                }
                let head = w
                    .at(&inside)
                    .map_or_else(BarMonomial::unit, BarMonomial::word);
                out.add_term(vec![head], coeff);
            }
            Ok(out)
        }
        WickMethod::Schroder => {
            let mut out = TensorElement::zero(1);
            for t in enum_schroder(w.len())? {
                let s = t.structure();
                let root = block_of_root(&t)?;
                let mut rest = sign(t.internal_count() - 1);
                for b in &s.blocks[1..] {
                    rest *= phi.get(&w.at(b).expect("nonempty"))?;
                }
                if rest.is_zero() {
                    continue;
                }
                let head = w.at(&root).expect("nonempty");
                let phi_head = phi.get(&head)?;
                out.add_term(vec![BarMonomial::word(head)], rest.clone());
                out.add_term(vec![BarMonomial::unit()], -rest * phi_head);
            }
            Ok(out)
        }
    }
}
