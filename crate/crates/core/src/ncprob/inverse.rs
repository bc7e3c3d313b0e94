//! The convolution inverse `Φ^{*-1}` of a moment character.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hopf::Word;
use crate::ncprob::cumulants::{cumulants_from_moments, CumulantKind, CumulantMethod};
use crate::ncprob::functional::{geometric_inverse, Functional};
use crate::ncprob::table::WordTable;
use crate::partitions::{enum_interval, enum_nc, moebius_nc, NcPartition};
use crate::rational::{sign, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseMethod {
    /// `Φ ∘ S`.
    Antipode,
    /// `Σ_k (-1)^k (Φ - ε)^{*k}`.
    Geometric,
    /// `Σ_{π ∈ NC(n)} μ_{NC(n+1)}(π̂, 1_{n+1}) φ_π`.
    NcMoebius,
    /// `Σ_{π ∈ NCInt(n)} (-1)^{|π|} k_π` with free cumulants `k`.
    Interval,
}

impl InverseMethod {
    pub const ALL: [InverseMethod; 4] = [
        InverseMethod::Antipode,
        InverseMethod::Geometric,
        InverseMethod::NcMoebius,
        InverseMethod::Interval,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InverseMethod::Antipode => "antipode",
            InverseMethod::Geometric => "geometric",
            InverseMethod::NcMoebius => "nc-moebius",
            InverseMethod::Interval => "interval",
        }
    }
}

impl fmt::Display for InverseMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InverseMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMethod {
                method: s.to_string(),
                kind: "inverse".into(),
            })
    }
}

/// Values of `Φ^{*-1}` on words. The inverse of a character is a character,
/// so these determine it.
pub fn conv_inverse(phi: &WordTable, method: InverseMethod) -> Result<WordTable> {
    match method {
        InverseMethod::Antipode => Functional::character(phi).after_antipode().to_table(phi),
        InverseMethod::Geometric => {
            geometric_inverse(&Functional::character(phi), phi.max_degree()).to_table(phi)
        }
        InverseMethod::NcMoebius => phi.map_words(|w| {
            let n = w.len();
            let top = NcPartition::one(n + 1);
            let mut acc = Q::zero();
            for p in enum_nc(n)? {
                let mu = moebius_nc(&p.hat_extension(), &top)?;
                acc += Q::from_integer(mu) * phi.partition_product(w, p.blocks())?;
            }
            Ok(acc)
        }),
        InverseMethod::Interval => {
            let k = cumulants_from_moments(CumulantKind::Free, phi, CumulantMethod::Moebius)?;
            phi.map_words(|w| interval_inverse(&k.table, w))
        }
    }
}

/// `Σ_{π ∈ NCInt(n)} (-1)^{|π|} k_π(w)`.
pub(crate) fn interval_inverse(free: &WordTable, w: &Word) -> Result<Q> {
    let mut acc = Q::zero();
    for p in enum_interval(w.len())? {
        acc += sign(p.block_count()) * free.partition_product(w, p.blocks())?;
    }
    Ok(acc)
}
