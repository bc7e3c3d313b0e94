//! Finite linear combinations of rank-`r` pure tensors of monomials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf::word::{BarMonomial, Word};
use crate::rational::{format_q, parse_q, Q};

/// Basis elements of a graded algebra of words.
pub trait Monomial: Clone + Ord + fmt::Display {
    fn unit() -> Self;
    fn is_unit(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn words(&self) -> &[Word];

    fn degree(&self) -> usize {
        self.words().iter().map(Word::len).sum()
    }
}

impl Monomial for BarMonomial {
    fn unit() -> Self {
        BarMonomial::unit()
    }

    fn is_unit(&self) -> bool {
        BarMonomial::is_unit(self)
    }

    fn mul(&self, other: &Self) -> Self {
        self.concat(other)
    }

    fn words(&self) -> &[Word] {
        BarMonomial::words(self)
    }
}

/// A sum of rank-`r` pure tensors with nonzero rational coefficients, kept
/// in canonical key order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<M: Monomial> {
    rank: usize,
    terms: BTreeMap<Vec<M>, Q>,
}

/// An element of `T(T+(V))^{⊗r}`.
pub type TensorElement = Tensor<BarMonomial>;

impl<M: Monomial> Tensor<M> {
    pub fn zero(rank: usize) -> Self {
        Tensor {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ ... ⊗ 1`.
    pub fn unit(rank: usize) -> Self {
        Self::basis(vec![M::unit(); rank])
    }

    pub fn basis(key: Vec<M>) -> Self {
        let mut t = Self::zero(key.len());
        t.add_term(key, Q::one());
        t
    }

    pub fn monomial(m: M) -> Self {
        Self::basis(vec![m])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<M>, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &[M]) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `coeff · key`, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: Vec<M>, coeff: Q) {
        debug_assert_eq!(key.len(), self.rank);
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Q) -> Result<()> {
        self.check_rank(other)?;
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one())?;
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.rank);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// Slotwise product, bilinear.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let key = a.iter().zip(b).map(|(u, v)| u.mul(v)).collect();
                out.add_term(key, x * y);
            }
        }
        Ok(out)
    }

    /// Tensor product; ranks add.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rank + other.rank);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut key = a.clone();
                key.extend(b.iter().cloned());
                out.add_term(key, x * y);
            }
        }
        out
    }

    /// Replaces slot `slot` by the image of a linear map on monomials with
    /// values of rank `s`; the result has rank `r + s - 1`.
    pub fn expand_slot<F>(&self, slot: usize, s: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&M) -> Result<Self>,
    {
        let mut out = Self::zero(self.rank + s - 1);
        for (key, c) in &self.terms {
            let image = f(&key[slot])?;
            if image.rank != s {
                return Err(Error::RankMismatch {
                    left: image.rank,
                    right: s,
                });
            }
            for (k2, c2) in &image.terms {
                let mut nk = key[..slot].to_vec();
                nk.extend(k2.iter().cloned());
                nk.extend(key[slot + 1..].iter().cloned());
                out.add_term(nk, c * c2);
            }
        }
        Ok(out)
    }

    /// Applies a linear map on rank-1 monomials.
    pub fn map_linear<N, F>(&self, mut f: F) -> Result<Tensor<N>>
    where
        N: Monomial,
        F: FnMut(&M) -> Result<Tensor<N>>,
    {
        let mut out: Option<Tensor<N>> = None;
        for (key, c) in &self.terms {
            let key = match key.as_slice() {
                [m] => m,
                _ => {
                    return Err(Error::RankMismatch {
                        left: self.rank,
                        right: 1,
                    })
                }
            };
            let image = f(key)?;
            match out.as_mut() {
                Some(acc) => acc.add_scaled(&image, c)?,
                None => out = Some(image.scale(c)),
            }
        }
        Ok(out.unwrap_or_else(|| Tensor::zero(1)))
    }

    /// Multiplies all slots together: `m^[r]`.
    pub fn multiply_slots(&self) -> Tensor<M> {
        let mut out = Tensor::zero(1);
        for (key, c) in &self.terms {
            let m = key.iter().fold(M::unit(), |acc, x| acc.mul(x));
            out.add_term(vec![m], c.clone());
        }
        out
    }

    /// Keeps only the terms with no unit slot.
    pub fn reduced(&self) -> Self {
        Tensor {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.iter().all(|m| !m.is_unit()))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Degrees of the terms, which are all equal for homogeneous elements.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .terms
            .keys()
            .map(|k| k.iter().map(Monomial::degree).sum())
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Element JSON with canonical term order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(key, c)| {
                let monomials: Vec<Value> = key
                    .iter()
                    .map(|m| Value::Array(m.words().iter().map(|w| json!(w.letters())).collect()))
                    .collect();
                json!({"coeff": format_q(c), "monomials": monomials})
            })
            .collect();
        json!({"rank": self.rank, "terms": terms})
    }
}

impl TensorElement {
    pub fn word(w: Word) -> Self {
        Self::monomial(BarMonomial::word(w))
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Format(m.to_string());
        let rank = v
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer \"rank\""))? as usize;
        if rank == 0 {
            return Err(bad("rank must be positive"));
        }
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array \"terms\""))?;
        let mut out = Self::zero(rank);
        for t in terms {
            let coeff = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("term without string \"coeff\""))?;
            let coeff = parse_q(coeff)?;
            let monos = t
                .get("monomials")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without array \"monomials\""))?;
            if monos.len() != rank {
                return Err(Error::RankMismatch {
                    left: monos.len(),
                    right: rank,
                });
            }
            let key = monos
                .iter()
                .map(|m| {
                    let words = m
                        .as_array()
                        .ok_or_else(|| bad("monomial must be an array"))?;
                    words
                        .iter()
                        .map(|w| {
                            let letters = w
                                .as_array()
                                .ok_or_else(|| bad("word must be an array"))?
                                .iter()
                                .map(|a| {
                                    a.as_u64()
                                        .and_then(|a| u32::try_from(a).ok())
                                        .ok_or_else(|| bad("letter ids are integers"))
                                })
                                .collect::<Result<Vec<u32>>>()?;
                            Word::new(letters).map_err(|e| bad(&e.to_string()))
                        })
                        .collect::<Result<Vec<Word>>>()
                        .map(BarMonomial::new)
                })
                .collect::<Result<Vec<_>>>()?;
            out.add_term(key, coeff);
        }
        Ok(out)
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Q, first: bool) -> fmt::Result {
    let negative = c < &Q::zero();
    let abs = if negative { -c.clone() } else { c.clone() };
    match (first, negative) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    if !abs.is_one() {
        if abs.is_integer() {
            write!(f, "{} ", abs.numer())?;
        } else {
            write!(f, "{}/{} ", abs.numer(), abs.denom())?;
        }
    }
    Ok(())
}

impl<M: Monomial> fmt::Display for Tensor<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (key, c)) in self.terms.iter().enumerate() {
            write_coeff(f, c, i == 0)?;
            let parts: Vec<String> = key.iter().map(|m| m.to_string()).collect();
            f.write_str(&parts.join(" ⊗ "))?;
        }
        Ok(())
    }
}
