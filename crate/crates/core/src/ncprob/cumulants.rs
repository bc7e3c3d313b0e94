//! Free, Boolean and monotone cumulants, each by several independent
//! formulas.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf::{half_coproduct_left, half_coproduct_right, BarMonomial, TensorElement, Word};
use crate::ncprob::functional::{conv_log, Functional};
use crate::ncprob::table::WordTable;
use crate::partitions::{enum_interval, enum_nc, moebius_nc, tree_to_ncp, NcPartition};
use crate::rational::{sign, Q};
use crate::trees::{enum_boolean, enum_prime, enum_schroder, SchroederTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CumulantKind {
    Free,
    Boolean,
    Monotone,
}

impl CumulantKind {
    pub const ALL: [CumulantKind; 3] = [
        CumulantKind::Free,
        CumulantKind::Boolean,
        CumulantKind::Monotone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CumulantKind::Free => "free",
            CumulantKind::Boolean => "boolean",
            CumulantKind::Monotone => "monotone",
        }
    }

    /// Methods valid for this kind; the first is the default.
    pub fn methods(self) -> &'static [CumulantMethod] {
        use CumulantMethod::*;
        match self {
            CumulantKind::Free => &[PrimeTrees, Moebius, Shuffle, FixedPoint, Recursion],
            CumulantKind::Boolean => &[BooleanTrees, Intervals, Shuffle, FixedPoint, Recursion],
            CumulantKind::Monotone => &[OmegaTrees, Log, Recursion],
        }
    }

    pub fn default_method(self) -> CumulantMethod {
        self.methods()[0]
    }
}

impl fmt::Display for CumulantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CumulantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown cumulant kind \"{s}\"")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CumulantMethod {
    /// Free: `Σ_{π ∈ NC(n)} μ(π, 1_n) φ_π`.
    Moebius,
    /// Free: `Σ_{t ∈ PSch(n)} (-1)^{i(t)-1} φ_{π(t)}`.
    PrimeTrees,
    /// Boolean: `Σ_{π ∈ NCInt(n)} (-1)^{|π|-1} φ_π`.
    Intervals,
    /// Boolean: `Σ_{t ∈ BSch(n)} (-1)^{i(t)-1} φ_{π(t)}`.
    BooleanTrees,
    /// Monotone: `Σ_{t ∈ Sch(n)} ω(sk t) φ_{π(t)}`.
    OmegaTrees,
    /// Free: `(Φ - ε) ≺ Φ^{*-1}`; Boolean: `(Φ ∘ S) ≻ (Φ - ε)`.
    Shuffle,
    /// Monotone: `log*(Φ)`.
    Log,
    /// Free: `Φ = ε + κ ≺ Φ`; Boolean: `Φ = ε + Φ ≻ β`, solved degree by degree.
    FixedPoint,
    /// Inverts the moment-cumulant formula degree by degree.
    Recursion,
}

impl CumulantMethod {
    pub const ALL: [CumulantMethod; 9] = [
        CumulantMethod::Moebius,
        CumulantMethod::PrimeTrees,
        CumulantMethod::Intervals,
        CumulantMethod::BooleanTrees,
        CumulantMethod::OmegaTrees,
        CumulantMethod::Shuffle,
        CumulantMethod::Log,
        CumulantMethod::FixedPoint,
        CumulantMethod::Recursion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CumulantMethod::Moebius => "moebius",
            CumulantMethod::PrimeTrees => "prime-trees",
            CumulantMethod::Intervals => "intervals",
            CumulantMethod::BooleanTrees => "boolean-trees",
            CumulantMethod::OmegaTrees => "omega-trees",
            CumulantMethod::Shuffle => "shuffle",
            CumulantMethod::Log => "log",
            CumulantMethod::FixedPoint => "fixed-point",
            CumulantMethod::Recursion => "recursion",
        }
    }
}

impl fmt::Display for CumulantMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CumulantMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMethod {
                method: s.to_string(),
                kind: "cumulants".into(),
            })
    }
}

/// Cumulant values on words; as an infinitesimal character it vanishes on
/// the unit and on bar products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulantFunctional {
    pub kind: CumulantKind,
    pub table: WordTable,
}

impl CumulantFunctional {
    pub fn to_json(&self) -> serde_json::Value {
        self.table.to_json_with("cumulants", Some(self.kind.name()))
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(serde_json::Value::as_str)
            .ok_or_else(|| Error::Format("missing string \"kind\"".into()))?
            .parse()
            .map_err(|e: Error| Error::Format(e.to_string()))?;
        Ok(CumulantFunctional {
            kind,
            table: WordTable::from_json(v)?,
        })
    }
}

/// Signed weights `c(π)` such that a formula reads `Σ_π c(π) φ_π`.
type Weights = Arc<Vec<(Vec<Vec<usize>>, Q)>>;

fn cached_weights<F>(tag: &'static str, n: usize, build: F) -> Result<Weights>
where
    F: FnOnce() -> Result<Vec<(Vec<Vec<usize>>, Q)>>,
{
    static CACHE: OnceLock<Mutex<HashMap<(&'static str, usize), Weights>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(w) = cache.lock().unwrap().get(&(tag, n)) {
        return Ok(w.clone());
    }
    let w = Arc::new(build()?);
    cache.lock().unwrap().insert((tag, n), w.clone());
    Ok(w)
}

/// Collects `Σ_t c(t) φ_{π(t)}` into one coefficient per partition.
fn tree_weights<F>(trees: Vec<SchroederTree>, mut coeff: F) -> Result<Vec<(Vec<Vec<usize>>, Q)>>
where
    F: FnMut(&SchroederTree) -> Result<Q>,
{
    let mut acc: BTreeMap<NcPartition, Q> = BTreeMap::new();
    for t in &trees {
        *acc.entry(tree_to_ncp(t)?).or_insert_with(Q::zero) += coeff(t)?;
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| (p.blocks().to_vec(), c))
        .collect())
}

fn weights(method: CumulantMethod, n: usize) -> Result<Weights> {
    match method {
        CumulantMethod::Moebius => cached_weights("moebius", n, || {
            let top = NcPartition::one(n);
            enum_nc(n)?
                .into_iter()
                .map(|p| Ok((p.blocks().to_vec(), Q::from_integer(moebius_nc(&p, &top)?))))
                .collect()
        }),
        CumulantMethod::Intervals => cached_weights("intervals", n, || {
            Ok(enum_interval(n)?
                .into_iter()
                .map(|p| (p.blocks().to_vec(), sign(p.block_count() - 1)))
                .collect())
        }),
        CumulantMethod::PrimeTrees => cached_weights("prime-trees", n, || {
            tree_weights(enum_prime(n)?, |t| Ok(sign(t.internal_count() - 1)))
        }),
        CumulantMethod::BooleanTrees => cached_weights("boolean-trees", n, || {
            tree_weights(enum_boolean(n)?, |t| Ok(sign(t.internal_count() - 1)))
        }),
        CumulantMethod::OmegaTrees => cached_weights("omega-trees", n, || {
            tree_weights(enum_schroder(n)?, |t| t.murua_coefficient())
        }),
        _ => unreachable!("not a partition-sum method"),
    }
}

fn partition_sum(method: CumulantMethod, phi: &WordTable, w: &Word) -> Result<Q> {
    let mut acc = Q::zero();
    for (blocks, c) in weights(method, w.len())?.iter() {
        acc += c * phi.partition_product(w, blocks)?;
    }
    Ok(acc)
}

/// `ω(sk t)` for every `t ∈ Sch(n)`.
pub fn murua_table(n: usize) -> Result<Vec<(SchroederTree, Q)>> {
    enum_schroder(n)?
        .into_iter()
        .map(|t| {
            let w = t.murua_coefficient()?;
            Ok((t, w))
        })
        .collect()
}

/// The partitions and weights of the moment formula of each kind:
/// `Σ_{NC} k_π`, `Σ_{NCInt} b_π`, `Σ_{NC} h_π / f_π!`.
fn moment_weights(kind: CumulantKind, n: usize) -> Result<Weights> {
    match kind {
        CumulantKind::Free => cached_weights("moments-free", n, || {
            Ok(enum_nc(n)?
                .into_iter()
                .map(|p| (p.blocks().to_vec(), Q::one()))
                .collect())
        }),
        CumulantKind::Boolean => cached_weights("moments-boolean", n, || {
            Ok(enum_interval(n)?
                .into_iter()
                .map(|p| (p.blocks().to_vec(), Q::one()))
                .collect())
        }),
        CumulantKind::Monotone => cached_weights("moments-monotone", n, || {
            Ok(enum_nc(n)?
                .into_iter()
                .map(|p| {
                    let f = p.nesting_forest().factorial();
                    (p.blocks().to_vec(), Q::new(BigInt::one(), f))
                })
                .collect())
        }),
    }
}

/// Moments from cumulants by the partition sums of each kind.
pub fn moments_from_cumulants(c: &CumulantFunctional) -> Result<WordTable> {
    c.table.map_words(|w| {
        let mut acc = Q::zero();
        for (blocks, weight) in moment_weights(c.kind, w.len())?.iter() {
            acc += weight * c.table.partition_product(w, blocks)?;
        }
        Ok(acc)
    })
}

/// Cumulants from moments by the chosen method.
pub fn cumulants_from_moments(
    kind: CumulantKind,
    phi: &WordTable,
    method: CumulantMethod,
) -> Result<CumulantFunctional> {
    if !kind.methods().contains(&method) {
        return Err(Error::UnknownMethod {
            method: method.name().into(),
            kind: kind.name().into(),
        });
    }
    let table = match method {
        CumulantMethod::Moebius
        | CumulantMethod::Intervals
        | CumulantMethod::PrimeTrees
        | CumulantMethod::BooleanTrees
        | CumulantMethod::OmegaTrees => phi.map_words(|w| partition_sum(method, phi, w))?,
        CumulantMethod::Shuffle => {
            let big_phi = Functional::character(phi);
            let centered = big_phi.sub(&Functional::counit());
            let inverse = big_phi.after_antipode();
            let f = match kind {
                CumulantKind::Free => centered.half_shuffle_left(&inverse),
                _ => inverse.half_shuffle_right(&centered),
            };
            f.to_table(phi)?
        }
        CumulantMethod::Log => {
            conv_log(&Functional::character(phi), phi.max_degree()).to_table(phi)?
        }
        CumulantMethod::FixedPoint => fixed_point(kind, phi)?,
        CumulantMethod::Recursion => recursion(kind, phi)?,
    };
    Ok(CumulantFunctional { kind, table })
}

/// Solves `Φ = ε + κ ≺ Φ` (free) or `Φ = ε + Φ ≻ β` (Boolean) word by word,
/// shortest first. The term holding the unknown at full length is the one
/// with `A = [n]` (free) or `A = ∅` (Boolean).
fn fixed_point(kind: CumulantKind, phi: &WordTable) -> Result<WordTable> {
    let big_phi = Functional::character(phi);
    let mut out = WordTable::new(phi.alphabet().to_vec(), phi.max_degree())?;
    for w in phi.words() {
        let m = TensorElement::word(w.clone());
        let whole = BarMonomial::word(w.clone());
        let mut rest = Q::zero();
        let terms = match kind {
            CumulantKind::Free => half_coproduct_left(&m)?,
            _ => half_coproduct_right(&m)?,
        };
        for (key, c) in terms.terms() {
            let (l, r) = (&key[0], &key[1]);
            match kind {
                CumulantKind::Free => {
                    if *l == whole {
                        continue;
                    }
                    // κ is infinitesimal and l is a single word here
                    rest += c * out.get(&l.words()[0])? * big_phi.eval(r)?;
                }
                _ => {
                    if l.is_unit() {
                        continue;
                    }
                    if let [single] = r.words() {
                        rest += c * big_phi.eval(l)? * out.get(single)?;
                    }
                }
            }
        }
        out.insert(w.clone(), phi.get(&w)? - rest)?;
    }
    Ok(out)
}

/// `c(w) = φ(w) - Σ_{π ≠ 1_n} weight(π) c_π(w)`, shortest words first.
fn recursion(kind: CumulantKind, phi: &WordTable) -> Result<WordTable> {
    let mut out = WordTable::new(phi.alphabet().to_vec(), phi.max_degree())?;
    for w in phi.words() {
        let n = w.len();
        let mut rest = Q::zero();
        for (blocks, weight) in moment_weights(kind, n)?.iter() {
            if blocks.len() == 1 {
                continue;
            }
            rest += weight * out.partition_product(&w, blocks)?;
        }
        // the one-block term carries weight 1 in every kind
        out.insert(w.clone(), phi.get(&w)? - rest)?;
    }
    Ok(out)
}
