//! Linear functionals on the double tensor Hopf algebra, evaluated lazily
//! with per-node memoization.
//!
//! Products dualize the coproduct (`*`) and its halves (`≺`, `≻`). The half
//! products are defined on the augmentation ideal and vanish on the unit.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf::{
    antipode_schroder_word, coproduct_monomial, half_coproduct_left, half_coproduct_right,
    BarMonomial, TensorElement, Word,
};
use crate::ncprob::table::WordTable;
use crate::rational::{q, sign, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    Conv,
    Left,
    Right,
}

type Terms = Arc<Vec<(BarMonomial, BarMonomial, Q)>>;

/// Coproduct terms of a monomial, shared across all functionals.
fn coproduct_terms(m: &BarMonomial, op: Op) -> Terms {
    static CACHE: OnceLock<Mutex<HashMap<(BarMonomial, Op), Terms>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(m.clone(), op)) {
        return t.clone();
    }
    let x = TensorElement::monomial(m.clone());
    let image = match op {
        Op::Conv => coproduct_monomial(m),
        Op::Left => half_coproduct_left(&x).expect("rank 1"),
        Op::Right => half_coproduct_right(&x).expect("rank 1"),
    };
    let terms: Terms = Arc::new(
        image
            .terms()
            .map(|(k, c)| (k[0].clone(), k[1].clone(), c.clone()))
            .collect(),
    );
    cache.lock().unwrap().insert((m.clone(), op), terms.clone());
    terms
}

/// Schröder antipode of a word, shared across all functionals.
fn word_antipode(w: &Word) -> Result<Arc<TensorElement>> {
    static CACHE: OnceLock<Mutex<HashMap<Word, Arc<TensorElement>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(w) {
        return Ok(s.clone());
    }
    let s = Arc::new(antipode_schroder_word(w)?);
    cache.lock().unwrap().insert(w.clone(), s.clone());
    Ok(s)
}

enum Expr {
    Counit,
    Character(Arc<WordTable>),
    Infinitesimal(Arc<WordTable>),
    Combination(Vec<(Q, Functional)>),
    Product(Op, Functional, Functional),
    AfterAntipode(Functional),
    Capped(usize, Functional),
}

struct Node {
    expr: Expr,
    memo: Mutex<HashMap<BarMonomial, Q>>,
}

/// A linear functional on `T(T+(V))`.
#[derive(Clone)]
pub struct Functional(Arc<Node>);

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &self.0.expr {
            Expr::Counit => "Counit",
            Expr::Character(_) => "Character",
            Expr::Infinitesimal(_) => "Infinitesimal",
            Expr::Combination(_) => "Combination",
            Expr::Product(..) => "Product",
            Expr::AfterAntipode(_) => "AfterAntipode",
            Expr::Capped(..) => "Capped",
        };
        write!(f, "Functional::{name}")
    }
}

impl Functional {
    fn wrap(expr: Expr) -> Self {
        Functional(Arc::new(Node {
            expr,
            memo: Mutex::new(HashMap::new()),
        }))
    }

    /// `ε`: 1 on the unit, 0 elsewhere.
    pub fn counit() -> Self {
        Self::wrap(Expr::Counit)
    }

    /// Multiplicative extension of the word values, 1 on the unit.
    pub fn character(table: &WordTable) -> Self {
        Self::wrap(Expr::Character(Arc::new(table.clone())))
    }

    /// The word values, 0 on the unit and on bar products.
    pub fn infinitesimal(table: &WordTable) -> Self {
        Self::wrap(Expr::Infinitesimal(Arc::new(table.clone())))
    }

    pub fn combination(parts: Vec<(Q, Functional)>) -> Self {
        Self::wrap(Expr::Combination(parts))
    }

    pub fn add(&self, other: &Functional) -> Self {
        Self::combination(vec![(Q::one(), self.clone()), (Q::one(), other.clone())])
    }

    pub fn sub(&self, other: &Functional) -> Self {
        Self::combination(vec![(Q::one(), self.clone()), (-Q::one(), other.clone())])
    }

    pub fn scale(&self, c: Q) -> Self {
        Self::combination(vec![(c, self.clone())])
    }

    pub fn neg(&self) -> Self {
        self.scale(-Q::one())
    }

    /// `f * g = m ∘ (f ⊗ g) ∘ Δ`.
    pub fn convolve(&self, other: &Functional) -> Self {
        Self::wrap(Expr::Product(Op::Conv, self.clone(), other.clone()))
    }

    /// `f ≺ g = m ∘ (f ⊗ g) ∘ Δ≺`.
    pub fn half_shuffle_left(&self, other: &Functional) -> Self {
        Self::wrap(Expr::Product(Op::Left, self.clone(), other.clone()))
    }

    /// `f ≻ g = m ∘ (f ⊗ g) ∘ Δ≻`.
    pub fn half_shuffle_right(&self, other: &Functional) -> Self {
        Self::wrap(Expr::Product(Op::Right, self.clone(), other.clone()))
    }

    /// `f ∘ S`, with the Schröder antipode.
    pub fn after_antipode(&self) -> Self {
        Self::wrap(Expr::AfterAntipode(self.clone()))
    }

    /// Same values, but evaluation above `max_degree` is an error.
    pub fn capped(&self, max_degree: usize) -> Self {
        Self::wrap(Expr::Capped(max_degree, self.clone()))
    }

    pub fn eval(&self, m: &BarMonomial) -> Result<Q> {
        match &self.0.expr {
            Expr::Counit => Ok(if m.is_unit() { Q::one() } else { Q::zero() }),
            Expr::Character(t) => {
                let mut acc = Q::one();
                for w in m.words() {
                    acc *= t.get(w)?;
                }
                Ok(acc)
            }
            Expr::Infinitesimal(t) => match m.words() {
                [w] => t.get(w),
                _ => Ok(Q::zero()),
            },
            Expr::Combination(parts) => {
                let mut acc = Q::zero();
                for (c, f) in parts {
                    acc += c * f.eval(m)?;
                }
                Ok(acc)
            }
            Expr::Capped(cap, f) => {
                if m.degree() > *cap {
                    return Err(Error::DegreeOverflow {
                        degree: m.degree(),
                        max: *cap,
                    });
                }
                f.eval(m)
            }
            Expr::Product(..) | Expr::AfterAntipode(_) => {
                if let Some(v) = self.0.memo.lock().unwrap().get(m) {
                    return Ok(v.clone());
                }
                let v = self.eval_uncached(m)?;
                self.0.memo.lock().unwrap().insert(m.clone(), v.clone());
                Ok(v)
            }
        }
    }

    fn eval_uncached(&self, m: &BarMonomial) -> Result<Q> {
        match &self.0.expr {
            Expr::Product(op, f, g) => {
                let mut acc = Q::zero();
                for (l, r, c) in coproduct_terms(m, *op).iter() {
                    let fl = f.eval(l)?;
                    if fl.is_zero() {
                        continue;
                    }
                    acc += c * fl * g.eval(r)?;
                }
                Ok(acc)
            }
            Expr::AfterAntipode(f) => {
                // S is an antihomomorphism
                let mut image = TensorElement::unit(1);
                for w in m.words().iter().rev() {
                    image = image.product(&*word_antipode(w)?)?;
                }
                self_eval_element(f, &image)
            }
            _ => unreachable!("only products and antipode pullbacks are memoized"),
        }
    }

    /// Evaluation on a rank-1 element, linearly.
    pub fn eval_element(&self, x: &TensorElement) -> Result<Q> {
        self_eval_element(self, x)
    }

    pub fn eval_word(&self, w: &Word) -> Result<Q> {
        self.eval(&BarMonomial::word(w.clone()))
    }

    /// Values on every word of the template's alphabet and degree range.
    pub fn to_table(&self, template: &WordTable) -> Result<WordTable> {
        template.map_words(|w| self.eval_word(w))
    }
}

fn self_eval_element(f: &Functional, x: &TensorElement) -> Result<Q> {
    if x.rank() != 1 {
        return Err(Error::RankMismatch {
            left: x.rank(),
            right: 1,
        });
    }
    let mut acc = Q::zero();
    for (k, c) in x.terms() {
        acc += c * f.eval(&k[0])?;
    }
    Ok(acc)
}

/// `α^{*n}`, with `α^{*0} = ε`.
pub fn conv_pow(alpha: &Functional, n: usize) -> Functional {
    (0..n).fold(Functional::counit(), |acc, _| acc.convolve(alpha))
}

/// `exp*(α) = Σ α^{*n}/n!`, exact up to `max_degree`.
pub fn conv_exp(alpha: &Functional, max_degree: usize) -> Functional {
    let mut parts = Vec::new();
    let mut power = Functional::counit();
    let mut fact = q(1);
    for n in 0..=max_degree {
        if n > 0 {
            power = power.convolve(alpha);
            fact *= q(n as i64);
        }
        parts.push((Q::one() / fact.clone(), power.clone()));
    }
    Functional::combination(parts).capped(max_degree)
}

/// `log*(Φ) = Σ_{k≥1} (-1)^{k-1}/k (Φ - ε)^{*k}`, exact up to `max_degree`.
pub fn conv_log(phi: &Functional, max_degree: usize) -> Functional {
    let centered = phi.sub(&Functional::counit());
    let mut parts = Vec::new();
    let mut power = Functional::counit();
    for k in 1..=max_degree {
        power = power.convolve(&centered);
        parts.push((sign(k - 1) / q(k as i64), power.clone()));
    }
    Functional::combination(parts).capped(max_degree)
}

/// `E≺(α) = Σ α^{≺n}` with `α^{≺(n+1)} = α ≺ α^{≺n}`.
pub fn exp_left(alpha: &Functional, max_degree: usize) -> Functional {
    let mut parts = vec![(Q::one(), Functional::counit())];
    let mut power = Functional::counit();
    for _ in 1..=max_degree {
        power = alpha.half_shuffle_left(&power);
        parts.push((Q::one(), power.clone()));
    }
    Functional::combination(parts).capped(max_degree)
}

/// `E≻(α) = Σ α^{≻n}` with `α^{≻(n+1)} = α^{≻n} ≻ α`.
pub fn exp_right(alpha: &Functional, max_degree: usize) -> Functional {
    let mut parts = vec![(Q::one(), Functional::counit())];
    let mut power = Functional::counit();
    for _ in 1..=max_degree {
        power = power.half_shuffle_right(alpha);
        parts.push((Q::one(), power.clone()));
    }
    Functional::combination(parts).capped(max_degree)
}

/// `Σ_k (-1)^k (Φ - ε)^{*k}`, exact up to `max_degree`.
pub fn geometric_inverse(phi: &Functional, max_degree: usize) -> Functional {
    let centered = phi.sub(&Functional::counit());
    let mut parts = vec![(Q::one(), Functional::counit())];
    let mut power = Functional::counit();
    for k in 1..=max_degree {
        power = power.convolve(&centered);
        parts.push((sign(k), power.clone()));
    }
    Functional::combination(parts).capped(max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::coproduct_monomial;
    use crate::ncprob::table::all_words;

    fn bm(s: &str) -> BarMonomial {
        s.parse().unwrap()
    }

    /// All bar monomials of degree 1..=d over two letters.
    fn monomials(d: usize) -> Vec<BarMonomial> {
        let words = all_words(2, d);
        let mut out: Vec<BarMonomial> = words.iter().cloned().map(BarMonomial::word).collect();
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for m in &frontier {
                for w in &words {
                    if m.degree() + w.len() <= d {
                        next.push(m.concat(&BarMonomial::word(w.clone())));
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    fn table(seed: u64) -> WordTable {
        WordTable::random(2, 4, seed).unwrap()
    }

    #[test]
    fn character_values() {
        let t = table(1);
        let phi = Functional::character(&t);
        assert_eq!(phi.eval(&BarMonomial::unit()).unwrap(), q(1));
        let a1 = t.get(&"1".parse().unwrap()).unwrap();
        let a2 = t.get(&"2".parse().unwrap()).unwrap();
        assert_eq!(phi.eval(&bm("1|2")).unwrap(), a1 * a2);
        assert_eq!(
            phi.eval(&bm("1 2")).unwrap(),
            t.get(&"1 2".parse().unwrap()).unwrap()
        );
        let kappa = Functional::infinitesimal(&t);
        assert_eq!(kappa.eval(&bm("1|2")).unwrap(), q(0));
        assert_eq!(kappa.eval(&BarMonomial::unit()).unwrap(), q(0));
    }

    #[test]
    fn unit_laws_and_split() {
        let f = Functional::infinitesimal(&table(2)).add(&Functional::character(&table(3)));
        let g = Functional::character(&table(4));
        let eps = Functional::counit();
        for m in monomials(4) {
            assert_eq!(eps.convolve(&f).eval(&m).unwrap(), f.eval(&m).unwrap());
            assert_eq!(f.convolve(&eps).eval(&m).unwrap(), f.eval(&m).unwrap());
            assert_eq!(
                f.half_shuffle_left(&eps).eval(&m).unwrap(),
                f.eval(&m).unwrap()
            );
            assert_eq!(
                eps.half_shuffle_right(&f).eval(&m).unwrap(),
                f.eval(&m).unwrap()
            );
            let split = f.half_shuffle_left(&g).add(&f.half_shuffle_right(&g));
            assert_eq!(split.eval(&m).unwrap(), f.convolve(&g).eval(&m).unwrap());
        }
        assert_eq!(
            f.half_shuffle_left(&g).eval(&BarMonomial::unit()).unwrap(),
            q(0)
        );
    }

    #[test]
    fn shuffle_identities_on_random_functionals() {
        for seed in 0..3 {
            let f = Functional::character(&table(10 + seed)).sub(&Functional::counit());
            let g = Functional::infinitesimal(&table(20 + seed));
            let h = Functional::character(&table(30 + seed));
            let checks = [
                (
                    f.half_shuffle_left(&g).half_shuffle_left(&h),
                    f.half_shuffle_left(&g.convolve(&h)),
                ),
                (
                    f.half_shuffle_right(&g).half_shuffle_left(&h),
                    f.half_shuffle_right(&g.half_shuffle_left(&h)),
                ),
                (
                    f.convolve(&g).half_shuffle_right(&h),
                    f.half_shuffle_right(&g.half_shuffle_right(&h)),
                ),
            ];
            for m in monomials(4) {
                for (a, b) in &checks {
                    assert_eq!(a.eval(&m).unwrap(), b.eval(&m).unwrap(), "{m}");
                }
            }
        }
    }

    #[test]
    fn convolution_matches_coproduct_definition() {
        let f = Functional::character(&table(5));
        let g = Functional::character(&table(6));
        for m in monomials(3) {
            let mut expected = q(0);
            for (k, c) in coproduct_monomial(&m).terms() {
                expected += c * f.eval(&k[0]).unwrap() * g.eval(&k[1]).unwrap();
            }
            assert_eq!(f.convolve(&g).eval(&m).unwrap(), expected);
        }
    }

    #[test]
    fn exponentials_and_logarithm() {
        let alpha = Functional::infinitesimal(&table(7));
        let d = 4;
        let e = conv_exp(&alpha, d);
        let back = conv_log(&e, d);
        let left = exp_left(&alpha, d);
        let right_neg = exp_right(&alpha.neg(), d);
        for m in monomials(d) {
            assert_eq!(back.eval(&m).unwrap(), alpha.eval(&m).unwrap(), "{m}");
            // exponentials of infinitesimal characters are characters
            let product: Q = m.words().iter().map(|w| e.eval_word(w).unwrap()).product();
            assert_eq!(e.eval(&m).unwrap(), product);
            // E≺(α)^{*-1} = E≻(-α)
            let check = left.convolve(&right_neg);
            assert_eq!(check.eval(&m).unwrap(), q(0), "{m}");
        }
        assert!(e.eval(&bm("1 1 1 1 1")).is_err());
    }

    #[test]
    fn inverse_by_series_and_antipode() {
        let phi = Functional::character(&table(8));
        let geo = geometric_inverse(&phi, 4);
        let anti = phi.after_antipode();
        for m in monomials(4) {
            assert_eq!(geo.eval(&m).unwrap(), anti.eval(&m).unwrap(), "{m}");
            assert_eq!(phi.convolve(&anti).eval(&m).unwrap(), q(0));
        }
        assert_eq!(
            phi.convolve(&anti).eval(&BarMonomial::unit()).unwrap(),
            q(1)
        );
    }
}
