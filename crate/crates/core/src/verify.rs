//! Cross-checks of every module's identities up to a given degree.
//!
//! The report holds no timings, so it is a pure function of
//! `(degree, seed)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf::{
    antipode, antipode_axiom_sides, bar_monomials, coproduct, coproduct_monomial, counit_element,
    forest_coproduct_terms, half_coproduct_left, half_coproduct_right, iterated_reduced_coproduct,
    project, reduced_coproduct, schroder_iterated_terms, sym_antipode, sym_antipode_takeuchi,
    AntipodeMethod, BarMonomial, TensorElement, Word,
};
use crate::ncprob::{
    constant_one, conv_exp, conv_inverse, conv_log, cumulants_from_moments, moments_from_cumulants,
    semicircle, wick, CumulantFunctional, CumulantKind, Functional, InverseMethod, WickMethod,
    WordTable,
};
use crate::partitions::{
    count_prime_trees_for_ncp, count_trees_for_ncp, enum_interval, enum_monotone, enum_nc,
    moebius_nc, tree_to_ncp, NcPartition,
};
use crate::poset::ForestPoset;
use crate::rational::Q;
use crate::trees::{enum_boolean, enum_prime, enum_schroder, enum_schroder_by_k};

/// Largest degree `verify` accepts.
pub const VERIFY_DEGREE_CAP: usize = 7;

/// Failures kept per check in the report.
const MAX_REPORTED: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failed: usize,
    pub examples: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub degree: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "passed": c.passed(),
                    "cases": c.cases,
                    "failed": c.failed,
                    "examples": c.examples,
                })
            })
            .collect();
        json!({
            "degree": self.degree,
            "seed": self.seed,
            "passed": self.passed(),
            "checks": checks,
        })
    }
}

/// Collects the outcome of one check; errors count as failures.
struct Tally {
    cases: usize,
    failed: usize,
    examples: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failed: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, label: impl FnOnce() -> String, outcome: Result<bool>) {
        self.cases += 1;
        let note = match outcome {
            Ok(true) => return,
            Ok(false) => label(),
            Err(e) => format!("{}: {e}", label()),
        };
        self.failed += 1;
        if self.examples.len() < MAX_REPORTED {
            self.examples.push(note);
        }
    }

    fn finish(self, name: &'static str) -> CheckResult {
        CheckResult {
            name,
            cases: self.cases,
            failed: self.failed,
            examples: self.examples,
        }
    }
}

/// Runs every suite for degrees `1..=degree`. Random inputs are drawn from
/// ChaCha8 seeded with `seed`.
pub fn run(degree: usize, seed: u64) -> Result<VerifyReport> {
    if degree == 0 || degree > VERIFY_DEGREE_CAP {
        return Err(Error::SizeLimit {
            what: "verify degree",
            value: degree,
            cap: VERIFY_DEGREE_CAP,
        });
    }
    let ctx = Context::new(degree, seed)?;
    let suites: [Suite; 26] = [
        ("trees.count", trees_count),
        ("trees.by-k", trees_by_k),
        ("trees.prime-boolean", trees_prime_boolean),
        ("trees.ascent-free", trees_ascent_free),
        ("poset.linearizations", poset_linearizations),
        ("partitions.surjective", partitions_surjective),
        ("partitions.boolean-bijection", partitions_boolean),
        ("partitions.moebius-counts", partitions_moebius_counts),
        ("partitions.moebius-defining", partitions_moebius_defining),
        ("partitions.kreweras", partitions_kreweras),
        ("partitions.monotone", partitions_monotone),
        ("hopf.coassociativity", hopf_coassociativity),
        ("hopf.half-split", hopf_half_split),
        ("hopf.antipode-agreement", hopf_antipode_agreement),
        ("hopf.antipode-axiom", hopf_antipode_axiom),
        ("hopf.antihomomorphism", hopf_antihomomorphism),
        ("hopf.iterated-coproduct", hopf_iterated),
        ("hopf.forest-coproduct", hopf_forest),
        ("hopf.cancellation", hopf_cancellation),
        ("hopf.symmetric", hopf_symmetric),
        ("ncprob.shuffle", ncprob_shuffle),
        ("ncprob.exp-log", ncprob_exp_log),
        ("ncprob.cumulants", ncprob_cumulants),
        ("ncprob.round-trip", ncprob_round_trip),
        ("ncprob.inverse", ncprob_inverse),
        ("ncprob.wick", ncprob_wick),
    ];
    let mut checks: Vec<CheckResult> = suites
        .iter()
        .map(|(name, f)| f(&ctx).finish(name))
        .collect();
    checks.push(ncprob_fixtures(&ctx).finish("ncprob.fixtures"));
    Ok(VerifyReport {
        degree,
        seed,
        checks,
    })
}

type Suite = (&'static str, fn(&Context) -> Tally);

struct Context {
    degree: usize,
    /// Standard words `a1...an` plus seeded words with repeated letters.
    words: Vec<Word>,
    /// Bar monomials over two letters, sampled once there are too many.
    monomials: Vec<BarMonomial>,
    tables: Vec<WordTable>,
}

const TABLES: u64 = 3;
const MONOMIALS_PER_DEGREE: usize = 96;

impl Context {
    fn new(degree: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut words = Vec::new();
        for n in 1..=degree {
            words.push(Word::standard(n)?);
            if n > 1 {
                let letters = (0..n).map(|_| rng.gen_range(1..=2)).collect();
                words.push(Word::new(letters)?);
            }
        }
        let mut monomials = Vec::new();
        for d in 1..=degree {
            let all = bar_monomials(d, &[1, 2]);
            if all.len() <= MONOMIALS_PER_DEGREE {
                monomials.extend(all);
            } else {
                for _ in 0..MONOMIALS_PER_DEGREE {
                    monomials.push(all[rng.gen_range(0..all.len())].clone());
                }
            }
        }
        let tables = (0..TABLES)
            .map(|i| WordTable::random(2, degree, rng.gen::<u64>().wrapping_add(i)))
            .collect::<Result<_>>()?;
        Ok(Context {
            degree,
            words,
            monomials,
            tables,
        })
    }
}

fn schroder_dp(max_leaves: usize) -> Vec<BigInt> {
    // f[m]: trees with m leaves; g[m]: nonempty sequences of trees
    let mut f = vec![BigInt::zero(); max_leaves + 1];
    let mut g = vec![BigInt::zero(); max_leaves + 1];
    for m in 1..=max_leaves {
        f[m] = if m == 1 {
            BigInt::one()
        } else {
            (1..m).map(|a| &f[a] * &g[m - a]).sum()
        };
        g[m] = &f[m] + (1..m).map(|a| &f[a] * &g[m - a]).sum::<BigInt>();
    }
    f
}

fn catalan(n: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..n {
        c = c * (2 * (2 * i + 1)) / (i + 2);
    }
    c
}

fn trees_count(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    let dp = schroder_dp(ctx.degree + 1);
    for n in 0..=ctx.degree {
        t.record(
            || format!("|Sch({n})|"),
            enum_schroder(n).map(|v| BigInt::from(v.len()) == dp[n + 1]),
        );
    }
    t
}

fn trees_by_k(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for n in 1..=ctx.degree {
        t.record(
            || format!("sum over k of |Sch_k({n})|"),
            (|| {
                let total: usize = (1..=n)
                    .map(|k| enum_schroder_by_k(n, k).map(|v| v.len()))
                    .sum::<Result<usize>>()?;
                Ok(total == enum_schroder(n)?.len())
            })(),
        );
        t.record(
            || format!("|Sch_{n}({n})| = Catalan"),
            enum_schroder_by_k(n, n).map(|v| BigInt::from(v.len()) == catalan(n)),
        );
    }
    t
}

fn trees_prime_boolean(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    t.record(|| "|PSch(1)|".into(), enum_prime(1).map(|v| v.len() == 1));
    for n in 2..=ctx.degree {
        t.record(
            || format!("|PSch({n})|"),
            (|| Ok(enum_prime(n)?.len() == 2 * enum_schroder(n - 1)?.len()))(),
        );
    }
    for n in 1..=ctx.degree {
        t.record(
            || format!("|BSch({n})|"),
            enum_boolean(n).map(|v| v.len() == 1 << (n - 1)),
        );
    }
    t
}

fn trees_ascent_free(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for n in 1..=ctx.degree {
        for tree in enum_schroder(n).unwrap_or_default() {
            t.record(
                || format!("{tree}"),
                (|| {
                    let sk = tree.skeleton();
                    let free: Vec<_> = sk
                        .k_linearizations(sk.len())?
                        .into_iter()
                        .filter(|f| tree.ascent_count(f) == 0)
                        .collect();
                    Ok(free == vec![tree.ascent_free_linearization()])
                })(),
            );
        }
    }
    t
}

fn poset_linearizations(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for m in 1..=ctx.degree {
        t.record(
            || format!("chain({m})! = {m}!"),
            Ok(ForestPoset::chain(m).factorial() == (1..=m).map(BigInt::from).product::<BigInt>()),
        );
    }
    for n in 1..=ctx.degree {
        for tree in enum_schroder(n).unwrap_or_default() {
            let sk = tree.skeleton();
            t.record(
                || format!("k bounds for {tree}"),
                (|| {
                    for k in 0..=sk.len() + 1 {
                        let c = sk.count_k_linearizations(k)?;
                        let outside = k < sk.height() + 1 || k > sk.len();
                        if outside != (c == 0) || c != sk.k_linearizations(k)?.len() as u128 {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                })(),
            );
        }
    }
    t
}

fn partitions_surjective(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for n in 1..=ctx.degree {
        t.record(
            || format!("tree_to_ncp onto NC({n})"),
            (|| {
                let mut image = enum_schroder(n)?
                    .iter()
                    .map(tree_to_ncp)
                    .collect::<Result<Vec<_>>>()?;
                image.sort();
                image.dedup();
                Ok(image == enum_nc(n)?)
            })(),
        );
    }
    t
}

fn partitions_boolean(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for n in 1..=ctx.degree {
        t.record(
            || format!("boolean trees onto NCInt({n})"),
            (|| {
                let mut image = enum_boolean(n)?
                    .iter()
                    .map(tree_to_ncp)
                    .collect::<Result<Vec<_>>>()?;
                image.sort();
                let len = image.len();
                image.dedup();
                Ok(len == image.len() && image == enum_interval(n)?)
            })(),
        );
    }
    t
}

fn partitions_moebius_counts(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for n in 1..=ctx.degree {
        for p in enum_nc(n).unwrap_or_default() {
            t.record(
                || format!("{p}"),
                (|| {
                    let all = moebius_nc(&p.hat_extension(), &NcPartition::one(n + 1))?;
                    let prime = moebius_nc(&p, &NcPartition::one(n))?;
                    Ok(
                        BigInt::from(count_trees_for_ncp(&p)?) == all.magnitude().clone().into()
                            && BigInt::from(count_prime_trees_for_ncp(&p)?)
                                == prime.magnitude().clone().into(),
                    )
                })(),
            );
        }
    }
    t
}

fn partitions_moebius_defining(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for n in 1..=ctx.degree.min(6) {
        let all = enum_nc(n).unwrap_or_default();
        for s in &all {
            for p in all.iter().filter(|p| p.refines(s)) {
                t.record(
                    || format!("{p} <= {s}"),
                    (|| {
                        let mut sum = BigInt::zero();
                        for r in all.iter().filter(|r| p.refines(r) && r.refines(s)) {
                            sum += moebius_nc(p, r)?;
                        }
                        Ok(sum
                            == if p == s {
                                BigInt::one()
                            } else {
                                BigInt::zero()
                            })
                    })(),
                );
            }
        }
    }
    t
}

fn partitions_kreweras(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for n in 1..=ctx.degree {
        t.record(
            || format!("Möb(0_{n}, 1_{n})"),
            moebius_nc(&NcPartition::zero(n), &NcPartition::one(n)).map(|m| {
                let c = catalan(n - 1);
                m == if n % 2 == 1 { c } else { -c }
            }),
        );
    }
    t
}

fn partitions_monotone(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for n in 1..=ctx.degree.min(6) {
        t.record(
            || format!("|M({n})|"),
            (|| {
                let mut expected = 0u128;
                for p in enum_nc(n)? {
                    expected += p
                        .nesting_forest()
                        .to_poset()
                        .count_k_linearizations(p.block_count())?;
                }
                Ok(enum_monotone(n)?.len() as u128 == expected)
            })(),
        );
    }
    t
}

fn hopf_coassociativity(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for m in &ctx.monomials {
        t.record(
            || format!("{m}"),
            (|| {
                let dx = coproduct(&TensorElement::monomial(m.clone()))?;
                let left = dx.expand_slot(0, 2, |m| Ok(coproduct_monomial(m)))?;
                let right = dx.expand_slot(1, 2, |m| Ok(coproduct_monomial(m)))?;
                Ok(left == right && dx.degrees() == vec![m.degree()])
            })(),
        );
    }
    t
}

fn hopf_half_split(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for m in &ctx.monomials {
        t.record(
            || format!("{m}"),
            (|| {
                let x = TensorElement::monomial(m.clone());
                let halves = half_coproduct_left(&x)?.add(&half_coproduct_right(&x)?)?;
                Ok(halves == coproduct(&x)?)
            })(),
        );
    }
    t
}

fn hopf_antipode_agreement(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for w in &ctx.words {
        t.record(
            || format!("{w}"),
            (|| {
                let x = TensorElement::word(w.clone());
                let reference = antipode(&x, AntipodeMethod::Schroder)?;
                for m in &AntipodeMethod::ALL[1..] {
                    if antipode(&x, *m)? != reference {
                        return Ok(false);
                    }
                }
                Ok(reference.degrees() == vec![w.len()])
            })(),
        );
    }
    t
}

fn hopf_antipode_axiom(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    let unit = std::iter::once(BarMonomial::unit());
    for m in unit.chain(ctx.monomials.iter().cloned()) {
        t.record(
            || format!("{m}"),
            (|| {
                let x = TensorElement::monomial(m.clone());
                let (l, r) = antipode_axiom_sides(&x, AntipodeMethod::Schroder)?;
                let e = counit_element(&x);
                Ok(l == e && r == e)
            })(),
        );
    }
    t
}

fn hopf_antihomomorphism(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for m in ctx.monomials.iter().filter(|m| m.words().len() > 1) {
        t.record(
            || format!("{m}"),
            (|| {
                let x = TensorElement::monomial(m.clone());
                Ok(antipode(&x, AntipodeMethod::Schroder)?
                    == antipode(&x, AntipodeMethod::Takeuchi)?)
            })(),
        );
    }
    t
}

fn hopf_iterated(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for w in &ctx.words {
        for k in 1..=w.len() {
            t.record(
                || format!("{w}, k = {k}"),
                (|| {
                    let x = TensorElement::word(w.clone());
                    Ok(schroder_iterated_terms(w, k)? == iterated_reduced_coproduct(&x, k)?)
                })(),
            );
        }
    }
    t
}

fn hopf_forest(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for m in &ctx.monomials {
        t.record(
            || format!("{m}"),
            (|| {
                let x = TensorElement::monomial(m.clone());
                Ok(forest_coproduct_terms(m)? == reduced_coproduct(&x)?)
            })(),
        );
    }
    t
}

fn hopf_cancellation(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for n in 1..=ctx.degree {
        for tree in enum_schroder(n).unwrap_or_default() {
            t.record(
                || format!("{tree}"),
                (|| {
                    let sk = tree.skeleton();
                    let i = sk.len();
                    let mut sums: HashMap<Vec<usize>, i64> = HashMap::new();
                    for k in 1..=i {
                        let s = if k % 2 == 0 { 1 } else { -1 };
                        for f in sk.k_linearizations(k)? {
                            *sums.entry(f.refine().levels().to_vec()).or_default() += s;
                        }
                    }
                    let free = tree.ascent_free_linearization();
                    let top = if i % 2 == 0 { 1 } else { -1 };
                    for g in sk.k_linearizations(i)? {
                        let got = sums.get(g.levels()).copied().unwrap_or(0);
                        if got != if g == free { top } else { 0 } {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                })(),
            );
        }
    }
    t
}

fn hopf_symmetric(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for w in &ctx.words {
        t.record(
            || format!("{w}"),
            (|| {
                let s = sym_antipode(w)?;
                let projected = project(&antipode(
                    &TensorElement::word(w.clone()),
                    AntipodeMethod::Schroder,
                )?);
                Ok(s == sym_antipode_takeuchi(w)? && s == projected)
            })(),
        );
    }
    t
}

fn eval_all(ctx: &Context, a: &Functional, b: &Functional) -> Result<bool> {
    for m in &ctx.monomials {
        if a.eval(m)? != b.eval(m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ncprob_shuffle(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    let d = ctx.degree;
    for (i, table) in ctx.tables.iter().enumerate() {
        let f = Functional::character(table).sub(&Functional::counit());
        let g = Functional::infinitesimal(&ctx.tables[(i + 1) % ctx.tables.len()]);
        let h = Functional::character(&ctx.tables[(i + 2) % ctx.tables.len()]).capped(d);
        let identities = [
            (
                "(f≺g)≺h = f≺(g*h)",
                f.half_shuffle_left(&g).half_shuffle_left(&h),
                f.half_shuffle_left(&g.convolve(&h)),
            ),
            (
                "(f≻g)≺h = f≻(g≺h)",
                f.half_shuffle_right(&g).half_shuffle_left(&h),
                f.half_shuffle_right(&g.half_shuffle_left(&h)),
            ),
            (
                "(f*g)≻h = f≻(g≻h)",
                f.convolve(&g).half_shuffle_right(&h),
                f.half_shuffle_right(&g.half_shuffle_right(&h)),
            ),
            (
                "f≺g + f≻g = f*g",
                f.half_shuffle_left(&g).add(&f.half_shuffle_right(&g)),
                f.convolve(&g),
            ),
        ];
        for (name, a, b) in identities {
            t.record(|| format!("table {i}: {name}"), eval_all(ctx, &a, &b));
        }
    }
    t
}

fn ncprob_exp_log(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    let d = ctx.degree;
    for (i, table) in ctx.tables.iter().enumerate() {
        let alpha = Functional::infinitesimal(table);
        t.record(
            || format!("table {i}: log(exp(α)) = α"),
            eval_all(ctx, &conv_log(&conv_exp(&alpha, d), d), &alpha),
        );
    }
    t
}

fn ncprob_cumulants(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for (i, phi) in ctx.tables.iter().enumerate() {
        for kind in CumulantKind::ALL {
            let methods = kind.methods();
            let reference = cumulants_from_moments(kind, phi, methods[0]);
            for &m in &methods[1..] {
                t.record(
                    || format!("table {i}: {kind} {} vs {m}", methods[0]),
                    (|| {
                        Ok(cumulants_from_moments(kind, phi, m)?
                            == *reference.as_ref().map_err(Clone::clone)?)
                    })(),
                );
            }
        }
    }
    t
}

fn ncprob_round_trip(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for (i, table) in ctx.tables.iter().enumerate() {
        for kind in CumulantKind::ALL {
            t.record(
                || format!("table {i}: {kind}"),
                (|| {
                    let c = CumulantFunctional {
                        kind,
                        table: table.clone(),
                    };
                    let back = cumulants_from_moments(
                        kind,
                        &moments_from_cumulants(&c)?,
                        kind.default_method(),
                    )?;
                    Ok(back == c)
                })(),
            );
        }
    }
    t
}

fn ncprob_inverse(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for (i, phi) in ctx.tables.iter().enumerate() {
        t.record(
            || format!("table {i}"),
            (|| {
                let reference = conv_inverse(phi, InverseMethod::Antipode)?;
                for m in &InverseMethod::ALL[1..] {
                    if conv_inverse(phi, *m)? != reference {
                        return Ok(false);
                    }
                }
                let product =
                    Functional::character(phi).convolve(&Functional::character(&reference));
                eval_all(ctx, &product, &Functional::counit())
            })(),
        );
    }
    t
}

fn ncprob_wick(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    for (i, phi) in ctx.tables.iter().enumerate() {
        let big_phi = Functional::character(phi);
        let two_letters = ctx
            .words
            .iter()
            .filter(|w| w.letters().iter().all(|&a| a <= 2));
        for w in two_letters {
            t.record(
                || format!("table {i}: {w}"),
                (|| {
                    let reference = wick(w, phi, WickMethod::Coproduct)?;
                    for m in &WickMethod::ALL[1..] {
                        if wick(w, phi, *m)? != reference {
                            return Ok(false);
                        }
                    }
                    Ok(big_phi.eval_element(&reference)?.is_zero())
                })(),
            );
        }
    }
    t
}

fn ncprob_fixtures(ctx: &Context) -> Tally {
    let mut t = Tally::new();
    let d = ctx.degree;
    t.record(
        || "semicircle free cumulants".into(),
        (|| {
            let k = cumulants_from_moments(
                CumulantKind::Free,
                &semicircle(d)?,
                CumulantKind::Free.default_method(),
            )?;
            Ok(k.table
                .values()
                .iter()
                .all(|(w, v)| *v == if w.len() == 2 { Q::one() } else { Q::zero() }))
        })(),
    );
    t.record(
        || "constant-one boolean cumulants".into(),
        (|| {
            let b = cumulants_from_moments(
                CumulantKind::Boolean,
                &constant_one(2, d)?,
                CumulantKind::Boolean.default_method(),
            )?;
            Ok(b.table
                .values()
                .iter()
                .all(|(w, v)| *v == if w.len() == 1 { Q::one() } else { Q::zero() }))
        })(),
    );
    t
}
