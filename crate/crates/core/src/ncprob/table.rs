//! Tables of values on words: moment data, cumulants, fixtures, and their
//! JSON file format.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hopf::Word;
use crate::rational::{format_q, parse_q, q, q_frac, Q};

/// Largest degree accepted for tables.
pub const TABLE_DEGREE_CAP: usize = 10;

/// Values on the words of length `1..=max_degree` over an alphabet whose
/// letter ids are `1..=alphabet.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordTable {
    alphabet: Vec<String>,
    max_degree: usize,
    values: BTreeMap<Word, Q>,
}

/// Moments `φ(w)`; the value on the unit is 1 and is not stored.
pub type MomentFunctional = WordTable;

/// All words of length `1..=max_degree` over `alphabet_size` letters,
/// shortest first, then lexicographic.
pub fn all_words(alphabet_size: usize, max_degree: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for w in &layer {
            for a in 1..=alphabet_size as u32 {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| Word::new(v.clone()).expect("nonempty")));
        layer = next;
    }
    out
}

fn default_alphabet(size: usize) -> Vec<String> {
    (1..=size).map(|i| format!("a{i}")).collect()
}

impl WordTable {
    pub fn new(alphabet: Vec<String>, max_degree: usize) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::Domain("alphabet must not be empty".into()));
        }
        if max_degree > TABLE_DEGREE_CAP {
            return Err(Error::SizeLimit {
                what: "max_degree",
                value: max_degree,
                cap: TABLE_DEGREE_CAP,
            });
        }
        Ok(WordTable {
            alphabet,
            max_degree,
            values: BTreeMap::new(),
        })
    }

    /// Table on every word, filled by `f`.
    pub fn from_fn<F>(alphabet: Vec<String>, max_degree: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&Word) -> Result<Q>,
    {
        let mut t = WordTable::new(alphabet, max_degree)?;
        for w in all_words(t.alphabet.len(), max_degree) {
            let v = f(&w)?;
            t.values.insert(w, v);
        }
        Ok(t)
    }

    /// A table with the same alphabet and degree, filled by `f`.
    pub fn map_words<F>(&self, f: F) -> Result<Self>
    where
        F: FnMut(&Word) -> Result<Q>,
    {
        WordTable::from_fn(self.alphabet.clone(), self.max_degree, f)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn values(&self) -> &BTreeMap<Word, Q> {
        &self.values
    }

    pub fn words(&self) -> Vec<Word> {
        all_words(self.alphabet.len(), self.max_degree)
    }

    pub fn insert(&mut self, w: Word, v: Q) -> Result<()> {
        self.check_word(&w)?;
        self.values.insert(w, v);
        Ok(())
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.len() > self.max_degree {
            return Err(Error::DegreeOverflow {
                degree: w.len(),
                max: self.max_degree,
            });
        }
        if let Some(a) = w
            .letters()
            .iter()
            .find(|&&a| a as usize > self.alphabet.len())
        {
            return Err(Error::Domain(format!(
                "letter {a} is outside the alphabet of size {}",
                self.alphabet.len()
            )));
        }
        Ok(())
    }

    /// Value on a word; a missing entry is an error, never an implicit zero.
    pub fn get(&self, w: &Word) -> Result<Q> {
        self.check_word(w)?;
        self.values
            .get(w)
            .cloned()
            .ok_or_else(|| Error::MissingEntry(word_key(w)))
    }

    /// `∏_B table(w_B)` over the blocks of a partition of the positions.
    pub fn partition_product(&self, w: &Word, blocks: &[Vec<usize>]) -> Result<Q> {
        let mut acc = q(1);
        for b in blocks {
            acc *= self.get(&w.at(b).expect("nonempty block"))?;
        }
        Ok(acc)
    }

    /// The file form; values live under `key` (`moments` or `cumulants`).
    pub fn to_json_with(&self, key: &str, kind: Option<&str>) -> Value {
        let mut values = Map::new();
        for (w, v) in &self.values {
            values.insert(word_key(w), Value::String(format_q(v)));
        }
        let mut obj = Map::new();
        obj.insert("alphabet".into(), json!(self.alphabet));
        obj.insert("max_degree".into(), json!(self.max_degree));
        if let Some(kind) = kind {
            obj.insert("kind".into(), json!(kind));
        }
        obj.insert(key.into(), Value::Object(values));
        Value::Object(obj)
    }

    pub fn to_json(&self) -> Value {
        self.to_json_with("moments", None)
    }

    /// Reads a moment or cumulant file. Values are taken from `moments`, or
    /// from `cumulants` when that key is present.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: String| Error::Format(m);
        let alphabet = v
            .get("alphabet")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array \"alphabet\"".into()))?
            .iter()
            .map(|a| {
                a.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| bad("alphabet entries must be strings".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let max_degree =
            v.get("max_degree")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("missing integer \"max_degree\"".into()))? as usize;
        let values = v
            .get("cumulants")
            .or_else(|| v.get("moments"))
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing object \"moments\"".into()))?;
        let mut t = WordTable::new(alphabet, max_degree)?;
        for (k, val) in values {
            let w: Word = k
                .parse()
                .map_err(|e| bad(format!("bad word key \"{k}\": {e}")))?;
            let s = val
                .as_str()
                .ok_or_else(|| bad(format!("value of \"{k}\" must be a \"p/q\" string")))?;
            t.insert(w, parse_q(s)?)
                .map_err(|e| bad(format!("word \"{k}\": {e}")))?;
        }
        Ok(t)
    }

    /// Small random rationals: numerators in `-5..=5`, denominators in
    /// `1..=3`, drawn from ChaCha8 with the given seed.
    pub fn random(alphabet_size: usize, max_degree: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        WordTable::from_fn(default_alphabet(alphabet_size), max_degree, |_| {
            let n: i64 = rng.gen_range(-5..=5);
            let d: i64 = rng.gen_range(1..=3);
            Ok(q_frac(n, d))
        })
    }
}

/// `1 2 3` for the word a1a2a3.
pub fn word_key(w: &Word) -> String {
    w.letters()
        .iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn catalan(n: usize) -> Q {
    (0..n).fold(q(1), |c, i| c * q(2 * (2 * i as i64 + 1)) / q(i as i64 + 2))
}

/// One variable with semicircle moments: `φ(a^{2k}) = Cat(k)`, odd moments 0.
pub fn semicircle(max_degree: usize) -> Result<MomentFunctional> {
    WordTable::from_fn(default_alphabet(1), max_degree, |w| {
        Ok(if w.len() % 2 == 0 {
            catalan(w.len() / 2)
        } else {
            q(0)
        })
    })
}

/// Every moment equal to 1.
pub fn constant_one(alphabet_size: usize, max_degree: usize) -> Result<MomentFunctional> {
    WordTable::from_fn(default_alphabet(alphabet_size), max_degree, |_| Ok(q(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_lists() {
        assert_eq!(all_words(2, 3).len(), 14);
        assert_eq!(all_words(1, 4).len(), 4);
        assert_eq!(all_words(2, 2)[2].letters(), &[1, 1]);
    }

    #[test]
    fn fixtures() {
        let s = semicircle(6).unwrap();
        let vals: Vec<Q> = s.values().values().cloned().collect();
        assert_eq!(vals, vec![q(0), q(1), q(0), q(2), q(0), q(5)]);
        assert!(constant_one(2, 3)
            .unwrap()
            .values()
            .values()
            .all(|v| *v == q(1)));
    }

    #[test]
    fn lookups_fail_loudly() {
        let mut t = WordTable::new(default_alphabet(2), 2).unwrap();
        t.insert("1".parse().unwrap(), q(3)).unwrap();
        assert_eq!(t.get(&"1".parse().unwrap()).unwrap(), q(3));
        assert_eq!(
            t.get(&"1 2".parse().unwrap()),
            Err(Error::MissingEntry("1 2".into()))
        );
        assert!(matches!(
            t.get(&"1 1 1".parse().unwrap()),
            Err(Error::DegreeOverflow { degree: 3, max: 2 })
        ));
        assert!(t.get(&"3".parse().unwrap()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = WordTable::random(2, 3, 11).unwrap();
        let j = t.to_json();
        assert_eq!(j["alphabet"], json!(["a1", "a2"]));
        assert_eq!(WordTable::from_json(&j).unwrap(), t);
        let c = t.to_json_with("cumulants", Some("free"));
        assert_eq!(c["kind"], json!("free"));
        assert_eq!(WordTable::from_json(&c).unwrap(), t);
        let bad = json!({"alphabet": ["a1"], "max_degree": 1, "moments": {"1": 2}});
        assert!(WordTable::from_json(&bad).is_err());
        let bad_key = json!({"alphabet": ["a1"], "max_degree": 1, "moments": {"2": "1/1"}});
        assert!(WordTable::from_json(&bad_key).is_err());
    }

    #[test]
    fn random_tables_are_seeded() {
        let a = WordTable::random(2, 4, 5).unwrap();
        assert_eq!(a, WordTable::random(2, 4, 5).unwrap());
        assert_ne!(a, WordTable::random(2, 4, 6).unwrap());
        for v in a.values().values() {
            assert!(v.numer().magnitude() <= &5u32.into() && v.denom() <= &3.into());
        }
    }
}
