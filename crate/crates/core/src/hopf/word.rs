//! Words, bar monomials, and position-based restriction.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A nonempty word over positive letter ids. Letters may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Domain("a word must have at least one letter".into()));
        }
        if letters.contains(&0) {
            return Err(Error::Domain("letter ids are positive".into()));
        }
        Ok(Word(letters))
    }

    /// `a1 a2 ... an`.
    pub fn standard(n: usize) -> Result<Self> {
        Word::new((1..=n as u32).collect())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Subword at the given 1-based positions (assumed sorted and in range).
    pub(crate) fn at(&self, positions: &[usize]) -> Option<Word> {
        if positions.is_empty() {
            None
        } else {
            Some(Word(positions.iter().map(|&p| self.0[p - 1]).collect()))
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "a{a}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Letter ids separated by whitespace or commas, e.g. `1 2 3`, or the
    /// display form `a1a2a3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let tokens = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .flat_map(|t| match t.strip_prefix('a') {
                Some(rest) => rest.split('a').collect(),
                None => vec![t],
            });
        for (i, tok) in tokens.enumerate() {
            letters.push(tok.parse::<u32>().map_err(|_| Error::Parse {
                position: i,
                message: format!("invalid letter \"{tok}\""),
            })?);
        }
        Word::new(letters)
    }
}

/// A bar product `w1|...|wm` of nonempty words; the empty product is the
/// unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarMonomial(Vec<Word>);

impl BarMonomial {
    pub fn unit() -> Self {
        BarMonomial(Vec::new())
    }

    pub fn new(words: Vec<Word>) -> Self {
        BarMonomial(words)
    }

    pub fn word(w: Word) -> Self {
        BarMonomial(vec![w])
    }

    pub fn words(&self) -> &[Word] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of letters.
    pub fn degree(&self) -> usize {
        self.0.iter().map(Word::len).sum()
    }

    pub fn concat(&self, other: &BarMonomial) -> BarMonomial {
        let mut words = self.0.clone();
        words.extend(other.0.iter().cloned());
        BarMonomial(words)
    }

    pub fn push(&mut self, w: Word) {
        self.0.push(w);
    }

    pub fn reversed(&self) -> BarMonomial {
        BarMonomial(self.0.iter().rev().cloned().collect())
    }
}

impl From<Word> for BarMonomial {
    fn from(w: Word) -> Self {
        BarMonomial::word(w)
    }
}

impl fmt::Display for BarMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for BarMonomial {
    type Err = Error;

    /// Words separated by `|`, e.g. `1 2|3` or `a1a2|a3`; an empty string
    /// is the unit (whose display `1` would read as the word `a1`).
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(BarMonomial::unit());
        }
        s.split('|')
            .map(str::parse)
            .collect::<Result<Vec<Word>>>()
            .map(BarMonomial)
    }
}

fn normalize(set: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    if let Some(&bad) = v.iter().find(|&&x| x == 0 || x > n) {
        return Err(Error::Domain(format!("index {bad} is outside [{n}]")));
    }
    Ok(v)
}

/// Restriction `w_I` by position; `None` stands for the unit.
pub fn restrict(w: &Word, positions: &[usize]) -> Result<Option<Word>> {
    let p = normalize(positions, w.len())?;
    Ok(w.at(&p))
}

/// Maximal runs of consecutive integers in `J \ I`, by increasing minimum.
pub fn connected_components(i: &[usize], j: &[usize]) -> Result<Vec<Vec<usize>>> {
    if let Some(x) = i.iter().find(|x| !j.contains(x)) {
        return Err(Error::Domain(format!("{x} lies in I but not in J")));
    }
    let mut rest: Vec<usize> = j.iter().copied().filter(|x| !i.contains(x)).collect();
    rest.sort_unstable();
    rest.dedup();
    Ok(runs(&rest))
}

pub(crate) fn runs(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &x in sorted {
        match out.last_mut() {
            Some(run) if *run.last().unwrap() + 1 == x => run.push(x),
            _ => out.push(vec![x]),
        }
    }
    out
}

/// `w^(I,J)`: the bar product of the restrictions of `w` to the components
/// of `J \ I`.
pub fn split(w: &Word, i: &[usize], j: &[usize]) -> Result<BarMonomial> {
    normalize(i, w.len())?;
    let j = normalize(j, w.len())?;
    let comps = connected_components(i, &j)?;
    Ok(BarMonomial(comps.iter().filter_map(|c| w.at(c)).collect()))
}

/// All words of length `n` over `letters`, in lexicographic order.
pub fn words_of_length(n: usize, letters: &[u32]) -> Vec<Word> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |&a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out.into_iter()
        .filter(|w| !w.is_empty())
        .map(Word)
        .collect()
}

/// All bar monomials of total degree `d` over `letters`; degree 0 gives the
/// unit alone.
pub fn bar_monomials(d: usize, letters: &[u32]) -> Vec<BarMonomial> {
    if d == 0 {
        return vec![BarMonomial::unit()];
    }
    let mut out = Vec::new();
    for first in 1..=d {
        let rest = bar_monomials(d - first, letters);
        for w in words_of_length(first, letters) {
            for r in &rest {
                let mut words = vec![w.clone()];
                words.extend(r.words().iter().cloned());
                out.push(BarMonomial(words));
            }
        }
    }
    out
}
