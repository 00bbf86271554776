//! Band-generator words and Bennequin-surface bookkeeping.
//!
//! A band generator `a_{i,j}` (1 <= i < j <= n) is the conjugate
//! `(s_i s_{i+1} .. s_{j-2}) s_{j-1} (s_i .. s_{j-2})^-1` of a standard
//! generator; it bounds a twisted band joining strands i and j. A word in
//! band generators carries a Bennequin surface whose genus is read off
//! the band count, and conjugation by `delta = s_1 s_2 .. s_{n-1}` shifts
//! every band index cyclically.
//!
//! Band words are written `(i,j)` / `-(i,j)` separated by whitespace,
//! e.g. `"(1,4) (1,4) (1,2) (2,3) (3,4) (1,2) (2,3)"`.

use std::collections::BTreeMap;
use std::fmt;

use crate::braid::{BraidWord, Letter, Sign};
use crate::error::{Error, Result};

/// A signed band generator `a_{i,j}^{sign}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Band {
    pub i: usize,
    pub j: usize,
    pub sign: Sign,
}

impl Band {
    pub fn new(i: usize, j: usize, sign: Sign) -> Self {
        Band { i, j, sign }
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "({},{})", self.i, self.j),
            Sign::Neg => write!(f, "-({},{})", self.i, self.j),
        }
    }
}

/// An ordered word in band generators on `n` strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandWord {
    n: usize,
    bands: Vec<Band>,
}

impl BandWord {
    pub fn new(n: usize, bands: Vec<Band>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidProfile("strand count must be >= 1".into()));
        }
        for b in &bands {
            if b.i == 0 || b.i >= b.j || b.j > n {
                return Err(Error::BandOutOfRange { i: b.i, j: b.j, n });
            }
        }
        Ok(BandWord { n, bands })
    }

    /// Parse the `(i,j)` token syntax; `n` defaults to the largest `j`.
    pub fn parse(text: &str, n_hint: Option<usize>) -> Result<Self> {
        let mut bands = Vec::new();
        for tok in text.split_whitespace() {
            let (sign, body) = match tok.strip_prefix('-') {
                Some(rest) => (Sign::Neg, rest),
                None => (Sign::Pos, tok),
            };
            let inner = body
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::MalformedToken(tok.to_string()))?;
            let (i_str, j_str) = inner
                .split_once(',')
                .ok_or_else(|| Error::MalformedToken(tok.to_string()))?;
            let i: usize = i_str
                .trim()
                .parse()
                .map_err(|_| Error::MalformedToken(tok.to_string()))?;
            let j: usize = j_str
                .trim()
                .parse()
                .map_err(|_| Error::MalformedToken(tok.to_string()))?;
            bands.push(Band::new(i, j, sign));
        }
        let n = match n_hint {
            Some(n) => n,
            None => bands.iter().map(|b| b.j).max().unwrap_or(1),
        };
        Self::new(n, bands)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    /// Expand every band into Artin generators, in order.
    pub fn expand(&self) -> BraidWord {
        let mut word = BraidWord::identity(self.n);
        for b in &self.bands {
            word = word.concat(&expand_band(b.i, b.j, self.n, b.sign).expect("validated band"));
        }
        word
    }
}

impl fmt::Display for BandWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.bands.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// Artin word of the band generator:
/// `(s_i .. s_{j-2}) s_{j-1}^{sign} (s_i .. s_{j-2})^-1`, of length
/// `2(j-i) - 1`.
pub fn expand_band(i: usize, j: usize, n: usize, sign: Sign) -> Result<BraidWord> {
    if i == 0 || i >= j || j > n {
        return Err(Error::BandOutOfRange { i, j, n });
    }
    let mut letters = Vec::with_capacity(2 * (j - i) - 1);
    for k in i..j - 1 {
        letters.push(Letter::new(k, Sign::Pos));
    }
    letters.push(Letter::new(j - 1, sign));
    for k in (i..j - 1).rev() {
        letters.push(Letter::new(k, Sign::Neg));
    }
    BraidWord::new(n, letters)
}

/// Unsigned census of the bands `r_{i,j}` of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandCensus {
    counts: BTreeMap<(usize, usize), usize>,
    total: usize,
}

impl BandCensus {
    pub fn count(&self, i: usize, j: usize) -> usize {
        self.counts.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total band count k = sum of all r_{i,j}.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }
}

pub fn band_census(word: &BandWord) -> BandCensus {
    let mut counts = BTreeMap::new();
    for b in word.bands() {
        *counts.entry((b.i, b.j)).or_insert(0) += 1;
    }
    BandCensus { counts, total: word.len() }
}

/// Genus of the Bennequin surface of a knot-closure band word:
/// `k = 2g - 1 + n`, so `g = (k + 1 - n) / 2`.
pub fn bennequin_genus(word: &BandWord) -> Result<u32> {
    let components = word.expand().component_count();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    let k = word.len();
    let n = word.n();
    if !(k + 1).abs_diff(n).is_multiple_of(2) {
        return Err(Error::GenusParity { bands: k, n });
    }
    Ok(((k + 1 - n) / 2) as u32)
}

/// Conjugation by `delta = s_1 .. s_{n-1}` as index bookkeeping: every
/// band `(i,j)` shifts to `(i+1, j+1)` with indices reduced mod n back
/// into an unordered pair of `{1..n}`.
pub fn delta_conjugate(word: &BandWord) -> BandWord {
    let n = word.n();
    let shift = |x: usize| if x == n { 1 } else { x + 1 };
    let bands = word
        .bands()
        .iter()
        .map(|b| {
            let a = shift(b.i);
            let c = shift(b.j);
            Band::new(a.min(c), a.max(c), b.sign)
        })
        .collect();
    BandWord::new(n, bands).expect("shift preserves validity")
}

/// Result of wrap minimization: the chosen delta-conjugate, its wrap
/// count `r_{1,n}`, and how many shifts were applied.
#[derive(Debug, Clone)]
pub struct WrapChoice {
    pub word: BandWord,
    pub wrap_count: usize,
    pub shift: usize,
}

/// Choose, among the n delta-conjugates of the word, the one minimizing
/// the wrap count `r_{1,n}`; ties break toward the smallest shift.
pub fn minimize_wrap_choice(word: &BandWord) -> WrapChoice {
    let n = word.n();
    let wrap = |w: &BandWord| {
        if n < 2 {
            0
        } else {
            band_census(w).count(1, n)
        }
    };
    let mut best = WrapChoice { word: word.clone(), wrap_count: wrap(word), shift: 0 };
    let mut current = word.clone();
    for s in 1..n {
        current = delta_conjugate(&current);
        let r = wrap(&current);
        if r < best.wrap_count {
            best = WrapChoice { word: current.clone(), wrap_count: r, shift: s };
        }
    }
    best
}

/// [`minimize_wrap_choice`] without the shift bookkeeping.
pub fn minimize_wrap(word: &BandWord) -> (BandWord, usize) {
    let c = minimize_wrap_choice(word);
    (c.word, c.wrap_count)
}
