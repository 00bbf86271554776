//! Braid words over the braid group B_n.
//!
//! Words are sequences of signed Artin generators. The text form used
//! everywhere (CLI arguments, CSV fields) is whitespace- or comma-separated
//! nonzero integers: `k` means the generator at index `k`, `-k` its inverse.

use std::fmt;

use crate::error::{Error, Result};

/// Crossing sign of a single generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// One letter of a braid word: the generator index (1-based, in
/// `1..=n-1`) and its sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Self {
        Letter { index, sign }
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, sign: self.sign.flip() }
    }

    /// Signed-integer token form, `±index`.
    pub fn token(self) -> i64 {
        self.index as i64 * self.sign.as_i64()
    }
}

/// The two alternating alphabets: under `PlusOdd` the target letters are
/// the positive odd-index generators and the negative even-index ones;
/// `MinusOdd` is its mirror.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Pattern {
    PlusOdd,
    MinusOdd,
}

impl Pattern {
    pub const BOTH: [Pattern; 2] = [Pattern::PlusOdd, Pattern::MinusOdd];

    pub fn opposite(self) -> Pattern {
        match self {
            Pattern::PlusOdd => Pattern::MinusOdd,
            Pattern::MinusOdd => Pattern::PlusOdd,
        }
    }

    /// The sign this pattern expects at a given generator index.
    pub fn expected_sign(self, index: usize) -> Sign {
        let odd = index % 2 == 1;
        match (self, odd) {
            (Pattern::PlusOdd, true) | (Pattern::MinusOdd, false) => Sign::Pos,
            _ => Sign::Neg,
        }
    }

    pub fn conforms(self, letter: Letter) -> bool {
        letter.sign == self.expected_sign(letter.index)
    }
}

/// Permutation of `{0, .., n-1}` given as the image vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Image of `k` (0-based).
    pub fn image(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.0[k];
            }
        }
        cycles
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// A word in the braid group on `n` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// Build a word, checking every index against the strand count.
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidProfile("strand count must be >= 1".into()));
        }
        for l in &letters {
            if l.index == 0 || l.index >= n {
                return Err(Error::GeneratorOutOfRange { index: l.index, n });
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    /// Parse the token syntax. Without a hint the strand count is inferred
    /// as `1 + max|index|` (1 for the empty word).
    pub fn parse(text: &str, n_hint: Option<usize>) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::MalformedToken(tok.to_string()))?;
            if v == 0 {
                return Err(Error::ZeroGenerator);
            }
            let sign = if v > 0 { Sign::Pos } else { Sign::Neg };
            letters.push(Letter::new(v.unsigned_abs() as usize, sign));
        }
        let n = match n_hint {
            Some(n) => n,
            None => 1 + letters.iter().map(|l| l.index).max().unwrap_or(0),
        };
        Self::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenate two words on the same strand count.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.n, other.n, "strand count mismatch");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { n: self.n, letters }
    }

    /// Underlying permutation of the strands: the strand entering at top
    /// position `k` leaves at bottom position `permutation(k)`. Signs are
    /// irrelevant.
    pub fn permutation(&self) -> Permutation {
        let mut pos: Vec<usize> = (0..self.n).collect();
        for l in &self.letters {
            pos.swap(l.index - 1, l.index);
        }
        // pos[p] = strand occupying position p at the bottom; invert to get
        // the image map strand -> final position.
        let mut image = vec![0; self.n];
        for (p, &strand) in pos.iter().enumerate() {
            image[strand] = p;
        }
        Permutation(image)
    }

    /// Number of components of the trace closure.
    pub fn component_count(&self) -> usize {
        self.permutation().cycle_count()
    }

    /// Sum of letter signs (the writhe of the closure diagram).
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.as_i64()).sum()
    }

    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().map(|l| l.inverse()).collect(),
        }
    }

    /// The pattern under which every letter conforms, if any. The empty
    /// word conforms vacuously and reports `PlusOdd`.
    pub fn alternating_pattern(&self) -> Option<Pattern> {
        Pattern::BOTH
            .into_iter()
            .find(|p| self.letters.iter().all(|&l| p.conforms(l)))
    }

    /// True when the closure diagram is connected as a 4-valent graph,
    /// i.e. every generator index `1..n-1` occurs in the word.
    pub fn is_connected_closure(&self) -> bool {
        let mut used = vec![false; self.n];
        for l in &self.letters {
            used[l.index] = true;
        }
        (1..self.n).all(|i| used[i])
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.letters.iter().map(|l| l.token().to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}
