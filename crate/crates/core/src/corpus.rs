//! Seeded random word generators for test corpora and benchmarks.
//!
//! Generators that feed the Turaev-genus identity restrict themselves to
//! words whose closure diagram is connected (every generator column
//! appears); split closures are valid diagrams but the genus formula does
//! not apply to them.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bennequin::{Band, BandWord};
use crate::braid::{BraidWord, Letter, Pattern, Sign};

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign(rng: &mut CorpusRng) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Uniform word: `len` letters with uniform column and sign.
pub fn random_word(rng: &mut CorpusRng, n: usize, len: usize) -> BraidWord {
    assert!(n >= 2, "need at least one generator");
    let letters = (0..len)
        .map(|_| Letter::new(rng.random_range(1..n), random_sign(rng)))
        .collect();
    BraidWord::new(n, letters).expect("indices in range")
}

/// Random word whose closure diagram is connected. `max_len` must be at
/// least `n - 1`.
pub fn random_connected_word(rng: &mut CorpusRng, n: usize, max_len: usize) -> BraidWord {
    assert!(max_len >= n - 1, "cannot cover every column");
    loop {
        let len = rng.random_range(n - 1..=max_len);
        let word = random_word(rng, n, len);
        if word.is_connected_closure() {
            return word;
        }
    }
}

/// Random alternating word (signs dictated by the pattern) with a
/// connected closure.
pub fn random_alternating_word(
    rng: &mut CorpusRng,
    n: usize,
    max_len: usize,
    pattern: Pattern,
) -> BraidWord {
    assert!(max_len >= n - 1, "cannot cover every column");
    loop {
        let len = rng.random_range(n - 1..=max_len);
        let letters = (0..len)
            .map(|_| {
                let index = rng.random_range(1..n);
                Letter::new(index, pattern.expected_sign(index))
            })
            .collect();
        let word = BraidWord::new(n, letters).expect("indices in range");
        if word.is_connected_closure() {
            return word;
        }
    }
}

/// Uniform band word with `k` bands.
pub fn random_band_word(rng: &mut CorpusRng, n: usize, k: usize) -> BandWord {
    assert!(n >= 2);
    let bands = (0..k)
        .map(|_| {
            let i = rng.random_range(1..n);
            let j = rng.random_range(i + 1..=n);
            Band::new(i, j, random_sign(rng))
        })
        .collect();
    BandWord::new(n, bands).expect("indices in range")
}

/// Random band word whose closure is a knot. The band count is sampled
/// as `n - 1 + 2m` with `m < extra_pairs`, which is the parity a knot
/// closure requires.
pub fn random_knot_band_word(rng: &mut CorpusRng, n: usize, extra_pairs: usize) -> BandWord {
    loop {
        let k = n - 1 + 2 * rng.random_range(0..extra_pairs.max(1));
        let word = random_band_word(rng, n, k);
        if word.expand().component_count() == 1 {
            return word;
        }
    }
}
