//! Kauffman bracket and Jones polynomial, exactly.
//!
//! Two independent evaluators are kept side by side:
//!
//! * [`bracket_state_sum`] expands all `2^c` smoothing states of a closure
//!   diagram. Exponential, trustworthy, guarded by a crossing limit; this
//!   is the ground-truth oracle.
//! * [`bracket_tl`] pushes the word through the planar-pairing basis of
//!   the Temperley-Lieb algebra (dimension Catalan(n)) and closes the
//!   trace. Polynomial in the word length; this is the production path.
//!
//! Both return the bracket of the trace closure normalized so the unknot
//! evaluates to 1. The state sum runs over blocks of states in parallel
//! when the `parallel` feature is enabled; the result is identical either
//! way.

use crate::braid::{BraidWord, Sign};
use crate::diagram::{closure_diagram, ClosureDiagram};
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Var};
use crate::uf::UnionFind;

use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub const DEFAULT_ORACLE_MAX_CROSSINGS: usize = 16;
pub const DEFAULT_TL_MAX_STRANDS: usize = 12;

/// Evaluator limits and routing.
#[derive(Debug, Clone)]
pub struct EvalConfig {
    /// Hard guard on the `2^c` state sum.
    pub oracle_max_crossings: usize,
    /// Strand limit for the planar-pairing basis.
    pub tl_max_strands: usize,
    /// Route everything through the state-sum oracle.
    pub force_oracle: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            oracle_max_crossings: DEFAULT_ORACLE_MAX_CROSSINGS,
            tl_max_strands: DEFAULT_TL_MAX_STRANDS,
            force_oracle: false,
        }
    }
}

/// The loop factor `d = -A^2 - A^-2`.
pub fn loop_factor() -> LaurentPoly {
    LaurentPoly::from_terms(Var::A, &[(2, -1), (-2, -1)])
}

// ---------------------------------------------------------------------------
// State-sum oracle
// ---------------------------------------------------------------------------

/// Histogram of smoothing states keyed by (#B-smoothings, circle count).
#[derive(Debug, Clone)]
struct StateHistogram {
    max_circles: usize,
    counts: Vec<u64>,
}

impl StateHistogram {
    fn new(c: usize, n: usize) -> Self {
        let max_circles = n + c + 1;
        StateHistogram { max_circles, counts: vec![0; (c + 1) * max_circles] }
    }

    #[inline]
    fn bump(&mut self, b_count: usize, circles: usize) {
        self.counts[b_count * self.max_circles + circles] += 1;
    }

    #[cfg(feature = "parallel")]
    fn merge(mut self, other: StateHistogram) -> StateHistogram {
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
        self
    }
}

/// The bit of `state` for crossing k selects its smoothing (0 = A, 1 = B);
/// a crossing is smoothed into a cup-cap iff it is positive with a B or
/// negative with an A, so the cup-cap mask is `state ^ neg_mask`.
fn neg_mask(d: &ClosureDiagram) -> u64 {
    d.crossings()
        .iter()
        .enumerate()
        .filter(|(_, x)| x.sign == Sign::Neg)
        .fold(0u64, |m, (k, _)| m | (1 << k))
}

fn histogram_chunk(
    d: &ClosureDiagram,
    states: std::ops::Range<u64>,
    hist: &mut StateHistogram,
    uf: &mut UnionFind,
    cur: &mut Vec<u32>,
) {
    let mask = neg_mask(d);
    for state in states {
        let cupcaps = state ^ mask;
        let circles = d.state_circles_scratch(|k| cupcaps >> k & 1 == 1, uf, cur);
        hist.bump(state.count_ones() as usize, circles);
    }
}

fn state_sum_histogram_seq(d: &ClosureDiagram) -> StateHistogram {
    let c = d.crossing_count();
    let mut hist = StateHistogram::new(c, d.n());
    let mut uf = UnionFind::new();
    let mut cur = Vec::new();
    histogram_chunk(d, 0..1u64 << c, &mut hist, &mut uf, &mut cur);
    hist
}

#[cfg(feature = "parallel")]
fn state_sum_histogram_par(d: &ClosureDiagram) -> StateHistogram {
    let c = d.crossing_count();
    let total = 1u64 << c;
    let block = 1u64 << 12;
    let blocks = total.div_ceil(block);
    (0..blocks)
        .into_par_iter()
        .fold(
            || (StateHistogram::new(c, d.n()), UnionFind::new(), Vec::new()),
            |(mut hist, mut uf, mut cur), i| {
                let lo = i * block;
                let hi = total.min(lo + block);
                histogram_chunk(d, lo..hi, &mut hist, &mut uf, &mut cur);
                (hist, uf, cur)
            },
        )
        .map(|(hist, _, _)| hist)
        .reduce(|| StateHistogram::new(c, d.n()), StateHistogram::merge)
}

fn histogram_to_poly(d: &ClosureDiagram, hist: &StateHistogram) -> LaurentPoly {
    let c = d.crossing_count() as i64;
    let max_m = hist.max_circles;
    let mut d_pows = Vec::with_capacity(max_m);
    let mut p = LaurentPoly::one(Var::A);
    for _ in 0..max_m {
        d_pows.push(p.clone());
        p = p.mul(&loop_factor());
    }
    let mut out = LaurentPoly::zero(Var::A);
    for b_count in 0..=c as usize {
        for m in 1..max_m {
            let count = hist.counts[b_count * max_m + m];
            if count == 0 {
                continue;
            }
            let count = i64::try_from(count).expect("state count overflow");
            // A^(#A - #B) * d^(m-1), repeated `count` times.
            let mut term = d_pows[m - 1].clone();
            term.mul_monomial(c - 2 * b_count as i64, count);
            out.add_assign(&term);
        }
    }
    out
}

/// Full Kauffman state sum over all `2^c` smoothings of the diagram,
/// with the default crossing guard.
pub fn bracket_state_sum(d: &ClosureDiagram) -> Result<LaurentPoly> {
    bracket_state_sum_with(d, DEFAULT_ORACLE_MAX_CROSSINGS)
}

pub fn bracket_state_sum_with(d: &ClosureDiagram, max_crossings: usize) -> Result<LaurentPoly> {
    let c = d.crossing_count();
    if c > max_crossings || c >= 63 {
        return Err(Error::OracleLimit { crossings: c, limit: max_crossings });
    }
    #[cfg(feature = "parallel")]
    let hist = state_sum_histogram_par(d);
    #[cfg(not(feature = "parallel"))]
    let hist = state_sum_histogram_seq(d);
    Ok(histogram_to_poly(d, &hist))
}

/// Sequential state sum, kept callable for benchmarks regardless of the
/// `parallel` feature.
pub fn bracket_state_sum_seq(d: &ClosureDiagram, max_crossings: usize) -> Result<LaurentPoly> {
    let c = d.crossing_count();
    if c > max_crossings || c >= 63 {
        return Err(Error::OracleLimit { crossings: c, limit: max_crossings });
    }
    Ok(histogram_to_poly(d, &state_sum_histogram_seq(d)))
}

// ---------------------------------------------------------------------------
// Planar-pairing (Temperley-Lieb) evaluator
// ---------------------------------------------------------------------------

/// A perfect non-crossing pairing of the 2n boundary points of an n-strand
/// tangle. Points 0..n are the top boundary, n..2n the bottom;
/// `pairing[p] = q` iff an arc joins p and q.
type Pairing = Vec<u8>;

fn identity_pairing(n: usize) -> Pairing {
    let mut p = vec![0u8; 2 * n];
    for j in 0..n {
        p[j] = (n + j) as u8;
        p[n + j] = j as u8;
    }
    p
}

/// Glue the cup-cap generator at column `i` (1-based) under the pairing.
/// Returns the new pairing and whether a closed loop was absorbed.
fn apply_cupcap(p: &Pairing, n: usize, i: usize) -> (Pairing, bool) {
    let a = (n + i - 1) as u8;
    let b = (n + i) as u8;
    let x = p[a as usize];
    let y = p[b as usize];
    if x == b {
        // The pairing already joins the two bottom points: the cap closes
        // that arc into a loop and the cup restores the same pairing.
        (p.clone(), true)
    } else {
        let mut q = p.clone();
        q[x as usize] = y;
        q[y as usize] = x;
        q[a as usize] = b;
        q[b as usize] = a;
        (q, false)
    }
}

/// Circles of the trace closure of a pairing.
fn closure_circles(p: &Pairing, n: usize) -> usize {
    let mut uf = UnionFind::new();
    for _ in 0..2 * n {
        uf.add();
    }
    for (x, &y) in p.iter().enumerate() {
        uf.union(x as u32, y as u32);
    }
    for j in 0..n {
        uf.union(j as u32, (n + j) as u32);
    }
    uf.class_count()
}

/// Kauffman bracket of the trace closure through the planar-pairing
/// basis, with the default strand guard.
pub fn bracket_tl(word: &BraidWord) -> Result<LaurentPoly> {
    bracket_tl_with(word, DEFAULT_TL_MAX_STRANDS)
}

pub fn bracket_tl_with(word: &BraidWord, max_strands: usize) -> Result<LaurentPoly> {
    let n = word.n();
    if n > max_strands {
        return Err(Error::BasisLimit { n, limit: max_strands });
    }
    let d_poly = loop_factor();
    let mut state: BTreeMap<Pairing, LaurentPoly> = BTreeMap::new();
    state.insert(identity_pairing(n), LaurentPoly::one(Var::A));

    for letter in word.letters() {
        let eps = letter.sign.as_i64();
        let mut next: BTreeMap<Pairing, LaurentPoly> = BTreeMap::new();
        let mut add = |pairing: Pairing, poly: LaurentPoly| {
            if poly.is_zero() {
                return;
            }
            match next.entry(pairing) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(poly);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    e.get_mut().add_assign(&poly);
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        };
        for (pairing, coeff) in &state {
            // sigma_i^eps = A^eps * identity + A^-eps * e_i
            let mut ident_part = coeff.clone();
            ident_part.mul_monomial(eps, 1);
            add(pairing.clone(), ident_part);

            let (glued, looped) = apply_cupcap(pairing, n, letter.index);
            let mut e_part = coeff.clone();
            e_part.mul_monomial(-eps, 1);
            if looped {
                e_part = e_part.mul(&d_poly);
            }
            add(glued, e_part);
        }
        state = next;
    }

    let mut out = LaurentPoly::zero(Var::A);
    for (pairing, coeff) in &state {
        let m = closure_circles(pairing, n);
        out.add_assign(&coeff.mul(&d_poly.pow(m - 1)));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Jones polynomial
// ---------------------------------------------------------------------------

fn bracket_for(word: &BraidWord, cfg: &EvalConfig) -> Result<LaurentPoly> {
    if !cfg.force_oracle && word.n() <= cfg.tl_max_strands {
        bracket_tl_with(word, cfg.tl_max_strands)
    } else {
        bracket_state_sum_with(&closure_diagram(word), cfg.oracle_max_crossings)
    }
}

/// Jones polynomial of the closure: `(-A)^(-3w) * bracket`, re-expressed
/// in `t = A^-4`.
///
/// For knot closures every exponent is integral and the result is a
/// polynomial in `t`; for multi-component links the quarter-integer
/// exponents are kept exact by returning the normalized bracket still in
/// the variable `A`.
pub fn jones(word: &BraidWord) -> Result<LaurentPoly> {
    jones_with(word, &EvalConfig::default())
}

pub fn jones_with(word: &BraidWord, cfg: &EvalConfig) -> Result<LaurentPoly> {
    let bracket = bracket_for(word, cfg)?;
    let w = word.writhe();
    let mut normalized = bracket;
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    normalized.mul_monomial(-3 * w, sign);
    if word.component_count() != 1 {
        return Ok(normalized);
    }
    let mut v = LaurentPoly::zero(Var::T);
    for (e, c) in normalized.terms() {
        assert!(
            e % 4 == 0,
            "knot bracket exponent {e} not divisible by 4; evaluator bug"
        );
        v.add_term(-e / 4, c);
    }
    Ok(v)
}

/// Span (max exponent minus min exponent) of the Jones polynomial in `t`.
/// The closure must be a knot.
pub fn jones_span(word: &BraidWord) -> Result<i64> {
    jones_span_with(word, &EvalConfig::default())
}

pub fn jones_span_with(word: &BraidWord, cfg: &EvalConfig) -> Result<i64> {
    let components = word.component_count();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    Ok(jones_with(word, cfg)?.span())
}
