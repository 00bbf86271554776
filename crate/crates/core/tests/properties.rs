//! Cross-module invariants, mostly over seeded random corpora.

use num_rational::Ratio;
use proptest::prelude::*;

use pcs_core::bennequin::{
    band_census, bennequin_genus, delta_conjugate, expand_band, minimize_wrap,
};
use pcs_core::braid::{BraidWord, Letter, Pattern, Sign};
use pcs_core::corpus;
use pcs_core::dealternation::{dealternation_upper_word, thm4_bound, violations};
use pcs_core::diagram::closure_diagram;
use pcs_core::jones::{bracket_state_sum, bracket_tl, jones, jones_span};
use pcs_core::obstruction::{
    eqn3, gate, hanselman_slopes, lemma3_bound, GateOptions, KnotProfile, VerdictStatus,
};

type Rational = Ratio<i64>;

fn arb_word() -> impl Strategy<Value = BraidWord> {
    (2usize..=5).prop_flat_map(|n| {
        prop::collection::vec((1..n, any::<bool>()), 0..16).prop_map(move |raw| {
            let letters = raw
                .into_iter()
                .map(|(i, pos)| Letter::new(i, if pos { Sign::Pos } else { Sign::Neg }))
                .collect();
            BraidWord::new(n, letters).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn mirror_is_an_involution(w in arb_word()) {
        prop_assert_eq!(w.mirror().mirror(), w);
    }

    #[test]
    fn component_count_is_mirror_invariant(w in arb_word()) {
        prop_assert_eq!(w.component_count(), w.mirror().component_count());
    }

    #[test]
    fn permutation_ignores_signs(w in arb_word()) {
        prop_assert_eq!(w.permutation(), w.mirror().permutation());
    }

    #[test]
    fn alternating_mirror_flips_the_pattern(w in arb_word()) {
        if let Some(p) = w.alternating_pattern() {
            if !w.is_empty() {
                prop_assert_eq!(w.mirror().alternating_pattern(), Some(p.opposite()));
            }
        }
    }

    #[test]
    fn turaev_bound_on_connected_closures(seed in 0u64..500) {
        let mut rng = corpus::rng(seed);
        let n = 2 + (seed as usize % 5);
        let w = corpus::random_connected_word(&mut rng, n, n + 12);
        let d = closure_diagram(&w);
        let g_t = d.turaev_genus().unwrap();
        // Parity and nonnegativity hold inside turaev_genus; the
        // crude crossing bound:
        prop_assert!(2 * g_t <= d.crossing_count());
    }
}

#[test]
fn alternating_closures_have_turaev_genus_zero() {
    let mut rng = corpus::rng(11);
    for trial in 0..100 {
        let n = 2 + trial % 5; // up to 6 strands
        for pattern in Pattern::BOTH {
            let w = corpus::random_alternating_word(&mut rng, n, 20, pattern);
            assert_eq!(w.alternating_pattern(), Some(pattern));
            let d = closure_diagram(&w);
            assert!(d.is_alternating(), "word {w}");
            assert_eq!(d.turaev_genus().unwrap(), 0, "word {w}");
        }
    }
}

#[test]
fn all_a_state_of_positive_words_keeps_n_circles() {
    let mut rng = corpus::rng(12);
    for trial in 0..200 {
        let n = 2 + trial % 5;
        let w = corpus::random_word(&mut rng, n, 1 + trial % 14);
        let positive = BraidWord::new(
            n,
            w.letters().iter().map(|l| Letter::new(l.index, Sign::Pos)).collect(),
        )
        .unwrap();
        let d = closure_diagram(&positive);
        assert_eq!(d.state_circles(&d.all_a()).unwrap(), n);
    }
}

#[test]
fn planar_basis_matches_the_state_sum() {
    let mut rng = corpus::rng(13);
    for trial in 0..120 {
        let n = 2 + trial % 3;
        let w = corpus::random_word(&mut rng, n, 1 + trial % 10);
        let oracle = bracket_state_sum(&closure_diagram(&w)).unwrap();
        assert_eq!(bracket_tl(&w).unwrap(), oracle, "word {w}");
    }
}

#[test]
fn jones_span_is_mirror_invariant() {
    let mut rng = corpus::rng(14);
    let mut checked = 0;
    while checked < 60 {
        let n = 2 + checked % 3;
        // A knot closure needs len = n - 1 (mod 2).
        let len = n - 1 + 2 * (1 + checked % 4);
        let w = corpus::random_word(&mut rng, n, len);
        if w.component_count() != 1 {
            continue;
        }
        assert_eq!(
            jones_span(&w).unwrap(),
            jones_span(&w.mirror()).unwrap(),
            "word {w}"
        );
        checked += 1;
    }
}

#[test]
fn jones_at_one_counts_components() {
    let mut rng = corpus::rng(15);
    for trial in 0..80 {
        let n = 2 + trial % 3;
        let w = corpus::random_word(&mut rng, n, trial % 9);
        let v = jones(&w).unwrap();
        let expected = match w.component_count() {
            1 => 1,
            c => (-2i64).pow(c as u32 - 1),
        };
        assert_eq!(v.eval_at_one(), expected, "word {w}");
    }
}

#[test]
fn alternating_knot_closures_respect_the_span_bound() {
    let mut rng = corpus::rng(16);
    let mut checked = 0;
    while checked < 60 {
        let n = 2 + checked % 4;
        let w = corpus::random_alternating_word(&mut rng, n, 14, Pattern::PlusOdd);
        if w.component_count() != 1 {
            continue;
        }
        let span = jones_span(&w).unwrap();
        assert!(span <= w.len() as i64, "span {span} > c {} for {w}", w.len());
        checked += 1;
    }
}

#[test]
fn delta_conjugation_preserves_closure_data() {
    let mut rng = corpus::rng(17);
    for trial in 0..500 {
        let n = 2 + trial % 5;
        let word = corpus::random_band_word(&mut rng, n, trial % 10);
        let shifted = delta_conjugate(&word);
        assert_eq!(
            word.expand().component_count(),
            shifted.expand().component_count(),
            "word {word}"
        );
    }
}

#[test]
fn delta_conjugation_preserves_bennequin_genus() {
    let mut rng = corpus::rng(18);
    for trial in 0..200 {
        let n = 3 + trial % 4;
        let word = corpus::random_knot_band_word(&mut rng, n, 4);
        let shifted = delta_conjugate(&word);
        assert_eq!(bennequin_genus(&word).unwrap(), bennequin_genus(&shifted).unwrap());
    }
}

#[test]
fn band_and_inverse_have_trivial_permutation() {
    for (i, j, n) in [(1, 2, 4), (2, 4, 5), (1, 5, 5), (3, 6, 7)] {
        let band = expand_band(i, j, n, Sign::Pos).unwrap();
        let inverse = BraidWord::new(
            n,
            band.letters().iter().rev().map(|l| l.inverse()).collect(),
        )
        .unwrap();
        assert!(band.concat(&inverse).permutation().is_identity());
    }
}

#[test]
fn wrap_minimum_is_at_most_the_cyclic_average() {
    let mut rng = corpus::rng(19);
    for trial in 0..300 {
        let n = 3 + trial % 4;
        let word = corpus::random_band_word(&mut rng, n, trial % 12);
        let census = band_census(&word);
        let mut cyclic = census.count(1, n);
        for i in 1..n {
            cyclic += census.count(i, i + 1);
        }
        let (_, wrap) = minimize_wrap(&word);
        assert!(
            wrap * n <= cyclic,
            "wrap {wrap} exceeds average of {cyclic}/{n} for {word}"
        );
    }
}

#[test]
fn wrap_minimum_meets_the_genus_bound_on_knot_words() {
    let mut rng = corpus::rng(20);
    for trial in 0..200 {
        let n = 4 + trial % 3;
        let word = corpus::random_knot_band_word(&mut rng, n, 4);
        let g = bennequin_genus(&word).unwrap() as usize;
        let (_, wrap) = minimize_wrap(&word);
        // k = 2g - 1 + n, so the average bound reads wrap <= k/n.
        assert!(wrap * n < 2 * g + n, "word {word}");
    }
}

#[test]
fn dealternation_totals_respect_both_formulas() {
    let mut rng = corpus::rng(21);
    for trial in 0..60 {
        let n = 4 + trial % 3;
        let word = corpus::random_knot_band_word(&mut rng, n, 3);
        let g = bennequin_genus(&word).unwrap() as i64;
        let report = dealternation_upper_word(&word).unwrap();
        assert!(report.total as i64 <= report.formula_bound, "word {word}");
        let ni = n as i64;
        let closed_form = (Rational::from_integer(ni - 3)
            + Rational::new(1, ni))
            * Rational::from_integer(2 * g - 1 + ni);
        assert!(
            Rational::from_integer(report.formula_bound) <= closed_form,
            "word {word}: {} > {closed_form}",
            report.formula_bound
        );
        // Flipping the violating letters really alternates the word.
        let assembled = report.assembled_word();
        assert_eq!(violations(&assembled, report.pattern), report.total);
    }
}

#[test]
fn eqn3_is_positive_on_the_theorem_grid() {
    for b in 4..=12i64 {
        let g = (3 * b + 1) / 2; // ceil(3b/2)
        assert!(eqn3(g, b) > 0, "b {b} g {g}");
    }
}

#[test]
fn thm4_refines_lemma3() {
    for b in 4..=32 {
        for g in 1..=64 {
            let fine = thm4_bound(g, b).unwrap();
            let coarse = lemma3_bound(g, b).unwrap();
            assert!(fine.exact <= coarse.exact, "g {g} b {b}");
            assert!(fine.floor <= coarse.floor, "g {g} b {b}");
        }
    }
}

#[test]
fn gate_is_monotone_in_thickness() {
    for g in 3..=10u32 {
        let mut excluded = Vec::new();
        for th in 0..=40u32 {
            let mut p = KnotProfile::new("m", g, 10).unwrap();
            p.thickness = Some(th);
            let r = gate(&p, &GateOptions::default()).unwrap();
            excluded.push(r.status() == VerdictStatus::Excluded);
        }
        for pair in excluded.windows(2) {
            assert!(
                pair[0] || !pair[1],
                "exclusion must not reappear as thickness grows (g {g})"
            );
        }
    }
}

#[test]
fn genus_two_is_never_excluded() {
    for b in 2..=12u32 {
        for th in [None, Some(0), Some(5), Some(40)] {
            let mut p = KnotProfile::new("g2", 2, b).unwrap();
            p.thickness = th;
            let r = gate(&p, &GateOptions::default()).unwrap();
            assert_eq!(r.status(), VerdictStatus::SpecialGenus2, "b {b} th {th:?}");
        }
    }
}

#[test]
fn empty_slope_set_matches_the_closed_form() {
    for g in 1..=10u32 {
        for th in 0..=60u32 {
            let s = hanselman_slopes(g, th).unwrap();
            let should_be_empty =
                g >= 3 && 2 * (g as i64) * (g as i64 - 2) > th as i64;
            assert_eq!(s.is_empty(), should_be_empty, "g {g} th {th}");
        }
    }
}
