//! Inequality evaluators and the verdict engine deciding whether a knot
//! profile can be excluded from admitting a purely cosmetic surgery.
//!
//! The gate combines three ingredients: a thickness upper bound assembled
//! from the closed-form estimates and any word-derived bounds, the slope
//! constraint `{2,-2}` (genus 2 only) or `{+-1/q : q <= (th+2g)/(2g(g-1))}`,
//! and the polynomial constraints that restate the comparison. Genus and
//! braid index are trusted inputs; quantities inferred from words never
//! replace them unless explicitly requested.

use serde::Serialize;

use crate::bennequin::BandWord;
use crate::braid::BraidWord;
use crate::dealternation::{dealternation_upper_word, thm4_bound};
use crate::diagram::closure_diagram;
use crate::error::{Error, Result};
use crate::rational::{ratio_f64, ratio_string, Rational, RationalBound};

/// Thickness bound `(2b - 5)(2g - 1 + b) / 2`, exact and floored.
pub fn lemma3_bound(g: u32, b: u32) -> Result<RationalBound> {
    if b < 4 {
        return Err(Error::BraidIndexTooSmall { b, min: 4 });
    }
    let g = g as i64;
    let b = b as i64;
    Ok(RationalBound::new(Rational::new(
        (2 * b - 5) * (2 * g - 1 + b),
        2,
    )))
}

/// Crossing-number bound `coeff * (2g - 1 + b)` where the coefficient is
/// `2b - 5` for `b >= 4`, `5/3` for `b = 3`, and `1` for `b = 2`.
pub fn crossing_bound(g: u32, b: u32) -> Result<Rational> {
    if b < 2 {
        return Err(Error::BraidIndexTooSmall { b, min: 2 });
    }
    let g = g as i64;
    let bi = b as i64;
    let coeff = match b {
        2 => Rational::from_integer(1),
        3 => Rational::new(5, 3),
        _ => Rational::from_integer(2 * bi - 5),
    };
    Ok(coeff * Rational::from_integer(2 * g - 1 + bi))
}

/// `4g^2 + (2 - 4b)g + (2b - 5)(1 - b)`; a strictly positive value rules
/// out purely cosmetic surgery for `b >= 4`, `g != 2`.
pub fn eqn3(g: i64, b: i64) -> i64 {
    4 * g * g + (2 - 4 * b) * g + (2 * b - 5) * (1 - b)
}

/// `2g^2 + (6 - 4b)g + (2b - 5)(1 - b) + span`; same reading as [`eqn3`]
/// with the Jones span replacing the crude crossing estimate.
pub fn eqn4(g: i64, b: i64, span: i64) -> i64 {
    2 * g * g + (6 - 4 * b) * g + (2 * b - 5) * (1 - b) + span
}

/// Literal evaluation of the braid-foliation tile inequalities for
/// user-supplied tile counts:
/// `c <= (2b - 5) R_aa + (b - 3) R_ab` and
/// `2 R_aa + R_ab <= 2(2g - 1 + b)`.
pub fn foliation_bounds(r_aa: i64, r_ab: i64, g: i64, b: i64, c: i64) -> (bool, bool) {
    let first = c <= (2 * b - 5) * r_aa + (b - 3) * r_ab;
    let second = 2 * r_aa + r_ab <= 2 * (2 * g - 1 + b);
    (first, second)
}

/// Candidate surgery slopes left open by the thickness gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeSet {
    /// Sorted, deduplicated slopes; `+-2` only for genus 2, otherwise
    /// `+-1/q`.
    pub slopes: Vec<Rational>,
    /// Set when no finite constraint is derivable (genus 1, or no
    /// thickness bound at hand).
    pub unbounded: bool,
}

impl SlopeSet {
    pub fn unbounded() -> Self {
        SlopeSet { slopes: Vec::new(), unbounded: true }
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty() && !self.unbounded
    }

    pub fn strings(&self) -> Vec<String> {
        self.slopes.iter().map(ratio_string).collect()
    }
}

/// Slopes admitted by the thickness criterion: `{2,-2}` plus the `+-1/q`
/// family for genus 2, the `+-1/q` family alone for genus >= 3, and no
/// constraint at all for genus 1.
pub fn hanselman_slopes(g: u32, th: u32) -> Result<SlopeSet> {
    if g == 0 {
        return Err(Error::InvalidProfile("genus 0 (unknot) rejected".into()));
    }
    if g == 1 {
        return Ok(SlopeSet::unbounded());
    }
    let g = g as i64;
    let th = th as i64;
    // 0 < q <= (th + 2g) / (2g(g - 1))
    let q_max = (th + 2 * g) / (2 * g * (g - 1));
    let mut slopes = Vec::new();
    if g == 2 {
        slopes.push(Rational::from_integer(2));
        slopes.push(Rational::from_integer(-2));
    }
    for q in 1..=q_max {
        slopes.push(Rational::new(1, q));
        slopes.push(Rational::new(-1, q));
    }
    slopes.sort();
    slopes.dedup();
    Ok(SlopeSet { slopes, unbounded: false })
}

/// Trusted description of one knot.
#[derive(Debug, Clone)]
pub struct KnotProfile {
    pub name: String,
    /// Seifert genus, trusted exact. Must be >= 1.
    pub genus: u32,
    /// Braid index, trusted exact. Must be >= 2.
    pub braid_index: u32,
    pub thickness: Option<u32>,
    pub jones_span: Option<u32>,
    pub braid: Option<BraidWord>,
    pub bands: Option<BandWord>,
}

impl KnotProfile {
    pub fn new(name: impl Into<String>, genus: u32, braid_index: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidProfile("genus 0 (unknot) rejected".into()));
        }
        if braid_index < 2 {
            return Err(Error::InvalidProfile(format!(
                "braid index {braid_index} rejected (must be >= 2)"
            )));
        }
        Ok(KnotProfile {
            name: name.into(),
            genus,
            braid_index,
            thickness: None,
            jones_span: None,
            braid: None,
            bands: None,
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct GateOptions {
    /// Enable the braid-index-3 known-result shortcut.
    pub known_results: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    Excluded,
    Undecided,
    SpecialGenus2,
    KnownResultB3,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportBound {
    pub exact: String,
    pub floor: i64,
}

impl From<RationalBound> for ReportBound {
    fn from(b: RationalBound) -> Self {
        ReportBound { exact: ratio_string(&b.exact), floor: b.floor }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportInputs {
    pub g: Option<u32>,
    pub b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub th: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub braid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bands: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportBounds {
    pub lemma3: Option<ReportBound>,
    pub thm4: Option<ReportBound>,
    pub crossing: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportConstraints {
    pub eqn3: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eqn4: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportVerdict {
    pub status: VerdictStatus,
    pub route: String,
    pub slopes: Vec<String>,
    pub unbounded: bool,
}

/// Full result of the gate for one profile; serializes to the report
/// schema used by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    pub name: String,
    pub inputs: ReportInputs,
    pub bounds: ReportBounds,
    pub constraints: ReportConstraints,
    pub th_upper: Option<i64>,
    pub verdict: ReportVerdict,
}

impl ObstructionReport {
    pub fn status(&self) -> VerdictStatus {
        self.verdict.status
    }
}

/// Sources feeding the thickness upper bound, in tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ThSource {
    Supplied,
    Thm4,
    Lemma3,
    DealternationWord,
    TuraevWord,
}

impl ThSource {
    fn describe(self) -> &'static str {
        match self {
            ThSource::Supplied => "supplied thickness",
            ThSource::Thm4 => "thm4 bound",
            ThSource::Lemma3 => "lemma3 bound",
            ThSource::DealternationWord => "word-level dealternation bound",
            ThSource::TuraevWord => "word-level Turaev genus",
        }
    }
}

/// Run the verdict pipeline on one profile.
///
/// The thickness upper bound is the minimum of the supplied thickness,
/// the two closed-form estimates (braid index >= 4 only), and any bounds
/// derived from the profile's words. Exclusion happens exactly when
/// `2g(g - 2)` exceeds that bound; genus 2 is special-cased because the
/// slopes `{2,-2}` are never ruled out by these tools.
pub fn gate(profile: &KnotProfile, options: &GateOptions) -> Result<ObstructionReport> {
    if profile.genus == 0 {
        return Err(Error::InvalidProfile("genus 0 (unknot) rejected".into()));
    }
    if profile.braid_index < 2 {
        return Err(Error::InvalidProfile(format!(
            "braid index {} rejected (must be >= 2)",
            profile.braid_index
        )));
    }
    let g = profile.genus as i64;
    let b = profile.braid_index as i64;

    let lemma3 = (profile.braid_index >= 4)
        .then(|| lemma3_bound(profile.genus, profile.braid_index))
        .transpose()?;
    let thm4 = (profile.braid_index >= 4)
        .then(|| thm4_bound(profile.genus, profile.braid_index))
        .transpose()?;
    let crossing = crossing_bound(profile.genus, profile.braid_index)?;

    // Word-derived thickness bounds. These are genuine upper bounds for
    // the closure of the given word; the caller asserts the word
    // represents the profiled knot.
    let dealt_word = profile.bands.as_ref().and_then(|bands| {
        dealternation_upper_word(bands).ok().map(|r| r.total as i64)
    });
    let turaev_word = profile
        .braid
        .as_ref()
        .and_then(|w| closure_diagram(w).turaev_genus().ok().map(|v| v as i64))
        .or_else(|| {
            profile.bands.as_ref().and_then(|bands| {
                closure_diagram(&bands.expand()).turaev_genus().ok().map(|v| v as i64)
            })
        });

    let mut candidates: Vec<(ThSource, i64)> = Vec::new();
    if let Some(th) = profile.thickness {
        candidates.push((ThSource::Supplied, th as i64));
    }
    if let Some(ref bound) = thm4 {
        candidates.push((ThSource::Thm4, bound.floor));
    }
    if let Some(ref bound) = lemma3 {
        candidates.push((ThSource::Lemma3, bound.floor));
    }
    if let Some(v) = dealt_word {
        candidates.push((ThSource::DealternationWord, v));
    }
    if let Some(v) = turaev_word {
        candidates.push((ThSource::TuraevWord, v));
    }
    let th_upper: Option<(ThSource, i64)> = candidates
        .into_iter()
        .fold(None, |acc: Option<(ThSource, i64)>, (src, v)| match acc {
            Some((_, best)) if best <= v => acc,
            _ => Some((src, v)),
        });

    let eqn3_value = (b >= 4).then(|| eqn3(g, b));
    let eqn4_value = match (b >= 4, profile.jones_span) {
        (true, Some(span)) => Some(eqn4(g, b, span as i64)),
        _ => None,
    };

    let lhs = 2 * g * (g - 2);
    let verdict = if options.known_results && profile.braid_index == 3 {
        ReportVerdict {
            status: VerdictStatus::KnownResultB3,
            route: "braid index 3: purely cosmetic surgeries are excluded by a known result"
                .into(),
            slopes: Vec::new(),
            unbounded: false,
        }
    } else if profile.genus == 2 {
        let slopes = match th_upper {
            Some((_, th)) => hanselman_slopes(2, th.max(0) as u32)?,
            None => SlopeSet {
                slopes: vec![Rational::from_integer(-2), Rational::from_integer(2)],
                unbounded: true,
            },
        };
        ReportVerdict {
            status: VerdictStatus::SpecialGenus2,
            route: "genus 2: the slopes {2,-2} are never excluded by the thickness gate".into(),
            slopes: slopes.strings(),
            unbounded: slopes.unbounded,
        }
    } else if th_upper.is_some_and(|(_, th)| lhs > th) {
        let (src, th) = th_upper.expect("checked");
        let route = match (eqn3_value, &thm4) {
            (Some(v), _) if v > 0 => format!("constraint eqn3 = {v} > 0"),
            (_, Some(bound)) if src == ThSource::Thm4 => format!(
                "thm4 bound: 2g(g-2) = {lhs} > {}",
                ratio_f64(&bound.exact)
            ),
            _ => format!(
                "thickness gate: 2g(g-2) = {lhs} > th_upper = {th} ({})",
                src.describe()
            ),
        };
        ReportVerdict {
            status: VerdictStatus::Excluded,
            route,
            slopes: Vec::new(),
            unbounded: false,
        }
    } else {
        let slopes = match th_upper {
            Some((_, th)) => hanselman_slopes(profile.genus, th.max(0) as u32)?,
            None => SlopeSet::unbounded(),
        };
        let route = match th_upper {
            _ if profile.genus == 1 => {
                "genus 1: the slope family is unbounded (no thickness constraint applies)"
                    .into()
            }
            Some((src, th)) => format!(
                "undecided: 2g(g-2) = {lhs} <= th_upper = {th} ({})",
                src.describe()
            ),
            None => "undecided: no thickness bound available".into(),
        };
        ReportVerdict {
            status: VerdictStatus::Undecided,
            route,
            slopes: slopes.strings(),
            unbounded: slopes.unbounded,
        }
    };

    Ok(ObstructionReport {
        name: profile.name.clone(),
        inputs: ReportInputs {
            g: Some(profile.genus),
            b: Some(profile.braid_index),
            th: profile.thickness,
            span: profile.jones_span,
            braid: profile.braid.as_ref().map(|w| w.to_string()),
            bands: profile.bands.as_ref().map(|w| w.to_string()),
        },
        bounds: ReportBounds {
            lemma3: lemma3.map(Into::into),
            thm4: thm4.map(Into::into),
            crossing: Some(ratio_string(&crossing)),
        },
        constraints: ReportConstraints { eqn3: eqn3_value, eqn4: eqn4_value },
        th_upper: th_upper.map(|(_, v)| v),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(g: u32, b: u32) -> KnotProfile {
        KnotProfile::new(format!("g{g}b{b}"), g, b).unwrap()
    }

    #[test]
    fn lemma3_examples() {
        let v = lemma3_bound(3, 4).unwrap();
        assert_eq!(v.exact, Rational::new(27, 2));
        assert_eq!(v.floor, 13);
        assert_eq!(lemma3_bound(2, 4).unwrap().exact, Rational::new(21, 2));
        assert_eq!(lemma3_bound(6, 4).unwrap().exact, Rational::new(45, 2));
        assert!(lemma3_bound(3, 3).is_err());
    }

    #[test]
    fn crossing_bound_examples() {
        assert_eq!(crossing_bound(3, 4).unwrap(), Rational::from_integer(27));
        assert_eq!(crossing_bound(1, 2).unwrap(), Rational::from_integer(3));
        assert_eq!(crossing_bound(1, 3).unwrap(), Rational::new(20, 3));
        assert!(crossing_bound(1, 1).is_err());
    }

    #[test]
    fn eqn3_examples() {
        assert_eq!(eqn3(3, 4), -15);
        assert_eq!(eqn3(5, 4), 21);
        assert_eq!(eqn3(6, 4), 51);
    }

    #[test]
    fn eqn4_examples() {
        assert_eq!(eqn4(3, 4, 21), 0);
        assert_eq!(eqn4(3, 4, 22), 1);
        assert_eq!(eqn4(3, 4, 0), -21);
    }

    #[test]
    fn foliation_examples() {
        assert_eq!(foliation_bounds(3, 0, 1, 2, 3), (false, true));
        assert_eq!(foliation_bounds(0, 0, 5, 7, 0), (true, true));
        assert_eq!(foliation_bounds(7, 0, 2, 4, 21), (true, true));
    }

    #[test]
    fn hanselman_examples() {
        let s = hanselman_slopes(3, 0).unwrap();
        assert!(s.is_empty());

        let s = hanselman_slopes(2, 0).unwrap();
        assert_eq!(
            s.slopes,
            vec![
                Rational::from_integer(-2),
                Rational::from_integer(-1),
                Rational::from_integer(1),
                Rational::from_integer(2),
            ]
        );

        let s = hanselman_slopes(1, 100).unwrap();
        assert!(s.unbounded);
        assert!(hanselman_slopes(0, 0).is_err());
    }

    #[test]
    fn hanselman_q_family() {
        // g = 2, th = 8: q <= (8 + 4)/4 = 3.
        let s = hanselman_slopes(2, 8).unwrap();
        let expected: Vec<Rational> = vec![
            Rational::from_integer(-2),
            Rational::from_integer(-1),
            Rational::new(-1, 2),
            Rational::new(-1, 3),
            Rational::new(1, 3),
            Rational::new(1, 2),
            Rational::from_integer(1),
            Rational::from_integer(2),
        ];
        assert_eq!(s.slopes, expected);
    }

    #[test]
    fn gate_excludes_by_eqn3() {
        let report = gate(&profile(6, 4), &GateOptions::default()).unwrap();
        assert_eq!(report.status(), VerdictStatus::Excluded);
        assert_eq!(report.verdict.route, "constraint eqn3 = 51 > 0");
    }

    #[test]
    fn gate_excludes_by_thm4() {
        let report = gate(&profile(4, 4), &GateOptions::default()).unwrap();
        assert_eq!(report.status(), VerdictStatus::Excluded);
        assert_eq!(report.constraints.eqn3, Some(-1));
        assert_eq!(report.verdict.route, "thm4 bound: 2g(g-2) = 16 > 13.75");
        assert_eq!(report.th_upper, Some(13));
    }

    #[test]
    fn gate_undecided_with_slopes() {
        let report = gate(&profile(3, 4), &GateOptions::default()).unwrap();
        assert_eq!(report.status(), VerdictStatus::Undecided);
        assert_eq!(report.verdict.slopes, vec!["-1", "1"]);
        assert!(!report.verdict.unbounded);
    }

    #[test]
    fn gate_genus_two_is_special() {
        let report = gate(&profile(2, 4), &GateOptions::default()).unwrap();
        assert_eq!(report.status(), VerdictStatus::SpecialGenus2);
        assert!(report.verdict.slopes.contains(&"2".to_string()));
        assert!(report.verdict.slopes.contains(&"-2".to_string()));
    }

    #[test]
    fn gate_genus_one_unbounded() {
        let report = gate(&profile(1, 2), &GateOptions::default()).unwrap();
        assert_eq!(report.status(), VerdictStatus::Undecided);
        assert!(report.verdict.unbounded);
    }

    #[test]
    fn gate_known_results_shortcut() {
        let report =
            gate(&profile(5, 3), &GateOptions { known_results: true }).unwrap();
        assert_eq!(report.status(), VerdictStatus::KnownResultB3);
        // Without the flag, b = 3 has no closed-form bound and no verdict.
        let report = gate(&profile(5, 3), &GateOptions::default()).unwrap();
        assert_eq!(report.status(), VerdictStatus::Undecided);
        assert!(report.verdict.unbounded);
    }

    #[test]
    fn gate_rejects_invalid_profiles() {
        assert!(KnotProfile::new("unknot", 0, 2).is_err());
        assert!(KnotProfile::new("bad", 1, 1).is_err());
    }

    #[test]
    fn gate_uses_word_bounds() {
        let mut p = profile(1, 2);
        p.braid = Some(BraidWord::parse("1 1 1", None).unwrap());
        let report = gate(&p, &GateOptions::default()).unwrap();
        // Alternating closure: Turaev genus 0 becomes the bound.
        assert_eq!(report.th_upper, Some(0));
        assert_eq!(report.status(), VerdictStatus::Undecided);
        assert!(report.verdict.unbounded, "genus 1 stays unbounded");
    }

    #[test]
    fn gate_supplied_thickness_wins_ties() {
        let mut p = profile(3, 4);
        p.thickness = Some(0);
        let report = gate(&p, &GateOptions::default()).unwrap();
        assert_eq!(report.status(), VerdictStatus::Excluded);
        assert_eq!(report.th_upper, Some(0));
        assert!(report.verdict.route.contains("eqn3")
            || report.verdict.route.contains("supplied thickness"));
    }
}
