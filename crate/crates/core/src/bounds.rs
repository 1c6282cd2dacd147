//! Bennequin-type bounds assembled from Seifert statistics, plus the two
//! verifiers that compare them with computed polynomials.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::diagram::{BraidWord, LinkDiagram, SeifertStats};
use crate::error::{Error, Result};
use crate::homfly::{mfw_degrees, state_terms, Caps, Conventions, HomflyEngine};
use crate::poly::LaurentPoly1;

/// Closed integer interval `[lower, upper]`, serialized as a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval(pub i64, pub i64);

impl Interval {
    pub fn lower(&self) -> i64 {
        self.0
    }

    pub fn upper(&self) -> i64 {
        self.1
    }

    pub fn contains(&self, x: i64) -> bool {
        self.0 <= x && x <= self.1
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.0 <= other.0 && other.1 <= self.1
    }

    /// The image under `x -> -x`.
    pub fn negated(&self) -> Interval {
        Interval(-self.1, -self.0)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.0, self.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Positive,
    Negative,
    Mixed,
    #[serde(rename = "no crossings")]
    NoCrossings,
}

impl Case {
    pub fn of(stats: &SeifertStats) -> Case {
        match (stats.c_plus, stats.c_minus) {
            (0, 0) => Case::NoCrossings,
            (_, 0) => Case::Positive,
            (0, _) => Case::Negative,
            _ => Case::Mixed,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Case::Positive => "positive",
            Case::Negative => "negative",
            Case::Mixed => "mixed",
            Case::NoCrossings => "no crossings",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classical {
    /// upper bound for the Seifert-surface Euler characteristic
    pub chi_upper: i64,
    /// upper bound for the slice Euler characteristic
    pub chi_s_upper: i64,
}

/// Interval containing the `a`-degrees of the HOMFLY polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MfwBounds {
    pub lower: i64,
    pub upper: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RasmussenBounds {
    /// lower bound for `s - 1` from the Seifert circles
    pub spbi_lower: i64,
    /// sharper lower bound for `s - 1` using `O_≥` and `O_<`
    pub kbi_lower: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thm4 {
    pub case: Case,
    /// interval containing `g_p^min` (positive, mixed) or `g_p^max` (negative)
    pub interval: Interval,
    /// exact `g_p^min`, positive knot diagrams only
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gp_min: Option<i64>,
    /// upper bound for `g_p^max`, positive knot diagrams only
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gp_max_upper: Option<i64>,
    /// exact `g_p^max`, negative knot diagrams only
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gp_max: Option<i64>,
    /// lower bound for `g_p^min`, negative knot diagrams only
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gp_min_lower: Option<i64>,
}

/// Intervals containing `g_p^max` and `g_p^min` given `χ_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thm1Box {
    pub chi_s: i64,
    pub gmax: Interval,
    pub gmin: Interval,
}

/// The `thm2` interval divided by `n - 1`, exact rationals as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScaledInterval {
    pub n: u32,
    pub lower: String,
    pub upper: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub stats: SeifertStats,
    pub n: u32,
    pub classical: Classical,
    pub mfw: MfwBounds,
    pub rasmussen: RasmussenBounds,
    /// interval containing `g_n^min` and `g_n^max`
    pub thm2_interval: Interval,
    /// interval containing `g_p^min` and `g_p^max`
    pub thm3_interval: Interval,
    pub case: Case,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thm4: Option<Thm4>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thm1_box: Option<Thm1Box>,
    pub chi_s_exact: Option<i64>,
    pub scaled_thm2: Vec<ScaledInterval>,
    pub knot_only_flags: Vec<&'static str>,
}

const SCALED_RANGE: std::ops::RangeInclusive<u32> = 2..=8;

fn thm2(s: &SeifertStats, n: i64) -> Interval {
    let (w, o) = (s.writhe, s.circles as i64);
    Interval(
        (n - 1) * (w - o) - 2 * s.c_minus as i64,
        (n - 1) * (w + o) + 2 * s.c_plus as i64,
    )
}

fn ratio_string(r: Ratio<i64>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn bennequin_report(stats: &SeifertStats, n: u32) -> Result<BoundsReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let s = stats;
    let k = n as i64 - 1;
    let (w, o) = (s.writhe, s.circles as i64);
    let (o_geq, o_leq, o_gt, o_lt) = (s.o_geq as i64, s.o_leq as i64, s.o_gt as i64, s.o_lt as i64);
    let case = Case::of(s);
    let knot = s.is_knot();

    let thm4 = match case {
        Case::NoCrossings => None,
        Case::Positive => Some(Thm4 {
            case,
            interval: Interval(k * (w - o), k * (w - o + 2)),
            gp_min: knot.then_some(k * (w - o)),
            gp_max_upper: knot.then_some(k * (w - o + 2)),
            gp_max: None,
            gp_min_lower: None,
        }),
        Case::Negative => Some(Thm4 {
            case,
            interval: Interval(k * (w + o - 2), k * (w + o)),
            gp_min: None,
            gp_max_upper: None,
            gp_max: knot.then_some(k * (w + o)),
            gp_min_lower: knot.then_some(k * (w + o - 2)),
        }),
        Case::Mixed => Some(Thm4 {
            case,
            interval: Interval(k * (w - o_geq + o_lt), k * (w + o_leq - o_gt)),
            gp_min: None,
            gp_max_upper: None,
            gp_max: None,
            gp_min_lower: None,
        }),
    };
    let chi_s_exact = match case {
        Case::Positive if knot => Some(o - w),
        Case::Negative if knot => Some(o + w),
        _ => None,
    };
    let thm1_box = chi_s_exact.map(|chi| Thm1Box {
        chi_s: chi,
        gmax: Interval(k * chi, k * (2 - chi)),
        gmin: Interval(k * (chi - 2), -k * chi),
    });
    let scaled_thm2 = SCALED_RANGE
        .map(|m| {
            let iv = thm2(s, m as i64);
            let d = m as i64 - 1;
            ScaledInterval {
                n: m,
                lower: ratio_string(Ratio::new(iv.0, d)),
                upper: ratio_string(Ratio::new(iv.1, d)),
            }
        })
        .collect();
    let knot_only_flags = if knot {
        Vec::new()
    } else {
        vec!["thm3", "thm4", "spbi", "kbi"]
    };
    Ok(BoundsReport {
        stats: *s,
        n,
        classical: Classical {
            chi_upper: w + o,
            chi_s_upper: w + o,
        },
        mfw: MfwBounds {
            lower: w - o,
            upper: w + o,
        },
        rasmussen: RasmussenBounds {
            spbi_lower: w - o,
            kbi_lower: w - o_geq + o_lt,
        },
        thm2_interval: thm2(s, n as i64),
        thm3_interval: Interval(k * (w - o), k * (w + o)),
        case,
        thm4,
        thm1_box,
        chi_s_exact,
        scaled_thm2,
        knot_only_flags,
    })
}

impl BoundsReport {
    /// Two-column text table.
    pub fn to_table(&self) -> String {
        let s = &self.stats;
        let mut rows: Vec<(String, String)> = vec![
            ("n".into(), self.n.to_string()),
            ("w".into(), s.writhe.to_string()),
            ("O".into(), s.circles.to_string()),
            ("c+ / c-".into(), format!("{} / {}", s.c_plus, s.c_minus)),
            ("O> / O<".into(), format!("{} / {}", s.o_gt, s.o_lt)),
            ("components".into(), s.components.to_string()),
            ("chi upper".into(), self.classical.chi_upper.to_string()),
            ("chi_s upper".into(), self.classical.chi_s_upper.to_string()),
            (
                "HOMFLY a-degrees in".into(),
                Interval(self.mfw.lower, self.mfw.upper).to_string(),
            ),
            (
                "s-1 lower (spbi)".into(),
                self.rasmussen.spbi_lower.to_string(),
            ),
            (
                "s-1 lower (kbi)".into(),
                self.rasmussen.kbi_lower.to_string(),
            ),
            ("g_n in".into(), self.thm2_interval.to_string()),
            ("g_p in".into(), self.thm3_interval.to_string()),
            ("case".into(), self.case.name().into()),
        ];
        if let Some(t) = &self.thm4 {
            rows.push(("case interval".into(), t.interval.to_string()));
            for (name, v) in [
                ("g_p^min", t.gp_min),
                ("g_p^max at most", t.gp_max_upper),
                ("g_p^max", t.gp_max),
                ("g_p^min at least", t.gp_min_lower),
            ] {
                if let Some(v) = v {
                    rows.push((name.into(), v.to_string()));
                }
            }
        }
        if let Some(b) = &self.thm1_box {
            rows.push(("chi_s".into(), b.chi_s.to_string()));
            rows.push(("g_p^max in".into(), b.gmax.to_string()));
            rows.push(("g_p^min in".into(), b.gmin.to_string()));
        }
        for si in &self.scaled_thm2 {
            rows.push((
                format!("g_n/(n-1), n={}", si.n),
                format!("[{}, {}]", si.lower, si.upper),
            ));
        }
        if !self.knot_only_flags.is_empty() {
            rows.push(("knot only".into(), self.knot_only_flags.join(", ")));
        }
        let width = rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

pub fn verify_mfw(d: &LinkDiagram, engine: &mut HomflyEngine) -> Result<bool> {
    Ok(mfw_degrees(d, engine)?.holds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandSupport {
    pub index: u64,
    pub e_plus: usize,
    pub e_minus: usize,
    pub sign: i64,
    pub support: Option<(i64, i64)>,
    /// `[(n-1)(w-O) - 2e_-, (n-1)(w+O) + 2e_+]`
    pub bound: Interval,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportVerification {
    pub n: u32,
    pub thm2_interval: Interval,
    pub total: LaurentPoly1,
    pub total_support: Option<(i64, i64)>,
    pub details: Vec<SummandSupport>,
    pub holds: bool,
}

fn within(support: Option<(i64, i64)>, iv: &Interval) -> bool {
    support.is_none_or(|(lo, hi)| iv.contains(lo) && iv.contains(hi))
}

pub fn verify_support(b: &BraidWord, n: u32) -> Result<SupportVerification> {
    verify_support_with(b, n, &Caps::default())
}

/// Checks every state-sum summand against its own bound and the `thm2`
/// interval, and the total against the `thm2` interval.
pub fn verify_support_with(b: &BraidWord, n: u32, caps: &Caps) -> Result<SupportVerification> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let k = n as i64 - 1;
    let (w, o) = (b.writhe(), b.strands() as i64);
    let thm2_interval = Interval(
        k * (w - o) - 2 * b.c_minus() as i64,
        k * (w + o) + 2 * b.c_plus() as i64,
    );
    let terms = state_terms(b, n, caps, &Conventions::default())?;
    let mut total = LaurentPoly1::zero();
    let mut details = Vec::with_capacity(terms.len());
    for t in terms {
        let bound = Interval(
            k * (w - o) - 2 * t.e_minus as i64,
            k * (w + o) + 2 * t.e_plus as i64,
        );
        let support = t.term.support();
        details.push(SummandSupport {
            index: t.index,
            e_plus: t.e_plus,
            e_minus: t.e_minus,
            sign: t.sign,
            support,
            bound,
            holds: within(support, &bound) && within(support, &thm2_interval),
        });
        if t.sign > 0 {
            total += t.term;
        } else {
            total -= &t.term;
        }
    }
    let total_support = total.support();
    let holds = within(total_support, &thm2_interval) && details.iter().all(|d| d.holds);
    Ok(SupportVerification {
        n,
        thm2_interval,
        total,
        total_support,
        details,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_to_diagram, seifert_stats};
    use proptest::prelude::*;

    fn stats(s: &str) -> SeifertStats {
        seifert_stats(&braid_to_diagram(&s.parse().unwrap()))
    }

    #[test]
    fn trefoil_report() {
        let r = bennequin_report(&stats("2: 1 1 1"), 2).unwrap();
        assert_eq!(r.thm3_interval, Interval(1, 5));
        assert_eq!(r.thm2_interval, Interval(1, 11));
        assert_eq!(r.case, Case::Positive);
        let t = r.thm4.unwrap();
        assert_eq!((t.gp_min, t.gp_max_upper), (Some(1), Some(3)));
        assert_eq!(r.chi_s_exact, Some(-1));
        assert_eq!(r.rasmussen.spbi_lower, 1);
        assert!(r.knot_only_flags.is_empty());
        let b = r.thm1_box.unwrap();
        assert_eq!((b.gmax, b.gmin), (Interval(-1, 3), Interval(-3, 1)));
    }

    #[test]
    fn mixed_report() {
        let r = bennequin_report(&stats("3: 1 -2"), 3).unwrap();
        assert_eq!(r.case, Case::Mixed);
        assert_eq!(r.thm4.unwrap().interval, Interval(-2, 2));
        assert_eq!(r.thm2_interval, Interval(-8, 8));
        assert_eq!(r.chi_s_exact, None);
    }

    #[test]
    fn no_crossings_report() {
        let r = bennequin_report(&stats("1:"), 2).unwrap();
        assert_eq!(r.case, Case::NoCrossings);
        assert_eq!(r.thm3_interval, Interval(-1, 1));
        assert!(r.thm4.is_none() && r.thm1_box.is_none());
        assert_eq!(r.chi_s_exact, None);
    }

    #[test]
    fn link_flags() {
        let r = bennequin_report(&stats("2: 1 1"), 2).unwrap();
        assert_eq!(r.knot_only_flags, vec!["thm3", "thm4", "spbi", "kbi"]);
        assert_eq!(r.chi_s_exact, None);
    }

    #[test]
    fn rejects_small_n() {
        assert!(bennequin_report(&stats("1:"), 1).is_err());
    }

    #[test]
    fn scaled_family() {
        let r = bennequin_report(&stats("2: 1 -1 1"), 2).unwrap();
        // w = 1, O = 2, c- = 1: lower = -1 - 2/(n-1)
        assert_eq!(r.scaled_thm2[0].lower, "-3");
        assert_eq!(r.scaled_thm2[1].lower, "-2");
        assert_eq!(r.scaled_thm2[2].lower, "-5/3");
        assert_eq!(r.scaled_thm2.len(), 7);
    }

    #[test]
    fn torus_knots() {
        for (s, expected) in [
            ("2: 1 1 1", 1),
            ("2: 1 1 1 1 1", 3),
            ("3: 1 2 1 2 1 2 1 2", 5),
        ] {
            let r = bennequin_report(&stats(s), 2).unwrap();
            assert_eq!(r.thm4.unwrap().gp_min, Some(expected), "{s}");
            assert_eq!(r.chi_s_exact, Some(-expected), "{s}");
        }
    }

    #[test]
    fn support_examples() {
        let r = verify_support(&"1:".parse().unwrap(), 3).unwrap();
        assert_eq!(
            (r.total_support, r.thm2_interval),
            (Some((-2, 2)), Interval(-2, 2))
        );
        assert!(r.holds);
        let r = verify_support(&"2: 1 1 1".parse().unwrap(), 2).unwrap();
        assert_eq!(r.thm2_interval, Interval(1, 11));
        assert!(r.holds);
        assert_eq!(r.details.len(), 8);
        let r = verify_support(&"2: -1 -1 -1".parse().unwrap(), 2).unwrap();
        assert_eq!(r.thm2_interval, Interval(-11, -1));
        assert!(r.holds);
    }

    #[test]
    fn mfw_verifier() {
        let mut e = HomflyEngine::default();
        for s in ["1:", "2: 1 1 1", "3: 1 -2 1 -2", "3: 2 2 -1"] {
            assert!(
                verify_mfw(&braid_to_diagram(&s.parse().unwrap()), &mut e).unwrap(),
                "{s}"
            );
        }
    }

    fn stats_strategy() -> impl Strategy<Value = SeifertStats> {
        (1usize..8, 0usize..12, 0usize..12, 1usize..4).prop_flat_map(|(o, cp, cm, comps)| {
            (0..=o, 0..=o).prop_map(move |(gt, lt)| {
                let lt = lt.min(o - gt);
                SeifertStats {
                    writhe: cp as i64 - cm as i64,
                    circles: o,
                    c_plus: cp,
                    c_minus: cm,
                    o_gt: if cp == 0 { 0 } else { gt },
                    o_lt: if cm == 0 { 0 } else { lt },
                    o_geq: o - if cm == 0 { 0 } else { lt },
                    o_leq: o - if cp == 0 { 0 } else { gt },
                    components: comps,
                }
            })
        })
    }

    proptest! {
        #[test]
        fn nesting(s in stats_strategy(), n in 2u32..9) {
            let r = bennequin_report(&s, n).unwrap();
            prop_assert!(r.thm2_interval.contains_interval(&r.thm3_interval));
            if r.case == Case::Mixed {
                prop_assert!(r.thm3_interval.contains_interval(&r.thm4.unwrap().interval));
            }
        }

        #[test]
        fn mirror_antisymmetry(b in crate::diagram::tests::braid_strategy(4, 8), n in 2u32..6) {
            let r = bennequin_report(&seifert_stats(&braid_to_diagram(&b)), n).unwrap();
            let m = bennequin_report(&seifert_stats(&braid_to_diagram(&b.mirror())), n).unwrap();
            prop_assert_eq!(m.thm2_interval, r.thm2_interval.negated());
            prop_assert_eq!(m.thm3_interval, r.thm3_interval.negated());
            prop_assert_eq!(m.mfw.lower, -r.mfw.upper);
            if let (Some(a), Some(b)) = (r.thm4, m.thm4) {
                prop_assert_eq!(b.interval, a.interval.negated());
            }
        }
    }
}
