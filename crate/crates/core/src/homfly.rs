//! HOMFLY polynomial by skein recursion toward descending diagrams, the
//! `sl(n)` polynomial as an alternating state sum over resolutions, and the
//! cross-check between the two.
//!
//! Skein convention: `a P(L₋) - a^{-1} P(L₊) = z P(L₀)`, `P(unknot) = 1`.
//! With it the `k`-component unlink is `δ^{k-1}`, `δ = (a - a^{-1}) z^{-1}`,
//! and a positive diagram has positive `a`-degrees.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::diagram::{
    braid_to_diagram, seifert_stats, ArcId, BraidWord, Crossing, LinkDiagram, Sign,
};
use crate::error::{Error, Result};
use crate::moy::{moy_with, WideConvention, DEFAULT_MAX_DIM};
use crate::poly::{LaurentPoly1, LaurentPoly2};
use crate::resolution::{
    grading_shift, resolve_all, SignConvention, DEFAULT_MAX_RESOLVED_CROSSINGS,
};

pub const DEFAULT_MAX_SKEIN_CROSSINGS: usize = 16;

/// A diagram in skein-recursion form: crossings plus a count of
/// crossing-free loops. After [`SkeinNode::canonical`] arcs are numbered
/// along the components, each component starting at its basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkeinNode {
    crossings: Vec<Crossing>,
    loops: usize,
}

impl SkeinNode {
    pub fn from_diagram(d: &LinkDiagram) -> Self {
        Self {
            crossings: d.crossings().to_vec(),
            loops: d.free_loops().count(),
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn heads(&self) -> HashMap<ArcId, (usize, bool)> {
        let mut m = HashMap::with_capacity(2 * self.crossings.len());
        for (i, c) in self.crossings.iter().enumerate() {
            m.insert(c.under.incoming, (i, true));
            m.insert(c.over.incoming, (i, false));
        }
        m
    }

    fn next_arc(&self, heads: &HashMap<ArcId, (usize, bool)>, a: ArcId) -> ArcId {
        let (i, under) = heads[&a];
        if under {
            self.crossings[i].under.outgoing
        } else {
            self.crossings[i].over.outgoing
        }
    }

    /// Renumbers arcs `0, 1, 2, ...` along each component, components taken
    /// in order of their smallest arc, each starting from that arc. Returns
    /// the renumbered node and its component count (loops excluded).
    pub fn canonical(&self) -> (Self, usize) {
        let heads = self.heads();
        let mut arcs: Vec<ArcId> = heads.keys().copied().collect();
        arcs.sort_unstable();
        let mut relabel: HashMap<ArcId, ArcId> = HashMap::with_capacity(arcs.len());
        let mut components = 0;
        for &start in &arcs {
            if relabel.contains_key(&start) {
                continue;
            }
            components += 1;
            let mut a = start;
            while !relabel.contains_key(&a) {
                relabel.insert(a, ArcId(relabel.len() as u32));
                a = self.next_arc(&heads, a);
            }
        }
        let r = |a: ArcId| relabel[&a];
        let mut crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| {
                let mut c = *c;
                c.under.incoming = r(c.under.incoming);
                c.under.outgoing = r(c.under.outgoing);
                c.over.incoming = r(c.over.incoming);
                c.over.outgoing = r(c.over.outgoing);
                c
            })
            .collect();
        crossings.sort_unstable();
        (
            Self {
                crossings,
                loops: self.loops,
            },
            components,
        )
    }

    /// For a canonical node: the first crossing met from below on the
    /// basepointed traversal, if any.
    fn first_ascending(&self) -> Option<usize> {
        let heads = self.heads();
        let mut seen = vec![false; self.crossings.len()];
        for a in 0..heads.len() as u32 {
            let (i, under) = heads[&ArcId(a)];
            if !seen[i] {
                if under {
                    return Some(i);
                }
                seen[i] = true;
            }
        }
        None
    }

    pub fn switched(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.crossings[i] = out.crossings[i].switched();
        out
    }

    /// Replaces crossing `i` by its oriented smoothing.
    pub fn smoothed(&self, i: usize) -> Self {
        let c = self.crossings[i];
        let mut rest = self.crossings.clone();
        rest.remove(i);
        let mut rename: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        let find = |rename: &BTreeMap<ArcId, ArcId>, mut a: ArcId| {
            while let Some(&b) = rename.get(&a) {
                a = b;
            }
            a
        };
        for (x, y) in [
            (c.under.incoming, c.over.outgoing),
            (c.over.incoming, c.under.outgoing),
        ] {
            let (rx, ry) = (find(&rename, x), find(&rename, y));
            if rx != ry {
                rename.insert(rx.max(ry), rx.min(ry));
            }
        }
        let fix = |a: ArcId| find(&rename, a);
        for d in &mut rest {
            d.under.incoming = fix(d.under.incoming);
            d.under.outgoing = fix(d.under.outgoing);
            d.over.incoming = fix(d.over.incoming);
            d.over.outgoing = fix(d.over.outgoing);
        }
        let mut closed: Vec<ArcId> = [fix(c.under.incoming), fix(c.over.incoming)]
            .into_iter()
            .filter(|a| {
                !rest
                    .iter()
                    .any(|d| d.under.incoming == *a || d.over.incoming == *a)
            })
            .collect();
        closed.sort_unstable();
        closed.dedup();
        Self {
            crossings: rest,
            loops: self.loops + closed.len(),
        }
    }

    pub fn sign(&self, i: usize) -> Sign {
        self.crossings[i].sign
    }
}

/// Memoizing skein evaluator.
pub struct HomflyEngine {
    max_crossings: usize,
    memo: HashMap<SkeinNode, LaurentPoly2>,
}

impl Default for HomflyEngine {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_SKEIN_CROSSINGS)
    }
}

impl HomflyEngine {
    pub fn new(max_crossings: usize) -> Self {
        Self {
            max_crossings,
            memo: HashMap::new(),
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn homfly(&mut self, d: &LinkDiagram) -> Result<LaurentPoly2> {
        if d.crossing_count() > self.max_crossings {
            return Err(Error::CapExceeded {
                what: "skein crossings",
                value: d.crossing_count() as u64,
                cap: self.max_crossings as u64,
            });
        }
        Ok(self.eval(&SkeinNode::from_diagram(d)))
    }

    pub fn eval(&mut self, node: &SkeinNode) -> LaurentPoly2 {
        let (node, components) = node.canonical();
        if let Some(p) = self.memo.get(&node) {
            return p.clone();
        }
        let value = match node.first_ascending() {
            None => LaurentPoly2::delta().pow((components + node.loops - 1) as u32),
            Some(i) => {
                let switched = self.eval(&node.switched(i));
                let smoothed = self.eval(&node.smoothed(i));
                match node.sign(i) {
                    // P(L+) = a^2 P(L-) - a z P(L0)
                    Sign::Positive => {
                        &(&LaurentPoly2::az(2, 0) * &switched)
                            - &(&LaurentPoly2::az(1, 1) * &smoothed)
                    }
                    // P(L-) = a^-2 P(L+) + a^-1 z P(L0)
                    Sign::Negative => {
                        &(&LaurentPoly2::az(-2, 0) * &switched)
                            + &(&LaurentPoly2::az(-1, 1) * &smoothed)
                    }
                }
            }
        };
        self.memo.insert(node, value.clone());
        value
    }
}

pub fn homfly(d: &LinkDiagram) -> Result<LaurentPoly2> {
    HomflyEngine::default().homfly(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MfwReport {
    pub min_a: i64,
    pub max_a: i64,
    /// `a`-degree range of `δ·P`, the polynomial normalized to `δ` on the unknot.
    pub framed_min_a: i64,
    pub framed_max_a: i64,
    pub w_minus_o: i64,
    pub w_plus_o: i64,
    pub holds: bool,
}

/// Compares the `a`-degree range of the HOMFLY polynomial with
/// `[w - O, w + O]`. Holds when both the unknot-normalized range and the
/// range of `δ·P` lie in that interval.
pub fn mfw_degrees(d: &LinkDiagram, engine: &mut HomflyEngine) -> Result<MfwReport> {
    let p = engine.homfly(d)?;
    let s = seifert_stats(d);
    let (min_a, max_a) = p
        .adeg_range()
        .ok_or_else(|| Error::InvalidDiagram("HOMFLY polynomial vanished".into()))?;
    let (framed_min_a, framed_max_a) = (&p * &LaurentPoly2::delta())
        .adeg_range()
        .expect("no zero divisors");
    let lo = s.writhe - s.circles as i64;
    let hi = s.writhe + s.circles as i64;
    Ok(MfwReport {
        min_a,
        max_a,
        framed_min_a,
        framed_max_a,
        w_minus_o: lo,
        w_plus_o: hi,
        holds: lo <= min_a && max_a <= hi && lo <= framed_min_a && framed_max_a <= hi,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_resolved_crossings: usize,
    pub max_dim: u64,
    pub max_skein_crossings: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_resolved_crossings: DEFAULT_MAX_RESOLVED_CROSSINGS,
            max_dim: DEFAULT_MAX_DIM,
            max_skein_crossings: DEFAULT_MAX_SKEIN_CROSSINGS,
        }
    }
}

/// How the state sum and the HOMFLY specialization are matched up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conventions {
    pub sign: SignConvention,
    pub wide: WideConvention,
    /// `a = q^{a_sign · n}`
    pub a_sign: i64,
    /// `z = z_sign · (q - q^{-1})`
    pub z_sign: i64,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            sign: SignConvention::WideOdd,
            wide: WideConvention::NegativeSwap,
            a_sign: 1,
            z_sign: 1,
        }
    }
}

/// One summand `sign · q^{(n-1)w + e_+ - e_-} · moy(Γ, n)` of the state sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateTerm {
    pub index: u64,
    pub e_plus: usize,
    pub e_minus: usize,
    pub sign: i64,
    pub shift: i64,
    pub term: LaurentPoly1,
}

pub fn state_terms(
    b: &BraidWord,
    n: u32,
    caps: &Caps,
    conv: &Conventions,
) -> Result<Vec<StateTerm>> {
    let w = b.writhe();
    let resolutions = resolve_all(b, caps.max_resolved_crossings)?;
    let mut out = Vec::with_capacity(resolutions.len());
    for r in &resolutions {
        let sign = conv.sign.sign(r, b.c_minus());
        let shift = grading_shift(r.e_plus as i64, r.e_minus as i64, w, n as i64);
        let term = moy_with(&r.graph, n, caps.max_dim, conv.wide)?.shift(shift);
        out.push(StateTerm {
            index: r.index,
            e_plus: r.e_plus,
            e_minus: r.e_minus,
            sign,
            shift,
            term,
        });
    }
    Ok(out)
}

pub fn sln_state_sum(b: &BraidWord, n: u32) -> Result<LaurentPoly1> {
    sln_state_sum_with(b, n, &Caps::default(), &Conventions::default())
}

/// `Σ_Γ sign(Γ) q^{(n-1)w + e_+(Γ) - e_-(Γ)} moy(Γ, n)` over all resolutions.
pub fn sln_state_sum_with(
    b: &BraidWord,
    n: u32,
    caps: &Caps,
    conv: &Conventions,
) -> Result<LaurentPoly1> {
    Ok(state_terms(b, n, caps, conv)?
        .into_iter()
        .map(|t| if t.sign > 0 { t.term } else { -t.term })
        .sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlnCheck {
    pub n: u32,
    /// state sum
    pub lhs: LaurentPoly1,
    /// `[n] · P(a = q^n, z = q - q^{-1})`
    pub rhs: LaurentPoly1,
    pub homfly: LaurentPoly2,
    pub holds: bool,
}

pub fn sln_vs_homfly_check(b: &BraidWord, n: u32) -> Result<SlnCheck> {
    sln_vs_homfly_check_with(
        b,
        n,
        &Caps::default(),
        &Conventions::default(),
        &mut HomflyEngine::default(),
    )
}

pub fn sln_vs_homfly_check_with(
    b: &BraidWord,
    n: u32,
    caps: &Caps,
    conv: &Conventions,
    engine: &mut HomflyEngine,
) -> Result<SlnCheck> {
    let d = braid_to_diagram(b);
    if d.crossing_count() > caps.max_skein_crossings {
        return Err(Error::CapExceeded {
            what: "skein crossings",
            value: d.crossing_count() as u64,
            cap: caps.max_skein_crossings as u64,
        });
    }
    let p = engine.homfly(&d)?;
    let lhs = sln_state_sum_with(b, n, caps, conv)?;
    let rhs = p
        .specialize(conv.a_sign * n as i64, conv.z_sign)
        .map(|s| &LaurentPoly1::qint(n) * &s)
        .ok_or_else(|| {
            Error::InvalidArgument("specialization is not a Laurent polynomial".into())
        })?;
    Ok(SlnCheck {
        n,
        holds: lhs == rhs,
        lhs,
        rhs,
        homfly: p,
    })
}

/// Re-checks the frozen conventions on the trefoil and the figure-eight.
pub fn conventions_self_check() -> bool {
    ["2: 1 1 1", "3: 1 -2 1 -2", "2: 1 1", "2: -1"]
        .iter()
        .all(|s| {
            let b: BraidWord = s.parse().expect("built-in braid");
            (2..=3).all(|n| sln_vs_homfly_check(&b, n).map(|r| r.holds).unwrap_or(false))
        })
}
