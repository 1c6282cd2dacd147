//! Closed braid-like graphs and the resolutions of a closed braid.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::diagram::BraidWord;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_RESOLVED_CROSSINGS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Origin {
    #[serde(rename = "+")]
    FromPositive,
    #[serde(rename = "-")]
    FromNegative,
    #[serde(rename = "x")]
    Intrinsic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SliceKind {
    #[serde(rename = "id")]
    Identity,
    #[serde(rename = "wide")]
    Wide,
}

/// One horizontal level of a closed braid-like graph. `pos` is the left
/// strand position (1-based) of the crossing or wide edge it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slice {
    pub pos: usize,
    pub kind: SliceKind,
    pub origin: Origin,
}

impl Slice {
    pub fn wide(pos: usize, origin: Origin) -> Self {
        Self {
            pos,
            kind: SliceKind::Wide,
            origin,
        }
    }

    pub fn identity(pos: usize, origin: Origin) -> Self {
        Self {
            pos,
            kind: SliceKind::Identity,
            origin,
        }
    }

    pub fn is_wide(&self) -> bool {
        self.kind == SliceKind::Wide
    }
}

/// A closed graph made of `strands` upward strands with wide edges between
/// adjacent strands; the top of strand `i` joins the bottom of strand `i`
/// counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ResolvedGraph {
    strands: usize,
    slices: Vec<Slice>,
}

impl ResolvedGraph {
    pub fn new(strands: usize, slices: Vec<Slice>) -> Result<Self> {
        for s in &slices {
            if s.pos == 0 || s.pos >= strands {
                return Err(Error::InvalidArgument(format!(
                    "slice position {} out of range for {strands} strands",
                    s.pos
                )));
            }
        }
        Ok(Self { strands, slices })
    }

    /// Graph with intrinsic wide edges at the given positions, bottom to top.
    pub fn from_wide_positions(strands: usize, positions: &[usize]) -> Result<Self> {
        Self::new(
            strands,
            positions
                .iter()
                .map(|&p| Slice::wide(p, Origin::Intrinsic))
                .collect(),
        )
    }

    pub fn empty() -> Self {
        Self {
            strands: 0,
            slices: Vec::new(),
        }
    }

    pub fn circle() -> Self {
        Self {
            strands: 1,
            slices: Vec::new(),
        }
    }

    pub fn theta() -> Self {
        Self::from_wide_positions(2, &[1]).unwrap()
    }

    /// Two strands joined by two stacked wide edges.
    pub fn theta2() -> Self {
        Self::from_wide_positions(2, &[1, 1]).unwrap()
    }

    pub fn named(name: &str) -> Option<Self> {
        match name {
            "empty" => Some(Self::empty()),
            "circle" => Some(Self::circle()),
            "theta" => Some(Self::theta()),
            "theta2" => Some(Self::theta2()),
            _ => None,
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn is_empty(&self) -> bool {
        self.strands == 0
    }

    /// Wide slices only, in order.
    pub fn wide_edges(&self) -> impl Iterator<Item = &Slice> + '_ {
        self.slices.iter().filter(|s| s.is_wide())
    }

    pub fn wide_positions(&self) -> Vec<usize> {
        self.wide_edges().map(|s| s.pos).collect()
    }

    /// e(Γ)
    pub fn e(&self) -> usize {
        self.wide_edges().count()
    }

    pub fn e_plus(&self) -> usize {
        self.wide_edges()
            .filter(|s| s.origin == Origin::FromPositive)
            .count()
    }

    pub fn e_minus(&self) -> usize {
        self.wide_edges()
            .filter(|s| s.origin == Origin::FromNegative)
            .count()
    }

    /// O(Γ): circles left after replacing every wide edge by two parallel
    /// arcs. Wide edges keep each strand at its position, so this is the
    /// strand count.
    pub fn circle_count(&self) -> usize {
        self.strands
    }

    /// Same graph with identity slices dropped.
    pub fn wide_only(&self) -> Self {
        Self {
            strands: self.strands,
            slices: self.wide_edges().copied().collect(),
        }
    }
}

impl fmt::Display for ResolvedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph {}:", self.strands)?;
        for s in self.wide_edges() {
            write!(f, " {}", s.pos)?;
        }
        Ok(())
    }
}

impl FromStr for ResolvedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

/// Accepts a built-in name (`empty`, `circle`, `theta`, `theta2`) or
/// `graph <strands>: <pos>*` listing wide-edge positions bottom to top.
pub fn parse_graph(text: &str) -> Result<ResolvedGraph> {
    let t = text.trim();
    if let Some(g) = ResolvedGraph::named(t) {
        return Ok(g);
    }
    let Some(rest) = t.strip_prefix("graph") else {
        return Err(Error::Syntax {
            pos: text.len() - text.trim_start().len(),
            msg: format!("expected a graph name or 'graph <strands>: <pos>*', got {t:?}"),
        });
    };
    let offset = text.len() - rest.len() - (text.len() - text.trim_end().len());
    let (strands, positions) = rest.split_once(':').ok_or(Error::Syntax {
        pos: offset,
        msg: "expected ':'".into(),
    })?;
    let strands: usize = strands.trim().parse().map_err(|_| Error::Syntax {
        pos: offset,
        msg: "bad strand count".into(),
    })?;
    let positions = positions
        .split_whitespace()
        .map(|p| {
            p.parse::<usize>().map_err(|_| Error::Syntax {
                pos: offset,
                msg: format!("bad wide-edge position {p:?}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ResolvedGraph::from_wide_positions(strands, &positions)
}

/// Every closed braid-like graph with `1..=max_strands` strands and at most
/// `max_wide` wide edges.
pub fn braid_like_graphs(max_strands: usize, max_wide: usize) -> Vec<ResolvedGraph> {
    let mut out = Vec::new();
    for strands in 1..=max_strands {
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..=max_wide {
            let mut longer = Vec::new();
            for w in &words {
                out.push(ResolvedGraph::from_wide_positions(strands, w).unwrap());
                for p in 1..strands {
                    let mut w2 = w.clone();
                    w2.push(p);
                    longer.push(w2);
                }
            }
            words = longer;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Resolution {
    /// Bit `i` set means letter `i` was resolved to a wide edge.
    pub index: u64,
    #[serde(flatten)]
    pub graph: ResolvedGraph,
    pub e_plus: usize,
    pub e_minus: usize,
    pub hom_degree: i64,
}

/// Sign attached to each resolution in the alternating state sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignConvention {
    /// `(-1)^{e_+ + e_-}`: the oriented smoothing of either crossing type
    /// sits in even degree.
    #[default]
    WideOdd,
    /// `(-1)^{e_+ + c_- - e_-}`: for negative crossings the wide edge sits in
    /// even degree instead.
    NegativeWideEven,
}

impl SignConvention {
    pub fn sign(self, r: &Resolution, c_minus: usize) -> i64 {
        let parity = match self {
            SignConvention::WideOdd => r.e_plus + r.e_minus,
            SignConvention::NegativeWideEven => r.e_plus + c_minus - r.e_minus,
        };
        if parity % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

fn check_cap(b: &BraidWord, cap: usize) -> Result<()> {
    if b.len() > cap || b.len() >= 64 {
        return Err(Error::CapExceeded {
            what: "crossings to resolve",
            value: b.len() as u64,
            cap: cap.min(63) as u64,
        });
    }
    Ok(())
}

/// The resolution selected by `index` (bit `i` = letter `i` becomes wide).
pub fn resolve(b: &BraidWord, index: u64) -> Resolution {
    let mut slices = Vec::with_capacity(b.len());
    let (mut e_plus, mut e_minus) = (0, 0);
    for (i, &g) in b.letters().iter().enumerate() {
        let pos = g.unsigned_abs() as usize;
        let origin = if g > 0 {
            Origin::FromPositive
        } else {
            Origin::FromNegative
        };
        if index >> i & 1 == 1 {
            match origin {
                Origin::FromPositive => e_plus += 1,
                _ => e_minus += 1,
            }
            slices.push(Slice::wide(pos, origin));
        } else {
            slices.push(Slice::identity(pos, origin));
        }
    }
    Resolution {
        index,
        graph: ResolvedGraph {
            strands: b.strands(),
            slices,
        },
        e_plus,
        e_minus,
        hom_degree: e_plus as i64 - e_minus as i64,
    }
}

/// All `2^c` resolutions in binary-counter order over the letters.
pub fn resolve_all(b: &BraidWord, cap: usize) -> Result<Vec<Resolution>> {
    check_cap(b, cap)?;
    Ok((0..1u64 << b.len()).map(|i| resolve(b, i)).collect())
}

pub fn oriented_resolution(b: &BraidWord) -> ResolvedGraph {
    resolve(b, 0).graph
}

/// `(n-1)w + e_+ - e_-`
pub fn grading_shift(e_plus: i64, e_minus: i64, w: i64, n: i64) -> i64 {
    (n - 1) * w + e_plus - e_minus
}
