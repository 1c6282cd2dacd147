//! Braid words, oriented link diagrams, and the Seifert algorithm.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// A word in the braid generators on `strands` strands. Letter `g` stands
/// for `σ_{|g|}` with the sign of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidArgument(
                "a braid needs at least one strand".into(),
            ));
        }
        for &g in &letters {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::GeneratorOutOfRange {
                    generator: g as i64,
                    strands,
                });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|g| g.signum() as i64).sum()
    }

    pub fn c_plus(&self) -> usize {
        self.letters.iter().filter(|&&g| g > 0).count()
    }

    pub fn c_minus(&self) -> usize {
        self.letters.iter().filter(|&&g| g < 0).count()
    }

    /// The word with every crossing switched.
    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().map(|g| -g).collect(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for g in &self.letters {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_braid(s)
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        let digits = end;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits {
            return Err(self.err("expected an integer"));
        }
        let v = self.src[start..end]
            .parse::<i64>()
            .map_err(|e| self.err(e.to_string()))?;
        self.pos = end;
        Ok(v)
    }
}

/// Parses `"<strands> ':' (<ws> <signed-int>)*"`.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let strands = cur.int()?;
    if strands < 1 {
        return Err(cur.err("strand count must be positive"));
    }
    cur.skip_ws();
    if !cur.eat(':') {
        return Err(cur.err("expected ':'"));
    }
    let mut letters = Vec::new();
    loop {
        let before = cur.pos;
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
        if cur.pos == before && !letters.is_empty() {
            return Err(cur.err("expected whitespace between letters"));
        }
        let at = cur.pos;
        let g = cur.int()?;
        if g == 0 {
            return Err(Error::Syntax {
                pos: at,
                msg: "generator index must be nonzero".into(),
            });
        }
        letters.push(g);
    }
    let letters = letters
        .into_iter()
        .map(|g| {
            i32::try_from(g).map_err(|_| Error::GeneratorOutOfRange {
                generator: g,
                strands: strands as usize,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    BraidWord::new(strands as usize, letters)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ArcId(pub u32);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One strand passing through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pass {
    #[serde(rename = "in")]
    pub incoming: ArcId,
    #[serde(rename = "out")]
    pub outgoing: ArcId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Crossing {
    pub sign: Sign,
    pub under: Pass,
    pub over: Pass,
}

impl Crossing {
    pub fn new(sign: Sign, under: (u32, u32), over: (u32, u32)) -> Self {
        Self {
            sign,
            under: Pass {
                incoming: ArcId(under.0),
                outgoing: ArcId(under.1),
            },
            over: Pass {
                incoming: ArcId(over.0),
                outgoing: ArcId(over.1),
            },
        }
    }

    /// The same crossing with over and under exchanged.
    pub fn switched(&self) -> Self {
        Self {
            sign: self.sign.flip(),
            under: self.over,
            over: self.under,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Role {
    Under,
    Over,
}

/// An oriented link diagram given as signed crossings between arcs. Arcs
/// that touch no crossing are crossing-free loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    arcs: BTreeSet<ArcId>,
}

impl LinkDiagram {
    pub fn new(
        crossings: Vec<Crossing>,
        free_loops: impl IntoIterator<Item = ArcId>,
    ) -> Result<Self> {
        let mut heads: BTreeMap<ArcId, usize> = BTreeMap::new();
        let mut tails: BTreeMap<ArcId, usize> = BTreeMap::new();
        for (i, c) in crossings.iter().enumerate() {
            for pass in [c.under, c.over] {
                if heads.insert(pass.incoming, i).is_some() {
                    return Err(Error::InvalidDiagram(format!(
                        "arc {} enters more than one crossing",
                        pass.incoming
                    )));
                }
                if tails.insert(pass.outgoing, i).is_some() {
                    return Err(Error::InvalidDiagram(format!(
                        "arc {} leaves more than one crossing",
                        pass.outgoing
                    )));
                }
            }
        }
        for a in heads.keys() {
            if !tails.contains_key(a) {
                return Err(Error::InvalidDiagram(format!(
                    "arc {a} has a head but no tail"
                )));
            }
        }
        for a in tails.keys() {
            if !heads.contains_key(a) {
                return Err(Error::InvalidDiagram(format!(
                    "arc {a} has a tail but no head"
                )));
            }
        }
        let mut arcs: BTreeSet<ArcId> = heads.keys().copied().collect();
        for a in free_loops {
            if !arcs.insert(a) {
                return Err(Error::InvalidDiagram(format!(
                    "loop arc {a} also appears at a crossing or is repeated"
                )));
            }
        }
        Ok(Self { crossings, arcs })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arcs(&self) -> &BTreeSet<ArcId> {
        &self.arcs
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> impl Iterator<Item = ArcId> + '_ {
        let touched: BTreeSet<ArcId> = self
            .crossings
            .iter()
            .map(|c| c.under.incoming)
            .chain(self.crossings.iter().map(|c| c.over.incoming))
            .collect();
        self.arcs
            .iter()
            .copied()
            .filter(move |a| !touched.contains(a))
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Where each arc ends: the crossing index and the strand it enters as.
    pub(crate) fn heads(&self) -> BTreeMap<ArcId, (usize, Role)> {
        let mut m = BTreeMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            m.insert(c.under.incoming, (i, Role::Under));
            m.insert(c.over.incoming, (i, Role::Over));
        }
        m
    }

    /// Partition of the arcs into cycles of `next`.
    fn cycles(&self, next: impl Fn(ArcId) -> ArcId) -> Vec<Vec<ArcId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.arcs {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut a = start;
            while seen.insert(a) {
                cycle.push(a);
                a = next(a);
            }
            out.push(cycle);
        }
        out
    }

    /// Arc sequences of the link components.
    pub fn components(&self) -> Vec<Vec<ArcId>> {
        let heads = self.heads();
        self.cycles(|a| match heads.get(&a) {
            None => a,
            Some(&(i, Role::Under)) => self.crossings[i].under.outgoing,
            Some(&(i, Role::Over)) => self.crossings[i].over.outgoing,
        })
    }

    /// Arc sequences of the Seifert circles.
    pub fn seifert_circles(&self) -> Vec<Vec<ArcId>> {
        let heads = self.heads();
        self.cycles(|a| match heads.get(&a) {
            None => a,
            Some(&(i, Role::Under)) => self.crossings[i].over.outgoing,
            Some(&(i, Role::Over)) => self.crossings[i].under.outgoing,
        })
    }

    pub fn mirror(&self) -> Self {
        Self {
            crossings: self.crossings.iter().map(Crossing::switched).collect(),
            arcs: self.arcs.clone(),
        }
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.crossings {
            writeln!(
                f,
                "X {} {} {} {} {}",
                c.sign.symbol(),
                c.under.incoming,
                c.under.outgoing,
                c.over.incoming,
                c.over.outgoing
            )?;
        }
        for a in self.free_loops() {
            writeln!(f, "L {a}")?;
        }
        Ok(())
    }
}

impl FromStr for LinkDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_diagram(s)
    }
}

/// Parses one crossing per line,
/// `X <+|-> <in_under> <out_under> <in_over> <out_over>`, plus `L <arc>` for
/// crossing-free loops. Blank lines and `#` comments are ignored.
pub fn parse_diagram(text: &str) -> Result<LinkDiagram> {
    let mut crossings = Vec::new();
    let mut loops = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let line_start = offset;
        offset += line.len();
        let body = line.split('#').next().unwrap_or("");
        let mut fields = Vec::new();
        let mut pos = 0;
        for tok in body.split_whitespace() {
            let at = body[pos..].find(tok).map_or(pos, |i| pos + i);
            pos = at + tok.len();
            fields.push((line_start + at, tok));
        }
        let Some(&(kind_pos, kind)) = fields.first() else {
            continue;
        };
        let arc = |(p, t): (usize, &str)| -> Result<u32> {
            t.parse::<u32>().map_err(|_| Error::Syntax {
                pos: p,
                msg: format!("bad arc identifier {t:?}"),
            })
        };
        match kind {
            "X" => {
                if fields.len() != 6 {
                    return Err(Error::Syntax {
                        pos: kind_pos,
                        msg: "crossing line needs a sign and four arcs".into(),
                    });
                }
                let sign = match fields[1].1 {
                    "+" => Sign::Positive,
                    "-" => Sign::Negative,
                    other => {
                        return Err(Error::Syntax {
                            pos: fields[1].0,
                            msg: format!("bad crossing sign {other:?}"),
                        })
                    }
                };
                crossings.push(Crossing::new(
                    sign,
                    (arc(fields[2])?, arc(fields[3])?),
                    (arc(fields[4])?, arc(fields[5])?),
                ));
            }
            "L" => {
                if fields.len() != 2 {
                    return Err(Error::Syntax {
                        pos: kind_pos,
                        msg: "loop line needs exactly one arc".into(),
                    });
                }
                loops.push(ArcId(arc(fields[1])?));
            }
            other => {
                return Err(Error::Syntax {
                    pos: kind_pos,
                    msg: format!("unknown line kind {other:?}"),
                })
            }
        }
    }
    LinkDiagram::new(crossings, loops)
}

/// The closed-braid diagram of `b`, strands oriented upward and closed
/// counterclockwise. At a positive letter the strand coming from the left
/// position passes over.
pub fn braid_to_diagram(b: &BraidWord) -> LinkDiagram {
    let n = b.strands();
    let initial: Vec<u32> = (0..n as u32).collect();
    let mut current = initial.clone();
    let mut next_id = n as u32;
    let mut crossings = Vec::with_capacity(b.len());
    for &g in b.letters() {
        let p = g.unsigned_abs() as usize - 1;
        let (in_l, in_r) = (current[p], current[p + 1]);
        let (out_l, out_r) = (next_id, next_id + 1);
        next_id += 2;
        let c = if g > 0 {
            Crossing::new(Sign::Positive, (in_r, out_l), (in_l, out_r))
        } else {
            Crossing::new(Sign::Negative, (in_l, out_r), (in_r, out_l))
        };
        crossings.push(c);
        current[p] = out_l;
        current[p + 1] = out_r;
    }
    // close up: the top arc at each position is the bottom arc there
    let rename: BTreeMap<u32, u32> = current
        .iter()
        .zip(&initial)
        .filter(|(top, bottom)| top != bottom)
        .map(|(&top, &bottom)| (top, bottom))
        .collect();
    let fix = |a: ArcId| ArcId(*rename.get(&a.0).unwrap_or(&a.0));
    for c in &mut crossings {
        c.under.outgoing = fix(c.under.outgoing);
        c.over.outgoing = fix(c.over.outgoing);
    }
    let touched: BTreeSet<u32> = b
        .letters()
        .iter()
        .flat_map(|g| {
            let p = g.unsigned_abs();
            [p - 1, p]
        })
        .collect();
    let loops = (0..n as u32).filter(|p| !touched.contains(p)).map(ArcId);
    LinkDiagram::new(crossings, loops).expect("closed braid diagrams are well formed")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertStats {
    #[serde(rename = "w")]
    pub writhe: i64,
    #[serde(rename = "O")]
    pub circles: usize,
    pub c_plus: usize,
    pub c_minus: usize,
    #[serde(rename = "O_gt")]
    pub o_gt: usize,
    #[serde(rename = "O_lt")]
    pub o_lt: usize,
    #[serde(rename = "O_geq")]
    pub o_geq: usize,
    #[serde(rename = "O_leq")]
    pub o_leq: usize,
    pub components: usize,
}

impl SeifertStats {
    pub fn crossings(&self) -> usize {
        self.c_plus + self.c_minus
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    /// Statistics of the mirror diagram.
    pub fn mirror(&self) -> Self {
        Self {
            writhe: -self.writhe,
            c_plus: self.c_minus,
            c_minus: self.c_plus,
            o_gt: self.o_lt,
            o_lt: self.o_gt,
            o_geq: self.o_leq,
            o_leq: self.o_geq,
            ..*self
        }
    }
}

/// Runs the Seifert algorithm on `d`. A circle counts toward `O_>` when it
/// touches at least one crossing and every crossing it touches is positive;
/// `O_<` likewise for negative. Crossing-free circles count in neither.
pub fn seifert_stats(d: &LinkDiagram) -> SeifertStats {
    let circles = d.seifert_circles();
    let mut circle_of = BTreeMap::new();
    for (i, c) in circles.iter().enumerate() {
        for &a in c {
            circle_of.insert(a, i);
        }
    }
    // (touches positive, touches negative)
    let mut touches = vec![(false, false); circles.len()];
    for c in d.crossings() {
        for a in [c.under.incoming, c.over.incoming] {
            let t = &mut touches[circle_of[&a]];
            match c.sign {
                Sign::Positive => t.0 = true,
                Sign::Negative => t.1 = true,
            }
        }
    }
    let o = circles.len();
    let o_gt = touches.iter().filter(|&&(p, n)| p && !n).count();
    let o_lt = touches.iter().filter(|&&(p, n)| n && !p).count();
    let c_plus = d
        .crossings()
        .iter()
        .filter(|c| c.sign == Sign::Positive)
        .count();
    let c_minus = d.crossing_count() - c_plus;
    SeifertStats {
        writhe: d.writhe(),
        circles: o,
        c_plus,
        c_minus,
        o_gt,
        o_lt,
        o_geq: o - o_lt,
        o_leq: o - o_gt,
        components: component_count(d),
    }
}

pub fn component_count(d: &LinkDiagram) -> usize {
    d.components().len()
}
