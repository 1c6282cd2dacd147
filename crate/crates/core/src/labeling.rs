//! Two-colour labelings of closed braid-like graphs and the splitting of a
//! graph along a labeling.
//!
//! Positions are 1-based with `left` the lower position `p` of a wide edge at
//! `p` and `right` the position `p + 1`, strands read upward. A labeling is
//! stored level by level: level `k` holds the labels of all strands just
//! below wide edge `k` (level `e` wraps around to level 0 through the
//! closure).

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::resolution::{ResolvedGraph, Slice};

pub const DEFAULT_MAX_SEGMENTS: usize = 64;

/// A regular edge of a closed braid-like graph: the `index`-th piece of the
/// strand at `pos`, counting from the piece that crosses the closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Segment {
    pub pos: usize,
    pub index: usize,
}

/// The wide edges of `g` touching each position, as indices into the
/// wide-edge list.
fn touching(g: &ResolvedGraph) -> Vec<Vec<usize>> {
    let mut t = vec![Vec::new(); g.strands() + 1];
    for (k, s) in g.wide_edges().enumerate() {
        t[s.pos].push(k);
        t[s.pos + 1].push(k);
    }
    t
}

pub fn segments(g: &ResolvedGraph) -> Vec<Segment> {
    let t = touching(g);
    (1..=g.strands())
        .flat_map(|pos| (0..t[pos].len().max(1)).map(move |index| Segment { pos, index }))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    /// `levels[k][p - 1]`; one level when the graph has no wide edges.
    levels: Vec<Vec<u8>>,
}

impl Labeling {
    /// Builds a labeling from explicit levels, checking conservation and
    /// constancy along segments.
    pub fn from_levels(g: &ResolvedGraph, levels: Vec<Vec<u8>>) -> Result<Self> {
        let f = Self { levels };
        if f.is_valid(g) {
            Ok(f)
        } else {
            Err(Error::InvalidArgument(
                "not a labeling of this graph".into(),
            ))
        }
    }

    /// Label of the strand at `pos` just below wide edge `level` (taken mod e).
    pub fn at(&self, level: usize, pos: usize) -> u8 {
        self.levels[level % self.levels.len()][pos - 1]
    }

    pub fn levels(&self) -> &[Vec<u8>] {
        &self.levels
    }

    pub fn is_valid(&self, g: &ResolvedGraph) -> bool {
        let wides: Vec<&Slice> = g.wide_edges().collect();
        let expected_levels = wides.len().max(1);
        if self.levels.len() != expected_levels
            || self
                .levels
                .iter()
                .any(|l| l.len() != g.strands() || l.iter().any(|&x| x != 1 && x != 2))
        {
            return false;
        }
        wides.iter().enumerate().all(|(k, s)| {
            let (below, above) = (&self.levels[k], &self.levels[(k + 1) % expected_levels]);
            let p = s.pos - 1;
            let untouched = (0..g.strands()).all(|i| i == p || i == p + 1 || below[i] == above[i]);
            let mut a = [below[p], below[p + 1]];
            let mut b = [above[p], above[p + 1]];
            a.sort_unstable();
            b.sort_unstable();
            untouched && a == b
        })
    }

    /// Label of every segment.
    pub fn segment_labels(&self, g: &ResolvedGraph) -> Vec<(Segment, u8)> {
        let t = touching(g);
        segments(g)
            .into_iter()
            .map(|s| {
                // segment 0 covers level 0; segment i starts above the i-th touching edge
                let level = if s.index == 0 {
                    0
                } else {
                    t[s.pos][s.index - 1] + 1
                };
                (s, self.at(level, s.pos))
            })
            .collect()
    }

    /// Exchanges labels 1 and 2.
    pub fn swapped(&self) -> Self {
        Self {
            levels: self
                .levels
                .iter()
                .map(|l| l.iter().map(|&x| 3 - x).collect())
                .collect(),
        }
    }

    pub fn serialize_for<'a>(&'a self, g: &'a ResolvedGraph) -> LabelingJson<'a> {
        LabelingJson { f: self, g }
    }
}

/// `[[[pos, index], label], ...]`
pub struct LabelingJson<'a> {
    f: &'a Labeling,
    g: &'a ResolvedGraph,
}

impl Serialize for LabelingJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let labels = self.f.segment_labels(self.g);
        let mut seq = s.serialize_seq(Some(labels.len()))?;
        for (seg, l) in labels {
            seq.serialize_element(&((seg.pos, seg.index), l))?;
        }
        seq.end()
    }
}

/// All labelings of `g`, in lexicographic order of their levels.
pub fn enumerate_labelings(g: &ResolvedGraph, max_segments: usize) -> Result<Vec<Labeling>> {
    let count = segments(g).len();
    if count > max_segments {
        return Err(Error::CapExceeded {
            what: "segments",
            value: count as u64,
            cap: max_segments as u64,
        });
    }
    let wides: Vec<usize> = g.wide_positions();
    let mut out = Vec::new();
    if g.is_empty() {
        out.push(Labeling {
            levels: vec![Vec::new()],
        });
        return Ok(out);
    }
    for bits in 0..1u64 << g.strands() {
        let start: Vec<u8> = (0..g.strands())
            .map(|i| 1 + (bits >> i & 1) as u8)
            .collect();
        let mut levels = vec![start];
        extend(&wides, &mut levels, &mut out);
    }
    out.sort();
    Ok(out)
}

/// Depth-first over the wide edges; labels are forced except at a wide edge
/// with two different labels entering, where they may pass straight or
/// swap sides.
fn extend(wides: &[usize], levels: &mut Vec<Vec<u8>>, out: &mut Vec<Labeling>) {
    let k = levels.len() - 1;
    if k == wides.len() {
        let closes = wides.is_empty() || levels[k] == levels[0];
        if closes {
            let mut l = levels.clone();
            if !wides.is_empty() {
                l.pop();
            }
            out.push(Labeling { levels: l });
        }
        return;
    }
    let p = wides[k] - 1;
    let cur = levels[k].clone();
    levels.push(cur.clone());
    extend(wides, levels, out);
    levels.pop();
    if cur[p] != cur[p + 1] {
        let mut swapped = cur;
        swapped.swap(p, p + 1);
        levels.push(swapped);
        extend(wides, levels, out);
        levels.pop();
    }
}

/// `⟨E|Γ|f⟩` for the wide edge with index `edge` (0-based among wide edges).
///
/// `+1` when label 2 runs straight up the left side and label 1 up the right,
/// `-1` for the reverse, `0` otherwise.
pub fn local_interaction(g: &ResolvedGraph, f: &Labeling, edge: usize) -> i64 {
    let p = g
        .wide_edges()
        .nth(edge)
        .expect("wide edge index in range")
        .pos;
    let entering = (f.at(edge, p), f.at(edge, p + 1));
    let exiting = (f.at(edge + 1, p), f.at(edge + 1, p + 1));
    match (entering, exiting) {
        ((2, 1), (2, 1)) => 1,
        ((1, 2), (1, 2)) => -1,
        _ => 0,
    }
}

/// `⟨Γ|f⟩`
pub fn total_interaction(g: &ResolvedGraph, f: &Labeling) -> i64 {
    (0..g.e()).map(|k| local_interaction(g, f, k)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitPair {
    pub graph1: ResolvedGraph,
    pub graph2: ResolvedGraph,
    pub interaction: i64,
    pub r1: i64,
    pub r2: i64,
    pub crossings_between: usize,
}

/// Splits `g` along `f` into the label-1 graph and the label-2 graph.
///
/// Each wide edge is kept (all four labels equal), dissolved into two
/// vertical strands (labels stay on their sides), or replaced by a
/// transversal crossing between the two subgraphs (labels swap sides). Each
/// subgraph is renumbered by rank among the strands carrying its label; a
/// transversal crossing never changes that rank.
pub fn split(g: &ResolvedGraph, f: &Labeling) -> SplitPair {
    let mut sub: [Vec<Slice>; 2] = [Vec::new(), Vec::new()];
    let mut crossings_between = 0;
    for (k, s) in g.wide_edges().enumerate() {
        let p = s.pos;
        let (l, r) = (f.at(k, p), f.at(k, p + 1));
        if l == r {
            let rank = (1..p).filter(|&i| f.at(k, i) == l).count() + 1;
            sub[l as usize - 1].push(Slice::wide(rank, s.origin));
        } else if f.at(k + 1, p) != l {
            crossings_between += 1;
        }
    }
    let ones = if g.is_empty() {
        0
    } else {
        (1..=g.strands()).filter(|&i| f.at(0, i) == 1).count()
    };
    let [s1, s2] = sub;
    let graph1 = ResolvedGraph::new(ones, s1).expect("ranks stay in range");
    let graph2 = ResolvedGraph::new(g.strands() - ones, s2).expect("ranks stay in range");
    SplitPair {
        r1: rotation_number(&graph1),
        r2: rotation_number(&graph2),
        interaction: total_interaction(g, f),
        graph1,
        graph2,
        crossings_between,
    }
}

/// Total rotation number of the circles left after replacing each wide edge
/// by two parallel arcs (left to left, right to right). With the
/// counterclockwise closure every such circle turns once positively.
pub fn rotation_number(g: &ResolvedGraph) -> i64 {
    let segs = segments(g);
    let t = touching(g);
    let offset: Vec<usize> = {
        let mut acc = vec![0; g.strands() + 2];
        for p in 1..=g.strands() {
            acc[p + 1] = acc[p] + t[p].len().max(1);
        }
        acc
    };
    let mut parent: Vec<usize> = (0..segs.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    // the segment below and the segment above each touching edge are joined
    for p in 1..=g.strands() {
        let n = t[p].len();
        for i in 0..n {
            let below = offset[p] + i;
            let above = offset[p] + (i + 1) % n;
            let (a, b) = (find(&mut parent, below), find(&mut parent, above));
            parent[a] = b;
        }
    }
    (0..segs.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count() as i64
}

/// `σ_{m,n}(Γ, f) = ⟨Γ|f⟩ + m r(Γ_{f,1}) - n r(Γ_{f,2})`
pub fn sigma(g: &ResolvedGraph, f: &Labeling, m: i64, n: i64) -> i64 {
    let sp = split(g, f);
    sp.interaction + m * sp.r1 - n * sp.r2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::braid_like_graphs;

    fn labelings(g: &ResolvedGraph) -> Vec<Labeling> {
        enumerate_labelings(g, DEFAULT_MAX_SEGMENTS).unwrap()
    }

    /// Labeling of a graph with a single wide edge from strand labels.
    fn strands(g: &ResolvedGraph, labels: &[u8]) -> Labeling {
        Labeling::from_levels(g, vec![labels.to_vec()]).unwrap()
    }

    #[test]
    fn circle_labelings() {
        let ls = labelings(&ResolvedGraph::circle());
        assert_eq!(ls.len(), 2);
    }

    #[test]
    fn theta_labelings() {
        let g = ResolvedGraph::theta();
        let ls = labelings(&g);
        assert_eq!(ls.len(), 4);
        let strand_pairs: Vec<(u8, u8)> = ls.iter().map(|f| (f.at(0, 1), f.at(0, 2))).collect();
        assert_eq!(strand_pairs, vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(segments(&g).len(), 2);
    }

    #[test]
    fn theta2_labelings() {
        assert_eq!(labelings(&ResolvedGraph::theta2()).len(), 6);
    }

    #[test]
    fn segment_cap() {
        let g = ResolvedGraph::from_wide_positions(2, &[1; 40]).unwrap();
        assert!(matches!(
            enumerate_labelings(&g, DEFAULT_MAX_SEGMENTS),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn interactions() {
        let g = ResolvedGraph::theta();
        assert_eq!(local_interaction(&g, &strands(&g, &[2, 1]), 0), 1);
        assert_eq!(local_interaction(&g, &strands(&g, &[1, 2]), 0), -1);
        assert_eq!(local_interaction(&g, &strands(&g, &[1, 1]), 0), 0);
        assert_eq!(total_interaction(&g, &strands(&g, &[2, 2])), 0);
        assert_eq!(total_interaction(&g, &strands(&g, &[1, 2])), -1);
        assert_eq!(total_interaction(&g, &strands(&g, &[2, 1])), 1);

        // labels swapping sides interact trivially
        let g2 = ResolvedGraph::theta2();
        let f = Labeling::from_levels(&g2, vec![vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(local_interaction(&g2, &f, 0), 0);
        assert_eq!(local_interaction(&g2, &f, 1), 0);
    }

    #[test]
    fn split_examples() {
        let g = ResolvedGraph::theta();
        let sp = split(&g, &strands(&g, &[1, 1]));
        assert_eq!(
            (sp.graph1.clone(), sp.graph2.clone(), sp.interaction),
            (g.clone(), ResolvedGraph::empty(), 0)
        );

        let sp = split(&g, &strands(&g, &[1, 2]));
        assert_eq!(sp.graph1, ResolvedGraph::circle());
        assert_eq!(sp.graph2, ResolvedGraph::circle());
        assert_eq!(
            (sp.interaction, sp.r1, sp.r2, sp.crossings_between),
            (-1, 1, 1, 0)
        );

        // three strands, wide edge at 1 twice so the labels can swap and swap back
        let g3 = ResolvedGraph::from_wide_positions(3, &[1, 1]).unwrap();
        let f = Labeling::from_levels(&g3, vec![vec![1, 2, 1], vec![2, 1, 1]]).unwrap();
        let sp = split(&g3, &f);
        assert_eq!(sp.crossings_between, 2);
        assert_eq!(
            sp.graph1,
            ResolvedGraph::from_wide_positions(2, &[]).unwrap()
        );
        assert_eq!(sp.graph2, ResolvedGraph::circle());
        assert_eq!((sp.r1, sp.r2, sp.interaction), (2, 1, 0));
    }

    #[test]
    fn split_keeps_wide_edge_at_rank() {
        // label-1 strands at positions 2,3 joined by a wide edge; rank 1 in graph1
        let g = ResolvedGraph::from_wide_positions(3, &[2]).unwrap();
        let f = strands(&g, &[2, 1, 1]);
        let sp = split(&g, &f);
        assert_eq!(sp.graph1, ResolvedGraph::theta());
        assert_eq!(sp.graph2, ResolvedGraph::circle());
    }

    #[test]
    fn rotation_numbers() {
        assert_eq!(rotation_number(&ResolvedGraph::circle()), 1);
        assert_eq!(rotation_number(&ResolvedGraph::theta()), 2);
        assert_eq!(rotation_number(&ResolvedGraph::empty()), 0);
        assert_eq!(
            rotation_number(&ResolvedGraph::from_wide_positions(3, &[1, 2, 1]).unwrap()),
            3
        );
    }

    #[test]
    fn sigma_examples() {
        let g = ResolvedGraph::theta();
        assert_eq!(sigma(&g, &strands(&g, &[1, 1]), 1, 1), 2);
        assert_eq!(sigma(&g, &strands(&g, &[1, 2]), 1, 1), -1);
        assert_eq!(sigma(&g, &strands(&g, &[2, 1]), 1, 2), 0);
    }

    #[test]
    fn segment_label_json() {
        let g = ResolvedGraph::theta();
        let f = strands(&g, &[1, 2]);
        let json = serde_json::to_string(&f.serialize_for(&g)).unwrap();
        assert_eq!(json, "[[[1,0],1],[[2,0],2]]");
    }

    #[test]
    fn invalid_levels_rejected() {
        let g = ResolvedGraph::theta2();
        assert!(Labeling::from_levels(&g, vec![vec![1, 1], vec![2, 1]]).is_err());
        assert!(Labeling::from_levels(&g, vec![vec![1, 3], vec![1, 3]]).is_err());
        assert!(Labeling::from_levels(&g, vec![vec![1, 2]]).is_err());
    }

    /// Brute-force oracle: every assignment of labels to segments, filtered
    /// by conservation.
    fn brute_force_count(g: &ResolvedGraph) -> usize {
        let segs = segments(g);
        let t = touching(g);
        let e = g.e();
        let mut count = 0;
        for bits in 0..1u64 << segs.len() {
            let label = |pos: usize, level: usize| -> u8 {
                let level = level % e.max(1);
                let before = t[pos].iter().filter(|&&k| k < level).count();
                let idx = if t[pos].is_empty() {
                    0
                } else {
                    before % t[pos].len()
                };
                let flat = segs
                    .iter()
                    .position(|s| s.pos == pos && s.index == idx)
                    .unwrap();
                1 + (bits >> flat & 1) as u8
            };
            let ok = g.wide_edges().enumerate().all(|(k, s)| {
                let mut a = [label(s.pos, k), label(s.pos + 1, k)];
                let mut b = [label(s.pos, k + 1), label(s.pos + 1, k + 1)];
                a.sort_unstable();
                b.sort_unstable();
                a == b
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn exhaustive_family_invariants() {
        for g in braid_like_graphs(3, 3) {
            let ls = labelings(&g);
            assert!(ls.len() >= 2);
            assert_eq!(ls.len(), brute_force_count(&g), "{g}");
            let r = rotation_number(&g);
            assert_eq!(r, g.circle_count() as i64);
            for f in &ls {
                assert!(f.is_valid(&g));
                let sp = split(&g, f);
                assert_eq!(r, sp.r1 + sp.r2);
                assert!(sp.graph1.e() + sp.graph2.e() <= g.e());
                assert!(
                    sp.interaction.unsigned_abs() as usize <= g.e() - sp.graph1.e() - sp.graph2.e()
                );
                assert!(sp.interaction.unsigned_abs() as usize <= g.e() - sp.graph1.e());
                assert_eq!(sp.r1, sp.graph1.circle_count() as i64);
                assert_eq!(sp.r2, sp.graph2.circle_count() as i64);
                assert_eq!(sp.crossings_between % 2, 0);

                let swapped = split(&g, &f.swapped());
                assert_eq!(swapped.graph1, sp.graph2);
                assert_eq!(swapped.graph2, sp.graph1);
                assert_eq!(swapped.interaction, -sp.interaction);
            }
            let ones = Labeling {
                levels: vec![vec![1; g.strands()]; g.e().max(1)],
            };
            assert!(ls.contains(&ones) && ls.contains(&ones.swapped()));
            let sp = split(&g, &ones);
            assert_eq!(sp.graph1, g.wide_only());
            assert!(sp.graph2.is_empty());
        }
    }
}
