//! MOY evaluation of closed braid-like graphs by a quantum trace of
//! sparse transfer operators on `V^{⊗O}`, `V` the `n`-dimensional graded
//! space with basis `b_1..b_n` in degrees `n+1-2i`.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::labeling::{enumerate_labelings, split, DEFAULT_MAX_SEGMENTS};
use crate::poly::LaurentPoly1;
use crate::resolution::ResolvedGraph;

pub const DEFAULT_MAX_DIM: u64 = 4096;

/// Off-diagonal sign of the wide-edge operator on `span{b_i⊗b_j, b_j⊗b_i}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WideConvention {
    /// `[[q, -1], [-1, q^{-1}]]`
    #[default]
    NegativeSwap,
    /// `[[q, 1], [1, q^{-1}]]`
    PositiveSwap,
}

impl WideConvention {
    fn swap_coefficient(self) -> i64 {
        match self {
            WideConvention::NegativeSwap => -1,
            WideConvention::PositiveSwap => 1,
        }
    }
}

/// Basis words of `V^{⊗O}` packed base `n`, digit `p-1` holding the (0-based)
/// letter on strand `p`.
#[derive(Clone, Copy, Debug)]
struct Words {
    n: u64,
    strands: usize,
}

impl Words {
    fn letter(&self, w: u64, p: usize) -> u64 {
        w / self.n.pow(p as u32) % self.n
    }

    fn with_pair(&self, w: u64, p: usize, left: u64, right: u64) -> u64 {
        let (sl, sr) = (self.n.pow(p as u32), self.n.pow(p as u32 + 1));
        w - self.letter(w, p) * sl - self.letter(w, p + 1) * sr + left * sl + right * sr
    }

    /// Exponent of `q` in the quantum-trace weight of a diagonal entry.
    fn weight(&self, w: u64) -> i64 {
        (0..self.strands)
            .map(|p| self.n as i64 - 1 - 2 * self.letter(w, p) as i64)
            .sum()
    }
}

/// The operator built so far, column by column: `columns[w]` is the image
/// of basis word `w`.
pub struct TransferState {
    words: Words,
    convention: WideConvention,
    columns: Vec<HashMap<u64, LaurentPoly1>>,
}

impl TransferState {
    pub fn identity(
        n: u32,
        strands: usize,
        max_dim: u64,
        convention: WideConvention,
    ) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let dim = (n as u64)
            .checked_pow(strands as u32)
            .filter(|&d| d <= max_dim)
            .ok_or(Error::CapExceeded {
                what: "n^O",
                value: (n as u64).saturating_pow(strands as u32),
                cap: max_dim,
            })?;
        let columns = (0..dim)
            .map(|w| HashMap::from([(w, LaurentPoly1::one())]))
            .collect();
        Ok(Self {
            words: Words {
                n: n as u64,
                strands,
            },
            convention,
            columns,
        })
    }

    pub fn dimension(&self) -> u64 {
        self.columns.len() as u64
    }

    /// Applies the wide-edge operator on tensor factors `pos, pos+1`
    /// (1-based). It kills `b_i⊗b_i` and on `span{b_i⊗b_j, b_j⊗b_i}`, `i<j`,
    /// acts by `[[q, s], [s, q^{-1}]]`.
    pub fn apply_wide(&mut self, pos: usize) {
        let p = pos - 1;
        let words = self.words;
        let q = LaurentPoly1::q();
        let qinv = LaurentPoly1::monomial(1, -1);
        let s = BigInt::from(self.convention.swap_coefficient());
        for col in &mut self.columns {
            let mut next: HashMap<u64, LaurentPoly1> = HashMap::with_capacity(col.len());
            for (w, c) in col.drain() {
                let (i, j) = (words.letter(w, p), words.letter(w, p + 1));
                if i == j {
                    continue;
                }
                let diag = if i < j { &q } else { &qinv };
                let swapped = words.with_pair(w, p, j, i);
                *next.entry(swapped).or_default() += c.scale(&s);
                *next.entry(w).or_default() += c * diag;
            }
            next.retain(|_, c| !c.is_zero());
            *col = next;
        }
    }

    /// `Σ_w q^{weight(w)} ⟨w|T|w⟩`
    pub fn quantum_trace(&self) -> LaurentPoly1 {
        self.columns
            .iter()
            .enumerate()
            .filter_map(|(w, col)| {
                let w = w as u64;
                col.get(&w).map(|c| c.shift(self.words.weight(w)))
            })
            .sum()
    }
}

pub fn moy(g: &ResolvedGraph, n: u32) -> Result<LaurentPoly1> {
    moy_with(g, n, DEFAULT_MAX_DIM, WideConvention::default())
}

/// MOY polynomial of `g` at `sl(n)`. The empty graph evaluates to 1.
pub fn moy_with(
    g: &ResolvedGraph,
    n: u32,
    max_dim: u64,
    convention: WideConvention,
) -> Result<LaurentPoly1> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if g.is_empty() {
        return Ok(LaurentPoly1::one());
    }
    let mut state = TransferState::identity(n, g.strands(), max_dim, convention)?;
    for s in g.wide_edges() {
        state.apply_wide(s.pos);
    }
    Ok(state.quantum_trace())
}

/// The 4x4 wide-edge matrix on `V⊗V` for `n = 2`, rows and columns indexed
/// by `(i, j)` packed as `2j + i`.
pub fn wide_matrix_n2(convention: WideConvention) -> Vec<Vec<LaurentPoly1>> {
    let mut state = TransferState::identity(2, 2, 4, convention).expect("4 <= 4");
    state.apply_wide(1);
    let mut m = vec![vec![LaurentPoly1::zero(); 4]; 4];
    for (col, entries) in state.columns.iter().enumerate() {
        for (&row, c) in entries {
            m[row as usize][col] = c.clone();
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionReport {
    pub m: u32,
    pub n: u32,
    pub lhs: LaurentPoly1,
    pub rhs: LaurentPoly1,
    pub holds: bool,
}

/// Checks `moy(g, m+n) = Σ_f q^{σ_{m,n}(g,f)} moy(g_{f,1}, n) moy(g_{f,2}, m)`.
pub fn verify_composition(
    g: &ResolvedGraph,
    m: u32,
    n: u32,
    max_dim: u64,
) -> Result<CompositionReport> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidArgument("m and n must be positive".into()));
    }
    let conv = WideConvention::default();
    let lhs = moy_with(g, m + n, max_dim, conv)?;
    let mut rhs = LaurentPoly1::zero();
    for f in enumerate_labelings(g, DEFAULT_MAX_SEGMENTS)? {
        let sp = split(g, &f);
        let sigma = sp.interaction + m as i64 * sp.r1 - n as i64 * sp.r2;
        let a = moy_with(&sp.graph1, n, max_dim, conv)?;
        if a.is_zero() {
            continue;
        }
        let b = moy_with(&sp.graph2, m, max_dim, conv)?;
        rhs += (&a * &b).shift(sigma);
    }
    Ok(CompositionReport {
        m,
        n,
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportReport {
    pub moy: LaurentPoly1,
    /// `[min_deg, max_deg]`, absent for the zero polynomial.
    pub support: Option<(i64, i64)>,
    /// `[-(n-1)O - e, (n-1)O + e]`
    pub bounds: (i64, i64),
    pub holds: bool,
}

/// Checks that every degree carried by `moy(g, n)` lies in
/// `[-(n-1)O - e, (n-1)O + e]`.
pub fn support_check(g: &ResolvedGraph, n: u32, max_dim: u64) -> Result<SupportReport> {
    let p = moy_with(g, n, max_dim, WideConvention::default())?;
    let reach = (n as i64 - 1) * g.circle_count() as i64 + g.e() as i64;
    let support = p.support();
    let holds = support.is_none_or(|(lo, hi)| -reach <= lo && hi <= reach);
    Ok(SupportReport {
        moy: p,
        support,
        bounds: (-reach, reach),
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::braid_like_graphs;

    type P = LaurentPoly1;

    fn moy2(g: &ResolvedGraph, n: u32) -> P {
        moy(g, n).unwrap()
    }

    #[test]
    fn wide_operator_is_quasi_idempotent() {
        for conv in [WideConvention::NegativeSwap, WideConvention::PositiveSwap] {
            let w = wide_matrix_n2(conv);
            let two = P::qint(2);
            for i in 0..4 {
                for j in 0..4 {
                    let sq: P = (0..4).map(|k| &w[i][k] * &w[k][j]).sum();
                    assert_eq!(sq, &two * &w[i][j]);
                }
            }
        }
    }

    #[test]
    fn wide_matrix_entries() {
        let w = wide_matrix_n2(WideConvention::default());
        // (0,1) -> index 2, (1,0) -> index 1
        assert_eq!(w[2][2], P::q());
        assert_eq!(w[1][1], P::monomial(1, -1));
        assert_eq!(w[1][2], P::constant(-1));
        assert_eq!(w[2][1], P::constant(-1));
        assert!(w[0][0].is_zero() && w[3][3].is_zero());
    }

    #[test]
    fn circles() {
        for n in 1..6 {
            assert_eq!(moy2(&ResolvedGraph::circle(), n), P::qint(n));
        }
        for k in 1..=4 {
            for n in 1..=4 {
                let g = ResolvedGraph::from_wide_positions(k, &[]).unwrap();
                assert_eq!(moy2(&g, n), P::qint(n).pow(k as u32));
            }
        }
    }

    #[test]
    fn theta_values() {
        let theta = ResolvedGraph::theta();
        assert_eq!(moy2(&theta, 2), P::qint(2));
        assert!(moy2(&theta, 1).is_zero());
        for n in 1..=4 {
            assert_eq!(moy2(&theta, n), &P::qint(n) * &P::qint(n - 1));
        }
    }

    /// Independent sum `Σ_{i<j} (q + q^{-1}) q^{2(n+1) - 2i - 2j}`.
    fn theta_oracle(n: u32) -> P {
        let n = n as i64;
        let mut acc = P::zero();
        for i in 1..=n {
            for j in i + 1..=n {
                acc += P::from_terms([
                    (2 * (n + 1) - 2 * i - 2 * j + 1, 1),
                    (2 * (n + 1) - 2 * i - 2 * j - 1, 1),
                ]);
            }
        }
        acc
    }

    #[test]
    fn theta_against_oracle() {
        for n in 1..=4 {
            assert_eq!(moy2(&ResolvedGraph::theta(), n), theta_oracle(n));
        }
    }

    #[test]
    fn empty_graph_is_unit() {
        assert_eq!(moy2(&ResolvedGraph::empty(), 3), P::one());
    }

    #[test]
    fn caps_and_arguments() {
        let g = ResolvedGraph::from_wide_positions(7, &[]).unwrap();
        assert!(matches!(moy(&g, 4), Err(Error::CapExceeded { .. })));
        assert!(moy_with(&g, 4, 1 << 14, WideConvention::default()).is_ok());
        assert!(matches!(
            moy(&ResolvedGraph::circle(), 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn composition_examples() {
        let r = verify_composition(&ResolvedGraph::theta(), 1, 1, DEFAULT_MAX_DIM).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, P::qint(2));

        for (m, n) in [(1, 1), (1, 3), (2, 2), (3, 1)] {
            let r = verify_composition(&ResolvedGraph::circle(), m, n, DEFAULT_MAX_DIM).unwrap();
            assert!(r.holds);
            assert_eq!(
                r.lhs,
                &P::qint(n).shift(m as i64) + &P::qint(m).shift(-(n as i64))
            );
        }
        assert!(
            verify_composition(&ResolvedGraph::theta2(), 1, 1, DEFAULT_MAX_DIM)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn support_examples() {
        let r = support_check(&ResolvedGraph::theta(), 2, DEFAULT_MAX_DIM).unwrap();
        assert_eq!(
            (r.support, r.bounds, r.holds),
            (Some((-1, 1)), (-3, 3), true)
        );
        let r = support_check(&ResolvedGraph::circle(), 4, DEFAULT_MAX_DIM).unwrap();
        assert_eq!(
            (r.support, r.bounds, r.holds),
            (Some((-3, 3)), (-3, 3), true)
        );
        let r = support_check(&ResolvedGraph::theta(), 1, DEFAULT_MAX_DIM).unwrap();
        assert_eq!((r.support, r.holds), (None, true));
    }

    #[test]
    fn exhaustive_family_shape() {
        for g in braid_like_graphs(3, 3) {
            let one = moy2(&g, 1);
            assert_eq!(one, if g.e() == 0 { P::one() } else { P::zero() });
            for n in 1..=3 {
                let p = moy2(&g, n);
                assert!(p.is_bar_symmetric(), "{g} n={n}: {p}");
                assert!(p.has_nonnegative_coefficients(), "{g} n={n}: {p}");
                let alt = moy_with(&g, n, DEFAULT_MAX_DIM, WideConvention::PositiveSwap).unwrap();
                assert_eq!(alt, p);
            }
        }
    }
}
