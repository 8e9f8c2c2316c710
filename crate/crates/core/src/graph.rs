//! Labeled graphs with packed adjacency rows.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::forms::{Sign, Vector};

const WORD: usize = 64;

/// A finite simple graph whose vertices carry distinct packed labels,
/// kept in ascending label order.
#[derive(Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    labels: Vec<Vector>,
    words: usize,
    adj: Vec<u64>,
}

impl LabeledGraph {
    /// Edgeless graph on the given labels (sorted on the way in).
    pub fn empty(mut labels: Vec<Vector>) -> Result<Self> {
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(usage("vertex labels must be distinct"));
        }
        let words = labels.len().div_ceil(WORD).max(1);
        let adj = vec![0; words * labels.len()];
        Ok(Self { labels, words, adj })
    }

    /// Joins `a ≠ b` whenever `adjacent(a, b)`. Each row is evaluated
    /// independently, then the result is checked for symmetry.
    pub fn from_predicate<F>(labels: Vec<Vector>, adjacent: F) -> Result<Self>
    where
        F: Fn(Vector, Vector) -> bool + Sync,
    {
        let mut g = Self::empty(labels)?;
        let words = g.words;
        let labels = &g.labels;
        g.adj
            .par_chunks_mut(words)
            .enumerate()
            .for_each(|(i, row)| {
                let a = labels[i];
                for (j, &b) in labels.iter().enumerate() {
                    if i != j && adjacent(a, b) {
                        row[j / WORD] |= 1 << (j % WORD);
                    }
                }
            });
        g.validate()?;
        Ok(g)
    }

    /// Graph on labels `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty((0..n as u32).map(Vector).collect())?;
        for &(i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(usage(format!("bad edge ({i},{j}) on {n} vertices")));
            }
            g.set_edge(i, j, true);
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, i: usize, j: usize, on: bool) {
        let (wi, bi) = (j / WORD, 1u64 << (j % WORD));
        let (wj, bj) = (i / WORD, 1u64 << (i % WORD));
        if on {
            self.adj[i * self.words + wi] |= bi;
            self.adj[j * self.words + wj] |= bj;
        } else {
            self.adj[i * self.words + wi] &= !bi;
            self.adj[j * self.words + wj] &= !bj;
        }
    }

    /// Symmetric rows, empty diagonal, no stray bits past the last vertex.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            if self.has_edge(i, i) {
                return Err(Error::Invariant(format!("loop at vertex {i}")));
            }
            let row = self.row(i);
            if !n.is_multiple_of(WORD) && row[self.words - 1] >> (n % WORD) != 0 {
                return Err(Error::Invariant(format!("stray bits in row {i}")));
            }
            for j in 0..i {
                if self.has_edge(i, j) != self.has_edge(j, i) {
                    return Err(Error::Invariant(format!(
                        "adjacency not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Vector] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> Vector {
        self.labels[i]
    }

    pub fn index_of(&self, label: Vector) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// Number of 64-bit words per adjacency row.
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.adj[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    pub fn common_neighbors(&self, i: usize, j: usize) -> usize {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |i| {
            (i + 1..self.n())
                .filter(move |&j| self.has_edge(i, j))
                .map(move |j| (i, j))
        })
    }

    /// Bit mask (in row layout) of the given vertex indices.
    pub fn vertex_mask(&self, indices: impl IntoIterator<Item = usize>) -> Vec<u64> {
        let mut mask = vec![0u64; self.words];
        for i in indices {
            mask[i / WORD] |= 1 << (i % WORD);
        }
        mask
    }

    /// Mask with every vertex bit set.
    pub fn full_mask(&self) -> Vec<u64> {
        self.vertex_mask(0..self.n())
    }

    /// Resolves labels to indices; unknown labels are a usage error.
    pub fn indices_of(&self, labels: &[Vector]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|&l| {
                self.index_of(l)
                    .ok_or_else(|| usage(format!("label {:#x} is not a vertex", l.0)))
            })
            .collect()
    }

    /// Same graph plus one isolated vertex.
    pub fn with_isolated_vertex(&self, label: Vector) -> Result<Self> {
        let mut labels = self.labels.clone();
        labels.push(label);
        let mut g = Self::empty(labels)?;
        let map: Vec<usize> = self
            .labels
            .iter()
            .map(|&l| g.index_of(l).expect("label kept"))
            .collect();
        for (i, j) in self.edges() {
            g.set_edge(map[i], map[j], true);
        }
        Ok(g)
    }

    /// Degrees inside the subgraph induced by `indices`: `None` unless they
    /// are all equal.
    pub fn induced_regular_degree(&self, indices: &[usize]) -> Option<usize> {
        let mask = self.vertex_mask(indices.iter().copied());
        let mut degrees = indices.iter().map(|&i| {
            self.row(i)
                .iter()
                .zip(&mask)
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum::<usize>()
        });
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph(v={}, e={})", self.n(), self.edge_count())
    }
}

/// Parameters `(v, k, λ, μ)` of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    /// `k(k − λ − 1) = (v − k − 1)μ`.
    pub fn is_feasible(&self) -> bool {
        let (v, k, l, m) = (
            self.v as i128,
            self.k as i128,
            self.lambda as i128,
            self.mu as i128,
        );
        k * (k - l - 1) == (v - k - 1) * m
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Outcome of the exhaustive strong-regularity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SrgVerdict {
    Srg(SrgParams),
    /// Regular with no edges (λ undefined) or complete (μ undefined).
    Degenerate {
        v: u64,
        k: u64,
        lambda: Option<u64>,
        mu: Option<u64>,
    },
    NotRegular,
    NotSrg,
}

impl SrgVerdict {
    pub fn v(&self) -> Option<u64> {
        match *self {
            SrgVerdict::Srg(p) => Some(p.v),
            SrgVerdict::Degenerate { v, .. } => Some(v),
            _ => None,
        }
    }

    pub fn k(&self) -> Option<u64> {
        match *self {
            SrgVerdict::Srg(p) => Some(p.k),
            SrgVerdict::Degenerate { k, .. } => Some(k),
            _ => None,
        }
    }

    pub fn lambda(&self) -> Option<u64> {
        match *self {
            SrgVerdict::Srg(p) => Some(p.lambda),
            SrgVerdict::Degenerate { lambda, .. } => lambda,
            _ => None,
        }
    }

    pub fn mu(&self) -> Option<u64> {
        match *self {
            SrgVerdict::Srg(p) => Some(p.mu),
            SrgVerdict::Degenerate { mu, .. } => mu,
            _ => None,
        }
    }

    pub fn params(&self) -> Option<SrgParams> {
        match *self {
            SrgVerdict::Srg(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for SrgVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |x: Option<u64>| x.map_or("undefined".to_string(), |x| x.to_string());
        match *self {
            SrgVerdict::Srg(p) => write!(f, "srg{p}"),
            SrgVerdict::Degenerate { v, k, lambda, mu } => write!(
                f,
                "degenerate(v={v}, k={k}, λ={}, μ={})",
                opt(lambda),
                opt(mu)
            ),
            SrgVerdict::NotRegular => write!(f, "not regular"),
            SrgVerdict::NotSrg => write!(f, "regular, not strongly regular"),
        }
    }
}

#[derive(Clone, Copy)]
struct Range {
    lo: usize,
    hi: usize,
}

impl Range {
    const EMPTY: Range = Range {
        lo: usize::MAX,
        hi: 0,
    };

    fn push(&mut self, x: usize) {
        self.lo = self.lo.min(x);
        self.hi = self.hi.max(x);
    }

    fn merge(self, other: Range) -> Range {
        Range {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    fn constant(&self) -> Option<Option<u64>> {
        if self.lo == usize::MAX {
            Some(None)
        } else if self.lo == self.hi {
            Some(Some(self.lo as u64))
        } else {
            None
        }
    }
}

/// Exhaustive strong-regularity test by row-intersection popcounts.
pub fn srg_params(g: &LabeledGraph) -> Result<SrgVerdict> {
    let n = g.n();
    if n < 2 {
        return Err(usage("srg_params needs at least two vertices"));
    }
    let k = g.degree(0);
    if (1..n).any(|i| g.degree(i) != k) {
        return Ok(SrgVerdict::NotRegular);
    }
    let (adjacent, non_adjacent) = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut adj = Range::EMPTY;
            let mut non = Range::EMPTY;
            for j in i + 1..n {
                let c = g.common_neighbors(i, j);
                if g.has_edge(i, j) {
                    adj.push(c);
                } else {
                    non.push(c);
                }
            }
            (adj, non)
        })
        .reduce(
            || (Range::EMPTY, Range::EMPTY),
            |a, b| (a.0.merge(b.0), a.1.merge(b.1)),
        );
    let (Some(lambda), Some(mu)) = (adjacent.constant(), non_adjacent.constant()) else {
        return Ok(SrgVerdict::NotSrg);
    };
    let (v, k) = (n as u64, k as u64);
    Ok(match (lambda, mu) {
        (Some(lambda), Some(mu)) => {
            let p = SrgParams { v, k, lambda, mu };
            if !p.is_feasible() {
                return Err(Error::Invariant(format!("infeasible parameters {p}")));
            }
            SrgVerdict::Srg(p)
        }
        (lambda, mu) => SrgVerdict::Degenerate { v, k, lambda, mu },
    })
}

/// Graph families with closed-form parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `NO^±(2m,2)`.
    NoEven,
    /// `NO^±(2m+1,q)`.
    NoOdd,
    /// `Γ(O^±(2m,q))`.
    GammaO,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::NoEven => "NO-even",
            Family::NoOdd => "NO-odd",
            Family::GammaO => "GammaO",
        }
    }

    /// Human-readable family member, e.g. `NO^-(4,2)`.
    pub fn instance(self, m: u32, q: u32, sign: Sign) -> String {
        match self {
            Family::NoEven => format!("NO^{sign}({},2)", 2 * m),
            Family::NoOdd => format!("NO^{sign}({},{q})", 2 * m + 1),
            Family::GammaO => format!("Γ(O^{sign}({},{q}))", 2 * m),
        }
    }
}

/// Formula values; `None` marks a formula that does not produce a
/// nonnegative integer (it then must describe a degenerate graph, and the
/// enumeration decides).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedParams {
    pub v: u64,
    pub k: u64,
    pub lambda: Option<u64>,
    pub mu: Option<u64>,
}

impl ExpectedParams {
    /// Whether an enumerated verdict agrees with the formulas.
    ///
    /// `v` and `k` must match exactly. A parameter the graph leaves
    /// undefined (no edges, or no non-edges) is vacuous: the graph is then
    /// pinned down by `v` and `k`. A parameter the graph defines must equal
    /// a well-defined formula value.
    pub fn matches(&self, verdict: &SrgVerdict) -> bool {
        let (Some(v), Some(k)) = (verdict.v(), verdict.k()) else {
            return false;
        };
        let agree = |computed: Option<u64>, formula: Option<u64>| match computed {
            None => true,
            Some(c) => formula == Some(c),
        };
        v == self.v
            && k == self.k
            && agree(verdict.lambda(), self.lambda)
            && agree(verdict.mu(), self.mu)
    }
}

impl fmt::Display for ExpectedParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |x: Option<u64>| x.map_or("n/a".to_string(), |x| x.to_string());
        write!(
            f,
            "({},{},{},{})",
            self.v,
            self.k,
            opt(self.lambda),
            opt(self.mu)
        )
    }
}

type Q = Ratio<i128>;

fn qpow(q: i128, e: i64) -> Q {
    if e >= 0 {
        Q::from_integer(q.pow(e as u32))
    } else {
        Q::new(1, q.pow((-e) as u32))
    }
}

fn as_count(x: Q) -> Option<u64> {
    (x.is_integer() && x >= Q::from_integer(0)).then(|| x.to_integer() as u64)
}

/// Closed-form parameters of `NO^±(2m,2)`, `NO^±(2m+1,q)` and
/// `Γ(O^±(2m,q))`.
pub fn expected_params(family: Family, m: u32, q: u32, sign: Sign) -> Result<ExpectedParams> {
    if q < 2 || !q.is_power_of_two() || q > 256 {
        return Err(usage(format!("q = {q} is not a power of two up to 256")));
    }
    let min_m = match family {
        Family::NoEven | Family::GammaO => 2,
        Family::NoOdd => 1,
    };
    if m < min_m || m > 12 {
        return Err(usage(format!(
            "{} needs {min_m} ≤ m ≤ 12, got {m}",
            family.name()
        )));
    }
    if family == Family::NoEven && q != 2 {
        return Err(usage("NO-even is defined over GF(2) only"));
    }
    let s = sign.value() as i128;
    let m = m as i64;
    let qi = q as i128;
    let p = |e: i64| qpow(qi, e);
    let one = Q::from_integer(1);
    let two = Q::from_integer(2);
    let sq = Q::from_integer(s);
    let (v, k, lambda, mu) = match family {
        Family::NoEven => (
            p(2 * m - 1) - sq * p(m - 1),
            p(2 * m - 2) - one,
            p(2 * m - 3) - two,
            p(2 * m - 3) + sq * p(m - 2),
        ),
        Family::NoOdd => (
            p(m) * (p(m) + sq) / two,
            (p(m - 1) + sq) * (p(m) - sq),
            two * (p(2 * m - 2) - one) + sq * p(m - 1) * (p(1) - one),
            two * p(m - 1) * (p(m - 1) + sq),
        ),
        Family::GammaO => {
            let d = p(1) - one;
            (
                (p(m) - sq) * (p(m - 1) + sq) / d,
                p(1) * (p(m - 1) - sq) * (p(m - 2) + sq) / d,
                p(2) * (p(m - 2) - sq) * (p(m - 3) + sq) / d + p(1) - one,
                (p(m - 1) - sq) * (p(m - 2) + sq) / d,
            )
        }
    };
    let (Some(v), Some(k)) = (as_count(v), as_count(k)) else {
        return Err(usage(format!(
            "{} formulas give no graph at m={m}, q={q}",
            family.name()
        )));
    };
    Ok(ExpectedParams {
        v,
        k,
        lambda: as_count(lambda),
        mu: as_count(mu),
    })
}

/// Whether `phi` (a bijection `G1 → G2` on vertex indices) maps edges onto
/// edges and non-edges onto non-edges.
pub fn check_iso_map(g1: &LabeledGraph, g2: &LabeledGraph, phi: &[usize]) -> Result<bool> {
    let n = g1.n();
    if g2.n() != n || phi.len() != n {
        return Err(usage("isomorphism map needs equal vertex counts"));
    }
    let mut hit = vec![false; n];
    for &x in phi {
        if x >= n || std::mem::replace(&mut hit[x], true) {
            return Err(usage("vertex map is not a bijection"));
        }
    }
    Ok((0..n)
        .into_par_iter()
        .all(|i| (i + 1..n).all(|j| g1.has_edge(i, j) == g2.has_edge(phi[i], phi[j]))))
}

/// The vertex map induced by a label map `f`, or a usage error when some
/// image is not a vertex of `target`.
pub fn label_map<F>(source: &LabeledGraph, target: &LabeledGraph, f: F) -> Result<Vec<usize>>
where
    F: Fn(Vector) -> Vector,
{
    source
        .labels()
        .iter()
        .map(|&l| {
            let image = f(l);
            target.index_of(image).ok_or_else(|| {
                usage(format!(
                    "image {:#x} of {:#x} is not a vertex",
                    image.0, l.0
                ))
            })
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn petersen() -> LabeledGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        LabeledGraph::from_edges(10, &edges).unwrap()
    }

    pub fn k33() -> LabeledGraph {
        let edges: Vec<_> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
        LabeledGraph::from_edges(6, &edges).unwrap()
    }

    #[test]
    fn petersen_params() {
        let verdict = srg_params(&petersen()).unwrap();
        assert_eq!(
            verdict,
            SrgVerdict::Srg(SrgParams {
                v: 10,
                k: 3,
                lambda: 0,
                mu: 1
            })
        );
        assert!(expected_params(Family::NoEven, 2, 2, Sign::Minus)
            .unwrap()
            .matches(&verdict));
    }

    #[test]
    fn k33_params() {
        let verdict = srg_params(&k33()).unwrap();
        assert_eq!(
            verdict,
            SrgVerdict::Srg(SrgParams {
                v: 6,
                k: 3,
                lambda: 0,
                mu: 3
            })
        );
        assert!(expected_params(Family::NoEven, 2, 2, Sign::Plus)
            .unwrap()
            .matches(&verdict));
    }

    #[test]
    fn edgeless_is_degenerate() {
        let g = LabeledGraph::from_edges(6, &[]).unwrap();
        assert_eq!(
            srg_params(&g).unwrap(),
            SrgVerdict::Degenerate {
                v: 6,
                k: 0,
                lambda: None,
                mu: Some(0)
            }
        );
    }

    #[test]
    fn complete_is_degenerate() {
        let edges: Vec<_> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .collect();
        let g = LabeledGraph::from_edges(5, &edges).unwrap();
        assert_eq!(
            srg_params(&g).unwrap(),
            SrgVerdict::Degenerate {
                v: 5,
                k: 4,
                lambda: Some(3),
                mu: None
            }
        );
    }

    #[test]
    fn irregular_and_non_srg() {
        let path = LabeledGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(srg_params(&path).unwrap(), SrgVerdict::NotRegular);
        let c6: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let c6 = LabeledGraph::from_edges(6, &c6).unwrap();
        assert_eq!(srg_params(&c6).unwrap(), SrgVerdict::NotSrg);
        assert!(srg_params(&LabeledGraph::from_edges(1, &[]).unwrap()).is_err());
    }

    #[test]
    fn expected_param_examples() {
        let e = expected_params(Family::NoEven, 3, 2, Sign::Plus).unwrap();
        assert_eq!((e.v, e.k, e.lambda, e.mu), (28, 15, Some(6), Some(10)));
        let e = expected_params(Family::NoOdd, 2, 4, Sign::Plus).unwrap();
        assert_eq!((e.v, e.k, e.lambda, e.mu), (136, 75, Some(42), Some(40)));
        let e = expected_params(Family::GammaO, 3, 2, Sign::Minus).unwrap();
        assert_eq!((e.v, e.k, e.lambda, e.mu), (27, 10, Some(1), Some(5)));
        let e = expected_params(Family::GammaO, 2, 2, Sign::Plus).unwrap();
        assert_eq!((e.v, e.k, e.lambda, e.mu), (9, 4, Some(1), Some(2)));
        // λ formula goes negative on the edgeless small cases.
        let e = expected_params(Family::GammaO, 2, 2, Sign::Minus).unwrap();
        assert_eq!((e.v, e.k, e.lambda, e.mu), (5, 0, None, Some(0)));
        let e = expected_params(Family::NoOdd, 1, 4, Sign::Minus).unwrap();
        assert_eq!((e.v, e.k, e.lambda, e.mu), (6, 0, None, Some(0)));
    }

    #[test]
    fn expected_params_out_of_range() {
        assert!(expected_params(Family::NoEven, 1, 2, Sign::Plus).is_err());
        assert!(expected_params(Family::NoEven, 3, 4, Sign::Plus).is_err());
        assert!(expected_params(Family::NoOdd, 0, 4, Sign::Plus).is_err());
        assert!(expected_params(Family::NoOdd, 2, 6, Sign::Plus).is_err());
    }

    #[test]
    fn well_defined_formulas_are_feasible() {
        for family in [Family::NoEven, Family::NoOdd, Family::GammaO] {
            for m in 1..6 {
                for q in [2, 4, 8] {
                    for sign in Sign::both() {
                        let Ok(e) = expected_params(family, m, q, sign) else {
                            continue;
                        };
                        if let (Some(lambda), Some(mu)) = (e.lambda, e.mu) {
                            let p = SrgParams {
                                v: e.v,
                                k: e.k,
                                lambda,
                                mu,
                            };
                            assert!(p.is_feasible(), "{family:?} m={m} q={q} {sign}: {p}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn iso_map_checks() {
        let g = petersen();
        let id: Vec<usize> = (0..10).collect();
        assert!(check_iso_map(&g, &g, &id).unwrap());
        let mut swap = id.clone();
        swap.swap(0, 5);
        // 0–1 is an edge, 5–1 is not.
        assert!(!check_iso_map(&g, &g, &swap).unwrap());
        let mut bad = id.clone();
        bad[1] = 0;
        assert!(check_iso_map(&g, &g, &bad).is_err());
    }

    #[test]
    fn isolated_vertex_and_induced_degree() {
        let g = k33().with_isolated_vertex(Vector(99)).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.degree(6), 0);
        assert_eq!(g.induced_regular_degree(&[0, 1, 2]), Some(0));
        assert_eq!(g.induced_regular_degree(&[0, 3]), Some(1));
        assert_eq!(g.induced_regular_degree(&[0, 3, 4]), None);
        assert!(k33().with_isolated_vertex(Vector(2)).is_err());
    }

    #[test]
    fn rejects_duplicate_labels() {
        assert!(LabeledGraph::empty(vec![Vector(1), Vector(1)]).is_err());
    }
}
