//! Two-graphs as packed triple sets, Seidel switching, and the switching
//! certificate between identically labeled graphs.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::field::BinaryField;
use crate::forms::{BilinearSpace, QuadraticForm, Sign, Vector};
use crate::graph::LabeledGraph;

/// Largest vertex count for which triple sets are materialized.
pub const MAX_ORDER: usize = 300;

/// Quadruple checks are exhaustive up to this many vertices.
pub const EXHAUSTIVE_QUADRUPLES: usize = 64;

/// Random quadruples drawn above [`EXHAUSTIVE_QUADRUPLES`].
pub const SAMPLED_QUADRUPLES: u64 = 100_000;

/// Switching cross-checks against materialized two-graphs up to this order.
pub const CROSS_CHECK_ORDER: usize = 200;

fn c2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn c3(n: usize) -> usize {
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

/// Combinatorial rank of `i < j < k`.
#[inline]
pub fn triple_rank(i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k);
    c3(k) + c2(j) + i
}

fn sort3(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    if k > j {
        (i, j, k)
    } else if k > i {
        (i, k, j)
    } else {
        (k, i, j)
    }
}

/// A set of 3-subsets of a labeled vertex set.
#[derive(Clone, PartialEq, Eq)]
pub struct TwoGraph {
    labels: Vec<Vector>,
    bits: Vec<u64>,
}

impl std::fmt::Debug for TwoGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TwoGraph(v={}, triples={})",
            self.n(),
            self.triple_count()
        )
    }
}

impl TwoGraph {
    /// Triples `{i,j,k}` (as sorted indices into `labels`) with `member`.
    /// Labels must be sorted and distinct.
    pub fn from_index_predicate<F>(labels: Vec<Vector>, member: F) -> Result<Self>
    where
        F: Fn(usize, usize, usize) -> bool + Sync,
    {
        let n = labels.len();
        if n > MAX_ORDER {
            return Err(Error::Resource {
                what: format!("two-graph on {n} vertices"),
                cap: MAX_ORDER as u64,
            });
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(usage("two-graph labels must be sorted and distinct"));
        }
        let blocks: Vec<Vec<u64>> = (0..n)
            .into_par_iter()
            .map(|k| {
                let mut block = vec![0u64; c2(k).div_ceil(64)];
                let mut r = 0;
                for j in 0..k {
                    for i in 0..j {
                        if member(i, j, k) {
                            block[r / 64] |= 1 << (r % 64);
                        }
                        r += 1;
                    }
                }
                block
            })
            .collect();
        let mut bits = vec![0u64; c3(n).div_ceil(64)];
        for (k, block) in blocks.iter().enumerate() {
            let offset = c3(k);
            for (w, &word) in block.iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let r = offset + w * 64 + word.trailing_zeros() as usize;
                    bits[r / 64] |= 1 << (r % 64);
                    word &= word - 1;
                }
            }
        }
        Ok(Self { labels, bits })
    }

    /// Triples inducing an odd number of edges of `g`.
    pub fn associated(g: &LabeledGraph) -> Result<Self> {
        Self::from_index_predicate(g.labels().to_vec(), |i, j, k| {
            g.has_edge(i, j) ^ g.has_edge(i, k) ^ g.has_edge(j, k)
        })
    }

    /// Triples with `⟨a,b⟩ + ⟨a,c⟩ + ⟨b,c⟩ = 0` among the given points of a
    /// GF(2) space.
    pub fn symplectic(space: &BilinearSpace, mut labels: Vec<Vector>) -> Result<Self> {
        if space.field().degree() != 1 {
            return Err(usage("symplectic two-graphs live over GF(2)"));
        }
        labels.sort_unstable();
        let pts = labels.clone();
        Self::from_index_predicate(labels, |i, j, k| {
            let (a, b, c) = (pts[i], pts[j], pts[k]);
            space.pair(a, b) ^ space.pair(a, c) ^ space.pair(b, c) == 0
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Vector] {
        &self.labels
    }

    pub fn index_of(&self, label: Vector) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// Membership of `{i,j,k}` for distinct indices in any order.
    pub fn contains(&self, i: usize, j: usize, k: usize) -> bool {
        let (i, j, k) = sort3(i, j, k);
        let r = triple_rank(i, j, k);
        self.bits[r / 64] >> (r % 64) & 1 == 1
    }

    pub fn triple_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Sorted triples `i < j < k`.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| {
            (i + 1..n).flat_map(move |j| {
                (j + 1..n)
                    .filter(move |&k| self.contains(i, j, k))
                    .map(move |k| (i, j, k))
            })
        })
    }

    /// Number of triples through each pair, as a flat `n × n` table.
    fn pair_counts(&self) -> Vec<u32> {
        let n = self.n();
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u32; n];
                for j in 0..n {
                    if j == i {
                        continue;
                    }
                    row[j] = (0..n)
                        .filter(|&k| k != i && k != j && self.contains(i, j, k))
                        .count() as u32;
                }
                row
            })
            .collect();
        rows.concat()
    }

    /// The common number of triples through every pair, if there is one.
    pub fn regular_degree(&self) -> Result<Option<u64>> {
        let n = self.n();
        if n < 2 {
            return Err(usage("regular_degree needs at least two vertices"));
        }
        let counts = self.pair_counts();
        let first = counts[1] as u64;
        let regular = (0..n).all(|i| (0..n).all(|j| i == j || counts[i * n + j] as u64 == first));
        Ok(regular.then_some(first))
    }

    /// Graph on the same labels: `u ~ v` iff `{u, v, w}` is a triple. The
    /// vertex `w` ends up isolated.
    pub fn descendant(&self, w: Vector) -> Result<LabeledGraph> {
        let wi = self
            .index_of(w)
            .ok_or_else(|| usage(format!("label {:#x} is not a vertex", w.0)))?;
        LabeledGraph::from_predicate(self.labels.clone(), |a, b| {
            let (i, j) = (self.index_of(a).unwrap(), self.index_of(b).unwrap());
            i != wi && j != wi && self.contains(i, j, wi)
        })
    }

    /// Checks the even-quadruple axiom: exhaustively for at most
    /// [`EXHAUSTIVE_QUADRUPLES`] vertices, otherwise on
    /// [`SAMPLED_QUADRUPLES`] random quadruples drawn with `seed`.
    pub fn check_even_quadruples(&self, seed: u64) -> QuadrupleCheck {
        let n = self.n();
        let odd = |a: usize, b: usize, c: usize, d: usize| {
            let count = self.contains(a, b, c) as u8
                + self.contains(a, b, d) as u8
                + self.contains(a, c, d) as u8
                + self.contains(b, c, d) as u8;
            count % 2 == 1
        };
        if n < 4 {
            return QuadrupleCheck {
                checked: 0,
                failures: 0,
                exhaustive: true,
            };
        }
        if n <= EXHAUSTIVE_QUADRUPLES {
            let (checked, failures) = (0..n)
                .into_par_iter()
                .map(|a| {
                    let mut checked = 0u64;
                    let mut failures = 0u64;
                    for b in a + 1..n {
                        for c in b + 1..n {
                            for d in c + 1..n {
                                checked += 1;
                                failures += odd(a, b, c, d) as u64;
                            }
                        }
                    }
                    (checked, failures)
                })
                .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
            return QuadrupleCheck {
                checked,
                failures,
                exhaustive: true,
            };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = 0;
        for _ in 0..SAMPLED_QUADRUPLES {
            let mut q = [0usize; 4];
            loop {
                for x in q.iter_mut() {
                    *x = rng.gen_range(0..n);
                }
                q.sort_unstable();
                if q.windows(2).all(|w| w[0] < w[1]) {
                    break;
                }
            }
            failures += odd(q[0], q[1], q[2], q[3]) as u64;
        }
        QuadrupleCheck {
            checked: SAMPLED_QUADRUPLES,
            failures,
            exhaustive: false,
        }
    }

    /// Writes one sorted label triple per line, labels as packed integers.
    pub fn write_triples<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (i, j, k) in self.triples() {
            writeln!(
                out,
                "{} {} {}",
                self.labels[i].0, self.labels[j].0, self.labels[k].0
            )?;
        }
        Ok(())
    }

    /// Whether the translation `x ↦ x + d` maps triples onto triples, for
    /// every `d` that keeps the label set in place.
    pub fn translation_invariant(&self, d: Vector) -> Result<bool> {
        let image: Vec<usize> = self
            .labels
            .iter()
            .map(|&l| {
                self.index_of(l + d)
                    .ok_or_else(|| usage("translation leaves the vertex set"))
            })
            .collect::<Result<_>>()?;
        Ok(self
            .triples()
            .all(|(i, j, k)| self.contains(image[i], image[j], image[k])))
    }
}

/// Result of an even-quadruple check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadrupleCheck {
    pub checked: u64,
    pub failures: u64,
    pub exhaustive: bool,
}

impl QuadrupleCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Degree `2^{2m-2} ∓ 2^{m-1} − 2` of the two-graph `𝒳^±_{2m}`.
pub fn expected_symplectic_degree(m: u32, sign: Sign) -> i64 {
    (1i64 << (2 * m - 2)) - sign.value() * (1i64 << (m - 1)) - 2
}

/// `𝒳^ε_{2m}` on `X = {a : Θ(a) = 1}` for `Θ` over GF(2) of type `ε`.
pub fn build_symplectic_two_graph(theta: &QuadraticForm) -> Result<TwoGraph> {
    if theta.field().degree() != 1 {
        return Err(usage("𝒳 needs a form over GF(2)"));
    }
    theta.form_type()?;
    let space = theta.space();
    let labels = space.vectors().filter(|&a| theta.eval(a) == 1).collect();
    TwoGraph::symplectic(space, labels)
}

/// `𝒯_{2m}` on all of `F_2^{2m}` with the standard form.
pub fn build_full_symplectic_two_graph(m: usize) -> Result<TwoGraph> {
    if m == 0 {
        return Err(usage("𝒯 needs m ≥ 1"));
    }
    let space = BilinearSpace::standard(BinaryField::gf2(), m)?;
    TwoGraph::symplectic(&space, space.vectors().collect())
}

/// Switches `g` with respect to the labels in `y`.
pub fn seidel_switch(g: &LabeledGraph, y: &[Vector]) -> Result<LabeledGraph> {
    let idx = g.indices_of(y)?;
    let mask = g.vertex_mask(idx);
    Ok(switch_by_mask(g, &mask))
}

fn switch_by_mask(g: &LabeledGraph, mask: &[u64]) -> LabeledGraph {
    let n = g.n();
    let full = g.full_mask();
    let outside: Vec<u64> = full.iter().zip(mask).map(|(f, y)| f & !y).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        let inside = mask[i / 64] >> (i % 64) & 1 == 1;
        let flip = if inside { &outside } else { mask };
        let row: Vec<u64> = g.row(i).iter().zip(flip).map(|(r, f)| r ^ f).collect();
        for j in i + 1..n {
            if row[j / 64] >> (j % 64) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    let mut out = LabeledGraph::empty(g.labels().to_vec()).expect("labels already valid");
    for (i, j) in edges {
        out.set_edge(i, j, true);
    }
    out
}

/// Outcome of [`switching_equivalence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchingOutcome {
    /// The class of the first vertex, when `G1` switches to `G2`.
    pub certificate: Option<Vec<Vector>>,
    /// Equality of the associated two-graphs, computed for small orders.
    pub two_graphs_equal: Option<bool>,
}

/// Decides whether `g2` is a Seidel switch of `g1` (same labels) by testing
/// that `E1 Δ E2` is complete bipartite, with a possibly empty side.
pub fn switching_equivalence(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<SwitchingOutcome> {
    if g1.labels() != g2.labels() {
        return Err(usage("switching equivalence needs identical vertex labels"));
    }
    let n = g1.n();
    if n == 0 {
        return Ok(SwitchingOutcome {
            certificate: Some(Vec::new()),
            two_graphs_equal: None,
        });
    }
    let full = g1.full_mask();
    let diff = |i: usize| -> Vec<u64> {
        g1.row(i)
            .iter()
            .zip(g2.row(i))
            .map(|(a, b)| a ^ b)
            .collect()
    };
    let class: Vec<u64> = diff(0).iter().zip(&full).map(|(h, f)| f & !h).collect();
    let other: Vec<u64> = full.iter().zip(&class).map(|(f, c)| f & !c).collect();
    let bipartite = (0..n).into_par_iter().all(|i| {
        let inside = class[i / 64] >> (i % 64) & 1 == 1;
        diff(i) == if inside { other.clone() } else { class.clone() }
    });
    let certificate = bipartite.then(|| {
        (0..n)
            .filter(|&i| class[i / 64] >> (i % 64) & 1 == 1)
            .map(|i| g1.label(i))
            .collect::<Vec<_>>()
    });
    let two_graphs_equal = if n <= CROSS_CHECK_ORDER {
        let equal = TwoGraph::associated(g1)? == TwoGraph::associated(g2)?;
        if equal != certificate.is_some() {
            return Err(Error::Invariant(format!(
                "switching certificate ({}) disagrees with two-graph equality ({equal})",
                certificate.is_some()
            )));
        }
        Some(equal)
    } else {
        None
    };
    if let Some(y) = &certificate {
        if &seidel_switch(g1, y)? != g2 {
            return Err(Error::Invariant(
                "switching certificate does not reproduce G2".into(),
            ));
        }
    }
    Ok(SwitchingOutcome {
        certificate,
        two_graphs_equal,
    })
}

/// `A = {Θ = ω}` and `B = {Θ = ω + 1}` for `Θ` over GF(4).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchingSets {
    pub a: Vec<Vector>,
    pub b: Vec<Vector>,
}

pub fn compute_switching_sets(theta: &QuadraticForm) -> Result<SwitchingSets> {
    let f = theta.field();
    if f.order() != 4 {
        return Err(usage("switching sets are defined for forms over GF(4)"));
    }
    theta.form_type()?;
    // ω is a root of x² + x + 1
    let omega = 0b10;
    debug_assert_eq!(f.mul(omega, omega) ^ omega, 1);
    let space = theta.space();
    Ok(SwitchingSets {
        a: space
            .vectors()
            .filter(|&u| theta.eval(u) == omega)
            .collect(),
        b: space
            .vectors()
            .filter(|&u| theta.eval(u) == omega ^ 1)
            .collect(),
    })
}

/// `|A| = 2^{4m-2} ∓ 2^{2m-2}`, upper sign for hyperbolic `Θ`.
pub fn expected_switching_set_size(m: u32, sign: Sign) -> i64 {
    (1i64 << (4 * m - 2)) - sign.value() * (1i64 << (2 * m - 2))
}

/// Degree `2^{4m-3} ∓ 2^{2m-2} − 1` induced on each switching set.
pub fn expected_switching_set_degree(m: u32, sign: Sign) -> i64 {
    (1i64 << (4 * m - 3)) - sign.value() * (1i64 << (2 * m - 2)) - 1
}
