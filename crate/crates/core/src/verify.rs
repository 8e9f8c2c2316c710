//! Verification suites behind `polar verify`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::constructions::{
    build_family, check_stabilizer_automorphisms, check_w_translation, standard_parameter,
    SwitchingPair,
};
use crate::error::{usage, Error, Result};
use crate::field::BinaryField;
use crate::forms::{type_of_parameter, BilinearSpace, QuadraticForm, Sign, Vector};
use crate::graph::{expected_params, Family, SrgVerdict};
use crate::graph6;
use crate::group::{
    check_2transitivity, group_order, verify_complements, GroupFamily, SymplecticGroup,
};
use crate::report::{Budget, Report};
use crate::transvections::{
    check_conjugation_law, check_transvection_identities, compare_gl_sp, sweep_transvection_solver,
    Sampling,
};
use crate::two_graph::{
    build_symplectic_two_graph, compute_switching_sets, expected_switching_set_degree,
    expected_switching_set_size, switching_equivalence, TwoGraph, MAX_ORDER,
};

/// Resource limits and sampling options shared by the suites.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub m: Vec<u32>,
    pub q: Vec<u32>,
    /// Largest group enumerated.
    pub group_cap: usize,
    /// Largest two-graph materialized.
    pub max_two_graph: usize,
    /// Largest graph built.
    pub max_vertices: usize,
    /// Random samples for identities on spaces too large to exhaust.
    pub samples: u64,
    pub seed: u64,
    pub budget: Budget,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            m: vec![1, 2],
            q: vec![2, 4],
            group_cap: crate::group::DEFAULT_GROUP_CAP,
            max_two_graph: MAX_ORDER,
            max_vertices: 4096,
            samples: 10_000,
            seed: 1,
            budget: Budget::unlimited(),
        }
    }
}

impl VerifyConfig {
    fn start(&self, command: &str) -> Report {
        let mut r = Report::new(command);
        r.param("m", &self.m);
        r.param("q", &self.q);
        r
    }

    fn field(&self, q: u32) -> Result<BinaryField> {
        BinaryField::with_order(q)
    }
}

/// Parameters as reported: `null` where undefined.
#[derive(Clone, Copy, Debug, Serialize)]
struct ParamView {
    v: Option<u64>,
    k: Option<u64>,
    lambda: Option<u64>,
    mu: Option<u64>,
}

fn view(verdict: &SrgVerdict) -> serde_json::Value {
    match verdict {
        SrgVerdict::NotRegular | SrgVerdict::NotSrg => json!(verdict.to_string()),
        _ => json!(ParamView {
            v: verdict.v(),
            k: verdict.k(),
            lambda: verdict.lambda(),
            mu: verdict.mu(),
        }),
    }
}

fn sorted_desc(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn space_size(q: u32, m: u32) -> Option<u64> {
    (q as u64).checked_pow(2 * m)
}

/// Every family member in range against its closed-form parameters.
pub fn verify_families(cfg: &VerifyConfig) -> Report {
    let mut r = cfg.start("verify families");
    'outer: for family in [Family::NoEven, Family::NoOdd, Family::GammaO] {
        for &q in &cfg.q {
            if family != Family::NoOdd && q != 2 {
                continue;
            }
            for &m in &cfg.m {
                for sign in Sign::both() {
                    if let Err(e) = cfg.budget.check() {
                        r.error("time budget", "within budget", &e);
                        break 'outer;
                    }
                    let name = family.instance(m, q, sign);
                    let expected = match expected_params(family, m, q, sign) {
                        Ok(e) => e,
                        Err(e) => {
                            r.note(format!("{name}: skipped ({e})"));
                            continue;
                        }
                    };
                    if expected.v < 2 {
                        r.note(format!("{name}: skipped (v = {})", expected.v));
                        continue;
                    }
                    if expected.v > cfg.max_vertices as u64 {
                        let e = Error::Resource {
                            what: format!("{name} with {} vertices", expected.v),
                            cap: cfg.max_vertices as u64,
                        };
                        r.error(&name, expected, &e);
                        break 'outer;
                    }
                    match build_family(family, m, q, sign) {
                        Ok(built) => {
                            r.check(
                                format!("{name} parameters"),
                                expected,
                                view(&built.verdict),
                                true,
                            );
                            r.check_eq(
                                format!("{name} graph6 round trip"),
                                true,
                                graph6::round_trips(&built.graph),
                            );
                            if family == Family::NoOdd {
                                let space =
                                    BilinearSpace::standard(cfg.field(q).unwrap(), m as usize);
                                let d = space
                                    .as_ref()
                                    .map_err(Clone::clone)
                                    .and_then(|s| standard_parameter(s, -sign).map(|d| (s, d)));
                                match d.and_then(|(s, d)| check_w_translation(s, d)) {
                                    Ok(ok) => {
                                        r.check_eq(format!("{name} τ_d onto W-model"), true, ok);
                                    }
                                    Err(e) => r.error(format!("{name} τ_d onto W-model"), true, &e),
                                }
                            }
                        }
                        Err(e) => r.error(format!("{name} parameters"), expected, &e),
                    }
                }
            }
        }
    }
    r
}

fn level_set_sizes(theta: &QuadraticForm) -> Vec<usize> {
    let mut counts: BTreeMap<u8, usize> = BTreeMap::new();
    for u in theta.space().vectors().skip(1) {
        *counts.entry(theta.eval(u)).or_default() += 1;
    }
    sorted_desc(counts.into_values().collect())
}

fn enumerate_group(r: &mut Report, cfg: &VerifyConfig, q: u32, m: u32) -> Option<SymplecticGroup> {
    let tag = format!("q={q} m={m}");
    let formula = match group_order(GroupFamily::Sp, m, q) {
        Ok(o) => o,
        Err(e) => {
            r.error(format!("{tag} |Sp| formula"), "defined", &e);
            return None;
        }
    };
    if formula > BigUint::from(cfg.group_cap) {
        r.error(
            format!("{tag} Sp enumeration"),
            formula.to_string(),
            &Error::Resource {
                what: format!("Sp({},{q}) of order {formula}", 2 * m),
                cap: cfg.group_cap as u64,
            },
        );
        return None;
    }
    let space = BilinearSpace::standard(cfg.field(q).ok()?, m as usize).ok()?;
    match SymplecticGroup::full(&space, cfg.group_cap) {
        Ok(g) => {
            r.check_eq(
                format!("{tag} |Sp| enumerated vs formula"),
                formula.to_string(),
                g.order().to_string(),
            );
            Some(g)
        }
        Err(e) => {
            r.error(format!("{tag} Sp enumeration"), formula.to_string(), &e);
            None
        }
    }
}

/// Orbits on `Ω`, stabilizers, 2-transitivity and complements.
pub fn verify_orbits(cfg: &VerifyConfig) -> Report {
    let mut r = cfg.start("verify orbits");
    r.param("group_cap", cfg.group_cap);
    'outer: for &q in &cfg.q {
        for &m in &cfg.m {
            if let Err(e) = cfg.budget.check() {
                r.error("time budget", "within budget", &e);
                break 'outer;
            }
            let Some(group) = enumerate_group(&mut r, cfg, q, m) else {
                if r.is_stopped() {
                    break 'outer;
                }
                continue;
            };
            orbit_checks(&mut r, &group, q, m);
            if r.is_stopped() {
                break 'outer;
            }
        }
    }
    r
}

fn orbit_checks(r: &mut Report, group: &SymplecticGroup, q: u32, m: u32) {
    let tag = format!("q={q} m={m}");
    let space = group.space();
    let n = space.size() as u64;
    let qm = (q as u64).pow(m);
    let omega_sizes = vec![((n + qm) / 2) as usize, ((n - qm) / 2) as usize];
    let orbits = group.orbits_on_forms(&[Vector::ZERO]);
    r.check_eq(
        format!("{tag} Ω orbit sizes"),
        &omega_sizes,
        sorted_desc(orbits.iter().map(Vec::len).collect()),
    );
    let by_trace = orbits.iter().all(|o| {
        let t = type_of_parameter(space, o[0]);
        o.iter().all(|&a| type_of_parameter(space, a) == t)
    });
    r.check_eq(
        format!("{tag} orbits are the trace classes"),
        true,
        by_trace && orbits.len() == 2,
    );
    let types_agree = space.vectors().all(|a| {
        QuadraticForm::theta(space, a)
            .and_then(|t| t.form_type_by_count())
            .is_ok_and(|s| s == type_of_parameter(space, a))
    });
    r.check_eq(
        format!("{tag} type by trace = type by zero count"),
        true,
        types_agree,
    );

    let omega = |s: Sign| -> Vec<u32> {
        space
            .vectors()
            .filter(|&a| type_of_parameter(space, a) == s)
            .map(|a| a.0)
            .collect()
    };
    // 2-transitivity is a statement about Sp(2m,2) only; Sp(2,4) ≅ A5 is
    // rank 3 on its 10 hyperbolic forms.
    let perms = if q == 2 {
        group.form_permutations()
    } else {
        Vec::new()
    };
    for s in Sign::both().into_iter().filter(|_| q == 2) {
        match check_2transitivity(&perms, &omega(s)) {
            Ok(ok) => {
                r.check_eq(format!("{tag} Sp 2-transitive on Ω{s}"), true, ok);
            }
            Err(e) => {
                r.note(format!("{tag} 2-transitivity on Ω{s} not applicable ({e})"));
            }
        }
    }

    for s in Sign::both() {
        let family = if s == Sign::Plus {
            GroupFamily::OPlus
        } else {
            GroupFamily::OMinus
        };
        let Ok(a) = standard_parameter(space, s) else {
            continue;
        };
        let stab = match group.stabilizer_of_form(a) {
            Ok(st) => st,
            Err(e) => {
                r.error(format!("{tag} stabilizer of Θ{s}"), "subgroup", &e);
                continue;
            }
        };
        let order = group_order(family, m, q)
            .map(|o| o.to_string())
            .unwrap_or_default();
        r.check_eq(
            format!("{tag} |O{s}| = stabilizer order"),
            order,
            stab.order().to_string(),
        );
        let index = (qm * (qm as i64 + s.value()) as u64) / 2;
        r.check_eq(
            format!("{tag} index |Sp : O{s}|"),
            index,
            (group.order() / stab.order().max(1)) as u64,
        );
        let Ok(theta) = QuadraticForm::theta(space, a) else {
            continue;
        };
        r.check_eq(
            format!("{tag} O{s} vector orbits = level sets of Θ"),
            level_set_sizes(&theta),
            sorted_desc(stab.vector_orbits().iter().map(Vec::len).collect()),
        );
        if q == 2 {
            let other = omega(-s);
            let orbit_of_other = stab.orbits_on_forms(&[Vector(other[0])]);
            r.check_eq(
                format!("{tag} O{s} transitive on Ω{}", -s),
                other.len(),
                orbit_of_other[0].len(),
            );
            let same = omega(s).len();
            let mut expected = vec![1, same - 1, other.len()];
            expected.retain(|&x| x > 0);
            r.check_eq(
                format!("{tag} O{s} orbits on Ω"),
                sorted_desc(expected),
                sorted_desc(stab.orbits_on_forms(&[a]).iter().map(Vec::len).collect()),
            );
            if m >= 2 {
                match check_stabilizer_automorphisms(group, a) {
                    Ok((_, ok)) => {
                        r.check_eq(format!("{tag} O{s} acts on NO{s}({},2)", 2 * m), true, ok);
                    }
                    Err(e) => r.error(format!("{tag} O{s} acts on NO{s}({},2)", 2 * m), true, &e),
                }
            }
        }
    }

    let c = verify_complements(group);
    r.check_eq(format!("{tag} H₂ is a subgroup"), true, c.is_subgroup);
    r.check_eq(
        format!("{tag} H₂ ∩ N = 1"),
        true,
        c.trivial_translation_intersection,
    );
    r.check_eq(
        format!("{tag} H₂ orbit lengths"),
        &omega_sizes,
        &c.h2_orbit_lengths,
    );
    r.check_eq(
        format!("{tag} H₂ orbits = trace fibers"),
        true,
        c.orbits_are_trace_fibers,
    );
    r.check_eq(
        format!("{tag} H₁ orbit lengths"),
        vec![1, (n - 1) as usize],
        &c.h1_orbit_lengths,
    );
}

/// Transvection identities, the equivalence solver, group orders and the
/// GL/Sp comparison.
pub fn verify_appendix(cfg: &VerifyConfig) -> Report {
    let mut r = cfg.start("verify appendix");
    r.param("samples", cfg.samples);
    r.param("seed", cfg.seed);
    'outer: for &q in &cfg.q {
        for &m in &cfg.m {
            if let Err(e) = cfg.budget.check() {
                r.error("time budget", "within budget", &e);
                break 'outer;
            }
            let tag = format!("q={q} m={m}");
            let Some(size) = space_size(q, m).filter(|&s| s <= 1 << 24) else {
                r.note(format!("{tag}: skipped (space too large)"));
                continue;
            };
            let space = match cfg
                .field(q)
                .and_then(|f| BilinearSpace::standard(f, m as usize))
            {
                Ok(s) => s,
                Err(e) => {
                    r.note(format!("{tag}: skipped ({e})"));
                    continue;
                }
            };
            let sampling = if q == 2 && m <= 2 {
                Sampling::Exhaustive
            } else {
                Sampling::Random {
                    samples: cfg.samples,
                    seed: cfg.seed,
                }
            };
            match check_transvection_identities(&space, sampling) {
                Ok(checks) => {
                    for c in checks {
                        let mode = if sampling == Sampling::Exhaustive {
                            "exhaustive"
                        } else {
                            "sampled"
                        };
                        r.check(
                            format!("{tag} {} ({mode})", c.name),
                            json!({ "statement": c.statement, "failures": 0 }),
                            json!({ "checked": c.checked, "failures": c.failures }),
                            c.passed(),
                        );
                    }
                }
                Err(e) => r.error(format!("{tag} identities"), "hold", &e),
            }
            if size <= 256 {
                match sweep_transvection_solver(&space) {
                    Ok(s) => {
                        r.check(
                            format!("{tag} transvection solver on all pairs"),
                            json!({ "solved": s.same_type_pairs, "mismatches": 0 }),
                            json!(s),
                            s.passed(),
                        );
                    }
                    Err(e) => r.error(format!("{tag} transvection solver"), "verified", &e),
                }
            } else {
                r.note(format!("{tag}: solver sweep skipped (q^2m > 256)"));
            }
            if (q.trailing_zeros() as usize) * (2 * m as usize).pow(2) <= 16 {
                match compare_gl_sp(&space) {
                    Ok(c) => {
                        r.check(
                            format!("{tag} GL- and Sp-equivalence agree on Ω"),
                            json!({ "same_partition": true }),
                            json!(c),
                            c.same_partition,
                        );
                    }
                    Err(e) => r.error(format!("{tag} GL vs Sp"), "same partition", &e),
                }
            }
            for s in Sign::both() {
                let family = if s == Sign::Plus {
                    GroupFamily::OPlus
                } else {
                    GroupFamily::OMinus
                };
                let sp = group_order(GroupFamily::Sp, m, q);
                let o = group_order(family, m, q);
                if let (Ok(sp), Ok(o)) = (sp, o) {
                    let qm = BigUint::from(q).pow(m);
                    let index = if s == Sign::Plus {
                        &qm + 1u32
                    } else {
                        &qm - 1u32
                    } * &qm
                        / 2u32;
                    r.check_eq(
                        format!("{tag} |Sp|/|O{s}| = ½q^m(q^m{}1)", s),
                        index.to_string(),
                        (&sp / &o).to_string(),
                    );
                }
            }
            let order = group_order(GroupFamily::Sp, m, q).unwrap_or_default();
            if order <= BigUint::from(cfg.group_cap.min(100_000)) {
                if let Some(group) = enumerate_group(&mut r, cfg, q, m) {
                    match check_conjugation_law(&group) {
                        Ok((checked, failures)) => {
                            r.check(
                                format!("{tag} A⁻¹T_aA = T_(aA)"),
                                json!({ "failures": 0 }),
                                json!({ "checked": checked, "failures": failures }),
                                failures == 0,
                            );
                        }
                        Err(e) => r.error(format!("{tag} conjugation law"), "holds", &e),
                    }
                    for s in Sign::both() {
                        let Ok(a) = standard_parameter(&space, s) else {
                            continue;
                        };
                        let (Ok(stab), Ok(theta)) =
                            (group.stabilizer_of_form(a), QuadraticForm::theta(&space, a))
                        else {
                            continue;
                        };
                        r.check_eq(
                            format!("{tag} Witt orbits of O{s} on V∖0"),
                            level_set_sizes(&theta),
                            sorted_desc(stab.vector_orbits().iter().map(Vec::len).collect()),
                        );
                    }
                }
            } else {
                r.note(format!("{tag}: group enumeration skipped (|Sp| = {order})"));
            }
            if r.is_stopped() {
                break 'outer;
            }
        }
    }
    r
}

/// Everything checked for one switching pair.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremInstance {
    pub m: u32,
    /// Type of the GF(4) form; the GF(2) graph carries this sign.
    pub sign: Sign,
    pub no_even: String,
    pub no_odd: String,
    pub vertices: usize,
    /// Two-graph of the GF(2) graph equals `𝒳` of the lifted form.
    pub part_i: Option<bool>,
    /// Two-graph of the GF(4) graph equals the same `𝒳`.
    pub part_ii: Option<bool>,
    pub certificate_size: Option<usize>,
    pub certificate_in_ab: bool,
    pub two_graphs_equal: Option<bool>,
    pub size_a: usize,
    pub size_b: usize,
    pub expected_size: i64,
    pub partition: bool,
    /// Induced degrees of A and B in the GF(2) and GF(4) graphs.
    pub degrees: [Option<usize>; 4],
    pub expected_degree: i64,
    pub k_minus_mu: [Option<i64>; 2],
}

impl TheoremInstance {
    pub fn passed(&self) -> bool {
        let exp = Some(self.expected_degree);
        self.part_i != Some(false)
            && self.part_ii != Some(false)
            && self.certificate_in_ab
            && self.two_graphs_equal != Some(false)
            && self.size_a as i64 == self.expected_size
            && self.size_b as i64 == self.expected_size
            && self.partition
            && self.degrees.iter().all(|d| d.map(|d| d as i64) == exp)
            && self.k_minus_mu.iter().all(|&d| d == exp)
    }
}

fn k_minus_mu(v: &SrgVerdict) -> Option<i64> {
    Some(v.k()? as i64 - v.mu()? as i64)
}

/// Builds the pair for `m` and the type `sign` of `Θ`, then checks all
/// three parts and the switching sets. Two-graphs are materialized only
/// up to `max_two_graph` vertices.
pub fn check_theorem_instance(m: u32, sign: Sign, max_two_graph: usize) -> Result<TheoremInstance> {
    if m == 0 {
        return Err(usage("m must be at least 1"));
    }
    let pair = SwitchingPair::standard(m as usize, sign)?;
    let g1 = &pair.no_even.graph;
    let g2 = &pair.no_odd.graph;
    let n = g1.n();
    let (part_i, part_ii) = if n <= max_two_graph.min(MAX_ORDER) {
        let x = build_symplectic_two_graph(&pair.lifted)?;
        (
            Some(TwoGraph::associated(g1)? == x),
            Some(TwoGraph::associated(g2)? == x),
        )
    } else {
        (None, None)
    };
    let outcome = switching_equivalence(g1, g2)?;
    let sets = compute_switching_sets(&pair.theta)?;
    let certificate_in_ab = outcome
        .certificate
        .as_ref()
        .is_some_and(|y| *y == sets.a || *y == sets.b);
    let mut union: Vec<Vector> = sets.a.iter().chain(&sets.b).copied().collect();
    union.sort_unstable();
    let partition = union.as_slice() == g1.labels();
    let mut degrees = [None; 4];
    for (s, set) in [&sets.a, &sets.b].into_iter().enumerate() {
        for (t, g) in [g1, g2].into_iter().enumerate() {
            degrees[2 * s + t] = g
                .indices_of(set)
                .ok()
                .and_then(|idx| g.induced_regular_degree(&idx));
        }
    }
    Ok(TheoremInstance {
        m,
        sign,
        no_even: pair.no_even.instance(),
        no_odd: pair.no_odd.instance(),
        vertices: n,
        part_i,
        part_ii,
        certificate_size: outcome.certificate.as_ref().map(Vec::len),
        certificate_in_ab,
        two_graphs_equal: outcome.two_graphs_equal,
        size_a: sets.a.len(),
        size_b: sets.b.len(),
        expected_size: expected_switching_set_size(m, sign),
        partition,
        degrees,
        expected_degree: expected_switching_set_degree(m, sign),
        k_minus_mu: [
            k_minus_mu(&pair.no_even.verdict),
            k_minus_mu(&pair.no_odd.verdict),
        ],
    })
}

/// The switching theorem for each `m` and both sign pairs.
pub fn verify_theorem(cfg: &VerifyConfig) -> Report {
    let mut r = cfg.start("verify theorem");
    r.param("max_two_graph", cfg.max_two_graph);
    'outer: for &m in &cfg.m {
        for sign in Sign::both() {
            if let Err(e) = cfg.budget.check() {
                r.error("time budget", "within budget", &e);
                break 'outer;
            }
            let tag = format!("m={m} Θ{sign}");
            let v = expected_switching_set_size(m, sign) * 2;
            if m == 0 || m > 6 || v as u64 > cfg.max_vertices as u64 {
                let e = Error::Resource {
                    what: format!("switching pair at m={m} with {v} vertices"),
                    cap: cfg.max_vertices as u64,
                };
                r.error(&tag, "switching equivalent", &e);
                break 'outer;
            }
            let t = match check_theorem_instance(m, sign, cfg.max_two_graph) {
                Ok(t) => t,
                Err(e) => {
                    r.error(format!("{tag} switching pair"), "switching equivalent", &e);
                    if r.is_stopped() {
                        break 'outer;
                    }
                    continue;
                }
            };
            let pair = format!("{} vs {}", t.no_even, t.no_odd);
            match (t.part_i, t.part_ii) {
                (Some(i), Some(ii)) => {
                    r.check_eq(format!("{tag} (i) two-graph of {} = 𝒳", t.no_even), true, i);
                    r.check_eq(format!("{tag} (ii) two-graph of {} = 𝒳", t.no_odd), true, ii);
                }
                _ => r.note(format!(
                    "{tag}: parts (i),(ii) not materialized (v = {} > {}); part (iii) certificate only",
                    t.vertices,
                    cfg.max_two_graph.min(MAX_ORDER)
                )),
            }
            r.check(
                format!("{tag} (iii) {pair} switching certificate"),
                json!({ "in": ["A", "B"], "size": t.expected_size }),
                json!({ "in_A_or_B": t.certificate_in_ab, "size": t.certificate_size }),
                t.certificate_in_ab
                    && t.certificate_size.map(|s| s as i64) == Some(t.expected_size),
            );
            if let Some(eq) = t.two_graphs_equal {
                r.check_eq(format!("{tag} associated two-graphs equal"), true, eq);
            }
            r.check_eq(
                format!("{tag} |A|, |B|"),
                [t.expected_size, t.expected_size],
                [t.size_a as i64, t.size_b as i64],
            );
            r.check_eq(format!("{tag} A ∪ B = vertex set"), true, t.partition);
            let exp = Some(t.expected_degree);
            r.check_eq(
                format!("{tag} induced degrees of A, B in both graphs"),
                [exp; 4],
                t.degrees.map(|d| d.map(|d| d as i64)),
            );
            r.check_eq(
                format!("{tag} k − μ in both graphs"),
                [exp; 2],
                t.k_minus_mu,
            );
        }
    }
    r
}
