//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use polar_core::constructions::{build_family, build_gamma_o, standard_form, standard_parameter};
use polar_core::forms::type_of_parameter;
use polar_core::graph::{check_iso_map, label_map};
use polar_core::group::{
    check_2transitivity, group_order, verify_complements, GroupFamily, SymplecticGroup,
};
use polar_core::transvections::{
    check_transvection_identities, sweep_transvection_solver, Sampling,
};
use polar_core::two_graph::{
    build_symplectic_two_graph, expected_symplectic_degree, seidel_switch, switching_equivalence,
    TwoGraph,
};
use polar_core::verify::check_theorem_instance;
use polar_core::{
    expected_params, graph6, srg_params, BilinearSpace, BinaryField, Family, LabeledGraph, Sign,
    Vector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: polar_core::Error) -> String {
    err.to_string()
}

fn family_instances() -> Vec<(Family, u32, u32)> {
    let mut out = Vec::new();
    for m in [2, 3, 4] {
        out.push((Family::NoEven, m, 2));
    }
    for m in [1, 2] {
        out.push((Family::NoOdd, m, 4));
    }
    for m in [2, 3] {
        out.push((Family::NoOdd, m, 2));
    }
    for m in [2, 3, 4] {
        out.push((Family::GammaO, m, 2));
    }
    out
}

fn parameter_tables() -> Outcome {
    let mut count = 0;
    for (family, m, q) in family_instances() {
        for sign in Sign::both() {
            let name = family.instance(m, q, sign);
            let expected = expected_params(family, m, q, sign).map_err(e)?;
            let built = build_family(family, m, q, sign).map_err(e)?;
            let verdict = srg_params(&built.graph).map_err(e)?;
            ensure(expected.matches(&verdict), || {
                format!("{name}: expected {expected}, got {verdict}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} instances match"))
}

fn spot_values() -> Outcome {
    let cases: [(Family, u32, u32, Sign, [u64; 4]); 5] = [
        (Family::NoEven, 2, 2, Sign::Plus, [6, 3, 0, 3]),
        (Family::NoEven, 2, 2, Sign::Minus, [10, 3, 0, 1]),
        (Family::NoOdd, 1, 4, Sign::Plus, [10, 6, 3, 4]),
        (Family::GammaO, 2, 2, Sign::Plus, [9, 4, 1, 2]),
        (Family::GammaO, 3, 2, Sign::Minus, [27, 10, 1, 5]),
    ];
    for (family, m, q, sign, [v, k, l, mu]) in cases {
        let g = build_family(family, m, q, sign).map_err(e)?.graph;
        let p = srg_params(&g).map_err(e)?;
        let got = [p.v(), p.k(), p.lambda(), p.mu()];
        ensure(got == [Some(v), Some(k), Some(l), Some(mu)], || {
            format!("{}: got {p}", family.instance(m, q, sign))
        })?;
    }
    let g = build_family(Family::NoOdd, 1, 4, Sign::Minus)
        .map_err(e)?
        .graph;
    ensure(
        g.degree(0) == 0 && srg_params(&g).map_err(e)?.k() == Some(0),
        || "NO^-(3,4) is not edgeless".into(),
    )?;
    Ok("6 spot values exact".into())
}

fn omega(space: &BilinearSpace, s: Sign) -> Vec<u32> {
    space
        .vectors()
        .filter(|&a| type_of_parameter(space, a) == s)
        .map(|a| a.0)
        .collect()
}

fn orbit_structure() -> Outcome {
    let mut orders = Vec::new();
    for (q, m) in [(2u32, 1u32), (2, 2), (4, 1)] {
        let space = BilinearSpace::standard(BinaryField::with_order(q).map_err(e)?, m as usize)
            .map_err(e)?;
        let group = SymplecticGroup::full(&space, 1_000_000).map_err(e)?;
        let formula = group_order(GroupFamily::Sp, m, q).map_err(e)?;
        ensure(BigUint::from(group.order()) == formula, || {
            format!(
                "(q,m)=({q},{m}): enumerated {} vs formula {formula}",
                group.order()
            )
        })?;
        orders.push(group.order());
        let n = space.size();
        let qm = (q as usize).pow(m);
        let mut sizes: Vec<usize> = group
            .orbits_on_forms(&[Vector::ZERO])
            .iter()
            .map(Vec::len)
            .collect();
        sizes.sort_unstable();
        ensure(sizes == vec![(n - qm) / 2, (n + qm) / 2], || {
            format!("(q,m)=({q},{m}): Ω orbit sizes {sizes:?}")
        })?;
        if (q, m) == (2, 2) {
            let perms = group.form_permutations();
            for s in Sign::both() {
                ensure(
                    check_2transitivity(&perms, &omega(&space, s)).map_err(e)?,
                    || format!("Sp(4,2) not 2-transitive on Ω{s}"),
                )?;
            }
            let plus = group
                .stabilizer_of_form(standard_parameter(&space, Sign::Plus).map_err(e)?)
                .map_err(e)?;
            let minus = group
                .stabilizer_of_form(standard_parameter(&space, Sign::Minus).map_err(e)?)
                .map_err(e)?;
            ensure((plus.order(), minus.order()) == (72, 120), || {
                format!("stabilizer orders {} and {}", plus.order(), minus.order())
            })?;
        }
    }
    Ok(format!("|Sp| = {orders:?}, stabilizers 72/120"))
}

fn complements() -> Outcome {
    for (q, m) in [(2u32, 2usize), (4, 1)] {
        let space =
            BilinearSpace::standard(BinaryField::with_order(q).map_err(e)?, m).map_err(e)?;
        let group = SymplecticGroup::full(&space, 1_000_000).map_err(e)?;
        let c = verify_complements(&group);
        let n = space.size();
        let qm = q.pow(m as u32) as usize;
        ensure(
            c.is_subgroup && c.trivial_translation_intersection && c.orbits_are_trace_fibers,
            || format!("(q,m)=({q},{m}): {c:?}"),
        )?;
        ensure(
            c.h2_orbit_lengths == vec![(n + qm) / 2, (n - qm) / 2],
            || format!("(q,m)=({q},{m}): H₂ orbit lengths {:?}", c.h2_orbit_lengths),
        )?;
    }
    Ok("H₂ verified for (2,2), (4,1)".into())
}

fn transvection_identities() -> Outcome {
    let cases = [
        (2u32, 2usize, Sampling::Exhaustive),
        (
            4,
            1,
            Sampling::Random {
                samples: 10_000,
                seed: 7,
            },
        ),
        (
            4,
            2,
            Sampling::Random {
                samples: 10_000,
                seed: 7,
            },
        ),
    ];
    let mut total = 0;
    for (q, m, sampling) in cases {
        let space =
            BilinearSpace::standard(BinaryField::with_order(q).map_err(e)?, m).map_err(e)?;
        for c in check_transvection_identities(&space, sampling).map_err(e)? {
            ensure(c.passed(), || {
                format!("(q,m)=({q},{m}) {}: {} failures", c.name, c.failures)
            })?;
            if let Sampling::Random { samples, .. } = sampling {
                ensure(c.checked >= samples, || {
                    format!("{}: only {} samples", c.name, c.checked)
                })?;
            }
            total += c.checked;
        }
    }
    let mut solved = 0;
    for (q, m) in [(2u32, 2usize), (4, 1)] {
        let space =
            BilinearSpace::standard(BinaryField::with_order(q).map_err(e)?, m).map_err(e)?;
        let s = sweep_transvection_solver(&space).map_err(e)?;
        ensure(s.passed(), || format!("(q,m)=({q},{m}) solver: {s:?}"))?;
        solved += s.solved;
    }
    Ok(format!("{total} identity instances, {solved} solver pairs"))
}

fn two_graph_degrees() -> Outcome {
    let mut degrees = Vec::new();
    for m in [2u32, 3] {
        for sign in Sign::both() {
            let theta = standard_form(BinaryField::gf2(), m as usize, sign).map_err(e)?;
            let x = build_symplectic_two_graph(&theta).map_err(e)?;
            let d = x.regular_degree().map_err(e)?;
            let want = expected_symplectic_degree(m, sign);
            ensure(d == Some(want as u64), || {
                format!("m={m} {sign}: degree {d:?}, expected {want}")
            })?;
            degrees.push(want);
        }
    }
    Ok(format!("degrees {degrees:?}"))
}

fn descendants() -> Outcome {
    for m in [2usize, 3] {
        for sign in Sign::both() {
            let theta = standard_form(BinaryField::gf2(), m, sign).map_err(e)?;
            let x = build_symplectic_two_graph(&theta).map_err(e)?;
            let d = x.labels()[0];
            let shifted = theta.shifted(d).map_err(e)?;
            ensure(shifted.form_type().map_err(e)? == -sign, || {
                "shifted form keeps its type".into()
            })?;
            let gamma = build_gamma_o(&shifted)
                .map_err(e)?
                .graph
                .with_isolated_vertex(Vector::ZERO)
                .map_err(e)?;
            let desc = x.descendant(d).map_err(e)?;
            let phi = label_map(&desc, &gamma, |u| u + d).map_err(e)?;
            ensure(check_iso_map(&desc, &gamma, &phi).map_err(e)?, || {
                format!(
                    "m={m} {sign}: descendant is not Γ(O{}) + K1 under τ_d",
                    -sign
                )
            })?;
        }
    }
    Ok("4 descendants isomorphic under τ_d".into())
}

fn main_theorem() -> Outcome {
    let mut sizes = Vec::new();
    for m in [1u32, 2] {
        for sign in Sign::both() {
            let t = check_theorem_instance(m, sign, 300).map_err(e)?;
            ensure(t.part_i == Some(true) && t.part_ii == Some(true), || {
                format!(
                    "m={m} {sign}: parts (i)/(ii) {:?} {:?}",
                    t.part_i, t.part_ii
                )
            })?;
            ensure(t.passed(), || format!("m={m} {sign}: {t:?}"))?;
            sizes.push(t.vertices);
        }
    }
    Ok(format!("pairs on {sizes:?} vertices switch via A or B"))
}

fn theorem_m3() -> Outcome {
    let mut sizes = Vec::new();
    for sign in Sign::both() {
        let t = check_theorem_instance(3, sign, 0).map_err(e)?;
        ensure(t.part_i.is_none() && t.part_ii.is_none(), || {
            "two-graphs were materialized".into()
        })?;
        ensure(t.passed(), || format!("m=3 {sign}: {t:?}"))?;
        sizes.push(t.vertices);
    }
    sizes.sort_unstable();
    ensure(sizes == [2016, 2080], || format!("vertex counts {sizes:?}"))?;
    Ok("2016/2080-vertex pairs switch via certificate".into())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> LabeledGraph {
    let p: f64 = rng.gen_range(0.1..0.9);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    LabeledGraph::from_edges(n, &edges).expect("valid edges")
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    for case in 0..200 {
        let n = rng.gen_range(4..=64);
        let g = random_graph(&mut rng, n);
        let y: Vec<Vector> = g
            .labels()
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let h = seidel_switch(&g, &y).map_err(e)?;
        let t = TwoGraph::associated(&g).map_err(e)?;
        if TwoGraph::associated(&h).map_err(e)? != t {
            failures.push(format!("case {case}: switching changed the two-graph"));
        }
        if !t.check_even_quadruples(case).passed() {
            failures.push(format!("case {case}: odd quadruple"));
        }
        let w = g.label(rng.gen_range(0..n));
        if TwoGraph::associated(&t.descendant(w).map_err(e)?).map_err(e)? != t {
            failures.push(format!("case {case}: Tau of descendant differs"));
        }
        if switching_equivalence(&g, &h)
            .map_err(e)?
            .certificate
            .is_none()
        {
            failures.push(format!("case {case}: no switching certificate"));
        }
        if !graph6::round_trips(&g) || !graph6::round_trips(&h) {
            failures.push(format!("case {case}: graph6 round trip"));
        }
    }
    let mut exports = 0;
    for (family, m, q) in family_instances() {
        for sign in Sign::both() {
            let g = build_family(family, m, q, sign).map_err(e)?.graph;
            if !graph6::round_trips(&g) {
                failures.push(format!(
                    "{}: graph6 round trip",
                    family.instance(m, q, sign)
                ));
            }
            exports += 1;
        }
    }
    for m in [2, 3] {
        for sign in Sign::both() {
            let theta = standard_form(BinaryField::gf2(), m, sign).map_err(e)?;
            let x = build_symplectic_two_graph(&theta).map_err(e)?;
            if !x.check_even_quadruples(1).passed() {
                failures.push(format!("𝒳{sign}_{}: odd quadruple", 2 * m));
            }
        }
    }
    match failures.first() {
        None => Ok(format!(
            "200 random instances, {exports} exports, zero failures"
        )),
        Some(f) => Err(format!("{} failures, first: {f}", failures.len())),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("parameter tables", Some(10), parameter_tables),
        ("spot values", None, spot_values),
        ("orbit structure", None, orbit_structure),
        ("complements", None, complements),
        ("transvection identities", None, transvection_identities),
        ("two-graph degrees", Some(30), two_graph_degrees),
        ("descendants", None, descendants),
        ("main theorem m=1,2", Some(60), main_theorem),
        ("main theorem m=3", Some(60), theorem_m3),
        ("property suites", None, property_suites),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(s) => {
                Err(format!("took {:.1} s, limit {s} s", elapsed.as_secs_f64()))
            }
            (o, _) => o,
        };
        let ms = elapsed.as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
