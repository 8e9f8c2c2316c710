//! The graph families, built from their pair predicates on coordinate
//! labels.

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::field::BinaryField;
use crate::forms::{BilinearSpace, QuadraticForm, Sign, Vector};
use crate::graph::{
    check_iso_map, expected_params, label_map, srg_params, ExpectedParams, Family, LabeledGraph,
    SrgVerdict,
};
use crate::group::SymplecticGroup;

/// A constructed family member together with its parameter check.
#[derive(Clone, Debug)]
pub struct Built {
    pub graph: LabeledGraph,
    pub family: Family,
    pub m: u32,
    pub q: u32,
    pub sign: Sign,
    pub expected: ExpectedParams,
    pub verdict: SrgVerdict,
}

/// Serializable summary of a [`Built`] graph.
#[derive(Clone, Debug, Serialize)]
pub struct BuildSummary {
    pub family: Family,
    pub instance: String,
    pub m: u32,
    pub q: u32,
    pub sign: Sign,
    pub expected: ExpectedParams,
    pub verdict: SrgVerdict,
}

impl Built {
    pub fn instance(&self) -> String {
        self.family.instance(self.m, self.q, self.sign)
    }

    pub fn summary(&self) -> BuildSummary {
        BuildSummary {
            family: self.family,
            instance: self.instance(),
            m: self.m,
            q: self.q,
            sign: self.sign,
            expected: self.expected,
            verdict: self.verdict,
        }
    }
}

fn finish(graph: LabeledGraph, family: Family, m: u32, q: u32, sign: Sign) -> Result<Built> {
    let expected = expected_params(family, m, q, sign)?;
    let verdict = srg_params(&graph)?;
    if !expected.matches(&verdict) {
        return Err(Error::ParameterMismatch {
            what: family.instance(m, q, sign),
            expected: expected.to_string(),
            computed: verdict.to_string(),
        });
    }
    Ok(Built {
        graph,
        family,
        m,
        q,
        sign,
        expected,
        verdict,
    })
}

fn require_gf2(theta: &QuadraticForm, what: &str) -> Result<()> {
    if theta.field().degree() != 1 {
        return Err(usage(format!("{what} needs a form over GF(2)")));
    }
    Ok(())
}

fn require_m(theta: &QuadraticForm, min: usize, what: &str) -> Result<u32> {
    let m = theta.space().m();
    if m < min {
        return Err(usage(format!("{what} needs m ≥ {min}, got {m}")));
    }
    Ok(m as u32)
}

/// `NO^ε(2m,2)`, `ε` the type of `Θ`: vertices `Θ(a) = 1`, adjacent iff
/// `⟨a,b⟩ = 0`.
pub fn build_no_even(theta: &QuadraticForm) -> Result<Built> {
    require_gf2(theta, "NO-even")?;
    let m = require_m(theta, 2, "NO-even")?;
    let sign = theta.form_type()?;
    let space = theta.space();
    let labels = space.vectors().filter(|&a| theta.eval(a) == 1).collect();
    let graph = LabeledGraph::from_predicate(labels, |a, b| space.pair(a, b) == 0)?;
    finish(graph, Family::NoEven, m, 2, sign)
}

/// `NO^{-ε}(2m+1,q)` for `Θ` of type `ε`: vertices `Tr Θ(a) = 1`, adjacent
/// iff `Θ(a+b) = ⟨a,b⟩²`.
pub fn build_no_odd(theta: &QuadraticForm) -> Result<Built> {
    let m = require_m(theta, 1, "NO-odd")?;
    let f = theta.field();
    let sign = -theta.form_type()?;
    let space = theta.space();
    let labels = space
        .vectors()
        .filter(|&a| f.trace(theta.eval(a)) == 1)
        .collect();
    let graph = LabeledGraph::from_predicate(labels, |a, b| {
        theta.eval(a + b) == f.square(space.pair(a, b))
    })?;
    finish(graph, Family::NoOdd, m, f.order(), sign)
}

/// The model of `NO^ε(2m+1,q)` on `W^ε = {a : Tr ϑ_0(a) = 0}` (`ε = +`) or
/// `= 1` (`ε = −`), adjacent iff `ϑ_a(a+b) = 0`.
pub fn build_no_odd_w(space: &BilinearSpace, sign: Sign) -> Result<Built> {
    if !space.is_standard() {
        return Err(usage("the W-model needs the standard space"));
    }
    let f = space.field();
    let level = match sign {
        Sign::Plus => 0,
        Sign::Minus => 1,
    };
    let labels = space
        .vectors()
        .filter(|&a| f.trace(space.theta0(a)) == level)
        .collect();
    let graph = LabeledGraph::from_predicate(labels, |a, b| space.theta(a, a + b) == 0)?;
    finish(graph, Family::NoOdd, space.m() as u32, f.order(), sign)
}

/// `Γ(O^ε(2m,2))`, `ε` the type of `Θ`: vertices the nonzero zeros of `Θ`,
/// adjacent iff `⟨a,b⟩ = 0`.
pub fn build_gamma_o(theta: &QuadraticForm) -> Result<Built> {
    require_gf2(theta, "GammaO")?;
    let m = require_m(theta, 2, "GammaO")?;
    let sign = theta.form_type()?;
    let space = theta.space();
    let labels = space
        .vectors()
        .filter(|&a| !a.is_zero() && theta.eval(a) == 0)
        .collect();
    let graph = LabeledGraph::from_predicate(labels, |a, b| space.pair(a, b) == 0)?;
    finish(graph, Family::GammaO, m, 2, sign)
}

/// `Σ_{2m}`: all of the GF(2) space, adjacent iff `⟨a,b⟩ = 0`.
pub fn build_sigma_on(space: &BilinearSpace) -> Result<LabeledGraph> {
    if space.field().degree() != 1 {
        return Err(usage("Σ is defined over GF(2)"));
    }
    LabeledGraph::from_predicate(space.vectors().collect(), |a, b| space.pair(a, b) == 0)
}

/// `Σ_{2m}` on the standard space.
pub fn build_sigma(m: usize) -> Result<LabeledGraph> {
    if m == 0 {
        return Err(usage("Σ needs m ≥ 1"));
    }
    build_sigma_on(&BilinearSpace::standard(BinaryField::gf2(), m)?)
}

/// Smallest packed `a` with `Tr ϑ_0(a) = 1`.
pub fn first_elliptic_parameter(space: &BilinearSpace) -> Result<Vector> {
    let f = space.field();
    space
        .vectors()
        .find(|&a| f.trace(space.theta0(a)) == 1)
        .ok_or_else(|| usage("space has no elliptic parameter"))
}

/// Parameter of the representative form of the given type: `0` for
/// hyperbolic, [`first_elliptic_parameter`] for elliptic.
pub fn standard_parameter(space: &BilinearSpace, sign: Sign) -> Result<Vector> {
    match sign {
        Sign::Plus => Ok(Vector::ZERO),
        Sign::Minus => first_elliptic_parameter(space),
    }
}

/// The representative form `ϑ_0` or `ϑ_a` on the standard space.
pub fn standard_form(field: BinaryField, m: usize, sign: Sign) -> Result<QuadraticForm> {
    let space = BilinearSpace::standard(field, m)?;
    let a = standard_parameter(&space, sign)?;
    QuadraticForm::theta(&space, a)
}

/// Family member from its name: the form type is chosen so that the graph
/// gets the requested sign.
pub fn build_family(family: Family, m: u32, q: u32, sign: Sign) -> Result<Built> {
    let field = BinaryField::with_order(q)?;
    if m == 0 || m > 12 {
        return Err(usage(format!("m = {m} is out of range")));
    }
    match family {
        Family::NoEven => build_no_even(&standard_form(require_q2(field)?, m as usize, sign)?),
        Family::NoOdd => build_no_odd(&standard_form(field, m as usize, -sign)?),
        Family::GammaO => build_gamma_o(&standard_form(require_q2(field)?, m as usize, sign)?),
    }
}

fn require_q2(field: BinaryField) -> Result<BinaryField> {
    if field.degree() != 1 {
        return Err(usage("this family is defined over GF(2) only"));
    }
    Ok(field)
}

/// Checks that the translation `τ_d: a ↦ a + d` maps `NO(ϑ_d)` onto its
/// `W`-model of the same sign.
pub fn check_w_translation(space: &BilinearSpace, d: Vector) -> Result<bool> {
    let theta = QuadraticForm::theta(space, d)?;
    let v_graph = build_no_odd(&theta)?;
    let w_graph = build_no_odd_w(space, v_graph.sign)?;
    let phi = label_map(&v_graph.graph, &w_graph.graph, |a| a + d)?;
    check_iso_map(&v_graph.graph, &w_graph.graph, &phi)
}

/// Whether every element of `group` fixing `ϑ_a` is an automorphism of
/// `NO(ϑ_a)` on `V`. Returns the number of elements checked.
pub fn check_stabilizer_automorphisms(group: &SymplecticGroup, a: Vector) -> Result<(usize, bool)> {
    let space = group.space();
    let stabilizer = group.stabilizer_of_form(a)?;
    let built = build_no_even(&QuadraticForm::theta(space, a)?)?;
    let g = &built.graph;
    for element in stabilizer.elements() {
        let phi = label_map(g, g, |u| element.apply(space, u))?;
        if !check_iso_map(g, g, &phi)? {
            return Ok((stabilizer.order(), false));
        }
    }
    Ok((stabilizer.order(), true))
}

/// Both graphs of a switching pair on one labeled vertex set: `Θ` over
/// GF(4), `NO^ε(4m,2)` from its trace lift and `NO^{-ε}(2m+1,4)` from `Θ`.
#[derive(Clone, Debug)]
pub struct SwitchingPair {
    pub theta: QuadraticForm,
    pub lifted: QuadraticForm,
    pub no_even: Built,
    pub no_odd: Built,
}

impl SwitchingPair {
    /// Builds the pair with `Θ` the representative form of type `sign`.
    pub fn standard(m: usize, sign: Sign) -> Result<Self> {
        Self::from_form(standard_form(BinaryField::gf4(), m, sign)?)
    }

    pub fn from_form(theta: QuadraticForm) -> Result<Self> {
        if theta.field().order() != 4 {
            return Err(usage("switching pairs need a form over GF(4)"));
        }
        let lifted = theta.trace_lift()?;
        let lifted_type = lifted.form_type()?;
        let theta_type = theta.form_type()?;
        if lifted_type != theta_type {
            return Err(Error::Invariant(format!(
                "trace lift changed the type from {theta_type} to {lifted_type}"
            )));
        }
        let no_even = build_no_even(&lifted)?;
        let no_odd = build_no_odd(&theta)?;
        if no_even.graph.labels() != no_odd.graph.labels() {
            return Err(Error::Invariant(
                "switching pair graphs have different vertex labels".into(),
            ));
        }
        Ok(Self {
            theta,
            lifted,
            no_even,
            no_odd,
        })
    }

    /// Type of `Θ`, which is the sign of the GF(2) graph.
    pub fn sign(&self) -> Sign {
        self.no_even.sign
    }

    pub fn m(&self) -> usize {
        self.theta.space().m()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SrgParams;

    fn srg(v: u64, k: u64, lambda: u64, mu: u64) -> SrgVerdict {
        SrgVerdict::Srg(SrgParams { v, k, lambda, mu })
    }

    #[test]
    fn no_even_examples() {
        let b = build_family(Family::NoEven, 2, 2, Sign::Plus).unwrap();
        assert_eq!(b.verdict, srg(6, 3, 0, 3));
        let b = build_family(Family::NoEven, 2, 2, Sign::Minus).unwrap();
        assert_eq!(b.verdict, srg(10, 3, 0, 1));
        let b = build_family(Family::NoEven, 3, 2, Sign::Minus).unwrap();
        assert_eq!(b.verdict, srg(36, 15, 6, 6));
    }

    #[test]
    fn no_odd_examples() {
        let gf4 = BinaryField::gf4();
        let b = build_no_odd(&standard_form(gf4, 1, Sign::Plus).unwrap()).unwrap();
        assert_eq!(b.sign, Sign::Minus);
        assert_eq!((b.graph.n(), b.graph.edge_count()), (6, 0));
        let b = build_no_odd(&standard_form(gf4, 1, Sign::Minus).unwrap()).unwrap();
        assert_eq!(b.verdict, srg(10, 6, 3, 4));
        let b = build_no_odd(&standard_form(gf4, 2, Sign::Minus).unwrap()).unwrap();
        assert_eq!(b.verdict, srg(136, 75, 42, 40));
    }

    #[test]
    fn no_odd_over_gf2_is_complete() {
        let b = build_family(Family::NoOdd, 2, 2, Sign::Plus).unwrap();
        assert_eq!(b.graph.edge_count(), 10 * 9 / 2);
        assert_eq!(b.verdict.mu(), None);
    }

    #[test]
    fn w_model_examples() {
        let space = BilinearSpace::standard(BinaryField::gf4(), 1).unwrap();
        let w = build_no_odd_w(&space, Sign::Minus).unwrap();
        assert_eq!((w.graph.n(), w.graph.edge_count()), (6, 0));
        // d = (1, ω)
        let d = space.from_coords(&[1, 2]).unwrap();
        assert!(check_w_translation(&space, d).unwrap());
        let space2 = BilinearSpace::standard(BinaryField::gf4(), 2).unwrap();
        let w = build_no_odd_w(&space2, Sign::Plus).unwrap();
        assert_eq!(w.verdict, srg(136, 75, 42, 40));
    }

    #[test]
    fn w_translation_for_every_parameter() {
        for (q, m) in [(2, 1), (2, 2), (4, 1), (8, 1)] {
            let space = BilinearSpace::standard(BinaryField::with_order(q).unwrap(), m).unwrap();
            for d in space.vectors() {
                match check_w_translation(&space, d) {
                    Ok(ok) => assert!(ok, "q={q} m={m} d={d:?}"),
                    // a single vertex has no parameters to check
                    Err(_) => assert_eq!((q, m), (2, 1)),
                }
            }
        }
    }

    #[test]
    fn gamma_o_examples() {
        let b = build_family(Family::GammaO, 2, 2, Sign::Plus).unwrap();
        assert_eq!(b.verdict, srg(9, 4, 1, 2));
        let b = build_family(Family::GammaO, 2, 2, Sign::Minus).unwrap();
        assert_eq!((b.graph.n(), b.graph.edge_count()), (5, 0));
        let b = build_family(Family::GammaO, 3, 2, Sign::Plus).unwrap();
        assert_eq!(b.verdict, srg(35, 18, 9, 9));
        let b = build_family(Family::GammaO, 3, 2, Sign::Minus).unwrap();
        assert_eq!(b.verdict, srg(27, 10, 1, 5));
    }

    #[test]
    fn vertex_counts() {
        for m in 2..5u32 {
            for sign in Sign::both() {
                let s = sign.value();
                let big = 1i64 << (2 * m - 1);
                let small = 1i64 << (m - 1);
                let b = build_family(Family::NoEven, m, 2, sign).unwrap();
                assert_eq!(b.graph.n() as i64, big - s * small);
                let b = build_family(Family::GammaO, m, 2, sign).unwrap();
                assert_eq!(b.graph.n() as i64, big + s * small - 1);
            }
        }
    }

    #[test]
    fn sigma() {
        let g = build_sigma(1).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.edge_count(), 3);
        let g = build_sigma(2).unwrap();
        assert_eq!(g.degree(0), 15);
        assert_eq!(srg_params(&g).unwrap(), SrgVerdict::NotRegular);
    }

    #[test]
    fn builders_reject_bad_input() {
        assert!(build_family(Family::NoEven, 1, 2, Sign::Plus).is_err());
        assert!(build_family(Family::NoEven, 2, 4, Sign::Plus).is_err());
        assert!(build_family(Family::GammaO, 1, 2, Sign::Plus).is_err());
        assert!(build_family(Family::NoOdd, 1, 3, Sign::Plus).is_err());
        assert!(build_sigma(0).is_err());
    }

    #[test]
    fn lifted_forms_build_on_shared_labels() {
        for sign in Sign::both() {
            let pair = SwitchingPair::standard(1, sign).unwrap();
            assert_eq!(pair.sign(), sign);
            assert_eq!(pair.no_odd.sign, -sign);
        }
        let pair = SwitchingPair::standard(1, Sign::Plus).unwrap();
        assert_eq!(pair.no_even.verdict, srg(6, 3, 0, 3));
        assert_eq!(pair.no_odd.graph.edge_count(), 0);
    }

    #[test]
    fn stabilizer_acts_by_automorphisms() {
        let space = BilinearSpace::standard(BinaryField::gf2(), 2).unwrap();
        let group = SymplecticGroup::full(&space, 1000).unwrap();
        for sign in Sign::both() {
            let a = standard_parameter(&space, sign).unwrap();
            let (order, ok) = check_stabilizer_automorphisms(&group, a).unwrap();
            assert!(ok);
            assert_eq!(order, if sign == Sign::Plus { 72 } else { 120 });
        }
    }
}
