//! Symplectic matrices, transvections, the action `Θ ↦ Θ^A` on quadratic
//! forms, and orbit/stabilizer computations over explicitly enumerated
//! groups.
//!
//! Matrices act on row vectors from the right: `u ↦ uA`. The action on forms
//! is `Θ^A(u) = Θ(uA⁻¹)`, which is a right action, and on parameters it
//! reads `ϑ_a^A = ϑ_{aA + b_A}` with `ϑ_0^A = ϑ_{b_A}`.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::forms::{identify_form_parameter, type_of_parameter, BilinearSpace, Sign, Vector};
use crate::matrix::Matrix;

/// Default cap on enumerated group order.
pub const DEFAULT_GROUP_CAP: usize = 10_000_000;

/// A matrix preserving the space's alternating form, stored as packed rows
/// (`rows[i] = e_i A`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SympMatrix {
    rows: Vec<Vector>,
}

impl SympMatrix {
    /// Checks `A·gram·Aᵀ = gram` before accepting the rows.
    pub fn new(space: &BilinearSpace, rows: Vec<Vector>) -> Result<Self> {
        if rows.len() != space.dim() {
            return Err(usage(format!(
                "expected {} rows, got {}",
                space.dim(),
                rows.len()
            )));
        }
        for &r in &rows {
            space.check(r)?;
        }
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                if space.pair(rows[i], rows[j]) != space.gram().get(i, j) {
                    return Err(Error::Domain(format!(
                        "matrix does not preserve the alternating form at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn from_matrix(space: &BilinearSpace, m: &Matrix) -> Result<Self> {
        if m.rows() != space.dim() || m.cols() != space.dim() {
            return Err(usage("matrix size does not match the space"));
        }
        let rows = (0..m.rows())
            .map(|i| space.from_coords(m.row(i)))
            .collect::<Result<_>>()?;
        Self::new(space, rows)
    }

    pub fn identity(space: &BilinearSpace) -> Self {
        Self {
            rows: (0..space.dim()).map(|i| space.basis(i)).collect(),
        }
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn to_matrix(&self, space: &BilinearSpace) -> Matrix {
        let rows: Vec<Vec<u8>> = self.rows.iter().map(|&r| space.coords(r)).collect();
        Matrix::from_rows(space.field(), &rows).expect("rows are in the field")
    }

    /// `uA`.
    #[inline]
    pub fn apply(&self, space: &BilinearSpace, u: Vector) -> Vector {
        let mut acc = Vector::ZERO;
        if space.field().degree() == 1 {
            let mut bits = u.0;
            while bits != 0 {
                acc += self.rows[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            return acc;
        }
        for (i, &row) in self.rows.iter().enumerate() {
            let c = space.coord(u, i);
            if c != 0 {
                acc += space.scale(c, row);
            }
        }
        acc
    }

    /// The product `self · other` (apply `self` first).
    pub fn then(&self, space: &BilinearSpace, other: &SympMatrix) -> SympMatrix {
        SympMatrix {
            rows: self.rows.iter().map(|&r| other.apply(space, r)).collect(),
        }
    }

    pub fn inverse(&self, space: &BilinearSpace) -> SympMatrix {
        let inv = self
            .to_matrix(space)
            .inverse()
            .expect("symplectic matrices are invertible");
        SympMatrix {
            rows: (0..inv.rows())
                .map(|i| space.from_coords(inv.row(i)).expect("entries in field"))
                .collect(),
        }
    }

    pub fn is_identity(&self, space: &BilinearSpace) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, &r)| r == space.basis(i))
    }
}

/// `u ↦ uA + b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineSympMap {
    pub linear: SympMatrix,
    pub shift: Vector,
}

impl AffineSympMap {
    pub fn translation(space: &BilinearSpace, d: Vector) -> Self {
        Self {
            linear: SympMatrix::identity(space),
            shift: d,
        }
    }

    pub fn apply(&self, space: &BilinearSpace, u: Vector) -> Vector {
        self.linear.apply(space, u) + self.shift
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, space: &BilinearSpace, other: &AffineSympMap) -> AffineSympMap {
        AffineSympMap {
            linear: self.linear.then(space, &other.linear),
            shift: other.linear.apply(space, self.shift) + other.shift,
        }
    }

    pub fn is_translation(&self, space: &BilinearSpace) -> bool {
        self.linear.is_identity(space)
    }
}

/// The symplectic transvection `T_a: u ↦ u + ⟨u,a⟩a`.
pub fn transvection(space: &BilinearSpace, a: Vector) -> Result<SympMatrix> {
    space.check(a)?;
    let rows = (0..space.dim())
        .map(|i| {
            let e = space.basis(i);
            e + space.scale(space.pair(e, a), a)
        })
        .collect();
    Ok(SympMatrix { rows })
}

/// `b_A` with `ϑ_0^A = ϑ_{b_A}`, read off the value table of `u ↦ ϑ_0(uA⁻¹)`.
pub fn form_shift(space: &BilinearSpace, a: &SympMatrix) -> Result<Vector> {
    let inv = a.inverse(space);
    form_shift_with_inverse(space, &inv)
}

fn form_shift_with_inverse(space: &BilinearSpace, inv: &SympMatrix) -> Result<Vector> {
    let table: Vec<u8> = space
        .vectors()
        .map(|u| space.theta0(inv.apply(space, u)))
        .collect();
    identify_form_parameter(space, &table)
}

/// The parameter `a'` with `ϑ_a^A = ϑ_{a'}`, namely `aA + b_A`.
pub fn act_on_form(space: &BilinearSpace, a: Vector, m: &SympMatrix) -> Result<Vector> {
    space.check(a)?;
    Ok(m.apply(space, a) + form_shift(space, m)?)
}

/// Value table of `ϑ_a^A`, computed straight from the definition.
pub fn acted_form_table(space: &BilinearSpace, a: Vector, m: &SympMatrix) -> Vec<u8> {
    let inv = m.inverse(space);
    space
        .vectors()
        .map(|u| space.theta(a, inv.apply(space, u)))
        .collect()
}

fn theta_table(space: &BilinearSpace, a: Vector) -> Vec<u8> {
    space.vectors().map(|u| space.theta(a, u)).collect()
}

/// Finds `γ ≠ 0` with `ϑ_a^{T_{γ(a+b)}} = ϑ_b`, or `None` when the two forms
/// have different types.
///
/// With `t` a root of `t² + t + ϑ_0(a) + ϑ_0(b)`, `γ = 1/sqrt(⟨a,b⟩ + t)`.
/// Both roots are tried, every candidate is verified on the full value
/// table, and the smallest verified `γ` is returned.
pub fn find_transvection_equiv(space: &BilinearSpace, a: Vector, b: Vector) -> Result<Option<u8>> {
    space.check(a)?;
    space.check(b)?;
    if !space.is_standard() {
        return Err(usage("find_transvection_equiv needs the standard space"));
    }
    if a == b {
        return Err(usage("find_transvection_equiv needs a ≠ b"));
    }
    let f = space.field();
    let lambda = space.theta0(a) ^ space.theta0(b);
    let Some(t0) = f.solve_artin_schreier(lambda) else {
        return Ok(None);
    };
    let ab = space.pair(a, b);
    let target = theta_table(space, b);
    let mut best: Option<u8> = None;
    for t in [t0, t0 ^ 1] {
        let s = ab ^ t;
        let Some(gamma) = f.inv(f.sqrt(s)) else {
            continue;
        };
        let c = space.scale(gamma, a + b);
        let tc = transvection(space, c)?;
        if acted_form_table(space, a, &tc) != target {
            return Err(Error::Invariant(format!(
                "γ = {} failed verification for a = {}, b = {}",
                f.render(gamma),
                space.render(a),
                space.render(b)
            )));
        }
        best = Some(best.map_or(gamma, |g| g.min(gamma)));
    }
    match best {
        Some(g) => Ok(Some(g)),
        None => Err(Error::Invariant(
            "no admissible γ although the traces agree".into(),
        )),
    }
}

/// Closure of `generators` under products, breadth first from the identity.
///
/// Elements come out in discovery order, which depends only on the
/// generator order.
pub fn generate_group(
    space: &BilinearSpace,
    generators: &[SympMatrix],
    cap: usize,
) -> Result<Vec<SympMatrix>> {
    let identity = SympMatrix::identity(space);
    let mut seen: HashSet<SympMatrix> = HashSet::new();
    let mut elements = vec![identity.clone()];
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = g.then(space, s);
            if seen.insert(h.clone()) {
                if elements.len() >= cap {
                    return Err(Error::Resource {
                        what: format!("group generated in {space:?}"),
                        cap: cap as u64,
                    });
                }
                elements.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(elements)
}

/// All nonzero transvections `T_a`, in packed order of `a`.
pub fn all_transvections(space: &BilinearSpace) -> Vec<SympMatrix> {
    space
        .vectors()
        .skip(1)
        .map(|a| transvection(space, a).expect("a is in the space"))
        .collect()
}

/// Families whose orders have closed formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupFamily {
    /// `Sp(2m,q) ≅ O(2m+1,q)`.
    Sp,
    OPlus,
    OMinus,
}

/// Exact group orders:
/// `|Sp(2m,q)| = q^{m²} Π_{i=1}^{m} (q^{2i} - 1)` and
/// `|O^±(2m,q)| = 2 q^{m(m-1)} (q^m ∓ 1) Π_{i=1}^{m-1} (q^{2i} - 1)`.
pub fn group_order(family: GroupFamily, m: u32, q: u32) -> Result<BigUint> {
    if m == 0 {
        return Err(usage("m must be at least 1"));
    }
    if q < 2 || !q.is_power_of_two() {
        return Err(usage(format!("q = {q} is not a power of two")));
    }
    let q = BigUint::from(q);
    let one = BigUint::from(1u32);
    let prod = |upto: u32| -> BigUint {
        (1..=upto).fold(BigUint::from(1u32), |acc, i| acc * (q.pow(2 * i) - &one))
    };
    Ok(match family {
        GroupFamily::Sp => q.pow(m * m) * prod(m),
        GroupFamily::OPlus => {
            BigUint::from(2u32) * q.pow(m * (m - 1)) * (q.pow(m) - &one) * prod(m - 1)
        }
        GroupFamily::OMinus => {
            BigUint::from(2u32) * q.pow(m * (m - 1)) * (q.pow(m) + &one) * prod(m - 1)
        }
    })
}

/// A finite permutation group given by the images of every point under
/// every element (`perms[g][x] = x^g`).
pub type PermutationList = Vec<Vec<u32>>;

/// Orbits of a group given by its full element list. Each orbit is sorted;
/// orbits are listed by discovery from `seeds`, then by smallest point.
pub fn orbit_partition(degree: usize, perms: &[Vec<u32>], seeds: &[u32]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut orbits = Vec::new();
    let starts = seeds.iter().copied().chain(0..degree as u32);
    for x in starts {
        if seen[x as usize] {
            continue;
        }
        // The element list is closed, so {x^g} is already the whole orbit.
        let mut orbit: Vec<u32> = perms.iter().map(|p| p[x as usize]).collect();
        orbit.push(x);
        orbit.sort_unstable();
        orbit.dedup();
        for &y in &orbit {
            seen[y as usize] = true;
        }
        orbits.push(orbit);
    }
    orbits
}

/// Whether the group acts 2-transitively on `domain`: transitive, and the
/// stabilizer of the first point transitive on the rest.
pub fn check_2transitivity(perms: &[Vec<u32>], domain: &[u32]) -> Result<bool> {
    if domain.len() < 2 {
        return Err(usage("2-transitivity needs at least two points"));
    }
    let mut sorted: Vec<u32> = domain.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let first = sorted[0];
    let mut orbit: Vec<u32> = perms.iter().map(|p| p[first as usize]).collect();
    orbit.sort_unstable();
    orbit.dedup();
    if orbit != sorted {
        return Ok(false);
    }
    let rest: Vec<u32> = sorted[1..].to_vec();
    let second = rest[0];
    let mut sub_orbit: Vec<u32> = perms
        .iter()
        .filter(|p| p[first as usize] == first)
        .map(|p| p[second as usize])
        .collect();
    sub_orbit.sort_unstable();
    sub_orbit.dedup();
    Ok(sub_orbit == rest)
}

/// An explicitly enumerated subgroup of `Sp(2m,q)` on the standard space,
/// with its linear action on `V` and its action on form parameters.
#[derive(Clone, Debug)]
pub struct SymplecticGroup {
    space: BilinearSpace,
    elements: Vec<SympMatrix>,
    /// `b_A` for each element, so that `a ↦ aA + b_A` is the action on `Ω`.
    shifts: Vec<Vector>,
}

impl SymplecticGroup {
    /// The full symplectic group, generated by all transvections.
    pub fn full(space: &BilinearSpace, cap: usize) -> Result<Self> {
        let elements = generate_group(space, &all_transvections(space), cap)?;
        Self::from_elements(space, elements)
    }

    pub fn from_elements(space: &BilinearSpace, elements: Vec<SympMatrix>) -> Result<Self> {
        if !space.is_standard() {
            return Err(usage("the action on forms needs the standard space"));
        }
        let shifts = elements
            .iter()
            .map(|g| form_shift(space, g))
            .collect::<Result<_>>()?;
        Ok(Self {
            space: space.clone(),
            elements,
            shifts,
        })
    }

    pub fn space(&self) -> &BilinearSpace {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SympMatrix] {
        &self.elements
    }

    pub fn shifts(&self) -> &[Vector] {
        &self.shifts
    }

    /// Parameter action `a ↦ aA + b_A` of element `i`.
    pub fn act(&self, i: usize, a: Vector) -> Vector {
        self.elements[i].apply(&self.space, a) + self.shifts[i]
    }

    pub fn linear_permutations(&self) -> PermutationList {
        self.elements
            .iter()
            .map(|g| {
                self.space
                    .vectors()
                    .map(|u| g.apply(&self.space, u).0)
                    .collect()
            })
            .collect()
    }

    pub fn form_permutations(&self) -> PermutationList {
        (0..self.elements.len())
            .map(|i| self.space.vectors().map(|a| self.act(i, a).0).collect())
            .collect()
    }

    /// Orbits on `Ω`, identified with parameters `a`.
    pub fn orbits_on_forms(&self, seeds: &[Vector]) -> Vec<Vec<Vector>> {
        let seeds: Vec<u32> = seeds.iter().map(|v| v.0).collect();
        orbit_partition(self.space.size(), &self.form_permutations(), &seeds)
            .into_iter()
            .map(|o| o.into_iter().map(Vector).collect())
            .collect()
    }

    /// The subgroup fixing `ϑ_a`, filtered from the element list.
    pub fn stabilizer_of_form(&self, a: Vector) -> Result<Self> {
        self.space.check(a)?;
        let keep: Vec<usize> = (0..self.elements.len())
            .filter(|&i| self.act(i, a) == a)
            .collect();
        Ok(Self {
            space: self.space.clone(),
            elements: keep.iter().map(|&i| self.elements[i].clone()).collect(),
            shifts: keep.iter().map(|&i| self.shifts[i]).collect(),
        })
    }

    /// Orbits of the linear action on nonzero vectors.
    pub fn vector_orbits(&self) -> Vec<Vec<Vector>> {
        orbit_partition(self.space.size(), &self.linear_permutations(), &[])
            .into_iter()
            .filter(|o| o != &[0])
            .map(|o| o.into_iter().map(Vector).collect())
            .collect()
    }

    /// The complement `H₂ = {u ↦ uA + b_A}` of the translations in `ASp`.
    pub fn complement_h2(&self) -> Vec<AffineSympMap> {
        self.elements
            .iter()
            .zip(&self.shifts)
            .map(|(g, &b)| AffineSympMap {
                linear: g.clone(),
                shift: b,
            })
            .collect()
    }
}

/// Facts about `H₂` checked against the claims of the complement theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementReport {
    /// `b_{AB} = b_A B + b_B` for all pairs, so `H₂` is closed.
    pub is_subgroup: bool,
    /// Only the identity of `H₂` is a translation.
    pub trivial_translation_intersection: bool,
    pub h2_orbit_lengths: Vec<usize>,
    /// The `H₂` orbits coincide with the trace fibers of `ϑ_0`.
    pub orbits_are_trace_fibers: bool,
    pub h1_orbit_lengths: Vec<usize>,
}

pub fn verify_complements(group: &SymplecticGroup) -> ComplementReport {
    let space = group.space();
    let h2 = group.complement_h2();
    let index: std::collections::HashMap<&SympMatrix, usize> = group
        .elements()
        .iter()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    let is_subgroup = h2.iter().all(|x| {
        h2.iter().all(|y| {
            let z = x.then(space, y);
            index
                .get(&z.linear)
                .is_some_and(|&k| group.shifts()[k] == z.shift)
        })
    });
    let trivial_translation_intersection = h2
        .iter()
        .filter(|x| x.is_translation(space))
        .all(|x| x.shift.is_zero());
    let perms: PermutationList = h2
        .iter()
        .map(|x| space.vectors().map(|u| x.apply(space, u).0).collect())
        .collect();
    let mut h2_orbits = orbit_partition(space.size(), &perms, &[]);
    h2_orbits.sort_by_key(|o| std::cmp::Reverse(o.len()));
    let fibers: Vec<Vec<u32>> = Sign::both()
        .into_iter()
        .map(|s| {
            space
                .vectors()
                .filter(|&a| type_of_parameter(space, a) == s)
                .map(|a| a.0)
                .collect()
        })
        .collect();
    let orbits_are_trace_fibers = {
        let mut a = h2_orbits.clone();
        let mut b = fibers;
        a.sort();
        b.sort();
        a == b
    };
    let mut h1_orbit_lengths: Vec<usize> =
        orbit_partition(space.size(), &group.linear_permutations(), &[])
            .iter()
            .map(Vec::len)
            .collect();
    h1_orbit_lengths.sort_unstable();
    ComplementReport {
        is_subgroup,
        trivial_translation_intersection,
        h2_orbit_lengths: h2_orbits.iter().map(Vec::len).collect(),
        orbits_are_trace_fibers,
        h1_orbit_lengths,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BinaryField;
    use crate::forms::QuadraticForm;

    fn std_space(q: u32, m: usize) -> BilinearSpace {
        BilinearSpace::standard(BinaryField::with_order(q).unwrap(), m).unwrap()
    }

    #[test]
    fn transvection_examples() {
        let s = std_space(2, 1);
        let t = transvection(&s, s.from_coords(&[1, 1]).unwrap()).unwrap();
        assert_eq!(
            t.apply(&s, s.from_coords(&[1, 0]).unwrap()),
            s.from_coords(&[0, 1]).unwrap()
        );
        assert!(transvection(&s, Vector::ZERO).unwrap().is_identity(&s));
    }

    #[test]
    fn transvection_laws() {
        for (q, m) in [(2, 2), (4, 1), (4, 2)] {
            let s = std_space(q, m);
            for a in s.vectors().step_by(3) {
                let t = transvection(&s, a).unwrap();
                assert!(t.then(&s, &t).is_identity(&s));
                assert!(SympMatrix::new(&s, t.rows().to_vec()).is_ok());
                for u in s.vectors().step_by(5) {
                    let fixed = t.apply(&s, u) == u;
                    assert_eq!(fixed, s.pair(u, a) == 0);
                }
            }
        }
    }

    #[test]
    fn non_symplectic_rows_rejected() {
        let s = std_space(2, 1);
        // (1,0) ↦ (1,0), (0,1) ↦ (1,0): singular.
        assert!(SympMatrix::new(&s, vec![Vector(1), Vector(1)]).is_err());
    }

    #[test]
    fn act_on_form_examples() {
        let s = std_space(4, 2);
        let f = s.field();
        let id = SympMatrix::identity(&s);
        for a in s.vectors().step_by(19) {
            assert_eq!(act_on_form(&s, a, &id).unwrap(), a);
            for c in s.vectors().step_by(23) {
                let tc = transvection(&s, c).unwrap();
                let acted = act_on_form(&s, a, &tc).unwrap();
                let expected = a + s.scale(f.sqrt(s.theta(a, c) ^ 1), c);
                assert_eq!(acted, expected);
                assert_eq!(
                    acted_form_table(&s, a, &tc),
                    QuadraticForm::theta(&s, acted).unwrap().value_table()
                );
            }
        }
    }

    #[test]
    fn action_law_with_inverse() {
        let s = std_space(2, 2);
        let g = generate_group(&s, &all_transvections(&s), 1000).unwrap();
        for (k, x) in g.iter().enumerate().step_by(37) {
            let inv = x.inverse(&s);
            assert!(x.then(&s, &inv).is_identity(&s));
            for a in s.vectors() {
                let there = act_on_form(&s, a, x).unwrap();
                assert_eq!(act_on_form(&s, there, &inv).unwrap(), a, "element {k}");
            }
        }
    }

    #[test]
    fn transvection_equiv_examples() {
        let s = std_space(2, 1);
        assert_eq!(
            find_transvection_equiv(&s, Vector(0), s.from_coords(&[1, 1]).unwrap()).unwrap(),
            None
        );
        let s = std_space(2, 2);
        assert_eq!(
            find_transvection_equiv(&s, Vector(0), s.from_coords(&[1, 1, 1, 1]).unwrap()).unwrap(),
            Some(1)
        );
        let s = std_space(4, 1);
        let b = s.from_coords(&[1, 1]).unwrap();
        let gamma = find_transvection_equiv(&s, Vector(0), b).unwrap().unwrap();
        // t = ω solves t² + t + 1; ⟨0,b⟩ = 0 so γ = 1/sqrt(t) for t ∈ {ω, ω²}.
        let f = s.field();
        let candidates: Vec<u8> = [0b10u8, 0b11]
            .iter()
            .map(|&t| f.inv(f.sqrt(t)).unwrap())
            .collect();
        assert_eq!(gamma, *candidates.iter().min().unwrap());
        assert!(find_transvection_equiv(&s, b, b).is_err());
    }

    #[test]
    fn group_orders_match_enumeration() {
        for (q, m, expected) in [(2u32, 1u32, 6u32), (2, 2, 720), (4, 1, 60)] {
            let s = std_space(q, m as usize);
            let g = generate_group(&s, &all_transvections(&s), 10_000).unwrap();
            assert_eq!(g.len() as u32, expected);
            assert_eq!(
                group_order(GroupFamily::Sp, m, q).unwrap(),
                BigUint::from(expected)
            );
        }
    }

    #[test]
    fn group_cap_is_enforced() {
        let s = std_space(2, 2);
        assert!(matches!(
            generate_group(&s, &all_transvections(&s), 10),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn orthogonal_orders_and_index() {
        assert_eq!(
            group_order(GroupFamily::OPlus, 2, 2).unwrap(),
            BigUint::from(72u32)
        );
        assert_eq!(
            group_order(GroupFamily::OMinus, 2, 2).unwrap(),
            BigUint::from(120u32)
        );
        for (m, q) in [(1u32, 2u32), (2, 2), (3, 2), (2, 4), (3, 8)] {
            let sp = group_order(GroupFamily::Sp, m, q).unwrap();
            let qm = BigUint::from(q).pow(m);
            let plus = group_order(GroupFamily::OPlus, m, q).unwrap();
            let minus = group_order(GroupFamily::OMinus, m, q).unwrap();
            assert_eq!(&sp % &plus, BigUint::from(0u32));
            assert_eq!(&sp / &plus, &qm * (&qm + 1u32) / 2u32);
            assert_eq!(&sp / &minus, &qm * (&qm - 1u32) / 2u32);
        }
        assert!(group_order(GroupFamily::Sp, 0, 2).is_err());
        assert!(group_order(GroupFamily::Sp, 1, 6).is_err());
    }

    #[test]
    fn orbit_sizes_on_forms() {
        for (q, m, sizes) in [(2, 1, [3, 1]), (2, 2, [10, 6]), (4, 1, [10, 6])] {
            let s = std_space(q, m);
            let g = SymplecticGroup::full(&s, 10_000).unwrap();
            let orbits = g.orbits_on_forms(&[Vector::ZERO]);
            let lens: Vec<usize> = orbits.iter().map(Vec::len).collect();
            assert_eq!(lens, sizes);
            for a in &orbits[0] {
                assert_eq!(type_of_parameter(&s, *a), Sign::Plus);
            }
        }
    }

    #[test]
    fn stabilizers_q2_m2() {
        let s = std_space(2, 2);
        let g = SymplecticGroup::full(&s, 10_000).unwrap();
        let plus = g.stabilizer_of_form(Vector::ZERO).unwrap();
        assert_eq!(plus.order(), 72);
        let mut lens: Vec<usize> = plus.vector_orbits().iter().map(Vec::len).collect();
        lens.sort();
        assert_eq!(lens, vec![6, 9]);

        let ell = s.from_coords(&[1, 0, 1, 0]).unwrap();
        let minus = g.stabilizer_of_form(ell).unwrap();
        assert_eq!(minus.order(), 120);
        let mut lens: Vec<usize> = minus.vector_orbits().iter().map(Vec::len).collect();
        lens.sort();
        assert_eq!(lens, vec![5, 10]);

        // R⁺ is transitive on the six elliptic forms.
        let orbits = plus.orbits_on_forms(&[Vector::ZERO]);
        let elliptic: Vec<Vector> = s
            .vectors()
            .filter(|&a| type_of_parameter(&s, a) == Sign::Minus)
            .collect();
        assert!(orbits.contains(&elliptic));
    }

    #[test]
    fn two_transitivity_on_both_orbits() {
        let s = std_space(2, 2);
        let g = SymplecticGroup::full(&s, 10_000).unwrap();
        let perms = g.form_permutations();
        for orbit in g.orbits_on_forms(&[]) {
            let dom: Vec<u32> = orbit.iter().map(|v| v.0).collect();
            assert!(check_2transitivity(&perms, &dom).unwrap());
        }
        assert!(check_2transitivity(&perms, &[0]).is_err());
        // All 16 parameters: not transitive.
        let all: Vec<u32> = (0..16).collect();
        assert!(!check_2transitivity(&perms, &all).unwrap());
    }

    #[test]
    fn complements() {
        for (q, m, h2) in [(2, 2, vec![10, 6]), (4, 1, vec![10, 6]), (2, 1, vec![3, 1])] {
            let s = std_space(q, m);
            let g = SymplecticGroup::full(&s, 10_000).unwrap();
            let report = verify_complements(&g);
            assert!(report.is_subgroup);
            assert!(report.trivial_translation_intersection);
            assert!(report.orbits_are_trace_fibers);
            assert_eq!(report.h2_orbit_lengths, h2);
            assert_eq!(report.h1_orbit_lengths, vec![1, s.size() - 1]);
        }
    }

    #[test]
    fn affine_composition_is_a_right_action() {
        let s = std_space(4, 1);
        let g = SymplecticGroup::full(&s, 10_000).unwrap();
        let h2 = g.complement_h2();
        for x in h2.iter().step_by(7) {
            for y in h2.iter().step_by(11) {
                let xy = x.then(&s, y);
                for u in s.vectors() {
                    assert_eq!(xy.apply(&s, u), y.apply(&s, x.apply(&s, u)));
                }
            }
        }
        let t = AffineSympMap::translation(&s, Vector(3));
        assert!(t.is_translation(&s));
    }
}
