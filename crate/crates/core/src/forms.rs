//! Coordinate spaces with an alternating form, and the quadratic forms that
//! linearize to it.
//!
//! Vectors are packed into a `u32`: coordinate `i` of a vector over GF(2^h)
//! occupies bits `i*h .. (i+1)*h`. The packing doubles as an array index, so
//! value tables over a whole space are plain `Vec<u8>`s.
//!
//! Over GF(4) the packing makes the GF(2)-coordinates of the trace lift
//! coincide bit for bit with the GF(4) packing (basis `(1, ω)`, coordinates
//! interleaved), which is what lets the two graphs of the switching theorem
//! share vertex labels.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Error, Result};
use crate::field::{BinaryField, FieldElement};
use crate::matrix::Matrix;

/// Widest packed vector supported (2^24 points).
pub const MAX_PACKED_BITS: u32 = 24;

/// Packed coordinate vector. Addition is coordinatewise, i.e. XOR.
#[derive(
    Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
pub struct Vector(pub u32);

impl Vector {
    pub const ZERO: Vector = Vector(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Add for Vector {
    type Output = Vector;

    // Characteristic two: addition is XOR of packed coordinates.
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Vector) -> Vector {
        Vector(self.0 ^ rhs.0)
    }
}

impl AddAssign for Vector {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Vector) {
        self.0 ^= rhs.0;
    }
}

/// The two types of a nondegenerate even-dimensional quadratic form, also
/// used as the sign of the graph families built from them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    /// Hyperbolic, type +1.
    Plus,
    /// Elliptic, type -1.
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self.opposite()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(usage(format!("unknown sign {other:?}"))),
        }
    }
}

/// `GF(2^h)^{2m}` with a nondegenerate alternating Gram matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct BilinearSpace {
    field: BinaryField,
    dim: usize,
    gram: Matrix,
    /// Packed rows of the Gram matrix, used by the GF(2) fast path.
    gram_rows: Vec<Vector>,
    standard: bool,
}

impl BilinearSpace {
    /// The standard space with Gram matrix `F`.
    pub fn standard(field: BinaryField, m: usize) -> Result<Self> {
        Self::new(Matrix::standard_symplectic(field, m))
    }

    pub fn new(gram: Matrix) -> Result<Self> {
        let field = gram.field();
        let dim = gram.rows();
        if !gram.is_square() || dim == 0 || !dim.is_multiple_of(2) {
            return Err(usage(format!(
                "Gram matrix must be square of positive even size, got {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        let bits = field.degree() as u32 * dim as u32;
        if bits > MAX_PACKED_BITS {
            return Err(usage(format!(
                "space needs {bits} packed bits, limit is {MAX_PACKED_BITS}"
            )));
        }
        if !gram.is_alternating() {
            return Err(domain("Gram matrix is not alternating"));
        }
        if !gram.is_invertible() {
            return Err(domain("Gram matrix is singular"));
        }
        let standard = gram == Matrix::standard_symplectic(field, dim / 2);
        let h = field.degree() as u32;
        let gram_rows = (0..dim)
            .map(|i| {
                Vector((0..dim).fold(0u32, |acc, j| {
                    acc | (gram.get(i, j) as u32) << (j as u32 * h)
                }))
            })
            .collect();
        Ok(Self {
            field,
            dim,
            gram,
            gram_rows,
            standard,
        })
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    /// Dimension `2m`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Half the dimension, `m`.
    pub fn m(&self) -> usize {
        self.dim / 2
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    /// Number of vectors, `q^{2m}`.
    pub fn size(&self) -> usize {
        1usize << (self.field.degree() as usize * self.dim)
    }

    pub fn vectors(&self) -> impl Iterator<Item = Vector> + Clone {
        (0..self.size() as u32).map(Vector)
    }

    pub fn contains(&self, v: Vector) -> bool {
        (v.0 as usize) < self.size()
    }

    pub fn check(&self, v: Vector) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(usage(format!(
                "vector {:#x} does not fit dimension {} over {}",
                v.0, self.dim, self.field
            )))
        }
    }

    #[inline]
    pub fn coord(&self, v: Vector, i: usize) -> u8 {
        let h = self.field.degree() as u32;
        ((v.0 >> (i as u32 * h)) & self.field.mask() as u32) as u8
    }

    pub fn coords(&self, v: Vector) -> Vec<u8> {
        (0..self.dim).map(|i| self.coord(v, i)).collect()
    }

    pub fn from_coords(&self, coords: &[u8]) -> Result<Vector> {
        if coords.len() != self.dim {
            return Err(usage(format!(
                "expected {} coordinates, got {}",
                self.dim,
                coords.len()
            )));
        }
        let h = self.field.degree() as u32;
        let mut packed = 0u32;
        for (i, &c) in coords.iter().enumerate() {
            if !self.field.contains(c) {
                return Err(usage(format!("coordinate {c:#b} not in {}", self.field)));
            }
            packed |= (c as u32) << (i as u32 * h);
        }
        Ok(Vector(packed))
    }

    /// The `i`-th standard basis vector.
    pub fn basis(&self, i: usize) -> Vector {
        Vector(1 << (i as u32 * self.field.degree() as u32))
    }

    /// Scalar multiple `c·v`.
    pub fn scale(&self, c: u8, v: Vector) -> Vector {
        match c {
            0 => Vector::ZERO,
            1 => v,
            _ => {
                let h = self.field.degree() as u32;
                let mut out = 0u32;
                for i in 0..self.dim {
                    let x = self.field.mul(c, self.coord(v, i));
                    out |= (x as u32) << (i as u32 * h);
                }
                Vector(out)
            }
        }
    }

    /// `u · gram · vᵀ` without dimension checks.
    #[inline]
    pub fn pair(&self, u: Vector, v: Vector) -> u8 {
        let f = self.field;
        if f.degree() == 1 {
            if self.standard {
                let m = self.dim as u32 / 2;
                let low = (1u32 << m) - 1;
                let x = (u.0 & low) & (v.0 >> m) ^ (u.0 >> m) & (v.0 & low);
                return (x.count_ones() & 1) as u8;
            }
            let mut acc = 0u32;
            let mut bits = u.0;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                acc ^= self.gram_rows[i].0;
                bits &= bits - 1;
            }
            return ((acc & v.0).count_ones() & 1) as u8;
        }
        if self.standard {
            let m = self.dim / 2;
            let mut acc = 0u8;
            for i in 0..m {
                acc ^= f.mul(self.coord(u, i), self.coord(v, i + m));
                acc ^= f.mul(self.coord(u, i + m), self.coord(v, i));
            }
            return acc;
        }
        let mut acc = 0u8;
        for i in 0..self.dim {
            let ui = self.coord(u, i);
            if ui == 0 {
                continue;
            }
            for j in 0..self.dim {
                let g = self.gram.get(i, j);
                if g != 0 {
                    acc ^= f.mul(ui, f.mul(g, self.coord(v, j)));
                }
            }
        }
        acc
    }

    /// The symplectic pairing `⟨u, v⟩ = u·gram·vᵀ`.
    pub fn symp(&self, u: Vector, v: Vector) -> Result<FieldElement> {
        self.check(u)?;
        self.check(v)?;
        self.field.element(self.pair(u, v))
    }

    /// `ϑ_0(u) = u E uᵀ = Σ u_i u_{i+m}`; meaningful on the standard space.
    #[inline]
    pub fn theta0(&self, u: Vector) -> u8 {
        let f = self.field;
        let m = self.dim / 2;
        if f.degree() == 1 {
            let low = (1u32 << m) - 1;
            return (((u.0 & low) & (u.0 >> m)).count_ones() & 1) as u8;
        }
        (0..m).fold(0, |acc, i| {
            acc ^ f.mul(self.coord(u, i), self.coord(u, i + m))
        })
    }

    /// `ϑ_a(u) = ϑ_0(u) + ⟨a,u⟩²` on the standard space.
    #[inline]
    pub fn theta(&self, a: Vector, u: Vector) -> u8 {
        self.theta0(u) ^ self.field.square(self.pair(a, u))
    }

    /// Coordinate tuple of field-element bit strings, e.g. `(01,10)`.
    pub fn render(&self, v: Vector) -> String {
        let parts: Vec<String> = (0..self.dim)
            .map(|i| self.field.render(self.coord(v, i)))
            .collect();
        format!("({})", parts.join(","))
    }

    fn require_standard(&self, what: &str) -> Result<()> {
        if self.standard {
            Ok(())
        } else {
            Err(usage(format!("{what} needs the standard space")))
        }
    }
}

impl fmt::Debug for BilinearSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BilinearSpace({}^{}{})",
            self.field,
            self.dim,
            if self.standard { ", standard" } else { "" }
        )
    }
}

/// A quadratic form linearizing to its space's alternating form.
///
/// Held as an upper-triangular coefficient matrix `M` with `Θ(u) = u M uᵀ`,
/// plus the canonical parameter `a` when the space is standard and `Θ = ϑ_a`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    space: BilinearSpace,
    coeff: Matrix,
    /// Packed rows of `coeff`, used by the GF(2) fast path.
    coeff_rows: Vec<Vector>,
    param: Option<Vector>,
}

impl QuadraticForm {
    /// `ϑ_a` on the standard space.
    pub fn theta(space: &BilinearSpace, a: Vector) -> Result<Self> {
        space.require_standard("ϑ_a")?;
        space.check(a)?;
        let f = space.field();
        let m = space.m();
        let mut coeff = Matrix::zero(f, space.dim(), space.dim());
        for i in 0..m {
            coeff.set(i, i + m, 1);
        }
        // ⟨a,u⟩² = Σ_j c_j² u_j² with c = aF.
        for j in 0..space.dim() {
            let c = space.pair(a, space.basis(j));
            coeff.set(j, j, f.square(c));
        }
        let mut form = Self::from_coefficients(space, coeff)?;
        form.param = Some(a);
        Ok(form)
    }

    pub fn theta0(space: &BilinearSpace) -> Result<Self> {
        Self::theta(space, Vector::ZERO)
    }

    /// General form from an upper-triangular coefficient matrix, which must
    /// linearize to the space's Gram matrix.
    pub fn from_coefficients(space: &BilinearSpace, coeff: Matrix) -> Result<Self> {
        if coeff.field() != space.field() || coeff.rows() != space.dim() || !coeff.is_square() {
            return Err(usage("coefficient matrix does not match the space"));
        }
        if !coeff.is_upper_triangular() {
            return Err(usage("coefficient matrix must be upper triangular"));
        }
        for i in 0..space.dim() {
            for j in i + 1..space.dim() {
                if coeff.get(i, j) != space.gram().get(i, j) {
                    return Err(domain(
                        "form does not linearize to the space's alternating form",
                    ));
                }
            }
        }
        let h = space.field().degree() as u32;
        let coeff_rows = (0..space.dim())
            .map(|i| {
                Vector((0..space.dim()).fold(0u32, |acc, j| {
                    acc | (coeff.get(i, j) as u32) << (j as u32 * h)
                }))
            })
            .collect();
        Ok(Self {
            space: space.clone(),
            coeff,
            coeff_rows,
            param: None,
        })
    }

    /// Builds the form and its space together; the polar matrix
    /// `M + Mᵀ` (off-diagonal) becomes the Gram matrix. A singular polar
    /// matrix means the form is degenerate.
    pub fn from_polar_coefficients(coeff: Matrix) -> Result<Self> {
        if !coeff.is_square() || !coeff.is_upper_triangular() {
            return Err(usage("coefficient matrix must be square upper triangular"));
        }
        let n = coeff.rows();
        let mut gram = Matrix::zero(coeff.field(), n, n);
        for i in 0..n {
            for j in i + 1..n {
                gram.set(i, j, coeff.get(i, j));
                gram.set(j, i, coeff.get(i, j));
            }
        }
        let space = BilinearSpace::new(gram).map_err(|e| match e {
            Error::Domain(_) => domain("degenerate quadratic form: polar form is singular"),
            other => other,
        })?;
        let mut form = Self::from_coefficients(&space, coeff)?;
        if space.is_standard() {
            form.param = identify_form_parameter(&space, &form.value_table()).ok();
        }
        Ok(form)
    }

    pub fn space(&self) -> &BilinearSpace {
        &self.space
    }

    pub fn field(&self) -> BinaryField {
        self.space.field()
    }

    pub fn coefficients(&self) -> &Matrix {
        &self.coeff
    }

    /// The `a` with `Θ = ϑ_a`, when known.
    pub fn param(&self) -> Option<Vector> {
        self.param
    }

    /// `Θ(u)` without dimension checks.
    #[inline]
    pub fn eval(&self, u: Vector) -> u8 {
        if let Some(a) = self.param {
            return self.space.theta(a, u);
        }
        let f = self.space.field();
        if f.degree() == 1 {
            let mut parity = 0u32;
            let mut bits = u.0;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                parity ^= (self.coeff_rows[i].0 & u.0).count_ones();
                bits &= bits - 1;
            }
            return (parity & 1) as u8;
        }
        let n = self.space.dim();
        let mut acc = 0u8;
        for i in 0..n {
            let ui = self.space.coord(u, i);
            if ui == 0 {
                continue;
            }
            let mut row = 0u8;
            for j in i..n {
                let c = self.coeff.get(i, j);
                if c != 0 {
                    row ^= f.mul(c, self.space.coord(u, j));
                }
            }
            acc ^= f.mul(ui, row);
        }
        acc
    }

    /// Checked evaluation, `eval_form`.
    pub fn evaluate(&self, u: Vector) -> Result<FieldElement> {
        self.space.check(u)?;
        self.field().element(self.eval(u))
    }

    /// `Θ(u)` for every packed `u`, indexed by the packed value.
    pub fn value_table(&self) -> Vec<u8> {
        self.space.vectors().map(|u| self.eval(u)).collect()
    }

    /// Number of `u` with `Θ(u) = 0`, by enumeration.
    pub fn zero_count(&self) -> u64 {
        self.space.vectors().filter(|&u| self.eval(u) == 0).count() as u64
    }

    /// Hyperbolic or elliptic. For `ϑ_a` this is the trace criterion on
    /// `ϑ_0(a)`; otherwise it is read off the zero count.
    pub fn form_type(&self) -> Result<Sign> {
        match self.param {
            Some(a) => Ok(type_of_parameter(&self.space, a)),
            None => self.form_type_by_count(),
        }
    }

    /// Type from `|Θ^{-1}(0)| = q^{2m-1} ± q^{m-1}(q-1)`.
    pub fn form_type_by_count(&self) -> Result<Sign> {
        let q = self.field().order() as u64;
        let m = self.space.m() as u32;
        let base = q.pow(2 * m - 1);
        let delta = q.pow(m - 1) * (q - 1);
        let zeros = self.zero_count();
        if zeros == base + delta {
            Ok(Sign::Plus)
        } else if zeros == base - delta {
            Ok(Sign::Minus)
        } else {
            Err(domain(format!(
                "zero count {zeros} fits neither type; form is degenerate"
            )))
        }
    }

    /// `Θ + ⟨d,·⟩²`, which still linearizes to the same alternating form.
    /// On the standard space this sends `ϑ_a` to `ϑ_{a+d}`.
    pub fn shifted(&self, d: Vector) -> Result<Self> {
        self.space.check(d)?;
        if let Some(a) = self.param {
            return Self::theta(&self.space, a + d);
        }
        let f = self.field();
        let mut coeff = self.coeff.clone();
        for j in 0..self.space.dim() {
            let c = f.square(self.space.pair(d, self.space.basis(j)));
            coeff.set(j, j, coeff.get(j, j) ^ c);
        }
        Self::from_coefficients(&self.space, coeff)
    }

    /// `Θ*(u) = Tr(Θ(u))` on the same points viewed over GF(2).
    ///
    /// Lifted basis vector `k·h + b` is `ω^b e_k`; with the packed encoding
    /// this means a lifted vector and its original have the same bits.
    pub fn trace_lift(&self) -> Result<QuadraticForm> {
        let f = self.field();
        let n = self.space.dim() * f.degree() as usize;
        let gf2 = BinaryField::gf2();
        let basis = |i: usize| Vector(1 << i);
        let mut coeff = Matrix::zero(gf2, n, n);
        for i in 0..n {
            coeff.set(i, i, f.trace(self.eval(basis(i))));
            for j in i + 1..n {
                coeff.set(i, j, f.trace(self.space.pair(basis(i), basis(j))));
            }
        }
        Self::from_polar_coefficients(coeff)
    }

    /// Change of basis to the standard space: returns `B` with
    /// `B·gram·Bᵀ = F` and the standard form `ϑ_a` with `ϑ_a(x) = Θ(xB)`.
    pub fn to_standard(&self) -> Result<(Matrix, QuadraticForm)> {
        let b = symplectic_basis(self.space.gram())?;
        let standard = BilinearSpace::standard(self.field(), self.space.m())?;
        let rows: Vec<Vector> = (0..b.rows())
            .map(|i| self.space.from_coords(b.row(i)))
            .collect::<Result<_>>()?;
        let table: Vec<u8> = standard
            .vectors()
            .map(|x| self.eval(combine(&self.space, &standard, x, &rows)))
            .collect();
        let a = identify_form_parameter(&standard, &table)?;
        Ok((b, QuadraticForm::theta(&standard, a)?))
    }

    pub fn describe(&self) -> String {
        match self.param {
            Some(a) => format!(
                "ϑ_a on standard {}^{}, a = {}",
                self.field(),
                self.space.dim(),
                self.space.render(a)
            ),
            None => format!("{:?}", self.coeff),
        }
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticForm({:?}, {})", self.space, self.describe())
    }
}

/// `Σ x_i rows[i]` where `x` lives in `coords_space` and rows in `target`.
fn combine(
    target: &BilinearSpace,
    coords_space: &BilinearSpace,
    x: Vector,
    rows: &[Vector],
) -> Vector {
    let mut acc = Vector::ZERO;
    for (i, &row) in rows.iter().enumerate() {
        let c = coords_space.coord(x, i);
        if c != 0 {
            acc += target.scale(c, row);
        }
    }
    acc
}

/// Type of `ϑ_a`: hyperbolic iff `Tr(ϑ_0(a)) = 0`.
pub fn type_of_parameter(space: &BilinearSpace, a: Vector) -> Sign {
    if space.field().trace(space.theta0(a)) == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Recovers `a` from the value table of `Θ = ϑ_a` on the standard space.
///
/// `⟨a, e_i⟩ = sqrt(Θ(e_i) + ϑ_0(e_i))` pins down `a` on a basis; the whole
/// table is then compared against `ϑ_a`.
pub fn identify_form_parameter(space: &BilinearSpace, values: &[u8]) -> Result<Vector> {
    space.require_standard("identify_form_parameter")?;
    if values.len() != space.size() {
        return Err(usage(format!(
            "value table has {} entries, space has {} points",
            values.len(),
            space.size()
        )));
    }
    let f = space.field();
    let m = space.m();
    let mut coords = vec![0u8; space.dim()];
    for i in 0..space.dim() {
        let e = space.basis(i);
        let pairing = f.sqrt(values[e.index()] ^ space.theta0(e));
        // ⟨a, e_i⟩ = a_{i+m} for i < m and a_{i-m} otherwise.
        let target = if i < m { i + m } else { i - m };
        coords[target] = pairing;
    }
    let a = space.from_coords(&coords)?;
    for u in space.vectors() {
        if space.theta(a, u) != values[u.index()] {
            return Err(domain(format!(
                "value table is not a form linearizing to ⟨,⟩ (mismatch at {})",
                space.render(u)
            )));
        }
    }
    Ok(a)
}

/// Tangency of the quadrics of `ϑ_a` and `ϑ_b`: `ϑ_a(a+b) = 0`.
pub fn forms_tangent(space: &BilinearSpace, a: Vector, b: Vector) -> Result<bool> {
    space.require_standard("forms_tangent")?;
    space.check(a)?;
    space.check(b)?;
    if a == b {
        return Err(usage("tangency needs two distinct forms"));
    }
    Ok(space.theta(a, a + b) == 0)
}

/// Symplectic Gram–Schmidt: `B` with `B·gram·Bᵀ = F`.
///
/// Pivots are taken by lowest index among the remaining vectors, so the
/// output is deterministic and the standard space yields the identity.
pub fn symplectic_basis(gram: &Matrix) -> Result<Matrix> {
    let f = gram.field();
    let n = gram.rows();
    if !gram.is_alternating() || !n.is_multiple_of(2) {
        return Err(domain("Gram matrix must be alternating of even size"));
    }
    let pair = |u: &[u8], v: &[u8]| -> u8 {
        let mut acc = 0u8;
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc ^= f.mul(u[i], f.mul(gram.get(i, j), v[j]));
            }
        }
        acc
    };
    let axpy = |c: u8, x: &[u8], y: &mut [u8]| {
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi ^= f.mul(c, xi);
        }
    };
    let mut remaining: Vec<Vec<u8>> = (0..n)
        .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
        .collect();
    let mut es = Vec::with_capacity(n / 2);
    let mut fs = Vec::with_capacity(n / 2);
    while !remaining.is_empty() {
        let e = remaining.remove(0);
        let Some(j) = remaining.iter().position(|v| pair(&e, v) != 0) else {
            return Err(domain("Gram matrix is singular"));
        };
        let mut partner = remaining.remove(j);
        let c = f.inv(pair(&e, &partner)).expect("nonzero pairing");
        partner.iter_mut().for_each(|x| *x = f.mul(c, *x));
        for v in remaining.iter_mut() {
            let along_e = pair(v, &partner);
            let along_f = pair(v, &e);
            axpy(along_e, &e, v);
            axpy(along_f, &partner, v);
        }
        es.push(e);
        fs.push(partner);
    }
    es.extend(fs);
    Matrix::from_rows(f, &es)
}
