//! Arithmetic in GF(2^h) for h ≤ 8, polynomial basis.
//!
//! Elements are bit patterns: bit `i` is the coefficient of `ω^i`, where `ω`
//! is a root of the field's modulus. Everything is closed-form bit
//! arithmetic; no log/antilog tables are built.

use std::fmt;

use crate::error::{domain, usage, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u8 = 8;

/// Default irreducible moduli, indexed by degree.
const DEFAULT_MODULI: [u16; 9] = [
    0, 0b11,    // x + 1
    0b111,   // x^2 + x + 1
    0b1011,  // x^3 + x + 1
    0b10011, // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11b,   // x^8 + x^4 + x^3 + x + 1
];

/// A binary field GF(2^h) given by its defining irreducible polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinaryField {
    degree: u8,
    modulus: u16,
}

impl BinaryField {
    /// GF(2^h) with an explicit modulus (bit `i` = coefficient of `x^i`).
    pub fn new(degree: u8, modulus: u16) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(usage(format!(
                "extension degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        if poly_degree(modulus as u32) != Some(degree as u32) {
            return Err(domain(format!(
                "modulus {modulus:#b} does not have degree {degree}"
            )));
        }
        if !is_irreducible(modulus as u32) {
            return Err(domain(format!("modulus {modulus:#b} is reducible")));
        }
        Ok(Self { degree, modulus })
    }

    /// GF(2^h) with the crate's fixed default modulus.
    pub fn with_degree(degree: u8) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(usage(format!(
                "extension degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        Self::new(degree, DEFAULT_MODULI[degree as usize])
    }

    /// GF(q) for q a power of two, default modulus.
    pub fn with_order(q: u32) -> Result<Self> {
        if q < 2 || !q.is_power_of_two() {
            return Err(usage(format!("field order {q} is not a power of two")));
        }
        Self::with_degree(q.trailing_zeros() as u8)
    }

    pub fn gf2() -> Self {
        Self {
            degree: 1,
            modulus: DEFAULT_MODULI[1],
        }
    }

    pub fn gf4() -> Self {
        Self {
            degree: 2,
            modulus: DEFAULT_MODULI[2],
        }
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    /// Number of elements, `2^h`.
    pub fn order(&self) -> u32 {
        1 << self.degree
    }

    /// Bit mask of valid element patterns.
    pub fn mask(&self) -> u8 {
        (self.order() - 1) as u8
    }

    pub fn contains(&self, x: u8) -> bool {
        (x as u32) < self.order()
    }

    /// Every element, in increasing bit-pattern order.
    pub fn values(&self) -> impl Iterator<Item = u8> + Clone {
        (0..self.order()).map(|x| x as u8)
    }

    pub fn element(&self, value: u8) -> Result<FieldElement> {
        if !self.contains(value) {
            return Err(usage(format!(
                "value {value:#b} has bits beyond degree {}",
                self.degree
            )));
        }
        Ok(FieldElement {
            value,
            field: *self,
        })
    }

    #[inline]
    pub fn add(&self, x: u8, y: u8) -> u8 {
        x ^ y
    }

    /// Carry-less product reduced modulo the field polynomial.
    #[inline]
    pub fn mul(&self, x: u8, y: u8) -> u8 {
        if self.degree == 1 {
            return x & y;
        }
        let mut acc: u16 = 0;
        let mut a = x as u16;
        let mut b = y;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
        }
        for bit in (self.degree as u16..2 * self.degree as u16 - 1).rev() {
            if acc & (1 << bit) != 0 {
                acc ^= self.modulus << (bit - self.degree as u16);
            }
        }
        acc as u8
    }

    #[inline]
    pub fn square(&self, x: u8) -> u8 {
        self.mul(x, x)
    }

    pub fn pow(&self, x: u8, mut e: u32) -> u8 {
        let mut base = x;
        let mut acc = 1u8;
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `x^(q-2)`; `None` for zero.
    pub fn inv(&self, x: u8) -> Option<u8> {
        if x == 0 {
            None
        } else {
            Some(self.pow(x, self.order() - 2))
        }
    }

    /// Absolute trace `x + x^2 + ... + x^(2^(h-1))`, always 0 or 1.
    pub fn trace(&self, x: u8) -> u8 {
        let mut acc = x;
        let mut y = x;
        for _ in 1..self.degree {
            y = self.square(y);
            acc ^= y;
        }
        debug_assert!(acc <= 1, "trace left the prime field");
        acc
    }

    /// The unique square root, `x^(2^(h-1))`.
    pub fn sqrt(&self, x: u8) -> u8 {
        let mut y = x;
        for _ in 1..self.degree {
            y = self.square(y);
        }
        y
    }

    /// A root `t` of `t^2 + t + λ`, or `None` when `trace(λ) = 1`.
    ///
    /// Of the two roots `t` and `t + 1` the one with the smaller bit pattern
    /// is returned.
    pub fn solve_artin_schreier(&self, lambda: u8) -> Option<u8> {
        if self.trace(lambda) != 0 {
            return None;
        }
        self.values().find(|&t| self.square(t) ^ t ^ lambda == 0)
    }

    /// Polynomial-basis bit string, least significant coefficient first.
    pub fn render(&self, x: u8) -> String {
        (0..self.degree)
            .map(|i| if x >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for BinaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; {:#b})", self.degree, self.modulus)
    }
}

impl fmt::Display for BinaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

/// The binary arithmetic operations exposed by [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
}

/// An element tied to its field, for callers that want checked arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u8,
    field: BinaryField,
}

impl FieldElement {
    pub fn value(&self) -> u8 {
        self.value
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(usage(format!(
                "mixed fields {:?} and {:?}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            value: self.value ^ other.value,
            field: self.field,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            value: self.field.mul(self.value, other.value),
            field: self.field,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        let value = self
            .field
            .inv(self.value)
            .ok_or_else(|| domain("inversion of zero"))?;
        Ok(Self {
            value,
            field: self.field,
        })
    }

    pub fn trace(&self) -> u8 {
        self.field.trace(self.value)
    }

    pub fn sqrt(&self) -> Self {
        Self {
            value: self.field.sqrt(self.value),
            field: self.field,
        }
    }

    pub fn solve_artin_schreier(&self) -> Option<Self> {
        self.field
            .solve_artin_schreier(self.value)
            .map(|value| Self {
                value,
                field: self.field,
            })
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.render(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.render(self.value))
    }
}

/// Dispatch for the three field operations; `y` is required for add/mul.
pub fn arith(op: ArithOp, x: FieldElement, y: Option<FieldElement>) -> Result<FieldElement> {
    match (op, y) {
        (ArithOp::Add, Some(y)) => x.checked_add(&y),
        (ArithOp::Mul, Some(y)) => x.checked_mul(&y),
        (ArithOp::Inv, None) => x.inverse(),
        (ArithOp::Inv, Some(_)) => Err(usage("inversion takes one operand")),
        (_, None) => Err(usage("binary operation needs two operands")),
    }
}

fn poly_degree(p: u32) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(31 - p.leading_zeros())
    }
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b).expect("nonzero divisor");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Trial division by every polynomial of degree 1..=deg/2.
fn is_irreducible(p: u32) -> bool {
    let Some(d) = poly_degree(p) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    (2u32..(1 << (d / 2 + 1))).all(|divisor| poly_rem(p, divisor) != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const OMEGA: u8 = 0b10;

    fn all_fields() -> Vec<BinaryField> {
        (1..=MAX_DEGREE)
            .map(|h| BinaryField::with_degree(h).unwrap())
            .collect()
    }

    #[test]
    fn gf4_multiplication_follows_modulus() {
        let f = BinaryField::gf4();
        assert_eq!(f.mul(OMEGA, OMEGA), OMEGA ^ 1);
    }

    #[test]
    fn gf4_inverse_of_omega_matches_search() {
        let f = BinaryField::gf4();
        let found: Vec<u8> = f.values().filter(|&y| f.mul(OMEGA, y) == 1).collect();
        assert_eq!(found, vec![0b11]);
        assert_eq!(f.inv(OMEGA), Some(0b11));
    }

    #[test]
    fn inverse_of_zero_is_domain_error() {
        let x = BinaryField::gf4().element(0).unwrap();
        assert!(matches!(
            arith(ArithOp::Inv, x, None),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn mixed_fields_rejected() {
        let x = BinaryField::gf4().element(1).unwrap();
        let y = BinaryField::gf2().element(1).unwrap();
        assert!(matches!(
            arith(ArithOp::Add, x, Some(y)),
            Err(crate::Error::Usage(_))
        ));
    }

    #[test]
    fn traces_in_gf4() {
        let f = BinaryField::gf4();
        assert_eq!(f.trace(0), 0);
        assert_eq!(f.trace(1), 0);
        assert_eq!(f.trace(OMEGA), 1);
        assert_eq!(f.trace(0b11), 1);
    }

    #[test]
    fn sqrt_of_omega_is_omega_squared() {
        let f = BinaryField::gf4();
        assert_eq!(f.sqrt(0), 0);
        assert_eq!(f.sqrt(1), 1);
        let omega_sq = f.square(OMEGA);
        assert_eq!(f.square(omega_sq), OMEGA);
        assert_eq!(f.sqrt(OMEGA), omega_sq);
    }

    #[test]
    fn artin_schreier_examples() {
        assert_eq!(BinaryField::gf4().solve_artin_schreier(0), Some(0));
        assert_eq!(BinaryField::gf4().solve_artin_schreier(1), Some(OMEGA));
        assert_eq!(BinaryField::gf2().solve_artin_schreier(1), None);
    }

    #[test]
    fn rejects_reducible_and_bad_degrees() {
        // x^2 + 1 = (x + 1)^2
        assert!(BinaryField::new(2, 0b101).is_err());
        assert!(BinaryField::new(4, 0b11111).is_ok());
        assert!(BinaryField::new(4, 0b10101).is_err());
        assert!(BinaryField::with_degree(9).is_err());
        assert!(BinaryField::with_order(6).is_err());
    }

    #[test]
    fn field_laws_exhaustive() {
        for f in all_fields() {
            for x in f.values() {
                assert_eq!(f.add(x, x), 0);
                assert_eq!(f.square(f.sqrt(x)), x);
                assert_eq!(f.sqrt(f.square(x)), x);
                assert_eq!(f.trace(f.square(x)), f.trace(x));
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), 1, "{f:?} {x}");
                }
                match f.solve_artin_schreier(x) {
                    Some(t) => {
                        assert_eq!(f.trace(x), 0);
                        assert_eq!(f.square(t) ^ t ^ x, 0);
                    }
                    None => assert_eq!(f.trace(x), 1),
                }
            }
            let zero_trace = f.values().filter(|&x| f.trace(x) == 0).count();
            assert_eq!(zero_trace as u32 * 2, f.order());
        }
    }

    #[test]
    fn mul_distributes_and_commutes() {
        for f in all_fields().into_iter().take(5) {
            for x in f.values() {
                for y in f.values() {
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    assert_eq!(f.trace(x ^ y), f.trace(x) ^ f.trace(y));
                    for z in f.values().step_by(3) {
                        assert_eq!(f.mul(x, y ^ z), f.mul(x, y) ^ f.mul(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn renders_lsb_first() {
        assert_eq!(BinaryField::gf4().render(OMEGA), "01");
        assert_eq!(BinaryField::gf2().render(1), "1");
    }
}
