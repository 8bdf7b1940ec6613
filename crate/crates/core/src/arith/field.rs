//! The prime field F3 and the four-element field F4 = F2[w]/(w^2 + w + 1).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Small finite field used as a code alphabet.
pub trait FiniteField:
    Copy + Eq + Ord + std::hash::Hash + fmt::Debug + Add<Output = Self> + Mul<Output = Self> + Neg<Output = Self> + Sub<Output = Self>
{
    const ORDER: usize;
    fn zero() -> Self;
    fn one() -> Self;
    /// All field elements, zero first.
    fn elements() -> Vec<Self>;
    fn inv(self) -> Option<Self>;
    fn is_zero(self) -> bool {
        self == Self::zero()
    }
    /// Index in `0..ORDER`, consistent with `elements()`.
    fn index(self) -> usize;
    fn symbol(self) -> char;
    fn from_symbol(c: char) -> Option<Self>;
    /// The Frobenius automorphism `x -> x^p`; the identity on a prime field.
    fn frob(self) -> Self;
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct F3(u8);

impl F3 {
    pub const ZERO: F3 = F3(0);
    pub const ONE: F3 = F3(1);
    pub const TWO: F3 = F3(2);

    pub fn new(v: i64) -> F3 {
        F3(v.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Quadratic character: true for the non-square 2.
    pub fn is_nonsquare(self) -> bool {
        self.0 == 2
    }
}

impl fmt::Debug for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for F3 {
    type Output = F3;
    fn add(self, o: F3) -> F3 {
        let s = self.0 + o.0;
        F3(if s >= 3 { s - 3 } else { s })
    }
}

impl AddAssign for F3 {
    fn add_assign(&mut self, o: F3) {
        *self = *self + o;
    }
}

impl Sub for F3 {
    type Output = F3;
    fn sub(self, o: F3) -> F3 {
        self + (-o)
    }
}

impl Neg for F3 {
    type Output = F3;
    fn neg(self) -> F3 {
        F3((3 - self.0) % 3)
    }
}

impl Mul for F3 {
    type Output = F3;
    fn mul(self, o: F3) -> F3 {
        F3((self.0 * o.0) % 3)
    }
}

impl FiniteField for F3 {
    const ORDER: usize = 3;
    fn zero() -> Self {
        F3(0)
    }
    fn one() -> Self {
        F3(1)
    }
    fn elements() -> Vec<Self> {
        vec![F3(0), F3(1), F3(2)]
    }
    fn inv(self) -> Option<Self> {
        match self.0 {
            0 => None,
            v => Some(F3(v)),
        }
    }
    fn index(self) -> usize {
        self.0 as usize
    }
    fn symbol(self) -> char {
        (b'0' + self.0) as char
    }
    fn from_symbol(c: char) -> Option<Self> {
        match c {
            '0' => Some(F3(0)),
            '1' => Some(F3(1)),
            '2' => Some(F3(2)),
            _ => None,
        }
    }
    fn frob(self) -> Self {
        self
    }
}

/// Element of F4 stored as two bits `b0 + b1*w`; `w^2 = w + 1`.
///
/// Encoding: 0 = 0, 1 = 1, 2 = w, 3 = w + 1 = w^2 (written `W`, the conjugate of `w`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct F4(u8);

impl F4 {
    pub const ZERO: F4 = F4(0);
    pub const ONE: F4 = F4(1);
    pub const W: F4 = F4(2);
    pub const WBAR: F4 = F4(3);

    pub fn from_bits(b0: bool, b1: bool) -> F4 {
        F4(b0 as u8 | (b1 as u8) << 1)
    }

    pub fn bits(self) -> (bool, bool) {
        (self.0 & 1 == 1, self.0 & 2 == 2)
    }

    /// Exponent k with self = w^k, for nonzero elements.
    fn log(self) -> Option<u8> {
        match self.0 {
            1 => Some(0),
            2 => Some(1),
            3 => Some(2),
            _ => None,
        }
    }

    fn exp(k: u8) -> F4 {
        [F4(1), F4(2), F4(3)][(k % 3) as usize]
    }

    /// Frobenius x -> x^2, which is also the Galois conjugation.
    pub fn frobenius(self) -> F4 {
        self * self
    }

    /// Absolute trace to F2: x + x^2.
    pub fn trace(self) -> bool {
        (self + self.frobenius()).0 == 1
    }
}

impl fmt::Debug for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl fmt::Display for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[allow(clippy::suspicious_arithmetic_impl)] // characteristic 2, log tables
impl Add for F4 {
    type Output = F4;
    fn add(self, o: F4) -> F4 {
        F4(self.0 ^ o.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)] // characteristic 2, log tables
impl Sub for F4 {
    type Output = F4;
    fn sub(self, o: F4) -> F4 {
        F4(self.0 ^ o.0)
    }
}

impl Neg for F4 {
    type Output = F4;
    fn neg(self) -> F4 {
        self
    }
}

#[allow(clippy::suspicious_arithmetic_impl)] // characteristic 2, log tables
impl Mul for F4 {
    type Output = F4;
    fn mul(self, o: F4) -> F4 {
        match (self.log(), o.log()) {
            (Some(a), Some(b)) => F4::exp(a + b),
            _ => F4(0),
        }
    }
}

impl FiniteField for F4 {
    const ORDER: usize = 4;
    fn zero() -> Self {
        F4(0)
    }
    fn one() -> Self {
        F4(1)
    }
    fn elements() -> Vec<Self> {
        vec![F4(0), F4(1), F4(2), F4(3)]
    }
    fn inv(self) -> Option<Self> {
        self.log().map(|k| F4::exp(3 - k))
    }
    fn index(self) -> usize {
        self.0 as usize
    }
    fn symbol(self) -> char {
        ['0', '1', 'w', 'W'][self.0 as usize]
    }
    fn from_symbol(c: char) -> Option<Self> {
        match c {
            '0' => Some(F4(0)),
            '1' => Some(F4(1)),
            'w' => Some(F4(2)),
            'W' => Some(F4(3)),
            _ => None,
        }
    }
    fn frob(self) -> Self {
        self.frobenius()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_axioms<F: FiniteField>() {
        let els = F::elements();
        assert_eq!(els.len(), F::ORDER);
        for &a in &els {
            assert_eq!(a + F::zero(), a);
            assert_eq!(a * F::one(), a);
            assert_eq!(a + (-a), F::zero());
            if !a.is_zero() {
                assert_eq!(a * a.inv().unwrap(), F::one());
            }
            for &b in &els {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                for &c in &els {
                    assert_eq!((a + b) + c, a + (b + c));
                    assert_eq!((a * b) * c, a * (b * c));
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
        }
    }

    #[test]
    fn f3_is_a_field() {
        field_axioms::<F3>();
    }

    #[test]
    fn f4_is_a_field() {
        field_axioms::<F4>();
        assert_eq!(F4::W * F4::W, F4::W + F4::ONE);
    }

    #[test]
    fn frobenius_swaps_w_and_wbar() {
        assert_eq!(F4::W.frobenius(), F4::WBAR);
        assert_eq!(F4::WBAR.frobenius(), F4::W);
        assert_eq!(F4::ONE.frobenius(), F4::ONE);
        for a in F4::elements() {
            for b in F4::elements() {
                assert_eq!((a * b).frobenius(), a.frobenius() * b.frobenius());
                assert_eq!((a + b).frobenius(), a.frobenius() + b.frobenius());
            }
        }
    }

    #[test]
    fn symbols_round_trip() {
        for a in F4::elements() {
            assert_eq!(F4::from_symbol(a.symbol()), Some(a));
        }
        for a in F3::elements() {
            assert_eq!(F3::from_symbol(a.symbol()), Some(a));
        }
    }
}
