//! The cyclotomic field Q(xi), xi a primitive cube root of unity.
//!
//! Elements are `re + im*xi` with `xi^2 = -1 - xi`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl CycRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CycRational { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        CycRational { re, im: BigRational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn xi() -> Self {
        CycRational { re: BigRational::zero(), im: BigRational::one() }
    }

    /// `xi^k` for any integer k.
    pub fn xi_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::xi(),
            _ => CycRational::new(-BigRational::one(), -BigRational::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugation, `xi -> xi^2 = -1 - xi`.
    pub fn conj(&self) -> Self {
        CycRational { re: &self.re - &self.im, im: -self.im.clone() }
    }

    /// Field norm `z * conj(z) = re^2 - re*im + im^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re - &self.re * &self.im + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(CycRational { re: c.re / &n, im: c.im / n })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycRational { re: &self.re * r, im: &self.im * r }
    }
}

impl fmt::Debug for CycRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*xi)", self.re, self.im)
    }
}

impl fmt::Display for CycRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'a> Add<&'a CycRational> for &'a CycRational {
    type Output = CycRational;
    fn add(self, o: &CycRational) -> CycRational {
        CycRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a CycRational> for &'a CycRational {
    type Output = CycRational;
    fn sub(self, o: &CycRational) -> CycRational {
        CycRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a CycRational> for &'a CycRational {
    type Output = CycRational;
    fn mul(self, o: &CycRational) -> CycRational {
        // (a + b xi)(c + d xi) = ac + (ad + bc) xi + bd xi^2, xi^2 = -1 - xi
        let ac = &self.re * &o.re;
        let bd = &self.im * &o.im;
        let cross = &self.re * &o.im + &self.im * &o.re;
        CycRational { re: ac - &bd, im: cross - bd }
    }
}

impl Neg for &CycRational {
    type Output = CycRational;
    fn neg(self) -> CycRational {
        CycRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Add for CycRational {
    type Output = CycRational;
    fn add(self, o: CycRational) -> CycRational {
        &self + &o
    }
}

impl Sub for CycRational {
    type Output = CycRational;
    fn sub(self, o: CycRational) -> CycRational {
        &self - &o
    }
}

impl Mul for CycRational {
    type Output = CycRational;
    fn mul(self, o: CycRational) -> CycRational {
        &self * &o
    }
}

impl Neg for CycRational {
    type Output = CycRational;
    fn neg(self) -> CycRational {
        -&self
    }
}
