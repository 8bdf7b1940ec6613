//! The constants `c^i_{mn}` in Q(xi) defined by
//!
//! `sum c^0_{mn} x^m y^n = -1/2 sum_{r=1,2} log(((1+x)^{1/3} - xi^{-r} (1+y)^{1/3}) / (1 - xi^{-r}))`
//!
//! and, for `i != 0`, `sum c^i_{mn} x^m y^n = 1/2 log(((1+x)^{1/3} - xi^{-i} (1+y)^{1/3}) / (1 - xi^{-i}))`.

use crate::arith::CycRational;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::fmt::Write;

/// Largest supported truncation order.
pub const MAX_ORDER: usize = 16;

/// Power series in `x, y` over Q(xi), truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateCycSeries {
    order: usize,
    /// `coeffs[m][n]` for `m + n <= order`.
    coeffs: Vec<Vec<CycRational>>,
}

impl BivariateCycSeries {
    pub fn zero(order: usize) -> Self {
        BivariateCycSeries { order, coeffs: (0..=order).map(|m| vec![CycRational::zero(); order - m + 1]).collect() }
    }

    pub fn constant(order: usize, c: CycRational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0][0] = c;
        s
    }

    /// `f(x)` as a series in `x` alone.
    pub fn in_x(order: usize, f: &[BigRational]) -> Self {
        let mut s = Self::zero(order);
        for (m, c) in f.iter().enumerate().take(order + 1) {
            s.coeffs[m][0] = CycRational::from_rational(c.clone());
        }
        s
    }

    pub fn in_y(order: usize, f: &[BigRational]) -> Self {
        let mut s = Self::zero(order);
        for (n, c) in f.iter().enumerate().take(order + 1) {
            s.coeffs[0][n] = CycRational::from_rational(c.clone());
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `x^m y^n`; `None` beyond the truncation.
    pub fn coeff(&self, m: usize, n: usize) -> Option<&CycRational> {
        self.coeffs.get(m).and_then(|r| r.get(n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &CycRational)> {
        self.coeffs.iter().enumerate().flat_map(|(m, r)| r.iter().enumerate().map(move |(n, c)| (m, n, c)))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (m, n, c) in o.terms() {
            s.coeffs[m][n] = &s.coeffs[m][n] + c;
        }
        s
    }

    pub fn scale(&self, c: &CycRational) -> Self {
        let mut s = self.clone();
        for row in s.coeffs.iter_mut() {
            for v in row.iter_mut() {
                *v = &*v * c;
            }
        }
        s
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut s = Self::zero(self.order);
        for (m1, n1, a) in self.terms().filter(|t| !t.2.is_zero()) {
            for (m2, n2, b) in o.terms().filter(|t| !t.2.is_zero()) {
                if m1 + m2 + n1 + n2 <= self.order {
                    let t = &s.coeffs[m1 + m2][n1 + n2] + &(a * b);
                    s.coeffs[m1 + m2][n1 + n2] = t;
                }
            }
        }
        s
    }

    pub fn conj(&self) -> Self {
        let mut s = self.clone();
        for row in s.coeffs.iter_mut() {
            for v in row.iter_mut() {
                *v = v.conj();
            }
        }
        s
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = Self::zero(order.min(self.order));
        for (m, n, c) in self.terms().filter(|t| t.0 + t.1 <= s.order) {
            s.coeffs[m][n] = c.clone();
        }
        s
    }

    /// `log(1 + u)` for a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0][0] != CycRational::one() {
            return Err(Error::NonInvertibleLeadingTerm);
        }
        let mut u = self.clone();
        u.coeffs[0][0] = CycRational::zero();
        let mut out = Self::zero(self.order);
        let mut power = u.clone();
        for k in 1..=self.order {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = CycRational::from_rational(BigRational::new(sign.into(), (k as i64).into()));
            out = out.add(&power.scale(&c));
            power = power.mul(&u);
        }
        Ok(out)
    }
}

/// Generalized binomial coefficients of `(1 + x)^{1/3}`.
pub fn cube_root_binomial(order: usize) -> Vec<BigRational> {
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let mut out = vec![BigRational::one()];
    for k in 1..=order {
        let prev = out[k - 1].clone();
        let factor = (&third - BigRational::from_integer(BigInt::from(k as i64 - 1))) / BigRational::from_integer(BigInt::from(k as i64));
        out.push(prev * factor);
    }
    out
}

/// `log(((1+x)^{1/3} - xi^{-r} (1+y)^{1/3}) / (1 - xi^{-r}))` for `r = 1, 2`.
fn log_term(r: i64, order: usize) -> Result<BivariateCycSeries> {
    let a = cube_root_binomial(order);
    let w = CycRational::xi_pow(-r);
    let diff = BivariateCycSeries::in_x(order, &a).add(&BivariateCycSeries::in_y(order, &a).scale(&-&w));
    let norm = (&CycRational::one() - &w).inv().ok_or(Error::NonInvertibleLeadingTerm)?;
    diff.scale(&norm).log()
}

pub fn compute_cmn(i: u8, order: usize) -> Result<BivariateCycSeries> {
    if order > MAX_ORDER {
        return Err(Error::CapExceeded { what: "twist coefficient order", needed: order as u128, cap: MAX_ORDER as u128 });
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    match i {
        0 => {
            let s = log_term(1, order)?.add(&log_term(2, order)?);
            Ok(s.scale(&CycRational::from_rational(-half)))
        }
        1 | 2 => Ok(log_term(i as i64, order)?.scale(&CycRational::from_rational(half))),
        _ => Err(Error::Parse(format!("twist index {i} is not in 0..3"))),
    }
}

/// Lines `m n i re im` with `c = re + im xi`.
pub fn coefficient_table(order: usize) -> Result<String> {
    let mut s = String::from("# m n i re im\n");
    let all = (0..3u8).map(|i| compute_cmn(i, order)).collect::<Result<Vec<_>>>()?;
    for (i, c) in all.iter().enumerate() {
        for (m, n, v) in c.terms() {
            let _ = writeln!(s, "{m} {n} {i} {} {}", v.re, v.im);
        }
    }
    Ok(s)
}

/// Outcome of the structural checks at one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub order: usize,
    pub constant_terms_vanish: bool,
    pub conjugate_pair: bool,
    pub c0_real: bool,
    pub c0_symmetric: bool,
}

impl TwistReport {
    pub fn all_pass(&self) -> bool {
        self.constant_terms_vanish && self.conjugate_pair && self.c0_real && self.c0_symmetric
    }
}

pub fn twist_report(order: usize) -> Result<TwistReport> {
    let c: Vec<BivariateCycSeries> = (0..3u8).map(|i| compute_cmn(i, order)).collect::<Result<_>>()?;
    let constant_terms_vanish = c.iter().all(|s| s.coeff(0, 0).is_some_and(|v| v.is_zero()));
    let conjugate_pair = c[1].conj() == c[2];
    let c0_real = c[0].terms().all(|(_, _, v)| v.is_real());
    let c0_symmetric = c[0].terms().all(|(m, n, v)| c[0].coeff(n, m) == Some(v));
    Ok(TwistReport { order, constant_terms_vanish, conjugate_pair, c0_real, c0_symmetric })
}
