//! Truncated Laurent series in `q` with exact rational coefficients and
//! fractional exponents.
//!
//! A series carries a denominator bound `D`: every stored exponent `e` has
//! `e * D` integral. Exponents are stored scaled by `D`. The truncation order
//! `T` is exact and inclusive: coefficients at exponents `<= T` are known,
//! everything above `T` is unrepresented.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Denominator bound used by every character in the toolkit.
pub const DEFAULT_DENOM: i64 = 72;
/// Default truncation order for run-level computations.
pub const DEFAULT_TRUNC: i64 = 10;

#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    denom: i64,
    terms: BTreeMap<i64, BigRational>,
    trunc: Rational64,
}

/// Binary and unary operations accepted by [`series_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    PowInt(i64),
    Substitute(Rational64),
}

/// Dispatches one of the supported operations; `b` is ignored by the unary ones.
pub fn series_arithmetic(a: &QSeries, b: &QSeries, op: SeriesOp) -> Result<QSeries> {
    match op {
        SeriesOp::Add => Ok(a.add(b)),
        SeriesOp::Mul => Ok(a.mul(b)),
        SeriesOp::PowInt(n) => a.pow_int(n),
        SeriesOp::Substitute(k) => a.substitute(k),
    }
}

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

impl QSeries {
    pub fn zero(denom: i64, trunc: Rational64) -> Self {
        assert!(denom > 0, "denominator bound must be positive");
        QSeries { denom, terms: BTreeMap::new(), trunc }
    }

    pub fn one(denom: i64, trunc: Rational64) -> Self {
        Self::monomial(BigRational::one(), Rational64::zero(), denom, trunc).expect("0 fits every bound")
    }

    pub fn monomial(coef: BigRational, exp: Rational64, denom: i64, trunc: Rational64) -> Result<Self> {
        let mut s = Self::zero(denom, trunc);
        s.insert(exp, coef)?;
        Ok(s)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(denom: i64, trunc: Rational64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational64, BigRational)>,
    {
        let mut s = Self::zero(denom, trunc);
        for (e, c) in terms {
            s.insert(e, c)?;
        }
        Ok(s)
    }

    /// Integer-exponent series `sum c_n q^n` from a coefficient slice starting at `q^start`.
    pub fn from_int_coeffs(start: i64, coeffs: &[i64], denom: i64, trunc: Rational64) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (Rational64::from_integer(start + i as i64), BigRational::from_integer(c.into())));
        Self::from_terms(denom, trunc, terms).expect("integer exponents fit every bound")
    }

    fn scale_exp(&self, e: Rational64) -> Result<i64> {
        let scaled = e * self.denom;
        if !scaled.is_integer() {
            return Err(Error::DenominatorOverflow { exponent: e.to_string(), bound: self.denom });
        }
        Ok(scaled.to_integer())
    }

    fn insert(&mut self, e: Rational64, c: BigRational) -> Result<()> {
        let key = self.scale_exp(e)?;
        if e > self.trunc || c.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn denom_bound(&self) -> i64 {
        self.denom
    }

    pub fn trunc_order(&self) -> Rational64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Rational64) -> BigRational {
        match self.scale_exp(e) {
            Ok(k) => self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero),
            Err(_) => BigRational::zero(),
        }
    }

    /// Coefficient at an integer exponent.
    pub fn coeff_int(&self, n: i64) -> BigRational {
        self.coeff(Rational64::from_integer(n))
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational64, &BigRational)> + '_ {
        let d = self.denom;
        self.terms.iter().map(move |(&k, c)| (rat(k, d), c))
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<Rational64> {
        self.terms.keys().next().map(|&k| rat(k, self.denom))
    }

    fn valuation_or_trunc(&self) -> Rational64 {
        self.valuation().unwrap_or(self.trunc)
    }

    /// Re-expresses the series with a denominator bound that is a multiple of the current one.
    pub fn with_denom(&self, denom: i64) -> Result<Self> {
        if denom % self.denom != 0 {
            return Err(Error::DenominatorOverflow { exponent: format!("1/{}", self.denom), bound: denom });
        }
        let f = denom / self.denom;
        Ok(QSeries {
            denom,
            terms: self.terms.iter().map(|(&k, c)| (k * f, c.clone())).collect(),
            trunc: self.trunc,
        })
    }

    fn unify(a: &QSeries, b: &QSeries) -> (QSeries, QSeries) {
        if a.denom == b.denom {
            return (a.clone(), b.clone());
        }
        let d = a.denom.lcm(&b.denom);
        (a.with_denom(d).expect("lcm is a multiple"), b.with_denom(d).expect("lcm is a multiple"))
    }

    /// Drops every term above `t`; `t` may not exceed the current order.
    pub fn truncate(&self, t: Rational64) -> Self {
        let t = t.min(self.trunc);
        let mut out = self.clone();
        out.trunc = t;
        out.terms.retain(|&k, _| rat(k, out.denom) <= t);
        out
    }

    pub fn add(&self, o: &QSeries) -> QSeries {
        let (a, b) = Self::unify(self, o);
        let trunc = a.trunc.min(b.trunc);
        let mut out = QSeries::zero(a.denom, trunc);
        for (k, c) in a.terms.iter().chain(b.terms.iter()) {
            if rat(*k, a.denom) <= trunc {
                let e = out.terms.entry(*k).or_insert_with(BigRational::zero);
                *e += c;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn neg(&self) -> QSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, o: &QSeries) -> QSeries {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &BigRational) -> QSeries {
        let mut out = self.clone();
        if r.is_zero() {
            out.terms.clear();
            return out;
        }
        for c in out.terms.values_mut() {
            *c = &*c * r;
        }
        out
    }

    pub fn scale_int(&self, r: i64) -> QSeries {
        self.scale(&BigRational::from_integer(r.into()))
    }

    /// Multiplication by the exact monomial `q^e`.
    pub fn shift(&self, e: Rational64) -> Result<QSeries> {
        let k = self.scale_exp(e)?;
        Ok(QSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(&j, c)| (j + k, c.clone())).collect(),
            trunc: self.trunc + e,
        })
    }

    /// Product; the result is known up to `min(Ta + vb, Tb + va)` where `v` is the lowest exponent.
    pub fn mul(&self, o: &QSeries) -> QSeries {
        let (a, b) = Self::unify(self, o);
        let trunc = (a.trunc + b.valuation_or_trunc()).min(b.trunc + a.valuation_or_trunc());
        let limit = (trunc * a.denom).floor().to_integer();
        let mut acc: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&ka, ca) in &a.terms {
            for (&kb, cb) in &b.terms {
                let k = ka + kb;
                if k > limit {
                    break;
                }
                *acc.entry(k).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        QSeries { denom: a.denom, terms: acc, trunc }
    }

    /// Multiplicative inverse. The lowest coefficient must be nonzero.
    pub fn inverse(&self) -> Result<QSeries> {
        let v = self.valuation().ok_or(Error::NonInvertibleLeadingTerm)?;
        let vk = self.scale_exp(v)?;
        let lead = self.terms[&vk].clone();
        let lead_inv = lead.recip();
        // u = a / (lead q^v) = 1 + higher terms, known up to T - v
        let span = ((self.trunc - v) * self.denom).floor().to_integer();
        let u: Vec<(i64, BigRational)> =
            self.terms.iter().filter(|(&k, _)| k > vk).map(|(&k, c)| (k - vk, c * &lead_inv)).collect();
        let mut inv: BTreeMap<i64, BigRational> = BTreeMap::new();
        inv.insert(0, BigRational::one());
        let mut dense: Vec<BigRational> = vec![BigRational::zero(); (span.max(0) + 1) as usize];
        dense[0] = BigRational::one();
        for n in 1..=span.max(0) {
            let mut s = BigRational::zero();
            for (k, c) in &u {
                if *k > n {
                    break;
                }
                let prev = &dense[(n - k) as usize];
                if !prev.is_zero() {
                    s -= c * prev;
                }
            }
            dense[n as usize] = s;
        }
        let trunc = self.trunc - v - v;
        let mut out = QSeries::zero(self.denom, trunc);
        for (n, c) in dense.into_iter().enumerate() {
            if !c.is_zero() {
                let k = n as i64 - vk;
                if rat(k, self.denom) <= trunc {
                    out.terms.insert(k, c * &lead_inv);
                }
            }
        }
        Ok(out)
    }

    /// Integer power; negative powers go through [`QSeries::inverse`].
    pub fn pow_int(&self, n: i64) -> Result<QSeries> {
        if n == 0 {
            return Ok(QSeries::one(self.denom, self.trunc));
        }
        let (mut base, mut e) = if n < 0 { (self.inverse()?, n.unsigned_abs()) } else { (self.clone(), n as u64) };
        let mut acc: Option<QSeries> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.expect("n != 0"))
    }

    /// The substitution `q -> q^k` for a positive rational `k`.
    pub fn substitute(&self, k: Rational64) -> Result<QSeries> {
        assert!(k > Rational64::zero(), "substitution exponent must be positive");
        let mut out = QSeries::zero(self.denom, self.trunc * k);
        for (&j, c) in &self.terms {
            let e = rat(j, self.denom) * k;
            let key = out.scale_exp(e)?;
            out.terms.insert(key, c.clone());
        }
        Ok(out)
    }

    /// Sub-series of terms with integral exponent; the result has denominator bound 1.
    pub fn integer_exponent_part(&self) -> QSeries {
        let d = self.denom;
        QSeries {
            denom: 1,
            terms: self.terms.iter().filter(|(&k, _)| k % d == 0).map(|(&k, c)| (k / d, c.clone())).collect(),
            trunc: self.trunc,
        }
    }

    /// True when every coefficient is a non-negative integer.
    pub fn first_non_natural(&self) -> Option<Rational64> {
        self.terms().find(|(_, c)| !c.is_integer() || c.is_negative()).map(|(e, _)| e)
    }

    /// Canonical text form: a header followed by one `exponent coefficient` line per term.
    pub fn to_canonical_text(&self) -> String {
        let mut s = format!("qseries v1\ndenom {}\ntrunc {}\n", self.denom, fmt_rat64(self.trunc));
        for (e, c) in self.terms() {
            s.push_str(&format!("{} {}/{}\n", fmt_rat64(e), c.numer(), c.denom()));
        }
        s
    }

    pub fn from_canonical_text(text: &str) -> Result<QSeries> {
        let mut lines = text.lines();
        let bad = |m: &str| Error::Parse(format!("qseries: {m}"));
        if lines.next() != Some("qseries v1") {
            return Err(bad("missing header"));
        }
        let denom: i64 = lines
            .next()
            .and_then(|l| l.strip_prefix("denom "))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad("denom"))?;
        let trunc = lines
            .next()
            .and_then(|l| l.strip_prefix("trunc "))
            .and_then(parse_rat64)
            .ok_or_else(|| bad("trunc"))?;
        if denom <= 0 {
            return Err(bad("denom must be positive"));
        }
        let mut out = QSeries::zero(denom, trunc);
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let mut it = line.split_whitespace();
            let e = it.next().and_then(parse_rat64).ok_or_else(|| bad(line))?;
            let c = it.next().and_then(parse_big_rat).ok_or_else(|| bad(line))?;
            out.insert(e, c)?;
        }
        Ok(out)
    }
}

fn fmt_rat64(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rat64(s: &str) -> Option<Rational64> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let d: i64 = d.parse().ok()?;
    if d == 0 {
        return None;
    }
    Some(Rational64::new(n.parse().ok()?, d))
}

fn parse_big_rat(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n.parse().ok()?, d))
}

/// Converts an integral rational to `i128`, if it is one and fits.
pub fn rational_to_i128(r: &BigRational) -> Option<i128> {
    if r.is_integer() {
        r.to_integer().to_i128()
    } else {
        None
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})q^{e}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^>{})", self.trunc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn big(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn geometric_series_from_negative_power() {
        let one_minus_q = QSeries::from_int_coeffs(0, &[1, -1], 1, r(3));
        let g = series_arithmetic(&one_minus_q, &one_minus_q, SeriesOp::PowInt(-1)).unwrap();
        assert_eq!(g, QSeries::from_int_coeffs(0, &[1, 1, 1, 1], 1, r(3)));
        assert_eq!(g.trunc_order(), r(3));
    }

    #[test]
    fn substitute_scales_exponents() {
        let s = QSeries::from_int_coeffs(0, &[1, 1], DEFAULT_DENOM, r(10));
        let t = s.substitute(r(3)).unwrap();
        assert_eq!(t.coeff_int(3), big(1));
        assert_eq!(t.coeff_int(1), big(0));
        assert_eq!(t.coeff_int(0), big(1));
        assert_eq!(t.trunc_order(), r(30));
    }

    #[test]
    fn multiplication_by_one_is_identity() {
        let a = QSeries::from_terms(DEFAULT_DENOM, r(1), vec![(r(-1), big(1)), (r(1), big(196884))]).unwrap();
        let one = QSeries::one(DEFAULT_DENOM, r(DEFAULT_TRUNC));
        let p = series_arithmetic(&a, &one, SeriesOp::Mul).unwrap();
        assert_eq!(p, a);
    }

    #[test]
    fn mul_truncation_accounts_for_negative_valuation() {
        let a = QSeries::from_int_coeffs(-1, &[1, 0, 5], 1, r(1));
        let b = QSeries::from_int_coeffs(0, &[1, 2, 3], 1, r(2));
        let p = a.mul(&b);
        // a known to 1, b has valuation 0 -> 1; b known to 2, a valuation -1 -> 1
        assert_eq!(p.trunc_order(), r(1));
        assert_eq!(p.coeff_int(-1), big(1));
        assert_eq!(p.coeff_int(0), big(2));
        assert_eq!(p.coeff_int(1), big(3 + 5));
    }

    #[test]
    fn integer_part_drops_fractional_terms() {
        let terms = vec![(Rational64::new(1, 3), big(1)), (r(1), big(1)), (Rational64::new(4, 3), big(1)), (r(2), big(1))];
        let s = QSeries::from_terms(DEFAULT_DENOM, r(3), terms).unwrap();
        let p = s.integer_exponent_part();
        assert_eq!(p.denom_bound(), 1);
        assert_eq!(p.terms().count(), 2);
        assert_eq!(p.coeff_int(1), big(1));
        assert_eq!(p.coeff_int(2), big(1));
        assert!(QSeries::zero(DEFAULT_DENOM, r(3)).integer_exponent_part().is_zero());
    }

    #[test]
    fn denominator_overflow_is_reported() {
        let s = QSeries::from_terms(6, r(2), vec![(Rational64::new(1, 6), big(1))]).unwrap();
        assert!(matches!(s.substitute(Rational64::new(1, 5)), Err(Error::DenominatorOverflow { .. })));
        assert!(QSeries::from_terms(6, r(2), vec![(Rational64::new(1, 7), big(1))]).is_err());
    }

    #[test]
    fn zero_series_has_no_inverse() {
        let z = QSeries::zero(1, r(4));
        assert_eq!(z.inverse(), Err(Error::NonInvertibleLeadingTerm));
    }

    #[test]
    fn canonical_text_round_trip() {
        let terms = vec![(Rational64::new(-1, 3), BigRational::new(5.into(), 7.into())), (r(2), big(-3))];
        let s = QSeries::from_terms(DEFAULT_DENOM, r(4), terms).unwrap();
        let back = QSeries::from_canonical_text(&s.to_canonical_text()).unwrap();
        assert_eq!(back, s);
    }

    fn arb_series() -> impl Strategy<Value = QSeries> {
        (proptest::collection::vec((-3i64..12, -5i64..6), 0..8), 3i64..8).prop_map(|(ts, t)| {
            let terms = ts.into_iter().map(|(e, c)| (Rational64::new(e, 3), big(c)));
            QSeries::from_terms(6, r(t), terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms_up_to_shared_truncation(a in arb_series(), b in arb_series(), c in arb_series()) {
            let lhs = a.mul(&b).mul(&c);
            let rhs = a.mul(&b.mul(&c));
            let t = lhs.trunc_order().min(rhs.trunc_order());
            prop_assert_eq!(lhs.truncate(t), rhs.truncate(t));

            let lhs = a.mul(&b.add(&c));
            let rhs = a.mul(&b).add(&a.mul(&c));
            let t = lhs.trunc_order().min(rhs.trunc_order());
            prop_assert_eq!(lhs.truncate(t), rhs.truncate(t));
            prop_assert_eq!(a.add(&b), b.add(&a));
        }

        #[test]
        fn substitution_composes(a in arb_series(), j in 1i64..4, k in 1i64..4) {
            let j = Rational64::new(j, 2);
            let k = Rational64::new(k, 1);
            let big_d = a.with_denom(12).unwrap();
            let twice = big_d.substitute(j).unwrap().substitute(k).unwrap();
            let once = big_d.substitute(j * k).unwrap();
            prop_assert_eq!(twice, once);
        }

        #[test]
        fn inverse_times_self_is_one(a in arb_series()) {
            if let Ok(inv) = a.inverse() {
                let p = a.mul(&inv);
                let one = QSeries::one(6, p.trunc_order());
                prop_assert_eq!(p, one);
            }
        }
    }
}
