//! Eta quotients, Eisenstein series, the J-function and the orbifold
//! character of the Z3-orbifold of the Leech lattice VOA.
//!
//! The tau-twisted trace on the untwisted sector comes from the eigenvalue
//! identity `(1 - xi x)(1 - xi^2 x) = (1 - x^3)/(1 - x)`: with tau acting
//! fixed-point freely with eigenvalues `xi`, `xi^2` (twelve each), the trace
//! series is `q^{-1} prod (1-q^n)^12/(1-q^{3n})^12 = eta(q)^12/eta(q^3)^12`.
//!
//! The twisted sectors are counted by a Fock space of parts `n/3`; the
//! vacuum weight is `(1/(4p^2)) sum_j j(p-j) mult(j)`, which is `4/3` for
//! the Leech profile.

use crate::arith::qseries::DEFAULT_DENOM;
use crate::arith::QSeries;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

fn ri(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// `prod eta(q^t)^r` as a list of `(t, r)` factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    pub factors: Vec<(Rational64, i64)>,
}

impl EtaQuotientSpec {
    pub fn new(factors: Vec<(Rational64, i64)>) -> Self {
        for (t, _) in &factors {
            assert!(*t > Rational64::zero(), "eta scale must be positive");
        }
        EtaQuotientSpec { factors }
    }

    /// Exponent of the `q^{sum r t / 24}` prefactor.
    pub fn leading_exponent(&self) -> Rational64 {
        self.factors.iter().map(|(t, r)| *t * *r / 24).sum()
    }
}

/// `prod_{n >= 1} (1 - q^{t n})`, expanded directly from the product.
pub fn euler_product(t: Rational64, order: Rational64, denom: i64) -> Result<QSeries> {
    let mut acc = QSeries::one(denom, order);
    let mut n = 1i64;
    while t * n <= order {
        let factor = QSeries::from_terms(
            denom,
            order,
            vec![(ri(0), BigRational::one()), (t * n, -BigRational::one())],
        )?;
        acc = acc.mul(&factor);
        n += 1;
    }
    Ok(acc)
}

/// Exact expansion of an eta quotient, prefactor included, up to `order`.
pub fn eta_quotient(spec: &EtaQuotientSpec, order: Rational64) -> Result<QSeries> {
    eta_quotient_with_denom(spec, order, DEFAULT_DENOM)
}

pub fn eta_quotient_with_denom(spec: &EtaQuotientSpec, order: Rational64, denom: i64) -> Result<QSeries> {
    let lead = spec.leading_exponent();
    if !(lead * denom).is_integer() {
        return Err(Error::DenominatorOverflow { exponent: lead.to_string(), bound: denom });
    }
    let inner = order - lead;
    let mut acc = QSeries::one(denom, inner);
    for &(t, r) in &spec.factors {
        let e = euler_product(t, inner, denom)?;
        acc = acc.mul(&e.pow_int(r)?);
    }
    acc.shift(lead)
}

/// Sum of `d^k` over the divisors of `n`.
fn divisor_power_sum(n: u64, k: u32) -> BigInt {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| BigInt::from(d).pow(k)).sum()
}

/// `E4 = 1 + 240 sum sigma_3(n) q^n`.
pub fn eisenstein_e4(order: i64) -> QSeries {
    let terms = (0..=order.max(0)).map(|n| {
        let c = if n == 0 { BigInt::one() } else { divisor_power_sum(n as u64, 3) * 240 };
        (ri(n), BigRational::from_integer(c))
    });
    QSeries::from_terms(DEFAULT_DENOM, ri(order), terms).expect("integral exponents")
}

/// `Delta = eta(q)^24`.
pub fn delta(order: i64) -> QSeries {
    eta_quotient(&EtaQuotientSpec::new(vec![(ri(1), 24)]), ri(order)).expect("integral exponents")
}

/// `J = E4^3 / Delta - 744`.
pub fn j_series(order: i64) -> QSeries {
    let e4 = eisenstein_e4(order + 2);
    let d_inv = delta(order + 2).inverse().expect("Delta has a unit leading coefficient");
    let j = e4.pow_int(3).expect("positive power").mul(&d_inv);
    let c = QSeries::monomial(BigRational::from_integer(744.into()), ri(0), DEFAULT_DENOM, ri(order)).expect("0 fits");
    j.sub(&c).truncate(ri(order))
}

/// `E4^3 - 720 Delta`, the theta series of the Leech lattice in `q^{norm/2}`.
pub fn leech_theta_modular(order: i64) -> QSeries {
    let e4 = eisenstein_e4(order);
    e4.pow_int(3).expect("positive power").sub(&delta(order).scale_int(720))
}

/// Eigenvalue multiplicities of an order-p isometry: class `j` is eigenvalue `xi^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistProfile {
    pub order: u32,
    pub multiplicities: BTreeMap<u32, u32>,
}

impl TwistProfile {
    /// Fixed-point-free order-3 isometry on a rank-24 lattice.
    pub fn leech() -> Self {
        TwistProfile { order: 3, multiplicities: [(0, 0), (1, 12), (2, 12)].into_iter().collect() }
    }

    /// Trivial action on a rank-`rank` lattice (parts are integers).
    pub fn untwisted(rank: u32) -> Self {
        TwistProfile { order: 3, multiplicities: [(0, rank), (1, 0), (2, 0)].into_iter().collect() }
    }

    pub fn multiplicity(&self, class: u32) -> u32 {
        self.multiplicities.get(&(class % self.order)).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> u32 {
        self.multiplicities.values().sum()
    }

    pub fn vacuum_weight(&self) -> Rational64 {
        let p = self.order as i64;
        let s: i64 = (0..p).map(|j| j * (p - j) * self.multiplicity(j as u32) as i64).sum();
        Rational64::new(s, 4 * p * p)
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of multisets of colored parts whose sizes add up to `level` (in units of `1/p`).
fn colored_multiset_count(profile: &TwistProfile, level: u64) -> BigInt {
    // parts[s] = multiplicity of part size s; walk partitions with non-increasing parts
    fn walk(profile: &TwistProfile, remaining: u64, max_part: u64, weight: BigInt, total: &mut BigInt) {
        if remaining == 0 {
            *total += weight;
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            let colors = profile.multiplicity((part % profile.order as u64) as u32) as u64;
            if colors == 0 {
                continue;
            }
            for k in 1..=remaining / part {
                let w = &weight * binomial(colors + k - 1, k);
                walk(profile, remaining - k * part, part - 1, w, total);
            }
        }
    }
    let mut total = BigInt::zero();
    walk(profile, level, level, BigInt::one(), &mut total);
    total
}

/// Graded dimension of the Fock space of `profile`, shifted by `q^{vacuum - 1}`,
/// computed by enumerating colored partitions.
pub fn fock_character(profile: &TwistProfile, order: Rational64) -> Result<QSeries> {
    let p = profile.order as i64;
    let shift = profile.vacuum_weight() - 1;
    let top = ((order - shift) * p).floor().to_integer();
    let mut terms = Vec::new();
    for level in 0..=top.max(-1) {
        let c = colored_multiset_count(profile, level as u64);
        terms.push((shift + Rational64::new(level, p), BigRational::from_integer(c)));
    }
    QSeries::from_terms(DEFAULT_DENOM, order, terms)
}

/// The three pieces of the character of the orbifold module.
#[derive(Clone, Debug)]
pub struct VSharpCharacter {
    /// tau-fixed part of the Leech lattice VOA.
    pub fixed: QSeries,
    /// Integral-weight part of one twisted sector.
    pub twisted_integral: QSeries,
    /// `fixed + 2 * twisted_integral`.
    pub total: QSeries,
}

/// `3^6 eta(q)^12 / eta(q^{1/3})^12`, one full twisted sector.
pub fn twisted_sector(order: Rational64) -> Result<QSeries> {
    let spec = EtaQuotientSpec::new(vec![(ri(1), 12), (Rational64::new(1, 3), -12)]);
    Ok(eta_quotient(&spec, order)?.scale_int(729))
}

/// `eta(q)^12 / eta(q^3)^12`, the tau-trace on the untwisted sector.
pub fn tau_trace_series(order: Rational64) -> Result<QSeries> {
    eta_quotient(&EtaQuotientSpec::new(vec![(ri(1), 12), (ri(3), -12)]), order)
}

/// Character components up to exponent `order` (weight `order + 1`).
///
/// `theta` is the Leech theta series in `q^{norm/2}` and must be known to `order + 1`;
/// when absent it is taken from `E4^3 - 720 Delta`.
pub fn ch_vsharp_components(order: i64, theta: Option<&QSeries>) -> Result<VSharpCharacter> {
    let theta = match theta {
        Some(t) => t.clone(),
        None => leech_theta_modular(order + 1),
    };
    let d_inv = delta(order + 2).inverse()?;
    let untwisted = theta.mul(&d_inv).truncate(ri(order));
    let trace = tau_trace_series(ri(order))?;
    let third = BigRational::new(1.into(), 3.into());
    let fixed = untwisted.add(&trace.scale_int(2)).scale(&third);
    if fixed.trunc_order() < ri(order) {
        return Err(Error::NonIntegralCharacter(format!("theta series too short for order {order}")));
    }
    let twisted_integral = twisted_sector(ri(order))?.integer_exponent_part();
    for s in [&fixed, &twisted_integral] {
        if let Some(e) = s.first_non_natural() {
            return Err(Error::NonIntegralCharacter(e.to_string()));
        }
    }
    let total = fixed.add(&twisted_integral.scale_int(2));
    Ok(VSharpCharacter { fixed, twisted_integral, total })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Euler's pentagonal theorem: prod (1 - q^n) = sum (-1)^k q^{k(3k-1)/2}.
    fn pentagonal_oracle(order: i64) -> Vec<i64> {
        let mut c = vec![0i64; (order + 1) as usize];
        for k in -(order + 1)..=(order + 1) {
            let e = k * (3 * k - 1) / 2;
            if (0..=order).contains(&e) {
                c[e as usize] += if k % 2 == 0 { 1 } else { -1 };
            }
        }
        c
    }

    fn naive_pow(base: &[i64], n: u32, order: usize) -> Vec<i64> {
        let mut acc = vec![0i64; order + 1];
        acc[0] = 1;
        for _ in 0..n {
            let mut next = vec![0i64; order + 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in base.iter().enumerate() {
                    if i + j <= order {
                        next[i + j] += a * b;
                    }
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn delta_matches_pentagonal_oracle() {
        let oracle = naive_pow(&pentagonal_oracle(8), 24, 8);
        let d = delta(9);
        assert_eq!(d.valuation(), Some(ri(1)));
        for n in 0..=8 {
            assert_eq!(d.coeff_int(n + 1), big(oracle[n as usize]), "q^{}", n + 1);
        }
        assert_eq!(&oracle[..4], &[1, -24, 252, -1472]);
    }

    #[test]
    fn e4_matches_divisor_sums() {
        let e4 = eisenstein_e4(3);
        let expected = [1, 240, 2160, 6720];
        for (n, c) in expected.iter().enumerate() {
            assert_eq!(e4.coeff_int(n as i64), big(*c));
        }
    }

    #[test]
    fn leech_theta_from_modular_forms() {
        let t = leech_theta_modular(3);
        assert_eq!(t.coeff_int(0), big(1));
        assert_eq!(t.coeff_int(1), big(0));
        assert_eq!(t.coeff_int(2), big(196560));
        assert_eq!(t.coeff_int(3), big(16773120));
    }

    #[test]
    fn j_function_leading_terms() {
        let j = j_series(2);
        assert_eq!(j.coeff_int(-1), big(1));
        assert_eq!(j.coeff_int(0), big(0));
        assert_eq!(j.coeff_int(1), big(196884));
        assert_eq!(j.coeff_int(2), big(21493760));
    }

    #[test]
    fn tau_trace_quotient_expansion() {
        // direct product oracle: q^{-1} prod (1-q^n)^12 (1-q^{3n})^{-12}, to q^2
        let s = tau_trace_series(ri(2)).unwrap();
        assert_eq!(s.coeff_int(-1), big(1));
        assert_eq!(s.coeff_int(0), big(-12));
        assert_eq!(s.coeff_int(1), big(54));
        assert_eq!(s.coeff_int(2), big(-76));
    }

    /// Expands `q^{-1} prod_n (1 - xi q^n)^{-12} (1 - xi^2 q^n)^{-12}` over Q(xi).
    fn eigenvalue_product_oracle(order: usize) -> Vec<crate::arith::CycRational> {
        use crate::arith::CycRational;
        let mut acc = vec![CycRational::zero(); order + 1];
        acc[0] = CycRational::one();
        for n in 1..=order {
            for eig in [1i64, 2] {
                let mut geo = vec![CycRational::zero(); order + 1];
                for k in 0..=order / n {
                    geo[k * n] = CycRational::xi_pow(eig * k as i64);
                }
                for _ in 0..12 {
                    let mut next = vec![CycRational::zero(); order + 1];
                    for i in 0..=order {
                        for j in 0..=order - i {
                            next[i + j] = &next[i + j] + &(&acc[i] * &geo[j]);
                        }
                    }
                    acc = next;
                }
            }
        }
        acc
    }

    #[test]
    fn tau_trace_matches_eigenvalue_product() {
        let oracle = eigenvalue_product_oracle(5);
        let s = tau_trace_series(ri(4)).unwrap();
        for (k, c) in oracle.iter().enumerate() {
            assert!(c.is_real());
            assert_eq!(s.coeff_int(k as i64 - 1), c.re, "q^{}", k as i64 - 1);
        }
    }

    #[test]
    fn twisted_eta_quotient_prefactor() {
        let spec = EtaQuotientSpec::new(vec![(ri(1), 12), (Rational64::new(1, 3), -12)]);
        assert_eq!(spec.leading_exponent(), Rational64::new(1, 3));
        let s = eta_quotient(&spec, ri(2)).unwrap();
        assert_eq!(s.valuation(), Some(Rational64::new(1, 3)));
        assert_eq!(s.coeff(Rational64::new(1, 3)), big(1));
        assert_eq!(s.coeff(Rational64::new(2, 3)), big(12));
        assert_eq!(s.coeff(ri(1)), big(90));
    }

    #[test]
    fn twisted_integral_part_starts_at_weight_two() {
        let t = twisted_sector(ri(2)).unwrap().integer_exponent_part();
        assert_eq!(t.valuation(), Some(ri(1)));
        assert_eq!(t.coeff_int(1), big(65610));
    }

    #[test]
    fn vacuum_weight_of_leech_profile() {
        assert_eq!(TwistProfile::leech().vacuum_weight(), Rational64::new(4, 3));
        assert_eq!(TwistProfile::leech().dimension(), 24);
        assert_eq!(TwistProfile::untwisted(24).vacuum_weight(), ri(0));
    }

    #[test]
    fn fock_counts_by_hand() {
        let leech = fock_character(&TwistProfile::leech(), ri(2)).unwrap();
        // level 0 sits at 4/3 - 1 = 1/3; level 2 is two thirds higher
        assert_eq!(leech.coeff(Rational64::new(1, 3)), big(1));
        assert_eq!(leech.coeff(ri(1)), big(90));
        let plain = fock_character(&TwistProfile::untwisted(24), ri(1)).unwrap();
        assert_eq!(plain.coeff_int(-1), big(1));
        assert_eq!(plain.coeff_int(1), big(324));
    }

    #[test]
    fn fock_oracle_matches_eta_quotient() {
        let fock = fock_character(&TwistProfile::leech(), ri(5)).unwrap().scale_int(729);
        let eta = twisted_sector(ri(5)).unwrap();
        assert_eq!(fock, eta);
    }

    #[test]
    fn character_components_at_low_order() {
        let ch = ch_vsharp_components(2, None).unwrap();
        assert_eq!(ch.fixed.coeff_int(-1), big(1));
        assert_eq!(ch.fixed.coeff_int(0), big(0));
        assert_eq!(ch.fixed.coeff_int(1), big(65664));
        assert_eq!(ch.twisted_integral.coeff_int(1), big(65610));
        assert_eq!(ch.total.coeff_int(0), big(0));
        assert_eq!(ch.total.coeff_int(1), big(196884));
        assert_eq!(ch.total.coeff_int(2), big(21493760));
    }

    #[test]
    fn character_equals_j() {
        let ch = ch_vsharp_components(4, None).unwrap();
        assert_eq!(ch.total, j_series(4));
    }
}
