//! Factored group orders and the order identities between the subgroups
//! used in the 3-local analysis.

use crate::error::{Error, Result};
use crate::report::CheckResult;
use num_bigint::BigUint;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u32>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_factors(pairs: &[(u64, u32)]) -> Self {
        let mut f = Self::one();
        for &(p, e) in pairs {
            if e > 0 {
                *f.factors.entry(p).or_insert(0) += e;
            }
        }
        f
    }

    /// Trial-division factorization of a positive integer.
    pub fn from_u128(mut n: u128) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotDivisible("zero has no factorization".into()));
        }
        let mut f = Self::one();
        let mut p: u128 = 2;
        while p * p <= n {
            while n.is_multiple_of(p) {
                *f.factors.entry(p as u64).or_insert(0) += 1;
                n /= p;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if n > 1 {
            let p = u64::try_from(n).map_err(|_| Error::NotDivisible("prime factor too large".into()))?;
            *f.factors.entry(p).or_insert(0) += 1;
        }
        Ok(f)
    }

    pub fn factors(&self) -> &BTreeMap<u64, u32> {
        &self.factors
    }

    pub fn value(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }

    pub fn to_u128(&self) -> Option<u128> {
        u128::try_from(self.value()).ok()
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    /// `p^{v_p(n)}`.
    pub fn p_part(&self, p: u64) -> FactoredInteger {
        Self::from_factors(&[(p, self.exponent(p))])
    }

    pub fn mul(&self, o: &FactoredInteger) -> FactoredInteger {
        let mut f = self.clone();
        for (&p, &e) in &o.factors {
            *f.factors.entry(p).or_insert(0) += e;
        }
        f
    }

    pub fn pow(&self, k: u32) -> FactoredInteger {
        FactoredInteger { factors: self.factors.iter().map(|(&p, &e)| (p, e * k)).filter(|(_, e)| *e > 0).collect() }
    }

    pub fn divides(&self, o: &FactoredInteger) -> bool {
        self.factors.iter().all(|(&p, &e)| o.exponent(p) >= e)
    }

    pub fn div_exact(&self, d: &FactoredInteger) -> Result<FactoredInteger> {
        if !d.divides(self) {
            return Err(Error::NotDivisible(format!("{d} does not divide {self}")));
        }
        let mut f = self.clone();
        for (&p, &e) in &d.factors {
            let x = f.factors.get_mut(&p).expect("divides");
            *x -= e;
            if *x == 0 {
                f.factors.remove(&p);
            }
        }
        Ok(f)
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.factors.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WittSign {
    Plus,
    Minus,
}

impl WittSign {
    pub fn epsilon(self) -> i128 {
        match self {
            WittSign::Plus => 1,
            WittSign::Minus => -1,
        }
    }
}

/// `|O^eps_{2m}(q)| = 2 q^{m(m-1)} (q^m - eps) prod_{i=1}^{m-1} (q^{2i} - 1)`.
pub fn orthogonal_order(m: u32, q: u64, sign: WittSign) -> Result<FactoredInteger> {
    let q = q as u128;
    let mut f = FactoredInteger::from_factors(&[(2, 1)]);
    f = f.mul(&FactoredInteger::from_u128(q)?.pow(m * (m - 1)));
    let top = q.pow(m) as i128 - sign.epsilon();
    f = f.mul(&FactoredInteger::from_u128(top as u128)?);
    for i in 1..m {
        f = f.mul(&FactoredInteger::from_u128(q.pow(2 * i) - 1)?);
    }
    Ok(f)
}

pub fn suzuki_order() -> FactoredInteger {
    FactoredInteger::from_factors(&[(2, 13), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)])
}

pub fn psu43_order() -> FactoredInteger {
    FactoredInteger::from_factors(&[(2, 7), (3, 6), (5, 1), (7, 1)])
}

/// `|Omega^-_8(3)| = |O^-_8(3)| / 4`.
pub fn omega_minus_8_3_order() -> FactoredInteger {
    orthogonal_order(4, 3, WittSign::Minus)
        .and_then(|o| o.div_exact(&FactoredInteger::from_factors(&[(2, 2)])))
        .expect("closed form")
}

fn n(k: u128) -> FactoredInteger {
    FactoredInteger::from_u128(k).expect("positive")
}

const SHAPE_CLAIM: &str = "order arithmetic of the 3-local subgroups";

/// Order identities between `H1 = 3^{1+12}.(2Suz:2)`, `H2 = 3^8.Omega^-_8(3).2`
/// and their intersection `3^8.(3^6.(2 PSU4(3).2^2))`.
pub fn shape_arithmetic_suite() -> Vec<CheckResult> {
    let suz = suzuki_order();
    let psu = psu43_order();
    let omega = omega_minus_8_3_order();
    let h1 = n(3).pow(13).mul(&n(4)).mul(&suz);
    let h2 = n(3).pow(8).mul(&n(2)).mul(&omega);
    let h12 = n(3).pow(8).mul(&n(3).pow(6)).mul(&n(8)).mul(&psu);
    let three20 = n(3).pow(20);
    let mut out = vec![
        CheckResult::compare("groups-suz-order", "|Suz| expands from its factorization", "order of Suz", suz.value(), BigUint::from(448_345_497_600u64)),
        CheckResult::compare("groups-psu43-order", "|PSU4(3)| expands from its factorization", "order of PSU4(3)", psu.value(), BigUint::from(3_265_920u64)),
        CheckResult::compare(
            "groups-omega-order",
            "|Omega^-_8(3)| = |O^-_8(3)|/4 from the closed form",
            "order of Omega^-_8(3)",
            omega.value(),
            BigUint::from(10_151_968_619_520u64),
        ),
        CheckResult::compare("groups-h1-3part", "3-part of 3^13 * 4|Suz|", SHAPE_CLAIM, h1.p_part(3), three20.clone()),
        CheckResult::compare("groups-h2-3part", "3-part of 3^8 * 2|Omega^-_8(3)|", SHAPE_CLAIM, h2.p_part(3), three20.clone()),
        CheckResult::compare("groups-h12-3part", "3-part of 3^8 * 3^6 * 8|PSU4(3)|", SHAPE_CLAIM, h12.p_part(3), three20),
        CheckResult::holds("groups-h12-divides-h1", "|H1 cap H2| divides |H1|", SHAPE_CLAIM, h12.divides(&h1)),
        CheckResult::holds("groups-h12-divides-h2", "|H1 cap H2| divides |H2|", SHAPE_CLAIM, h12.divides(&h2)),
    ];
    let lhs = n(2).mul(&omega);
    let rhs = n(1066).mul(&n(3).pow(6)).mul(&n(8)).mul(&psu);
    out.push(CheckResult::compare(
        "groups-singular-stabilizer",
        "2|Omega^-_8(3)| = 1066 * 3^6 * 8|PSU4(3)|",
        "stabilizer of a singular point in Omega^-_8(3).2",
        lhs.value(),
        rhs.value(),
    ));
    out
}

/// Centralizer dimension sums and the Ising-vector count residue.
pub fn dimension_sums() -> Vec<CheckResult> {
    vec![
        CheckResult::compare(
            "groups-2a-dimension-sum",
            "1 + 1 + 4371 + 96255 + 96256",
            "2A-centralizer decomposition of the weight-2 space",
            1 + 1 + 4371 + 96255 + 96256,
            196884u64,
        ),
        CheckResult::compare(
            "groups-2b-dimension-sum",
            "1 + 299 + 98280 + 98304",
            "2B-centralizer decomposition of the weight-2 space",
            1 + 299 + 98280 + 98304,
            196884u64,
        ),
        CheckResult::compare("groups-ising-residue", "496 mod 3", "number of Ising vectors is prime to 3", 496u64 % 3, 1),
    ]
}
