//! Linear codes over F3 and F4 used as glue: the ternary code `D`, the
//! hexacode `H` and `C = H + H`, together with monomial maps acting on them.

use crate::arith::linalg::{echelon, rank};
use crate::arith::{FiniteField, F3, F4};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashSet};

/// Largest code that [`LinearCode::enumerate`] will list.
pub const ENUMERATION_CAP: u128 = 10_000_000;

pub type Word<F> = Vec<F>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode<F: FiniteField> {
    length: usize,
    rows: Vec<Word<F>>,
}

impl<F: FiniteField> LinearCode<F> {
    /// Builds a code from generator rows, rejecting dependent rows.
    pub fn new(rows: Vec<Word<F>>) -> Result<Self> {
        let length = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != length) {
            return Err(Error::LengthMismatch { expected: length, got: bad.len() });
        }
        let rk = rank(&rows);
        if rk != rows.len() {
            return Err(Error::DependentRows { rank: rk, rows: rows.len() });
        }
        Ok(LinearCode { length, rows })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_rows(&self) -> &[Word<F>] {
        &self.rows
    }

    pub fn size(&self) -> u128 {
        (F::ORDER as u128).pow(self.rows.len() as u32)
    }

    pub fn encode(&self, message: &[F]) -> Word<F> {
        let mut w = vec![F::zero(); self.length];
        for (m, row) in message.iter().zip(&self.rows) {
            if m.is_zero() {
                continue;
            }
            for (x, &g) in w.iter_mut().zip(row) {
                *x = *x + *m * g;
            }
        }
        w
    }

    /// Every codeword, ordered lexicographically by message vector.
    pub fn enumerate(&self) -> Result<Vec<Word<F>>> {
        let n = self.size();
        if n > ENUMERATION_CAP {
            return Err(Error::CapExceeded { what: "code enumeration", needed: n, cap: ENUMERATION_CAP });
        }
        let els = F::elements();
        let k = self.rows.len();
        let mut out = Vec::with_capacity(n as usize);
        let mut digits = vec![0usize; k];
        loop {
            let msg: Vec<F> = digits.iter().map(|&d| els[d]).collect();
            out.push(self.encode(&msg));
            // increment from the last digit so the first message coordinate varies slowest
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < F::ORDER {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    pub fn codeword_set(&self) -> Result<HashSet<Word<F>>> {
        Ok(self.enumerate()?.into_iter().collect())
    }

    pub fn weight_distribution(&self) -> Result<BTreeMap<usize, u64>> {
        let mut dist = BTreeMap::new();
        for w in self.enumerate()? {
            *dist.entry(weight(&w)).or_insert(0) += 1;
        }
        Ok(dist)
    }

    pub fn minimum_weight(&self) -> Result<Option<usize>> {
        Ok(self.weight_distribution()?.keys().copied().find(|&w| w > 0))
    }

    /// Sesquilinear form `sum x_i frob(y_i)` (the standard dot product over F3,
    /// the Hermitian form over F4) vanishes on all generator pairs.
    pub fn is_self_orthogonal(&self) -> bool {
        self.rows.iter().all(|a| self.rows.iter().all(|b| hermitian_dot(a, b).is_zero()))
    }

    pub fn contains(&self, w: &[F]) -> bool {
        if w.len() != self.length {
            return false;
        }
        let mut rows = self.rows.clone();
        rows.push(w.to_vec());
        rank(&rows) == self.rows.len()
    }

    pub fn to_text(&self) -> String {
        self.rows.iter().map(|r| r.iter().map(|x| x.symbol()).collect::<String>() + "\n").collect()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| F::from_symbol(c).ok_or_else(|| Error::Parse(format!("bad code symbol {c:?}"))))
                    .collect::<Result<Vec<F>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

pub fn weight<F: FiniteField>(w: &[F]) -> usize {
    w.iter().filter(|x| !x.is_zero()).count()
}

pub fn hermitian_dot<F: FiniteField>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (&x, &y)| acc + x * y.frob())
}

/// Coordinate permutation with per-coordinate scalars and Frobenius twists.
///
/// Coordinate `i` of the input is sent to position `perm[i]` after being
/// replaced by `scalar[i] * x` (then Frobenius-twisted when `frobenius[i]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap<F: FiniteField> {
    pub perm: Vec<usize>,
    pub scalars: Vec<F>,
    pub frobenius: Vec<bool>,
}

impl<F: FiniteField> MonomialMap<F> {
    pub fn identity(n: usize) -> Self {
        MonomialMap { perm: (0..n).collect(), scalars: vec![F::one(); n], frobenius: vec![false; n] }
    }

    pub fn permutation(perm: Vec<usize>) -> Self {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        MonomialMap { perm, scalars: vec![F::one(); n], frobenius: vec![false; n] }
    }

    pub fn diagonal(scalars: Vec<F>) -> Self {
        assert!(scalars.iter().all(|s| !s.is_zero()), "scalars must be units");
        let n = scalars.len();
        MonomialMap { perm: (0..n).collect(), scalars, frobenius: vec![false; n] }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn apply(&self, w: &[F]) -> Word<F> {
        let mut out = vec![F::zero(); w.len()];
        for (i, &x) in w.iter().enumerate() {
            let y = self.scalars[i] * x;
            out[self.perm[i]] = if self.frobenius[i] { y.frob() } else { y };
        }
        out
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &MonomialMap<F>) -> MonomialMap<F> {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut scalars = vec![F::one(); n];
        let mut frobenius = vec![false; n];
        for i in 0..n {
            let j = first.perm[i];
            perm[i] = self.perm[j];
            // frob^{f2}(s2 * frob^{f1}(s1 x)) = frob^{f1+f2}(frob^{f1}(s2) * s1 x)
            let s1 = first.scalars[i];
            let s2 = if first.frobenius[i] { self.scalars[j].frob() } else { self.scalars[j] };
            scalars[i] = s2 * s1;
            frobenius[i] = first.frobenius[i] ^ self.frobenius[j];
        }
        MonomialMap { perm, scalars, frobenius }
    }

    pub fn inverse(&self) -> MonomialMap<F> {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut scalars = vec![F::one(); n];
        let mut frobenius = vec![false; n];
        for i in 0..n {
            let j = self.perm[i];
            perm[j] = i;
            // y = frob^f(s x)  =>  x = s^{-1} frob^{-f}(y) = frob^f(frob^f(s^{-1}) y) for f of order 2
            let sinv = self.scalars[i].inv().expect("unit");
            scalars[j] = if self.frobenius[i] { sinv.frob() } else { sinv };
            frobenius[j] = self.frobenius[i];
        }
        MonomialMap { perm, scalars, frobenius }
    }
}

/// Image of a code under a monomial map; fails if the image is not linear.
pub fn apply_map<F: FiniteField>(code: &LinearCode<F>, m: &MonomialMap<F>) -> Result<LinearCode<F>> {
    if m.len() != code.length() {
        return Err(Error::LengthMismatch { expected: code.length(), got: m.len() });
    }
    let image: Vec<Word<F>> = code.enumerate()?.iter().map(|w| m.apply(w)).collect();
    let basis = echelon(&image);
    let out = LinearCode::new(basis)?;
    if out.size() != image.len() as u128 || !image.iter().all(|w| out.contains(w)) {
        return Err(Error::Geometry("image of the code is not linear".into()));
    }
    Ok(out)
}

/// Set equality of the code and its image.
pub fn is_invariant<F: FiniteField>(code: &LinearCode<F>, m: &MonomialMap<F>) -> Result<bool> {
    if m.len() != code.length() {
        return Err(Error::LengthMismatch { expected: code.length(), got: m.len() });
    }
    let words = code.codeword_set()?;
    Ok(words.iter().all(|w| words.contains(&m.apply(w))))
}

fn f3_row(v: &[u8]) -> Word<F3> {
    v.iter().map(|&x| F3::new(x as i64)).collect()
}

/// The ternary glue code: three tetracodes on coordinate blocks {1,2,7,8}, {3,4,9,10}, {5,6,11,12}.
pub fn ternary_glue_code() -> LinearCode<F3> {
    let rows = [
        [1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        [1, 2, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 1, 2, 0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1, 2, 0, 0, 0, 0, 0, 1],
    ];
    LinearCode::new(rows.iter().map(|r| f3_row(r)).collect()).expect("rows are independent")
}

/// The hexacode `{(a, b, c, f(1), f(w), f(W)) : f(x) = a x^2 + b x + c}`.
pub fn hexacode() -> LinearCode<F4> {
    use F4 as E;
    let rows = vec![
        vec![E::ONE, E::ZERO, E::ZERO, E::ONE, E::WBAR, E::W],
        vec![E::ZERO, E::ONE, E::ZERO, E::ONE, E::W, E::WBAR],
        vec![E::ZERO, E::ZERO, E::ONE, E::ONE, E::ONE, E::ONE],
    ];
    LinearCode::new(rows).expect("rows are independent")
}

/// `C = H + H` on twelve coordinates.
pub fn doubled_hexacode() -> LinearCode<F4> {
    let h = hexacode();
    let mut rows = Vec::new();
    for r in h.generator_rows() {
        let mut a = r.clone();
        a.extend(vec![F4::ZERO; 6]);
        rows.push(a);
    }
    for r in h.generator_rows() {
        let mut b = vec![F4::ZERO; 6];
        b.extend(r.iter().copied());
        rows.push(b);
    }
    LinearCode::new(rows).expect("rows are independent")
}

/// `s = (1,7)(2,8)...(6,12)` on twelve coordinates.
pub fn half_swap<F: FiniteField>() -> MonomialMap<F> {
    MonomialMap::permutation((0..12).map(|i| (i + 6) % 12).collect())
}

/// `epsilon`: `+1` on the first six coordinates, `-1` on the last six.
pub fn half_negation<F: FiniteField>() -> MonomialMap<F> {
    MonomialMap::diagonal((0..12).map(|i| if i < 6 { F::one() } else { -F::one() }).collect())
}

/// `epsilon` after `s`.
pub fn swap_negate<F: FiniteField>() -> MonomialMap<F> {
    half_negation::<F>().compose(&half_swap::<F>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ternary_code_size_and_distance() {
        let d = ternary_glue_code();
        assert_eq!(d.enumerate().unwrap().len(), 729);
        assert_eq!(d.minimum_weight().unwrap(), Some(3));
        assert!(d.is_self_orthogonal());
        let dist = d.weight_distribution().unwrap();
        assert_eq!(dist.values().sum::<u64>(), 729);
        assert!(dist.keys().all(|w| w % 3 == 0));
    }

    #[test]
    fn hexacode_parameters() {
        let h = hexacode();
        assert_eq!(h.length(), 6);
        assert_eq!(h.dimension(), 3);
        assert_eq!(h.enumerate().unwrap().len(), 64);
        assert_eq!(h.minimum_weight().unwrap(), Some(4));
        assert!(h.is_self_orthogonal());
        let dist = h.weight_distribution().unwrap();
        assert_eq!(dist.get(&4), Some(&45));
        assert_eq!(dist.get(&6), Some(&18));
    }

    #[test]
    fn dependent_rows_rejected() {
        let rows = vec![f3_row(&[1, 2, 0]), f3_row(&[2, 1, 0])];
        assert!(matches!(LinearCode::new(rows), Err(Error::DependentRows { rank: 1, rows: 2 })));
    }

    #[test]
    fn swap_negate_stabilizes_both_glue_codes() {
        let d = ternary_glue_code();
        assert!(is_invariant(&d, &swap_negate::<F3>()).unwrap());
        assert!(is_invariant(&d, &MonomialMap::identity(12)).unwrap());
        let c = doubled_hexacode();
        let m = swap_negate::<F4>();
        assert!(is_invariant(&c, &m).unwrap());
        // the negation alone is not a symmetry of D
        assert!(!is_invariant(&d, &half_negation::<F3>()).unwrap());
    }

    #[test]
    fn swap_negate_exchanges_hexacode_halves() {
        let h = hexacode();
        let m = swap_negate::<F4>();
        let first: Vec<Word<F4>> = h.enumerate().unwrap().into_iter().map(|w| [w, vec![F4::ZERO; 6]].concat()).collect();
        let second: HashSet<Word<F4>> =
            h.enumerate().unwrap().into_iter().map(|w| [vec![F4::ZERO; 6], w].concat()).collect();
        assert!(first.iter().all(|w| second.contains(&m.apply(w))));
    }

    #[test]
    fn generator_text_round_trip() {
        let c = doubled_hexacode();
        assert_eq!(LinearCode::<F4>::from_text(&c.to_text()).unwrap(), c);
        assert!(c.to_text().starts_with("100"));
        let d = ternary_glue_code();
        assert_eq!(LinearCode::<F3>::from_text(&d.to_text()).unwrap(), d);
        assert!(LinearCode::<F3>::from_text("01x\n").is_err());
    }

    #[test]
    fn enumeration_cap() {
        let rows: Vec<Word<F3>> = (0..15).map(|i| (0..15).map(|j| if i == j { F3::ONE } else { F3::ZERO }).collect()).collect();
        let big = LinearCode::new(rows).unwrap();
        assert!(matches!(big.enumerate(), Err(Error::CapExceeded { .. })));
    }

    fn arb_f4_map() -> impl Strategy<Value = MonomialMap<F4>> {
        (Just((0..6).collect::<Vec<usize>>()).prop_shuffle(), proptest::collection::vec(1u8..4, 6), proptest::collection::vec(any::<bool>(), 6))
            .prop_map(|(perm, s, f)| MonomialMap {
                perm,
                scalars: s.into_iter().map(|v| F4::elements()[v as usize]).collect(),
                frobenius: f,
            })
    }

    proptest! {
        #[test]
        fn monomial_maps_preserve_weights(m in arb_f4_map()) {
            let h = hexacode();
            let img: Vec<Word<F4>> = h.enumerate().unwrap().iter().map(|w| m.apply(w)).collect();
            let mut dist = BTreeMap::new();
            for w in &img {
                *dist.entry(weight(w)).or_insert(0u64) += 1;
            }
            prop_assert_eq!(dist, h.weight_distribution().unwrap());
        }

        #[test]
        fn composition_and_inverse(a in arb_f4_map(), b in arb_f4_map(), v in proptest::collection::vec(0u8..4, 6)) {
            let w: Word<F4> = v.into_iter().map(|x| F4::elements()[x as usize]).collect();
            prop_assert_eq!(a.compose(&b).apply(&w), a.apply(&b.apply(&w)));
            prop_assert_eq!(a.inverse().apply(&a.apply(&w)), w.clone());
        }
    }
}
