//! Glue constructions over `N = sqrt2 A2^k`: the Leech lattice from the codes
//! `C x D`, the index-`3^6` sublattice glued by `C` alone, and `K12`.

use super::{GramLattice, SCALE};
use crate::arith::{FiniteField, F3, F4};
use crate::codes::{doubled_hexacode, hexacode, ternary_glue_code, LinearCode};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Per-block coset representatives for the 2-part and 3-part of `N*/N`.
///
/// In scaled block coordinates: `rep4(1) = (3,0)`, `rep4(w) = (0,3)`,
/// `rep4(W) = (3,3)`; `rep3(1) = (4,2)`, `rep3(2) = (2,4)`. An optional
/// Frobenius twist per block relabels the F4 coordinate before lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueVectorMap {
    pub twist: Vec<bool>,
}

impl GlueVectorMap {
    pub fn standard(blocks: usize) -> Self {
        GlueVectorMap { twist: vec![false; blocks] }
    }

    pub fn with_twist_mask(blocks: usize, mask: u32) -> Self {
        GlueVectorMap { twist: (0..blocks).map(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn blocks(&self) -> usize {
        self.twist.len()
    }

    pub fn rep4(c: F4) -> [i64; 2] {
        let (b0, b1) = c.bits();
        [3 * b0 as i64, 3 * b1 as i64]
    }

    pub fn rep3(d: F3) -> [i64; 2] {
        match d.value() {
            0 => [0, 0],
            1 => [4, 2],
            _ => [2, 4],
        }
    }

    pub fn vector_f4(&self, word: &[F4]) -> Vec<i64> {
        word.iter()
            .zip(&self.twist)
            .flat_map(|(&c, &t)| Self::rep4(if t { c.frobenius() } else { c }))
            .collect()
    }

    pub fn vector_f3(&self, word: &[F3]) -> Vec<i64> {
        word.iter().flat_map(|&d| Self::rep3(d)).collect()
    }

    /// Reads the `(F4, F3)` labels of the `N*/N` class of a scaled vector;
    /// `None` if the vector is not in `N*` (per block: `x1 + x2 = 0 mod 3`).
    pub fn labels(&self, x: &[i64]) -> Option<(Vec<F4>, Vec<F3>)> {
        let mut c = Vec::new();
        let mut d = Vec::new();
        for (blk, &t) in x.chunks(2).zip(&self.twist) {
            if (blk[0] + blk[1]).rem_euclid(3) != 0 {
                return None;
            }
            let raw = F4::from_bits(blk[0].rem_euclid(2) == 1, blk[1].rem_euclid(2) == 1);
            c.push(if t { raw.frobenius() } else { raw });
            d.push(F3::new(blk[0]));
        }
        Some((c, d))
    }
}

/// `N = sqrt2 A2^blocks` in scaled coordinates.
pub fn build_base(blocks: usize) -> GramLattice {
    let rows: Vec<Vec<i64>> =
        (0..2 * blocks).map(|i| (0..2 * blocks).map(|j| if i == j { SCALE } else { 0 }).collect()).collect();
    GramLattice::from_generators(blocks, &rows).expect("nonzero")
}

fn code_size<F: FiniteField>(c: Option<&LinearCode<F>>) -> u128 {
    c.map_or(1, |c| c.size())
}

/// Overlattice of `base` glued by the given codes. An F4-linear code
/// contributes each generator `g` and `w g`, an F2-basis of its additive group.
pub fn glue(
    base: &GramLattice,
    map: &GlueVectorMap,
    c: Option<&LinearCode<F4>>,
    d: Option<&LinearCode<F3>>,
) -> Result<GramLattice> {
    let blocks = base.blocks();
    for len in c.map(|c| c.length()).into_iter().chain(d.map(|d| d.length())) {
        if len != blocks {
            return Err(Error::LengthMismatch { expected: blocks, got: len });
        }
    }
    let mut gens: Vec<Vec<i64>> = base.basis().to_vec();
    if let Some(c) = c {
        for g in c.generator_rows() {
            gens.push(map.vector_f4(g));
            let wg: Vec<F4> = g.iter().map(|&x| F4::W * x).collect();
            gens.push(map.vector_f4(&wg));
        }
    }
    if let Some(d) = d {
        for g in d.generator_rows() {
            gens.push(map.vector_f3(g));
        }
    }
    let lat = GramLattice::from_generators(blocks, &gens)?;
    let expected = code_size(c) * code_size(d);
    let index = lat.index_in_super_of(base)?;
    if index != BigInt::from(expected) {
        return Err(Error::Lattice(format!("glue index {index}, expected {expected}")));
    }
    if !lat.is_even() {
        return Err(Error::Lattice("glued lattice is not even".into()));
    }
    Ok(lat)
}

impl GramLattice {
    /// `[self : sub]` for a full-rank sublattice `sub`.
    pub fn index_in_super_of(&self, sub: &GramLattice) -> Result<BigInt> {
        sub.index_in(self)
    }
}

/// Places a 12-dimensional (6-block) vector on blocks `offset..offset+6` of the 24-dimensional ambient.
pub fn embed_half(v: &[i64], offset_blocks: usize) -> Vec<i64> {
    let mut out = vec![0; 24];
    out[2 * offset_blocks..2 * offset_blocks + v.len()].copy_from_slice(v);
    out
}

/// All lattices of the construction, built once with one glue labelling.
#[derive(Clone, Debug)]
pub struct LeechConstruction {
    pub map: GlueVectorMap,
    pub twist_mask: u32,
    pub c: LinearCode<F4>,
    pub d: LinearCode<F3>,
    pub base: GramLattice,
    pub leech: GramLattice,
    /// `N` glued by `C` alone.
    pub lc: GramLattice,
    /// `K12` in its own 12-dimensional ambient.
    pub k12: GramLattice,
    pub k12_first: GramLattice,
    pub k12_second: GramLattice,
}

impl LeechConstruction {
    pub fn new() -> Result<Self> {
        Self::calibrated(1 << 12)
    }

    /// Tries per-block Frobenius relabellings of `C` (ordered by number of
    /// twisted blocks) until `N` glued by `C x D` is even unimodular.
    pub fn calibrated(max_attempts: usize) -> Result<Self> {
        let c = doubled_hexacode();
        let d = ternary_glue_code();
        let base = build_base(12);
        let mut masks: Vec<u32> = (0..1u32 << 12).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        for &mask in masks.iter().take(max_attempts) {
            let map = GlueVectorMap::with_twist_mask(12, mask);
            let Ok(leech) = glue(&base, &map, Some(&c), Some(&d)) else { continue };
            if leech.det() != BigRational::one() {
                continue;
            }
            let lc = glue(&base, &map, Some(&c), None)?;
            let half = GlueVectorMap { twist: map.twist[..6].to_vec() };
            let k12 = glue(&build_base(6), &half, Some(&hexacode()), None)?;
            let second_half = GlueVectorMap { twist: map.twist[6..].to_vec() };
            let k12_b = glue(&build_base(6), &second_half, Some(&hexacode()), None)?;
            let k12_first =
                GramLattice::from_generators(12, &k12.basis().iter().map(|b| embed_half(b, 0)).collect::<Vec<_>>())?;
            let k12_second =
                GramLattice::from_generators(12, &k12_b.basis().iter().map(|b| embed_half(b, 6)).collect::<Vec<_>>())?;
            return Ok(LeechConstruction { map, twist_mask: mask, c, d, base, leech, lc, k12, k12_first, k12_second });
        }
        Err(Error::Lattice("no glue labelling produced an even unimodular lattice".into()))
    }

    /// Fixed representative of the `K12*/K12` class with F3 label `a`
    /// (12-dimensional ambient): `rep3(a_i)` on block `i`.
    pub fn k12_dual_rep(a: &[F3]) -> Vec<i64> {
        a.iter().flat_map(|&x| GlueVectorMap::rep3(x)).collect()
    }

    /// F3 label of a vector of `K12*` (12-dimensional ambient).
    pub fn k12_label(x: &[i64]) -> Vec<F3> {
        x.chunks(2).map(|b| F3::new(b[0])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn glue_representatives() {
        for c in F4::elements() {
            let r = GlueVectorMap::rep4(c);
            assert!(r.iter().all(|x| (2 * x) % SCALE == 0));
        }
        for d in F3::elements() {
            let r = GlueVectorMap::rep3(d);
            assert!(r.iter().all(|x| (3 * x) % SCALE == 0));
        }
        assert_eq!(GlueVectorMap::rep4(F4::ZERO), [0, 0]);
        assert_eq!(GlueVectorMap::rep3(F3::ZERO), [0, 0]);
    }

    #[test]
    fn labels_round_trip() {
        let map = GlueVectorMap::with_twist_mask(3, 0b101);
        let c = vec![F4::W, F4::ONE, F4::WBAR];
        let d = vec![F3::TWO, F3::ZERO, F3::ONE];
        let mut v = map.vector_f4(&c);
        for (x, y) in v.iter_mut().zip(map.vector_f3(&d)) {
            *x += y + 6;
        }
        assert_eq!(map.labels(&v), Some((c, d)));
    }

    #[test]
    fn construction_lattices() {
        let k = LeechConstruction::new().unwrap();
        assert_eq!(k.twist_mask, 0);
        assert!(k.leech.is_even());
        assert_eq!(k.leech.det(), BigRational::one());
        assert_eq!(k.lc.det(), BigRational::from_integer(BigInt::from(3).pow(12)));
        assert_eq!(k.lc.index_in(&k.leech).unwrap(), BigInt::from(729));
        assert_eq!(k.k12.det(), BigRational::from_integer(BigInt::from(729)));
        assert!(k.k12.is_even());
        let both =
            GramLattice::from_generators(12, &[k.k12_first.basis(), k.k12_second.basis()].concat()).unwrap();
        assert_eq!(both, k.lc);
        for a in k.k12_first.basis() {
            for b in k.k12_second.basis() {
                assert_eq!(super::super::inner(a, b), Rational64::from_integer(0));
            }
        }
    }

    #[test]
    fn glue_rejects_bad_length() {
        let base = build_base(5);
        let map = GlueVectorMap::standard(5);
        assert!(matches!(glue(&base, &map, Some(&hexacode()), None), Err(Error::LengthMismatch { .. })));
    }
}
