//! Short-vector enumeration: a generic Fincke-Pohst search (floating-point
//! pruning with a safety margin, exact integer norms at the leaves) and a
//! block-structured theta computation for lattices glued over `sqrt2 A2^k`.

use super::glue::{glue, GlueVectorMap};
use super::{build_base, scaled_inner, GramLattice, SCALE};
use crate::arith::{FiniteField, QSeries, F3, F4};
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

/// Nonzero vector counts keyed by exact norm.
pub type ShortVectorCounts = BTreeMap<Rational64, u64>;

/// Largest number of vectors [`fincke_pohst`] will return.
pub const OUTPUT_CAP: u128 = 5_000_000;

const SCALE_SQ: i64 = SCALE * SCALE;

struct Search<'a> {
    basis: &'a [Vec<i64>],
    d: Vec<f64>,
    // mu[j][i] = L_ji for j > i
    mu: Vec<Vec<f64>>,
    tau: Vec<f64>,
    shift: Vec<i64>,
    /// Inclusive bound on `36 * norm`.
    bound: i64,
}

impl<'a> Search<'a> {
    fn new(lat: &'a GramLattice, shift: Option<&[i64]>, bound: i64) -> Result<Self> {
        let r = lat.rank();
        let g: Vec<Vec<BigRational>> = lat
            .scaled_gram()
            .iter()
            .map(|row| row.iter().map(|&x| BigRational::new(x.into(), SCALE_SQ.into())).collect())
            .collect();
        let mut l = vec![vec![BigRational::zero(); r]; r];
        let mut d = vec![BigRational::zero(); r];
        for i in 0..r {
            let mut di = g[i][i].clone();
            for k in 0..i {
                di -= &l[i][k] * &l[i][k] * &d[k];
            }
            if di <= BigRational::zero() {
                return Err(Error::Lattice("Gram matrix is not positive definite".into()));
            }
            d[i] = di;
            for j in i + 1..r {
                let mut v = g[j][i].clone();
                for k in 0..i {
                    v -= &l[j][k] * &l[i][k] * &d[k];
                }
                l[j][i] = v / &d[i];
            }
        }
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        let shift = shift.map_or_else(|| vec![0; lat.ambient_dim()], |s| s.to_vec());
        let tau = lat
            .span_coordinates(&shift)
            .ok_or_else(|| Error::Lattice("shift is not in the span of the lattice".into()))?;
        Ok(Search {
            basis: lat.basis(),
            d: d.iter().map(f).collect(),
            mu: l.iter().map(|row| row.iter().map(f).collect()).collect(),
            tau: tau.iter().map(f).collect(),
            shift,
            bound,
        })
    }

    fn run(&mut self, shrink: bool, visit: &mut dyn FnMut(&[i64], i64) -> Result<()>) -> Result<()> {
        let r = self.basis.len();
        let mut y = vec![0f64; r];
        let mut partial = vec![self.shift.clone(); r + 1];
        self.descend(r, 0.0, &mut y, &mut partial, shrink, visit)
    }

    fn descend(
        &mut self,
        level: usize,
        used: f64,
        y: &mut [f64],
        partial: &mut [Vec<i64>],
        shrink: bool,
        visit: &mut dyn FnMut(&[i64], i64) -> Result<()>,
    ) -> Result<()> {
        if level == 0 {
            let v = &partial[0];
            let n = scaled_inner(v, v);
            if n <= self.bound {
                visit(v, n)?;
                if shrink {
                    self.bound = n;
                }
            }
            return Ok(());
        }
        let i = level - 1;
        let limit = self.bound as f64 / SCALE_SQ as f64;
        let margin = 1e-7 * (1.0 + limit);
        let rem = limit - used + margin;
        if rem < 0.0 {
            return Ok(());
        }
        let c: f64 = -(i + 1..y.len()).map(|j| self.mu[j][i] * y[j]).sum::<f64>();
        let half = (rem / self.d[i]).sqrt();
        let lo = (c - half - self.tau[i]).ceil() as i64;
        let hi = (c + half - self.tau[i]).floor() as i64;
        for x in lo..=hi {
            y[i] = x as f64 + self.tau[i];
            let t = y[i] - c;
            let u = used + self.d[i] * t * t;
            let limit = self.bound as f64 / SCALE_SQ as f64;
            if u > limit + 1e-7 * (1.0 + limit) {
                continue;
            }
            let (lower, upper) = partial.split_at_mut(level);
            let next = &mut lower[level - 1];
            for ((n, p), b) in next.iter_mut().zip(&upper[0]).zip(&self.basis[i]) {
                *n = p + x * b;
            }
            self.descend(i, u, y, partial, shrink, visit)?;
        }
        Ok(())
    }
}

fn scaled_bound(bound: Rational64) -> i64 {
    (bound * SCALE_SQ).floor().to_integer()
}

/// All vectors of `shift + L` (or of `L` when `shift` is `None`), excluding
/// zero, with norm at most `bound`, together with their norms.
pub fn fincke_pohst(lat: &GramLattice, shift: Option<&[i64]>, bound: Rational64) -> Result<Vec<(Vec<i64>, Rational64)>> {
    let mut s = Search::new(lat, shift, scaled_bound(bound))?;
    let mut out = Vec::new();
    s.run(false, &mut |v, n| {
        if n > 0 {
            if out.len() as u128 >= OUTPUT_CAP {
                return Err(Error::CapExceeded { what: "short vector enumeration", needed: OUTPUT_CAP + 1, cap: OUTPUT_CAP });
            }
            out.push((v.to_vec(), Rational64::new(n, SCALE_SQ)));
        }
        Ok(())
    })?;
    Ok(out)
}

pub fn short_vector_counts(lat: &GramLattice, bound: Rational64) -> Result<ShortVectorCounts> {
    let mut s = Search::new(lat, None, scaled_bound(bound))?;
    let mut counts = ShortVectorCounts::new();
    s.run(false, &mut |_, n| {
        if n > 0 {
            *counts.entry(Rational64::new(n, SCALE_SQ)).or_insert(0) += 1;
        }
        Ok(())
    })?;
    Ok(counts)
}

/// Minimum norm of the coset `shift + L` together with a vector attaining it.
pub fn coset_min_norm(lat: &GramLattice, shift: &[i64]) -> Result<(Rational64, Vec<i64>)> {
    let start = scaled_inner(shift, shift);
    let mut s = Search::new(lat, Some(shift), start)?;
    let mut best = (start, shift.to_vec());
    s.run(true, &mut |v, n| {
        if n <= best.0 {
            best = (n, v.to_vec());
        }
        Ok(())
    })?;
    Ok((Rational64::new(best.0, SCALE_SQ), best.1))
}

/// Counts, indexed by `3 * norm`, of vectors in the coset `rep + sqrt2 A2`.
fn block_coset_counts(rep: [i64; 2], max_units: usize) -> Vec<u128> {
    let mut out = vec![0u128; max_units + 1];
    // x^T A x >= 2 |x|^2 on a block
    let r = ((6.0 * max_units as f64).sqrt() / SCALE as f64).ceil() as i64 + 2;
    for m1 in -r..=r {
        for m2 in -r..=r {
            let v = [rep[0] + SCALE * m1, rep[1] + SCALE * m2];
            let n = scaled_inner(&v, &v);
            debug_assert_eq!(n % 12, 0);
            let units = (n / 12) as usize;
            if units <= max_units {
                out[units] += 1;
            }
        }
    }
    out
}

fn poly_mul(a: &[u128], b: &[u128]) -> Result<Vec<u128>> {
    let n = a.len();
    let mut out = vec![0u128; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            let p = x.checked_mul(y).ok_or_else(|| Error::Lattice("theta coefficient overflow".into()))?;
            out[i + j] = out[i + j].checked_add(p).ok_or_else(|| Error::Lattice("theta coefficient overflow".into()))?;
        }
    }
    Ok(out)
}

fn support_histogram<F: FiniteField>(code: Option<&LinearCode<F>>) -> Result<HashMap<u32, u128>> {
    let mut h = HashMap::new();
    match code {
        None => {
            h.insert(0, 1);
        }
        Some(code) => {
            for w in code.enumerate()? {
                let mask = w.iter().enumerate().filter(|(_, x)| !x.is_zero()).fold(0u32, |m, (i, _)| m | 1 << i);
                *h.entry(mask).or_insert(0) += 1;
            }
        }
    }
    Ok(h)
}

/// Vector counts indexed by `3 * norm` (up to `max_units`) of the lattice
/// `lat`, which must equal `sqrt2 A2^k` glued by `c x d` through `map`.
///
/// Per-block coset thetas are computed for all twelve `(F4, F3)` coset types
/// and checked to depend only on which of the two labels vanish; the total is
/// then a sum over support patterns of codeword pairs.
pub fn block_theta_counts(
    lat: &GramLattice,
    map: &GlueVectorMap,
    c: Option<&LinearCode<F4>>,
    d: Option<&LinearCode<F3>>,
    max_units: usize,
) -> Result<Vec<u128>> {
    let blocks = lat.blocks();
    if glue(&build_base(blocks), map, c, d)? != *lat {
        return Err(Error::Lattice("lattice does not match the glue data".into()));
    }
    // class index: (c != 0) + 2 (d != 0)
    let mut class: [Option<Vec<u128>>; 4] = Default::default();
    for cc in F4::elements() {
        for dd in F3::elements() {
            let r4 = GlueVectorMap::rep4(cc);
            let r3 = GlueVectorMap::rep3(dd);
            let theta = block_coset_counts([r4[0] + r3[0], r4[1] + r3[1]], max_units);
            let k = (!cc.is_zero()) as usize + 2 * (!dd.is_zero()) as usize;
            match &class[k] {
                None => class[k] = Some(theta),
                Some(t) if *t == theta => {}
                Some(_) => return Err(Error::Lattice("block coset thetas differ within a class".into())),
            }
        }
    }
    let class: Vec<Vec<u128>> = class.into_iter().map(|t| t.expect("all classes visited")).collect();
    let mut powers: Vec<Vec<Vec<u128>>> = Vec::new();
    for t in &class {
        let mut p = vec![{
            let mut one = vec![0u128; max_units + 1];
            one[0] = 1;
            one
        }];
        for k in 0..blocks {
            p.push(poly_mul(&p[k], t)?);
        }
        powers.push(p);
    }
    let hc = support_histogram(c)?;
    let hd = support_histogram(d)?;
    let mut pattern: HashMap<(usize, usize, usize), u128> = HashMap::new();
    for (&mc, &nc) in &hc {
        for (&md, &nd) in &hd {
            let both = (mc & md).count_ones() as usize;
            let only_c = mc.count_ones() as usize - both;
            let only_d = md.count_ones() as usize - both;
            *pattern.entry((only_c, only_d, both)).or_insert(0) += nc * nd;
        }
    }
    let mut total = vec![0u128; max_units + 1];
    for ((only_c, only_d, both), mult) in pattern {
        let none = blocks - only_c - only_d - both;
        let mut prod = powers[0][none].clone();
        prod = poly_mul(&prod, &powers[1][only_c])?;
        prod = poly_mul(&prod, &powers[2][only_d])?;
        prod = poly_mul(&prod, &powers[3][both])?;
        for (t, p) in total.iter_mut().zip(prod) {
            let v = p.checked_mul(mult).ok_or_else(|| Error::Lattice("theta coefficient overflow".into()))?;
            *t = t.checked_add(v).ok_or_else(|| Error::Lattice("theta coefficient overflow".into()))?;
        }
    }
    Ok(total)
}

/// `sum_v q^{|v|^2 / 2}` from counts indexed by `3 * norm`, truncated at `q^order`.
pub fn counts_to_theta(counts: &[u128], order: i64) -> Result<QSeries> {
    let trunc = Rational64::from_integer(order);
    let terms = counts.iter().enumerate().filter(|(_, &n)| n > 0).map(|(u, &n)| {
        (Rational64::new(u as i64, 6), BigRational::from_integer(n.into()))
    });
    let terms: Vec<_> = terms.filter(|(e, _)| *e <= trunc).collect();
    QSeries::from_terms(6, trunc, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::hexacode;
    use crate::lattice::LeechConstruction;
    use crate::modular::leech_theta_modular;

    #[test]
    fn block_minima() {
        assert_eq!(block_coset_counts([0, 0], 12)[..13].iter().position(|&x| x > 0), Some(0));
        assert_eq!(block_coset_counts([0, 0], 12)[12], 6);
        assert_eq!(block_coset_counts([3, 0], 12).iter().position(|&x| x > 0), Some(3));
        assert_eq!(block_coset_counts([4, 2], 12).iter().position(|&x| x > 0), Some(4));
        assert_eq!(block_coset_counts([1, 2], 12).iter().position(|&x| x > 0), Some(1));
    }

    #[test]
    fn leech_theta_by_blocks_matches_modular_form() {
        let k = LeechConstruction::new().unwrap();
        let counts = block_theta_counts(&k.leech, &k.map, Some(&k.c), Some(&k.d), 30).unwrap();
        assert_eq!(counts[0], 1);
        assert_eq!(counts[6], 0);
        assert_eq!(counts[12], 196560);
        assert!(counts.iter().enumerate().all(|(u, &n)| u % 6 == 0 || n == 0));
        let theta = counts_to_theta(&counts, 5).unwrap();
        let modular = leech_theta_modular(5);
        for n in 0..=5 {
            assert_eq!(theta.coeff_int(n), modular.coeff_int(n), "q^{n}");
        }
        assert!(theta.terms().all(|(e, _)| e.is_integer()));
    }

    #[test]
    fn k12_short_vectors_two_ways() {
        let k = LeechConstruction::new().unwrap();
        let fp = short_vector_counts(&k.k12, Rational64::from_integer(4)).unwrap();
        assert_eq!(fp.keys().next(), Some(&Rational64::from_integer(4)));
        assert_eq!(fp[&Rational64::from_integer(4)], 756);
        let half = GlueVectorMap { twist: k.map.twist[..6].to_vec() };
        let blocks = block_theta_counts(&k.k12, &half, Some(&hexacode()), None, 18).unwrap();
        assert_eq!(blocks[12], 756);
        let fp6 = short_vector_counts(&k.k12, Rational64::from_integer(6)).unwrap();
        assert_eq!(fp6[&Rational64::from_integer(6)] as u128, blocks[18]);
    }

    #[test]
    fn leech_has_no_roots() {
        let k = LeechConstruction::new().unwrap();
        assert!(fincke_pohst(&k.leech, None, Rational64::from_integer(2)).unwrap().is_empty());
    }

    #[test]
    fn coset_minimum_in_one_block() {
        let n = build_base(1);
        assert_eq!(coset_min_norm(&n, &[7, 8]).unwrap().0, Rational64::new(1, 3));
        assert_eq!(coset_min_norm(&n, &[3, 3]).unwrap().0, Rational64::from_integer(1));
        assert_eq!(coset_min_norm(&n, &[4, 2]).unwrap().0, Rational64::new(4, 3));
    }
}
