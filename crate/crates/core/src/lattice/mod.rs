//! Exact lattices inside `sqrt2 A2^k`, stored in scaled integer coordinates.
//!
//! Coordinates are taken with respect to the standard basis of `N = sqrt2 A2^k`
//! (ambient Gram block `[[4,-2],[-2,4]]`) and multiplied by [`SCALE`], so every
//! vector of `N*` and of every lattice between `N` and `N*` is integral.

pub mod enumerate;
pub mod glue;
pub mod intmat;
pub mod isometry;

pub use enumerate::{
    block_theta_counts, coset_min_norm, counts_to_theta, fincke_pohst, short_vector_counts, ShortVectorCounts,
};
pub use glue::{build_base, embed_half, glue, GlueVectorMap, LeechConstruction};
pub use isometry::{tau_trivial_on_discriminant, Isometry};

use crate::error::{Error, Result};
use intmat::{det_bareiss, exact_sqrt, hnf, rational_inverse, smith, to_big};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};

pub const SCALE: i64 = 6;
const SCALE_SQ: i64 = SCALE * SCALE;

/// Scaled inner product: `36 <x|y>` for scaled coordinate vectors `x, y`.
pub fn scaled_inner(x: &[i64], y: &[i64]) -> i64 {
    x.chunks(2)
        .zip(y.chunks(2))
        .map(|(a, b)| 4 * a[0] * b[0] - 2 * a[0] * b[1] - 2 * a[1] * b[0] + 4 * a[1] * b[1])
        .sum()
}

/// Exact inner product of two scaled vectors.
pub fn inner(x: &[i64], y: &[i64]) -> Rational64 {
    Rational64::new(scaled_inner(x, y), SCALE_SQ)
}

pub fn norm(x: &[i64]) -> Rational64 {
    inner(x, x)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramLattice {
    blocks: usize,
    basis: Vec<Vec<i64>>,
}

impl GramLattice {
    /// Lattice generated by scaled vectors in `2 * blocks` ambient dimensions;
    /// the stored basis is the Hermite normal form.
    pub fn from_generators(blocks: usize, gens: &[Vec<i64>]) -> Result<Self> {
        let dim = 2 * blocks;
        if let Some(g) = gens.iter().find(|g| g.len() != dim) {
            return Err(Error::LengthMismatch { expected: dim, got: g.len() });
        }
        let h = hnf(&to_big(gens));
        let basis = h
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().ok_or_else(|| Error::Lattice("basis entry overflow".into()))).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        if basis.is_empty() {
            return Err(Error::Lattice("zero lattice".into()));
        }
        Ok(GramLattice { blocks, basis })
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn ambient_dim(&self) -> usize {
        2 * self.blocks
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn scaled_gram(&self) -> Vec<Vec<i64>> {
        self.basis.iter().map(|a| self.basis.iter().map(|b| scaled_inner(a, b)).collect()).collect()
    }

    pub fn gram(&self) -> Vec<Vec<Rational64>> {
        self.scaled_gram().into_iter().map(|r| r.into_iter().map(|x| Rational64::new(x, SCALE_SQ)).collect()).collect()
    }

    /// Gram matrix if every entry is an integer.
    pub fn integral_gram(&self) -> Option<Vec<Vec<i64>>> {
        self.scaled_gram()
            .into_iter()
            .map(|r| r.into_iter().map(|x| (x % SCALE_SQ == 0).then_some(x / SCALE_SQ)).collect())
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.integral_gram().is_some()
    }

    pub fn is_even(&self) -> bool {
        self.integral_gram().is_some_and(|g| (0..g.len()).all(|i| g[i][i] % 2 == 0))
    }

    pub fn det(&self) -> BigRational {
        let d = det_bareiss(&to_big(&self.scaled_gram()));
        BigRational::new(d, BigInt::from(SCALE_SQ).pow(self.rank() as u32))
    }

    /// Coefficients of `x` with respect to the basis, if `x` is in the lattice.
    pub fn coordinates(&self, x: &[i64]) -> Option<Vec<i64>> {
        if x.len() != self.ambient_dim() {
            return None;
        }
        let mut rem = x.to_vec();
        let mut coef = Vec::with_capacity(self.rank());
        for row in &self.basis {
            let p = row.iter().position(|&v| v != 0).expect("nonzero basis row");
            if rem[p] % row[p] != 0 {
                return None;
            }
            let q = rem[p] / row[p];
            for (r, b) in rem.iter_mut().zip(row) {
                *r -= q * b;
            }
            coef.push(q);
        }
        rem.iter().all(|&v| v == 0).then_some(coef)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.coordinates(x).is_some()
    }

    /// Rational coefficients of a vector in the real span of the lattice.
    pub fn span_coordinates(&self, x: &[i64]) -> Option<Vec<BigRational>> {
        let mut rem: Vec<BigRational> = x.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        let mut coef = Vec::with_capacity(self.rank());
        for row in &self.basis {
            let p = row.iter().position(|&v| v != 0).expect("nonzero basis row");
            let q = &rem[p] / BigRational::from_integer(row[p].into());
            for (r, &b) in rem.iter_mut().zip(row) {
                *r -= &q * BigRational::from_integer(b.into());
            }
            coef.push(q);
        }
        rem.iter().all(Zero::is_zero).then_some(coef)
    }

    pub fn contains_lattice(&self, other: &GramLattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// `[super : self]`, for a full-rank sublattice of `sup`.
    pub fn index_in(&self, sup: &GramLattice) -> Result<BigInt> {
        if self.rank() != sup.rank() || !sup.contains_lattice(self) {
            return Err(Error::Lattice("not a finite-index sublattice".into()));
        }
        let ratio = self.det() / sup.det();
        if !ratio.is_integer() {
            return Err(Error::Lattice("non-integral determinant ratio".into()));
        }
        exact_sqrt(&ratio.to_integer()).ok_or_else(|| Error::Lattice("index is not an integer".into()))
    }

    /// The dual lattice inside the real span of `self`.
    pub fn dual(&self) -> Result<GramLattice> {
        GramLattice::from_generators(self.blocks, &self.dual_basis()?)
    }

    /// Invariant factors (> 1) of the discriminant group and dual vectors
    /// generating the corresponding cyclic factors.
    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        let g = self.integral_gram().ok_or_else(|| Error::Lattice("lattice is not integral".into()))?;
        let s = smith(&to_big(&g));
        let dual_basis = self.dual_basis()?;
        let mut invariants = Vec::new();
        let mut generators = Vec::new();
        for (d, row) in s.diagonal.iter().zip(&s.col_transform_inverse) {
            if d.is_zero() {
                return Err(Error::Lattice("degenerate Gram matrix".into()));
            }
            if d.is_one() {
                continue;
            }
            invariants.push(d.to_u64().ok_or_else(|| Error::Lattice("invariant overflow".into()))?);
            let mut v = vec![0i64; self.ambient_dim()];
            for (c, b) in row.iter().zip(&dual_basis) {
                let c = c.to_i64().ok_or_else(|| Error::Lattice("generator overflow".into()))?;
                for (x, y) in v.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            generators.push(v);
        }
        Ok(DiscriminantGroup { invariants, generators })
    }

    /// Dual basis `b*_i` with `<b*_i | b_j> = delta_ij`.
    pub fn dual_basis(&self) -> Result<Vec<Vec<i64>>> {
        let g: Vec<Vec<BigRational>> = self
            .scaled_gram()
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::new(x.into(), SCALE_SQ.into())).collect())
            .collect();
        let ginv = rational_inverse(&g).ok_or_else(|| Error::Lattice("degenerate Gram matrix".into()))?;
        ginv.iter()
            .map(|row| {
                (0..self.ambient_dim())
                    .map(|c| {
                        let v: BigRational =
                            row.iter().zip(&self.basis).map(|(w, b)| w * BigRational::from_integer(b[c].into())).sum();
                        if !v.is_integer() {
                            return Err(Error::Lattice("dual not contained in the scaled coordinate grid".into()));
                        }
                        v.to_integer().to_i64().ok_or_else(|| Error::Lattice("dual entry overflow".into()))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("lattice v1\nblocks {}\nrank {}\n", self.blocks, self.rank());
        for r in &self.basis {
            s += &r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        if lines.next() != Some("lattice v1") {
            return Err(Error::Parse("missing lattice header".into()));
        }
        let field = |l: Option<&str>, key: &str| -> Result<usize> {
            l.and_then(|l| l.strip_prefix(key))
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("missing {key}")))
        };
        let blocks = field(lines.next(), "blocks")?;
        let rank = field(lines.next(), "rank")?;
        let rows = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("bad entry {t:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != rank {
            return Err(Error::Parse(format!("expected {rank} rows, found {}", rows.len())));
        }
        GramLattice::from_generators(blocks, &rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    pub invariants: Vec<u64>,
    pub generators: Vec<Vec<i64>>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> u128 {
        self.invariants.iter().map(|&d| d as u128).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_lattice_invariants() {
        let n = build_base(12);
        assert_eq!(n.rank(), 24);
        assert_eq!(n.det(), BigRational::from_integer(BigInt::from(12).pow(12)));
        assert!(n.is_even());
        let one = build_base(1);
        assert_eq!(one.det(), BigRational::from_integer(12.into()));
        let dual = one.dual().unwrap();
        assert_eq!(one.index_in(&dual).unwrap(), BigInt::from(12));
        let disc = n.discriminant_group().unwrap();
        assert_eq!(disc.order(), 12u128.pow(12));
    }

    #[test]
    fn membership_and_coordinates() {
        let n = build_base(2);
        assert!(n.contains(&[6, 0, 0, -12]));
        assert!(!n.contains(&[3, 0, 0, 0]));
        assert_eq!(n.coordinates(&[6, 12, 0, 6]), Some(vec![1, 2, 0, 1]));
        assert_eq!(norm(&[6, 0, 0, 0]), Rational64::from_integer(4));
        assert_eq!(norm(&[4, 2, 0, 0]), Rational64::new(4, 3));
    }

    #[test]
    fn text_round_trip() {
        let n = build_base(3);
        assert_eq!(GramLattice::from_text(&n.to_text()).unwrap(), n);
        assert!(GramLattice::from_text("lattice v1\nblocks 1\nrank 2\n1 0\n").is_err());
    }

    #[test]
    fn discriminant_generators_are_dual_vectors() {
        let n = build_base(2);
        let dual = n.dual().unwrap();
        let disc = n.discriminant_group().unwrap();
        for (g, &d) in disc.generators.iter().zip(&disc.invariants) {
            assert!(dual.contains(g));
            let dg: Vec<i64> = g.iter().map(|x| x * d as i64).collect();
            assert!(n.contains(&dg));
        }
    }
}
