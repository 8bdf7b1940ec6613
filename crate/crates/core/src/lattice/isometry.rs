//! Integer isometries of the ambient `sqrt2 A2^k`, acting on scaled row vectors.

use super::{scaled_inner, GramLattice};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `x -> x M` on scaled coordinate row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    matrix: Vec<Vec<i64>>,
}

impl Isometry {
    pub fn from_matrix(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if !n.is_multiple_of(2) || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Isometry("matrix must be square of even size".into()));
        }
        let iso = Isometry { matrix };
        if !iso.preserves_form() {
            return Err(Error::Isometry("matrix does not preserve the ambient form".into()));
        }
        Ok(iso)
    }

    pub fn identity(dim: usize) -> Self {
        Isometry { matrix: (0..dim).map(|i| (0..dim).map(|j| (i == j) as i64).collect()).collect() }
    }

    /// Order-3 rotation `(a, b) -> (-b, a - b)` on every block.
    pub fn tau(blocks: usize) -> Self {
        let mut m = vec![vec![0; 2 * blocks]; 2 * blocks];
        for b in 0..blocks {
            m[2 * b][2 * b + 1] = 1;
            m[2 * b + 1][2 * b] = -1;
            m[2 * b + 1][2 * b + 1] = -1;
        }
        Isometry { matrix: m }
    }

    /// Block `i` moves to block `perm[i]`, then block `j` is multiplied by `signs[j]`.
    pub fn signed_block_permutation(perm: &[usize], signs: &[i64]) -> Self {
        let n = 2 * perm.len();
        let mut m = vec![vec![0; n]; n];
        for (i, &t) in perm.iter().enumerate() {
            for k in 0..2 {
                m[2 * i + k][2 * t + k] = signs[t];
            }
        }
        Isometry { matrix: m }
    }

    /// `h`: swap block `i` with block `i + 6`, then negate blocks 7-12.
    pub fn h() -> Self {
        let perm: Vec<usize> = (0..12).map(|i| (i + 6) % 12).collect();
        let signs: Vec<i64> = (0..12).map(|i| if i < 6 { 1 } else { -1 }).collect();
        Self::signed_block_permutation(&perm, &signs)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let n = self.dim();
        let mut out = vec![0; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                for (o, &m) in out.iter_mut().zip(&self.matrix[i]) {
                    *o += xi * m;
                }
            }
        }
        out
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Isometry) -> Isometry {
        Isometry { matrix: self.matrix.iter().map(|r| next.apply(r)).collect() }
    }

    pub fn pow(&self, k: u32) -> Isometry {
        (0..k).fold(Isometry::identity(self.dim()), |acc, _| acc.then(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == Isometry::identity(self.dim())
    }

    /// `M G M^T = G` for the ambient block form.
    pub fn preserves_form(&self) -> bool {
        let n = self.dim();
        let e = |i: usize| -> Vec<i64> { (0..n).map(|j| (i == j) as i64).collect() };
        (0..n).all(|i| (i..n).all(|j| scaled_inner(&self.matrix[i], &self.matrix[j]) == scaled_inner(&e(i), &e(j))))
    }

    pub fn image(&self, lat: &GramLattice) -> Result<GramLattice> {
        if self.dim() != lat.ambient_dim() {
            return Err(Error::LengthMismatch { expected: lat.ambient_dim(), got: self.dim() });
        }
        GramLattice::from_generators(lat.blocks(), &lat.basis().iter().map(|b| self.apply(b)).collect::<Vec<_>>())
    }

    pub fn preserves(&self, lat: &GramLattice) -> Result<bool> {
        Ok(self.image(lat)? == *lat)
    }

    /// Norms of random integer combinations of the basis are preserved.
    pub fn spot_check_norms(&self, lat: &GramLattice, samples: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).all(|_| {
            let mut v = vec![0i64; lat.ambient_dim()];
            for b in lat.basis() {
                let c: i64 = rng.gen_range(-3..=3);
                for (x, y) in v.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            let w = self.apply(&v);
            scaled_inner(&v, &v) == scaled_inner(&w, &w)
        })
    }

    /// `M - I` is invertible, i.e. there is no nonzero fixed vector.
    pub fn fixed_point_free(&self) -> bool {
        let n = self.dim();
        let m: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| self.matrix[i][j] - (i == j) as i64).collect()).collect();
        !num_traits::Zero::is_zero(&super::intmat::det_bareiss(&super::intmat::to_big(&m)))
    }
}

/// `(1 - g) L* ⊆ L`, i.e. `g` acts trivially on the discriminant group.
pub fn tau_trivial_on_discriminant(lat: &GramLattice, g: &Isometry) -> Result<bool> {
    for y in lat.dual_basis()? {
        let gy = g.apply(&y);
        let diff: Vec<i64> = y.iter().zip(&gy).map(|(a, b)| a - b).collect();
        if !lat.contains(&diff) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LeechConstruction;

    #[test]
    fn tau_algebra() {
        let t = Isometry::tau(12);
        assert!(t.preserves_form());
        assert!(t.pow(3).is_identity());
        assert!(!t.is_identity());
        assert!(t.fixed_point_free());
        // tau^2 + tau + 1 = 0
        let (t1, t2) = (t.matrix(), t.pow(2));
        for i in 0..24 {
            for j in 0..24 {
                assert_eq!(t1[i][j] + t2.matrix()[i][j] + (i == j) as i64, 0);
            }
        }
    }

    #[test]
    fn h_and_tau_commute_and_preserve_lattices() {
        let k = LeechConstruction::new().unwrap();
        let (t, h) = (Isometry::tau(12), Isometry::h());
        assert!(h.preserves_form());
        assert_eq!(h.then(&t), t.then(&h));
        let minus = Isometry::signed_block_permutation(&(0..12).collect::<Vec<_>>(), &[-1; 12]);
        assert_eq!(h.pow(2), minus);
        for lat in [&k.leech, &k.lc] {
            assert!(t.preserves(lat).unwrap());
            assert!(h.preserves(lat).unwrap());
            assert!(t.spot_check_norms(lat, 1000, 7));
            assert!(h.spot_check_norms(lat, 1000, 8));
        }
        assert_eq!(h.image(&k.k12_first).unwrap(), k.k12_second);
        assert_eq!(h.image(&k.k12_second).unwrap(), k.k12_first);
    }

    #[test]
    fn tau_acts_trivially_on_k12_discriminant() {
        let k = LeechConstruction::new().unwrap();
        assert!(tau_trivial_on_discriminant(&k.k12, &Isometry::tau(6)).unwrap());
        assert!(tau_trivial_on_discriminant(&k.k12, &Isometry::identity(12)).unwrap());
        assert!(tau_trivial_on_discriminant(&k.leech, &Isometry::tau(12)).unwrap());
        // -1 acts as -1 on the 3-group K12*/K12
        let minus = Isometry::signed_block_permutation(&[0, 1, 2, 3, 4, 5], &[-1; 6]);
        assert!(!tau_trivial_on_discriminant(&k.k12, &minus).unwrap());
    }

    #[test]
    fn rejects_non_isometry() {
        let mut m = Isometry::identity(2).matrix().to_vec();
        m[0][1] = 1;
        assert!(Isometry::from_matrix(m).is_err());
    }
}
