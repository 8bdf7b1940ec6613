//! Non-degenerate quadratic spaces over F3 and their orthogonal groups,
//! realized as permutation groups on all `3^n` vectors.
//!
//! The polar form is the unhalved polarization `B(x, y) = q(x+y) - q(x) - q(y)`,
//! so `B(x, x) = 2 q(x)` and reflections read `x - (B(x,v)/q(v)) v`.

pub mod perm;

pub use perm::{Perm, PermGroupBSGS, SchreierSimsOptions};

use crate::arith::{FiniteField, F3};
use crate::error::{Error, Result};
use crate::fusion::{FusionRing, ModuleLabel};
use crate::ledger::{orthogonal_order, WittSign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest dimension handled (`3^8 = 6561` points).
pub const MAX_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSpaceF3 {
    gram: Vec<Vec<F3>>,
    q_table: Vec<F3>,
}

impl QuadSpaceF3 {
    pub fn new(gram: Vec<Vec<F3>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 || n > MAX_DIM {
            return Err(Error::CapExceeded { what: "quadratic space dimension", needed: n as u128, cap: MAX_DIM as u128 });
        }
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::Geometry("Gram matrix is not square".into()));
        }
        if (0..n).any(|i| (0..n).any(|j| gram[i][j] != gram[j][i])) {
            return Err(Error::Geometry("Gram matrix is not symmetric".into()));
        }
        if crate::arith::linalg::rank(&gram) != n {
            return Err(Error::Geometry("polar form is degenerate".into()));
        }
        let mut s = QuadSpaceF3 { gram, q_table: Vec::new() };
        s.q_table = (0..s.num_points()).map(|p| s.q(&s.vector(p as u16))).collect();
        Ok(s)
    }

    /// `(m - 1)` hyperbolic planes plus a hyperbolic (plus) or anisotropic (minus) plane.
    pub fn standard(m: usize, sign: WittSign) -> Result<Self> {
        let n = 2 * m;
        let mut g = vec![vec![F3::ZERO; n]; n];
        for k in 0..m {
            let (a, b) = (2 * k, 2 * k + 1);
            if k + 1 == m && sign == WittSign::Minus {
                // q = x^2 + y^2
                g[a][a] = F3::TWO;
                g[b][b] = F3::TWO;
            } else {
                g[a][b] = F3::ONE;
                g[b][a] = F3::ONE;
            }
        }
        Self::new(g)
    }

    /// `R(W)` in fusion coordinates, with polar form taken from the closed
    /// bilinear formulas on unit vectors.
    pub fn from_fusion(ring: &FusionRing) -> Result<Self> {
        let basis: Vec<ModuleLabel> = (0..8)
            .map(|k| {
                let mut c = [F3::ZERO; 8];
                c[k] = F3::ONE;
                ModuleLabel::from_coords(&c)
            })
            .collect();
        let gram = basis.iter().map(|a| basis.iter().map(|b| ring.bform(a, b)).collect()).collect();
        Self::new(gram)
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<F3>] {
        &self.gram
    }

    pub fn num_points(&self) -> usize {
        3usize.pow(self.dim() as u32)
    }

    pub fn vector(&self, mut p: u16) -> Vec<F3> {
        (0..self.dim())
            .map(|_| {
                let d = F3::new((p % 3) as i64);
                p /= 3;
                d
            })
            .collect()
    }

    pub fn index(&self, v: &[F3]) -> u16 {
        v.iter().rev().fold(0u16, |acc, c| acc * 3 + c.value() as u16)
    }

    pub fn unit(&self, k: usize) -> Vec<F3> {
        (0..self.dim()).map(|i| if i == k { F3::ONE } else { F3::ZERO }).collect()
    }

    pub fn b(&self, x: &[F3], y: &[F3]) -> F3 {
        let mut s = F3::ZERO;
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                s += xi * self.gram[i][j] * yj;
            }
        }
        s
    }

    /// `q(x) = B(x, x) / 2`.
    pub fn q(&self, x: &[F3]) -> F3 {
        F3::TWO * self.b(x, x)
    }

    pub fn q_point(&self, p: u16) -> F3 {
        self.q_table[p as usize]
    }

    pub fn singular_count(&self) -> usize {
        self.q_table.iter().skip(1).filter(|q| q.is_zero()).count()
    }

    /// Type from the nonzero singular count `(q^m - eps)(q^{m-1} + eps)`.
    pub fn witt_sign(&self) -> Option<WittSign> {
        if !self.dim().is_multiple_of(2) {
            return None;
        }
        let m = (self.dim() / 2) as u32;
        let count = self.singular_count() as i64;
        [WittSign::Plus, WittSign::Minus].into_iter().find(|s| {
            let e = s.epsilon() as i64;
            (3i64.pow(m) - e) * (3i64.pow(m - 1) + e) == count
        })
    }

    pub fn reflect(&self, v: &[F3], x: &[F3]) -> Result<Vec<F3>> {
        let qv = self.q(v);
        let inv = qv.inv().ok_or(Error::IsotropicVector)?;
        let c = self.b(x, v) * inv;
        Ok(x.iter().zip(v).map(|(&a, &b)| a - c * b).collect())
    }

    pub fn reflection(&self, v: &[F3]) -> Result<Perm> {
        if self.q(v).is_zero() {
            return Err(Error::IsotropicVector);
        }
        let images = (0..self.num_points())
            .map(|p| Ok(self.index(&self.reflect(v, &self.vector(p as u16))?)))
            .collect::<Result<Vec<u16>>>()?;
        Perm::from_images(images)
    }

    pub fn minus_one(&self) -> Perm {
        let images = (0..self.num_points())
            .map(|p| self.index(&self.vector(p as u16).iter().map(|&x| -x).collect::<Vec<_>>()))
            .collect();
        Perm::from_images(images).expect("negation is a bijection")
    }

    /// Rows are the images of the unit vectors.
    pub fn matrix_of(&self, g: &Perm) -> Vec<Vec<F3>> {
        (0..self.dim()).map(|k| self.vector(g.apply(self.index(&self.unit(k))))).collect()
    }

    /// `g` is linear and preserves `q`, checked on every vector.
    pub fn is_isometry(&self, g: &Perm) -> bool {
        if g.degree() != self.num_points() {
            return false;
        }
        let m = self.matrix_of(g);
        (0..self.num_points()).all(|p| {
            let x = self.vector(p as u16);
            let mut lin = vec![F3::ZERO; self.dim()];
            for (c, row) in x.iter().zip(&m) {
                for (l, &r) in lin.iter_mut().zip(row) {
                    *l += *c * r;
                }
            }
            let gp = g.apply(p as u16);
            self.index(&lin) == gp && self.q_point(gp) == self.q_point(p as u16)
        })
    }

    /// An orthogonal basis of anisotropic vectors.
    pub fn orthogonal_anisotropic_basis(&self) -> Result<Vec<Vec<F3>>> {
        let mut basis: Vec<Vec<F3>> = Vec::new();
        while basis.len() < self.dim() {
            let next = (1..self.num_points()).map(|p| self.vector(p as u16)).find(|x| {
                !self.q(x).is_zero() && basis.iter().all(|b| self.b(x, b).is_zero())
            });
            basis.push(next.ok_or_else(|| Error::Geometry("no anisotropic vector in a perp".into()))?);
        }
        Ok(basis)
    }

    pub fn anisotropic_vectors(&self, norm: Option<F3>) -> Vec<Vec<F3>> {
        (1..self.num_points())
            .filter(|&p| {
                let q = self.q_point(p as u16);
                !q.is_zero() && norm.is_none_or(|n| q == n)
            })
            .map(|p| self.vector(p as u16))
            .collect()
    }
}

/// Which subgroup of `O(q)` to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrthogonalSubgroup {
    Full,
    /// Kernel of the spinor norm, index 2.
    SpinorKernel,
    /// Joint kernel of spinor norm and Dickson invariant, index 4.
    Omega,
}

impl OrthogonalSubgroup {
    pub fn index(self) -> u128 {
        match self {
            OrthogonalSubgroup::Full => 1,
            OrthogonalSubgroup::SpinorKernel => 2,
            OrthogonalSubgroup::Omega => 4,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            OrthogonalSubgroup::Full => "full",
            OrthogonalSubgroup::SpinorKernel => "spinor-kernel",
            OrthogonalSubgroup::Omega => "omega",
        }
    }
}

/// Closed-form order of the requested subgroup (even dimension only).
pub fn expected_order(space: &QuadSpaceF3, which: OrthogonalSubgroup) -> Result<u128> {
    let sign = space.witt_sign().ok_or_else(|| Error::Geometry("type is undetermined".into()))?;
    let full = orthogonal_order((space.dim() / 2) as u32, 3, sign)?
        .to_u128()
        .ok_or_else(|| Error::Geometry("order overflow".into()))?;
    if space.dim() == 2 && which != OrthogonalSubgroup::Full {
        // the quotient by Omega need not be of order 4 in dimension 2
        return Err(Error::Geometry("subgroups are only tabulated for dimension >= 4".into()));
    }
    Ok(full / which.index())
}

fn random_generator(space: &QuadSpaceF3, which: OrthogonalSubgroup, rng: &mut ChaCha8Rng, any: &[Vec<F3>], ones: &[Vec<F3>]) -> Result<Perm> {
    match which {
        OrthogonalSubgroup::Full => space.reflection(&any[rng.gen_range(0..any.len())]),
        OrthogonalSubgroup::SpinorKernel => space.reflection(&ones[rng.gen_range(0..ones.len())]),
        OrthogonalSubgroup::Omega => {
            let a = space.reflection(&ones[rng.gen_range(0..ones.len())])?;
            let b = space.reflection(&ones[rng.gen_range(0..ones.len())])?;
            Ok(a.then(&b))
        }
    }
}

/// Generated by random reflections (or products of two reflections with
/// `q(v) = 1`) until the order reaches the closed form; certified by a
/// deterministic Schreier-generator pass.
pub fn build_orthogonal_group(space: &QuadSpaceF3, which: OrthogonalSubgroup, seed: u64) -> Result<PermGroupBSGS> {
    let target = expected_order(space, which)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let any = space.anisotropic_vectors(None);
    let ones = space.anisotropic_vectors(Some(F3::ONE));
    let mut gens = Vec::new();
    let opts = SchreierSimsOptions {
        seed,
        target_order: Some(target),
        patience: 30,
        base_prefix: (0..space.dim()).map(|k| space.index(&space.unit(k))).collect(),
        faithful_prefix: true,
    };
    for _round in 0..8 {
        while gens.len() < 4 + 2 * _round {
            gens.push(random_generator(space, which, &mut rng, &any, &ones)?);
        }
        let g = PermGroupBSGS::schreier_sims(space.num_points(), gens.clone(), &opts)?;
        if g.order() == target {
            return Ok(g);
        }
    }
    Err(Error::OrderMismatch { computed: "below target".into(), expected: target.to_string() })
}

/// Reflection factorization of an isometry and its invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorData {
    /// `g = r_1 r_2 ... r_k` with `r_k` applied first.
    pub reflections: Vec<Vec<F3>>,
    pub dickson: bool,
    /// `prod q(v_i)` is a non-square.
    pub spinor_nonsquare: bool,
}

impl SpinorData {
    pub fn is_trivial(&self) -> bool {
        !self.dickson && !self.spinor_nonsquare
    }
}

/// Constructive Cartan-Dieudonne along an orthogonal anisotropic basis: at step
/// `k` the current map fixes `x_1..x_{k-1}`; `y = g x_k` is sent back to `x_k`
/// by `sigma_{y - x_k}` when `q(y - x_k) != 0`, else by `sigma_{x_k} sigma_{y + x_k}`.
pub fn dickson_spinor(space: &QuadSpaceF3, g: &Perm) -> Result<SpinorData> {
    if !space.is_isometry(g) {
        return Err(Error::NotAnIsometry);
    }
    let basis = space.orthogonal_anisotropic_basis()?;
    let mut cur = g.clone();
    let mut used: Vec<Vec<F3>> = Vec::new();
    for x in &basis {
        let y = space.vector(cur.apply(space.index(x)));
        if y == *x {
            continue;
        }
        let w: Vec<F3> = y.iter().zip(x).map(|(&a, &b)| a - b).collect();
        let steps: Vec<Vec<F3>> = if !space.q(&w).is_zero() {
            vec![w]
        } else {
            vec![y.iter().zip(x).map(|(&a, &b)| a + b).collect(), x.clone()]
        };
        for v in steps {
            cur = cur.then(&space.reflection(&v)?);
            used.push(v);
        }
    }
    if !cur.is_identity() {
        return Err(Error::Isometry("Cartan-Dieudonne reduction did not terminate at the identity".into()));
    }
    // cur = s_k ... s_1 g = 1, so g = s_1 ... s_k with s_k applied first
    let mut rebuilt = Perm::identity(space.num_points());
    for v in used.iter().rev() {
        rebuilt = rebuilt.then(&space.reflection(v)?);
    }
    if rebuilt != *g {
        return Err(Error::Isometry("reflection product does not reproduce the element".into()));
    }
    let norm = used.iter().fold(F3::ONE, |acc, v| acc * space.q(v));
    Ok(SpinorData { dickson: used.len() % 2 == 1, spinor_nonsquare: norm.is_nonsquare(), reflections: used })
}

/// All nonzero singular lines, each as its two nonzero points.
pub fn singular_lines(space: &QuadSpaceF3) -> Vec<[u16; 2]> {
    (1..space.num_points() as u16)
        .filter(|&p| space.q_point(p).is_zero())
        .filter_map(|p| {
            let neg = space.index(&space.vector(p).iter().map(|&x| -x).collect::<Vec<_>>());
            (p < neg).then_some([p, neg])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LeechConstruction;

    #[test]
    fn reflection_properties() {
        let s = QuadSpaceF3::standard(2, WittSign::Minus).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for v in s.anisotropic_vectors(None).iter().take(12) {
            let neg: Vec<F3> = v.iter().map(|&x| -x).collect();
            assert_eq!(s.reflect(v, v).unwrap(), neg);
            for _ in 0..100 {
                let x = s.vector(rng.gen_range(0..s.num_points() as u16));
                let r = s.reflect(v, &x).unwrap();
                assert_eq!(s.q(&r), s.q(&x));
                if s.b(&x, v).is_zero() {
                    assert_eq!(r, x);
                }
            }
            let p = s.reflection(v).unwrap();
            assert!(p.then(&p).is_identity());
            assert!(s.is_isometry(&p));
        }
        let singular = (1..s.num_points() as u16).map(|p| s.vector(p)).find(|x| s.q(x).is_zero()).unwrap();
        assert_eq!(s.reflect(&singular, &singular), Err(Error::IsotropicVector));
    }

    #[test]
    fn singular_counts_identify_type() {
        for m in 1..=4 {
            for sign in [WittSign::Plus, WittSign::Minus] {
                let s = QuadSpaceF3::standard(m, sign).unwrap();
                assert_eq!(s.witt_sign(), Some(sign), "m = {m}");
            }
        }
        assert_eq!(QuadSpaceF3::standard(4, WittSign::Plus).unwrap().singular_count(), 2240);
        assert_eq!(QuadSpaceF3::standard(4, WittSign::Minus).unwrap().singular_count(), 2132);
        assert_eq!(QuadSpaceF3::standard(3, WittSign::Minus).unwrap().singular_count(), 224);
    }

    #[test]
    fn small_orthogonal_groups_match_closed_form() {
        for m in 1..=3 {
            for sign in [WittSign::Plus, WittSign::Minus] {
                let s = QuadSpaceF3::standard(m, sign).unwrap();
                let g = build_orthogonal_group(&s, OrthogonalSubgroup::Full, 1).unwrap();
                assert_eq!(g.order(), orthogonal_order(m as u32, 3, sign).unwrap().to_u128().unwrap());
                assert!(g.strong_generators().iter().all(|p| s.is_isometry(p)));
            }
        }
        // O+_2(3): identity, -1 and two reflections
        let s = QuadSpaceF3::standard(1, WittSign::Plus).unwrap();
        assert_eq!(build_orthogonal_group(&s, OrthogonalSubgroup::Full, 0).unwrap().order(), 4);
    }

    #[test]
    fn identity_generators_give_trivial_group() {
        let g = PermGroupBSGS::schreier_sims(9, vec![Perm::identity(9)], &Default::default()).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn invariants_of_simple_elements() {
        let s = QuadSpaceF3::standard(2, WittSign::Plus).unwrap();
        let id = dickson_spinor(&s, &Perm::identity(s.num_points())).unwrap();
        assert!(id.is_trivial());
        let v1 = s.anisotropic_vectors(Some(F3::ONE))[0].clone();
        let v2 = s.anisotropic_vectors(Some(F3::TWO))[0].clone();
        let r1 = dickson_spinor(&s, &s.reflection(&v1).unwrap()).unwrap();
        assert!(r1.dickson && !r1.spinor_nonsquare);
        let r2 = dickson_spinor(&s, &s.reflection(&v2).unwrap()).unwrap();
        assert!(r2.dickson && r2.spinor_nonsquare);
        let both = s.reflection(&v1).unwrap().then(&s.reflection(&v2).unwrap());
        let r12 = dickson_spinor(&s, &both).unwrap();
        assert!(!r12.dickson && r12.spinor_nonsquare);
        let mut bad = Perm::identity(s.num_points()).images().to_vec();
        bad.swap(1, 2);
        assert_eq!(dickson_spinor(&s, &Perm::from_images(bad).unwrap()), Err(Error::NotAnIsometry));
    }

    #[test]
    fn fusion_space_is_minus_type() {
        let k = LeechConstruction::new().unwrap();
        let ring = FusionRing::new(&k.k12).unwrap();
        let s = QuadSpaceF3::from_fusion(&ring).unwrap();
        assert_eq!(s.witt_sign(), Some(WittSign::Minus));
        for m in ModuleLabel::all() {
            assert_eq!(s.q_point(m.index() as u16), ring.qform(&m).unwrap());
        }
        let minus = dickson_spinor(&s, &s.minus_one()).unwrap();
        assert!(!minus.dickson && minus.spinor_nonsquare);
        assert_eq!(minus.reflections.len(), 8);
        assert_eq!(singular_lines(&s).len(), 1066);
    }
}
