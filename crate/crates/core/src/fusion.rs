//! The fusion group `R(W)` of the `3^8` irreducible modules `S^a[x]`, `T^a[x;i]`
//! of the fixed-point subalgebra of `V_K12` under `tau`, with its quadratic form.
//!
//! Labels `a` live in fixed F3^6 coordinates for `K12*/K12`: `a_i` is the F3
//! glue label on block `i`, with representative `sum_i rep3(a_i)`.
//!
//! The map `S^a[x] -> (a, x, 0)`, `T^b[y;i] -> (-i b, i y, i)` is an isomorphism
//! of `R(W)` onto F3^8; in these coordinates `q(u, v, t) = -u.u - t v + 2 t^2`.

use crate::arith::{FiniteField, F3};
use crate::error::{Error, Result};
use crate::lattice::{scaled_inner, GramLattice, LeechConstruction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

pub type Label6 = [F3; 6];
pub type Coords = [F3; 8];

pub const NUM_LABELS: usize = 6561;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleLabel {
    S { a: Label6, x: F3 },
    T { a: Label6, x: F3, i: F3 },
}

fn neg6(a: &Label6) -> Label6 {
    a.map(|v| -v)
}

fn add6(a: &Label6, b: &Label6) -> Label6 {
    std::array::from_fn(|k| a[k] + b[k])
}

fn scale6(c: F3, a: &Label6) -> Label6 {
    a.map(|v| c * v)
}

impl ModuleLabel {
    pub const IDENTITY: ModuleLabel = ModuleLabel::S { a: [F3::ZERO; 6], x: F3::ZERO };

    pub fn s(a: Label6, x: F3) -> Self {
        ModuleLabel::S { a, x }
    }

    pub fn t(a: Label6, x: F3, i: F3) -> Result<Self> {
        if i.is_zero() {
            return Err(Error::Parse("twisted label needs i in {1, 2}".into()));
        }
        Ok(ModuleLabel::T { a, x, i })
    }

    pub fn coords(&self) -> Coords {
        let (u, v, t) = match *self {
            ModuleLabel::S { a, x } => (a, x, F3::ZERO),
            ModuleLabel::T { a, x, i } => (scale6(-i, &a), i * x, i),
        };
        let mut c = [F3::ZERO; 8];
        c[..6].copy_from_slice(&u);
        c[6] = v;
        c[7] = t;
        c
    }

    pub fn from_coords(c: &Coords) -> Self {
        let u: Label6 = std::array::from_fn(|k| c[k]);
        let (v, t) = (c[6], c[7]);
        if t.is_zero() {
            ModuleLabel::S { a: u, x: v }
        } else {
            // u = -t b and t^2 = 1
            ModuleLabel::T { a: scale6(-t, &u), x: t * v, i: t }
        }
    }

    pub fn index(&self) -> usize {
        self.coords().iter().rev().fold(0, |acc, c| acc * 3 + c.value() as usize)
    }

    pub fn from_index(mut n: usize) -> Self {
        let c: Coords = std::array::from_fn(|_| {
            let d = F3::new((n % 3) as i64);
            n /= 3;
            d
        });
        Self::from_coords(&c)
    }

    pub fn all() -> Vec<ModuleLabel> {
        (0..NUM_LABELS).map(Self::from_index).collect()
    }

    /// `lambda m` as an iterated fusion product.
    pub fn scalar_mul(&self, lambda: F3) -> Self {
        match lambda.value() {
            0 => Self::IDENTITY,
            1 => *self,
            _ => fuse(self, self),
        }
    }

    pub fn a(&self) -> &Label6 {
        match self {
            ModuleLabel::S { a, .. } | ModuleLabel::T { a, .. } => a,
        }
    }
}

/// Fusion product, implementing the four rules literally:
/// `S^a[x] + S^b[y] = S^{a+b}[x+y]`, `S^a[x] + T^b[y;i] = T^{b-ia}[y+ix;i]`,
/// `T^a[x;1] + T^b[y;2] = S^{b-a}[x-y]`, `T^a[x;i] + T^b[y;i] = T^{-(a+b)}[-(x+y);2i]`.
pub fn fuse(m1: &ModuleLabel, m2: &ModuleLabel) -> ModuleLabel {
    use ModuleLabel::*;
    match (*m1, *m2) {
        (S { a, x }, S { a: b, x: y }) => S { a: add6(&a, &b), x: x + y },
        (S { a, x }, T { a: b, x: y, i }) | (T { a: b, x: y, i }, S { a, x }) => {
            T { a: add6(&b, &scale6(-i, &a)), x: y + i * x, i }
        }
        (T { a, x, i }, T { a: b, x: y, i: j }) if i == j => {
            T { a: neg6(&add6(&a, &b)), x: -(x + y), i: F3::TWO * i }
        }
        (T { a, x, i }, T { a: b, x: y, .. }) => {
            // i != j: orient as T^a[x;1] + T^b[y;2]
            if i == F3::ONE {
                S { a: add6(&b, &neg6(&a)), x: x - y }
            } else {
                S { a: add6(&a, &neg6(&b)), x: y - x }
            }
        }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = |a: &Label6| a.iter().map(|v| v.symbol()).collect::<String>();
        match self {
            ModuleLabel::S { a, x } => write!(f, "S:{}:{}", digits(a), x.symbol()),
            ModuleLabel::T { a, x, i } => write!(f, "T:{}:{}:{}", digits(a), x.symbol(), i.symbol()),
        }
    }
}

impl FromStr for ModuleLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad module label {s:?}"));
        let digit = |t: &str| -> Result<F3> {
            let mut cs = t.chars();
            match (cs.next().and_then(F3::from_symbol), cs.next()) {
                (Some(v), None) => Ok(v),
                _ => Err(bad()),
            }
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        let a = |t: &str| -> Result<Label6> {
            let v: Vec<F3> = t.chars().map(|c| F3::from_symbol(c).ok_or_else(bad)).collect::<Result<_>>()?;
            v.try_into().map_err(|_| bad())
        };
        match parts.as_slice() {
            ["S", av, x] => Ok(ModuleLabel::S { a: a(av)?, x: digit(x)? }),
            ["T", av, x, i] => ModuleLabel::t(a(av)?, digit(x)?, digit(i)?),
            _ => Err(bad()),
        }
    }
}

fn label6_index(a: &Label6) -> usize {
    a.iter().rev().fold(0, |acc, c| acc * 3 + c.value() as usize)
}

pub fn label6_from_index(mut n: usize) -> Label6 {
    std::array::from_fn(|_| {
        let d = F3::new((n % 3) as i64);
        n /= 3;
        d
    })
}

/// `K12*/K12` representatives and the forms on `R(W)` computed from their norms.
#[derive(Clone, Debug)]
pub struct FusionRing {
    reps: Vec<Vec<i64>>,
    /// `3 |rep|^2`
    three_norm: Vec<i64>,
}

impl FusionRing {
    /// Uses the fixed representatives `sum_i rep3(a_i)`.
    pub fn new(k12: &GramLattice) -> Result<Self> {
        let reps = (0..729).map(|n| LeechConstruction::k12_dual_rep(&label6_from_index(n))).collect();
        Self::with_representatives(k12, reps)
    }

    /// Any representatives of the 729 classes, indexed by label.
    pub fn with_representatives(k12: &GramLattice, reps: Vec<Vec<i64>>) -> Result<Self> {
        if reps.len() != 729 {
            return Err(Error::LengthMismatch { expected: 729, got: reps.len() });
        }
        let dual = k12.dual()?;
        for (n, r) in reps.iter().enumerate() {
            if !dual.contains(r) || label6_index(&LeechConstruction::k12_label(r).try_into().expect("six blocks")) != n {
                return Err(Error::Lattice(format!("bad representative for class {n}")));
            }
        }
        let three_norm = reps
            .iter()
            .map(|r| {
                let s = scaled_inner(r, r);
                if s % 12 != 0 {
                    return Err(Error::FormMismatch("3|a|^2 is not an integer".into()));
                }
                Ok(s / 12)
            })
            .collect::<Result<_>>()?;
        Ok(FusionRing { reps, three_norm })
    }

    pub fn representative(&self, a: &Label6) -> &[i64] {
        &self.reps[label6_index(a)]
    }

    /// `3 <a|b>` mod 3 from representatives.
    pub fn three_inner(&self, a: &Label6, b: &Label6) -> F3 {
        let s = scaled_inner(&self.reps[label6_index(a)], &self.reps[label6_index(b)]);
        debug_assert_eq!(s % 12, 0);
        F3::new(s / 12)
    }

    /// `q_K12(a) = 3 |a|^2 mod 3`.
    pub fn q_k12(&self, a: &Label6) -> F3 {
        F3::new(self.three_norm[label6_index(a)])
    }

    /// `q = 3 wt mod 3` with `wt(S^a[x]) = |a|^2 / 2` and
    /// `wt(T^a[x;i]) = 2(1 + x + 3|a|^2) / 3` modulo integers.
    pub fn qform(&self, m: &ModuleLabel) -> Result<F3> {
        match m {
            ModuleLabel::S { a, .. } => {
                let e = self.three_norm[label6_index(a)];
                if e % 2 != 0 {
                    return Err(Error::FormMismatch(format!("3|a|^2 = {e} is odd")));
                }
                Ok(F3::new(e / 2))
            }
            ModuleLabel::T { a, x, .. } => {
                let e = F3::new(self.three_norm[label6_index(a)]);
                Ok(F3::TWO * (F3::ONE + *x + e))
            }
        }
    }

    /// Closed formulas for the bilinear form in terms of `3 <a|b>`.
    pub fn bform(&self, m1: &ModuleLabel, m2: &ModuleLabel) -> F3 {
        use ModuleLabel::*;
        match (m1, m2) {
            (S { a, .. }, S { a: b, .. }) => self.three_inner(a, b),
            (S { a, x }, T { a: b, i, .. }) | (T { a: b, i, .. }, S { a, x }) => -*i * (self.three_inner(a, b) + *x),
            (T { a, x, i }, T { a: b, x: y, i: j }) => *i * *j * (self.three_inner(a, b) - *x - *y + F3::ONE),
        }
    }

    /// Unhalved polarization `q(m1 + m2) - q(m1) - q(m2)`, so that `B(m, m) = 2 q(m)`.
    pub fn bform_polarized(&self, m1: &ModuleLabel, m2: &ModuleLabel) -> Result<F3> {
        Ok(self.qform(&fuse(m1, m2))? - self.qform(m1)? - self.qform(m2)?)
    }

    pub fn q_table(&self) -> Result<Vec<F3>> {
        ModuleLabel::all().iter().map(|m| self.qform(m)).collect()
    }

    pub fn verify(&self, mode: CheckMode) -> Result<FusionReport> {
        let labels = ModuleLabel::all();
        let q = self.q_table()?;
        let coords: Vec<Coords> = labels.iter().map(|m| m.coords()).collect();
        let idx_ok = labels.iter().enumerate().all(|(n, m)| m.index() == n);
        let distinct = idx_ok && labels.len() == NUM_LABELS;

        let pair_check = |i: usize, j: usize| -> (bool, bool, bool, bool) {
            let (a, b) = (&labels[i], &labels[j]);
            let f = fuse(a, b);
            let sum: Coords = std::array::from_fn(|k| coords[i][k] + coords[j][k]);
            let hom = f.coords() == sum;
            let comm = fuse(b, a) == f;
            let bij = self.bform(a, b);
            let sym = bij == self.bform(b, a);
            let routes = bij == q[f.index()] - q[i] - q[j];
            (hom, comm, sym, routes)
        };
        let fold = |acc: (bool, bool, bool, bool), r: (bool, bool, bool, bool)| (acc.0 && r.0, acc.1 && r.1, acc.2 && r.2, acc.3 && r.3);
        let (homomorphism, commutative, b_symmetric, b_routes_agree) = match mode {
            CheckMode::Exhaustive => (0..NUM_LABELS)
                .into_par_iter()
                .map(|i| (0..NUM_LABELS).map(|j| pair_check(i, j)).fold((true, true, true, true), fold))
                .reduce(|| (true, true, true, true), fold),
            CheckMode::Sampled { pairs, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..pairs)
                    .map(|_| pair_check(rng.gen_range(0..NUM_LABELS), rng.gen_range(0..NUM_LABELS)))
                    .fold((true, true, true, true), fold)
            }
        };

        let exponent_three = labels.iter().all(|m| fuse(m, &fuse(m, m)) == ModuleLabel::IDENTITY);
        let q_scaling = labels.iter().enumerate().all(|(n, m)| {
            F3::elements().iter().all(|&l| q[m.scalar_mul(l).index()] == l * l * q[n])
        });

        // bilinearity in the first slot against all labels, on a spanning set
        let basis: Vec<ModuleLabel> = (0..8)
            .map(|k| {
                let mut c = [F3::ZERO; 8];
                c[k] = F3::ONE;
                ModuleLabel::from_coords(&c)
            })
            .collect();
        let b_bilinear = basis.iter().all(|b1| {
            basis.iter().all(|b2| {
                let s = fuse(b1, b2);
                labels.iter().all(|m| self.bform(&s, m) == self.bform(b1, m) + self.bform(b2, m))
            })
        }) && labels.iter().all(|m| {
            labels.iter().step_by(97).all(|n| {
                let lin: F3 = (0..8).map(|k| coords[n.index()][k] * self.bform(&basis[k], m)).fold(F3::ZERO, |a, b| a + b);
                lin == self.bform(n, m)
            })
        });

        let radical_size = labels.iter().filter(|m| basis.iter().all(|b| self.bform(m, b).is_zero())).count();
        let singular_vectors = (1..NUM_LABELS).filter(|&n| q[n].is_zero()).count();

        let zero6 = [F3::ZERO; 6];
        let s01 = ModuleLabel::s(zero6, F3::ONE);
        let t021 = ModuleLabel::t(zero6, F3::TWO, F3::ONE)?;
        let s_part: Vec<ModuleLabel> = (0..729).map(|n| ModuleLabel::s(label6_from_index(n), F3::ZERO)).collect();
        let decomposition_orthogonal = s_part.iter().all(|m| self.bform(m, &s01).is_zero() && self.bform(m, &t021).is_zero());
        let plane: Vec<ModuleLabel> = F3::elements()
            .iter()
            .flat_map(|&c1| F3::elements().into_iter().map(move |c2| (c1, c2)))
            .map(|(c1, c2)| fuse(&s01.scalar_mul(c1), &t021.scalar_mul(c2)))
            .collect();
        let plane_singular_vectors = plane.iter().filter(|m| **m != ModuleLabel::IDENTITY && q[m.index()].is_zero()).count();
        let six_dim_singular_vectors = s_part.iter().skip(1).filter(|m| q[m.index()].is_zero()).count();
        let restriction_holds = s_part.iter().all(|m| q[m.index()] == -self.q_k12(m.a()));
        let form_matches_coordinates = labels.iter().all(|m| q[m.index()] == coordinate_form(&m.coords()));

        Ok(FusionReport {
            labels: if distinct { labels.len() } else { 0 },
            homomorphism,
            commutative,
            exponent_three,
            q_scaling,
            b_symmetric,
            b_routes_agree,
            b_bilinear,
            radical_size,
            singular_vectors,
            singular_lines: singular_vectors / 2,
            decomposition_orthogonal,
            plane_singular_vectors,
            six_dim_singular_vectors,
            restriction_holds,
            form_matches_coordinates,
        })
    }
}

/// `q(u, v, t) = -u.u - t v + 2 t^2` on fusion coordinates.
pub fn coordinate_form(c: &Coords) -> F3 {
    let uu = c[..6].iter().fold(F3::ZERO, |acc, &x| acc + x * x);
    -uu - c[7] * c[6] + F3::TWO * c[7] * c[7]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { pairs: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionReport {
    pub labels: usize,
    pub homomorphism: bool,
    pub commutative: bool,
    pub exponent_three: bool,
    pub q_scaling: bool,
    pub b_symmetric: bool,
    pub b_routes_agree: bool,
    pub b_bilinear: bool,
    pub radical_size: usize,
    pub singular_vectors: usize,
    pub singular_lines: usize,
    pub decomposition_orthogonal: bool,
    pub plane_singular_vectors: usize,
    pub six_dim_singular_vectors: usize,
    pub restriction_holds: bool,
    pub form_matches_coordinates: bool,
}

impl FusionReport {
    pub fn all_pass(&self) -> bool {
        self.labels == NUM_LABELS
            && self.homomorphism
            && self.commutative
            && self.exponent_three
            && self.q_scaling
            && self.b_symmetric
            && self.b_routes_agree
            && self.b_bilinear
            && self.radical_size == 1
            && self.decomposition_orthogonal
            && self.restriction_holds
            && self.form_matches_coordinates
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{prop_assert_eq, proptest};

    fn ring() -> FusionRing {
        FusionRing::new(&LeechConstruction::new().unwrap().k12).unwrap()
    }

    fn l6(v: [i64; 6]) -> Label6 {
        v.map(F3::new)
    }

    #[test]
    fn literal_rules() {
        let a = l6([1, 0, 2, 0, 0, 1]);
        let b = l6([2, 2, 0, 1, 0, 0]);
        let (x, y) = (F3::ONE, F3::TWO);
        assert_eq!(fuse(&ModuleLabel::s(a, x), &ModuleLabel::s(b, y)), ModuleLabel::s(add6(&a, &b), x + y));
        let tb = ModuleLabel::t(b, y, F3::ONE).unwrap();
        assert_eq!(fuse(&ModuleLabel::IDENTITY, &tb), tb);
        let ta = ModuleLabel::t(a, x, F3::ONE).unwrap();
        let tb2 = ModuleLabel::t(b, y, F3::TWO).unwrap();
        assert_eq!(fuse(&ta, &tb2), ModuleLabel::s(add6(&b, &neg6(&a)), x - y));
        assert_eq!(fuse(&tb2, &ta), ModuleLabel::s(add6(&b, &neg6(&a)), x - y));
        assert_eq!(
            fuse(&ta, &tb),
            ModuleLabel::t(neg6(&add6(&a, &b)), -(x + y), F3::TWO).unwrap()
        );
    }

    #[test]
    fn small_q_values() {
        let r = ring();
        let z = [F3::ZERO; 6];
        assert_eq!(r.qform(&ModuleLabel::IDENTITY).unwrap(), F3::ZERO);
        assert_eq!(r.qform(&ModuleLabel::s(z, F3::ONE)).unwrap(), F3::ZERO);
        assert_eq!(r.qform(&ModuleLabel::t(z, F3::ZERO, F3::ONE).unwrap()).unwrap(), F3::TWO);
        let m = ModuleLabel::t(l6([1, 1, 0, 0, 0, 0]), F3::ONE, F3::TWO).unwrap();
        assert_eq!(r.bform(&m, &ModuleLabel::IDENTITY), F3::ZERO);
    }

    #[test]
    fn label_text_round_trip() {
        for m in ModuleLabel::all().into_iter().step_by(37) {
            assert_eq!(m.to_string().parse::<ModuleLabel>().unwrap(), m);
        }
        assert_eq!(ModuleLabel::IDENTITY.to_string(), "S:000000:0");
        assert!("T:000000:1:0".parse::<ModuleLabel>().is_err());
        assert!("S:00000:1".parse::<ModuleLabel>().is_err());
    }

    #[test]
    fn q_is_independent_of_representatives() {
        let k = LeechConstruction::new().unwrap();
        let fixed = FusionRing::new(&k.k12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let shifted: Vec<Vec<i64>> = (0..729)
            .map(|n| {
                let mut r = fixed.reps[n].clone();
                for b in k.k12.basis() {
                    let c: i64 = Rng::gen_range(&mut rng, -2..=2);
                    for (x, y) in r.iter_mut().zip(b) {
                        *x += c * y;
                    }
                }
                r
            })
            .collect();
        let other = FusionRing::with_representatives(&k.k12, shifted).unwrap();
        assert_eq!(fixed.q_table().unwrap(), other.q_table().unwrap());
        for m in ModuleLabel::all().into_iter().step_by(13) {
            for n in ModuleLabel::all().into_iter().step_by(17) {
                assert_eq!(fixed.bform(&m, &n), other.bform(&m, &n));
            }
        }
    }

    #[test]
    fn sampled_verification() {
        let rep = ring().verify(CheckMode::Sampled { pairs: 20000, seed: 3 }).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.singular_vectors, 2132);
        assert_eq!(rep.singular_lines, 1066);
        assert_eq!(rep.plane_singular_vectors, 4);
        assert_eq!(rep.six_dim_singular_vectors, 224);
    }

    proptest! {
        #[test]
        fn coordinates_round_trip(n in 0usize..NUM_LABELS) {
            let m = ModuleLabel::from_index(n);
            prop_assert_eq!(ModuleLabel::from_coords(&m.coords()), m);
            prop_assert_eq!(m.index(), n);
        }

        #[test]
        fn fusion_is_associative(a in 0usize..NUM_LABELS, b in 0usize..NUM_LABELS, c in 0usize..NUM_LABELS) {
            let (x, y, z) = (ModuleLabel::from_index(a), ModuleLabel::from_index(b), ModuleLabel::from_index(c));
            prop_assert_eq!(fuse(&fuse(&x, &y), &z), fuse(&x, &fuse(&y, &z)));
        }
    }
}
