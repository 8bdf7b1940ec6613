//! The doubled space `R^2 = R + R` with `q^2(M1, M2) = q(M1) + q(M2)`, its
//! untwisted subgroup `U`, the two maximal totally singular extensions `S_Lambda`
//! and `S#`, and the graph map `eta` with `S# = {(M, eta M)}`.
//!
//! Everything is done in fusion coordinates: a label is a vector of F3^8 and a
//! pair a vector of F3^16.

use crate::arith::linalg::{echelon, nullspace, rank, span};
use crate::arith::{FiniteField, F3};
use crate::error::{Error, Result};
use crate::fusion::{Coords, FusionRing, ModuleLabel, NUM_LABELS};
use crate::lattice::{embed_half, Isometry, LeechConstruction};
use crate::orthogonal::{Perm, QuadSpaceF3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LabelPair {
    pub first: ModuleLabel,
    pub second: ModuleLabel,
}

impl LabelPair {
    pub fn new(first: ModuleLabel, second: ModuleLabel) -> Self {
        LabelPair { first, second }
    }

    pub fn coords(&self) -> Vec<F3> {
        self.first.coords().iter().chain(self.second.coords().iter()).copied().collect()
    }

    pub fn from_coords(v: &[F3]) -> Self {
        let f: Coords = std::array::from_fn(|k| v[k]);
        let s: Coords = std::array::from_fn(|k| v[8 + k]);
        LabelPair { first: ModuleLabel::from_coords(&f), second: ModuleLabel::from_coords(&s) }
    }
}

/// A subspace of F3^n held as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceF3 {
    ambient: usize,
    basis: Vec<Vec<F3>>,
}

impl SubspaceF3 {
    pub fn spanned_by(ambient: usize, gens: &[Vec<F3>]) -> Self {
        SubspaceF3 { ambient, basis: echelon(gens) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self) -> u64 {
        3u64.pow(self.dim() as u32)
    }

    pub fn basis(&self) -> &[Vec<F3>] {
        &self.basis
    }

    pub fn contains(&self, v: &[F3]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&rows) == self.dim()
    }

    pub fn contains_subspace(&self, other: &SubspaceF3) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &SubspaceF3) -> SubspaceF3 {
        let gens: Vec<Vec<F3>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::spanned_by(self.ambient, &gens)
    }

    pub fn elements(&self) -> Vec<Vec<F3>> {
        span(&self.basis, self.ambient)
    }

    /// Orthogonal complement for the symmetric form with the given Gram matrix.
    pub fn perp(&self, gram: &[Vec<F3>]) -> SubspaceF3 {
        let rows: Vec<Vec<F3>> = self
            .basis
            .iter()
            .map(|v| (0..self.ambient).map(|j| (0..self.ambient).fold(F3::ZERO, |s, i| s + v[i] * gram[i][j])).collect())
            .collect();
        Self::spanned_by(self.ambient, &nullspace(&rows, self.ambient))
    }
}

fn bilinear(gram: &[Vec<F3>], x: &[F3], y: &[F3]) -> F3 {
    let mut s = F3::ZERO;
    for (i, &xi) in x.iter().enumerate() {
        if !xi.is_zero() {
            for (j, &yj) in y.iter().enumerate() {
                s += xi * gram[i][j] * yj;
            }
        }
    }
    s
}

fn quad(gram: &[Vec<F3>], x: &[F3]) -> F3 {
    F3::TWO * bilinear(gram, x, x)
}

/// Totally singular iff the basis is singular and pairwise orthogonal.
fn totally_singular(gram: &[Vec<F3>], s: &SubspaceF3) -> bool {
    let b = s.basis();
    b.iter().all(|x| quad(gram, x).is_zero()) && b.iter().all(|x| b.iter().all(|y| bilinear(gram, x, y).is_zero()))
}

/// Outcome of the exhaustive checks on the geometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub g6_size: u64,
    pub g6_isotropic: bool,
    pub g6_self_dual: bool,
    pub u_size: u64,
    pub s_lambda_size: u64,
    pub s_lambda_singular: bool,
    /// S-type pairs orthogonal to `U`.
    pub s_type_in_u_perp: u64,
    pub u_perp_dim: usize,
    pub quotient_hyperbolic: bool,
    pub extensions_of_u: usize,
    pub s_sharp_size: u64,
    pub s_sharp_singular: bool,
    pub s_sharp_self_perp: bool,
    pub s_sharp_meets_s_lambda_in_u: bool,
    pub diagonal_twist: bool,
    pub eta_graph: bool,
    pub eta_negates_q: bool,
    pub eta_additive: bool,
    pub eta_not_isometry: bool,
    pub phi_trivial_on_u: bool,
    pub phi_level_sets: [u64; 3],
}

impl ExtensionReport {
    pub fn all_pass(&self) -> bool {
        let n7 = 3u64.pow(7);
        self.g6_size == 729
            && self.g6_isotropic
            && self.g6_self_dual
            && self.u_size == n7
            && self.s_lambda_size == 6561
            && self.s_lambda_singular
            && self.s_type_in_u_perp == 6561
            && self.u_perp_dim == 9
            && self.quotient_hyperbolic
            && self.extensions_of_u == 2
            && self.s_sharp_size == 6561
            && self.s_sharp_singular
            && self.s_sharp_self_perp
            && self.s_sharp_meets_s_lambda_in_u
            && self.diagonal_twist
            && self.eta_graph
            && self.eta_negates_q
            && self.eta_additive
            && self.eta_not_isometry
            && self.phi_trivial_on_u
            && self.phi_level_sets == [n7; 3]
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionGeometry {
    pub space: QuadSpaceF3,
    /// Gram matrix of `B + B` on F3^16.
    pub gram2: Vec<Vec<F3>>,
    /// Labels `(a, b)` in F3^12 of `Lambda / (K12 + K12)`.
    pub g6: SubspaceF3,
    pub u: SubspaceF3,
    pub s_lambda: SubspaceF3,
    pub u_perp: SubspaceF3,
    pub s_sharp: SubspaceF3,
    /// `eta` as a table on label indices.
    pub eta: Vec<u16>,
    ring: FusionRing,
}

fn s_pair(a: &[F3], x: F3, b: &[F3], y: F3) -> Vec<F3> {
    let mut v = vec![F3::ZERO; 16];
    v[..6].copy_from_slice(a);
    v[6] = x;
    v[8..14].copy_from_slice(b);
    v[14] = y;
    v
}

/// Image of `Lambda` in `(K12*/K12)^2`, read off the basis of the lattice.
pub fn glue_image_g6(k: &LeechConstruction) -> SubspaceF3 {
    let rows: Vec<Vec<F3>> = k
        .leech
        .basis()
        .iter()
        .map(|v| {
            let mut l = LeechConstruction::k12_label(&v[..12]);
            l.extend(LeechConstruction::k12_label(&v[12..]));
            l
        })
        .collect();
    SubspaceF3::spanned_by(12, &rows)
}

impl ExtensionGeometry {
    pub fn build(k: &LeechConstruction, ring: &FusionRing) -> Result<Self> {
        let space = QuadSpaceF3::from_fusion(ring)?;
        let mut gram2 = vec![vec![F3::ZERO; 16]; 16];
        for i in 0..8 {
            for j in 0..8 {
                gram2[i][j] = space.gram()[i][j];
                gram2[8 + i][8 + j] = space.gram()[i][j];
            }
        }

        let g6 = glue_image_g6(k);
        if g6.dim() != 6 {
            return Err(Error::Geometry(format!("glue image has dimension {}", g6.dim())));
        }
        let mut u_gens: Vec<Vec<F3>> = g6.basis().iter().map(|r| s_pair(&r[..6], F3::ZERO, &r[6..], F3::ZERO)).collect();
        let zero6 = [F3::ZERO; 6];
        u_gens.push(s_pair(&zero6, F3::ONE, &zero6, F3::TWO));
        let u = SubspaceF3::spanned_by(16, &u_gens);
        let s_lambda = u.sum(&SubspaceF3::spanned_by(16, &[s_pair(&zero6, F3::ONE, &zero6, F3::ZERO)]));
        if !totally_singular(&gram2, &s_lambda) {
            return Err(Error::Geometry("S_Lambda is not totally singular".into()));
        }

        let u_perp = u.perp(&gram2);
        let (e, f) = quotient_basis(&u, &u_perp)?;
        let lines = singular_quotient_lines(&gram2, &e, &f);
        if lines.len() != 2 {
            return Err(Error::Geometry(format!("U-perp/U has {} singular lines", lines.len())));
        }
        let exts: Vec<SubspaceF3> = lines.iter().map(|l| u.sum(&SubspaceF3::spanned_by(16, std::slice::from_ref(l)))).collect();
        let others: Vec<&SubspaceF3> = exts.iter().filter(|s| **s != s_lambda).collect();
        let s_sharp = match others.as_slice() {
            [s] => (*s).clone(),
            _ => return Err(Error::Geometry("S_Lambda is not one of the two extensions of U".into())),
        };

        let mut eta = vec![u16::MAX; NUM_LABELS];
        for v in s_sharp.elements() {
            let p = LabelPair::from_coords(&v);
            let slot = &mut eta[p.first.index()];
            if *slot != u16::MAX {
                return Err(Error::Geometry(format!("{} has two partners", p.first)));
            }
            *slot = p.second.index() as u16;
        }
        if eta.contains(&u16::MAX) {
            return Err(Error::Geometry("some label has no partner in S#".into()));
        }
        Ok(ExtensionGeometry { space, gram2, g6, u, s_lambda, u_perp, s_sharp, eta, ring: ring.clone() })
    }

    pub fn q2(&self, v: &[F3]) -> F3 {
        quad(&self.gram2, v)
    }

    pub fn q2_pair(&self, p: &LabelPair) -> Result<F3> {
        Ok(self.ring.qform(&p.first)? + self.ring.qform(&p.second)?)
    }

    pub fn eta(&self, m: &ModuleLabel) -> ModuleLabel {
        ModuleLabel::from_index(self.eta[m.index()] as usize)
    }

    pub fn eta_perm(&self) -> Perm {
        Perm::from_images(self.eta.clone()).expect("eta is a bijection")
    }

    /// Exponent of `xi` by which `phi_M` acts on the piece graded by `s`.
    pub fn phi_exponent(&self, m: &ModuleLabel, s: &LabelPair) -> Result<F3> {
        if !self.s_sharp.contains(&s.coords()) {
            return Err(Error::Geometry(format!("({}, {}) is not in S#", s.first, s.second)));
        }
        Ok(self.ring.bform(m, &s.first))
    }

    /// `(g, eta g eta^-1)` preserves `S#` and `eta g eta^-1` is an isometry.
    pub fn graph_stabilizer_check(&self, gens: &[Perm]) -> bool {
        let eta = self.eta_perm();
        let eta_inv = eta.inverse();
        gens.iter().all(|g| {
            let conj = eta_inv.then(g).then(&eta);
            self.space.is_isometry(&conj)
                && self.s_sharp.basis().iter().all(|v| {
                    let p = LabelPair::from_coords(v);
                    let image = LabelPair::new(
                        ModuleLabel::from_index(g.apply(p.first.index() as u16) as usize),
                        ModuleLabel::from_index(conj.apply(p.second.index() as u16) as usize),
                    );
                    self.s_sharp.contains(&image.coords())
                })
        })
    }

    /// The lattice involution `h` swaps the two halves of `Lambda`; on labels it
    /// sends `(a, b)` to the labels of `h(r_a + r_b)`. It must commute with `tau`
    /// (so `x`-labels are kept), map `G6` into itself, and preserve `U`.
    pub fn h_label_action_check(&self, k: &LeechConstruction) -> Result<bool> {
        let h = Isometry::h();
        if h.then(&Isometry::tau(12)) != Isometry::tau(12).then(&h) || !h.preserves(&k.leech)? {
            return Ok(false);
        }
        let act = |a: &[F3], b: &[F3]| -> Option<(Vec<F3>, Vec<F3>)> {
            let mut r = embed_half(&LeechConstruction::k12_dual_rep(a), 0);
            for (x, y) in r.iter_mut().zip(embed_half(&LeechConstruction::k12_dual_rep(b), 6)) {
                *x += y;
            }
            if !k.leech.contains(&r) {
                return None;
            }
            let img = h.apply(&r);
            Some((LeechConstruction::k12_label(&img[..12]), LeechConstruction::k12_label(&img[12..])))
        };
        for g in self.g6.elements() {
            let Some((a2, b2)) = act(&g[..6], &g[6..]) else { return Ok(false) };
            let image: Vec<F3> = a2.iter().chain(&b2).copied().collect();
            // the halves are exchanged: the new first half comes from the old second half
            let negated_first: Vec<F3> = g[..6].iter().map(|&x| -x).collect();
            if !self.g6.contains(&image) || a2 != g[6..] || b2 != negated_first {
                return Ok(false);
            }
        }
        for v in self.u.basis() {
            let p = LabelPair::from_coords(v);
            let (ModuleLabel::S { a, x }, ModuleLabel::S { a: b, x: y }) = (p.first, p.second) else { return Ok(false) };
            let Some((a2, b2)) = act(&a, &b) else { return Ok(false) };
            let image = s_pair(&a2, y, &b2, x);
            if !self.u.contains(&image) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn report(&self, additivity_samples: usize, seed: u64) -> Result<ExtensionReport> {
        let mut gram12 = vec![vec![F3::ZERO; 12]; 12];
        let g6_els = self.g6.elements();
        let label = |v: &[F3]| -> [F3; 6] { std::array::from_fn(|k| v[k]) };
        for i in 0..6 {
            for j in 0..6 {
                let (mut ei, mut ej) = ([F3::ZERO; 6], [F3::ZERO; 6]);
                ei[i] = F3::ONE;
                ej[j] = F3::ONE;
                let b = self.ring.three_inner(&ei, &ej);
                gram12[i][j] = b;
                gram12[6 + i][6 + j] = b;
            }
        }
        let g6_isotropic =
            g6_els.iter().all(|g| (self.ring.q_k12(&label(&g[..6])) + self.ring.q_k12(&label(&g[6..]))).is_zero());
        let g6_self_dual = self.g6.perp(&gram12) == self.g6;

        let s_type_in_u_perp = SubspaceF3::spanned_by(16, &(0..16).filter(|&k| k != 7 && k != 15).map(unit16).collect::<Vec<_>>())
            .elements()
            .iter()
            .filter(|v| self.u_perp.contains(v))
            .count() as u64;
        let (e, f) = quotient_basis(&self.u, &self.u_perp)?;
        let quotient_hyperbolic = {
            let g = [[quad(&self.gram2, &e), bilinear(&self.gram2, &e, &f)], [bilinear(&self.gram2, &e, &f), quad(&self.gram2, &f)]];
            // -det of the polar Gram is a square for a hyperbolic plane
            let det = F3::new(4) * (g[0][0] * g[1][1]) - g[0][1] * g[0][1];
            !det.is_zero() && !(-det).is_nonsquare()
        };
        let extensions_of_u = singular_quotient_lines(&self.gram2, &e, &f).len();

        let sharp_els = self.s_sharp.elements();
        let s_sharp_singular = totally_singular(&self.gram2, &self.s_sharp) && sharp_els.iter().all(|v| self.q2(v).is_zero());
        let s_sharp_self_perp = self.s_sharp.perp(&self.gram2) == self.s_sharp;
        let meet: Vec<&Vec<F3>> = sharp_els.iter().filter(|v| self.s_lambda.contains(v)).collect();
        let s_sharp_meets_s_lambda_in_u = meet.len() as u64 == self.u.size() && meet.iter().all(|v| self.u.contains(v));
        let diagonal_twist = sharp_els.iter().filter(|v| !self.u.contains(v)).all(|v| !v[7].is_zero() && v[7] == v[15]);

        let eta_negates_q = ModuleLabel::all().iter().all(|m| {
            matches!((self.ring.qform(m), self.ring.qform(&self.eta(m))), (Ok(a), Ok(b)) if a + b == F3::ZERO)
        });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eta_additive = (0..additivity_samples).all(|_| {
            let m = ModuleLabel::from_index(rng.gen_range(0..NUM_LABELS));
            let n = ModuleLabel::from_index(rng.gen_range(0..NUM_LABELS));
            self.eta(&crate::fusion::fuse(&m, &n)) == crate::fusion::fuse(&self.eta(&m), &self.eta(&n))
        });
        let eta_not_isometry = !self.space.is_isometry(&self.eta_perm());

        let s01 = ModuleLabel::s([F3::ZERO; 6], F3::ONE);
        let mut phi_level_sets = [0u64; 3];
        let mut phi_trivial_on_u = true;
        for v in &sharp_els {
            let p = LabelPair::from_coords(v);
            let e = self.ring.bform(&s01, &p.first);
            phi_level_sets[e.value() as usize] += 1;
            if self.u.contains(v) && !e.is_zero() {
                phi_trivial_on_u = false;
            }
        }

        Ok(ExtensionReport {
            g6_size: self.g6.size(),
            g6_isotropic,
            g6_self_dual,
            u_size: self.u.size(),
            s_lambda_size: self.s_lambda.size(),
            s_lambda_singular: self.s_lambda.elements().iter().all(|v| self.q2(v).is_zero()),
            s_type_in_u_perp,
            u_perp_dim: self.u_perp.dim(),
            quotient_hyperbolic,
            extensions_of_u,
            s_sharp_size: self.s_sharp.size(),
            s_sharp_singular,
            s_sharp_self_perp,
            s_sharp_meets_s_lambda_in_u,
            diagonal_twist,
            eta_graph: true,
            eta_negates_q,
            eta_additive,
            eta_not_isometry,
            phi_trivial_on_u,
            phi_level_sets,
        })
    }

    /// `S#` basis followed by the table `M -> eta(M)`.
    pub fn to_text(&self) -> String {
        let mut s = String::from("s-sharp basis\n");
        for v in self.s_sharp.basis() {
            let p = LabelPair::from_coords(v);
            let _ = writeln!(s, "{} {}", p.first, p.second);
        }
        s.push_str("eta\n");
        for m in ModuleLabel::all() {
            let _ = writeln!(s, "{} -> {}", m, self.eta(&m));
        }
        s
    }
}

fn unit16(k: usize) -> Vec<F3> {
    let mut v = vec![F3::ZERO; 16];
    v[k] = F3::ONE;
    v
}

/// Two vectors of `perp` completing a basis of `sub` to one of `perp`.
fn quotient_basis(sub: &SubspaceF3, perp: &SubspaceF3) -> Result<(Vec<F3>, Vec<F3>)> {
    if !perp.contains_subspace(sub) || perp.dim() != sub.dim() + 2 {
        return Err(Error::Geometry(format!("U-perp has dimension {} over U of dimension {}", perp.dim(), sub.dim())));
    }
    let mut rows = sub.basis().to_vec();
    let mut extra = Vec::new();
    for v in perp.basis() {
        rows.push(v.clone());
        if rank(&rows) == rows.len() {
            extra.push(v.clone());
        } else {
            rows.pop();
        }
    }
    Ok((extra[0].clone(), extra[1].clone()))
}

/// Singular lines of the plane `<e, f>` (taken modulo the totally singular `U`).
fn singular_quotient_lines(gram: &[Vec<F3>], e: &[F3], f: &[F3]) -> Vec<Vec<F3>> {
    let mut out = Vec::new();
    for (l, m) in [(F3::ONE, F3::ZERO), (F3::ZERO, F3::ONE), (F3::ONE, F3::ONE), (F3::ONE, F3::TWO)] {
        let v: Vec<F3> = e.iter().zip(f).map(|(&x, &y)| l * x + m * y).collect();
        if quad(gram, &v).is_zero() {
            out.push(v);
        }
    }
    out
}
