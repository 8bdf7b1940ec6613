//! Permutation groups on at most 65536 points with a base and strong
//! generating set, built by randomized Schreier-Sims and certified by sifting
//! every Schreier generator.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashSet, VecDeque};

/// `i -> self[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).map(|i| i as u16).collect())
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(Error::Parse("not a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, p: u16) -> u16 {
        self.0[p as usize]
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn first_moved(&self) -> Option<u16> {
        self.0.iter().enumerate().find(|(i, &j)| *i != j as usize).map(|(i, _)| i as u16)
    }
}

fn word_image(word: &[&Perm], p: u16) -> u16 {
    word.iter().fold(p, |x, g| g.apply(x))
}

fn word_product(word: &[&Perm], degree: usize) -> Perm {
    let mut out = Perm::identity(degree);
    for g in word {
        out = out.then(g);
    }
    out
}

#[derive(Clone, Debug)]
struct Level {
    point: u16,
    /// indices into `strong`
    gens: Vec<usize>,
    orbit: Vec<u16>,
    /// `tinv[b]` indexes `inv_store`; that permutation maps `b` to `point`.
    tinv: Vec<Option<u32>>,
    inv_store: Vec<Perm>,
}

impl Level {
    fn new(point: u16, degree: usize) -> Self {
        let mut tinv = vec![None; degree];
        tinv[point as usize] = Some(0);
        Level { point, gens: Vec::new(), orbit: vec![point], tinv, inv_store: vec![Perm::identity(degree)] }
    }

    fn close(&mut self, strong: &[Perm]) {
        let mut k = 0;
        while k < self.orbit.len() {
            let b = self.orbit[k];
            for &gi in &self.gens {
                let s = &strong[gi];
                let c = s.apply(b);
                if self.tinv[c as usize].is_none() {
                    // c -> b -> point
                    let t = s.inverse().then(&self.inv_store[self.tinv[b as usize].expect("in orbit") as usize]);
                    self.tinv[c as usize] = Some(self.inv_store.len() as u32);
                    self.inv_store.push(t);
                    self.orbit.push(c);
                }
            }
            k += 1;
        }
    }

    fn inv_for(&self, b: u16) -> Option<&Perm> {
        self.tinv[b as usize].map(|i| &self.inv_store[i as usize])
    }
}

/// Options for [`PermGroupBSGS::schreier_sims`].
#[derive(Clone, Debug)]
pub struct SchreierSimsOptions {
    pub seed: u64,
    /// Stop the random phase once this order is reached.
    pub target_order: Option<u128>,
    /// Consecutive trivial random sifts that end the random phase.
    pub patience: usize,
    /// Initial base points, used in order before any other point.
    pub base_prefix: Vec<u16>,
    /// Caller's guarantee that an element fixing `base_prefix` pointwise is
    /// the identity (e.g. a linear action whose base contains a vector basis).
    pub faithful_prefix: bool,
}

impl Default for SchreierSimsOptions {
    fn default() -> Self {
        SchreierSimsOptions { seed: 0, target_order: None, patience: 40, base_prefix: Vec::new(), faithful_prefix: false }
    }
}

#[derive(Clone, Debug)]
pub struct PermGroupBSGS {
    degree: usize,
    generators: Vec<Perm>,
    strong: Vec<Perm>,
    levels: Vec<Level>,
    faithful_prefix: usize,
}

enum Sift {
    Ok,
    /// residue fixes the base points of all levels before `level`
    Fail { level: usize, residue: Perm },
}

impl PermGroupBSGS {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn base(&self) -> Vec<u16> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    fn empty(degree: usize, generators: Vec<Perm>, opts: &SchreierSimsOptions) -> Result<Self> {
        if degree == 0 || degree > 1 << 16 {
            return Err(Error::CapExceeded { what: "permutation degree", needed: degree as u128, cap: 1 << 16 });
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::LengthMismatch { expected: degree, got: g.degree() });
        }
        let levels: Vec<Level> = opts.base_prefix.iter().map(|&b| Level::new(b, degree)).collect();
        let faithful_prefix = if opts.faithful_prefix { levels.len() } else { usize::MAX };
        Ok(PermGroupBSGS { degree, generators, strong: Vec::new(), levels, faithful_prefix })
    }

    /// Sifts a word from `start`; only base images are tracked until a residue is needed.
    fn sift_word<'a>(&'a self, word: &mut Vec<&'a Perm>, start: usize) -> Sift {
        for (k, lvl) in self.levels.iter().enumerate().skip(start) {
            let b = word_image(word, lvl.point);
            match lvl.inv_for(b) {
                Some(t) => word.push(t),
                None => return Sift::Fail { level: k, residue: word_product(word, self.degree) },
            }
        }
        if self.levels.len() >= self.faithful_prefix {
            return Sift::Ok;
        }
        let residue = word_product(word, self.degree);
        if residue.is_identity() {
            Sift::Ok
        } else {
            Sift::Fail { level: self.levels.len(), residue }
        }
    }

    fn sift_perm(&self, g: &Perm, start: usize) -> Sift {
        let mut word = vec![g];
        self.sift_word(&mut word, start)
    }

    fn add_strong(&mut self, g: Perm, level: usize) {
        let idx = self.strong.len();
        let mut level = level;
        if level == self.levels.len() {
            let p = g.first_moved().expect("nonidentity residue");
            self.levels.push(Level::new(p, self.degree));
        }
        // g fixes the base points of levels < level
        level = level.min(self.levels.len() - 1);
        self.strong.push(g);
        for lvl in self.levels.iter_mut().take(level + 1) {
            lvl.gens.push(idx);
        }
        for lvl in self.levels.iter_mut().take(level + 1) {
            lvl.close(&self.strong);
        }
    }

    /// Randomized Schreier-Sims followed by a deterministic completion pass.
    pub fn schreier_sims(degree: usize, generators: Vec<Perm>, opts: &SchreierSimsOptions) -> Result<Self> {
        let mut g = Self::empty(degree, generators.clone(), opts)?;
        let gens: Vec<Perm> = generators.into_iter().filter(|p| !p.is_identity()).collect();
        if gens.is_empty() {
            return Ok(g);
        }
        for s in &gens {
            if let Sift::Fail { level, residue } = g.sift_perm(s, 0) {
                g.add_strong(residue, level);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut pool: Vec<Perm> = (0..10).map(|i| gens[i % gens.len()].clone()).collect();
        let mut acc = Perm::identity(degree);
        let step = |rng: &mut ChaCha8Rng, pool: &mut Vec<Perm>, acc: &mut Perm| {
            let i = rng.gen_range(0..pool.len());
            let mut j = rng.gen_range(0..pool.len() - 1);
            if j >= i {
                j += 1;
            }
            let other = if rng.gen_bool(0.5) { pool[j].clone() } else { pool[j].inverse() };
            pool[i] = if rng.gen_bool(0.5) { pool[i].then(&other) } else { other.then(&pool[i]) };
            *acc = acc.then(&pool[i]);
        };
        for _ in 0..60 {
            step(&mut rng, &mut pool, &mut acc);
        }
        let mut quiet = 0;
        while quiet < opts.patience {
            if let Some(t) = opts.target_order {
                let o = g.order();
                if o == t {
                    break;
                }
                if o > t {
                    return Err(Error::OrderMismatch { computed: o.to_string(), expected: t.to_string() });
                }
            }
            step(&mut rng, &mut pool, &mut acc);
            match g.sift_perm(&acc, 0) {
                Sift::Ok => quiet += 1,
                Sift::Fail { level, residue } => {
                    quiet = 0;
                    g.add_strong(residue, level);
                }
            }
        }
        g.complete()?;
        Ok(g)
    }

    /// Sifts every Schreier generator; any failure is added and the pass restarts.
    /// On return the strong generating set is certified.
    pub fn complete(&mut self) -> Result<()> {
        'restart: loop {
            for i in (0..self.levels.len()).rev() {
                let lvl = &self.levels[i];
                for &b in &lvl.orbit {
                    let u = lvl.inv_for(b).expect("orbit point").inverse();
                    for &gi in &lvl.gens {
                        let s = &self.strong[gi];
                        let c = s.apply(b);
                        let tc = lvl.inv_for(c).expect("orbit closed");
                        let mut word = vec![&u, s, tc];
                        if let Sift::Fail { level, residue } = self.sift_word(&mut word, i + 1) {
                            self.add_strong(residue, level);
                            continue 'restart;
                        }
                    }
                }
            }
            return Ok(());
        }
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && matches!(self.sift_perm(g, 0), Sift::Ok)
    }

    /// Breadth-first orbit of a point under the generators.
    pub fn orbit(&self, p: u16) -> Vec<u16> {
        let mut seen = vec![false; self.degree];
        seen[p as usize] = true;
        let mut out = vec![p];
        let mut q = VecDeque::from([p]);
        while let Some(x) = q.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                    q.push_back(y);
                }
            }
        }
        out
    }

    /// Orbit of an unordered block of points; blocks are compared as sorted sets.
    pub fn block_orbit(&self, block: &[u16]) -> usize {
        let canon = |b: &[u16]| {
            let mut v = b.to_vec();
            v.sort_unstable();
            v
        };
        let start = canon(block);
        let mut seen = HashSet::from([start.clone()]);
        let mut q = VecDeque::from([start]);
        while let Some(b) = q.pop_front() {
            for g in &self.generators {
                let img = canon(&b.iter().map(|&x| g.apply(x)).collect::<Vec<_>>());
                if seen.insert(img.clone()) {
                    q.push_back(img);
                }
            }
        }
        seen.len()
    }

    /// `(orbit size, stabilizer order)` of a point.
    pub fn orbit_and_stabilizer(&self, p: u16) -> (usize, u128) {
        let n = self.orbit(p).len();
        (n, self.order() / n as u128)
    }

    pub fn block_orbit_and_stabilizer(&self, block: &[u16]) -> (usize, u128) {
        let n = self.block_orbit(block);
        (n, self.order() / n as u128)
    }

    /// Plain-text serialization: base points and strong generators.
    pub fn to_text(&self) -> String {
        let mut s = format!("bsgs v1\ndegree {}\norder {}\nbase", self.degree, self.order());
        for l in &self.levels {
            s += &format!(" {}", l.point);
        }
        s += &format!("\nfaithful {}\n", if self.faithful_prefix == usize::MAX { 0 } else { self.faithful_prefix });
        for (tag, list) in [("gen", &self.generators), ("strong", &self.strong)] {
            for g in list {
                s += tag;
                for x in g.images() {
                    s += &format!(" {x}");
                }
                s.push('\n');
            }
        }
        s
    }

    /// Rebuilds orbits and transversals from a cached base and strong generating set;
    /// the stored order must be reproduced.
    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("bsgs cache: {m}"));
        let mut lines = text.lines();
        if lines.next() != Some("bsgs v1") {
            return Err(bad("header"));
        }
        let num = |l: Option<&str>, key: &str| -> Result<u128> {
            l.and_then(|l| l.strip_prefix(key)).and_then(|v| v.trim().parse().ok()).ok_or_else(|| bad(key))
        };
        let degree = num(lines.next(), "degree")? as usize;
        let order = num(lines.next(), "order")?;
        let base: Vec<u16> = lines
            .next()
            .and_then(|l| l.strip_prefix("base"))
            .ok_or_else(|| bad("base"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("base point")))
            .collect::<Result<_>>()?;
        let faithful = num(lines.next(), "faithful")? as usize;
        let mut gens = Vec::new();
        let mut strong = Vec::new();
        for l in lines.filter(|l| !l.trim().is_empty()) {
            let mut it = l.split_whitespace();
            let tag = it.next().ok_or_else(|| bad("empty line"))?;
            let p = Perm::from_images(it.map(|t| t.parse().map_err(|_| bad("image"))).collect::<Result<_>>()?)?;
            if p.degree() != degree {
                return Err(bad("degree"));
            }
            match tag {
                "gen" => gens.push(p),
                "strong" => strong.push(p),
                _ => return Err(bad("tag")),
            }
        }
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();
        for (idx, s) in strong.iter().enumerate() {
            for lvl in levels.iter_mut() {
                lvl.gens.push(idx);
                if s.apply(lvl.point) != lvl.point {
                    break;
                }
            }
        }
        for lvl in levels.iter_mut() {
            lvl.close(&strong);
        }
        let g = PermGroupBSGS {
            degree,
            generators: gens,
            strong,
            levels,
            faithful_prefix: if faithful == 0 { usize::MAX } else { faithful },
        };
        if g.order() != order {
            return Err(Error::OrderMismatch { computed: g.order().to_string(), expected: order.to_string() });
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, pts: &[usize]) -> Perm {
        let mut v: Vec<u16> = (0..n as u16).collect();
        for w in 0..pts.len() {
            v[pts[w]] = pts[(w + 1) % pts.len()] as u16;
        }
        Perm(v)
    }

    #[test]
    fn symmetric_and_alternating_groups() {
        let s6 = PermGroupBSGS::schreier_sims(6, vec![cycle(6, &[0, 1]), cycle(6, &[0, 1, 2, 3, 4, 5])], &Default::default()).unwrap();
        assert_eq!(s6.order(), 720);
        let a5 = PermGroupBSGS::schreier_sims(5, vec![cycle(5, &[0, 1, 2]), cycle(5, &[0, 1, 2, 3, 4])], &Default::default()).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(a5.contains(&cycle(5, &[2, 3, 4])));
        assert!(!a5.contains(&cycle(5, &[0, 1])));
        assert_eq!(a5.orbit_and_stabilizer(0), (5, 12));
        assert_eq!(a5.block_orbit_and_stabilizer(&[0, 1]), (10, 6));
    }

    #[test]
    fn trivial_group() {
        let g = PermGroupBSGS::schreier_sims(4, vec![Perm::identity(4)], &Default::default()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.orbit(2), vec![2]);
    }

    #[test]
    fn mathieu_m11_order() {
        // M11 on 11 points
        let a = cycle(11, &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
        let b = {
            let mut v: Vec<u16> = (0..11).collect();
            for c in [[2, 6, 10, 7], [3, 9, 4, 5]] {
                for k in 0..4 {
                    v[c[k]] = c[(k + 1) % 4] as u16;
                }
            }
            Perm(v)
        };
        for seed in 0..3 {
            let g = PermGroupBSGS::schreier_sims(11, vec![a.clone(), b.clone()], &SchreierSimsOptions { seed, ..Default::default() }).unwrap();
            assert_eq!(g.order(), 7920);
        }
    }

    #[test]
    fn cache_round_trip() {
        let g = PermGroupBSGS::schreier_sims(7, vec![cycle(7, &[0, 1, 2, 3, 4, 5, 6]), Perm((0..7u16).map(|x| 2 * x % 7).collect())], &Default::default()).unwrap();
        let h = PermGroupBSGS::from_text(&g.to_text()).unwrap();
        assert_eq!(h.order(), g.order());
        assert_eq!(h.order(), 21);
        assert!(PermGroupBSGS::from_text("bsgs v1\ndegree 3\norder 5\nbase 0\nfaithful 0\n").is_err());
    }
}
