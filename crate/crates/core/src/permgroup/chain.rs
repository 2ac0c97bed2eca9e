//! Deterministic Schreier-Sims over Schreier vectors.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Permutation;

const NOT_IN_ORBIT: i32 = -1;
const ROOT: i32 = -2;

/// Number of random words sifted after the deterministic build.
pub(crate) const RANDOM_WORDS: usize = 100;

#[derive(Debug, Clone)]
struct Level {
    /// Indices into `StabChain::strong` of the generators fixing the
    /// earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// Per point: `NOT_IN_ORBIT`, `ROOT`, or the strong generator index that
    /// carried the predecessor onto this point.
    sv: Vec<i32>,
}

#[derive(Debug, Clone)]
pub(crate) struct StabChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds a chain whose base starts with `prefix`, then continues with
    /// first moved points in ascending order.
    pub(crate) fn build(degree: usize, gens: &[Permutation], prefix: &[usize], seed: u64) -> Self {
        let mut chain = StabChain {
            degree,
            base: Vec::new(),
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for &p in prefix {
            if !chain.base.contains(&p) {
                chain.push_base_point(p);
            }
        }
        for g in gens {
            if !g.is_identity() && !chain.strong.contains(g) {
                chain.add_strong(g.clone());
            }
        }
        for idx in 0..chain.strong.len() {
            let g = chain.strong[idx].clone();
            if chain.base.iter().all(|&b| g.apply(b) == b) {
                chain.push_base_point(g.first_moved_point().expect("nonidentity"));
            }
        }
        chain.refresh_generator_lists();
        if !chain.base.is_empty() {
            chain.complete(chain.base.len() - 1);
        }
        chain.verify_random(gens, seed);
        chain
    }

    fn push_base_point(&mut self, p: usize) {
        self.base.push(p);
        self.levels.push(Level {
            gens: Vec::new(),
            orbit: Vec::new(),
            sv: Vec::new(),
        });
    }

    fn add_strong(&mut self, g: Permutation) -> usize {
        self.strong_inv.push(g.inverse());
        self.strong.push(g);
        self.strong.len() - 1
    }

    fn refresh_generator_lists(&mut self) {
        for i in 0..self.levels.len() {
            let fixed = &self.base[..i];
            self.levels[i].gens = (0..self.strong.len())
                .filter(|&s| fixed.iter().all(|&b| self.strong[s].apply(b) == b))
                .collect();
        }
    }

    fn compute_orbit(&mut self, i: usize) {
        let root = self.base[i];
        let mut sv = vec![NOT_IN_ORBIT; self.degree];
        sv[root] = ROOT;
        let mut orbit = vec![root];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for &s in &self.levels[i].gens {
                let y = self.strong[s].apply(x);
                if sv[y] == NOT_IN_ORBIT {
                    sv[y] = s as i32;
                    orbit.push(y);
                }
            }
        }
        self.levels[i].orbit = orbit;
        self.levels[i].sv = sv;
    }

    /// Coset representative `u` with `base[i]^u = p`.
    fn representative(&self, i: usize, p: usize) -> Permutation {
        let sv = &self.levels[i].sv;
        let mut path = Vec::new();
        let mut q = p;
        while sv[q] != ROOT {
            let s = sv[q] as usize;
            path.push(s);
            q = self.strong_inv[s].apply(q);
        }
        let mut u = Permutation::identity(self.degree);
        for &s in path.iter().rev() {
            u = u.then(&self.strong[s]);
        }
        u
    }

    /// Right-multiplies `h` by the inverse of the representative of `p`.
    fn strip_level(&self, i: usize, h: &Permutation, p: usize) -> Permutation {
        let sv = &self.levels[i].sv;
        let mut h = h.clone();
        let mut q = p;
        while sv[q] != ROOT {
            let s = sv[q] as usize;
            h = h.then(&self.strong_inv[s]);
            q = self.strong_inv[s].apply(q);
        }
        h
    }

    /// Sifts `h` through levels `start..`; returns the residue and the level
    /// where sifting stopped (`base.len()` when it went all the way).
    fn sift_from(&self, h: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = h.clone();
        for i in start..self.base.len() {
            let p = h.apply(self.base[i]);
            if self.levels[i].sv[p] == NOT_IN_ORBIT {
                return (h, i);
            }
            h = self.strip_level(i, &h, p);
        }
        (h, self.base.len())
    }

    /// Records a nonidentity residue that fixes `base[..j]`, extending the
    /// base when needed.
    fn absorb(&mut self, residue: Permutation, j: usize) {
        if j == self.base.len() {
            let p = residue.first_moved_point().expect("nonidentity residue");
            self.push_base_point(p);
        }
        let idx = self.add_strong(residue);
        let fixed_upto = self
            .base
            .iter()
            .take_while(|&&b| self.strong[idx].apply(b) == b)
            .count();
        for l in 0..=fixed_upto.min(self.levels.len() - 1) {
            self.levels[l].gens.push(idx);
        }
    }

    fn complete(&mut self, from: usize) {
        let mut i = from as isize;
        while i >= 0 {
            let lvl = i as usize;
            self.compute_orbit(lvl);
            let mut restart = None;
            'search: for oi in 0..self.levels[lvl].orbit.len() {
                let beta = self.levels[lvl].orbit[oi];
                let u_beta = self.representative(lvl, beta);
                for gi in 0..self.levels[lvl].gens.len() {
                    let s = self.levels[lvl].gens[gi];
                    let image = self.strong[s].apply(beta);
                    let h = self.strip_level(lvl, &u_beta.then(&self.strong[s]), image);
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, j) = self.sift_from(&h, lvl + 1);
                    if !residue.is_identity() {
                        self.absorb(residue, j);
                        restart = Some(j);
                        break 'search;
                    }
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    fn verify_random(&mut self, gens: &[Permutation], seed: u64) {
        if gens.is_empty() || self.base.is_empty() {
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RANDOM_WORDS {
            let len = rng.gen_range(1..=2 * gens.len() + 8);
            let mut w = Permutation::identity(self.degree);
            for _ in 0..len {
                w = w.then(&gens[rng.gen_range(0..gens.len())]);
            }
            let (residue, j) = self.sift_from(&w, 0);
            if !residue.is_identity() {
                // Unreachable for a complete chain; kept so a bug shows up as
                // a slower build rather than a wrong order.
                self.absorb(residue, j);
                self.complete(self.base.len() - 1);
            }
        }
    }

    pub(crate) fn base(&self) -> &[usize] {
        &self.base
    }

    pub(crate) fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub(crate) fn order(&self) -> BigUint {
        self.order_from(0)
    }

    /// Order of the pointwise stabilizer of `base[..level]`.
    pub(crate) fn order_from(&self, level: usize) -> BigUint {
        self.levels[level.min(self.levels.len())..]
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Strong generators of the pointwise stabilizer of `base[..level]`.
    pub(crate) fn generators_from(&self, level: usize) -> Vec<Permutation> {
        match self.levels.get(level) {
            Some(l) => l.gens.iter().map(|&s| self.strong[s].clone()).collect(),
            None => Vec::new(),
        }
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g, 0).0.is_identity()
    }

    /// Every strong generator and Schreier generator sifts to the identity.
    pub(crate) fn is_complete(&self) -> bool {
        for (i, level) in self.levels.iter().enumerate() {
            for &beta in &level.orbit {
                let u_beta = self.representative(i, beta);
                for &s in &level.gens {
                    let image = self.strong[s].apply(beta);
                    let h = self.strip_level(i, &u_beta.then(&self.strong[s]), image);
                    if !self.sift_from(&h, i + 1).0.is_identity() {
                        return false;
                    }
                }
            }
        }
        true
    }
}
