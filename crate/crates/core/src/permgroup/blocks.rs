//! Block systems by union-find closure.

use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{GroupError, Partition, PermGroup};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl PermGroup {
    /// Finest invariant partition in which all of `seed` share a class.
    fn block_closure(&self, seed: &[usize]) -> Partition {
        let mut uf = UnionFind::new(self.degree());
        let mut queue = VecDeque::new();
        for w in seed.windows(2) {
            if uf.union(w[0], w[1]) {
                queue.push_back((w[0], w[1]));
            }
        }
        while let Some((x, y)) = queue.pop_front() {
            for g in self.generators() {
                let (gx, gy) = (g.apply(x), g.apply(y));
                if uf.union(gx, gy) {
                    queue.push_back((gx, gy));
                }
            }
        }
        let labels: Vec<usize> = (0..self.degree()).map(|x| uf.find(x)).collect();
        Partition::from_labels(&labels).expect("block systems of a transitive group have equal classes")
    }

    /// The finest invariant partition whose class of `x` contains `y`, or
    /// `None` when that partition has a single class.
    pub fn minimal_block_system(&self, x: usize, y: usize) -> Result<Option<Partition>, GroupError> {
        self.check_point(x)?;
        self.check_point(y)?;
        self.require_transitive()?;
        let sigma = self.block_closure(&[x, y]);
        Ok((sigma.v1() > 1).then_some(sigma))
    }

    pub fn is_primitive(&self) -> Result<bool, GroupError> {
        self.require_transitive()?;
        for y in 1..self.degree() {
            if self.minimal_block_system(0, y)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every nontrivial block system, sorted by class size and then by
    /// labels.
    ///
    /// Blocks containing 0 are explored upward: each known block is extended
    /// by every outside point and closed again, so any block is reached from
    /// the blocks it contains.
    pub fn invariant_partitions(&self) -> Result<Vec<Partition>, GroupError> {
        self.require_transitive()?;
        let n = self.degree();
        let mut found: BTreeSet<Partition> = BTreeSet::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue: VecDeque<Vec<usize>> = VecDeque::from([vec![0]]);
        while let Some(block) = queue.pop_front() {
            let inside: HashSet<usize> = block.iter().copied().collect();
            for y in 1..n {
                if inside.contains(&y) {
                    continue;
                }
                let mut seed = block.clone();
                seed.push(y);
                let sigma = self.block_closure(&seed);
                if sigma.v1() == 1 {
                    continue;
                }
                let next = sigma.class(sigma.class_of(0));
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                    found.insert(sigma);
                }
            }
        }
        let mut result: Vec<Partition> = found.into_iter().collect();
        result.sort_by(|a, b| a.v0().cmp(&b.v0()).then_with(|| a.cmp(b)));
        Ok(result)
    }
}
