//! Permutation groups given by generators: orbits, exact orders, block
//! systems and actions on designs.

use num_bigint::BigUint;
use thiserror::Error;

mod action;
mod blocks;
mod chain;
mod partition;
mod perm;

pub use action::{
    block_permutation, flag_orbit, is_flag_transitive, preserves_blocks, CombinedAction, FlagOrbit,
};
pub use partition::{Partition, PartitionError};
pub use perm::{generators_to_text, parse_generators, Permutation};

use chain::StabChain;

/// Largest degree accepted by [`PermGroup::new`].
pub const MAX_DEGREE: usize = 10_000;

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("image list is not a bijection")]
    NotABijection,
    #[error("no generators given")]
    NoGenerators,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree {degree} exceeds the limit of {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group is not transitive ({orbits} orbits)")]
    NotTransitive { orbits: usize },
    #[error("generator {generator} does not map class {class} onto a class")]
    PartitionNotInvariant { generator: usize, class: usize },
    #[error("generator {generator} maps block {block} outside the block set")]
    NotAnAutomorphismGroup { generator: usize, block: usize },
}

/// The image of `G` on the classes of an invariant partition.
#[derive(Debug, Clone)]
pub struct InducedAction {
    pub image: PermGroup,
    pub kernel_order: BigUint,
}

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    seed: u64,
    chain: StabChain,
    order: BigUint,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self, GroupError> {
        PermGroup::with_seed(generators, DEFAULT_SEED)
    }

    /// Like [`PermGroup::new`]; `seed` drives the random-word verification.
    pub fn with_seed(generators: Vec<Permutation>, seed: u64) -> Result<Self, GroupError> {
        let degree = generators.first().ok_or(GroupError::NoGenerators)?.degree();
        if degree > MAX_DEGREE {
            return Err(GroupError::DegreeTooLarge {
                degree,
                limit: MAX_DEGREE,
            });
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        let chain = StabChain::build(degree, &generators, &[], seed);
        let order = chain.order();
        Ok(PermGroup {
            degree,
            generators,
            seed,
            chain,
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(vec![Permutation::identity(degree)]).expect("identity generator")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn base(&self) -> &[usize] {
        self.chain.base()
    }

    /// Lengths of the basic orbits; their product is the order.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain.orbit_lengths()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    /// Re-runs the deterministic completeness test on the cached chain.
    pub fn chain_is_complete(&self) -> bool {
        self.chain.is_complete()
    }

    fn check_point(&self, x: usize) -> Result<(), GroupError> {
        if x < self.degree {
            Ok(())
        } else {
            Err(GroupError::PointOutOfRange {
                point: x,
                degree: self.degree,
            })
        }
    }

    /// Sorted orbit of `x`.
    pub fn orbit(&self, x: usize) -> Result<Vec<usize>, GroupError> {
        self.check_point(x)?;
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut orbit = vec![x];
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// All orbits, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.degree];
        let mut orbits = Vec::new();
        for x in 0..self.degree {
            if !assigned[x] {
                let orbit = self.orbit(x).expect("in range");
                for &y in &orbit {
                    assigned[y] = true;
                }
                orbits.push(orbit);
            }
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    pub(crate) fn require_transitive(&self) -> Result<(), GroupError> {
        if self.is_transitive() {
            Ok(())
        } else {
            Err(GroupError::NotTransitive {
                orbits: self.orbits().len(),
            })
        }
    }

    /// Pointwise stabilizer of `points`, in the given order.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup, GroupError> {
        for &x in points {
            self.check_point(x)?;
        }
        let chain = StabChain::build(self.degree, &self.generators, points, self.seed);
        let depth = chain.base().iter().zip(points).take_while(|(a, b)| a == b).count();
        let mut gens = chain.generators_from(depth);
        if gens.is_empty() {
            gens.push(Permutation::identity(self.degree));
        }
        let stab = PermGroup::with_seed(gens, self.seed)?;
        debug_assert_eq!(stab.order, chain.order_from(depth));
        Ok(stab)
    }

    pub fn point_stabilizer(&self, x: usize) -> Result<PermGroup, GroupError> {
        self.pointwise_stabilizer(&[x])
    }

    /// Orbit lengths of `G_x` on the points other than `x`, sorted.
    pub fn subdegrees(&self, x: usize) -> Result<Vec<usize>, GroupError> {
        self.check_point(x)?;
        self.require_transitive()?;
        let stab = self.point_stabilizer(x)?;
        let mut lengths: Vec<usize> = stab
            .orbits()
            .into_iter()
            .filter(|o| o != &[x])
            .map(|o| o.len())
            .collect();
        lengths.sort_unstable();
        Ok(lengths)
    }

    /// Number of orbits on ordered pairs, i.e. one more than the number of
    /// subdegrees.
    pub fn rank(&self) -> Result<usize, GroupError> {
        Ok(1 + self.subdegrees(0)?.len())
    }

    /// Checks that every generator permutes the classes of `sigma`.
    pub fn preserves_partition(&self, sigma: &Partition) -> Result<(), GroupError> {
        self.class_images(sigma).map(|_| ())
    }

    fn class_images(&self, sigma: &Partition) -> Result<Vec<Vec<usize>>, GroupError> {
        if sigma.v() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: sigma.v(),
            });
        }
        let mut result = Vec::with_capacity(self.generators.len());
        for (gi, g) in self.generators.iter().enumerate() {
            let mut images = vec![usize::MAX; sigma.v1()];
            for x in 0..self.degree {
                let c = sigma.class_of(x);
                let d = sigma.class_of(g.apply(x));
                if images[c] == usize::MAX {
                    images[c] = d;
                } else if images[c] != d {
                    return Err(GroupError::PartitionNotInvariant {
                        generator: gi,
                        class: c,
                    });
                }
            }
            result.push(images);
        }
        Ok(result)
    }

    /// The action on the classes of an invariant partition, with the order
    /// of its kernel.
    pub fn induced_action(&self, sigma: &Partition) -> Result<InducedAction, GroupError> {
        let images = self.class_images(sigma)?;
        let gens = images
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>, _>>()?;
        let image = PermGroup::with_seed(gens, self.seed)?;
        let kernel_order = &self.order / image.order();
        debug_assert_eq!(&kernel_order * image.order(), self.order);
        Ok(InducedAction {
            image,
            kernel_order,
        })
    }

    /// `|G_Δ^Σ|`, the order of the stabilizer of class `delta` in the
    /// induced action.
    pub fn class_stabilizer_order(&self, sigma: &Partition, delta: usize) -> Result<BigUint, GroupError> {
        let induced = self.induced_action(sigma)?;
        induced.image.check_point(delta)?;
        let orbit = induced.image.orbit(delta)?.len();
        Ok(induced.image.order() / BigUint::from(orbit))
    }
}

/// Order of the group generated by `gens`, convenience for tests and tools.
pub fn group_order(gens: Vec<Permutation>) -> Result<BigUint, GroupError> {
    Ok(PermGroup::new(gens)?.order)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn enumerate(gens: &[Permutation]) -> HashSet<Permutation> {
        let id = Permutation::identity(gens[0].degree());
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(p) = queue.pop() {
            for g in gens {
                let q = p.then(g);
                if seen.insert(q.clone()) {
                    queue.push(q);
                }
            }
        }
        seen
    }

    #[test]
    fn orbits() {
        let g = PermGroup::new(vec![cycle(7)]).unwrap();
        assert_eq!(g.orbit(0).unwrap(), (0..7).collect::<Vec<_>>());
        let t = PermGroup::trivial(5);
        assert_eq!(t.orbit(3).unwrap(), vec![3]);
        let h = PermGroup::new(vec![
            Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(4, &[&[2, 3]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(h.orbit(0).unwrap(), vec![0, 1]);
        assert!(matches!(h.orbit(4), Err(GroupError::PointOutOfRange { .. })));
    }

    #[test]
    fn orders() {
        assert_eq!(PermGroup::new(vec![cycle(7)]).unwrap().order(), &big(7));
        let fano = PermGroup::new(fano_gens()).unwrap();
        assert_eq!(fano.order(), &big(168));
        assert_eq!(enumerate(&fano_gens()).len(), 168);
        assert_eq!(PermGroup::new(symmetric(5)).unwrap().order(), &big(120));
        assert_eq!(PermGroup::new(translations16()).unwrap().order(), &big(16));
        assert_eq!(PermGroup::new(symmetric(30)).unwrap().order().to_string(), "265252859812191058636308480000000");
        assert!(fano.chain_is_complete());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(PermGroup::new(vec![]), Err(GroupError::NoGenerators)));
        assert!(matches!(
            PermGroup::new(vec![cycle(3), cycle(4)]),
            Err(GroupError::DegreeMismatch { expected: 3, found: 4 })
        ));
        assert!(matches!(
            PermGroup::new(vec![Permutation::identity(MAX_DEGREE + 1)]),
            Err(GroupError::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn stabilizers() {
        let t = PermGroup::new(vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        assert!(!t.is_transitive());
        let fano = PermGroup::new(fano_gens()).unwrap();
        let stab = fano.point_stabilizer(0).unwrap();
        assert_eq!(stab.order(), &big(24));
        assert!(stab.generators().iter().all(|g| g.apply(0) == 0));
        let c = PermGroup::new(vec![cycle(9)]).unwrap();
        assert_eq!(c.point_stabilizer(4).unwrap().order(), &big(1));
    }

    #[test]
    fn subdegree_examples() {
        let s6 = PermGroup::new(symmetric(6)).unwrap();
        assert_eq!(s6.subdegrees(2).unwrap(), vec![5]);
        let c = PermGroup::new(vec![cycle(6)]).unwrap();
        assert_eq!(c.subdegrees(0).unwrap(), vec![1; 5]);
        let d5 = PermGroup::new(dihedral(5)).unwrap();
        assert_eq!(d5.order(), &big(10));
        assert_eq!(d5.subdegrees(0).unwrap(), vec![2, 2]);
        assert_eq!(PermGroup::new(fano_gens()).unwrap().rank().unwrap(), 2);
        let t = PermGroup::new(vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        assert!(matches!(t.subdegrees(0), Err(GroupError::NotTransitive { orbits: 2 })));
    }

    #[test]
    fn induced_actions() {
        let c4 = PermGroup::new(vec![cycle(4)]).unwrap();
        let sigma = Partition::from_labels(&[0, 1, 0, 1]).unwrap();
        let ind = c4.induced_action(&sigma).unwrap();
        assert_eq!(ind.image.order(), &big(2));
        assert_eq!(ind.kernel_order, big(2));
        assert_eq!(c4.class_stabilizer_order(&sigma, 0).unwrap(), big(1));

        let one = Partition::from_labels(&[0; 4]).unwrap();
        let ind = c4.induced_action(&one).unwrap();
        assert_eq!(ind.image.order(), &big(1));
        assert_eq!(ind.kernel_order, big(4));
        assert_eq!(c4.class_stabilizer_order(&one, 0).unwrap(), big(1));

        let t16 = PermGroup::new(translations16()).unwrap();
        // cosets of the subgroup {0, 1, 6, 7}
        let labels: Vec<usize> = (0..16).map(|x: usize| [0, 1, 6, 7].iter().map(|h| x ^ h).min().unwrap()).collect();
        let cosets = Partition::from_labels(&labels).unwrap();
        let ind = t16.induced_action(&cosets).unwrap();
        assert_eq!(ind.image.order(), &big(4));
        assert_eq!(ind.kernel_order, big(4));
        assert_eq!(t16.class_stabilizer_order(&cosets, 2).unwrap(), big(1));

        let bad = Partition::from_labels(&[0, 0, 1, 1]).unwrap();
        assert!(matches!(
            c4.induced_action(&bad),
            Err(GroupError::PartitionNotInvariant { generator: 0, class: 0 })
        ));
    }

    fn random_perm(degree: usize) -> impl Strategy<Value = Permutation> {
        Just((0..degree).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    fn random_gens() -> impl Strategy<Value = Vec<Permutation>> {
        (2usize..=7).prop_flat_map(|n| prop::collection::vec(random_perm(n), 1..=3))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn order_matches_enumeration(gens in random_gens(), seed in any::<u64>()) {
            let g = PermGroup::with_seed(gens.clone(), seed).unwrap();
            let elems = enumerate(&gens);
            prop_assert_eq!(g.order(), &BigUint::from(elems.len()));
            let product = g.basic_orbit_lengths().iter().fold(BigUint::one(), |a, &l| a * BigUint::from(l));
            prop_assert_eq!(&product, g.order());
            prop_assert!(g.chain_is_complete());
            for e in &elems {
                prop_assert!(g.contains(e));
            }
        }

        #[test]
        fn orbit_stabilizer(gens in random_gens()) {
            let g = PermGroup::new(gens).unwrap();
            for x in 0..g.degree() {
                let orbit = g.orbit(x).unwrap().len();
                let stab = g.point_stabilizer(x).unwrap();
                prop_assert_eq!(stab.order() * BigUint::from(orbit), g.order().clone());
            }
        }

        #[test]
        fn base_prefix_gives_same_order(gens in random_gens(), x in 0usize..7) {
            let g = PermGroup::new(gens).unwrap();
            let x = x % g.degree();
            let chain = StabChain::build(g.degree(), g.generators(), &[x], 1);
            prop_assert_eq!(chain.base()[0], x);
            prop_assert_eq!(&chain.order(), g.order());
        }
    }
}
