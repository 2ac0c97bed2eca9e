//! Actions of a point group on the blocks and flags of a design.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{GroupError, PermGroup, Permutation};
use crate::arith::serialize_big;
use crate::design::IncidenceStructure;

fn image_block(g: &Permutation, block: &[usize]) -> Vec<usize> {
    let mut image: Vec<usize> = block.iter().map(|&x| g.apply(x)).collect();
    image.sort_unstable();
    image
}

fn check_degree(g: &Permutation, d: &IncidenceStructure) -> Result<(), GroupError> {
    if g.degree() == d.v() {
        Ok(())
    } else {
        Err(GroupError::DegreeMismatch {
            expected: d.v(),
            found: g.degree(),
        })
    }
}

/// True iff `g` maps the block multiset onto itself.
pub fn preserves_blocks(g: &Permutation, d: &IncidenceStructure) -> Result<bool, GroupError> {
    check_degree(g, d)?;
    let mut counts: HashMap<Vec<usize>, isize> = HashMap::new();
    for block in d.blocks() {
        *counts.entry(block.clone()).or_default() += 1;
    }
    for block in d.blocks() {
        match counts.get_mut(&image_block(g, block)) {
            Some(c) => *c -= 1,
            None => return Ok(false),
        }
    }
    Ok(counts.values().all(|&c| c == 0))
}

/// The permutation `g` induces on `blocks` (distinct, sorted), if any.
pub fn block_permutation(g: &Permutation, blocks: &[Vec<usize>]) -> Option<Permutation> {
    let index: HashMap<&[usize], usize> = blocks.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
    let images = blocks
        .iter()
        .map(|b| index.get(image_block(g, b).as_slice()).copied())
        .collect::<Option<Vec<usize>>>()?;
    Permutation::from_images(images).ok()
}

/// `G` acting on points and distinct blocks at once: points keep their
/// labels, distinct block `i` becomes node `v + i`.
#[derive(Debug, Clone)]
pub struct CombinedAction {
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
    pub group: PermGroup,
}

impl CombinedAction {
    pub fn new(g: &PermGroup, d: &IncidenceStructure) -> Result<Self, GroupError> {
        let blocks = d.sorted_blocks();
        let mut distinct = blocks.clone();
        distinct.dedup();
        let v = d.v();
        let mut gens = Vec::with_capacity(g.generators().len());
        for (gi, p) in g.generators().iter().enumerate() {
            check_degree(p, d)?;
            if !preserves_blocks(p, d)? {
                let block = d
                    .blocks()
                    .iter()
                    .position(|b| distinct.binary_search(&image_block(p, b)).is_err())
                    .unwrap_or(0);
                return Err(GroupError::NotAnAutomorphismGroup { generator: gi, block });
            }
            let on_blocks = block_permutation(p, &distinct).expect("block set is preserved");
            let mut images = p.images();
            images.extend(on_blocks.images().into_iter().map(|i| v + i));
            gens.push(Permutation::from_images(images)?);
        }
        Ok(CombinedAction {
            v,
            blocks: distinct,
            group: PermGroup::with_seed(gens, g.seed)?,
        })
    }

    pub fn block_node(&self, block: usize) -> usize {
        self.v + block
    }

    pub fn block_index(&self, block: &[usize]) -> Option<usize> {
        self.blocks.binary_search(&block.to_vec()).ok()
    }
}

/// Size of the orbit of one flag against the total flag count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagOrbit {
    pub point: usize,
    pub block: usize,
    #[serde(serialize_with = "serialize_big")]
    pub orbit_size: BigUint,
    pub flags: u64,
}

impl FlagOrbit {
    pub fn is_transitive(&self) -> bool {
        self.orbit_size.to_u64() == Some(self.flags)
    }
}

/// Orbit of the flag (smallest point of block 0, block 0). Repeated blocks
/// count as separate flags, so a design with repeated blocks is never
/// flag-transitive here.
pub fn flag_orbit(g: &PermGroup, d: &IncidenceStructure) -> Result<FlagOrbit, GroupError> {
    let action = CombinedAction::new(g, d)?;
    let flags = d.blocks().iter().map(|b| b.len() as u64).sum();
    let first = d.block(0);
    let x = first[0];
    let block = action.block_index(first).expect("block 0 is listed");
    let point_orbit = g.orbit(x)?.len();
    let stab = action.group.point_stabilizer(x)?;
    let block_orbit = stab.orbit(action.block_node(block))?.len();
    Ok(FlagOrbit {
        point: x,
        block,
        orbit_size: BigUint::from(point_orbit) * BigUint::from(block_orbit),
        flags,
    })
}

pub fn is_flag_transitive(g: &PermGroup, d: &IncidenceStructure) -> Result<bool, GroupError> {
    Ok(flag_orbit(g, d)?.is_transitive())
}
