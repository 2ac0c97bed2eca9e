//! Incidence structures and 2-design verification.
//!
//! Blocks are stored as strictly increasing point lists. Repeated blocks are
//! allowed and every count below is taken with multiplicity.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{Check, Relation};
use crate::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("block {block}: point {point} is outside [0, {v})")]
    OutOfRangePoint { block: usize, point: usize, v: usize },
    #[error("block {block}: point {point} appears more than once")]
    DuplicatePointInBlock { block: usize, point: usize },
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("a design needs at least two points and one block")]
    TooSmall,
    #[error("block {block} has size {size}, expected {expected}")]
    NonUniformBlockSize {
        block: usize,
        size: usize,
        expected: usize,
    },
    #[error("point {point} lies on {count} blocks, expected {expected}")]
    NonUniformReplication {
        point: usize,
        count: usize,
        expected: usize,
    },
    #[error("points {x} and {y} lie together on {count} blocks, expected {expected}")]
    NonUniformPairCount {
        x: usize,
        y: usize,
        count: usize,
        expected: usize,
    },
    #[error("parameters {params} fail the identity {check}")]
    DegenerateParams { params: DesignParams, check: String },
}

/// A finite point set `[0, v)` with an ordered list of blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceStructure {
    v: usize,
    blocks: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        let mut stored = Vec::with_capacity(blocks.len());
        for (i, mut block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(DesignError::EmptyBlock { block: i });
            }
            if let Some(&point) = block.iter().find(|&&p| p >= v) {
                return Err(DesignError::OutOfRangePoint { block: i, point, v });
            }
            block.sort_unstable();
            if let Some(w) = block.windows(2).find(|w| w[0] == w[1]) {
                return Err(DesignError::DuplicatePointInBlock {
                    block: i,
                    point: w[0],
                });
            }
            stored.push(block);
        }
        Ok(IncidenceStructure { v, blocks: stored })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    /// Every incident (point, block index) pair, blocks in order.
    pub fn flags(&self) -> impl Iterator<Item = Flag> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |&p| Flag { point: p, block: i }))
    }

    /// The block list sorted, so two structures with the same block multiset
    /// compare equal.
    pub fn sorted_blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = self.blocks.clone();
        blocks.sort_unstable();
        blocks
    }

    /// Image of the structure under the point map `x -> map[x]`.
    pub fn relabel(&self, map: &[usize]) -> Result<Self, DesignError> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&p| map[p]).collect())
            .collect();
        IncidenceStructure::new(self.v, blocks)
    }

    /// Parses the text format: `v b` on the first line, then `b` lines of
    /// 0-based point indices. Anything after the last block other than
    /// whitespace is rejected.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate();
        let (header_no, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or_else(|| ParseError::new(1, "missing header line `v b`"))?;
        let header_no = header_no + 1;
        let fields = parse_numbers(header, header_no)?;
        let &[v, b] = fields.as_slice() else {
            return Err(ParseError::new(header_no, "header must be `v b`"));
        };
        let mut blocks = Vec::with_capacity(b);
        for _ in 0..b {
            let (no, line) = lines.next().ok_or_else(|| {
                ParseError::new(
                    header_no + blocks.len() + 1,
                    format!("expected {b} block lines, found {}", blocks.len()),
                )
            })?;
            blocks.push((no + 1, parse_numbers(line, no + 1)?));
        }
        if let Some((no, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(ParseError::new(no + 1, "trailing content after the last block"));
        }
        let line_of: Vec<usize> = blocks.iter().map(|(no, _)| *no).collect();
        IncidenceStructure::new(v, blocks.into_iter().map(|(_, b)| b).collect()).map_err(|e| {
            let line = match &e {
                DesignError::OutOfRangePoint { block, .. }
                | DesignError::DuplicatePointInBlock { block, .. }
                | DesignError::EmptyBlock { block } => line_of[*block],
                _ => header_no,
            };
            ParseError::new(line, e.to_string())
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.v, self.b());
        for block in &self.blocks {
            let line: Vec<String> = block.iter().map(|p| p.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn parse_numbers(line: &str, line_no: usize) -> Result<Vec<usize>, ParseError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| ParseError::new(line_no, format!("`{tok}` is not a nonnegative integer")))
        })
        .collect()
}

/// An incident (point, block) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Flag {
    pub point: usize,
    pub block: usize,
}

/// The parameter tuple `(v, b, r, k, λ)` of a 2-design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DesignParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
}

impl DesignParams {
    pub fn new(v: u64, b: u64, r: u64, k: u64, lambda: u64) -> Self {
        DesignParams { v, b, r, k, lambda }
    }

    pub fn is_symmetric(&self) -> bool {
        self.v == self.b
    }

    pub fn is_nontrivial(&self) -> bool {
        2 < self.k && self.k < self.v
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "2-({},{},{}), b={}, r={}",
            self.v, self.k, self.lambda, self.b, self.r
        )
    }
}

/// The standard identities `vr = bk`, `λ(v-1) = r(k-1)`, `k <= r` and
/// `r² > λv`, each with both sides. Failures are reported, not raised.
pub fn check_identities(p: &DesignParams) -> Vec<Check> {
    let (v, b, r, k, l) = (
        p.v as u128,
        p.b as u128,
        p.r as u128,
        p.k as u128,
        p.lambda as u128,
    );
    vec![
        Check::eq("vr = bk", v * r, b * k),
        Check::eq(
            "lambda(v-1) = r(k-1)",
            l * v.saturating_sub(1),
            r * k.saturating_sub(1),
        ),
        Check::new("k <= r", k, Relation::Le, r),
        Check::new("r^2 > lambda v", r * r, Relation::Gt, l * v),
    ]
}

/// Confirms `d` is a 2-design and returns its parameters.
///
/// Block sizes, replication numbers and pair counts are all counted directly;
/// the first violation is returned with a witness.
pub fn verify_2design(d: &IncidenceStructure) -> Result<DesignParams, DesignError> {
    let v = d.v();
    if v < 2 || d.b() == 0 {
        return Err(DesignError::TooSmall);
    }
    let k = d.block(0).len();
    if let Some((i, b)) = d.blocks().iter().enumerate().find(|(_, b)| b.len() != k) {
        return Err(DesignError::NonUniformBlockSize {
            block: i,
            size: b.len(),
            expected: k,
        });
    }

    let mut through: Vec<Vec<usize>> = vec![Vec::new(); v];
    for (i, block) in d.blocks().iter().enumerate() {
        for &p in block {
            through[p].push(i);
        }
    }
    let r = through[0].len();
    if let Some((point, on)) = through.iter().enumerate().find(|(_, on)| on.len() != r) {
        return Err(DesignError::NonUniformReplication {
            point,
            count: on.len(),
            expected: r,
        });
    }

    // Pair counts row by row: for each x, count co-occurrences with y > x.
    let mut lambda = None;
    let mut row = vec![0usize; v];
    for x in 0..v - 1 {
        row[x + 1..].iter_mut().for_each(|c| *c = 0);
        for &bi in &through[x] {
            for &y in d.block(bi) {
                if y > x {
                    row[y] += 1;
                }
            }
        }
        for y in x + 1..v {
            let expected = *lambda.get_or_insert(row[y]);
            if row[y] != expected {
                return Err(DesignError::NonUniformPairCount {
                    x,
                    y,
                    count: row[y],
                    expected,
                });
            }
        }
    }

    let params = DesignParams::new(
        v as u64,
        d.b() as u64,
        r as u64,
        k as u64,
        lambda.unwrap_or(0) as u64,
    );
    if let Some(failed) = check_identities(&params).into_iter().find(|c| !c.pass) {
        return Err(DesignError::DegenerateParams {
            params,
            check: failed.name,
        });
    }
    Ok(params)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::arith::all_pass;
    use proptest::prelude::*;

    #[test]
    fn construction_errors() {
        assert!(matches!(
            IncidenceStructure::new(3, vec![vec![0, 5]]),
            Err(DesignError::OutOfRangePoint { point: 5, .. })
        ));
        assert!(matches!(
            IncidenceStructure::new(3, vec![vec![1, 1]]),
            Err(DesignError::DuplicatePointInBlock { point: 1, .. })
        ));
        assert!(matches!(
            IncidenceStructure::new(3, vec![vec![0, 1], vec![]]),
            Err(DesignError::EmptyBlock { block: 1 })
        ));
    }

    #[test]
    fn blocks_are_sorted_and_order_kept() {
        let d = IncidenceStructure::new(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(d.blocks(), &[vec![1, 3], vec![0, 2]]);
    }

    #[test]
    fn fano_parameters() {
        let d = fano();
        assert_eq!(d.b(), 7);
        let p = verify_2design(&d).unwrap();
        assert_eq!(p, DesignParams::new(7, 7, 3, 3, 1));
        assert!(all_pass(&check_identities(&p)));
        assert!(p.is_symmetric() && p.is_nontrivial());
    }

    #[test]
    fn complete_pair_design() {
        let p = verify_2design(&complete_pairs(4)).unwrap();
        assert_eq!(p, DesignParams::new(4, 6, 3, 2, 1));
        assert!(!p.is_symmetric());
        assert!(!p.is_nontrivial());
    }

    #[test]
    fn exceptional_parameter_identities() {
        let biplane = check_identities(&DesignParams::new(16, 16, 6, 6, 2));
        assert!(all_pass(&biplane));
        assert_eq!(biplane[3].lhs, 36u32.into());
        assert_eq!(biplane[3].rhs, 32u32.into());
        let d45 = check_identities(&DesignParams::new(45, 45, 12, 12, 3));
        assert!(all_pass(&d45));
        assert_eq!((d45[3].lhs.clone(), d45[3].rhs.clone()), (144u32.into(), 135u32.into()));
        let p = DesignParams::new(16, 16, 6, 6, 2);
        assert!(p.is_symmetric() && p.is_nontrivial());
    }

    #[test]
    fn witnesses_for_failures() {
        let d = IncidenceStructure::new(4, vec![vec![0, 1], vec![2]]).unwrap();
        assert!(matches!(
            verify_2design(&d),
            Err(DesignError::NonUniformBlockSize { block: 1, .. })
        ));
        let d = IncidenceStructure::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(matches!(
            verify_2design(&d),
            Err(DesignError::NonUniformReplication { point: 1, .. })
        ));
        // replication constant (2) but pairs {0,1} twice, {0,2} never
        let d = IncidenceStructure::new(4, vec![vec![0, 1], vec![0, 1], vec![2, 3], vec![2, 3]])
            .unwrap();
        assert!(matches!(
            verify_2design(&d),
            Err(DesignError::NonUniformPairCount { x: 0, y: 2, count: 0, expected: 2 })
        ));
        let d = IncidenceStructure::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            verify_2design(&d),
            Err(DesignError::DegenerateParams { .. })
        ));
    }

    #[test]
    fn repeated_blocks_count_with_multiplicity() {
        let mut blocks = fano().blocks().to_vec();
        blocks.extend(fano().blocks().iter().cloned());
        let d = IncidenceStructure::new(7, blocks).unwrap();
        assert_eq!(verify_2design(&d).unwrap(), DesignParams::new(7, 14, 6, 3, 2));
    }

    #[test]
    fn text_round_trip_and_errors() {
        let d = fano();
        assert_eq!(IncidenceStructure::parse(&d.to_text()).unwrap(), d);
        let err = IncidenceStructure::parse("3 1\n0 1\n2\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = IncidenceStructure::parse("3 2\n0 1\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = IncidenceStructure::parse("3 1\n0 7\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = IncidenceStructure::parse("3 1\n0 x\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(IncidenceStructure::parse("3 1\n0 1\n\n  \n").is_ok());
    }

    fn pair_double_count(d: &IncidenceStructure, p: &DesignParams) {
        let lhs: u128 = d
            .blocks()
            .iter()
            .map(|b| crate::arith::binomial(b.len() as u64, 2))
            .sum();
        assert_eq!(lhs, p.lambda as u128 * crate::arith::binomial(p.v, 2));
        assert_eq!(d.flags().count() as u64, p.v * p.r);
        assert_eq!(d.flags().count() as u64, p.b * p.k);
    }

    proptest! {
        #[test]
        fn relabeling_keeps_parameters(seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for d in [fano(), complete_pairs(6)] {
                let mut map: Vec<usize> = (0..d.v()).collect();
                map.shuffle(&mut rng);
                let p = verify_2design(&d).unwrap();
                let q = verify_2design(&d.relabel(&map).unwrap()).unwrap();
                prop_assert_eq!(p, q);
                prop_assert!(all_pass(&check_identities(&q)));
                pair_double_count(&d, &p);
            }
        }
    }
}
