//! The 16-point biplane from a difference set in `Z_2^4`, and certification
//! of a design, group and partition taken together.

use std::path::Path;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::arith::serialize_big;
use crate::decompose::{full_report, intersection_constant, DecomposeError, DecompositionReport, DesignKind, ReportOptions};
use crate::design::{verify_2design, DesignError, DesignParams, IncidenceStructure};
use crate::permgroup::{
    flag_orbit, parse_generators, preserves_blocks, FlagOrbit, GroupError, Partition, PartitionError, PermGroup,
    Permutation,
};
use crate::ParseError;

/// Order of the group `Z_2^4`; elements are 4-bit masks, addition is XOR.
pub const GROUP_ORDER: usize = 16;

/// A 6-subset of `Z_2^4` in which every nonzero element is a difference
/// exactly twice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceSet {
    pub elements: Vec<usize>,
}

/// How often each element of `Z_2^4` occurs as `a ^ b`, `a != b` in `set`.
pub fn difference_counts(set: &[usize]) -> [usize; GROUP_ORDER] {
    let mut counts = [0; GROUP_ORDER];
    for &a in set {
        for &b in set {
            if a != b {
                counts[a ^ b] += 1;
            }
        }
    }
    counts
}

pub fn is_difference_set(set: &[usize], lambda: usize) -> bool {
    let counts = difference_counts(set);
    counts[0] == 0 && counts[1..].iter().all(|&c| c == lambda)
}

/// First 6-subset containing 0, in lexicographic order, that is a
/// `(16, 6, 2)` difference set.
pub fn find_difference_set_16_6_2() -> DifferenceSet {
    // positions into 1..16 for the five nonzero elements
    let mut idx = [0usize, 1, 2, 3, 4];
    loop {
        let mut set = vec![0];
        set.extend(idx.iter().map(|&i| i + 1));
        if is_difference_set(&set, 2) {
            return DifferenceSet { elements: set };
        }
        // next 5-combination of 0..15
        let mut i = 4;
        while idx[i] == 10 + i {
            assert!(i > 0, "a (16,6,2) difference set exists");
            i -= 1;
        }
        idx[i] += 1;
        for j in i + 1..5 {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl DifferenceSet {
    pub fn translate(&self, g: usize) -> DifferenceSet {
        let mut elements: Vec<usize> = self.elements.iter().map(|&d| d ^ g).collect();
        elements.sort_unstable();
        DifferenceSet { elements }
    }
}

/// The 16 translates `D + g` as blocks, block `g` for translate `g`.
pub fn develop(ds: &DifferenceSet) -> IncidenceStructure {
    let blocks = (0..GROUP_ORDER)
        .map(|g| ds.elements.iter().map(|&d| d ^ g).collect())
        .collect();
    IncidenceStructure::new(GROUP_ORDER, blocks).expect("elements lie in the group")
}

/// Generators of the stabilizer of the cosets of `{0, 1, 6, 7}` in the full
/// automorphism group of the design developed from `{0, 1, 2, 4, 8, 15}`.
/// The group has order 768 and is flag-transitive.
pub const PARTITION_STABILIZER_GENERATORS: [[usize; GROUP_ORDER]; 7] = [
    [0, 1, 2, 3, 4, 5, 6, 7, 15, 14, 13, 12, 11, 10, 9, 8],
    [0, 1, 3, 2, 5, 4, 6, 7, 9, 8, 10, 11, 12, 13, 15, 14],
    [0, 1, 4, 5, 2, 3, 6, 7, 8, 9, 12, 13, 10, 11, 14, 15],
    [0, 1, 8, 9, 15, 14, 7, 6, 2, 3, 10, 11, 13, 12, 5, 4],
    [0, 6, 2, 4, 3, 5, 1, 7, 10, 12, 8, 14, 9, 15, 11, 13],
    [1, 0, 2, 3, 4, 5, 7, 6, 8, 9, 11, 10, 13, 12, 14, 15],
    [2, 3, 0, 1, 6, 7, 4, 5, 10, 11, 8, 9, 14, 15, 12, 13],
];

pub fn partition_stabilizer_generators() -> Vec<Permutation> {
    PARTITION_STABILIZER_GENERATORS
        .iter()
        .map(|g| Permutation::from_images(g.to_vec()).expect("listed images are bijections"))
        .collect()
}

/// `x -> x ^ 2^i` for `i < 4`.
pub fn translation_generators() -> Vec<Permutation> {
    (0..4)
        .map(|i| Permutation::from_images((0..GROUP_ORDER).map(|x| x ^ (1 << i)).collect()).expect("XOR is a bijection"))
        .collect()
}

/// The 35 subgroups of order 4, each as its sorted elements.
pub fn order4_subgroups() -> Vec<[usize; 4]> {
    let mut out: Vec<[usize; 4]> = Vec::new();
    for a in 1..GROUP_ORDER {
        for b in a + 1..GROUP_ORDER {
            let mut h = [0, a, b, a ^ b];
            h.sort_unstable();
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn coset_partition(subgroup: &[usize; 4]) -> Partition {
    let labels: Vec<usize> = (0..GROUP_ORDER)
        .map(|x| subgroup.iter().map(|h| x ^ h).min().expect("nonempty"))
        .collect();
    Partition::from_labels(&labels).expect("cosets have equal size")
}

/// The intersection constant of each coset partition, or `None` where the
/// block traces are not constant.
pub fn coset_survey(d: &IncidenceStructure) -> Vec<([usize; 4], Option<usize>)> {
    order4_subgroups()
        .into_iter()
        .map(|h| (h, intersection_constant(d, &coset_partition(&h)).ok().map(|i| i.k0)))
        .collect()
}

/// The row `(k0², k0, k0+2, k0+1)` with `v = k0²(k0+2)`, `k = k0(k0+1)`,
/// `r = (k0+1)λ`, `b = k0(k0+2)λ` for the case of a symmetric 1-design
/// quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetricQuotientRow {
    pub k0: u64,
    pub v0: u64,
    pub v1: u64,
    pub k1: u64,
    pub v: u64,
    pub k: u64,
    pub r: u64,
    pub b: u64,
    pub lambda: u64,
}

impl SymmetricQuotientRow {
    pub fn new(k0: u64, lambda: u64) -> Self {
        SymmetricQuotientRow {
            k0,
            v0: k0 * k0,
            v1: k0 + 2,
            k1: k0 + 1,
            v: k0 * k0 * (k0 + 2),
            k: k0 * (k0 + 1),
            r: (k0 + 1) * lambda,
            b: k0 * (k0 + 2) * lambda,
            lambda,
        }
    }

    pub fn matches(&self, report: &DecompositionReport) -> bool {
        let p = &report.design;
        report.d1_kind == DesignKind::SymmetricOneDesign
            && (report.v0, report.k0, report.v1, report.k1) == (self.v0, self.k0, self.v1, self.k1)
            && (p.v, p.k, p.r, p.b, p.lambda) == (self.v, self.k, self.r, self.b, self.lambda)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("reading {path}: {message}")]
    Io { path: String, message: String },
    #[error("{what}: {source}")]
    Parse { what: &'static str, source: ParseError },
    #[error("partition: {0}")]
    Partition(#[from] PartitionError),
    #[error("verify_2design: {0}")]
    NotADesign(#[from] DesignError),
    #[error("parameters: expected {expected:?}, found {found:?}")]
    UnexpectedParams { expected: DesignParams, found: DesignParams },
    #[error("group: {0}")]
    Group(#[from] GroupError),
    #[error("preserves_blocks: generator {generator} does not map blocks to blocks")]
    NotAnAutomorphism { generator: usize },
    #[error("decomposition: {0}")]
    Decompose(#[from] DecomposeError),
    #[error("identity certificate failed: {name}")]
    IdentityFailed { name: String },
    #[error("table row: decomposition does not match the symmetric-quotient row at k0 = {k0}")]
    TableRowMismatch { k0: u64 },
}

/// Everything established about a design, group and partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub params: DesignParams,
    pub generators_checked: usize,
    #[serde(serialize_with = "serialize_big")]
    pub group_order: BigUint,
    pub flag_orbit: FlagOrbit,
    pub flag_transitive: bool,
    pub imprimitive: bool,
    pub partition: Vec<Vec<usize>>,
    pub report: DecompositionReport,
    pub table_row: SymmetricQuotientRow,
}

/// Runs the whole pipeline and stops at the first failing certificate.
/// Flag-transitivity and imprimitivity are recorded, not required; a
/// primitive group cannot preserve `sigma`, so it fails in the
/// decomposition step.
pub fn certify(
    d: &IncidenceStructure,
    g: &PermGroup,
    sigma: &Partition,
    expected: Option<DesignParams>,
) -> Result<Certificate, CertifyError> {
    let params = verify_2design(d)?;
    if let Some(expected) = expected {
        if expected != params {
            return Err(CertifyError::UnexpectedParams { expected, found: params });
        }
    }
    for (i, p) in g.generators().iter().enumerate() {
        if !preserves_blocks(p, d)? {
            return Err(CertifyError::NotAnAutomorphism { generator: i });
        }
    }
    let orbit = flag_orbit(g, d)?;
    let imprimitive = !g.is_primitive()?;
    let report = full_report(
        d,
        Some(g),
        sigma,
        ReportOptions {
            delta: 0,
            require_prime_lambda: true,
        },
    )?;
    if let Some(failed) = report.failed_checks().next() {
        return Err(CertifyError::IdentityFailed {
            name: failed.name.clone(),
        });
    }
    let row = SymmetricQuotientRow::new(report.k0, params.lambda);
    if !row.matches(&report) {
        return Err(CertifyError::TableRowMismatch { k0: report.k0 });
    }
    Ok(Certificate {
        schema_version: crate::SCHEMA_VERSION,
        params,
        generators_checked: g.generators().len(),
        group_order: g.order().clone(),
        flag_transitive: orbit.is_transitive(),
        flag_orbit: orbit,
        imprimitive,
        partition: sigma.classes(),
        report,
        table_row: row,
    })
}

fn read(path: &Path) -> Result<String, CertifyError> {
    std::fs::read_to_string(path).map_err(|e| CertifyError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// [`certify`] on files in the design, generator and partition formats.
pub fn load_certified(
    design_file: &Path,
    gens_file: &Path,
    partition_file: &Path,
    expected: Option<DesignParams>,
    seed: u64,
) -> Result<Certificate, CertifyError> {
    let d = IncidenceStructure::parse(&read(design_file)?).map_err(|source| CertifyError::Parse {
        what: "design file",
        source,
    })?;
    let gens = parse_generators(&read(gens_file)?).map_err(|source| CertifyError::Parse {
        what: "generator file",
        source,
    })?;
    let g = PermGroup::with_seed(gens, seed)?;
    if g.degree() != d.v() {
        return Err(GroupError::DegreeMismatch {
            expected: d.v(),
            found: g.degree(),
        }
        .into());
    }
    let sigma = Partition::parse(&read(partition_file)?, d.v())?;
    certify(&d, &g, &sigma, expected)
}
