//! Decomposition of a 2-design over a point partition into an inner design
//! on one class and a quotient design on the classes.
//!
//! Every constant is counted directly and every identity relating them is
//! recorded as a [`Check`], so the module also works as a falsifier on
//! arbitrary inputs.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, is_prime, serialize_big, Check, Relation};
use crate::design::{verify_2design, DesignError, DesignParams, IncidenceStructure};
use crate::permgroup::{flag_orbit, CombinedAction, FlagOrbit, GroupError, Partition, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("input is not a 2-design: {0}")]
    NotADesign(DesignError),
    #[error("partition covers {found} points, design has {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("partition into {v1} classes of size {v0} is trivial")]
    TrivialPartition { v0: usize, v1: usize },
    #[error("block {block} meets class {class} in {size} points, expected 0 or {expected}")]
    NonConstantIntersection {
        block: usize,
        class: usize,
        size: usize,
        expected: usize,
    },
    #[error("blocks meet classes in single points")]
    ConstantIsOne,
    #[error("every block lies inside a single class")]
    BlocksInsideClasses,
    #[error("block {block} meets {count} classes, expected {expected}")]
    NonConstantTraceCount {
        block: usize,
        count: usize,
        expected: usize,
    },
    #[error("{part} block {witness:?} occurs {count} times, expected {expected}")]
    NonConstantMultiplicity {
        part: &'static str,
        witness: Vec<usize>,
        count: usize,
        expected: usize,
    },
    #[error("inner structure on class {class} is not a 2-design: {source}")]
    InnerNotDesign { class: usize, source: DesignError },
    #[error("quotient structure is not a 2-design: {0}")]
    QuotientNotDesign(DesignError),
    #[error("group is not flag-transitive (flag orbit {orbit} of {flags})")]
    NotFlagTransitive { orbit: String, flags: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DesignKind {
    #[serde(rename = "2-design")]
    TwoDesign,
    #[serde(rename = "symmetric 1-design")]
    SymmetricOneDesign,
}

/// Intersection constant with the checks `k0 | k` and the cross-multiplied
/// relation `(v-1)(k0-1) = (v0-1)(k-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intersection {
    pub params: DesignParams,
    pub k0: usize,
    pub checks: Vec<Check>,
}

pub fn intersection_constant(d: &IncidenceStructure, sigma: &Partition) -> Result<Intersection, DecomposeError> {
    if sigma.v() != d.v() {
        return Err(DecomposeError::DegreeMismatch {
            expected: d.v(),
            found: sigma.v(),
        });
    }
    let params = verify_2design(d).map_err(DecomposeError::NotADesign)?;
    if sigma.is_trivial() {
        return Err(DecomposeError::TrivialPartition {
            v0: sigma.v0(),
            v1: sigma.v1(),
        });
    }
    let mut k0 = 0;
    let mut counts = vec![0usize; sigma.v1()];
    for (bi, block) in d.blocks().iter().enumerate() {
        counts.iter_mut().for_each(|c| *c = 0);
        for &x in block {
            counts[sigma.class_of(x)] += 1;
        }
        for (class, &size) in counts.iter().enumerate() {
            if size == 0 {
                continue;
            }
            if k0 == 0 {
                k0 = size;
            } else if size != k0 {
                return Err(DecomposeError::NonConstantIntersection {
                    block: bi,
                    class,
                    size,
                    expected: k0,
                });
            }
        }
    }
    if k0 == 1 {
        return Err(DecomposeError::ConstantIsOne);
    }
    let (v, k, v0, k0u) = (params.v, params.k, sigma.v0() as u64, k0 as u64);
    let checks = vec![
        Check::new("k0 | k", k0u, Relation::Divides, k),
        Check::eq("(v-1)(k0-1) = (v0-1)(k-1)", (v - 1) * (k0u - 1), (v0 - 1) * (k - 1)),
    ];
    Ok(Intersection { params, k0, checks })
}

/// Distinct blocks with their common multiplicity.
fn distinct_with_multiplicity(
    blocks: Vec<Vec<usize>>,
    part: &'static str,
) -> Result<(Vec<Vec<usize>>, usize), DecomposeError> {
    let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for b in blocks {
        *counts.entry(b).or_default() += 1;
    }
    let expected = *counts.values().next().expect("at least one block");
    if let Some((witness, &count)) = counts.iter().find(|(_, &c)| c != expected) {
        return Err(DecomposeError::NonConstantMultiplicity {
            part,
            witness: witness.clone(),
            count,
            expected,
        });
    }
    Ok((counts.into_keys().collect(), expected))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerDesign {
    pub class: usize,
    /// Distinct traces, relabeled into `[0, v0)` in increasing point order.
    pub design: IncidenceStructure,
    pub mu: usize,
    pub kind: DesignKind,
    pub params: Option<DesignParams>,
}

/// The traces `B ∩ Δ` of blocks meeting class `delta`.
pub fn inner_design(d: &IncidenceStructure, sigma: &Partition, delta: usize) -> Result<InnerDesign, DecomposeError> {
    let Intersection { k0, .. } = intersection_constant(d, sigma)?;
    inner_design_unchecked(d, sigma, delta, k0)
}

fn inner_design_unchecked(
    d: &IncidenceStructure,
    sigma: &Partition,
    delta: usize,
    k0: usize,
) -> Result<InnerDesign, DecomposeError> {
    let class = sigma.class(delta);
    let mut local = vec![usize::MAX; d.v()];
    for (i, &x) in class.iter().enumerate() {
        local[x] = i;
    }
    let traces: Vec<Vec<usize>> = d
        .blocks()
        .iter()
        .map(|b| b.iter().filter(|&&x| sigma.class_of(x) == delta).map(|&x| local[x]).collect::<Vec<_>>())
        .filter(|t| !t.is_empty())
        .collect();
    let (distinct, mu) = distinct_with_multiplicity(traces, "inner")?;
    let design = IncidenceStructure::new(class.len(), distinct).expect("traces are valid blocks");
    let (kind, params) = match verify_2design(&design) {
        Ok(p) => (DesignKind::TwoDesign, Some(p)),
        Err(_) if k0 + 1 == class.len() => (DesignKind::SymmetricOneDesign, None),
        Err(source) => return Err(DecomposeError::InnerNotDesign { class: delta, source }),
    };
    Ok(InnerDesign {
        class: delta,
        design,
        mu,
        kind,
        params,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientDesign {
    /// Distinct class sets `B(Σ)`.
    pub design: IncidenceStructure,
    pub k1: usize,
    pub eta: usize,
    pub kind: DesignKind,
    /// Present whenever the distinct class sets form a 2-design.
    pub params: Option<DesignParams>,
}

pub fn quotient_design(d: &IncidenceStructure, sigma: &Partition) -> Result<QuotientDesign, DecomposeError> {
    intersection_constant(d, sigma)?;
    quotient_design_unchecked(d, sigma)
}

fn quotient_design_unchecked(d: &IncidenceStructure, sigma: &Partition) -> Result<QuotientDesign, DecomposeError> {
    let mut met = Vec::with_capacity(d.b());
    let mut k1 = None;
    for (bi, block) in d.blocks().iter().enumerate() {
        let mut classes: Vec<usize> = block.iter().map(|&x| sigma.class_of(x)).collect();
        classes.sort_unstable();
        classes.dedup();
        let expected = *k1.get_or_insert(classes.len());
        if classes.len() != expected {
            return Err(DecomposeError::NonConstantTraceCount {
                block: bi,
                count: classes.len(),
                expected,
            });
        }
        met.push(classes);
    }
    let k1 = k1.expect("designs have blocks");
    if k1 == 1 {
        return Err(DecomposeError::BlocksInsideClasses);
    }
    let (distinct, eta) = distinct_with_multiplicity(met, "quotient")?;
    let design = IncidenceStructure::new(sigma.v1(), distinct).expect("class sets are valid blocks");
    let verified = verify_2design(&design);
    let kind = if k1 + 1 == sigma.v1() {
        DesignKind::SymmetricOneDesign
    } else {
        DesignKind::TwoDesign
    };
    let params = match (kind, verified) {
        (_, Ok(p)) => Some(p),
        (DesignKind::SymmetricOneDesign, Err(_)) => None,
        (DesignKind::TwoDesign, Err(e)) => return Err(DecomposeError::QuotientNotDesign(e)),
    };
    Ok(QuotientDesign {
        design,
        k1,
        eta,
        kind,
        params,
    })
}

/// The split `η = η0·η1` with `η0 = gcd(η, v0/k0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaSplit {
    pub eta0: u64,
    pub eta1: u64,
    pub r1_prime: u64,
}

/// Group data attached to a report when generators are supplied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSection {
    pub flag_transitive: bool,
    pub flag_orbit: FlagOrbit,
    #[serde(serialize_with = "serialize_big")]
    pub order: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub induced_order: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub kernel_order: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub class_stabilizer_order: BigUint,
    /// Orbit lengths of `G_Δ^Σ` on the other classes.
    pub class_subdegrees: Vec<usize>,
    /// Informational predicates; they do not decide the report's outcome.
    pub predicates: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub schema_version: u32,
    pub design: DesignParams,
    pub v0: u64,
    pub v1: u64,
    pub delta: usize,
    pub k0: u64,
    pub k1: u64,
    pub mu: u64,
    pub eta: u64,
    pub lambda0: Option<u64>,
    pub lambda1: Option<u64>,
    pub r1: Option<u64>,
    /// Number of distinct quotient blocks.
    pub b1: u64,
    /// Absent unless `k0 | v0`, `(k0-1) | (v0-1)` and λ is prime.
    pub eta_split: Option<EtaSplit>,
    pub d0_kind: DesignKind,
    pub d1_kind: DesignKind,
    pub d0_params: Option<DesignParams>,
    pub d1_params: Option<DesignParams>,
    pub identity_certificates: Vec<Check>,
    pub group: Option<GroupSection>,
}

impl DecompositionReport {
    /// True when every identity certificate holds.
    pub fn passed(&self) -> bool {
        crate::arith::all_pass(&self.identity_certificates)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.identity_certificates.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    /// Class used for the inner design.
    pub delta: usize,
    /// Adds a certificate that λ is prime.
    pub require_prime_lambda: bool,
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

pub fn full_report(
    d: &IncidenceStructure,
    group: Option<&PermGroup>,
    sigma: &Partition,
    options: ReportOptions,
) -> Result<DecompositionReport, DecomposeError> {
    if let Some(g) = group {
        if g.degree() != d.v() {
            return Err(GroupError::DegreeMismatch {
                expected: d.v(),
                found: g.degree(),
            }
            .into());
        }
        g.preserves_partition(sigma)?;
    }
    let Intersection { params, k0, checks } = intersection_constant(d, sigma)?;
    let delta = options.delta;
    if delta >= sigma.v1() {
        return Err(GroupError::PointOutOfRange {
            point: delta,
            degree: sigma.v1(),
        }
        .into());
    }
    let inner = inner_design_unchecked(d, sigma, delta, k0)?;
    let quotient = quotient_design_unchecked(d, sigma)?;
    let mut certs = checks;

    let DesignParams { b, r, k, lambda, .. } = params;
    let (v0, v1) = (sigma.v0() as u64, sigma.v1() as u64);
    let (k0, k1) = (k0 as u64, quotient.k1 as u64);
    let (mu, eta) = (inner.mu as u64, quotient.eta as u64);
    let b1 = quotient.design.b() as u64;

    certs.push(Check::eq("k = k0 k1", k, k0 * k1));
    certs.push(Check::eq("b = b1 eta", b, b1 * eta));

    // Every class must give the same inner parameters.
    let mut agreeing = 0u64;
    for c in 0..sigma.v1() {
        let other = inner_design_unchecked(d, sigma, c, k0 as usize)?;
        if (other.mu, other.kind, other.params) == (inner.mu, inner.kind, inner.params) {
            agreeing += 1;
        }
    }
    certs.push(Check::eq("inner designs agree across classes", agreeing, v1));

    let lambda0 = inner.params.map(|p| p.lambda);
    if let Some(l0) = lambda0 {
        certs.push(Check::eq("mu lambda0 = lambda", mu * l0, lambda));
    }

    let lambda1 = quotient.params.map(|p| p.lambda);
    let mut r1 = None;
    if let Some(p1) = quotient.params {
        let l1 = p1.lambda;
        certs.push(Check::eq(
            "(v1-1) v0 (k0-1) = (k1-1) k0 (v0-1)",
            big(v1 - 1) * big(v0) * big(k0 - 1),
            big(k1 - 1) * big(k0) * big(v0 - 1),
        ));
        certs.push(Check::eq(
            "lambda1 k0^2 eta = v0^2 lambda",
            big(l1) * big(k0) * big(k0) * big(eta),
            big(v0) * big(v0) * big(lambda),
        ));
        certs.push(Check::eq("r1 (k1-1) = (v1-1) lambda1", big(p1.r) * big(k1 - 1), big(v1 - 1) * big(l1)));
        certs.push(Check::eq(
            "r1 k0 (k0-1) eta = v0 (v0-1) lambda",
            big(p1.r) * big(k0) * big(k0 - 1) * big(eta),
            big(v0) * big(v0 - 1) * big(lambda),
        ));
        if is_prime(lambda) && r % lambda == 0 {
            let g = gcd(p1.r, l1);
            certs.push(Check::eq(
                "r1/(r1,lambda1) (k0-1) = v0-1",
                big(p1.r / g) * big(k0 - 1),
                big(v0 - 1),
            ));
        }
        r1 = Some(p1.r);
    }

    if options.require_prime_lambda {
        certs.push(Check::eq("lambda is prime", u64::from(is_prime(lambda)), 1u64));
    }

    let eta_split = if v0 % k0 == 0 && (v0 - 1) % (k0 - 1) == 0 && is_prime(lambda) {
        let eta0 = gcd(eta, v0 / k0);
        let eta1 = eta / eta0;
        let r1_prime = (v0 / (k0 * eta0)) * ((v0 - 1) / (k0 - 1));
        certs.push(Check::new("eta0 k0 | v0", eta0 * k0, Relation::Divides, v0));
        if let Some(r1) = r1 {
            certs.push(Check::eq("r1 eta1 = r1' lambda", big(r1) * big(eta1), big(r1_prime) * big(lambda)));
        }
        Some(EtaSplit { eta0, eta1, r1_prime })
    } else {
        None
    };

    let group = match group {
        Some(g) => Some(group_section(g, d, sigma, delta, r1, lambda1)?),
        None => None,
    };

    Ok(DecompositionReport {
        schema_version: crate::SCHEMA_VERSION,
        design: params,
        v0,
        v1,
        delta,
        k0,
        k1,
        mu,
        eta,
        lambda0,
        lambda1,
        r1,
        b1,
        eta_split,
        d0_kind: inner.kind,
        d1_kind: quotient.kind,
        d0_params: inner.params,
        d1_params: quotient.params,
        identity_certificates: certs,
        group,
    })
}

/// Group data for `sigma`; the quotient predicates need `r1` and `lambda1`.
pub fn group_section(
    g: &PermGroup,
    d: &IncidenceStructure,
    sigma: &Partition,
    delta: usize,
    r1: Option<u64>,
    lambda1: Option<u64>,
) -> Result<GroupSection, DecomposeError> {
    let orbit = flag_orbit(g, d)?;
    let induced = g.induced_action(sigma)?;
    let class_stab = induced.image.point_stabilizer(delta)?;
    let mut class_subdegrees: Vec<usize> = class_stab
        .orbits()
        .into_iter()
        .filter(|o| o != &[delta])
        .map(|o| o.len())
        .collect();
    class_subdegrees.sort_unstable();
    let stab_order = class_stab.order().clone();

    let mut predicates = vec![Check::new(
        "|G^Sigma| < |G_Delta^Sigma|^2",
        induced.image.order().clone(),
        Relation::Lt,
        &stab_order * &stab_order,
    )];
    if let (Some(r1), Some(l1)) = (r1, lambda1) {
        let v1 = sigma.v1() as u64;
        let ratio = r1 / gcd(r1, l1);
        predicates.push(Check::new("(r1/(r1,lambda1))^2 > v1", big(ratio) * big(ratio), Relation::Gt, big(v1)));
        let e = class_subdegrees.iter().fold(v1 - 1, |acc, &s| gcd(acc, s as u64));
        predicates.push(Check::new(
            "r1/(r1,lambda1) | gcd(subdegrees of G_Delta^Sigma, v1-1)",
            ratio,
            Relation::Divides,
            e,
        ));
    }

    Ok(GroupSection {
        flag_transitive: orbit.is_transitive(),
        flag_orbit: orbit,
        order: g.order().clone(),
        induced_order: induced.image.order().clone(),
        kernel_order: induced.kernel_order,
        class_stabilizer_order: stab_order,
        class_subdegrees,
        predicates,
    })
}

/// Rank of `G` on points against the rank of a block stabilizer on its block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankComparison {
    pub rank_on_points: usize,
    pub rank_on_block: usize,
    pub equal: bool,
}

pub fn rank_equality_check(g: &PermGroup, d: &IncidenceStructure) -> Result<RankComparison, DecomposeError> {
    let orbit = flag_orbit(g, d)?;
    if !orbit.is_transitive() {
        return Err(DecomposeError::NotFlagTransitive {
            orbit: orbit.orbit_size.to_string(),
            flags: orbit.flags,
        });
    }
    let rank_on_points = g.rank()?;
    let action = CombinedAction::new(g, d)?;
    let block = &action.blocks[0];
    let x = block[0];
    let stab = action.group.pointwise_stabilizer(&[action.block_node(0), x])?;
    let mut assigned = vec![false; action.group.degree()];
    let mut orbits_on_rest = 0;
    for &y in &block[1..] {
        if !assigned[y] {
            orbits_on_rest += 1;
            for z in stab.orbit(y)? {
                assigned[z] = true;
            }
        }
    }
    let rank_on_block = 1 + orbits_on_rest;
    Ok(RankComparison {
        rank_on_points,
        rank_on_block,
        equal: rank_on_points == rank_on_block,
    })
}

/// Small helper for callers that only hold a report.
pub fn report_to_json(report: &DecompositionReport) -> serde_json::Value {
    serde_json::to_value(report).expect("reports serialize")
}
