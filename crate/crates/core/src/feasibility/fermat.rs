//! The Fermat-prime family: `λ = q + 1` with `q = 2^(2^j)`.
//!
//! The record is the symmetric-family tuple with `k0 = q`, so
//! `v = q²(q+2)`, `k = q(q+1)`, `r = λ²` and `b = q(q+2)λ`. Whether a design
//! with these parameters exists is open; only necessary conditions are
//! checked here.

use serde::Serialize;
use thiserror::Error;

use super::{symmetric_family, ParamCandidate};
use crate::arith::{is_prime, pepin_is_prime, Check};
use crate::design::{verify_2design, DesignParams, IncidenceStructure};

/// Largest `j` tested. Pépin's test at `j = 14` squares 16384-bit numbers
/// 16383 times, which is still quick.
pub const MAX_FERMAT_J: u32 = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FermatError {
    #[error("j must be at least 1")]
    ZeroJ,
    #[error("2^(2^{j}) + 1 is not prime")]
    NotFermatPrime { j: u32 },
    #[error("j = {j} exceeds the tested range 1..={max}")]
    OutOfRange { j: u32, max: u32 },
    #[error("components for j = {j} exceed desk scale; parameters only")]
    ScaleLimit { j: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FermatRecord {
    pub schema_version: u32,
    pub j: u32,
    /// `q = 2^(2^j)`, the order of the translation plane.
    pub q: u64,
    pub candidate: ParamCandidate,
    /// Forced inner design, an affine translation plane of order `q`.
    pub d0: String,
    /// Forced quotient, all `(q+1)`-subsets of `q+2` points.
    pub d1: String,
    pub checks: Vec<Check>,
    pub status: &'static str,
}

/// Tests `2^(2^j) + 1` for primality exactly and builds the record.
pub fn fermat_candidate(j: u32) -> Result<FermatRecord, FermatError> {
    if j == 0 {
        return Err(FermatError::ZeroJ);
    }
    if j > MAX_FERMAT_J {
        return Err(FermatError::OutOfRange { j, max: MAX_FERMAT_J });
    }
    let prime = if j <= 5 {
        is_prime((1u64 << (1u32 << j)) + 1)
    } else {
        pepin_is_prime(j)
    };
    if !prime {
        return Err(FermatError::NotFermatPrime { j });
    }
    // Only j <= 4 can reach here: every larger j in range is composite.
    if j > 4 {
        return Err(FermatError::ScaleLimit { j });
    }
    let q = 1u64 << (1u32 << j);
    let lambda = q + 1;
    let candidate = symmetric_family(q, lambda).expect("q + 1 is prime and exceeds q");
    let l = lambda as u128;
    let checks = vec![
        Check::eq("lambda = k0 + 1", lambda, candidate.k0 + 1),
        Check::eq("r = (k0+1) lambda", candidate.r, (candidate.k0 as u128 + 1) * l),
        Check::eq("r = lambda^2", candidate.r, l * l),
        Check::eq(
            "lambda(v-1) = r(k-1)",
            l * (candidate.v - 1),
            candidate.r * (candidate.k as u128 - 1),
        ),
        Check::eq("v = v0 v1", candidate.v, candidate.v0 as u128 * candidate.v1 as u128),
    ];
    Ok(FermatRecord {
        schema_version: crate::SCHEMA_VERSION,
        j,
        q,
        d0: format!("AG_2({q}): 2-({}, {q}, 1)", q * q),
        d1: format!("trivial symmetric 2-({}, {}, {q})", q + 2, q + 1),
        candidate,
        checks,
        status: "OPEN",
    })
}

/// The two forced components, built explicitly when small enough.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermatFrame {
    pub record: FermatRecord,
    /// `AG_2(q)` and its verified parameters.
    pub translation_plane: Option<(IncidenceStructure, DesignParams)>,
    /// All `(q+1)`-subsets of a `(q+2)`-set and its verified parameters.
    pub quotient: Option<(IncidenceStructure, DesignParams)>,
}

/// Multiplication in GF(4) = GF(2)[t]/(t²+t+1), elements as 2-bit masks.
fn gf4_mul(a: usize, b: usize) -> usize {
    let mut acc = 0;
    for i in 0..2 {
        if b >> i & 1 == 1 {
            acc ^= a << i;
        }
    }
    if acc & 4 != 0 {
        acc ^= 0b111;
    }
    acc
}

/// `AG_2(4)`: point `(x, y)` is `4x + y`; lines `y = mx + c` and `x = c`.
pub fn affine_plane_4() -> IncidenceStructure {
    let mut blocks = Vec::with_capacity(20);
    for m in 0..4 {
        for c in 0..4 {
            blocks.push((0..4).map(|x| 4 * x + (gf4_mul(m, x) ^ c)).collect());
        }
    }
    for c in 0..4 {
        blocks.push((0..4).map(|y| 4 * c + y).collect());
    }
    IncidenceStructure::new(16, blocks).expect("points are in range")
}

/// All `(n-1)`-subsets of `n` points.
pub fn complement_of_points(n: usize) -> IncidenceStructure {
    let blocks = (0..n).rev().map(|skip| (0..n).filter(|&x| x != skip).collect()).collect();
    IncidenceStructure::new(n, blocks).expect("points are in range")
}

/// Explicit components for `j = 1`; parameters only for `j = 2`;
/// [`FermatError::ScaleLimit`] beyond.
pub fn fermat_frame(j: u32) -> Result<FermatFrame, FermatError> {
    let record = fermat_candidate(j)?;
    match j {
        1 => {
            let plane = affine_plane_4();
            let quotient = complement_of_points(6);
            let plane_params = verify_2design(&plane).expect("AG_2(4) is a 2-design");
            let quotient_params = verify_2design(&quotient).expect("5-subsets of 6 points form a 2-design");
            Ok(FermatFrame {
                record,
                translation_plane: Some((plane, plane_params)),
                quotient: Some((quotient, quotient_params)),
            })
        }
        2 => Ok(FermatFrame {
            record,
            translation_plane: None,
            quotient: None,
        }),
        _ => Err(FermatError::ScaleLimit { j }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::all_pass;

    #[test]
    fn gf4_is_a_field() {
        for a in 1..4 {
            assert_eq!((1..4).filter(|&b| gf4_mul(a, b) == 1).count(), 1);
            for b in 0..4 {
                assert_eq!(gf4_mul(a, b), gf4_mul(b, a));
                for c in 0..4 {
                    assert_eq!(gf4_mul(a, b ^ c), gf4_mul(a, b) ^ gf4_mul(a, c));
                }
            }
        }
    }

    #[test]
    fn first_record() {
        let rec = fermat_candidate(1).unwrap();
        let c = &rec.candidate;
        assert_eq!((c.v, c.k, c.lambda, c.r, c.b), (96, 20, 5, 25, Some(120)));
        assert_eq!((c.v0, c.v1, c.k1), (16, 6, 5));
        assert!(all_pass(&rec.checks));
        let check = rec.checks.iter().find(|c| c.name == "lambda(v-1) = r(k-1)").unwrap();
        assert_eq!(check.lhs, (5u32 * 95).into());
        assert_eq!(check.rhs, (25u32 * 19).into());
    }

    #[test]
    fn later_records() {
        let rec = fermat_candidate(2).unwrap();
        assert_eq!((rec.candidate.v, rec.candidate.k, rec.candidate.lambda), (4608, 272, 17));
        for j in [3, 4] {
            let rec = fermat_candidate(j).unwrap();
            assert_eq!(rec.candidate.r, rec.candidate.lambda as u128 * rec.candidate.lambda as u128);
            assert!(all_pass(&rec.checks));
            assert!(rec.candidate.passed());
        }
        assert_eq!(fermat_candidate(5), Err(FermatError::NotFermatPrime { j: 5 }));
        assert_eq!(fermat_candidate(0), Err(FermatError::ZeroJ));
        assert!(matches!(fermat_candidate(15), Err(FermatError::OutOfRange { .. })));
    }

    #[test]
    fn pepin_agrees_on_small_j() {
        for j in 1..=5 {
            assert_eq!(pepin_is_prime(j), is_prime((1u64 << (1u32 << j)) + 1));
        }
        assert_eq!(fermat_candidate(6), Err(FermatError::NotFermatPrime { j: 6 }));
    }

    #[test]
    fn frame_components() {
        let frame = fermat_frame(1).unwrap();
        let (plane, p) = frame.translation_plane.unwrap();
        assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (16, 20, 5, 4, 1));
        // 5 parallel classes of 4 disjoint lines
        for class in plane.blocks().chunks(4) {
            let mut covered: Vec<usize> = class.iter().flatten().copied().collect();
            covered.sort_unstable();
            assert_eq!(covered, (0..16).collect::<Vec<_>>());
        }
        let (_, q) = frame.quotient.unwrap();
        assert_eq!((q.v, q.b, q.r, q.k, q.lambda), (6, 6, 5, 5, 4));
        assert!(fermat_frame(2).unwrap().translation_plane.is_none());
        assert_eq!(fermat_frame(3).unwrap_err(), FermatError::ScaleLimit { j: 3 });
    }
}
