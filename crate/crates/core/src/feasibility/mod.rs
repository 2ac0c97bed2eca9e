//! Admissible parameter tuples for a prime λ.
//!
//! A tuple is indexed by `(k0, z, A)` with
//! `v0 = (z(k0-1)+1)k0`, `v1 = A(zk0+1)+1`, `k1 = A(z(k0-1)+1)+1`,
//! `k = k0 k1`, `v = v0 v1` and `r = λ(zk0+1)`. Tuples with `A = z = 1`
//! are exactly those whose quotient is a symmetric 1-design with
//! `k1 = v1 - 1`; they are emitted by [`symmetric_family`] instead.
//!
//! Every quantity is an exact integer. Products that can exceed 64 bits are
//! held in `u128`, and certificates compare big integers.

use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{gcd, is_prime, Check, Relation};

mod enumerate;
mod fermat;

pub use enumerate::{enumerate_candidates, EnumerateOptions, Enumeration};
pub use fermat::{fermat_candidate, fermat_frame, FermatError, FermatFrame, FermatRecord, MAX_FERMAT_J};

/// Largest λ accepted by [`enumerate_candidates`].
pub const MAX_LAMBDA: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeasibilityError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("lambda {lambda} exceeds the limit of {limit}")]
    LambdaTooLarge { lambda: u64, limit: u64 },
    #[error("lambda {lambda} is smaller than k0 = {k0}")]
    LambdaTooSmall { k0: u64, lambda: u64 },
    #[error("gcd identity {name} fails at (k0, z, A) = ({k0}, {z}, {a})")]
    IdentityViolation { name: &'static str, k0: u64, z: u64, a: u64 },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Ordered as in the output sort.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    SymmetricOneDesign,
    Ia,
    Ib,
    Ic,
    IIa,
    IIb,
    NoFamily,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::SymmetricOneDesign => "SymmetricOneDesign",
            Family::Ia => "Ia",
            Family::Ib => "Ib",
            Family::Ic => "Ic",
            Family::IIa => "IIa",
            Family::IIb => "IIb",
            Family::NoFamily => "NoFamily",
        };
        f.write_str(name)
    }
}

/// A family with the condition that decided it. For [`Family::NoFamily`]
/// the condition names the first filter that failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeLabel {
    pub family: Family,
    pub condition: String,
}

/// `(v0, (v0-1)/(k0-1))` for `k0 >= 2`, `z >= 1`.
pub fn base_tuple(k0: u64, z: u64) -> (u64, u64) {
    let v0 = (z * (k0 - 1) + 1) * k0;
    let ratio = z * k0 + 1;
    debug_assert_eq!((v0 - 1) % (k0 - 1), 0);
    debug_assert_eq!((v0 - 1) / (k0 - 1), ratio);
    (v0, ratio)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DerivedTuple {
    pub v0: u64,
    pub v1: u64,
    pub k1: u64,
    pub k: u64,
    #[serde(serialize_with = "serialize_u128")]
    pub v: u128,
}

pub fn derived_tuple(k0: u64, z: u64, a: u64) -> DerivedTuple {
    let (v0, ratio) = base_tuple(k0, z);
    let v1 = a * ratio + 1;
    let k1 = a * (z * (k0 - 1) + 1) + 1;
    debug_assert_eq!(k1, a * (v0 / k0) + 1);
    DerivedTuple {
        v0,
        v1,
        k1,
        k: k0 * k1,
        v: v0 as u128 * v1 as u128,
    }
}

/// `(gcd(z, A+1), gcd(Az-1, A+k0))`, each confirmed against the direct gcds
/// `gcd(k1, v1)` and `gcd(k1, zk0+1)`, together with
/// `gcd(k1, v1, zk0+1) = 1`. Accepts `k0 >= 1`, `z >= 1`, `A >= 0`.
pub fn gcd_identities(k0: u64, z: u64, a: u64) -> Result<(u64, u64), FeasibilityError> {
    let k1 = a * (z * (k0 - 1) + 1) + 1;
    let ratio = z * k0 + 1;
    let v1 = a * ratio + 1;
    let first = gcd(z, a + 1);
    let second = gcd((a * z).abs_diff(1), a + k0);
    let violation = |name| FeasibilityError::IdentityViolation { name, k0, z, a };
    if first != gcd(k1, v1) {
        return Err(violation("(k1,v1) = (z,A+1)"));
    }
    if second != gcd(k1, ratio) {
        return Err(violation("(k1,zk0+1) = (Az-1,A+k0)"));
    }
    if crate::arith::gcd3(k1, v1, ratio) != 1 {
        return Err(violation("(k1,v1,zk0+1) = 1"));
    }
    Ok((first, second))
}

fn gcd_product(k0: u64, z: u64, a: u64) -> u64 {
    gcd(z, a + 1) * gcd((a * z).abs_diff(1), a + k0)
}

/// `k1 = (z,A+1)·(Az-1,A+k0)·λ`.
pub fn check_fundamental(k0: u64, z: u64, a: u64, lambda: u64) -> bool {
    derived_tuple(k0, z, a).k1 as u128 == gcd_product(k0, z, a) as u128 * lambda as u128
}

/// `k1 = (z,A+1)·(Az-1,A+k0)`.
pub fn check_type_two(k0: u64, z: u64, a: u64) -> bool {
    derived_tuple(k0, z, a).k1 == gcd_product(k0, z, a)
}

/// `2λ²(λ-1)`, the ceiling on `k`.
pub fn block_size_bound(lambda: u64) -> u128 {
    2 * (lambda as u128) * (lambda as u128) * (lambda as u128 - 1)
}

fn divides(d: u128, n: u128) -> bool {
    n % d == 0
}

fn label(family: Family, condition: impl Into<String>) -> TypeLabel {
    TypeLabel {
        family,
        condition: condition.into(),
    }
}

/// Assigns at most one family to `(k0, z, A)`. Tuples with `A = z = 1`
/// always get [`Family::NoFamily`].
pub fn classify_family(k0: u64, z: u64, a: u64, lambda: u64) -> TypeLabel {
    let reject = |filter: &str| label(Family::NoFamily, filter);
    if a == 1 && z == 1 {
        return reject("A = z = 1 gives a symmetric 1-design quotient");
    }
    let t = derived_tuple(k0, z, a);
    let (l, v0, v1, k1) = (lambda as u128, t.v0 as u128, t.v1 as u128, t.k1 as u128);
    let type_one = check_fundamental(k0, z, a, lambda);
    let type_two = check_type_two(k0, z, a);
    if !type_one && !type_two {
        return reject("k1 = (k1,v1)(k1,r/lambda) lambda or k1 = (k1,v1)(k1,r/lambda)");
    }
    if l < ((k0 - 1) * a + 1) as u128 {
        return reject("lambda >= (k0-1)A+1");
    }
    if type_one {
        if k0 as u128 == l && v0 == l * (l * l + l - 1) && k1 == l * (l + 1) && v1 == l * l + 2 * l + 2 && l > 2 {
            return label(Family::Ib, "(k0,v0,k1,v1) = (l, l(l^2+l-1), l(l+1), l^2+2l+2), l > 2");
        }
        if l % 4 == 1
            && k0 == 2
            && 2 * v0 == l * l + l + 2
            && 4 * k1 == l * l * (l - 1)
            && 2 * v1 == (l - 1) * (l * l - 2)
        {
            return label(Family::Ic, "(k0,v0,k1,v1) = (2, (l^2+l+2)/2, l^2(l-1)/4, (l-1)(l^2-2)/2), l = 1 mod 4");
        }
        if l <= k0 as u128 {
            return reject("Ia: lambda > k0");
        }
        if divides(l, v0 * (v0 - 1)) {
            return reject("Ia: lambda does not divide v0(v0-1)");
        }
        if divides(l, v1 * (v1 - 1)) {
            return reject("Ia: lambda does not divide v1(v1-1)");
        }
        // v(v-1) mod λ without overflow
        let vm = t.v % l;
        if (vm * ((vm + l - 1) % l)) % l == 0 {
            return reject("Ia: lambda does not divide v(v-1)");
        }
        return label(Family::Ia, "k1 = (z,A+1)(Az-1,A+k0) lambda");
    }
    if k0 == 2 && v0 == l + 1 && v1 == (l - 1) * (l - 1) && 2 * k1 == l * (l - 1) {
        return label(Family::IIa, "(k0,v0,v1,k1) = (2, l+1, (l-1)^2, l(l-1)/2)");
    }
    if k0 == 2 && v0 % 2 == 0 && v0 > 4 && l > v0 && v1 == (v0 - 2) * (v0 - 2) && 2 * k1 == (v0 - 2) * (v0 - 1) {
        return label(Family::IIb, "(k0,v1,k1) = (2, (v0-2)^2, (v0-2)(v0-1)/2), lambda > v0, v0 even");
    }
    reject("type II closed forms")
}

/// Which side of `zk0+1` vs λ a tuple falls on, with the assertions that
/// accompany the upper side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum C3Branch {
    RatioAtLeastLambda,
    RatioBelowLambda,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C3Outcome {
    pub branch: C3Branch,
    pub checks: Vec<Check>,
}

impl C3Outcome {
    pub fn passed(&self) -> bool {
        crate::arith::all_pass(&self.checks)
    }
}

pub fn check_c3_dichotomy(k0: u64, z: u64, a: u64, lambda: u64) -> C3Outcome {
    let t = derived_tuple(k0, z, a);
    let ratio = z * k0 + 1;
    if ratio < lambda {
        return C3Outcome {
            branch: C3Branch::RatioBelowLambda,
            checks: Vec::new(),
        };
    }
    let twice = (2 * a - 1) as u128;
    C3Outcome {
        branch: C3Branch::RatioAtLeastLambda,
        checks: vec![
            Check::new("A^2 <= v1-1", a as u128 * a as u128, Relation::Le, t.v1 - 1),
            Check::new("v1 != (2A-1)^2", t.v1, Relation::Ne, twice * twice),
        ],
    }
}

/// Values up to `u64::MAX` serialize as JSON numbers, larger ones as strings.
pub fn serialize_u128<S: Serializer>(value: &u128, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(*value) {
        Ok(small) => s.serialize_u64(small),
        Err(_) => s.serialize_str(&value.to_string()),
    }
}

fn serialize_opt_u128<S: Serializer>(value: &Option<u128>, s: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => serialize_u128(v, s),
        None => s.serialize_none(),
    }
}

/// One admissible (or, in diagnostic lists, rejected) tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamCandidate {
    pub family: Family,
    pub condition: String,
    pub lambda: u64,
    pub k0: u64,
    pub z: u64,
    #[serde(rename = "A")]
    pub a: u64,
    pub v0: u64,
    pub v1: u64,
    pub k1: u64,
    pub k: u64,
    #[serde(serialize_with = "serialize_u128")]
    pub v: u128,
    #[serde(serialize_with = "serialize_u128")]
    pub r: u128,
    /// `vr/k` when integral.
    #[serde(serialize_with = "serialize_opt_u128")]
    pub b: Option<u128>,
    /// Possible inner multiplicities; the parameters alone do not decide
    /// between 1 and λ when `k0 > 2`.
    pub mu_options: Vec<u64>,
    /// True when the full design would have `v = b`.
    pub symmetric: bool,
    pub certificates: Vec<Check>,
}

impl ParamCandidate {
    pub fn passed(&self) -> bool {
        crate::arith::all_pass(&self.certificates)
    }

    /// Key used for the output order.
    pub fn sort_key(&self) -> (Family, u128, u64, u64, u64) {
        (self.family, self.v, self.k0, self.z, self.a)
    }

    pub const CSV_HEADER: &'static str = "family,lambda,k0,z,A,v0,v1,k1,k,v,r,b";

    pub fn to_csv_row(&self) -> String {
        let b = self.b.map(|b| b.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.family, self.lambda, self.k0, self.z, self.a, self.v0, self.v1, self.k1, self.k, self.v, self.r, b
        )
    }
}

fn big(x: impl Into<BigUint>) -> BigUint {
    x.into()
}

/// Certificates shared by every tuple built from `(k0, z, A)`.
fn structural_checks(k0: u64, z: u64, a: u64, lambda: u64, t: &DerivedTuple) -> Vec<Check> {
    let ratio = z * k0 + 1;
    vec![
        Check::eq("v0 - 1 = (k0-1)(zk0+1)", t.v0 - 1, (k0 - 1) * ratio),
        Check::eq("v1 = A(zk0+1)+1", t.v1, a * ratio + 1),
        Check::eq("k1 = A(z(k0-1)+1)+1", t.k1, a * (z * (k0 - 1) + 1) + 1),
        Check::eq(
            "(v-1)(k0-1) = (v0-1)(k-1)",
            big(t.v - 1) * big(k0 - 1),
            big(t.v0 - 1) * big(t.k - 1),
        ),
        Check::eq(
            "(v1-1) v0 (k0-1) = (k1-1) k0 (v0-1)",
            big(t.v1 - 1) * big(t.v0) * big(k0 - 1),
            big(t.k1 - 1) * big(k0) * big(t.v0 - 1),
        ),
        Check::new("(k0-1)A+1 <= lambda", (k0 - 1) * a + 1, Relation::Le, lambda),
        Check::new("k <= 2 lambda^2 (lambda-1)", t.k, Relation::Le, block_size_bound(lambda)),
    ]
}

fn family_checks(family: Family, k0: u64, z: u64, a: u64, lambda: u64, t: &DerivedTuple) -> Vec<Check> {
    let l = lambda as u128;
    let g = gcd_product(k0, z, a) as u128;
    match family {
        Family::SymmetricOneDesign => vec![
            Check::new("k0 <= lambda", k0, Relation::Le, lambda),
            Check::eq("k1 = v1 - 1", t.k1, t.v1 - 1),
        ],
        Family::Ia => vec![
            Check::eq("k1 = (z,A+1)(Az-1,A+k0) lambda", t.k1, g * l),
            Check::new("lambda > k0", lambda, Relation::Gt, k0),
            Check::new("lambda does not divide v0(v0-1)", lambda, Relation::NotDivides, t.v0 as u128 * (t.v0 as u128 - 1)),
            Check::new("lambda does not divide v1(v1-1)", lambda, Relation::NotDivides, t.v1 as u128 * (t.v1 as u128 - 1)),
            Check::new("lambda does not divide v(v-1)", big(lambda), Relation::NotDivides, big(t.v) * big(t.v - 1)),
        ],
        Family::Ib => vec![
            Check::eq("k1 = (z,A+1)(Az-1,A+k0) lambda", t.k1, g * l),
            Check::eq("k0 = lambda", k0, lambda),
            Check::eq("v0 = l(l^2+l-1)", t.v0, l * (l * l + l - 1)),
            Check::eq("k1 = l(l+1)", t.k1, l * (l + 1)),
            Check::eq("v1 = l^2+2l+2", t.v1, l * l + 2 * l + 2),
        ],
        Family::Ic => vec![
            Check::eq("k1 = (z,A+1)(Az-1,A+k0) lambda", t.k1, g * l),
            Check::eq("lambda mod 4 = 1", lambda % 4, 1u64),
            Check::eq("2 v0 = l^2+l+2", 2 * t.v0 as u128, l * l + l + 2),
            Check::eq("4 k1 = l^2(l-1)", 4 * t.k1 as u128, l * l * (l - 1)),
            Check::eq("2 v1 = (l-1)(l^2-2)", 2 * t.v1 as u128, (l - 1) * (l * l - 2)),
        ],
        Family::IIa => vec![
            Check::eq("k1 = (z,A+1)(Az-1,A+k0)", t.k1, g),
            Check::eq("v0 = lambda+1", t.v0, lambda + 1),
            Check::eq("v1 = (lambda-1)^2", t.v1, (lambda - 1) * (lambda - 1)),
            Check::eq("2 k1 = lambda(lambda-1)", 2 * t.k1, lambda * (lambda - 1)),
        ],
        Family::IIb => vec![
            Check::eq("k1 = (z,A+1)(Az-1,A+k0)", t.k1, g),
            Check::new("v0 < lambda", t.v0, Relation::Lt, lambda),
            Check::eq("v0 mod 2 = 0", t.v0 % 2, 0u64),
            Check::eq("v1 = (v0-2)^2", t.v1, (t.v0 - 2) * (t.v0 - 2)),
            Check::eq("2 k1 = (v0-2)(v0-1)", 2 * t.k1, (t.v0 - 2) * (t.v0 - 1)),
        ],
        Family::NoFamily => Vec::new(),
    }
}

/// Builds the full record for `(k0, z, A)` under a given label.
pub fn make_candidate(k0: u64, z: u64, a: u64, lambda: u64, type_label: TypeLabel) -> ParamCandidate {
    let t = derived_tuple(k0, z, a);
    let r = lambda as u128 * (z * k0 + 1) as u128;
    let vr = big(t.v) * big(r);
    let k = big(t.k);
    let b = if (&vr % &k) == BigUint::from(0u32) {
        u128::try_from(vr / k).ok()
    } else {
        None
    };
    let mut certificates = structural_checks(k0, z, a, lambda, &t);
    certificates.extend(family_checks(type_label.family, k0, z, a, lambda, &t));
    if type_label.family == Family::SymmetricOneDesign {
        if let (Ok(v), Some(b), Ok(r)) = (u64::try_from(t.v), b, u64::try_from(r)) {
            let params = crate::design::DesignParams::new(v, b as u64, r, t.k, lambda);
            certificates.extend(crate::design::check_identities(&params));
        }
    }
    let mu_options = if k0 == 2 { vec![lambda] } else { vec![1, lambda] };
    ParamCandidate {
        family: type_label.family,
        condition: type_label.condition,
        lambda,
        k0,
        z,
        a,
        v0: t.v0,
        v1: t.v1,
        k1: t.k1,
        k: t.k,
        v: t.v,
        r,
        b,
        mu_options,
        symmetric: b == Some(t.v),
        certificates,
    }
}

/// The record with `v0 = k0²`, `v1 = k0+2`, `k1 = k0+1`, `r = (k0+1)λ`,
/// `b = k0(k0+2)λ`; it is a symmetric design exactly when `λ = k0`.
pub fn symmetric_family(k0: u64, lambda: u64) -> Result<ParamCandidate, FeasibilityError> {
    if !is_prime(lambda) {
        return Err(FeasibilityError::NotPrime(lambda));
    }
    if k0 < 2 || lambda < k0 {
        return Err(FeasibilityError::LambdaTooSmall { k0, lambda });
    }
    Ok(make_candidate(
        k0,
        1,
        1,
        lambda,
        label(Family::SymmetricOneDesign, "k1 = v1 - 1, 2 <= k0 <= lambda"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_tuples() {
        assert_eq!(base_tuple(3, 3), (21, 10));
        assert_eq!(base_tuple(2, 1), (4, 3));
        assert_eq!(base_tuple(2, 13), (28, 27));
    }

    #[test]
    fn derived_tuples() {
        let t = derived_tuple(2, 4, 1);
        assert_eq!((t.v0, t.v1, t.k1), (10, 10, 6));
        let t = derived_tuple(3, 3, 2);
        assert_eq!((t.v0, t.v1, t.k1), (21, 21, 15));
        let t = derived_tuple(2, 13, 1);
        assert_eq!((t.v0, t.v1, t.k1, t.k, t.v), (28, 28, 15, 30, 784));
    }

    #[test]
    fn gcd_identity_examples() {
        assert_eq!(gcd_identities(2, 13, 1).unwrap(), (1, 3));
        assert_eq!((gcd(15, 28), gcd(15, 27)), (1, 3));
        assert_eq!(gcd_identities(2, 4, 1).unwrap(), (2, 3));
        assert_eq!(gcd_identities(3, 3, 2).unwrap(), (3, 5));
        assert_eq!((gcd(15, 21), gcd(15, 10)), (3, 5));
    }

    #[test]
    fn fundamental_examples() {
        assert!(check_fundamental(2, 13, 1, 5));
        assert!(!check_fundamental(2, 4, 1, 5));
        assert!(!check_fundamental(2, 1, 1, 5));
    }

    #[test]
    fn classification_at_five() {
        // Ib: k0 = 5, z = 7, A = 1
        let t = derived_tuple(5, 7, 1);
        assert_eq!((t.v0, t.k1, t.v1), (145, 30, 37));
        assert_eq!(classify_family(5, 7, 1, 5).family, Family::Ib);
        // Ic: k0 = 2, z = 7, A = 3
        let t = derived_tuple(2, 7, 3);
        assert_eq!((t.v0, t.k1, t.v1), (16, 25, 46));
        assert_eq!(classify_family(2, 7, 3, 5).family, Family::Ic);
        // IIa: k0 = 2, z = 2, A = 3
        let t = derived_tuple(2, 2, 3);
        assert_eq!((t.v0, t.v1, t.k1), (6, 16, 10));
        assert_eq!(classify_family(2, 2, 3, 5).family, Family::IIa);
        assert_eq!(classify_family(2, 1, 1, 5).family, Family::NoFamily);
    }

    #[test]
    fn iib_closed_form() {
        // v0 = 2z+2, A = 2z-1 needs lambda > v0 and lambda >= 2z
        let (z, lambda) = (3, 11);
        let label = classify_family(2, z, 2 * z - 1, lambda);
        assert_eq!(label.family, Family::IIb, "{}", label.condition);
        let c = make_candidate(2, z, 2 * z - 1, lambda, label);
        assert_eq!((c.v0, c.v1, c.k1), (8, 36, 21));
        assert!(c.passed());
    }

    #[test]
    fn symmetric_records() {
        let c = symmetric_family(2, 2).unwrap();
        assert_eq!((c.v, c.k, c.r, c.b, c.symmetric), (16, 6, 6, Some(16), true));
        let c = symmetric_family(3, 3).unwrap();
        assert_eq!((c.v, c.k, c.r, c.b, c.symmetric), (45, 12, 12, Some(45), true));
        let c = symmetric_family(4, 5).unwrap();
        assert_eq!((c.v, c.k, c.r, c.b, c.symmetric), (96, 20, 25, Some(120), false));
        assert!(c.passed());
        assert_eq!(c.mu_options, vec![1, 5]);
        assert!(matches!(symmetric_family(5, 3), Err(FeasibilityError::LambdaTooSmall { .. })));
        assert!(matches!(symmetric_family(2, 4), Err(FeasibilityError::NotPrime(4))));
    }

    #[test]
    fn c3_examples() {
        let c = check_c3_dichotomy(2, 13, 1, 5);
        assert_eq!(c.branch, C3Branch::RatioAtLeastLambda);
        assert!(c.passed());
        assert_eq!(check_c3_dichotomy(2, 1, 3, 7).branch, C3Branch::RatioBelowLambda);
        assert_eq!(check_c3_dichotomy(2, 2, 1, 7).branch, C3Branch::RatioBelowLambda);
    }

    #[test]
    fn big_values_serialize_as_strings() {
        let c = make_candidate(2, 1, 1, 2, label(Family::NoFamily, "x"));
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["A"], 1);
        assert_eq!(json["v"], 16);
        let mut wide = c.clone();
        wide.v = u64::MAX as u128 + 1;
        let json = serde_json::to_value(&wide).unwrap();
        assert_eq!(json["v"], "18446744073709551616");
    }

    #[test]
    fn gcd_identities_exhaustive() {
        let mut cases = 0;
        for k0 in 1..=20 {
            for z in 1..=50 {
                for a in 0..=20 {
                    gcd_identities(k0, z, a).unwrap();
                    cases += 1;
                }
            }
        }
        assert_eq!(cases, 21_000);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn gcd_identities_random(k0 in 2u64..200, z in 1u64..2000, a in 1u64..200) {
            prop_assert!(gcd_identities(k0, z, a).is_ok());
        }

        #[test]
        fn at_most_one_family(k0 in 2u64..12, z in 1u64..60, a in 1u64..12, idx in 0usize..8) {
            let lambda = [2u64, 3, 5, 7, 11, 13, 17, 19][idx];
            let label = classify_family(k0, z, a, lambda);
            let c = make_candidate(k0, z, a, lambda, label.clone());
            // the family checks agree with the classifier
            if label.family != Family::NoFamily {
                prop_assert!(c.certificates.iter().skip(6).all(|ch| ch.pass), "{:?}", c);
            }
        }
    }
}
