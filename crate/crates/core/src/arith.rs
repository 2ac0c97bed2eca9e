//! Exact integer helpers and named comparison records.
//!
//! Every filter and identity in this crate is an exact integer statement, so
//! the results are stored as [`Check`] values carrying both compared sides.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub use num_integer::gcd;

/// Relation tested by a [`Check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    /// `lhs` divides `rhs`.
    Divides,
    /// `lhs` does not divide `rhs`.
    NotDivides,
}

impl Relation {
    fn holds(self, lhs: &BigUint, rhs: &BigUint) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Ne => lhs != rhs,
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Divides => divides(lhs, rhs),
            Relation::NotDivides => !divides(lhs, rhs),
        }
    }
}

fn divides(d: &BigUint, n: &BigUint) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        (n % d).is_zero()
    }
}

/// A named exact comparison between two nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(serialize_with = "serialize_big")]
    pub lhs: BigUint,
    pub relation: Relation,
    #[serde(serialize_with = "serialize_big")]
    pub rhs: BigUint,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        lhs: impl Into<BigUint>,
        relation: Relation,
        rhs: impl Into<BigUint>,
    ) -> Self {
        let lhs = lhs.into();
        let rhs = rhs.into();
        let pass = relation.holds(&lhs, &rhs);
        Check {
            name: name.into(),
            lhs,
            relation,
            rhs,
            pass,
        }
    }

    pub fn eq(name: impl Into<String>, lhs: impl Into<BigUint>, rhs: impl Into<BigUint>) -> Self {
        Check::new(name, lhs, Relation::Eq, rhs)
    }
}

/// True when every check in the list passed.
pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Integers that fit in 64 bits are written as JSON numbers, larger ones as
/// decimal strings.
pub fn serialize_big<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match value.to_u64() {
        Some(small) => s.serialize_u64(small),
        None => s.serialize_str(&value.to_str_radix(10)),
    }
}

pub fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    gcd(gcd(a, b), c)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pépin's test on the Fermat number `2^(2^j) + 1`, `j >= 1`.
///
/// Reduction modulo `F = 2^n + 1` uses `h·2^n + l ≡ l - h`, so only squarings
/// are performed on full-width numbers.
pub fn pepin_is_prime(j: u32) -> bool {
    assert!(j >= 1);
    let n = 1usize << j;
    let one = BigUint::one();
    let modulus = (&one << n) + &one;
    let mask = (&one << n) - &one;
    let reduce = |x: BigUint| -> BigUint {
        let mut x = x;
        while x >= modulus {
            let high = &x >> n;
            let low = &x & &mask;
            x = if low >= high {
                low - high
            } else {
                low + &modulus - high
            };
        }
        x
    };
    // 3^((F-1)/2) = 3^(2^(n-1)) by n-1 squarings.
    let mut x = BigUint::from(3u32);
    for _ in 0..n - 1 {
        x = reduce(&x * &x);
    }
    x == &modulus - &one
}

/// Number of `k`-subsets of an `n`-set, exact.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_match_trial_division() {
        for n in 0u64..5000 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "n = {n}");
        }
    }

    #[test]
    fn fermat_numbers() {
        assert!(is_prime(5) && is_prime(17) && is_prime(257) && is_prime(65537));
        let f5 = (1u64 << 32) + 1;
        assert!(!is_prime(f5));
        assert_eq!(f5 % 641, 0);
        for j in 1..=4 {
            assert!(pepin_is_prime(j), "F{j}");
        }
        for j in 5..=8 {
            assert!(!pepin_is_prime(j), "F{j}");
        }
    }

    #[test]
    fn check_relations() {
        assert!(Check::new("d", 3u32, Relation::Divides, 12u32).pass);
        assert!(!Check::new("d", 5u32, Relation::Divides, 12u32).pass);
        assert!(Check::new("nd", 5u32, Relation::NotDivides, 12u32).pass);
        assert!(Check::new("lt", 3u32, Relation::Lt, 4u32).pass);
        assert!(!Check::eq("eq", 3u32, 4u32).pass);
    }

    #[test]
    fn big_values_serialize_as_strings() {
        let c = Check::eq("x", BigUint::from(u64::MAX) + 1u32, 1u32);
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"18446744073709551616\""));
        assert!(json.contains("\"rhs\":1"));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(15, 5), 3003);
        assert_eq!(binomial(6, 5), 6);
        assert_eq!(binomial(3, 5), 0);
    }
}
