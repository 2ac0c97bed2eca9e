//! Brute-force scan over raw `(v0, k0, v1, k1)` quadruples.
//!
//! Shares nothing with the library: the relations are checked exactly as
//! stated, over every quadruple with `k0 k1 <= 2λ²(λ-1)`, and the families
//! are decided from raw gcds and closed forms.

#![allow(dead_code)]

use std::collections::BTreeSet;

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(family name, k0, v0, k1, v1)`.
pub type Row = (&'static str, u64, u64, u64, u64);

pub fn scan(lambda: u64) -> BTreeSet<Row> {
    let l = lambda as u128;
    let bound = 2 * l * l * (l - 1);
    let mut rows = BTreeSet::new();
    let mut k0 = 2u128;
    while 2 * k0 <= bound {
        let mut k1 = 2u128;
        while k0 * k1 <= bound {
            for v0 in k0 + 1..=bound {
                // rel2: (v1-1) v0 (k0-1) = (k1-1) k0 (v0-1)
                let num = (k1 - 1) * k0 * (v0 - 1);
                let den = v0 * (k0 - 1);
                if num % den != 0 {
                    continue;
                }
                let v1 = num / den + 1;
                if v1 <= k1 {
                    continue;
                }
                let (v, k) = (v0 * v1, k0 * k1);
                // rel1: (v-1)(k0-1) = (v0-1)(k-1)
                if (v - 1) * (k0 - 1) != (v0 - 1) * (k - 1) {
                    continue;
                }
                // quasi: v1 = A(v0-1)/(k0-1) + 1 and k1 = A v0/k0 + 1
                if ((v1 - 1) * (k0 - 1)) % (v0 - 1) != 0 {
                    continue;
                }
                let a = (v1 - 1) * (k0 - 1) / (v0 - 1);
                if a == 0 || (a * v0) % k0 != 0 || k1 != a * v0 / k0 + 1 {
                    continue;
                }
                // r = λ(v-1)/(k-1) and b = vr/k are integers
                if (l * (v - 1)) % (k - 1) != 0 || (v * (l * (v - 1) / (k - 1))) % k != 0 {
                    continue;
                }
                if let Some(name) = family(l, k0, v0, k1, v1, a) {
                    rows.insert((name, k0 as u64, v0 as u64, k1 as u64, v1 as u64));
                }
            }
            k1 += 1;
        }
        k0 += 1;
    }
    rows
}

fn family(l: u128, k0: u128, v0: u128, k1: u128, v1: u128, a: u128) -> Option<&'static str> {
    if k1 == v1 - 1 {
        return (l >= k0).then_some("SymmetricOneDesign");
    }
    // D1 a 2-design: λ1 = v0²λ/(k0²η) is an integer, so k0² | v0²λ
    if (v0 * v0 * l) % (k0 * k0) != 0 {
        return None;
    }
    if l < (k0 - 1) * a + 1 {
        return None;
    }
    let ratio = (v0 - 1) / (k0 - 1);
    let g = gcd(k1, v1) * gcd(k1, ratio);
    let (v, type_one, type_two) = (v0 * v1, k1 == g * l, k1 == g);
    let mut hits = Vec::new();
    if type_one {
        if k0 == l && v0 == l * (l * l + l - 1) && k1 == l * (l + 1) && v1 == l * l + 2 * l + 2 && l > 2 {
            hits.push("Ib");
        }
        if l % 4 == 1 && k0 == 2 && 2 * v0 == l * l + l + 2 && 4 * k1 == l * l * (l - 1) && 2 * v1 == (l - 1) * (l * l - 2) {
            hits.push("Ic");
        }
        if l > k0 && (v0 * (v0 - 1)) % l != 0 && (v1 * (v1 - 1)) % l != 0 && (v * (v - 1)) % l != 0 {
            hits.push("Ia");
        }
    }
    if type_two {
        if k0 == 2 && v0 == l + 1 && v1 == (l - 1) * (l - 1) && 2 * k1 == l * (l - 1) {
            hits.push("IIa");
        }
        if k0 == 2 && v0 % 2 == 0 && v0 > 4 && l > v0 && v1 == (v0 - 2) * (v0 - 2) && 2 * k1 == (v0 - 2) * (v0 - 1) {
            hits.push("IIb");
        }
    }
    assert!(hits.len() <= 1, "two families at {:?}: {hits:?}", (k0, v0, k1, v1));
    hits.pop()
}
