//! Short and long Weierstrass models, naive height, and reduction to the
//! minimal twist (no twelfth power dividing gcd(A^3, B^2)).

use crate::arith::{factor_big, int_valuation, Rational};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The curve y^2 = x^3 + Ax + B with integer coefficients and
/// 4A^3 + 27B^2 != 0, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShortCurve {
    pub a: i128,
    pub b: i128,
}

impl ShortCurve {
    pub fn new(a: i128, b: i128) -> Result<Self> {
        if disc_core(a, b).is_zero() {
            return Err(Error::SingularCurve {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        Ok(ShortCurve { a, b })
    }

    pub fn height(&self) -> u128 {
        height(self.a, self.b)
    }

    pub fn disc(&self) -> BigInt {
        disc_core(self.a, self.b)
    }

    pub fn is_minimal(&self) -> bool {
        is_minimal(self.a, self.b)
    }

    pub fn minimal_model(&self) -> ShortCurve {
        let (a, b) = reduce_i128(self.a, self.b);
        ShortCurve { a, b }
    }
}

impl fmt::Display for ShortCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.a, self.b)
    }
}

impl FromStr for ShortCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        let a = it
            .next()
            .and_then(|t| t.parse::<i128>().ok())
            .ok_or_else(|| Error::Parse(format!("expected \"A B\", got {s:?}")))?;
        let b = it
            .next()
            .and_then(|t| t.parse::<i128>().ok())
            .ok_or_else(|| Error::Parse(format!("expected \"A B\", got {s:?}")))?;
        if it.next().is_some() {
            return Err(Error::Parse(format!("trailing tokens in {s:?}")));
        }
        ShortCurve::new(a, b)
    }
}

// JSON form uses decimal strings so coefficients stay exact past 2^53.
#[derive(Serialize, Deserialize)]
struct CurveJson {
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
}

impl Serialize for ShortCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveJson {
            a: self.a.to_string(),
            b: self.b.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ShortCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CurveJson::deserialize(d)?;
        let a = j.a.parse::<i128>().map_err(serde::de::Error::custom)?;
        let b = j.b.parse::<i128>().map_err(serde::de::Error::custom)?;
        ShortCurve::new(a, b).map_err(serde::de::Error::custom)
    }
}

/// A long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
/// with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongCurve {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

/// 4A^3 + 27B^2, exactly.
pub fn disc_core(a: i128, b: i128) -> BigInt {
    // fast path: |A| below 2^41 keeps 4A^3 inside i128
    const LIM: i128 = 1 << 41;
    if a.abs() < LIM && b.abs() < LIM << 20 {
        BigInt::from(4 * a * a * a + 27 * b * b)
    } else {
        disc_core_big(&BigInt::from(a), &BigInt::from(b))
    }
}

pub fn disc_core_big(a: &BigInt, b: &BigInt) -> BigInt {
    4 * a * a * a + 27 * b * b
}

/// Naive height max(|A|^3, B^2).
pub fn height(a: i128, b: i128) -> u128 {
    let a = a.unsigned_abs();
    let b = b.unsigned_abs();
    let a3 = a
        .checked_mul(a)
        .and_then(|s| s.checked_mul(a))
        .expect("|A|^3 overflows u128; use height_big");
    let b2 = b.checked_mul(b).expect("B^2 overflows u128; use height_big");
    a3.max(b2)
}

pub fn height_big(a: &BigInt, b: &BigInt) -> BigInt {
    let a3 = a.abs().pow(3);
    let b2 = b * b;
    a3.max(b2)
}

/// Largest reduction exponent at p: k = min(floor(v_p(A)/4), floor(v_p(B)/6)),
/// one-sided when A or B vanishes.
fn k_at(va: Option<i64>, vb: Option<i64>) -> i64 {
    match (va, vb) {
        (Some(va), Some(vb)) => (va / 4).min(vb / 6),
        (None, Some(vb)) => vb / 6,
        (Some(va), None) => va / 4,
        (None, None) => 0,
    }
}

fn reduce_i128(mut a: i128, mut b: i128) -> (i128, i128) {
    if a == 0 && b == 0 {
        return (0, 0);
    }
    // Candidate primes p need p^4 | A and p^6 | B (one-sided when a
    // coefficient vanishes), so p^4 divides g below in every case.
    let g: u128 = if a == 0 {
        // need p^6 | B; p^4 | B is a weaker, sufficient screen
        b.unsigned_abs()
    } else if b == 0 {
        a.unsigned_abs()
    } else {
        a.unsigned_abs().gcd(&b.unsigned_abs())
    };
    let limit = crate::arith::isqrt_u128(crate::arith::isqrt_u128(g));
    let mut p = 2u128;
    while p <= limit {
        let p4 = p * p * p * p;
        if g % p4 == 0 {
            let va = (a != 0).then(|| int_valuation(&BigInt::from(a), p as u64));
            let vb = (b != 0).then(|| int_valuation(&BigInt::from(b), p as u64));
            let k = k_at(va, vb);
            if k > 0 {
                let p4k = (p as i128).pow(4 * k as u32);
                let p6k = (p as i128).pow(6 * k as u32);
                a /= p4k;
                b /= p6k;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (a, b)
}

fn reduce_big(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return Ok((BigInt::zero(), BigInt::zero()));
    }
    let g = if a.is_zero() {
        b.abs()
    } else if b.is_zero() {
        a.abs()
    } else {
        a.gcd(b)
    };
    // Only the powerful part of g matters: strip primes whose 4th power
    // divides g. Everything else cannot reach k >= 1.
    let mut core = g.clone();
    let mut powerful = BigInt::from(1);
    let mut p = 2u64;
    while p <= 100_000 {
        let pb = BigInt::from(p);
        if &pb * &pb > core {
            break;
        }
        let mut e = 0u32;
        while (&core % &pb).is_zero() {
            core /= &pb;
            e += 1;
        }
        if e >= 4 {
            powerful *= pb.pow(e);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // `core` now has no prime factor below 10^5; a prime p > 10^5 with
    // p^4 | g requires core >= 10^20.
    let threshold = BigInt::from(10u64).pow(20);
    if core >= threshold {
        for (pb, e) in factor_big(&core)? {
            if e >= 4 {
                powerful *= pb.pow(e);
            }
        }
    }
    let mut a = a.clone();
    let mut b = b.clone();
    for (pb, _) in factor_big(&powerful).unwrap_or_default() {
        let p = pb.to_u64().expect("reduction primes fit u64");
        let va = (!a.is_zero()).then(|| int_valuation(&a, p));
        let vb = (!b.is_zero()).then(|| int_valuation(&b, p));
        let k = k_at(va, vb);
        if k > 0 {
            a /= pb.pow(4 * k as u32);
            b /= pb.pow(6 * k as u32);
        }
    }
    Ok((a, b))
}

/// Reduce (A,B) to the unique twist with gcd(A^3, B^2) free of twelfth powers.
pub fn minimal_reduce(a: i128, b: i128) -> Result<(i128, i128)> {
    if disc_core(a, b).is_zero() {
        return Err(Error::SingularCurve {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    Ok(reduce_i128(a, b))
}

/// `minimal_reduce` for coefficients beyond i128 (family specializations).
pub fn minimal_reduce_big(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
    if disc_core_big(a, b).is_zero() {
        return Err(Error::SingularCurve {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    reduce_big(a, b)
}

pub fn is_minimal(a: i128, b: i128) -> bool {
    reduce_i128(a, b) == (a, b)
}

/// Complete the square and the cube: returns the rational (A, B) with
/// y^2 = x^3 + Ax + B isomorphic to the input over Q. Normalization is the
/// standard (c4, c6) one scaled so integer long models give integer output:
/// (A, B) = (-27 c4, -54 c6), i.e. the (u^4, u^6)-twist by u with u^2 = 3,
/// composed with the usual x -> (x - 3 b2)/36 change of variables.
pub fn long_to_short(c: &LongCurve) -> Result<(Rational, Rational)> {
    let b2 = &c.a1 * &c.a1 + crate::arith::rat_int(4) * &c.a2;
    let b4 = crate::arith::rat_int(2) * &c.a4 + &c.a1 * &c.a3;
    let b6 = &c.a3 * &c.a3 + crate::arith::rat_int(4) * &c.a6;
    let c4 = &b2 * &b2 - crate::arith::rat_int(24) * &b4;
    let c6 = -(&b2 * &b2 * &b2) + crate::arith::rat_int(36) * &b2 * &b4
        - crate::arith::rat_int(216) * &b6;
    let a = crate::arith::rat_int(-27) * c4;
    let b = crate::arith::rat_int(-54) * c6;
    let disc = crate::arith::rat_int(4) * &a * &a * &a + crate::arith::rat_int(27) * &b * &b;
    if disc.is_zero() {
        return Err(Error::SingularCurve {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    Ok((a, b))
}

/// Scale a rational short model (A, B) to integers by the twist
/// (A, B) -> (u^4 A, u^6 B) with u the lcm of the denominators.
pub fn clear_denominators(a: &Rational, b: &Rational) -> (BigInt, BigInt) {
    let u = num_integer::lcm(a.denom().clone(), b.denom().clone());
    let ai = (a * Rational::from_integer(u.pow(4))).to_integer();
    let bi = (b * Rational::from_integer(u.pow(6))).to_integer();
    (ai, bi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use proptest::prelude::*;

    #[test]
    fn disc_core_examples() {
        assert_eq!(disc_core(0, 1), BigInt::from(27));
        assert_eq!(disc_core(-1, 0), BigInt::from(-4));
        let d = disc_core(135, 297);
        assert_eq!(d, BigInt::from(4i64 * 135 * 135 * 135 + 27 * 297 * 297));
        assert!(!d.is_zero());
        // singular: (-3, 2) has 4*(-27) + 27*4 = 0
        assert!(disc_core(-3, 2).is_zero());
    }

    #[test]
    fn height_examples() {
        assert_eq!(height(2, 3), 9);
        assert_eq!(height(-3, 2), 27);
        assert_eq!(height(0, 0), 0);
    }

    #[test]
    fn minimal_reduce_examples() {
        assert_eq!(minimal_reduce(0, 64).unwrap(), (0, 1));
        assert_eq!(minimal_reduce(16, 64).unwrap(), (1, 1));
        assert_eq!(minimal_reduce(-891, 4374).unwrap(), (-11, 6));
        assert!(minimal_reduce(-3, 2).is_err());
        assert!(is_minimal(0, 1));
        assert!(!is_minimal(0, 64));
        assert!(is_minimal(-11, 6));
    }

    #[test]
    fn minimal_reduce_big_matches_small() {
        for a in -50i128..=50 {
            for b in -50i128..=50 {
                let big = reduce_big(&BigInt::from(a), &BigInt::from(b)).unwrap();
                let small = reduce_i128(a, b);
                assert_eq!(big, (BigInt::from(small.0), BigInt::from(small.1)));
            }
        }
        // a large-prime twist: p = 100003, (p^4 * 2, p^6 * 3)
        let p = BigInt::from(100_003u64);
        let a = p.pow(4) * 2;
        let b = p.pow(6) * 3;
        assert_eq!(
            reduce_big(&a, &b).unwrap(),
            (BigInt::from(2), BigInt::from(3))
        );
    }

    #[test]
    fn long_to_short_kubert_z4() {
        // y^2 + xy - y = x^3 - x^2 (the t = 1 Kubert Z/4 curve)
        let c = LongCurve {
            a1: rat_int(1),
            a2: rat_int(-1),
            a3: rat_int(-1),
            a4: rat_int(0),
            a6: rat_int(0),
        };
        let (a, b) = long_to_short(&c).unwrap();
        let (ai, bi) = clear_denominators(&a, &b);
        let (am, bm) = minimal_reduce_big(&ai, &bi).unwrap();
        assert_eq!((am, bm), (BigInt::from(-11), BigInt::from(6)));
    }

    #[test]
    fn long_to_short_already_short() {
        let c = LongCurve {
            a1: rat_int(0),
            a2: rat_int(0),
            a3: rat_int(0),
            a4: rat_int(5),
            a6: rat_int(7),
        };
        let (a, b) = long_to_short(&c).unwrap();
        // (u^4, u^6)-scaling of (5, 7): verify A^3 B^-2-style invariance
        // via exact reduction instead of guessing u.
        let (ai, bi) = clear_denominators(&a, &b);
        let red = minimal_reduce_big(&ai, &bi).unwrap();
        let direct = minimal_reduce(5, 7).unwrap();
        assert_eq!(red, (BigInt::from(direct.0), BigInt::from(direct.1)));
    }

    #[test]
    fn serialization_round_trips() {
        let c = ShortCurve::new(-11, 6).unwrap();
        assert_eq!(c.to_string(), "-11 6");
        assert_eq!("-11 6".parse::<ShortCurve>().unwrap(), c);
        let j = serde_json::to_string(&c).unwrap();
        assert_eq!(j, r#"{"A":"-11","B":"6"}"#);
        assert_eq!(serde_json::from_str::<ShortCurve>(&j).unwrap(), c);
        assert!("0 0".parse::<ShortCurve>().is_err());
        assert!("1".parse::<ShortCurve>().is_err());
    }

    proptest! {
        #[test]
        fn reduce_idempotent(a in -10_000i128..=10_000, b in -10_000i128..=10_000) {
            let r1 = reduce_i128(a, b);
            let r2 = reduce_i128(r1.0, r1.1);
            prop_assert_eq!(r1, r2);
            prop_assert!(height(r1.0, r1.1) <= height(a, b));
        }

        #[test]
        fn disc_scales_as_u12(a in -100i128..=100, b in -100i128..=100, u in 1i128..=5) {
            let lhs = disc_core(u.pow(4) * a, u.pow(6) * b);
            let rhs = BigInt::from(u.pow(12)) * disc_core(a, b);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduce_undoes_twist(a in -500i128..=500, b in -500i128..=500, u in 1i128..=6) {
            prop_assume!(!disc_core(a, b).is_zero());
            let m = reduce_i128(a, b);
            let twisted = reduce_i128(u.pow(4) * a, u.pow(6) * b);
            prop_assert_eq!(m, twisted);
        }
    }

    #[test]
    fn minimal_curves_have_no_p4_p6_prime() {
        // exhaustive over a small box: no prime has p^4 | A and p^6 | B
        for a in -200i128..=200 {
            for b in -200i128..=200 {
                if !is_minimal(a, b) {
                    continue;
                }
                for p in [2i128, 3, 5, 7] {
                    let both = (a != 0 || b != 0)
                        && (a == 0 || a % p.pow(4) == 0)
                        && (b == 0 || b % p.pow(6) == 0)
                        && !(a == 0 && b % p.pow(6) != 0);
                    if a == 0 && b == 0 {
                        continue;
                    }
                    if both && a != 0 && b != 0 {
                        panic!("non-minimal ({a},{b}) passed is_minimal");
                    }
                }
            }
        }
    }
}
