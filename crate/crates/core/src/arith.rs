//! Exact rational arithmetic, polynomials over Q, multiplicative functions,
//! and zeta values shared by every other module.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always in lowest terms with positive denominator.
/// `num_rational` maintains both invariants on every operation.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i128, den: i128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Mobius function of `n`.
pub fn mobius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(Error::InvalidInput("mobius(0) is undefined".into()));
    }
    let mut n = n;
    let mut factors = 0;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            factors += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors += 1;
    }
    Ok(if factors % 2 == 0 { 1 } else { -1 })
}

/// Bernoulli numbers B_0..B_n (even-index convention B_1 = -1/2).
fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        // sum_{j=0}^{m-1} C(m+1, j) B_j = -(m+1) B_m  for m >= 1
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        let mut acc = Rational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate().take(m) {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Riemann zeta at an integer argument `s >= 2`.
///
/// Even arguments use the closed form zeta(2k) = (-1)^(k+1) B_2k (2 pi)^2k / (2 (2k)!),
/// so no series truncation error enters; odd arguments fall back to a direct
/// series with an integral tail bound below 1e-13.
pub fn zeta(s: u32) -> Result<f64> {
    if s < 2 {
        return Err(Error::InvalidInput(format!("zeta({s}) not supported; need s >= 2")));
    }
    if s % 2 == 0 {
        let k = (s / 2) as usize;
        let b = bernoulli(2 * k);
        let mut fact = Rational::one();
        for i in 1..=(2 * k) {
            fact *= rat_int(i as i128);
        }
        let sign = if k % 2 == 0 { -1 } else { 1 };
        let coeff = rat_int(sign) * &b[2 * k] / (rat_int(2) * fact);
        // zeta(s) = coeff * (2 pi)^s
        let c = coeff.to_f64().expect("finite rational");
        Ok(c * (2.0 * std::f64::consts::PI).powi(s as i32))
    } else {
        // descending series sum + tail bound integral_N^inf x^-s dx = N^(1-s)/(s-1)
        let mut n = 2usize;
        while ((n as f64).powi(1 - (s as i32))) / ((s - 1) as f64) > 1e-14 {
            n *= 2;
        }
        let mut sum = 0.0f64;
        for k in (1..=n).rev() {
            sum += (k as f64).powi(-(s as i32));
        }
        Ok(sum)
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(x: &Rational, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::InvalidInput("valuation of 0 is undefined".into()));
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = x.numer().abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = x.denom().clone();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    Ok(v)
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(x: &BigInt, p: u64) -> i64 {
    debug_assert!(!x.is_zero());
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = x.abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// Dense univariate polynomial over Q, coefficients low-degree first.
/// Trailing zero coefficients are trimmed, so `coeffs.last()` is the leading
/// coefficient whenever the polynomial is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// Convenience constructor from (numerator, denominator) pairs, low degree first.
    pub fn from_pairs(pairs: &[(i128, i128)]) -> Self {
        Self::new(pairs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        RatPoly::new(out)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        RatPoly::new(out)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i128))
                .collect(),
        )
    }

    /// Quotient and remainder with deg(rem) < deg(divisor).
    pub fn divrem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let rd = rem.len() - 1;
            let c = rem[rd].clone() / &lead;
            if !c.is_zero() {
                quot[rd - dd] = c.clone();
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    let idx = rd - dd + i;
                    let sub = dc * &c;
                    rem[idx] -= sub;
                }
            }
            rem.pop();
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Monic gcd over Q.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().unwrap().clone();
        a.scale(&lead.recip())
    }

    /// lcm of coefficient denominators; the smallest M with M*f integral.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = num_integer::lcm(l, c.denom().clone());
        }
        l
    }
}

/// Miller-Rabin primality test. Deterministic for n < 3.3e24 via the first
/// twelve prime bases; probabilistic (error < 4^-20) with extra random bases
/// beyond that.
pub fn is_probable_prime(n: &BigInt) -> bool {
    use num_bigint::RandBigInt;
    if n < &BigInt::from(2) {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let two = BigInt::from(2);
    let nm1 = n - &one;
    let s = int_valuation(&nm1, 2);
    let d = &nm1 >> (s as usize);
    let witness = |a: &BigInt| -> bool {
        // returns true if a proves n composite
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            return false;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                return false;
            }
        }
        true
    };
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if witness(&BigInt::from(p)) {
            return false;
        }
    }
    if n.bits() > 81 {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6d72_7462);
        for _ in 0..20 {
            let a = rng.gen_bigint_range(&two, &nm1);
            if witness(&a) {
                return false;
            }
        }
    }
    true
}

fn pollard_rho(n: &BigInt, budget: &mut u64) -> Option<BigInt> {
    // Brent's cycle-finding variant; returns a nontrivial factor or None
    // if the iteration budget runs out.
    use rand::Rng;
    use rand::SeedableRng;
    let one = BigInt::one();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7268_6f21);
    while *budget > 0 {
        let c = BigInt::from(rng.gen_range(1u64..1_000_000));
        let mut x = BigInt::from(rng.gen_range(2u64..1_000_000)) % n;
        let mut y = x.clone();
        let mut d = one.clone();
        while d == one && *budget > 0 {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x >= y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle collapsed; retry with new parameters
            }
            d = num_integer::gcd(diff, n.clone());
            *budget -= 1;
        }
        if d != one && &d != n {
            return Some(d);
        }
    }
    None
}

/// Full factorization of |n| as sorted (prime, exponent) pairs.
/// Trial division to 10^5, then Miller-Rabin + Pollard rho with a bounded
/// iteration budget; a stubborn cofactor surfaces as FactorizationTimeout.
pub fn factor_big(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factor 0".into()));
    }
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, e: u32, out: &mut Vec<(BigInt, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += e;
        } else {
            out.push((p, e));
        }
    };
    let mut p = 2u64;
    while p <= 100_000 {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            break;
        }
        let mut e = 0;
        while (&n % &pb).is_zero() {
            n /= &pb;
            e += 1;
        }
        if e > 0 {
            push(pb, e, &mut out);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut budget: u64 = 2_000_000;
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if BigInt::from(100_000u64 * 100_000) > m {
            // below the trial-division square, any survivor is prime
            push(m, 1, &mut out);
            continue;
        }
        if is_probable_prime(&m) {
            push(m, 1, &mut out);
            continue;
        }
        match pollard_rho(&m, &mut budget) {
            Some(d) => {
                stack.push(&m / &d);
                stack.push(d);
            }
            None => return Err(Error::FactorizationTimeout(m.to_string())),
        }
    }
    out.sort();
    Ok(out)
}

/// Floor of the square root of a u128.
pub fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    // correct float error in both directions
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |s| s <= n) {
        x += 1;
    }
    x
}

/// Floor of the cube root of a u128.
pub fn icbrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).cbrt() as u128;
    while x > 0 && x * x * x > n {
        x -= 1;
    }
    while (x + 1)
        .checked_mul(x + 1)
        .and_then(|s| s.checked_mul(x + 1))
        .map_or(false, |c| c <= n)
    {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_small_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn mobius_divisor_sums_vanish() {
        // sum_{d|n} mu(d) = [n == 1]
        for n in 1u64..=10_000 {
            let mut s = 0;
            let mut d = 1;
            while d * d <= n {
                if n % d == 0 {
                    s += mobius(d).unwrap();
                    if d != n / d {
                        s += mobius(n / d).unwrap();
                    }
                }
                d += 1;
            }
            assert_eq!(s, i32::from(n == 1), "n = {n}");
        }
    }

    #[test]
    fn mobius_multiplicative() {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        for m in 1u64..=300 {
            for n in 1u64..=300 {
                if gcd(m, n) == 1 {
                    assert_eq!(
                        mobius(m * n).unwrap(),
                        mobius(m).unwrap() * mobius(n).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn zeta_closed_forms() {
        let pi = std::f64::consts::PI;
        assert!((zeta(4).unwrap() - pi.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta(6).unwrap() - pi.powi(6) / 945.0).abs() < 1e-15);
        assert!((zeta(10).unwrap() - pi.powi(10) / 93555.0).abs() < 1e-15);
        assert!((zeta(2).unwrap() - pi * pi / 6.0).abs() < 1e-15);
        assert!(zeta(1).is_err());
    }

    #[test]
    fn zeta_matches_partial_sum_with_tail() {
        for s in [4u32, 6, 10] {
            let n = 1_000_000u64;
            let mut sum = 0.0;
            for k in (1..=n).rev() {
                sum += (k as f64).powi(-(s as i32));
            }
            // integral tail bound: sum_{k>n} k^-s <= n^(1-s)/(s-1)
            let tail = (n as f64).powi(1 - s as i32) / ((s - 1) as f64);
            let z = zeta(s).unwrap();
            assert!(z >= sum - 1e-10 && z <= sum + tail + 1e-10, "s = {s}");
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat(8, 3), 2).unwrap(), 3);
        assert_eq!(valuation(&rat(8, 3), 3).unwrap(), -1);
        assert_eq!(valuation(&rat_int(5), 7).unwrap(), 0);
        assert!(valuation(&Rational::zero(), 2).is_err());
    }

    #[test]
    fn poly_eval_examples() {
        // 2t - 1/3 at t = 1
        let f = RatPoly::from_pairs(&[(-1, 3), (2, 1)]);
        assert_eq!(f.eval(&rat_int(1)), rat(5, 3));
        // zero polynomial
        assert_eq!(RatPoly::zero().eval(&rat_int(7)), Rational::zero());
        // t^2 - (2/3)t + 2/27 at t = 1
        let g = RatPoly::from_pairs(&[(2, 27), (-2, 3), (1, 1)]);
        assert_eq!(g.eval(&rat_int(1)), rat(11, 27));
    }

    #[test]
    fn poly_divrem_gcd() {
        // (t-1)(t-2) and (t-1)(t+3)
        let a = RatPoly::from_pairs(&[(2, 1), (-3, 1), (1, 1)]);
        let b = RatPoly::from_pairs(&[(-3, 1), (2, 1), (1, 1)]);
        let g = a.gcd(&b);
        assert_eq!(g, RatPoly::from_pairs(&[(-1, 1), (1, 1)]));
        let (q, r) = a.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q.mul(&g), a);
    }

    #[test]
    fn primality_and_factoring() {
        assert!(is_probable_prime(&BigInt::from(2)));
        assert!(is_probable_prime(&BigInt::from(1_000_003)));
        assert!(!is_probable_prime(&BigInt::from(1)));
        assert!(!is_probable_prime(&BigInt::from(561))); // Carmichael
        let n = BigInt::from(2u64).pow(61) - 1;
        assert!(is_probable_prime(&n)); // Mersenne prime

        let f = factor_big(&BigInt::from(5_324_211_000i64)).unwrap();
        let mut back = BigInt::one();
        for (p, e) in &f {
            assert!(is_probable_prime(p));
            back *= p.pow(*e);
        }
        assert_eq!(back, BigInt::from(5_324_211_000i64));

        // a semiprime past the trial-division bound
        let m = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let f = factor_big(&m).unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn int_roots_helpers() {
        for n in [0u128, 1, 2, 3, 4, 8, 9, 24, 25, 26, 1 << 80, (1 << 40) * (1 << 40) - 1] {
            let s = isqrt_u128(n);
            assert!(s * s <= n && (s + 1) * (s + 1) > n);
            let c = icbrt_u128(n);
            assert!(c * c * c <= n && (c + 1) * (c + 1) * (c + 1) > n);
        }
    }
}
