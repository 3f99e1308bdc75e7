//! Exact computation of E(Q)_tors for short Weierstrass curves, plus a slow
//! Nagell-Lutz oracle used to cross-check it.
//!
//! Strategy: the 2-torsion structure comes from integer roots of the cubic,
//! an order bound comes from point counts mod small primes, and each residual
//! candidate order is confirmed or refuted by exhibiting a point of that
//! exact order (x-candidates are integer roots of division polynomials;
//! torsion points on minimal short models have integer coordinates).

use crate::arith::{rat_int, RatPoly, Rational};
use crate::curves::{disc_core, ShortCurve};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// One of Mazur's fifteen groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TorsionGroup {
    /// Z/N for N in 1..=10 or N = 12; Cyclic(1) is the trivial group.
    Cyclic(u8),
    /// Z/2 x Z/N for N in {2, 4, 6, 8}.
    Product(u8),
}

pub const MAZUR_GROUPS: [TorsionGroup; 15] = [
    TorsionGroup::Cyclic(1),
    TorsionGroup::Cyclic(2),
    TorsionGroup::Cyclic(3),
    TorsionGroup::Cyclic(4),
    TorsionGroup::Cyclic(5),
    TorsionGroup::Cyclic(6),
    TorsionGroup::Cyclic(7),
    TorsionGroup::Cyclic(8),
    TorsionGroup::Cyclic(9),
    TorsionGroup::Cyclic(10),
    TorsionGroup::Cyclic(12),
    TorsionGroup::Product(2),
    TorsionGroup::Product(4),
    TorsionGroup::Product(6),
    TorsionGroup::Product(8),
];

impl TorsionGroup {
    pub fn order(&self) -> u32 {
        match self {
            TorsionGroup::Cyclic(n) => u32::from(*n),
            TorsionGroup::Product(n) => 2 * u32::from(*n),
        }
    }

    /// Does `self` contain a subgroup isomorphic to `sub`?
    ///
    /// Cyclic subgroups of Z/2 x Z/N (N even) have order dividing N; a
    /// cyclic group never contains Z/2 x Z/2.
    pub fn contains(&self, sub: &TorsionGroup) -> bool {
        match (self, sub) {
            (TorsionGroup::Cyclic(n), TorsionGroup::Cyclic(m)) => n % m == 0,
            (TorsionGroup::Product(n), TorsionGroup::Cyclic(m)) => n % m == 0,
            (TorsionGroup::Product(n), TorsionGroup::Product(m)) => n % m == 0,
            (TorsionGroup::Cyclic(_), TorsionGroup::Product(_)) => false,
        }
    }

    /// Growth exponent denominator d(G).
    pub fn d_value(&self) -> Rational {
        match self {
            TorsionGroup::Cyclic(1) => crate::arith::rat(6, 5),
            TorsionGroup::Cyclic(2) => rat_int(2),
            TorsionGroup::Cyclic(3) => rat_int(3),
            TorsionGroup::Cyclic(4) => rat_int(4),
            TorsionGroup::Cyclic(5) | TorsionGroup::Cyclic(6) => rat_int(6),
            TorsionGroup::Cyclic(7) | TorsionGroup::Cyclic(8) => rat_int(12),
            TorsionGroup::Cyclic(9) | TorsionGroup::Cyclic(10) => rat_int(18),
            TorsionGroup::Cyclic(12) => rat_int(24),
            TorsionGroup::Product(2) => rat_int(3),
            TorsionGroup::Product(4) => rat_int(6),
            TorsionGroup::Product(6) => rat_int(12),
            TorsionGroup::Product(8) => rat_int(24),
            _ => unreachable!("not a Mazur group"),
        }
    }
}

/// The full Table-1 map G -> d(G).
pub fn dg_table() -> Vec<(TorsionGroup, Rational)> {
    MAZUR_GROUPS.iter().map(|g| (*g, g.d_value())).collect()
}

impl fmt::Display for TorsionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionGroup::Cyclic(1) => write!(f, "0"),
            TorsionGroup::Cyclic(n) => write!(f, "Z/{n}"),
            TorsionGroup::Product(n) => write!(f, "Z/2xZ/{n}"),
        }
    }
}

impl FromStr for TorsionGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let g = match s {
            "0" | "1" | "Z/1" | "trivial" => TorsionGroup::Cyclic(1),
            _ => {
                if let Some(rest) = s.strip_prefix("Z/2xZ/") {
                    let n: u8 = rest
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad group {s:?}")))?;
                    TorsionGroup::Product(n)
                } else if let Some(rest) = s.strip_prefix("Z/") {
                    let n: u8 = rest
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad group {s:?}")))?;
                    TorsionGroup::Cyclic(n)
                } else {
                    return Err(Error::Parse(format!("bad group {s:?}")));
                }
            }
        };
        if !MAZUR_GROUPS.contains(&g) {
            return Err(Error::Parse(format!("{s:?} is not one of Mazur's groups")));
        }
        Ok(g)
    }
}

/// A rational point on a short Weierstrass curve, or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl CurvePoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn affine_int(x: i128, y: i128) -> Self {
        CurvePoint::Affine {
            x: rat_int(x),
            y: rat_int(y),
        }
    }
}

pub fn is_on_curve(c: &ShortCurve, p: &CurvePoint) -> bool {
    match p {
        CurvePoint::Infinity => true,
        CurvePoint::Affine { x, y } => {
            y * y == x * x * x + rat_int(c.a) * x + rat_int(c.b)
        }
    }
}

pub fn negate(p: &CurvePoint) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => CurvePoint::Affine {
            x: x.clone(),
            y: -y.clone(),
        },
    }
}

/// Chord-and-tangent addition over Q.
pub fn add_points(c: &ShortCurve, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
    let (x1, y1) = match p {
        CurvePoint::Infinity => return q.clone(),
        CurvePoint::Affine { x, y } => (x, y),
    };
    let (x2, y2) = match q {
        CurvePoint::Infinity => return p.clone(),
        CurvePoint::Affine { x, y } => (x, y),
    };
    let lambda = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return CurvePoint::Infinity;
        }
        // tangent: (3x^2 + A) / 2y
        (rat_int(3) * x1 * x1 + rat_int(c.a)) / (rat_int(2) * y1)
    } else {
        (y2 - y1) / (x2 - x1)
    };
    let x3 = &lambda * &lambda - x1 - x2;
    let y3 = lambda * (x1 - &x3) - y1;
    CurvePoint::Affine { x: x3, y: y3 }
}

/// Least n <= 12 with nP = infinity, if any (sufficient by Mazur).
pub fn point_order(c: &ShortCurve, p: &CurvePoint) -> Result<Option<u32>> {
    if !is_on_curve(c, p) {
        return Err(Error::PointOffCurve);
    }
    let mut acc = p.clone();
    for n in 1..=12u32 {
        if acc == CurvePoint::Infinity {
            return Ok(Some(n));
        }
        acc = add_points(c, &acc, p);
    }
    Ok(None)
}

/// Integer roots of the monic cubic x^3 + Ax + B, by binary search for sign
/// changes on the (at most three) monotone pieces, then exact confirmation.
pub fn integer_roots_cubic(a: i128, b: i128) -> Vec<i128> {
    let eval = |x: i128| -> BigInt {
        let xb = BigInt::from(x);
        &xb * &xb * &xb + BigInt::from(a) * &xb + BigInt::from(b)
    };
    // all real roots lie in [-m, m]
    let m = 1 + a.unsigned_abs().max(b.unsigned_abs()).max(1) as i128;
    // monotone breakpoints at +-sqrt(-A/3) when A < 0
    let mut cuts = vec![-m, m];
    if a < 0 {
        let r = crate::arith::isqrt_u128(((-a) / 3) as u128) as i128;
        for c in [-r - 1, -r, r, r + 1] {
            if -m < c && c < m {
                cuts.push(c);
            }
        }
    }
    cuts.sort_unstable();
    cuts.dedup();
    let mut roots = Vec::new();
    for w in cuts.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (eval(lo), eval(hi));
        if flo.is_zero() {
            roots.push(lo);
        }
        if fhi.is_zero() {
            roots.push(hi);
        }
        if flo.sign() == fhi.sign() || flo.is_zero() || fhi.is_zero() {
            continue;
        }
        let increasing = flo.is_negative();
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            let fm = eval(mid);
            if fm.is_zero() {
                roots.push(mid);
                break;
            }
            if fm.is_negative() == increasing {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// The 2-torsion structure: 0, 1, or 3 rational roots of x^3 + Ax + B.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoTorsion {
    Trivial,
    Z2,
    Full,
}

pub fn two_torsion_group(c: &ShortCurve) -> TwoTorsion {
    match integer_roots_cubic(c.a, c.b).len() {
        0 => TwoTorsion::Trivial,
        1 => TwoTorsion::Z2,
        3 => TwoTorsion::Full,
        n => unreachable!("cubic with {n} integer roots"),
    }
}

/// Find integers (a, b) with A = 6ab + 27a^4 and B = b^2 - 27a^6, if any;
/// then (3a^2, 9a^3 + b) is a rational 3-torsion point, verified before
/// returning.
pub fn three_torsion_witness(c: &ShortCurve) -> Option<(i128, i128)> {
    // b^2 can exceed i128 for large curves: compare in BigInt
    let check = |a: i128, b: i128| -> bool {
        let (ab, bb) = (BigInt::from(a), BigInt::from(b));
        BigInt::from(c.a) == 6 * &ab * &bb + 27 * ab.pow(4)
            && BigInt::from(c.b) == &bb * &bb - 27 * ab.pow(6)
    };
    let confirm = |a: i128, b: i128| -> bool {
        let p = CurvePoint::affine_int(3 * a * a, 9 * a * a * a + b);
        matches!(point_order(c, &p), Ok(Some(3)))
    };
    if c.a == 0 && c.b > 0 {
        // a = 0 case: B must be a perfect square
        let r = crate::arith::isqrt_u128(c.b as u128) as i128;
        if r * r == c.b && check(0, r) && confirm(0, r) {
            return Some((0, r));
        }
    }
    // for a != 0, b = (A - 27a^4)/(6a); |a| is bounded by the height scale
    let h = crate::curves::height_big(&BigInt::from(c.a), &BigInt::from(c.b));
    let hf = h.to_f64().unwrap_or(f64::MAX);
    let mut bound = hf.powf(1.0 / 12.0).floor().max(1.0) as i128 - 1;
    while BigInt::from(bound).pow(12) < h {
        bound += 1;
    }
    bound += 1;
    // T3(a,b) = T3(-a,-b): prefer the positive-a representative
    for a in (1..=bound).flat_map(|k| [k, -k]) {
        let num = c.a - 27 * a * a * a * a;
        if num % (6 * a) != 0 {
            continue;
        }
        let b = num / (6 * a);
        if check(a, b) && confirm(a, b) {
            return Some((a, b));
        }
    }
    None
}

/// Number of points on y^2 = x^3 + Ax + B over F_p (including infinity),
/// for an odd prime p of good reduction.
pub fn count_points_mod_p(c: &ShortCurve, p: u64) -> u64 {
    let pm = p as i128;
    let a = c.a.rem_euclid(pm) as u64;
    let b = c.b.rem_euclid(pm) as u64;
    count_points_residues(a, b, p)
}

/// `count_points_mod_p` on residue classes (the census precomputes full
/// (a, b) tables per prime from this).
pub(crate) fn count_points_residues(a: u64, b: u64, p: u64) -> u64 {
    // quadratic residue table
    let mut chi = vec![-1i64; p as usize];
    chi[0] = 0;
    let mut s = 1u64;
    loop {
        let sq = ((s as u128 * s as u128) % p as u128) as usize;
        chi[sq] = 1;
        s += 1;
        if s > p / 2 {
            break;
        }
    }
    let mut n = p as i64 + 1;
    for x in 0..p {
        let fx = ((x as u128 * x as u128 % p as u128) * x as u128
            + a as u128 * x as u128
            + b as u128)
            % p as u128;
        n += chi[fx as usize];
    }
    n as u64
}

pub(crate) const GOOD_PRIME_POOL: [u64; 25] = [
    5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103,
];

pub(crate) fn mazur_admissible_order(n: u64) -> bool {
    matches!(n, 1..=10 | 12 | 16)
}

/// Upper-bound multiple of #E(Q)_tors: gcd of #E(F_p) over at least eight
/// primes of good reduction, extended adaptively while the bound is not the
/// order of a Mazur group.
pub fn torsion_order_bound(c: &ShortCurve) -> u64 {
    let disc = c.disc();
    let mut bound = 0u64;
    let mut used = 0;
    for &p in GOOD_PRIME_POOL.iter() {
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        bound = num_integer::gcd(bound, count_points_mod_p(c, p));
        used += 1;
        if used >= 8 && mazur_admissible_order(bound) {
            break;
        }
    }
    if bound == 0 {
        // every pooled prime divides the discriminant; curve is enormous,
        // fall back to the trivial bound
        bound = 16;
    }
    bound
}

/// Division polynomial psi_n with y^2 = x^3 + Ax + B substituted:
/// psi_n = b_n(x) for odd n and psi_n = 2y * b_n(x) for even n.
/// Returns b_n.
pub fn division_poly(n: u32, a: i128, b: i128) -> RatPoly {
    assert!(n >= 1);
    // seeds built in BigInt: a^3 overflows i128 for large curves
    let (ab, bb) = (BigInt::from(a), BigInt::from(b));
    let ri = Rational::from_integer;
    let f = RatPoly::new(vec![
        ri(bb.clone()),
        ri(ab.clone()),
        Rational::zero(),
        ri(BigInt::one()),
    ]);
    let f2_16 = f.mul(&f).scale(&rat_int(16));
    let mut tbl: Vec<RatPoly> = Vec::with_capacity((n + 3) as usize);
    tbl.push(RatPoly::zero()); // b_0
    tbl.push(RatPoly::constant(rat_int(1))); // b_1
    tbl.push(RatPoly::constant(rat_int(1))); // b_2
    tbl.push(RatPoly::new(vec![
        ri(-(&ab * &ab)),
        ri(12 * &bb),
        ri(6 * &ab),
        Rational::zero(),
        ri(BigInt::from(3)),
    ])); // b_3
    tbl.push(
        RatPoly::new(vec![
            ri(-8 * &bb * &bb - &ab * &ab * &ab),
            ri(-4 * &ab * &bb),
            ri(-5 * &ab * &ab),
            ri(20 * &bb),
            ri(5 * &ab),
            Rational::zero(),
            ri(BigInt::one()),
        ])
        .scale(&rat_int(2)),
    ); // b_4
    for k in 5..=(n as usize) {
        let next = if k % 2 == 1 {
            let m = (k - 1) / 2;
            let t1 = tbl[m + 2].mul(&tbl[m]).mul(&tbl[m]).mul(&tbl[m]);
            let t2 = tbl[m - 1].mul(&tbl[m + 1]).mul(&tbl[m + 1]).mul(&tbl[m + 1]);
            if m % 2 == 0 {
                t1.mul(&f2_16).sub(&t2)
            } else {
                t1.sub(&t2.mul(&f2_16))
            }
        } else {
            let m = k / 2;
            let t1 = tbl[m + 2].mul(&tbl[m - 1]).mul(&tbl[m - 1]);
            let t2 = tbl[m - 2].mul(&tbl[m + 1]).mul(&tbl[m + 1]);
            tbl[m].mul(&t1.sub(&t2))
        };
        tbl.push(next);
    }
    tbl[n as usize].clone()
}

/// Sturm chain of a squarefree part of `p`.
fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let d = p.derivative();
    let g = p.gcd(&d);
    let sqf = if g.degree() == Some(0) {
        p.clone()
    } else {
        p.divrem(&g).0
    };
    let mut chain = vec![sqf.clone(), sqf.derivative()];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[k - 2].divrem(&chain[k - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

fn sign_changes(chain: &[RatPoly], t: &Rational) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in chain {
        let v = p.eval(t);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of distinct real roots of `p`, by Sturm's theorem over a Cauchy
/// bound interval.
pub fn count_real_roots(p: &RatPoly) -> usize {
    if p.is_zero() || p.degree() == Some(0) {
        return 0;
    }
    let chain = sturm_chain(p);
    let lead = p.leading().unwrap();
    let mut maxq = Rational::zero();
    for c in p.coeffs() {
        let q = (c / lead).abs();
        if q > maxq {
            maxq = q;
        }
    }
    let m: BigInt = maxq.ceil().to_integer() + 1;
    let lo = Rational::from_integer(-m.clone());
    let hi = Rational::from_integer(m);
    sign_changes(&chain, &lo).saturating_sub(sign_changes(&chain, &hi))
}

/// Sturm-based integer root isolation. Exact and dependency-free, but the
/// rational remainder sequence blows up on high-degree polynomials with
/// large coefficients; kept as the fallback and cross-check for
/// [`integer_roots`].
fn integer_roots_sturm(p: &RatPoly) -> Vec<BigInt> {
    if p.is_zero() || p.degree() == Some(0) {
        return vec![];
    }
    let chain = sturm_chain(p);
    // Cauchy bound on root magnitude
    let lead = p.leading().unwrap();
    let mut maxq = Rational::zero();
    for c in p.coeffs() {
        let q = (c / lead).abs();
        if q > maxq {
            maxq = q;
        }
    }
    let m: BigInt = maxq.ceil().to_integer() + 1;
    let mut out: BTreeSet<BigInt> = BTreeSet::new();
    let mut stack = vec![(-m.clone(), m)];
    while let Some((lo, hi)) = stack.pop() {
        let rlo = Rational::from_integer(lo.clone());
        let rhi = Rational::from_integer(hi.clone());
        // count roots in (lo, hi]; handle lo itself exactly
        if p.eval(&rlo).is_zero() {
            out.insert(lo.clone());
        }
        let n = sign_changes(&chain, &rlo).saturating_sub(sign_changes(&chain, &rhi));
        if n == 0 {
            continue;
        }
        if &hi - &lo <= BigInt::one() {
            if p.eval(&rhi).is_zero() {
                out.insert(hi);
            }
            continue;
        }
        let mid: BigInt = (&lo + &hi) / 2;
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.into_iter().collect()
}

/// Roots of the integer polynomial `c` (mod-p residues, low degree first,
/// nonzero lead) by brute-force evaluation. Returns `None` if any root is
/// non-simple mod p, in which case the caller must try another prime.
fn roots_mod_p(c: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut roots = Vec::new();
    for x in 0..p {
        // Horner for P and P' together
        let mut v = 0u64;
        let mut dv = 0u64;
        for &ci in c.iter().rev() {
            dv = (dv * x + v) % p;
            v = (v * x + ci) % p;
        }
        if v == 0 {
            if dv == 0 {
                return None;
            }
            roots.push(x);
        }
    }
    Some(roots)
}

fn eval_int_poly_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut v = BigInt::zero();
    for ci in c.iter().rev() {
        v = (v * x + ci) % m;
    }
    v.mod_floor(m)
}

fn eval_int_poly(c: &[BigInt], x: &BigInt) -> BigInt {
    let mut v = BigInt::zero();
    for ci in c.iter().rev() {
        v = v * x + ci;
    }
    v
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// All integer roots of `p`.
///
/// Strategy: reduce mod a prime where every root is simple, then Hensel-lift
/// each mod-p root past the Cauchy bound and test the centered lift exactly.
/// Every integer root reduces to some simple mod-p root, so this finds all of
/// them; cost is independent of coefficient size (unlike Sturm isolation,
/// which explodes on division polynomials of large curves). Falls back to
/// the Sturm route in the (never observed) case that no prime in the pool
/// works, e.g. for polynomials with repeated roots.
pub fn integer_roots(p: &RatPoly) -> Vec<BigInt> {
    if p.is_zero() || p.degree() == Some(0) {
        return vec![];
    }
    // clear denominators
    let scale = Rational::from_integer(p.denominator_lcm());
    let mut c: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|q| (q * &scale).to_integer())
        .collect();
    let mut out: BTreeSet<BigInt> = BTreeSet::new();
    // strip roots at 0
    while c.first().is_some_and(|c0| c0.is_zero()) {
        out.insert(BigInt::zero());
        c.remove(0);
    }
    if c.len() < 2 {
        return out.into_iter().collect();
    }
    if c.len() == 2 {
        // linear: root iff c1 | c0
        let (q, r) = (-&c[0]).div_rem(&c[1]);
        if r.is_zero() {
            out.insert(q);
        }
        return out.into_iter().collect();
    }
    // Cauchy bound on root magnitude
    let lead = c.last().unwrap().abs();
    let maxc = c.iter().map(|x| x.abs()).max().unwrap();
    let bound: BigInt = maxc.div_ceil(&lead) + 1;
    let target: BigInt = BigInt::from(2) * &bound + 1;
    // primes with all-simple roots exist whenever the squarefree part of p
    // has the same integer roots as p, i.e. always for squarefree p; the
    // bad primes divide the discriminant
    const PRIME_POOL: [u64; 24] = [
        2003, 2011, 2017, 2027, 2029, 2039, 2053, 2063, 2069, 2081, 2083, 2087,
        2089, 2099, 2111, 2113, 2129, 2131, 2137, 2141, 2143, 2153, 2161, 2179,
    ];
    'primes: for &pr in &PRIME_POOL {
        let pb = BigInt::from(pr);
        if (c.last().unwrap() % &pb).is_zero() {
            continue;
        }
        let cm: Vec<u64> = c
            .iter()
            .map(|ci| ci.mod_floor(&pb).to_u64().unwrap())
            .collect();
        let Some(roots) = roots_mod_p(&cm, pr) else {
            continue 'primes;
        };
        let der: Vec<BigInt> = c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, ci)| ci * BigInt::from(i))
            .collect();
        for r0 in roots {
            let mut m = pb.clone();
            let mut r = BigInt::from(r0);
            while m < target {
                let m2 = &m * &m;
                let fr = eval_int_poly_mod(&c, &r, &m2);
                let dfr = eval_int_poly_mod(&der, &r, &m2);
                // invertible mod m2 because it is nonzero mod the base prime
                let inv = modinv(&dfr, &m2).expect("simple root stays simple");
                r = (&r - fr * inv).mod_floor(&m2);
                m = m2;
            }
            // centered representative
            if &r * 2 > m {
                r -= &m;
            }
            if r.abs() <= bound && eval_int_poly(&c, &r).is_zero() {
                out.insert(r);
            }
        }
        return out.into_iter().collect();
    }
    integer_roots_sturm(p)
}

/// Does the curve have a rational point of exact order `n`?
/// x-candidates are the integer roots of the n-th division polynomial.
pub fn has_point_of_exact_order(c: &ShortCurve, n: u32) -> bool {
    if n == 1 {
        return true;
    }
    if n == 2 {
        return two_torsion_group(c) != TwoTorsion::Trivial;
    }
    if n == 3 {
        return three_torsion_witness(c).is_some();
    }
    let b_n = division_poly(n, c.a, c.b);
    for x in integer_roots(&b_n) {
        let fx = &x * &x * &x + BigInt::from(c.a) * &x + BigInt::from(c.b);
        if fx.is_negative() {
            continue;
        }
        let y = fx.sqrt();
        if &y * &y != fx {
            continue;
        }
        let p = CurvePoint::affine(
            Rational::from_integer(x),
            Rational::from_integer(y),
        );
        if matches!(point_order(c, &p), Ok(Some(m)) if m == n) {
            return true;
        }
    }
    false
}

/// The exact torsion subgroup. Requires a minimal model (reduce first).
pub fn torsion_subgroup(c: &ShortCurve) -> TorsionGroup {
    torsion_subgroup_bounded(c, torsion_order_bound(c))
}

/// `torsion_subgroup` with a caller-supplied multiple of the group order
/// (the census precomputes these from per-prime tables).
pub fn torsion_subgroup_bounded(c: &ShortCurve, bound: u64) -> TorsionGroup {
    // odd bound: no 2-torsion is possible, skip the cubic entirely (this is
    // the census fast path; most curves have bound 1)
    if bound == 1 {
        return TorsionGroup::Cyclic(1);
    }
    let t2 = if bound % 2 == 0 {
        two_torsion_group(c)
    } else {
        TwoTorsion::Trivial
    };
    match t2 {
        TwoTorsion::Full => {
            if bound % 12 == 0 && has_point_of_exact_order(c, 3) {
                TorsionGroup::Product(6)
            } else if bound % 16 == 0 && has_point_of_exact_order(c, 8) {
                TorsionGroup::Product(8)
            } else if bound % 8 == 0 && has_point_of_exact_order(c, 4) {
                TorsionGroup::Product(4)
            } else {
                TorsionGroup::Product(2)
            }
        }
        TwoTorsion::Z2 => {
            let mut n2 = 2u8;
            if bound % 4 == 0 && has_point_of_exact_order(c, 4) {
                n2 = 4;
                if bound % 8 == 0 && has_point_of_exact_order(c, 8) {
                    n2 = 8;
                }
            }
            let mut odd = 1u8;
            if bound % 3 == 0 && has_point_of_exact_order(c, 3) {
                odd = 3;
            } else if bound % 5 == 0 && has_point_of_exact_order(c, 5) {
                odd = 5;
            }
            TorsionGroup::Cyclic(n2 * odd)
        }
        TwoTorsion::Trivial => {
            if bound % 3 == 0 && has_point_of_exact_order(c, 3) {
                if bound % 9 == 0 && has_point_of_exact_order(c, 9) {
                    TorsionGroup::Cyclic(9)
                } else {
                    TorsionGroup::Cyclic(3)
                }
            } else if bound % 5 == 0 && has_point_of_exact_order(c, 5) {
                TorsionGroup::Cyclic(5)
            } else if bound % 7 == 0 && has_point_of_exact_order(c, 7) {
                TorsionGroup::Cyclic(7)
            } else {
                TorsionGroup::Cyclic(1)
            }
        }
    }
}

/// Nagell-Lutz: every torsion point has integer coordinates with y = 0 or
/// y^2 | 16|disc|. Enumerates all candidates and keeps those of order <= 12.
/// Independent of the division-polynomial route; used as the test oracle.
pub fn nagell_lutz_oracle(c: &ShortCurve) -> Result<Vec<CurvePoint>> {
    let mut pts = vec![CurvePoint::Infinity];
    // y = 0: the rational 2-torsion
    for x in integer_roots_cubic(c.a, c.b) {
        pts.push(CurvePoint::affine_int(x, 0));
    }
    // y != 0: y^2 divides 16|disc|
    let d16 = disc_core(c.a, c.b).abs() * 16;
    let factors = crate::arith::factor_big(&d16)?;
    // y ranges over divisors of prod p^floor(e/2)
    let half: Vec<(BigInt, u32)> = factors
        .into_iter()
        .filter_map(|(p, e)| if e >= 2 { Some((p, e / 2)) } else { None })
        .collect();
    let mut divisors = vec![BigInt::one()];
    for (p, e) in half {
        let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for d in &divisors {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divisors = next;
    }
    for y in divisors {
        // integer roots of the monic cubic x^3 + Ax + (B - y^2)
        let shift = BigInt::from(c.b) - &y * &y;
        let roots: Vec<i128> = match shift.to_i128() {
            Some(s) => integer_roots_cubic(c.a, s),
            None => {
                // enormous shift: fall back to the general root finder
                let poly = RatPoly::new(vec![
                    Rational::from_integer(shift),
                    rat_int(c.a),
                    Rational::zero(),
                    rat_int(1),
                ]);
                integer_roots(&poly)
                    .into_iter()
                    .filter_map(|r| r.to_i128())
                    .collect()
            }
        };
        for x in roots {
            for yy in [y.clone(), -y.clone()] {
                let p = CurvePoint::affine(rat_int(x), Rational::from_integer(yy));
                if matches!(point_order(c, &p), Ok(Some(_))) && !pts.contains(&p) {
                    pts.push(p);
                }
            }
        }
    }
    Ok(pts)
}

/// Group generated by a set of torsion points, classified as a Mazur group.
/// Used to compare the oracle with `torsion_subgroup`.
pub fn classify_points(c: &ShortCurve, pts: &[CurvePoint]) -> TorsionGroup {
    let order = pts.len() as u32;
    let two_rank_full = pts
        .iter()
        .filter(|p| matches!(point_order(c, p), Ok(Some(2))))
        .count()
        == 3;
    let max_cyclic = pts
        .iter()
        .filter_map(|p| point_order(c, p).ok().flatten())
        .max()
        .unwrap_or(1);
    if two_rank_full {
        debug_assert_eq!(order, 2 * max_cyclic);
        TorsionGroup::Product(max_cyclic as u8)
    } else {
        debug_assert_eq!(order, max_cyclic);
        TorsionGroup::Cyclic(max_cyclic as u8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: i128, b: i128) -> ShortCurve {
        ShortCurve::new(a, b).unwrap()
    }

    #[test]
    fn two_torsion_examples() {
        assert_eq!(two_torsion_group(&curve(-1, 0)), TwoTorsion::Full);
        assert_eq!(two_torsion_group(&curve(0, 1)), TwoTorsion::Z2);
        assert_eq!(two_torsion_group(&curve(0, 2)), TwoTorsion::Trivial);
    }

    #[test]
    fn three_torsion_examples() {
        let w = three_torsion_witness(&curve(33, -26)).unwrap();
        assert_eq!(w, (1, 1));
        let p = CurvePoint::affine_int(3, 10);
        assert_eq!(point_order(&curve(33, -26), &p).unwrap(), Some(3));

        let w = three_torsion_witness(&curve(135, 297)).unwrap();
        assert_eq!(w, (1, 18));
        let p = CurvePoint::affine_int(3, 27);
        assert_eq!(point_order(&curve(135, 297), &p).unwrap(), Some(3));

        assert_eq!(three_torsion_witness(&curve(1, 1)), None);
    }

    #[test]
    fn order_bound_examples() {
        assert_eq!(torsion_order_bound(&curve(0, 1)) % 6, 0);
        assert_eq!(torsion_order_bound(&curve(-11, 6)) % 4, 0);
        // (1,1) has trivial torsion; the bound should collapse to 1
        assert_eq!(torsion_order_bound(&curve(1, 1)), 1);
    }

    #[test]
    fn point_arithmetic() {
        let c = curve(0, 1);
        let p = CurvePoint::affine_int(2, 3);
        assert!(is_on_curve(&c, &p));
        assert_eq!(point_order(&c, &p).unwrap(), Some(6));
        assert_eq!(point_order(&c, &CurvePoint::Infinity).unwrap(), Some(1));
        let off = CurvePoint::affine_int(5, 5);
        assert!(matches!(point_order(&c, &off), Err(Error::PointOffCurve)));
        // 2*(2,3) = (0,1), an order-3 point
        let d = add_points(&c, &p, &p);
        assert_eq!(d, CurvePoint::affine_int(0, 1));
        assert_eq!(point_order(&c, &d).unwrap(), Some(3));
    }

    #[test]
    fn torsion_subgroup_examples() {
        assert_eq!(torsion_subgroup(&curve(0, 1)), TorsionGroup::Cyclic(6));
        assert_eq!(torsion_subgroup(&curve(-1, 0)), TorsionGroup::Product(2));
        assert_eq!(torsion_subgroup(&curve(1, 0)), TorsionGroup::Cyclic(2));
        assert_eq!(torsion_subgroup(&curve(1, 1)), TorsionGroup::Cyclic(1));
        assert_eq!(torsion_subgroup(&curve(-11, 6)), TorsionGroup::Cyclic(4));
        // the classical Z/7 curve
        assert_eq!(torsion_subgroup(&curve(-43, 166)), TorsionGroup::Cyclic(7));
        assert_eq!(torsion_subgroup(&curve(33, -26)), TorsionGroup::Cyclic(3));
        assert_eq!(torsion_subgroup(&curve(0, 16)), TorsionGroup::Cyclic(3));
    }

    #[test]
    fn oracle_examples() {
        let pts = nagell_lutz_oracle(&curve(0, 1)).unwrap();
        assert_eq!(pts.len(), 6);
        assert!(pts.contains(&CurvePoint::affine_int(-1, 0)));
        assert!(pts.contains(&CurvePoint::affine_int(0, 1)));
        assert!(pts.contains(&CurvePoint::affine_int(2, -3)));

        let pts = nagell_lutz_oracle(&curve(1, 1)).unwrap();
        assert_eq!(pts, vec![CurvePoint::Infinity]);

        let pts = nagell_lutz_oracle(&curve(-43, 166)).unwrap();
        assert_eq!(pts.len(), 7);
        assert_eq!(
            classify_points(&curve(-43, 166), &pts),
            TorsionGroup::Cyclic(7)
        );
    }

    #[test]
    fn division_poly_basics() {
        // b_3 for (0,1): 3x^4 + 12x; roots x=0 (point (0,1), order 3)
        let b3 = division_poly(3, 0, 1);
        assert_eq!(b3.eval(&rat_int(0)), rat_int(0));
        assert!(has_point_of_exact_order(&curve(0, 1), 3));
        assert!(has_point_of_exact_order(&curve(0, 1), 6));
        assert!(!has_point_of_exact_order(&curve(0, 1), 4));
        assert!(has_point_of_exact_order(&curve(-43, 166), 7));
        assert!(!has_point_of_exact_order(&curve(-43, 166), 5));
    }

    #[test]
    fn integer_roots_isolation() {
        // (x-3)(x+5)(x-1000000) has large and small roots
        let q = RatPoly::from_pairs(&[(-3, 1), (1, 1)])
            .mul(&RatPoly::from_pairs(&[(5, 1), (1, 1)]))
            .mul(&RatPoly::from_pairs(&[(-1_000_000, 1), (1, 1)]));
        let roots = integer_roots(&q);
        assert_eq!(
            roots,
            vec![BigInt::from(-5), BigInt::from(3), BigInt::from(1_000_000)]
        );
        // repeated root and a non-integer root: (x-2)^2 (2x-1)
        let r = RatPoly::from_pairs(&[(-2, 1), (1, 1)]);
        let rr = r.mul(&r).mul(&RatPoly::from_pairs(&[(-1, 1), (2, 1)]));
        assert_eq!(integer_roots(&rr), vec![BigInt::from(2)]);
        // roots at 0 and a root congruent to another mod small primes
        let z = RatPoly::from_pairs(&[(0, 1), (1, 1)])
            .mul(&RatPoly::from_pairs(&[(-7, 1), (1, 1)]))
            .mul(&RatPoly::from_pairs(&[(-40016, 1), (1, 1)]));
        assert_eq!(
            integer_roots(&z),
            vec![BigInt::from(0), BigInt::from(7), BigInt::from(40016)]
        );
    }

    #[test]
    fn hensel_agrees_with_sturm() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x726f6f74);
        for _ in 0..40 {
            // random product of linear factors (a x - b) and an irreducible tail
            let mut q = RatPoly::from_pairs(&[(1, 1)]);
            for _ in 0..rng.gen_range(1..=4) {
                let a: i128 = rng.gen_range(1..=3);
                let b: i128 = rng.gen_range(-50..=50);
                q = q.mul(&RatPoly::from_pairs(&[(-b, 1), (a, 1)]));
            }
            if rng.gen_bool(0.5) {
                q = q.mul(&RatPoly::from_pairs(&[(1, 1), (1, 1), (1, 1)]));
            }
            assert_eq!(integer_roots(&q), integer_roots_sturm(&q));
        }
        // division polynomial of a modest curve: both routes agree
        let b5 = division_poly(5, -43, 166);
        assert_eq!(integer_roots(&b5), integer_roots_sturm(&b5));
    }

    #[test]
    fn cubic_roots_examples() {
        assert_eq!(integer_roots_cubic(-1, 0), vec![-1, 0, 1]);
        assert_eq!(integer_roots_cubic(0, 1), vec![-1]);
        assert_eq!(integer_roots_cubic(0, 2), Vec::<i128>::new());
        assert_eq!(integer_roots_cubic(0, 0), vec![0]);
        // x^3 - 4x = x(x-2)(x+2)
        assert_eq!(integer_roots_cubic(-4, 0), vec![-2, 0, 2]);
    }

    #[test]
    fn group_labels_round_trip() {
        for g in MAZUR_GROUPS {
            let s = g.to_string();
            assert_eq!(s.parse::<TorsionGroup>().unwrap(), g);
        }
        assert!("Z/11".parse::<TorsionGroup>().is_err());
        assert!("Z/2xZ/3".parse::<TorsionGroup>().is_err());
    }

    #[test]
    fn containment_table() {
        use TorsionGroup::*;
        assert!(Cyclic(6).contains(&Cyclic(3)));
        assert!(Cyclic(6).contains(&Cyclic(2)));
        assert!(!Cyclic(6).contains(&Cyclic(4)));
        assert!(Product(4).contains(&Cyclic(4)));
        assert!(Product(4).contains(&Product(2)));
        assert!(!Product(4).contains(&Cyclic(3)));
        assert!(!Cyclic(12).contains(&Product(2)));
        assert!(Product(6).contains(&Cyclic(6)));
    }

    #[test]
    fn dg_table_values() {
        let t = dg_table();
        assert_eq!(t.len(), 15);
        assert_eq!(TorsionGroup::Cyclic(1).d_value(), crate::arith::rat(6, 5));
        assert_eq!(TorsionGroup::Product(8).d_value(), rat_int(24));
        assert_eq!(TorsionGroup::Cyclic(12).d_value(), rat_int(24));
    }

    #[test]
    fn isogeny_free_sanity() {
        // torsion is twist-reduction stable
        for (a, b) in [(0i128, 1i128), (-1, 0), (-11, 6), (33, -26)] {
            let base = torsion_subgroup(&curve(a, b));
            for u in [2i128, 3, 5] {
                let (ra, rb) = crate::curves::minimal_reduce(u.pow(4) * a, u.pow(6) * b).unwrap();
                assert_eq!(torsion_subgroup(&curve(ra, rb)), base);
            }
        }
    }
}
