//! The region/lattice-point apparatus: algebraic constants, the maps T2 and
//! T3, exact lattice counting in R1, R2, R3, Mobius sieving, and empirical
//! constants.
//!
//! All region membership is exact integer arithmetic; floating point appears
//! only in the constants and areas.

use crate::arith::{icbrt_u128, isqrt_u128, zeta, RatPoly};
use crate::curves::{is_minimal, minimal_reduce};
use crate::torsion::count_real_roots;
use crate::{Error, Result};
use serde::Serialize;
use std::collections::HashSet;

// ---------------------------------------------------------------------------
// constants: alpha's, beta's, hyperelliptic integrals, areas, c's
// ---------------------------------------------------------------------------

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    assert!(
        flo * f(hi) < 0.0,
        "bisection bracket [{lo}, {hi}] does not change sign"
    );
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-14 {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The unique real roots of x^3 + x - 1 and x^3 - x - 1.
pub fn alpha_pm() -> (f64, f64) {
    let plus = bisect(|x| x * x * x + x - 1.0, 0.0, 1.0);
    let minus = bisect(|x| x * x * x - x - 1.0, 1.0, 2.0);
    (plus, minus)
}

/// The positive and negative real roots of f+ = 3x^4+6x^2+12x-1 (alpha4,
/// alpha1) and of f- = 3x^4-6x^2+12x-1 (alpha3, alpha0).
pub fn quartic_roots() -> (f64, f64, f64, f64) {
    for sign in [1i128, -1] {
        let p = RatPoly::from_pairs(&[(-1, 1), (12, 1), (6 * sign, 1), (0, 1), (3, 1)]);
        let n = count_real_roots(&p);
        assert_eq!(n, 2, "quartic 3x^4{sign:+}6x^2+12x-1 has {n} real roots, expected 2");
    }
    let fp = |x: f64| 3.0 * x.powi(4) + 6.0 * x * x + 12.0 * x - 1.0;
    let fm = |x: f64| 3.0 * x.powi(4) - 6.0 * x * x + 12.0 * x - 1.0;
    let alpha4 = bisect(fp, 0.0, 1.0);
    let alpha1 = bisect(fp, -2.0, -1.0);
    let alpha3 = bisect(fm, 0.0, 1.0);
    let alpha0 = bisect(fm, -3.0, -2.0);
    (alpha4, alpha1, alpha3, alpha0)
}

/// beta_i = sgn(alpha_i) sqrt(|alpha_i|/3), with beta_3 forced negative,
/// in the source's own labeling (beta index i pairs with alpha_i).
///
/// Note: the claimed ordering beta_i < beta_j for i < j does not hold for
/// this labeling (beta_1 > beta_2 numerically); the labeled values are the
/// ones that reproduce the printed I-, area, and c_3 decimals, so we keep
/// them and only require that the *sorted* sequence is strictly increasing.
pub fn betas() -> [f64; 6] {
    let (a4, a1, a3, a0) = quartic_roots();
    let sq3 = 3.0f64.sqrt();
    let alpha = [a0, a1, -sq3, a3, a4, sq3];
    let mut beta = [0.0; 6];
    for (i, &a) in alpha.iter().enumerate() {
        let mag = (a.abs() / 3.0).sqrt();
        let neg = a < 0.0 || i == 3;
        beta[i] = if neg { -mag } else { mag };
    }
    let mut sorted = beta;
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
    for w in sorted.windows(2) {
        assert!(w[0] < w[1], "beta values not strictly increasing after sorting");
    }
    beta
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn rec(
        f: &impl Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
                + rec(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
        }
    }
    let (fa, fb) = (f(a), f(b));
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    rec(f, a, fa, b, fb, whole, m, fm, tol, 50)
}

/// I+ (plus = true): integral of sqrt(1 + 27a^6) over [beta3, beta4].
/// I- (plus = false): integral of sqrt(-1 + 27a^6) over [beta0, beta1].
pub fn integral_i(plus: bool) -> f64 {
    let b = betas();
    if plus {
        adaptive_simpson(&|a: f64| (1.0 + 27.0 * a.powi(6)).sqrt(), b[3], b[4], 1e-10)
    } else {
        let f = |a: f64| {
            let r = -1.0 + 27.0 * a.powi(6);
            assert!(r > -1e-12, "negative radicand in I-: wrong beta interval");
            r.max(0.0).sqrt()
        };
        adaptive_simpson(&f, b[0], b[1], 1e-10)
    }
}

/// Area of R_i(1). For i = 3 this is 2 * area(R3+(1)) by the (a,b) -> (-a,-b)
/// symmetry.
pub fn area(i: u8) -> f64 {
    match i {
        1 => 4.0,
        2 => {
            let (ap, am) = alpha_pm();
            2.0 * (am / ap).ln() + 4.0 / 3.0 * (ap + am)
        }
        3 => 2.0 * area3_plus(),
        _ => panic!("region index {i} out of range"),
    }
}

/// Area of R3+(1) by the closed form.
pub fn area3_plus() -> f64 {
    let b = betas();
    let ip = integral_i(true);
    let im = integral_i(false);
    let logterm = (b[0] * b[1] * b[5] / (b[2] * b[3] * b[4])).ln() / 6.0;
    let quart = 9.0 / 8.0
        * (b[0].powi(4) + b[2].powi(4) + b[4].powi(4)
            - b[1].powi(4)
            - b[3].powi(4)
            - b[5].powi(4));
    ip - im + logterm + quart
}

/// (d_i, e_i) for i in {1,2,3}: d as an exact fraction.
pub fn region_exponents(i: u8) -> ((u32, u32), u32) {
    match i {
        1 => ((6, 5), 2),
        2 => ((2, 1), 3),
        3 => ((3, 1), 4),
        _ => panic!("region index {i} out of range"),
    }
}

/// c_i = Area(R_i(1)) / zeta(12/d_i), with 12/d_i in {10, 6, 4}.
pub fn c_constant(i: u8) -> f64 {
    let ((dn, dd), _) = region_exponents(i);
    let s = 12 * dd / dn;
    area(i) / zeta(s).unwrap()
}

/// Every derived constant in one place, including the printed decimals the
/// formulas are compared against.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantsReport {
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    /// alpha_0..alpha_5 in the source labeling (alpha_2 = -sqrt 3, alpha_5 = sqrt 3)
    pub alpha: [f64; 6],
    pub beta: [f64; 6],
    pub i_plus: f64,
    pub i_minus: f64,
    pub area1: f64,
    pub area2: f64,
    pub area3_plus: f64,
    pub zeta4: f64,
    pub zeta6: f64,
    pub zeta10: f64,
    pub c1: f64,
    pub c1_printed: f64,
    pub c2_formula: f64,
    pub c2_printed: f64,
    pub c2_flag: String,
    pub c3_formula: f64,
    pub c3_printed: f64,
    pub c3_flag: String,
    /// which sign of the degree-2 coefficient won the Z/3 family self-test
    pub z3_g_sign: String,
    pub notes: Vec<String>,
}

impl ConstantsReport {
    pub fn compute() -> Self {
        let (ap, am) = alpha_pm();
        let (a4, a1, a3, a0) = quartic_roots();
        let sq3 = 3.0f64.sqrt();
        let c1 = c_constant(1);
        let c2 = c_constant(2);
        let c3 = c_constant(3);
        let c2_flag = if (c2 - 3.1969).abs() < 5e-4 {
            "formula matches printed value".to_string()
        } else {
            format!("formula/printed mismatch: formula gives {c2:.4}, printed 3.1969")
        };
        let c3_flag = if (c3 - 1.5221).abs() < 5e-4 {
            "formula matches printed value".to_string()
        } else {
            format!("formula/printed mismatch: formula gives {c3:.4}, printed 1.5221")
        };
        ConstantsReport {
            alpha_plus: ap,
            alpha_minus: am,
            alpha: [a0, a1, -sq3, a3, a4, sq3],
            beta: betas(),
            i_plus: integral_i(true),
            i_minus: integral_i(false),
            area1: area(1),
            area2: area(2),
            area3_plus: area3_plus(),
            zeta4: zeta(4).unwrap(),
            zeta6: zeta(6).unwrap(),
            zeta10: zeta(10).unwrap(),
            c1,
            c1_printed: 3.9960,
            c2_formula: c2,
            c2_printed: 3.1969,
            c2_flag,
            c3_formula: c3,
            c3_printed: 1.5221,
            c3_flag,
            z3_g_sign: String::new(),
            notes: vec![
                "beta labels follow the source's alpha indexing; the labeled sequence is not \
                 monotone (beta_1 > beta_2), only its sorted version is"
                    .to_string(),
            ],
        }
    }
}

// ---------------------------------------------------------------------------
// exact lattice geometry
// ---------------------------------------------------------------------------

/// T_1 = id, T_2(a,b) = (a, b^3+ab), T_3(a,b) = (6ab+27a^4, b^2-27a^6).
pub fn t_map(i: u8, a: i128, b: i128) -> (i128, i128) {
    match i {
        1 => (a, b),
        2 => (a, b * b * b + a * b),
        3 => (6 * a * b + 27 * a * a * a * a, b * b - 27 * a.pow(6)),
        _ => panic!("region index {i} out of range"),
    }
}

/// Is the T_i image of (a,b) a singular curve? Exact, from the factored
/// discriminants: disc T2 = (a+3b^2)^2 (4a+3b^2), disc T3 = 27 (b+5a^3)(b+9a^3)^3.
pub fn image_singular(i: u8, a: i128, b: i128) -> bool {
    match i {
        1 => {
            let (aa, bb) = (a, b);
            4 * aa * aa * aa + 27 * bb * bb == 0
        }
        2 => a + 3 * b * b == 0 || 4 * a + 3 * b * b == 0,
        3 => b + 5 * a * a * a == 0 || b + 9 * a * a * a == 0,
        _ => panic!("region index {i} out of range"),
    }
}

/// v^3 * d12 < x, overflow-safe.
fn cube_scaled_lt(v: u128, d12: u128, x: u128) -> bool {
    v.checked_mul(v)
        .and_then(|s| s.checked_mul(v))
        .and_then(|c| c.checked_mul(d12))
        .map_or(false, |c| c < x)
}

fn square_scaled_lt(v: u128, d12: u128, x: u128) -> bool {
    v.checked_mul(v)
        .and_then(|s| s.checked_mul(d12))
        .map_or(false, |s| s < x)
}

/// height(T_i(a,b)) * d12 < x, exactly.
fn in_region_scaled(i: u8, x: u128, d12: u128, a: i128, b: i128) -> bool {
    let (ia, ib) = t_map(i, a, b);
    cube_scaled_lt(ia.unsigned_abs(), d12, x) && square_scaled_lt(ib.unsigned_abs(), d12, x)
}

/// (a,b) in R_i(X): exact integer test, equivalent to height(T_i(a,b)) < X.
pub fn in_region(i: u8, x: u128, a: i128, b: i128) -> bool {
    in_region_scaled(i, x, 1, a, b)
}

/// Scan half-widths guaranteed to cover R_i(X/d12) (a-bound, b-bound).
fn scan_bounds(i: u8, x: u128, d12: u128) -> (i128, i128) {
    let xf = x as f64 / d12 as f64;
    match i {
        1 | 2 => {
            let amax = icbrt_u128((x - 1) / d12) as i128;
            let bmax = if i == 1 {
                isqrt_u128((x - 1) / d12) as i128
            } else {
                let (_, am) = alpha_pm();
                (am * xf.powf(1.0 / 6.0)) as i128 + 2
            };
            (amax, bmax)
        }
        3 => {
            let b5 = betas()[5];
            let amax = (b5 * xf.powf(1.0 / 12.0)) as i128 + 2;
            let bmax = (2.0 * 7.0f64.sqrt() * xf.powf(0.25)) as i128 + 2;
            (amax, bmax)
        }
        _ => panic!("region index {i} out of range"),
    }
}

/// All integer points of R_i(X) minus the discriminant-zero locus.
/// Materializes the list; meant for moderate X (the counting entry points
/// below never materialize R_1).
pub fn enumerate_region(i: u8, x: u128) -> Vec<(i128, i128)> {
    assert!(x >= 1);
    let (amax, bmax) = scan_bounds(i, x, 1);
    let mut out = Vec::new();
    for a in -amax..=amax {
        for b in -bmax..=bmax {
            if in_region(i, x, a, b) && !image_singular(i, a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Singular points of R_1(X/d12): (-3k^2, +-2k^3) pairs plus the origin.
fn r1_singular_count(x: u128, d12: u128) -> u128 {
    let amax = icbrt_u128((x - 1) / d12);
    let bmax = isqrt_u128((x - 1) / d12);
    let mut n = 1u128; // the origin
    let mut k = 1u128;
    while 3 * k * k <= amax && 2 * k * k * k <= bmax {
        n += 2;
        k += 1;
    }
    n
}

fn lattice_count_scaled(i: u8, x: u128, d12: u128) -> u128 {
    if x / d12 == 0 {
        return 0;
    }
    match i {
        1 => {
            let amax = icbrt_u128((x - 1) / d12) as u128;
            let bmax = isqrt_u128((x - 1) / d12) as u128;
            (2 * amax + 1) * (2 * bmax + 1) - r1_singular_count(x, d12)
        }
        2 | 3 => {
            let (amax, bmax) = scan_bounds(i, x, d12);
            let mut n = 0u128;
            for a in -amax..=amax {
                for b in -bmax..=bmax {
                    if in_region_scaled(i, x, d12, a, b) && !image_singular(i, a, b) {
                        n += 1;
                    }
                }
            }
            n
        }
        _ => panic!("region index {i} out of range"),
    }
}

/// Number of integer points of R_i(X) (discriminant-zero locus removed).
/// Closed-form for R_1, per-point scans for R_2 and R_3 (their boxes are
/// O(X^(1/2)) and O(X^(1/3)) points).
pub fn lattice_count(i: u8, x: u128) -> u128 {
    lattice_count_scaled(i, x, 1)
}

/// Distinct T_i images of region points, as a set of (A, B) pairs.
/// Image coordinates fit i64 for every X <= 10^18 (|A| < X^(1/3), |B| < X^(1/2)).
fn image_set(i: u8, x: u128) -> HashSet<(i64, i64)> {
    let (amax, bmax) = scan_bounds(i, x, 1);
    let mut set = HashSet::new();
    for a in -amax..=amax {
        for b in -bmax..=bmax {
            if in_region(i, x, a, b) && !image_singular(i, a, b) {
                let (ia, ib) = t_map(i, a, b);
                set.insert((ia as i64, ib as i64));
            }
        }
    }
    set
}

/// (lattice points, distinct equations) for R_i(X). T_1 is injective, so the
/// two agree for i = 1.
pub fn equation_count(i: u8, x: u128) -> (u128, u128) {
    match i {
        1 => {
            let n = lattice_count(1, x);
            (n, n)
        }
        2 | 3 => {
            let lattice = lattice_count(i, x);
            let distinct = image_set(i, x).len() as u128;
            (lattice, distinct)
        }
        _ => panic!("region index {i} out of range"),
    }
}

/// Mobius-sieved count of distinct *minimal* equations from R_i(X), computed
/// two independent ways that must agree exactly:
/// (a) sum_d mu(d) * #distinct equations of height < X/d^12, and
/// (b) reduce every distinct image to its minimal twist and count the set.
pub fn sieved_count(i: u8, x: u128) -> Result<u128> {
    assert!(x >= 1);
    // route (b) + per-level counts from one image pass
    let (mobius_sum, direct) = match i {
        1 => {
            // images are the points themselves; stream without materializing
            let mut sum: i128 = 0;
            let mut d = 1u128;
            while d.pow(12) < x {
                let mu = crate::arith::mobius(d as u64)?;
                sum += i128::from(mu) * lattice_count_scaled(1, x, d.pow(12)) as i128;
                d += 1;
            }
            let (amax, bmax) = scan_bounds(1, x, 1);
            let mut n = 0u128;
            for a in -amax..=amax {
                for b in -bmax..=bmax {
                    if !image_singular(1, a, b) && is_minimal(a, b) {
                        n += 1;
                    }
                }
            }
            (sum, n)
        }
        2 | 3 => {
            let images = image_set(i, x);
            let mut sum: i128 = 0;
            let mut d = 1u128;
            while d.pow(12) < x {
                let mu = crate::arith::mobius(d as u64)?;
                if mu != 0 {
                    let lvl = images
                        .iter()
                        .filter(|&&(a, b)| {
                            cube_scaled_lt(a.unsigned_abs() as u128, d.pow(12), x)
                                && square_scaled_lt(b.unsigned_abs() as u128, d.pow(12), x)
                        })
                        .count() as i128;
                    sum += i128::from(mu) * lvl;
                }
                d += 1;
            }
            let mut minimal: HashSet<(i64, i64)> = HashSet::new();
            for &(a, b) in &images {
                let (ra, rb) = minimal_reduce(a as i128, b as i128)?;
                minimal.insert((ra as i64, rb as i64));
            }
            let direct = minimal.len() as u128;
            if sum != direct as i128 {
                // closure violation witness: an image whose reduction left
                // the image family
                for &(a, b) in &images {
                    let (ra, rb) = minimal_reduce(a as i128, b as i128)?;
                    if (ra as i64, rb as i64) != (a, b) && !images.contains(&(ra as i64, rb as i64))
                    {
                        return Err(Error::SieveMismatch { a: a as i128, b: b as i128 });
                    }
                }
            }
            (sum, direct)
        }
        _ => panic!("region index {i} out of range"),
    };
    if mobius_sum != direct as i128 {
        return Err(Error::SieveMismatch { a: 0, b: 0 });
    }
    Ok(direct)
}

/// sieved_count(i, X) / X^(1/d_i).
pub fn empirical_constant(i: u8, x: u128) -> Result<f64> {
    let n = sieved_count(i, x)?;
    let ((dn, dd), _) = region_exponents(i);
    Ok(n as f64 / (x as f64).powf(dd as f64 / dn as f64))
}

// ---------------------------------------------------------------------------
// piecewise description of R3+ (b >= 0)
// ---------------------------------------------------------------------------

/// Check the piecewise boundary-function description of R3+(X) against the
/// exact membership test on `sample` random points with b >= 0. Returns the
/// first counterexample's interval index on failure.
///
/// The interval table is the *corrected* one (verified against the closed-form
/// area to 30 digits): with gamma = 3^(-3/4),
///   (beta0, beta1):       B- < b < A-
///   (beta1, -gamma):      A+ < b < A-
///   (-gamma, beta3):      0 <= b < A-
///   (beta3, beta4):       0 <= b < B+
///   (beta4, gamma):       0 <= b < A+
/// and empty for a in (gamma, beta5]. The printed table's intervals 1-2
/// (bounds A+ / 0 at the printed break beta2) do not match the exact region;
/// the area formula corresponds to the corrected table.
pub fn piecewise_r3_check(x: u128, sample: usize) -> Result<bool> {
    use rand::{Rng, SeedableRng};
    let b = betas();
    let x12 = (x as f64).powf(1.0 / 12.0);
    let x13 = (x as f64).powf(1.0 / 3.0);
    let x12sq = (x as f64).sqrt();
    let gamma = 3.0f64.powf(-0.75);
    let a_minus = |a: f64| (-x13 - 27.0 * a.powi(4)) / (6.0 * a);
    let a_plus = |a: f64| (x13 - 27.0 * a.powi(4)) / (6.0 * a);
    let b_plus = |a: f64| (x12sq + 27.0 * a.powi(6)).sqrt();
    let b_minus = |a: f64| (-x12sq + 27.0 * a.powi(6)).max(0.0).sqrt();
    let breaks = [
        b[0] * x12,
        b[1] * x12,
        -gamma * x12,
        b[3] * x12,
        b[4] * x12,
        gamma * x12,
    ];
    let (amax, bmax) = scan_bounds(3, x, 1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5233_2b63);
    for _ in 0..sample {
        let pa = rng.gen_range(-amax..=amax);
        let pb = rng.gen_range(0..=bmax);
        let af = pa as f64;
        let bf = pb as f64;
        let piecewise = if af <= breaks[0] || af >= breaks[5] {
            false
        } else {
            let idx = breaks.iter().take_while(|&&t| af > t).count() - 1;
            let (lo, hi) = match idx {
                0 => (b_minus(af), a_minus(af)),
                1 => (a_plus(af), a_minus(af)),
                2 => (-0.5, a_minus(af)),
                3 => (-0.5, b_plus(af)),
                4 => (-0.5, a_plus(af)),
                _ => unreachable!(),
            };
            lo < bf && bf < hi
        };
        // note in_region is pure membership; the disc-zero excision happens
        // in enumeration, not here, matching the piecewise description
        let exact = in_region(3, x, pa, pb);
        if piecewise != exact {
            return Err(Error::InvalidInput(format!(
                "piecewise counterexample at (a,b)=({pa},{pb}), interval table vs exact: \
                 {piecewise} vs {exact}"
            )));
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{disc_core, height};
    use num_traits::Zero;

    #[test]
    fn alpha_values() {
        let (ap, am) = alpha_pm();
        assert!((ap - 0.6823278).abs() < 1e-6);
        assert!((am - 1.3247180).abs() < 1e-6);
        assert!((ap.powi(3) + ap - 1.0).abs() < 1e-12);
        assert!((am.powi(3) - am - 1.0).abs() < 1e-12);
        let (a4, a1, a3, a0) = quartic_roots();
        assert!((a4 - 0.08011).abs() < 5e-5);
        assert!((a1 + 1.22259).abs() < 5e-5);
        assert!((a3 - 0.08711).abs() < 5e-5);
        assert!((a0 + 2.01637).abs() < 5e-5);
        // defining-equation residuals
        for (r, s) in [(a4, 1.0), (a1, 1.0), (a3, -1.0), (a0, -1.0)] {
            let v = 3.0 * r.powi(4) + s * 6.0 * r * r + 12.0 * r - 1.0;
            assert!(v.abs() < 1e-10, "residual {v} at root {r}");
        }
    }

    #[test]
    fn beta_values() {
        let b = betas();
        assert!((b[5] - 0.75984).abs() < 5e-5);
        assert!((b[3] + 0.17040).abs() < 5e-5);
        assert!((b[0] + 0.81983).abs() < 5e-5);
        assert!(b[3] < 0.0);
        // the labeled sequence is *not* monotone; document the swap
        assert!(b[1] > b[2]);
    }

    #[test]
    fn integrals_and_areas() {
        assert!((integral_i(true) - 0.33383).abs() < 1e-4);
        assert!((integral_i(false) - 0.32030).abs() < 1e-4);
        assert!((area3_plus() - 0.8237).abs() < 2e-4);
        assert_eq!(area(1), 4.0);
        assert!((area(2) - 4.003).abs() < 1e-3);
        // c's
        assert!((c_constant(1) - 3.9960).abs() < 5e-5);
        assert!((c_constant(3) - 1.5221).abs() < 5e-4);
        // the printed 3.1969 does not match the formula; the formula value is
        // area2 / zeta(6)
        assert!((c_constant(2) - 3.9348).abs() < 1e-3);
    }

    #[test]
    fn t_map_examples() {
        assert_eq!(t_map(2, 0, 1), (0, 1));
        assert_eq!(t_map(3, 1, 1), (33, -26));
        assert_eq!(t_map(3, -1, -1), (33, -26));
    }

    #[test]
    fn in_region_examples() {
        assert!(in_region(2, 10, 0, 1));
        assert!(in_region(3, 1_000_000, 1, 1));
        assert!(!in_region(2, 8, 2, 0)); // |a|^3 = 8, strict
    }

    #[test]
    fn in_region_matches_height() {
        for i in 1..=3u8 {
            for x in [10u128, 100, 5000] {
                for a in -20i128..=20 {
                    for b in -40i128..=40 {
                        let (ia, ib) = t_map(i, a, b);
                        let h = height(ia, ib);
                        assert_eq!(
                            in_region(i, x, a, b),
                            h < x,
                            "i={i} x={x} (a,b)=({a},{b})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn t3_symmetry() {
        for a in -10i128..=10 {
            for b in -10i128..=10 {
                assert_eq!(t_map(3, a, b), t_map(3, -a, -b));
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        // X = 8 box for R_1: a in {-1,0,1}, b in {-2..2}, minus the origin
        let pts = enumerate_region(1, 8);
        assert_eq!(pts.len(), 14);
        assert!(!pts.contains(&(0, 0)));
        // R_3(1) is empty
        assert!(enumerate_region(3, 1).is_empty());
        // R_2(100) against a brute-force double loop
        let brute: Vec<(i128, i128)> = (-6..=6)
            .flat_map(|a| (-12..=12).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                let (ia, ib) = t_map(2, a, b);
                height(ia, ib) < 100 && !disc_core(ia, ib).is_zero()
            })
            .collect();
        let mut got = enumerate_region(2, 100);
        got.sort_unstable();
        let mut want = brute;
        want.sort_unstable();
        assert_eq!(got, want);
    }

    #[test]
    fn singular_locus_factorizations() {
        for a in -30i128..=30 {
            for b in -30i128..=30 {
                for i in 2..=3u8 {
                    let (ia, ib) = t_map(i, a, b);
                    assert_eq!(
                        image_singular(i, a, b),
                        disc_core(ia, ib).is_zero(),
                        "i={i} (a,b)=({a},{b})"
                    );
                }
            }
        }
    }

    #[test]
    fn lattice_count_matches_enumeration() {
        for i in 1..=3u8 {
            for x in [2u128, 10, 100, 1000, 10_000] {
                assert_eq!(
                    lattice_count(i, x),
                    enumerate_region(i, x).len() as u128,
                    "i={i} x={x}"
                );
            }
        }
    }

    #[test]
    fn region_images_have_marked_torsion() {
        use crate::torsion::{three_torsion_witness, two_torsion_group, TwoTorsion};
        let x = 10_000u128;
        for (a, b) in enumerate_region(2, x) {
            let (ia, ib) = t_map(2, a, b);
            let c = crate::curves::ShortCurve::new(ia, ib).unwrap();
            assert_ne!(two_torsion_group(&c), TwoTorsion::Trivial, "({a},{b})");
        }
        for (a, b) in enumerate_region(3, x) {
            let (ia, ib) = t_map(3, a, b);
            let c = crate::curves::ShortCurve::new(ia, ib).unwrap();
            assert!(three_torsion_witness(&c).is_some(), "({a},{b})");
        }
    }

    #[test]
    fn sieve_identity_small() {
        for i in 1..=3u8 {
            for x in [100u128, 1000, 10_000] {
                assert!(sieved_count(i, x).is_ok(), "i={i} x={x}");
            }
        }
        // below 2^12 the d-sum is the d=1 term alone
        for i in 1..=3u8 {
            let x = 1000u128;
            let (_, distinct) = equation_count(i, x);
            // distinct images minus nothing: every image of height < 1000 is
            // already minimal-or-not; the sieve only removes non-minimal ones
            assert!(sieved_count(i, x).unwrap() <= distinct);
        }
    }

    #[test]
    fn equation_count_i2_independent_scan() {
        // distinct T2 images = pairs (A,B) whose cubic b^3 + Ab - B has an
        // integer root
        let x = 10_000u128;
        let (_, distinct) = equation_count(2, x);
        let mut brute = 0u128;
        let amax = icbrt_u128(x - 1) as i128;
        let bmax = isqrt_u128(x - 1) as i128;
        for aa in -amax..=amax {
            for bb in -bmax..=bmax {
                if disc_core(aa, bb).is_zero() {
                    continue;
                }
                if !crate::torsion::integer_roots_cubic(aa, -bb).is_empty() {
                    brute += 1;
                }
            }
        }
        assert_eq!(distinct, brute);
    }

    #[test]
    fn piecewise_r3() {
        assert!(piecewise_r3_check(1_000_000, 100_000).unwrap());
        // a = 0 boundary column: T3(0,b) = (0, b^2), so membership is b^4 < X
        for b in 0..40i128 {
            assert_eq!(in_region(3, 1_000_000, 0, b), b.pow(4) < 1_000_000);
        }
    }

    #[test]
    fn empirical_constant_trends() {
        // coarse sanity at small scale; tight versions live in the acceptance suite
        let e1 = empirical_constant(1, 1_000_000).unwrap();
        assert!((e1 - c_constant(1)).abs() / c_constant(1) < 0.05, "{e1}");
        let e2 = empirical_constant(2, 1_000_000).unwrap();
        assert!(e2 > 2.0 && e2 < 5.0, "{e2}");
    }
}
