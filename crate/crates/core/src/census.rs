//! Exhaustive enumeration of all minimal curves of height < X with exact
//! torsion tallies — the ground-truth oracle for every asymptotic claim.

use crate::curves::ShortCurve;
use crate::families::fit_exponent;
use crate::torsion::{
    count_points_residues, mazur_admissible_order, torsion_subgroup_bounded, TorsionGroup,
    GOOD_PRIME_POOL, MAZUR_GROUPS,
};
use crate::{Error, Result};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const GROUP_COUNT: usize = 15;

/// Index of a group in [`MAZUR_GROUPS`] order.
pub fn group_index(g: &TorsionGroup) -> usize {
    MAZUR_GROUPS
        .iter()
        .position(|h| h == g)
        .expect("Mazur group")
}

/// Smallest-height curve found with a given exact torsion group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exemplar {
    pub a: i128,
    pub b: i128,
    pub height: u128,
}

/// Per-checkpoint torsion tallies. Group columns follow [`MAZUR_GROUPS`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusTable {
    /// strictly increasing height cutoffs (counts use height < X)
    pub checkpoints: Vec<u128>,
    /// N_G(X): curves whose torsion equals G
    pub exact: Vec<[u64; GROUP_COUNT]>,
    /// N'_G(X): curves whose torsion contains G
    pub contains: Vec<[u64; GROUP_COUNT]>,
    /// least-height curve per exact group, over the full run
    pub exemplars: Vec<Option<Exemplar>>,
}

impl CensusTable {
    pub fn exact_count(&self, checkpoint: usize, g: &TorsionGroup) -> u64 {
        self.exact[checkpoint][group_index(g)]
    }

    pub fn contains_count(&self, checkpoint: usize, g: &TorsionGroup) -> u64 {
        self.contains[checkpoint][group_index(g)]
    }

    pub fn total(&self, checkpoint: usize) -> u64 {
        self.exact[checkpoint].iter().sum()
    }
}

/// Precomputed #E(F_p) for every residue pair, per pooled prime. Entry 0
/// marks bad reduction (the count itself is always >= 1).
pub struct TraceTables {
    primes: Vec<u64>,
    tables: Vec<Vec<u8>>,
}

impl TraceTables {
    pub fn new() -> Self {
        let primes: Vec<u64> = GOOD_PRIME_POOL.to_vec();
        let tables = primes
            .iter()
            .map(|&p| {
                let mut t = vec![0u8; (p * p) as usize];
                for a in 0..p {
                    for b in 0..p {
                        // disc = -16(4a^3 + 27b^2)
                        let d = (4 * a % p * a % p * a % p + 27 * b % p * b % p) % p;
                        if d != 0 {
                            let n = count_points_residues(a, b, p);
                            t[(a * p + b) as usize] = u8::try_from(n).expect("p + 1 + 2 sqrt(p) < 256");
                        }
                    }
                }
                t
            })
            .collect();
        TraceTables { primes, tables }
    }

    /// Same semantics as `torsion_order_bound`, via table lookups.
    pub fn bound(&self, c: &ShortCurve) -> u64 {
        let mut bound = 0u64;
        let mut used = 0;
        for (i, &p) in self.primes.iter().enumerate() {
            let pm = p as i128;
            let a = c.a.rem_euclid(pm) as u64;
            let b = c.b.rem_euclid(pm) as u64;
            let n = self.tables[i][(a * p + b) as usize] as u64;
            if n == 0 {
                continue; // bad reduction at p
            }
            bound = num_integer::gcd(bound, n);
            used += 1;
            if used >= 8 && mazur_admissible_order(bound) {
                break;
            }
        }
        if bound == 0 {
            bound = 16;
        }
        bound
    }
}

impl Default for TraceTables {
    fn default() -> Self {
        Self::new()
    }
}

fn a_bound(x: u128) -> i128 {
    let mut a = (x as f64).powf(1.0 / 3.0).ceil() as u128 + 1;
    while a > 0 && a * a * a >= x {
        a -= 1;
    }
    a as i128
}

fn b_bound(x: u128) -> i128 {
    let mut b = (x as f64).sqrt().ceil() as u128 + 1;
    while b > 0 && b * b >= x {
        b -= 1;
    }
    b as i128
}

/// Every minimal nonsingular (A, B) with |A|^3 < X and B^2 < X, exactly once.
pub fn enumerate_minimal(x: u128) -> impl Iterator<Item = ShortCurve> {
    let amax = a_bound(x);
    let bmax = b_bound(x);
    (-amax..=amax).flat_map(move |a| {
        (-bmax..=bmax).filter_map(move |b| match ShortCurve::new(a, b) {
            Ok(c) if c.is_minimal() => Some(c),
            _ => None,
        })
    })
}

/// Exact and contains tallies at every checkpoint. Torsion is computed once
/// per curve, then bucketed into every checkpoint above its height.
/// Parallel over A-stripes; the merge is per-bucket addition, so the result
/// is identical for any thread count.
pub fn run_census(x: u128, checkpoints: &[u128]) -> Result<CensusTable> {
    let mut cps: Vec<u128> = checkpoints.to_vec();
    if cps.is_empty() {
        cps.push(x);
    }
    if cps.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "checkpoints must be strictly increasing".into(),
        ));
    }
    if *cps.last().unwrap() > x {
        return Err(Error::InvalidInput("checkpoints must be <= X".into()));
    }
    let tables = TraceTables::new();
    let amax = a_bound(x);
    let bmax = b_bound(x);

    struct Partial {
        // deltas[k][g]: curves with exact group g whose height first clears
        // checkpoint k
        deltas: Vec<[u64; GROUP_COUNT]>,
        exemplars: Vec<Option<Exemplar>>,
    }
    let zero = || Partial {
        deltas: vec![[0u64; GROUP_COUNT]; cps.len()],
        exemplars: vec![None; GROUP_COUNT],
    };
    let merged = (-amax..=amax)
        .into_par_iter()
        .fold(zero, |mut acc, a| {
            for b in -bmax..=bmax {
                let Ok(c) = ShortCurve::new(a, b) else {
                    continue;
                };
                if !c.is_minimal() {
                    continue;
                }
                let h = c.height();
                // smallest checkpoint with h < cp
                let Some(k) = cps.iter().position(|&cp| h < cp) else {
                    continue;
                };
                let g = torsion_subgroup_bounded(&c, tables.bound(&c));
                let gi = group_index(&g);
                acc.deltas[k][gi] += 1;
                let better = match acc.exemplars[gi] {
                    None => true,
                    Some(e) => (h, a, b) < (e.height, e.a, e.b),
                };
                if better {
                    acc.exemplars[gi] = Some(Exemplar { a, b, height: h });
                }
            }
            acc
        })
        .reduce(zero, |mut x, y| {
            for (dx, dy) in x.deltas.iter_mut().zip(&y.deltas) {
                for (cx, cy) in dx.iter_mut().zip(dy) {
                    *cx += cy;
                }
            }
            for (ex, ey) in x.exemplars.iter_mut().zip(&y.exemplars) {
                *ex = match (*ex, *ey) {
                    (None, e) => e,
                    (e, None) => e,
                    (Some(a), Some(b)) => {
                        if (a.height, a.a, a.b) <= (b.height, b.a, b.b) {
                            Some(a)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            x
        });

    // prefix-sum the deltas into cumulative exact counts
    let mut exact = merged.deltas;
    for k in 1..exact.len() {
        for g in 0..GROUP_COUNT {
            exact[k][g] += exact[k - 1][g];
        }
    }
    // N'_G = sum over H containing G
    let contains = exact
        .iter()
        .map(|row| {
            let mut out = [0u64; GROUP_COUNT];
            for (gi, g) in MAZUR_GROUPS.iter().enumerate() {
                for (hi, h) in MAZUR_GROUPS.iter().enumerate() {
                    if h.contains(g) {
                        out[gi] += row[hi];
                    }
                }
            }
            out
        })
        .collect();
    Ok(CensusTable {
        checkpoints: cps,
        exact,
        contains,
        exemplars: merged.exemplars,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlopeEntry {
    pub group: String,
    /// 1/d(G) from Table 1
    pub reference: f64,
    /// least-squares slope of log N'_G against log X, if enough data
    pub fitted: Option<f64>,
    pub deviation: Option<f64>,
    pub points: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlopeReport {
    pub entries: Vec<SlopeEntry>,
}

/// Fit per-group growth exponents of the contains-counts (they converge
/// faster than exact counts). Groups with < 3 nonzero checkpoints are
/// reported with `fitted: None` ("insufficient data").
pub fn slope_report(table: &CensusTable) -> SlopeReport {
    let entries = MAZUR_GROUPS
        .iter()
        .enumerate()
        .map(|(gi, g)| {
            let reference = g.d_value().recip().to_f64().unwrap();
            let pts: Vec<(u128, u128)> = table
                .checkpoints
                .iter()
                .zip(&table.contains)
                .filter(|(_, row)| row[gi] > 0)
                .map(|(&x, row)| (x, row[gi] as u128))
                .collect();
            let fitted = if pts.len() >= 3 {
                fit_exponent(&pts).ok()
            } else {
                None
            };
            SlopeEntry {
                group: g.to_string(),
                reference,
                fitted,
                deviation: fitted.map(|f| (f - reference).abs()),
                points: pts.len(),
            }
        })
        .collect();
    SlopeReport { entries }
}
