//! The acceptance suite behind `tcensus verify`: every numbered criterion,
//! with a findings-vs-failures split for the open questions the measurements
//! are meant to adjudicate (the c2 decimal and the c3 factor).

use crate::census::{run_census, slope_report, CensusTable};
use crate::families::{
    all_families, builtin_families, enumerate_family, fit_exponent, z3_g_sign, FamilySpec,
};
use crate::regions::{
    area, empirical_constant, lattice_count, region_exponents, sieved_count, ConstantsReport,
};
use crate::torsion::{classify_points, nagell_lutz_oracle, torsion_subgroup, TorsionGroup};
use crate::Result;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Finding,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub criterion_id: String,
    pub status: Status,
    pub measured: Value,
    pub expected: Value,
    pub tolerance: Value,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max_height: String,
    pub results: Vec<CriterionResult>,
}

impl VerifyReport {
    /// Exit-status predicate: findings never fail the suite.
    pub fn ok(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() < tol
}

/// Run every criterion whose stated scale fits under `max_height`
/// (criteria with no height scale always run). The default CLI cap of 10^15
/// covers the full suite.
pub fn run(max_height: u128) -> Result<VerifyReport> {
    let mut results = Vec::new();
    let rep = ConstantsReport::compute();

    // ---- 1: c1 = 4/zeta(10), exact side ----
    {
        let ok = close(rep.c1, 3.9960, 5e-5);
        results.push(CriterionResult {
            criterion_id: "C1".into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured: json!(rep.c1),
            expected: json!(3.9960),
            tolerance: json!(5e-5),
            detail: "c1 = 4/zeta(10) vs the printed decimal".into(),
        });
    }

    // ---- 2: numeric constants ----
    {
        let checks = [
            ("alpha0", rep.alpha[0], -2.01637, 5e-5),
            ("alpha1", rep.alpha[1], -1.22259, 5e-5),
            ("alpha3", rep.alpha[3], 0.08711, 5e-5),
            ("alpha4", rep.alpha[4], 0.08011, 5e-5),
            ("I+", rep.i_plus, 0.33383, 1e-4),
            ("I-", rep.i_minus, 0.32030, 1e-4),
            ("c3", rep.c3_formula, 1.5221, 5e-4),
        ];
        let bad: Vec<&str> = checks
            .iter()
            .filter(|(_, m, e, t)| !close(*m, *e, *t))
            .map(|(n, _, _, _)| *n)
            .collect();
        results.push(CriterionResult {
            criterion_id: "C2".into(),
            status: if bad.is_empty() { Status::Pass } else { Status::Fail },
            measured: json!(checks
                .iter()
                .map(|(n, m, _, _)| (n.to_string(), *m))
                .collect::<std::collections::BTreeMap<_, _>>()),
            expected: json!(checks
                .iter()
                .map(|(n, _, e, _)| (n.to_string(), *e))
                .collect::<std::collections::BTreeMap<_, _>>()),
            tolerance: json!({"alphas": 5e-5, "integrals": 1e-4, "c3": 5e-4}),
            detail: if bad.is_empty() {
                "quartic roots, boundary integrals, and c3 match the printed decimals".into()
            } else {
                format!("mismatched: {bad:?}")
            },
        });
    }

    // shared censuses
    let census_1e6: Option<CensusTable> = if max_height >= 1_000_000 {
        Some(run_census(1_000_000, &[])?)
    } else {
        None
    };
    let census_1e8: Option<CensusTable> = if max_height >= 100_000_000 {
        Some(run_census(
            100_000_000,
            &[10_000, 100_000, 1_000_000, 10_000_000, 100_000_000],
        )?)
    } else {
        None
    };

    // ---- 3: census total vs c1 ----
    if let Some(t) = &census_1e8 {
        let x = 1e8f64;
        let n = t.total(t.checkpoints.len() - 1) as f64;
        let measured = n / x.powf(5.0 / 6.0);
        let rel = (measured - rep.c1).abs() / rep.c1;
        results.push(CriterionResult {
            criterion_id: "C3".into(),
            status: if rel < 0.02 { Status::Pass } else { Status::Fail },
            measured: json!(measured),
            expected: json!(rep.c1),
            tolerance: json!("2% relative"),
            detail: format!("N(10^8)/10^(8*5/6) with N = {n}"),
        });
    }

    // ---- 4: 2-torsion constant (finding) + exact census cross-check ----
    if max_height >= 1_000_000_000_000 {
        let e2 = empirical_constant(2, 1_000_000_000_000)?;
        let formula = rep.c2_formula;
        let printed = rep.c2_printed;
        let near_formula = (e2 - formula).abs() / formula < 0.05;
        let near_printed = (e2 - printed).abs() / printed < 0.05;
        let which = match (near_formula, near_printed) {
            (true, false) => "matches the closed formula, not the printed 3.1969",
            (false, true) => "matches the printed 3.1969, not the closed formula",
            (true, true) => "within 5% of both candidates",
            (false, false) => "matches neither candidate",
        };
        let sieved6 = sieved_count(2, 1_000_000)?;
        let census6 = census_1e6
            .as_ref()
            .map(|t| t.contains_count(0, &TorsionGroup::Cyclic(2)))
            .unwrap_or(0);
        let cross_ok = sieved6 as u64 == census6;
        let status = if !cross_ok || (!near_formula && !near_printed) {
            Status::Fail
        } else {
            Status::Finding
        };
        results.push(CriterionResult {
            criterion_id: "C4".into(),
            status,
            measured: json!({
                "empirical_at_1e12": e2,
                "sieved_1e6": sieved6 as u64,
                "census_contains_z2_1e6": census6,
            }),
            expected: json!({"formula": formula, "printed": printed}),
            tolerance: json!({"constant": "5% of either", "cross_check": 0}),
            detail: format!("2-torsion constant {which}; sieve/census cross-check {}",
                if cross_ok { "exact" } else { "MISMATCH" }),
        });
    }

    // ---- 5: 3-torsion constant (finding) + exact census cross-check ----
    if max_height >= 1_000_000_000_000_000 {
        let e3 = empirical_constant(3, 1_000_000_000_000_000)?;
        let full = 1.5221;
        let half = 0.7611;
        let near_full = (e3 - full).abs() / full < 0.10;
        let near_half = (e3 - half).abs() / half < 0.10;
        let which = match (near_full, near_half) {
            (true, false) => "matches c3, not c3/2",
            (false, true) => "matches c3/2, not c3",
            (true, true) => "within 10% of both (impossible unless wildly off)",
            (false, false) => "matches neither candidate",
        };
        let sieved6 = sieved_count(3, 1_000_000)?;
        let census6 = census_1e6
            .as_ref()
            .map(|t| t.contains_count(0, &TorsionGroup::Cyclic(3)))
            .unwrap_or(0);
        let cross_ok = sieved6 as u64 == census6;
        let status = if !cross_ok || (!near_full && !near_half) {
            Status::Fail
        } else {
            Status::Finding
        };
        results.push(CriterionResult {
            criterion_id: "C5".into(),
            status,
            measured: json!({
                "empirical_at_1e15": e3,
                "sieved_1e6": sieved6 as u64,
                "census_contains_z3_1e6": census6,
            }),
            expected: json!({"c3": full, "c3_half": half}),
            tolerance: json!({"constant": "10% of either", "cross_check": 0}),
            detail: format!("3-torsion constant {which}; sieve/census cross-check {}",
                if cross_ok { "exact" } else { "MISMATCH" }),
        });
    }

    // ---- 6: sieve identity ----
    {
        let xs: Vec<u128> = [1_000u128, 10_000, 100_000, 1_000_000]
            .into_iter()
            .filter(|&x| x <= max_height.max(1_000))
            .collect();
        let mut witness = None;
        let mut counts = Vec::new();
        'outer: for i in 1u8..=3 {
            for &x in &xs {
                match sieved_count(i, x) {
                    Ok(n) => counts.push(json!({"i": i, "x": x as u64, "sieved": n as u64})),
                    Err(e) => {
                        witness = Some(format!("i={i}, X={x}: {e}"));
                        break 'outer;
                    }
                }
            }
        }
        results.push(CriterionResult {
            criterion_id: "C6".into(),
            status: if witness.is_none() { Status::Pass } else { Status::Fail },
            measured: json!(counts),
            expected: json!("Mobius sum equals direct minimal-twist dedup"),
            tolerance: json!(0),
            detail: witness.unwrap_or_else(|| {
                format!("both sieve routes agree for i in 1..3, X in {xs:?}")
            }),
        });
    }

    // ---- 7: exponent law ----
    if let Some(t) = &census_1e8 {
        let mut failures = Vec::new();
        let mut measured = serde_json::Map::new();
        // census slopes, tolerance 0.03
        let slopes = slope_report(t);
        for name in ["0", "Z/2", "Z/3", "Z/4", "Z/2xZ/2"] {
            let entry = slopes
                .entries
                .iter()
                .find(|e| e.group == name)
                .expect("known group");
            match entry.deviation {
                Some(d) if d <= 0.03 => {}
                Some(d) => failures.push(format!(
                    "{name}: census slope {:.4} deviates {d:.4} from {:.4}",
                    entry.fitted.unwrap(),
                    entry.reference
                )),
                None => failures.push(format!("{name}: insufficient census data")),
            }
            measured.insert(format!("census {name}"), json!(entry.fitted));
        }
        // mid-range groups via family enumeration, tolerance 0.05
        let fams = all_families(None)?;
        let family = |g: &str| -> &FamilySpec {
            fams.iter()
                .find(|f| f.group.to_string() == g)
                .expect("family present")
        };
        for name in ["Z/5", "Z/6", "Z/2xZ/4"] {
            let f = family(name);
            let pts: Vec<(u128, u128)> = [1e8 as u128, 1e10 as u128, 1e12 as u128, 1e14 as u128]
                .into_iter()
                .map(|x| Ok((x, enumerate_family(f, x)?.len() as u128)))
                .collect::<Result<_>>()?;
            let slope = fit_exponent(&pts)?;
            let reference = 1.0 / 6.0;
            if (slope - reference).abs() > 0.05 {
                failures.push(format!(
                    "{name}: family slope {slope:.4} deviates from {reference:.4}"
                ));
            }
            measured.insert(format!("family {name}"), json!(slope));
        }
        // Sparse groups: doubling-ratio property check, tolerance 25%.
        // Base heights are the smallest at which the counts are large
        // enough that integer granularity (N and N' are single digits)
        // cannot by itself push the ratio outside the tolerance; each
        // enumeration still takes only seconds.
        for (name, x) in [
            ("Z/7", 10u128.pow(21)),
            ("Z/8", 10u128.pow(21)),
            ("Z/9", 10u128.pow(21)),
            ("Z/10", 10u128.pow(21)),
            ("Z/12", 10u128.pow(27)),
            ("Z/2xZ/6", 10u128.pow(21)),
            ("Z/2xZ/8", 4096 * 10u128.pow(33)),
        ] {
            let f = family(name);
            let n1 = enumerate_family(f, x)?.len() as f64;
            let n2 = enumerate_family(f, x << 12)?.len() as f64;
            let expected = 2f64.powf(12.0 * f.exponent());
            let ratio = n2 / n1;
            if (ratio / expected - 1.0).abs() > 0.25 {
                failures.push(format!(
                    "{name}: N(2^12 X)/N(X) = {n2}/{n1} = {ratio:.3}, expected ~{expected:.3}"
                ));
            }
            measured.insert(
                format!("ratio {name}"),
                json!({"ratio": ratio, "expected": expected}),
            );
        }
        results.push(CriterionResult {
            criterion_id: "C7".into(),
            status: if failures.is_empty() { Status::Pass } else { Status::Fail },
            measured: Value::Object(measured),
            expected: json!("slopes 1/d(G) per Table 1; doubling ratios 2^(12(m+1)/12n)"),
            tolerance: json!({"census": 0.03, "family": 0.05, "ratio": "25%"}),
            detail: if failures.is_empty() {
                "all fitted exponents and ratios within tolerance".into()
            } else {
                failures.join("; ")
            },
        });
    }

    // ---- 8: torsion oracle equivalence ----
    {
        let x = max_height.min(100_000).max(1_000);
        let curves: Vec<_> = crate::census::enumerate_minimal(x).collect();
        let mismatch = curves
            .par_iter()
            .find_map_any(|c| {
                let direct = torsion_subgroup(c);
                let oracle = match nagell_lutz_oracle(c) {
                    Ok(pts) => classify_points(c, &pts),
                    Err(e) => return Some(format!("({}, {}): oracle error {e}", c.a, c.b)),
                };
                if direct != oracle {
                    Some(format!(
                        "({}, {}): division-poly route {direct}, Nagell-Lutz {oracle}",
                        c.a, c.b
                    ))
                } else {
                    None
                }
            });
        results.push(CriterionResult {
            criterion_id: "C8".into(),
            status: if mismatch.is_none() { Status::Pass } else { Status::Fail },
            measured: json!({"curves_checked": curves.len(), "height_below": x as u64}),
            expected: json!("torsion_subgroup == nagell_lutz_oracle on every minimal curve"),
            tolerance: json!(0),
            detail: mismatch.unwrap_or_else(|| "exhaustive agreement".into()),
        });
    }

    // ---- 9: family containment + Z/3 sign adjudication ----
    {
        let per_family = if max_height >= 100_000_000 { 1000 } else { 100 };
        let fams = all_families(None)?;
        let mut failures = Vec::new();
        for f in &fams {
            let bad = random_specialization_failures(f, per_family);
            if let Some(msg) = bad {
                failures.push(msg);
            }
        }
        let sign = z3_g_sign()?;
        let sign_ok = builtin_families().is_ok();
        results.push(CriterionResult {
            criterion_id: "C9".into(),
            status: if failures.is_empty() && sign_ok { Status::Pass } else { Status::Fail },
            measured: json!({
                "families": fams.len(),
                "specializations_per_family": per_family,
                "z3_g_sign": sign,
            }),
            expected: json!("every specialization's torsion contains G; exactly one Z/3 sign"),
            tolerance: json!(0),
            detail: if failures.is_empty() {
                format!("all containments hold; Z/3 quadratic resolved to {sign}")
            } else {
                failures.join("; ")
            },
        });
    }

    // ---- 10: Lipschitz boundary error ----
    {
        let xs: Vec<u128> = (4..=10)
            .map(|k| 10u128.pow(k))
            .filter(|&x| x <= max_height.max(10_000))
            .collect();
        let mut failures = Vec::new();
        let mut table = Vec::new();
        for i in 1u8..=3 {
            let ((dn, dd), e) = region_exponents(i);
            let mut errs = Vec::new();
            for &x in &xs {
                let lattice = lattice_count(i, x) as f64;
                let main = area(i) * (x as f64).powf(dd as f64 / dn as f64);
                let err = (lattice - main).abs() / (x as f64).powf(1.0 / e as f64);
                errs.push(err);
                table.push(json!({"i": i, "x": x as u64, "normalized_error": err}));
            }
            // bounded, with no growth trend: the tail must not exceed the
            // early maximum by more than a constant factor
            let head = errs[..errs.len() / 2]
                .iter()
                .cloned()
                .fold(f64::MIN, f64::max);
            let tail = errs[errs.len() / 2..]
                .iter()
                .cloned()
                .fold(f64::MIN, f64::max);
            let cap = 50.0;
            if errs.iter().any(|&e| e > cap) {
                failures.push(format!("i={i}: normalized error exceeds {cap}"));
            }
            if tail > 3.0 * head.max(0.5) {
                failures.push(format!(
                    "i={i}: error grows ({head:.3} early vs {tail:.3} late)"
                ));
            }
        }
        results.push(CriterionResult {
            criterion_id: "C10".into(),
            status: if failures.is_empty() { Status::Pass } else { Status::Fail },
            measured: json!(table),
            expected: json!("|lattice - area X^(1/d)| = O(X^(1/e))"),
            tolerance: json!({"cap": 50.0, "growth": "late max <= 3x early max"}),
            detail: failures.join("; "),
        });
    }

    Ok(VerifyReport {
        max_height: max_height.to_string(),
        results,
    })
}

/// Run `count` random specializations of `f`; None if all torsion groups
/// contain the target, otherwise a witness message.
fn random_specialization_failures(f: &FamilySpec, count: usize) -> Option<String> {
    use rand::{Rng, SeedableRng};
    // distinct seed stream per family
    let seed = 0x76657269u64 ^ (f.group.order() as u64) << 32 ^ f.r as u64;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut params = Vec::new();
    let mut attempts = 0;
    while params.len() < count && attempts < 50 * count {
        attempts += 1;
        let p: i64 = rng.gen_range(-30..=30);
        let q: i64 = rng.gen_range(1..=8);
        let u: i64 = rng.gen_range(1..=4);
        params.push((p, q, u));
    }
    params.par_iter().find_map_any(|&(p, q, u)| {
        let t = crate::arith::rat(p as i128, q as i128);
        let c = match crate::families::specialize(f, &t, &crate::arith::rat_int(u as i128)) {
            Ok(c) => c,
            Err(_) => return None, // singular specialization: not a counterexample
        };
        let tors = torsion_subgroup(&c);
        if tors.contains(&f.group) {
            None
        } else {
            Some(format!(
                "{}: t={p}/{q} u={u} gives ({}, {}) with torsion {tors}",
                f.group, c.a, c.b
            ))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        // the constants-and-small-scale subset; the full suite is exercised
        // by the acceptance integration test
        let report = run(10_000).unwrap();
        assert!(report.ok(), "{:#?}", report.results);
        let ids: Vec<&str> = report
            .results
            .iter()
            .map(|r| r.criterion_id.as_str())
            .collect();
        assert!(ids.contains(&"C1") && ids.contains(&"C2") && ids.contains(&"C6"));
        assert!(!ids.contains(&"C3"), "C3 needs 1e8, not run in quick mode");
    }
}
