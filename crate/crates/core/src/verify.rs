//! End-to-end reproduction of the published numbers, as a list of checks
//! whose rendering does not depend on thread count or scheduling.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::bounds::c_m;
use crate::enumeration::{ek, verify_table2, EkMode, SearchConfig};
use crate::error::Result;
use crate::parsing::{find_parsings, smaller_knots, Parsing};
use crate::rationals::{canonical_fraction, Fraction, KnotClass};
use crate::seams::{find_seams, lift_construction, negate_segments};
use crate::vectors::{crossing_number, phi, phi_inverse, torus_vector, SEvenVector};

pub const CM_EXPECTED: [u64; 14] = [
    9, 15, 45, 45, 105, 105, 225, 315, 315, 315, 945, 945, 945, 945,
];
/// EK(n) for n = 3, 4, ..., 18.
pub const EK_EXPECTED: [usize; 16] = [0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 1];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReproductionReport {
    pub checks: Vec<Check>,
}

impl ReproductionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for ReproductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}: {}", c.name, c.detail)?;
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        writeln!(f, "{passed}/{} checks passed", self.checks.len())
    }
}

fn knot(p: i64, q: i64) -> KnotClass {
    canonical_fraction(&Fraction::new(p, q).expect("valid")).expect("nontrivial")
}

fn list<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let mut s = String::new();
    for (i, x) in items.into_iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s
}

fn check(name: &str, outcome: Result<(bool, String)>) -> Check {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

fn cm_table() -> Result<(bool, String)> {
    let values: Vec<u64> = (1..=14).map(c_m).collect();
    Ok((
        values == CM_EXPECTED,
        format!("c_1..c_14 = {}", list(&values)),
    ))
}

fn ek_table(config: &SearchConfig) -> Result<(bool, String)> {
    let top = config.budget.min(18);
    if top < 3 {
        return Ok((false, format!("budget {} is below 3", config.budget)));
    }
    let values = (3..=top)
        .map(|n| ek(n, EkMode::Exact, config).map(|v| v.value))
        .collect::<Result<Vec<_>>>()?;
    let expected = &EK_EXPECTED[..values.len()];
    Ok((
        values == expected,
        format!("EK(3..={top}) = {}", list(&values)),
    ))
}

fn two_knot_table() -> Result<(bool, String)> {
    let report = verify_table2();
    let failing: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.knot.to_string())
        .collect();
    let detail = if failing.is_empty() {
        format!(
            "{} knots, each with the stated crossing number and >= 2 smaller knots",
            report.rows.len()
        )
    } else {
        format!("failing: {}", list(&failing))
    };
    Ok((report.all_passed(), detail))
}

fn example_38_85() -> Result<(bool, String)> {
    let k = knot(38, 85);
    let v = phi_inverse(&k).into_representative();
    let base = SEvenVector::new(vec![2, 2])?;
    let folds: Vec<usize> = find_parsings(&v, &base).iter().map(Parsing::fold).collect();
    let smaller = smaller_knots(&v)?;
    let passed = v.entries() == [2, 2, 0, 2, 2, 0, 2, 2]
        && folds == [3]
        && smaller == BTreeSet::from([knot(2, 5)]);
    Ok((
        passed,
        format!(
            "vector ({v}), folds w.r.t. (2,2): {}, smaller: {}",
            list(&folds),
            list(&smaller)
        ),
    ))
}

fn torus_27_seams() -> Result<(bool, String)> {
    let c = torus_vector(27)?;
    let mut parsings = Vec::new();
    for n in [3, 9] {
        parsings.extend(
            find_parsings(&c, &torus_vector(n)?)
                .into_iter()
                .filter(|p| p.fold() >= 3),
        );
    }
    let seams = find_seams(&c, &parsings)?;
    let patterns: [(&[usize], KnotClass, u64); 4] = [
        (&[5], knot(17, 315), 28),
        (&[4], knot(35, 621), 29),
        (&[3, 5], knot(577, 5499), 30),
        (&[2, 4], knot(1189, 10395), 31),
    ];
    let mut passed = seams.cuts == [8, 9, 17, 18];
    let mut results = Vec::new();
    for (segments, expected, n) in patterns {
        let d = negate_segments(&seams, &segments.iter().copied().collect())?;
        let k = phi(&d)?;
        let cr = crossing_number(&d);
        passed &= k == expected && cr == n;
        results.push(format!("{k} ({cr})"));
    }
    Ok((
        passed,
        format!(
            "seams {{{}}}, negations give {}",
            list(&seams.cuts),
            list(&results)
        ),
    ))
}

fn torus_45(config: &SearchConfig) -> Result<(bool, String)> {
    let smaller = smaller_knots(&torus_vector(45)?)?;
    let expected = BTreeSet::from([knot(1, 3), knot(1, 5), knot(1, 9), knot(1, 15)]);
    let ek45 = ek(45, EkMode::Assisted, config)?.value;
    let ek105 = ek(105, EkMode::Assisted, config)?.value;
    Ok((
        smaller == expected && ek45 == 4 && ek105 == 6,
        format!(
            "below 1/45: {}; EK(45) = {ek45}, EK(105) = {ek105}",
            list(&smaller)
        ),
    ))
}

fn lifts() -> Result<(bool, String)> {
    let c = SEvenVector::new(vec![2, -2])?;
    let base = smaller_knots(&c)?;
    let mut crossings = Vec::new();
    let mut passed = true;
    for target in 9..=15 {
        let d = lift_construction(&c, target)?;
        let below = smaller_knots(&d)?;
        passed &=
            crossing_number(&d) == target && below.contains(&phi(&c)?) && below.is_superset(&base);
        crossings.push(crossing_number(&d));
    }
    Ok((
        passed,
        format!("lifts of 1/3 have crossing numbers {}", list(&crossings)),
    ))
}

pub fn verify_all(config: &SearchConfig) -> ReproductionReport {
    let checks = vec![
        check("c_m table", cm_table()),
        check("EK exact", ek_table(config)),
        check("two-knot table", two_knot_table()),
        check("38/85", example_38_85()),
        check("T(2,27) seams", torus_27_seams()),
        check("T(2,45) and EK at c_m", torus_45(config)),
        check("3-fold lift", lifts()),
    ];
    ReproductionReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes_and_output_is_stable() {
        let one = verify_all(&SearchConfig {
            budget: 14,
            workers: 1,
        });
        assert!(one.all_passed(), "{one}");
        let many = verify_all(&SearchConfig {
            budget: 14,
            workers: 4,
        });
        assert_eq!(one.to_string(), many.to_string());
        assert_eq!(one.to_json(), many.to_json());
        assert!(one.to_string().ends_with("7/7 checks passed\n"));
    }

    #[test]
    fn tiny_budget_fails_cleanly() {
        let report = verify_all(&SearchConfig {
            budget: 2,
            workers: 1,
        });
        assert!(!report.all_passed());
        assert!(report.checks[1].detail.contains("below 3"));
    }
}
