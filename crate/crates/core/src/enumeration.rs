//! Enumeration of 2-bridge knots by crossing number and the epimorphism
//! number EK(n).

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{crossing_bound, ek_upper_bound};
use crate::error::{Error, Result};
use crate::parsing::smaller_knots;
use crate::rationals::{canonical_fraction, Fraction, KnotClass};
use crate::seams::lift_construction;
use crate::vectors::{
    canonical_vector, crossing_number, phi, phi_inverse, torus_vector, SEvenVector, VectorClass,
};

/// Limits for exhaustive work.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    /// Largest crossing number enumerated exhaustively.
    pub budget: u64,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            budget: 18,
            workers: 0,
        }
    }
}

impl SearchConfig {
    pub(crate) fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .expect("thread pool")
            .install(f)
    }

    fn check_budget(&self, n: u64) -> Result<()> {
        if n > self.budget {
            Err(Error::BudgetExceeded {
                n,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Expanded even vectors filtered by crossing number.
    Vectors,
    /// Positive continued fractions `a_1 + ... + a_k = n` with `a_1, a_k >= 2`.
    Compositions,
}

/// All 2-bridge knot classes with crossing number `n`, sorted by `(q, p)`.
pub fn enumerate_knots(n: u64, engine: Engine) -> Vec<KnotClass> {
    if n < 3 {
        return Vec::new();
    }
    match engine {
        Engine::Vectors => by_vectors(n),
        Engine::Compositions => by_compositions(n),
    }
}

fn by_vectors(n: u64) -> Vec<KnotClass> {
    fn extend(v: &mut Vec<i8>, cr: u64, n: u64, out: &mut BTreeSet<VectorClass>) {
        let last = *v.last().expect("nonempty");
        if cr == n {
            if v.len().is_multiple_of(2) {
                out.insert(canonical_vector(&SEvenVector::from_trusted(v.clone())));
            }
            return;
        }
        // ℓ(v) <= cr(v) - 1 for the finished vector
        if v.len() as u64 + 1 >= n {
            return;
        }
        for next in [last, -last] {
            let step = if next == last { 2 } else { 1 };
            if cr + step <= n {
                v.push(next);
                extend(v, cr + step, n, out);
                v.pop();
            }
        }
        if cr + 2 <= n && (v.len() as u64) + 3 <= n {
            v.extend([0, last]);
            extend(v, cr + 2, n, out);
            v.truncate(v.len() - 2);
        }
    }
    let mut classes = BTreeSet::new();
    extend(&mut vec![2], 2, n, &mut classes);
    let mut knots: Vec<KnotClass> = classes
        .iter()
        .map(|c| phi(c.representative()).expect("nonempty"))
        .collect();
    knots.sort();
    knots.dedup();
    knots
}

fn canonical_u128(p: u128, q: u128) -> (u128, u128) {
    fn inverse(a: u128, q: u128) -> u128 {
        let (mut r0, mut r1) = (q as i128, a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let t = r0 / r1;
            (r0, r1) = (r1, r0 - t * r1);
            (s0, s1) = (s1, s0 - t * s1);
        }
        s0.rem_euclid(q as i128) as u128
    }
    let p = p % q;
    let inv = inverse(p, q);
    let least = [p, inv, q - p, q - inv]
        .into_iter()
        .min()
        .expect("nonempty");
    (least, q)
}

fn by_compositions(n: u64) -> Vec<KnotClass> {
    fn walk(rest: u64, parts: &mut Vec<u64>, out: &mut HashSet<(u128, u128)>) {
        if rest == 0 {
            if *parts.last().expect("nonempty") < 2 {
                return;
            }
            // [a_1, ..., a_k] evaluated from the right
            let (mut num, mut den) = (0u128, 1u128);
            for &a in parts.iter().rev() {
                (num, den) = (den, a as u128 * den + num);
            }
            if den % 2 == 1 {
                out.insert(canonical_u128(num, den));
            }
            return;
        }
        for a in 1..=rest {
            parts.push(a);
            walk(rest - a, parts, out);
            parts.pop();
        }
    }
    let mut found: Vec<(u128, u128)> = (2..=n)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = HashSet::new();
            walk(n - first, &mut vec![first], &mut out);
            out
        })
        .collect();
    found.sort_unstable();
    found.dedup();
    let mut knots: Vec<KnotClass> = found
        .into_iter()
        .map(|(p, q)| {
            let f = Fraction::new(BigInt::from(p), BigInt::from(q)).expect("odd denominator");
            canonical_fraction(&f).expect("q >= 3")
        })
        .collect();
    knots.sort();
    knots
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub knot: KnotClass,
    pub vector: VectorClass,
    pub smaller: Vec<KnotClass>,
}

/// Every knot of one crossing number with the knots strictly below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotCatalog {
    pub crossing_number: u64,
    pub entries: Vec<CatalogEntry>,
    pub ek: usize,
}

impl KnotCatalog {
    /// First entry (in `(q, p)` order) attaining EK.
    pub fn witness(&self) -> Option<&CatalogEntry> {
        if self.ek == 0 {
            return None;
        }
        self.entries.iter().find(|e| e.smaller.len() == self.ek)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CatalogRepr::from(self)).expect("catalog serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: CatalogRepr =
            serde_json::from_str(s).map_err(|e| Error::InvalidVector(format!("catalog: {e}")))?;
        repr.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogRepr {
    n: u64,
    knots: Vec<EntryRepr>,
    ek: usize,
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    #[serde(with = "crate::rationals::bigint_json")]
    p: BigInt,
    #[serde(with = "crate::rationals::bigint_json")]
    q: BigInt,
    vector: SEvenVector,
    smaller: Vec<KnotClass>,
}

impl From<&KnotCatalog> for CatalogRepr {
    fn from(c: &KnotCatalog) -> Self {
        CatalogRepr {
            n: c.crossing_number,
            knots: c
                .entries
                .iter()
                .map(|e| EntryRepr {
                    p: e.knot.p().clone(),
                    q: e.knot.q().clone(),
                    vector: e.vector.representative().clone(),
                    smaller: e.smaller.clone(),
                })
                .collect(),
            ek: c.ek,
        }
    }
}

impl TryFrom<CatalogRepr> for KnotCatalog {
    type Error = Error;

    fn try_from(r: CatalogRepr) -> Result<Self> {
        let mut entries = Vec::with_capacity(r.knots.len());
        for e in r.knots {
            let knot = canonical_fraction(&Fraction::new(e.p, e.q)?)?;
            let vector = canonical_vector(&e.vector);
            if phi(vector.representative())? != knot {
                return Err(Error::InvalidVector(format!(
                    "catalog vector {} does not represent {knot}",
                    e.vector
                )));
            }
            entries.push(CatalogEntry {
                knot,
                vector,
                smaller: e.smaller,
            });
        }
        Ok(KnotCatalog {
            crossing_number: r.n,
            entries,
            ek: r.ek,
        })
    }
}

fn catalog_entry(knot: KnotClass) -> CatalogEntry {
    let vector = phi_inverse(&knot);
    let smaller = smaller_knots(vector.representative())
        .expect("nontrivial knot")
        .into_iter()
        .collect();
    CatalogEntry {
        knot,
        vector,
        smaller,
    }
}

/// Full catalog for crossing number `n`, within the configured budget.
pub fn build_catalog(n: u64, config: &SearchConfig) -> Result<KnotCatalog> {
    if n < 3 {
        return Err(Error::CrossingNumber(n));
    }
    config.check_budget(n)?;
    let entries: Vec<CatalogEntry> = config.install(|| {
        enumerate_knots(n, Engine::Compositions)
            .into_par_iter()
            .map(catalog_entry)
            .collect()
    });
    let ek = entries.iter().map(|e| e.smaller.len()).max().unwrap_or(0);
    Ok(KnotCatalog {
        crossing_number: n,
        entries,
        ek,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EkMode {
    Exact,
    Assisted,
}

/// How an EK value was established.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Maximum over every knot with `n` crossings.
    Enumeration { knots: usize },
    /// A witness attaining the upper bound from `c_m`.
    Bound { upper: usize, source: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EkValue {
    pub n: u64,
    pub value: usize,
    pub mode: EkMode,
    pub witness: Option<KnotClass>,
    pub certificate: Certificate,
}

impl fmt::Display for EkValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EK({}) = {}", self.n, self.value)?;
        if let Some(w) = &self.witness {
            write!(f, " (witness {w})")?;
        }
        Ok(())
    }
}

/// EK(n): the most nontrivial knots strictly below a single 2-bridge knot
/// with `n` crossings.
pub fn ek(n: u64, mode: EkMode, config: &SearchConfig) -> Result<EkValue> {
    if n < 3 {
        return Err(Error::CrossingNumber(n));
    }
    match mode {
        EkMode::Exact => {
            let catalog = build_catalog(n, config)?;
            Ok(EkValue {
                n,
                value: catalog.ek,
                mode,
                witness: catalog.witness().map(|e| e.knot.clone()),
                certificate: Certificate::Enumeration {
                    knots: catalog.entries.len(),
                },
            })
        }
        EkMode::Assisted => assisted(n, config),
    }
}

fn assisted(n: u64, config: &SearchConfig) -> Result<EkValue> {
    let upper = crossing_bound(n).min(ek_upper_bound(n) as usize);
    let mut best: Option<(usize, KnotClass, String)> = None;
    let mut consider = |v: &SEvenVector, source: String| -> Result<bool> {
        debug_assert_eq!(crossing_number(v), n);
        let count = smaller_knots(v)?.len();
        if best.as_ref().is_none_or(|(b, _, _)| count > *b) {
            best = Some((count, phi(v)?, source));
        }
        Ok(count >= upper)
    };
    let certified = |best: Option<(usize, KnotClass, String)>| {
        let (value, witness, source) = best.expect("certified implies a witness");
        EkValue {
            n,
            value,
            mode: EkMode::Assisted,
            witness: (value > 0).then_some(witness),
            certificate: Certificate::Bound { upper, source },
        }
    };

    if n % 2 == 1 && consider(&torus_vector(n)?, format!("torus knot T(2,{n})"))? {
        return Ok(certified(best));
    }
    for row in TWO_KNOT_TABLE.iter().filter(|r| r.n == n) {
        let knot = row.knot();
        if consider(
            phi_inverse(&knot).representative(),
            format!("tabulated knot {knot}"),
        )? {
            return Ok(certified(best));
        }
    }
    let top = config.budget.min(n / 3);
    for n0 in 3..=top {
        let catalog = build_catalog(n0, config)?;
        let Some(w) = catalog.witness() else { continue };
        let lifted = lift_construction(w.vector.representative(), n)?;
        if consider(&lifted, format!("lift of {} ({n0} crossings)", w.knot))? {
            return Ok(certified(best));
        }
    }
    if upper == 0 {
        return Ok(EkValue {
            n,
            value: 0,
            mode: EkMode::Assisted,
            witness: None,
            certificate: Certificate::Bound {
                upper,
                source: "crossing bound".into(),
            },
        });
    }
    if n <= config.budget {
        return bounded_enumeration(n, upper, config);
    }
    Err(Error::NotCertified {
        n,
        lower: best.map_or(0, |b| b.0),
        upper,
    })
}

fn bounded_enumeration(n: u64, upper: usize, config: &SearchConfig) -> Result<EkValue> {
    let knots = enumerate_knots(n, Engine::Compositions);
    let total = knots.len();
    let counts: Vec<usize> = config.install(|| {
        knots
            .par_iter()
            .map(|k| smaller_knots(phi_inverse(k).representative()).map_or(0, |s| s.len()))
            .collect()
    });
    let value = counts.iter().copied().max().unwrap_or(0).min(upper);
    let witness = knots
        .iter()
        .zip(&counts)
        .find(|(_, c)| **c == value && value > 0)
        .map(|(k, _)| k.clone());
    Ok(EkValue {
        n,
        value,
        mode: EkMode::Assisted,
        witness,
        certificate: Certificate::Enumeration { knots: total },
    })
}

/// One tabulated knot with `n` crossings lying above two nontrivial knots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoKnotRow {
    pub n: u64,
    pub p: u64,
    pub q: u64,
}

impl TwoKnotRow {
    pub fn knot(&self) -> KnotClass {
        canonical_fraction(&Fraction::new(self.p, self.q).expect("tabulated fraction"))
            .expect("tabulated fraction")
    }
}

const fn row(n: u64, p: u64, q: u64) -> TwoKnotRow {
    TwoKnotRow { n, p, q }
}

/// Examples with EK(n) = 2 for 27 <= n <= 44.
pub const TWO_KNOT_TABLE: [TwoKnotRow; 25] = [
    row(27, 1, 27),
    row(28, 17, 315),
    row(29, 35, 621),
    row(29, 19, 351),
    row(30, 577, 5499),
    row(30, 35, 639),
    row(31, 1189, 10395),
    row(31, 53, 945),
    row(32, 883, 8415),
    row(33, 1, 33),
    row(33, 1801, 15903),
    row(34, 23, 495),
    row(35, 461, 5313),
    row(35, 1, 35),
    row(36, 29, 595),
    row(37, 349, 5075),
    row(37, 91, 1647),
    row(38, 107, 1935),
    row(39, 125, 2241),
    row(40, 2107, 20079),
    row(41, 127, 2295),
    row(41, 4249, 37935),
    row(42, 143, 2583),
    row(43, 161, 2889),
    row(44, 2719, 25911),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoKnotCheck {
    pub n: u64,
    pub knot: KnotClass,
    pub crossing_number: u64,
    pub smaller: Vec<KnotClass>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoKnotReport {
    pub rows: Vec<TwoKnotCheck>,
}

impl TwoKnotReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

pub fn verify_table2() -> TwoKnotReport {
    let rows = TWO_KNOT_TABLE
        .par_iter()
        .map(|row| {
            let knot = row.knot();
            let vector = phi_inverse(&knot);
            let crossing_number = crossing_number(vector.representative());
            let smaller: Vec<KnotClass> = smaller_knots(vector.representative())
                .expect("nontrivial")
                .into_iter()
                .collect();
            TwoKnotCheck {
                n: row.n,
                passed: crossing_number == row.n && smaller.len() >= 2,
                knot,
                crossing_number,
                smaller,
            }
        })
        .collect();
    TwoKnotReport { rows }
}
