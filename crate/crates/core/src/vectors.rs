//! Expanded even vectors: sequences over `{-2, 0, 2}` of even length whose
//! zeros sit between two equal nonzero entries.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rationals::{canonical_fraction, eval_cf, even_expansion, KnotClass};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SEvenVector(Vec<i8>);

impl SEvenVector {
    /// Validates the entries. The empty vector is accepted and stands for the unknot.
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        check_entries(&entries)?;
        Ok(Self(entries))
    }

    pub(crate) fn from_trusted(entries: Vec<i8>) -> Self {
        debug_assert!(check_entries(&entries).is_ok(), "{entries:?}");
        Self(entries)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// `a, -a, a⁻¹, -a⁻¹`, possibly with repeats.
    pub fn orbit(&self) -> [SEvenVector; 4] {
        let rev = self.reversed();
        [self.clone(), self.negated(), rev.negated(), rev]
    }

    pub fn abs_sum(&self) -> u64 {
        self.0.iter().map(|x| x.unsigned_abs() as u64).sum()
    }

    pub fn sign_changes(&self) -> u64 {
        sign_changes(&self.0)
    }

    pub fn as_terms(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }
}

fn check_entries(v: &[i8]) -> Result<()> {
    if !v.len().is_multiple_of(2) {
        return Err(Error::InvalidVector(format!("odd length {}", v.len())));
    }
    if let Some(x) = v.iter().find(|x| !matches!(x, -2 | 0 | 2)) {
        return Err(Error::InvalidVector(format!(
            "entry {x} is not one of -2, 0, 2"
        )));
    }
    if v.first() == Some(&0) || v.last() == Some(&0) {
        return Err(Error::InvalidVector("vector starts or ends with 0".into()));
    }
    for i in 1..v.len().saturating_sub(1) {
        if v[i] == 0 && (v[i - 1] != v[i + 1] || v[i - 1] == 0) {
            return Err(Error::InvalidVector(format!(
                "zero at position {} is not between equal nonzero entries",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Sign changes along the nonzero entries.
pub(crate) fn sign_changes(v: &[i8]) -> u64 {
    let mut last = 0i8;
    let mut changes = 0;
    for &x in v.iter().filter(|x| **x != 0) {
        if last != 0 && (last > 0) != (x > 0) {
            changes += 1;
        }
        last = x;
    }
    changes
}

impl fmt::Display for SEvenVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for SEvenVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Self::empty());
        }
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i8>()
                    .map_err(|_| Error::InvalidVector(format!("cannot parse entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl Serialize for SEvenVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SEvenVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i8>::deserialize(d)?;
        Self::new(v).map_err(serde::de::Error::custom)
    }
}

/// An orbit `{a, -a, a⁻¹, -a⁻¹}`, named by its lexicographically largest member
/// (so representatives begin with `2`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorClass {
    representative: SEvenVector,
}

impl VectorClass {
    pub fn representative(&self) -> &SEvenVector {
        &self.representative
    }

    pub fn into_representative(self) -> SEvenVector {
        self.representative
    }

    /// Distinct members of the orbit, representative first.
    pub fn members(&self) -> Vec<SEvenVector> {
        let mut out: Vec<SEvenVector> = Vec::with_capacity(4);
        for v in self.representative.orbit() {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }
}

impl fmt::Display for VectorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.representative.fmt(f)
    }
}

impl Serialize for VectorClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.representative.serialize(s)
    }
}

/// The vector of an even connector `c`: `(0)` for zero, otherwise
/// `±(2, 0, 2, ..., 0, 2)` with entries summing to `c`.
pub fn connector_vector(c: i64) -> Vec<i8> {
    debug_assert!(c % 2 == 0);
    if c == 0 {
        return vec![0];
    }
    let s: i8 = if c > 0 { 2 } else { -2 };
    let twos = (c.unsigned_abs() / 2) as usize;
    let mut out = Vec::with_capacity(2 * twos - 1);
    for i in 0..twos {
        if i > 0 {
            out.push(0);
        }
        out.push(s);
    }
    out
}

/// Replaces every even partial quotient `±2m` by `±(2, 0, ..., 0, 2)`.
pub fn expand(terms: &[i64]) -> Result<SEvenVector> {
    if let Some(t) = terms.iter().find(|t| **t == 0 || *t % 2 != 0) {
        return Err(Error::InvalidContinuedFraction(format!(
            "term {t} is not a nonzero even integer"
        )));
    }
    let entries: Vec<i8> = terms.iter().flat_map(|&t| connector_vector(t)).collect();
    SEvenVector::new(entries)
}

/// Deletes zeros by merging their neighbours, `(.., a, 0, b, ..) -> (.., a + b, ..)`.
pub fn contract(v: &SEvenVector) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    let mut merge = false;
    for &x in v.entries() {
        if x == 0 {
            merge = true;
        } else if merge {
            *out.last_mut().expect("zeros are never leading") += x as i64;
            merge = false;
        } else {
            out.push(x as i64);
        }
    }
    out
}

pub fn canonical_vector(v: &SEvenVector) -> VectorClass {
    let representative = v.orbit().into_iter().max().expect("orbit is nonempty");
    VectorClass { representative }
}

/// `Φ(â) = K_{[a]}`.
pub fn phi(v: &SEvenVector) -> Result<KnotClass> {
    if v.is_empty() {
        return Err(Error::Unknot);
    }
    let f = eval_cf(&BigInt::zero(), &v.as_terms())?;
    canonical_fraction(&f)
}

pub fn phi_inverse(k: &KnotClass) -> VectorClass {
    let cf = even_expansion(k.fraction()).expect("canonical fractions expand");
    let v = expand(&cf.terms).expect("even expansion terms are even");
    canonical_vector(&v)
}

/// Σ|a_i| minus the sign changes along the nonzero entries.
pub fn crossing_number(v: &SEvenVector) -> u64 {
    v.abs_sum() - v.sign_changes()
}

/// `(2, -2, 2, ..., -2)` of length `q - 1`, the vector of `T(2, q)`.
pub fn torus_vector(q: u64) -> Result<SEvenVector> {
    if q < 3 || q.is_multiple_of(2) {
        return Err(Error::InvalidFraction(format!(
            "torus knot T(2,{q}) needs an odd q >= 3"
        )));
    }
    let entries = (0..q - 1)
        .map(|i| if i % 2 == 0 { 2 } else { -2 })
        .collect();
    Ok(SEvenVector::from_trusted(entries))
}
