//! Reduced fractions with odd denominator, continued fractions in the
//! `[a_1, ..., a_k] = 1/(a_1 + 1/(a_2 + ...))` convention, the all-even
//! expansion and the equivalence classes of 2-bridge knots.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction `p/q` with `q` positive and odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    p: BigInt,
    q: BigInt,
}

impl Fraction {
    /// Builds `p/q`, reducing it and moving the sign to the numerator.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (mut p, mut q) = (p.into(), q.into());
        if q.is_zero() {
            return Err(Error::InvalidFraction("zero denominator".into()));
        }
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        let g = p.gcd(&q);
        if !g.is_one() {
            p /= &g;
            q /= &g;
        }
        if q.is_even() {
            return Err(Error::InvalidFraction(format!(
                "{p}/{q} has an even denominator (2-bridge link, not a knot)"
            )));
        }
        Ok(Self { p, q })
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self {
            p: n.into(),
            q: BigInt::one(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.p
    }

    pub fn denom(&self) -> &BigInt {
        &self.q
    }

    /// `-q < p < q`, the range used to name knots.
    pub fn is_normalized(&self) -> bool {
        self.p.abs() < self.q
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    /// Parses `p/q` (optional leading minus). The input must already be reduced.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFraction(format!("cannot parse {s:?} as p/q"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if !q.is_positive() {
            return Err(Error::InvalidFraction(format!(
                "denominator of {s:?} must be positive"
            )));
        }
        if !p.gcd(&q).is_one() {
            return Err(Error::InvalidFraction(format!("{s:?} is not reduced")));
        }
        Fraction::new(p, q)
    }
}

/// `r + [a_1, ..., a_k]` with every `a_i` even and nonzero and `k` even.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvenCf {
    pub integer: BigInt,
    pub terms: Vec<i64>,
}

impl EvenCf {
    pub fn new(integer: impl Into<BigInt>, terms: Vec<i64>) -> Result<Self> {
        if !terms.len().is_multiple_of(2) {
            return Err(Error::InvalidContinuedFraction(format!(
                "odd number of terms ({})",
                terms.len()
            )));
        }
        if let Some(t) = terms.iter().find(|t| **t == 0 || *t % 2 != 0) {
            return Err(Error::InvalidContinuedFraction(format!(
                "term {t} is not a nonzero even integer"
            )));
        }
        Ok(Self {
            integer: integer.into(),
            terms,
        })
    }

    pub fn value(&self) -> Fraction {
        eval_cf(&self.integer, &self.terms).expect("even terms never divide by zero")
    }
}

impl fmt::Display for EvenCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+[", self.integer)?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for EvenCf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidContinuedFraction(format!("cannot parse {s:?} as r+[a1,...]"));
        let s = s.trim();
        // search from index 1 so a leading sign on r is not taken as the separator
        let split = s.get(1..).and_then(|t| t.find("+[")).ok_or_else(bad)? + 1;
        let integer: BigInt = s[..split].trim().parse().map_err(|_| bad())?;
        let body = s[split + 1..]
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let terms = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        EvenCf::new(integer, terms)
    }
}

/// Evaluates `integer + [terms]`. Terms may be any integers; zeros are
/// allowed as long as no intermediate tail becomes `1/0`.
pub fn eval_cf(integer: &BigInt, terms: &[i64]) -> Result<Fraction> {
    // tail = num/den, built from the right
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (i, &a) in terms.iter().enumerate().rev() {
        let next = &den * a + &num;
        if next.is_zero() {
            return Err(Error::DivisionByZero { position: i + 1 });
        }
        num = std::mem::replace(&mut den, next);
    }
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    let p = integer * &den + num;
    Fraction::new(p, den)
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// The unique expansion `p/q = r + [a_1, ..., a_k]` with all `a_i` even
/// and nonzero, `k` even and `r ≡ p (mod 2)`.
pub fn even_expansion(f: &Fraction) -> Result<EvenCf> {
    let (p, q) = (f.numer(), f.denom());
    if q.is_one() {
        return Ok(EvenCf {
            integer: p.clone(),
            terms: Vec::new(),
        });
    }
    // p/q is not an integer, so exactly one of floor, floor+1 matches p's parity
    let fl = floor_div(p, q);
    let integer = if (&fl - p).is_even() { fl } else { fl + 1 };

    // remainder x = num/den with den > 0
    let mut num = p - &integer * q;
    let mut den = q.clone();
    let mut terms = Vec::new();
    while !num.is_zero() {
        // y = 1/x = den/num
        let (mut yn, mut yd) = (den, num);
        if yd.is_negative() {
            yn = -yn;
            yd = -yd;
        }
        let fl = floor_div(&yn, &yd);
        let a = if fl.is_even() { fl } else { fl + 1 };
        num = &yn - &a * &yd;
        den = yd;
        terms.push(a.to_i64().ok_or(Error::Overflow)?);
    }
    Ok(EvenCf { integer, terms })
}

/// Inverse of `x` modulo `q`, assuming `gcd(x, q) = 1`.
fn mod_inverse(x: &BigInt, q: &BigInt) -> BigInt {
    let e = x.mod_floor(q).extended_gcd(q);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(q)
}

/// A 2-bridge knot up to isotopy and mirror image, named by the
/// representative `p/q` with the smallest `p` in `(0, q)` among
/// `±p^{±1} mod q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnotClass {
    canonical: Fraction,
}

impl KnotClass {
    pub fn fraction(&self) -> &Fraction {
        &self.canonical
    }

    pub fn p(&self) -> &BigInt {
        self.canonical.numer()
    }

    pub fn q(&self) -> &BigInt {
        self.canonical.denom()
    }

    /// The torus knot `T(2, q)`.
    pub fn is_torus(&self) -> bool {
        self.p().is_one()
    }
}

impl Ord for KnotClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q()
            .cmp(other.q())
            .then_with(|| self.p().cmp(other.p()))
    }
}

impl PartialOrd for KnotClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

impl FromStr for KnotClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        canonical_fraction(&s.parse()?)
    }
}

/// Canonical representative of the knot `K_{p/q}`.
pub fn canonical_fraction(f: &Fraction) -> Result<KnotClass> {
    let q = f.denom();
    if *q < BigInt::from(3) {
        return Err(Error::InvalidFraction(format!(
            "{f} does not name a nontrivial knot (q must be at least 3)"
        )));
    }
    let p = f.numer().mod_floor(q);
    let inv = mod_inverse(&p, q);
    let orbit = [q - &p, q - &inv, p, inv];
    let min = orbit.into_iter().min().expect("orbit is nonempty");
    Ok(KnotClass {
        canonical: Fraction {
            p: min,
            q: q.clone(),
        },
    })
}

/// JSON representation of big integers: a number when it fits in 64 bits,
/// a decimal string otherwise.
pub(crate) mod bigint_json {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        if let Some(v) = n.to_i64() {
            s.serialize_i64(v)
        } else if let Some(v) = n.to_u64() {
            s.serialize_u64(v)
        } else {
            s.serialize_str(&n.to_string())
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Signed(i64),
            Unsigned(u64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Signed(v) => Ok(v.into()),
            Repr::Unsigned(v) => Ok(v.into()),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FractionRepr {
    #[serde(with = "bigint_json")]
    p: BigInt,
    #[serde(with = "bigint_json")]
    q: BigInt,
}

impl Serialize for KnotClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FractionRepr {
            p: self.p().clone(),
            q: self.q().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KnotClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = FractionRepr::deserialize(d)?;
        let f = Fraction::new(r.p, r.q).map_err(serde::de::Error::custom)?;
        canonical_fraction(&f).map_err(serde::de::Error::custom)
    }
}
