//! Cutting a vector that parses in several ways at positions common to all
//! of its parsings, negating pieces between those cuts, and the three-tile
//! lift `(c, m, ±c⁻¹, 0, ±c)`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parsing::{find_parsings, Parsing};
use crate::rationals::KnotClass;
use crate::vectors::{connector_vector, crossing_number, phi, phi_inverse, SEvenVector};

/// Cut positions shared by a set of parsings of one vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeamSet {
    pub vector: SEvenVector,
    pub parsings: Vec<Parsing>,
    /// Cut after entry `t` (1-based), `1 <= t < ℓ`.
    pub cuts: Vec<usize>,
}

impl SeamSet {
    /// Number of pieces the cuts produce.
    pub fn segment_count(&self) -> usize {
        self.cuts.len() + 1
    }

    /// Entry range of piece `k` (1-based).
    pub fn segment(&self, k: usize) -> Option<std::ops::Range<usize>> {
        if k == 0 || k > self.segment_count() {
            return None;
        }
        let start = if k == 1 { 0 } else { self.cuts[k - 2] };
        let end = self.cuts.get(k - 1).copied().unwrap_or(self.vector.len());
        Some(start..end)
    }
}

fn boundaries(p: &Parsing) -> BTreeSet<usize> {
    let lengths = p.block_lengths();
    let mut at = 0;
    let mut out = BTreeSet::new();
    for l in &lengths[..lengths.len() - 1] {
        at += l;
        out.insert(at);
    }
    out
}

pub fn find_seams(v: &SEvenVector, parsings: &[Parsing]) -> Result<SeamSet> {
    let Some(first) = parsings.first() else {
        return Err(Error::InvalidParsing("no parsings given".into()));
    };
    for p in parsings {
        if p.reassemble() != v.entries() {
            return Err(Error::InvalidParsing(format!(
                "parsing with base {} does not reassemble to {v}",
                p.base()
            )));
        }
    }
    let mut cuts = boundaries(first);
    for p in &parsings[1..] {
        let other = boundaries(p);
        cuts.retain(|c| other.contains(c));
    }
    Ok(SeamSet {
        vector: v.clone(),
        parsings: parsings.to_vec(),
        cuts: cuts.into_iter().collect(),
    })
}

/// All parsings of `v` of fold at least 3 with respect to any vector
/// representing one of `classes`.
pub fn parsings_wrt(v: &SEvenVector, classes: &[KnotClass]) -> Vec<Parsing> {
    let mut out: Vec<Parsing> = Vec::new();
    for k in classes {
        for b in phi_inverse(k).members() {
            for p in find_parsings(v, &b) {
                if p.fold() >= 3 && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Negates the chosen pieces (numbered from 1) and checks the result is
/// still an expanded even vector parsing with respect to every base.
pub fn negate_segments(s: &SeamSet, segments: &BTreeSet<usize>) -> Result<SEvenVector> {
    let mut entries = s.vector.entries().to_vec();
    for &k in segments {
        let range = s.segment(k).ok_or_else(|| {
            Error::NegationRejected(format!(
                "segment {k} out of range 1..={}",
                s.segment_count()
            ))
        })?;
        for x in &mut entries[range] {
            *x = -*x;
        }
    }
    let d = SEvenVector::new(entries).map_err(|e| Error::NegationRejected(e.to_string()))?;
    let neg = d.negated();
    for p in &s.parsings {
        let keeps = |w: &SEvenVector| {
            find_parsings(w, p.base())
                .iter()
                .any(|q| q.fold() == p.fold())
        };
        if !keeps(&d) && !keeps(&neg) {
            return Err(Error::NegationRejected(format!(
                "result no longer parses {}-fold with respect to {}",
                p.fold(),
                p.base()
            )));
        }
    }
    Ok(d)
}

/// One accepted negation pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Negation {
    pub segments: Vec<usize>,
    pub vector: SEvenVector,
    pub knot: KnotClass,
    pub crossing_number: u64,
}

/// Every nonempty negation pattern that is accepted, sorted by resulting knot.
pub fn all_negations(s: &SeamSet) -> Vec<Negation> {
    let pieces = s.segment_count();
    if pieces > 20 {
        return Vec::new();
    }
    let mut out: Vec<Negation> = (1u32..1 << pieces)
        .into_par_iter()
        .filter_map(|mask| {
            let segments: BTreeSet<usize> = (0..pieces)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| i + 1)
                .collect();
            let vector = negate_segments(s, &segments).ok()?;
            Some(Negation {
                segments: segments.into_iter().collect(),
                knot: phi(&vector).ok()?,
                crossing_number: crossing_number(&vector),
                vector,
            })
        })
        .collect();
    out.sort_by(|a, b| {
        a.knot
            .cmp(&b.knot)
            .then_with(|| a.segments.cmp(&b.segments))
    });
    out
}

/// A vector with crossing number exactly `target >= 3·cr(c)` that parses
/// with respect to everything `c` parses with respect to, and to `c` itself.
pub fn lift_construction(c: &SEvenVector, target: u64) -> Result<SEvenVector> {
    if c.is_empty() {
        return Err(Error::Unknot);
    }
    let n = crossing_number(c);
    if target < 3 * n {
        return Err(Error::LiftTarget {
            target,
            crossings: n,
        });
    }
    let extra = (target - 3 * n) as i64;
    let last = *c.entries().last().expect("nonempty") as i64;
    let rev = c.reversed();
    let mut d = c.entries().to_vec();
    if extra % 2 == 0 {
        let m = if last > 0 { extra } else { -extra };
        d.extend(connector_vector(m));
        d.extend_from_slice(rev.entries());
        d.push(0);
        d.extend_from_slice(c.entries());
    } else {
        d.extend(connector_vector(extra + 1));
        d.extend(rev.negated().entries());
        d.push(0);
        d.extend(c.negated().entries());
    }
    SEvenVector::new(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parsing::{admits_parsing, smaller_knots};
    use crate::rationals::{canonical_fraction, Fraction};
    use crate::vectors::torus_vector;

    fn v(entries: &[i8]) -> SEvenVector {
        SEvenVector::new(entries.to_vec()).unwrap()
    }

    fn knot(p: i64, q: i64) -> KnotClass {
        canonical_fraction(&Fraction::new(p, q).unwrap()).unwrap()
    }

    fn torus_seams() -> SeamSet {
        let c = torus_vector(27).unwrap();
        let ps = parsings_wrt(&c, &[knot(1, 3), knot(1, 9)]);
        assert_eq!(ps.len(), 2);
        find_seams(&c, &ps).unwrap()
    }

    #[test]
    fn torus_27_seams() {
        let s = torus_seams();
        assert_eq!(s.cuts, vec![8, 9, 17, 18]);
        assert_eq!(s.segment(1), Some(0..8));
        assert_eq!(s.segment(5), Some(18..26));
        assert_eq!(s.segment(6), None);
    }

    #[test]
    fn single_parsing_seams() {
        let a = v(&[2, 2, 0, 2, 2, 0, 2, 2]);
        let ps = find_parsings(&a, &v(&[2, 2]));
        assert_eq!(find_seams(&a, &ps).unwrap().cuts, vec![2, 3, 5, 6]);
        let own = find_parsings(&a, &a);
        assert!(find_seams(&a, &own).unwrap().cuts.is_empty());
    }

    #[test]
    fn mismatched_parsing_is_rejected() {
        let a = v(&[2, 2, 0, 2, 2, 0, 2, 2]);
        let ps = find_parsings(&a, &v(&[2, 2]));
        assert!(find_seams(&v(&[2, 2, 2, 2, 2, 2, 2, 2]), &ps).is_err());
        assert!(find_seams(&a, &[]).is_err());
    }

    #[test]
    fn negation_examples() {
        let s = torus_seams();
        let cases: [(&[usize], (i64, i64), u64); 4] = [
            (&[5], (17, 315), 28),
            (&[4], (35, 621), 29),
            (&[3, 5], (577, 5499), 30),
            (&[2, 4], (1189, 10395), 31),
        ];
        for (segments, (p, q), n) in cases {
            let d = negate_segments(&s, &segments.iter().copied().collect()).unwrap();
            assert_eq!(phi(&d).unwrap(), knot(p, q));
            assert_eq!(crossing_number(&d), n);
            assert_eq!(d.abs_sum(), 52);
            assert_eq!(
                smaller_knots(&d).unwrap(),
                [knot(1, 3), knot(1, 9)].into_iter().collect()
            );
        }
        // after negating the last piece there are 24 sign changes, 52 - 24 = 28
        let d = negate_segments(&s, &[5].into_iter().collect()).unwrap();
        assert_eq!(d.sign_changes(), 24);
    }

    #[test]
    fn negation_errors() {
        let s = torus_seams();
        assert!(negate_segments(&s, &[0].into_iter().collect()).is_err());
        assert!(negate_segments(&s, &[6].into_iter().collect()).is_err());

        // negating one tile next to a zero connector breaks the zero rule
        let a = v(&[2, 2, 0, 2, 2, 0, 2, 2]);
        let single = find_seams(&a, &find_parsings(&a, &v(&[2, 2]))).unwrap();
        let err = negate_segments(&single, &[1].into_iter().collect()).unwrap_err();
        assert!(matches!(err, Error::NegationRejected(_)));
    }

    #[test]
    fn negation_batch_is_sorted_and_conserves_sum() {
        let s = torus_seams();
        let all = all_negations(&s);
        assert!(all.windows(2).all(|w| w[0].knot <= w[1].knot));
        for n in &all {
            assert_eq!(n.vector.abs_sum(), 52);
            let change = 25i64 - n.vector.sign_changes() as i64;
            assert_eq!(n.crossing_number as i64, 27 + change);
        }
        assert!(all.iter().any(|n| n.knot == knot(17, 315)));
    }

    #[test]
    fn lift_examples() {
        let c = v(&[2, -2]);
        let d = lift_construction(&c, 9).unwrap();
        assert_eq!(d, v(&[2, -2, 0, -2, 2, 0, 2, -2]));
        assert_eq!((d.abs_sum(), d.sign_changes()), (12, 3));
        assert_eq!(crossing_number(&d), 9);

        let d = lift_construction(&c, 10).unwrap();
        assert_eq!(d, v(&[2, -2, 2, 2, -2, 0, -2, 2]));
        assert_eq!((d.abs_sum(), d.sign_changes()), (14, 4));

        let c = v(&[2, 2]);
        let d = lift_construction(&c, 12).unwrap();
        assert_eq!(d, v(&[2, 2, 0, 2, 2, 0, 2, 2]));
        assert_eq!(crossing_number(&d), 12);

        assert_eq!(
            lift_construction(&c, 11),
            Err(Error::LiftTarget {
                target: 11,
                crossings: 4
            })
        );
    }

    #[test]
    fn lift_keeps_parsings() {
        let c = torus_vector(9).unwrap();
        for target in 27..=33 {
            let d = lift_construction(&c, target).unwrap();
            assert_eq!(crossing_number(&d), target);
            let below = smaller_knots(&d).unwrap();
            assert!(below.contains(&knot(1, 9)) && below.contains(&knot(1, 3)));
            assert!(admits_parsing(&d, &c, 3) || admits_parsing(&d.negated(), &c, 3));
        }
    }
}
