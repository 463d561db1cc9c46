//! Parsings `a = (b, c_1, ε_2 b⁻¹, c_2, ε_3 b, ..., ε_n b)` of one expanded
//! even vector with respect to another, and the order they induce on knots.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rationals::KnotClass;
use crate::vectors::{connector_vector, phi, SEvenVector, VectorClass};

/// A parsing of some vector into `b`-tiles and even connectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ParsingRepr", into = "ParsingRepr")]
pub struct Parsing {
    base: SEvenVector,
    signs: Vec<i8>,
    connectors: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct ParsingRepr {
    base: SEvenVector,
    fold: usize,
    signs: Vec<i8>,
    connectors: Vec<i64>,
}

impl From<Parsing> for ParsingRepr {
    fn from(p: Parsing) -> Self {
        ParsingRepr {
            fold: p.fold(),
            base: p.base,
            signs: p.signs,
            connectors: p.connectors,
        }
    }
}

impl TryFrom<ParsingRepr> for Parsing {
    type Error = Error;

    fn try_from(r: ParsingRepr) -> Result<Self> {
        if r.fold != r.signs.len() {
            return Err(Error::InvalidParsing(format!(
                "fold {} but {} signs",
                r.fold,
                r.signs.len()
            )));
        }
        Parsing::new(r.base, r.signs, r.connectors)
    }
}

impl Parsing {
    pub fn new(base: SEvenVector, signs: Vec<i8>, connectors: Vec<i64>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParsing(msg));
        if base.is_empty() {
            return bad("empty base".into());
        }
        if signs.len().is_multiple_of(2) {
            return bad(format!("fold {} is not odd", signs.len()));
        }
        if connectors.len() + 1 != signs.len() {
            return bad("need exactly fold - 1 connectors".into());
        }
        if signs.first() != Some(&1) || signs.iter().any(|s| s.abs() != 1) {
            return bad("signs must be ±1 with the first equal to +1".into());
        }
        for (i, &c) in connectors.iter().enumerate() {
            if c % 2 != 0 {
                return bad(format!("connector {c} is odd"));
            }
            if c == 0 && signs[i] != signs[i + 1] {
                return bad(format!(
                    "zero connector {} between tiles of opposite sign",
                    i + 1
                ));
            }
        }
        Ok(Self {
            base,
            signs,
            connectors,
        })
    }

    pub fn base(&self) -> &SEvenVector {
        &self.base
    }

    pub fn fold(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn connectors(&self) -> &[i64] {
        &self.connectors
    }

    /// Tile `i` (0-based): `ε b` for even `i`, `ε b⁻¹` for odd `i`.
    pub fn tile(&self, i: usize) -> Vec<i8> {
        let s = self.signs[i];
        let b = self.base.entries();
        if i.is_multiple_of(2) {
            b.iter().map(|x| s * x).collect()
        } else {
            b.iter().rev().map(|x| s * x).collect()
        }
    }

    /// Lengths of tile, connector, tile, ..., tile in order.
    pub fn block_lengths(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * self.fold() - 1);
        for c in &self.connectors {
            out.push(self.base.len());
            out.push(connector_vector(*c).len());
        }
        out.push(self.base.len());
        out
    }

    pub fn reassemble(&self) -> Vec<i8> {
        let mut out = self.tile(0);
        for (i, &c) in self.connectors.iter().enumerate() {
            out.extend(connector_vector(c));
            out.extend(self.tile(i + 1));
        }
        out
    }
}

/// Connector choices starting at `pos`: `(value, end)` for `(0)` or each
/// `±(2, 0, ..., 2)` run that fits.
fn connector_choices(a: &[i8], pos: usize) -> Vec<(i64, usize)> {
    let mut out = Vec::new();
    let Some(&first) = a.get(pos) else {
        return out;
    };
    if first == 0 {
        out.push((0, pos + 1));
        return out;
    }
    let mut end = pos;
    let mut value = first as i64;
    loop {
        out.push((value, end + 1));
        if end + 2 < a.len() && a[end + 1] == 0 && a[end + 2] == first {
            end += 2;
            value += first as i64;
        } else {
            break;
        }
    }
    out
}

fn tile_matches(a: &[i8], pos: usize, tile: &[i8], sign: i8) -> bool {
    pos + tile.len() <= a.len()
        && a[pos..pos + tile.len()]
            .iter()
            .zip(tile)
            .all(|(x, t)| *x == sign * t)
}

struct Search<'a> {
    a: &'a [i8],
    forward: &'a [i8],
    backward: Vec<i8>,
}

impl<'a> Search<'a> {
    fn new(a: &'a [i8], b: &'a [i8]) -> Self {
        Search {
            a,
            forward: b,
            backward: b.iter().rev().copied().collect(),
        }
    }

    fn tile(&self, index: usize) -> &[i8] {
        if index.is_multiple_of(2) {
            self.forward
        } else {
            &self.backward
        }
    }

    fn sign_options(index: usize, required: i8) -> &'static [i8] {
        match (index, required) {
            (0, _) | (_, 1) => &[1],
            (_, -1) => &[-1],
            _ => &[1, -1],
        }
    }
}

/// Every parsing of `a` with respect to `b`, any fold (including the
/// trivial 1-fold parsing when `a = b`), in depth-first order.
pub fn find_parsings(a: &SEvenVector, b: &SEvenVector) -> Vec<Parsing> {
    if b.is_empty() || a.is_empty() {
        return Vec::new();
    }
    struct Enumerate<'a> {
        search: Search<'a>,
        dead: HashSet<(usize, bool, i8)>,
        signs: Vec<i8>,
        connectors: Vec<i64>,
        found: Vec<(Vec<i8>, Vec<i64>)>,
    }

    impl Enumerate<'_> {
        fn visit(&mut self, pos: usize, index: usize, required: i8) -> bool {
            let key = (pos, index % 2 == 1, required);
            if index > 0 && self.dead.contains(&key) {
                return false;
            }
            let a = self.search.a;
            let len = self.search.forward.len();
            let mut any = false;
            for &sign in Search::sign_options(index, required) {
                if !tile_matches(a, pos, self.search.tile(index), sign) {
                    continue;
                }
                let end = pos + len;
                self.signs.push(sign);
                if end == a.len() {
                    if index.is_multiple_of(2) {
                        self.found
                            .push((self.signs.clone(), self.connectors.clone()));
                        any = true;
                    }
                } else {
                    for (c, next) in connector_choices(a, end) {
                        self.connectors.push(c);
                        let req = if c == 0 { sign } else { 0 };
                        any |= self.visit(next, index + 1, req);
                        self.connectors.pop();
                    }
                }
                self.signs.pop();
            }
            if !any {
                self.dead.insert(key);
            }
            any
        }
    }

    let mut e = Enumerate {
        search: Search::new(a.entries(), b.entries()),
        dead: HashSet::new(),
        signs: Vec::new(),
        connectors: Vec::new(),
        found: Vec::new(),
    };
    e.visit(0, 0, 0);
    e.found
        .into_iter()
        .map(|(signs, connectors)| Parsing {
            base: b.clone(),
            signs,
            connectors,
        })
        .collect()
}

/// Whether `a` has a parsing with respect to `b` with at least `min_fold` tiles.
pub fn admits_parsing(a: &SEvenVector, b: &SEvenVector, min_fold: usize) -> bool {
    if b.is_empty() || a.is_empty() {
        return false;
    }
    let min_fold = min_fold.max(1);
    // length lemma: d tiles need d·ℓ(b) + d - 1 entries
    if a.len() < min_fold * b.len() + min_fold - 1 {
        return false;
    }
    let search = Search::new(a.entries(), b.entries());
    let mut memo: HashMap<(usize, usize, i8), bool> = HashMap::new();

    fn go(
        s: &Search<'_>,
        memo: &mut HashMap<(usize, usize, i8), bool>,
        min_fold: usize,
        pos: usize,
        index: usize,
        required: i8,
    ) -> bool {
        // tile orientation and the saturated tile count determine the future
        let key = (pos, 2 * (index + 1).min(min_fold) + index % 2, required);
        if index > 0 {
            if let Some(&hit) = memo.get(&key) {
                return hit;
            }
        }
        let a = s.a;
        let len = s.forward.len();
        let mut ok = false;
        'signs: for &sign in Search::sign_options(index, required) {
            if !tile_matches(a, pos, s.tile(index), sign) {
                continue;
            }
            let end = pos + len;
            if end == a.len() {
                if index.is_multiple_of(2) && index + 1 >= min_fold {
                    ok = true;
                    break;
                }
                continue;
            }
            for (c, next) in connector_choices(a, end) {
                let req = if c == 0 { sign } else { 0 };
                if go(s, memo, min_fold, next, index + 1, req) {
                    ok = true;
                    break 'signs;
                }
            }
        }
        if index > 0 {
            memo.insert(key, ok);
        }
        ok
    }

    go(&search, &mut memo, min_fold, 0, 0, 0)
}

/// `J > K`: some representative of `J` parses with at least three tiles
/// with respect to some representative of `K`.
pub fn is_strictly_greater(j: &VectorClass, k: &VectorClass) -> bool {
    let bigger = j.members();
    let smaller = k.members();
    bigger
        .iter()
        .any(|a| smaller.iter().any(|b| admits_parsing(a, b, 3)))
}

/// `g^{count}_{m,n}`: `count` copies of `g` alternating with `g⁻¹`,
/// separated by connectors alternating `m`, `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TwoConnectorForm {
    pub generator: SEvenVector,
    pub m: i64,
    pub n: i64,
    pub count: u64,
}

impl TwoConnectorForm {
    /// The vector `g^{count}_{m,n}`; empty for the empty generator with count 1.
    pub fn assemble(&self) -> SEvenVector {
        self.with_count(self.count)
    }

    pub fn with_count(&self, count: u64) -> SEvenVector {
        SEvenVector::from_trusted(assemble(self.generator.entries(), self.m, self.n, count))
    }
}

fn assemble(g: &[i8], m: i64, n: i64, count: u64) -> Vec<i8> {
    let rev: Vec<i8> = g.iter().rev().copied().collect();
    let mut out = g.to_vec();
    for i in 1..count {
        let (c, tile) = if i % 2 == 1 { (m, &rev[..]) } else { (n, g) };
        out.extend(connector_vector(c));
        out.extend_from_slice(tile);
    }
    out
}

/// Writes `v` as `g^{2P+1}_{m,n}` with `2P+1 >= 3` and `g` as short as
/// possible (the empty generator first), if such a form exists.
pub fn two_connector_decompose(v: &SEvenVector) -> Option<TwoConnectorForm> {
    let a = v.entries();
    let total = a.len();
    if total == 0 {
        return None;
    }
    let mut len = 0;
    // three tiles and two connectors must fit
    while 3 * len + 2 <= total {
        let g = &a[..len];
        if SEvenVector::new(g.to_vec()).is_ok() {
            if let Some(form) = decompose_with_generator(a, g) {
                return Some(form);
            }
        }
        len += 2;
    }
    None
}

fn decompose_with_generator(a: &[i8], g: &[i8]) -> Option<TwoConnectorForm> {
    let len = g.len();
    let rev: Vec<i8> = g.iter().rev().copied().collect();
    for (m, after_m) in connector_choices(a, len) {
        if !tile_matches(a, after_m, &rev, 1) {
            continue;
        }
        for (n, _) in connector_choices(a, after_m + len) {
            if len == 0 && (m == 0 || n == 0) {
                continue;
            }
            let period = 2 * len + connector_vector(m).len() + connector_vector(n).len();
            let rest = a.len() - len;
            if !rest.is_multiple_of(period) {
                continue;
            }
            let count = 2 * (rest / period) as u64 + 1;
            if assemble(g, m, n, count) == a {
                return Some(TwoConnectorForm {
                    generator: SEvenVector::from_trusted(g.to_vec()),
                    m,
                    n,
                    count,
                });
            }
        }
    }
    None
}

/// Knots strictly below `Φ(v̂)`, found by checking every prefix of `v` as a
/// possible first tile. A parsing always starts with `+b`, so this is exhaustive.
pub fn smaller_knots_by_prefix(v: &SEvenVector) -> Result<BTreeSet<KnotClass>> {
    if v.is_empty() {
        return Err(Error::Unknot);
    }
    let a = v.entries();
    let mut out = BTreeSet::new();
    let mut len = 2;
    while 3 * len + 2 <= a.len() {
        if a[len - 1] != 0 {
            let b = SEvenVector::from_trusted(a[..len].to_vec());
            if admits_parsing(v, &b, 3) {
                out.insert(phi(&b)?);
            }
        }
        len += 2;
    }
    Ok(out)
}

/// The nontrivial knots strictly smaller than `Φ(v̂)`.
///
/// When `v = g^{2P+1}_{m,n}` is generated by `g`, the knots below it are the
/// `Φ(g^{d}_{m,n})` for proper divisors `d` of `2P+1` together with the knots
/// below `g`. Vectors without such a form are searched directly.
pub fn smaller_knots(v: &SEvenVector) -> Result<BTreeSet<KnotClass>> {
    if v.is_empty() {
        return Err(Error::Unknot);
    }
    let Some(form) = two_connector_decompose(v) else {
        return smaller_knots_by_prefix(v);
    };
    let mut out = BTreeSet::new();
    for d in (1..form.count).step_by(2) {
        if form.count % d != 0 {
            continue;
        }
        let w = form.with_count(d);
        if !w.is_empty() {
            out.insert(phi(&w)?);
        }
    }
    if !form.generator.is_empty() {
        out.extend(smaller_knots(&form.generator)?);
    }
    Ok(out)
}

/// The shortest vector above every input, `g^{lcm}_{r,s}` for the common
/// family `g^{2p_i+1}_{r,s}` of pairwise incomparable inputs.
pub fn minimal_upper_bound(vs: &[SEvenVector]) -> Result<SEvenVector> {
    match vs {
        [] => return Err(Error::NoCommonFamily("no inputs".into())),
        [v] => return Ok(v.clone()),
        _ => {}
    }
    for (i, x) in vs.iter().enumerate() {
        for y in &vs[i + 1..] {
            let (cx, cy) = (
                crate::vectors::canonical_vector(x),
                crate::vectors::canonical_vector(y),
            );
            if cx == cy || is_strictly_greater(&cx, &cy) || is_strictly_greater(&cy, &cx) {
                return Err(Error::NoCommonFamily(format!(
                    "inputs {x} and {y} are comparable"
                )));
            }
        }
    }
    let forms: Vec<Vec<TwoConnectorForm>> = vs
        .iter()
        .map(|v| {
            let mut members: Vec<SEvenVector> = Vec::new();
            for m in v.orbit() {
                if !members.contains(&m) {
                    members.push(m);
                }
            }
            members.iter().filter_map(two_connector_decompose).collect()
        })
        .collect();
    for reference in &forms[0] {
        let mut lcm = reference.count;
        let mut all = true;
        for other in &forms[1..] {
            match other.iter().find(|f| {
                f.generator == reference.generator && f.m == reference.m && f.n == reference.n
            }) {
                Some(f) => lcm = lcm.lcm(&f.count),
                None => {
                    all = false;
                    break;
                }
            }
        }
        if all {
            return Ok(TwoConnectorForm {
                count: lcm,
                ..reference.clone()
            }
            .assemble());
        }
    }
    Err(Error::NoCommonFamily(
        "inputs are not two-connector vectors over one generator".into(),
    ))
}
