//! The reachable set of phase-coefficient vectors for `k` nonadaptive
//! queries.
//!
//! A query tuple pairs `k` evaluation points in `F_q^n` with `k` multipliers.
//! Its phase vector has one `F_q` coordinate per monomial: the multiplier-
//! weighted sum of the monomial feature vectors of the points.  The set of
//! phase vectors reachable by some tuple determines everything about the
//! measurement: the success probability is exactly `size / q^J`.
//!
//! Sets are stored as sorted arrays of base-`q` integer keys.  A vector of
//! `J` field-element encodings `(z_0, ..., z_{J-1})`, indexed in monomial
//! order, has key `z_0 q^{J-1} + ... + z_{J-1}`: the digit for monomial 0 is
//! most significant, so ascending keys mean lexicographically ascending
//! digit strings.  Query tuples are keyed the same way over their
//! `k * (n + 1)` digits `(x_1, y_1, x_2, y_2, ...)`.  Each reachable vector
//! carries its canonical representative: the preimage tuple with the
//! smallest key.
//!
//! Two enumeration strategies produce identical sets and representatives:
//! direct iteration over all tuples, and the sumset construction that merges
//! the `(k-1)`-query set with the one-query set.  The sumset route is far
//! cheaper once `k * (n + 1)` is large, because its cost is the product of
//! two set sizes rather than `q^{k(n+1)}`.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::Error;
use crate::ffield::Field;
use crate::monomial::MonomialBasis;

/// Default cap on enumeration work, in scalar operations.
pub const DEFAULT_WORK_CAP: u128 = 10_000_000_000;

/// Dense first-wins tables are used up to this many keys.
const DENSE_CAP: u128 = 1 << 24;

/// Cap on the per-point feature table built for direct enumeration.
const FEATURE_TABLE_CAP: u128 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Iterate every query tuple.
    Exhaustive,
    /// Fold the one-query set into the set for one fewer query.
    Sumset,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Exhaustive => write!(f, "exhaustive"),
            Strategy::Sumset => write!(f, "sumset"),
        }
    }
}

/// `k` evaluation points with their multipliers, stored as consecutive
/// per-query blocks `(x_i, y_i)` of `n + 1` element encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryTuple {
    n: usize,
    blocks: Vec<u64>,
}

impl QueryTuple {
    pub fn new(points: &[Vec<u64>], multipliers: &[u64]) -> Result<Self, Error> {
        if points.len() != multipliers.len() {
            return Err(Error::DimensionMismatch { expected: points.len(), got: multipliers.len() });
        }
        let n = points.first().map(|p| p.len()).unwrap_or(0);
        let mut blocks = Vec::with_capacity(points.len() * (n + 1));
        for (point, &y) in points.iter().zip(multipliers) {
            if point.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: point.len() });
            }
            blocks.extend_from_slice(point);
            blocks.push(y);
        }
        Ok(QueryTuple { n, blocks })
    }

    pub fn k(&self) -> usize {
        if self.n + 1 == 0 { 0 } else { self.blocks.len() / (self.n + 1) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coordinates of the `i`-th evaluation point.
    pub fn point(&self, i: usize) -> &[u64] {
        let start = i * (self.n + 1);
        &self.blocks[start..start + self.n]
    }

    /// Multiplier attached to the `i`-th query.
    pub fn multiplier(&self, i: usize) -> u64 {
        self.blocks[i * (self.n + 1) + self.n]
    }

    /// Flat digit view in key order.
    pub fn digits(&self) -> &[u64] {
        &self.blocks
    }
}

/// The phase vector of one query tuple: for each monomial `j`, the sum over
/// queries of `y_i x_i^j`.
pub fn phase_vector(field: &Field, basis: &MonomialBasis, tuple: &QueryTuple) -> Vec<u64> {
    assert_eq!(tuple.n(), basis.n(), "tuple and basis disagree on the point dimension");
    let mut out = vec![0u64; basis.len()];
    for i in 0..tuple.k() {
        let feats = basis.feature_vector_fq(field, tuple.point(i));
        let y = tuple.multiplier(i);
        for (o, f) in out.iter_mut().zip(feats) {
            *o = field.add(*o, field.mul(y, f));
        }
    }
    out
}

/// Exact success ratio `size / q^J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuccessRatio {
    pub numerator: u128,
    pub denominator: u128,
}

impl SuccessRatio {
    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl fmt::Display for SuccessRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Companion metadata written next to a range dump.
#[derive(Serialize)]
pub struct RangeSidecar {
    pub p: u64,
    pub r: u32,
    pub modulus: Vec<u64>,
    pub n: usize,
    pub d: u32,
    pub k: usize,
    pub j: usize,
    pub size: usize,
    pub strategy: Strategy,
}

/// The sorted set of reachable phase vectors for `k` queries, with canonical
/// representatives.
#[derive(Clone, Debug)]
pub struct QueryRange {
    field: Field,
    n: usize,
    d: u32,
    k: usize,
    j: usize,
    strategy: Strategy,
    entries: Vec<u128>,
    reps: Vec<u128>,
}

impl QueryRange {
    /// The zero-query range: only the zero vector, represented by the empty
    /// tuple.
    pub fn trivial(field: &Field, basis: &MonomialBasis) -> Self {
        QueryRange {
            field: field.clone(),
            n: basis.n(),
            d: basis.d(),
            k: 0,
            j: basis.len(),
            strategy: Strategy::Exhaustive,
            entries: vec![0],
            reps: vec![0],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of monomials, the length of each phase vector.
    pub fn j(&self) -> usize {
        self.j
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry_key(&self, i: usize) -> u128 {
        self.entries[i]
    }

    pub fn rep_key(&self, i: usize) -> u128 {
        self.reps[i]
    }

    /// Digit vector of the `i`-th entry, in monomial order.
    pub fn entry_digits(&self, i: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.j];
        decode_key(self.entries[i], self.q(), &mut out);
        out
    }

    /// Canonical representative tuple of the `i`-th entry.
    pub fn rep_tuple(&self, i: usize) -> QueryTuple {
        let mut digits = vec![0u64; self.k * (self.n + 1)];
        decode_key(self.reps[i], self.q(), &mut digits);
        QueryTuple { n: self.n, blocks: digits }
    }

    /// Key of a digit vector under this range's radix.
    pub fn key_of(&self, digits: &[u64]) -> u128 {
        assert_eq!(digits.len(), self.j);
        encode_key(digits, self.q())
    }

    pub fn position_of_key(&self, key: u128) -> Option<usize> {
        self.entries.binary_search(&key).ok()
    }

    pub fn contains_digits(&self, digits: &[u64]) -> bool {
        self.position_of_key(self.key_of(digits)).is_some()
    }

    /// All entries decoded into one row-major table, `j` digits per entry.
    ///
    /// Digits are returned as `u16`, which always suffices below the work
    /// caps; fields too large for that are rejected.
    pub fn entry_digit_table(&self) -> Result<Vec<u16>, Error> {
        let q = self.q();
        if q > u16::MAX as u64 + 1 {
            return Err(Error::SizeCap {
                what: "field order for bulk decoding",
                size: q as u128,
                cap: u16::MAX as u128 + 1,
            });
        }
        let mut table = vec![0u16; self.entries.len() * self.j];
        let mut scratch = vec![0u64; self.j];
        for (i, &key) in self.entries.iter().enumerate() {
            decode_key(key, q, &mut scratch);
            let row = &mut table[i * self.j..(i + 1) * self.j];
            for (t, &s) in row.iter_mut().zip(&scratch) {
                *t = s as u16;
            }
        }
        Ok(table)
    }

    pub fn ratio(&self) -> SuccessRatio {
        let denominator = checked_pow(self.q(), self.j as u32)
            .expect("checked at construction");
        SuccessRatio { numerator: self.entries.len() as u128, denominator }
    }

    /// Writes the `z_enc,rep_enc` dump, one row per entry in key order.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "z_enc,rep_enc")?;
        for (z, rep) in self.entries.iter().zip(&self.reps) {
            writeln!(w, "{z},{rep}")?;
        }
        Ok(())
    }

    pub fn sidecar(&self) -> RangeSidecar {
        RangeSidecar {
            p: self.field.p(),
            r: self.field.r(),
            modulus: self.field.modulus().to_vec(),
            n: self.n,
            d: self.d,
            k: self.k,
            j: self.j,
            size: self.size(),
            strategy: self.strategy,
        }
    }
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}

fn decode_key(key: u128, q: u64, out: &mut [u64]) {
    // Repeated divmod yields digits least-significant first; the slice is
    // filled from the back so index 0 ends up most significant.
    if key <= u64::MAX as u128 {
        let mut rest = key as u64;
        for slot in out.iter_mut().rev() {
            *slot = rest % q;
            rest /= q;
        }
        debug_assert_eq!(rest, 0);
    } else {
        let mut rest = key;
        let q = q as u128;
        for slot in out.iter_mut().rev() {
            *slot = (rest % q) as u64;
            rest /= q;
        }
        debug_assert_eq!(rest, 0);
    }
}

fn encode_key(digits: &[u64], q: u64) -> u128 {
    digits.iter().fold(0u128, |acc, &d| acc * q as u128 + d as u128)
}

/// Enumerates the reachable set for `k` queries.
///
/// Work above `work_cap` scalar operations is refused: direct enumeration
/// costs `q^{k(n+1)}` and each sumset fold costs the product of the two set
/// sizes.
pub fn enumerate(
    field: &Field,
    basis: &MonomialBasis,
    k: usize,
    strategy: Strategy,
    work_cap: u128,
) -> Result<QueryRange, Error> {
    if k == 0 {
        return Ok(QueryRange::trivial(field, basis));
    }
    match strategy {
        Strategy::Exhaustive => exhaustive(field, basis, k, false, work_cap),
        Strategy::Sumset => {
            let base = exhaustive(field, basis, 1, false, work_cap)?;
            let mut acc = base.clone();
            for _ in 1..k {
                acc = sumset(&acc, &base, work_cap)?;
            }
            acc.strategy = Strategy::Sumset;
            Ok(acc)
        }
    }
}

/// Enumerates the restricted reachable set where every point coordinate is
/// nonzero.  Built by folding the restricted one-query set.
pub fn enumerate_nonzero(
    field: &Field,
    basis: &MonomialBasis,
    k: usize,
    work_cap: u128,
) -> Result<QueryRange, Error> {
    if k == 0 {
        return Ok(QueryRange::trivial(field, basis));
    }
    let base = exhaustive(field, basis, 1, true, work_cap)?;
    let mut acc = base.clone();
    for _ in 1..k {
        acc = sumset(&acc, &base, work_cap)?;
    }
    acc.strategy = Strategy::Sumset;
    Ok(acc)
}

/// Merges two ranges over the same field and basis into the range for
/// `prev.k() + base.k()` queries.
///
/// The representative of a sum is the smallest-key concatenation of the two
/// component representatives, which coincides with the smallest preimage
/// overall: any smaller preimage would split into smaller components.
pub fn sumset(prev: &QueryRange, base: &QueryRange, work_cap: u128) -> Result<QueryRange, Error> {
    assert_eq!(prev.field, base.field, "ranges come from different fields");
    assert!(
        prev.n == base.n && prev.d == base.d && prev.j == base.j,
        "ranges come from different bases"
    );
    let field = &prev.field;
    let q = field.q();
    let j = prev.j;
    let k = prev.k + base.k;

    let needed = prev.entries.len() as u128 * base.entries.len() as u128;
    if needed > work_cap {
        return Err(Error::WorkCapExceeded { needed, cap: work_cap });
    }
    if q > u32::MAX as u64 + 1 {
        return Err(Error::SizeCap {
            what: "field order for sumset folding",
            size: q as u128,
            cap: u32::MAX as u128 + 1,
        });
    }
    let key_span = checked_pow(q, j as u32).ok_or(Error::SizeCap {
        what: "phase-vector key space",
        size: u128::MAX,
        cap: u128::MAX,
    })?;
    let block_digits = (k * (prev.n + 1)) as u32;
    let rep_shift = checked_pow(q, (base.k * (base.n + 1)) as u32);
    if checked_pow(q, block_digits).is_none() || rep_shift.is_none() {
        return Err(Error::SizeCap {
            what: "tuple key space",
            size: u128::MAX,
            cap: u128::MAX,
        });
    }
    let rep_shift = rep_shift.expect("checked above");

    let prev_digits = digit_table_u32(&prev.entries, q, j);
    let base_digits = digit_table_u32(&base.entries, q, j);
    let prev_order = rep_sorted_order(&prev.reps);
    let base_order = rep_sorted_order(&base.reps);
    let r1 = field.r() == 1;

    // First winner wins: iterating representatives in ascending key order,
    // outer set major, makes the first preimage of each sum the smallest.
    let mut pairs: Vec<(u128, u128)>;
    if key_span <= DENSE_CAP && (key_span <= 1 << 16 || key_span <= needed.saturating_mul(8)) {
        let mut slots = vec![u64::MAX; key_span as usize];
        let mut scratch = vec![0u64; j];
        for &ai in &prev_order {
            let arow = &prev_digits[ai * j..(ai + 1) * j];
            for &bi in &base_order {
                let brow = &base_digits[bi * j..(bi + 1) * j];
                let key = child_key(field, q, r1, arow, brow, &mut scratch) as u64;
                let slot = &mut slots[key as usize];
                if *slot == u64::MAX {
                    *slot = (ai as u64) << 32 | bi as u64;
                }
            }
        }
        pairs = Vec::new();
        for (key, &packed) in slots.iter().enumerate() {
            if packed != u64::MAX {
                let (ai, bi) = ((packed >> 32) as usize, (packed & u32::MAX as u64) as usize);
                let rep = prev.reps[ai] * rep_shift + base.reps[bi];
                pairs.push((key as u128, rep));
            }
        }
    } else {
        let mut slots: HashMap<u128, (u32, u32)> = HashMap::with_capacity(prev.entries.len());
        let mut scratch = vec![0u64; j];
        for &ai in &prev_order {
            let arow = &prev_digits[ai * j..(ai + 1) * j];
            for &bi in &base_order {
                let brow = &base_digits[bi * j..(bi + 1) * j];
                let key = child_key(field, q, r1, arow, brow, &mut scratch);
                slots.entry(key).or_insert((ai as u32, bi as u32));
            }
        }
        pairs = slots
            .into_iter()
            .map(|(key, (ai, bi))| {
                let rep = prev.reps[ai as usize] * rep_shift + base.reps[bi as usize];
                (key, rep)
            })
            .collect();
        pairs.sort_unstable_by_key(|&(key, _)| key);
    }

    let (entries, reps) = pairs.into_iter().unzip();
    Ok(QueryRange {
        field: field.clone(),
        n: prev.n,
        d: prev.d,
        k,
        j,
        strategy: Strategy::Sumset,
        entries,
        reps,
    })
}

#[inline]
fn child_key(field: &Field, q: u64, r1: bool, a: &[u32], b: &[u32], scratch: &mut [u64]) -> u128 {
    for ((s, &da), &db) in scratch.iter_mut().zip(a).zip(b) {
        if r1 {
            let sum = da as u64 + db as u64;
            *s = if sum >= q { sum - q } else { sum };
        } else {
            *s = field.add(da as u64, db as u64);
        }
    }
    encode_key(scratch, q)
}

fn digit_table_u32(entries: &[u128], q: u64, j: usize) -> Vec<u32> {
    // Work caps keep q below 2^32 whenever enumeration succeeds.
    debug_assert!(q <= u32::MAX as u64 + 1);
    let mut table = vec![0u32; entries.len() * j];
    let mut scratch = vec![0u64; j];
    for (i, &key) in entries.iter().enumerate() {
        decode_key(key, q, &mut scratch);
        for (t, &s) in table[i * j..(i + 1) * j].iter_mut().zip(&scratch) {
            *t = s as u32;
        }
    }
    table
}

fn rep_sorted_order(reps: &[u128]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_unstable_by_key(|&i| reps[i]);
    order
}

/// Direct enumeration over all tuples, in ascending tuple-key order so the
/// first preimage of each phase vector is its canonical representative.
fn exhaustive(
    field: &Field,
    basis: &MonomialBasis,
    k: usize,
    nonzero: bool,
    work_cap: u128,
) -> Result<QueryRange, Error> {
    let q = field.q();
    let n = basis.n();
    let j = basis.len();

    let point_count: u128 = if nonzero {
        checked_pow(q - 1, n as u32)
    } else {
        checked_pow(q, n as u32)
    }
    .ok_or(Error::SizeCap { what: "point count", size: u128::MAX, cap: u128::MAX })?;
    let rows = point_count.checked_mul(q as u128).ok_or(Error::SizeCap {
        what: "one-query row count",
        size: u128::MAX,
        cap: u128::MAX,
    })?;
    let tuples = rows.checked_pow(k as u32).unwrap_or(u128::MAX);
    if tuples > work_cap {
        return Err(Error::WorkCapExceeded { needed: tuples, cap: work_cap });
    }
    if rows > 1 << 40 {
        return Err(Error::SizeCap { what: "one-query row count", size: rows, cap: 1 << 40 });
    }
    let table_entries = point_count.saturating_mul(j as u128);
    if table_entries > FEATURE_TABLE_CAP {
        return Err(Error::SizeCap {
            what: "feature table",
            size: table_entries,
            cap: FEATURE_TABLE_CAP,
        });
    }
    let key_span = checked_pow(q, j as u32).ok_or(Error::SizeCap {
        what: "phase-vector key space",
        size: u128::MAX,
        cap: u128::MAX,
    })?;
    if checked_pow(q, (k * (n + 1)) as u32).is_none() {
        return Err(Error::SizeCap { what: "tuple key space", size: u128::MAX, cap: u128::MAX });
    }

    // Points in ascending coordinate-key order, with their feature vectors.
    let point_count = point_count as usize;
    let mut features = Vec::with_capacity(point_count * j);
    let mut point_keys = Vec::with_capacity(point_count);
    let mut coords = vec![0u64; n];
    let span = if nonzero { q - 1 } else { q };
    'points: loop {
        let point: Vec<u64> = if nonzero {
            coords.iter().map(|&c| c + 1).collect()
        } else {
            coords.clone()
        };
        features.extend_from_slice(&basis.feature_vector_fq(field, &point));
        point_keys.push(point.iter().fold(0u64, |acc, &c| acc * q + c));
        let mut pos = n;
        loop {
            if pos == 0 {
                break 'points;
            }
            pos -= 1;
            coords[pos] += 1;
            if coords[pos] < span {
                break;
            }
            coords[pos] = 0;
        }
    }

    let rows = rows as u64;
    let rep_step = checked_pow(q, (n + 1) as u32).expect("tuple key space checked") as u128;

    let use_dense =
        key_span <= DENSE_CAP / 2 && (key_span <= 1 << 16 || key_span <= tuples.saturating_mul(8));
    let mut dense: Vec<u128> = if use_dense { vec![u128::MAX; key_span as usize] } else { Vec::new() };
    let mut sparse: HashMap<u128, u128> = HashMap::new();

    // Odometer over k composite digits, each selecting (point, multiplier).
    // partials[i] is the phase vector after the first i queries; advancing
    // digit m only recomputes levels m..k.
    let mut digits = vec![0u64; k];
    let mut partials = vec![0u64; (k + 1) * j];
    let mut finished = false;
    while !finished {
        // Recompute is driven by the lowest changed level, tracked below.
        let tuple_key = {
            let mut acc = 0u128;
            for &c in &digits {
                let (pt, y) = ((c / q) as usize, c % q);
                acc = acc * rep_step + (point_keys[pt] * q + y) as u128;
            }
            acc
        };
        let key = encode_key(&partials[k * j..(k + 1) * j], q);
        if use_dense {
            let slot = &mut dense[key as usize];
            if *slot == u128::MAX {
                *slot = tuple_key;
            }
        } else {
            sparse.entry(key).or_insert(tuple_key);
        }

        let mut pos = k;
        loop {
            if pos == 0 {
                finished = true;
                break;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < rows {
                break;
            }
            digits[pos] = 0;
        }
        if !finished {
            for level in pos..k {
                let c = digits[level];
                let (pt, y) = ((c / q) as usize, c % q);
                let feats = &features[pt * j..(pt + 1) * j];
                let (lower, upper) = partials.split_at_mut((level + 1) * j);
                let prev = &lower[level * j..];
                for i in 0..j {
                    upper[i] = field.add(prev[i], field.mul(y, feats[i]));
                }
            }
        }
    }

    let mut pairs: Vec<(u128, u128)>;
    if use_dense {
        pairs = dense
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, rep)| rep != u128::MAX)
            .map(|(key, rep)| (key as u128, rep))
            .collect();
    } else {
        pairs = sparse.into_iter().collect();
        pairs.sort_unstable_by_key(|&(key, _)| key);
    }
    let (entries, reps) = pairs.into_iter().unzip();
    Ok(QueryRange {
        field: field.clone(),
        n,
        d: basis.d(),
        k,
        j,
        strategy: Strategy::Exhaustive,
        entries,
        reps,
    })
}
