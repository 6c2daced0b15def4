//! Correction terms: lens-space values, ingested d-data, normalization by
//! the canonical structure and addition over connected sums.
//!
//! Elements of the host group stand for Spin^c structures through
//! a -> s0 + a, so the zero element is the canonical structure s0.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cover::{direct_sum, FormSign, LinkedGroup};
use crate::error::{Error, Result};
use crate::format::rational_text;
use crate::knot::TwoBridge;

pub type Element = Vec<u64>;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=", alias = "le")]
    Le,
    #[serde(rename = ">=", alias = "ge")]
    Ge,
    #[serde(rename = "!=", alias = "ne")]
    Ne,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Ne => "!=",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DValue {
    Exact(BigRational),
    /// d(s0 + a) rel value.
    Bound { rel: Relation, value: BigRational },
    Unknown,
}

impl fmt::Display for DValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DValue::Exact(v) => write!(f, "{}", v),
            DValue::Bound { rel, value } => write!(f, "{} {}", rel.symbol(), value),
            DValue::Unknown => write!(f, "?"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DEntry {
    pub value: DValue,
    pub provenance: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BoundRecord {
    pub rel: Relation,
    #[serde(with = "rational_text")]
    pub value: BigRational,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Datum {
    Value(#[serde(with = "rational_text")] BigRational),
    Bound(BoundRecord),
}

/// One external fact d(s0 + element) = value, or a bound on it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DRecord {
    pub element: Element,
    #[serde(flatten)]
    pub datum: Datum,
    pub provenance: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DTable {
    host: LinkedGroup,
    entries: BTreeMap<Element, DEntry>,
}

impl DTable {
    pub fn empty(host: LinkedGroup) -> Self {
        DTable { host, entries: BTreeMap::new() }
    }

    /// S^3 (the cover of the unknot), whose only correction term is 0.
    pub fn unknot(q: u64) -> Self {
        let mut t = DTable::empty(LinkedGroup::trivial(q));
        t.entries.insert(vec![], DEntry { value: DValue::Exact(BigRational::zero()), provenance: "d(S^3) = 0".into() });
        t
    }

    pub fn host(&self) -> &LinkedGroup {
        &self.host
    }

    pub fn get(&self, x: &[u64]) -> &DValue {
        const UNKNOWN: DValue = DValue::Unknown;
        self.entries.get(x).map(|e| &e.value).unwrap_or(&UNKNOWN)
    }

    pub fn entry(&self, x: &[u64]) -> Option<&DEntry> {
        self.entries.get(x)
    }

    /// Known entries in element order.
    pub fn entries(&self) -> impl Iterator<Item = (&Element, &DEntry)> {
        self.entries.iter()
    }

    pub fn basepoint(&self) -> Option<&BigRational> {
        match self.get(&vec![0; self.host.rank()]) {
            DValue::Exact(v) => Some(v),
            _ => None,
        }
    }

    fn check_element(&self, x: &[u64]) -> Result<()> {
        let fits = x.len() == self.host.rank() && x.iter().zip(self.host.factors()).all(|(c, d)| BigInt::from(*c) < *d);
        if fits {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange(format!("{:?} in {}", x, self.host.describe())))
        }
    }

    /// Adds an entry. Re-stating the same value is allowed; a different
    /// value for an already known element is an error.
    pub fn insert(&mut self, x: Element, entry: DEntry) -> Result<()> {
        self.check_element(&x)?;
        if entry.provenance.trim().is_empty() {
            return Err(Error::MalformedRecord(format!("record at {:?} has no provenance", x)));
        }
        if matches!(entry.value, DValue::Unknown) {
            return Ok(());
        }
        match self.entries.get(&x) {
            Some(old) if old.value != entry.value => {
                Err(Error::MalformedRecord(format!("conflicting d-data at {:?}: {} vs {}", x, old.value, entry.value)))
            }
            Some(_) => Ok(()),
            None => {
                self.entries.insert(x, entry);
                Ok(())
            }
        }
    }

    pub fn merge(&mut self, other: &DTable) -> Result<()> {
        if other.host != self.host {
            return Err(Error::Consistency("d-tables live on different groups".into()));
        }
        for (x, e) in &other.entries {
            self.insert(x.clone(), e.clone())?;
        }
        Ok(())
    }

    pub fn to_records(&self) -> Vec<DRecord> {
        self.entries
            .iter()
            .filter_map(|(x, e)| {
                let datum = match &e.value {
                    DValue::Exact(v) => Datum::Value(v.clone()),
                    DValue::Bound { rel, value } => Datum::Bound(BoundRecord { rel: *rel, value: value.clone() }),
                    DValue::Unknown => return None,
                };
                Some(DRecord { element: x.clone(), datum, provenance: e.provenance.clone() })
            })
            .collect()
    }

    /// Table of the orientation-reversed cover on `host` (the same group
    /// with the form negated): every value changes sign.
    pub fn negated(&self, host: LinkedGroup) -> Result<DTable> {
        if host.factors() != self.host.factors() {
            return Err(Error::Consistency("orientation reversal must keep the group".into()));
        }
        let mut out = DTable::empty(host);
        for (x, e) in &self.entries {
            let value = match &e.value {
                DValue::Exact(v) => DValue::Exact(-v),
                DValue::Bound { rel, value } => DValue::Bound {
                    rel: match rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Ne => Relation::Ne,
                    },
                    value: -value,
                },
                DValue::Unknown => DValue::Unknown,
            };
            out.insert(x.clone(), DEntry { value, provenance: format!("orientation reversal of: {}", e.provenance) })?;
        }
        Ok(out)
    }
}

/// d(L(p, q), i) for 0 <= i < p by the standard two-term recursion.
pub fn lens_d(p: u64, q: u64) -> Result<Vec<BigRational>> {
    let bad = Error::BadFraction { p: p as i64, q: q as i64 };
    if p == 0 {
        return Err(bad);
    }
    if p == 1 {
        return Ok(vec![BigRational::zero()]);
    }
    let q = q % p;
    if q == 0 || p.gcd(&q) != 1 {
        return Err(bad);
    }
    let inner = lens_d(q, p % q)?;
    let (pb, qb) = (BigInt::from(p), BigInt::from(q));
    let denom = BigInt::from(4) * &pb * &qb;
    Ok((0..p)
        .map(|i| {
            let s = BigInt::from(2 * i + 1) - &pb - &qb;
            BigRational::new(&s * &s - &pb * &qb, denom.clone()) - &inner[(i % q) as usize]
        })
        .collect())
}

/// Conjugation on lens Spin^c indices: i -> q - 1 - i mod p.
pub fn lens_conjugate(p: u64, q: u64, i: u64) -> u64 {
    ((q % p + p - 1 - i % p) + p) % p
}

/// The self-conjugate lens index, taken as the canonical structure s0 of
/// the double cover (unique since p is odd).
pub fn canonical_lens_index(p: u64, q: u64) -> u64 {
    // 2 i = q - 1 mod p
    let inv2 = p.div_ceil(2);
    ((q % p + p - 1) % p) * inv2 % p
}

/// Lens index of s0 + a * g for the generator g of the two-bridge host.
pub fn lens_index_of(k: &TwoBridge, a: u64) -> u64 {
    if k.p == 1 {
        return 0;
    }
    (canonical_lens_index(k.p, k.q) + (k.q as u128 * a as u128 % k.p as u128) as u64) % k.p
}

/// Complete exact table on the double cover L(p, q) of b(p, q).
pub fn two_bridge_dtable(k: &TwoBridge, sign: FormSign) -> Result<DTable> {
    let host = LinkedGroup::two_bridge(k, sign)?;
    if k.p == 1 {
        return Ok(DTable::unknot(2));
    }
    let d = lens_d(k.p, k.q)?;
    let mut t = DTable::empty(host);
    let prov = format!("lens space L({},{}) recursion", k.p, k.q);
    for a in 0..k.p {
        let value = DValue::Exact(d[lens_index_of(k, a) as usize].clone());
        t.insert(vec![a], DEntry { value, provenance: prov.clone() })?;
    }
    Ok(t)
}

/// Builds a table from external records; unreferenced elements stay Unknown.
pub fn ingest_dtable(host: LinkedGroup, records: &[DRecord]) -> Result<DTable> {
    let mut t = DTable::empty(host);
    for r in records {
        if r.provenance.trim().is_empty() {
            return Err(Error::MalformedRecord(format!("record at {:?} has no provenance", r.element)));
        }
        if t.entries.contains_key(&r.element) {
            return Err(Error::MalformedRecord(format!("duplicate record at {:?}", r.element)));
        }
        let value = match &r.datum {
            Datum::Value(v) => DValue::Exact(v.clone()),
            Datum::Bound(b) => DValue::Bound { rel: b.rel, value: b.value.clone() },
        };
        t.insert(r.element.clone(), DEntry { value, provenance: r.provenance.clone() })?;
    }
    Ok(t)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DBarValue {
    Exact(BigRational),
    Nonzero { evidence: String },
    Unknown,
}

impl DBarValue {
    pub fn is_zero(&self) -> bool {
        matches!(self, DBarValue::Exact(v) if v.is_zero())
    }

    /// Certified nonzero, either exactly or through a bound.
    pub fn is_nonzero(&self) -> bool {
        match self {
            DBarValue::Exact(v) => !v.is_zero(),
            DBarValue::Nonzero { .. } => true,
            DBarValue::Unknown => false,
        }
    }
}

impl fmt::Display for DBarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DBarValue::Exact(v) => write!(f, "{}", v),
            DBarValue::Nonzero { evidence } => write!(f, "nonzero ({})", evidence),
            DBarValue::Unknown => write!(f, "?"),
        }
    }
}

/// d(s0 + a) - d(s0).
#[derive(Clone, Debug)]
pub struct DBar {
    table: DTable,
}

impl DBar {
    pub fn host(&self) -> &LinkedGroup {
        self.table.host()
    }

    pub fn table(&self) -> &DTable {
        &self.table
    }

    pub fn basepoint(&self) -> Option<&BigRational> {
        self.table.basepoint()
    }

    pub fn get(&self, x: &[u64]) -> DBarValue {
        if x.iter().all(|&c| c == 0) {
            return DBarValue::Exact(BigRational::zero());
        }
        let Some(base) = self.basepoint() else {
            return DBarValue::Unknown;
        };
        match self.table.get(x) {
            DValue::Exact(v) => DBarValue::Exact(v - base),
            DValue::Bound { rel, value } => {
                let shifted = value - base;
                let certified = match rel {
                    Relation::Le => shifted < BigRational::zero(),
                    Relation::Ge => shifted > BigRational::zero(),
                    Relation::Ne => shifted.is_zero(),
                };
                if certified {
                    DBarValue::Nonzero { evidence: format!("d(s0+a) {} {} and d(s0) = {}", rel.symbol(), value, base) }
                } else {
                    DBarValue::Unknown
                }
            }
            DValue::Unknown => DBarValue::Unknown,
        }
    }
}

pub fn dbar(t: &DTable) -> DBar {
    DBar { table: t.clone() }
}

fn add_values(a: &DValue, b: &DValue) -> DValue {
    use DValue::*;
    match (a, b) {
        (Exact(x), Exact(y)) => Exact(x + y),
        (Exact(e), Bound { rel, value }) | (Bound { rel, value }, Exact(e)) => Bound { rel: *rel, value: value + e },
        (Bound { rel: r1, value: v1 }, Bound { rel: r2, value: v2 }) if r1 == r2 && *r1 != Relation::Ne => {
            Bound { rel: *r1, value: v1 + v2 }
        }
        _ => Unknown,
    }
}

/// Table on the direct-sum group: d(s0 + (x, y)) = d(s0 + x) + d(s0 + y).
pub fn dtable_sum(a: &DTable, b: &DTable) -> Result<DTable> {
    if a.host.q() != b.host.q() {
        return Err(Error::MismatchedQ(a.host.q(), b.host.q()));
    }
    let mut out = DTable::empty(direct_sum(&a.host, &b.host)?);
    for (x, ea) in &a.entries {
        for (y, eb) in &b.entries {
            let value = add_values(&ea.value, &eb.value);
            if matches!(value, DValue::Unknown) {
                continue;
            }
            let provenance =
                if ea.provenance == eb.provenance { ea.provenance.clone() } else { format!("{} + {}", ea.provenance, eb.provenance) };
            let mut z = x.clone();
            z.extend_from_slice(y);
            out.entries.insert(z, DEntry { value, provenance });
        }
    }
    Ok(out)
}
