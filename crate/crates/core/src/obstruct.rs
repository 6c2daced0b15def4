//! Obstruction checks and their reports: sliceness through a vanishing
//! metabolizer, doubly vanishing d-invariants through a vanishing
//! metabolizer pair, and the splitting of connected sums along summands
//! with coprime Alexander polynomials.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cover::{cover_homology, prime_power, FormSign, LinkedGroup};
use crate::dinv::{dbar, dtable_sum, ingest_dtable, two_bridge_dtable, DBar, DBarValue, DRecord, DTable, Element};
use crate::error::{Error, Result};
use crate::format::parse_rational;
use crate::knot::{pairwise_coprime_polys, Declaration, Descriptor, Knot, KnotExpr, CoprimeMatrix};
use crate::laurent::{gcd_bezout, BezoutCertificate, LaurentPoly};
use crate::library::DSources;
use crate::linalg::IntMatrix;
use crate::linkform::{metabolizer_pairs, metabolizers, FiniteForm, Subgroup, SubgroupRecord, DEFAULT_CAP};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Obstructed,
    NotObstructed,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Obstructed => "OBSTRUCTED",
            Status::NotObstructed => "NOT_OBSTRUCTED",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// A Lambda-metabolizer on which d-bar vanishes.
    Slice,
    /// A metabolizer pair (Lambda-invariant if asked) on which d-bar vanishes.
    DoublyVanishing,
    /// A Lambda-invariant pair on which d vanishes, basepoint included.
    DoublySlice,
    Split,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Slice => "slice",
            CheckKind::DoublyVanishing => "doubly-vanishing",
            CheckKind::DoublySlice => "doubly-slice",
            CheckKind::Split => "split",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Conventions {
    pub sign: FormSign,
    pub require_lambda: bool,
    pub cap: u64,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions { sign: FormSign::Negative, require_lambda: false, cap: DEFAULT_CAP }
    }
}

/// Group, form and deck action in cyclic-factor coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupRecord {
    pub q: u64,
    pub factors: Vec<u64>,
    pub gram: Vec<Vec<String>>,
    pub t: Vec<Vec<u64>>,
}

impl GroupRecord {
    pub fn from_group(h: &LinkedGroup) -> Self {
        let k = h.rank();
        GroupRecord {
            q: h.q(),
            factors: h.factors().iter().map(|d| d.to_u64().expect("factor fits")).collect(),
            gram: crate::format::rationals_to_text(h.gram()),
            t: (0..k).map(|i| (0..k).map(|j| h.t_action()[(i, j)].to_u64().expect("entry fits")).collect()).collect(),
        }
    }

    /// Rebuilds (and re-verifies) the linked group.
    pub fn to_group(&self) -> Result<LinkedGroup> {
        let factors = self.factors.iter().map(|&d| BigInt::from(d)).collect();
        let gram = self.gram.iter().map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        let k = self.factors.len();
        let mut t = IntMatrix::zeros(k, k);
        for (i, row) in self.t.iter().enumerate() {
            if row.len() != k {
                return Err(Error::DimensionMismatch("deck action record".into()));
            }
            for (j, x) in row.iter().enumerate() {
                t[(i, j)] = BigInt::from(*x);
            }
        }
        if self.t.len() != k {
            return Err(Error::DimensionMismatch("deck action record".into()));
        }
        LinkedGroup::new(self.q, factors, gram, t)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Candidate {
    pub subgroups: Vec<SubgroupRecord>,
    pub element: Element,
    pub evidence: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Blocker {
    pub subgroups: Vec<SubgroupRecord>,
    pub unknown: Vec<Element>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassResult {
    pub class: String,
    pub multiplicity: i64,
    pub verdicts: Vec<Verdict>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// d-bar is exactly 0 on every element of these subgroups.
    Vanishing { subgroups: Vec<SubgroupRecord> },
    NoMetabolizer,
    NoMetabolizerPair,
    BasepointNonzero { value: String },
    /// Every candidate contains an element with d-bar certified nonzero.
    NonzeroOnEvery { candidates: Vec<Candidate> },
    /// Candidates that neither vanish nor fail, with their Unknown elements.
    Blocked { candidates: Vec<Blocker> },
    Declared { declaration: Declaration },
    Unavailable { reason: String },
    Split {
        class: String,
        multiplicity: i64,
        names: Vec<String>,
        multiplicities: Vec<i64>,
        coprimality: CoprimeMatrix,
        /// Alexander polynomial of the class against the product over the rest.
        rest: BezoutCertificate,
        inner: Box<Verdict>,
    },
    CoprimalityFailed { names: Vec<String>, coprimality: CoprimeMatrix },
    Classes { names: Vec<String>, coprimality: CoprimeMatrix, results: Vec<ClassResult> },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub check: CheckKind,
    pub subject: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupRecord>,
    /// d-data the check read, with provenance.
    #[serde(default)]
    pub data: Vec<DRecord>,
    pub witness: Witness,
    pub provenance: Vec<String>,
    pub conventions: Conventions,
}

fn push_unique(list: &mut Vec<String>, s: &str) {
    if !list.iter().any(|x| x == s) {
        list.push(s.to_string());
    }
}

fn records(subs: &[&Subgroup]) -> Vec<SubgroupRecord> {
    subs.iter().map(|s| SubgroupRecord::from(*s)).collect()
}

/// First vanishing candidate wins; failing that, all candidates certified
/// nonzero obstruct; otherwise the Unknown elements are reported.
fn evaluate(form: &FiniteForm, db: &DBar, candidates: &[Vec<&Subgroup>]) -> (Status, Witness) {
    let mut failed = Vec::new();
    let mut blocked = Vec::new();
    for cand in candidates {
        let mut elems: Vec<Element> = cand.iter().flat_map(|s| s.elements().iter().cloned()).collect();
        elems.sort_by_key(|e| form.encode(e));
        elems.dedup();
        let mut unknown = Vec::new();
        let mut nonzero = None;
        for e in elems {
            match db.get(&e) {
                v if v.is_nonzero() => {
                    nonzero = Some((e, v));
                    break;
                }
                DBarValue::Unknown => unknown.push(e),
                _ => {}
            }
        }
        match nonzero {
            Some((element, v)) => {
                let evidence = match v {
                    DBarValue::Exact(x) => format!("d-bar = {}", x),
                    DBarValue::Nonzero { evidence } => evidence,
                    DBarValue::Unknown => unreachable!(),
                };
                failed.push(Candidate { subgroups: records(cand), element, evidence });
            }
            None if unknown.is_empty() => return (Status::NotObstructed, Witness::Vanishing { subgroups: records(cand) }),
            None => blocked.push(Blocker { subgroups: records(cand), unknown }),
        }
    }
    if blocked.is_empty() {
        (Status::Obstructed, Witness::NonzeroOnEvery { candidates: failed })
    } else {
        (Status::Inconclusive, Witness::Blocked { candidates: blocked })
    }
}

fn nonzero_basepoint(db: &DBar) -> Option<Witness> {
    db.basepoint().filter(|b| !b.is_zero()).map(|b| Witness::BasepointNonzero { value: b.to_string() })
}

fn group_verdict(kind: CheckKind, db: &DBar, conv: &Conventions, status: Status, witness: Witness) -> Verdict {
    let data = db.table().to_records();
    let mut provenance = Vec::new();
    for r in &data {
        push_unique(&mut provenance, &r.provenance);
    }
    Verdict {
        status,
        check: kind,
        subject: String::new(),
        q: Some(db.host().q()),
        group: Some(GroupRecord::from_group(db.host())),
        data,
        witness,
        provenance,
        conventions: *conv,
    }
}

/// Sliceness test: some Lambda-metabolizer with d-bar exactly 0 throughout.
/// Having no Lambda-metabolizer, a nonzero d(s0), or certified nonzero
/// values on every Lambda-metabolizer obstructs.
pub fn slice_check(db: &DBar, conv: &Conventions) -> Result<Verdict> {
    let form = FiniteForm::new(db.host(), conv.cap)?;
    let mets = metabolizers(&form, true);
    let (status, witness) = if mets.is_empty() {
        (Status::Obstructed, Witness::NoMetabolizer)
    } else if let Some(w) = nonzero_basepoint(db) {
        (Status::Obstructed, w)
    } else {
        let cands: Vec<Vec<&Subgroup>> = mets.iter().map(|m| vec![m]).collect();
        evaluate(&form, db, &cands)
    };
    Ok(group_verdict(CheckKind::Slice, db, conv, status, witness))
}

/// Doubly vanishing test on one cover: some metabolizer pair H = G1 + G2
/// with d-bar exactly 0 on G1 and G2. With `require_lambda` the pair must be
/// Lambda-invariant and a nonzero d(s0) obstructs as well.
pub fn doubly_vanishing_check(db: &DBar, require_lambda: bool, conv: &Conventions) -> Result<Verdict> {
    let kind = if require_lambda { CheckKind::DoublySlice } else { CheckKind::DoublyVanishing };
    let conv = Conventions { require_lambda: conv.require_lambda || require_lambda, ..*conv };
    let form = FiniteForm::new(db.host(), conv.cap)?;
    let pairs = metabolizer_pairs(&form, conv.require_lambda);
    let (status, witness) = if pairs.is_empty() {
        (Status::Obstructed, Witness::NoMetabolizerPair)
    } else if let Some(w) = nonzero_basepoint(db).filter(|_| require_lambda) {
        (Status::Obstructed, w)
    } else {
        let cands: Vec<Vec<&Subgroup>> = pairs.iter().map(|p| vec![&p.first, &p.second]).collect();
        evaluate(&form, db, &cands)
    };
    Ok(group_verdict(kind, db, &conv, status, witness))
}

fn run_group_check(kind: CheckKind, db: &DBar, conv: &Conventions) -> Result<Verdict> {
    match kind {
        CheckKind::Slice => slice_check(db, conv),
        CheckKind::DoublyVanishing => doubly_vanishing_check(db, false, conv),
        CheckKind::DoublySlice => doubly_vanishing_check(db, true, conv),
        CheckKind::Split => Err(Error::Unsupported("split is not a single-group check".into())),
    }
}

/// Cover data of a knot or a sum at one q.
enum CoverData {
    Group(DTable),
    Declared(Vec<Declaration>, String),
    Unavailable(String),
}

fn leaf_data(knot: &Knot, q: u64, dsrc: &DSources, conv: &Conventions) -> Result<CoverData> {
    let records = dsrc.records_for(&knot.name, q);
    let table = match &knot.descriptor {
        Descriptor::Seifert(s) if s.size() == 0 => {
            let mut t = DTable::unknot(q);
            t.merge(&ingest_dtable(t.host().clone(), &records)?)?;
            t
        }
        Descriptor::Seifert(s) => ingest_dtable(cover_homology(s, q, conv.sign)?, &records)?,
        Descriptor::TwoBridge(b) if q == 2 || b.p == 1 => {
            let mut t = if b.p == 1 { DTable::unknot(q) } else { two_bridge_dtable(b, conv.sign)? };
            t.merge(&ingest_dtable(t.host().clone(), &records)?)?;
            t
        }
        Descriptor::TwoBridge(_) => {
            return Ok(CoverData::Unavailable(format!("{}: a two-bridge fraction only determines the double cover", knot.name)))
        }
        Descriptor::Facts(f) => return Ok(CoverData::Declared(f.declarations.clone(), f.provenance.clone())),
    };
    Ok(CoverData::Group(table))
}

fn group_order_fits(h: &LinkedGroup, copies: u32, cap: u64) -> Result<()> {
    let order = h.order().pow(copies);
    if order > BigInt::from(cap) {
        return Err(Error::GroupTooLarge { order: order.to_string(), cap });
    }
    Ok(())
}

/// |n| copies of the knot, mirrored when n < 0 (form and d-values negated).
fn term_data(knot: &Knot, n: i64, q: u64, dsrc: &DSources, conv: &Conventions) -> Result<CoverData> {
    let base = match leaf_data(knot, q, dsrc, conv)? {
        CoverData::Group(t) => t,
        CoverData::Declared(d, p) if n.abs() == 1 => return Ok(CoverData::Declared(d, p)),
        CoverData::Declared(..) => {
            return Ok(CoverData::Unavailable(format!("{}: declared facts do not combine over multiple copies", knot.name)))
        }
        other => return Ok(other),
    };
    let one = if n < 0 { base.negated(base.host().with_sign_flipped())? } else { base };
    group_order_fits(one.host(), n.unsigned_abs() as u32, conv.cap)?;
    let mut acc = one.clone();
    for _ in 1..n.unsigned_abs() {
        acc = dtable_sum(&acc, &one)?;
    }
    Ok(CoverData::Group(acc))
}

fn expr_data(expr: &KnotExpr, q: u64, dsrc: &DSources, conv: &Conventions) -> Result<CoverData> {
    let terms = expr.terms();
    if terms.len() == 1 {
        return term_data(&terms[0].0, terms[0].1, q, dsrc, conv);
    }
    let mut acc = DTable::unknot(q);
    for (k, n) in &terms {
        match term_data(k, *n, q, dsrc, conv)? {
            CoverData::Group(t) => {
                let order = acc.host().order() * t.host().order();
                if order > BigInt::from(conv.cap) {
                    return Err(Error::GroupTooLarge { order: order.to_string(), cap: conv.cap });
                }
                acc = dtable_sum(&acc, &t)?;
            }
            CoverData::Declared(..) => {
                return Ok(CoverData::Unavailable(format!("{}: declared facts carry no cover data to add", k.name)))
            }
            other => return Ok(other),
        }
    }
    Ok(CoverData::Group(acc))
}

/// Cover group and d-table of a knot expression at q, or the reason it is
/// not available from the descriptors.
pub fn cover_table(expr: &KnotExpr, q: u64, dsrc: &DSources, conv: &Conventions) -> Result<std::result::Result<DTable, String>> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    Ok(match expr_data(expr, q, dsrc, conv)? {
        CoverData::Group(t) => Ok(t),
        CoverData::Declared(..) => Err("declared facts carry no cover data".into()),
        CoverData::Unavailable(reason) => Err(reason),
    })
}

fn declared_verdict(kind: CheckKind, q: u64, decls: &[Declaration], fact_prov: &str, conv: &Conventions) -> Verdict {
    let hit = decls
        .iter()
        .find(|d| d.doubly_vanishing == Some(false) && d.q == Some(q))
        .or_else(|| decls.iter().find(|d| d.doubly_vanishing == Some(false) && d.q.is_none()));
    let mut provenance = vec![fact_prov.to_string()];
    let (status, witness, vq) = match (kind, hit) {
        (CheckKind::DoublyVanishing | CheckKind::DoublySlice, Some(d)) => {
            push_unique(&mut provenance, &d.provenance);
            (Status::Obstructed, Witness::Declared { declaration: d.clone() }, d.q)
        }
        _ => (
            Status::Inconclusive,
            Witness::Unavailable { reason: "no applicable declaration and no cover data".into() },
            Some(q),
        ),
    };
    Verdict {
        status,
        check: kind,
        subject: String::new(),
        q: vq,
        group: None,
        data: vec![],
        witness,
        provenance,
        conventions: *conv,
    }
}

fn unavailable_verdict(kind: CheckKind, q: u64, reason: String, conv: &Conventions) -> Verdict {
    Verdict {
        status: Status::Inconclusive,
        check: kind,
        subject: String::new(),
        q: Some(q),
        group: None,
        data: vec![],
        witness: Witness::Unavailable { reason },
        provenance: vec![],
        conventions: *conv,
    }
}

/// Runs a single-cover check on a knot expression, pulling d-data from
/// `dsrc` and from the lens-space recursion where available.
pub fn check_expr(expr: &KnotExpr, q: u64, kind: CheckKind, dsrc: &DSources, conv: &Conventions) -> Result<Verdict> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    let mut v = match expr_data(expr, q, dsrc, conv)? {
        CoverData::Group(t) => run_group_check(kind, &dbar(&t), conv)?,
        CoverData::Declared(d, p) => declared_verdict(kind, q, &d, &p, conv),
        CoverData::Unavailable(reason) => unavailable_verdict(kind, q, reason, conv),
    };
    v.subject = expr.to_string();
    Ok(v)
}

/// Splitting along written summands: if the summands have pairwise coprime
/// Alexander polynomials and one of them fails to have doubly vanishing
/// d-invariants at some q, the whole sum is not doubly slice.
pub fn split_doubly_slice(expr: &KnotExpr, qs: &[u64], dsrc: &DSources, conv: &Conventions) -> Result<Verdict> {
    let conv = Conventions { require_lambda: false, ..*conv };
    let terms = expr.terms();
    if terms.len() < 2 {
        return Err(Error::Unsupported("splitting needs at least two summands".into()));
    }
    for &q in qs {
        if prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
    }
    let names: Vec<String> = terms.iter().map(|(k, _)| k.name.clone()).collect();
    let mults: Vec<i64> = terms.iter().map(|(_, n)| *n).collect();
    let polys: Vec<LaurentPoly> = terms.iter().map(|(k, n)| k.alexander().pow(n.unsigned_abs() as u32)).collect();
    let coprimality = pairwise_coprime_polys(&polys)?;
    let base = Verdict {
        status: Status::Inconclusive,
        check: CheckKind::Split,
        subject: expr.to_string(),
        q: None,
        group: None,
        data: vec![],
        witness: Witness::NoMetabolizer,
        provenance: vec![],
        conventions: conv,
    };
    if !coprimality.all_coprime() {
        return Ok(Verdict { witness: Witness::CoprimalityFailed { names, coprimality }, ..base });
    }
    let mut results = Vec::new();
    for (idx, (k, n)) in terms.iter().enumerate() {
        let class_expr = KnotExpr::Sum(vec![(*n, KnotExpr::Leaf(k.clone()))]);
        let mut verdicts = Vec::new();
        let mut degrees: Vec<u64> = qs.to_vec();
        if matches!(k.descriptor, Descriptor::Facts(_)) {
            // a q-independent declaration is read once
            degrees.truncate(1);
        }
        for &q in &degrees {
            let mut v = check_expr(&class_expr, q, CheckKind::DoublyVanishing, dsrc, &conv)?;
            v.subject = class_label(k, *n);
            if v.status == Status::Obstructed {
                let rest = polys
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != idx)
                    .fold(LaurentPoly::one(), |acc, (_, p)| &acc * p);
                let (_, cert) = gcd_bezout(&polys[idx], &rest)?;
                let rest = cert.ok_or_else(|| Error::Consistency("pairwise coprime but not coprime to the rest".into()))?;
                let mut provenance = v.provenance.clone();
                push_unique(&mut provenance, "Bezout certificates for the summand Alexander polynomials");
                return Ok(Verdict {
                    status: Status::Obstructed,
                    q: v.q,
                    provenance,
                    witness: Witness::Split {
                        class: k.name.clone(),
                        multiplicity: *n,
                        names,
                        multiplicities: mults,
                        coprimality,
                        rest,
                        inner: Box::new(v),
                    },
                    ..base
                });
            }
            verdicts.push(v);
        }
        results.push(ClassResult { class: k.name.clone(), multiplicity: *n, verdicts });
    }
    let any_open = results.iter().flat_map(|r| &r.verdicts).any(|v| v.status == Status::Inconclusive);
    let status = if any_open { Status::Inconclusive } else { Status::NotObstructed };
    Ok(Verdict { status, witness: Witness::Classes { names, coprimality, results }, ..base })
}

fn class_label(k: &Knot, n: i64) -> String {
    match n {
        1 => k.name.clone(),
        n => format!("({}){}", n, k.name),
    }
}

/// Re-runs a verdict from the data stored in it.
pub fn verify(v: &Verdict) -> Result<()> {
    let fail = |m: String| Err(Error::Verification(m));
    match (&v.check, &v.witness) {
        (CheckKind::Split, Witness::Split { class, multiplicity, names, multiplicities, coprimality, rest, inner }) => {
            if v.status != Status::Obstructed {
                return fail("split witness on a verdict that is not OBSTRUCTED".into());
            }
            if names.len() != multiplicities.len() || names.len() != coprimality.polynomials.len() || names.len() < 2 {
                return fail("split witness has inconsistent summand lists".into());
            }
            let expected_pairs = names.len() * (names.len() - 1) / 2;
            if coprimality.pairs.len() != expected_pairs || !coprimality.all_coprime() || !coprimality.verify() {
                return fail("pairwise Bezout certificates do not re-multiply".into());
            }
            let idx = names.iter().zip(multiplicities).position(|(n, m)| n == class && m == multiplicity);
            let Some(idx) = idx else { return fail(format!("class {} is not a summand", class)) };
            let others = coprimality
                .polynomials
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != idx)
                .fold(LaurentPoly::one(), |acc, (_, p)| &acc * p);
            if !rest.verify(&coprimality.polynomials[idx], &others) {
                return fail("class-versus-rest certificate does not re-multiply".into());
            }
            if inner.status != Status::Obstructed || inner.check != CheckKind::DoublyVanishing {
                return fail("inner verdict is not a doubly-vanishing obstruction".into());
            }
            verify(inner)
        }
        (CheckKind::Split, Witness::CoprimalityFailed { coprimality, .. }) => {
            if v.status != Status::Inconclusive || coprimality.all_coprime() || !coprimality.verify() {
                return fail("coprimality failure does not reproduce".into());
            }
            let again = pairwise_coprime_polys(&coprimality.polynomials)?;
            if again != *coprimality {
                return fail("coprimality matrix does not reproduce".into());
            }
            Ok(())
        }
        (CheckKind::Split, Witness::Classes { coprimality, results, .. }) => {
            if !coprimality.all_coprime() || !coprimality.verify() {
                return fail("pairwise Bezout certificates do not re-multiply".into());
            }
            for r in results {
                for inner in &r.verdicts {
                    if inner.status == Status::Obstructed {
                        return fail("an obstructed class was not reported".into());
                    }
                    verify(inner)?;
                }
            }
            Ok(())
        }
        (CheckKind::Split, _) => fail("split verdict with a non-split witness".into()),
        (_, Witness::Declared { declaration }) => {
            if v.status != Status::Obstructed || declaration.doubly_vanishing != Some(false) || v.check == CheckKind::Slice {
                return fail("declared witness does not support the verdict".into());
            }
            Ok(())
        }
        (_, Witness::Unavailable { .. }) => {
            if v.status != Status::Inconclusive {
                return fail("missing data can only be inconclusive".into());
            }
            Ok(())
        }
        (kind, _) => {
            let Some(g) = &v.group else { return fail("group record missing".into()) };
            let host = g.to_group()?;
            if Some(host.q()) != v.q {
                return fail("group record and verdict disagree on q".into());
            }
            let table = ingest_dtable(host, &v.data)?;
            let again = run_group_check(*kind, &dbar(&table), &v.conventions)?;
            if again.status != v.status || again.witness != v.witness {
                return fail(format!("re-run gives {} instead of {}", again.status.as_str(), v.status.as_str()));
            }
            Ok(())
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportFormat {
    Text,
    Json,
}

pub fn report(v: &Verdict, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(v).expect("verdicts serialize"),
        ReportFormat::Text => {
            let mut out = String::new();
            render_text(v, 0, &mut out);
            out
        }
    }
}

fn elt(e: &[u64]) -> String {
    format!("({})", e.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
}

fn subs(s: &[SubgroupRecord]) -> String {
    s.iter()
        .map(|r| if r.basis.is_empty() { "<0>".to_string() } else { format!("<{}>", r.basis.iter().map(|b| elt(b)).collect::<Vec<_>>().join(", ")) })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn group_name(g: &GroupRecord) -> String {
    if g.factors.is_empty() {
        "0".into()
    } else {
        g.factors.iter().map(|d| format!("Z/{}", d)).collect::<Vec<_>>().join(" + ")
    }
}

fn render_text(v: &Verdict, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let q = v.q.map(|q| format!(" (q = {})", q)).unwrap_or_default();
    let _ = writeln!(out, "{}{}: {} {}{}", pad, v.status.as_str(), v.check.as_str(), v.subject, q);
    if let Some(g) = &v.group {
        let _ = writeln!(out, "{}  group: {}", pad, group_name(g));
        if !g.factors.is_empty() {
            let _ = writeln!(out, "{}  form: {:?}", pad, g.gram);
            let _ = writeln!(out, "{}  deck action: {:?}", pad, g.t);
        }
    }
    match &v.witness {
        Witness::Vanishing { subgroups } => {
            let _ = writeln!(out, "{}  witness: d-bar vanishes on {}", pad, subs(subgroups));
        }
        Witness::NoMetabolizer => {
            let _ = writeln!(out, "{}  witness: no metabolizer exists", pad);
        }
        Witness::NoMetabolizerPair => {
            let _ = writeln!(out, "{}  witness: no metabolizer pair spans the group", pad);
        }
        Witness::BasepointNonzero { value } => {
            let _ = writeln!(out, "{}  witness: d(s0) = {} is nonzero", pad, value);
        }
        Witness::NonzeroOnEvery { candidates } => {
            let _ = writeln!(out, "{}  witness: every candidate has certified nonzero d-bar", pad);
            for c in candidates {
                let _ = writeln!(out, "{}    {}: at {}: {}", pad, subs(&c.subgroups), elt(&c.element), c.evidence);
            }
        }
        Witness::Blocked { candidates } => {
            let _ = writeln!(out, "{}  undecided candidates (Unknown d-values):", pad);
            for c in candidates {
                let us: Vec<String> = c.unknown.iter().map(|e| elt(e)).collect();
                let _ = writeln!(out, "{}    {}: unknown at {}", pad, subs(&c.subgroups), us.join(" "));
            }
        }
        Witness::Declared { declaration } => {
            let at = declaration.q.map(|q| format!("q = {}", q)).unwrap_or_else(|| "some prime power".into());
            let _ = writeln!(out, "{}  witness: declared not doubly vanishing at {} [{}]", pad, at, declaration.provenance);
        }
        Witness::Unavailable { reason } => {
            let _ = writeln!(out, "{}  no data: {}", pad, reason);
        }
        Witness::Split { class, multiplicity, names, coprimality, rest, inner, .. } => {
            let _ = writeln!(out, "{}  obstructed summand: {} (multiplicity {})", pad, class, multiplicity);
            render_coprimality(names, coprimality, &pad, out);
            let _ = writeln!(out, "{}  against the rest: ({}) * D1 + ({}) * D2 = {}", pad, rest.f1, rest.f2, rest.c);
            render_text(inner, depth + 1, out);
        }
        Witness::CoprimalityFailed { names, coprimality } => {
            render_coprimality(names, coprimality, &pad, out);
        }
        Witness::Classes { names, coprimality, results } => {
            render_coprimality(names, coprimality, &pad, out);
            for r in results {
                for inner in &r.verdicts {
                    render_text(inner, depth + 1, out);
                }
            }
        }
    }
    if !v.data.is_empty() {
        let _ = writeln!(out, "{}  d-data:", pad);
        for r in &v.data {
            let val = match &r.datum {
                crate::dinv::Datum::Value(x) => format!("= {}", x),
                crate::dinv::Datum::Bound(b) => format!("{} {}", b.rel.symbol(), b.value),
            };
            let _ = writeln!(out, "{}    d(s0 + {}) {}  [{}]", pad, elt(&r.element), val, r.provenance);
        }
    }
    if depth == 0 {
        for p in &v.provenance {
            let _ = writeln!(out, "  provenance: {}", p);
        }
        let c = &v.conventions;
        let sign = match c.sign {
            FormSign::Negative => "negative",
            FormSign::Positive => "positive",
        };
        let _ = writeln!(out, "  conventions: sign {}, lambda {}, cap {}", sign, if c.require_lambda { "on" } else { "off" }, c.cap);
    }
}

fn render_coprimality(names: &[String], m: &CoprimeMatrix, pad: &str, out: &mut String) {
    for (name, p) in names.iter().zip(&m.polynomials) {
        let _ = writeln!(out, "{}  Alexander polynomial of {}: {}", pad, name, p);
    }
    for pc in &m.pairs {
        match &pc.status {
            crate::knot::PairStatus::Coprime(c) => {
                let _ = writeln!(out, "{}  {} / {}: coprime, ({}) * D1 + ({}) * D2 = {}", pad, names[pc.i], names[pc.j], c.f1, c.f2, c.c);
            }
            crate::knot::PairStatus::CommonFactor(g) => {
                let _ = writeln!(out, "{}  {} / {}: common factor {}", pad, names[pc.i], names[pc.j], g);
            }
        }
    }
}
