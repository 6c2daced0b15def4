//! Knot files, d-record files and connected-sum expressions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dinv::DRecord;
use crate::error::{Error, Result};
use crate::knot::{Descriptor, FactRecord, Knot, KnotExpr, SeifertMatrix, TwoBridge};
use crate::laurent::LaurentPoly;
use crate::linalg::IntMatrix;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RecordBody {
    Seifert {
        matrix: Vec<Vec<i64>>,
    },
    TwoBridge {
        p: u64,
        q: u64,
    },
    Facts {
        alexander: LaurentPoly,
        #[serde(default)]
        declarations: Vec<crate::knot::Declaration>,
        provenance: String,
    },
    Sum {
        terms: Vec<(String, i64)>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KnotRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(flatten)]
    pub body: RecordBody,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct KnotFile {
    pub knots: Vec<KnotRecord>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DRecordFile {
    pub knot: String,
    pub q: u64,
    pub records: Vec<DRecord>,
}

#[derive(Clone, Debug)]
enum Entry {
    Leaf(Knot),
    Sum(Vec<(String, i64)>),
}

/// Named knots loaded from one or more knot files.
#[derive(Clone, Debug, Default)]
pub struct KnotLibrary {
    entries: BTreeMap<String, Entry>,
}

fn to_matrix(rows: &[Vec<i64>]) -> Result<IntMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidSeifert("matrix must be square".into()));
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Ok(if n == 0 { IntMatrix::zeros(0, 0) } else { IntMatrix::from_i64(&refs) })
}

impl KnotLibrary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut lib = Self::new();
        lib.load_json(text, false)?;
        Ok(lib)
    }

    /// Adds the records of a knot file. With `replace`, names already
    /// present are overwritten; otherwise duplicates are an error.
    pub fn load_json(&mut self, text: &str, replace: bool) -> Result<()> {
        let file: KnotFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        self.load(file, replace)
    }

    pub fn load(&mut self, file: KnotFile, replace: bool) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for rec in file.knots {
            if !seen.insert(rec.name.clone()) || (!replace && self.entries.contains_key(&rec.name)) {
                return Err(Error::MalformedRecord(format!("duplicate knot name `{}`", rec.name)));
            }
            if !is_name(&rec.name) {
                return Err(Error::MalformedRecord(format!("invalid knot name `{}`", rec.name)));
            }
            let entry = match rec.body {
                RecordBody::Seifert { matrix } => {
                    Entry::Leaf(Knot::new(&rec.name, Descriptor::Seifert(SeifertMatrix::new(to_matrix(&matrix)?)?)))
                }
                RecordBody::TwoBridge { p, q } => Entry::Leaf(Knot::new(&rec.name, Descriptor::TwoBridge(TwoBridge::new(p, q)?))),
                RecordBody::Facts { alexander, declarations, provenance } => {
                    let f = FactRecord { alexander, declarations, provenance };
                    f.validate()?;
                    Entry::Leaf(Knot::new(&rec.name, Descriptor::Facts(f)))
                }
                RecordBody::Sum { terms } => {
                    if terms.is_empty() || terms.iter().any(|(_, n)| *n == 0) {
                        return Err(Error::MalformedRecord(format!("sum `{}` needs nonzero multiplicities", rec.name)));
                    }
                    Entry::Sum(terms)
                }
            };
            self.entries.insert(rec.name, entry);
        }
        for name in self.entries.keys() {
            self.resolve(name)?;
        }
        Ok(())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn resolve(&self, name: &str) -> Result<KnotExpr> {
        self.resolve_depth(name, 0)
    }

    fn resolve_depth(&self, name: &str, depth: usize) -> Result<KnotExpr> {
        if depth > self.entries.len() {
            return Err(Error::MalformedRecord(format!("cyclic sum definition through `{}`", name)));
        }
        match self.entries.get(name) {
            None => Err(Error::UnknownKnot(name.to_string())),
            Some(Entry::Leaf(k)) => Ok(KnotExpr::Leaf(k.clone())),
            Some(Entry::Sum(ts)) => {
                let terms = ts.iter().map(|(n, m)| Ok((*m, self.resolve_depth(n, depth + 1)?))).collect::<Result<_>>()?;
                Ok(KnotExpr::Sum(terms))
            }
        }
    }

    /// Parses a sum such as `K + (-1)K_3`, `2K - K_3` or `K # -K_3`.
    pub fn parse_expr(&self, text: &str) -> Result<KnotExpr> {
        let terms = parse_terms(text)?;
        let mut out = Vec::with_capacity(terms.len());
        for (n, name) in terms {
            out.push((n, self.resolve(&name)?));
        }
        if out.len() == 1 && out[0].0 == 1 {
            return Ok(out.pop().expect("one term").1);
        }
        Ok(KnotExpr::Sum(out))
    }
}

fn is_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-' | '\''))
        && !s.ends_with('-')
}

/// (multiplicity, name) pairs in written order.
pub fn parse_terms(text: &str) -> Result<Vec<(i64, String)>> {
    let err = |m: &str| Error::Parse(format!("{} in `{}`", m, text));
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut out = Vec::new();
    let mut sign = 1i64;
    loop {
        skip_ws(&mut pos);
        // unary signs
        while pos < chars.len() && (chars[pos] == '-' || chars[pos] == '+') {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        let mut mult = 1i64;
        if pos < chars.len() && chars[pos] == '(' {
            let close = chars[pos..].iter().position(|&c| c == ')').ok_or_else(|| err("unclosed parenthesis"))? + pos;
            let inner: String = chars[pos + 1..close].iter().collect();
            mult = inner.trim().parse().map_err(|_| err("bad multiplicity"))?;
            pos = close + 1;
        } else if pos < chars.len() && chars[pos].is_ascii_digit() {
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            mult = chars[start..pos].iter().collect::<String>().parse().map_err(|_| err("bad multiplicity"))?;
        }
        skip_ws(&mut pos);
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
            skip_ws(&mut pos);
        }
        let start = pos;
        while pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || matches!(chars[pos], '_' | '.' | '\'')) {
            pos += 1;
        }
        let name: String = chars[start..pos].iter().collect();
        if !is_name(&name) {
            return Err(err("expected a knot name"));
        }
        let n = sign * mult;
        if n == 0 {
            return Err(err("zero multiplicity"));
        }
        out.push((n, name));
        skip_ws(&mut pos);
        if pos == chars.len() {
            return Ok(out);
        }
        sign = match chars[pos] {
            '+' | '#' => 1,
            '-' => -1,
            _ => return Err(err("expected `+`, `-` or `#`")),
        };
        pos += 1;
    }
}

/// d-record files indexed by (knot name, q).
#[derive(Clone, Debug, Default)]
pub struct DSources {
    files: Vec<DRecordFile>,
}

impl DSources {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, file: DRecordFile) {
        self.files.push(file);
    }

    pub fn add_json(&mut self, text: &str) -> Result<()> {
        let f: DRecordFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        self.add(f);
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }

    pub fn records_for(&self, knot: &str, q: u64) -> Vec<DRecord> {
        self.files.iter().filter(|f| f.knot == knot && f.q == q).flat_map(|f| f.records.iter().cloned()).collect()
    }

    /// Cover degrees with data for the knot, ascending.
    pub fn degrees_for(&self, knot: &str) -> Vec<u64> {
        let mut qs: Vec<u64> = self.files.iter().filter(|f| f.knot == knot).map(|f| f.q).collect();
        qs.sort_unstable();
        qs.dedup();
        qs
    }

    pub fn knots(&self) -> Vec<&str> {
        self.files.iter().map(|f| f.knot.as_str()).collect()
    }
}
