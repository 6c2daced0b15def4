//! Knot descriptors: Seifert matrices, two-bridge fractions, declared fact
//! records, and connected-sum expressions over them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{gcd_bezout, BezoutCertificate, LaurentPoly};
use crate::linalg::{det, IntMatrix};

/// Square integer matrix V with det(V - V^T) = +-1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeifertMatrix {
    v: IntMatrix,
}

impl SeifertMatrix {
    pub fn new(v: IntMatrix) -> Result<Self> {
        if !v.is_square() {
            return Err(Error::InvalidSeifert(format!("{}x{} is not square", v.rows(), v.cols())));
        }
        let skew = v.sub(&v.transpose());
        let d = det(&skew)?;
        if d.abs() != BigInt::one() {
            return Err(Error::InvalidSeifert(format!("det(V - V^T) = {}", d)));
        }
        Ok(SeifertMatrix { v })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    pub fn unknot() -> Self {
        SeifertMatrix { v: IntMatrix::zeros(0, 0) }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn size(&self) -> usize {
        self.v.rows()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    /// Symmetrized form V + V^T.
    pub fn symmetrized(&self) -> IntMatrix {
        self.v.add(&self.v.transpose())
    }

    pub fn connected_sum(&self, other: &Self) -> Self {
        SeifertMatrix { v: self.v.block_diag(&other.v) }
    }

    /// -V^T
    pub fn mirror(&self) -> Self {
        SeifertMatrix { v: self.v.transpose().neg() }
    }

    /// det(V - t V^T), normalized.
    pub fn alexander(&self) -> LaurentPoly {
        alexander_from_seifert(self)
    }
}

/// det(V - t V^T) normalized, recovered by exact interpolation of integer
/// determinants at t = 0, 1, ..., n.
pub fn alexander_from_seifert(s: &SeifertMatrix) -> LaurentPoly {
    let v = s.matrix();
    let vt = v.transpose();
    let n = v.rows();
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs.iter().map(|k| det(&v.sub(&vt.scale(k))).expect("square")).collect();
    let mut p = LaurentPoly::zero();
    for (k, (xk, yk)) in xs.iter().zip(&ys).enumerate() {
        if yk.is_zero() {
            continue;
        }
        let mut basis = LaurentPoly::constant(BigRational::from_integer(yk.clone()));
        for (j, xj) in xs.iter().enumerate() {
            if j == k {
                continue;
            }
            let lin = LaurentPoly::from_terms([(1, BigRational::one()), (0, BigRational::from_integer(-xj))]);
            basis = &basis * &lin;
            basis = basis.scale(&BigRational::new(BigInt::one(), xk - xj));
        }
        p = &p + &basis;
    }
    p.normalize().expect("Alexander polynomial of a valid Seifert matrix is nonzero")
}

/// Two-bridge knot b(p, q): p odd, 0 < q < p, gcd(p, q) = 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TwoBridge {
    pub p: u64,
    pub q: u64,
}

impl TwoBridge {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        let bad = Error::BadFraction { p: p as i64, q: q as i64 };
        if p == 1 {
            return if q == 0 { Ok(TwoBridge { p, q }) } else { Err(bad) };
        }
        if p % 2 == 0 || q == 0 || q >= p || p.gcd(&q) != 1 {
            return Err(bad);
        }
        Ok(TwoBridge { p, q })
    }

    pub fn mirror(&self) -> Self {
        if self.p == 1 {
            *self
        } else {
            TwoBridge { p: self.p, q: self.p - self.q }
        }
    }

    /// Sum of (-1)^i t^{sigma_i} with sigma_i the running sum of
    /// (-1)^{floor(j q'/p)}, where q' is the odd representative of q mod p.
    pub fn alexander(&self) -> LaurentPoly {
        if self.p == 1 {
            return LaurentPoly::one();
        }
        let p = self.p as i64;
        let q = if self.q % 2 == 1 { self.q as i64 } else { self.q as i64 - p };
        let mut sigma = 0i64;
        let mut out = LaurentPoly::one();
        for i in 1..p {
            sigma += if Integer::div_floor(&(i * q), &p).is_even() { 1 } else { -1 };
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out = &out + &LaurentPoly::monomial(BigRational::from_integer(sign.into()), sigma);
        }
        out.normalize().expect("nonzero")
    }
}

/// A declared fact about a knot at a given cover degree (or at some
/// unspecified prime power when `q` is absent).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Declaration {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doubly_vanishing: Option<bool>,
    pub provenance: String,
}

/// Knot known only through its Alexander polynomial and imported facts.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FactRecord {
    pub alexander: LaurentPoly,
    #[serde(default)]
    pub declarations: Vec<Declaration>,
    pub provenance: String,
}

impl FactRecord {
    pub fn validate(&self) -> Result<()> {
        let at_one = self.alexander.eval(&BigRational::one());
        if at_one.abs() != BigRational::one() {
            return Err(Error::InvalidAlexander(format!("Delta(1) = {}", at_one)));
        }
        if self.provenance.trim().is_empty() || self.declarations.iter().any(|d| d.provenance.trim().is_empty()) {
            return Err(Error::MalformedRecord("fact records need a provenance string".into()));
        }
        Ok(())
    }

    /// Declaration about doubly vanishing d-invariants matching `q`
    /// (exact hit first, then a q-independent declaration).
    pub fn doubly_vanishing_at(&self, q: Option<u64>) -> Option<&Declaration> {
        let with = |want: Option<u64>| self.declarations.iter().find(|d| d.doubly_vanishing.is_some() && d.q == want);
        q.and_then(|q| with(Some(q))).or_else(|| with(None))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Descriptor {
    Seifert(SeifertMatrix),
    TwoBridge(TwoBridge),
    Facts(FactRecord),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Knot {
    pub name: String,
    pub descriptor: Descriptor,
}

impl Knot {
    pub fn new(name: impl Into<String>, descriptor: Descriptor) -> Self {
        Knot { name: name.into(), descriptor }
    }

    pub fn alexander(&self) -> LaurentPoly {
        match &self.descriptor {
            Descriptor::Seifert(s) => s.alexander(),
            Descriptor::TwoBridge(b) => b.alexander(),
            Descriptor::Facts(f) => f.alexander.normalize().unwrap_or_else(|_| LaurentPoly::one()),
        }
    }
}

/// Connected sums with integer multiplicities; `n K` is |n| copies of K,
/// mirrored when n < 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KnotExpr {
    Leaf(Knot),
    Mirror(Box<KnotExpr>),
    Sum(Vec<(i64, KnotExpr)>),
}

impl KnotExpr {
    pub fn leaf(k: Knot) -> Self {
        KnotExpr::Leaf(k)
    }

    /// (knot, signed multiplicity) in written order, nested sums expanded.
    pub fn terms(&self) -> Vec<(Knot, i64)> {
        let mut out = Vec::new();
        self.collect_terms(1, &mut out);
        out
    }

    fn collect_terms(&self, mult: i64, out: &mut Vec<(Knot, i64)>) {
        match self {
            KnotExpr::Leaf(k) => out.push((k.clone(), mult)),
            KnotExpr::Mirror(e) => e.collect_terms(-mult, out),
            KnotExpr::Sum(ts) => {
                for (n, e) in ts {
                    e.collect_terms(mult * n, out);
                }
            }
        }
    }

    pub fn alexander(&self) -> LaurentPoly {
        let prod = self
            .terms()
            .iter()
            .fold(LaurentPoly::one(), |acc, (k, n)| &acc * &k.alexander().pow(n.unsigned_abs() as u32));
        prod.normalize().expect("product of nonzero polynomials")
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Leaf(k) => write!(f, "{}", k.name),
            KnotExpr::Mirror(e) => write!(f, "-({})", e),
            KnotExpr::Sum(ts) => {
                for (i, (n, e)) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    match n {
                        1 => write!(f, "{}", e)?,
                        n => write!(f, "({}){}", n, e)?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum PairStatus {
    Coprime(BezoutCertificate),
    CommonFactor(LaurentPoly),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub status: PairStatus,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CoprimeMatrix {
    pub polynomials: Vec<LaurentPoly>,
    pub pairs: Vec<PairCheck>,
}

impl CoprimeMatrix {
    pub fn all_coprime(&self) -> bool {
        self.pairs.iter().all(|p| matches!(p.status, PairStatus::Coprime(_)))
    }

    pub fn first_failure(&self) -> Option<&PairCheck> {
        self.pairs.iter().find(|p| matches!(p.status, PairStatus::CommonFactor(_)))
    }

    /// Re-multiplies every certificate.
    pub fn verify(&self) -> bool {
        self.pairs.iter().all(|p| match &p.status {
            PairStatus::Coprime(c) => c.verify(&self.polynomials[p.i], &self.polynomials[p.j]),
            PairStatus::CommonFactor(_) => true,
        })
    }
}

/// Pairwise coprimality over Q[t^{+-1}] of the given polynomials.
pub fn pairwise_coprime_polys(polys: &[LaurentPoly]) -> Result<CoprimeMatrix> {
    if polys.len() < 2 {
        return Err(Error::Unsupported("pairwise coprimality needs at least two summands".into()));
    }
    let mut pairs = Vec::new();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let (g, cert) = gcd_bezout(&polys[i], &polys[j])?;
            let status = match cert {
                Some(c) => PairStatus::Coprime(c),
                None => PairStatus::CommonFactor(g),
            };
            pairs.push(PairCheck { i, j, status });
        }
    }
    Ok(CoprimeMatrix { polynomials: polys.to_vec(), pairs })
}

pub fn pairwise_coprime(leaves: &[KnotExpr]) -> Result<CoprimeMatrix> {
    let polys: Vec<LaurentPoly> = leaves.iter().map(KnotExpr::alexander).collect();
    pairwise_coprime_polys(&polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{cyclotomic, poly};

    pub(crate) fn trefoil() -> SeifertMatrix {
        SeifertMatrix::from_i64(&[&[-1, 1], &[0, -1]]).unwrap()
    }

    pub(crate) fn k946() -> SeifertMatrix {
        SeifertMatrix::from_i64(&[&[0, 2], &[1, 0]]).unwrap()
    }

    /// Symbolic cofactor expansion of det(V - t V^T).
    fn cofactor_alexander(v: &IntMatrix) -> LaurentPoly {
        fn rec(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
            if m.is_empty() {
                return LaurentPoly::one();
            }
            let mut acc = LaurentPoly::zero();
            for j in 0..m.len() {
                let minor: Vec<Vec<LaurentPoly>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = &m[0][j] * &rec(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
        let n = v.rows();
        let m: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let a = BigRational::from_integer(v[(i, j)].clone());
                        let b = BigRational::from_integer(-v[(j, i)].clone());
                        LaurentPoly::from_terms([(0, a), (1, b)])
                    })
                    .collect()
            })
            .collect();
        rec(&m)
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(k946().alexander(), poly(&[2, -5, 2]));
        assert_eq!(&poly(&[-1, 2]) * &poly(&[-2, 1]), poly(&[2, -5, 2]));
        assert_eq!(SeifertMatrix::unknot().alexander(), LaurentPoly::one());
        assert_eq!(trefoil().alexander(), poly(&[1, -1, 1]));
        for s in [k946(), trefoil(), trefoil().connected_sum(&k946())] {
            assert_eq!(s.alexander(), cofactor_alexander(s.matrix()).normalize().unwrap());
        }
    }

    #[test]
    fn invalid_seifert() {
        assert!(matches!(SeifertMatrix::from_i64(&[&[1, 0], &[0, 1]]), Err(Error::InvalidSeifert(_))));
        assert!(matches!(SeifertMatrix::from_i64(&[&[1]]), Err(Error::InvalidSeifert(_))));
        assert!(SeifertMatrix::new(IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn sums_and_mirrors() {
        let t = trefoil();
        assert_eq!(t.connected_sum(&SeifertMatrix::unknot()), t);
        let tt = t.connected_sum(&t);
        assert_eq!(tt.size(), 4);
        assert_eq!(tt.alexander(), poly(&[1, -1, 1]).pow(2));
        assert_eq!(k946().connected_sum(&k946()).alexander(), poly(&[2, -5, 2]).pow(2));
        assert_eq!(SeifertMatrix::unknot().mirror(), SeifertMatrix::unknot());
        assert_eq!(k946().mirror().matrix(), &IntMatrix::from_i64(&[&[0, -1], &[-2, 0]]));
        assert_eq!(k946().mirror().mirror(), k946());
        assert_eq!(k946().mirror().alexander(), k946().alexander());
    }

    #[test]
    fn two_bridge_alexander() {
        assert_eq!(TwoBridge::new(3, 1).unwrap().alexander(), poly(&[1, -1, 1]));
        assert_eq!(TwoBridge::new(5, 2).unwrap().alexander(), poly(&[1, -3, 1]));
        assert_eq!(TwoBridge::new(9, 2).unwrap().alexander(), poly(&[2, -5, 2]));
        assert_eq!(TwoBridge::new(9, 7).unwrap().alexander(), poly(&[2, -5, 2]));
        assert_eq!(TwoBridge::new(1, 0).unwrap().alexander(), LaurentPoly::one());
        for (p, q) in [(7, 2), (11, 4), (15, 4), (25, 7)] {
            let d = TwoBridge::new(p, q).unwrap().alexander();
            assert_eq!(d.eval(&BigRational::from_integer((-1).into())).abs(), BigRational::from_integer(p.into()));
            assert_eq!(d.eval(&BigRational::one()).abs(), BigRational::one());
        }
        assert!(TwoBridge::new(9, 3).is_err());
        assert!(TwoBridge::new(8, 3).is_err());
    }

    fn k_p(p: u64) -> Knot {
        Knot::new(
            format!("K_{}", p),
            Descriptor::Facts(FactRecord { alexander: cyclotomic(2 * p).pow(2), declarations: vec![], provenance: "test".into() }),
        )
    }

    #[test]
    fn expression_alexander() {
        let k = Knot::new("K", Descriptor::Seifert(k946()));
        assert_eq!(KnotExpr::leaf(k.clone()).alexander(), poly(&[2, -5, 2]));
        assert_eq!(KnotExpr::leaf(k_p(3)).alexander(), poly(&[1, -1, 1]).pow(2));
        let u = Knot::new("unknot", Descriptor::Seifert(SeifertMatrix::unknot()));
        assert_eq!(KnotExpr::leaf(u).alexander(), LaurentPoly::one());
        let e = KnotExpr::Sum(vec![(2, KnotExpr::leaf(k.clone())), (-1, KnotExpr::leaf(k_p(3)))]);
        assert_eq!(e.alexander(), &poly(&[2, -5, 2]).pow(2) * &poly(&[1, -1, 1]).pow(2));
        assert_eq!(e.terms().iter().map(|(k, n)| (k.name.clone(), *n)).collect::<Vec<_>>(), vec![("K".into(), 2), ("K_3".into(), -1)]);
        let m = KnotExpr::Mirror(Box::new(e));
        assert_eq!(m.terms()[1].1, 1);
    }

    #[test]
    fn pairwise() {
        let k = KnotExpr::leaf(Knot::new("K", Descriptor::Seifert(k946())));
        let m = pairwise_coprime(&[k.clone(), KnotExpr::leaf(k_p(3)), KnotExpr::leaf(k_p(5))]).unwrap();
        assert!(m.all_coprime());
        assert_eq!(m.pairs.len(), 3);
        assert!(m.verify());
        let m = pairwise_coprime(&[KnotExpr::leaf(k_p(3)), KnotExpr::leaf(k_p(3))]).unwrap();
        assert!(!m.all_coprime());
        assert_eq!(m.first_failure().unwrap().status, PairStatus::CommonFactor(cyclotomic(6).pow(2)));
        assert!(pairwise_coprime(&[k]).is_err());
    }
}
