//! Laurent polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det, det_rational, IntMatrix, RatMatrix};

/// Exponent -> coefficient with zero coefficients stripped.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// Coefficients in increasing exponent order starting at `lowest`.
    pub fn from_coeffs<T: Into<BigInt> + Clone>(lowest: i64, coeffs: &[T]) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(lowest + k as i64, BigRational::from_integer(c.clone().into()));
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Span max - min exponent; 0 for constants, None for zero.
    pub fn width(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    /// Unit in Q[t^{+-1}]: a nonzero monomial.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// p(t) -> p(t^{-1})
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (e, c)| {
            let xp = if *e >= 0 { num_traits::pow(x.clone(), *e as usize) } else { num_traits::pow(x.recip(), (-e) as usize) };
            acc + c * xp
        })
    }

    /// Lowest exponent 0 and positive leading coefficient.
    pub fn normalize(&self) -> Result<Self> {
        let lo = self.min_exp().ok_or(Error::ZeroPolynomial)?;
        let p = self.shift(-lo);
        if p.leading().is_some_and(|c| c.is_negative()) {
            Ok(-p)
        } else {
            Ok(p)
        }
    }

    /// Integer coefficients with content 1, then normalized.
    pub fn primitive(&self) -> Result<Self> {
        let n = self.normalize()?;
        let lcm_den = n.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = n.scale(&BigRational::from_integer(lcm_den));
        let content = scaled.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        Ok(scaled.scale(&BigRational::new(BigInt::one(), content)))
    }

    /// Coefficients of an honest polynomial (min exponent >= 0), constant term first.
    fn dense(&self) -> Vec<BigRational> {
        match self.max_exp() {
            None => Vec::new(),
            Some(hi) => {
                assert!(self.min_exp().unwrap() >= 0);
                (0..=hi).map(|e| self.coeff(e)).collect()
            }
        }
    }

    /// Exact polynomial long division over Q (both operands honest polynomials).
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = d.max_exp().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut r = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = r.max_exp() {
            if rd < dd {
                break;
            }
            let c = r.leading().unwrap() / &lead;
            let m = Self::monomial(c, rd - dd);
            r = &r - &(&m * d);
            quot = &quot + &m;
        }
        Ok((quot, r))
    }

    /// Integer-coefficient map for serialization.
    pub fn to_integer_map(&self) -> Option<BTreeMap<i64, BigInt>> {
        self.terms.iter().map(|(e, c)| c.is_integer().then(|| (*e, c.to_integer()))).collect()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs.clone())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if mag.is_integer() { mag.to_integer().to_string() } else { format!("({})", mag) };
            match *e {
                0 => write!(f, "{}", coeff)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}", coeff)?;
                    }
                    match *e {
                        1 => write!(f, "t")?,
                        e => write!(f, "t^{}", e)?,
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(e, c)| (e.to_string(), if c.is_integer() { c.to_integer().to_string() } else { c.to_string() }))
            .collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Text(String),
        }
        let map = BTreeMap::<String, Coeff>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in map {
            let e: i64 = e.trim().parse().map_err(|_| serde::de::Error::custom(format!("bad exponent `{}`", e)))?;
            let c = match c {
                Coeff::Int(v) => BigRational::from_integer(v.into()),
                Coeff::Text(s) => crate::format::parse_rational(&s).map_err(serde::de::Error::custom)?,
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// `f1 * p + f2 * q == c` with integral f1, f2 and positive integer c.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BezoutCertificate {
    pub f1: LaurentPoly,
    pub f2: LaurentPoly,
    pub c: BigInt,
}

impl BezoutCertificate {
    /// Re-multiplies the identity exactly.
    pub fn verify(&self, p: &LaurentPoly, q: &LaurentPoly) -> bool {
        self.c.is_positive()
            && self.f1.is_integral()
            && self.f2.is_integral()
            && &(&self.f1 * p) + &(&self.f2 * q) == LaurentPoly::constant(BigRational::from_integer(self.c.clone()))
    }
}

fn extended_euclid(a: &LaurentPoly, b: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly, LaurentPoly)> {
    // s*a + t*b = r throughout.
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (LaurentPoly::one(), LaurentPoly::zero());
    let (mut t0, mut t1) = (LaurentPoly::zero(), LaurentPoly::one());
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1)?;
        let s2 = &s0 - &(&quot * &s1);
        let t2 = &t0 - &(&quot * &t1);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    Ok((r0, s0, t0))
}

/// gcd over Q[t^{+-1}], returned as a primitive normalized integer
/// polynomial, plus a Bezout certificate when the gcd is a unit.
pub fn gcd_bezout(p: &LaurentPoly, q: &LaurentPoly) -> Result<(LaurentPoly, Option<BezoutCertificate>)> {
    let (lp, lq) = (p.min_exp().ok_or(Error::ZeroPolynomial)?, q.min_exp().ok_or(Error::ZeroPolynomial)?);
    let (pp, qq) = (p.shift(-lp), q.shift(-lq));
    let (g, s, t) = extended_euclid(&pp, &qq)?;
    if g.width() != Some(0) {
        return Ok((g.primitive()?, None));
    }
    // s * t^{-lp} * p + t * t^{-lq} * q = g (a nonzero constant)
    let g0 = g.coeff(0);
    let f1 = s.shift(-lp).scale(&g0.recip());
    let f2 = t.shift(-lq).scale(&g0.recip());
    let c = f1.terms.values().chain(f2.terms.values()).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let cr = BigRational::from_integer(c.clone());
    let cert = BezoutCertificate { f1: f1.scale(&cr), f2: f2.scale(&cr), c };
    Ok((LaurentPoly::one(), Some(cert)))
}

pub fn coprime(p: &LaurentPoly, q: &LaurentPoly) -> Result<bool> {
    Ok(gcd_bezout(p, q)?.0.is_unit())
}

/// phi_n by the division formula.
pub fn cyclotomic(n: u64) -> LaurentPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = LaurentPoly::from_terms([(n as i64, BigRational::one()), (0, -BigRational::one())]);
    for d in (1..n).filter(|d| n % d == 0) {
        let (quot, rem) = num.div_rem(&cyclotomic(d)).expect("nonzero divisor");
        debug_assert!(rem.is_zero());
        num = quot;
    }
    num
}

fn totient(n: u64) -> u64 {
    let (mut m, mut out, mut p) = (n, n, 2);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Splits off cyclotomic factors: returns [(n, multiplicity)] with
/// p = prod phi_n^k * rest up to units, rest normalized.
pub fn cyclotomic_part(p: &LaurentPoly) -> Result<(Vec<(u64, u32)>, LaurentPoly)> {
    let mut rest = p.normalize()?;
    let mut found = Vec::new();
    let mut n = 1u64;
    loop {
        let deg = rest.width().unwrap_or(0) as u64;
        if deg == 0 || n > 2 * deg * deg + 2 {
            break;
        }
        if totient(n) <= deg {
            let phi = cyclotomic(n);
            let mut k = 0;
            loop {
                let (quot, rem) = rest.div_rem(&phi)?;
                if !rem.is_zero() {
                    break;
                }
                rest = quot.normalize()?;
                k += 1;
            }
            if k > 0 {
                found.push((n, k));
            }
        }
        n += 1;
    }
    Ok((found, rest))
}

/// Resultant of two Laurent polynomials after shifting each to an honest
/// polynomial with nonzero constant term, via the Sylvester determinant.
pub fn resultant(p: &LaurentPoly, q: &LaurentPoly) -> Result<BigRational> {
    let a = p.shift(-p.min_exp().ok_or(Error::ZeroPolynomial)?).dense();
    let b = q.shift(-q.min_exp().ok_or(Error::ZeroPolynomial)?).dense();
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut s = RatMatrix::zeros(size, size);
    // rows 0..n: shifts of a (highest coefficient first); rows n..n+m: shifts of b
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            s[(i, i + k)] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            s[(n + i, i + k)] = c.clone();
        }
    }
    det_rational(&s)
}

/// |H_1| of the q-fold branched cover: |res(Delta, 1 + t + ... + t^{q-1})|.
pub fn resultant_order(delta: &LaurentPoly, q: u64) -> Result<BigInt> {
    let one = BigRational::one();
    let at_one = delta.eval(&one);
    if at_one.abs() != one {
        return Err(Error::InvalidAlexander(format!("Delta(1) = {}", at_one)));
    }
    if !delta.is_integral() {
        return Err(Error::InvalidAlexander("non-integral coefficients".into()));
    }
    let d = delta.normalize()?;
    let norm = LaurentPoly::from_terms((0..q as i64).map(|e| (e, BigRational::one())));
    // integral Sylvester matrix, so use the fraction-free determinant
    let a = d.dense();
    let b = norm.dense();
    let (m, n) = (a.len() - 1, b.len() - 1);
    let mut s = IntMatrix::zeros(m + n, m + n);
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            s[(i, i + k)] = c.to_integer();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            s[(n + i, i + k)] = c.to_integer();
        }
    }
    Ok(det(&s)?.abs())
}

/// The dense polynomial with the given coefficients (constant first).
pub fn poly(coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_coeffs(0, coeffs)
}
