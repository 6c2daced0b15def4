//! Subgroups, orthogonal complements and metabolizers of finite linked
//! groups, by exhaustive enumeration under an element-count cap.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cover::LinkedGroup;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: u64 = 65536;

pub type Element = Vec<u64>;

/// A linked group small enough to enumerate, with the form stored as
/// integers mod the exponent N: lambda(g_i, g_j) = pairing[i][j] / N.
#[derive(Clone, Debug)]
pub struct FiniteForm {
    orders: Vec<u64>,
    size: usize,
    exponent: u64,
    pairing: Vec<Vec<u64>>,
    /// Column j holds the coordinates of t(g_j).
    t: Vec<Vec<u64>>,
}

impl FiniteForm {
    pub fn new(h: &LinkedGroup, cap: u64) -> Result<Self> {
        let order = h.order();
        let too_large = || Error::GroupTooLarge { order: order.to_string(), cap };
        let size = order.to_u64().filter(|&n| n <= cap).ok_or_else(too_large)?;
        let orders: Vec<u64> = h.factors().iter().map(|d| d.to_u64().expect("factor below cap")).collect();
        let exponent = orders.iter().fold(1u64, |acc, d| acc.lcm(d));
        let n = BigRational::from_integer(BigInt::from(exponent));
        let pairing = h
            .gram()
            .iter()
            .map(|row| row.iter().map(|x| (x * &n).to_integer().to_u64().expect("reduced form")).collect())
            .collect();
        let k = orders.len();
        let ta = h.t_action();
        let t = (0..k).map(|i| (0..k).map(|j| ta[(i, j)].to_u64().expect("reduced action")).collect()).collect();
        Ok(FiniteForm { orders, size: size as usize, exponent, pairing, t })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn zero(&self) -> Element {
        vec![0; self.rank()]
    }

    /// Mixed-radix index, first coordinate most significant.
    pub fn encode(&self, x: &[u64]) -> usize {
        x.iter().zip(&self.orders).fold(0usize, |acc, (c, d)| acc * (*d as usize) + *c as usize)
    }

    pub fn decode(&self, mut idx: usize) -> Element {
        let mut x = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let d = self.orders[i] as usize;
            x[i] = (idx % d) as u64;
            idx /= d;
        }
        x
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size).map(|i| self.decode(i))
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        x.len() == self.rank() && x.iter().zip(&self.orders).all(|(c, d)| c < d)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), d)| (a + b) % d).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter().zip(&self.orders).map(|(a, d)| (d - a) % d).collect()
    }

    pub fn scale(&self, m: u64, x: &[u64]) -> Element {
        x.iter().zip(&self.orders).map(|(a, d)| ((*a as u128 * m as u128) % *d as u128) as u64).collect()
    }

    pub fn is_zero(x: &[u64]) -> bool {
        x.iter().all(|&c| c == 0)
    }

    /// N * lambda(x, y) mod N.
    pub fn pair(&self, x: &[u64], y: &[u64]) -> u64 {
        let n = self.exponent as u128;
        let mut acc: u128 = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc = (acc + (*xi as u128) * (*yj as u128 % n) % n * self.pairing[i][j] as u128) % n;
            }
        }
        acc as u64
    }

    pub fn lambda(&self, x: &[u64], y: &[u64]) -> BigRational {
        BigRational::new(BigInt::from(self.pair(x, y)), BigInt::from(self.exponent))
    }

    pub fn apply_t(&self, x: &[u64]) -> Element {
        let k = self.rank();
        (0..k)
            .map(|i| {
                let d = self.orders[i] as u128;
                ((0..k).map(|j| self.t[i][j] as u128 * x[j] as u128 % d).sum::<u128>() % d) as u64
            })
            .collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.orders).fold(1u64, |acc, (c, d)| acc.lcm(&(d / d.gcd(c))))
    }

    fn closure(&self, base: &[Element], base_bits: &Bits, g: &[u64]) -> (Vec<Element>, Bits) {
        let mut elems = base.to_vec();
        let mut bits = base_bits.clone();
        let mut shift = g.to_vec();
        while !bits.get(self.encode(&shift)) {
            for e in base {
                let s = self.add(e, &shift);
                bits.set(self.encode(&s));
                elems.push(s);
            }
            shift = self.add(&shift, g);
        }
        (elems, bits)
    }

    fn trivial_subgroup(&self) -> (Vec<Element>, Bits) {
        let mut bits = Bits::new(self.size);
        bits.set(0);
        (vec![self.zero()], bits)
    }

    /// Subgroup generated by the given elements.
    pub fn span(&self, gens: &[Element]) -> Subgroup {
        let (mut elems, mut bits) = self.trivial_subgroup();
        for g in gens {
            let (e, b) = self.closure(&elems, &bits, g);
            elems = e;
            bits = b;
        }
        Subgroup::from_members(self, elems, bits)
    }

    /// Distinct cyclic subgroups, each given by its first generator in index order.
    fn cyclic_generators(&self, filter: impl Fn(&[u64]) -> bool) -> Vec<Element> {
        let mut covered = Bits::new(self.size);
        let mut out = Vec::new();
        for idx in 1..self.size {
            if covered.get(idx) {
                continue;
            }
            let g = self.decode(idx);
            if !filter(&g) {
                continue;
            }
            let ord = self.element_order(&g);
            for m in 1..ord {
                if m.gcd(&ord) == 1 {
                    covered.set(self.encode(&self.scale(m, &g)));
                }
            }
            out.push(g);
        }
        out
    }

    /// Breadth-first closure of the subgroup lattice under joins with the
    /// given cyclic generators; `admissible(S, g)` gates each join.
    fn enumerate(&self, cyclic: &[Element], admissible: impl Fn(&Subgroup, &[u64]) -> bool) -> Vec<Subgroup> {
        let (e0, b0) = self.trivial_subgroup();
        let start = Subgroup::from_members(self, e0, b0);
        let mut seen: HashSet<Bits> = HashSet::new();
        seen.insert(start.bits.clone());
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(s) = queue.pop_front() {
            for g in cyclic {
                if s.bits.get(self.encode(g)) || !admissible(&s, g) {
                    continue;
                }
                let (elems, bits) = self.closure(&s.elems, &s.bits, g);
                if seen.contains(&bits) {
                    continue;
                }
                seen.insert(bits.clone());
                queue.push_back(Subgroup::from_members(self, elems, bits));
            }
            out.push(s);
        }
        out.sort_by(|a, b| (a.order, &a.basis).cmp(&(b.order, &b.basis)));
        out
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and_count(&self, other: &Bits) -> u32 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones()).sum()
    }
}

/// A subgroup with its canonical echelon basis: for each coordinate c the
/// basis holds (when nonzero) the lexicographically least element whose
/// earlier coordinates vanish and whose c-th coordinate is the least positive
/// value attained there.
#[derive(Clone, Debug)]
pub struct Subgroup {
    basis: Vec<Element>,
    order: u64,
    elems: Vec<Element>,
    bits: Bits,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    fn from_members(form: &FiniteForm, mut elems: Vec<Element>, bits: Bits) -> Self {
        elems.sort_by_key(|e| form.encode(e));
        let mut basis = Vec::new();
        for c in 0..form.rank() {
            let best = elems
                .iter()
                .filter(|x| x[..c].iter().all(|&v| v == 0) && x[c] != 0)
                .min_by(|a, b| (a[c], &a[c + 1..]).cmp(&(b[c], &b[c + 1..])));
            if let Some(b) = best {
                basis.push(b.clone());
            }
        }
        Subgroup { basis, order: elems.len() as u64, elems, bits }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    /// Members in index order.
    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn contains(&self, form: &FiniteForm, x: &[u64]) -> bool {
        form.contains(x) && self.bits.get(form.encode(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn meets_trivially(&self, other: &Subgroup) -> bool {
        self.bits.and_count(&other.bits) == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.and_count(&other.bits) as u64 == self.order
    }

    pub fn is_t_invariant(&self, form: &FiniteForm) -> bool {
        self.basis.iter().all(|b| self.contains(form, &form.apply_t(b)))
    }

    pub fn image_under_t(&self, form: &FiniteForm) -> Subgroup {
        let gens: Vec<Element> = self.basis.iter().map(|b| form.apply_t(b)).collect();
        form.span(&gens)
    }

    pub fn is_isotropic(&self, form: &FiniteForm) -> bool {
        self.basis.iter().all(|a| self.basis.iter().all(|b| form.pair(a, b) == 0))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "<0>");
        }
        let gens: Vec<String> = self.basis.iter().map(|b| format!("({})", b.iter().map(u64::to_string).collect::<Vec<_>>().join(","))).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Serializable view of a subgroup.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub order: u64,
    pub basis: Vec<Element>,
}

impl From<&Subgroup> for SubgroupRecord {
    fn from(s: &Subgroup) -> Self {
        SubgroupRecord { order: s.order, basis: s.basis.clone() }
    }
}

/// Every subgroup exactly once, sorted by (order, canonical basis).
pub fn subgroups(form: &FiniteForm) -> Vec<Subgroup> {
    let cyclic = form.cyclic_generators(|_| true);
    form.enumerate(&cyclic, |_, _| true)
}

/// Every isotropic subgroup, sorted by (order, canonical basis).
pub fn isotropic_subgroups(form: &FiniteForm) -> Vec<Subgroup> {
    let cyclic = form.cyclic_generators(|g| form.pair(g, g) == 0);
    form.enumerate(&cyclic, |s, g| s.basis.iter().all(|b| form.pair(b, g) == 0))
}

/// Full annihilator of P under the linking form.
pub fn orthogonal_complement(form: &FiniteForm, p: &Subgroup) -> Subgroup {
    let k = form.rank();
    let n = form.exponent as u128;
    // lambda(b, e_j) for each basis element b
    let rows: Vec<Vec<u128>> = p
        .basis
        .iter()
        .map(|b| (0..k).map(|j| form.pair(b, &(0..k).map(|i| u64::from(i == j)).collect::<Vec<_>>()) as u128).collect())
        .collect();
    let mut bits = Bits::new(form.size);
    let mut elems = Vec::new();
    let mut y = form.zero();
    for idx in 0..form.size {
        if rows.iter().all(|w| w.iter().zip(&y).map(|(a, c)| a * *c as u128).sum::<u128>() % n == 0) {
            bits.set(idx);
            elems.push(y.clone());
        }
        // odometer in index order, last coordinate fastest
        for i in (0..k).rev() {
            y[i] += 1;
            if y[i] < form.orders[i] {
                break;
            }
            y[i] = 0;
        }
    }
    Subgroup::from_members(form, elems, bits)
}

/// Isotropic with |P|^2 = |H|.
pub fn is_metabolizer(form: &FiniteForm, p: &Subgroup) -> bool {
    (p.order as u128) * (p.order as u128) == form.size as u128 && p.is_isotropic(form)
}

/// P = P^perp, straight from the definition.
pub fn is_metabolizer_by_definition(form: &FiniteForm, p: &Subgroup) -> bool {
    orthogonal_complement(form, p) == *p
}

pub fn metabolizers(form: &FiniteForm, lambda_invariant: bool) -> Vec<Subgroup> {
    let root = (form.size as f64).sqrt().round() as u64;
    if root * root != form.size as u64 {
        return Vec::new();
    }
    isotropic_subgroups(form)
        .into_iter()
        .filter(|p| p.order == root && (!lambda_invariant || p.is_t_invariant(form)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetabolizerPair {
    pub first: Subgroup,
    pub second: Subgroup,
}

impl MetabolizerPair {
    /// Elements of G1 union G2, each once, in index order.
    pub fn union_elements(&self, form: &FiniteForm) -> Vec<Element> {
        let mut out: Vec<Element> = self.first.elems.clone();
        out.extend(self.second.elems.iter().filter(|e| !self.first.contains(form, e)).cloned());
        out.sort_by_key(|e| form.encode(e));
        out
    }
}

/// Unordered pairs of (t-invariant when asked) metabolizers with trivial
/// intersection, hence H = G1 + G2.
pub fn metabolizer_pairs(form: &FiniteForm, lambda_invariant: bool) -> Vec<MetabolizerPair> {
    let mets = metabolizers(form, lambda_invariant);
    let mut out = Vec::new();
    for i in 0..mets.len() {
        for j in i..mets.len() {
            if i == j && !mets[i].is_trivial() {
                continue;
            }
            if mets[i].meets_trivially(&mets[j]) && mets[i].order * mets[j].order == form.size as u64 {
                out.push(MetabolizerPair { first: mets[i].clone(), second: mets[j].clone() });
            }
        }
    }
    out
}
