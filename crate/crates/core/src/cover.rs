//! First homology of prime-power branched cyclic covers, with the linking
//! form and deck action, computed from a Seifert matrix.
//!
//! The presentation is the symmetric block-tridiagonal matrix `L_q` with
//! diagonal blocks `V + V^T`, superdiagonal blocks `V^T` and subdiagonal
//! blocks `V` (q - 1 block rows). `H_1` is its cokernel, the linking form is
//! `-L_q^{-1}` (sign configurable) and the deck transformation is induced by
//! a signed cyclic block shift that is an exact isometry of `L_q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knot::{SeifertMatrix, TwoBridge};
use crate::linalg::{det, smith_normal_form, IntMatrix};

/// Sign of the linking form relative to `L_q^{-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormSign {
    /// lambda = -L^{-1} mod Z
    #[default]
    Negative,
    /// lambda = +L^{-1} mod Z
    Positive,
}

impl FormSign {
    fn factor(self) -> BigRational {
        match self {
            FormSign::Negative => -BigRational::one(),
            FormSign::Positive => BigRational::one(),
        }
    }
}

/// Returns (p, r) when q = p^r with p prime and r >= 1.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut r = 0;
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

pub fn prime_powers_up_to(max: u64) -> Vec<u64> {
    (2..=max).filter(|&q| prime_power(q).is_some()).collect()
}

#[derive(Clone, Debug)]
pub struct CoverPresentation {
    pub q: u64,
    /// Size of the Seifert matrix (block size).
    pub block: usize,
    pub l: IntMatrix,
    /// Deck action on block coordinates.
    pub tau: IntMatrix,
}

pub fn build_presentation(v: &SeifertMatrix, q: u64) -> Result<CoverPresentation> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    let n = v.size();
    let m = (q - 1) as usize;
    let size = n * m;
    let vm = v.matrix();
    let vt = vm.transpose();
    let sym = v.symmetrized();
    let mut l = IntMatrix::zeros(size, size);
    for i in 0..m {
        l.set_block(i * n, i * n, &sym);
        if i + 1 < m {
            l.set_block(i * n, (i + 1) * n, &vt);
            l.set_block((i + 1) * n, i * n, vm);
        }
    }

    // Shift S: block i -> block i+1, last block -> -(sum of all blocks),
    // conjugated by D = diag(I, -I, I, ...) so that it preserves L exactly.
    let id = IntMatrix::identity(n);
    let mut tau = IntMatrix::zeros(size, size);
    let sgn = |i: usize| if i % 2 == 0 { id.clone() } else { id.neg() };
    for i in 0..m {
        if i + 1 < m {
            // D S D: column block i maps to (-1)^{i} (-1)^{i+1} = -1 times block i+1
            tau.set_block((i + 1) * n, i * n, &id.neg());
        } else {
            for j in 0..m {
                // (-1)^{j} * (-1) * (-1)^{m-1}
                let s = if (j + m) % 2 == 0 { sgn(0) } else { sgn(1) };
                tau.set_block(j * n, i * n, &s);
            }
        }
    }
    let pres = CoverPresentation { q, block: n, l, tau };
    pres.verify()?;
    Ok(pres)
}

impl CoverPresentation {
    pub fn size(&self) -> usize {
        self.l.rows()
    }

    /// Symmetry, nondegeneracy and the block deck-action identities.
    pub fn verify(&self) -> Result<()> {
        let size = self.size();
        if !self.l.is_symmetric() {
            return Err(Error::Consistency("L_q is not symmetric".into()));
        }
        if det(&self.l)?.is_zero() {
            return Err(Error::DegenerateCover(self.q));
        }
        let id = IntMatrix::identity(size);
        if self.tau.pow(self.q as u32) != id {
            return Err(Error::Consistency("tau^q != I".into()));
        }
        if &(&self.tau.transpose() * &self.l) * &self.tau != self.l {
            return Err(Error::Consistency("tau does not preserve L_q".into()));
        }
        let mut norm = IntMatrix::zeros(size, size);
        let mut pw = id;
        for _ in 0..self.q {
            norm = norm.add(&pw);
            pw = &pw * &self.tau;
        }
        if !norm.is_zero() {
            return Err(Error::Consistency("1 + tau + ... + tau^{q-1} != 0".into()));
        }
        Ok(())
    }

    /// Deck action on the cokernel of L (the contragredient of tau).
    pub fn cokernel_action(&self) -> IntMatrix {
        self.tau.pow(self.q as u32 - 1).transpose()
    }
}

/// Finite abelian group with a nonsingular Q/Z-valued linking form and a
/// deck action, all in cyclic-factor coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkedGroup {
    q: u64,
    factors: Vec<BigInt>,
    gram: Vec<Vec<BigRational>>,
    t_action: IntMatrix,
}

pub fn frac_mod1(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(x.floor().to_integer())
}

impl LinkedGroup {
    /// Builds and verifies a linked group. Entries are reduced mod Z (form)
    /// and mod the row's factor (action).
    pub fn new(q: u64, factors: Vec<BigInt>, gram: Vec<Vec<BigRational>>, t_action: IntMatrix) -> Result<Self> {
        let k = factors.len();
        if gram.len() != k || gram.iter().any(|r| r.len() != k) || t_action.rows() != k || t_action.cols() != k {
            return Err(Error::DimensionMismatch(format!("linked group with {} factors", k)));
        }
        if factors.iter().any(|d| d <= &BigInt::one()) {
            return Err(Error::Consistency("cyclic factors must exceed 1".into()));
        }
        let gram = gram.iter().map(|r| r.iter().map(frac_mod1).collect()).collect();
        let mut t = t_action;
        for i in 0..k {
            for j in 0..k {
                t[(i, j)] = t[(i, j)].mod_floor(&factors[i]);
            }
        }
        let g = LinkedGroup { q, factors, gram, t_action: t };
        g.verify()?;
        Ok(g)
    }

    pub fn trivial(q: u64) -> Self {
        LinkedGroup { q, factors: vec![], gram: vec![], t_action: IntMatrix::zeros(0, 0) }
    }

    /// Double branched cover of b(p, q): Z/p with lambda(g, g) = -q/p and deck
    /// action -1.
    pub fn two_bridge(k: &TwoBridge, sign: FormSign) -> Result<Self> {
        if k.p == 1 {
            return Ok(Self::trivial(2));
        }
        let p = BigInt::from(k.p);
        let g = BigRational::new(BigInt::from(k.q), p.clone()) * sign.factor();
        Self::new(2, vec![p], vec![vec![g]], IntMatrix::from_i64(&[&[-1]]))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn gram(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    pub fn t_action(&self) -> &IntMatrix {
        &self.t_action
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    /// Invariant factors d_1 | d_2 | ... of the group (ignoring the chosen
    /// cyclic decomposition).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let snf = smith_normal_form(&IntMatrix::diagonal(&self.factors));
        snf.diagonal().into_iter().filter(|d| d != &BigInt::one()).collect()
    }

    /// lambda(x, y) mod Z for coordinate vectors.
    pub fn lambda(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += &self.gram[i][j] * BigRational::from_integer(xi * yj);
            }
        }
        frac_mod1(&acc)
    }

    pub fn apply_t(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.t_action.mul_vec(x).expect("dimension");
        y.iter().zip(&self.factors).map(|(v, d)| v.mod_floor(d)).collect()
    }

    /// Flips the sign of the form.
    pub fn with_sign_flipped(&self) -> Self {
        let gram = self.gram.iter().map(|r| r.iter().map(|x| frac_mod1(&-x)).collect()).collect();
        LinkedGroup { gram, ..self.clone() }
    }

    fn reduced_mod_rows(&self, m: &IntMatrix) -> IntMatrix {
        let mut out = m.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = m[(i, j)].mod_floor(&self.factors[i]);
            }
        }
        out
    }

    /// Checks symmetry, integrality, nonsingularity, and the deck-action
    /// identities.
    pub fn verify(&self) -> Result<()> {
        let k = self.rank();
        let fail = |m: &str| Err(Error::Consistency(m.to_string()));
        for i in 0..k {
            for j in 0..k {
                if self.gram[i][j] != self.gram[j][i] {
                    return fail("linking form is not symmetric");
                }
                let di = BigRational::from_integer(self.factors[i].clone());
                let dj = BigRational::from_integer(self.factors[j].clone());
                if !(&self.gram[i][j] * &di).is_integer() || !(&self.gram[i][j] * &dj).is_integer() {
                    return fail("linking form is not well defined on the cyclic factors");
                }
            }
        }
        // adjoint map x -> lambda(x, .) onto (+) Z/d_j is surjective iff the
        // rows d_j * gram[i][j] together with d_j e_j span Z^k
        let mut span = IntMatrix::zeros(2 * k, k);
        for i in 0..k {
            for j in 0..k {
                let n = &self.gram[i][j] * BigRational::from_integer(self.factors[j].clone());
                span[(i, j)] = n.to_integer();
            }
            span[(k + i, i)] = self.factors[i].clone();
        }
        if smith_normal_form(&span).diagonal().iter().any(|d| !d.is_one()) {
            return fail("linking form is singular");
        }

        let t = &self.t_action;
        for i in 0..k {
            for j in 0..k {
                let ti: Vec<BigInt> = (0..k).map(|r| t[(r, i)].clone()).collect();
                let tj: Vec<BigInt> = (0..k).map(|r| t[(r, j)].clone()).collect();
                if self.lambda(&ti, &tj) != self.gram[i][j] {
                    return fail("deck action does not preserve the linking form");
                }
            }
        }
        let id = IntMatrix::identity(k);
        if self.reduced_mod_rows(&t.pow(self.q as u32)) != self.reduced_mod_rows(&id) {
            return fail("t^q != 1 on the group");
        }
        let mut norm = IntMatrix::zeros(k, k);
        let mut pw = id.clone();
        for _ in 0..self.q {
            norm = norm.add(&pw);
            pw = &pw * t;
        }
        if !self.reduced_mod_rows(&norm).is_zero() {
            return fail("1 + t + ... + t^{q-1} != 0 on the group");
        }
        if self.q == 2 && self.reduced_mod_rows(t) != self.reduced_mod_rows(&id.neg()) {
            return fail("deck action at q = 2 is not -1");
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        if self.factors.is_empty() {
            "0".to_string()
        } else {
            self.factors.iter().map(|d| format!("Z/{}", d)).collect::<Vec<_>>().join(" + ")
        }
    }
}

impl fmt::Display for LinkedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Cokernel of L_q with transported form and deck action.
pub fn homology(pres: &CoverPresentation, sign: FormSign) -> Result<LinkedGroup> {
    let snf = smith_normal_form(&pres.l);
    let diag = snf.diagonal();
    if diag.iter().any(Zero::is_zero) {
        return Err(Error::DegenerateCover(pres.q));
    }
    let keep: Vec<usize> = (0..diag.len()).filter(|&i| !diag[i].is_one()).collect();
    let factors: Vec<BigInt> = keep.iter().map(|&i| diag[i].clone()).collect();

    // L^{-1} = W D^{-1} U, so on generators U^{-1} e_i the form is
    // -(U^{-T} W)_{ij} / d_j.
    let m = &snf.u_inv.transpose() * &snf.w;
    let s = sign.factor();
    let gram: Vec<Vec<BigRational>> = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| &s * BigRational::new(m[(i, j)].clone(), diag[j].clone())).collect())
        .collect();

    let action = &(&snf.u * &pres.cokernel_action()) * &snf.u_inv;
    let mut t = IntMatrix::zeros(keep.len(), keep.len());
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            t[(a, b)] = action[(i, j)].clone();
        }
    }
    let g = LinkedGroup::new(pres.q, factors, gram, t)?;
    let det_l = det(&pres.l)?.abs();
    if g.order() != det_l {
        return Err(Error::Consistency(format!("|H| = {} but |det L| = {}", g.order(), det_l)));
    }
    Ok(g)
}

/// Convenience: presentation plus homology.
pub fn cover_homology(v: &SeifertMatrix, q: u64, sign: FormSign) -> Result<LinkedGroup> {
    if v.size() == 0 {
        if prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
        return Ok(LinkedGroup::trivial(q));
    }
    homology(&build_presentation(v, q)?, sign)
}

/// Orthogonal direct sum.
pub fn direct_sum(a: &LinkedGroup, b: &LinkedGroup) -> Result<LinkedGroup> {
    if a.q != b.q {
        return Err(Error::MismatchedQ(a.q, b.q));
    }
    let (ka, kb) = (a.rank(), b.rank());
    let mut factors = a.factors.clone();
    factors.extend(b.factors.iter().cloned());
    let mut gram = vec![vec![BigRational::zero(); ka + kb]; ka + kb];
    for i in 0..ka {
        for j in 0..ka {
            gram[i][j] = a.gram[i][j].clone();
        }
    }
    for i in 0..kb {
        for j in 0..kb {
            gram[ka + i][ka + j] = b.gram[i][j].clone();
        }
    }
    LinkedGroup::new(a.q, factors, gram, a.t_action.block_diag(&b.t_action))
}
