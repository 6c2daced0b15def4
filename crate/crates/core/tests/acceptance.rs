//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use splitknot::corpus;
use splitknot::cover::{build_presentation, cover_homology, frac_mod1, homology, FormSign, LinkedGroup};
use splitknot::dinv::{
    canonical_lens_index, dbar, dtable_sum, lens_conjugate, lens_d, two_bridge_dtable, DBarValue, DRecord, Datum,
};
use splitknot::knot::{pairwise_coprime_polys, KnotExpr, PairStatus, SeifertMatrix, TwoBridge};
use splitknot::laurent::{cyclotomic, poly, resultant_order, LaurentPoly};
use splitknot::library::{DRecordFile, DSources};
use splitknot::linalg::{det, IntMatrix};
use splitknot::linkform::{
    is_metabolizer, is_metabolizer_by_definition, metabolizer_pairs, metabolizers, subgroups, FiniteForm, SubgroupRecord,
    DEFAULT_CAP,
};
use splitknot::obstruct::{check_expr, split_doubly_slice, verify, CheckKind, Conventions, Status, Witness};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, format!("took {:?}, limit {:?}", t, limit))
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn k946() -> SeifertMatrix {
    SeifertMatrix::from_i64(&[&[0, 2], &[1, 0]]).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let h = cover_homology(&k946(), 3, FormSign::Negative).map_err(|e| e.to_string())?;
    ensure(h.factors() == [BigInt::from(7), BigInt::from(7)], format!("group {}", h))?;
    let form = FiniteForm::new(&h, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let mets = metabolizers(&form, false);
    ensure(mets.len() == 2, format!("{} metabolizers", mets.len()))?;
    let pairs = metabolizer_pairs(&form, false);
    ensure(pairs.len() == 1, format!("{} pairs", pairs.len()))?;
    within(start, Duration::from_secs(1))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let lib = corpus::library();
    let d = corpus::d_sources().map_err(|e| e.to_string())?;
    let conv = Conventions::default();
    let k = lib.resolve("K").map_err(|e| e.to_string())?;
    let v = check_expr(&k, 3, CheckKind::DoublyVanishing, &d, &conv).map_err(|e| e.to_string())?;
    ensure(v.status == Status::Obstructed, format!("check gave {:?}", v.status))?;
    let Witness::NonzeroOnEvery { candidates } = &v.witness else { return Err(format!("witness {:?}", v.witness)) };
    ensure(candidates.iter().all(|c| c.evidence.contains("<= -3/2")), "witness does not cite the bound")?;
    verify(&v).map_err(|e| e.to_string())?;

    let e = lib.parse_expr("K + (-1)K_3").map_err(|e| e.to_string())?;
    let s = split_doubly_slice(&e, &[2, 3], &d, &conv).map_err(|e| e.to_string())?;
    ensure(s.status == Status::Obstructed, format!("split gave {:?}", s.status))?;
    let Witness::Split { coprimality, rest, .. } = &s.witness else { return Err("split witness missing".into()) };
    ensure(coprimality.all_coprime() && coprimality.verify(), "coprimality certificates")?;
    ensure(rest.c != BigInt::zero(), "rest certificate")?;
    verify(&s).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1))
}

/// f1 * p + f2 * q, multiplied out here rather than through the library.
fn bezout_value(f1: &LaurentPoly, p: &LaurentPoly, f2: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    &(f1 * p) + &(f2 * q)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let phi6 = cyclotomic(6);
    let phi10 = cyclotomic(10);
    let phi14 = cyclotomic(14);
    let delta_k = &poly(&[-1, 2]) * &poly(&[-2, 1]);
    let polys = vec![delta_k, &phi6 * &phi6, &phi10 * &phi10, &phi14 * &phi14];
    let m = pairwise_coprime_polys(&polys).map_err(|e| e.to_string())?;
    ensure(m.pairs.len() == 6, "pair count")?;
    for pc in &m.pairs {
        let PairStatus::Coprime(c) = &pc.status else { return Err(format!("pair {}-{} not coprime", pc.i, pc.j)) };
        let lhs = bezout_value(&c.f1, &polys[pc.i], &c.f2, &polys[pc.j]);
        let want = LaurentPoly::constant(BigRational::from_integer(c.c.clone()));
        ensure(c.c != BigInt::zero() && lhs == want, format!("certificate {}-{} does not re-multiply", pc.i, pc.j))?;
        ensure(c.f1.is_integral() && c.f2.is_integral(), "non-integral certificate")?;
    }
    let same = pairwise_coprime_polys(&[&phi6 * &phi6, &phi6 * &phi6]).map_err(|e| e.to_string())?;
    ensure(!same.all_coprime(), "identical summands reported coprime")?;
    within(start, Duration::from_secs(1))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mats = common::corpus();
    ensure(mats.len() >= 50, "corpus too small")?;
    let mut checked = 0;
    for v in &mats {
        let delta = v.alexander();
        for &q in &common::DEGREES {
            let pres = build_presentation(v, q).map_err(|e| e.to_string())?;
            let order = det(&pres.l).map_err(|e| e.to_string())?;
            let res = resultant_order(&delta, q).map_err(|e| e.to_string())?;
            let abs = if order < BigInt::zero() { -order } else { order };
            ensure(abs == res, format!("|coker L_{}| = {} but resultant {} for {:?}", q, abs, res, v.matrix()))?;
            checked += 1;
        }
    }
    ensure(checked >= 350, "not every pair checked")?;
    within(start, Duration::from_secs(60))
}

fn apply(t: &IntMatrix, x: &[BigInt], h: &LinkedGroup) -> Vec<BigInt> {
    let y = t.mul_vec(x).unwrap();
    y.iter().zip(h.factors()).map(|(a, d)| num_integer::Integer::mod_floor(a, d)).collect()
}

fn unit(k: usize, i: usize) -> Vec<BigInt> {
    (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
}

fn criterion_5() -> Outcome {
    for v in &common::corpus() {
        for &q in &common::DEGREES {
            let pres = build_presentation(v, q).map_err(|e| e.to_string())?;
            ensure(pres.l.is_symmetric(), "L_q not symmetric")?;
            pres.verify().map_err(|e| e.to_string())?;
            let h = homology(&pres, FormSign::Negative).map_err(|e| e.to_string())?;
            let k = h.rank();
            let t = h.t_action();
            for i in 0..k {
                // t^q = id and the norm 1 + t + ... + t^{q-1} vanishes
                let mut x = unit(k, i);
                let mut norm = vec![BigInt::zero(); k];
                for _ in 0..q {
                    norm = norm.iter().zip(&x).map(|(a, b)| a + b).collect();
                    x = apply(t, &x, &h);
                }
                ensure(x == unit(k, i), format!("t^{} != id", q))?;
                let norm: Vec<BigInt> = norm.iter().zip(h.factors()).map(|(a, d)| num_integer::Integer::mod_floor(a, d)).collect();
                ensure(norm.iter().all(Zero::is_zero), "norm does not annihilate")?;
                if q == 2 {
                    let neg: Vec<BigInt> = unit(k, i).iter().zip(h.factors()).map(|(a, d)| num_integer::Integer::mod_floor(&-a, d)).collect();
                    ensure(apply(t, &unit(k, i), &h) == neg, "t != -id at q = 2")?;
                }
                for j in 0..k {
                    let a = h.lambda(&apply(t, &unit(k, i), &h), &apply(t, &unit(k, j), &h));
                    ensure(frac_mod1(&(a - h.lambda(&unit(k, i), &unit(k, j)))).is_zero(), "t does not preserve the form")?;
                }
            }
            // nonsingularity, exhaustively where the group is small
            if h.order() <= BigInt::from(2500) {
                let form = FiniteForm::new(&h, DEFAULT_CAP).map_err(|e| e.to_string())?;
                let gens: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
                for x in form.elements().skip(1) {
                    ensure(gens.iter().any(|g| form.pair(&x, g) != 0), "linking form is singular")?;
                }
            }
            h.verify().map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut groups = 0;
    let mut subs_checked = 0usize;
    for v in &common::corpus() {
        for &q in &common::DEGREES {
            let h = cover_homology(v, q, FormSign::Negative).map_err(|e| e.to_string())?;
            if h.order() > BigInt::from(2500) {
                continue;
            }
            let form = FiniteForm::new(&h, DEFAULT_CAP).map_err(|e| e.to_string())?;
            for p in subgroups(&form) {
                ensure(
                    is_metabolizer(&form, &p) == is_metabolizer_by_definition(&form, &p),
                    format!("routes disagree on {} in {}", p, h),
                )?;
                subs_checked += 1;
            }
            groups += 1;
        }
    }
    ensure(groups > 100 && subs_checked > groups, format!("only {} groups / {} subgroups", groups, subs_checked))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    ensure(lens_d(1, 0).map_err(|e| e.to_string())? == vec![r(0, 1)], "L(1,0)")?;
    ensure(lens_d(2, 1).map_err(|e| e.to_string())? == vec![r(1, 4), r(-1, 4)], "L(2,1)")?;
    for p in (3..=25u64).step_by(2) {
        for q in (1..p).filter(|q| num_integer::gcd(p, *q) == 1) {
            let d = lens_d(p, q).map_err(|e| e.to_string())?;
            let fixed: Vec<u64> = (0..p).filter(|&i| lens_conjugate(p, q, i) == i).collect();
            ensure(fixed == vec![canonical_lens_index(p, q)], format!("fixed points of L({},{})", p, q))?;
            for i in 0..p {
                ensure(d[i as usize] == d[lens_conjugate(p, q, i) as usize], format!("symmetry of L({},{})", p, q))?;
            }
            let k = TwoBridge::new(p, q).map_err(|e| e.to_string())?;
            let db = dbar(&two_bridge_dtable(&k, FormSign::Negative).map_err(|e| e.to_string())?);
            for a in 0..p {
                ensure(db.get(&[a]) == db.get(&[(p - a) % p]), format!("d-bar(a) != d-bar(-a) for b({},{})", p, q))?;
            }
        }
    }
    let knots = [TwoBridge::new(3, 1).unwrap(), TwoBridge::new(9, 2).unwrap()];
    for a in &knots {
        for b in &knots {
            let ta = two_bridge_dtable(a, FormSign::Negative).map_err(|e| e.to_string())?;
            let tb = two_bridge_dtable(b, FormSign::Negative).map_err(|e| e.to_string())?;
            let sum = dbar(&dtable_sum(&ta, &tb).map_err(|e| e.to_string())?);
            let (da, dbb) = (dbar(&ta), dbar(&tb));
            for x in 0..a.p {
                for y in 0..b.p {
                    let (DBarValue::Exact(u), DBarValue::Exact(w)) = (da.get(&[x]), dbb.get(&[y])) else {
                        return Err("two-bridge tables must be exact".into());
                    };
                    ensure(sum.get(&[x, y]) == DBarValue::Exact(u + w), "d-bar additivity")?;
                }
            }
        }
    }
    within(start, Duration::from_secs(10))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let lib = corpus::library();
    let none = DSources::new();
    let conv = Conventions::default();
    let run = |name: &str| -> Result<_, String> {
        let v = check_expr(&lib.resolve(name).map_err(|e| e.to_string())?, 2, CheckKind::Slice, &none, &conv)
            .map_err(|e| e.to_string())?;
        verify(&v).map_err(|e| e.to_string())?;
        Ok(v)
    };
    let v = run("trefoil")?;
    ensure(v.status == Status::Obstructed && v.witness == Witness::NoMetabolizer, "trefoil")?;
    ensure(v.group.as_ref().map(|g| g.factors.clone()) == Some(vec![3]), "trefoil group")?;
    let v = run("stevedore")?;
    let three = SubgroupRecord { order: 3, basis: vec![vec![3]] };
    ensure(v.status == Status::NotObstructed && v.witness == Witness::Vanishing { subgroups: vec![three] }, "stevedore")?;
    let table = two_bridge_dtable(&TwoBridge::new(9, 2).unwrap(), FormSign::Negative).map_err(|e| e.to_string())?;
    let db = dbar(&table);
    ensure([0, 3, 6].iter().all(|&a| db.get(&[a]) == DBarValue::Exact(r(0, 1))), "d-bar on <3>")?;
    let v = run("unknot")?;
    ensure(v.status == Status::NotObstructed, "unknot")?;
    within(start, Duration::from_secs(1))
}

fn criterion_9() -> Outcome {
    let lib = corpus::library();
    let conv = Conventions::default();
    let mut subjects: Vec<KnotExpr> = vec![lib.resolve("stevedore").unwrap(), lib.resolve("stevedore_sf").unwrap()];
    for q in [1, 4, 5, 7, 8] {
        let k = TwoBridge::new(9, q).unwrap();
        subjects.push(KnotExpr::Leaf(splitknot::knot::Knot::new(format!("b9_{}", q), splitknot::knot::Descriptor::TwoBridge(k))));
    }
    for e in &subjects {
        let table = splitknot::obstruct::cover_table(e, 2, &DSources::new(), &conv).map_err(|x| x.to_string())?;
        let h = table.map_err(|x| x)?.host().clone();
        ensure(h.factors() == [BigInt::from(9)], format!("{} has group {}", e, h))?;
        // empty, all-zero and arbitrary d-data
        let name = e.terms()[0].0.name.clone();
        let datasets: Vec<Vec<DRecord>> = vec![
            vec![],
            (0..9).map(|a| DRecord { element: vec![a], datum: Datum::Value(r(0, 1)), provenance: "zero".into() }).collect(),
            (0..9).map(|a| DRecord { element: vec![a], datum: Datum::Value(r(a as i64, 7)), provenance: "noise".into() }).collect(),
        ];
        for recs in datasets {
            let mut d = DSources::new();
            if !matches!(e.terms()[0].0.descriptor, splitknot::knot::Descriptor::TwoBridge(_)) {
                d.add(DRecordFile { knot: name.clone(), q: 2, records: recs });
            }
            let v = check_expr(e, 2, CheckKind::DoublyVanishing, &d, &conv).map_err(|x| x.to_string())?;
            ensure(v.status == Status::Obstructed && v.witness == Witness::NoMetabolizerPair, format!("{}: {:?}", e, v.witness))?;
            verify(&v).map_err(|x| x.to_string())?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("9_46 pipeline: Z/7 + Z/7, 2 metabolizers, 1 pair", criterion_1),
        ("obstruction replay: doubly-vanishing and split OBSTRUCTED", criterion_2),
        ("coprimality matrix with re-multiplied Bezout certificates", criterion_3),
        ("order identity |coker L_q| = |res(Delta, 1 + ... + t^(q-1))|", criterion_4),
        ("structural invariants of L_q, deck action and form", criterion_5),
        ("metabolizer oracle equivalence (isotropy + order vs P = P^perp)", criterion_6),
        ("lens/d suite: base cases, symmetry, d-bar symmetry, additivity", criterion_7),
        ("slice sanity: trefoil, stevedore, unknot", criterion_8),
        ("cyclic Z/9 double covers are obstructed for doubly vanishing", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(()) => println!("PASS  criterion {}: {} ({:.2?})", i + 1, name, elapsed),
            Err(m) => {
                failures += 1;
                println!("FAIL  criterion {}: {} ({:.2?}): {}", i + 1, name, elapsed, m);
            }
        }
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failures, failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
