//! wasm-bindgen entry points for the static explorer page.
//!
//! Every function takes plain arguments and returns a JSON string, either
//! `{"ok": true, ...}` or `{"ok": false, "error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use splitknot::corpus;
use splitknot::dinv::{canonical_lens_index, lens_conjugate, lens_d};
use splitknot::knot::{pairwise_coprime_polys, PairStatus};
use splitknot::laurent::LaurentPoly;
use splitknot::library::KnotLibrary;
use splitknot::linkform::{metabolizer_pairs, metabolizers, FiniteForm};
use splitknot::obstruct::{cover_table, Conventions};
use splitknot::library::DSources;

/// Groups larger than this are refused so the page stays responsive.
pub const WEB_CAP: u64 = 4096;
/// The pairing grid is only drawn for groups this small.
pub const GRID_MAX: usize = 64;

fn finish(r: Result<Value, String>) -> String {
    let v = match r {
        Ok(Value::Object(mut m)) => {
            m.insert("ok".into(), Value::Bool(true));
            Value::Object(m)
        }
        Ok(other) => other,
        Err(e) => json!({ "ok": false, "error": e }),
    };
    v.to_string()
}

/// A corpus expression, or a bare Seifert matrix written as JSON.
fn library_and_expr(input: &str) -> Result<(KnotLibrary, String), String> {
    let mut lib = corpus::library();
    let text = input.trim();
    if text.starts_with('[') {
        let matrix: Value = serde_json::from_str(text).map_err(|e| format!("matrix: {}", e))?;
        let file = json!({ "knots": [{ "name": "input", "kind": "seifert", "matrix": matrix }] });
        lib.load_json(&file.to_string(), true).map_err(|e| e.to_string())?;
        return Ok((lib, "input".into()));
    }
    Ok((lib, text.to_string()))
}

fn coords(x: &[u64]) -> String {
    let parts: Vec<String> = x.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

fn cover_value(input: &str, q: u32, lambda: bool) -> Result<Value, String> {
    let (lib, name) = library_and_expr(input)?;
    let expr = lib.parse_expr(&name).map_err(|e| e.to_string())?;
    let conv = Conventions { cap: WEB_CAP, ..Conventions::default() };
    let table = cover_table(&expr, q as u64, &DSources::new(), &conv).map_err(|e| e.to_string())??;
    let h = table.host();
    let form = FiniteForm::new(h, WEB_CAP).map_err(|e| e.to_string())?;
    let elements: Vec<Vec<u64>> = form.elements().collect();
    let (labels, grid, t_image) = if elements.len() <= GRID_MAX {
        let labels: Vec<String> = elements.iter().map(|x| coords(x)).collect();
        let grid: Vec<Vec<String>> =
            elements.iter().map(|x| elements.iter().map(|y| form.lambda(x, y).to_string()).collect()).collect();
        let t_image: Vec<usize> = elements.iter().map(|x| form.encode(&form.apply_t(x))).collect();
        (labels, grid, t_image)
    } else {
        (Vec::new(), Vec::new(), Vec::new())
    };
    let mets = metabolizers(&form, lambda);
    let mets_json: Vec<Value> = mets
        .iter()
        .map(|m| {
            json!({
                "text": m.to_string(),
                "order": m.order(),
                "invariant": m.is_t_invariant(&form),
                "elements": m.elements().iter().map(|x| form.encode(x)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let pairs: Vec<Value> = metabolizer_pairs(&form, lambda)
        .iter()
        .map(|p| json!([p.first.to_string(), p.second.to_string()]))
        .collect();
    Ok(json!({
        "subject": expr.to_string(),
        "alexander": expr.alexander().to_string(),
        "q": q,
        "group": h.describe(),
        "orders": form.orders(),
        "size": form.size(),
        "labels": labels,
        "grid": grid,
        "t_image": t_image,
        "metabolizers": mets_json,
        "pairs": pairs,
    }))
}

/// Cover homology, pairing grid, deck action and metabolizers.
#[wasm_bindgen]
pub fn cover_summary(input: &str, q: u32, lambda: bool) -> String {
    finish(cover_value(input, q, lambda))
}

fn lens_value(p: u32, q: u32) -> Result<Value, String> {
    let (p, q) = (p as u64, q as u64);
    let d = lens_d(p, q).map_err(|e| e.to_string())?;
    let q = q % p;
    let conj: Vec<u64> = (0..p).map(|i| lens_conjugate(p, q, i)).collect();
    Ok(json!({
        "p": p,
        "q": q,
        "d": d.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "conjugate": conj,
        "self_conjugate": canonical_lens_index(p, q),
    }))
}

/// Correction terms of L(p, q) for every spin^c index.
#[wasm_bindgen]
pub fn lens_table(p: u32, q: u32) -> String {
    finish(lens_value(p, q))
}

fn coprime_value(expr: &str) -> Result<Value, String> {
    let lib = corpus::library();
    let e = lib.parse_expr(expr).map_err(|e| e.to_string())?;
    let terms = e.terms();
    let polys: Vec<LaurentPoly> = terms.iter().map(|(k, n)| k.alexander().pow(n.unsigned_abs() as u32)).collect();
    let m = pairwise_coprime_polys(&polys).map_err(|e| e.to_string())?;
    let pairs: Vec<Value> = m
        .pairs
        .iter()
        .map(|pc| match &pc.status {
            PairStatus::Coprime(c) => json!({
                "i": pc.i, "j": pc.j, "coprime": true,
                "certificate": format!("({}) * a + ({}) * b = {}", c.f1, c.f2, c.c),
            }),
            PairStatus::CommonFactor(g) => json!({
                "i": pc.i, "j": pc.j, "coprime": false, "gcd": g.to_string(),
            }),
        })
        .collect();
    Ok(json!({
        "terms": terms.iter().zip(&polys).map(|((k, n), p)| json!({
            "name": k.name, "multiplicity": n, "polynomial": p.to_string(),
        })).collect::<Vec<_>>(),
        "pairs": pairs,
        "all_coprime": m.all_coprime(),
        "certified": m.verify(),
    }))
}

/// Pairwise coprimality of the summands' Alexander polynomials.
#[wasm_bindgen]
pub fn coprimality(expr: &str) -> String {
    finish(coprime_value(expr))
}

/// Names in the bundled corpus.
#[wasm_bindgen]
pub fn corpus_names() -> String {
    json!(corpus::library().names().collect::<Vec<_>>()).to_string()
}
