use serde_json::Value;
use splitknot_web::{corpus_names, coprimality, cover_summary, lens_table};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).expect("bindings return JSON")
}

#[test]
fn cover_of_corpus_knot() {
    let v = parse(cover_summary("K946", 3, false));
    assert_eq!(v["ok"], true);
    assert_eq!(v["group"], "Z/7 + Z/7");
    assert_eq!(v["metabolizers"].as_array().unwrap().len(), 2);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 1);
    assert_eq!(v["grid"].as_array().unwrap().len(), 49);
    assert_eq!(v["grid"][0][0], "0");
}

#[test]
fn cover_of_typed_matrix() {
    let v = parse(cover_summary("[[-1, 1], [0, -1]]", 2, false));
    assert_eq!(v["ok"], true);
    assert_eq!(v["group"], "Z/3");
    assert_eq!(v["alexander"], "t^2 - t + 1");
    let bad = parse(cover_summary("[[2]]", 2, false));
    assert_eq!(bad["ok"], false);
    let big = parse(cover_summary("K946", 9, false));
    assert_eq!(big["ok"], false);
}

#[test]
fn lens_values() {
    let v = parse(lens_table(5, 1));
    assert_eq!(v["ok"], true);
    assert_eq!(v["d"][0], "1");
    assert_eq!(v["d"].as_array().unwrap().len(), 5);
    assert_eq!(parse(lens_table(4, 2))["ok"], false);
}

#[test]
fn coprimality_examples() {
    let v = parse(coprimality("K + (-1)K_3"));
    assert_eq!(v["all_coprime"], true);
    assert_eq!(v["certified"], true);
    let w = parse(coprimality("trefoil + trefoil"));
    assert_eq!(w["all_coprime"], false);
    assert_eq!(w["pairs"][0]["gcd"], "t^2 - t + 1");
    assert_eq!(parse(coprimality("K"))["ok"], false);
}

#[test]
fn names_include_examples() {
    let v = parse(corpus_names());
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(names.contains(&"K946") && names.contains(&"K_3"));
}
