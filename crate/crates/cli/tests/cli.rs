use std::process::{Command, Output};

use catgame_core::{is_optimal, ConditionalProbs, Frequencies};
use serde_json::Value;

fn catgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catgame")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = catgame(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn sample_header_and_rows() {
    let text = stdout(&["sample", "--n-samples", "50", "--seed", "3"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("z_re,z_im,x1,x2,x3,p02,p01,p10,q0,q1,q2,class"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 50);
    for row in rows {
        assert_eq!(row.split(',').count(), 12, "{row}");
    }
}

#[test]
fn sampled_frequencies_are_optimal() {
    for model in ["classical", "quantum-pure", "quantum-mixed"] {
        let text = stdout(&["sample", "--model", model, "--n-samples", "2000", "--seed", "11"]);
        let mut checked = 0;
        for row in text.lines().skip(1) {
            let f: Vec<&str> = row.split(',').collect();
            if f[8].is_empty() {
                assert!(f[11] == "out-of-simplex" || f[11] == "singular", "{row}");
                continue;
            }
            let n = |i: usize| f[i].parse::<f64>().unwrap();
            let p = ConditionalProbs::new(n(5), n(6), n(7));
            let q = Frequencies::with_tolerance(n(8), n(9), n(10), 1e-9).unwrap();
            assert!(is_optimal(&p, &q, 1e-6), "{row}");
            checked += 1;
        }
        assert!(checked > 500, "{model}: {checked}");
    }
}

#[test]
fn pure_samples_carry_stereographic_parameter() {
    let text = stdout(&["sample", "--model", "quantum-pure", "--n-samples", "200"]);
    for row in text.lines().skip(1) {
        let f: Vec<&str> = row.split(',').collect();
        assert!(!f[0].is_empty() && !f[1].is_empty(), "{row}");
        let r2: f64 = (2..5).map(|i| f[i].parse::<f64>().unwrap().powi(2)).sum();
        assert!((r2 - 1.0).abs() < 1e-12);
    }
    let text = stdout(&["sample", "--model", "classical", "--n-samples", "5"]);
    for row in text.lines().skip(1) {
        assert!(row.starts_with(",,"), "{row}");
    }
}

#[test]
fn filter_restricts_sample_classes() {
    let text = stdout(&["sample", "--model", "classical", "--filter", "intransitive-i", "--n-samples", "400"]);
    for row in text.lines().skip(1) {
        assert!(row.ends_with(",intransitive-I"), "{row}");
    }
}

#[test]
fn sample_output_is_deterministic() {
    let base = ["sample", "--model", "quantum-mixed", "--n-samples", "20000", "--seed", "9"];
    let a = catgame(&[&base[..], &["--threads", "1"]].concat()).stdout;
    let b = catgame(&[&base[..], &["--threads", "4"]].concat()).stdout;
    let c = catgame(&base).stdout;
    assert_eq!(a, b);
    assert_eq!(a, c);
    let other = catgame(&["sample", "--model", "quantum-mixed", "--n-samples", "20000", "--seed", "10"]).stdout;
    assert_ne!(a, other);
}

#[test]
fn area_json_keys_and_forward_determinism() {
    let text = stdout(&["area", "--grid", "32"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in [
        "model",
        "method",
        "grid_n",
        "n_samples",
        "seed",
        "fraction_all",
        "fraction_intransitive_any",
        "fraction_intransitive_i",
        "fraction_intransitive_ii",
        "fraction_transitive",
        "fraction_overlap",
        "lens_estimate",
    ] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(v["method"], "oracle");
    assert!(v["n_samples"].is_null());

    let args = ["area", "--method", "forward", "--model", "classical", "--grid", "32", "--n-samples", "50000", "--seed", "4"];
    let a = catgame(&[&args[..], &["--threads", "1"]].concat()).stdout;
    let b = catgame(&[&args[..], &["--threads", "3"]].concat()).stdout;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["n_samples"], 50000);
    assert_eq!(v["seed"], 4);
}

#[test]
fn area_csv_lists_keys_in_order() {
    let text = stdout(&["area", "--grid", "16", "--format", "csv", "--model", "classical"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("key,value"));
    let keys: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(keys[0], "model");
    assert_eq!(keys[5], "fraction_all");
    assert_eq!(keys.last(), Some(&"lens_estimate"));
}

#[test]
fn check_center_point() {
    let text = stdout(&["check", "--q", "0.3333333333333333,0.3333333333333333,0.3333333333333334"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let results = v["results"].as_array().unwrap();
    let find = |model: &str, filter: &str| {
        results.iter().find(|r| r["model"] == model && r["filter"] == filter).unwrap_or_else(|| panic!("{model} {filter}"))
    };
    assert_eq!(find("classical", "any")["feasible"], true);
    assert_eq!(find("quantum-pure", "intransitive-i")["feasible"], true);
    assert_eq!(find("quantum-pure", "transitive")["feasible"], false);
    for r in results {
        if r["feasible"] == true {
            assert_eq!(r["witness"]["verified"], true, "{r}");
        } else {
            assert!(r["witness"].is_null());
        }
    }
}

#[test]
fn check_outside_hexagon() {
    let text = stdout(&["check", "--q", "0.7,0.15,0.15", "--model", "classical", "--filter", "any"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["results"][0]["feasible"], false);
}

#[test]
fn figures_render_for_every_kind() {
    let dir = tempfile::tempdir().unwrap();
    for which in ["optimal", "intransitive", "transitive"] {
        let path = dir.path().join(format!("{which}.svg"));
        let out = catgame(&["figure", "--which", which, "--n-samples", "3000", "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
        let svg = std::fs::read_to_string(&path).unwrap();
        assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("<circle"));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(catgame(&["--help"]).status.code(), Some(0));
    assert_eq!(catgame(&["bogus"]).status.code(), Some(1));
    assert_eq!(catgame(&["check", "--q", "0.5,0.5,0.5"]).status.code(), Some(1));
    assert_eq!(catgame(&["figure", "--format", "csv"]).status.code(), Some(1));
    assert_eq!(catgame(&["sample", "--model", "quantum"]).status.code(), Some(1));
    assert_eq!(catgame(&["area", "--grid", "0"]).status.code(), Some(1));
    let out = catgame(&["sample", "--n-samples", "1", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("catgame: "));
}
