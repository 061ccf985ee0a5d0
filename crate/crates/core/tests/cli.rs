mod common;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use common::{Adj, Img};
use digitop::{io, ProductKind, Space};
use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("digitop").chain(args.iter().copied());
    let code = digitop::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).unwrap()
}

fn text_fields(out: &str) -> BTreeMap<String, String> {
    out.lines().filter_map(|l| l.split_once(": ")).map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn tensor_square_has_two_components() {
    let v = json(&["components", &fixture("square.img"), "--adj", "T(c1,c1)"]);
    assert_eq!(v["components"], 2);
    assert_eq!(v["sets"], serde_json::json!([["(0,0)", "(1,1)"], ["(0,1)", "(1,0)"]]));
    let v = json(&["components", &fixture("square.img"), "--adj", "c1"]);
    assert_eq!(v["components"], 1);
}

#[test]
fn lex_reaches_two_columns_over() {
    let out = ok(&["adjacent", "--adj", "L(c1,c1)", "--", "0", "0", "1", "2"]);
    assert_eq!(text_fields(&out)["adjacent"], "true");
    let out = ok(&["adjacent", "--adj", "X(c1,c1)", "--", "0", "0", "1", "2"]);
    assert_eq!(text_fields(&out)["adjacent"], "false");
    let out = ok(&["adjacent", "--adj", "c1", "--", "-1", "0"]);
    assert_eq!(text_fields(&out)["adjacent"], "true");
}

#[test]
fn cartesian_square_flip_is_a_witness() {
    let v = json(&["check-afpp", &fixture("square.img"), "--adj", "X(c1,c1)"]);
    assert_eq!(v["afpp"], false);
    let w = &v["witness"];
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        assert_eq!(w[format!("({a},{b})")], format!("({},{})", 1 - a, 1 - b));
    }
    assert_eq!(json(&["check-afpp", &fixture("interval.img")])["afpp"], true);
}

#[test]
fn dot_counts_points_and_edges() {
    for (file, spec) in [("square.img", "T(c1,c1)"), ("square.img", "c2"), ("msc8.img", "c2"), ("gap.img", "c1")] {
        let img = io::read_image_file(fixture(file)).unwrap();
        let pts: Vec<Vec<i64>> = img.image.points().iter().map(|p| p.coords().to_vec()).collect();
        let adj = match spec {
            "T(c1,c1)" => Adj::T(vec![(1, Adj::C(1)), (1, Adj::C(1))]),
            "c2" => Adj::C(2),
            _ => Adj::C(1),
        };
        let o = Img::new(pts, adj);
        let edges =
            (0..o.len()).flat_map(|i| (i + 1..o.len()).map(move |j| (i, j))).filter(|&(i, j)| o.a(i, j)).count();
        let out = ok(&["export-dot", &fixture(file), "--adj", spec]);
        assert!(out.starts_with("graph"));
        assert_eq!(out.matches("[label=").count(), o.len(), "{file} {spec}");
        assert_eq!(out.matches(" -- ").count(), edges, "{file} {spec}");
        for p in &o.pts {
            let label = format!("\"({})\"", p.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
            assert!(out.contains(&label), "{label} missing");
        }
        assert!(!out.contains("pos="));
    }
}

#[test]
fn product_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["NP1", "NP2", "T", "X", "L"] {
        let out = dir.path().join(format!("{kind}.img"));
        let o = out.display().to_string();
        ok(&["product", &fixture("interval.img"), &fixture("msc8.img"), "--kind", kind, "--out", &o]);
        let back = io::read_image_file(&out).unwrap().space(None).unwrap();
        let a = io::read_image_file(fixture("interval.img")).unwrap().space(None).unwrap();
        let b = io::read_image_file(fixture("msc8.img")).unwrap().space(None).unwrap();
        let want = Space::product(&[&a, &b], kind.parse::<ProductKind>().unwrap()).unwrap();
        assert_eq!(back.points(), want.points());
        assert_eq!(back.edge_count(), want.edge_count(), "{kind}");
        assert_eq!(io::write_image(&back), std::fs::read_to_string(&out).unwrap());
        let stdout = ok(&["product", &fixture("interval.img"), &fixture("msc8.img"), "--kind", kind]);
        assert_eq!(stdout, std::fs::read_to_string(&out).unwrap());
    }
}

#[test]
fn json_and_text_agree() {
    let cases: Vec<Vec<String>> = vec![
        vec!["components".into(), fixture("msc8.img")],
        vec![
            "adjacent".into(),
            "--adj".into(),
            "T(c1,c1)".into(),
            "--".into(),
            "0".into(),
            "0".into(),
            "1".into(),
            "1".into(),
        ],
        vec!["dominates".into(), "c1".into(), "c2".into(), fixture("square.img")],
        vec!["dominates".into(), "c2".into(), "c1".into(), fixture("square.img")],
        vec!["check-continuity".into(), fixture("flip.map")],
        vec!["check-iso".into(), fixture("flip.map")],
        vec!["check-shy".into(), fixture("const.map")],
        vec!["check-afpp".into(), fixture("square.img"), "--adj".into(), "T(c1,c1)".into()],
        vec!["check-homotopic".into(), fixture("id.map"), fixture("const.map")],
        vec!["check-multimap".into(), fixture("split.mm")],
        vec!["check-retraction".into(), fixture("interval.img"), fixture("point.img")],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let text = text_fields(&ok(&args));
        let Value::Object(j) = json(&args) else { panic!("not an object") };
        let keys: Vec<&String> = j.keys().collect();
        assert_eq!(keys, text.keys().collect::<Vec<_>>(), "{args:?}");
        for (k, v) in &j {
            let t = &text[k];
            match v {
                Value::Bool(b) => assert_eq!(t, &b.to_string(), "{args:?} {k}"),
                Value::Number(n) => assert_eq!(t, &n.to_string(), "{args:?} {k}"),
                Value::String(s) => assert_eq!(t, s.lines().next().unwrap_or(""), "{args:?} {k}"),
                Value::Array(a) => assert_eq!(t.is_empty(), a.is_empty(), "{args:?} {k}"),
                Value::Object(m) => {
                    for (ik, iv) in m {
                        let shown = match iv {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        assert!(t.contains(&format!("{ik}={shown}")), "{args:?} {k}: {t} lacks {ik}={shown}");
                    }
                }
                Value::Null => {}
            }
        }
    }
}

#[test]
fn answers_exit_zero_and_failures_do_not() {
    // A negative answer still exits 0.
    let out = ok(&["check-continuity", &fixture("const.map")]);
    assert_eq!(text_fields(&out)["continuous"], "true");
    assert_eq!(text_fields(&ok(&["check-shy", &fixture("const.map")]))["shy"], "false");

    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(err.contains("frobnicate"));
    let (code, _, _) = run(&["components"]);
    assert_eq!(code, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check-homotopic"));

    let (code, _, err) = run(&["components", "/nonexistent/x.img"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.img", "dim 2\n0 0\n0 x\n");
    let (code, _, err) = run(&["components", &bad.display().to_string()]);
    assert_eq!(code, 1);
    assert!(err.contains("bad.img:3"), "{err}");
    let (code, _, err) = run(&["adjacent", "--adj", "Q(c1)", "--", "0", "1"]);
    assert_eq!(code, 1, "{err}");
    let (code, _, _) = run(&["adjacent", "--adj", "c1", "--", "0", "1", "2"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["verify", "--check", "no-such-check"]);
    assert_eq!(code, 1);
}

#[test]
fn budget_exhaustion_is_reported_not_fatal() {
    let out = ok(&["--budget", "1", "check-afpp", &fixture("msc8.img")]);
    assert_eq!(text_fields(&out)["status"], "budget exceeded");
    let v = json(&["--budget", "0", "check-homotopic", &fixture("id.map"), &fixture("const.map")]);
    assert_eq!(v["status"], "budget exceeded");
}

#[test]
fn homotopy_respects_the_basepoint() {
    let dir = tempfile::tempdir().unwrap();
    let one =
        write(dir.path(), "one.map", &format!("map\ndom {0}\ncod {0}\n0 -> 1\n1 -> 1\n", fixture("interval.img")));
    let free = json(&["check-homotopic", &fixture("id.map"), &one.display().to_string()]);
    assert_eq!(free["homotopic"], true);
    let pinned = json(&["check-homotopic", &fixture("id.map"), &one.display().to_string(), "--pointed", "0"]);
    assert_eq!(pinned["homotopic"], false);
    assert_eq!(pinned["status"], "absent");
}

#[test]
fn subdivision_has_r_to_the_n_points_per_point() {
    for r in 1..=4 {
        let v = json(&["subdivide", &fixture("square.img"), "--r", &r.to_string()]);
        assert_eq!(v["points"], 4 * r * r);
    }
    let text = ok(&["subdivide", &fixture("interval.img"), "--r", "3"]);
    let back = io::parse_image(&text, "sub").unwrap();
    assert_eq!(back.image.len(), 6);
}

#[test]
fn verify_lists_and_runs() {
    let list = ok(&["verify", "--list"]);
    assert_eq!(list.lines().count(), digitop::verifier::check_ids().len());
    let manifest = digitop::verifier::manifest();
    let pick = |n: u8| manifest.iter().find(|e| e.criterion == Some(n)).unwrap().id.clone();
    let (a, b) = (pick(2), pick(3));
    let out = ok(&["verify", "--check", &a, "--check", &b]);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.contains(" pass ")), "{out}");
    let v = json(&["verify", "--open", "tensor-afpp-factor", "--max-points", "2", "--budget", "50"]);
    assert_eq!(v["problem"], "tensor-afpp-factor");
    assert!(v["report"]["result"].is_string());
    let (code, _, _) = run(&["verify", "--open", "not-a-problem"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["verify"]);
    assert_eq!(code, 1);
}
