use std::path::PathBuf;
use std::process::{Command, Output};

use etale_core::corpus::{fixture_file, ptz2_file};
use etale_core::fixture::FixtureFile;
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

fn etale(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etale")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_temp(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("etale-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn check_effective_on_pt_z2_names_the_witness_pair() {
    let out = etale(&["check", "effective", &fixture("ptz2.json"), "--groupoid", "G"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({ "effective": false, "witness": ["e", "g"] }));
}

#[test]
fn effective_part_of_pt_z2_is_a_unit_groupoid_document() {
    let out = etale(&["compute", "effective-part", &fixture("ptz2.json"), "--groupoid", "G"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["unit_groupoid"], true);
    let file = FixtureFile::from_json(&v["result"].to_string()).unwrap();
    let world = file.load().unwrap();
    let ef = world.groupoid("Ef").unwrap();
    assert!((0..ef.n_arr()).all(|a| ef.is_unit(a)));
    assert_eq!(world.hom("iota").unwrap().dom().n_arr(), 2);
}

#[test]
fn shipped_fixture_files_are_canonical() {
    for (name, file) in [("named.json", fixture_file()), ("ptz2.json", ptz2_file())] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(text, file.to_json() + "\n", "{name}");
        assert_eq!(FixtureFile::from_json(&text).unwrap().to_json() + "\n", text);
    }
}

#[test]
fn constructions_on_the_named_fixtures() {
    let f = fixture("named.json");
    let cases: &[(&[&str], &str, Value)] = &[
        (&["check", "etale", &f, "--groupoid", "C"], "etale", true.into()),
        (&["check", "bouquet", &f, "--object", "E"], "bouquet", true.into()),
        (&["check", "gerbe", &f, "--object", "E"], "gerbe", true.into()),
        (&["check", "gerbe", &f, "--sheaf", "D"], "gerbe", false.into()),
    ];
    for (args, key, want) in cases {
        let out = etale(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(json(&out)[key], *want, "{args:?}");
    }
    let report = |args: &[&str]| {
        let out = etale(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        json(&out)["report"].clone()
    };
    let r = report(&["compute", "ineffective-isotropy", &f, "--groupoid", "B", "--point", "*"]);
    assert_eq!((r["order"].as_u64(), r["arrows"].clone()), (Some(2), serde_json::json!(["e", "g"])));
    let r = report(&["compute", "stalk", &f, "--object", "E", "--point", "*"]);
    assert_eq!(r["stalk"], serde_json::json!({ "objects": 1, "arrows": 2 }));
    let r = report(&["compute", "realize-representable", &f, "--groupoid", "C", "--open", "o"]);
    assert_eq!(r["morita_to_open"], true);
    let r = report(&["compute", "cech", &f, "--groupoid", "A"]);
    assert_eq!(r["morita"], true);
    let r = report(&["compute", "ef-of-realization", &f, "--groupoid", "pt", "--object", "E"]);
    assert_eq!(r["isomorphism"], true);
    let r = report(&["compute", "gerbe-from-ineffective", &f, "--groupoid", "B"]);
    assert_eq!(r["bouquet"], true);
    let r = report(&["compute", "action-groupoid", &f, "--sheaf", "D"]);
    assert_eq!(r["realization"], serde_json::json!({ "objects": 2, "arrows": 4 }));
    let r = report(&["compute", "theta", &f, "--groupoid", "B"]);
    assert_eq!(r["base"], serde_json::json!({ "objects": 1, "arrows": 1 }));
}

#[test]
fn theta_output_feeds_xi() {
    let out = etale(&["compute", "theta", &fixture("ptz2.json"), "--groupoid", "G"]);
    let v = json(&out);
    let path = write_temp("theta.json", &v["result"].to_string());
    let out = etale(&["compute", "xi", &path, "--hom", "sigma"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["total"], serde_json::json!({ "objects": 1, "arrows": 2 }));
}

#[test]
fn invalid_documents_exit_2_naming_the_invariant() {
    let mut file = ptz2_file();
    let g = file.groupoids.get_mut("G").unwrap();
    g.compose.retain(|(a, b, _)| !(a == "g" && b == "g"));
    g.compose.push(("g".into(), "g".into(), "g".into()));
    let path = write_temp("bad.json", &file.to_json());
    let out = etale(&["check", "effective", &path]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert!(v["invariant"].as_str().unwrap().starts_with("FinGroupoid"), "{v}");

    let out = etale(&["check", "effective", &fixture("ptz2.json"), "--groupoid", "H"]);
    assert_eq!(out.status.code(), Some(2));
    let path = write_temp("junk.json", "{\"schema\": 1, \"groupoids\": 3}");
    assert_eq!(etale(&["check", "etale", &path]).status.code(), Some(2));
    assert_eq!(etale(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_reports_one_entry_per_selected_criterion() {
    let out = etale(&["verify", "ledger", "--instances", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 1);

    let out = etale(&["--format", "text", "verify", "all", "--seed", "7", "--instances", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 10, "{text}");
}

#[test]
fn output_is_deterministic() {
    let args = ["compute", "cech", &fixture("named.json"), "--groupoid", "A"];
    assert_eq!(etale(&args).stdout, etale(&args).stdout);
}
