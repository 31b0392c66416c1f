//! Runs the shipped fixtures end to end.

use weylbranch::verify::{verify_all, Options, Status};

#[test]
fn shipped_fixtures_pass() {
    let summary = verify_all(None, &Options::default()).unwrap();
    for t in &summary.tables {
        for r in &t.rows {
            if r.status == Status::Fail {
                eprintln!("{} {}: {}", t.title, r.row_id, r.detail);
            }
        }
        assert!(t.flagged_count_matches(), "{}: flagged {} vs declared {:?}", t.title, t.flagged_count, t.declared_flagged);
    }
    assert_eq!(summary.fail_count, 0);
    assert!(summary.is_success());
}

#[test]
fn catalog_manifest_matches_shipped_json() {
    let shipped: serde_json::Value =
        serde_json::from_str(include_str!("../fixtures/catalog.json")).unwrap();
    let current = serde_json::to_value(weylbranch::embedcat::manifest()).unwrap();
    assert_eq!(shipped, current, "regenerate with `weylbranch catalog --output json`");
}

#[test]
fn reports_are_deterministic_without_timing() {
    let text = weylbranch::verify::bundled("main_triples.toml").unwrap();
    let opts = Options { jobs: Some(3), ..Options::default() };
    let a = weylbranch::verify::verify_table_str("m", text, &opts).unwrap().without_timing();
    let b = weylbranch::verify::verify_table_str("m", text, &Options::default()).unwrap().without_timing();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn every_fixture_row_is_reported() {
    for (name, text) in weylbranch::verify::BUNDLED {
        let file = weylbranch::verify::parse_fixture(name, text).unwrap();
        let report = weylbranch::verify::verify_fixture(&file, &Options::default());
        assert_eq!(report.rows.len(), file.row.len() + file.chain.len(), "{name}");
    }
}
