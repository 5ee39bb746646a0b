use std::process::{Command, Output};

fn superserre(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superserre"))
        .args(args)
        .env_remove("SUPERSERRE_MAX_HEIGHT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_f4_all_classes() {
    let o = superserre(&["verify", "F4", "--all", "--jobs", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l.starts_with("PASS total=40")));
}

#[test]
fn verify_specialised_d21() {
    let o = superserre(&["verify", "D21a", "--alpha", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS total=17"));
}

#[test]
fn relations_latex_for_sl22() {
    let o = superserre(&[
        "relations",
        "A",
        "--m",
        "1",
        "--n",
        "1",
        "--borel",
        "distinguished",
        "--format",
        "latex",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[e_2,[e_1,[e_2,e_3]]]"));
}

#[test]
fn json_everywhere() {
    let cases: [&[&str]; 6] = [
        &["borels", "G3"],
        &["cartan", "C", "--n", "3", "--borel", "2"],
        &["diagram", "D", "--m", "2", "--n", "2", "--borel", "all"],
        &["relations", "F4", "--borel", "5"],
        &["zgrading", "G3", "--borel", "1", "--d", "3"],
        &["necessity", "A", "--m", "1", "--n", "1"],
    ];
    for args in cases {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let o = superserre(&a);
        assert!(o.status.success(), "{args:?}");
        serde_json::from_slice::<serde_json::Value>(&o.stdout)
            .unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn zgrading_table_for_g3() {
    let o = superserre(&[
        "zgrading", "G3", "--borel", "1", "--d", "3", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let dims: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["presented"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [9, 7, 4, 0]);
}

#[test]
fn failure_exits_nonzero_with_json_report() {
    let o = superserre(&["verify", "F4", "--max-height", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("FAIL"));
    let json = text.lines().nth(1).unwrap();
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn height_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_superserre"))
        .args(["verify", "F4"])
        .env("SUPERSERRE_MAX_HEIGHT", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors() {
    for args in [
        &["verify", "A", "--m", "1"][..],
        &["verify", "Q"],
        &["verify", "C", "--n", "2"],
        &["verify", "D21a", "--alpha", "-1"],
        &["verify", "F4", "--alpha", "2"],
        &["diagram", "F4", "--borel", "6"],
        &["zgrading", "G3", "--d", "4"],
    ] {
        let o = superserre(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}
