use std::path::PathBuf;
use std::process::{Command, Output};

use permod_core::cli::{exit_code, parse_poly, render_poly};
use permod_core::ff::make_field;
use permod_core::Error;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures/groups")
        .join(format!("{name}.grp"))
        .to_string_lossy()
        .into_owned()
}

fn permod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permod"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_block_vector() {
    let z6 = fixture("z6");
    let r = json(&permod(&[
        "verify",
        "--group",
        &z6,
        "--field",
        "2",
        "--vector",
        "1,0,0,1,0,0",
    ]));
    assert_eq!(r["t"], 2);
    assert_eq!(r["d"], 3);
    assert_eq!(r["holds_B"], true);
    assert_eq!(r["holds_C"], serde_json::Value::Null);
    assert_eq!(r["case"], "block-equality");
}

#[test]
fn verify_pairs_over_rationals() {
    let g = fixture("a5_pairs");
    let v = "1,1,1,1,0,0,0,0,0,0";
    let r = json(&permod(&[
        "verify", "--group", &g, "--field", "Q", "--vector", v,
    ]));
    assert_eq!(r["t"], 4);
    assert_eq!(r["d"], 5);
    assert_eq!(r["case"], "none");
    let r = json(&permod(&[
        "verify", "--group", &g, "--field", "2", "--vector", v,
    ]));
    assert_eq!(r["case"], "pairs-equality");
    assert_eq!(r["omega_size"], 5);
}

#[test]
fn chebotarev_seven() {
    let r = json(&permod(&["chebotarev", "--prime", "7"]));
    assert_eq!(r["minors_checked"], 3431);
    assert_eq!(r["failures"], serde_json::json!([]));
}

#[test]
fn output_is_deterministic_across_jobs() {
    let a = permod(&["chebotarev", "--prime", "7", "--jobs", "1"]);
    let b = permod(&["chebotarev", "--prime", "7", "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let a = permod(&["exhaustive", "--prime", "5", "--jobs", "1"]);
    let b = permod(&["exhaustive", "--prime", "5", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let t1 = permod(&["table", "--primes", "7,11", "--q-max", "9"]);
    let t2 = permod(&["table", "--primes", "7,11", "--q-max", "9"]);
    assert_eq!(t1.stdout, t2.stdout);
}

#[test]
fn table_csv() {
    let out = permod(&[
        "table",
        "--primes",
        "7,11,13,17,19",
        "--q-max",
        "16",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "p,fields\n7,GF(2)\n11,GF(3)\n13,\"GF(3), GF(4), GF(5)\"\n17,\"GF(2), GF(13)\"\n19,\"GF(4), GF(5), GF(7)\"\n"
    );
}

#[test]
fn criterion_and_search() {
    let r = json(&permod(&[
        "criterion",
        "--prime",
        "11",
        "--field",
        "5",
        "--poly",
        "2,2,4,3,0,0,1",
    ]));
    assert_eq!(r["h"], "X^5 + 2X^4 + 4X^3 + X^2 + X + 4");
    assert_eq!(r["fails"], true);
    assert_eq!(r["d"], 6);
    let r = json(&permod(&[
        "search", "--prime", "11", "--field", "5", "--mode", "factors",
    ]));
    assert_eq!(r["found"], false);
    let r = json(&permod(&["search", "--prime", "11", "--field", "3"]));
    assert_eq!(r["found"], true);
}

#[test]
fn constructions() {
    let r = json(&permod(&["construct", "affine", "--field", "5"]));
    assert_eq!((r["t"].as_u64(), r["d"].as_u64()), (Some(4), Some(2)));
    let r = json(&permod(&[
        "construct",
        "orbit",
        "--group",
        &fixture("a5_pairs"),
        "--field",
        "2",
        "--point",
        "0",
        "--subgroup",
        &fixture("a4_pairs"),
    ]));
    assert_eq!((r["t"].as_u64(), r["d"].as_u64()), (Some(4), Some(4)));
    let r = json(&permod(&[
        "construct",
        "block",
        "--group",
        &fixture("z6"),
        "--field",
        "3",
        "--delta",
        "0,2,4",
    ]));
    assert_eq!((r["t"].as_u64(), r["d"].as_u64()), (Some(3), Some(2)));
    let r = json(&permod(&[
        "construct",
        "small-support",
        "--group",
        &fixture("s4"),
        "--field",
        "2",
        "--vector",
        "1,1,0,0",
    ]));
    assert!(r["t"].as_u64().unwrap() + r["d"].as_u64().unwrap() <= 5);
}

#[test]
fn refute_and_fourier() {
    let r = json(&permod(&[
        "refute", "--prime", "7", "--field", "2", "--poly", "1,1,0,1",
    ]));
    assert_eq!(r["determinant_is_zero"], true);
    assert_eq!(r["extension_order"], "8");
    let r = json(&permod(&[
        "fourier",
        "--group",
        &fixture("z6"),
        "--vector",
        "1,-1,1,-1,1,-1",
    ]));
    assert_eq!(r["fourier_support"], 1);
    assert_eq!(r["equal"], true);
}

#[test]
fn group_round_trip() {
    let out = permod(&[
        "group",
        "--family",
        "alternating",
        "--degree",
        "5",
        "--format",
        "text",
    ]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        std::fs::read_to_string(fixture("a5")).unwrap()
    );
}

#[test]
fn input_errors_exit_two() {
    let z6 = fixture("z6");
    let cases: Vec<Vec<&str>> = vec![
        vec!["frobnicate"],
        vec![
            "verify",
            "--group",
            "/nonexistent.grp",
            "--field",
            "2",
            "--vector",
            "1",
        ],
        vec![
            "verify",
            "--group",
            &z6,
            "--field",
            "6",
            "--vector",
            "1,0,0,0,0,0",
        ],
        vec!["verify", "--group", &z6, "--field", "2", "--vector", "1,0"],
        vec![
            "verify",
            "--group",
            &z6,
            "--field",
            "2",
            "--vector",
            "2,0,0,0,0,0",
        ],
        vec![
            "verify",
            "--group",
            &z6,
            "--field",
            "2",
            "--vector",
            "0,0,0,0,0,0",
        ],
        vec!["criterion", "--prime", "7", "--field", "2", "--poly", "1,x"],
        vec!["chebotarev", "--prime", "8"],
        vec!["chebotarev", "--prime", "7", "--format", "csv"],
        vec!["refute", "--prime", "7", "--field", "2", "--poly", "1,1"],
    ];
    for args in cases {
        let out = permod(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn invariant_violations_exit_one() {
    assert_eq!(exit_code(&Error::InvariantViolation("x".into())), 1);
    assert_eq!(exit_code(&Error::Precondition("x".into())), 2);
}

#[test]
fn parse_poly_examples() {
    let f5 = make_field(5, 1, None).unwrap();
    let f = parse_poly("4,1,1,4,2,1", &f5).unwrap();
    assert_eq!(f.to_string(), "X^5 + 2X^4 + 4X^3 + X^2 + X + 4");
    assert!(parse_poly("0", &f5).unwrap().is_zero());
    assert!(parse_poly("1,0,0", &f5).unwrap().degree() == Some(0));
    let f2 = make_field(2, 1, None).unwrap();
    assert_eq!(
        parse_poly("1,1,0,1", &f2).unwrap().to_string(),
        "X^3 + X + 1"
    );
    assert!(parse_poly("5", &f5).is_err());
    assert!(parse_poly("", &f5).is_err());
    assert!(parse_poly("1,,2", &f5).is_err());
    let f4 = make_field(2, 2, None).unwrap();
    let g = parse_poly("1;1,0;1,1", &f4).unwrap();
    assert_eq!(render_poly(&g), "1;1,0;1,1;0");
    assert!(parse_poly("1;1;1", &f4).is_err());
}
