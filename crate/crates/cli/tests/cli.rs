//! End-to-end tests of the `sacs` binary: exit codes, the machine format's
//! stability across runs, and agreement between the human and machine
//! renderings of a verdict.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Output};

const M1_EXPR: &str = "product(cp2, product(sphere(5), sphere(1)))";

fn sacs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sacs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn machine_map(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .filter_map(|l| {
            let (k, v) = l.split_once(" = ")?;
            Some((k.to_string(), v.to_string()))
        })
        .collect()
}

#[test]
fn check_sacs_on_the_paper_example() {
    let out = sacs(&["check-sacs", "--expr", M1_EXPR, "--machine"]);
    assert_eq!(out.status.code(), Some(0));
    let map = machine_map(&stdout(&out));
    assert_eq!(map["admits"], "true");
    assert_eq!(map["generator.0.x"], "h");
    assert_eq!(map["generator.0.z"], "2*h^2");
    assert_eq!(map["generator.0.lhs"], "0");
    assert_eq!(map["generator.0.rhs"], "0");
    assert_eq!(map["gate.condition_star"], "pass");
}

#[test]
fn machine_output_is_byte_stable() {
    let first = sacs(&["check-sacs", "--expr", M1_EXPR, "--machine"]);
    for _ in 0..3 {
        let again = sacs(&["check-sacs", "--expr", M1_EXPR, "--machine"]);
        assert_eq!(first.stdout, again.stdout);
    }
}

#[test]
fn human_and_machine_verdicts_agree() {
    let machine = machine_map(&stdout(&sacs(&[
        "check-sacs",
        "--expr",
        M1_EXPR,
        "--machine",
    ])));
    let human = stdout(&sacs(&["check-sacs", "--expr", M1_EXPR]));
    assert!(human.contains(&format!("admits: {}", machine["admits"])));
    // every generator line of the human output carries the machine values
    for i in 0.. {
        let Some(x) = machine.get(&format!("generator.{i}.x")) else {
            break;
        };
        let needle = format!(
            "generator {i}: x = {x}, z = {}",
            machine[&format!("generator.{i}.z")]
        );
        assert!(human.contains(&needle), "{needle} not in:\n{human}");
    }
}

#[test]
fn describe_grassmannian_dimensions() {
    let out = sacs(&["describe", "--expr", "grassmann(3,3)", "--machine"]);
    assert_eq!(out.status.code(), Some(0));
    let map = machine_map(&stdout(&out));
    assert_eq!(map["n"], "9");
    assert_eq!(map["dim.9"], "1");
    assert_eq!(map["total_dim"], "20");
    assert_eq!(map["backend"], "presented");
}

#[test]
fn check_star_on_g25() {
    let out = sacs(&["check-star", "--expr", "grassmann(2,5)", "--machine"]);
    assert_eq!(out.status.code(), Some(0));
    let map = machine_map(&stdout(&out));
    assert_eq!(map["condition_star"], "true");
    assert_eq!(map["rank"], "1");
    assert_eq!(map["target_dim"], "1");
}

#[test]
fn exit_codes() {
    // no model source: usage error
    assert_eq!(sacs(&["check-sacs"]).status.code(), Some(2));
    // unknown constructor: parse error
    assert_eq!(
        sacs(&["check-sacs", "--expr", "torus(2)"]).status.code(),
        Some(2)
    );
    // model refused by the hypothesis gates
    assert_eq!(
        sacs(&["check-sacs", "--expr", "grassmann(2,5)"])
            .status
            .code(),
        Some(1)
    );
    // a negative verdict would still exit 0; sphere(10) admits trivially
    assert_eq!(
        sacs(&["check-sacs", "--expr", "sphere(10)"]).status.code(),
        Some(0)
    );
    // both sources at once
    assert_eq!(
        sacs(&["describe", "--expr", "cp2", "--file", "x.model"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn exhaustive_flag_reports_agreement() {
    let out = sacs(&[
        "check-sacs",
        "--expr",
        M1_EXPR,
        "--machine",
        "--exhaustive-dman",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let map = machine_map(&stdout(&out));
    assert_eq!(map["exhaustive_agrees"], "true");

    let out = sacs(&["dman", "--expr", M1_EXPR, "--machine", "--exhaustive-dman"]);
    let map = machine_map(&stdout(&out));
    assert_eq!(map["kernel_rank"], "1");
    assert_eq!(map["exhaustive_membership_agrees"], "true");
}

#[test]
fn wu_command_matches_declared_class() {
    let out = sacs(&["wu", "--expr", M1_EXPR, "--machine"]);
    assert_eq!(out.status.code(), Some(0));
    let map = machine_map(&stdout(&out));
    assert_eq!(map["v.2"], "a");
    assert_eq!(map["v.5"], "0");
    assert_eq!(map["w_matches_declared"], "true");
}

#[test]
fn extension_guarantee_command() {
    let out = sacs(&[
        "extension-guarantee",
        "--expr",
        "sphere(10)",
        "--q",
        "4",
        "--flavor",
        "complex",
        "--machine",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let map = machine_map(&stdout(&out));
    assert_eq!(map["guarantee"], "true");
    assert_eq!(map["required_primes"], "2,3");

    // grassmannians declare no torsion facts
    let out = sacs(&[
        "extension-guarantee",
        "--expr",
        "grassmann(2,5)",
        "--q",
        "4",
        "--flavor",
        "complex",
        "--machine",
    ]);
    let map = machine_map(&stdout(&out));
    assert_eq!(map["guarantee"], "false");
    assert_eq!(map["missing_primes"], "2,3");
}

#[test]
fn model_and_bundle_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let model_path = dir.path().join("s2xs8.model");
    let mut f = std::fs::File::create(&model_path).unwrap();
    write!(
        f,
        "[meta]\nname = s2xs8\ndim = 10\n\n[basis]\ns2 2\ns8 8\nt 10\n\n\
         [products]\ns2 * s8 = t\n\n[char]\nw = 1\nc = 0\np1 = 0\n\n\
         [integral]\nbasis is2 2\nbasis is8 8\nbasis it 10\n\
         product is2 * is8 = it\nreduce is2 = s2\nreduce is8 = s8\nreduce it = t\n\n\
         [torsion]\nall: free\n"
    )
    .unwrap();
    drop(f);

    let out = sacs(&[
        "validate",
        "--file",
        model_path.to_str().unwrap(),
        "--machine",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("valid = true"));

    let out = sacs(&[
        "check-sacs",
        "--file",
        model_path.to_str().unwrap(),
        "--machine",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let map = machine_map(&stdout(&out));
    assert_eq!(map["admits"], "true");
    assert_eq!(map["w4_zero_shortcut"], "true");

    let bundle_path = dir.path().join("trivial.bundle");
    std::fs::write(&bundle_path, "[char]\nw = 1\n[integral]\np1 = 0\nd = 0\n").unwrap();
    let out = sacs(&[
        "check-bundle",
        "--file",
        model_path.to_str().unwrap(),
        "--bundle",
        bundle_path.to_str().unwrap(),
        "--machine",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let map = machine_map(&stdout(&out));
    assert_eq!(map["admits"], "true");

    // a malformed model file is a parse error
    let bad_path = dir.path().join("bad.model");
    std::fs::write(&bad_path, "[meta]\nname = x\n").unwrap();
    let out = sacs(&["describe", "--file", bad_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sq_table_command() {
    let out = sacs(&[
        "sq-table",
        "--expr",
        "grassmann(2,5)",
        "--i",
        "2",
        "--degree",
        "7",
        "--machine",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let map = machine_map(&stdout(&out));
    assert_eq!(map["sq.2.7.source_dim"], "2");
    assert_eq!(map["sq.2.7.target_dim"], "1");
    assert_eq!(map["sq.2.7.rank"], "1");
}
