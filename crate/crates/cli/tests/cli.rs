//! End-to-end tests of the `osborn` binary: golden output for the worked
//! enciphering example, report formats, and the exit-code contract
//! (0 pass, 1 check failure, 2 usage, 3 I/O).

use std::path::PathBuf;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn osborn(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_osborn"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("no signal"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    path.to_str().unwrap().to_string()
}

#[test]
fn check_osborn_and_universal() {
    let run = osborn(&[
        "check",
        &data("kinyon16.tab"),
        "--property",
        "osborn",
        "--property",
        "universal-osborn",
        "--format",
        "structured",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout, "osborn holds\nuniversal-osborn holds\n");
}

#[test]
fn encode_matches_worked_example() {
    let run = osborn(&[
        "encode",
        "--loop",
        &data("kinyon16.tab"),
        "--key",
        "16",
        "--ci",
        "dlip",
        "--split",
        "2",
        "--msg",
        "OSBORN",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout, "9,16,7,9,10,12\n");
    assert!(run.stderr.is_empty());
}

#[test]
fn encode_table_is_pinned() {
    let run = osborn(&[
        "encode",
        "--loop",
        &data("kinyon16.tab"),
        "--key",
        "16",
        "--ci",
        "dlip",
        "--split",
        "2",
        "--msg",
        "OSBORN",
        "--table",
    ]);
    assert_eq!(run.code, 0);
    assert_eq!(
        run.stdout,
        "LETTER ENCIPHER DECIPHER DECODED\n\
         B 7 7 B\n\
         N 12 9 N\n\
         O 9 11 O\n\
         R 10 12 R\n\
         S 16 13 S\n"
    );
}

#[test]
fn decode_matches_worked_example() {
    let run = osborn(&[
        "decode",
        "--loop",
        &data("kinyon16.tab"),
        "--key",
        "16",
        "--ci",
        "dlip",
        "--split",
        "2",
        "--msg",
        "9,16,7,9,10,12",
        "--format",
        "structured",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout, "elements 11,13,7,11,12,9\nplaintext OSBORN\n");
    let text = osborn(&[
        "decode",
        "--loop",
        &data("kinyon16.tab"),
        "--key",
        "16",
        "--ci",
        "dlip",
        "--split",
        "2",
        "--msg",
        "9,16,7,9,10,12",
    ]);
    assert_eq!(text.stdout, "OSBORN\n");
}

#[test]
fn chain_trace_is_pinned() {
    let run = osborn(&[
        "chain",
        "--loop",
        &data("kinyon16.tab"),
        "--components",
        "L:16|L:10|R:10|R:16",
        "--key",
        "16",
        "--msg",
        "OSBORN",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(
        run.stdout,
        "source: 11,13,7,11,12,9\n\
         hop 1 L:16: 2,5,12,2,1,3 exposed: -\n\
         hop 2 L:10: 9,16,7,9,10,12 exposed: 3\n\
         hop 3 R:10: 6,4,16,6,5,8 exposed: -\n\
         hop 4 R:16: 11,13,7,11,12,9 exposed: 1,2,3,4,5,6\n\
         received: OSBORN\n"
    );
}

#[test]
fn chain_flags_key_collision_and_broken_chain() {
    let run = osborn(&[
        "chain",
        "--loop",
        &data("kinyon16.tab"),
        "--components",
        "L:13,L:12|R:12,R:13",
        "--key",
        "13",
        "--msg",
        "OSBORN",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("key-collisions: 2\n"), "{}", run.stdout);
    assert!(run.stdout.ends_with("received: OSBORN\n"));

    let broken = osborn(&[
        "chain",
        "--loop",
        &data("kinyon16.tab"),
        "--components",
        "L:16",
        "--msg",
        "OSBORN",
    ]);
    assert_eq!(broken.code, 1);
    assert!(broken.stdout.starts_with("chain broken"));
}

#[test]
fn encode_warns_when_message_contains_the_key() {
    let run = osborn(&[
        "encode",
        "--loop",
        &data("kinyon16.tab"),
        "--key",
        "13",
        "--ci",
        "dlip",
        "--split",
        "2",
        "--msg",
        "OSBORN",
    ]);
    assert_eq!(run.code, 0);
    assert!(
        run.stderr.contains("message letter 'S'"),
        "stderr: {}",
        run.stderr
    );
}

#[test]
fn cycles_output() {
    let run = osborn(&["cycles", "--loop", &data("kinyon16.tab")]);
    assert_eq!(run.code, 0);
    assert_eq!(
        run.stdout,
        "(1)(2)(3)(4)(5)(6)(7 8)(9 15 11 14 10 16 12 13)\nlengths: 1 1 1 1 1 1 2 8\n"
    );
}

#[test]
fn verify_theorems_on_kinyon16() {
    let run = osborn(&[
        "verify-theorem",
        &data("kinyon16.tab"),
        "--format",
        "structured",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(
        run.stdout,
        "kinyon-companion holds\n\
         cube-in-nucleus holds\n\
         rho-period-six vacuous\n\
         wip-osborn-relations vacuous\n\
         osborn-moufang vacuous\n\
         exponent-two-abelian vacuous\n\
         wip-universality vacuous\n"
    );
    let one = osborn(&[
        "verify-theorem",
        &data("z4.tab"),
        "--theorem",
        "exponent-two-abelian",
        "--format",
        "structured",
    ]);
    // Z4 is not exponent 2, so the theorem is vacuous there.
    assert_eq!(one.stdout, "exponent-two-abelian vacuous\n");
    assert_eq!(one.code, 0);
}

#[test]
fn check_failure_reports_witness_and_exits_one() {
    let run = osborn(&[
        "check",
        &data("s3.tab"),
        "--property",
        "cip",
        "--format",
        "structured",
    ]);
    assert_eq!(run.code, 1);
    assert_eq!(run.stdout, "cip fails witness: 2,3\n");

    let klein = osborn(&["check", &data("klein4.tab"), "--property", "cip"]);
    assert_eq!(klein.code, 0);
}

#[test]
fn enumerate_counts_and_emit() {
    let run = osborn(&["enumerate", "--order", "5", "--where", "osborn"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, "order 5 where osborn: 6 loops\n");

    let plain = osborn(&["enumerate", "--order", "4"]);
    assert_eq!(plain.stdout, "order 4: 4 loops\n");

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hits");
    let emit = osborn(&[
        "enumerate",
        "--order",
        "4",
        "--where",
        "exponent2",
        "--emit",
        out.to_str().unwrap(),
    ]);
    assert_eq!(emit.code, 0, "{}", emit.stderr);
    assert_eq!(emit.stdout, "order 4 where exponent2: 1 loops\n");
    let written: Vec<_> = std::fs::read_dir(&out).unwrap().collect();
    assert_eq!(written.len(), 1);
    let text = std::fs::read_to_string(out.join("loop-000001.tab")).unwrap();
    assert_eq!(text, "4\n1 2 3 4\n2 1 4 3\n3 4 1 2\n4 3 2 1\n");

    // Order 7 needs the opt-in flag.
    let capped = osborn(&["enumerate", "--order", "7"]);
    assert_eq!(capped.code, 2);
}

#[test]
fn isotope_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("iso.tab");
    let run = osborn(&[
        "isotope",
        &data("kinyon16.tab"),
        "--f",
        "2",
        "--g",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    // The isotope is itself a valid loop file and still universal Osborn.
    let check = osborn(&[
        "universal-check",
        path.to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(check.code, 0);
    assert_eq!(check.stdout, "universal-osborn holds\n");
}

#[test]
fn gloop_sampling_is_deterministic_per_seed() {
    let args = [
        "check",
        &data("kinyon16.tab"),
        "--property",
        "g-loop",
        "--seed",
        "7",
        "--samples",
        "4",
        "--format",
        "structured",
    ];
    let a = osborn(&args);
    let b = osborn(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, "g-loop holds\n");
}

#[test]
fn cf_inspection() {
    let run = osborn(&[
        "cf",
        "--loop",
        &data("kinyon16.tab"),
        "--key",
        "16",
        "--ci",
        "dlip",
        "--split",
        "2",
    ]);
    assert_eq!(run.code, 0);
    assert_eq!(
        run.stdout,
        "name dlip\nkey 16\ndegree 4\nword L:16,L:10,R:10,R:16\n\
         components L:16,L:10 | R:10,R:16\nci holds\nsfc L:16,L:10\nrfc R:10,R:16\n"
    );
    // The CIP functional is not a CI on a non-CIP loop.
    let s3 = osborn(&["cf", "--loop", &data("s3.tab"), "--key", "3", "--ci", "cip"]);
    assert_eq!(s3.code, 1, "{}", s3.stdout);
    assert!(s3.stdout.contains("ci fails witness:"), "{}", s3.stdout);
}

#[test]
fn exit_codes_for_usage_and_io_errors() {
    // Unknown property: usage.
    let usage = osborn(&["check", &data("z4.tab"), "--property", "nope"]);
    assert_eq!(usage.code, 2);
    // Bad key element: usage.
    let key = osborn(&[
        "encode",
        "--loop",
        &data("z4.tab"),
        "--key",
        "99",
        "--ci",
        "cip",
        "--split",
        "1",
        "--msg",
        "B",
    ]);
    assert_eq!(key.code, 2);
    // Missing file: I/O.
    let missing = osborn(&["check", "no-such-file.tab", "--property", "osborn"]);
    assert_eq!(missing.code, 3);
    // Malformed table: I/O.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tab");
    std::fs::write(&bad, "2\n1 2\n2 2\n").unwrap();
    let malformed = osborn(&["check", bad.to_str().unwrap(), "--property", "osborn"]);
    assert_eq!(malformed.code, 3);
    assert!(malformed.stderr.contains("not a Latin square"));
    // Clap-level usage error.
    let flag = osborn(&["check", "--no-such-flag"]);
    assert_eq!(flag.code, 2);
}

#[test]
fn custom_codec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("codec.map");
    std::fs::write(&path, "# letters\nA 1\nB 2\nC 3\n").unwrap();
    let run = osborn(&[
        "encode",
        "--loop",
        &data("z4.tab"),
        "--key",
        "2",
        "--ci",
        "cip",
        "--split",
        "1",
        "--codec",
        path.to_str().unwrap(),
        "--msg",
        "CAB",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    // SFC = L:2 in Z4: 2·3=4, 2·1=2, 2·2=3.
    assert_eq!(run.stdout, "4,2,3\n");
    let back = osborn(&[
        "decode",
        "--loop",
        &data("z4.tab"),
        "--key",
        "2",
        "--ci",
        "cip",
        "--split",
        "1",
        "--codec",
        path.to_str().unwrap(),
        "--msg",
        "4,2,3",
    ]);
    assert_eq!(back.stdout, "CAB\n");
}

#[test]
fn reported_witness_refails_independently() {
    let run = osborn(&[
        "check",
        &data("kinyon16.tab"),
        "--property",
        "lsip",
        "--format",
        "structured",
    ]);
    assert_eq!(run.code, 1);
    assert_eq!(run.stdout, "lsip fails witness: 9\n");
    // Re-evaluate the identity at the reported witness.
    let lp = osborn_core::corpus_loop("kinyon16").unwrap();
    let w = lp.element(9).unwrap();
    assert!(!osborn_core::property_holds_at(
        &lp,
        osborn_core::LoopProperty::LeftSelfInverse,
        &[w]
    ));
}

#[test]
fn data_tables_match_the_embedded_corpus() {
    for (file, name) in [
        ("kinyon16.tab", "kinyon16"),
        ("z4.tab", "z4"),
        ("z5.tab", "z5"),
        ("klein4.tab", "klein4"),
        ("s3.tab", "s3"),
    ] {
        let text = std::fs::read_to_string(data(file)).unwrap();
        let parsed = osborn_core::FiniteLoop::parse(&text).unwrap();
        let corpus = osborn_core::corpus_loop(name).unwrap();
        assert_eq!(parsed, corpus, "{file} drifted from the built-in {name}");
    }
}
