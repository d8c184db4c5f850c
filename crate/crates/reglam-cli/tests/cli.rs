//! Golden tests: every CLI verdict is checked against the library call
//! it fronts for.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use reglam::encodings::{
    church_type, dfa_to_recognizer, encode_word, parity_dfa, run_dfa,
};
use reglam::enumerate::enumerate_normal_terms;
use reglam::normalize::normalize;
use reglam::print::{print_term, print_type};
use reglam::recognizers::{bool_type, true_term, RecognizerDescriptor};

fn reglam(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reglam"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap().trim().to_string()
}

fn workdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn sem_dfa_descriptor(dir: &Path, stem: &str, d: &reglam::encodings::Dfa) -> String {
    let dfa_file = format!("{stem}.dfa.json");
    std::fs::write(dir.join(&dfa_file), serde_json::to_string(d).unwrap()).unwrap();
    let desc = RecognizerDescriptor {
        kind: "sem".into(),
        subject: print_type(&church_type(d.alphabet)),
        base: None,
        subst: None,
        predicate: Some(format!("dfa:{dfa_file}")),
        decider: None,
    };
    let desc_file = format!("{stem}.json");
    std::fs::write(dir.join(&desc_file), serde_json::to_string(&desc).unwrap()).unwrap();
    desc_file
}

#[test]
fn norm_agrees_with_the_library() {
    let dir = workdir("norm");
    let out = reglam(
        &dir,
        &["norm", "--type", "Bool", "--term", r"(\(b: Bool). b) true"],
    );
    let expected = print_term(&normalize(&true_term(), &Vec::new()).unwrap());
    assert_eq!(stdout(&out), expected);
}

#[test]
fn typecheck_agrees_with_the_library() {
    let dir = workdir("check");
    let out = reglam(&dir, &["check", "--term", "not"]);
    let arrow = reglam::syntax::arrow(bool_type(), bool_type());
    assert_eq!(stdout(&out), print_type(&arrow));
}

#[test]
fn sem_descriptor_verdicts_agree_with_the_library() {
    let dir = workdir("rec-sem");
    let d = parity_dfa(1, 2, false);
    let desc = sem_dfa_descriptor(&dir, "even-ones", &d);
    let r = dfa_to_recognizer(&d).unwrap();
    for word in [&[1, 2, 2, 1, 2][..], &[1, 2, 2][..], &[][..]] {
        let arg: String = word.iter().map(usize::to_string).collect();
        let out = if word.is_empty() {
            reglam(&dir, &["rec", "sem", "--desc", &desc, "--term", "\\(x0: (o -> o)^2). \\(x1: o). x1"])
        } else {
            reglam(&dir, &["rec", "sem", "--desc", &desc, "--word", &arg])
        };
        let expected = r.accepts(&encode_word(word, 2).unwrap()).unwrap();
        assert_eq!(run_dfa(&d, word), expected);
        let text = String::from_utf8(out.stdout.clone()).unwrap();
        assert_eq!(text.trim(), if expected { "accept" } else { "reject" });
        assert_eq!(out.status.code(), Some(if expected { 0 } else { 1 }));
    }
}

#[test]
fn compiled_decider_pipeline_matches_the_automaton() {
    let dir = workdir("pipeline");
    let d = parity_dfa(1, 1, false);
    let desc = sem_dfa_descriptor(&dir, "even-unary", &d);
    let out = reglam(&dir, &["compile", "sem2syn", "--desc", &desc, "--out", "r.term"]);
    stdout(&out);
    for len in 0..=6usize {
        let word = vec![1; len];
        let arg: String = word.iter().map(usize::to_string).collect();
        let out = if len == 0 {
            reglam(&dir, &["rec", "syn", "--decider", "r.term", "--subject", "(o -> o) -> o -> o", "--term", "\\(x0: o -> o). \\(x1: o). x1"])
        } else {
            reglam(&dir, &["rec", "syn", "--decider", "r.term", "--word", &arg])
        };
        let expected = run_dfa(&d, &word);
        assert_eq!(
            out.status.code(),
            Some(if expected { 0 } else { 1 }),
            "length {len}, stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn syn2sem_descriptor_round_trips() {
    let dir = workdir("syn2sem");
    let d = parity_dfa(1, 1, false);
    let desc = sem_dfa_descriptor(&dir, "even-unary", &d);
    stdout(&reglam(&dir, &["compile", "sem2syn", "--desc", &desc, "--out", "r.json"]));
    stdout(&reglam(&dir, &["compile", "syn2sem", "--desc", "r.json", "--out", "s.json"]));
    let out = reglam(&dir, &["rec", "sem", "--desc", "s.json", "--word", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let out = reglam(&dir, &["rec", "sem", "--desc", "s.json", "--word", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn word_encoding_round_trips() {
    let dir = workdir("encode");
    let term = stdout(&reglam(&dir, &["encode", "word", "121", "--alphabet", "2"]));
    assert_eq!(term, print_term(&encode_word(&[1, 2, 1], 2).unwrap()));
    let back = stdout(&reglam(&dir, &["decode", "word", "--term", &term]));
    assert_eq!(back, "121");
}

#[test]
fn untyped_encoding_round_trips() {
    let dir = workdir("untyped");
    let term = stdout(&reglam(&dir, &["encode", "untyped", r"\x. x x"]));
    let back = stdout(&reglam(&dir, &["decode", "untyped", "--term", &term]));
    assert_eq!(back, r"\v1. v1 v1");
}

#[test]
fn enum_lists_every_normal_inhabitant() {
    let dir = workdir("enum");
    let listing = stdout(&reglam(&dir, &["enum", "--type", "Bool", "--size", "8"]));
    let expected: Vec<String> = enumerate_normal_terms(&bool_type(), 8)
        .iter()
        .map(|t| print_term(t))
        .collect();
    assert_eq!(listing.lines().collect::<Vec<_>>(), expected);
    assert_eq!(expected.len(), 2);
}

#[test]
fn verify_suites_run_and_report() {
    let dir = workdir("verify");
    let out = reglam(&dir, &["verify", "guards"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS width guard"));
    let out = reglam(&dir, &["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dfa_run_agrees_with_the_library() {
    let dir = workdir("dfa-run");
    let d = parity_dfa(2, 2, true);
    std::fs::write(dir.join("odd-twos.json"), serde_json::to_string(&d).unwrap()).unwrap();
    for (word, arg) in [(vec![2], "2"), (vec![2, 2], "22"), (vec![1, 2, 1], "121")] {
        let out = reglam(&dir, &["dfa", "run", "--dfa", "odd-twos.json", "--word", arg]);
        let expected = run_dfa(&d, &word);
        assert_eq!(out.status.code(), Some(if expected { 0 } else { 1 }));
    }
}
