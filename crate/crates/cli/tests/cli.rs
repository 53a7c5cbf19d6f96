use std::path::{Path, PathBuf};
use std::process::Command;

use skew_incidence_cli::{run, Outcome};
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture { dir: tempfile::tempdir().unwrap() };
        f.write("chain2.poset", "elements 2\n1 < 2\n");
        f.write("chain3.poset", "elements 3\n1 < 2\n2 < 3\n");
        f.write("anti2.poset", "elements 2\n");
        f.write("vee.poset", "# two minimal elements below a top\nelements 3\n1 < 3\n2 < 3\n");
        f.write("cycle.poset", "elements 2\n1 < 2\n2 < 1\n");
        f.write("backwards.poset", "elements 2\n2 < 1\n");
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).display().to_string()
    }

    fn run(&self, args: &[&str]) -> Outcome {
        let owned: Vec<String> = args
            .iter()
            .map(|a| match a.strip_prefix('@') {
                Some(name) => self.path(name),
                None => a.to_string(),
            })
            .collect();
        run(std::iter::once("skewinc".to_string()).chain(owned))
    }
}

#[test]
fn invert_example() {
    let f = Fixture::new();
    let out = f.run(&["invert", "--poset", "@chain2.poset", "--ring", "zmod:2", "--elem", "delta + 1*e[1,2]"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "1*e[1] + 1*e[2] + 1*e[1,2]\n");
}

#[test]
fn non_unit_exits_one() {
    let f = Fixture::new();
    let out = f.run(&["invert", "--poset", "@anti2.poset", "--ring", "zmod:4", "--elem", "2*e[1]+1*e[2]"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("not a unit at x1"), "{}", out.stderr);
}

#[test]
fn fingerprint_example() {
    let f = Fixture::new();
    let out = f.run(&["fingerprint", "--poset", "@chain3.poset", "--ring", "zmod:2"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "units=8 idempotents=26 center=2 radical=8 total=64\n");
    let out = f.run(&["fingerprint", "--poset", "@chain3.poset", "--ring", "gf:2:2:frobenius", "--bound", "100"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("unsupported"), "{}", out.stderr);
}

#[test]
fn parse_failures_exit_two() {
    let f = Fixture::new();
    let out = f.run(&["mul", "--poset", "@chain2.poset", "--ring", "zmod:2", "--elem", "1*e[2,1]"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("e[2,1]"), "{}", out.stderr);

    let out = f.run(&["mul", "--poset", "@cycle.poset", "--ring", "zmod:2", "--elem", "delta"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);

    let out = f.run(&["mul", "--poset", "@chain2.poset", "--ring", "zmod:1", "--elem", "delta"]);
    assert_eq!(out.code, 2);
    let out = f.run(&["mul", "--poset", "@chain2.poset", "--ring", "zmod:2", "--elem", "q*e[1]"]);
    assert_eq!(out.code, 2);
    let out = f.run(&["frobnicate"]);
    assert_eq!(out.code, 2);
}

#[test]
fn antichain_and_relabeling() {
    let f = Fixture::new();
    let out = f.run(&["mul", "--poset", "@anti2.poset", "--ring", "zmod:3", "--elem", "2*e[1]", "--elem", "2*e[1]+e[2]"]);
    assert_eq!(out.stdout, "1*e[1]\n");
    let out = f.run(&["mul", "--poset", "@backwards.poset", "--ring", "zmod:2", "--elem", "e[1,2]"]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("relabeled"), "{}", out.stderr);
}

#[test]
fn twisted_multiplication() {
    let f = Fixture::new();
    let out = f.run(&["mul", "--poset", "@chain2.poset", "--ring", "gf:2:2:frobenius", "--elem", "e[1,2]", "--elem", "w*e[2]"]);
    assert_eq!(out.stdout, "(w+1)*e[1,2]\n");
}

#[test]
fn structured_output() {
    let f = Fixture::new();
    let out = f.run(&[
        "radical-test", "--poset", "@chain2.poset", "--ring", "zmod:4", "--elem", "2*e[1] + 3*e[1,2]", "--elem", "delta",
        "--format", "structured",
    ]);
    let expected = "\
verb=radical-test
ring=zmod:4
poset=elements 2; 1 < 2
elem.1=2*e[1] + 3*e[1,2]
elem.2=1*e[1] + 1*e[2]
in_radical.1=true
in_radical.2=false
";
    assert_eq!(out.stdout, expected);
}

#[test]
fn structure_verbs() {
    let f = Fixture::new();
    let out = f.run(&["idempotent-test", "--poset", "@chain2.poset", "--ring", "zmod:2", "--elem", "e[1]+e[1,2]", "--elem", "e[1,2]"]);
    assert_eq!(out.stdout, "1*e[1] + 1*e[1,2]: idempotent\n1*e[1,2]: not idempotent\n");
    let out = f.run(&["diagonalize", "--poset", "@chain2.poset", "--ring", "zmod:2", "--elem", "e[1]+e[1,2]", "--format", "structured"]);
    assert!(out.stdout.contains("diagonal.1=1*e[1]\n"), "{}", out.stdout);
    let out = f.run(&["diagonalize", "--poset", "@chain2.poset", "--ring", "zmod:2", "--elem", "e[1,2]"]);
    assert_eq!(out.code, 1);
    let out = f.run(&["primitive-test", "--poset", "@vee.poset", "--ring", "zmod:3", "--elem", "e[3]", "--elem", "e[1]+e[2]"]);
    assert_eq!(out.stdout, "1*e[3]: primitive at x3 with coefficient 1\n1*e[1] + 1*e[2]: not primitive\n");
    let out = f.run(&["center", "--poset", "@vee.poset", "--ring", "zmod:3", "--elem", "2*delta", "--elem", "e[3]"]);
    assert_eq!(out.stdout, "2*e[1] + 2*e[2] + 2*e[3]: central\n1*e[3]: not central\n");
    let out = f.run(&["center-enum", "--poset", "@chain2.poset", "--ring", "gf:2:2:frobenius"]);
    assert_eq!(out.stdout.lines().last(), Some("4 central elements"));
    let out = f.run(&["check-axioms", "--ring", "prodproj:zmod:2", "--poset", "@vee.poset"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "ok\nok\n"));
}

#[test]
fn psi_round_trip_through_files() {
    let f = Fixture::new();
    let out = f.run(&[
        "build-psi", "--poset", "@vee.poset", "--ring", "gf:2:2:frobenius", "--target-poset", "@vee.poset",
        "--alpha", "2 1 3", "--phi", "sigma:1",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    f.write("psi.witness", &out.stdout);
    let rec = f.run(&["recover", "--witness", "@psi.witness", "--format", "structured"]);
    assert_eq!(rec.code, 0, "{}", rec.stderr);
    assert!(rec.stdout.contains("alpha=2 1 3\n"), "{}", rec.stdout);
    let ver = f.run(&["verify-witness", "--witness", "@psi.witness"]);
    assert_eq!(ver.stdout, "true\n");

    let broken = out.stdout.replace("e[1,3] -> 1*e[1,3]", "e[1,3] -> 1*e[1]");
    f.write("broken.witness", &broken);
    let ver = f.run(&["verify-witness", "--witness", "@broken.witness"]);
    assert!(ver.stdout.starts_with("rejected:"), "{}", ver.stdout);
    assert_eq!(f.run(&["recover", "--witness", "@broken.witness"]).code, 1);
}

#[test]
fn witness_file_with_poset_paths() {
    let f = Fixture::new();
    f.write(
        "swap.witness",
        "source-poset anti2.poset\nsource-ring zmod:3\ntarget-poset anti2.poset\ntarget-ring zmod:3\n\
         e[1] -> 1*e[2]\ne[2] -> 1*e[1]\n",
    );
    let rec = f.run(&["recover", "--witness", "@swap.witness"]);
    assert_eq!(rec.stdout, "x1 -> y2\nx2 -> y1\n", "{}", rec.stderr);
    f.write("bad.witness", "source-poset anti2.poset\nsource-ring zmod:3\nfoo bar\n");
    let rec = f.run(&["recover", "--witness", "@bad.witness"]);
    assert_eq!(rec.code, 2);
    assert!(rec.stderr.contains("line 3"), "{}", rec.stderr);
}

#[test]
fn hypothesis_refusal_and_exploratory_mode() {
    let f = Fixture::new();
    let out = f.run(&["build-psi", "--poset", "@chain2.poset", "--ring", "prodswap:zmod:2", "--target-poset", "@chain2.poset", "--alpha", "1 2"]);
    f.write("w.witness", &out.stdout);
    let rec = f.run(&["recover", "--witness", "@w.witness"]);
    assert_eq!(rec.code, 1);
    assert!(rec.stderr.contains("hypothesis violation"), "{}", rec.stderr);
    let rec = f.run(&["recover", "--witness", "@w.witness", "--exploratory", "--format", "structured"]);
    assert_eq!(rec.stdout, "verb=recover\nmode=exploratory\nalpha.1=y1\nalpha.2=y2\norder_isomorphism=true\n");
    let bad = f.run(&["build-psi", "--poset", "@chain2.poset", "--ring", "prodproj:zmod:2", "--target-poset", "@chain2.poset", "--alpha", "1 2", "--phi", "sigma:1"]);
    assert_eq!(bad.code, 1);
    assert!(bad.stderr.contains("hypothesis violation"), "{}", bad.stderr);
}

#[test]
fn output_is_deterministic() {
    let f = Fixture::new();
    let cases: Vec<Vec<&str>> = vec![
        vec!["center-enum", "--poset", "@vee.poset", "--ring", "prodswap:zmod:2", "--format", "structured"],
        vec!["fingerprint", "--poset", "@chain2.poset", "--ring", "trunc:2:2:tsq", "--format", "structured"],
        vec!["build-psi", "--poset", "@vee.poset", "--ring", "zmod:3", "--target-poset", "@vee.poset", "--alpha", "2 1 3"],
    ];
    for args in cases {
        let first = f.run(&args);
        assert_eq!(first.code, 0, "{}", first.stderr);
        for _ in 0..3 {
            assert_eq!(f.run(&args), first);
        }
    }
}

#[test]
fn binary_matches_library() {
    let f = Fixture::new();
    let exe = Path::new(env!("CARGO_BIN_EXE_skewinc"));
    let out = Command::new(exe)
        .args(["invert", "--poset", &f.path("anti2.poset"), "--ring", "zmod:4", "--elem", "2*e[1]+1*e[2]"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stderr), "error: not a unit at x1\n");
}
