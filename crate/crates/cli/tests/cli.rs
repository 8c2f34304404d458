//! End-to-end tests against the compiled binary: exit codes, pinned output
//! lines, trace files, and byte-stable experiment rows.

use std::path::PathBuf;
use std::process::{Command, Output};

use urm_core::{is_uniquely_restricted, read_edge_list, read_matching, Matching};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_urm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("urm-cli-{}-{name}", std::process::id()))
}

/// Writes a named catalog instance to a temp file and returns the path.
fn gen_file(name: &str, file: &str) -> PathBuf {
    let p = tmp(file);
    let out = run(&["gen", "named", name, "-o", p.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "gen named {name}: {}", stderr(&out));
    p
}

fn write_file(name: &str, content: &str) -> PathBuf {
    let p = tmp(name);
    std::fs::write(&p, content).expect("write temp file");
    p
}

#[test]
fn verify_reports_both_verdicts_and_a_witness_cycle() {
    let g = gen_file("C4", "c4.txt");
    let perfect = write_file("c4-pm.txt", "0 1\n2 3\n");
    let out = run(&["verify", g.to_str().unwrap(), perfect.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("uniquely restricted: no"), "{text}");
    assert!(text.contains("acyclic: no"), "{text}");
    let cyc = text
        .lines()
        .find(|l| l.starts_with("alternating cycle: "))
        .expect("witness line");
    let verts: Vec<usize> = cyc["alternating cycle: ".len()..]
        .split_whitespace()
        .map(|w| w.parse().unwrap())
        .collect();
    assert_eq!(verts.len(), 4, "C4 witness is the full cycle");

    let single = write_file("c4-one.txt", "0 1\n");
    let out = run(&["verify", g.to_str().unwrap(), single.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("uniquely restricted: yes"), "{text}");
    assert!(text.contains("acyclic: yes"), "{text}");
}

#[test]
fn file_errors_carry_line_numbers_and_distinct_exit_codes() {
    let bad = write_file("bad.txt", "3 2\n0 1\nx y\n");
    let m = write_file("bad-m.txt", "0 1\n");
    let out = run(&["verify", bad.to_str().unwrap(), m.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    // Well-formed files, but the matching uses a non-edge: precondition, not format.
    let g = gen_file("P4", "p4.txt");
    let not_edge = write_file("p4-m.txt", "0 3\n");
    let out = run(&["verify", g.to_str().unwrap(), not_edge.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("not an edge"), "{}", stderr(&out));

    let out = run(&["solve", tmp("absent.txt").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn solve_matches_the_pinned_examples() {
    for (name, param, size) in [("K33", "ur", 1), ("C7", "ur", 3), ("P4", "m", 2), ("FIG1", "ur", 3)] {
        let g = gen_file(name, &format!("solve-{name}.txt"));
        let out = run(&["solve", g.to_str().unwrap(), "--param", param]);
        assert_eq!(code(&out), 0, "{name}: {}", stderr(&out));
        let text = stdout(&out);
        assert!(text.contains(&format!("size: {size}")), "{name}: {text}");
        assert!(text.contains("optimal: yes"), "{name}: {text}");
    }
}

#[test]
fn solve_witness_round_trips_through_verify() {
    let g = gen_file("FIG1", "wit-fig1.txt");
    let w = tmp("wit-fig1-m.txt");
    let out = run(&[
        "solve",
        g.to_str().unwrap(),
        "--param",
        "ur",
        "--witness-out",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let graph = read_edge_list(&std::fs::read_to_string(&g).unwrap()).unwrap();
    let edges = read_matching(&std::fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!(edges.len(), 3);
    let m = Matching::new(&graph, &edges).unwrap();
    assert!(is_uniquely_restricted(&graph, &m).unwrap().is_ur());

    let out = run(&["verify", g.to_str().unwrap(), w.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
}

#[test]
fn solve_reports_budget_exhaustion_without_lying_about_optimality() {
    let g = gen_file("MCGEE", "budget-mcgee.txt");
    let out = run(&["solve", g.to_str().unwrap(), "--param", "ur", "--budget", "5"]);
    assert_eq!(code(&out), 4);
    assert!(stdout(&out).contains("optimal: no"), "{}", stdout(&out));
    assert!(stderr(&out).contains("budget"), "{}", stderr(&out));
}

#[test]
fn certify_bridges_emits_a_trace_that_starts_with_a_rule_token() {
    let g = gen_file("FIG1", "cb-fig1.txt");
    let trace = tmp("cb-fig1-trace.txt");
    let out = run(&[
        "certify-bridges",
        g.to_str().unwrap(),
        "--emit-trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("achieved: 3"), "{text}");
    assert!(text.contains("bound numerator: 18"), "{text}");
    assert!(text.contains("bound met: yes"), "{text}");

    let trace_text = std::fs::read_to_string(&trace).unwrap();
    assert!(trace_text.starts_with("C1 "), "{trace_text}");
    assert!(trace_text.contains("matching:"), "{trace_text}");
    assert!(trace_text.contains("m:15->12"), "{trace_text}");
}

#[test]
fn k33_gets_its_own_exit_code_and_exception_token() {
    let g = gen_file("K33", "cb-k33.txt");
    let out = run(&["certify-bridges", g.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let text = stdout(&out);
    assert!(text.contains("exception: K33_EXCEPTION"), "{text}");
    assert!(text.contains("bound met: no"), "{text}");
}

#[test]
fn certify_girth_strict_and_relaxed_modes() {
    let g = gen_file("MCGEE", "cg-mcgee.txt");
    let trace = tmp("cg-mcgee-trace.txt");
    let out = run(&[
        "certify-girth",
        g.to_str().unwrap(),
        "--emit-trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("target: 23"), "{text}");
    assert!(text.contains("bound met: yes"), "{text}");
    let trace_text = std::fs::read_to_string(&trace).unwrap();
    assert!(trace_text.starts_with("CUBIC_ENDVERTEX "), "{trace_text}");

    let c4 = gen_file("C4", "cg-c4.txt");
    let out = run(&["certify-girth", c4.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("girth 4"), "{}", stderr(&out));

    let out = run(&["certify-girth", c4.to_str().unwrap(), "--relaxed"]);
    assert_eq!(code(&out), 0, "3*1 >= 3 so the relaxed bound holds");
    let text = stdout(&out);
    assert!(text.contains("violation: "), "{text}");

    // Relaxed mode reports a miss honestly: K23 has n=5 but nu_ur=1.
    let k23 = gen_file("K23", "cg-k23.txt");
    let out = run(&["certify-girth", k23.to_str().unwrap(), "--relaxed"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("bound met: no"), "{}", stdout(&out));
}

#[test]
fn gen_is_deterministic_and_fig1_is_the_named_instance() {
    let a = run(&["gen", "fig1"]);
    let b = run(&["gen", "named", "FIG1"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));

    let r1 = run(&["gen", "random-subcubic", "20", "7"]);
    let r2 = run(&["gen", "random-subcubic", "20", "7"]);
    assert_eq!(code(&r1), 0);
    assert_eq!(stdout(&r1), stdout(&r2));
    let g = read_edge_list(&stdout(&r1)).unwrap();
    assert_eq!(g.n(), 20);
    assert!(g.is_subcubic());
    assert!(g.is_connected());

    let out = run(&["gen", "named", "NO_SUCH"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn gen_tight_tree_produces_a_tree_with_the_advertised_matching_number() {
    let out = run(&["gen", "tight-tree", "10"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let g = read_edge_list(&stdout(&out)).unwrap();
    assert_eq!(g.n(), 10);
    assert!(g.is_forest());
    assert!(g.is_connected());
    let m = urm_core::matching::forest_max_matching(&g).unwrap();
    assert_eq!(m.len(), 3);

    let out = run(&["gen", "tight-tree", "9"]);
    assert_eq!(code(&out), 3, "9 is not 3t+1");
}

#[test]
fn stats_summarizes_structure() {
    let g = gen_file("FIG1", "stats-fig1.txt");
    let out = run(&["stats", g.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for want in [
        "n: 12",
        "m: 15",
        "max degree: 3",
        "connected: yes",
        "cubic: no",
        "girth: 4",
        "bridges: 3",
        "good bridges: 3",
    ] {
        assert!(text.contains(want), "missing {want:?} in {text}");
    }
}

#[test]
fn experiment_rows_are_byte_stable_and_pinned() {
    let args = ["experiment", "named", "FIG1", "named", "K33", "named", "C7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b), "same corpus, same bytes");

    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "instance,n,m,bridges,good_bridges,girth,nu,nu_ur,nu_ur_kind,nu_ac,cert1_achieved,cert1_bound,cert2_achieved,cert2_bound,conj1_margin,falsified,explored,note"
    );
    assert_eq!(
        lines[1],
        "FIG1,12,15,3,3,4,5,3,exact,3,3,18,3,11,0,no,325,girth-relaxed;census-violations=2;cert2-unmet"
    );
    assert_eq!(
        lines[2],
        "K33,6,9,0,0,4,3,1,exact,1,1,9,1,5,-,no,20,K33_EXCEPTION;girth-relaxed;census-violations=1;cert2-unmet"
    );
    assert_eq!(lines[3], "C7,7,7,0,0,7,3,3,exact,3,3,7,3,6,11,no,35,-");

    // --csv writes the same bytes to a file.
    let csv = tmp("exp.csv");
    let mut with_csv: Vec<&str> = args.to_vec();
    with_csv.extend_from_slice(&["--csv", csv.to_str().unwrap()]);
    let c = run(&with_csv);
    assert_eq!(code(&c), 0);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), stdout(&a));
}

#[test]
fn experiment_seeded_corpora_replay_exactly() {
    let args = ["experiment", "random", "3", "8", "12", "5", "exhaustive", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    // 3 random rows plus the 1+1+2 connected subcubic graphs on up to 3 vertices.
    assert_eq!(text.lines().count(), 1 + 3 + 4, "{text}");
    assert!(text.contains("rnd-0-n"), "{text}");
    assert!(text.contains("ex-n3-i1"), "{text}");

    let out = run(&["experiment", "random", "3", "8"]);
    assert_eq!(code(&out), 2, "truncated corpus is a format error");
}
