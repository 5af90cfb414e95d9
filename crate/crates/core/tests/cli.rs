use std::fs;
use std::path::PathBuf;

use mmdc::cli::{run, EXIT_BUDGET, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn mmdc(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mmdc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mmdc-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

const TWO_BY_ONE: &str = "mmdc 1\n2 1\n2\n3\n1 1\n1 1\n1\n2\n";
// Three units on a single edge: the one row needs more partners than exist.
const TOO_DENSE: &str = "mmdc 1\n1 1\n4\n3\n3\n3\n3\n";
const STALLS_VALID: &str = "mmdc 1\n2 1\n3\n4\n2 1\n2 1\n3\n3\n";

#[test]
fn solve_prints_cost_and_pairs() {
    let inst = scratch("two_by_one.txt", TWO_BY_ONE);
    let r = mmdc(&["solve", inst.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.starts_with("cost 5\n1 1 1\n2 1 1\n"), "{}", r.out);
}

#[test]
fn solution_verifies_both_ways() {
    let inst = scratch("verify_inst.txt", TWO_BY_ONE);
    let r = mmdc(&["solve", inst.to_str().unwrap()]);
    let sol = scratch("verify_sol.txt", &r.out);
    for mode in ["declared", "expanded"] {
        let v = mmdc(&[
            "verify",
            inst.to_str().unwrap(),
            sol.to_str().unwrap(),
            "--semantics",
            mode,
        ]);
        assert_eq!(v.code, EXIT_OK, "{mode}: {}", v.out);
    }
    let bad = scratch("verify_bad.txt", "cost 2\n1 1 1\n");
    let v = mmdc(&["verify", inst.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(v.code, EXIT_USAGE);
    assert!(v.out.contains("FAIL"), "{}", v.out);
}

#[test]
fn declared_report_appends_checks() {
    let inst = scratch("declared.txt", TWO_BY_ONE);
    let r = mmdc(&[
        "solve",
        inst.to_str().unwrap(),
        "--semantics",
        "declared-report",
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert!(
        r.out.lines().any(|l| l.starts_with("# declared:")),
        "{}",
        r.out
    );
}

#[test]
fn rejected_instance_exits_with_usage_code() {
    let inst = scratch("rejected.txt", TOO_DENSE);
    let r = mmdc(&["solve", inst.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("α_i ≤ 2t"), "{}", r.err);
}

#[test]
fn infeasible_instance_names_hall_violator() {
    let inst = scratch("stalls.txt", STALLS_VALID);
    let r = mmdc(&["solve", inst.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_INFEASIBLE, "{}{}", r.out, r.err);
    assert!(r.err.contains("Hall violator"), "{}", r.err);
}

#[test]
fn parse_errors_carry_positions() {
    let inst = scratch("garbage.txt", "mmdc 1\n2 x\n");
    let r = mmdc(&["solve", inst.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("line 2"), "{}", r.err);
}

#[test]
fn missing_file_and_bad_flags_are_usage_errors() {
    assert_eq!(mmdc(&["solve", "/nonexistent/instance"]).code, EXIT_USAGE);
    assert_eq!(mmdc(&["solve"]).code, EXIT_USAGE);
    assert_eq!(mmdc(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(mmdc(&["gen", "--s", "0", "--t", "3"]).code, EXIT_USAGE);
    assert_eq!(mmdc(&["--help"]).code, EXIT_OK);
}

#[test]
fn gen_is_seeded_and_solvable() {
    let a = mmdc(&["gen", "--s", "5", "--t", "4", "--seed", "11"]);
    let b = mmdc(&["gen", "--s", "5", "--t", "4", "--seed", "11"]);
    let c = mmdc(&["gen", "--s", "5", "--t", "4", "--seed", "12"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.out, b.out);
    assert_ne!(a.out, c.out);
    let inst = scratch("generated.txt", &a.out);
    assert_eq!(mmdc(&["solve", inst.to_str().unwrap()]).code, EXIT_OK);
}

#[test]
fn trace_streams_events_to_stderr() {
    let inst = scratch("trace.txt", TWO_BY_ONE);
    let r = mmdc(&["solve", inst.to_str().unwrap(), "--trace"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.err.contains("event=phase"), "{}", r.err);
    assert!(r.err.contains("event=augment"), "{}", r.err);
    assert!(!r.out.contains("event="));
}

#[test]
fn seeded_root_order_keeps_cost() {
    let text = mmdc(&["gen", "--s", "6", "--t", "6", "--seed", "3"]).out;
    let inst = scratch("seeded.txt", &text);
    let plain = mmdc(&["solve", inst.to_str().unwrap()]);
    let shuffled = mmdc(&["solve", inst.to_str().unwrap(), "--seed-order", "99"]);
    assert_eq!(plain.out.lines().next(), shuffled.out.lines().next());
}

#[test]
fn oracle_agrees_with_solver() {
    let inst = scratch("oracle.txt", TWO_BY_ONE);
    let r = mmdc(&["oracle", inst.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("cost 5"), "{}", r.out);
    let d = mmdc(&[
        "oracle",
        inst.to_str().unwrap(),
        "--mode",
        "declared",
        "--pair-cap",
        "0",
    ]);
    assert_eq!(d.code, EXIT_OK);
    assert!(d.out.contains("cost 5"), "{}", d.out);
    let inf = scratch("oracle_inf.txt", STALLS_VALID);
    assert_eq!(
        mmdc(&["oracle", inf.to_str().unwrap()]).code,
        EXIT_INFEASIBLE
    );
}

#[test]
fn oracle_budget_exhaustion_exits_3() {
    let text = mmdc(&[
        "gen", "--s", "6", "--t", "6", "--seed", "5", "--capmax", "3",
    ])
    .out;
    let inst = scratch("budget.txt", &text);
    let r = mmdc(&["oracle", inst.to_str().unwrap(), "--budget", "10"]);
    assert_eq!(r.code, EXIT_BUDGET, "{}{}", r.out, r.err);
}

#[test]
fn bench_prints_table() {
    let r = mmdc(&["bench", "--sizes", "4,8,12", "--reps", "1"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("slope"), "{}", r.out);
    assert_eq!(mmdc(&["bench", "--sizes", "8,4,16"]).code, EXIT_USAGE);
}
