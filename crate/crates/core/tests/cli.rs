use qflag::cli::{main_with, node_list, parse_letters};
use std::path::Path;

fn run_to(dir: &Path, name: &str, args: &[&str]) -> (i32, String) {
    let out = dir.join(name);
    let mut full = vec!["qflag".to_string()];
    full.extend(args.iter().map(|s| s.to_string()));
    full.push("--output".into());
    full.push(out.display().to_string());
    let code = main_with(full);
    (code, std::fs::read_to_string(&out).unwrap_or_default())
}

#[test]
fn weyl_lists_minimal_representatives() {
    let d = tempfile::tempdir().unwrap();
    let (code, text) = run_to(d.path(), "w", &["weyl", "--type", "A", "--rank", "2", "--S", "1"]);
    assert_eq!(code, 0);
    for rep in ["e", "s2", "s1s2"] {
        assert!(text.split_whitespace().any(|t| t.contains(rep)), "{rep} missing in {text}");
    }
}

#[test]
fn spectrum_of_su2() {
    let d = tempfile::tempdir().unwrap();
    let (code, text) =
        run_to(d.path(), "s", &["spectrum", "--type", "A", "--rank", "1", "--sigma", "1", "--lambda", "1", "--N", "4"]);
    assert_eq!(code, 0, "{text}");
    let evs: Vec<f64> = text
        .lines()
        .filter_map(|l| l.strip_prefix("eigenvalue="))
        .map(|l| l.split_whitespace().next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(evs.len(), 4);
    for (j, ev) in evs.iter().enumerate() {
        assert!((ev - 0.25f64.powi(j as i32)).abs() < 1e-12, "{text}");
    }
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(main_with(["qflag", "roots", "--q", "2"]), 3);
    assert_eq!(main_with(["qflag", "roots", "--type", "Z"]), 3);
    assert_eq!(main_with(["qflag", "nonsense"]), 3);
    let (code, _) = run_to(d.path(), "h", &["verify-h1", "--rank", "2", "--S", "1", "--sigma", "s2", "--lambda", "0,0"]);
    assert_eq!(code, 3);
    let (code, text) = run_to(d.path(), "g", &["gelfand", "--type", "G", "--rank", "2"]);
    assert_eq!(code, 0, "{text}");
    let (code, text) = run_to(d.path(), "t", &["tensor", "--lambda", "1,1", "--mu", "1,0"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("status=pass"));
}

#[test]
fn reports_are_reproducible() {
    let d = tempfile::tempdir().unwrap();
    let args = ["suite", "--only", "kernel-pattern,coset-reps,tensor-oracle", "--seed", "7"];
    let (c1, a) = run_to(d.path(), "a", &args);
    let (c2, b) = run_to(d.path(), "b", &args);
    assert_eq!(c1, 0, "{a}");
    assert_eq!(c1, c2);
    assert!(!a.is_empty());
    assert_eq!(a, b);
    assert!(a.lines().any(|l| l.starts_with("summary anchor=coset-reps")));
}

#[test]
fn argument_parsing() {
    assert_eq!(node_list(&[0, 2]), "{1,3}");
    assert_eq!(parse_letters("e", 2).unwrap(), Vec::<usize>::new());
    assert_eq!(parse_letters("s1s2", 2).unwrap(), vec![0, 1]);
    assert_eq!(parse_letters("2,1", 2).unwrap(), vec![1, 0]);
    assert!(parse_letters("s3", 2).is_err());
}
