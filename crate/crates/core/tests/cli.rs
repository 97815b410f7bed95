use std::path::{Path, PathBuf};
use std::process::Command;

use equiloc::cli::{exit_code, parse_problem, run, RunOptions};

fn problems_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems")
}

fn bundled() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(problems_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "equiloc"))
        .collect();
    files.sort();
    assert!(!files.is_empty());
    files
}

fn equiloc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_equiloc")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("equiloc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn bundled_problems_round_trip() {
    for path in bundled() {
        let text = std::fs::read_to_string(&path).unwrap();
        let p = parse_problem(&text).unwrap_or_else(|d| panic!("{}: {d}", path.display()));
        let formatted = p.to_string();
        let again = parse_problem(&formatted).unwrap();
        assert_eq!(again, p, "{}", path.display());
        assert_eq!(again.to_string(), formatted, "{}", path.display());
    }
}

#[test]
fn bundled_problems_succeed_with_passing_oracles() {
    for path in bundled() {
        let p = parse_problem(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let report = run(&p, &RunOptions::default());
        assert_eq!(exit_code(&report), 0, "{}:\n{}", path.display(), report.to_text());
        assert!(!report.to_text().contains("failed"), "{}", path.display());
    }
}

#[test]
fn reruns_are_byte_identical() {
    for path in bundled() {
        let file = path.to_str().unwrap();
        for extra in [&[][..], &["--json"][..]] {
            let args: Vec<&str> = ["run", file].iter().copied().chain(extra.iter().copied()).collect();
            let first = equiloc(&args);
            let second = equiloc(&args);
            assert_eq!(first.0, 0, "{file}: {}", first.2);
            assert_eq!(first, second, "{file}");
        }
    }
}

#[test]
fn json_report_is_versioned_and_lists_oracles() {
    let file = problems_dir().join("hyperbola.equiloc");
    let (code, out, _) = equiloc(&["run", file.to_str().unwrap(), "--json", "--seed", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "equiloc.report/1");
    let section = &v["sections"][0];
    assert_eq!(section["result"]["unit_ideal"], true);
    let oracles = section["oracles"].as_array().unwrap();
    assert_eq!(oracles.len(), 2);
    assert!(oracles.iter().all(|o| o["status"] == "passed"));
}

#[test]
fn documented_examples() {
    let minimal = temp_file("minimal.equiloc", "group rank 1\nvar x (1)\nvar y (0)\nquery fixedlocus\n");
    let (code, out, _) = equiloc(&["run", minimal.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("fixed locus ideal: <x>"), "{out}");

    let (_, out, _) = equiloc(&["run", problems_dir().join("hyperbola.equiloc").to_str().unwrap()]);
    assert!(out.contains("empty fixed locus (unit ideal)"), "{out}");

    let (_, out, _) = equiloc(&["run", problems_dir().join("plane.equiloc").to_str().unwrap()]);
    assert!(out.contains("V = {(-1), (-2)}"), "{out}");
    assert!(out.contains("s = (x, y)") && out.contains("verified: true"), "{out}");

    let (_, out, _) = equiloc(&["run", problems_dir().join("projective_mu3.equiloc").to_str().unwrap()]);
    assert!(out.contains("window 0..4,0..2: total rank 2"), "{out}");
}

#[test]
fn exit_codes() {
    let bad = temp_file("bad.equiloc", "group rank 1\nvar x (1)\nideal x +\n");
    let (code, _, err) = equiloc(&["run", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains(":3:10:"), "{err}");

    let (code, out, _) = equiloc(&["run", bad.to_str().unwrap(), "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["error"]["line"].as_u64(), v["error"]["kind"].as_str()), (Some(3), Some("input")));

    let inhomogeneous = temp_file("inhom.equiloc", "group rank 1\nvar x (1)\nvar y (0)\nideal x + y\n");
    let (code, _, err) = equiloc(&["run", inhomogeneous.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("(1)") && err.contains("(0)"), "{err}");

    let cubic = problems_dir().join("cubic_mu3.equiloc");
    let (code, out, _) = equiloc(&["run", cubic.to_str().unwrap(), "--groebner-budget", "0", "--json"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sections"][0]["error"]["kind"], "resource");

    let unsupported = temp_file("mixed.equiloc", "group rank 0 torsion 2 4\nquery euler (1, 1)\n");
    let (code, out, _) = equiloc(&["run", unsupported.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("error (input)"), "{out}");
}

#[test]
fn window_flag_overrides_file() {
    let file = problems_dir().join("projective_mu3.equiloc");
    let (code, out, _) = equiloc(&["run", file.to_str().unwrap(), "--window", "0..2,0..1"]);
    assert_eq!(code, 0);
    assert!(out.contains("window 0..2,0..1: total rank 2"), "{out}");
    let (code, _, _) = equiloc(&["run", file.to_str().unwrap(), "--window", "nonsense"]);
    assert_eq!(code, 1);
    let (code, _, _) = equiloc(&["run", file.to_str().unwrap(), "--truncation", "100"]);
    assert_eq!(code, 1);
}

#[test]
fn parser_never_panics_on_mangled_files() {
    for path in bundled() {
        let text = std::fs::read_to_string(&path).unwrap();
        let chars: Vec<char> = text.chars().collect();
        for cut in (0..chars.len()).step_by(7) {
            let truncated: String = chars[..cut].iter().collect();
            let _ = parse_problem(&truncated);
            let mut swapped = chars.clone();
            swapped[cut] = match swapped[cut] {
                '(' => ')',
                ',' => '^',
                ' ' => '(',
                _ => '#',
            };
            let _ = parse_problem(&swapped.iter().collect::<String>());
        }
    }
}
