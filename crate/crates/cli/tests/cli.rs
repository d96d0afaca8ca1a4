use std::fs;
use std::path::Path;

use tempfile::TempDir;

fn fo2(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fo2").chain(args.iter().copied());
    let code = fo2_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

#[test]
fn bound_reports_paper_numbers() {
    let (code, out, _) = fo2(&["bound", "--n", "3", "--m", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("multiplicity 512\n"), "{out}");
    assert!(out.contains("total 4096\n"), "{out}");
    let (code, out, _) = fo2(&["bound", "--n", "1", "--m", "1", "--mode", "tight"]);
    assert_eq!(code, 0);
    assert!(out.contains("mode tight\n"), "{out}");
}

#[test]
fn all_king_graph_keeps_its_vertices() {
    let dir = TempDir::new().unwrap();
    let (g, h) = (path(&dir, "g.txt"), path(&dir, "h.txt"));
    let (code, _, err) = fo2(&[
        "gen-graph",
        "--colors",
        "6",
        "--edgecolors",
        "2",
        "--sizes",
        "1,1,1,1,1,1",
        "--out",
        &g,
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, _, err) = fo2(&["compress", "--model", &g, "--out", &h, "--mode", "paper"]);
    assert_eq!(code, 0, "{err}");
    let vertices = |p: &str| {
        let text = fs::read_to_string(p).unwrap();
        let mut colors: Vec<String> = text
            .lines()
            .filter_map(|l| l.strip_prefix("vertex "))
            .map(|l| l.split_whitespace().nth(1).unwrap().to_owned())
            .collect();
        colors.sort();
        colors
    };
    assert_eq!(vertices(&g), vertices(&h));
    let (code, out, _) = fo2(&["verify", "--before", &g, "--after", &h, "--mode", "paper"]);
    assert_eq!(code, 0);
    for p in ["a", "b", "c", "d", "e"] {
        assert!(out.contains(&format!("property {p} PASS")), "{out}");
    }
}

#[test]
fn tampered_graph_fails_verification() {
    let dir = TempDir::new().unwrap();
    let (g, h) = (path(&dir, "g.txt"), path(&dir, "h.txt"));
    fo2(&[
        "gen-graph",
        "--colors",
        "6",
        "--edgecolors",
        "3",
        "--sizes",
        "1,4,4,1,2,1",
        "--seed",
        "5",
        "--out",
        &g,
    ]);
    let (code, _, err) = fo2(&[
        "compress",
        "--model",
        &g,
        "--out",
        &h,
        "--dot",
        &path(&dir, "h.dot"),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(fs::read_to_string(dir.path().join("h.dot"))
        .unwrap()
        .starts_with("digraph"));
    let (code, out, _) = fo2(&["verify", "--before", &g, "--after", &h]);
    assert_eq!(code, 0, "{out}");
    // drop every vertex of color 1 from the compressed graph by recoloring it
    let text = fs::read_to_string(&h).unwrap();
    let tampered: String = text
        .lines()
        .map(
            |line| match line.split_whitespace().collect::<Vec<_>>()[..] {
                ["vertex", v, "1"] => format!("vertex {v} 2\n"),
                _ => format!("{line}\n"),
            },
        )
        .collect();
    fs::write(&h, tampered).unwrap();
    let (code, out, err) = fo2(&["verify", "--before", &g, "--after", &h]);
    assert_ne!(code, 0, "{out}{err}");
}

#[test]
fn compressed_structure_still_satisfies_its_sentence() {
    let dir = TempDir::new().unwrap();
    let (s, phi, t) = (
        path(&dir, "s.txt"),
        path(&dir, "phi.txt"),
        path(&dir, "t.txt"),
    );
    let (code, _, err) = fo2(&[
        "gen-structure",
        "--unary",
        "P",
        "--binary",
        "r",
        "--size",
        "9",
        "--seed",
        "4",
        "--out",
        &s,
        "--formula-out",
        &phi,
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = fo2(&["check", "--model", &s, "--formula", &phi]);
    assert_eq!((code, out.lines().next()), (0, Some("verdict TRUE")));
    let (code, _, err) = fo2(&["compress", "--model", &s, "--out", &t, "--seed", "1"]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = fo2(&["check", "--model", &t, "--formula", &phi]);
    assert_eq!(
        (code, out.lines().next()),
        (0, Some("verdict TRUE")),
        "{out}"
    );
}

#[test]
fn sat_finds_and_writes_a_witness() {
    let dir = TempDir::new().unwrap();
    let (phi, w) = (path(&dir, "phi.txt"), path(&dir, "w.txt"));
    fs::write(&phi, "vocab binary r\nA x. E y. r(x,y) & !r(y,x)\n").unwrap();
    let (code, out, err) = fo2(&["sat", "--formula", &phi, "--witness", &w]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("SAT\n"), "{out}");
    assert!(out.contains("size 3"), "{out}");
    let (code, out, _) = fo2(&["check", "--model", &w, "--formula", &phi]);
    assert_eq!((code, out.lines().next()), (0, Some("verdict TRUE")));

    fs::write(&phi, "vocab unary P\n(E x. P(x)) & A x. !P(x)\n").unwrap();
    let (code, out, _) = fo2(&["sat", "--formula", &phi]);
    assert_eq!(code, 1);
    assert!(out.starts_with("UNSAT\n"), "{out}");
}

#[test]
fn bad_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.txt");
    fs::write(&bad, "vocab unary P\nA x. Q(x)\n").unwrap();
    let (code, _, err) = fo2(&["normalize", "-f", &bad]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    let missing = dir.path().join("nope.txt");
    assert!(!Path::new(&missing).exists());
    let (code, _, _) = fo2(&[
        "check",
        "--model",
        missing.to_str().unwrap(),
        "--formula",
        &bad,
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = fo2(&["bound", "--n", "x", "--m", "0"]);
    assert_eq!(code, 2);
}
