use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn rkd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rkd")).args(args).output().expect("rkd runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn kink_is_one_move_from_trivial() {
    let o = rkd(&["equiv", &fixture("trivial.rkd"), &fixture("kink.rkd")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("CONNECTED 1 moves"), "{text}");
    assert_eq!(lines.len(), 2);
}

#[test]
fn different_words_are_not_found() {
    let o = rkd(&["equiv", &fixture("trivial.rkd"), &fixture("winding.arc")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("NOT_FOUND"));
}

#[test]
fn f2_of_trivial_is_empty_word() {
    let o = rkd(&["invariant", &fixture("trivial.rkd"), "--kind", "f2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "ε\n");
    let o = rkd(&["invariant", &fixture("winding.arc"), "--kind", "f2"]);
    assert_eq!(stdout(&o), "x2 x1\n");
}

#[test]
fn project_reports_two_crossings_for_figure1() {
    let o = rkd(&["project", &fixture("figure1_c1.arc")]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("2 arc crossings, 0 rail crossings"), "{err}");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.rkd");
    std::fs::write(&path, &o.stdout).unwrap();
    let v = rkd(&["validate", path.to_str().unwrap()]);
    assert_eq!(stdout(&v), "ok: rail diagram, 18 darts, 2 arc crossings, 0 rail crossings\n");
}

#[test]
fn exit_codes() {
    assert_eq!(rkd(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(rkd(&["invariant", &fixture("trivial.rkd")]).status.code(), Some(2));
    assert_eq!(rkd(&["validate", "/no/such/file.rkd"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.arc");
    std::fs::write(&bad, "rail-arc v1\nv 0 0 0\nv 1/0 0 0\n").unwrap();
    let o = rkd(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column 3"));
    assert_eq!(rkd(&["moves", "apply", &fixture("kink.rkd"), "--site", "O9:1"]).status.code(), Some(1));
}

#[test]
fn moves_apply_then_simplify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("k2.rkd");
    let list = stdout(&rkd(&["moves", "list", &fixture("kink.rkd")]));
    let site = list.lines().find(|l| l.ends_with("\tO2+")).unwrap().split('\t').next().unwrap().to_string();
    let o = rkd(&["moves", "apply", &fixture("kink.rkd"), "--site", &site]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&k, &o.stdout).unwrap();
    let s = rkd(&["simplify", k.to_str().unwrap()]);
    assert_eq!(stdout(&s), std::fs::read_to_string(fixture("trivial.rkd")).unwrap().lines()
        .filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect::<String>());
}

#[test]
fn theta_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("k.theta");
    std::fs::write(&t, rkd(&["theta", "to", &fixture("kink.rkd")]).stdout).unwrap();
    let back = stdout(&rkd(&["theta", "from", t.to_str().unwrap()]));
    let canonical: String = std::fs::read_to_string(fixture("kink.rkd")).unwrap().lines()
        .filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    assert_eq!(back, canonical);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.svg");
    let o = rkd(&["render", &fixture("trivial.rkd"), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    assert_eq!(svg.matches("stroke=\"#c0392b\"").count(), 2);
    assert_eq!(svg.matches("<polyline").count(), 3);
}

/// Every command twice with identical inputs and seeds.
#[test]
fn every_command_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let arc = dir.path().join("r.arc");
    let o = rkd(&["random-arc", "--segments", "6", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&arc, &o.stdout).unwrap();
    let arc = arc.to_str().unwrap().to_string();
    let theta = dir.path().join("k.theta");
    std::fs::write(&theta, rkd(&["theta", "to", &fixture("kink.rkd")]).stdout).unwrap();
    let theta = theta.to_str().unwrap().to_string();
    let (t, k, w, f1) = (fixture("trivial.rkd"), fixture("kink.rkd"), fixture("winding.arc"), fixture("figure1_c1.arc"));
    let runs: Vec<Vec<&str>> = vec![
        vec!["validate", &k],
        vec!["project", &arc, "--plane", "rail"],
        vec!["project", &arc, "--plane", "perp"],
        vec!["perturb", &w, "--seed", "5"],
        vec!["moves", "list", &k],
        vec!["moves", "apply", &t, "--site", "R1+:leg:1:0"],
        vec!["simplify", &f1],
        vec!["equiv", &t, &k],
        vec!["equiv", &t, &f1, "--max-crossings", "4", "--max-depth", "6"],
        vec!["invariant", &f1, "--kind", "f2"],
        vec!["invariant", &f1, "--kind", "bracket"],
        vec!["invariant", &f1, "--kind", "writhe"],
        vec!["random-arc", "--segments", "8", "--seed", "3"],
        vec!["random-isotopy", &arc, "--steps", "4", "--seed", "9"],
        vec!["decompose", &w, "--move", "subdivide:0:5/8,2,3/2"],
        vec!["theta", "to", &k],
        vec!["theta", "from", &theta],
        vec!["render", &k],
        vec!["render", &arc],
    ];
    for args in runs {
        let (a, b) = (rkd(&args), rkd(&args));
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr, "{args:?}");
        assert!(!a.stdout.is_empty(), "{args:?}");
    }
}
