//! The ten acceptance criteria, run in order. Each prints one PASS/FAIL
//! line; the test fails if any criterion does.
//!
//! `cargo test -p rail-knotoid --test acceptance -- --nocapture`

use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rail_knotoid::geometry::{project_perpendicular, project_railplane, random_arc, RailArc3D};
use rail_knotoid::invariants::{bracket, bracket_skein_oracle, f2_normal_form, f2_word, normalized_bracket};
use rail_knotoid::isotopy::{apply_triangle, decompose_to_nice, random_isotopy, random_move, DecomposeError};
use rail_knotoid::knotoid::KnotoidDiagram;
use rail_knotoid::moves::forbidden::{audit_enumerators, mixed_bigon_corners, mixed_rail_bigon};
use rail_knotoid::moves::{
    apply_move, enumerate_creations, enumerate_neutral, enumerate_reductions, inverse_site, kind_of, replay,
    MoveKind, MoveSite,
};
use rail_knotoid::rational::{qr, P3};
use rail_knotoid::search::{connect, SearchOutcome, StopReason};
use rail_knotoid::theta::{from_theta, to_theta, EdgeClass};
use rail_knotoid::RailDiagram;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn all_sites(d: &RailDiagram, cap: usize) -> Vec<MoveSite> {
    let mut v = enumerate_reductions(d).unwrap();
    v.extend(enumerate_neutral(d).unwrap());
    v.extend(enumerate_creations(d, cap).unwrap());
    v
}

fn random_step(d: &RailDiagram, cap: usize, rng: &mut ChaCha8Rng) -> RailDiagram {
    let sites = all_sites(d, cap);
    let s = sites[rng.gen_range(0..sites.len())];
    apply_move(d, &s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// A diagram reached by `len` random moves from the trivial diagram.
fn random_diagram(len: usize, cap: usize, rng: &mut ChaCha8Rng) -> RailDiagram {
    let mut d = RailDiagram::trivial();
    for _ in 0..len {
        d = random_step(&d, cap, rng);
    }
    d
}

fn nf(d: &RailDiagram) -> String {
    f2_normal_form(&f2_word(d).unwrap()).to_string()
}

fn winding_arc() -> RailArc3D {
    let p = |x: (i64, i64), y: i64, z: i64| P3::new(qr(x.0, x.1), qr(y, 1), qr(z, 1));
    RailArc3D::new(vec![
        p((0, 1), 0, 0),
        p((3, 2), 1, 0),
        p((3, 2), -1, 1),
        p((-1, 2), -1, 1),
        p((-1, 2), 1, 2),
        p((1, 2), 1, 2),
        p((1, 1), 0, 3),
    ])
}

fn structural_soundness() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut max_x = 0;
    for i in 0..1000 {
        let mut d = RailDiagram::trivial();
        for _ in 0..rng.gen_range(1..=10) {
            let sites = enumerate_creations(&d, 12).unwrap();
            if sites.is_empty() {
                break;
            }
            d = apply_move(&d, &sites[rng.gen_range(0..sites.len())]).map_err(|e| format!("#{i}: {e}"))?;
        }
        let rep = d.validate();
        if !rep.is_ok() {
            return Err(format!("diagram #{i}: {rep}"));
        }
        let m = d.map();
        if m.darts().count() == 0 || m.euler_characteristic() != 2 {
            return Err(format!("diagram #{i}: Euler characteristic {}", m.euler_characteristic()));
        }
        max_x = max_x.max(d.crossing_count());
    }
    let t = start.elapsed();
    if t > Duration::from_secs(60) {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("1000 valid, up to {max_x} crossings, {:.1}s", t.as_secs_f64()))
}

fn move_round_trips() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut got: BTreeMap<MoveKind, usize> = MoveKind::ALL.iter().map(|&k| (k, 0)).collect();
    let mut seen = HashSet::new();
    let mut diagrams = 0;
    while got.values().any(|&n| n < 200) {
        diagrams += 1;
        if diagrams > 20_000 {
            return Err(format!("ran out of diagrams: {got:?}"));
        }
        let d = random_diagram(rng.gen_range(0..=14), 8, &mut rng).canonical();
        let code = d.canonical_code();
        let mut per_kind: BTreeMap<MoveKind, usize> = BTreeMap::new();
        for s in all_sites(&d, 8) {
            let k = kind_of(&d, &s);
            if got[&k] >= 200 || per_kind.get(&k).copied().unwrap_or(0) >= 3 || !seen.insert((code.clone(), s)) {
                continue;
            }
            *per_kind.entry(k).or_default() += 1;
            let after = apply_move(&d, &s).map_err(|e| format!("{k} {s}: {e}"))?;
            let inv = inverse_site(&d, &s, &after).map_err(|e| format!("{k} {s}: {e}"))?;
            let back = apply_move(&after, &inv).map_err(|e| format!("{k} {s} then {inv}: {e}"))?;
            if back.canonical_code() != code {
                return Err(format!("{k} {s} then {inv} does not return"));
            }
            *got.get_mut(&k).unwrap() += 1;
        }
    }
    Ok(format!("11 kinds x 200 pairs from {diagrams} diagrams"))
}

fn invariant_stability() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut nontrivial = 0;
    for i in 0..500u64 {
        let mut d = if i % 2 == 0 {
            project_railplane(&random_arc(2 + (i as usize / 2) % 6, i).unwrap()).unwrap()
        } else {
            project_railplane(&winding_arc()).unwrap()
        };
        let want = nf(&d);
        if want != "ε" {
            nontrivial += 1;
        }
        for step in 0..rng.gen_range(1..=30) {
            let cap = (d.crossing_count() + 2).min(14);
            let sites = all_sites(&d, cap);
            let s = sites[rng.gen_range(0..sites.len())];
            d = apply_move(&d, &s).map_err(|e| format!("seq {i} step {step} {s}: {e}"))?;
            if nf(&d) != want {
                return Err(format!("seq {i} step {step}: {s} changed {want} to {}", nf(&d)));
            }
        }
    }
    Ok(format!("500 sequences, {nontrivial} with a nontrivial word"))
}

fn negative_control() -> Verdict {
    let d = project_railplane(&winding_arc()).unwrap();
    let before = nf(&d);
    if before != "x2 x1" {
        return Err(format!("fixture reads {before}"));
    }
    let n = d.dart_count() as u32;
    let mut changed = None;
    let mut applied = 0;
    for a in 0..n {
        for r in 0..n {
            if let Ok(e) = mixed_rail_bigon(&d, a, r) {
                applied += 1;
                if nf(&e) != before && changed.is_none() {
                    changed = Some(e);
                }
            }
        }
    }
    let e = changed.ok_or_else(|| format!("{applied} mixed bigons, none changed the word"))?;
    // The enumerators must never offer to undo such a bigon, on the
    // surgered diagram or along a random walk from the fixture.
    let corners = mixed_bigon_corners(&e);
    for s in enumerate_reductions(&e).unwrap() {
        if let MoveSite::RailOmega2Minus { corner } = s {
            if corners.contains(&corner) {
                return Err(format!("enumerator offers {s}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut cur = d.clone();
    let mut audited = 1;
    audit_enumerators(&e, e.crossing_count() + 2).map_err(|v| v.join("; "))?;
    for _ in 0..30 {
        audit_enumerators(&cur, cur.crossing_count() + 2).map_err(|v| v.join("; "))?;
        audited += 1;
        cur = random_step(&cur, (cur.crossing_count() + 2).min(12), &mut rng);
    }
    Ok(format!("surgery turns x2 x1 into {}; {audited} diagrams audited", nf(&e)))
}

struct Trial {
    before: RailArc3D,
    after: RailArc3D,
}

fn trials() -> Vec<Trial> {
    (0..100u64)
        .map(|i| {
            let before = random_arc(1 + (i as usize % 10), 1000 + i).unwrap();
            let (after, _) = random_isotopy(&before, 1 + (i as usize % 6), 2000 + i).unwrap();
            Trial { before, after }
        })
        .collect()
}

fn search_desk_check(trials: &[Trial]) -> Verdict {
    let start = Instant::now();
    let mut connected = 0;
    let mut flagged = Vec::new();
    for (i, t) in trials.iter().enumerate() {
        let d1 = project_railplane(&t.before).map_err(|e| format!("trial {i}: {e}"))?;
        let d2 = project_railplane(&t.after).map_err(|e| format!("trial {i}: {e}"))?;
        let cap = d1.crossing_count().max(d2.crossing_count()) + 4;
        match connect(&d1, &d2, cap, 12).map_err(|e| format!("trial {i}: {e}"))? {
            SearchOutcome::Connected { path, .. } => {
                let got = replay(&d1, &path).map_err(|e| format!("trial {i}: replay: {e}"))?;
                if got.canonical_code() != d2.canonical_code() {
                    return Err(format!("trial {i}: path does not reach the target"));
                }
                connected += 1;
            }
            SearchOutcome::NotFound { reason: StopReason::InvariantMismatch, .. } => {
                return Err(format!("trial {i}: invariants differ for isotopic arcs"));
            }
            SearchOutcome::NotFound { reason, explored, .. } => {
                flagged.push(format!("{i} ({reason:?}, {explored} explored)"));
            }
        }
    }
    let t = start.elapsed();
    let detail = format!("{connected}/100 connected, {:.1}s, flagged: [{}]", t.as_secs_f64(), flagged.join(", "));
    if connected >= 95 && t < Duration::from_secs(600) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn certificate_desk_check() -> Verdict {
    let mut accepted = 0;
    let mut out_of_scope = 0;
    for seed in 0..5000u64 {
        if accepted >= 60 {
            break;
        }
        let a = random_arc(2 + (seed as usize % 6), 5000 + seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some((m, b)) = random_move(&a, &mut rng, 500) else { continue };
        match decompose_to_nice(&a, &m) {
            Ok(path) => {
                let got = replay(&project_railplane(&a).unwrap(), &path).map_err(|e| format!("{m}: {e}"))?;
                let want = project_railplane(&apply_triangle(&a, &m).unwrap()).unwrap();
                debug_assert_eq!(want, project_railplane(&b).unwrap());
                if got.canonical_code() != want.canonical_code() {
                    return Err(format!("seed {seed}: {m}: replay misses the target"));
                }
                accepted += 1;
            }
            Err(DecomposeError::Scope { .. }) | Err(DecomposeError::DegenerateProjection) => out_of_scope += 1,
            Err(e) => return Err(format!("seed {seed}: {m}: {e}")),
        }
    }
    if accepted < 50 {
        return Err(format!("only {accepted} moves in scope"));
    }
    Ok(format!("{accepted}/{accepted} replayed exactly, {out_of_scope} out of scope"))
}

fn bracket_invariance(trials: &[Trial]) -> Verdict {
    for (i, t) in trials.iter().enumerate() {
        let b1 = normalized_bracket(&project_perpendicular(&t.before).map_err(|e| format!("trial {i}: {e}"))?);
        let b2 = normalized_bracket(&project_perpendicular(&t.after).map_err(|e| format!("trial {i}: {e}"))?);
        match (b1, b2) {
            (Ok(x), Ok(y)) if x == y => {}
            (Ok(x), Ok(y)) => return Err(format!("trial {i}: {x} vs {y}")),
            (x, y) => return Err(format!("trial {i}: {x:?} / {y:?}")),
        }
    }
    Ok("100/100 equal".into())
}

fn bracket_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    let mut most = 0;
    let mut attempt = 0u64;
    while done < 200 {
        attempt += 1;
        let k = if attempt.is_multiple_of(2) {
            let Ok(a) = random_arc(2 + (attempt as usize % 8), 8000 + attempt) else { continue };
            project_perpendicular(&a).unwrap()
        } else {
            KnotoidDiagram::forget_rails(&random_diagram(rng.gen_range(0..12), 8, &mut rng))
        };
        if k.xing_count() > 8 {
            continue;
        }
        let (x, y) = (bracket(&k).unwrap(), bracket_skein_oracle(&k).unwrap());
        if x != y {
            return Err(format!("state sum {x} vs oracle {y}"));
        }
        most = most.max(k.xing_count());
        done += 1;
    }
    Ok(format!("200 diagrams, up to {most} crossings"))
}

fn theta_round_trip() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..200 {
        let d = random_diagram(rng.gen_range(0..16), 8, &mut rng);
        let t = to_theta(&d).map_err(|e| format!("#{i}: {e}"))?;
        if t.node_count() != 2 {
            return Err(format!("#{i}: {} nodes", t.node_count()));
        }
        for c in [EdgeClass::Upper, EdgeClass::Middle, EdgeClass::Lower] {
            if t.walk(c).is_none() {
                return Err(format!("#{i}: no {c:?} edge walk"));
            }
        }
        let back = from_theta(&t).map_err(|e| format!("#{i}: {e}"))?;
        if back.canonical_code() != d.canonical_code() {
            return Err(format!("#{i}: round trip changed the diagram"));
        }
    }
    Ok("200/200".into())
}

/// Builds the CLI into its own target directory (so no lock is shared
/// with the running cargo) and runs every command twice.
fn cli_determinism() -> Verdict {
    let root: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", ".."].iter().collect();
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let target = root.join("target").join("acceptance-cli");
    let status = Command::new(cargo)
        .current_dir(&root)
        .args(["build", "-q", "-p", "rail-knotoid-cli", "--target-dir"])
        .arg(&target)
        .status()
        .map_err(|e| format!("cargo: {e}"))?;
    if !status.success() {
        return Err("building rkd failed".into());
    }
    let bin = target.join("debug").join(format!("rkd{}", std::env::consts::EXE_SUFFIX));
    let dir = std::env::temp_dir().join(format!("rkd-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let fx = |n: &str| root.join("fixtures").join(n).to_string_lossy().into_owned();
    let run = |args: &[String]| Command::new(&bin).args(args).output().map_err(|e| e.to_string());

    let arc = dir.join("r.arc").to_string_lossy().into_owned();
    let theta = dir.join("k.theta").to_string_lossy().into_owned();
    let o = run(&["random-arc", "--segments", "6", "--seed", "11"].map(String::from))?;
    std::fs::write(&arc, o.stdout).map_err(|e| e.to_string())?;
    let o = run(&["theta".into(), "to".into(), fx("kink.rkd")])?;
    std::fs::write(&theta, o.stdout).map_err(|e| e.to_string())?;

    let (t, k, w, f1) = (fx("trivial.rkd"), fx("kink.rkd"), fx("winding.arc"), fx("figure1_c1.arc"));
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<String>>();
    let commands = vec![
        s(&["validate", &k]),
        s(&["project", &arc, "--plane", "rail"]),
        s(&["project", &arc, "--plane", "perp"]),
        s(&["perturb", &w, "--seed", "5"]),
        s(&["moves", "list", &k]),
        s(&["moves", "apply", &t, "--site", "R1+:leg:1:0"]),
        s(&["simplify", &f1]),
        s(&["equiv", &t, &k]),
        s(&["equiv", &t, &f1, "--max-crossings", "4", "--max-depth", "6"]),
        s(&["equiv", &t, &w]),
        s(&["invariant", &f1, "--kind", "f2"]),
        s(&["invariant", &f1, "--kind", "bracket"]),
        s(&["invariant", &f1, "--kind", "writhe"]),
        s(&["random-arc", "--segments", "8", "--seed", "3"]),
        s(&["random-isotopy", &arc, "--steps", "4", "--seed", "9"]),
        s(&["decompose", &w, "--move", "subdivide:0:5/8,2,3/2"]),
        s(&["theta", "to", &k]),
        s(&["theta", "from", &theta]),
        s(&["render", &k]),
        s(&["render", &arc]),
    ];
    let n = commands.len();
    for args in commands {
        let (a, b) = (run(&args)?, run(&args)?);
        if a.status.code() != b.status.code() || a.stdout != b.stdout || a.stderr != b.stderr {
            return Err(format!("{args:?} differs between runs"));
        }
        if !matches!(a.status.code(), Some(0) | Some(3)) {
            return Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&a.stderr)));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{n} commands byte-identical across two runs"))
}

#[test]
fn acceptance() {
    let trials = trials();
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("structural soundness", Box::new(structural_soundness)),
        ("move round trips", Box::new(move_round_trips)),
        ("invariant stability", Box::new(invariant_stability)),
        ("forbidden-move negative control", Box::new(negative_control)),
        ("isotopy implies search connection", Box::new(|| search_desk_check(&trials))),
        ("triangle move certificates", Box::new(certificate_desk_check)),
        ("perpendicular bracket invariance", Box::new(|| bracket_invariance(&trials))),
        ("bracket oracle equivalence", Box::new(bracket_oracle)),
        ("theta round trip", Box::new(theta_round_trip)),
        ("CLI determinism", Box::new(cli_determinism)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        match v {
            Ok(detail) => println!("criterion {:2} PASS {name}: {detail} [{:.1}s]", i + 1, t.elapsed().as_secs_f64()),
            Err(detail) => {
                println!("criterion {:2} FAIL {name}: {detail} [{:.1}s]", i + 1, t.elapsed().as_secs_f64());
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
