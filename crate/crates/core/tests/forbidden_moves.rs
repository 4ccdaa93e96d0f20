use rail_knotoid::geometry::{project_railplane, RailArc3D};
use rail_knotoid::invariants::{f2_normal_form, f2_word};
use rail_knotoid::moves::forbidden::{audit_enumerators, mixed_bigon_corners, mixed_rail_bigon};
use rail_knotoid::moves::{apply_move, MoveSite, enumerate_creations, enumerate_reductions};
use rail_knotoid::rational::{qr, P3};
use rail_knotoid::RailDiagram;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(x: (i64, i64), y: i64, z: i64) -> P3 {
    P3::new(qr(x.0, x.1), qr(y, 1), qr(z, 1))
}

/// Leg on ℓ1, in front of ℓ2, back behind both rails, then in front of ℓ1
/// to the head: the word reads x2 x1.
pub fn winding_arc() -> RailArc3D {
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

fn nf(d: &RailDiagram) -> String {
    f2_normal_form(&f2_word(d).unwrap()).to_string()
}

#[test]
fn winding_fixture_reads_x2_x1() {
    let d = project_railplane(&winding_arc()).unwrap();
    assert_eq!(nf(&d), "x2 x1");
}

#[test]
fn mixed_bigon_changes_the_normal_form() {
    let d = project_railplane(&winding_arc()).unwrap();
    let before = nf(&d);
    let n = d.dart_count() as u32;
    let mut changed = 0;
    let mut applied = 0;
    for a in 0..n {
        for r in 0..n {
            if let Ok(e) = mixed_rail_bigon(&d, a, r) {
                applied += 1;
                assert!(e.validate().is_ok());
                if nf(&e) != before {
                    changed += 1;
                }
            }
        }
    }
    assert!(applied > 0);
    assert!(changed > 0, "{applied} mixed bigons, none changed {before}");
}

#[test]
fn mixed_bigon_is_never_removed_by_enumerated_moves() {
    let d = project_railplane(&winding_arc()).unwrap();
    let e = (0..d.dart_count() as u32)
        .flat_map(|a| (0..d.dart_count() as u32).map(move |r| (a, r)))
        .find_map(|(a, r)| mixed_rail_bigon(&d, a, r).ok())
        .unwrap();
    let corners = mixed_bigon_corners(&e);
    assert!(!corners.is_empty());
    for s in enumerate_reductions(&e).unwrap() {
        if let MoveSite::RailOmega2Minus { corner } = s {
            assert!(!corners.contains(&corner), "{s}");
        }
    }
    assert!(audit_enumerators(&e, e.crossing_count() + 2).is_ok());
}

#[test]
fn enumerator_audit_on_random_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut cur = project_railplane(&winding_arc()).unwrap();
    for _ in 0..25 {
        let cap = cur.crossing_count() + 2;
        audit_enumerators(&cur, cap).unwrap();
        let mut sites = enumerate_reductions(&cur).unwrap();
        sites.extend(enumerate_creations(&cur, 10).unwrap());
        let s = sites[rng.gen_range(0..sites.len())];
        cur = apply_move(&cur, &s).unwrap();
    }
}
