use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_sites(d: &RailDiagram, cap: usize) -> Vec<MoveSite> {
    let mut v = enumerate_reductions(d).unwrap();
    v.extend(enumerate_creations(d, cap).unwrap());
    v
}

#[test]
fn trivial_offers_kinks_only() {
    let t = RailDiagram::trivial();
    assert!(enumerate_reductions(&t).unwrap().is_empty());
    let c = enumerate_creations(&t, 1).unwrap();
    let o1 = c.iter().filter(|s| matches!(s, MoveSite::Omega1Plus { .. })).count();
    let r1 = c.iter().filter(|s| matches!(s, MoveSite::RailOmega1Plus { .. })).count();
    assert_eq!(o1, 4);
    assert_eq!(r1, 8);
}

#[test]
fn every_trivial_site_applies_and_undoes() {
    let t = RailDiagram::trivial();
    for s in all_sites(&t, 2) {
        let r = apply_move(&t, &s).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert!(r.validate().is_ok());
        let (dx, rx) = crossing_delta(&t, &s);
        assert_eq!(r.xing_count() as i64, dx, "{s}");
        assert_eq!(r.railx_count() as i64, rx, "{s}");
        let inv = inverse_site(&t, &s, &r).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert_eq!(apply_move(&r, &inv).unwrap(), t, "{s} then {inv}");
    }
}

#[test]
fn random_walks_stay_valid_and_invertible() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let mut cur = RailDiagram::trivial();
        for _ in 0..20 {
            let sites = all_sites(&cur, 6);
            let s = sites[rng.gen_range(0..sites.len())];
            let next = apply_move(&cur, &s).unwrap_or_else(|e| panic!("{s}: {e}"));
            let (dx, rx) = crossing_delta(&cur, &s);
            assert_eq!(next.xing_count() as i64 - cur.xing_count() as i64, dx, "{s}");
            assert_eq!(next.railx_count() as i64 - cur.railx_count() as i64, rx, "{s}");
            let inv = inverse_site(&cur, &s, &next).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(apply_move(&next, &inv).unwrap(), cur);
            cur = next;
        }
    }
}

#[test]
fn kink_then_simplify_is_trivial() {
    let t = RailDiagram::trivial();
    for s in enumerate_creations(&t, 1).unwrap() {
        let r = apply_move(&t, &s).unwrap();
        let (back, path) = simplify(&r).unwrap();
        assert_eq!(back, t, "{s}");
        assert_eq!(path.len(), 1);
    }
}

#[test]
fn inapplicable_site_is_rejected() {
    let t = RailDiagram::trivial();
    assert!(matches!(
        apply_move(&t, &MoveSite::Omega1Minus { corner: 0 }),
        Err(MoveError::NotApplicable(_))
    ));
    assert!(apply_move(&t, &MoveSite::Omega3 { corner: 99 }).is_err());
}

#[test]
fn f2_normal_form_is_stable_on_walks() {
    use crate::invariants::{f2_normal_form, f2_word};
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut nontrivial = 0;
    for _ in 0..40 {
        let mut cur = RailDiagram::trivial();
        let nf = f2_normal_form(&f2_word(&cur).unwrap());
        for _ in 0..20 {
            let sites = all_sites(&cur, 6);
            let s = sites[rng.gen_range(0..sites.len())];
            cur = apply_move(&cur, &s).unwrap();
            assert_eq!(f2_normal_form(&f2_word(&cur).unwrap()), nf, "{s}");
            if !f2_word(&cur).unwrap().is_empty() {
                nontrivial += 1;
            }
        }
    }
    assert!(nontrivial > 0);
}
