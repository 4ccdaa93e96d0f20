use proptest::prelude::*;
use rail_knotoid::geometry::{
    is_generic_perpendicular, is_generic_railplane, perturb, project_perpendicular, project_railplane, random_arc,
    RailArc3D,
};
use rail_knotoid::invariants::{bracket, bracket_skein_oracle, f2_normal_form, f2_word, F2Word, LaurentPoly};
use rail_knotoid::io::{parse_arc, parse_diagram, serialize_arc, serialize_diagram};
use rail_knotoid::isotopy::{apply_triangle, TriangleMove3D};
use rail_knotoid::knotoid::KnotoidDiagram;
use rail_knotoid::map::Dart;
use rail_knotoid::moves::{apply_move, enumerate_creations, enumerate_neutral, enumerate_reductions, inverse_site};
use rail_knotoid::rational::{fmt_q, parse_q, qr, P3};
use rail_knotoid::theta::{from_theta, to_theta};
use rail_knotoid::RailDiagram;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn walk(seed: u64, len: usize) -> RailDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = RailDiagram::trivial();
    for _ in 0..len {
        let mut sites = enumerate_reductions(&d).unwrap();
        sites.extend(enumerate_neutral(&d).unwrap());
        sites.extend(enumerate_creations(&d, 8).unwrap());
        d = apply_move(&d, &sites[rng.gen_range(0..sites.len())]).unwrap();
    }
    d
}

fn relabel(d: &RailDiagram, seed: u64) -> RailDiagram {
    let mut perm: Vec<Dart> = (0..d.dart_count() as Dart).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    RailDiagram::from_map(d.map().permuted(&perm))
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn canonical_code_ignores_labels(seed in any::<u64>(), len in 0usize..14, perm in any::<u64>()) {
        let d = walk(seed, len);
        let r = relabel(&d, perm);
        prop_assert!(r.validate().is_ok());
        prop_assert_eq!(r.canonical_code(), d.canonical_code());
        prop_assert_eq!(f2_word(&r).unwrap(), f2_word(&d).unwrap());
    }

    #[test]
    fn diagram_text_round_trips(seed in any::<u64>(), len in 0usize..14, perm in any::<u64>()) {
        let d = relabel(&walk(seed, len), perm);
        let text = serialize_diagram(&d);
        let back = parse_diagram(&text).unwrap();
        prop_assert_eq!(back.canonical_code(), d.canonical_code());
        prop_assert_eq!(serialize_diagram(&back), text);
    }

    #[test]
    fn every_site_has_an_inverse(seed in any::<u64>(), len in 0usize..12, pick in any::<u64>()) {
        let d = walk(seed, len).canonical();
        let mut sites = enumerate_reductions(&d).unwrap();
        sites.extend(enumerate_neutral(&d).unwrap());
        sites.extend(enumerate_creations(&d, 8).unwrap());
        let s = sites[(pick % sites.len() as u64) as usize];
        let after = apply_move(&d, &s).unwrap();
        let inv = inverse_site(&d, &s, &after).unwrap();
        prop_assert_eq!(apply_move(&after, &inv).unwrap().canonical_code(), d.canonical_code());
    }

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>(), len in 0usize..14) {
        let w = f2_word(&walk(seed, len)).unwrap();
        let n = f2_normal_form(&w);
        prop_assert!(n.is_normal());
        prop_assert_eq!(f2_normal_form(&n), n.clone());
        prop_assert_eq!(n.to_string().parse::<F2Word>().unwrap(), n);
    }

    #[test]
    fn theta_round_trip(seed in any::<u64>(), len in 0usize..14) {
        let d = walk(seed, len);
        let t = to_theta(&d).unwrap();
        prop_assert_eq!(t.node_count(), 2);
        prop_assert_eq!(from_theta(&t).unwrap().canonical_code(), d.canonical_code());
    }

    #[test]
    fn bracket_matches_oracle(seed in any::<u64>(), len in 0usize..10) {
        let k = KnotoidDiagram::forget_rails(&walk(seed, len));
        prop_assume!(k.xing_count() <= 8);
        let b = bracket(&k).unwrap();
        prop_assert_eq!(&b, &bracket_skein_oracle(&k).unwrap());
        prop_assert_eq!(b.to_string().parse::<LaurentPoly>().unwrap(), b);
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let x = qr(p, q);
        prop_assert_eq!(parse_q(&fmt_q(&x)).unwrap(), x);
    }

    #[test]
    fn arc_text_round_trips(segments in 1usize..9, seed in any::<u64>()) {
        let a = random_arc(segments, seed).unwrap();
        let text = serialize_arc(&a);
        prop_assert_eq!(parse_arc(&text).unwrap(), a);
    }

    #[test]
    fn random_arcs_project_generically(segments in 1usize..9, seed in any::<u64>()) {
        let a = random_arc(segments, seed).unwrap();
        prop_assert!(a.ensure_valid().is_ok());
        prop_assert!(project_railplane(&a).unwrap().validate().is_ok());
        prop_assert!(project_perpendicular(&a).unwrap().validate().is_ok());
    }

    /// Small integer coordinates are often degenerate; perturbing must
    /// land in general position without touching the rails' roles.
    #[test]
    fn perturb_makes_grid_arcs_generic(
        pts in prop::collection::vec((-2i64..4, -2i64..3, -2i64..3), 1..5),
        z0 in -2i64..3, z1 in -2i64..3, seed in any::<u64>(),
    ) {
        let mut v = vec![P3::new(qr(0, 1), qr(0, 1), qr(z0, 1))];
        v.extend(pts.iter().map(|&(x, y, z)| P3::new(qr(x, 1), qr(y, 1), qr(z, 1))));
        v.push(P3::new(qr(1, 1), qr(0, 1), qr(z1, 1)));
        let a = RailArc3D::new(v);
        prop_assume!(a.ensure_valid().is_ok());
        let b = perturb(&a, seed).unwrap();
        prop_assert!(b.ensure_valid().is_ok());
        prop_assert!(is_generic_railplane(&b).is_ok());
        prop_assert!(is_generic_perpendicular(&b).is_ok());
        prop_assert_eq!(b.vertices.len(), a.vertices.len());
        prop_assert_eq!(perturb(&a, seed).unwrap(), b);
    }

    #[test]
    fn subdivide_then_merge_is_identity(segments in 1usize..7, seed in any::<u64>(), t in 1i64..8) {
        let a = random_arc(segments, seed).unwrap();
        let s = a.segment(0);
        // A point on the first edge: a degenerate triangle, rejected.
        let mid = P3::new(
            &s.0.x + (&s.1.x - &s.0.x) * qr(t, 8),
            &s.0.y + (&s.1.y - &s.0.y) * qr(t, 8),
            &s.0.z + (&s.1.z - &s.0.z) * qr(t, 8),
        );
        let flat = TriangleMove3D::Subdivide { edge: 0, apex: mid.clone() };
        prop_assert!(apply_triangle(&a, &flat).is_err());
        let lifted = P3::new(mid.x.clone(), mid.y.clone() + qr(1, 1000), mid.z.clone());
        if let Ok(b) = apply_triangle(&a, &TriangleMove3D::Subdivide { edge: 0, apex: lifted }) {
            let back = apply_triangle(&b, &TriangleMove3D::Merge { vertex: 1 }).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
