//! Splitting one triangle move into diagram moves.
//!
//! The move is run as a one-parameter family: the new vertex travels from
//! the replaced edge to its final position (or the endpoint along its
//! rail). Every arc of the family is valid, because its triangle lies in
//! the move's triangle. The projection only changes at finitely many
//! parameters; bisection isolates them until consecutive generic samples
//! differ by at most one diagram move, which is identified by matching
//! canonical codes against every enumerated site.

use num_traits::Signed;

use super::{apply_triangle, IsotopyError, TriangleMove3D};
use crate::diagram::{End, RailDiagram};
use crate::geometry::predicates::{point_in_tri2, seg2_hit, Hit2};
use crate::geometry::{project_railplane, GeometryError, RailArc3D};
use crate::moves::{apply_move, enumerate_creations, enumerate_reductions, MoveSite};
use crate::rational::{q, qr, Q, P2, P3};
use crate::search::connect;

/// Largest number of projected features (arc vertices, double points,
/// rail crossings, strands through) a triangle may contain.
pub const MAX_FEATURES: usize = 3;

const MAX_BISECTIONS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Isotopy(#[from] IsotopyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("out of scope: projected triangle holds {found} features (limit {limit})")]
    Scope { found: usize, limit: usize },
    #[error("projected triangle is degenerate")]
    DegenerateProjection,
    #[error("could not identify the diagram change near parameter {0}")]
    Unidentified(String),
}

fn pr(p: &P3) -> P2 {
    P2::new(p.x.clone(), p.z.clone())
}

/// Segment `(s, f]` (shared corner `s` of the triangle excluded) meets the
/// closed projected triangle `(s, b, c)`.
fn leaves_into(s: &P2, b: &P2, c: &P2, f: &P2) -> bool {
    let (e1, e2, v) = (b.sub(s), c.sub(s), f.sub(s));
    let o = e1.cross(&e2);
    let k1 = e1.cross(&v) * &o;
    let k2 = v.cross(&e2) * &o;
    !k1.is_negative() && !k2.is_negative()
}

fn seg_meets_tri(p: &P2, r: &P2, t: &[P2; 3]) -> bool {
    point_in_tri2(p, &t[0], &t[1], &t[2])
        || point_in_tri2(r, &t[0], &t[1], &t[2])
        || (0..3).any(|k| seg2_hit(p, r, &t[k], &t[(k + 1) % 3]) != Hit2::None)
}

/// Counts projected features in the closed projected triangle of `m`.
pub fn feature_count(a: &RailArc3D, m: &TriangleMove3D) -> Result<usize, DecomposeError> {
    let tri3 = m.triangle(a).ok_or(IsotopyError::InvalidMove(Default::default()))?;
    let t = [pr(&tri3[0]), pr(&tri3[1]), pr(&tri3[2])];
    if t[1].sub(&t[0]).cross(&t[2].sub(&t[0])) == q(0) {
        return Err(DecomposeError::DegenerateProjection);
    }
    let v: Vec<P2> = a.vertices.iter().map(pr).collect();
    let n = a.segment_count();
    let corners: Vec<&P2> = t.iter().collect();
    let is_side = |x: &P2, y: &P2| (0..3).any(|k| (x, y) == (&t[k], &t[(k + 1) % 3]) || (y, x) == (&t[k], &t[(k + 1) % 3]));
    let mut count = 0;
    // Arc vertices.
    for p in &v {
        if !corners.contains(&p) && point_in_tri2(p, &t[0], &t[1], &t[2]) {
            count += 1;
        }
    }
    // Strands: arc segments not bounding the triangle, and rails.
    for j in 0..n {
        let (p, r) = (&v[j], &v[j + 1]);
        if is_side(p, r) {
            continue;
        }
        let meets = match (corners.iter().position(|c| *c == p), corners.iter().position(|c| *c == r)) {
            (Some(i), None) => leaves_into(p, &t[(i + 1) % 3], &t[(i + 2) % 3], r),
            (None, Some(i)) => leaves_into(r, &t[(i + 1) % 3], &t[(i + 2) % 3], p),
            (None, None) => seg_meets_tri(p, r, &t),
            (Some(_), Some(_)) => false,
        };
        if meets {
            count += 1;
        }
    }
    let slide_rail = match m {
        TriangleMove3D::SpaceSlide { end: End::Leg, .. } => Some(q(0)),
        TriangleMove3D::SpaceSlide { end: End::Head, .. } => Some(q(1)),
        _ => None,
    };
    let xs: Vec<&Q> = t.iter().map(|p| &p.x).collect();
    let (lo, hi) = (xs.iter().min().unwrap(), xs.iter().max().unwrap());
    for c in [q(0), q(1)] {
        if Some(&c) != slide_rail.as_ref() && **lo < c && c < **hi {
            count += 1;
        }
    }
    // Double points and rail crossings of the projected arc, except those
    // on the edges being moved.
    for i in 0..n {
        if is_side(&v[i], &v[i + 1]) {
            continue;
        }
        for j in i + 2..n {
            if is_side(&v[j], &v[j + 1]) {
                continue;
            }
            if let Hit2::Point { t: s, .. } = seg2_hit(&v[i], &v[i + 1], &v[j], &v[j + 1]) {
                let x = v[i].lerp(&v[i + 1], &s);
                if point_in_tri2(&x, &t[0], &t[1], &t[2]) {
                    count += 1;
                }
            }
        }
        for c in [q(0), q(1)] {
            let (p, r) = (&v[i], &v[i + 1]);
            if p.x == r.x {
                continue;
            }
            let s = (&c - &p.x) / (&r.x - &p.x);
            if s.is_positive() && s < q(1) {
                let x = p.lerp(r, &s);
                if point_in_tri2(&x, &t[0], &t[1], &t[2]) {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// The arc at parameter `t` of the family running `m` from `a`.
fn family(a: &RailArc3D, m: &TriangleMove3D, t: &Q) -> RailArc3D {
    let mut v = a.vertices.clone();
    match m {
        TriangleMove3D::Subdivide { edge, apex } => {
            let mid = v[*edge].lerp(&v[edge + 1], &qr(1, 2));
            v.insert(edge + 1, mid.lerp(apex, t));
        }
        TriangleMove3D::SpaceSlide { end, point } => {
            let k = if *end == End::Leg { 0 } else { v.len() - 1 };
            v[k] = v[k].lerp(point, t);
        }
        TriangleMove3D::Merge { .. } => unreachable!("merges run as reversed subdivisions"),
    }
    RailArc3D::new(v)
}

/// The move taking `from` to a diagram with `to`'s code, if one exists.
fn single_move(from: &RailDiagram, to: &RailDiagram) -> Option<MoveSite> {
    let want = to.canonical_code();
    let cap = from.crossing_count().max(to.crossing_count());
    let mut sites = enumerate_reductions(from).ok()?;
    sites.extend(enumerate_creations(from, cap).ok()?);
    sites.into_iter().find(|s| apply_move(from, s).map(|r| r.canonical_code() == want).unwrap_or(false))
}

struct Run<'a> {
    a: &'a RailArc3D,
    m: &'a TriangleMove3D,
}

impl Run<'_> {
    /// A generic sample strictly between `lo` and `hi`, near the middle.
    fn sample(&self, lo: &Q, hi: &Q) -> Option<(Q, RailDiagram)> {
        for (n, d) in [(1, 2), (1, 3), (2, 3), (3, 7), (4, 7), (5, 11), (6, 11)] {
            let t = lo + (hi - lo) * qr(n, d);
            if let Ok(g) = project_railplane(&family(self.a, self.m, &t)) {
                return Some((t, g));
            }
        }
        None
    }

    fn between(&self, lo: &Q, dlo: &RailDiagram, hi: &Q, dhi: &RailDiagram, depth: usize) -> Result<Vec<MoveSite>, DecomposeError> {
        if dlo.canonical_code() == dhi.canonical_code() {
            return Ok(Vec::new());
        }
        if let Some(s) = single_move(dlo, dhi) {
            return Ok(vec![s]);
        }
        let split = if depth < MAX_BISECTIONS { self.sample(lo, hi) } else { None };
        let Some((mid, dmid)) = split else {
            // Coincident events: fall back to a short search.
            let cap = dlo.crossing_count().max(dhi.crossing_count()) + 2;
            return match connect(dlo, dhi, cap, 4) {
                Ok(out) if out.is_connected() => Ok(out.path().unwrap().to_vec()),
                _ => Err(DecomposeError::Unidentified(crate::rational::fmt_q(lo))),
            };
        };
        let mut out = self.between(lo, dlo, &mid, &dmid, depth + 1)?;
        out.extend(self.between(&mid, &dmid, hi, dhi, depth + 1)?);
        Ok(out)
    }
}

/// Diagram moves taking the rail-plane projection of `a` to that of
/// `apply_triangle(a, m)`. Sites address the canonical labeling, so
/// [`crate::moves::replay`] from `project_railplane(a)` reproduces the
/// target's canonical code.
pub fn decompose_to_nice(a: &RailArc3D, m: &TriangleMove3D) -> Result<Vec<MoveSite>, DecomposeError> {
    let b = apply_triangle(a, m)?;
    let found = feature_count(a, m)?;
    if found > MAX_FEATURES {
        return Err(DecomposeError::Scope { found, limit: MAX_FEATURES });
    }
    let da = project_railplane(a)?;
    let db = project_railplane(&b)?;
    if let TriangleMove3D::Merge { vertex } = m {
        let back = TriangleMove3D::Subdivide { edge: vertex - 1, apex: a.vertices[*vertex].clone() };
        let run = Run { a: &b, m: &back };
        let path = run.between(&q(0), &db, &q(1), &da, 0)?;
        return reverse(&db, &path);
    }
    Run { a, m }.between(&q(0), &da, &q(1), &db, 0)
}

fn reverse(from: &RailDiagram, path: &[MoveSite]) -> Result<Vec<MoveSite>, DecomposeError> {
    let mut states = vec![from.canonical()];
    for s in path {
        let next = apply_move(states.last().unwrap(), s).map_err(|e| DecomposeError::Unidentified(e.to_string()))?;
        states.push(next);
    }
    let mut out = Vec::new();
    for i in (0..path.len()).rev() {
        let inv = crate::moves::inverse_site(&states[i], &path[i], &states[i + 1])
            .map_err(|e| DecomposeError::Unidentified(e.to_string()))?;
        out.push(inv);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::replay;

    fn check(a: &RailArc3D, m: &TriangleMove3D) -> Vec<MoveSite> {
        let path = decompose_to_nice(a, m).unwrap();
        let b = apply_triangle(a, m).unwrap();
        let got = replay(&project_railplane(a).unwrap(), &path).unwrap();
        assert_eq!(got.canonical_code(), project_railplane(&b).unwrap().canonical_code());
        path
    }

    #[test]
    fn empty_triangle_gives_no_moves() {
        let m = TriangleMove3D::Subdivide { edge: 0, apex: P3::new(qr(1, 2), q(1), qr(1, 2)) };
        assert_eq!(feature_count(&RailArc3D::straight(), &m).unwrap(), 0);
        assert!(check(&RailArc3D::straight(), &m).is_empty());
    }

    fn winding() -> RailArc3D {
        RailArc3D::new(vec![
            P3::ints(0, 0, 0),
            P3::new(qr(3, 2), q(1), q(0)),
            P3::new(qr(3, 2), q(-1), q(1)),
            P3::new(qr(-1, 2), q(-1), q(1)),
            P3::new(qr(-1, 2), q(1), q(2)),
            P3::new(qr(1, 2), q(1), q(2)),
            P3::ints(1, 0, 3),
        ])
    }

    #[test]
    fn pulling_an_edge_over_a_back_strand() {
        // The first edge is lifted in front of the strand behind ℓ2 at z = 1.
        let a = winding();
        let m = TriangleMove3D::Subdivide { edge: 0, apex: P3::new(qr(5, 8), q(2), qr(3, 2)) };
        assert_eq!(feature_count(&a, &m).unwrap(), 2);
        let path = check(&a, &m);
        assert!(path.iter().any(|s| matches!(s, MoveSite::Omega2Plus { .. })), "{path:?}");
    }

    #[test]
    fn leg_slide_past_its_own_rail_crossing() {
        // The arc leaves the leg, passes in front of ℓ1 above it, and heads off.
        let a = RailArc3D::new(vec![
            P3::ints(0, 0, 0),
            P3::new(qr(-1, 2), q(1), q(0)),
            P3::new(qr(-1, 2), q(1), q(2)),
            P3::new(qr(1, 2), q(1), q(2)),
            P3::new(q(1), q(0), q(0)),
        ]);
        let m = TriangleMove3D::SpaceSlide { end: End::Leg, point: P3::ints(0, 0, 3) };
        let path = check(&a, &m);
        assert!(!path.is_empty());
    }

    #[test]
    fn merge_reverses_subdivide() {
        let m = TriangleMove3D::Subdivide { edge: 0, apex: P3::new(qr(1, 2), q(1), q(2)) };
        let b = apply_triangle(&RailArc3D::straight(), &m).unwrap();
        check(&b, &TriangleMove3D::Merge { vertex: 1 });
    }

    #[test]
    fn random_single_moves_replay() {
        use rand::SeedableRng;
        let mut accepted = 0;
        for seed in 0..12u64 {
            let a = crate::geometry::random_arc(5, seed).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let Some((m, _)) = super::super::random_move(&a, &mut rng, 500) else { continue };
            match decompose_to_nice(&a, &m) {
                Ok(_) => {
                    check(&a, &m);
                    accepted += 1;
                }
                Err(DecomposeError::Scope { .. }) | Err(DecomposeError::DegenerateProjection) => {}
                Err(e) => panic!("seed {seed}: {m}: {e}"),
            }
        }
        assert!(accepted > 0);
    }
}
