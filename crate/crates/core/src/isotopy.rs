//! Rail isotopy in space: triangle moves and space slides.
//!
//! A triangle move replaces an edge `AB` by `AC, CB` (subdivide) or the
//! reverse (merge); it is valid when the closed triangle `ABC` meets the
//! arc only in the edges involved and misses the rails. A space slide moves
//! an endpoint `A` along its rail to `C`, replacing `AB` by `CB`; there the
//! triangle may meet the rails only in the side `AC`.

mod decompose;

pub use decompose::{decompose_to_nice, DecomposeError, MAX_FEATURES};

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{End, RailId, Report};
use crate::geometry::predicates::{touches_only_at_vertex, tri_rail, tri_seg_intersect, TriRail};
use crate::geometry::{is_generic_perpendicular, is_generic_railplane, rail_x, validate_arc, GeometryError, RailArc3D};
use crate::rational::{fmt_q, parse_q, q, qr, P3};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TriangleMove3D {
    /// Replace edge `edge` (from vertex `edge` to `edge + 1`) by two edges
    /// through `apex`.
    Subdivide { edge: usize, apex: P3 },
    /// Remove interior vertex `vertex`, joining its neighbours directly.
    Merge { vertex: usize },
    /// Move the endpoint `end` along its rail to `point`.
    SpaceSlide { end: End, point: P3 },
}

impl fmt::Display for TriangleMove3D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |p: &P3| format!("{},{},{}", fmt_q(&p.x), fmt_q(&p.y), fmt_q(&p.z));
        match self {
            TriangleMove3D::Subdivide { edge, apex } => write!(f, "subdivide:{edge}:{}", p(apex)),
            TriangleMove3D::Merge { vertex } => write!(f, "merge:{vertex}"),
            TriangleMove3D::SpaceSlide { end: End::Leg, point } => write!(f, "slide:leg:{}", p(point)),
            TriangleMove3D::SpaceSlide { end: End::Head, point } => write!(f, "slide:head:{}", p(point)),
        }
    }
}

impl FromStr for TriangleMove3D {
    type Err = String;

    /// `subdivide:I:x,y,z`, `merge:J` or `slide:leg|head:x,y,z`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let point = |t: &str| -> Result<P3, String> {
            let c: Vec<&str> = t.split(',').collect();
            if c.len() != 3 {
                return Err(format!("move {s:?}: point needs three coordinates"));
            }
            let v: Result<Vec<_>, _> = c.iter().map(|x| parse_q(x.trim())).collect();
            let v = v.map_err(|e| format!("move {s:?}: {e}"))?;
            Ok(P3::new(v[0].clone(), v[1].clone(), v[2].clone()))
        };
        let index = |t: &str| t.parse::<usize>().map_err(|_| format!("move {s:?}: bad index {t:?}"));
        match parts.as_slice() {
            ["subdivide", i, p] => Ok(TriangleMove3D::Subdivide { edge: index(i)?, apex: point(p)? }),
            ["merge", j] => Ok(TriangleMove3D::Merge { vertex: index(j)? }),
            ["slide", "leg", p] => Ok(TriangleMove3D::SpaceSlide { end: End::Leg, point: point(p)? }),
            ["slide", "head", p] => Ok(TriangleMove3D::SpaceSlide { end: End::Head, point: point(p)? }),
            _ => Err(format!("unrecognised move {s:?}")),
        }
    }
}

impl TriangleMove3D {
    /// The triangle `(A, B, C)`: `AB` is the edge that is replaced (or the
    /// one that replaces, for merge), `C` the new point.
    pub fn triangle(&self, a: &RailArc3D) -> Option<[P3; 3]> {
        let v = &a.vertices;
        match self {
            TriangleMove3D::Subdivide { edge, apex } => {
                (*edge + 1 < v.len()).then(|| [v[*edge].clone(), v[*edge + 1].clone(), apex.clone()])
            }
            TriangleMove3D::Merge { vertex } => {
                (*vertex > 0 && *vertex + 1 < v.len()).then(|| [v[vertex - 1].clone(), v[vertex + 1].clone(), v[*vertex].clone()])
            }
            TriangleMove3D::SpaceSlide { end, point } => {
                if v.len() < 2 {
                    return None;
                }
                let (e, n) = match end {
                    End::Leg => (0, 1),
                    End::Head => (v.len() - 1, v.len() - 2),
                };
                Some([v[e].clone(), v[n].clone(), point.clone()])
            }
        }
    }

    /// The arc after the move, without any validity check.
    fn raw_apply(&self, a: &RailArc3D) -> Option<RailArc3D> {
        let mut v = a.vertices.clone();
        match self {
            TriangleMove3D::Subdivide { edge, apex } => {
                if *edge + 1 >= v.len() {
                    return None;
                }
                v.insert(edge + 1, apex.clone());
            }
            TriangleMove3D::Merge { vertex } => {
                if *vertex == 0 || *vertex + 1 >= v.len() {
                    return None;
                }
                v.remove(*vertex);
            }
            TriangleMove3D::SpaceSlide { end, point } => {
                let k = match end {
                    End::Leg => 0,
                    End::Head => v.len() - 1,
                };
                v[k] = point.clone();
            }
        }
        Some(RailArc3D::new(v))
    }
}

fn end_rail(end: End) -> RailId {
    match end {
        End::Leg => RailId::One,
        End::Head => RailId::Two,
    }
}

/// Checks a move against the arc exactly. The report is empty iff the
/// move is valid.
pub fn triangle_move_valid(a: &RailArc3D, m: &TriangleMove3D) -> Report {
    let mut rep = Report::default();
    let base = validate_arc(a);
    if !base.is_ok() {
        return base;
    }
    let Some([ta, tb, tc]) = m.triangle(a) else {
        rep.push("bad index", m.to_string());
        return rep;
    };
    if tb.sub(&ta).cross(&tc.sub(&ta)).norm2() == q(0) {
        rep.push("degenerate triangle", m.to_string());
        return rep;
    }
    let v = &a.vertices;
    let n = a.segment_count();
    let last = v.len() - 1;
    // Segments that belong to the triangle, and the ones attached to its
    // corners (which may touch it only at that corner).
    let (own, touch_a, touch_b): (Vec<usize>, Option<usize>, Option<usize>) = match m {
        TriangleMove3D::Subdivide { edge, .. } => (vec![*edge], edge.checked_sub(1), Some(edge + 1).filter(|&j| j < n)),
        TriangleMove3D::Merge { vertex } => {
            (vec![vertex - 1, *vertex], vertex.checked_sub(2), Some(vertex + 1).filter(|&j| j < n))
        }
        TriangleMove3D::SpaceSlide { end: End::Leg, .. } => (vec![0], None, Some(1).filter(|&j| j < n)),
        TriangleMove3D::SpaceSlide { end: End::Head, .. } => (vec![n - 1], None, (n - 1).checked_sub(1)),
    };
    for j in 0..n {
        if own.contains(&j) {
            continue;
        }
        let (p0, p1) = a.segment(j);
        let ok = if Some(j) == touch_a && touch_b != Some(j) {
            // Ends at A.
            touches_only_at_vertex(&ta, &tb, &tc, p0)
        } else if Some(j) == touch_b {
            // Leaves B (or, for a head slide, ends at B).
            let far = if p0 == &tb { p1 } else { p0 };
            touches_only_at_vertex(&tb, &tc, &ta, far)
        } else {
            !tri_seg_intersect(&ta, &tb, &tc, p0, p1)
        };
        if !ok {
            rep.push("triangle meets arc", format!("{m}: segment {j}"));
        }
    }
    for r in [RailId::One, RailId::Two] {
        let hit = tri_rail(&ta, &tb, &tc, &rail_x(r));
        let allowed = match (m, &hit) {
            (_, TriRail::Miss) => true,
            (TriangleMove3D::SpaceSlide { end, .. }, TriRail::Segment) => end_rail(*end) == r,
            (_, TriRail::Point(p)) => {
                let corner = p == &ta || p == &tb;
                corner && ((p == &v[0] && r == RailId::One) || (p == &v[last] && r == RailId::Two))
            }
            _ => false,
        };
        if !allowed {
            rep.push("triangle meets rail", format!("{m}: ℓ{}", r.index()));
        }
    }
    if let TriangleMove3D::SpaceSlide { end, point } = m {
        if point.x != rail_x(end_rail(*end)) || point.y != q(0) {
            rep.push("slide off rail", m.to_string());
        }
    }
    if rep.is_ok() {
        if let Some(b) = m.raw_apply(a) {
            for violation in validate_arc(&b).violations {
                rep.push(violation.category, violation.detail);
            }
        }
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsotopyError {
    #[error("invalid triangle move: {0}")]
    InvalidMove(Report),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("step {step}: no valid move after {attempts} attempts")]
    GaveUp { step: usize, attempts: usize },
}

pub fn apply_triangle(a: &RailArc3D, m: &TriangleMove3D) -> Result<RailArc3D, IsotopyError> {
    let rep = triangle_move_valid(a, m);
    if !rep.is_ok() {
        return Err(IsotopyError::InvalidMove(rep));
    }
    Ok(m.raw_apply(a).expect("checked by validity"))
}

fn generic(a: &RailArc3D) -> bool {
    is_generic_railplane(a).is_ok() && is_generic_perpendicular(a).is_ok()
}

/// A random valid move, apex near the replaced edge; the result is also
/// generic in both projections.
pub fn random_move(a: &RailArc3D, rng: &mut ChaCha8Rng, attempts: usize) -> Option<(TriangleMove3D, RailArc3D)> {
    let v = &a.vertices;
    let n = a.segment_count();
    const DEN: i64 = 16;
    let off = |rng: &mut ChaCha8Rng, span: i64| qr(rng.gen_range(-span..=span), DEN);
    for _ in 0..attempts {
        let roll = rng.gen_range(0..10);
        let m = if roll < 5 || (roll < 8 && v.len() < 3) {
            let edge = rng.gen_range(0..n);
            let mid = v[edge].lerp(&v[edge + 1], &qr(rng.gen_range(1..DEN), DEN));
            let apex = P3::new(&mid.x + off(rng, DEN / 2), &mid.y + off(rng, DEN / 2), &mid.z + off(rng, DEN / 2));
            TriangleMove3D::Subdivide { edge, apex }
        } else if roll < 8 {
            TriangleMove3D::Merge { vertex: rng.gen_range(1..v.len() - 1) }
        } else {
            let end = if rng.gen_bool(0.5) { End::Leg } else { End::Head };
            let p = match end {
                End::Leg => &v[0],
                End::Head => &v[v.len() - 1],
            };
            let point = P3::new(p.x.clone(), q(0), &p.z + off(rng, DEN));
            TriangleMove3D::SpaceSlide { end, point }
        };
        if let Ok(b) = apply_triangle(a, &m) {
            if generic(&b) {
                return Some((m, b));
            }
        }
    }
    None
}

/// Up to `steps` random valid moves from `a`; every intermediate arc has
/// generic projections. Deterministic given `seed`.
pub fn random_isotopy(a: &RailArc3D, steps: usize, seed: u64) -> Result<(RailArc3D, Vec<TriangleMove3D>), IsotopyError> {
    a.ensure_valid()?;
    const ATTEMPTS: usize = 2_000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = a.clone();
    let mut moves = Vec::new();
    for step in 0..steps {
        let (m, b) = random_move(&cur, &mut rng, ATTEMPTS).ok_or(IsotopyError::GaveUp { step, attempts: ATTEMPTS })?;
        moves.push(m);
        cur = b;
    }
    Ok((cur, moves))
}

/// Applies `moves` in order.
pub fn replay_moves(a: &RailArc3D, moves: &[TriangleMove3D]) -> Result<RailArc3D, IsotopyError> {
    let mut cur = a.clone();
    for m in moves {
        cur = apply_triangle(&cur, m)?;
    }
    Ok(cur)
}
