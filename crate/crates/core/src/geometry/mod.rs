//! Polygonal rail arcs in space with exact rational coordinates.
//!
//! Fixed frame: the rail plane is `y = 0`, rail ℓ1 is `{x = 0, y = 0}`,
//! rail ℓ2 is `{x = 1, y = 0}`, both running along `z`.

mod perturb;
pub mod predicates;
mod project;

pub use perturb::{min_feature_dist2, perturb};
pub use project::{
    is_generic_perpendicular, is_generic_railplane, project_perpendicular, project_railplane,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{RailId, Report};
use crate::rational::{fmt_q, q, qr, Q, P3};
use predicates::{seg3_intersect, seg3_rail, RailHit};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("invalid rail arc: {0}")]
    InvalidArc(Report),
    #[error("projection is not generic: {0}")]
    NotGeneric(Report),
    #[error("perturbation bound collapsed to zero")]
    Degenerate,
    #[error("no generic arc found after {0} attempts")]
    GaveUp(usize),
}

/// x-coordinate of a rail.
pub fn rail_x(r: RailId) -> Q {
    match r {
        RailId::One => q(0),
        RailId::Two => q(1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RailArc3D {
    pub vertices: Vec<P3>,
}

impl RailArc3D {
    pub fn new(vertices: Vec<P3>) -> Self {
        RailArc3D { vertices }
    }

    /// Straight segment from (0,0,0) to (1,0,0).
    pub fn straight() -> Self {
        RailArc3D::new(vec![P3::ints(0, 0, 0), P3::ints(1, 0, 0)])
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn segment(&self, i: usize) -> (&P3, &P3) {
        (&self.vertices[i], &self.vertices[i + 1])
    }

    pub fn ensure_valid(&self) -> Result<(), GeometryError> {
        let r = validate_arc(self);
        if r.is_ok() {
            Ok(())
        } else {
            Err(GeometryError::InvalidArc(r))
        }
    }
}

impl std::fmt::Display for RailArc3D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " → ")?;
            }
            write!(f, "({}, {}, {})", fmt_q(&v.x), fmt_q(&v.y), fmt_q(&v.z))?;
        }
        Ok(())
    }
}

fn on_rail(p: &P3, r: RailId) -> bool {
    p.x == rail_x(r) && p.y == q(0)
}

/// Checks endpoints, rail avoidance and embeddedness exactly.
pub fn validate_arc(a: &RailArc3D) -> Report {
    let mut rep = Report::default();
    let v = &a.vertices;
    if v.len() < 2 {
        rep.push("too short", format!("{} vertices", v.len()));
        return rep;
    }
    if !on_rail(&v[0], RailId::One) {
        rep.push("leg off rail", format!("first vertex {} is not on ℓ1", v[0]));
    }
    if !on_rail(v.last().unwrap(), RailId::Two) {
        rep.push("head off rail", format!("last vertex {} is not on ℓ2", v.last().unwrap()));
    }
    let n = a.segment_count();
    for i in 0..n {
        let (p0, p1) = a.segment(i);
        if p0 == p1 {
            rep.push("degenerate segment", format!("segment {i} has zero length"));
            continue;
        }
        for r in [RailId::One, RailId::Two] {
            let allowed = |t: &Q| {
                (i == 0 && r == RailId::One && *t == q(0)) || (i == n - 1 && r == RailId::Two && *t == q(1))
            };
            match seg3_rail(p0, p1, &rail_x(r)) {
                RailHit::Miss => {}
                RailHit::At(t) if allowed(&t) => {}
                _ => rep.push("interior touches rail", format!("segment {i} meets ℓ{}", r.index())),
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (p0, p1) = a.segment(i);
            let (q0, q1) = a.segment(j);
            if p0 == p1 || q0 == q1 {
                continue;
            }
            let bad = if j == i + 1 {
                // Adjacent: only a fold back along the same line overlaps.
                let d1 = p1.sub(p0);
                let d2 = q1.sub(q0);
                d1.cross(&d2).norm2() == q(0) && d1.dot(&d2) < q(0)
            } else {
                seg3_intersect(p0, p1, q0, q1)
            };
            if bad {
                rep.push("not embedded", format!("segments {i} and {j} intersect"));
            }
        }
    }
    rep
}

/// Random arc with `segments` segments whose projections onto the rail
/// plane and the perpendicular plane are both generic. Coordinates are
/// multiples of 1/8 in a small box; deterministic given `seed`.
pub fn random_arc(segments: usize, seed: u64) -> Result<RailArc3D, GeometryError> {
    let segments = segments.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const ATTEMPTS: usize = 10_000;
    let coord = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| qr(rng.gen_range(lo * 8..=hi * 8), 8);
    for _ in 0..ATTEMPTS {
        let mut v = vec![P3::new(q(0), q(0), coord(&mut rng, -1, 1))];
        for _ in 1..segments {
            let x = coord(&mut rng, -1, 2);
            let y = coord(&mut rng, -1, 1);
            let z = coord(&mut rng, -2, 2);
            v.push(P3::new(x, y, z));
        }
        v.push(P3::new(q(1), q(0), coord(&mut rng, -1, 1)));
        let a = RailArc3D::new(v);
        if validate_arc(&a).is_ok() && is_generic_railplane(&a).is_ok() && is_generic_perpendicular(&a).is_ok() {
            return Ok(a);
        }
    }
    Err(GeometryError::GaveUp(ATTEMPTS))
}
