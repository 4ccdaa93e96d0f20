use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::predicates::{point_seg_dist2, seg_rail_dist2, seg_seg_dist2};
use super::{is_generic_perpendicular, is_generic_railplane, rail_x, GeometryError, RailArc3D};
use crate::diagram::RailId;
use crate::rational::{q, qr, Q, P3};

/// Squared minimum feature distance: between non-adjacent segments, from
/// each vertex to the non-incident adjacent segment, and from the arc to
/// the rails away from its own endpoints.
pub fn min_feature_dist2(a: &RailArc3D) -> Q {
    let n = a.segment_count();
    let v = &a.vertices;
    let mut best: Option<Q> = None;
    let mut take = |d: Q| {
        if best.as_ref().is_none_or(|b| d < *b) {
            best = Some(d);
        }
    };
    for i in 0..n {
        for j in i + 2..n {
            let (p0, p1) = a.segment(i);
            let (q0, q1) = a.segment(j);
            take(seg_seg_dist2(p0, p1, q0, q1));
        }
        if i + 1 < n {
            take(point_seg_dist2(&v[i], &v[i + 1], &v[i + 2]));
            take(point_seg_dist2(&v[i + 2], &v[i], &v[i + 1]));
        }
    }
    for (k, p) in v.iter().enumerate() {
        for r in [RailId::One, RailId::Two] {
            let own = (k == 0 && r == RailId::One) || (k == v.len() - 1 && r == RailId::Two);
            if !own {
                take(seg_rail_dist2(p, p, &rail_x(r)));
            }
        }
    }
    for i in 0..n {
        let (p0, p1) = a.segment(i);
        for r in [RailId::One, RailId::Two] {
            let touches = (i == 0 && r == RailId::One) || (i == n - 1 && r == RailId::Two);
            if !touches {
                take(seg_rail_dist2(p0, p1, &rail_x(r)));
            }
        }
    }
    best.unwrap_or_else(|| q(1))
}

/// Seeded perturbation making both projections generic. Generic input is
/// returned unchanged. Each coordinate moves by at most δ where
/// 48·δ² ≤ (min feature distance)², so every vertex moves by less than a
/// quarter of it; endpoints move only along their rails.
pub fn perturb(a: &RailArc3D, seed: u64) -> Result<RailArc3D, GeometryError> {
    a.ensure_valid()?;
    let generic = |x: &RailArc3D| is_generic_railplane(x).is_ok() && is_generic_perpendicular(x).is_ok();
    if generic(a) {
        return Ok(a.clone());
    }
    let d2 = min_feature_dist2(a);
    if !d2.is_positive() {
        return Err(GeometryError::Degenerate);
    }
    // δ = 2^-k with 48·δ² ≤ d².
    let mut delta = q(1);
    while &delta * &delta * q(48) > d2 {
        delta /= q(2);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const GRID: i64 = 1024;
    for _ in 0..200 {
        let off = |rng: &mut ChaCha8Rng| &delta * qr(rng.gen_range(-GRID..=GRID), GRID);
        let mut v = a.vertices.clone();
        let last = v.len() - 1;
        for (k, p) in v.iter_mut().enumerate() {
            let dz = off(&mut rng);
            if k == 0 || k == last {
                *p = P3::new(p.x.clone(), p.y.clone(), &p.z + dz);
            } else {
                let (dx, dy) = (off(&mut rng), off(&mut rng));
                *p = P3::new(&p.x + dx, &p.y + dy, &p.z + dz);
            }
        }
        let b = RailArc3D::new(v);
        if b.ensure_valid().is_ok() && generic(&b) {
            return Ok(b);
        }
    }
    if delta.is_zero() {
        return Err(GeometryError::Degenerate);
    }
    Err(GeometryError::GaveUp(200))
}
