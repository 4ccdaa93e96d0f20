//! Exact incidence predicates on rational points.

use num_traits::{Signed, Zero};

use crate::rational::{q, Q, P2, P3};

/// How two closed 2D segments meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hit2 {
    None,
    /// A single point at parameters `t` on the first and `u` on the second.
    Point { t: Q, u: Q },
    /// Collinear with a common sub-segment (or a touching endpoint).
    Collinear,
}

fn in_unit(t: &Q) -> bool {
    !t.is_negative() && *t <= q(1)
}

pub fn seg2_hit(p0: &P2, p1: &P2, q0: &P2, q1: &P2) -> Hit2 {
    let r = p1.sub(p0);
    let s = q1.sub(q0);
    let qp = q0.sub(p0);
    let den = r.cross(&s);
    if den.is_zero() {
        if !qp.cross(&r).is_zero() {
            return Hit2::None;
        }
        // Collinear: compare projections onto r (or s if r is degenerate).
        let axis = if r.is_zero() { s.clone() } else { r.clone() };
        if axis.is_zero() {
            return if p0 == q0 { Hit2::Collinear } else { Hit2::None };
        }
        let proj = |p: &P2| p.sub(p0).dot(&axis);
        let (a0, a1) = sorted(proj(p0), proj(p1));
        let (b0, b1) = sorted(proj(q0), proj(q1));
        return if a0 <= b1 && b0 <= a1 { Hit2::Collinear } else { Hit2::None };
    }
    let t = qp.cross(&s) / &den;
    let u = qp.cross(&r) / &den;
    if in_unit(&t) && in_unit(&u) {
        Hit2::Point { t, u }
    } else {
        Hit2::None
    }
}

fn sorted(a: Q, b: Q) -> (Q, Q) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Parameter where the 2D segment meets the vertical line `x = c`;
/// `Err(())` when the segment lies on the line.
pub fn seg2_vertical(p0: &P2, p1: &P2, c: &Q) -> Result<Option<Q>, ()> {
    let dx = &p1.x - &p0.x;
    if dx.is_zero() {
        return if p0.x == *c { Err(()) } else { Ok(None) };
    }
    let t = (c - &p0.x) / dx;
    Ok(in_unit(&t).then_some(t))
}

/// Whether the 2D closed segment passes through `p`, and at which parameter.
pub fn seg2_through(p0: &P2, p1: &P2, p: &P2) -> Option<Q> {
    let r = p1.sub(p0);
    let w = p.sub(p0);
    if !r.cross(&w).is_zero() {
        return None;
    }
    if r.is_zero() {
        return (w.is_zero()).then(|| q(0));
    }
    let t = w.dot(&r) / r.dot(&r);
    in_unit(&t).then_some(t)
}

/// Closed 3D segments intersect.
pub fn seg3_intersect(p0: &P3, p1: &P3, q0: &P3, q1: &P3) -> bool {
    let r = p1.sub(p0);
    let s = q1.sub(q0);
    let w = q0.sub(p0);
    if !r.cross(&s).dot(&w).is_zero() {
        return false;
    }
    // Coplanar: reduce to 2D on the plane dropping the dominant normal axis.
    let mut n = r.cross(&s);
    if n.norm2().is_zero() {
        n = r.cross(&w);
        if n.norm2().is_zero() {
            n = s.cross(&w);
        }
        if n.norm2().is_zero() {
            // All four points collinear (or degenerate): any normal works
            // as long as it is not parallel to the line.
            let dir = if !r.norm2().is_zero() { r.clone() } else { s.clone() };
            n = if !dir.x.is_zero() || !dir.y.is_zero() {
                P3::new(dir.y.clone(), -dir.x.clone(), q(0))
            } else {
                P3::new(q(1), q(0), q(0))
            };
        }
    }
    let drop = dominant_axis(&n);
    let f = |p: &P3| flatten(p, drop);
    seg2_hit(&f(p0), &f(p1), &f(q0), &f(q1)) != Hit2::None
}

fn dominant_axis(n: &P3) -> usize {
    let (ax, ay, az) = (n.x.abs(), n.y.abs(), n.z.abs());
    if ax >= ay && ax >= az {
        0
    } else if ay >= az {
        1
    } else {
        2
    }
}

fn flatten(p: &P3, drop: usize) -> P2 {
    match drop {
        0 => P2::new(p.y.clone(), p.z.clone()),
        1 => P2::new(p.x.clone(), p.z.clone()),
        _ => P2::new(p.x.clone(), p.y.clone()),
    }
}

/// Whether the closed segment meets the rail `{x = c, y = 0}`; returns the
/// meeting parameters (`None` inside means the whole segment lies on it).
pub fn seg3_rail(p0: &P3, p1: &P3, c: &Q) -> RailHit {
    let dx = &p1.x - &p0.x;
    let dy = &p1.y - &p0.y;
    let x0 = &p0.x - c;
    let y0 = &p0.y;
    // Solve x0 + t dx = 0 and y0 + t dy = 0 for t ∈ [0, 1].
    match (dx.is_zero(), dy.is_zero()) {
        (true, true) => {
            if x0.is_zero() && y0.is_zero() {
                RailHit::Along
            } else {
                RailHit::Miss
            }
        }
        (false, _) => {
            let t = -&x0 / &dx;
            if in_unit(&t) && (y0 + &t * &dy).is_zero() {
                RailHit::At(t)
            } else {
                RailHit::Miss
            }
        }
        (true, false) => {
            let t = -y0 / &dy;
            if in_unit(&t) && x0.is_zero() {
                RailHit::At(t)
            } else {
                RailHit::Miss
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RailHit {
    Miss,
    At(Q),
    Along,
}

pub fn point_seg_dist2(p: &P3, a: &P3, b: &P3) -> Q {
    let ab = b.sub(a);
    let l = ab.norm2();
    if l.is_zero() {
        return p.sub(a).norm2();
    }
    let t = clamp01(p.sub(a).dot(&ab) / l);
    p.sub(&a.lerp(b, &t)).norm2()
}

fn clamp01(t: Q) -> Q {
    if t.is_negative() {
        q(0)
    } else if t > q(1) {
        q(1)
    } else {
        t
    }
}

/// Squared distance between closed segments (exact: the minimiser of a
/// quadratic with rational coefficients is rational).
pub fn seg_seg_dist2(p0: &P3, p1: &P3, q0: &P3, q1: &P3) -> Q {
    let mut best = point_seg_dist2(p0, q0, q1);
    for cand in [point_seg_dist2(p1, q0, q1), point_seg_dist2(q0, p0, p1), point_seg_dist2(q1, p0, p1)] {
        if cand < best {
            best = cand;
        }
    }
    let r = p1.sub(p0);
    let s = q1.sub(q0);
    let w = p0.sub(q0);
    let (a, b, c) = (r.dot(&r), r.dot(&s), s.dot(&s));
    let (d, e) = (r.dot(&w), s.dot(&w));
    let den = &a * &c - &b * &b;
    if !den.is_zero() {
        let t = (&b * &e - &c * &d) / &den;
        let u = (&a * &e - &b * &d) / &den;
        if in_unit(&t) && in_unit(&u) {
            let cand = p0.lerp(p1, &t).sub(&q0.lerp(q1, &u)).norm2();
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

/// Squared distance from a closed segment to the rail `{x = c, y = 0}`.
pub fn seg_rail_dist2(p0: &P3, p1: &P3, c: &Q) -> Q {
    let f = |t: &Q| {
        let p = p0.lerp(p1, t);
        let dx = &p.x - c;
        &dx * &dx + &p.y * &p.y
    };
    let dx = &p1.x - &p0.x;
    let dy = &p1.y - &p0.y;
    let l = &dx * &dx + &dy * &dy;
    let mut best = f(&q(0));
    let end = f(&q(1));
    if end < best {
        best = end;
    }
    if !l.is_zero() {
        let t = clamp01(-((&p0.x - c) * &dx + &p0.y * &dy) / l);
        let mid = f(&t);
        if mid < best {
            best = mid;
        }
    }
    best
}

/// Closed triangle `(a, b, c)` meets the closed segment `pq`.
pub fn tri_seg_intersect(a: &P3, b: &P3, c: &P3, p: &P3, q_: &P3) -> bool {
    let n = b.sub(a).cross(&c.sub(a));
    let dp = n.dot(&p.sub(a));
    let dq = n.dot(&q_.sub(a));
    if (dp.is_positive() && dq.is_positive()) || (dp.is_negative() && dq.is_negative()) {
        return false;
    }
    if dp.is_zero() && dq.is_zero() {
        let drop = dominant_axis(&n);
        let f = |x: &P3| flatten(x, drop);
        let (a2, b2, c2, p2, q2) = (f(a), f(b), f(c), f(p), f(q_));
        return point_in_tri2(&p2, &a2, &b2, &c2)
            || point_in_tri2(&q2, &a2, &b2, &c2)
            || seg2_hit(&p2, &q2, &a2, &b2) != Hit2::None
            || seg2_hit(&p2, &q2, &b2, &c2) != Hit2::None
            || seg2_hit(&p2, &q2, &c2, &a2) != Hit2::None;
    }
    let t = &dp / (&dp - &dq);
    let x = p.lerp(q_, &t);
    point_in_tri3(&x, a, b, c, &n)
}

fn point_in_tri3(x: &P3, a: &P3, b: &P3, c: &P3, n: &P3) -> bool {
    let s1 = b.sub(a).cross(&x.sub(a)).dot(n);
    let s2 = c.sub(b).cross(&x.sub(b)).dot(n);
    let s3 = a.sub(c).cross(&x.sub(c)).dot(n);
    !s1.is_negative() && !s2.is_negative() && !s3.is_negative()
}

pub fn point_in_tri2(x: &P2, a: &P2, b: &P2, c: &P2) -> bool {
    let s1 = b.sub(a).cross(&x.sub(a));
    let s2 = c.sub(b).cross(&x.sub(b));
    let s3 = a.sub(c).cross(&x.sub(c));
    let neg = s1.is_negative() || s2.is_negative() || s3.is_negative();
    let pos = s1.is_positive() || s2.is_positive() || s3.is_positive();
    !(neg && pos)
}

/// The segment leaving triangle vertex `a` toward `d` meets the closed
/// triangle `(a, b, c)` only at `a`.
pub fn touches_only_at_vertex(a: &P3, b: &P3, c: &P3, d: &P3) -> bool {
    let e1 = b.sub(a);
    let e2 = c.sub(a);
    let n = e1.cross(&e2);
    let v = d.sub(a);
    if !n.dot(&v).is_zero() {
        return true;
    }
    let inside = !e1.cross(&v).dot(&n).is_negative() && !v.cross(&e2).dot(&n).is_negative();
    !inside
}

/// How the closed triangle meets the rail `{x = c, y = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriRail {
    Miss,
    /// A single point.
    Point(P3),
    /// A segment of positive length.
    Segment,
}

pub fn tri_rail(a: &P3, b: &P3, c: &P3, x: &Q) -> TriRail {
    let n = b.sub(a).cross(&c.sub(a));
    let r0 = P3::new(x.clone(), q(0), q(0));
    if !n.z.is_zero() {
        let z = n.dot(&a.sub(&r0)) / &n.z;
        let pt = P3::new(x.clone(), q(0), z);
        return if point_in_tri3(&pt, a, b, c, &n) { TriRail::Point(pt) } else { TriRail::Miss };
    }
    if !n.dot(&r0.sub(a)).is_zero() {
        return TriRail::Miss;
    }
    // Vertical plane through the rail: compare horizontal positions.
    let h = |p: &P3| &n.y * &p.x - &n.x * &p.y;
    let h0 = h(&r0);
    let hs = [h(a), h(b), h(c)];
    let lo = hs.iter().min().unwrap();
    let hi = hs.iter().max().unwrap();
    if h0 < *lo || h0 > *hi {
        return TriRail::Miss;
    }
    let on: Vec<&P3> = [a, b, c].into_iter().zip(hs.iter()).filter(|(_, hv)| **hv == h0).map(|(p, _)| p).collect();
    if h0 > *lo && h0 < *hi || on.len() >= 2 {
        TriRail::Segment
    } else {
        TriRail::Point(on[0].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn p2(x: i64, y: i64) -> P2 {
        P2::new(q(x), q(y))
    }

    #[test]
    fn crossing_segments_hit_at_midpoints() {
        let h = seg2_hit(&p2(0, 0), &p2(2, 2), &p2(0, 2), &p2(2, 0));
        assert_eq!(h, Hit2::Point { t: qr(1, 2), u: qr(1, 2) });
        assert_eq!(seg2_hit(&p2(0, 0), &p2(1, 0), &p2(2, 0), &p2(3, 0)), Hit2::None);
        assert_eq!(seg2_hit(&p2(0, 0), &p2(2, 0), &p2(1, 0), &p2(3, 0)), Hit2::Collinear);
    }

    #[test]
    fn skew_segments_miss_in_space() {
        let a = [P3::ints(0, 0, 0), P3::ints(2, 0, 0)];
        let b = [P3::ints(1, -1, 1), P3::ints(1, 1, 1)];
        assert!(!seg3_intersect(&a[0], &a[1], &b[0], &b[1]));
        let c = [P3::ints(1, -1, 0), P3::ints(1, 1, 0)];
        assert!(seg3_intersect(&a[0], &a[1], &c[0], &c[1]));
        assert_eq!(seg_seg_dist2(&a[0], &a[1], &b[0], &b[1]), q(1));
    }

    #[test]
    fn triangle_predicates() {
        let (a, b, c) = (P3::ints(0, 0, 0), P3::ints(2, 0, 0), P3::ints(0, 2, 0));
        assert!(tri_seg_intersect(&a, &b, &c, &P3::ints(1, 0, -1), &P3::ints(0, 1, 1)));
        assert!(!tri_seg_intersect(&a, &b, &c, &P3::ints(3, 3, -1), &P3::ints(3, 3, 1)));
        assert!(touches_only_at_vertex(&a, &b, &c, &P3::ints(-1, 0, 0)));
        assert!(!touches_only_at_vertex(&a, &b, &c, &P3::ints(1, 1, 0)));
        // The triangle lies in z = 0 and contains (0,0,0) on the rail x = 0.
        assert_eq!(tri_rail(&a, &b, &c, &q(0)), TriRail::Point(P3::ints(0, 0, 0)));
        assert_eq!(tri_rail(&a, &b, &c, &q(5)), TriRail::Miss);
    }
}
