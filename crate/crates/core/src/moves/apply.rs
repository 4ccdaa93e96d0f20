//! Map surgery for each move kind.

use super::pattern::*;
use super::{MoveError, MoveSite};
use crate::diagram::{End, RailDiagram, RailTag};
use crate::map::{Dart, MapEdit};

fn finish(edit: MapEdit<RailTag>) -> Result<RailDiagram, MoveError> {
    let (map, _) = edit.finish().map_err(|e| MoveError::Surgery(e.to_string()))?;
    let out = RailDiagram::from_map(map);
    let rep = out.validate();
    if !rep.is_ok() {
        return Err(MoveError::Surgery(rep.to_string()));
    }
    Ok(out.canonical())
}

fn not_applicable(site: &MoveSite) -> MoveError {
    MoveError::NotApplicable(site.to_string())
}

fn tag_pair(over: bool, rail: bool, rail_id: Option<crate::diagram::RailId>) -> RailTag {
    match (rail, over) {
        (true, _) => RailTag::RailCross(rail_id.expect("rail dart")),
        (false, true) => RailTag::Over,
        (false, false) => RailTag::Under,
    }
}

/// Reverses the rotation at a 3-valent endpoint, moving its arc to the
/// other side of the rail.
fn flip_endpoint(e: &mut MapEdit<RailTag>, x: Dart) {
    let rot = e.rotation(x);
    debug_assert_eq!(rot.len(), 3);
    let rev: Vec<Dart> = rot.iter().rev().copied().collect();
    e.set_cycle(&rev);
}

pub(crate) fn apply(d: &RailDiagram, site: &MoveSite) -> Result<RailDiagram, MoveError> {
    d.ensure_valid().map_err(MoveError::Diagram)?;
    let n = d.map.len() as Dart;
    let in_range = |x: Dart| x < n;
    use MoveSite::*;
    match *site {
        Omega1Minus { corner } => {
            if !monogon(d, corner) {
                return Err(not_applicable(site));
            }
            let mut e = MapEdit::new(&d.map);
            e.smooth_through(&[corner]).map_err(|m| MoveError::Surgery(m.into()))?;
            finish(e)
        }
        Omega2Minus { corner } => {
            if !omega2_bigon(d, corner) {
                return Err(not_applicable(site));
            }
            let other = d.map.phi(corner);
            let mut e = MapEdit::new(&d.map);
            e.smooth_through(&[corner, other]).map_err(|m| MoveError::Surgery(m.into()))?;
            finish(e)
        }
        RailOmega2Minus { corner } => {
            if !rail_bigon(d, corner, false) {
                return Err(not_applicable(site));
            }
            let other = d.map.phi(corner);
            let mut e = MapEdit::new(&d.map);
            e.smooth_through(&[corner, other]).map_err(|m| MoveError::Surgery(m.into()))?;
            finish(e)
        }
        RailOmega1Minus { corner } => {
            let (ed, x) = rail_omega1_bigon(d, corner).ok_or_else(|| not_applicable(site))?;
            let mut e = MapEdit::new(&d.map);
            e.smooth_through(&[x]).map_err(|m| MoveError::Surgery(m.into()))?;
            flip_endpoint(&mut e, ed);
            finish(e)
        }
        Omega1Plus { dart, loop_ccw, first_over } => {
            if !in_range(dart) || !d.arc_walk().contains(&dart) {
                return Err(not_applicable(site));
            }
            let far = d.map.alpha(dart);
            let (t1, t2) = if first_over {
                (RailTag::Over, RailTag::Under)
            } else {
                (RailTag::Under, RailTag::Over)
            };
            let mut e = MapEdit::new(&d.map);
            // in, loop start (opposite in), loop end, out (opposite loop end)
            let k = e.new_vertex(&[t1, t1, t2, t2]);
            let (kin, kls, kle, kout) = (k[0], k[1], k[2], k[3]);
            if loop_ccw {
                e.set_cycle(&[kin, kle, kls, kout]);
            } else {
                e.set_cycle(&[kin, kout, kls, kle]);
            }
            e.link(dart, kin);
            e.link(kout, far);
            e.link(kls, kle);
            finish(e)
        }
        Omega2Plus { a, c, a_over } => {
            if !in_range(a) || !in_range(c) || !push_ok(d, a, c) {
                return Err(not_applicable(site));
            }
            push_across(d, a, c, a_over)
        }
        Omega3 { corner } | RailOmega3 { corner } => {
            let rail = matches!(site, RailOmega3 { .. });
            let f = triangle(d, corner, rail).ok_or_else(|| not_applicable(site))?;
            reidemeister3(d, f)
        }
        RailOmega1Plus { end, above, over } => rail_kink(d, end, above, over),
        Slide { end, up, remove: true } => {
            let s = slide_removal(d, end, up).ok_or_else(|| not_applicable(site))?;
            slide_off(d, end, up, s)
        }
        Slide { end, up, remove: false } => {
            let er = slide_creation(d, end, up).ok_or_else(|| not_applicable(site))?;
            slide_on(d, end, up, er)
        }
    }
}

/// Corners of `a` and `c` lie in one face, on distinct edges, not both rails.
pub(crate) fn push_ok(d: &RailDiagram, a: Dart, c: Dart) -> bool {
    if is_rail_dart(d, a) && is_rail_dart(d, c) {
        return false;
    }
    // The antiparallel fold stays in the face left of the edge.
    a == c || face_of(d, a).contains(&c)
}

/// Pushes a finger of the edge of `a` across the edge of `c` through the
/// face containing both corners, creating two crossings.
fn push_across(d: &RailDiagram, a: Dart, c: Dart, a_over: bool) -> Result<RailDiagram, MoveError> {
    let (ra, rc) = (d.map.tag(a).rail(), d.map.tag(c).rail());
    let (a_rail, c_rail) = (ra.is_some(), rc.is_some());
    let ta = if a_rail {
        tag_pair(a_over, true, ra)
    } else if c_rail {
        if a_over {
            RailTag::ArcOver
        } else {
            RailTag::ArcUnder
        }
    } else {
        tag_pair(a_over, false, None)
    };
    let tc = if c_rail {
        tag_pair(!a_over, true, rc)
    } else if a_rail {
        if a_over {
            RailTag::ArcUnder
        } else {
            RailTag::ArcOver
        }
    } else {
        tag_pair(!a_over, false, None)
    };
    push_tagged(d, a, c, (ta, tc), (ta, tc))
}

/// `push_across` with explicit (a-strand, c-strand) tags at the first and
/// second new vertex along the edge of `a`.
pub(crate) fn push_tagged(
    d: &RailDiagram,
    a: Dart,
    c: Dart,
    first: (RailTag, RailTag),
    second: (RailTag, RailTag),
) -> Result<RailDiagram, MoveError> {
    let mut e = MapEdit::new(&d.map);
    // Pushing an edge across itself: split it with a temporary 2-valent
    // vertex so the two ends are distinct edges, and splice it out after.
    // With `c == a` the finger reaches the far part of the edge from the
    // other side (an antiparallel fold).
    let mut c = c;
    let temp = (d.map.alpha(a) == c || a == c).then(|| {
        let far = d.map.alpha(a);
        let t = e.new_vertex(&[first.0, first.0]);
        e.link(a, t[0]);
        e.link(t[1], far);
        if c == a {
            c = t[1];
        }
        t
    });
    let aa = e.alpha(a);
    let b = e.alpha(c);
    // Picture: the edge of `a` runs east along the bottom of the face, the
    // edge of `b` east along the top; the finger rises between x=1 and x=2.
    // Vertex darts in counterclockwise order: east, north, west, south.
    let x1 = e.new_vertex(&[first.1, first.0, first.1, first.0]);
    let x2 = e.new_vertex(&[second.1, second.0, second.1, second.0]);
    let (x1e, x1n, x1w, x1s) = (x1[0], x1[1], x1[2], x1[3]);
    let (x2e, x2n, x2w, x2s) = (x2[0], x2[1], x2[2], x2[3]);
    e.link(a, x1s);
    e.link(x1n, x2n);
    e.link(x2s, aa);
    e.link(b, x1w);
    e.link(x1e, x2w);
    e.link(x2e, c);
    if let Some(t) = temp {
        let (p, q) = (e.alpha(t[0]), e.alpha(t[1]));
        e.link(p, q);
        e.kill_vertex(t[0]);
    }
    finish(e)
}

/// Reverses the triangle: each outer strand end moves to the vertex on the
/// far side of the triangle, which keeps every crossing pair.
fn reidemeister3(d: &RailDiagram, f: [Dart; 3]) -> Result<RailDiagram, MoveError> {
    let m = &d.map;
    let s2 = |x: Dart| m.sigma2(x);
    let s3 = |x: Dart| m.sigma(m.sigma2(x));
    let mut port_map = std::collections::HashMap::new();
    for i in 0..3 {
        let prev = f[(i + 2) % 3];
        let next = f[(i + 1) % 3];
        port_map.insert(s2(f[i]), s3(prev));
        port_map.insert(s3(f[i]), s2(next));
    }
    let g = |x: Dart| *port_map.get(&x).unwrap_or(&x);
    let mut e = MapEdit::new(m);
    let mut links = Vec::new();
    for &p in port_map.keys() {
        let q = m.alpha(p);
        links.push((g(p), g(q)));
    }
    links.sort();
    for (x, y) in links {
        e.link(x, y);
    }
    finish(e)
}

/// Side test at an endpoint: true when the arc leaves on the west side of
/// a rail drawn pointing up.
fn arc_is_west(e: &MapEdit<RailTag>, up: Dart, arc: Dart) -> bool {
    e.sigma(up) == arc
}

fn rail_kink(d: &RailDiagram, end: End, above: bool, over: bool) -> Result<RailDiagram, MoveError> {
    let er = d.endpoint_rail(end, above);
    let up_dart = d.endpoint_rail(end, true);
    let z = d.map.alpha(er);
    let ea = d.endpoint_arc(end);
    let w = d.map.alpha(ea);
    let rail = d.map.tag(er).rail();
    let arc_tag = if over { RailTag::ArcOver } else { RailTag::ArcUnder };
    let rail_tag = RailTag::RailCross(rail.expect("endpoint rail dart"));
    let mut e = MapEdit::new(&d.map);
    flip_endpoint(&mut e, er);
    let new_west = arc_is_west(&e, up_dart, ea);
    // Rotation: rail up, west, rail down, east.
    let x = e.new_vertex(&[rail_tag, arc_tag, rail_tag, arc_tag]);
    let (x_up, x_west, x_down, x_east) = (x[0], x[1], x[2], x[3]);
    let (toward, away) = if above { (x_down, x_up) } else { (x_up, x_down) };
    let (near, far) = if new_west { (x_west, x_east) } else { (x_east, x_west) };
    e.link(er, toward);
    e.link(away, z);
    e.link(ea, near);
    e.link(far, w);
    finish(e)
}

fn slide_off(d: &RailDiagram, end: End, up: bool, s: SlideRemoval) -> Result<RailDiagram, MoveError> {
    let er2 = d.endpoint_rail(end, !up);
    let w = d.map.alpha(er2);
    let tx = s.tx;
    let ta = d.map.sigma2(tx);
    let z = d.map.alpha(ta);
    let (s1, s3) = (d.map.sigma(tx), d.map.sigma(ta));
    let mut e = MapEdit::new(&d.map);
    e.smooth_through(&[s.y]).map_err(|m| MoveError::Surgery(m.into()))?;
    e.link(s.er, z);
    e.link(tx, er2);
    e.link(ta, w);
    e.set_cycle(&[tx, s3, ta, s1]);
    finish(e)
}

fn slide_on(d: &RailDiagram, end: End, up: bool, er: Dart) -> Result<RailDiagram, MoveError> {
    let er2 = d.endpoint_rail(end, !up);
    let z = d.map.alpha(er2);
    let tx = d.map.alpha(er);
    let ta = d.map.sigma2(tx);
    let w = d.map.alpha(ta);
    let (s1, s3) = (d.map.sigma(tx), d.map.sigma(ta));
    let ea = d.endpoint_arc(end);
    let t_over = arc_over_at(d, tx).unwrap_or(false);
    let mut e = MapEdit::new(&d.map);
    e.link(er, w);
    e.link(tx, er2);
    e.link(ta, z);
    e.set_cycle(&[tx, s3, ta, s1]);
    let east_case = e.sigma(ea) == er2;
    let near = if east_case { e.sigma(tx) } else { e.sigma(e.sigma2(tx)) };
    let n_far = e.alpha(ea);
    let m_far = e.alpha(near);
    let (t_tag, a_tag) = if t_over {
        (RailTag::Over, RailTag::Under)
    } else {
        (RailTag::Under, RailTag::Over)
    };
    // yE, yT, yOn, yX
    let y = e.new_vertex(&[a_tag, t_tag, a_tag, t_tag]);
    let (ye, yt, yon, yx) = (y[0], y[1], y[2], y[3]);
    if east_case {
        e.set_cycle(&[ye, yt, yon, yx]);
    } else {
        e.set_cycle(&[ye, yx, yon, yt]);
    }
    e.link(ye, ea);
    e.link(yon, n_far);
    e.link(yx, near);
    e.link(yt, m_far);
    finish(e)
}
