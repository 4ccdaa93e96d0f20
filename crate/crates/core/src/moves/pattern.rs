//! Local patterns recognised by the move enumerators and re-checked by
//! `apply_move`. Every predicate here works on dart indices of a valid
//! diagram.

use crate::diagram::{End, RailDiagram, RailTag, VertexKind};
use crate::map::Dart;

pub(crate) fn same_vertex(d: &RailDiagram, a: Dart, b: Dart) -> bool {
    d.map.orbit(a, |x| d.map.sigma(x)).contains(&b)
}

pub(crate) fn is_xing(d: &RailDiagram, x: Dart) -> bool {
    matches!(d.map.tag(x), RailTag::Over | RailTag::Under)
}

pub(crate) fn is_railx(d: &RailDiagram, x: Dart) -> bool {
    matches!(d.map.tag(x), RailTag::RailCross(_) | RailTag::ArcOver | RailTag::ArcUnder)
}

pub(crate) fn is_rail_dart(d: &RailDiagram, x: Dart) -> bool {
    d.map.tag(x).rail().is_some()
}

/// Whether the strand of `x` is on top at its (4-valent) vertex.
pub(crate) fn strand_over(d: &RailDiagram, x: Dart) -> bool {
    match *d.map.tag(x) {
        RailTag::Over | RailTag::ArcOver => true,
        RailTag::Under | RailTag::ArcUnder => false,
        RailTag::RailCross(_) => *d.map.tag(d.map.sigma(x)) == RailTag::ArcUnder,
        _ => false,
    }
}

pub(crate) fn endpoint_of(d: &RailDiagram, x: Dart) -> Option<End> {
    match d.map.tag(x) {
        RailTag::LegArc | RailTag::LegRail => Some(End::Leg),
        RailTag::HeadArc | RailTag::HeadRail => Some(End::Head),
        _ => None,
    }
}

pub(crate) fn arc_over_at(d: &RailDiagram, x: Dart) -> Option<bool> {
    match d.kind_of(x) {
        VertexKind::RailX { arc_over, .. } => Some(arc_over),
        _ => None,
    }
}

pub(crate) fn face_of(d: &RailDiagram, corner: Dart) -> Vec<Dart> {
    d.map.orbit(corner, |x| d.map.phi(x))
}

fn distinct_vertices(d: &RailDiagram, f: &[Dart]) -> bool {
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            if same_vertex(d, f[i], f[j]) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn monogon(d: &RailDiagram, corner: Dart) -> bool {
    (corner as usize) < d.map.len()
        && is_xing(d, corner)
        && d.map.sigma(corner) == d.map.alpha(corner)
}

/// Bigon on two arc self-crossings with one strand over at both.
pub(crate) fn omega2_bigon(d: &RailDiagram, corner: Dart) -> bool {
    if corner as usize >= d.map.len() {
        return false;
    }
    let f = face_of(d, corner);
    if f.len() != 2 || !distinct_vertices(d, &f) {
        return false;
    }
    let (d0, d1) = (f[0], f[1]);
    is_xing(d, d0) && is_xing(d, d1) && strand_over(d, d0) == strand_over(d, d.map.sigma(d1))
}

/// Bigon between two rail crossings of the same rail with equal flags.
pub(crate) fn rail_bigon(d: &RailDiagram, corner: Dart, mixed: bool) -> bool {
    if corner as usize >= d.map.len() {
        return false;
    }
    let f = face_of(d, corner);
    if f.len() != 2 || !distinct_vertices(d, &f) {
        return false;
    }
    match (arc_over_at(d, f[0]), arc_over_at(d, f[1])) {
        (Some(a), Some(b)) => (a == b) != mixed,
        _ => false,
    }
}

/// Endpoint whose arc edge and an adjacent rail segment bound a bigon with
/// a rail crossing. Returns the endpoint dart of the corner and the
/// crossing's dart in the bigon.
pub(crate) fn rail_omega1_bigon(d: &RailDiagram, corner: Dart) -> Option<(Dart, Dart)> {
    if corner as usize >= d.map.len() {
        return None;
    }
    let f = face_of(d, corner);
    if f.len() != 2 || !distinct_vertices(d, &f) {
        return None;
    }
    let (e, x) = if endpoint_of(d, f[0]).is_some() { (f[0], f[1]) } else { (f[1], f[0]) };
    endpoint_of(d, e)?;
    if !is_railx(d, x) {
        return None;
    }
    let has_arc = d.map.tag(e).is_arc() || d.map.tag(d.map.sigma(e)).is_arc();
    has_arc.then_some((e, x))
}

/// Triangle face whose three strands are linearly ordered by over-ness.
/// `rail` selects the rail version (two rail crossings + one self-crossing).
pub(crate) fn triangle(d: &RailDiagram, corner: Dart, rail: bool) -> Option<[Dart; 3]> {
    if corner as usize >= d.map.len() {
        return None;
    }
    let f = face_of(d, corner);
    if f.len() != 3 || !distinct_vertices(d, &f) {
        return None;
    }
    let nx = f.iter().filter(|&&x| is_xing(d, x)).count();
    let nr = f.iter().filter(|&&x| is_railx(d, x)).count();
    let shape_ok = if rail { nx == 1 && nr == 2 } else { nx == 3 };
    if !shape_ok {
        return None;
    }
    let bits: Vec<bool> = f.iter().map(|&x| strand_over(d, x)).collect();
    if bits.iter().all(|&b| b) || bits.iter().all(|&b| !b) {
        return None;
    }
    Some([f[0], f[1], f[2]])
}

/// Data of a removable slide: endpoint rail dart `er` toward the crossing
/// `tx` (its dart toward the endpoint) and the self-crossing `y` (its dart
/// on the end edge).
pub(crate) struct SlideRemoval {
    pub er: Dart,
    pub tx: Dart,
    pub y: Dart,
}

pub(crate) fn slide_removal(d: &RailDiagram, end: End, up: bool) -> Option<SlideRemoval> {
    let er = d.endpoint_rail(end, up);
    let tx = d.map.alpha(er);
    if !is_railx(d, tx) {
        return None;
    }
    let ea = d.endpoint_arc(end);
    let y = d.map.alpha(ea);
    if !is_xing(d, y) {
        return None;
    }
    // A kink at Y on the far side would be folded into the slide.
    if same_vertex(d, d.map.alpha(d.map.sigma2(y)), y) {
        return None;
    }
    let c = if d.map.sigma(er) == ea { er } else { ea };
    let f = face_of(d, c);
    if f.len() != 3 || !distinct_vertices(d, &f) {
        return None;
    }
    let at_x = f.iter().any(|&z| same_vertex(d, z, tx));
    let at_y = f.iter().any(|&z| same_vertex(d, z, y));
    if !at_x || !at_y {
        return None;
    }
    // The transversal must pass the endpoint on the same side of everything.
    let t_over_x = arc_over_at(d, tx)?;
    let t_over_y = strand_over(d, d.map.sigma(y));
    (t_over_x == t_over_y).then_some(SlideRemoval { er, tx, y })
}

pub(crate) fn slide_creation(d: &RailDiagram, end: End, up: bool) -> Option<Dart> {
    let er = d.endpoint_rail(end, up);
    let tx = d.map.alpha(er);
    if !is_railx(d, tx) {
        return None;
    }
    // The half of the transversal that will cross the end edge must not be
    // the end edge itself.
    let ea = d.endpoint_arc(end);
    let er2 = d.endpoint_rail(end, !up);
    let near = if d.map.sigma(ea) == er2 {
        d.map.sigma(d.map.sigma2(tx))
    } else {
        d.map.sigma(tx)
    };
    (d.map.alpha(ea) != near).then_some(er)
}
