//! Genericity checks and the two projections.
//!
//! Rail plane: `(x, y, z) ↦ (x, z)`, over = larger `y` (the viewer sits on
//! the positive-`y` side). Perpendicular plane: `(x, y, z) ↦ (x, y)`,
//! over = larger `z`. Both pictures are read counterclockwise in their
//! own coordinates.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::predicates::{seg2_hit, seg2_through, seg2_vertical, Hit2};
use super::{validate_arc, GeometryError, RailArc3D};
use crate::diagram::{InfPort, RailDiagram, RailId, RailTag, Report};
use crate::knotoid::{KnotoidDiagram, KnotoidTag};
use crate::map::{Dart, Map};
use crate::rational::{q, Q, P2, P3};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Plane {
    Rail,
    Perp,
}

impl Plane {
    fn proj(self, p: &P3) -> P2 {
        match self {
            Plane::Rail => P2::new(p.x.clone(), p.z.clone()),
            Plane::Perp => P2::new(p.x.clone(), p.y.clone()),
        }
    }

    fn depth(self, p: &P3) -> Q {
        match self {
            Plane::Rail => p.y.clone(),
            Plane::Perp => p.z.clone(),
        }
    }
}

const RAILS: [RailId; 2] = [RailId::One, RailId::Two];

fn rail_x(r: RailId) -> Q {
    super::rail_x(r)
}

/// A point where the projected arc meets itself or a rail.
#[derive(Clone, Debug)]
enum Event {
    /// Double point of segments `i` (param `t`) and `j` (param `u`), i < j.
    Double { i: usize, t: Q, j: usize, u: Q, pos: P2 },
    /// Projected arc crosses the image of a rail (rail plane only).
    Rail { i: usize, t: Q, rail: RailId, pos: P2 },
}

/// Analyses a projection; returns the events or the violations.
fn analyse(a: &RailArc3D, plane: Plane) -> Result<Vec<Event>, Report> {
    let mut rep = Report::default();
    let v: Vec<P2> = a.vertices.iter().map(|p| plane.proj(p)).collect();
    let n = a.segment_count();
    let last = v.len() - 1;
    for i in 0..n {
        if v[i] == v[i + 1] {
            rep.push("segment projects to a point", format!("segment {i}"));
        }
    }
    if !rep.is_ok() {
        return Err(rep);
    }
    let mut events = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let hit = seg2_hit(&v[i], &v[i + 1], &v[j], &v[j + 1]);
            if j == i + 1 {
                if hit == Hit2::Collinear {
                    let d1 = v[i + 1].sub(&v[i]);
                    let d2 = v[j + 1].sub(&v[j]);
                    if d1.dot(&d2).is_negative() {
                        rep.push("projected fold", format!("segments {i} and {j} overlap"));
                    }
                }
                continue;
            }
            match hit {
                Hit2::None => {}
                Hit2::Collinear => rep.push("overlapping projections", format!("segments {i} and {j}")),
                Hit2::Point { t, u } => {
                    let inner = |s: &Q| s.is_positive() && *s < q(1);
                    if !inner(&t) || !inner(&u) {
                        rep.push("vertex on projected segment", format!("segments {i} and {j}"));
                    } else {
                        let pos = v[i].lerp(&v[i + 1], &t);
                        events.push(Event::Double { i, t, j, u, pos });
                    }
                }
            }
        }
    }
    let end_pos = [v[0].clone(), v[last].clone()];
    match plane {
        Plane::Rail => {
            for (k, p) in v.iter().enumerate() {
                for r in RAILS {
                    let own = (k == 0 && r == RailId::One) || (k == last && r == RailId::Two);
                    if !own && p.x == rail_x(r) {
                        rep.push("vertex on rail line", format!("vertex {k} projects onto ℓ{}", r.index()));
                    }
                }
            }
            for i in 0..n {
                for r in RAILS {
                    match seg2_vertical(&v[i], &v[i + 1], &rail_x(r)) {
                        Err(()) => rep.push("segment along rail line", format!("segment {i}")),
                        Ok(Some(t)) => {
                            let own = (i == 0 && r == RailId::One && t.is_zero())
                                || (i == n - 1 && r == RailId::Two && t == q(1));
                            if !own && t.is_positive() && t < q(1) {
                                let pos = v[i].lerp(&v[i + 1], &t);
                                events.push(Event::Rail { i, t, rail: r, pos });
                            }
                        }
                        Ok(None) => {}
                    }
                }
            }
            for e in &events {
                if let Event::Double { pos, .. } = e {
                    if RAILS.iter().any(|&r| pos.x == rail_x(r)) {
                        rep.push("double point on rail line", format!("at {pos:?}"));
                    }
                }
            }
        }
        Plane::Perp => {
            let pts = [P2::new(q(0), q(0)), P2::new(q(1), q(0))];
            for (k, p) in v.iter().enumerate() {
                for (r, rp) in pts.iter().enumerate() {
                    let own = (k == 0 && r == 0) || (k == last && r == 1);
                    if !own && p == rp {
                        rep.push("vertex on rail point", format!("vertex {k}"));
                    }
                }
            }
            for i in 0..n {
                for (r, rp) in pts.iter().enumerate() {
                    if let Some(t) = seg2_through(&v[i], &v[i + 1], rp) {
                        let own = (i == 0 && r == 0 && t.is_zero()) || (i == n - 1 && r == 1 && t == q(1));
                        if !own {
                            rep.push("segment through rail point", format!("segment {i}"));
                        }
                    }
                }
            }
        }
    }
    let mut seen: BTreeMap<P2, usize> = BTreeMap::new();
    for p in end_pos.iter().chain(events.iter().map(|e| match e {
        Event::Double { pos, .. } | Event::Rail { pos, .. } => pos,
    })) {
        *seen.entry(p.clone()).or_insert(0) += 1;
    }
    if seen.values().any(|&c| c > 1) {
        rep.push("coincident double points", "two crossings share a projected position");
    }
    if rep.is_ok() {
        Ok(events)
    } else {
        Err(rep)
    }
}

fn check_valid(a: &RailArc3D) -> Result<(), Report> {
    let r = validate_arc(a);
    if r.is_ok() {
        Ok(())
    } else {
        Err(r)
    }
}

/// Genericity of the projection onto the rail plane.
pub fn is_generic_railplane(a: &RailArc3D) -> Report {
    match check_valid(a).and_then(|_| analyse(a, Plane::Rail)) {
        Ok(_) => Report::default(),
        Err(r) => r,
    }
}

/// Genericity of the projection onto the plane perpendicular to the rails.
pub fn is_generic_perpendicular(a: &RailArc3D) -> Report {
    match check_valid(a).and_then(|_| analyse(a, Plane::Perp)) {
        Ok(_) => Report::default(),
        Err(r) => r,
    }
}

/// Counterclockwise angle order of nonzero direction vectors.
fn angle_cmp(a: &P2, b: &P2) -> Ordering {
    let half = |v: &P2| if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.cross(b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// One pass of the arc through a node.
struct Visit {
    node: usize,
    seg: usize,
    t: Q,
}

struct Builder<T> {
    alpha: Vec<Dart>,
    tag: Vec<T>,
    node: Vec<Option<usize>>,
    dir: Vec<P2>,
}

impl<T: Clone> Builder<T> {
    fn new() -> Self {
        Builder { alpha: Vec::new(), tag: Vec::new(), node: Vec::new(), dir: Vec::new() }
    }

    fn dart(&mut self, node: Option<usize>, dir: P2, tag: T) -> Dart {
        let d = self.alpha.len() as Dart;
        self.alpha.push(d);
        self.tag.push(tag);
        self.node.push(node);
        self.dir.push(dir);
        d
    }

    fn link(&mut self, a: Dart, b: Dart) {
        self.alpha[a as usize] = b;
        self.alpha[b as usize] = a;
    }

    /// Sigma from counterclockwise direction order at each node.
    fn sigma(&self, n_nodes: usize) -> Vec<Dart> {
        let mut at: Vec<Vec<Dart>> = vec![Vec::new(); n_nodes];
        for (d, n) in self.node.iter().enumerate() {
            if let Some(n) = n {
                at[*n].push(d as Dart);
            }
        }
        let mut sigma: Vec<Dart> = (0..self.alpha.len() as Dart).collect();
        for ds in &mut at {
            ds.sort_by(|&a, &b| angle_cmp(&self.dir[a as usize], &self.dir[b as usize]));
            for k in 0..ds.len() {
                sigma[ds[k] as usize] = ds[(k + 1) % ds.len()];
            }
        }
        sigma
    }
}

/// Arc visits in order (leg node 0, head node 1, then one node per event)
/// and per-node positions.
fn arc_visits(a: &RailArc3D, plane: Plane, events: &[Event]) -> (Vec<Visit>, Vec<P2>) {
    let n = a.segment_count();
    let last = a.vertices.len() - 1;
    let mut pos = vec![plane.proj(&a.vertices[0]), plane.proj(&a.vertices[last])];
    let mut per_seg: Vec<Vec<(Q, usize)>> = vec![Vec::new(); n];
    for e in events {
        let node = pos.len();
        match e {
            Event::Double { i, t, j, u, pos: p } => {
                per_seg[*i].push((t.clone(), node));
                per_seg[*j].push((u.clone(), node));
                pos.push(p.clone());
            }
            Event::Rail { i, t, pos: p, .. } => {
                per_seg[*i].push((t.clone(), node));
                pos.push(p.clone());
            }
        }
    }
    let mut visits = vec![Visit { node: 0, seg: 0, t: q(0) }];
    for (s, evs) in per_seg.iter_mut().enumerate() {
        evs.sort();
        for (t, node) in evs.drain(..) {
            visits.push(Visit { node, seg: s, t });
        }
    }
    visits.push(Visit { node: 1, seg: n - 1, t: q(1) });
    (visits, pos)
}

fn seg_dir(a: &RailArc3D, plane: Plane, s: usize) -> P2 {
    let (p0, p1) = a.segment(s);
    plane.proj(p1).sub(&plane.proj(p0))
}

fn depth_at(a: &RailArc3D, plane: Plane, s: usize, t: &Q) -> Q {
    let (p0, p1) = a.segment(s);
    plane.depth(&p0.lerp(p1, t))
}

/// Builds the rail knotoid diagram seen on the rail plane.
pub fn project_railplane(a: &RailArc3D) -> Result<RailDiagram, GeometryError> {
    check_valid(a).map_err(GeometryError::InvalidArc)?;
    let events = analyse(a, Plane::Rail).map_err(GeometryError::NotGeneric)?;
    let plane = Plane::Rail;
    let (visits, pos) = arc_visits(a, plane, &events);
    // Node kinds.
    let mut rail_of: BTreeMap<usize, (RailId, bool)> = BTreeMap::new();
    let mut over_visit: BTreeMap<usize, (Q, usize)> = BTreeMap::new();
    for (k, v) in visits.iter().enumerate() {
        if v.node < 2 {
            continue;
        }
        let depth = depth_at(a, plane, v.seg, &v.t);
        match &events[v.node - 2] {
            Event::Rail { rail, .. } => {
                rail_of.insert(v.node, (*rail, depth.is_positive()));
            }
            Event::Double { .. } => {
                let e = over_visit.entry(v.node).or_insert((depth.clone(), k));
                if depth > e.0 {
                    *e = (depth, k);
                }
            }
        }
    }
    let mut b: Builder<RailTag> = Builder::new();
    let up = P2::new(q(0), q(1));
    let down = P2::new(q(0), q(-1));
    // Arc darts.
    let mut prev_out: Option<Dart> = None;
    for (k, v) in visits.iter().enumerate() {
        let dir = seg_dir(a, plane, v.seg);
        let back = P2::new(-dir.x.clone(), -dir.y.clone());
        let tag = |is_over: bool| -> RailTag {
            if let Some(&(_, front)) = rail_of.get(&v.node) {
                if front {
                    RailTag::ArcOver
                } else {
                    RailTag::ArcUnder
                }
            } else if is_over {
                RailTag::Over
            } else {
                RailTag::Under
            }
        };
        let is_over = over_visit.get(&v.node).is_some_and(|&(_, kk)| kk == k);
        let (inc, out) = match v.node {
            0 => (None, Some(b.dart(Some(0), dir, RailTag::LegArc))),
            1 => (Some(b.dart(Some(1), back, RailTag::HeadArc)), None),
            n => (Some(b.dart(Some(n), back, tag(is_over))), Some(b.dart(Some(n), dir, tag(is_over)))),
        };
        if let (Some(p), Some(i)) = (prev_out, inc) {
            b.link(p, i);
        }
        prev_out = out;
    }
    // Rails, top to bottom.
    let mut ports = BTreeMap::new();
    for (r, end_node, (top, bottom)) in [
        (RailId::One, 0usize, (InfPort::L1Top, InfPort::L1Bottom)),
        (RailId::Two, 1usize, (InfPort::L2Top, InfPort::L2Bottom)),
    ] {
        let mut nodes: Vec<usize> = rail_of.iter().filter(|(_, &(rr, _))| rr == r).map(|(&n, _)| n).collect();
        nodes.push(end_node);
        nodes.sort_by(|&x, &y| pos[y].y.cmp(&pos[x].y));
        let t = b.dart(None, up.clone(), RailTag::Inf(top));
        ports.insert(top, t);
        let mut above = t;
        for &n in &nodes {
            let tag = if n == end_node {
                if r == RailId::One {
                    RailTag::LegRail
                } else {
                    RailTag::HeadRail
                }
            } else {
                RailTag::RailCross(r)
            };
            let u = b.dart(Some(n), up.clone(), tag);
            let d = b.dart(Some(n), down.clone(), tag);
            b.link(above, u);
            above = d;
        }
        let bt = b.dart(None, down.clone(), RailTag::Inf(bottom));
        ports.insert(bottom, bt);
        b.link(above, bt);
    }
    let mut sigma = b.sigma(pos.len());
    let cycle = [InfPort::L1Top, InfPort::L2Top, InfPort::L2Bottom, InfPort::L1Bottom];
    for k in 0..4 {
        sigma[ports[&cycle[k]] as usize] = ports[&cycle[(k + 1) % 4]];
    }
    let hint: Vec<Option<P2>> = b.node.iter().map(|n| n.map(|n| pos[n].clone())).collect();
    let map = Map::from_parts(b.alpha, sigma, b.tag);
    let d = RailDiagram::with_hints(map, hint);
    let rep = d.validate();
    if !rep.is_ok() {
        return Err(GeometryError::NotGeneric(rep));
    }
    Ok(d.canonical())
}

/// Builds the knotoid diagram seen on the plane perpendicular to the rails.
pub fn project_perpendicular(a: &RailArc3D) -> Result<KnotoidDiagram, GeometryError> {
    check_valid(a).map_err(GeometryError::InvalidArc)?;
    let events = analyse(a, Plane::Perp).map_err(GeometryError::NotGeneric)?;
    let plane = Plane::Perp;
    let (visits, pos) = arc_visits(a, plane, &events);
    let mut over_visit: BTreeMap<usize, (Q, usize)> = BTreeMap::new();
    for (k, v) in visits.iter().enumerate() {
        if v.node >= 2 {
            let depth = depth_at(a, plane, v.seg, &v.t);
            let e = over_visit.entry(v.node).or_insert((depth.clone(), k));
            if depth > e.0 {
                *e = (depth, k);
            }
        }
    }
    let mut b: Builder<KnotoidTag> = Builder::new();
    let mut prev_out: Option<Dart> = None;
    for (k, v) in visits.iter().enumerate() {
        let dir = seg_dir(a, plane, v.seg);
        let back = P2::new(-dir.x.clone(), -dir.y.clone());
        let t = if over_visit.get(&v.node).is_some_and(|&(_, kk)| kk == k) {
            KnotoidTag::Over
        } else {
            KnotoidTag::Under
        };
        let (inc, out) = match v.node {
            0 => (None, Some(b.dart(Some(0), dir, KnotoidTag::Leg))),
            1 => (Some(b.dart(Some(1), back, KnotoidTag::Head)), None),
            n => (Some(b.dart(Some(n), back, t)), Some(b.dart(Some(n), dir, t))),
        };
        if let (Some(p), Some(i)) = (prev_out, inc) {
            b.link(p, i);
        }
        prev_out = out;
    }
    let sigma = b.sigma(pos.len());
    let hint: Vec<Option<P2>> = b.node.iter().map(|n| n.map(|n| pos[n].clone())).collect();
    let k = KnotoidDiagram::with_hints(Map::from_parts(b.alpha, sigma, b.tag), hint);
    let rep = k.validate();
    if !rep.is_ok() {
        return Err(GeometryError::NotGeneric(rep));
    }
    Ok(k.canonical())
}
