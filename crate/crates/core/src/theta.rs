//! Theta-curve diagrams and the correspondence with rail diagrams.
//!
//! The rails are closed up far away: the two top rail ends are joined by
//! a connector, likewise the two bottom ends, and `INF` disappears. The
//! arc becomes the middle edge between the two endpoint vertices; the
//! rail pieces above the endpoints plus the top connector form the upper
//! edge, the pieces below plus the bottom connector the lower edge. The
//! connector darts stay marked so the way back cuts exactly there.

use std::collections::HashSet;

use crate::diagram::{CanonicalCode, DiagramError, InfPort, RailDiagram, RailId, RailTag, Report};
use crate::map::{Dart, DartLabel, Map, MapEdit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeClass {
    Upper,
    Middle,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThetaVertex {
    /// The vertex that was the leg.
    Node0,
    /// The vertex that was the head.
    Node1,
    Over,
    Under,
}

/// Vertex role, class of the dart's edge, and whether that edge carries a
/// connector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaTag {
    pub vertex: ThetaVertex,
    pub class: EdgeClass,
    pub connector: bool,
}

impl DartLabel for ThetaTag {
    fn code(&self) -> u8 {
        let v = match self.vertex {
            ThetaVertex::Node0 => 0,
            ThetaVertex::Node1 => 1,
            ThetaVertex::Over => 2,
            ThetaVertex::Under => 3,
        };
        let c = match self.class {
            EdgeClass::Upper => 0,
            EdgeClass::Middle => 1,
            EdgeClass::Lower => 2,
        };
        v * 8 + c * 2 + self.connector as u8
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThetaError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("invalid theta diagram: {0}")]
    Invalid(Report),
    #[error("out of scope: no cut of the upper and lower edges yields a rail diagram")]
    Scope,
}

#[derive(Clone, Debug)]
pub struct ThetaDiagram {
    pub(crate) map: Map<ThetaTag>,
}

impl PartialEq for ThetaDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_code() == other.canonical_code()
    }
}

impl Eq for ThetaDiagram {}

impl ThetaDiagram {
    pub fn from_map(map: Map<ThetaTag>) -> Self {
        ThetaDiagram { map }
    }

    pub fn map(&self) -> &Map<ThetaTag> {
        &self.map
    }

    /// The middle edge's dart at node 0.
    pub fn root(&self) -> Option<Dart> {
        self.map.darts().find(|&d| {
            let t = self.map.tag(d);
            t.vertex == ThetaVertex::Node0 && t.class == EdgeClass::Middle
        })
    }

    pub fn canonical(&self) -> Self {
        match self.root() {
            Some(r) if self.map.is_connected() => ThetaDiagram { map: self.map.canonical_from(r).0 },
            _ => self.clone(),
        }
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        CanonicalCode(self.canonical().map.code_bytes())
    }

    pub fn node_count(&self) -> usize {
        self.map
            .vertices()
            .iter()
            .filter(|v| matches!(self.map.tag(v[0]).vertex, ThetaVertex::Node0 | ThetaVertex::Node1))
            .count()
    }

    pub fn crossing_count(&self) -> usize {
        self.map.darts().filter(|&d| self.map.tag(d).vertex == ThetaVertex::Over).count() / 2
    }

    /// Darts leaving each vertex along the walk of `class` from node 0 to
    /// node 1. `None` if the walk is broken.
    pub fn walk(&self, class: EdgeClass) -> Option<Vec<Dart>> {
        let m = &self.map;
        let start = m.darts().find(|&d| {
            let t = m.tag(d);
            t.vertex == ThetaVertex::Node0 && t.class == class
        })?;
        let mut out = vec![start];
        loop {
            let arrive = m.alpha(*out.last().unwrap());
            let t = m.tag(arrive);
            match t.vertex {
                ThetaVertex::Node1 if t.class == class => return Some(out),
                ThetaVertex::Over | ThetaVertex::Under if t.class == class => out.push(m.sigma2(arrive)),
                _ => return None,
            }
            if out.len() > m.len() {
                return None;
            }
        }
    }

    /// Unordered pairs of classes meeting at each crossing.
    pub fn crossing_classes(&self) -> Vec<(EdgeClass, EdgeClass)> {
        let mut out = Vec::new();
        for v in self.map.vertices() {
            let t = self.map.tag(v[0]);
            if matches!(t.vertex, ThetaVertex::Over | ThetaVertex::Under) {
                let (a, b) = (t.class, self.map.tag(v[1]).class);
                out.push((a.min(b), a.max(b)));
            }
        }
        out.sort();
        out
    }

    pub fn validate(&self) -> Report {
        let m = &self.map;
        let mut rep = Report::default();
        if m.is_empty() {
            rep.push("dart count", "no darts");
            return rep;
        }
        if let Some(e) = m.permutation_error() {
            rep.push(e, "permutation check failed");
            return rep;
        }
        let mut nodes = [0, 0];
        for v in m.vertices() {
            let tags: Vec<ThetaTag> = v.iter().map(|&d| *m.tag(d)).collect();
            match tags[0].vertex {
                ThetaVertex::Node0 | ThetaVertex::Node1 => {
                    let k = (tags[0].vertex == ThetaVertex::Node1) as usize;
                    nodes[k] += 1;
                    let mut classes: Vec<EdgeClass> = tags.iter().map(|t| t.class).collect();
                    classes.sort();
                    let same = tags.iter().all(|t| t.vertex == tags[0].vertex);
                    if !same || classes != [EdgeClass::Upper, EdgeClass::Middle, EdgeClass::Lower] {
                        rep.push("node shape", format!("node darts {tags:?}"));
                    }
                }
                ThetaVertex::Over | ThetaVertex::Under => {
                    let same = |a: &ThetaTag, b: &ThetaTag| a.vertex == b.vertex && a.class == b.class;
                    let ok = tags.len() == 4
                        && same(&tags[0], &tags[2])
                        && same(&tags[1], &tags[3])
                        && tags[0].vertex != tags[1].vertex
                        && tags.iter().all(|t| matches!(t.vertex, ThetaVertex::Over | ThetaVertex::Under));
                    if !ok {
                        rep.push("crossing shape", format!("crossing darts {tags:?}"));
                    }
                }
            }
        }
        if nodes != [1, 1] {
            rep.push("node count", format!("{} + {} nodes", nodes[0], nodes[1]));
        }
        for d in m.darts() {
            let (a, b) = (m.tag(d), m.tag(m.alpha(d)));
            if a.class != b.class || a.connector != b.connector {
                rep.push("edge typing", format!("dart {d} ({a:?}) joined to {b:?}"));
            }
        }
        if !rep.is_ok() {
            return rep;
        }
        let mut covered = 0;
        for class in [EdgeClass::Upper, EdgeClass::Middle, EdgeClass::Lower] {
            match self.walk(class) {
                Some(w) => {
                    let mut seen = HashSet::new();
                    let simple = w.iter().all(|&d| seen.insert(d));
                    if !simple {
                        rep.push("edge walk", format!("{class:?} walk repeats"));
                    }
                    covered += 2 * w.len();
                }
                None => rep.push("edge walk", format!("{class:?} walk does not join the nodes")),
            }
        }
        if rep.is_ok() && covered != m.len() {
            rep.push("edge walk", "walks do not cover every dart");
        }
        if !m.is_connected() {
            rep.push("connectivity", "map is disconnected");
        }
        let chi = m.euler_characteristic();
        if chi != 2 {
            rep.push("genus", format!("V - E + F = {chi}"));
        }
        rep
    }

    pub fn ensure_valid(&self) -> Result<(), ThetaError> {
        let r = self.validate();
        if r.is_ok() {
            Ok(())
        } else {
            Err(ThetaError::Invalid(r))
        }
    }
}

/// Closes the rails into a theta curve.
pub fn to_theta(d: &RailDiagram) -> Result<ThetaDiagram, ThetaError> {
    d.ensure_valid()?;
    let m = d.map();
    let mut class = vec![EdgeClass::Middle; m.len()];
    for r in [RailId::One, RailId::Two] {
        let walk = d.rail_walk(r);
        let mut below = false;
        for &x in &walk {
            // `x` points up along the edge above the vertex it enters.
            let c = if below { EdgeClass::Lower } else { EdgeClass::Upper };
            class[x as usize] = c;
            class[m.alpha(x) as usize] = c;
            if matches!(m.tag(x), RailTag::LegRail | RailTag::HeadRail) {
                below = true;
            }
        }
    }
    let mut connector = vec![false; m.len()];
    let mut e = MapEdit::new(m);
    for (a, b) in [(InfPort::L1Top, InfPort::L2Top), (InfPort::L1Bottom, InfPort::L2Bottom)] {
        let (x, y) = (m.alpha(d.inf_port(a)), m.alpha(d.inf_port(b)));
        connector[x as usize] = true;
        connector[y as usize] = true;
        e.link(x, y);
    }
    e.kill_vertex(d.inf_port(InfPort::L1Top));
    let tags: Vec<ThetaTag> = m
        .darts()
        .map(|x| {
            let vertex = match *m.tag(x) {
                RailTag::LegRail | RailTag::LegArc => ThetaVertex::Node0,
                RailTag::HeadRail | RailTag::HeadArc => ThetaVertex::Node1,
                RailTag::Over | RailTag::ArcOver => ThetaVertex::Over,
                RailTag::Under | RailTag::ArcUnder => ThetaVertex::Under,
                RailTag::RailCross(_) => {
                    if *m.tag(m.sigma(x)) == RailTag::ArcOver {
                        ThetaVertex::Under
                    } else {
                        ThetaVertex::Over
                    }
                }
                // Removed with INF.
                RailTag::Inf(_) => ThetaVertex::Over,
            };
            ThetaTag { vertex, class: class[x as usize], connector: connector[x as usize] }
        })
        .collect();
    let e = MapEdit { alpha: e.alpha, sigma: e.sigma, tag: tags, alive: e.alive };
    let (map, _) = e.finish().map_err(|s| ThetaError::Invalid(single("surgery", s)))?;
    let t = ThetaDiagram { map }.canonical();
    t.ensure_valid()?;
    Ok(t)
}

fn single(category: &'static str, detail: &str) -> Report {
    let mut r = Report::default();
    r.push(category, detail);
    r
}

/// Cuts the upper edge at `(ua, ub)` and the lower at `(la, lb)` (the
/// `a` darts on the node-0 side) and reinstates `INF` there.
fn cut(t: &ThetaDiagram, ua: Dart, ub: Dart, la: Dart, lb: Dart) -> Option<RailDiagram> {
    let m = &t.map;
    let rail_one: HashSet<Dart> = {
        let mut s = HashSet::new();
        for (class, stop) in [(EdgeClass::Upper, ua), (EdgeClass::Lower, la)] {
            for &x in &t.walk(class)? {
                if x == stop {
                    s.insert(x);
                    break;
                }
                s.insert(x);
                s.insert(m.alpha(x));
            }
        }
        s
    };
    let mut tags = Vec::with_capacity(m.len() + 4);
    for x in m.darts() {
        let tg = m.tag(x);
        let rail = if rail_one.contains(&x) { RailId::One } else { RailId::Two };
        let other = m.tag(m.sigma(x));
        let tag = match (tg.vertex, tg.class) {
            (ThetaVertex::Node0, EdgeClass::Middle) => RailTag::LegArc,
            (ThetaVertex::Node0, _) => RailTag::LegRail,
            (ThetaVertex::Node1, EdgeClass::Middle) => RailTag::HeadArc,
            (ThetaVertex::Node1, _) => RailTag::HeadRail,
            (v, EdgeClass::Middle) => match (v, other.class) {
                (ThetaVertex::Over, EdgeClass::Middle) => RailTag::Over,
                (ThetaVertex::Under, EdgeClass::Middle) => RailTag::Under,
                (ThetaVertex::Over, _) => RailTag::ArcOver,
                _ => RailTag::ArcUnder,
            },
            // A rail dart must cross the arc.
            (_, _) if other.class != EdgeClass::Middle => return None,
            _ => RailTag::RailCross(rail),
        };
        tags.push(tag);
    }
    let mut e = MapEdit::new(&Map::from_parts(m.alpha.clone(), m.sigma.clone(), tags));
    let inf = e.new_vertex(&[
        RailTag::Inf(InfPort::L1Top),
        RailTag::Inf(InfPort::L2Top),
        RailTag::Inf(InfPort::L2Bottom),
        RailTag::Inf(InfPort::L1Bottom),
    ]);
    e.link(ua, inf[0]);
    e.link(ub, inf[1]);
    e.link(lb, inf[2]);
    e.link(la, inf[3]);
    let (map, _) = e.finish().ok()?;
    let d = RailDiagram::from_map(map);
    d.validate().is_ok().then(|| d.canonical())
}

/// Opens a theta curve into a rail diagram. Marked connectors are cut if
/// present; otherwise the first pair of upper and lower edges (in walk
/// order from node 0) whose cut gives a valid rail diagram.
pub fn from_theta(t: &ThetaDiagram) -> Result<RailDiagram, ThetaError> {
    t.ensure_valid()?;
    let m = &t.map;
    let edges = |class: EdgeClass| -> Vec<(Dart, Dart)> {
        t.walk(class).unwrap_or_default().into_iter().map(|x| (x, m.alpha(x))).collect()
    };
    let (upper, lower) = (edges(EdgeClass::Upper), edges(EdgeClass::Lower));
    let marked = |es: &[(Dart, Dart)]| es.iter().copied().find(|&(x, _)| m.tag(x).connector);
    if let (Some((ua, ub)), Some((la, lb))) = (marked(&upper), marked(&lower)) {
        return cut(t, ua, ub, la, lb).ok_or(ThetaError::Scope);
    }
    for &(ua, ub) in &upper {
        for &(la, lb) in &lower {
            if let Some(d) = cut(t, ua, ub, la, lb) {
                return Ok(d);
            }
        }
    }
    Err(ThetaError::Scope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::End;
    use crate::moves::{apply_move, MoveSite};

    #[test]
    fn trivial_becomes_a_plain_theta() {
        let t = to_theta(&RailDiagram::trivial()).unwrap();
        assert_eq!(t.node_count(), 2);
        assert_eq!(t.crossing_count(), 0);
        assert_eq!(t.map().len(), 6);
        assert_eq!(from_theta(&t).unwrap(), RailDiagram::trivial());
    }

    fn kink(above: bool, over: bool) -> RailDiagram {
        let site = MoveSite::RailOmega1Plus { end: End::Leg, above, over };
        apply_move(&RailDiagram::trivial(), &site).unwrap()
    }

    #[test]
    fn rail_crossing_lands_on_the_matching_edge() {
        let up = to_theta(&kink(true, true)).unwrap();
        assert_eq!(up.crossing_classes(), vec![(EdgeClass::Upper, EdgeClass::Middle)]);
        let down = to_theta(&kink(false, true)).unwrap();
        assert_eq!(down.crossing_classes(), vec![(EdgeClass::Middle, EdgeClass::Lower)]);
        for d in [kink(true, true), kink(false, false)] {
            assert_eq!(from_theta(&to_theta(&d).unwrap()).unwrap(), d);
        }
    }

    #[test]
    fn unmarked_theta_still_opens() {
        let t = to_theta(&RailDiagram::trivial()).unwrap();
        let mut map = t.map().clone();
        for x in map.tag.iter_mut() {
            x.connector = false;
        }
        let d = from_theta(&ThetaDiagram::from_map(map)).unwrap();
        assert_eq!(d, RailDiagram::trivial());
    }

    #[test]
    fn crossed_upper_and_lower_is_out_of_scope() {
        // Relabel the middle edge as upper and vice versa: the old rail
        // crossing below the leg now joins upper and lower.
        let t = to_theta(&kink(false, true)).unwrap();
        let mut map = t.map().clone();
        for x in map.tag.iter_mut() {
            x.class = match x.class {
                EdgeClass::Upper => EdgeClass::Middle,
                EdgeClass::Middle => EdgeClass::Upper,
                c => c,
            };
            x.connector = false;
        }
        let swapped = ThetaDiagram::from_map(map);
        assert!(swapped.validate().is_ok(), "{}", swapped.validate());
        assert_eq!(from_theta(&swapped), Err(ThetaError::Scope));
    }
}
