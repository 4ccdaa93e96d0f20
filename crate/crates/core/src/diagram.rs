//! Rail knotoid diagrams as combinatorial maps on the sphere.
//!
//! The two rails are compactified through a single `INF` vertex of degree
//! four. Every dart carries a [`RailTag`] that fixes its vertex type and,
//! at crossings, its over/under role; vertex kinds are derived from tags.
//!
//! The `INF` ports lie on the circle at infinity in the counterclockwise
//! order ℓ1-top, ℓ1-bottom, ℓ2-bottom, ℓ2-top. Seen as a vertex of the
//! sphere this order is reversed, so `sigma` at `INF` runs
//! ℓ1-top → ℓ2-top → ℓ2-bottom → ℓ1-bottom.

use std::fmt;

use crate::map::{Dart, DartLabel, Map};
use crate::rational::P2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RailId {
    One,
    Two,
}

impl RailId {
    pub fn index(self) -> u8 {
        match self {
            RailId::One => 1,
            RailId::Two => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InfPort {
    L1Top,
    L1Bottom,
    L2Bottom,
    L2Top,
}

impl InfPort {
    pub fn rail(self) -> RailId {
        match self {
            InfPort::L1Top | InfPort::L1Bottom => RailId::One,
            InfPort::L2Top | InfPort::L2Bottom => RailId::Two,
        }
    }

    pub fn is_top(self) -> bool {
        matches!(self, InfPort::L1Top | InfPort::L2Top)
    }
}

/// Role of a dart at its vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RailTag {
    Inf(InfPort),
    LegRail,
    LegArc,
    HeadRail,
    HeadArc,
    /// Arc dart of an arc self-crossing, on the over strand.
    Over,
    Under,
    /// Rail dart of an arc–rail crossing.
    RailCross(RailId),
    ArcOver,
    ArcUnder,
}

impl RailTag {
    pub fn is_arc(self) -> bool {
        matches!(
            self,
            RailTag::LegArc
                | RailTag::HeadArc
                | RailTag::Over
                | RailTag::Under
                | RailTag::ArcOver
                | RailTag::ArcUnder
        )
    }

    /// Rail carried by a rail dart.
    pub fn rail(self) -> Option<RailId> {
        match self {
            RailTag::Inf(p) => Some(p.rail()),
            RailTag::LegRail => Some(RailId::One),
            RailTag::HeadRail => Some(RailId::Two),
            RailTag::RailCross(r) => Some(r),
            _ => None,
        }
    }
}

impl DartLabel for RailTag {
    fn code(&self) -> u8 {
        match self {
            RailTag::Inf(InfPort::L1Top) => 0,
            RailTag::Inf(InfPort::L1Bottom) => 1,
            RailTag::Inf(InfPort::L2Bottom) => 2,
            RailTag::Inf(InfPort::L2Top) => 3,
            RailTag::LegRail => 4,
            RailTag::LegArc => 5,
            RailTag::HeadRail => 6,
            RailTag::HeadArc => 7,
            RailTag::Over => 8,
            RailTag::Under => 9,
            RailTag::RailCross(RailId::One) => 10,
            RailTag::RailCross(RailId::Two) => 11,
            RailTag::ArcOver => 12,
            RailTag::ArcUnder => 13,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Inf,
    Leg,
    Head,
    Xing,
    RailX { rail: RailId, arc_over: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Leg,
    Head,
}

/// Canonical byte string of a rooted typed map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// One violated invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub category: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, category: &'static str, detail: impl Into<String>) {
        if self.violations.iter().any(|v| v.category == category) {
            return;
        }
        self.violations.push(Violation { category, detail: detail.into() });
    }

    pub fn has(&self, category: &str) -> bool {
        self.violations.iter().any(|v| v.category == category)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", v.category, v.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("invalid diagram: {0}")]
    Invalid(Report),
}

/// A rail knotoid diagram. `hint` carries optional plane positions per
/// dart (the position of the dart's vertex) for rendering only.
#[derive(Clone, Debug)]
pub struct RailDiagram {
    pub(crate) map: Map<RailTag>,
    pub(crate) hint: Vec<Option<P2>>,
}

impl PartialEq for RailDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_code() == other.canonical_code()
    }
}

impl Eq for RailDiagram {}

impl RailDiagram {
    pub fn from_map(map: Map<RailTag>) -> Self {
        let n = map.len();
        RailDiagram { map, hint: vec![None; n] }
    }

    pub fn with_hints(map: Map<RailTag>, hint: Vec<Option<P2>>) -> Self {
        RailDiagram { map, hint }
    }

    pub fn map(&self) -> &Map<RailTag> {
        &self.map
    }

    pub fn hints(&self) -> &[Option<P2>] {
        &self.hint
    }

    pub fn has_hints(&self) -> bool {
        self.hint.iter().any(|h| h.is_some())
    }

    pub fn dart_count(&self) -> usize {
        self.map.len()
    }

    /// Straight arc from the leg on ℓ1 to the head on ℓ2, no crossings.
    pub fn trivial() -> Self {
        use InfPort::*;
        use RailTag::*;
        let tag = vec![
            Inf(L1Top),
            Inf(L1Bottom),
            Inf(L2Bottom),
            Inf(L2Top),
            LegRail,
            LegArc,
            LegRail,
            HeadRail,
            HeadArc,
            HeadRail,
        ];
        let alpha = vec![4, 6, 9, 7, 0, 8, 1, 3, 5, 2];
        // INF: 0→3→2→1; LEG: arc(5)→up(4)→down(6); HEAD: up(7)→arc(8)→down(9).
        let sigma = vec![3, 0, 1, 2, 6, 4, 5, 8, 9, 7];
        RailDiagram::from_map(Map::from_parts(alpha, sigma, tag)).canonical()
    }

    pub fn root(&self) -> Option<Dart> {
        self.map.darts().find(|&d| *self.map.tag(d) == RailTag::Inf(InfPort::L1Top))
    }

    pub fn inf_port(&self, p: InfPort) -> Dart {
        self.map
            .darts()
            .find(|&d| *self.map.tag(d) == RailTag::Inf(p))
            .expect("valid diagram has all INF ports")
    }

    pub fn endpoint_arc(&self, e: End) -> Dart {
        let want = match e {
            End::Leg => RailTag::LegArc,
            End::Head => RailTag::HeadArc,
        };
        self.map.darts().find(|&d| *self.map.tag(d) == want).expect("endpoint present")
    }

    pub fn kind_of(&self, d: Dart) -> VertexKind {
        match *self.map.tag(d) {
            RailTag::Inf(_) => VertexKind::Inf,
            RailTag::LegRail | RailTag::LegArc => VertexKind::Leg,
            RailTag::HeadRail | RailTag::HeadArc => VertexKind::Head,
            RailTag::Over | RailTag::Under => VertexKind::Xing,
            RailTag::RailCross(rail) => {
                let arc = *self.map.tag(self.map.sigma(d));
                VertexKind::RailX { rail, arc_over: arc == RailTag::ArcOver }
            }
            t @ (RailTag::ArcOver | RailTag::ArcUnder) => {
                let rail = self.map.tag(self.map.sigma(d)).rail().unwrap_or(RailId::One);
                VertexKind::RailX { rail, arc_over: t == RailTag::ArcOver }
            }
        }
    }

    pub fn is_over(&self, d: Dart) -> bool {
        matches!(self.map.tag(d), RailTag::Over | RailTag::ArcOver)
    }

    pub fn xing_count(&self) -> usize {
        self.map.darts().filter(|&d| *self.map.tag(d) == RailTag::Over).count() / 2
    }

    pub fn railx_count(&self) -> usize {
        self.map.darts().filter(|&d| matches!(self.map.tag(d), RailTag::RailCross(_))).count() / 2
    }

    /// All crossings: arc self-crossings plus arc–rail crossings.
    pub fn crossing_count(&self) -> usize {
        self.xing_count() + self.railx_count()
    }

    pub fn faces(&self) -> Result<Vec<Vec<Dart>>, DiagramError> {
        self.ensure_valid()?;
        Ok(self.map.faces())
    }

    pub fn ensure_valid(&self) -> Result<(), DiagramError> {
        let r = self.validate();
        if r.is_ok() {
            Ok(())
        } else {
            Err(DiagramError::Invalid(r))
        }
    }

    /// Relabels darts by the rooted traversal from the ℓ1-top port.
    pub fn canonical(&self) -> Self {
        let root = match self.root() {
            Some(r) => r,
            None => return self.clone(),
        };
        if !self.map.is_connected() {
            return self.clone();
        }
        let (map, new_of) = self.map.canonical_from(root);
        let mut hint = vec![None; map.len()];
        for (d, h) in self.hint.iter().enumerate() {
            hint[new_of[d] as usize] = h.clone();
        }
        RailDiagram { map, hint }
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        CanonicalCode(self.canonical().map.code_bytes())
    }

    pub fn clear_hints(&mut self) {
        self.hint = vec![None; self.map.len()];
    }

    /// Outgoing arc darts from leg to head: the leg's arc dart, then the
    /// continuation dart at each crossing passed. Assumes a valid diagram.
    pub fn arc_walk(&self) -> Vec<Dart> {
        let mut out = vec![self.endpoint_arc(End::Leg)];
        let limit = self.map.len();
        loop {
            let arrive = self.map.alpha(*out.last().unwrap());
            if *self.map.tag(arrive) == RailTag::HeadArc || out.len() > limit {
                return out;
            }
            out.push(self.map.sigma2(arrive));
        }
    }

    /// Incoming dart at each vertex visited along the arc (same length as
    /// `arc_walk`; the last entry is the head's arc dart).
    pub fn arc_arrivals(&self) -> Vec<Dart> {
        self.arc_walk().iter().map(|&d| self.map.alpha(d)).collect()
    }

    /// Rail darts entering each vertex of rail `r`, walking from its top
    /// port down to the bottom port (the final entry is the bottom port).
    pub fn rail_walk(&self, r: RailId) -> Vec<Dart> {
        let top = match r {
            RailId::One => self.inf_port(InfPort::L1Top),
            RailId::Two => self.inf_port(InfPort::L2Top),
        };
        let mut out = Vec::new();
        let mut d = self.map.alpha(top);
        let limit = self.map.len();
        loop {
            out.push(d);
            if matches!(self.map.tag(d), RailTag::Inf(_)) || out.len() > limit {
                return out;
            }
            d = self.map.alpha(self.rail_continue(d));
        }
    }

    /// The dart leaving a rail vertex on the other side from `d`.
    pub fn rail_continue(&self, d: Dart) -> Dart {
        match *self.map.tag(d) {
            RailTag::LegRail | RailTag::HeadRail => {
                let a = self.map.sigma(d);
                if matches!(self.map.tag(a), RailTag::LegRail | RailTag::HeadRail) {
                    a
                } else {
                    self.map.sigma(a)
                }
            }
            _ => self.map.sigma2(d),
        }
    }

    /// Rail dart at endpoint `e` pointing up (toward the top port) or down.
    pub fn endpoint_rail(&self, e: End, up: bool) -> Dart {
        let (rail, tag) = match e {
            End::Leg => (RailId::One, RailTag::LegRail),
            End::Head => (RailId::Two, RailTag::HeadRail),
        };
        let walk = self.rail_walk(rail);
        let entry = walk.iter().copied().find(|&d| *self.map.tag(d) == tag).expect("endpoint on rail");
        // `entry` arrives from above, so it points up.
        if up {
            entry
        } else {
            self.rail_continue(entry)
        }
    }

    /// Whether `d` is a rail dart pointing toward the top port.
    pub fn rail_points_up(&self, d: Dart) -> bool {
        let Some(rail) = self.map.tag(d).rail() else { return false };
        self.rail_walk(rail).contains(&d)
    }

    pub fn validate(&self) -> Report {
        validate_rail(&self.map)
    }
}

fn validate_rail(m: &Map<RailTag>) -> Report {
    use RailTag::*;
    let mut rep = Report::default();
    if m.is_empty() || m.len() % 2 == 1 {
        rep.push("dart count", format!("{} darts", m.len()));
        return rep;
    }
    if let Some(e) = m.permutation_error() {
        rep.push(e, "permutation check failed");
        return rep;
    }
    let verts = m.vertices();
    let (mut n_inf, mut n_leg, mut n_head) = (0, 0, 0);
    for v in &verts {
        let tags: Vec<RailTag> = v.iter().map(|&d| *m.tag(d)).collect();
        match tags[0] {
            Inf(_) => {
                n_inf += 1;
                let start = v.iter().position(|&d| *m.tag(d) == Inf(InfPort::L1Top));
                let ok = tags.len() == 4
                    && start.is_some_and(|s| {
                        let rot: Vec<RailTag> = (0..4).map(|i| tags[(s + i) % 4]).collect();
                        rot == [
                            Inf(InfPort::L1Top),
                            Inf(InfPort::L2Top),
                            Inf(InfPort::L2Bottom),
                            Inf(InfPort::L1Bottom),
                        ]
                    });
                if !ok {
                    rep.push("inf rotation", format!("INF darts {tags:?}"));
                }
            }
            LegRail | LegArc | HeadRail | HeadArc => {
                let is_leg = matches!(tags[0], LegRail | LegArc);
                if is_leg {
                    n_leg += 1
                } else {
                    n_head += 1
                }
                let (r, a) = if is_leg { (LegRail, LegArc) } else { (HeadRail, HeadArc) };
                let nr = tags.iter().filter(|&&t| t == r).count();
                let na = tags.iter().filter(|&&t| t == a).count();
                if tags.len() != 3 || nr != 2 || na != 1 {
                    rep.push("endpoint shape", format!("endpoint darts {tags:?}"));
                }
            }
            Over | Under => {
                let ok = tags.len() == 4
                    && tags[0] == tags[2]
                    && tags[1] == tags[3]
                    && tags[0] != tags[1]
                    && tags.iter().all(|t| matches!(t, Over | Under));
                if !ok {
                    rep.push("crossing shape", format!("crossing darts {tags:?}"));
                }
            }
            RailCross(_) | ArcOver | ArcUnder => {
                let ok = tags.len() == 4 && tags[0] == tags[2] && tags[1] == tags[3] && {
                    let (p, q) = (tags[0], tags[1]);
                    (matches!(p, RailCross(_)) && matches!(q, ArcOver | ArcUnder))
                        || (matches!(q, RailCross(_)) && matches!(p, ArcOver | ArcUnder))
                };
                if !ok {
                    rep.push("rail crossing shape", format!("rail crossing darts {tags:?}"));
                }
            }
        }
    }
    if n_inf != 1 {
        rep.push("inf count", format!("{n_inf} INF vertices"));
    }
    if n_leg != 1 || n_head != 1 {
        rep.push("endpoint count", format!("{n_leg} legs, {n_head} heads"));
    }
    for d in m.darts() {
        let (a, b) = (*m.tag(d), *m.tag(m.alpha(d)));
        let ok = (a.is_arc() && b.is_arc()) || (a.rail().is_some() && a.rail() == b.rail());
        if !ok {
            rep.push("edge typing", format!("dart {d} ({a:?}) joined to {b:?}"));
        }
    }
    if !rep.is_ok() {
        return rep;
    }
    let d = RailDiagram::from_map(m.clone());

    // Rails: simple paths top → bottom through their endpoint.
    for (rail, endpoint, bottom) in [
        (RailId::One, LegRail, InfPort::L1Bottom),
        (RailId::Two, HeadRail, InfPort::L2Bottom),
    ] {
        let walk = d.rail_walk(rail);
        let last = *walk.last().unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut passes = 0;
        let mut ok = *m.tag(last) == Inf(bottom);
        for &x in &walk[..walk.len() - 1] {
            let root = m.orbit(x, |y| m.sigma(y)).into_iter().min().unwrap();
            if !seen.insert(root) {
                ok = false;
            }
            match *m.tag(x) {
                t if t == endpoint => passes += 1,
                RailCross(r) if r == rail => {}
                _ => ok = false,
            }
        }
        let expected = m.darts().filter(|&x| m.tag(x).rail() == Some(rail)).count();
        // Each visited vertex contributes two rail darts plus the two ports.
        if !ok || passes != 1 || 2 * (walk.len() - 1) + 2 != expected {
            rep.push("rail path", format!("rail {} is not a simple top-to-bottom path", rail.index()));
        }
    }

    // Arc: single open walk leg → head.
    let walk = d.arc_walk();
    let arrivals = d.arc_arrivals();
    let mut visits = std::collections::HashMap::new();
    let mut ok = *m.tag(*arrivals.last().unwrap()) == HeadArc && walk.len() <= m.len();
    for &x in &arrivals[..arrivals.len() - 1] {
        if !matches!(m.tag(x), Over | Under | ArcOver | ArcUnder) {
            ok = false;
        }
        let root = m.orbit(x, |y| m.sigma(y)).into_iter().min().unwrap();
        *visits.entry(root).or_insert(0) += 1;
    }
    for v in &verts {
        let want = match m.tag(v[0]) {
            Over | Under => 2,
            RailCross(_) | ArcOver | ArcUnder => 1,
            _ => continue,
        };
        if visits.get(&v[0]).copied().unwrap_or(0) != want {
            ok = false;
        }
    }
    let arc_darts = m.darts().filter(|&x| m.tag(x).is_arc()).count();
    if !ok || 2 * walk.len() != arc_darts {
        rep.push("arc walk", "arc is not a single leg-to-head walk covering every arc dart");
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
