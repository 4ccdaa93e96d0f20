//! Classical (spherical) knotoid diagrams: an open arc from a degree-one
//! leg to a degree-one head with over/under crossings and nothing else.

use std::collections::HashMap;

use crate::diagram::{CanonicalCode, DiagramError, RailDiagram, RailTag, Report};
use crate::map::{Dart, DartLabel, Map};
use crate::rational::P2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KnotoidTag {
    Leg,
    Head,
    Over,
    Under,
}

impl DartLabel for KnotoidTag {
    fn code(&self) -> u8 {
        match self {
            KnotoidTag::Leg => 0,
            KnotoidTag::Head => 1,
            KnotoidTag::Over => 2,
            KnotoidTag::Under => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct KnotoidDiagram {
    pub(crate) map: Map<KnotoidTag>,
    pub(crate) hint: Vec<Option<P2>>,
}

impl PartialEq for KnotoidDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_code() == other.canonical_code()
    }
}

impl Eq for KnotoidDiagram {}

impl KnotoidDiagram {
    pub fn from_map(map: Map<KnotoidTag>) -> Self {
        let n = map.len();
        KnotoidDiagram { map, hint: vec![None; n] }
    }

    pub fn with_hints(map: Map<KnotoidTag>, hint: Vec<Option<P2>>) -> Self {
        KnotoidDiagram { map, hint }
    }

    pub fn map(&self) -> &Map<KnotoidTag> {
        &self.map
    }

    pub fn hints(&self) -> &[Option<P2>] {
        &self.hint
    }

    /// A single edge from leg to head.
    pub fn trivial() -> Self {
        KnotoidDiagram::from_map(Map::from_parts(
            vec![1, 0],
            vec![0, 1],
            vec![KnotoidTag::Leg, KnotoidTag::Head],
        ))
    }

    /// The knotoid left after deleting both rails: endpoints become
    /// degree one and arc–rail crossings disappear.
    pub fn forget_rails(d: &RailDiagram) -> Self {
        let m = d.map();
        let keep = |x: Dart| {
            matches!(m.tag(x), RailTag::LegArc | RailTag::HeadArc | RailTag::Over | RailTag::Under)
        };
        let mut new_of = HashMap::new();
        let mut old = Vec::new();
        for x in m.darts() {
            if keep(x) {
                new_of.insert(x, old.len() as Dart);
                old.push(x);
            }
        }
        let mut alpha = Vec::with_capacity(old.len());
        let mut sigma = Vec::with_capacity(old.len());
        let mut tag = Vec::with_capacity(old.len());
        for &x in &old {
            let mut y = m.alpha(x);
            while !keep(y) {
                y = m.alpha(m.sigma2(y));
            }
            alpha.push(new_of[&y]);
            let t = match m.tag(x) {
                RailTag::LegArc => KnotoidTag::Leg,
                RailTag::HeadArc => KnotoidTag::Head,
                RailTag::Over => KnotoidTag::Over,
                _ => KnotoidTag::Under,
            };
            sigma.push(if matches!(t, KnotoidTag::Leg | KnotoidTag::Head) { new_of[&x] } else { new_of[&m.sigma(x)] });
            tag.push(t);
        }
        KnotoidDiagram::from_map(Map::from_parts(alpha, sigma, tag)).canonical()
    }

    fn find(&self, t: KnotoidTag) -> Option<Dart> {
        self.map.darts().find(|&d| *self.map.tag(d) == t)
    }

    pub fn leg(&self) -> Dart {
        self.find(KnotoidTag::Leg).expect("valid knotoid has a leg")
    }

    pub fn xing_count(&self) -> usize {
        self.map.darts().filter(|&d| *self.map.tag(d) == KnotoidTag::Over).count() / 2
    }

    /// Outgoing darts along the arc: the leg dart, then the continuation at
    /// each crossing passed.
    pub fn arc_walk(&self) -> Vec<Dart> {
        let mut out = vec![self.leg()];
        let limit = self.map.len();
        loop {
            let arrive = self.map.alpha(*out.last().unwrap());
            if *self.map.tag(arrive) == KnotoidTag::Head || out.len() > limit {
                return out;
            }
            out.push(self.map.sigma2(arrive));
        }
    }

    pub fn canonical(&self) -> Self {
        let Some(root) = self.find(KnotoidTag::Leg) else { return self.clone() };
        if !self.map.is_connected() {
            return self.clone();
        }
        let (map, new_of) = self.map.canonical_from(root);
        let mut hint = vec![None; map.len()];
        for (d, h) in self.hint.iter().enumerate() {
            hint[new_of[d] as usize] = h.clone();
        }
        KnotoidDiagram { map, hint }
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        CanonicalCode(self.canonical().map.code_bytes())
    }

    pub fn ensure_valid(&self) -> Result<(), DiagramError> {
        let r = self.validate();
        if r.is_ok() {
            Ok(())
        } else {
            Err(DiagramError::Invalid(r))
        }
    }

    pub fn validate(&self) -> Report {
        use KnotoidTag::*;
        let m = &self.map;
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
        let (mut legs, mut heads) = (0, 0);
        for v in &verts {
            let tags: Vec<KnotoidTag> = v.iter().map(|&d| *m.tag(d)).collect();
            match tags[0] {
                Leg | Head => {
                    if tags[0] == Leg {
                        legs += 1
                    } else {
                        heads += 1
                    }
                    if tags.len() != 1 {
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
            }
        }
        if legs != 1 || heads != 1 {
            rep.push("endpoint count", format!("{legs} legs, {heads} heads"));
        }
        if !rep.is_ok() {
            return rep;
        }
        let walk = self.arc_walk();
        let last = m.alpha(*walk.last().unwrap());
        if *m.tag(last) != Head || 2 * walk.len() != m.len() {
            rep.push("arc walk", "arc from leg does not cover the diagram");
        }
        if !m.is_connected() {
            rep.push("connectivity", "map is disconnected");
        }
        if m.euler_characteristic() != 2 {
            rep.push("genus", format!("V-E+F = {}", m.euler_characteristic()));
        }
        rep
    }
}
