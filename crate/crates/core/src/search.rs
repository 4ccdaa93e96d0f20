//! Bounded bidirectional search for a move sequence between two diagrams.
//!
//! Sound but incomplete: a path found always replays, `NotFound` proves
//! nothing. Both sides are first reduced greedily; the breadth-first part
//! then runs over canonical codes, always expanding the side whose
//! frontier is smaller (ties broken by the least code in the frontier), so
//! swapping the arguments swaps the roles and nothing else.

use std::collections::{BTreeMap, HashMap};

use crate::diagram::{CanonicalCode, DiagramError, RailDiagram};
use crate::invariants::{f2_normal_form, f2_word};
use crate::moves::{apply_move, enumerate_creations, enumerate_reductions, inverse_site, simplify, MoveError, MoveSite};

/// Default cap on the number of diagrams visited by one search.
pub const NODE_BUDGET: usize = 60_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Creation moves may not exceed this many crossings.
    pub max_crossings: usize,
    /// Length cap on the breadth-first part of the path.
    pub max_depth: usize,
    pub node_budget: usize,
}

impl SearchBounds {
    pub fn new(max_crossings: usize, max_depth: usize) -> Self {
        SearchBounds { max_crossings, max_depth, node_budget: NODE_BUDGET }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// Both sides exhausted their reachable sets within the crossing cap.
    Exhausted,
    DepthLimit,
    NodeBudget,
    /// The free-group normal forms differ, so no path exists at all.
    InvariantMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Connected { path: Vec<MoveSite>, explored: usize, bounds: SearchBounds },
    NotFound { explored: usize, depth: usize, reason: StopReason, bounds: SearchBounds },
}

impl SearchOutcome {
    pub fn is_connected(&self) -> bool {
        matches!(self, SearchOutcome::Connected { .. })
    }

    pub fn path(&self) -> Option<&[MoveSite]> {
        match self {
            SearchOutcome::Connected { path, .. } => Some(path),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Move(#[from] MoveError),
}

struct Node {
    diagram: RailDiagram,
    /// Predecessor and the site leading from it to this node.
    parent: Option<(CanonicalCode, MoveSite)>,
}

struct Side {
    seen: HashMap<CanonicalCode, Node>,
    frontier: Vec<CanonicalCode>,
    depth: usize,
}

impl Side {
    fn new(d: RailDiagram) -> Self {
        // Sites are read in canonical labels, as `replay` applies them.
        let d = d.canonical();
        let code = d.canonical_code();
        let mut seen = HashMap::new();
        seen.insert(code.clone(), Node { diagram: d, parent: None });
        Side { seen, frontier: vec![code], depth: 0 }
    }

    fn key(&self) -> (usize, Option<&CanonicalCode>) {
        (self.frontier.len(), self.frontier.first())
    }

    /// Sites leading from the root to `code`.
    fn path_to(&self, code: &CanonicalCode) -> Vec<MoveSite> {
        let mut out = Vec::new();
        let mut cur = code.clone();
        while let Some((p, s)) = &self.seen[&cur].parent {
            out.push(*s);
            cur = p.clone();
        }
        out.reverse();
        out
    }

    /// Sites leading from `code` back to the root.
    fn path_from(&self, code: &CanonicalCode) -> Result<Vec<MoveSite>, MoveError> {
        let mut out = Vec::new();
        let mut cur = code.clone();
        while let Some((p, s)) = &self.seen[&cur].parent {
            let before = &self.seen[p].diagram;
            let after = &self.seen[&cur].diagram;
            out.push(inverse_site(before, s, after)?);
            cur = p.clone();
        }
        Ok(out)
    }
}

fn neighbours(d: &RailDiagram, max_crossings: usize) -> Vec<(MoveSite, RailDiagram)> {
    let mut sites = enumerate_reductions(d).unwrap_or_default();
    sites.extend(enumerate_creations(d, max_crossings).unwrap_or_default());
    sites.into_iter().filter_map(|s| apply_move(d, &s).ok().map(|r| (s, r))).collect()
}

/// Reverses a path on `from` (ending at `to`) into a path from `to` back.
fn reverse_path(from: &RailDiagram, path: &[MoveSite]) -> Result<Vec<MoveSite>, MoveError> {
    let mut states = vec![from.canonical()];
    for s in path {
        let next = apply_move(states.last().unwrap(), s)?;
        states.push(next);
    }
    let mut out = Vec::new();
    for (i, s) in path.iter().enumerate().rev() {
        out.push(inverse_site(&states[i], s, &states[i + 1])?);
    }
    Ok(out)
}

/// [`connect_with`] with the default node budget.
pub fn connect(
    d1: &RailDiagram,
    d2: &RailDiagram,
    max_crossings: usize,
    max_depth: usize,
) -> Result<SearchOutcome, SearchError> {
    connect_with(d1, d2, SearchBounds::new(max_crossings, max_depth))
}

/// Looks for a move sequence turning `d1` into `d2`. A returned path
/// replays from `d1` (see [`crate::moves::replay`]) to a diagram with
/// `d2`'s canonical code.
pub fn connect_with(d1: &RailDiagram, d2: &RailDiagram, bounds: SearchBounds) -> Result<SearchOutcome, SearchError> {
    d1.ensure_valid()?;
    d2.ensure_valid()?;
    if d1.canonical_code() == d2.canonical_code() {
        return Ok(SearchOutcome::Connected { path: Vec::new(), explored: 1, bounds });
    }
    let nf = |d: &RailDiagram| f2_word(d).map(|w| f2_normal_form(&w));
    if nf(d1)? != nf(d2)? {
        return Ok(SearchOutcome::NotFound { explored: 0, depth: 0, reason: StopReason::InvariantMismatch, bounds });
    }
    let (s1, p1) = simplify(d1)?;
    let (s2, p2) = simplify(d2)?;
    let head = p1;
    let tail = reverse_path(d2, &p2)?;
    let mut sides = [Side::new(s1), Side::new(s2)];
    let finish = |mid: Vec<MoveSite>, explored: usize| {
        let mut path = head.clone();
        path.extend(mid);
        path.extend(tail.iter().copied());
        SearchOutcome::Connected { path, explored, bounds }
    };
    if sides[1].seen.contains_key(&sides[0].frontier[0]) {
        return Ok(finish(Vec::new(), 2));
    }
    loop {
        let explored = sides[0].seen.len() + sides[1].seen.len();
        let depth = sides[0].depth + sides[1].depth;
        let stop = |reason| SearchOutcome::NotFound { explored, depth, reason, bounds };
        if sides[0].frontier.is_empty() || sides[1].frontier.is_empty() {
            return Ok(stop(StopReason::Exhausted));
        }
        if depth >= bounds.max_depth {
            return Ok(stop(StopReason::DepthLimit));
        }
        if explored >= bounds.node_budget {
            return Ok(stop(StopReason::NodeBudget));
        }
        let k = if sides[0].key() <= sides[1].key() { 0 } else { 1 };
        let (a, b) = if k == 0 { sides.split_at_mut(1) } else { let (x, y) = sides.split_at_mut(1); (y, x) };
        let (side, other) = (&mut a[0], &b[0]);
        let mut next: BTreeMap<CanonicalCode, ()> = BTreeMap::new();
        let frontier = std::mem::take(&mut side.frontier);
        let mut meet: Option<CanonicalCode> = None;
        'expand: for code in &frontier {
            let d = side.seen[code].diagram.clone();
            for (s, r) in neighbours(&d, bounds.max_crossings) {
                let rc = r.canonical_code();
                if side.seen.contains_key(&rc) {
                    continue;
                }
                side.seen.insert(rc.clone(), Node { diagram: r, parent: Some((code.clone(), s)) });
                if other.seen.contains_key(&rc) {
                    meet = Some(rc);
                    break 'expand;
                }
                next.insert(rc, ());
                if side.seen.len() + other.seen.len() >= bounds.node_budget {
                    break 'expand;
                }
            }
        }
        side.depth += 1;
        side.frontier = next.into_keys().collect();
        if let Some(m) = meet {
            // Whichever side found the meeting point, the path runs from
            // the first root through it to the second.
            let mut mid = sides[0].path_to(&m);
            mid.extend(sides[1].path_from(&m)?);
            let explored = sides[0].seen.len() + sides[1].seen.len();
            return Ok(finish(mid, explored));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::replay;

    #[test]
    fn identical_diagrams_need_no_moves() {
        let t = RailDiagram::trivial();
        let out = connect(&t, &t, 2, 2).unwrap();
        assert_eq!(out.path(), Some(&[][..]));
    }

    #[test]
    fn kink_is_one_move_away() {
        let t = RailDiagram::trivial();
        for s in enumerate_creations(&t, 1).unwrap() {
            let k = apply_move(&t, &s).unwrap();
            let out = connect(&t, &k, 2, 2).unwrap();
            let path = out.path().unwrap();
            assert_eq!(path.len(), 1, "{s}");
            assert_eq!(replay(&t, path).unwrap(), k);
            let back = connect(&k, &t, 2, 2).unwrap();
            assert_eq!(replay(&k, back.path().unwrap()).unwrap(), t);
        }
    }
}
