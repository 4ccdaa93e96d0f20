//! The rail knotoid equivalence moves as local rewrites of [`RailDiagram`].
//!
//! Planar isotopies (including the rail version) are identities on the
//! combinatorial map and need no code. Everything else is a [`MoveSite`]:
//! enumerated from a diagram, then applied with [`apply_move`], which
//! re-checks the pattern and validates the result.

mod apply;
pub mod forbidden;
mod pattern;
mod site;

pub use site::{MoveKind, MoveSite};

use crate::diagram::{DiagramError, End, RailDiagram};
use crate::map::Dart;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("move not applicable: {0}")]
    NotApplicable(String),
    #[error("surgery produced an invalid diagram: {0}")]
    Surgery(String),
    #[error(transparent)]
    Diagram(DiagramError),
}

/// Kind of `site` as it would act on `d`.
pub fn kind_of(d: &RailDiagram, site: &MoveSite) -> MoveKind {
    let rail_push = match *site {
        MoveSite::Omega2Plus { a, c, .. } => {
            let n = d.map().len() as Dart;
            (a < n && pattern::is_rail_dart(d, a)) || (c < n && pattern::is_rail_dart(d, c))
        }
        _ => false,
    };
    site.kind_with(rail_push)
}

/// Change in (self-crossings, rail crossings) caused by applying `site`.
pub fn crossing_delta(d: &RailDiagram, site: &MoveSite) -> (i64, i64) {
    use MoveKind::*;
    match kind_of(d, site) {
        Omega1Minus => (-1, 0),
        Omega1Plus => (1, 0),
        Omega2Minus => (-2, 0),
        Omega2Plus => (2, 0),
        Omega3 | RailOmega3 => (0, 0),
        RailOmega1Minus => (0, -1),
        RailOmega1Plus => (0, 1),
        RailOmega2Minus => (0, -2),
        RailOmega2Plus => (0, 2),
        Slide => match site {
            MoveSite::Slide { remove: true, .. } => (-1, 0),
            _ => (1, 0),
        },
    }
}

/// Every crossing-removing site, in dart order.
pub fn enumerate_reductions(d: &RailDiagram) -> Result<Vec<MoveSite>, DiagramError> {
    d.ensure_valid()?;
    Ok(reductions_unchecked(d))
}

fn reductions_unchecked(d: &RailDiagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    for corner in d.map().darts() {
        if pattern::monogon(d, corner) {
            out.push(MoveSite::Omega1Minus { corner });
        }
    }
    for f in d.map().faces() {
        let corner = f[0];
        if f.len() == 2 {
            if pattern::omega2_bigon(d, corner) {
                out.push(MoveSite::Omega2Minus { corner });
            } else if pattern::rail_bigon(d, corner, false) {
                out.push(MoveSite::RailOmega2Minus { corner });
            } else if pattern::rail_omega1_bigon(d, corner).is_some() {
                out.push(MoveSite::RailOmega1Minus { corner });
            }
        }
    }
    for end in [End::Leg, End::Head] {
        for up in [true, false] {
            if pattern::slide_removal(d, end, up).is_some() {
                out.push(MoveSite::Slide { end, up, remove: true });
            }
        }
    }
    out.sort();
    out
}

/// Crossing-neutral sites: both Reidemeister III variants.
pub fn enumerate_neutral(d: &RailDiagram) -> Result<Vec<MoveSite>, DiagramError> {
    d.ensure_valid()?;
    Ok(neutral_unchecked(d))
}

fn neutral_unchecked(d: &RailDiagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    for f in d.map().faces() {
        if f.len() != 3 {
            continue;
        }
        if pattern::triangle(d, f[0], false).is_some() {
            out.push(MoveSite::Omega3 { corner: f[0] });
        } else if pattern::triangle(d, f[0], true).is_some() {
            out.push(MoveSite::RailOmega3 { corner: f[0] });
        }
    }
    out
}

/// Crossing-adding sites whose result has at most `max_crossings`
/// crossings in total, followed by the crossing-neutral sites.
pub fn enumerate_creations(d: &RailDiagram, max_crossings: usize) -> Result<Vec<MoveSite>, DiagramError> {
    d.ensure_valid()?;
    Ok(creations_unchecked(d, max_crossings))
}

fn creations_unchecked(d: &RailDiagram, max_crossings: usize) -> Vec<MoveSite> {
    let n = d.crossing_count();
    let mut out = Vec::new();
    if n < max_crossings {
        for dart in d.arc_walk() {
            for loop_ccw in [false, true] {
                for first_over in [false, true] {
                    out.push(MoveSite::Omega1Plus { dart, loop_ccw, first_over });
                }
            }
        }
        for end in [End::Leg, End::Head] {
            for above in [false, true] {
                for over in [false, true] {
                    out.push(MoveSite::RailOmega1Plus { end, above, over });
                }
            }
            for up in [false, true] {
                if pattern::slide_creation(d, end, up).is_some() {
                    out.push(MoveSite::Slide { end, up, remove: false });
                }
            }
        }
    }
    if n + 2 <= max_crossings {
        for f in d.map().faces() {
            for i in 0..f.len() {
                for j in i..f.len() {
                    let (a, c) = (f[i], f[j]);
                    if !apply::push_ok(d, a, c) {
                        continue;
                    }
                    for a_over in [false, true] {
                        out.push(MoveSite::Omega2Plus { a, c, a_over });
                    }
                }
            }
        }
    }
    out.extend(neutral_unchecked(d));
    out
}

/// Applies `site`; the result is canonically labeled and carries no
/// geometry hints.
pub fn apply_move(d: &RailDiagram, site: &MoveSite) -> Result<RailDiagram, MoveError> {
    apply::apply(d, site)
}

/// A site on `after` (the result of applying `site` to `before`) that
/// undoes it.
pub fn inverse_site(before: &RailDiagram, site: &MoveSite, after: &RailDiagram) -> Result<MoveSite, MoveError> {
    let want = before.canonical_code();
    let kind = kind_of(before, site).inverse();
    let bound = before.crossing_count().max(after.crossing_count());
    let mut candidates = reductions_unchecked(after);
    candidates.extend(creations_unchecked(after, bound));
    for c in candidates {
        if kind_of(after, &c) != kind {
            continue;
        }
        if let Ok(r) = apply_move(after, &c) {
            if r.canonical_code() == want {
                return Ok(c);
            }
        }
    }
    Err(MoveError::NotApplicable(format!("no inverse of {site} found")))
}

/// Greedy reduction to a fixpoint, always taking the first site in dart
/// order. Returns the reduced diagram and the sites applied.
pub fn simplify(d: &RailDiagram) -> Result<(RailDiagram, Vec<MoveSite>), MoveError> {
    d.ensure_valid().map_err(MoveError::Diagram)?;
    let mut cur = d.canonical();
    cur.clear_hints();
    let mut path = Vec::new();
    loop {
        let sites = reductions_unchecked(&cur);
        let Some(site) = sites.first() else { break };
        cur = apply_move(&cur, site)?;
        path.push(*site);
    }
    Ok((cur, path))
}

/// Replays `path` from `d`.
pub fn replay(d: &RailDiagram, path: &[MoveSite]) -> Result<RailDiagram, MoveError> {
    let mut cur = d.canonical();
    for s in path {
        cur = apply_move(&cur, s)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests;
