//! Negative control: the rail bigon with mismatched flags, i.e. an arc
//! finger passing in front of a rail at one crossing and behind it at the
//! other. This pulls the arc *through* the rail and is never offered by
//! the enumerators; it exists so tests can show that invariants detect it.

use super::apply::{push_ok, push_tagged};
use super::MoveError;
use crate::diagram::{RailDiagram, RailTag};
use crate::map::Dart;

/// Pushes the arc edge of `arc` across the rail edge of `rail` (corners in
/// a common face), over the rail at the first crossing and under it at
/// the second.
pub fn mixed_rail_bigon(d: &RailDiagram, arc: Dart, rail: Dart) -> Result<RailDiagram, MoveError> {
    let n = d.map().len() as Dart;
    let ok = arc < n
        && rail < n
        && d.map().tag(arc).is_arc()
        && d.map().tag(rail).rail().is_some()
        && push_ok(d, arc, rail);
    if !ok {
        return Err(MoveError::NotApplicable(format!("mixed rail bigon {arc}:{rail}")));
    }
    let r = RailTag::RailCross(d.map().tag(rail).rail().unwrap());
    push_tagged(d, arc, rail, (RailTag::ArcOver, r), (RailTag::ArcUnder, r))
}

/// Corners of faces that are rail bigons with mismatched flags.
pub fn mixed_bigon_corners(d: &RailDiagram) -> Vec<Dart> {
    d.map().darts().filter(|&c| super::pattern::rail_bigon(d, c, true)).collect()
}

/// Pattern audit of the enumerators on `d`: no offered rail bigon removal
/// sits on a mixed bigon, and no offered site changes the free-group
/// normal form. Returns the offending sites.
pub fn audit_enumerators(d: &RailDiagram, max_crossings: usize) -> Result<(), Vec<String>> {
    use super::{apply_move, enumerate_creations, enumerate_reductions, MoveSite};
    use crate::invariants::{f2_normal_form, f2_word};
    let mut bad = Vec::new();
    let mixed = mixed_bigon_corners(d);
    let nf = |x: &RailDiagram| f2_word(x).map(|w| f2_normal_form(&w)).ok();
    let before = nf(d);
    let mut sites = enumerate_reductions(d).unwrap_or_default();
    sites.extend(enumerate_creations(d, max_crossings).unwrap_or_default());
    for s in sites {
        if let MoveSite::RailOmega2Minus { corner } = s {
            if mixed.contains(&corner) || !super::pattern::rail_bigon(d, corner, false) {
                bad.push(format!("{s}: mixed-flag rail bigon offered"));
            }
        }
        match apply_move(d, &s) {
            Ok(r) if nf(&r) != before => bad.push(format!("{s}: changes the normal form")),
            Ok(_) => {}
            Err(e) => bad.push(format!("{s}: {e}")),
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}
