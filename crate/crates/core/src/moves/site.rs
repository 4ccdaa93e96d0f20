use std::fmt;
use std::str::FromStr;

use crate::diagram::End;
use crate::map::Dart;

/// The eleven move kinds; `Slide` covers both directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Omega1Minus,
    Omega1Plus,
    Omega2Minus,
    Omega2Plus,
    Omega3,
    RailOmega1Minus,
    RailOmega1Plus,
    RailOmega2Minus,
    RailOmega2Plus,
    RailOmega3,
    Slide,
}

impl MoveKind {
    pub const ALL: [MoveKind; 11] = [
        MoveKind::Omega1Minus,
        MoveKind::Omega1Plus,
        MoveKind::Omega2Minus,
        MoveKind::Omega2Plus,
        MoveKind::Omega3,
        MoveKind::RailOmega1Minus,
        MoveKind::RailOmega1Plus,
        MoveKind::RailOmega2Minus,
        MoveKind::RailOmega2Plus,
        MoveKind::RailOmega3,
        MoveKind::Slide,
    ];

    pub fn inverse(self) -> MoveKind {
        use MoveKind::*;
        match self {
            Omega1Minus => Omega1Plus,
            Omega1Plus => Omega1Minus,
            Omega2Minus => Omega2Plus,
            Omega2Plus => Omega2Minus,
            RailOmega1Minus => RailOmega1Plus,
            RailOmega1Plus => RailOmega1Minus,
            RailOmega2Minus => RailOmega2Plus,
            RailOmega2Plus => RailOmega2Minus,
            k => k,
        }
    }

    pub fn name(self) -> &'static str {
        use MoveKind::*;
        match self {
            Omega1Minus => "O1-",
            Omega1Plus => "O1+",
            Omega2Minus => "O2-",
            Omega2Plus => "O2+",
            Omega3 => "O3",
            RailOmega1Minus => "R1-",
            RailOmega1Plus => "R1+",
            RailOmega2Minus => "R2-",
            RailOmega2Plus => "R2+",
            RailOmega3 => "R3",
            Slide => "S",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An applicable diagram move, addressed by darts of the (canonically
/// labeled) diagram it was enumerated on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveSite {
    /// Remove the kink whose monogon is the corner at `corner`.
    Omega1Minus { corner: Dart },
    /// Add a kink on the arc edge leaving along `dart` (arc orientation).
    Omega1Plus { dart: Dart, loop_ccw: bool, first_over: bool },
    /// Remove the bigon whose face contains the corner at `corner`.
    Omega2Minus { corner: Dart },
    /// Push the edge of `a` across the edge of `c`; both corners lie in one face.
    /// Covers the rail version when one of the edges is a rail edge. For a
    /// bridge edge, `c == alpha(a)` folds it parallel to itself and `c == a`
    /// antiparallel.
    Omega2Plus { a: Dart, c: Dart, a_over: bool },
    Omega3 { corner: Dart },
    RailOmega1Minus { corner: Dart },
    RailOmega1Plus { end: End, above: bool, over: bool },
    RailOmega2Minus { corner: Dart },
    RailOmega3 { corner: Dart },
    /// Slide the transversal strand through the rail crossing adjacent to
    /// the endpoint on side `up` past the endpoint. `remove` takes the
    /// crossing with the end edge away; otherwise one is created.
    Slide { end: End, up: bool, remove: bool },
}

impl MoveSite {
    /// Kind, given whether an `Omega2Plus` site involves a rail edge.
    pub fn kind_with(&self, rail_push: bool) -> MoveKind {
        use MoveSite::*;
        match self {
            Omega1Minus { .. } => MoveKind::Omega1Minus,
            Omega1Plus { .. } => MoveKind::Omega1Plus,
            Omega2Minus { .. } => MoveKind::Omega2Minus,
            Omega2Plus { .. } if rail_push => MoveKind::RailOmega2Plus,
            Omega2Plus { .. } => MoveKind::Omega2Plus,
            Omega3 { .. } => MoveKind::Omega3,
            RailOmega1Minus { .. } => MoveKind::RailOmega1Minus,
            RailOmega1Plus { .. } => MoveKind::RailOmega1Plus,
            RailOmega2Minus { .. } => MoveKind::RailOmega2Minus,
            RailOmega3 { .. } => MoveKind::RailOmega3,
            Slide { .. } => MoveKind::Slide,
        }
    }
}

fn end_str(e: End) -> &'static str {
    match e {
        End::Leg => "leg",
        End::Head => "head",
    }
}

fn b(x: bool) -> u8 {
    x as u8
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use MoveSite::*;
        match *self {
            Omega1Minus { corner } => write!(f, "O1-:{corner}"),
            Omega1Plus { dart, loop_ccw, first_over } => {
                write!(f, "O1+:{dart}:{}:{}", b(loop_ccw), b(first_over))
            }
            Omega2Minus { corner } => write!(f, "O2-:{corner}"),
            Omega2Plus { a, c, a_over } => write!(f, "O2+:{a}:{c}:{}", b(a_over)),
            Omega3 { corner } => write!(f, "O3:{corner}"),
            RailOmega1Minus { corner } => write!(f, "R1-:{corner}"),
            RailOmega1Plus { end, above, over } => {
                write!(f, "R1+:{}:{}:{}", end_str(end), b(above), b(over))
            }
            RailOmega2Minus { corner } => write!(f, "R2-:{corner}"),
            RailOmega3 { corner } => write!(f, "R3:{corner}"),
            Slide { end, up, remove } => write!(f, "S:{}:{}:{}", end_str(end), b(up), b(remove)),
        }
    }
}

impl FromStr for MoveSite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<Dart, String> {
            parts
                .get(i)
                .ok_or_else(|| format!("site {s:?}: missing field {i}"))?
                .parse::<Dart>()
                .map_err(|_| format!("site {s:?}: field {i} is not a dart"))
        };
        let flag = |i: usize| -> Result<bool, String> {
            match parts.get(i).copied() {
                Some("0") => Ok(false),
                Some("1") => Ok(true),
                _ => Err(format!("site {s:?}: field {i} must be 0 or 1")),
            }
        };
        let end = |i: usize| -> Result<End, String> {
            match parts.get(i).copied() {
                Some("leg") => Ok(End::Leg),
                Some("head") => Ok(End::Head),
                _ => Err(format!("site {s:?}: field {i} must be leg or head")),
            }
        };
        let arity = |n: usize| -> Result<(), String> {
            if parts.len() == n {
                Ok(())
            } else {
                Err(format!("site {s:?}: expected {n} fields"))
            }
        };
        use MoveSite::*;
        let site = match parts[0] {
            "O1-" => arity(2).and(num(1).map(|corner| Omega1Minus { corner }))?,
            "O1+" => {
                arity(4)?;
                Omega1Plus { dart: num(1)?, loop_ccw: flag(2)?, first_over: flag(3)? }
            }
            "O2-" => arity(2).and(num(1).map(|corner| Omega2Minus { corner }))?,
            "O2+" => {
                arity(4)?;
                Omega2Plus { a: num(1)?, c: num(2)?, a_over: flag(3)? }
            }
            "O3" => arity(2).and(num(1).map(|corner| Omega3 { corner }))?,
            "R1-" => arity(2).and(num(1).map(|corner| RailOmega1Minus { corner }))?,
            "R1+" => {
                arity(4)?;
                RailOmega1Plus { end: end(1)?, above: flag(2)?, over: flag(3)? }
            }
            "R2-" => arity(2).and(num(1).map(|corner| RailOmega2Minus { corner }))?,
            "R3" => arity(2).and(num(1).map(|corner| RailOmega3 { corner }))?,
            "S" => {
                arity(4)?;
                Slide { end: end(1)?, up: flag(2)?, remove: flag(3)? }
            }
            other => return Err(format!("unknown move kind {other:?}")),
        };
        Ok(site)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips() {
        let sites = [
            MoveSite::Omega1Plus { dart: 3, loop_ccw: true, first_over: false },
            MoveSite::Omega2Plus { a: 1, c: 9, a_over: true },
            MoveSite::RailOmega1Plus { end: End::Head, above: false, over: true },
            MoveSite::Slide { end: End::Leg, up: true, remove: false },
            MoveSite::Omega3 { corner: 12 },
        ];
        for s in sites {
            assert_eq!(s.to_string().parse::<MoveSite>().unwrap(), s);
        }
        assert!("O9:1".parse::<MoveSite>().is_err());
        assert!("O1+:1:2".parse::<MoveSite>().is_err());
    }
}
