//! Text formats: `rail-arc v1` for polygonal arcs, `rkd v1` for rail
//! diagrams, `knotoid v1` and `theta v1` for the derived diagrams.
//!
//! Map formats list `alpha:` as dart pairs and `sigma:` as one
//! counterclockwise vertex cycle per line, led by the vertex kind; each
//! dart carries a suffix giving its role. `#` starts a comment.
//!
//! ```text
//! rkd v1
//! alpha:
//! 0 4
//! ...
//! sigma:
//! inf 0 3 2 1
//! leg 4r 5a 6r
//! xing 10o 11u 12o 13u
//! railx1 14r 15o 16r 17o
//! inf:
//! 0 1 2 3
//! ```
//!
//! `inf:` lists the ports in the order ℓ1-top, ℓ1-bottom, ℓ2-bottom,
//! ℓ2-top. An optional `hint:` section gives `dart x y` plane positions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::diagram::{InfPort, RailDiagram, RailId, RailTag, Report};
use crate::geometry::RailArc3D;
use crate::knotoid::{KnotoidDiagram, KnotoidTag};
use crate::map::{Dart, Map};
use crate::rational::{fmt_q, parse_q, P2, P3};
use crate::theta::{EdgeClass, ThetaDiagram, ThetaTag, ThetaVertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid diagram: {0}")]
    Invalid(Report),
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse { line, col, msg: msg.into() }
}

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

/// Non-empty lines with comments stripped, split into tokens.
fn lines(src: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (j, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    let col = body[..s].chars().count() + 1;
                    toks.push(Token { text: &body[s..j], line: i + 1, col });
                    start = None;
                }
                _ => {}
            }
        }
        if !toks.is_empty() {
            out.push(toks);
        }
    }
    out
}

fn expect_header(ls: &[Vec<Token<'_>>], header: &str) -> Result<(), IoError> {
    let first = ls.first().ok_or_else(|| perr(1, 1, format!("empty input; expected {header:?}")))?;
    let got: Vec<&str> = first.iter().map(|t| t.text).collect();
    if got.join(" ") != header {
        return Err(perr(first[0].line, first[0].col, format!("expected header {header:?}")));
    }
    Ok(())
}

// ---------------------------------------------------------------- arcs

pub fn parse_arc(src: &str) -> Result<RailArc3D, IoError> {
    let ls = lines(src);
    expect_header(&ls, "rail-arc v1")?;
    let mut v = Vec::new();
    for l in &ls[1..] {
        if l[0].text != "v" {
            return Err(perr(l[0].line, l[0].col, format!("expected 'v', found {:?}", l[0].text)));
        }
        if l.len() != 4 {
            return Err(perr(l[0].line, l[0].col, "a vertex needs three coordinates"));
        }
        let c: Result<Vec<_>, IoError> =
            l[1..].iter().map(|t| parse_q(t.text).map_err(|e| perr(t.line, t.col, e))).collect();
        let c = c?;
        v.push(P3::new(c[0].clone(), c[1].clone(), c[2].clone()));
    }
    Ok(RailArc3D::new(v))
}

pub fn serialize_arc(a: &RailArc3D) -> String {
    let mut s = String::from("rail-arc v1\n");
    for p in &a.vertices {
        let _ = writeln!(s, "v {} {} {}", fmt_q(&p.x), fmt_q(&p.y), fmt_q(&p.z));
    }
    s
}

// ---------------------------------------------------------------- maps

/// Sections of a map file, with positions kept for error messages.
struct MapText<'a> {
    alpha: Vec<(Token<'a>, Token<'a>)>,
    /// Vertex kind token and its dart tokens.
    sigma: Vec<(Token<'a>, Vec<Token<'a>>)>,
    extra: BTreeMap<&'static str, Vec<Vec<Token<'a>>>>,
}

fn split_sections<'a>(ls: &[Vec<Token<'a>>], extra: &[&'static str]) -> Result<MapText<'a>, IoError> {
    let mut mt = MapText { alpha: Vec::new(), sigma: Vec::new(), extra: BTreeMap::new() };
    let mut section: Option<&str> = None;
    let mut seen = Vec::new();
    for l in &ls[1..] {
        let t0 = &l[0];
        if l.len() == 1 && t0.text.ends_with(':') {
            let name = &t0.text[..t0.text.len() - 1];
            let known = name == "alpha" || name == "sigma" || extra.contains(&name);
            if !known {
                return Err(perr(t0.line, t0.col, format!("unknown section {:?}", t0.text)));
            }
            if seen.contains(&name) {
                return Err(perr(t0.line, t0.col, format!("repeated section {:?}", t0.text)));
            }
            seen.push(name);
            section = Some(name);
            continue;
        }
        match section {
            None => return Err(perr(t0.line, t0.col, "content before the first section")),
            Some("alpha") => {
                if l.len() != 2 {
                    return Err(perr(t0.line, t0.col, "alpha lines hold exactly two darts"));
                }
                mt.alpha.push((l[0].clone(), l[1].clone()));
            }
            Some("sigma") => {
                if l.len() < 2 {
                    return Err(perr(t0.line, t0.col, "a vertex needs a kind and at least one dart"));
                }
                mt.sigma.push((l[0].clone(), l[1..].to_vec()));
            }
            Some(name) => {
                let key = *extra.iter().find(|e| **e == name).unwrap();
                mt.extra.entry(key).or_default().push(l.clone());
            }
        }
    }
    for need in ["alpha", "sigma"] {
        if !seen.contains(&need) {
            let last = ls.last().map(|l| l[0].line).unwrap_or(1);
            return Err(perr(last, 1, format!("missing section \"{need}:\"")));
        }
    }
    Ok(mt)
}

/// Splits `12ou*` into the dart number and the suffix.
fn dart_token<'a>(t: &Token<'a>) -> Result<(Dart, &'a str), IoError> {
    let k = t.text.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.text.len());
    if k == 0 {
        return Err(perr(t.line, t.col, format!("expected a dart number, found {:?}", t.text)));
    }
    let d = t.text[..k].parse::<Dart>().map_err(|_| perr(t.line, t.col, "dart number too large"))?;
    Ok((d, &t.text[k..]))
}

/// Builds alpha and sigma arrays; `tag` maps (kind token, dart suffix) to
/// a label.
fn build_map<T: crate::map::DartLabel>(
    mt: &MapText<'_>,
    mut tag: impl FnMut(&Token<'_>, &Token<'_>, &str) -> Result<T, IoError>,
) -> Result<Map<T>, IoError> {
    let mut darts: BTreeMap<Dart, (usize, usize)> = BTreeMap::new();
    let mut sigma = BTreeMap::new();
    let mut tags = BTreeMap::new();
    for (kind, ds) in &mt.sigma {
        let parsed: Result<Vec<_>, _> = ds.iter().map(dart_token).collect();
        let parsed = parsed?;
        for (i, (t, (d, suffix))) in ds.iter().zip(&parsed).enumerate() {
            if darts.insert(*d, (t.line, t.col)).is_some() {
                return Err(perr(t.line, t.col, format!("dart {d} appears in two vertices")));
            }
            sigma.insert(*d, parsed[(i + 1) % parsed.len()].0);
            tags.insert(*d, tag(kind, t, suffix)?);
        }
    }
    let n = darts.len();
    if let Some((&d, &(line, col))) = darts.iter().find(|(&d, _)| d as usize >= n) {
        return Err(perr(line, col, format!("darts must be numbered 0..{n}; found {d}")));
    }
    let mut alpha: Vec<Option<Dart>> = vec![None; n];
    for (a, b) in &mt.alpha {
        let (da, _) = dart_token(a)?;
        let (db, _) = dart_token(b)?;
        for (t, d) in [(a, da), (b, db)] {
            if d as usize >= n {
                return Err(perr(t.line, t.col, format!("dart {d} is not in any vertex")));
            }
        }
        for (t, x, y) in [(a, da, db), (b, db, da)] {
            if alpha[x as usize].is_some() {
                return Err(perr(t.line, t.col, format!("dart {x} paired twice")));
            }
            alpha[x as usize] = Some(y);
        }
    }
    if let Some(d) = alpha.iter().position(|a| a.is_none()) {
        let (line, col) = darts[&(d as Dart)];
        return Err(perr(line, col, format!("dart {d} has no alpha partner")));
    }
    Ok(Map::from_parts(
        alpha.into_iter().map(|a| a.unwrap()).collect(),
        (0..n as Dart).map(|d| sigma[&d]).collect(),
        (0..n as Dart).map(|d| tags[&d].clone()).collect(),
    ))
}

fn write_map<T: crate::map::DartLabel>(s: &mut String, m: &Map<T>, mut vertex: impl FnMut(&[Dart]) -> String) {
    s.push_str("alpha:\n");
    for d in m.darts() {
        if d < m.alpha(d) {
            let _ = writeln!(s, "{d} {}", m.alpha(d));
        }
    }
    s.push_str("sigma:\n");
    let mut vs = m.vertices();
    vs.sort_by_key(|v| *v.iter().min().unwrap());
    for v in vs {
        let start = v.iter().position(|d| d == v.iter().min().unwrap()).unwrap();
        let rot: Vec<Dart> = (0..v.len()).map(|i| v[(start + i) % v.len()]).collect();
        s.push_str(&vertex(&rot));
        s.push('\n');
    }
}

// ---------------------------------------------------------------- rkd

const PORTS: [InfPort; 4] = [InfPort::L1Top, InfPort::L1Bottom, InfPort::L2Bottom, InfPort::L2Top];

pub fn parse_diagram(src: &str) -> Result<RailDiagram, IoError> {
    let ls = lines(src);
    expect_header(&ls, "rkd v1")?;
    let mt = split_sections(&ls, &["inf", "hint"])?;
    let inf_lines = mt.extra.get("inf").ok_or_else(|| {
        let last = ls.last().map(|l| l[0].line).unwrap_or(1);
        perr(last, 1, "missing section \"inf:\"")
    })?;
    let inf_toks: Vec<&Token> = inf_lines.iter().flatten().collect();
    if inf_toks.len() != 4 {
        return Err(perr(inf_lines[0][0].line, 1, "inf: lists exactly four darts"));
    }
    let mut port_of = BTreeMap::new();
    for (t, p) in inf_toks.iter().zip(PORTS) {
        let (d, suffix) = dart_token(t)?;
        if !suffix.is_empty() {
            return Err(perr(t.line, t.col, "inf: darts take no suffix"));
        }
        port_of.insert(d, p);
    }
    let map = build_map(&mt, |kind, t, suffix| {
        let bad = || perr(t.line, t.col, format!("suffix {suffix:?} does not fit vertex kind {:?}", kind.text));
        let (d, _) = dart_token(t)?;
        Ok(match (kind.text, suffix) {
            ("inf", "") => RailTag::Inf(*port_of.get(&d).ok_or_else(|| perr(t.line, t.col, format!("INF dart {d} missing from inf:")))?),
            ("leg", "r") => RailTag::LegRail,
            ("leg", "a") => RailTag::LegArc,
            ("head", "r") => RailTag::HeadRail,
            ("head", "a") => RailTag::HeadArc,
            ("xing", "o") => RailTag::Over,
            ("xing", "u") => RailTag::Under,
            ("railx1", "r") => RailTag::RailCross(RailId::One),
            ("railx2", "r") => RailTag::RailCross(RailId::Two),
            ("railx1" | "railx2", "o") => RailTag::ArcOver,
            ("railx1" | "railx2", "u") => RailTag::ArcUnder,
            ("inf" | "leg" | "head" | "xing" | "railx1" | "railx2", _) => return Err(bad()),
            (k, _) => return Err(perr(kind.line, kind.col, format!("unknown vertex kind {k:?}"))),
        })
    })?;
    let n = map.len();
    let mut hint = vec![None; n];
    for l in mt.extra.get("hint").into_iter().flatten() {
        if l.len() != 3 {
            return Err(perr(l[0].line, l[0].col, "hint lines are 'dart x y'"));
        }
        let (d, _) = dart_token(&l[0])?;
        if d as usize >= n {
            return Err(perr(l[0].line, l[0].col, format!("hint for unknown dart {d}")));
        }
        let x = parse_q(l[1].text).map_err(|e| perr(l[1].line, l[1].col, e))?;
        let y = parse_q(l[2].text).map_err(|e| perr(l[2].line, l[2].col, e))?;
        hint[d as usize] = Some(P2::new(x, y));
    }
    let d = RailDiagram::with_hints(map, hint);
    let rep = d.validate();
    if !rep.is_ok() {
        return Err(IoError::Invalid(rep));
    }
    Ok(d)
}

/// Canonical labeling, sorted alpha pairs, vertices by least dart.
pub fn serialize_diagram(d: &RailDiagram) -> String {
    let d = d.canonical();
    let m = d.map();
    let mut s = String::from("rkd v1\n");
    write_map(&mut s, m, |v| {
        let kind = match d.kind_of(v[0]) {
            crate::diagram::VertexKind::Inf => "inf",
            crate::diagram::VertexKind::Leg => "leg",
            crate::diagram::VertexKind::Head => "head",
            crate::diagram::VertexKind::Xing => "xing",
            crate::diagram::VertexKind::RailX { rail: RailId::One, .. } => "railx1",
            crate::diagram::VertexKind::RailX { rail: RailId::Two, .. } => "railx2",
        };
        let mut line = kind.to_string();
        for &x in v {
            let suffix = match m.tag(x) {
                RailTag::Inf(_) => "",
                RailTag::LegRail | RailTag::HeadRail | RailTag::RailCross(_) => "r",
                RailTag::LegArc | RailTag::HeadArc => "a",
                RailTag::Over | RailTag::ArcOver => "o",
                RailTag::Under | RailTag::ArcUnder => "u",
            };
            let _ = write!(line, " {x}{suffix}");
        }
        line
    });
    let ports: Vec<String> = PORTS.iter().map(|&p| d.inf_port(p).to_string()).collect();
    let _ = writeln!(s, "inf:\n{}", ports.join(" "));
    if d.has_hints() {
        s.push_str("hint:\n");
        for (x, h) in d.hints().iter().enumerate() {
            if let Some(p) = h {
                let _ = writeln!(s, "{x} {} {}", fmt_q(&p.x), fmt_q(&p.y));
            }
        }
    }
    s
}

// ---------------------------------------------------------------- knotoid

pub fn parse_knotoid(src: &str) -> Result<KnotoidDiagram, IoError> {
    let ls = lines(src);
    expect_header(&ls, "knotoid v1")?;
    let mt = split_sections(&ls, &[])?;
    let map = build_map(&mt, |kind, t, suffix| {
        Ok(match (kind.text, suffix) {
            ("leg", "") => KnotoidTag::Leg,
            ("head", "") => KnotoidTag::Head,
            ("xing", "o") => KnotoidTag::Over,
            ("xing", "u") => KnotoidTag::Under,
            ("leg" | "head" | "xing", _) => {
                return Err(perr(t.line, t.col, format!("suffix {suffix:?} does not fit {:?}", kind.text)))
            }
            (k, _) => return Err(perr(kind.line, kind.col, format!("unknown vertex kind {k:?}"))),
        })
    })?;
    let k = KnotoidDiagram::from_map(map);
    let rep = k.validate();
    if !rep.is_ok() {
        return Err(IoError::Invalid(rep));
    }
    Ok(k)
}

pub fn serialize_knotoid(k: &KnotoidDiagram) -> String {
    let k = k.canonical();
    let m = k.map();
    let mut s = String::from("knotoid v1\n");
    write_map(&mut s, m, |v| {
        let kind = match m.tag(v[0]) {
            KnotoidTag::Leg => "leg",
            KnotoidTag::Head => "head",
            _ => "xing",
        };
        let mut line = kind.to_string();
        for &x in v {
            let suffix = match m.tag(x) {
                KnotoidTag::Over => "o",
                KnotoidTag::Under => "u",
                _ => "",
            };
            let _ = write!(line, " {x}{suffix}");
        }
        line
    });
    s
}

// ---------------------------------------------------------------- theta

/// Dart suffix: `o`/`u` at crossings, then the edge class `u`/`m`/`l`,
/// then `*` on connector edges. Node lines are `node0` and `node1`.
pub fn parse_theta(src: &str) -> Result<ThetaDiagram, IoError> {
    let ls = lines(src);
    expect_header(&ls, "theta v1")?;
    let mt = split_sections(&ls, &[])?;
    let map = build_map(&mt, |kind, t, suffix| {
        let bad = || perr(t.line, t.col, format!("bad dart suffix {suffix:?}"));
        let (rest, connector) = match suffix.strip_suffix('*') {
            Some(r) => (r, true),
            None => (suffix, false),
        };
        let class_of = |c: &str| match c {
            "u" => Some(EdgeClass::Upper),
            "m" => Some(EdgeClass::Middle),
            "l" => Some(EdgeClass::Lower),
            _ => None,
        };
        let (vertex, class) = match kind.text {
            "node0" => (ThetaVertex::Node0, class_of(rest).ok_or_else(bad)?),
            "node1" => (ThetaVertex::Node1, class_of(rest).ok_or_else(bad)?),
            "xing" => {
                if rest.len() != 2 {
                    return Err(bad());
                }
                let v = match &rest[..1] {
                    "o" => ThetaVertex::Over,
                    "u" => ThetaVertex::Under,
                    _ => return Err(bad()),
                };
                (v, class_of(&rest[1..]).ok_or_else(bad)?)
            }
            k => return Err(perr(kind.line, kind.col, format!("unknown vertex kind {k:?}"))),
        };
        Ok(ThetaTag { vertex, class, connector })
    })?;
    let t = ThetaDiagram::from_map(map);
    let rep = t.validate();
    if !rep.is_ok() {
        return Err(IoError::Invalid(rep));
    }
    Ok(t)
}

pub fn serialize_theta(t: &ThetaDiagram) -> String {
    let t = t.canonical();
    let m = t.map();
    let mut s = String::from("theta v1\n");
    write_map(&mut s, m, |v| {
        let kind = match m.tag(v[0]).vertex {
            ThetaVertex::Node0 => "node0",
            ThetaVertex::Node1 => "node1",
            _ => "xing",
        };
        let mut line = kind.to_string();
        for &x in v {
            let tg = m.tag(x);
            let ou = match tg.vertex {
                ThetaVertex::Over => "o",
                ThetaVertex::Under => "u",
                _ => "",
            };
            let c = match tg.class {
                EdgeClass::Upper => "u",
                EdgeClass::Middle => "m",
                EdgeClass::Lower => "l",
            };
            let star = if tg.connector { "*" } else { "" };
            let _ = write!(line, " {x}{ou}{c}{star}");
        }
        line
    });
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    // The trivial diagram relabelled by d -> 9 - d, with comments.
    const TRIVIAL: &str = "rkd v1
alpha:
9 7
8 5   # rail one, lower half
6 2
4 3
1 0
sigma:
inf 8 6 3 9
leg 7r 4r 0a
head 5r 1a 2r
inf:
9 3 6 8
";

    #[test]
    fn arc_text() {
        let a = parse_arc("rail-arc v1\nv 0 0 0\nv 1/2 1 1/2\nv 1 0 0\n").unwrap();
        assert_eq!(a.vertices.len(), 3);
        assert_eq!(a.vertices[1], P3::new(qr(1, 2), q(1), qr(1, 2)));
        assert_eq!(parse_arc(&serialize_arc(&a)).unwrap(), a);
        match parse_arc("rail-arc v1\nv 0 0 0\nv 1/0 0 0\n") {
            Err(IoError::Parse { line: 3, col: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trivial_golden() {
        let text = serialize_diagram(&RailDiagram::trivial());
        let d = parse_diagram(&text).unwrap();
        assert_eq!(d, RailDiagram::trivial());
        assert_eq!(serialize_diagram(&d), text);
    }

    #[test]
    fn hand_written_trivial_parses() {
        let d = parse_diagram(TRIVIAL).unwrap();
        assert_eq!(d, RailDiagram::trivial());
    }

    #[test]
    fn missing_inf_is_an_error() {
        let cut = TRIVIAL.split("inf:\n").next().unwrap();
        let e = parse_diagram(cut).unwrap_err();
        assert!(e.to_string().contains("inf:"), "{e}");
    }

    #[test]
    fn bad_suffix_points_at_the_token() {
        let bad = TRIVIAL.replace("leg 7r 4r", "leg 7r 4x");
        match parse_diagram(&bad) {
            Err(IoError::Parse { line: 10, col: 8, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn knotoid_and_theta_round_trip() {
        let k = KnotoidDiagram::trivial();
        assert_eq!(parse_knotoid(&serialize_knotoid(&k)).unwrap(), k);
        let t = crate::theta::to_theta(&RailDiagram::trivial()).unwrap();
        let text = serialize_theta(&t);
        assert_eq!(parse_theta(&text).unwrap(), t);
        assert_eq!(serialize_theta(&parse_theta(&text).unwrap()), text);
    }
}
