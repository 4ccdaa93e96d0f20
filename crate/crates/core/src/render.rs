//! SVG drawings of diagrams. Uses the stored position hints when every
//! finite vertex has one, otherwise a barycentric (Tutte) layout with the
//! largest face outside. Output depends only on the input.

use std::fmt::Write as _;

use crate::diagram::{RailDiagram, RailTag};
use crate::knotoid::{KnotoidDiagram, KnotoidTag};
use crate::map::{Dart, DartLabel, Map};
use crate::rational::{to_f64, P2};

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;
const RAIL: &str = "#c0392b";
const ARC: &str = "#222222";
/// Fraction of the first segment left blank at an under-crossing.
const GAP: f64 = 0.35;
const SWEEPS: usize = 3000;

#[derive(Clone, Copy)]
struct Style {
    rail: bool,
    under: bool,
    endpoint: bool,
}

pub fn render_diagram(d: &RailDiagram) -> String {
    let hinted = d.has_hints().then(|| d.clone());
    let d = d.canonical();
    let m = d.map();
    let style = |x: Dart| {
        let t = *m.tag(x);
        Style {
            rail: t.rail().is_some(),
            under: match t {
                RailTag::Under | RailTag::ArcUnder => true,
                RailTag::RailCross(_) => *m.tag(m.sigma(x)) == RailTag::ArcOver,
                _ => false,
            },
            endpoint: matches!(t, RailTag::LegArc | RailTag::HeadArc),
        }
    };
    let inf = |x: Dart| match m.tag(x) {
        RailTag::Inf(p) => Some(p.is_top()),
        _ => None,
    };
    let through = |x: Dart| match m.tag(x) {
        RailTag::Inf(_) | RailTag::LegArc | RailTag::HeadArc => None,
        RailTag::LegRail | RailTag::HeadRail => {
            [m.sigma(x), m.sigma2(x)].into_iter().find(|&y| m.tag(y).rail().is_some())
        }
        _ => Some(m.sigma2(x)),
    };
    let pos = hinted.and_then(|h| hinted_layout(&h.canonical(), &inf));
    draw(m, style, through, pos)
}

pub fn render_knotoid(k: &KnotoidDiagram) -> String {
    let hinted = k.hints().iter().any(|h| h.is_some()).then(|| k.clone());
    let k = k.canonical();
    let m = k.map();
    let style = |x: Dart| Style {
        rail: false,
        under: *m.tag(x) == KnotoidTag::Under,
        endpoint: matches!(m.tag(x), KnotoidTag::Leg | KnotoidTag::Head),
    };
    let pos = hinted.and_then(|h| {
        let h = h.canonical();
        let hs = h.hints().to_vec();
        hint_points(&hs, h.map(), &|_| None)
    });
    let through = |x: Dart| matches!(m.tag(x), KnotoidTag::Over | KnotoidTag::Under).then(|| m.sigma2(x));
    draw(m, style, through, pos)
}

fn hinted_layout(d: &RailDiagram, inf: &dyn Fn(Dart) -> Option<bool>) -> Option<Vec<(f64, f64)>> {
    hint_points(d.hints(), d.map(), inf)
}

/// Per-dart positions from hints. INF darts (`inf` gives top/bottom) sit
/// above or below the picture, in line with their neighbour.
fn hint_points<T: DartLabel>(
    hint: &[Option<P2>],
    m: &Map<T>,
    inf: &dyn Fn(Dart) -> Option<bool>,
) -> Option<Vec<(f64, f64)>> {
    let mut pos = vec![(0.0, 0.0); m.len()];
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for x in m.darts() {
        if inf(x).is_some() {
            continue;
        }
        let p = hint.get(x as usize)?.as_ref()?;
        pos[x as usize] = (to_f64(&p.x), -to_f64(&p.y));
        lo = lo.min(pos[x as usize].1);
        hi = hi.max(pos[x as usize].1);
    }
    if lo > hi {
        return None;
    }
    let pad = ((hi - lo) * 0.25).max(1.0);
    for x in m.darts() {
        if let Some(top) = inf(x) {
            let nx = pos[m.alpha(x) as usize].0;
            pos[x as usize] = (nx, if top { lo - pad } else { hi + pad });
        }
    }
    Some(pos)
}

/// Tutte layout of the map with every edge subdivided twice. Returns
/// per-dart vertex positions plus the two interior points of each edge.
fn tutte<T: DartLabel>(m: &Map<T>) -> (Vec<(f64, f64)>, Vec<[(f64, f64); 2]>) {
    let vidx = m.vertex_index();
    let nv = vidx.iter().copied().max().map_or(0, |v| v + 1);
    // Edge nodes: dart x owns node nv + 2*edge + (x is the larger dart).
    let mut edge_of = vec![0usize; m.len()];
    let mut ne = 0;
    for x in m.darts() {
        if x < m.alpha(x) {
            edge_of[x as usize] = ne;
            edge_of[m.alpha(x) as usize] = ne;
            ne += 1;
        }
    }
    let near = |x: Dart| nv + 2 * edge_of[x as usize] + usize::from(x > m.alpha(x));
    let n = nv + 2 * ne;
    let mut adj = vec![Vec::new(); n];
    for x in m.darts() {
        adj[vidx[x as usize]].push(near(x));
        adj[near(x)].push(vidx[x as usize]);
        adj[near(x)].push(near(m.alpha(x)));
    }
    let outer = m
        .faces()
        .into_iter()
        .max_by_key(|f| (f.len(), std::cmp::Reverse(*f.iter().min().unwrap())))
        .unwrap_or_default();
    let mut boundary = Vec::new();
    for &x in &outer {
        let s = m.sigma(x);
        for node in [vidx[x as usize], near(s), near(m.alpha(s))] {
            if !boundary.contains(&node) {
                boundary.push(node);
            }
        }
    }
    let mut p = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    for (i, &b) in boundary.iter().enumerate() {
        let t = std::f64::consts::TAU * i as f64 / boundary.len() as f64;
        p[b] = (t.cos(), t.sin());
        fixed[b] = true;
    }
    for _ in 0..SWEEPS {
        for v in 0..n {
            if fixed[v] || adj[v].is_empty() {
                continue;
            }
            let k = adj[v].len() as f64;
            let (sx, sy) = adj[v].iter().fold((0.0, 0.0), |(a, b), &u| (a + p[u].0, b + p[u].1));
            p[v] = (sx / k, sy / k);
        }
    }
    // Keep rotations counterclockwise: mirror if a vertex of degree three
    // or more comes out clockwise.
    let turn = m.vertices().into_iter().filter(|v| v.len() >= 3).find_map(|v| {
        let c = p[vidx[v[0] as usize]];
        let ang = |x: Dart| {
            let q = p[near(x)];
            (q.1 - c.1).atan2(q.0 - c.0)
        };
        let (a, b, cc) = (ang(v[0]), ang(v[1]), ang(v[2]));
        let rel = |t: f64| (t - a).rem_euclid(std::f64::consts::TAU);
        let (rb, rc) = (rel(b), rel(cc));
        (rb != rc).then_some(rb < rc)
    });
    let flip = turn == Some(false);
    // SVG's y axis points down, which mirrors once more.
    let fix = |q: (f64, f64)| if flip { (-q.0, q.1) } else { (q.0, -q.1) };
    let vpos = m.darts().map(|x| fix(p[vidx[x as usize]])).collect();
    let mids = m.darts().map(|x| [fix(p[near(x)]), fix(p[near(m.alpha(x))])]).collect();
    (vpos, mids)
}

fn draw<T: DartLabel>(
    m: &Map<T>,
    style: impl Fn(Dart) -> Style,
    through: impl Fn(Dart) -> Option<Dart>,
    hinted: Option<Vec<(f64, f64)>>,
) -> String {
    let (vpos, mids) = match hinted {
        Some(v) => {
            let mids = m
                .darts()
                .map(|x| {
                    let (a, b) = (v[x as usize], v[m.alpha(x) as usize]);
                    [lerp(a, b, 1.0 / 3.0), lerp(a, b, 2.0 / 3.0)]
                })
                .collect();
            (v, mids)
        }
        None => tutte(m),
    };
    let mids: Vec<[(f64, f64); 2]> = mids;
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in vpos.iter().chain(mids.iter().flatten()) {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let scale = (SIZE - 2.0 * MARGIN) / (x1 - x0).max(y1 - y0).max(1e-9);
    let tr = |(x, y): (f64, f64)| (MARGIN + (x - x0) * scale, MARGIN + (y - y0) * scale);

    // Strands run edge to edge straight through crossings and rail
    // endpoints; each under-passage splits a strand into two polylines.
    let mut lines: Vec<(bool, Vec<(f64, f64)>)> = Vec::new();
    let mut done = vec![false; m.len()];
    let starts: Vec<Dart> = m.darts().filter(|&x| through(x).is_none()).collect();
    for start in starts.into_iter().chain(m.darts()) {
        if done[start as usize] {
            continue;
        }
        let rail = style(start).rail;
        let mut cur = vec![vpos[start as usize]];
        let mut x = start;
        loop {
            let y = m.alpha(x);
            done[x as usize] = true;
            done[y as usize] = true;
            cur.extend(mids[x as usize]);
            let Some(z) = through(y).filter(|z| !done[*z as usize]) else {
                cur.push(vpos[y as usize]);
                break;
            };
            if style(y).under {
                cur.push(lerp(vpos[y as usize], mids[x as usize][1], GAP));
                lines.push((rail, std::mem::take(&mut cur)));
                cur.push(lerp(vpos[z as usize], mids[z as usize][0], GAP));
            } else {
                cur.push(vpos[y as usize]);
            }
            x = z;
        }
        lines.push((rail, cur));
    }

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    for (rail, pts) in &lines {
        let (colour, width) = if *rail { (RAIL, 3.0) } else { (ARC, 2.0) };
        let path: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (a, b) = tr(p);
                format!("{a:.2},{b:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"{width}\"/>",
            path.join(" ")
        );
    }
    for x in m.darts() {
        if style(x).endpoint {
            let (a, b) = tr(vpos[x as usize]);
            let _ = writeln!(s, "  <circle cx=\"{a:.2}\" cy=\"{b:.2}\" r=\"4\" fill=\"{ARC}\"/>");
        }
    }
    s.push_str("</svg>\n");
    s
}

fn lerp(a: (f64, f64), b: (f64, f64), t: f64) -> (f64, f64) {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}
