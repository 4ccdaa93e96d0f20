//! Invariants: the free-group double-coset word read from front rail
//! crossings, and the Kauffman bracket of knotoid diagrams.
//!
//! Smoothing convention: at a crossing the A-regions are the two corners
//! swept counterclockwise from an over dart to the next under dart. The
//! A-smoothing joins them, which pairs every under dart `u` with `σ(u)`;
//! the B-smoothing pairs every over dart `o` with `σ(o)`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::diagram::{DiagramError, RailDiagram, RailId, RailTag};
use crate::knotoid::{KnotoidDiagram, KnotoidTag};
use crate::map::Dart;

/// Largest crossing count accepted by [`bracket`].
pub const BRACKET_LIMIT: usize = 22;
/// Largest crossing count accepted by [`bracket_skein_oracle`].
pub const ORACLE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("{n} crossings exceed the limit of {limit}")]
    TooManyCrossings { n: usize, limit: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub rail: RailId,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter { inverse: !self.inverse, ..self }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.rail.index())?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// A word in the free group on x1, x2. Displays as space-separated
/// letters (`x1^-1` for inverses) or `ε` when empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Word(pub Vec<Letter>);

impl F2Word {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Freely reduced, no leading x1-power, no trailing x2-power.
    pub fn is_normal(&self) -> bool {
        let w = &self.0;
        w.windows(2).all(|p| p[0] != p[1].inv())
            && w.first().is_none_or(|l| l.rail != RailId::One)
            && w.last().is_none_or(|l| l.rail != RailId::Two)
    }
}

impl fmt::Display for F2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for F2Word {
    type Err = String;

    /// Accepts `x1`, `x2`, `x1^-1`, `x1⁻¹` separated by whitespace; `ε` or
    /// an empty string is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "ε" {
                continue;
            }
            let (base, inverse) = if let Some(b) = tok.strip_suffix("^-1") {
                (b, true)
            } else if let Some(b) = tok.strip_suffix("⁻¹") {
                (b, true)
            } else {
                (tok, false)
            };
            let rail = match base {
                "x1" => RailId::One,
                "x2" => RailId::Two,
                _ => return Err(format!("bad letter {tok:?}")),
            };
            out.push(Letter { rail, inverse });
        }
        Ok(F2Word(out))
    }
}

/// Reads the word along the arc: each front (arc-over) rail crossing on
/// rail i contributes x_i, inverted when the arc crosses the upward rail
/// from right to left.
pub fn f2_word(d: &RailDiagram) -> Result<F2Word, DiagramError> {
    d.ensure_valid()?;
    let m = d.map();
    let up: HashSet<Dart> = [RailId::One, RailId::Two].iter().flat_map(|&r| d.rail_walk(r)).collect();
    let mut out = Vec::new();
    for arrive in d.arc_arrivals() {
        if *m.tag(arrive) != RailTag::ArcOver {
            continue;
        }
        let rail_up = if up.contains(&m.sigma(arrive)) { m.sigma(arrive) } else { m.sigma_inv(arrive) };
        let rail = m.tag(rail_up).rail().expect("rail dart");
        // Left to right: the arc arrives from the west, which is the
        // counterclockwise successor of the upward rail dart.
        let left_to_right = m.sigma(rail_up) == arrive;
        out.push(Letter { rail, inverse: !left_to_right });
    }
    Ok(F2Word(out))
}

/// Representative of the double coset ⟨x1⟩·w·⟨x2⟩.
pub fn f2_normal_form(w: &F2Word) -> F2Word {
    let mut red: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if red.last() == Some(&l.inv()) {
            red.pop();
        } else {
            red.push(l);
        }
    }
    let start = red.iter().take_while(|l| l.rail == RailId::One).count();
    let mut rest = red.split_off(start);
    while rest.last().is_some_and(|l| l.rail == RailId::Two) {
        rest.pop();
    }
    F2Word(rest)
}

/// Integer Laurent polynomial in A.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(c, e);
        p
    }

    /// −A² − A⁻², the value of a closed loop.
    pub fn loop_value() -> Self {
        let mut p = LaurentPoly::monomial(-1, 2);
        p.add_term(-1, -2);
        p
    }

    pub fn add_term(&mut self, c: i64, e: i64) {
        let v = self.terms.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// (exponent, coefficient) pairs in decreasing exponent order.
    pub fn terms(&self) -> Vec<(i64, i64)> {
        self.terms.iter().rev().map(|(&e, &c)| (e, c)).collect()
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (&e, &c) in &o.terms {
            r.add_term(c, e);
        }
        r
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &o.terms {
                r.add_term(c1 * c2, e1 + e2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut r = LaurentPoly::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*A^{e}")?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = LaurentPoly::zero();
        if s.trim() == "0" {
            return Ok(p);
        }
        for t in s.split(" + ") {
            let (c, e) = t.trim().split_once("*A^").ok_or_else(|| format!("bad term {t:?}"))?;
            let c: i64 = c.parse().map_err(|_| format!("bad coefficient in {t:?}"))?;
            let e: i64 = e.parse().map_err(|_| format!("bad exponent in {t:?}"))?;
            p.add_term(c, e);
        }
        Ok(p)
    }
}

/// Crossing vertices as (representative dart, its four darts in rotation).
fn crossings(k: &KnotoidDiagram) -> Vec<[Dart; 4]> {
    let m = k.map();
    m.vertices()
        .into_iter()
        .filter(|v| v.len() == 4)
        .map(|v| [v[0], v[1], v[2], v[3]])
        .collect()
}

fn find(p: &mut [Dart], mut x: Dart) -> Dart {
    while p[x as usize] != x {
        p[x as usize] = p[p[x as usize] as usize];
        x = p[x as usize];
    }
    x
}

fn union(p: &mut [Dart], a: Dart, b: Dart) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p[ra as usize] = rb;
    }
}

/// State-sum Kauffman bracket over all 2ⁿ smoothings.
pub fn bracket(k: &KnotoidDiagram) -> Result<LaurentPoly, InvariantError> {
    k.ensure_valid()?;
    let xs = crossings(k);
    let n = xs.len();
    if n > BRACKET_LIMIT {
        return Err(InvariantError::TooManyCrossings { n, limit: BRACKET_LIMIT });
    }
    let m = k.map();
    let size = m.len();
    let mut base: Vec<Dart> = (0..size as Dart).collect();
    for d in m.darts() {
        union(&mut base, d, m.alpha(d));
    }
    // loops[j] = number of states with a A-smoothings and `j` closed loops,
    // bucketed by a.
    let mut counts: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    for state in 0u64..(1u64 << n) {
        let mut p = base.clone();
        let mut a = 0i64;
        for (i, x) in xs.iter().enumerate() {
            let smooth_a = state >> i & 1 == 0;
            let want = if smooth_a { KnotoidTag::Under } else { KnotoidTag::Over };
            a += if smooth_a { 1 } else { -1 };
            for &dd in x {
                if *m.tag(dd) == want {
                    union(&mut p, dd, m.sigma(dd));
                }
            }
        }
        let mut roots = HashSet::new();
        for d in 0..size as Dart {
            roots.insert(find(&mut p, d));
        }
        *counts.entry((a, roots.len() - 1)).or_insert(0) += 1;
    }
    let d = LaurentPoly::loop_value();
    let mut total = LaurentPoly::zero();
    for ((a, loops), c) in counts {
        let term = LaurentPoly::monomial(c, a).mul(&d.pow(loops as u32));
        total = total.add(&term);
    }
    Ok(total)
}

/// Independent recursive evaluation: smooth one crossing at a time by
/// rewiring strand ends, counting closed loops as they close up.
pub fn bracket_skein_oracle(k: &KnotoidDiagram) -> Result<LaurentPoly, InvariantError> {
    k.ensure_valid()?;
    let m = k.map();
    let mut pairs = Vec::new();
    for x in crossings(k) {
        // (darts joined by A, darts joined by B) at this crossing.
        let mut a = Vec::new();
        let mut b = Vec::new();
        for &d in &x {
            if *m.tag(d) == KnotoidTag::Under {
                a.push((d, m.sigma(d)));
            } else {
                b.push((d, m.sigma(d)));
            }
        }
        pairs.push((a, b));
    }
    if pairs.len() > ORACLE_LIMIT {
        return Err(InvariantError::TooManyCrossings { n: pairs.len(), limit: ORACLE_LIMIT });
    }
    let alpha: BTreeMap<Dart, Dart> = m.darts().map(|d| (d, m.alpha(d))).collect();
    Ok(skein(&alpha, &pairs))
}

type Joins = Vec<(Dart, Dart)>;

fn skein(alpha: &BTreeMap<Dart, Dart>, rest: &[(Joins, Joins)]) -> LaurentPoly {
    let Some(((ja, jb), tail)) = rest.split_first() else {
        return LaurentPoly::one();
    };
    let mut total = LaurentPoly::zero();
    for (joins, e) in [(ja, 1), (jb, -1)] {
        let mut al = alpha.clone();
        let mut loops = 0;
        for &(p, q) in joins {
            let (x, y) = (al[&p], al[&q]);
            al.remove(&p);
            al.remove(&q);
            if x == q {
                loops += 1;
            } else {
                al.insert(x, y);
                al.insert(y, x);
            }
        }
        let sub = skein(&al, tail);
        let factor = LaurentPoly::monomial(1, e).mul(&LaurentPoly::loop_value().pow(loops));
        total = total.add(&factor.mul(&sub));
    }
    total
}

/// Sign of the crossing at each vertex visited, from the outgoing darts.
fn signs(
    walk: &[Dart],
    sigma: impl Fn(Dart) -> Dart,
    vertex: impl Fn(Dart) -> usize,
    is_over: impl Fn(Dart) -> Option<bool>,
) -> i64 {
    let mut out_over = BTreeMap::new();
    let mut out_under = BTreeMap::new();
    for &d in walk {
        match is_over(d) {
            Some(true) => {
                out_over.insert(vertex(d), d);
            }
            Some(false) => {
                out_under.insert(vertex(d), d);
            }
            None => {}
        }
    }
    let mut w = 0;
    for (v, &o) in &out_over {
        let u = out_under[v];
        w += if sigma(o) == u { 1 } else { -1 };
    }
    w
}

/// Sum of crossing signs: +1 when the outgoing under dart follows the
/// outgoing over dart counterclockwise.
pub fn writhe(k: &KnotoidDiagram) -> Result<i64, DiagramError> {
    k.ensure_valid()?;
    let m = k.map();
    let vi = m.vertex_index();
    Ok(signs(
        &k.arc_walk(),
        |d| m.sigma(d),
        |d| vi[d as usize],
        |d| match m.tag(d) {
            KnotoidTag::Over => Some(true),
            KnotoidTag::Under => Some(false),
            _ => None,
        },
    ))
}

/// Writhe of the arc self-crossings of a rail diagram.
pub fn rail_writhe(d: &RailDiagram) -> Result<i64, DiagramError> {
    d.ensure_valid()?;
    let m = d.map();
    let vi = m.vertex_index();
    Ok(signs(
        &d.arc_walk(),
        |x| m.sigma(x),
        |x| vi[x as usize],
        |x| match m.tag(x) {
            RailTag::Over => Some(true),
            RailTag::Under => Some(false),
            _ => None,
        },
    ))
}

/// (−A³)^(−writhe) · ⟨K⟩.
pub fn normalized_bracket(k: &KnotoidDiagram) -> Result<LaurentPoly, InvariantError> {
    let b = bracket(k)?;
    let w = writhe(k)?;
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(b.mul(&LaurentPoly::monomial(sign, -3 * w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{apply_move, enumerate_creations, MoveSite};

    fn w(s: &str) -> F2Word {
        s.parse().unwrap()
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(f2_normal_form(&w("x1 x1^-1")), F2Word::default());
        assert_eq!(f2_normal_form(&w("x1 x1 x2 x1 x2 x2⁻¹ x2")), w("x2 x1"));
        assert_eq!(f2_normal_form(&w("x1 x2")), F2Word::default());
        assert_eq!(w("x2 x1^-1").to_string(), "x2 x1^-1");
        assert_eq!(F2Word::default().to_string(), "ε");
    }

    #[test]
    fn kinks_normalize_to_one() {
        let t = RailDiagram::trivial();
        let sites = enumerate_creations(&t, 1).unwrap();
        let mut seen_signs = HashSet::new();
        for s in sites.iter().filter(|s| matches!(s, MoveSite::Omega1Plus { .. })) {
            let k = KnotoidDiagram::forget_rails(&apply_move(&t, s).unwrap());
            assert_eq!(normalized_bracket(&k).unwrap(), LaurentPoly::one(), "{s}");
            assert_eq!(bracket(&k).unwrap(), bracket_skein_oracle(&k).unwrap());
            seen_signs.insert(writhe(&k).unwrap());
        }
        assert_eq!(seen_signs, HashSet::from([1, -1]));
    }

    #[test]
    fn polynomial_text_round_trips() {
        let p = LaurentPoly::loop_value().mul(&LaurentPoly::monomial(-1, 3));
        assert_eq!(p.to_string(), "1*A^5 + 1*A^1");
        assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
    }
}
