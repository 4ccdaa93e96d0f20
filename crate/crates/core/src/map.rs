//! Generic combinatorial maps: darts, an edge involution `alpha` and a
//! vertex rotation `sigma` (counterclockwise). Faces are the orbits of
//! `alpha ∘ sigma`, i.e. `d ↦ alpha(sigma(d))`; the face of `d` is the
//! corner swept counterclockwise from `d` to `sigma(d)` at its vertex.

use std::collections::VecDeque;

pub type Dart = u32;

/// Per-dart labels must encode to a byte so canonical codes can be emitted.
pub trait DartLabel: Clone + Eq + std::fmt::Debug {
    fn code(&self) -> u8;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Map<T> {
    pub(crate) alpha: Vec<Dart>,
    pub(crate) sigma: Vec<Dart>,
    pub(crate) tag: Vec<T>,
}

impl<T: DartLabel> Map<T> {
    pub fn from_parts(alpha: Vec<Dart>, sigma: Vec<Dart>, tag: Vec<T>) -> Self {
        Map { alpha, sigma, tag }
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    #[inline]
    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d as usize]
    }

    #[inline]
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d as usize]
    }

    #[inline]
    pub fn sigma2(&self, d: Dart) -> Dart {
        self.sigma(self.sigma(d))
    }

    pub fn sigma_inv(&self, d: Dart) -> Dart {
        let mut x = d;
        loop {
            let n = self.sigma(x);
            if n == d {
                return x;
            }
            x = n;
        }
    }

    #[inline]
    pub fn tag(&self, d: Dart) -> &T {
        &self.tag[d as usize]
    }

    #[inline]
    pub fn phi(&self, d: Dart) -> Dart {
        self.alpha(self.sigma(d))
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        0..self.len() as Dart
    }

    /// Structural check of the two permutations; `None` when sound.
    pub fn permutation_error(&self) -> Option<&'static str> {
        let n = self.len();
        if self.sigma.len() != n || self.tag.len() != n {
            return Some("array lengths differ");
        }
        for d in 0..n {
            let a = self.alpha[d] as usize;
            if a >= n || a == d || self.alpha[a] as usize != d {
                return Some("alpha not involution");
            }
        }
        let mut seen = vec![false; n];
        for d in 0..n {
            let s = self.sigma[d] as usize;
            if s >= n || seen[s] {
                return Some("sigma not permutation");
            }
            seen[s] = true;
        }
        None
    }

    pub fn orbit(&self, d: Dart, step: impl Fn(Dart) -> Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = step(d);
        while x != d {
            out.push(x);
            x = step(x);
        }
        out
    }

    fn orbits(&self, step: impl Fn(Dart) -> Dart) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for d in self.darts() {
            if seen[d as usize] {
                continue;
            }
            let o = self.orbit(d, &step);
            for &x in &o {
                seen[x as usize] = true;
            }
            out.push(o);
        }
        out
    }

    /// Vertex rotations, each starting at its smallest dart.
    pub fn vertices(&self) -> Vec<Vec<Dart>> {
        self.orbits(|d| self.sigma(d))
    }

    pub fn faces(&self) -> Vec<Vec<Dart>> {
        self.orbits(|d| self.phi(d))
    }

    /// Vertex index per dart (indices follow `vertices()`).
    pub fn vertex_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.len()];
        for (i, v) in self.vertices().iter().enumerate() {
            for &d in v {
                idx[d as usize] = i;
            }
        }
        idx
    }

    pub fn face_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.len()];
        for (i, f) in self.faces().iter().enumerate() {
            for &d in f {
                idx[d as usize] = i;
            }
        }
        idx
    }

    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertices().len() as i64;
        let e = (self.len() / 2) as i64;
        let f = self.faces().len() as i64;
        v - e + f
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        self.traversal_order(0).len() == self.len()
    }

    /// First-visit numbering from `root`, following `sigma` then `alpha`.
    fn traversal_order(&self, root: Dart) -> Vec<Dart> {
        let mut num = vec![u32::MAX; self.len()];
        let mut order = Vec::with_capacity(self.len());
        let mut queue = VecDeque::new();
        num[root as usize] = 0;
        order.push(root);
        queue.push_back(root);
        while let Some(d) = queue.pop_front() {
            for nx in [self.sigma(d), self.alpha(d)] {
                if num[nx as usize] == u32::MAX {
                    num[nx as usize] = order.len() as u32;
                    order.push(nx);
                    queue.push_back(nx);
                }
            }
        }
        order
    }

    /// Relabels darts by rooted traversal; returns the new map and the
    /// old→new dart mapping. Requires a connected map.
    pub fn canonical_from(&self, root: Dart) -> (Map<T>, Vec<Dart>) {
        let order = self.traversal_order(root);
        debug_assert_eq!(order.len(), self.len());
        let mut new_of = vec![0; self.len()];
        for (i, &d) in order.iter().enumerate() {
            new_of[d as usize] = i as Dart;
        }
        (self.permuted(&new_of), new_of)
    }

    /// Applies an old→new relabeling.
    pub fn permuted(&self, new_of: &[Dart]) -> Map<T> {
        let n = self.len();
        let mut alpha = vec![0; n];
        let mut sigma = vec![0; n];
        let mut tag = vec![self.tag[0].clone(); n];
        for d in 0..n {
            let nd = new_of[d] as usize;
            alpha[nd] = new_of[self.alpha[d] as usize];
            sigma[nd] = new_of[self.sigma[d] as usize];
            tag[nd] = self.tag[d].clone();
        }
        Map { alpha, sigma, tag }
    }

    /// Byte serialization of the labeled map (assumes canonical labels).
    pub fn code_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + self.len() * 9);
        out.extend_from_slice(&(self.len() as u32).to_le_bytes());
        for d in 0..self.len() {
            out.extend_from_slice(&self.alpha[d].to_le_bytes());
            out.extend_from_slice(&self.sigma[d].to_le_bytes());
            out.push(self.tag[d].code());
        }
        out
    }
}

/// Mutable scratch copy of a map used by local surgery. Darts may be
/// killed and appended; `finish` compacts the survivors.
pub(crate) struct MapEdit<T> {
    pub alpha: Vec<Dart>,
    pub sigma: Vec<Dart>,
    pub tag: Vec<T>,
    pub alive: Vec<bool>,
}

impl<T: DartLabel> MapEdit<T> {
    pub fn new(m: &Map<T>) -> Self {
        MapEdit {
            alpha: m.alpha.clone(),
            sigma: m.sigma.clone(),
            tag: m.tag.clone(),
            alive: vec![true; m.len()],
        }
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d as usize]
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d as usize]
    }

    pub fn sigma2(&self, d: Dart) -> Dart {
        self.sigma(self.sigma(d))
    }

    pub fn link(&mut self, a: Dart, b: Dart) {
        self.alpha[a as usize] = b;
        self.alpha[b as usize] = a;
    }

    /// Sets the rotation cycle of the given darts (counterclockwise).
    pub fn set_cycle(&mut self, ds: &[Dart]) {
        for i in 0..ds.len() {
            self.sigma[ds[i] as usize] = ds[(i + 1) % ds.len()];
        }
    }

    /// Appends a vertex with the given tags; darts are unlinked (self-alpha).
    pub fn new_vertex(&mut self, tags: &[T]) -> Vec<Dart> {
        let base = self.alpha.len() as Dart;
        let ds: Vec<Dart> = (0..tags.len() as Dart).map(|i| base + i).collect();
        for (i, t) in tags.iter().enumerate() {
            self.alpha.push(base + i as Dart);
            self.sigma.push(base);
            self.tag.push(t.clone());
            self.alive.push(true);
        }
        self.set_cycle(&ds);
        ds
    }

    pub fn rotation(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.sigma(d);
        while x != d {
            out.push(x);
            x = self.sigma(x);
        }
        out
    }

    pub fn kill_vertex(&mut self, d: Dart) {
        for x in self.rotation(d) {
            self.alive[x as usize] = false;
        }
    }

    /// Removes degree-4 vertices, joining each strand straight through
    /// (sigma-opposite darts). Chains of removed vertices are followed.
    pub fn smooth_through(&mut self, verts: &[Dart]) -> Result<(), &'static str> {
        for &v in verts {
            if self.rotation(v).len() != 4 {
                return Err("smoothing a vertex that is not 4-valent");
            }
            self.kill_vertex(v);
        }
        let n = self.alpha.len();
        let mut relink = Vec::new();
        for s in 0..n as Dart {
            if !self.alive[s as usize] || self.alive[self.alpha(s) as usize] {
                continue;
            }
            let mut x = self.alpha(s);
            let mut steps = 0;
            let z = loop {
                let y = self.sigma2(x);
                let z = self.alpha(y);
                if self.alive[z as usize] {
                    break z;
                }
                x = z;
                steps += 1;
                if steps > n {
                    return Err("smoothing walk did not terminate");
                }
            };
            if z == s {
                return Err("smoothing closed a strand on itself");
            }
            relink.push((s, z));
        }
        for (s, z) in relink {
            self.alpha[s as usize] = z;
            self.alpha[z as usize] = s;
        }
        Ok(())
    }

    /// Drops dead darts and renumbers survivors in increasing order.
    pub fn finish(self) -> Result<(Map<T>, Vec<Option<Dart>>), &'static str> {
        let mut new_of = vec![None; self.alpha.len()];
        let mut k = 0;
        for (d, &a) in self.alive.iter().enumerate() {
            if a {
                new_of[d] = Some(k);
                k += 1;
            }
        }
        let mut alpha = Vec::with_capacity(k as usize);
        let mut sigma = Vec::with_capacity(k as usize);
        let mut tag = Vec::with_capacity(k as usize);
        for d in 0..self.alpha.len() {
            if !self.alive[d] {
                continue;
            }
            let a = new_of[self.alpha[d] as usize].ok_or("live dart linked to removed dart")?;
            let s = new_of[self.sigma[d] as usize].ok_or("live dart rotates to removed dart")?;
            alpha.push(a);
            sigma.push(s);
            tag.push(self.tag[d].clone());
        }
        Ok((Map { alpha, sigma, tag }, new_of))
    }
}
