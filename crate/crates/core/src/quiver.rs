//! Quivers without loops or 2-cycles, Fomin–Zelevinsky mutation and chordless cycles.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::dynkin::DynkinType;

pub type Vertex = u32;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex ids must be positive")]
    ZeroVertex,
    #[error("vertex {0} listed twice")]
    DuplicateVertex(Vertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("2-cycle between {0} and {1}")]
    TwoCycle(Vertex, Vertex),
    #[error("exchange matrix is not square")]
    NotSquare,
    #[error("exchange matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(Vertex, Vertex),
    #[error("{0} arrows from {1} to {2}; mutation-Dynkin quivers have single arrows")]
    MultipleArrows(usize, Vertex, Vertex),
    #[error("chordless cycle {0:?} is not oriented")]
    UnorientedCycle(Vec<Vertex>),
}

/// A finite quiver. Arrows are kept as a sorted multiset of (source, target).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    arrows: Vec<(Vertex, Vertex)>,
}

/// B_xy = #(x→y) − #(y→x), rows and columns indexed by `vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeMatrix {
    pub vertices: Vec<Vertex>,
    pub entries: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChordlessCycle {
    /// Cyclically ordered, starting at the smallest vertex. When the cycle is
    /// oriented the order follows the arrows.
    pub vertices: Vec<Vertex>,
    pub oriented: bool,
}

impl Quiver {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>, arrows: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, QuiverError> {
        let mut vs: Vec<Vertex> = vertices.into_iter().collect();
        vs.sort_unstable();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(QuiverError::DuplicateVertex(w[0]));
            }
        }
        if vs.first() == Some(&0) {
            return Err(QuiverError::ZeroVertex);
        }
        let mut arrows: Vec<(Vertex, Vertex)> = arrows.into_iter().collect();
        for &(s, t) in &arrows {
            for v in [s, t] {
                if vs.binary_search(&v).is_err() {
                    return Err(QuiverError::UnknownVertex(v));
                }
            }
            if s == t {
                return Err(QuiverError::Loop(s));
            }
        }
        arrows.sort_unstable();
        for &(s, t) in &arrows {
            if arrows.binary_search(&(t, s)).is_ok() {
                return Err(QuiverError::TwoCycle(s.min(t), s.max(t)));
            }
        }
        Ok(Quiver { vertices: vs, arrows })
    }

    /// An orientation of the Dynkin diagram: every edge (i, j), i < j, becomes i → j.
    pub fn dynkin(t: DynkinType) -> Quiver {
        Quiver::new(t.vertices(), t.edges()).expect("diagram is a valid quiver")
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(Vertex, Vertex)] {
        &self.arrows
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    fn check(&self, v: Vertex) -> Result<(), QuiverError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(QuiverError::UnknownVertex(v))
        }
    }

    pub fn multiplicity(&self, s: Vertex, t: Vertex) -> usize {
        let lo = self.arrows.partition_point(|&a| a < (s, t));
        let hi = self.arrows.partition_point(|&a| a <= (s, t));
        hi - lo
    }

    pub fn has_arrow(&self, s: Vertex, t: Vertex) -> bool {
        self.arrows.binary_search(&(s, t)).is_ok()
    }

    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        self.has_arrow(a, b) || self.has_arrow(b, a)
    }

    /// Distinct neighbours of `v` in the underlying graph, sorted.
    pub fn neighbours(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .arrows
            .iter()
            .filter_map(|&(s, t)| if s == v { Some(t) } else if t == v { Some(s) } else { None })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Distinct undirected edges {a, b} with a < b, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<(Vertex, Vertex)> = self.arrows.iter().map(|&(s, t)| (s.min(t), s.max(t))).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Fomin–Zelevinsky mutation at `k`.
    ///
    /// (1) add a composite i → j for every path i → k → j; (2) reverse every
    /// arrow at k; (3) remove a maximal set of 2-cycles.
    pub fn mutate(&self, k: Vertex) -> Result<Quiver, QuiverError> {
        self.check(k)?;
        let ins: Vec<Vertex> = self.arrows.iter().filter(|a| a.1 == k).map(|a| a.0).collect();
        let outs: Vec<Vertex> = self.arrows.iter().filter(|a| a.0 == k).map(|a| a.1).collect();
        let mut arrows: Vec<(Vertex, Vertex)> = Vec::with_capacity(self.arrows.len() + ins.len() * outs.len());
        for &(s, t) in &self.arrows {
            if s == k || t == k {
                arrows.push((t, s));
            } else {
                arrows.push((s, t));
            }
        }
        for &i in &ins {
            for &j in &outs {
                arrows.push((i, j));
            }
        }
        // step (3): cancel opposite pairs
        let mut count: BTreeMap<(Vertex, Vertex), i64> = BTreeMap::new();
        for (s, t) in arrows {
            let (key, d) = if s < t { ((s, t), 1) } else { ((t, s), -1) };
            *count.entry(key).or_insert(0) += d;
        }
        let mut out = Vec::new();
        for ((a, b), c) in count {
            let (s, t) = if c > 0 { (a, b) } else { (b, a) };
            for _ in 0..c.unsigned_abs() {
                out.push((s, t));
            }
        }
        out.sort_unstable();
        Ok(Quiver { vertices: self.vertices.clone(), arrows: out })
    }

    /// Mutate along a sequence of vertices, left to right.
    pub fn mutate_path(&self, path: &[Vertex]) -> Result<Quiver, QuiverError> {
        let mut q = self.clone();
        for &k in path {
            q = q.mutate(k)?;
        }
        Ok(q)
    }

    pub fn exchange_matrix(&self) -> ExchangeMatrix {
        let n = self.vertices.len();
        let mut b = vec![vec![0i64; n]; n];
        for &(s, t) in &self.arrows {
            let i = self.index_of(s);
            let j = self.index_of(t);
            b[i][j] += 1;
            b[j][i] -= 1;
        }
        ExchangeMatrix { vertices: self.vertices.clone(), entries: b }
    }

    pub fn from_exchange_matrix(m: &ExchangeMatrix) -> Result<Quiver, QuiverError> {
        let n = m.vertices.len();
        if m.entries.len() != n || m.entries.iter().any(|r| r.len() != n) {
            return Err(QuiverError::NotSquare);
        }
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if m.entries[i][j] != -m.entries[j][i] {
                    return Err(QuiverError::NotSkewSymmetric(m.vertices[i], m.vertices[j]));
                }
                for _ in 0..m.entries[i][j].max(0) {
                    arrows.push((m.vertices[i], m.vertices[j]));
                }
            }
        }
        Quiver::new(m.vertices.iter().copied(), arrows)
    }

    pub(crate) fn index_of(&self, v: Vertex) -> usize {
        self.vertices.binary_search(&v).expect("vertex of the quiver")
    }

    /// Rename vertices through `map`, which must be injective on the vertex set.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Result<Quiver, QuiverError> {
        let f = |v: Vertex| map.get(&v).copied().ok_or(QuiverError::UnknownVertex(v));
        let vs = self.vertices.iter().map(|&v| f(v)).collect::<Result<Vec<_>, _>>()?;
        let arrows = self.arrows.iter().map(|&(s, t)| Ok((f(s)?, f(t)?))).collect::<Result<Vec<_>, QuiverError>>()?;
        Quiver::new(vs, arrows)
    }

    pub fn max_multiplicity(&self) -> usize {
        let mut best = 0;
        let mut i = 0;
        while i < self.arrows.len() {
            let mut j = i;
            while j < self.arrows.len() && self.arrows[j] == self.arrows[i] {
                j += 1;
            }
            best = best.max(j - i);
            i = j;
        }
        best
    }

    /// Every chordless cycle of the underlying graph, once up to rotation and reflection.
    ///
    /// Pairs joined by multiple arrows count as a single edge here; such
    /// quivers fail [`Quiver::check_two_finite`] anyway.
    pub fn chordless_cycles(&self) -> Vec<ChordlessCycle> {
        let adj: BTreeMap<Vertex, BTreeSet<Vertex>> = self.vertices.iter().map(|&v| (v, self.neighbours(v).into_iter().collect())).collect();
        let mut found = Vec::new();
        // Each cycle is rooted at its smallest vertex r and grown as an induced
        // path r, v1, ..., vm with all vi > r; it closes when vm is adjacent to r.
        for &r in &self.vertices {
            for &v1 in adj[&r].range(r + 1..) {
                let mut path = vec![r, v1];
                extend_chordless(&adj, &mut path, &mut found);
            }
        }
        let mut out: Vec<ChordlessCycle> = found
            .into_iter()
            .filter(|p: &Vec<Vertex>| p[1] < p[p.len() - 1])
            .map(|p| self.orient_cycle(p))
            .collect();
        out.sort();
        out
    }

    fn orient_cycle(&self, p: Vec<Vertex>) -> ChordlessCycle {
        let n = p.len();
        let fwd = (0..n).all(|t| self.has_arrow(p[t], p[(t + 1) % n]));
        if fwd {
            return ChordlessCycle { vertices: p, oriented: true };
        }
        let bwd = (0..n).all(|t| self.has_arrow(p[(t + 1) % n], p[t]));
        if bwd {
            let mut q = p;
            q[1..].reverse();
            return ChordlessCycle { vertices: q, oriented: true };
        }
        ChordlessCycle { vertices: p, oriented: false }
    }

    /// The two conditions every quiver in an ADE mutation class satisfies:
    /// single arrows and oriented chordless cycles.
    pub fn check_two_finite(&self) -> Result<(), QuiverError> {
        let mut i = 0;
        while i < self.arrows.len() {
            let m = self.multiplicity(self.arrows[i].0, self.arrows[i].1);
            if m > 1 {
                return Err(QuiverError::MultipleArrows(m, self.arrows[i].0, self.arrows[i].1));
            }
            i += m;
        }
        for c in self.chordless_cycles() {
            if !c.oriented {
                return Err(QuiverError::UnorientedCycle(c.vertices));
            }
        }
        Ok(())
    }

    /// The ADE type of the underlying graph, if the quiver is itself an
    /// orientation of a Dynkin diagram, with the map to standard labels.
    pub fn dynkin_shape(&self) -> Option<(DynkinType, BTreeMap<Vertex, Vertex>)> {
        if self.max_multiplicity() > 1 {
            return None;
        }
        DynkinType::identify(&self.vertices, &self.edges())
    }

    /// Canonical form up to relabelling. Two quivers on the same number of
    /// vertices are isomorphic iff their canonical forms are equal.
    pub fn canonical_form(&self) -> CanonicalForm {
        let (code, _) = canonical_labelling(self);
        CanonicalForm { n: self.vertices.len() as u32, code }
    }

    /// The canonical form plus the vertex order realising it: `order[p]` is
    /// the vertex placed at canonical position p.
    pub fn canonical_labelling(&self) -> (CanonicalForm, Vec<Vertex>) {
        let (code, order) = canonical_labelling(self);
        (CanonicalForm { n: self.vertices.len() as u32, code }, order)
    }
}

fn extend_chordless(adj: &BTreeMap<Vertex, BTreeSet<Vertex>>, path: &mut Vec<Vertex>, found: &mut Vec<Vec<Vertex>>) {
    let r = path[0];
    let last = *path.last().unwrap();
    if path.len() >= 3 && adj[&last].contains(&r) {
        found.push(path.clone());
        return;
    }
    for &w in adj[&last].range(r + 1..) {
        if path.contains(&w) {
            continue;
        }
        // w may touch the path only at `last`, and at r when it closes the cycle
        let inner = &path[1..path.len() - 1];
        if inner.iter().any(|x| adj[&w].contains(x)) {
            continue;
        }
        if path.len() == 2 && adj[&w].contains(&r) {
            // triangle r, v1, w
            path.push(w);
            found.push(path.clone());
            path.pop();
            continue;
        }
        path.push(w);
        extend_chordless(adj, path, found);
        path.pop();
    }
}

/// Isomorphism-invariant code: the adjacency multiplicities listed in a
/// canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: u32,
    pub code: Vec<u8>,
}

impl CanonicalForm {
    /// Rebuild a representative quiver on vertices 1..=n.
    pub fn to_quiver(&self) -> Quiver {
        let n = self.n as usize;
        let mut m = vec![vec![0u8; n]; n];
        let mut it = self.code.iter();
        for p in 0..n {
            for q in 0..p {
                m[p][q] = *it.next().unwrap();
                m[q][p] = *it.next().unwrap();
            }
        }
        let mut arrows = Vec::new();
        for (p, row) in m.iter().enumerate() {
            for (q, &c) in row.iter().enumerate() {
                for _ in 0..c {
                    arrows.push((p as Vertex + 1, q as Vertex + 1));
                }
            }
        }
        Quiver::new(1..=n as Vertex, arrows).expect("canonical code encodes a quiver")
    }
}

/// Colour refinement followed by a branch-and-bound search over orderings
/// compatible with the colour classes. The code of an ordering π lists, for
/// p = 0, 1, …, the pairs (m[π p][π q], m[π q][π p]) for q < p, so prefixes
/// of the code are determined by prefixes of π.
fn canonical_labelling(q: &Quiver) -> (Vec<u8>, Vec<Vertex>) {
    let n = q.vertices.len();
    let mut m = vec![vec![0u8; n]; n];
    for &(s, t) in &q.arrows {
        let (i, j) = (q.index_of(s), q.index_of(t));
        m[i][j] = m[i][j].saturating_add(1);
    }
    let colour = refine(&m);
    // cells in colour order
    let ncol = colour.iter().copied().max().map_or(0, |c| c + 1);
    let mut slot_colour = Vec::with_capacity(n);
    for c in 0..ncol {
        for &x in &colour {
            if x == c {
                slot_colour.push(c);
            }
        }
    }
    let mut search = Search { m: &m, colour: &colour, slot_colour: &slot_colour, best: None, cur: Vec::new(), code: Vec::new(), used: vec![false; n] };
    search.run();
    let (code, order) = search.best.unwrap_or_default();
    (code, order.into_iter().map(|i| q.vertices[i]).collect())
}

/// A vertex's colour and the sorted (colour, out, in) multiplicities of its neighbours.
type Signature = (usize, Vec<(usize, u8, u8)>);

fn refine(m: &[Vec<u8>]) -> Vec<usize> {
    let n = m.len();
    let mut colour = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|i| {
                let mut s: Vec<(usize, u8, u8)> = (0..n).filter(|&j| j != i && (m[i][j] > 0 || m[j][i] > 0)).map(|j| (colour[j], m[i][j], m[j][i])).collect();
                s.sort_unstable();
                (colour[i], s)
            })
            .collect();
        let mut distinct: Vec<&Signature> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(&s).unwrap()).collect();
        let count = distinct.len();
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

struct Search<'a> {
    m: &'a [Vec<u8>],
    colour: &'a [usize],
    slot_colour: &'a [usize],
    best: Option<(Vec<u8>, Vec<usize>)>,
    cur: Vec<usize>,
    code: Vec<u8>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self) {
        let p = self.cur.len();
        if p == self.m.len() {
            let better = match &self.best {
                None => true,
                Some((b, _)) => self.code < *b,
            };
            if better {
                self.best = Some((self.code.clone(), self.cur.clone()));
            }
            return;
        }
        for v in 0..self.m.len() {
            if self.used[v] || self.colour[v] != self.slot_colour[p] {
                continue;
            }
            let mark = self.code.len();
            for &u in &self.cur {
                self.code.push(self.m[v][u]);
                self.code.push(self.m[u][v]);
            }
            let prune = match &self.best {
                Some((b, _)) => self.code.as_slice() > &b[..self.code.len()],
                None => false,
            };
            if !prune {
                self.used[v] = true;
                self.cur.push(v);
                self.run();
                self.cur.pop();
                self.used[v] = false;
            }
            self.code.truncate(mark);
        }
    }
}
