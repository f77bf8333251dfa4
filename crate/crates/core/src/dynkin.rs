//! ADE Dynkin types and their standard vertex numbering.
//!
//! A_n is the path 1-2-…-n. D_n has the fork vertices 1 and 2 attached to 3,
//! followed by the tail 3-4-…-n. E_n uses the Bourbaki labels: the chain
//! 1-3-4-5-…-n with 2 attached to 4.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::quiver::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("invalid Dynkin type {0:?}")]
    Invalid(String),
    #[error("{family:?}{rank} is not a valid Dynkin type")]
    BadRank { family: Family, rank: usize },
    #[error("vertex {vertex} is not a vertex of {ty}")]
    BadVertex { ty: DynkinType, vertex: i64 },
    #[error("operation is not supported for {0}")]
    Unsupported(DynkinType),
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self, TypeError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(TypeError::BadRank { family, rank })
        }
    }

    /// Shorthand for tests and fixed tables; panics on an invalid rank.
    pub fn a(n: usize) -> Self {
        Self::new(Family::A, n).expect("invalid A rank")
    }

    pub fn d(n: usize) -> Self {
        Self::new(Family::D, n).expect("invalid D rank")
    }

    pub fn e(n: usize) -> Self {
        Self::new(Family::E, n).expect("invalid E rank")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Edges of the diagram in the standard numbering, each as (i, j) with i < j.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.rank as Vertex;
        let mut out = Vec::new();
        match self.family {
            Family::A => {
                for i in 1..n {
                    out.push((i, i + 1));
                }
            }
            Family::D => {
                out.push((1, 3));
                out.push((2, 3));
                for i in 3..n {
                    out.push((i, i + 1));
                }
            }
            Family::E => {
                out.push((1, 3));
                out.push((2, 4));
                for i in 3..n {
                    out.push((i, i + 1));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        (1..=self.rank as Vertex).collect()
    }

    pub fn is_vertex(&self, i: i64) -> bool {
        i >= 1 && i <= self.rank as i64
    }

    /// Cartan matrix, 0-indexed: `c[i][j]` for vertices i+1, j+1.
    pub fn cartan(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut c = vec![vec![0i32; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            let (i, j) = (i as usize - 1, j as usize - 1);
            c[i][j] = -1;
            c[j][i] = -1;
        }
        c
    }

    /// Number of positive roots, i.e. the length of the longest element.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
        }
    }

    /// Identify an undirected simple graph as an ADE diagram.
    ///
    /// Returns the type together with a map from the given vertex ids to the
    /// standard numbering. Edges must be distinct unordered pairs.
    pub fn identify(vertices: &[Vertex], edges: &[(Vertex, Vertex)]) -> Option<(DynkinType, BTreeMap<Vertex, Vertex>)> {
        let n = vertices.len();
        if n == 0 || edges.len() + 1 != n {
            return None;
        }
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in edges {
            if a == b {
                return None;
            }
            adj.get_mut(&a)?.push(b);
            adj.get_mut(&b)?.push(a);
        }
        for nb in adj.values_mut() {
            nb.sort_unstable();
            let before = nb.len();
            nb.dedup();
            if nb.len() != before || nb.len() > 3 {
                return None;
            }
        }
        // connected check
        let mut seen = alloc::collections::BTreeSet::new();
        let mut stack = vec![vertices[0]];
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(adj[&v].iter().copied());
            }
        }
        if seen.len() != n {
            return None;
        }
        let branches: Vec<Vertex> = adj.iter().filter(|(_, nb)| nb.len() == 3).map(|(&v, _)| v).collect();
        let mut map = BTreeMap::new();
        match branches.len() {
            0 => {
                // path: start from the smallest endpoint
                let start = adj.iter().find(|(_, nb)| nb.len() <= 1).map(|(&v, _)| v)?;
                for (k, v) in walk(&adj, start, None).into_iter().enumerate() {
                    map.insert(v, k as Vertex + 1);
                }
                Some((DynkinType::new(Family::A, n).ok()?, map))
            }
            1 => {
                let b = branches[0];
                let mut arms: Vec<Vec<Vertex>> = adj[&b].iter().map(|&s| walk(&adj, s, Some(b))).collect();
                arms.sort_by_key(|a| (a.len(), a[0]));
                let lens = (arms[0].len(), arms[1].len(), arms[2].len());
                match lens {
                    (1, 1, _) => {
                        map.insert(arms[0][0], 1);
                        map.insert(arms[1][0], 2);
                        map.insert(b, 3);
                        for (k, &v) in arms[2].iter().enumerate() {
                            map.insert(v, k as Vertex + 4);
                        }
                        Some((DynkinType::new(Family::D, n).ok()?, map))
                    }
                    (1, 2, 2) | (1, 2, 3) | (1, 2, 4) => {
                        map.insert(b, 4);
                        map.insert(arms[0][0], 2);
                        map.insert(arms[1][0], 3);
                        map.insert(arms[1][1], 1);
                        for (k, &v) in arms[2].iter().enumerate() {
                            map.insert(v, k as Vertex + 5);
                        }
                        Some((DynkinType::new(Family::E, n).ok()?, map))
                    }
                    _ => None,
                }
            }
            _ => None,
        }
    }
}

/// Walk a path starting at `start`, not stepping back to `from`.
fn walk(adj: &BTreeMap<Vertex, Vec<Vertex>>, start: Vertex, from: Option<Vertex>) -> Vec<Vertex> {
    let mut out = vec![start];
    let mut prev = from;
    let mut cur = start;
    loop {
        match adj[&cur].iter().copied().find(|&x| Some(x) != prev && !out.contains(&x)) {
            Some(x) => {
                out.push(x);
                prev = Some(cur);
                cur = x;
            }
            None => return out,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = TypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') | Some('a') => Family::A,
            Some('D') | Some('d') => Family::D,
            Some('E') | Some('e') => Family::E,
            _ => return Err(TypeError::Invalid(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| TypeError::Invalid(s.to_string()))?;
        DynkinType::new(family, rank)
    }
}
