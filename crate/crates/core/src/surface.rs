//! Triangulations of the (n+3)-gon (type A_n) and tagged triangulations of
//! the once-punctured n-gon (type D_n), flips, quivers and braid graphs.
//!
//! Boundary marked points are numbered 1..m clockwise. In type A an arc is a
//! diagonal `Peripheral(i, j)` with i < j. In type D `Peripheral(i, j)` is
//! the arc following the clockwise boundary path i → j, with the puncture
//! on its other side, and `Radius(x, tag)` joins x to the puncture.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::dynkin::{DynkinType, Family};
use crate::quiver::{Quiver, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Plain,
    Notched,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TaggedArc {
    Peripheral(u32, u32),
    Radius(u32, Tag),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("no surface model for type {0}")]
    Unsupported(DynkinType),
    #[error("{0:?} is not an arc of the {1} surface")]
    InvalidArc(TaggedArc, DynkinType),
    #[error("arcs {0:?} and {1:?} cross")]
    Incompatible(TaggedArc, TaggedArc),
    #[error("a triangulation of the {ty} surface has {expected} arcs, got {got}")]
    WrongArcCount { ty: DynkinType, expected: usize, got: usize },
    #[error("arc {0:?} listed twice")]
    DuplicateArc(TaggedArc),
    #[error("arc index {0} out of range")]
    BadIndex(usize),
    #[error("flip at {0:?} has {1} candidate replacements")]
    FlipNotUnique(TaggedArc, usize),
    #[error("enumeration exceeded {0} triangulations")]
    BudgetExceeded(usize),
}

/// Number of boundary marked points.
pub fn marked_points(ty: DynkinType) -> Result<u32, SurfaceError> {
    match ty.family() {
        Family::A => Ok(ty.rank() as u32 + 3),
        Family::D => Ok(ty.rank() as u32),
        Family::E => Err(SurfaceError::Unsupported(ty)),
    }
}

/// Every arc of the surface, sorted.
pub fn all_arcs(ty: DynkinType) -> Result<Vec<TaggedArc>, SurfaceError> {
    let m = marked_points(ty)?;
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            let a = TaggedArc::Peripheral(i, j);
            if is_arc(ty, m, a) {
                out.push(a);
            }
        }
        if ty.family() == Family::D {
            out.push(TaggedArc::Radius(i, Tag::Plain));
            out.push(TaggedArc::Radius(i, Tag::Notched));
        }
    }
    out.sort();
    Ok(out)
}

fn is_arc(ty: DynkinType, m: u32, a: TaggedArc) -> bool {
    match (ty.family(), a) {
        (Family::A, TaggedArc::Peripheral(i, j)) => i >= 1 && j <= m && i + 2 <= j && !(i == 1 && j == m),
        (Family::D, TaggedArc::Peripheral(i, j)) => (1..=m).contains(&i) && (1..=m).contains(&j) && i != j && cw(m, i, j) != 1,
        (Family::D, TaggedArc::Radius(x, _)) => (1..=m).contains(&x),
        _ => false,
    }
}

/// Clockwise distance from i to j among m points.
fn cw(m: u32, i: u32, j: u32) -> u32 {
    (j + m - i) % m
}

/// Boundary segments k → k+1 covered by the clockwise path i → j, as a bitmask.
fn segments(m: u32, i: u32, j: u32) -> u128 {
    let mut mask = 0u128;
    let mut k = i;
    while k != j {
        mask |= 1 << (k - 1);
        k = k % m + 1;
    }
    mask
}

/// Strictly inside the clockwise path from i to j.
fn strictly_inside(m: u32, i: u32, j: u32, x: u32) -> bool {
    let d = cw(m, i, x);
    d > 0 && d < cw(m, i, j)
}

/// Non-crossing test; an arc is compatible with itself.
pub fn compatible(ty: DynkinType, a: TaggedArc, b: TaggedArc) -> Result<bool, SurfaceError> {
    let m = marked_points(ty)?;
    for x in [a, b] {
        if !is_arc(ty, m, x) {
            return Err(SurfaceError::InvalidArc(x, ty));
        }
    }
    if a == b {
        return Ok(true);
    }
    Ok(match (ty.family(), a, b) {
        (Family::A, TaggedArc::Peripheral(i, j), TaggedArc::Peripheral(k, l)) => !((i < k && k < j && j < l) || (k < i && i < l && l < j)),
        (_, TaggedArc::Peripheral(i, j), TaggedArc::Peripheral(k, l)) => {
            let (s, t) = (segments(m, i, j), segments(m, k, l));
            s & t == 0 || s & t == s || s & t == t
        }
        (_, TaggedArc::Radius(x, _), TaggedArc::Peripheral(i, j)) | (_, TaggedArc::Peripheral(i, j), TaggedArc::Radius(x, _)) => !strictly_inside(m, i, j, x),
        (_, TaggedArc::Radius(x, s), TaggedArc::Radius(y, t)) => x == y || s == t,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    ty: DynkinType,
    /// Arc k corresponds to quiver vertex k + 1.
    arcs: Vec<TaggedArc>,
}

impl Triangulation {
    pub fn new(ty: DynkinType, arcs: Vec<TaggedArc>) -> Result<Triangulation, SurfaceError> {
        let m = marked_points(ty)?;
        if arcs.len() != ty.rank() {
            return Err(SurfaceError::WrongArcCount { ty, expected: ty.rank(), got: arcs.len() });
        }
        let arcs: Vec<TaggedArc> = arcs.into_iter().map(|a| normalize(ty, a)).collect();
        for (k, &a) in arcs.iter().enumerate() {
            if !is_arc(ty, m, a) {
                return Err(SurfaceError::InvalidArc(a, ty));
            }
            for &b in &arcs[..k] {
                if a == b {
                    return Err(SurfaceError::DuplicateArc(a));
                }
                if !compatible(ty, a, b)? {
                    return Err(SurfaceError::Incompatible(b, a));
                }
            }
        }
        // rank many pairwise compatible arcs are automatically maximal
        Ok(Triangulation { ty, arcs })
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.ty
    }

    pub fn arcs(&self) -> &[TaggedArc] {
        &self.arcs
    }

    pub fn arc_set(&self) -> BTreeSet<TaggedArc> {
        self.arcs.iter().copied().collect()
    }

    pub fn index_of(&self, a: TaggedArc) -> Option<usize> {
        let a = normalize(self.ty, a);
        self.arcs.iter().position(|&b| b == a)
    }
}

fn normalize(ty: DynkinType, a: TaggedArc) -> TaggedArc {
    match (ty.family(), a) {
        (Family::A, TaggedArc::Peripheral(i, j)) if i > j => TaggedArc::Peripheral(j, i),
        _ => a,
    }
}

/// Type A: the fan of diagonals (1, i+2). Type D: the fan of peripheral arcs
/// (1, i+2) for i ≤ n−3, then (1, n) and the plain and notched radii at 1.
pub fn initial_triangulation(ty: DynkinType) -> Result<Triangulation, SurfaceError> {
    let n = ty.rank() as u32;
    let arcs = match ty.family() {
        Family::A => (1..=n).map(|i| TaggedArc::Peripheral(1, i + 2)).collect(),
        Family::D => {
            let mut v: Vec<TaggedArc> = (1..=n - 3).map(|i| TaggedArc::Peripheral(1, i + 2)).collect();
            v.push(TaggedArc::Peripheral(1, n));
            v.push(TaggedArc::Radius(1, Tag::Plain));
            v.push(TaggedArc::Radius(1, Tag::Notched));
            v
        }
        Family::E => return Err(SurfaceError::Unsupported(ty)),
    };
    Triangulation::new(ty, arcs)
}

/// Replace arc `k` by the unique other arc compatible with the rest.
pub fn flip(t: &Triangulation, k: usize) -> Result<Triangulation, SurfaceError> {
    let old = *t.arcs.get(k).ok_or(SurfaceError::BadIndex(k))?;
    let mut found = Vec::new();
    for c in all_arcs(t.ty)? {
        if c == old || t.arcs.contains(&c) {
            continue;
        }
        let mut ok = true;
        for (j, &b) in t.arcs.iter().enumerate() {
            if j != k && !compatible(t.ty, b, c)? {
                ok = false;
                break;
            }
        }
        if ok {
            found.push(c);
        }
    }
    if found.len() != 1 {
        return Err(SurfaceError::FlipNotUnique(old, found.len()));
    }
    let mut arcs = t.arcs.clone();
    arcs[k] = found[0];
    Ok(Triangulation { ty: t.ty, arcs })
}

pub fn flip_arc(t: &Triangulation, a: TaggedArc) -> Result<Triangulation, SurfaceError> {
    let k = t.index_of(a).ok_or(SurfaceError::InvalidArc(a, t.ty))?;
    flip(t, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Item {
    Arc(usize),
    /// boundary segment v → v+1
    Boundary(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    Left,
    Right,
}

/// Items at each boundary vertex in counterclockwise order, as slots of
/// (angular key, item, whether the vertex is the item's start).
fn corners_at(t: &Triangulation, v: u32, bundle_radii: bool) -> Vec<(u32, Item, bool)> {
    let m = marked_points(t.ty).expect("surface type");
    let mut items = Vec::new();
    let prev = if v == 1 { m } else { v - 1 };
    let next = v % m + 1;
    match t.ty.family() {
        Family::A => {
            items.push(((v + m - prev) % m, Item::Boundary(prev), false));
            items.push(((v + m - next) % m, Item::Boundary(v), true));
            for (k, &a) in t.arcs.iter().enumerate() {
                if let TaggedArc::Peripheral(i, j) = a {
                    if i == v {
                        items.push(((v + m - j) % m, Item::Arc(k), true));
                    } else if j == v {
                        items.push(((v + m - i) % m, Item::Arc(k), false));
                    }
                }
            }
        }
        _ => {
            items.push((0, Item::Boundary(prev), false));
            items.push((4 * m, Item::Boundary(v), true));
            for (k, &a) in t.arcs.iter().enumerate() {
                match a {
                    TaggedArc::Peripheral(i, j) if i == v => items.push((2 * (2 * m - cw(m, v, j)), Item::Arc(k), true)),
                    TaggedArc::Peripheral(i, j) if j == v => items.push((2 * cw(m, i, v), Item::Arc(k), false)),
                    TaggedArc::Radius(x, tag) if x == v => {
                        let key = if bundle_radii || tag == Tag::Plain { 2 * m } else { 2 * m + 1 };
                        items.push((key, Item::Arc(k), true));
                    }
                    _ => {}
                }
            }
        }
    }
    items.sort();
    items
}

/// Radii in counterclockwise order around the puncture.
fn radii_around_puncture(t: &Triangulation) -> Vec<(usize, u32)> {
    let mut r: Vec<(usize, u32, Tag)> = t.arcs.iter().enumerate().filter_map(|(k, a)| if let TaggedArc::Radius(x, tag) = *a { Some((k, x, tag)) } else { None }).collect();
    r.sort_by(|a, b| b.1.cmp(&a.1).then(a.2.cmp(&b.2)));
    r.into_iter().map(|(k, x, _)| (k, x)).collect()
}

/// The quiver of a triangulation on vertices 1..=rank: one arrow α → β for
/// each corner where β follows α counterclockwise, with opposite arrows cancelled.
pub fn quiver_of(t: &Triangulation) -> Quiver {
    let n = t.arcs.len();
    let m = marked_points(t.ty).expect("surface type");
    let mut b = vec![vec![0i64; n]; n];
    let mut add = |x: usize, y: usize| {
        b[x][y] += 1;
        b[y][x] -= 1;
    };
    for v in 1..=m {
        let items = corners_at(t, v, true);
        // group equal keys into slots
        let mut slots: Vec<Vec<Item>> = Vec::new();
        let mut last_key = None;
        for &(key, item, _) in &items {
            if last_key == Some(key) {
                slots.last_mut().unwrap().push(item);
            } else {
                slots.push(vec![item]);
                last_key = Some(key);
            }
        }
        for w in slots.windows(2) {
            for &x in &w[0] {
                for &y in &w[1] {
                    if let (Item::Arc(x), Item::Arc(y)) = (x, y) {
                        add(x, y);
                    }
                }
            }
        }
    }
    let radii = radii_around_puncture(t);
    let distinct: BTreeSet<u32> = radii.iter().map(|r| r.1).collect();
    if distinct.len() >= 2 {
        for idx in 0..radii.len() {
            let (x, y) = (radii[idx].0, radii[(idx + 1) % radii.len()].0);
            add(x, y);
        }
    }
    let mut arrows = Vec::new();
    for (x, row) in b.iter().enumerate() {
        for (y, &c) in row.iter().enumerate() {
            for _ in 0..c.max(0) {
                arrows.push((x as Vertex + 1, y as Vertex + 1));
            }
        }
    }
    Quiver::new(1..=n as Vertex, arrows).expect("corner sums are antisymmetric")
}

/// Faces of the triangulation as vertices, arcs as edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidGraph {
    pub faces: usize,
    /// `edges[k]` joins the two faces on either side of arc k.
    pub edges: Vec<(usize, usize)>,
}

impl BraidGraph {
    /// Connected and without cycles (counting parallel edges as a cycle).
    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.faces {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.faces).collect();
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn braid_graph(t: &Triangulation) -> BraidGraph {
    let m = marked_points(t.ty).expect("surface type");
    let mut ids: BTreeMap<(Item, Side), usize> = BTreeMap::new();
    let mut parent: Vec<usize> = Vec::new();
    let node = |key: (Item, Side), ids: &mut BTreeMap<(Item, Side), usize>, parent: &mut Vec<usize>| -> usize {
        *ids.entry(key).or_insert_with(|| {
            parent.push(parent.len());
            parent.len() - 1
        })
    };
    let union = |a: usize, b: usize, parent: &mut Vec<usize>| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        parent[ra] = rb;
    };
    for v in 1..=m {
        let items = corners_at(t, v, false);
        for w in items.windows(2) {
            let (_, a, a_start) = w[0];
            let (_, b, b_start) = w[1];
            let sa = if a_start { Side::Left } else { Side::Right };
            let sb = if b_start { Side::Right } else { Side::Left };
            let x = node((a, sa), &mut ids, &mut parent);
            let y = node((b, sb), &mut ids, &mut parent);
            union(x, y, &mut parent);
        }
    }
    // puncture corners; radii end at the puncture
    let radii = radii_around_puncture(t);
    if radii.len() >= 2 {
        for idx in 0..radii.len() {
            let (a, b) = (radii[idx].0, radii[(idx + 1) % radii.len()].0);
            let x = node((Item::Arc(a), Side::Right), &mut ids, &mut parent);
            let y = node((Item::Arc(b), Side::Left), &mut ids, &mut parent);
            union(x, y, &mut parent);
        }
    }
    let mut face_of: BTreeMap<usize, usize> = BTreeMap::new();
    let face = |n: usize, parent: &mut Vec<usize>, face_of: &mut BTreeMap<usize, usize>| {
        let r = find(parent, n);
        let next = face_of.len();
        *face_of.entry(r).or_insert(next)
    };
    let keys: Vec<((Item, Side), usize)> = ids.iter().map(|(k, v)| (*k, *v)).collect();
    for (_, n) in &keys {
        face(*n, &mut parent, &mut face_of);
    }
    let edges = (0..t.arcs.len())
        .map(|k| {
            let l = ids[&(Item::Arc(k), Side::Left)];
            let r = ids[&(Item::Arc(k), Side::Right)];
            (face(l, &mut parent, &mut face_of), face(r, &mut parent, &mut face_of))
        })
        .collect();
    BraidGraph { faces: face_of.len(), edges }
}

/// Closure under flips from the initial triangulation, as arc sets.
pub fn enumerate_triangulations(ty: DynkinType, budget: usize) -> Result<Vec<BTreeSet<TaggedArc>>, SurfaceError> {
    let start = initial_triangulation(ty)?;
    let mut seen: BTreeSet<BTreeSet<TaggedArc>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.arc_set());
    queue.push_back(start);
    while let Some(t) = queue.pop_front() {
        for k in 0..t.arcs.len() {
            let f = flip(&t, k)?;
            if seen.insert(f.arc_set()) {
                if seen.len() > budget {
                    return Err(SurfaceError::BudgetExceeded(budget));
                }
                queue.push_back(f);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(n: u32, arrows: &[(u32, u32)]) -> Quiver {
        Quiver::new(1..=n, arrows.iter().copied()).unwrap()
    }

    #[test]
    fn arc_counts() {
        // diagonals of an (n+3)-gon and n² tagged arcs of the punctured n-gon
        assert_eq!(all_arcs(DynkinType::a(2)).unwrap().len(), 5);
        assert_eq!(all_arcs(DynkinType::d(4)).unwrap().len(), 16);
        assert_eq!(all_arcs(DynkinType::d(5)).unwrap().len(), 25);
        assert!(all_arcs(DynkinType::e(6)).is_err());
    }

    #[test]
    fn compatibility_rules() {
        let d = DynkinType::d(5);
        use TaggedArc::*;
        assert!(compatible(d, Peripheral(1, 4), Peripheral(2, 4)).unwrap());
        assert!(compatible(d, Peripheral(1, 3), Peripheral(3, 1)).unwrap());
        assert!(!compatible(d, Peripheral(1, 4), Peripheral(4, 2)).unwrap());
        assert!(compatible(d, Radius(2, Tag::Plain), Radius(2, Tag::Notched)).unwrap());
        assert!(!compatible(d, Radius(2, Tag::Plain), Radius(3, Tag::Notched)).unwrap());
        assert!(compatible(d, Radius(2, Tag::Plain), Radius(3, Tag::Plain)).unwrap());
        assert!(!compatible(d, Radius(2, Tag::Plain), Peripheral(1, 3)).unwrap());
        assert!(compatible(d, Radius(1, Tag::Plain), Peripheral(1, 3)).unwrap());
        assert!(compatible(d, Radius(4, Tag::Plain), Peripheral(1, 3)).unwrap());
        assert!(compatible(d, Peripheral(1, 2), Peripheral(1, 3)).is_err());
    }

    #[test]
    fn initial_quivers() {
        let a5 = initial_triangulation(DynkinType::a(5)).unwrap();
        assert_eq!(quiver_of(&a5), quiver(5, &[(2, 1), (3, 2), (4, 3), (5, 4)]));
        let d7 = initial_triangulation(DynkinType::d(7)).unwrap();
        assert_eq!(quiver_of(&d7), quiver(7, &[(2, 1), (3, 2), (4, 3), (5, 4), (6, 5), (7, 5)]));
    }

    #[test]
    fn initial_braid_graphs() {
        let a5 = braid_graph(&initial_triangulation(DynkinType::a(5)).unwrap());
        assert_eq!(a5.faces, 6);
        assert!(a5.is_tree());
        let d7 = braid_graph(&initial_triangulation(DynkinType::d(7)).unwrap());
        assert_eq!(d7.edges.len(), 7);
        assert_eq!(d7.faces, 7);
        // the two radii bound the same pair of faces
        assert_eq!({ let (a, b) = d7.edges[5]; (a.min(b), a.max(b)) }, { let (a, b) = d7.edges[6]; (a.min(b), a.max(b)) });
    }

    #[test]
    fn square_flip_swaps_diagonals() {
        let t = Triangulation::new(DynkinType::a(1), vec![TaggedArc::Peripheral(1, 3)]).unwrap();
        let f = flip(&t, 0).unwrap();
        assert_eq!(f.arcs(), &[TaggedArc::Peripheral(2, 4)]);
        assert_eq!(flip(&f, 0).unwrap(), t);
    }

    #[test]
    fn radius_flip_in_type_ii_piece() {
        // flipping the notched radius at 1 inside the punctured digon gives the
        // plain radius at the other end of the digon
        let d4 = initial_triangulation(DynkinType::d(4)).unwrap();
        let f = flip(&d4, 3).unwrap();
        assert_eq!(f.arcs()[3], TaggedArc::Radius(4, Tag::Plain));
        let g = flip(&d4, 2).unwrap();
        assert_eq!(g.arcs()[2], TaggedArc::Radius(4, Tag::Notched));
    }

    #[test]
    fn validation() {
        let d = DynkinType::d(4);
        use TaggedArc::*;
        assert!(matches!(Triangulation::new(d, vec![Peripheral(1, 3)]), Err(SurfaceError::WrongArcCount { .. })));
        let bad = vec![Peripheral(1, 3), Peripheral(2, 4), Radius(1, Tag::Plain), Radius(1, Tag::Notched)];
        assert!(matches!(Triangulation::new(d, bad), Err(SurfaceError::Incompatible(..))));
        assert!(initial_triangulation(DynkinType::e(6)).is_err());
    }
}
