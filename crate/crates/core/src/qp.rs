//! Quivers with potential: cyclic derivatives, premutation and reduction.
//!
//! Paths are sequences of arrow ids read left to right, so `ab` means a
//! followed by b. Potential terms are stored under the lexicographically
//! least rotation of their arrow ids.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Rational64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::quiver::{Quiver, QuiverError, Vertex};

pub type ArrowId = u32;
pub type Path = Vec<ArrowId>;
pub type PathSum = BTreeMap<Path, Rational64>;

/// Degree cap used by [`Qp::mutate`] beyond the number of vertices.
pub const CAP_SLACK: usize = 2;
const MAX_SUBSTITUTIONS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QpError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("arrow name {0} used twice")]
    DuplicateName(String),
    #[error("arrow {0} is a loop")]
    Loop(String),
    #[error("potential term is not a cycle: {0}")]
    NotACycle(String),
    #[error("vertex {0} lies on a 2-cycle")]
    TwoCycleAt(Vertex),
    #[error("2-cycle {0} {1} has no quadratic term and cannot be removed")]
    Unreducible(String, String),
    #[error("reduction did not converge below degree {0}")]
    NotConverged(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub id: ArrowId,
    pub name: String,
    pub source: Vertex,
    pub target: Vertex,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Potential {
    terms: BTreeMap<Path, Rational64>,
}

pub fn least_rotation(p: &[ArrowId]) -> Path {
    let n = p.len();
    (0..n).map(|r| p[r..].iter().chain(&p[..r]).copied().collect::<Path>()).min().unwrap_or_default()
}

fn add_term(map: &mut PathSum, p: Path, c: Rational64) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(p).or_insert_with(Rational64::zero);
    *e += c;
    if e.is_zero() {
        let k: Vec<Path> = map.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).collect();
        for k in k {
            map.remove(&k);
        }
    }
}

impl Potential {
    pub fn new() -> Potential {
        Potential::default()
    }

    /// Add `c` times the cycle `p` (any rotation).
    pub fn add(&mut self, p: &[ArrowId], c: Rational64) {
        add_term(&mut self.terms, least_rotation(p), c);
    }

    pub fn terms(&self) -> &BTreeMap<Path, Rational64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &[ArrowId]) -> Rational64 {
        self.terms.get(&least_rotation(p)).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|k| k.len()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qp {
    vertices: Vec<Vertex>,
    arrows: BTreeMap<ArrowId, Arrow>,
    potential: Potential,
}

impl Qp {
    pub fn new(vertices: Vec<Vertex>, arrows: Vec<Arrow>, potential: Potential) -> Result<Qp, QpError> {
        let q = Quiver::new(vertices.iter().copied(), [])?;
        let mut names = BTreeSet::new();
        let mut map = BTreeMap::new();
        for a in arrows {
            for v in [a.source, a.target] {
                if !q.contains(v) {
                    return Err(QuiverError::UnknownVertex(v).into());
                }
            }
            if a.source == a.target {
                return Err(QpError::Loop(a.name));
            }
            if !names.insert(a.name.clone()) {
                return Err(QpError::DuplicateName(a.name));
            }
            if map.insert(a.id, a.clone()).is_some() {
                return Err(QpError::DuplicateName(a.name));
            }
        }
        let qp = Qp { vertices: q.vertices().to_vec(), arrows: map, potential };
        for p in qp.potential.terms.keys() {
            qp.check_cycle(p)?;
        }
        Ok(qp)
    }

    fn check_cycle(&self, p: &[ArrowId]) -> Result<(), QpError> {
        let bad = || QpError::NotACycle(format!("{p:?}"));
        if p.is_empty() {
            return Err(bad());
        }
        for (k, id) in p.iter().enumerate() {
            let a = self.arrows.get(id).ok_or(QpError::UnknownArrow(format!("#{id}")))?;
            let b = &self.arrows[&p[(k + 1) % p.len()]];
            if a.target != b.source {
                return Err(bad());
            }
        }
        Ok(())
    }

    /// Arrows named a1, a2, … in sorted order, with zero potential.
    pub fn from_quiver(q: &Quiver) -> Qp {
        let arrows = q.arrows().iter().enumerate().map(|(k, &(s, t))| Arrow { id: k as ArrowId + 1, name: format!("a{}", k + 1), source: s, target: t }).collect();
        Qp::new(q.vertices().to_vec(), arrows, Potential::new()).expect("quiver arrows are valid")
    }

    /// The quiver with every chordless cycle at coefficient 1.
    pub fn sum_of_chordless_cycles(q: &Quiver) -> Result<Qp, QpError> {
        q.check_two_finite()?;
        let mut qp = Qp::from_quiver(q);
        for c in q.chordless_cycles() {
            let p = qp.cycle_arrows(&c.vertices).expect("oriented cycle of single arrows");
            qp.potential.add(&p, Rational64::one());
        }
        Ok(qp)
    }

    /// Arrow ids along an oriented vertex cycle, if each step has exactly one arrow.
    pub fn cycle_arrows(&self, cycle: &[Vertex]) -> Option<Path> {
        let n = cycle.len();
        (0..n)
            .map(|t| {
                let mut it = self.arrows.values().filter(|a| a.source == cycle[t] && a.target == cycle[(t + 1) % n]);
                match (it.next(), it.next()) {
                    (Some(a), None) => Some(a.id),
                    _ => None,
                }
            })
            .collect()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.values()
    }

    pub fn arrow(&self, id: ArrowId) -> Option<&Arrow> {
        self.arrows.get(&id)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<&Arrow> {
        self.arrows.values().find(|a| a.name == name)
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    /// The underlying quiver; fails if there are 2-cycles.
    pub fn quiver(&self) -> Result<Quiver, QuiverError> {
        Quiver::new(self.vertices.iter().copied(), self.arrows.values().map(|a| (a.source, a.target)))
    }

    pub fn path_names(&self, p: &[ArrowId]) -> Vec<String> {
        p.iter().map(|id| self.arrows[id].name.clone()).collect()
    }

    /// ∂_a W: for each occurrence of a in a term, the rest of the term read
    /// cyclically from just after a.
    pub fn cyclic_derivative(&self, a: ArrowId) -> Result<PathSum, QpError> {
        if !self.arrows.contains_key(&a) {
            return Err(QpError::UnknownArrow(format!("#{a}")));
        }
        Ok(cyclic_derivative(&self.potential.terms, a))
    }

    fn fresh_id(&self) -> ArrowId {
        self.arrows.keys().next_back().map_or(1, |m| m + 1)
    }

    fn fresh_name(&self, taken: &BTreeSet<String>, base: String) -> String {
        let mut name = base;
        while taken.contains(&name) || self.arrows.values().any(|a| a.name == name) {
            name.push('\'');
        }
        name
    }

    /// Non-reduced mutation at k. For a: i → k and b: k → j the composite
    /// [ba]: i → j replaces every ab in W, the arrows at k are reversed to
    /// a*: k → i and b*: j → k, and Σ [ba] b* a* is added.
    pub fn premutate(&self, k: Vertex) -> Result<Qp, QpError> {
        if !self.vertices.contains(&k) {
            return Err(QuiverError::UnknownVertex(k).into());
        }
        let ins: Vec<&Arrow> = self.arrows.values().filter(|a| a.target == k).collect();
        let outs: Vec<&Arrow> = self.arrows.values().filter(|a| a.source == k).collect();
        if ins.iter().any(|a| outs.iter().any(|b| b.target == a.source)) {
            return Err(QpError::TwoCycleAt(k));
        }
        let mut next = self.fresh_id();
        let mut taken = BTreeSet::new();
        let mut arrows: BTreeMap<ArrowId, Arrow> = self.arrows.iter().filter(|(_, a)| a.source != k && a.target != k).map(|(&i, a)| (i, a.clone())).collect();
        let mut star: BTreeMap<ArrowId, ArrowId> = BTreeMap::new();
        for a in ins.iter().chain(&outs) {
            let base = match a.name.strip_suffix('*') {
                Some(s) => String::from(s),
                None => format!("{}*", a.name),
            };
            let name = self.fresh_name(&taken, base);
            taken.insert(name.clone());
            arrows.insert(next, Arrow { id: next, name, source: a.target, target: a.source });
            star.insert(a.id, next);
            next += 1;
        }
        let mut composite: BTreeMap<(ArrowId, ArrowId), ArrowId> = BTreeMap::new();
        for a in &ins {
            for b in &outs {
                let name = self.fresh_name(&taken, format!("c{next}"));
                taken.insert(name.clone());
                arrows.insert(next, Arrow { id: next, name, source: a.source, target: b.target });
                composite.insert((a.id, b.id), next);
                next += 1;
            }
        }
        let mut potential = Potential::new();
        for (term, &c) in &self.potential.terms {
            let n = term.len();
            // start at an arrow not leaving k so no pair a b is split
            let start = (0..n).find(|&t| self.arrows[&term[t]].source != k).expect("a cycle through k also enters k");
            let mut out = Vec::with_capacity(n);
            let mut t = 0;
            while t < n {
                let id = term[(start + t) % n];
                if self.arrows[&id].target == k {
                    let nxt = term[(start + t + 1) % n];
                    out.push(composite[&(id, nxt)]);
                    t += 2;
                } else {
                    out.push(id);
                    t += 1;
                }
            }
            potential.add(&out, c);
        }
        for a in &ins {
            for b in &outs {
                potential.add(&[composite[&(a.id, b.id)], star[&b.id], star[&a.id]], Rational64::one());
            }
        }
        Ok(Qp { vertices: self.vertices.clone(), arrows, potential })
    }

    /// Remove 2-cycles by right equivalence. Terms longer than `cap` are
    /// discarded as they appear.
    pub fn reduce(&self, cap: usize) -> Result<Qp, QpError> {
        let mut qp = self.clone();
        truncate(&mut qp.potential.terms, cap);
        loop {
            let quad = qp.potential.terms.iter().find(|(k, _)| k.len() == 2).map(|(k, &c)| (k[0], k[1], c));
            let (u, v, lambda) = match quad {
                Some(x) => x,
                None => break,
            };
            qp.split_off(u, v, lambda, cap)?;
        }
        // leftover 2-cycles cannot be removed
        for a in qp.arrows.values() {
            if let Some(b) = qp.arrows.values().find(|b| b.source == a.target && b.target == a.source) {
                return Err(QpError::Unreducible(a.name.clone(), b.name.clone()));
            }
        }
        Ok(qp)
    }

    // W = λ u v + W1. Push u out of W1 by substitutions of v, then remove v
    // with one substitution of u, then delete both arrows.
    fn split_off(&mut self, u: ArrowId, v: ArrowId, lambda: Rational64, cap: usize) -> Result<(), QpError> {
        let uv = least_rotation(&[u, v]);
        let inv = Rational64::one() / lambda;
        let mut rounds = 0;
        loop {
            // X: for every other term containing u, the term read from just after its first u
            let mut x = PathSum::new();
            for (term, &c) in &self.potential.terms {
                if *term == uv {
                    continue;
                }
                if let Some(p) = term.iter().position(|&a| a == u) {
                    let rest: Path = term[p + 1..].iter().chain(&term[..p]).copied().collect();
                    add_term(&mut x, rest, c);
                }
            }
            if x.is_empty() {
                break;
            }
            rounds += 1;
            if rounds > MAX_SUBSTITUTIONS {
                return Err(QpError::NotConverged(cap));
            }
            // v ↦ v − λ⁻¹ X turns λ u v + u X into λ u v plus longer terms
            let mut image = PathSum::new();
            image.insert(vec![v], Rational64::one());
            for (p, c) in x {
                add_term(&mut image, p, -c * inv);
            }
            self.potential.terms = substitute(&self.potential.terms, v, &image, cap);
        }
        // now only λ u v contains u; collect the terms through v the same way
        let mut y = PathSum::new();
        let mut rest_terms = PathSum::new();
        for (term, &c) in &self.potential.terms {
            if *term == uv {
                continue;
            }
            match term.iter().position(|&a| a == v) {
                Some(p) => {
                    let rest: Path = term[p + 1..].iter().chain(&term[..p]).copied().collect();
                    add_term(&mut y, rest, c);
                }
                None => add_term(&mut rest_terms, term.clone(), c),
            }
        }
        // u ↦ u − λ⁻¹ Y cancels v Y exactly, and u appears nowhere else
        let _ = y;
        self.potential.terms = rest_terms;
        self.arrows.remove(&u);
        self.arrows.remove(&v);
        Ok(())
    }

    /// reduce ∘ premutate, with degree cap `rank + CAP_SLACK` (or the
    /// longest term, if longer).
    pub fn mutate(&self, k: Vertex) -> Result<Qp, QpError> {
        let cap = (self.vertices.len() + CAP_SLACK).max(self.potential.max_degree());
        self.premutate(k)?.reduce(cap)
    }

    /// Σ_a (a ∂_a W − ∂_a W a); identically zero for every potential.
    pub fn commutator_sum(&self) -> PathSum {
        let mut out = PathSum::new();
        for &a in self.arrows.keys() {
            for (p, &c) in &cyclic_derivative(&self.potential.terms, a) {
                let mut left = vec![a];
                left.extend(p);
                add_term(&mut out, left, c);
                let mut right = p.clone();
                right.push(a);
                add_term(&mut out, right, -c);
            }
        }
        out
    }
}

pub(crate) fn cyclic_derivative(terms: &BTreeMap<Path, Rational64>, a: ArrowId) -> PathSum {
    let mut out = PathSum::new();
    for (term, &c) in terms {
        for (p, _) in term.iter().enumerate().filter(|(_, &x)| x == a) {
            let rest: Path = term[p + 1..].iter().chain(&term[..p]).copied().collect();
            add_term(&mut out, rest, c);
        }
    }
    out
}

fn truncate(terms: &mut BTreeMap<Path, Rational64>, cap: usize) {
    terms.retain(|k, _| k.len() <= cap);
}

/// Replace every occurrence of arrow `v` by `image`, expand, and keep terms
/// of length at most `cap`.
fn substitute(terms: &BTreeMap<Path, Rational64>, v: ArrowId, image: &PathSum, cap: usize) -> BTreeMap<Path, Rational64> {
    let mut out = PathSum::new();
    for (term, &c) in terms {
        let mut partial: Vec<(Path, Rational64)> = vec![(Vec::new(), c)];
        for &a in term {
            if a == v {
                let mut next = Vec::new();
                for (p, pc) in &partial {
                    for (q, qc) in image {
                        if p.len() + q.len() <= cap {
                            let mut r = p.clone();
                            r.extend(q);
                            next.push((r, *pc * *qc));
                        }
                    }
                }
                partial = next;
            } else {
                for (p, _) in partial.iter_mut() {
                    p.push(a);
                }
                partial.retain(|(p, _)| p.len() <= cap);
            }
        }
        for (p, pc) in partial {
            add_term(&mut out, least_rotation(&p), pc);
        }
    }
    out
}

/// Outcome of [`is_canonical_form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalReport {
    /// Chordless cycles of the quiver with no term in the potential.
    pub missing: Vec<Vec<String>>,
    /// Terms that are not chordless cycles.
    pub extra: Vec<Vec<String>>,
    /// Arrow rescalings taking every coefficient to 1, if found.
    pub scalars: Option<BTreeMap<String, Rational64>>,
    pub error: Option<String>,
}

impl CanonicalReport {
    pub fn support_ok(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.error.is_none()
    }

    pub fn is_canonical(&self) -> bool {
        self.support_ok() && self.scalars.is_some()
    }
}

/// Is the potential the sum of chordless cycles up to rescaling arrows?
pub fn is_canonical_form(qp: &Qp) -> CanonicalReport {
    let mut report = CanonicalReport { missing: Vec::new(), extra: Vec::new(), scalars: None, error: None };
    let q = match qp.quiver().and_then(|q| q.check_two_finite().map(|_| q)) {
        Ok(q) => q,
        Err(e) => {
            report.error = Some(format!("{e}"));
            return report;
        }
    };
    let mut cycles: BTreeSet<Path> = BTreeSet::new();
    for c in q.chordless_cycles() {
        cycles.insert(least_rotation(&qp.cycle_arrows(&c.vertices).expect("single arrows")));
    }
    for c in &cycles {
        if !qp.potential.terms.contains_key(c) {
            report.missing.push(qp.path_names(c));
        }
    }
    for k in qp.potential.terms.keys() {
        if !cycles.contains(k) {
            report.extra.push(qp.path_names(k));
        }
    }
    if !report.support_ok() {
        return report;
    }
    // Peel cycles that own an arrow no other remaining cycle uses, then fix
    // that arrow's scalar last.
    let mut remaining: Vec<(Path, Rational64)> = qp.potential.terms.iter().map(|(k, &c)| (k.clone(), c)).collect();
    let mut order: Vec<(Path, Rational64, ArrowId)> = Vec::new();
    while !remaining.is_empty() {
        let pick = remaining.iter().enumerate().find_map(|(idx, (p, _))| {
            p.iter().find(|a| remaining.iter().enumerate().all(|(j, (r, _))| j == idx || !r.contains(a))).map(|&a| (idx, a))
        });
        match pick {
            Some((idx, a)) => {
                let (p, c) = remaining.remove(idx);
                order.push((p, c, a));
            }
            None => {
                report.error = Some(String::from("cycle system has no free arrow"));
                return report;
            }
        }
    }
    let mut mu: BTreeMap<ArrowId, Rational64> = BTreeMap::new();
    for (p, c, free) in order.iter().rev() {
        let mut prod = Rational64::one();
        for a in p.iter().filter(|a| *a != free) {
            prod *= *mu.entry(*a).or_insert_with(Rational64::one);
        }
        // c · Π μ = 1
        mu.insert(*free, Rational64::one() / (*c * prod));
    }
    let ok = qp.potential.terms.iter().all(|(p, &c)| p.iter().fold(c, |acc, a| acc * mu.get(a).copied().unwrap_or_else(Rational64::one)) == Rational64::one());
    if ok {
        report.scalars = Some(qp.arrows.values().map(|a| (a.name.clone(), mu.get(&a.id).copied().unwrap_or_else(Rational64::one))).collect());
    } else {
        report.error = Some(String::from("rescaling check failed"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn cycle3() -> Qp {
        let q = Quiver::new([1, 2, 3], [(1, 2), (2, 3), (3, 1)]).unwrap();
        Qp::sum_of_chordless_cycles(&q).unwrap()
    }

    #[test]
    fn derivative_of_three_cycle() {
        let qp = cycle3();
        let a = qp.arrow_by_name("a1").unwrap().id;
        let d = qp.cyclic_derivative(a).unwrap();
        let rest: Path = vec![qp.arrow_by_name("a2").unwrap().id, qp.arrow_by_name("a3").unwrap().id];
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![(rest, r(1))]);
        let zero = Qp::from_quiver(&Quiver::dynkin(crate::DynkinType::a(3)));
        assert!(zero.cyclic_derivative(1).unwrap().is_empty());
        assert!(qp.cyclic_derivative(99).is_err());
    }

    #[test]
    fn type_ii_derivative() {
        // a1 a2 c + b1 b2 c: ∂_c = a1 a2 + b1 b2
        let q = Quiver::new([1, 2, 3, 4], [(1, 3), (3, 4), (4, 2), (4, 1), (2, 3)]).unwrap();
        let qp = Qp::sum_of_chordless_cycles(&q).unwrap();
        assert_eq!(qp.potential().terms().len(), 2);
        let c = qp.arrows().find(|a| a.source == 3 && a.target == 4).unwrap().id;
        let d = qp.cyclic_derivative(c).unwrap();
        assert_eq!(d.len(), 2);
        for p in d.keys() {
            assert_eq!(p.len(), 2);
            assert_eq!(qp.arrow(p[0]).unwrap().source, 4);
            assert_eq!(qp.arrow(p[1]).unwrap().target, 3);
        }
    }

    #[test]
    fn premutate_path_at_middle() {
        let qp = Qp::from_quiver(&Quiver::dynkin(crate::DynkinType::a(3)));
        let p = qp.premutate(2).unwrap();
        assert_eq!(p.quiver().unwrap(), Quiver::new([1, 2, 3], [(2, 1), (3, 2), (1, 3)]).unwrap());
        assert_eq!(p.potential().terms().len(), 1);
        assert_eq!(p.potential().terms().values().next(), Some(&r(1)));
        let m = qp.mutate(2).unwrap();
        assert!(is_canonical_form(&m).is_canonical());
    }

    #[test]
    fn premutate_cycle_then_reduce() {
        let qp = cycle3();
        let p = qp.premutate(3).unwrap();
        assert!(p.potential().terms().keys().any(|k| k.len() == 2));
        assert!(p.quiver().is_err());
        let m = p.reduce(5).unwrap();
        assert_eq!(m.quiver().unwrap(), Quiver::new([1, 2, 3], [(3, 2), (1, 3)]).unwrap());
        assert!(m.potential().is_zero());
        // back again
        let back = m.mutate(3).unwrap();
        assert_eq!(back.quiver().unwrap(), qp.quiver().unwrap());
        assert!(is_canonical_form(&back).is_canonical());
    }

    #[test]
    fn canonical_form_examples() {
        let qp = cycle3();
        let rep = is_canonical_form(&qp);
        assert!(rep.is_canonical());
        assert!(rep.scalars.unwrap().values().all(|v| *v == r(1)));
        let mut neg = qp.clone();
        let key = neg.potential.terms.keys().next().unwrap().clone();
        neg.potential.terms.insert(key, r(-1));
        assert!(is_canonical_form(&neg).is_canonical());
        let zero = Qp::from_quiver(&qp.quiver().unwrap());
        let rep = is_canonical_form(&zero);
        assert!(!rep.is_canonical());
        assert_eq!(rep.missing.len(), 1);
    }

    #[test]
    fn commutator_sum_vanishes() {
        let q = Quiver::new([1, 2, 3, 4], [(1, 3), (3, 4), (4, 2), (4, 1), (2, 3)]).unwrap();
        let qp = Qp::sum_of_chordless_cycles(&q).unwrap();
        assert!(qp.commutator_sum().is_empty());
    }

    #[test]
    fn two_cycle_vertex_rejected() {
        let qp = cycle3().premutate(3).unwrap();
        // vertex 1 now lies on the 2-cycle between 1 and 2
        assert_eq!(qp.premutate(1), Err(QpError::TwoCycleAt(1)));
    }
}
