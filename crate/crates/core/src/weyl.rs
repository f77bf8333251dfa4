//! ADE Weyl groups as integer matrices on the root lattice.
//!
//! Elements act on coordinates in the simple-root basis; column j of the
//! matrix is the image of α_j. The inverse matrix is carried along so both
//! descent sets are cheap to read.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::dynkin::{DynkinType, TypeError};
use crate::quiver::Vertex;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    n: usize,
    mat: Vec<i32>,
    inv: Vec<i32>,
    length: usize,
}

/// Per-type tables: Cartan matrix, positive roots, longest element and the
/// diagram automorphism it induces.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    ty: DynkinType,
    n: usize,
    cartan: Vec<Vec<i32>>,
    neighbours: Vec<Vec<usize>>,
    positive_roots: Vec<Vec<i32>>,
    w0: WeylElement,
    tau: Vec<usize>,
}

fn identity_matrix(n: usize) -> Vec<i32> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn mat_mul(n: usize, a: &[i32], b: &[i32]) -> Vec<i32> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x != 0 {
                for j in 0..n {
                    c[i * n + j] += x * b[k * n + j];
                }
            }
        }
    }
    c
}

impl WeylElement {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Row-major matrix in the simple-root basis.
    pub fn matrix(&self) -> &[i32] {
        &self.mat
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        self.mat.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    fn column_negative(m: &[i32], n: usize, i: usize) -> bool {
        (0..n).any(|r| m[r * n + i] < 0)
    }

    /// Bitmask of right descents: bit i set iff ℓ(w s_{i+1}) < ℓ(w).
    pub fn right_descents(&self) -> u64 {
        (0..self.n).filter(|&i| Self::column_negative(&self.mat, self.n, i)).fold(0, |acc, i| acc | 1 << i)
    }

    /// Bitmask of left descents: bit i set iff ℓ(s_{i+1} w) < ℓ(w).
    pub fn left_descents(&self) -> u64 {
        (0..self.n).filter(|&i| Self::column_negative(&self.inv, self.n, i)).fold(0, |acc, i| acc | 1 << i)
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement { n: self.n, mat: self.inv.clone(), inv: self.mat.clone(), length: self.length }
    }

    /// Vertices i (1-based) in the right descent set.
    pub fn right_descent_set(&self) -> BTreeSet<Vertex> {
        mask_to_set(self.right_descents())
    }

    pub fn left_descent_set(&self) -> BTreeSet<Vertex> {
        mask_to_set(self.left_descents())
    }
}

fn mask_to_set(m: u64) -> BTreeSet<Vertex> {
    (0..64).filter(|i| m >> i & 1 == 1).map(|i| i as Vertex + 1).collect()
}

impl WeylGroup {
    pub fn new(ty: DynkinType) -> WeylGroup {
        let n = ty.rank();
        let cartan = ty.cartan();
        let neighbours = (0..n).map(|i| (0..n).filter(|&j| j != i && cartan[i][j] != 0).collect()).collect();
        let mut g = WeylGroup { ty, n, cartan, neighbours, positive_roots: Vec::new(), w0: WeylElement { n, mat: identity_matrix(n), inv: identity_matrix(n), length: 0 }, tau: (0..n).collect() };
        g.positive_roots = g.compute_positive_roots();
        let mut w = g.identity();
        loop {
            let d = w.right_descents();
            match (0..n).find(|i| d >> i & 1 == 0) {
                Some(i) => w = g.mul_simple_right(&w, i),
                None => break,
            }
        }
        // w0(α_i) = −α_{τ(i)}
        g.tau = (0..n).map(|i| (0..n).find(|&r| w.mat[r * n + i] == -1).expect("w0 maps simple roots to negative simple roots")).collect();
        g.w0 = w;
        g
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.positive_roots
    }

    fn compute_positive_roots(&self) -> Vec<Vec<i32>> {
        let n = self.n;
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                // s_i(β) = β − ⟨β, α_i^∨⟩ α_i
                let pair: i32 = (0..n).map(|j| self.cartan[i][j] * b[j]).sum();
                if pair == 0 {
                    continue;
                }
                let mut c = b.clone();
                c[i] -= pair;
                if c.iter().all(|&x| x >= 0) && seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement { n: self.n, mat: identity_matrix(self.n), inv: identity_matrix(self.n), length: 0 }
    }

    pub fn longest_element(&self) -> &WeylElement {
        &self.w0
    }

    /// Diagram automorphism induced by w0, on 0-based indices.
    pub fn tau_index(&self, i: usize) -> usize {
        self.tau[i]
    }

    pub fn tau(&self, i: Vertex) -> Vertex {
        self.tau[i as usize - 1] as Vertex + 1
    }

    fn check(&self, i: Vertex) -> Result<usize, TypeError> {
        if self.ty.is_vertex(i as i64) {
            Ok(i as usize - 1)
        } else {
            Err(TypeError::BadVertex { ty: self.ty, vertex: i as i64 })
        }
    }

    pub fn simple_reflection(&self, i: Vertex) -> Result<WeylElement, TypeError> {
        let i = self.check(i)?;
        Ok(self.mul_simple_right(&self.identity(), i))
    }

    // col_j ← col_j − C_ij col_i for j adjacent to i; col_i ← −col_i
    fn right_act(&self, m: &mut [i32], i: usize) {
        let n = self.n;
        for r in 0..n {
            let ci = m[r * n + i];
            if ci != 0 {
                for &j in &self.neighbours[i] {
                    m[r * n + j] += ci;
                }
                m[r * n + i] = -ci;
            }
        }
    }

    // row_i ← −row_i + Σ_{k adjacent to i} row_k
    fn left_act(&self, m: &mut [i32], i: usize) {
        let n = self.n;
        for c in 0..n {
            let mut v = -m[i * n + c];
            for &k in &self.neighbours[i] {
                v += m[k * n + c];
            }
            m[i * n + c] = v;
        }
    }

    /// w · s_{i+1} for a 0-based index i.
    pub fn mul_simple_right(&self, w: &WeylElement, i: usize) -> WeylElement {
        let desc = WeylElement::column_negative(&w.mat, self.n, i);
        let mut out = w.clone();
        self.right_act(&mut out.mat, i);
        self.left_act(&mut out.inv, i);
        out.length = if desc { w.length - 1 } else { w.length + 1 };
        out
    }

    /// s_{i+1} · w for a 0-based index i.
    pub fn mul_simple_left(&self, w: &WeylElement, i: usize) -> WeylElement {
        let desc = WeylElement::column_negative(&w.inv, self.n, i);
        let mut out = w.clone();
        self.left_act(&mut out.mat, i);
        self.right_act(&mut out.inv, i);
        out.length = if desc { w.length - 1 } else { w.length + 1 };
        out
    }

    pub fn mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let mat = mat_mul(self.n, &a.mat, &b.mat);
        let inv = mat_mul(self.n, &b.inv, &a.inv);
        let length = self.length_of_matrix(&mat);
        WeylElement { n: self.n, mat, inv, length }
    }

    /// Number of positive roots sent to negative roots.
    pub fn length_of_matrix(&self, mat: &[i32]) -> usize {
        let n = self.n;
        self.positive_roots
            .iter()
            .filter(|b| {
                // w(β) is a root, so one negative coordinate means negative
                (0..n).any(|r| (0..n).map(|c| mat[r * n + c] * b[c]).sum::<i32>() < 0)
            })
            .count()
    }

    /// Image of a word; inverse letters act like their generators since s_i² = 1.
    pub fn evaluate(&self, w: &Word) -> Result<WeylElement, TypeError> {
        let mut e = self.identity();
        for i in w.generators() {
            let i = self.check(i)?;
            e = self.mul_simple_right(&e, i);
        }
        Ok(e)
    }

    /// A reduced word, built by peeling right descents (lowest index first).
    pub fn reduced_word(&self, w: &WeylElement) -> Word {
        let mut letters = Vec::with_capacity(w.length);
        let mut cur = w.clone();
        while cur.length > 0 {
            let d = cur.right_descents();
            let i = d.trailing_zeros() as usize;
            letters.push(i as i32 + 1);
            cur = self.mul_simple_right(&cur, i);
        }
        letters.reverse();
        Word::from_letters(&letters)
    }

    /// w0 w w0
    pub fn twist(&self, w: &WeylElement) -> WeylElement {
        let mut out = self.identity();
        // conjugation by w0 sends s_i to s_{τ(i)}, so twist a reduced word
        for l in self.reduced_word(w).letters() {
            out = self.mul_simple_right(&out, self.tau[*l as usize - 1]);
        }
        out
    }

    /// Order of W by orbit–stabilizer along fundamental-weight orbits:
    /// |W_S| = |W_S · ω_s| · |W_{S∖{s}}| with s the largest vertex of S.
    pub fn group_order(&self) -> u128 {
        let mut order: u128 = 1;
        for top in (0..self.n).rev() {
            order *= self.orbit_size(top, top + 1) as u128;
        }
        order
    }

    // orbit of the fundamental weight ω_s under the parabolic subgroup on 0..limit
    fn orbit_size(&self, s: usize, limit: usize) -> usize {
        let n = self.n;
        let mut start = vec![0i32; n];
        start[s] = 1;
        let mut seen = BTreeMap::new();
        seen.insert(start.clone(), ());
        let mut queue = VecDeque::from([start]);
        while let Some(l) = queue.pop_front() {
            for i in 0..limit {
                if l[i] == 0 {
                    continue;
                }
                // weight coordinates: s_i(λ) = λ − λ_i α_i, α_i = row i of C
                let mut m = l.clone();
                let li = l[i];
                for (j, mj) in m.iter_mut().enumerate() {
                    *mj -= li * self.cartan[i][j];
                }
                if seen.insert(m.clone(), ()).is_none() {
                    queue.push_back(m);
                }
            }
        }
        seen.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflections_square_to_identity() {
        for t in [DynkinType::a(3), DynkinType::d(5), DynkinType::e(6)] {
            let g = WeylGroup::new(t);
            for i in 1..=t.rank() as Vertex {
                let s = g.simple_reflection(i).unwrap();
                assert_eq!(s.length(), 1);
                assert_eq!(g.mul(&s, &s), g.identity());
                assert_eq!(g.mul_simple_right(&s, i as usize - 1), g.identity());
            }
        }
    }

    #[test]
    fn a2_braid_relation_and_order() {
        let g = WeylGroup::new(DynkinType::a(2));
        let w = Word::from_letters(&[1, 2, 1, 2, 1, 2]);
        assert!(g.evaluate(&w).unwrap().is_identity());
        assert_eq!(g.evaluate(&Word::from_letters(&[1, 2, 1])).unwrap(), g.evaluate(&Word::from_letters(&[2, 1, 2])).unwrap());
        assert_eq!(g.group_order(), 6);
    }

    #[test]
    fn longest_element_lengths() {
        // lengths against the positive-root count formulas
        for (t, l) in [(DynkinType::a(1), 1), (DynkinType::a(3), 6), (DynkinType::d(4), 12), (DynkinType::e(6), 36), (DynkinType::e(7), 63), (DynkinType::e(8), 120)] {
            let g = WeylGroup::new(t);
            assert_eq!(g.longest_element().length(), l, "{t}");
            assert_eq!(g.positive_roots().len(), l, "{t}");
            let all = (1u64 << t.rank()) - 1;
            assert_eq!(g.longest_element().right_descents(), all);
            assert_eq!(g.longest_element().left_descents(), all);
        }
    }

    #[test]
    fn descents_of_s1() {
        let g = WeylGroup::new(DynkinType::a(2));
        assert_eq!(g.identity().right_descents(), 0);
        let s1 = g.simple_reflection(1).unwrap();
        assert_eq!(s1.right_descent_set().into_iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn tau_is_the_diagram_flip() {
        let a4 = WeylGroup::new(DynkinType::a(4));
        assert_eq!((1..=4).map(|i| a4.tau(i)).collect::<Vec<_>>(), vec![4, 3, 2, 1]);
        let d5 = WeylGroup::new(DynkinType::d(5));
        assert_eq!((1..=5).map(|i| d5.tau(i)).collect::<Vec<_>>(), vec![2, 1, 3, 4, 5]);
        let d4 = WeylGroup::new(DynkinType::d(4));
        assert_eq!((1..=4).map(|i| d4.tau(i)).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        let e6 = WeylGroup::new(DynkinType::e(6));
        assert_eq!((1..=6).map(|i| e6.tau(i)).collect::<Vec<_>>(), vec![6, 2, 5, 4, 3, 1]);
        let e7 = WeylGroup::new(DynkinType::e(7));
        assert!((1..=7).all(|i| e7.tau(i) == i));
    }

    #[test]
    fn twist_matches_conjugation() {
        let g = WeylGroup::new(DynkinType::e(6));
        let w = g.evaluate(&Word::from_letters(&[1, 3, 4, 2, 5])).unwrap();
        let w0 = g.longest_element();
        assert_eq!(g.twist(&w), g.mul(&g.mul(w0, &w), w0));
    }

    #[test]
    fn reduced_word_evaluates_back() {
        let g = WeylGroup::new(DynkinType::d(5));
        let w = g.evaluate(&Word::from_letters(&[1, 2, 3, 1, 4, 5, 3, 2, 2, 4])).unwrap();
        let r = g.reduced_word(&w);
        assert_eq!(r.len(), w.length());
        assert_eq!(g.evaluate(&r).unwrap(), w);
        assert_eq!(g.length_of_matrix(w.matrix()), w.length());
    }

    #[test]
    fn bad_generator() {
        let g = WeylGroup::new(DynkinType::a(2));
        assert!(g.evaluate(&Word::from_letters(&[3])).is_err());
        assert!(g.simple_reflection(0).is_err());
    }
}
