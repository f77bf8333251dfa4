//! The graded quiver and differential attached to a quiver with potential,
//! the hom-dimension table between simples, the Euler form, and the
//! transvections on K₀ that decategorify the spherical twists.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Rational64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::mutation_iso::phi;
use crate::presentation::presentation_of;
use crate::qp::{cyclic_derivative, ArrowId, Qp};
use crate::quiver::{Quiver, QuiverError, Vertex};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GinzburgError {
    #[error("the quiver with potential is not reduced")]
    NotReduced,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Generators of the graded quiver: a (degree 0), a* (degree −1), t_i (degree −2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Arrow(ArrowId),
    Star(ArrowId),
    Loop(Vertex),
}

impl Gen {
    pub fn degree(self) -> i32 {
        match self {
            Gen::Arrow(_) => 0,
            Gen::Star(_) => -1,
            Gen::Loop(_) => -2,
        }
    }
}

pub type GPath = Vec<Gen>;
pub type GSum = BTreeMap<GPath, Rational64>;

fn add(map: &mut GSum, p: GPath, c: Rational64) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(p.clone()).or_insert_with(Rational64::zero);
    *e += c;
    if e.is_zero() {
        map.remove(&p);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinzburgPresentation {
    pub qp: Qp,
    /// d on generators; generators with d = 0 are omitted.
    pub differential: BTreeMap<Gen, GSum>,
}

pub fn ginzburg_presentation(qp: &Qp) -> Result<GinzburgPresentation, GinzburgError> {
    let reduced = qp.quiver().is_ok() && qp.potential().terms().keys().all(|k| k.len() >= 3);
    if !reduced {
        return Err(GinzburgError::NotReduced);
    }
    let mut differential = BTreeMap::new();
    for a in qp.arrows() {
        let d: GSum = cyclic_derivative(qp.potential().terms(), a.id).into_iter().map(|(p, c)| (p.into_iter().map(Gen::Arrow).collect(), c)).collect();
        if !d.is_empty() {
            differential.insert(Gen::Star(a.id), d);
        }
    }
    for &i in qp.vertices() {
        let mut d = GSum::new();
        for a in qp.arrows() {
            if a.source == i {
                add(&mut d, vec![Gen::Arrow(a.id), Gen::Star(a.id)], Rational64::one());
            }
            if a.target == i {
                add(&mut d, vec![Gen::Star(a.id), Gen::Arrow(a.id)], -Rational64::one());
            }
        }
        if !d.is_empty() {
            differential.insert(Gen::Loop(i), d);
        }
    }
    Ok(GinzburgPresentation { qp: qp.clone(), differential })
}

impl GinzburgPresentation {
    pub fn generators(&self) -> Vec<Gen> {
        let mut g: Vec<Gen> = self.qp.arrows().flat_map(|a| [Gen::Arrow(a.id), Gen::Star(a.id)]).collect();
        g.extend(self.qp.vertices().iter().map(|&i| Gen::Loop(i)));
        g
    }

    pub fn d_gen(&self, g: Gen) -> GSum {
        self.differential.get(&g).cloned().unwrap_or_default()
    }

    /// d extended by the graded Leibniz rule d(xy) = d(x) y + (−1)^|x| x d(y).
    pub fn d(&self, s: &GSum) -> GSum {
        let mut out = GSum::new();
        for (p, &c) in s {
            let mut deg = 0;
            for (k, &g) in p.iter().enumerate() {
                let sign = if deg % 2 == 0 { c } else { -c };
                for (q, &qc) in &self.d_gen(g) {
                    let mut r = p[..k].to_vec();
                    r.extend(q);
                    r.extend(&p[k + 1..]);
                    add(&mut out, r, sign * qc);
                }
                deg += g.degree();
            }
        }
        out
    }

    /// Generators on which d² does not vanish.
    pub fn d_squared_failures(&self) -> Vec<Gen> {
        self.generators().into_iter().filter(|&g| !self.d(&self.d_gen(g)).is_empty()).collect()
    }

    pub fn name(&self, g: Gen) -> String {
        let arrow = |id: ArrowId| self.qp.arrow(id).map(|a| a.name.clone()).unwrap_or_default();
        match g {
            Gen::Arrow(id) => arrow(id),
            Gen::Star(id) => alloc::format!("{}^", arrow(id)),
            Gen::Loop(i) => alloc::format!("t{i}"),
        }
    }
}

/// dim Hom(S_i, S_j[n]) for n = 0..3.
pub fn hom_dims(q: &Quiver, i: Vertex, j: Vertex) -> Result<[usize; 4], QuiverError> {
    for v in [i, j] {
        if !q.contains(v) {
            return Err(QuiverError::UnknownVertex(v));
        }
    }
    let delta = usize::from(i == j);
    Ok([delta, q.multiplicity(i, j), q.multiplicity(j, i), delta])
}

/// χ_ij = Σ_n (−1)ⁿ dim Hom(S_i, S_j[n]) = #(j→i) − #(i→j), indexed by sorted vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerForm {
    pub vertices: Vec<Vertex>,
    pub matrix: Vec<Vec<i64>>,
}

pub fn euler_form(q: &Quiver) -> EulerForm {
    let v = q.vertices();
    let matrix = v
        .iter()
        .map(|&i| {
            v.iter()
                .map(|&j| {
                    let d = hom_dims(q, i, j).expect("own vertices");
                    d.iter().enumerate().map(|(n, &x)| if n % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
                })
                .collect()
        })
        .collect();
    EulerForm { vertices: v.to_vec(), matrix }
}

pub type Matrix = Vec<Vec<i64>>;

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect()).collect()
}

/// T_i(x) = x − χ(e_i, x) e_i: the identity with row i replaced by e_i − χ_i.
pub fn twist_matrix(q: &Quiver, i: Vertex) -> Result<Matrix, QuiverError> {
    twist(q, i, false)
}

/// T_i⁻¹(x) = x + χ(e_i, x) e_i.
pub fn twist_matrix_inverse(q: &Quiver, i: Vertex) -> Result<Matrix, QuiverError> {
    twist(q, i, true)
}

fn twist(q: &Quiver, i: Vertex, inverse: bool) -> Result<Matrix, QuiverError> {
    let idx = q.vertices().iter().position(|&v| v == i).ok_or(QuiverError::UnknownVertex(i))?;
    let chi = euler_form(q);
    let mut m = identity_matrix(q.rank());
    for (j, x) in m[idx].iter_mut().enumerate() {
        let c = chi.matrix[idx][j];
        *x += if inverse { c } else { -c };
    }
    Ok(m)
}

/// ρ(w) for a word in the generators, given T_i and T_i⁻¹ per generator.
pub fn evaluate(mats: &BTreeMap<Vertex, (Matrix, Matrix)>, n: usize, w: &Word) -> Option<Matrix> {
    let mut m = identity_matrix(n);
    for &l in w.letters() {
        let (t, ti) = mats.get(&l.unsigned_abs())?;
        m = mat_mul(&m, if l > 0 { t } else { ti });
    }
    Some(m)
}

fn twists(q: &Quiver) -> BTreeMap<Vertex, (Matrix, Matrix)> {
    q.vertices().iter().map(|&i| (i, (twist_matrix(q, i).expect("vertex"), twist_matrix_inverse(q, i).expect("vertex")))).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct K0Report {
    pub relators_checked: usize,
    /// Relators whose image is not the identity matrix.
    pub failures: Vec<Word>,
}

impl K0Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_relators(q: &Quiver, mats: &BTreeMap<Vertex, (Matrix, Matrix)>) -> Result<K0Report, QuiverError> {
    let id = identity_matrix(q.rank());
    let mut report = K0Report::default();
    for r in presentation_of(q)?.relators {
        report.relators_checked += 1;
        if evaluate(mats, q.rank(), &r.word).as_ref() != Some(&id) {
            report.failures.push(r.word);
        }
    }
    Ok(report)
}

/// Every relator of B_Q evaluated on the transvections.
pub fn verify_relations_k0(q: &Quiver) -> Result<K0Report, QuiverError> {
    q.check_two_finite()?;
    check_relators(q, &twists(q))
}

/// The transvections of μ_k Q pulled back along φ_k, checked against the relators of B_Q.
pub fn verify_pullback_k0(q: &Quiver, k: Vertex) -> Result<K0Report, QuiverError> {
    q.check_two_finite()?;
    let target = q.mutate(k)?;
    let t = twists(&target);
    let n = q.rank();
    let hom = phi(q, k)?;
    let mats = q
        .vertices()
        .iter()
        .map(|&i| {
            let w = hom.image(i).expect("every generator has an image");
            let m = evaluate(&t, n, w).expect("target generators");
            let mi = evaluate(&t, n, &w.inverse()).expect("target generators");
            (i, (m, mi))
        })
        .collect();
    check_relators(q, &mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;

    #[test]
    fn three_cycle_differential() {
        let q = Quiver::new([1, 2, 3], [(1, 2), (2, 3), (3, 1)]).unwrap();
        let qp = Qp::sum_of_chordless_cycles(&q).unwrap();
        let g = ginzburg_presentation(&qp).unwrap();
        let a = qp.arrow_by_name("a1").unwrap().id;
        let b = qp.arrow_by_name("a2").unwrap().id;
        let c = qp.arrow_by_name("a3").unwrap().id;
        let da = g.d_gen(Gen::Star(a));
        assert_eq!(da.into_iter().collect::<Vec<_>>(), vec![(vec![Gen::Arrow(b), Gen::Arrow(c)], Rational64::one())]);
        assert!(g.d_squared_failures().is_empty());
        // d(t_1) = a1 a1* − a3* a3
        assert_eq!(g.d_gen(Gen::Loop(1)).len(), 2);
    }

    #[test]
    fn acyclic_differential() {
        let qp = Qp::from_quiver(&Quiver::dynkin(DynkinType::a(2)));
        let g = ginzburg_presentation(&qp).unwrap();
        assert!(g.d_gen(Gen::Star(1)).is_empty());
        let t1 = g.d_gen(Gen::Loop(1));
        assert_eq!(t1.into_iter().collect::<Vec<_>>(), vec![(vec![Gen::Arrow(1), Gen::Star(1)], Rational64::one())]);
        assert!(g.d_squared_failures().is_empty());
        let non_reduced = Qp::sum_of_chordless_cycles(&Quiver::new([1, 2, 3], [(1, 2), (2, 3), (3, 1)]).unwrap()).unwrap().premutate(3).unwrap();
        assert_eq!(ginzburg_presentation(&non_reduced), Err(GinzburgError::NotReduced));
    }

    #[test]
    fn hom_table() {
        let q = Quiver::dynkin(DynkinType::a(3));
        assert_eq!(hom_dims(&q, 2, 2).unwrap(), [1, 0, 0, 1]);
        assert_eq!(hom_dims(&q, 1, 2).unwrap(), [0, 1, 0, 0]);
        assert_eq!(hom_dims(&q, 2, 1).unwrap(), [0, 0, 1, 0]);
        assert_eq!(hom_dims(&q, 1, 3).unwrap(), [0, 0, 0, 0]);
        assert!(hom_dims(&q, 1, 9).is_err());
        let chi = euler_form(&Quiver::dynkin(DynkinType::a(2)));
        assert_eq!(chi.matrix, vec![vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn twists_braid_and_commute() {
        let q = Quiver::dynkin(DynkinType::a(3));
        let t: BTreeMap<_, _> = twists(&q);
        let m = |l: &[i32]| evaluate(&t, 3, &Word::from_letters(l)).unwrap();
        assert_eq!(m(&[1, 2, 1]), m(&[2, 1, 2]));
        assert_eq!(m(&[1, 3]), m(&[3, 1]));
        assert_ne!(m(&[1, 2]), m(&[2, 1]));
        assert_eq!(m(&[2, -2]), identity_matrix(3));
    }

    #[test]
    fn cycle_relator_holds() {
        let q = Quiver::new([1, 2, 3], [(1, 2), (2, 3), (3, 1)]).unwrap();
        let r = verify_relations_k0(&q).unwrap();
        assert!(r.ok());
        assert_eq!(r.relators_checked, 5);
        for k in 1..=3 {
            assert!(verify_pullback_k0(&q, k).unwrap().ok());
        }
    }
}
