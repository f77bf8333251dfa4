//! The homomorphisms φ_k : B_Q → B_{μ_k Q}, their inverses, and
//! standardization of B_Q to the Artin group of the Dynkin diagram.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::class::{find_dynkin_path, mutation_class, ClassError, ClassOptions, MutationClass};
use crate::dynkin::DynkinType;
use crate::quiver::{Quiver, QuiverError, Vertex};
use crate::word::{GroupHom, Word};

/// s_i ↦ t_k t_i t_k⁻¹ if i → k in Q, s_i ↦ t_i otherwise.
pub fn phi(q: &Quiver, k: Vertex) -> Result<GroupHom, QuiverError> {
    if !q.contains(k) {
        return Err(QuiverError::UnknownVertex(k));
    }
    let tk = Word::generator(k);
    let images = q
        .vertices()
        .iter()
        .map(|&i| {
            let ti = Word::generator(i);
            (i, if q.has_arrow(i, k) { ti.conjugate_by(&tk) } else { ti })
        })
        .collect();
    Ok(GroupHom::new(q.vertices().to_vec(), q.vertices().to_vec(), images).expect("same generator set"))
}

/// The inverse of `phi(q, k)`: t_i ↦ s_k⁻¹ s_i s_k if i → k in Q, t_i ↦ s_i otherwise.
pub fn phi_inverse(q: &Quiver, k: Vertex) -> Result<GroupHom, QuiverError> {
    if !q.contains(k) {
        return Err(QuiverError::UnknownVertex(k));
    }
    let sk_inv = Word::generator(k).inverse();
    let images = q
        .vertices()
        .iter()
        .map(|&i| {
            let si = Word::generator(i);
            (i, if q.has_arrow(i, k) { si.conjugate_by(&sk_inv) } else { si })
        })
        .collect();
    Ok(GroupHom::new(q.vertices().to_vec(), q.vertices().to_vec(), images).expect("same generator set"))
}

/// Mutate along `path` and compose the φ's: B_Q → B_{final quiver}.
pub fn transport(q: &Quiver, path: &[Vertex]) -> Result<(Quiver, GroupHom), QuiverError> {
    let mut cur = q.clone();
    let mut hom = GroupHom::identity(q.vertices());
    for &k in path {
        let step = phi(&cur, k)?;
        hom = step.compose(&hom).expect("generator sets agree along a path");
        cur = cur.mutate(k)?;
    }
    Ok((cur, hom))
}

/// An isomorphism from B_Q onto the Artin group of the Dynkin diagram, whose
/// generators use the standard numbering of [`DynkinType`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Standardization {
    pub ty: DynkinType,
    /// Mutations taking Q to a Dynkin-shaped quiver.
    pub path: Vec<Vertex>,
    pub hom: GroupHom,
}

/// Search outward from Q for a Dynkin-shaped quiver and transport along the path found.
pub fn standardize(q: &Quiver, opts: ClassOptions) -> Result<Standardization, ClassError> {
    let (path, end) = find_dynkin_path(q, opts)?;
    let (ty, map) = end.dynkin_shape().ok_or(ClassError::NotMutationDynkin)?;
    let (_, hom) = transport(q, &path)?;
    let hom = hom.rename_target(&map).expect("relabelling covers every vertex");
    Ok(Standardization { ty, path, hom })
}

/// Standardization through a precomputed class of the standard Dynkin quiver.
/// Each member carries the inverse transport B_member → B_Δ along its witness path.
#[derive(Clone, Debug)]
pub struct Standardizer {
    ty: DynkinType,
    class: MutationClass,
    back: Vec<GroupHom>,
}

impl Standardizer {
    pub fn new(ty: DynkinType, opts: ClassOptions) -> Result<Standardizer, ClassError> {
        let class = mutation_class(&Quiver::dynkin(ty), opts)?;
        Ok(Self::from_class(ty, class))
    }

    /// `class` must be the mutation class of `Quiver::dynkin(ty)`.
    pub fn from_class(ty: DynkinType, class: MutationClass) -> Standardizer {
        let seed = class.seed().clone();
        let back = class
            .members()
            .iter()
            .map(|m| {
                let mut quivers = Vec::with_capacity(m.path.len() + 1);
                quivers.push(seed.clone());
                for &k in &m.path {
                    let next = quivers.last().unwrap().mutate(k).expect("witness path is valid");
                    quivers.push(next);
                }
                let mut hom = GroupHom::identity(seed.vertices());
                for (j, &k) in m.path.iter().enumerate().rev() {
                    let step = phi_inverse(&quivers[j], k).expect("witness path is valid");
                    hom = step.compose(&hom).expect("same generators");
                }
                hom
            })
            .collect();
        Standardizer { ty, class, back }
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.ty
    }

    pub fn class(&self) -> &MutationClass {
        &self.class
    }

    pub fn standardize(&self, q: &Quiver) -> Result<Standardization, ClassError> {
        if q.rank() != self.ty.rank() {
            return Err(ClassError::NotMutationDynkin);
        }
        let (cf, order_q) = q.canonical_labelling();
        let idx = self.class.members().iter().position(|m| m.quiver.canonical_form() == cf);
        let idx = match idx {
            Some(i) => i,
            None => return Err(ClassError::NotMutationDynkin),
        };
        let member = &self.class.members()[idx];
        let (_, order_m) = member.quiver.canonical_labelling();
        // sigma: q → member, an isomorphism of labelled quivers
        let sigma: BTreeMap<Vertex, Vertex> = order_q.iter().zip(&order_m).map(|(&a, &b)| (a, b)).collect();
        let sigma_inv: BTreeMap<Vertex, Vertex> = sigma.iter().map(|(&a, &b)| (b, a)).collect();
        let to_member = GroupHom::identity(q.vertices()).rename_target(&sigma).expect("sigma is total");
        let hom = self.back[idx].compose(&to_member).expect("member generators");
        let path = member.path.iter().rev().map(|k| sigma_inv[k]).collect();
        Ok(Standardization { ty: self.ty, path, hom })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::GarsideSolver;
    use crate::presentation::presentation_of;

    fn w(l: &[i32]) -> Word {
        Word::from_letters(l)
    }

    #[test]
    fn phi_single_arrow() {
        let q = Quiver::new([1, 2], [(1, 2)]).unwrap();
        let h = phi(&q, 2).unwrap();
        assert_eq!(h.image(1).unwrap(), &w(&[2, 1, -2]));
        assert_eq!(h.image(2).unwrap(), &w(&[2]));
        assert_eq!(phi(&q, 1).unwrap(), GroupHom::identity(&[1, 2]));
        let hi = phi_inverse(&q, 2).unwrap();
        assert_eq!(hi.image(1).unwrap(), &w(&[-2, 1, 2]));
        assert_eq!(hi.compose(&h).unwrap(), GroupHom::identity(&[1, 2]));
        assert_eq!(h.compose(&hi).unwrap(), GroupHom::identity(&[1, 2]));
        assert!(phi(&q, 3).is_err());
    }

    #[test]
    fn phi_on_three_cycle() {
        let q = Quiver::new([1, 2, 3], [(1, 2), (2, 3), (3, 1)]).unwrap();
        let h = phi(&q, 1).unwrap();
        assert_eq!(h.image(3).unwrap(), &w(&[1, 3, -1]));
        assert_eq!(h.image(2).unwrap(), &w(&[2]));
    }

    #[test]
    fn double_step_is_conjugation() {
        let q = Quiver::dynkin(DynkinType::d(4));
        for k in 1..=4 {
            let (_, h) = transport(&q, &[k, k]).unwrap();
            let conj = GroupHom::conjugation(q.vertices(), &Word::generator(k));
            for &i in q.vertices() {
                if i == k || q.adjacent(i, k) {
                    assert_eq!(h.image(i), conj.image(i));
                } else {
                    // equal to the conjugate only modulo the commuting relator
                    assert_eq!(h.image(i).unwrap(), &Word::generator(i));
                }
            }
        }
        let (end, h) = transport(&q, &[]).unwrap();
        assert_eq!(end, q);
        assert_eq!(h, GroupHom::identity(q.vertices()));
    }

    #[test]
    fn standardize_three_cycle() {
        let q = Quiver::new([1, 2, 3], [(1, 2), (2, 3), (3, 1)]).unwrap();
        let s = standardize(&q, ClassOptions::default()).unwrap();
        assert_eq!(s.ty, DynkinType::a(3));
        assert_eq!(s.path.len(), 1);
        let g = GarsideSolver::new(s.ty);
        for r in presentation_of(&q).unwrap().relators {
            assert!(g.is_trivial(&s.hom.apply(&r.word).unwrap()).unwrap());
        }
        let d = Quiver::dynkin(DynkinType::a(4));
        let s = standardize(&d, ClassOptions::default()).unwrap();
        assert!(s.path.is_empty());
        assert_eq!(s.hom, GroupHom::identity(&[1, 2, 3, 4]));
    }

    #[test]
    fn standardizer_agrees_on_relators() {
        let st = Standardizer::new(DynkinType::d(4), ClassOptions::default()).unwrap();
        let g = GarsideSolver::new(DynkinType::d(4));
        let q = Quiver::new([1, 2, 3, 4], [(1, 3), (3, 4), (4, 2), (4, 1), (2, 3)]).unwrap();
        let s = st.standardize(&q).unwrap();
        assert_eq!(q.mutate_path(&s.path).unwrap().dynkin_shape().unwrap().0, DynkinType::d(4));
        for r in presentation_of(&q).unwrap().relators {
            assert!(g.is_trivial(&s.hom.apply(&r.word).unwrap()).unwrap());
        }
        // a generator is not sent to the identity
        assert!(!g.is_trivial(&s.hom.apply(&w(&[1])).unwrap()).unwrap());
        let a4 = Quiver::dynkin(DynkinType::a(4));
        assert!(st.standardize(&a4).is_err());
    }
}
