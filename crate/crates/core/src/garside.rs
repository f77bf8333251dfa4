//! Left-weighted Garside normal forms in the Artin braid groups of ADE type.
//!
//! Simple elements are the positive lifts of Weyl group elements, and the
//! Garside element Δ lifts the longest element w0.

use alloc::vec::Vec;

use crate::dynkin::{DynkinType, TypeError};
use crate::weyl::{WeylElement, WeylGroup};
use crate::word::{Letter, Word};

/// Δ^p · x_1 ⋯ x_l with every x_k a proper nontrivial simple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GarsideNF {
    pub delta_power: i64,
    pub factors: Vec<WeylElement>,
}

impl GarsideNF {
    pub fn is_trivial(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct GarsideSolver {
    group: WeylGroup,
    /// w0 s_i for each 0-based i
    complements: Vec<WeylElement>,
    simples: Vec<WeylElement>,
}

impl GarsideSolver {
    pub fn new(ty: DynkinType) -> GarsideSolver {
        let group = WeylGroup::new(ty);
        let n = ty.rank();
        let w0 = group.longest_element().clone();
        let complements = (0..n).map(|i| group.mul_simple_right(&w0, i)).collect();
        let simples = (0..n).map(|i| group.mul_simple_right(&group.identity(), i)).collect();
        GarsideSolver { group, complements, simples }
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.group.dynkin_type()
    }

    /// Δ as a positive word (a reduced word of w0).
    pub fn delta_word(&self) -> Word {
        self.group.reduced_word(self.group.longest_element())
    }

    pub fn normal_form(&self, w: &Word) -> Result<GarsideNF, TypeError> {
        let n = self.group.rank();
        let ty = self.group.dynkin_type();
        let mut p: i64 = 0;
        let mut factors: Vec<WeylElement> = Vec::new();
        for &l in w.letters() {
            let i = l.unsigned_abs() as usize;
            if i == 0 || i > n {
                return Err(TypeError::BadVertex { ty, vertex: l as i64 });
            }
            if l > 0 {
                self.append(&mut p, &mut factors, self.simples[i - 1].clone());
            } else {
                // s_i⁻¹ = Δ⁻¹ · (w0 s_i), and x Δ⁻¹ = Δ⁻¹ τ(x)
                p -= 1;
                for f in factors.iter_mut() {
                    *f = self.group.twist(f);
                }
                self.append(&mut p, &mut factors, self.complements[i - 1].clone());
            }
        }
        Ok(GarsideNF { delta_power: p, factors })
    }

    fn append(&self, p: &mut i64, factors: &mut Vec<WeylElement>, x: WeylElement) {
        factors.push(x);
        loop {
            let mut changed = false;
            for k in (0..factors.len() - 1).rev() {
                let (left, right) = factors.split_at_mut(k + 1);
                changed |= self.repair(&mut left[k], &mut right[0]);
            }
            if !changed {
                break;
            }
        }
        let full = self.group.longest_element().length();
        let lead = factors.iter().take_while(|f| f.length() == full).count();
        *p += lead as i64;
        factors.drain(..lead);
        while factors.last().is_some_and(|f| f.is_identity()) {
            factors.pop();
        }
    }

    // Move simples from the front of b to the back of a until the pair is left-weighted.
    fn repair(&self, a: &mut WeylElement, b: &mut WeylElement) -> bool {
        let mut changed = false;
        loop {
            let bad = b.left_descents() & !a.right_descents();
            if bad == 0 {
                return changed;
            }
            let i = bad.trailing_zeros() as usize;
            *a = self.group.mul_simple_right(a, i);
            *b = self.group.mul_simple_left(b, i);
            changed = true;
        }
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool, TypeError> {
        Ok(self.normal_form(w)?.is_trivial())
    }

    pub fn equal(&self, w1: &Word, w2: &Word) -> Result<bool, TypeError> {
        Ok(self.normal_form(w1)? == self.normal_form(w2)?)
    }

    /// True if every adjacent factor pair (a, b) has left descents of b
    /// contained in the right descents of a, and no factor is e or w0.
    pub fn is_left_weighted(&self, nf: &GarsideNF) -> bool {
        let full = self.group.longest_element().length();
        nf.factors.iter().all(|f| f.length() > 0 && f.length() < full) && nf.factors.windows(2).all(|p| p[1].left_descents() & !p[0].right_descents() == 0)
    }

    /// A word representing the normal form: Δ^p followed by reduced words of the factors.
    pub fn to_word(&self, nf: &GarsideNF) -> Word {
        let d = self.delta_word();
        let mut w = d.pow(nf.delta_power as i32);
        for f in &nf.factors {
            w = w.concat(&self.group.reduced_word(f));
        }
        w
    }

    /// Reduced words of the factors, for display.
    pub fn factor_words(&self, nf: &GarsideNF) -> Vec<Vec<Letter>> {
        nf.factors.iter().map(|f| self.group.reduced_word(f).letters().to_vec()).collect()
    }
}
