//! The presentation B_Q read off a mutation-Dynkin quiver, and its Coxeter quotient.

use alloc::vec::Vec;

use crate::quiver::{ChordlessCycle, Quiver, QuiverError, Vertex};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelatorKind {
    Commuting,
    Braid,
    Cycle { rotation: usize },
    Square,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub word: Word,
    pub kind: RelatorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Vertex>,
    pub relators: Vec<Relator>,
}

/// `s_{c_r} … s_{c_{r+n-1}} s_{c_r} … s_{c_{r+n-3}}` for an oriented cycle
/// c_0 → c_1 → … → c_{n-1} → c_0, indices mod n.
pub fn rotation_word(cycle: &[Vertex], r: usize) -> Word {
    let n = cycle.len();
    let letters: Vec<Letter> = (0..n).chain(0..n.saturating_sub(2)).map(|t| cycle[(r + t) % n] as Letter).collect();
    Word::from_letters(&letters)
}

/// The n − 1 relators L_r · L_{r+1}⁻¹, r = 0, …, n − 2.
pub fn cycle_relators(cycle: &ChordlessCycle) -> Vec<Relator> {
    let c = &cycle.vertices;
    (0..c.len() - 1)
        .map(|r| Relator { word: rotation_word(c, r).concat(&rotation_word(c, r + 1).inverse()), kind: RelatorKind::Cycle { rotation: r } })
        .collect()
}

fn checked_cycles(q: &Quiver) -> Result<Vec<ChordlessCycle>, QuiverError> {
    q.check_two_finite()?;
    Ok(q.chordless_cycles())
}

pub fn presentation_of(q: &Quiver) -> Result<Presentation, QuiverError> {
    let cycles = checked_cycles(q)?;
    let vs = q.vertices();
    let mut relators = Vec::new();
    for (a, &i) in vs.iter().enumerate() {
        for &j in &vs[a + 1..] {
            let (x, y) = (i as Letter, j as Letter);
            let r = if q.adjacent(i, j) {
                Relator { word: Word::from_letters(&[x, y, x, -y, -x, -y]), kind: RelatorKind::Braid }
            } else {
                Relator { word: Word::from_letters(&[x, y, -x, -y]), kind: RelatorKind::Commuting }
            };
            relators.push(r);
        }
    }
    for c in &cycles {
        relators.extend(cycle_relators(c));
    }
    Ok(Presentation { generators: vs.to_vec(), relators })
}

pub fn coxeter_presentation_of(q: &Quiver) -> Result<Presentation, QuiverError> {
    let mut p = presentation_of(q)?;
    for &i in q.vertices() {
        p.relators.push(Relator { word: Word::from_letters(&[i as Letter, i as Letter]), kind: RelatorKind::Square });
    }
    Ok(p)
}

/// `(s_{c_r} s_{c_{r+1}} … s_{c_{r+n-1}} s_{c_{r+n-2}} … s_{c_{r+1}})²` for every
/// chordless cycle and rotation r.
pub fn barot_marsh_relators(q: &Quiver) -> Result<Vec<Word>, QuiverError> {
    let mut out = Vec::new();
    for cyc in checked_cycles(q)? {
        let c = &cyc.vertices;
        let n = c.len();
        for r in 0..n {
            let at = |t: usize| c[(r + t) % n] as Letter;
            let half: Vec<Letter> = (0..n).map(at).chain((1..n - 1).rev().map(at)).collect();
            out.push(Word::from_letters(&half).pow(2));
        }
    }
    Ok(out)
}
