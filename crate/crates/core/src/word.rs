//! Free-group words in signed generator indices and generator-image homomorphisms.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::quiver::Vertex;

/// `+i` is the generator s_i, `-i` its inverse.
pub type Letter = i32;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter 0 is not a generator")]
    ZeroLetter,
    #[error("cannot parse word token {0:?}")]
    Parse(String),
    #[error("generator {0} is not in the source of the homomorphism")]
    UnknownGenerator(Vertex),
    #[error("no image given for generator {0}")]
    MissingImage(Vertex),
    #[error("image of {0} uses generator {1} outside the target")]
    ImageOutsideTarget(Vertex, Vertex),
    #[error("generator sets do not match for composition")]
    GeneratorMismatch,
}

/// A word, always kept freely reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Result<Word, WordError> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        if letters.contains(&0) {
            return Err(WordError::ZeroLetter);
        }
        Ok(Word(free_reduce(&letters)))
    }

    /// Build from letters known to be nonzero. Panics on a zero letter.
    pub fn from_letters(letters: &[Letter]) -> Word {
        Word::new(letters.iter().copied()).expect("nonzero letters")
    }

    pub fn generator(i: Vertex) -> Word {
        Word(alloc::vec![i as Letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        push_reduced(&mut v, &other.0);
        Word(v)
    }

    pub fn pow(&self, e: i32) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `c · self · c⁻¹`
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.concat(self).concat(&c.inverse())
    }

    /// True if every letter is a positive generator.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&l| l > 0)
    }

    pub fn generators(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().map(|l| l.unsigned_abs())
    }
}

/// Cancel adjacent inverse pairs until none remain.
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(letters.len());
    push_reduced(&mut out, letters);
    out
}

fn push_reduced(out: &mut Vec<Letter>, letters: &[Letter]) {
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

impl core::ops::Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl fmt::Display for Word {
    /// `s1 s2^-1`; the empty word prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (k, &l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if l > 0 {
                write!(f, "s{l}")?;
            } else {
                write!(f, "s{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Accepts whitespace-separated `s3`, `s3^-1`, `t3`, `t3^-1`; `e` or the
    /// empty string is the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "e" {
                continue;
            }
            let bad = || WordError::Parse(tok.to_string());
            let body = tok.strip_prefix('s').or_else(|| tok.strip_prefix('t')).ok_or_else(bad)?;
            let (num, inv) = match body.split_once('^') {
                Some((n, "-1")) => (n, true),
                Some((n, "1")) => (n, false),
                Some(_) => return Err(bad()),
                None => (body, false),
            };
            let i: u32 = num.parse().map_err(|_| bad())?;
            if i == 0 || i > i32::MAX as u32 {
                return Err(bad());
            }
            letters.push(if inv { -(i as i32) } else { i as i32 });
        }
        Word::new(letters)
    }
}

/// A homomorphism of free groups given by the images of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Vec<Vertex>,
    target: Vec<Vertex>,
    images: BTreeMap<Vertex, Word>,
}

impl GroupHom {
    pub fn new(source: Vec<Vertex>, target: Vec<Vertex>, images: BTreeMap<Vertex, Word>) -> Result<GroupHom, WordError> {
        let mut source = source;
        source.sort_unstable();
        source.dedup();
        let mut target = target;
        target.sort_unstable();
        target.dedup();
        for &i in &source {
            let w = images.get(&i).ok_or(WordError::MissingImage(i))?;
            if let Some(j) = w.generators().find(|j| target.binary_search(j).is_err()) {
                return Err(WordError::ImageOutsideTarget(i, j));
            }
        }
        if let Some(&extra) = images.keys().find(|k| source.binary_search(k).is_err()) {
            return Err(WordError::UnknownGenerator(extra));
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn identity(gens: &[Vertex]) -> GroupHom {
        let images = gens.iter().map(|&i| (i, Word::generator(i))).collect();
        GroupHom::new(gens.to_vec(), gens.to_vec(), images).expect("identity is well formed")
    }

    /// s_i ↦ c s_i c⁻¹ for every generator.
    pub fn conjugation(gens: &[Vertex], c: &Word) -> GroupHom {
        let images = gens.iter().map(|&i| (i, Word::generator(i).conjugate_by(c))).collect();
        GroupHom::new(gens.to_vec(), gens.to_vec(), images).expect("conjugation is well formed")
    }

    pub fn source(&self) -> &[Vertex] {
        &self.source
    }

    pub fn target(&self) -> &[Vertex] {
        &self.target
    }

    pub fn images(&self) -> &BTreeMap<Vertex, Word> {
        &self.images
    }

    pub fn image(&self, i: Vertex) -> Option<&Word> {
        self.images.get(&i)
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        let mut out = Vec::new();
        for &l in w.letters() {
            let g = self.images.get(&l.unsigned_abs()).ok_or(WordError::UnknownGenerator(l.unsigned_abs()))?;
            if l > 0 {
                push_reduced(&mut out, g.letters());
            } else {
                push_reduced(&mut out, g.inverse().letters());
            }
        }
        Ok(Word(out))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom, WordError> {
        if first.target != self.source {
            return Err(WordError::GeneratorMismatch);
        }
        let images = first.images.iter().map(|(&i, w)| Ok((i, self.apply(w)?))).collect::<Result<_, WordError>>()?;
        GroupHom::new(first.source.clone(), self.target.clone(), images)
    }

    /// Rename target generators through `map`.
    pub fn rename_target(&self, map: &BTreeMap<Vertex, Vertex>) -> Result<GroupHom, WordError> {
        let f = |j: Vertex| map.get(&j).copied().ok_or(WordError::UnknownGenerator(j));
        let target = self.target.iter().map(|&j| f(j)).collect::<Result<Vec<_>, _>>()?;
        let mut images = BTreeMap::new();
        for (&i, w) in &self.images {
            let letters = w
                .letters()
                .iter()
                .map(|&l| {
                    let j = f(l.unsigned_abs())? as Letter;
                    Ok(if l > 0 { j } else { -j })
                })
                .collect::<Result<Vec<_>, WordError>>()?;
            images.insert(i, Word::new(letters)?);
        }
        GroupHom::new(self.source.clone(), target, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(l: &[Letter]) -> Word {
        Word::from_letters(l)
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(free_reduce(&[1, -1]), Vec::<Letter>::new());
        assert_eq!(free_reduce(&[1, 2, -2, -1]), Vec::<Letter>::new());
        assert_eq!(free_reduce(&[1, 2, -2, 3]), vec![1, 3]);
        assert_eq!(Word::new([0]), Err(WordError::ZeroLetter));
    }

    #[test]
    fn parse_display_roundtrip() {
        let x: Word = "s1 s2 s3^-1".parse().unwrap();
        assert_eq!(x.letters(), &[1, 2, -3]);
        assert_eq!(x.to_string(), "s1 s2 s3^-1");
        assert_eq!("".parse::<Word>().unwrap(), Word::identity());
        assert_eq!("e".parse::<Word>().unwrap().to_string(), "e");
        assert!("s0".parse::<Word>().is_err());
        assert!("x1".parse::<Word>().is_err());
        assert!("s1^2".parse::<Word>().is_err());
        assert_eq!("t2 t2^-1".parse::<Word>().unwrap(), Word::identity());
    }

    #[test]
    fn hom_apply_and_compose() {
        let mut im = BTreeMap::new();
        im.insert(1, w(&[2, 1, -2]));
        im.insert(2, w(&[2]));
        let h = GroupHom::new(vec![1, 2], vec![1, 2], im).unwrap();
        assert_eq!(h.apply(&w(&[1])).unwrap(), w(&[2, 1, -2]));
        assert_eq!(h.apply(&w(&[1, -1])).unwrap(), Word::identity());
        assert_eq!(h.apply(&w(&[3])), Err(WordError::UnknownGenerator(3)));
        let id = GroupHom::identity(&[1, 2]);
        assert_eq!(h.compose(&id).unwrap(), h);
        assert_eq!(id.compose(&h).unwrap(), h);
        let hh = h.compose(&h).unwrap();
        assert_eq!(hh.image(1).unwrap(), &w(&[2, 2, 1, -2, -2]));
        assert_eq!(GroupHom::identity(&[1]).compose(&h), Err(WordError::GeneratorMismatch));
    }

    #[test]
    fn hom_validation() {
        let mut im = BTreeMap::new();
        im.insert(1, w(&[5]));
        assert_eq!(GroupHom::new(vec![1], vec![1], im), Err(WordError::ImageOutsideTarget(1, 5)));
        assert_eq!(GroupHom::new(vec![1], vec![1], BTreeMap::new()), Err(WordError::MissingImage(1)));
    }
}
