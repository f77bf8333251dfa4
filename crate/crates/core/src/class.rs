//! Mutation classes up to isomorphism.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use crate::dynkin::DynkinType;
use crate::quiver::{CanonicalForm, Quiver, QuiverError, Vertex};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("mutation class did not close within {budget} labelled quivers; the input is probably not mutation-Dynkin")]
    BudgetExceeded { budget: usize },
    #[error("quiver is not mutation-Dynkin")]
    NotMutationDynkin,
    #[error("quiver is mutation-infinite: a component of rank at least 3 has {0} parallel arrows")]
    MutationInfinite(usize),
}

// A connected quiver of rank at least 3 with three or more parallel arrows
// has an infinite mutation class.
fn infinite_witness(q: &Quiver) -> Option<usize> {
    let n = q.rank();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for &(s, t) in q.arrows() {
        let (a, b) = (find(&mut comp, q.index_of(s)), find(&mut comp, q.index_of(t)));
        comp[a] = b;
    }
    let mut size = alloc::vec![0usize; n];
    for v in 0..n {
        let r = find(&mut comp, v);
        size[r] += 1;
    }
    q.arrows()
        .iter()
        .filter(|&&(s, t)| {
            let r = find(&mut comp, q.index_of(s));
            size[r] >= 3 && q.multiplicity(s, t) >= 3
        })
        .map(|&(s, t)| q.multiplicity(s, t))
        .next()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassOptions {
    /// Maximum number of labelled quivers produced before giving up.
    pub budget: usize,
}

impl Default for ClassOptions {
    fn default() -> Self {
        ClassOptions { budget: DEFAULT_BUDGET }
    }
}

/// One isomorphism class in a mutation class, represented by an actual
/// labelled quiver on the seed's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMember {
    pub quiver: Quiver,
    /// Mutating the seed along `path` gives `quiver`.
    pub path: Vec<Vertex>,
}

#[derive(Clone, Debug)]
pub struct MutationClass {
    seed: Quiver,
    members: Vec<ClassMember>,
    index: BTreeMap<CanonicalForm, usize>,
    generated: usize,
}

impl MutationClass {
    pub fn seed(&self) -> &Quiver {
        &self.seed
    }

    pub fn members(&self) -> &[ClassMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Labelled quivers produced during enumeration.
    pub fn generated(&self) -> usize {
        self.generated
    }

    /// The member isomorphic to `q`, if any.
    pub fn find(&self, q: &Quiver) -> Option<&ClassMember> {
        self.index.get(&q.canonical_form()).map(|&i| &self.members[i])
    }

    /// The ADE type, read off the first member shaped like a Dynkin diagram.
    pub fn dynkin_type(&self) -> Option<DynkinType> {
        self.members.iter().find_map(|m| m.quiver.dynkin_shape().map(|(t, _)| t))
    }
}

/// Expand one BFS level: for each frontier member, its mutations at every
/// vertex in vertex order, with canonical forms. Kept as a plain function so
/// callers can run it on several threads and feed the result to
/// [`mutation_class_with`], which inserts in frontier order.
pub fn expand(frontier: &[ClassMember]) -> Vec<Vec<(CanonicalForm, ClassMember)>> {
    frontier.iter().map(expand_one).collect()
}

pub fn expand_one(m: &ClassMember) -> Vec<(CanonicalForm, ClassMember)> {
    m.quiver
        .vertices()
        .iter()
        .map(|&k| {
            let q = m.quiver.mutate(k).expect("vertex of the quiver");
            let mut path = m.path.clone();
            path.push(k);
            (q.canonical_form(), ClassMember { quiver: q, path })
        })
        .collect()
}

pub fn mutation_class(q: &Quiver, opts: ClassOptions) -> Result<MutationClass, ClassError> {
    mutation_class_with(q, opts, expand)
}

/// Level-synchronous BFS. The result depends only on the seed, not on how
/// `expand_level` schedules its work, as long as it returns results in
/// frontier order.
pub fn mutation_class_with<F>(q: &Quiver, opts: ClassOptions, mut expand_level: F) -> Result<MutationClass, ClassError>
where
    F: FnMut(&[ClassMember]) -> Vec<Vec<(CanonicalForm, ClassMember)>>,
{
    if let Some(m) = infinite_witness(q) {
        return Err(ClassError::MutationInfinite(m));
    }
    let mut class = MutationClass { seed: q.clone(), members: Vec::new(), index: BTreeMap::new(), generated: 1 };
    let root = ClassMember { quiver: q.clone(), path: Vec::new() };
    class.index.insert(q.canonical_form(), 0);
    class.members.push(root);
    let mut start = 0;
    while start < class.members.len() {
        let end = class.members.len();
        let level = expand_level(&class.members[start..end]);
        for children in level {
            for (cf, child) in children {
                class.generated += 1;
                if class.generated > opts.budget {
                    return Err(ClassError::BudgetExceeded { budget: opts.budget });
                }
                if !class.index.contains_key(&cf) {
                    if let Some(m) = infinite_witness(&child.quiver) {
                        return Err(ClassError::MutationInfinite(m));
                    }
                    class.index.insert(cf, class.members.len());
                    class.members.push(child);
                }
            }
        }
        start = end;
    }
    Ok(class)
}

/// The ADE type of the mutation class of `q`, or `None` if the class is
/// finite but contains no Dynkin-shaped member.
pub fn dynkin_type(q: &Quiver, opts: ClassOptions) -> Result<Option<DynkinType>, ClassError> {
    Ok(mutation_class(q, opts)?.dynkin_type())
}

/// Breadth-first search from `q` for a Dynkin-shaped quiver. Returns the
/// mutation path and the quiver reached.
pub fn find_dynkin_path(q: &Quiver, opts: ClassOptions) -> Result<(Vec<Vertex>, Quiver), ClassError> {
    let mut seen: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
    let mut queue = alloc::collections::VecDeque::new();
    seen.insert(q.canonical_form(), ());
    queue.push_back(ClassMember { quiver: q.clone(), path: Vec::new() });
    let mut generated = 1;
    while let Some(m) = queue.pop_front() {
        if m.quiver.dynkin_shape().is_some() {
            return Ok((m.path, m.quiver));
        }
        m.quiver.check_two_finite().map_err(|_| ClassError::NotMutationDynkin)?;
        for (cf, child) in expand_one(&m) {
            generated += 1;
            if generated > opts.budget {
                return Err(ClassError::BudgetExceeded { budget: opts.budget });
            }
            if seen.insert(cf, ()).is_none() {
                queue.push_back(child);
            }
        }
    }
    Err(ClassError::NotMutationDynkin)
}
