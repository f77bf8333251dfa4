use braidquiver_core::mutation_iso::{phi, phi_inverse, standardize, transport, Standardizer};
use braidquiver_core::presentation::{barot_marsh_relators, presentation_of, rotation_word};
use braidquiver_core::{mutation_class, ClassOptions, DynkinType, GarsideSolver, GroupHom, Quiver, RelatorKind, Word};

#[test]
fn three_cycle_presentation() {
    let q = Quiver::new([1, 2, 3], [(1, 2), (2, 3), (3, 1)]).unwrap();
    let p = presentation_of(&q).unwrap();
    let cyc: Vec<&Word> = p.relators.iter().filter(|r| matches!(r.kind, RelatorKind::Cycle { .. })).map(|r| &r.word).collect();
    // s1 s2 s3 s1 = s2 s3 s1 s2 = s3 s1 s2 s3
    assert_eq!(cyc[0], &Word::from_letters(&[1, 2, 3, 1, -2, -1, -3, -2]));
    assert_eq!(cyc.len(), 2);
    assert_eq!(p.relators.iter().filter(|r| r.kind == RelatorKind::Braid).count(), 3);
}

#[test]
fn phi_images_are_trivial_and_invertible() {
    for ty in ["A4", "D5"] {
        let t: DynkinType = ty.parse().unwrap();
        let st = Standardizer::new(t, ClassOptions::default()).unwrap();
        let g = GarsideSolver::new(t);
        for m in st.class().members() {
            let q = &m.quiver;
            for &k in q.vertices() {
                let mq = q.mutate(k).unwrap();
                let to = st.standardize(&mq).unwrap();
                let h = phi(q, k).unwrap();
                for r in presentation_of(q).unwrap().relators {
                    assert!(g.is_trivial(&to.hom.apply(&h.apply(&r.word).unwrap()).unwrap()).unwrap());
                }
                assert_eq!(phi_inverse(q, k).unwrap().compose(&h).unwrap(), GroupHom::identity(q.vertices()));
                let twice = phi(&mq, k).unwrap().compose(&h).unwrap();
                let conj = GroupHom::conjugation(q.vertices(), &Word::generator(k));
                for &i in q.vertices() {
                    if i == k || q.adjacent(i, k) {
                        assert_eq!(twice.image(i), conj.image(i));
                    } else {
                        assert_eq!(twice.image(i).unwrap(), &Word::generator(i));
                        let from = st.standardize(q).unwrap();
                        let comm = Word::from_letters(&[i as i32, k as i32, -(i as i32), -(k as i32)]);
                        assert!(g.is_trivial(&from.hom.apply(&comm).unwrap()).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn all_rotations_agree() {
    // including the rotation that closes the cycle, which is not listed as a relator
    for ty in ["D4", "D5", "D6"] {
        let t: DynkinType = ty.parse().unwrap();
        let st = Standardizer::new(t, ClassOptions::default()).unwrap();
        let g = GarsideSolver::new(t);
        let mut lengths = std::collections::BTreeSet::new();
        for m in st.class().members() {
            let s = st.standardize(&m.quiver).unwrap();
            for c in m.quiver.chordless_cycles() {
                let n = c.vertices.len();
                lengths.insert(n);
                for r in 0..n {
                    let w = rotation_word(&c.vertices, r).concat(&rotation_word(&c.vertices, (r + 1) % n).inverse());
                    assert!(g.is_trivial(&s.hom.apply(&w).unwrap()).unwrap());
                }
                // a rotation word is not trivial on its own
                assert!(!g.is_trivial(&s.hom.apply(&rotation_word(&c.vertices, 0)).unwrap()).unwrap());
            }
        }
        assert!(lengths.contains(&3) && lengths.contains(&(t.rank())));
    }
}

#[test]
fn barot_marsh_relators_vanish_in_weyl_group() {
    let q = Quiver::new([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
    let s = standardize(&q, ClassOptions::default()).unwrap();
    assert_eq!(s.ty, DynkinType::d(4));
    let g = GarsideSolver::new(s.ty);
    for r in barot_marsh_relators(&q).unwrap() {
        assert!(g.group().evaluate(&s.hom.apply(&r).unwrap()).unwrap().is_identity());
    }
    // they are not braid relators
    let r = &barot_marsh_relators(&q).unwrap()[0];
    assert!(!g.is_trivial(&s.hom.apply(r).unwrap()).unwrap());
}

#[test]
fn transport_follows_mutation() {
    let q = Quiver::dynkin(DynkinType::e(6));
    let c = mutation_class(&q, ClassOptions::default()).unwrap();
    let m = c.members().last().unwrap();
    let (end, hom) = transport(&q, &m.path).unwrap();
    assert_eq!(end, m.quiver);
    assert_eq!(hom.source(), q.vertices());
}
