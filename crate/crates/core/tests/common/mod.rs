//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

/// Edge list of the Dynkin diagram, written out by hand.
pub fn dynkin_edges(family: char, n: u32) -> Vec<(u32, u32)> {
    match family {
        'A' => (1..n).map(|i| (i, i + 1)).collect(),
        'D' => {
            let mut e = vec![(1, 3), (2, 3)];
            e.extend((3..n).map(|i| (i, i + 1)));
            e
        }
        'E' => {
            let mut e = vec![(1, 3), (2, 4)];
            e.extend((3..n).map(|i| (i, i + 1)));
            e
        }
        _ => panic!("family"),
    }
}

pub type Mat = Vec<Vec<i64>>;

/// Skew-symmetric matrix of the orientation i → j for i < j.
pub fn dynkin_matrix(family: char, n: u32) -> Mat {
    let mut b = vec![vec![0; n as usize]; n as usize];
    for (i, j) in dynkin_edges(family, n) {
        b[i as usize - 1][j as usize - 1] += 1;
        b[j as usize - 1][i as usize - 1] -= 1;
    }
    b
}

/// Matrix mutation: b'_ij = −b_ij if k ∈ {i, j}, else b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2.
pub fn mutate_matrix(b: &Mat, k: usize) -> Mat {
    let n = b.len();
    let mut out = b.clone();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k { -b[i][j] } else { b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2 };
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least relabelling of the matrix over all permutations.
pub fn iso_min(b: &Mat, perms: &[Vec<usize>]) -> Mat {
    perms.iter().map(|p| p.iter().map(|&i| p.iter().map(|&j| b[i][j]).collect()).collect::<Mat>()).min().unwrap()
}

/// Labelled BFS over exchange matrices, reduced by brute-force isomorphism.
pub fn class_size_oracle(seed: &Mat) -> usize {
    let n = seed.len();
    let mut seen: HashSet<Mat> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(seed.clone());
    queue.push_back(seed.clone());
    while let Some(b) = queue.pop_front() {
        for k in 0..n {
            let m = mutate_matrix(&b, k);
            if seen.insert(m.clone()) {
                queue.push_back(m);
            }
        }
    }
    let perms = permutations(n);
    seen.iter().map(|b| iso_min(b, &perms)).collect::<BTreeSet<_>>().len()
}

/// Induced cycles found by brute force over vertex subsets: subsets whose
/// underlying graph is connected and 2-regular. Returns (subset, oriented).
pub fn chordless_oracle(b: &Mat) -> Vec<(Vec<usize>, bool)> {
    let n = b.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if vs.len() < 3 {
            continue;
        }
        let deg = |i: usize| vs.iter().filter(|&&j| b[i][j] != 0).count();
        if !vs.iter().all(|&i| deg(i) == 2) {
            continue;
        }
        // connected: walk from the first vertex
        let mut seen = vec![vs[0]];
        let mut stack = vec![vs[0]];
        while let Some(x) = stack.pop() {
            for &y in &vs {
                if b[x][y] != 0 && !seen.contains(&y) {
                    seen.push(y);
                    stack.push(y);
                }
            }
        }
        if seen.len() != vs.len() {
            continue;
        }
        // oriented iff every vertex has one outgoing and one incoming arrow inside
        let oriented = vs.iter().all(|&i| vs.iter().filter(|&&j| b[i][j] > 0).count() == 1);
        out.push((vs, oriented));
    }
    out
}

/// Catalan numbers by the convolution recurrence.
pub fn catalan(n: usize) -> u64 {
    let mut c = vec![1u64];
    for m in 1..=n {
        c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
    }
    c[n]
}

/// Cartan matrix from an edge list.
pub fn cartan(edges: &[(u32, u32)], n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    for &(i, j) in edges {
        a[i as usize - 1][j as usize - 1] = -1;
        a[j as usize - 1][i as usize - 1] = -1;
    }
    a
}

/// Order of the group generated by the simple reflections s_i(α_j) = α_j − a_ij α_i, by closure.
pub fn reflection_group_order(edges: &[(u32, u32)], n: usize) -> usize {
    let a = cartan(edges, n);
    let gens: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|i| {
            let mut m: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
            for j in 0..n {
                m[i][j] -= a[i][j];
            }
            m
        })
        .collect();
    let id: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let p: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| (0..n).map(|k| m[r][k] * g[k][c]).sum()).collect()).collect();
            if seen.insert(p.clone()) {
                queue.push_back(p);
            }
        }
    }
    seen.len()
}

/// Artin's action of the type A braid group on the free group F_{n+1}:
/// σ_i: x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i. Faithful, so two braid words
/// are equal iff the images of every x_j agree as reduced words.
pub fn artin_action(n: usize, word: &[i32]) -> Vec<Vec<i32>> {
    let reduce = |w: Vec<i32>| {
        let mut out: Vec<i32> = Vec::new();
        for l in w {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    };
    let inv = |w: &[i32]| w.iter().rev().map(|l| -l).collect::<Vec<i32>>();
    // images[j] = current image of x_{j+1}, composing left to right as automorphisms
    let mut images: Vec<Vec<i32>> = (1..=n as i32 + 1).map(|j| vec![j]).collect();
    for &l in word {
        let i = l.unsigned_abs() as usize;
        let subst = |x: i32| -> Vec<i32> {
            let v = x.unsigned_abs() as usize;
            let img: Vec<i32> = if l > 0 {
                if v == i {
                    vec![i as i32, i as i32 + 1, -(i as i32)]
                } else if v == i + 1 {
                    vec![i as i32]
                } else {
                    vec![v as i32]
                }
            } else if v == i {
                vec![i as i32 + 1]
            } else if v == i + 1 {
                vec![-(i as i32 + 1), i as i32, i as i32 + 1]
            } else {
                vec![v as i32]
            };
            if x > 0 {
                img
            } else {
                inv(&img)
            }
        };
        images = images.into_iter().map(|w| reduce(w.into_iter().flat_map(subst).collect())).collect();
    }
    images
}
