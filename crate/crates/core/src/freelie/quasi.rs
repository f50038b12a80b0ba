//! Levine's quasi-Lie algebra `L'`: brackets modulo antisymmetry
//! `[X,Y] + [Y,X] = 0` and Jacobi, without `[X,X] = 0`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use super::lyndon::witt_rank;
use crate::error::Result;
use crate::exactlinalg::{cokernel_structure, AbelianGroupStructure, F2Matrix, IntMatrix};
use crate::treecalc::{tree_bracket, RootedTree};

/// Presentation of `L'_degree` on all bracket expressions of that degree.
#[derive(Clone, Debug)]
pub struct QuasiLiePresentation {
    pub degree: usize,
    pub m: usize,
    pub generator_trees: Vec<RootedTree>,
    /// One column per relation, in the generator basis.
    pub relation_matrix: IntMatrix,
}

fn bracket_expressions(m: usize, leaves: usize) -> Vec<RootedTree> {
    if leaves == 1 {
        return (1..=m as u8).map(RootedTree::Leaf).collect();
    }
    let mut out = Vec::new();
    for left in 1..leaves {
        let ls = bracket_expressions(m, left);
        let rs = bracket_expressions(m, leaves - left);
        for l in &ls {
            for r in &rs {
                out.push(RootedTree::node(l.clone(), r.clone()));
            }
        }
    }
    out
}

fn internal_paths(t: &RootedTree, prefix: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
    if let RootedTree::Node(a, b) = t {
        out.push(prefix.clone());
        prefix.push(false);
        internal_paths(a, prefix, out);
        prefix.pop();
        prefix.push(true);
        internal_paths(b, prefix, out);
        prefix.pop();
    }
}

fn replace_at(t: &RootedTree, path: &[bool], f: &dyn Fn(&RootedTree) -> RootedTree) -> RootedTree {
    match (path.split_first(), t) {
        (None, _) => f(t),
        (Some((&right, rest)), RootedTree::Node(a, b)) => {
            if right {
                RootedTree::node((**a).clone(), replace_at(b, rest, f))
            } else {
                RootedTree::node(replace_at(a, rest, f), (**b).clone())
            }
        }
        (Some(_), RootedTree::Leaf(_)) => unreachable!("path leads through a leaf"),
    }
}

fn subtree_at<'a>(t: &'a RootedTree, path: &[bool]) -> &'a RootedTree {
    match (path.split_first(), t) {
        (None, _) => t,
        (Some((&right, rest)), RootedTree::Node(a, b)) => subtree_at(if right { b } else { a }, rest),
        _ => unreachable!("path leads through a leaf"),
    }
}

fn build_presentation(m: usize, degree: usize) -> QuasiLiePresentation {
    let gens = bracket_expressions(m, degree);
    let index: HashMap<&RootedTree, usize> = gens.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut relations: BTreeSet<Vec<(usize, i64)>> = BTreeSet::new();
    let mut push = |terms: Vec<(usize, i64)>| {
        let mut acc: Vec<(usize, i64)> = Vec::new();
        let mut sorted = terms;
        sorted.sort();
        for (i, c) in sorted {
            match acc.last_mut() {
                Some((j, d)) if *j == i => *d += c,
                _ => acc.push((i, c)),
            }
        }
        acc.retain(|(_, c)| *c != 0);
        if !acc.is_empty() {
            relations.insert(acc);
        }
    };
    for t in &gens {
        let mut paths = Vec::new();
        internal_paths(t, &mut Vec::new(), &mut paths);
        let me = index[t];
        for p in &paths {
            let swapped = replace_at(t, p, &|s| match s {
                RootedTree::Node(a, b) => RootedTree::node((**b).clone(), (**a).clone()),
                leaf => leaf.clone(),
            });
            push(vec![(me, 1), (index[&swapped], 1)]);

            if let RootedTree::Node(ab, c) = subtree_at(t, p) {
                if let RootedTree::Node(a, b) = &**ab {
                    let (a, b, c) = ((**a).clone(), (**b).clone(), (**c).clone());
                    let second = replace_at(t, p, &|_| {
                        RootedTree::node(RootedTree::node(b.clone(), c.clone()), a.clone())
                    });
                    let third = replace_at(t, p, &|_| {
                        RootedTree::node(RootedTree::node(c.clone(), a.clone()), b.clone())
                    });
                    push(vec![(me, 1), (index[&second], 1), (index[&third], 1)]);
                }
            }
        }
    }
    let mut matrix = IntMatrix::zeros(gens.len(), relations.len());
    for (col, rel) in relations.iter().enumerate() {
        for &(i, c) in rel {
            matrix.set(i, col, BigInt::from(c));
        }
    }
    QuasiLiePresentation {
        degree,
        m,
        generator_trees: gens,
        relation_matrix: matrix,
    }
}

type Cache<T> = Mutex<HashMap<(usize, usize), Arc<T>>>;

/// Shared presentation of `L'_degree` on `m` generators.
pub fn quasi_lie_presentation(m: usize, degree: usize) -> Arc<QuasiLiePresentation> {
    static CACHE: OnceLock<Cache<QuasiLiePresentation>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(m, degree)) {
        return p.clone();
    }
    let built = Arc::new(build_presentation(m, degree));
    cache.lock().unwrap().entry((m, degree)).or_insert(built).clone()
}

/// Isomorphism type of `L'_degree`.
pub fn quasi_lie_structure(m: usize, degree: usize) -> AbelianGroupStructure {
    cokernel_structure(&quasi_lie_presentation(m, degree).relation_matrix)
}

/// F_2-dimension of `Ker{Z_2 ⊗ L'_{l+1} → Z_2 ⊗ L_{l+1}}`, the map that
/// reads a quasi-Lie bracket as the same bracket in `L`.
pub fn bsl_kernel_dimension(m: usize, ell: usize) -> Result<usize> {
    let degree = ell + 1;
    let p = quasi_lie_presentation(m, degree);
    let target = witt_rank(m, degree)? as usize;
    let mut map = F2Matrix::zeros(target, p.generator_trees.len());
    for (col, t) in p.generator_trees.iter().enumerate() {
        let b = tree_bracket(t, m)?;
        for (row, c) in b.to_vector().iter().enumerate() {
            if c % 2 != BigInt::from(0) {
                map.set(row, col, true);
            }
        }
    }
    // relations lie in the kernel of the map, so the quotient kernel has
    // dimension dim ker(map) - rank(relations mod 2)
    let kernel = p.generator_trees.len() - map.rank();
    let relations = F2Matrix::from_int(&p.relation_matrix).rank();
    Ok(kernel - relations)
}
