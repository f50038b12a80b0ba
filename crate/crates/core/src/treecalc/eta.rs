//! The bracket `B(t)`, the summation map `eta` and tree enumeration.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::sum::TreeSum;
use super::tree::{RootedTree, TreeGraph, TwistedTree, UnrootedTree};
use crate::error::{Error, Result};
use crate::freelie::{poly_commutator, project_to_lyndon, LieElement, Poly, TensorElement};
use crate::limits::Limits;

fn bracket_poly(t: &RootedTree) -> Poly {
    match t {
        RootedTree::Leaf(l) => Poly::from([(vec![*l], BigInt::one())]),
        RootedTree::Node(a, b) => poly_commutator(&bracket_poly(a), &bracket_poly(b)),
    }
}

/// `B(t)`: the iterated bracket a rooted tree spells, in `L_{order+1}`.
pub fn tree_bracket(t: &RootedTree, m: usize) -> Result<LieElement> {
    t.check_labels(m)?;
    project_to_lyndon(m, t.leaf_count(), &bracket_poly(t))
}

fn graph_eta(g: &TreeGraph, m: usize, n: usize, leaf_filter: impl Fn(usize) -> bool) -> Result<TensorElement> {
    let mut out = TensorElement::zero(m, n);
    for (v, label) in g.leaves() {
        if !leaf_filter(v) {
            continue;
        }
        let b = tree_bracket(&g.rooted_at_leaf(v), m)?;
        out = out.add(&TensorElement::simple(label as usize, &b)?)?;
    }
    Ok(out)
}

/// `eta(t) = Σ_v X_{label(v)} ⊗ B(t_v)` over the univalent vertices of `t`.
pub fn eta_tree(t: &UnrootedTree, m: usize) -> Result<TensorElement> {
    t.check_labels(m)?;
    graph_eta(&t.graph(), m, t.order(), |_| true)
}

/// `eta(J^twist) = ½ eta(<J, J>)`, with integrality checked.
pub fn eta_twisted(t: &TwistedTree, m: usize) -> Result<TensorElement> {
    let n = 2 * t.order();
    t.body().check_labels(m)?;
    let full = graph_eta(&t.doubled_graph(), m, n, |_| true)?;
    let mut halves = Vec::with_capacity(full.coords().len());
    for ((i, w), c) in full.coords() {
        let (q, r) = c.div_rem(&BigInt::from(2));
        if !r.is_zero() {
            return Err(Error::NonIntegral(t.to_string()));
        }
        halves.push((*i as usize, w.clone(), q));
    }
    let mut out = TensorElement::zero(m, n);
    for (i, w, c) in halves {
        let y = LieElement::from_coords(m, n + 1, [(w, c)])?;
        out = out.add(&TensorElement::simple(i, &y)?)?;
    }
    Ok(out)
}

/// Sum over the univalent vertices of one copy of `J` inside `<J, J>`
/// (`copy` 0 or 1). Both copies give `eta(J^twist)`.
pub fn twisted_half_sum(t: &TwistedTree, m: usize, copy: usize) -> Result<TensorElement> {
    t.body().check_labels(m)?;
    let g = t.doubled_graph();
    graph_eta(&g, m, 2 * t.order(), |v| g.in_first_side(v) == (copy == 0))
}

/// `eta` extended linearly to tree sums.
pub fn eta(ts: &TreeSum) -> Result<TensorElement> {
    let (m, n) = (ts.m(), ts.order());
    if !ts.twisted_terms().is_empty() && n % 2 == 1 {
        return Err(Error::TwistedInOddOrder(n));
    }
    let mut out = TensorElement::zero(m, n);
    for (t, c) in ts.plain_terms() {
        if t.order() != n {
            return Err(Error::OrderMismatch {
                expected: n,
                found: t.order(),
            });
        }
        out = out.add(&eta_tree(t, m)?.scaled(c))?;
    }
    for (t, c) in ts.twisted_terms() {
        if 2 * t.order() != n {
            return Err(Error::OrderMismatch {
                expected: n / 2,
                found: t.order(),
            });
        }
        out = out.add(&eta_twisted(t, m)?.scaled(c))?;
    }
    Ok(out)
}

/// Every rooted tree of the given order over `1..=m`, one per class under
/// antisymmetry (canonical representatives), sorted.
pub fn canonical_rooted_trees(m: usize, order: usize) -> Vec<RootedTree> {
    let mut by_order: Vec<Vec<RootedTree>> = vec![(1..=m as u8).map(RootedTree::Leaf).collect()];
    for k in 1..=order {
        let mut level = Vec::new();
        for a in 0..k {
            let b = k - 1 - a;
            for l in &by_order[a] {
                for r in &by_order[b] {
                    if l <= r {
                        level.push(RootedTree::node(l.clone(), r.clone()));
                    }
                }
            }
        }
        level.sort();
        by_order.push(level);
    }
    by_order.swap_remove(order)
}

/// All canonical unrooted trees of order `n` over `1..=m`, each once, sorted.
pub fn enumerate_trees(m: usize, n: usize) -> Result<Vec<UnrootedTree>> {
    enumerate_trees_with(m, n, &Limits::from_env())
}

pub fn enumerate_trees_with(m: usize, n: usize, limits: &Limits) -> Result<Vec<UnrootedTree>> {
    limits.check(m, n)?;
    // every tree has a leaf edge, so joining a leaf to each rooted class covers all
    let mut out = BTreeSet::new();
    for body in canonical_rooted_trees(m, n) {
        for i in 1..=m as u8 {
            out.insert(UnrootedTree::join(&RootedTree::Leaf(i), &body).tree);
        }
    }
    Ok(out.into_iter().collect())
}

/// All twisted trees of the given order, sorted.
pub fn enumerate_twisted(m: usize, order: usize) -> Result<Vec<TwistedTree>> {
    Limits::from_env().check(m, 2 * order)?;
    Ok(canonical_rooted_trees(m, order)
        .iter()
        .map(TwistedTree::new)
        .collect())
}

/// `eta` of every order `n` tree.
pub fn plain_eta_images(m: usize, n: usize) -> Result<Vec<TensorElement>> {
    enumerate_trees(m, n)?.iter().map(|t| eta_tree(t, m)).collect()
}

/// `eta` of every order `n` tree and, for even `n`, every order `n/2`
/// twisted tree.
pub fn eta_image_generators(m: usize, n: usize) -> Result<Vec<TensorElement>> {
    let mut out = plain_eta_images(m, n)?;
    if n.is_multiple_of(2) {
        for t in enumerate_twisted(m, n / 2)? {
            out.push(eta_twisted(&t, m)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::lie_bracket;

    fn r(s: &str) -> RootedTree {
        s.parse().unwrap()
    }

    fn x(m: usize, i: usize) -> LieElement {
        LieElement::generator(m, i).unwrap()
    }

    fn simple(i: usize, y: &LieElement) -> TensorElement {
        TensorElement::simple(i, y).unwrap()
    }

    #[test]
    fn bracket_of_trees() {
        assert_eq!(tree_bracket(&r("1"), 2).unwrap(), x(2, 1));
        assert_eq!(tree_bracket(&r("(1,2)"), 2).unwrap(), LieElement::basis_element(2, &[1, 2]).unwrap());
        assert!(tree_bracket(&r("(1,1)"), 2).unwrap().is_zero());
        assert!(matches!(tree_bracket(&r("(1,3)"), 2), Err(Error::LabelOutOfRange { .. })));
    }

    #[test]
    fn eta_of_edge() {
        let mut ts = TreeSum::new(2, 0);
        ts.add_join(&r("1"), &r("2"), 1).unwrap();
        let expected = simple(1, &x(2, 2)).add(&simple(2, &x(2, 1))).unwrap();
        assert_eq!(eta(&ts).unwrap(), expected);
    }

    #[test]
    fn eta_of_twisted_leaf() {
        let mut ts = TreeSum::new(1, 0);
        ts.add_twisted(&r("1"), 1).unwrap();
        assert_eq!(eta(&ts).unwrap(), simple(1, &x(1, 1)));
    }

    #[test]
    fn eta_of_y_tree_is_cyclic_sum() {
        let mut ts = TreeSum::new(3, 1);
        ts.add_join(&r("(1,2)"), &r("3"), 1).unwrap();
        let b = |i, j| lie_bracket(&x(3, i), &x(3, j)).unwrap();
        let expected = simple(1, &b(2, 3))
            .add(&simple(2, &b(3, 1)))
            .unwrap()
            .add(&simple(3, &b(1, 2)))
            .unwrap();
        assert_eq!(eta(&ts).unwrap(), expected);
        assert!(expected.in_dn());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_trees(2, 0).unwrap().len(), 3);
        assert_eq!(enumerate_trees(1, 0).unwrap().len(), 1);
        let y = enumerate_trees(2, 1).unwrap();
        assert_eq!(y.len(), 4);
        let mut multisets: Vec<Vec<u8>> = y
            .iter()
            .map(|t| {
                let mut l = t.labels();
                l.sort();
                l
            })
            .collect();
        multisets.sort();
        assert_eq!(multisets, vec![vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]);
        assert!(matches!(
            enumerate_trees_with(2, 7, &Limits::default()),
            Err(Error::LimitExceeded { .. })
        ));
    }

    /// Brute force: join every pair of rooted trees (no canonical shortcut)
    /// and count distinct canonical classes.
    #[test]
    fn enumeration_matches_exhaustive_joins() {
        fn all_rooted(m: u8, order: usize) -> Vec<RootedTree> {
            if order == 0 {
                return (1..=m).map(RootedTree::Leaf).collect();
            }
            let mut out = Vec::new();
            for a in 0..order {
                for l in all_rooted(m, a) {
                    for rr in all_rooted(m, order - 1 - a) {
                        out.push(RootedTree::node(l.clone(), rr));
                    }
                }
            }
            out
        }
        for (m, n) in [(2, 2), (3, 2), (2, 3)] {
            let mut seen = BTreeSet::new();
            for a in 0..=n {
                for ta in all_rooted(m as u8, a) {
                    for tb in all_rooted(m as u8, n - a) {
                        seen.insert(UnrootedTree::join(&ta, &tb).tree);
                    }
                }
            }
            assert_eq!(enumerate_trees(m, n).unwrap(), seen.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn image_generators_small_cases() {
        let imgs = eta_image_generators(1, 0).unwrap();
        let xx = simple(1, &x(1, 1));
        assert_eq!(imgs, vec![xx.scaled(&BigInt::from(2)), xx]);
        assert!(eta_image_generators(2, 1).unwrap().iter().all(TensorElement::is_zero));
    }

    #[test]
    fn twisted_copies_agree_and_are_integral() {
        for m in 1..=3 {
            for order in 0..=2 {
                for t in enumerate_twisted(m, order).unwrap() {
                    let e = eta_twisted(&t, m).unwrap();
                    assert_eq!(twisted_half_sum(&t, m, 0).unwrap(), e);
                    assert_eq!(twisted_half_sum(&t, m, 1).unwrap(), e);
                    assert!(e.in_dn());
                }
            }
        }
    }

    #[test]
    fn eta_lands_in_dn() {
        for m in 1..=3 {
            for n in 0..=3 {
                for img in eta_image_generators(m, n).unwrap() {
                    assert!(img.in_dn(), "m={m} n={n}");
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rooted(m: u8, max_order: u32) -> impl Strategy<Value = RootedTree> {
            let leaf = (1..=m).prop_map(RootedTree::Leaf);
            leaf.prop_recursive(max_order, 2 * max_order + 2, 2, |inner| {
                (inner.clone(), inner).prop_map(|(a, b)| RootedTree::node(a, b))
            })
        }

        fn swap_somewhere(t: &RootedTree, pick: usize) -> (RootedTree, bool) {
            fn go(t: &RootedTree, counter: &mut usize) -> (RootedTree, bool) {
                match t {
                    RootedTree::Leaf(_) => (t.clone(), false),
                    RootedTree::Node(a, b) => {
                        if *counter == 0 {
                            return (RootedTree::node((**b).clone(), (**a).clone()), true);
                        }
                        *counter -= 1;
                        let (na, da) = go(a, counter);
                        if da {
                            return (RootedTree::node(na, (**b).clone()), true);
                        }
                        let (nb, db) = go(b, counter);
                        (RootedTree::node((**a).clone(), nb), db)
                    }
                }
            }
            let mut c = pick % t.order().max(1);
            go(t, &mut c)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn child_swap_negates_bracket(t in rooted(3, 4), pick in 0usize..8) {
                prop_assume!(t.order() > 0);
                let (s, swapped) = swap_somewhere(&t, pick);
                prop_assert!(swapped);
                prop_assert_eq!(tree_bracket(&s, 3).unwrap(), tree_bracket(&t, 3).unwrap().neg());
            }

            #[test]
            fn eta_respects_canonical_sign(a in rooted(3, 2), b in rooted(3, 2)) {
                // eta computed directly on the raw join equals sign * eta(canonical)
                let c = UnrootedTree::join(&a, &b);
                let raw = graph_eta(&TreeGraph::join(&a, &b), 3, a.order() + b.order(), |_| true).unwrap();
                let canon = eta_tree(&c.tree, 3).unwrap().scaled(&BigInt::from(c.sign));
                prop_assert_eq!(raw, canon);
            }
        }
    }
}
