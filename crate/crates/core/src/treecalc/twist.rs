//! The boundary-twist map from twisted trees to odd-order trees.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::sum::TreeSum;
use super::tree::{RootedTree, TwistedTree};
use crate::error::{Error, Result};
use crate::freelie::add_term;

/// Rewrites `t` by the Jacobi identity `[[a1,a2],b] = [a1,[a2,b]] - [a2,[a1,b]]`
/// until every term has a leaf among the two children of its root.
fn expand_to_leaf_root(t: &RootedTree, coeff: BigInt, out: &mut BTreeMap<RootedTree, BigInt>) {
    match t {
        RootedTree::Node(a, b) if !a.is_leaf() && !b.is_leaf() => {
            let RootedTree::Node(a1, a2) = &**a else { unreachable!() };
            let first = RootedTree::node((**a1).clone(), RootedTree::node((**a2).clone(), (**b).clone()));
            let second = RootedTree::node((**a2).clone(), RootedTree::node((**a1).clone(), (**b).clone()));
            expand_to_leaf_root(&first, coeff.clone(), out);
            expand_to_leaf_root(&second, -coeff, out);
        }
        _ => add_term(out, t.clone(), coeff),
    }
}

/// `∂(J^twist)`: a twisted tree of order `l >= 1` of the form `<twist, [i, J]>`
/// goes to the order `2l - 1` tree `<i, [J, J]>`. Bodies whose root has no
/// leaf child are first rewritten by IHX; a term `c * K` of that expansion
/// contributes `c^2 * ∂(K^twist)`, since twisted trees are quadratic in the
/// body. The left child is taken as `i` when both children are leaves.
pub fn boundary_twist(t: &TwistedTree, m: usize) -> Result<TreeSum> {
    let l = t.order();
    if l == 0 {
        return Err(Error::TwistOrderZero);
    }
    t.body().check_labels(m)?;
    let mut expanded = BTreeMap::new();
    expand_to_leaf_root(t.body(), BigInt::one(), &mut expanded);
    let mut out = TreeSum::new(m, 2 * l - 1);
    for (k, c) in expanded {
        let RootedTree::Node(a, b) = &k else { unreachable!("order >= 1") };
        let (leaf, rest) = if a.is_leaf() { (a, b) } else { (b, a) };
        let doubled = RootedTree::node((**rest).clone(), (**rest).clone());
        out.add_join(leaf, &doubled, &c * &c)?;
    }
    Ok(out)
}

/// `∂` on an order `2l` tree sum: twisted terms map through
/// [`boundary_twist`], plain order `2l` terms vanish in order `2l - 1`.
pub fn boundary_twist_sum(ts: &TreeSum) -> Result<TreeSum> {
    let n = ts.order();
    if n == 0 || n % 2 == 1 {
        return Err(Error::TwistOrderZero);
    }
    let mut out = TreeSum::new(ts.m(), n - 1);
    for (t, c) in ts.twisted_terms() {
        let image = boundary_twist(t, ts.m())?;
        for (u, d) in image.plain_terms() {
            out.add_plain(u.clone(), d * c)?;
        }
    }
    Ok(out)
}
