//! Decorated unitrivalent trees and the summation map `eta`.

mod eta;
mod sum;
mod tree;
mod twist;

pub use eta::{
    canonical_rooted_trees, enumerate_trees, enumerate_trees_with, enumerate_twisted, eta, eta_image_generators,
    eta_tree, eta_twisted, plain_eta_images, tree_bracket, twisted_half_sum,
};
pub use sum::{JsonInt, TreeSum, TreeSumJson, TreeTerm};
pub use tree::{parse_join, parse_twisted, Canonical, RootedTree, TreeGraph, TwistedTree, UnrootedTree};
pub use twist::{boundary_twist, boundary_twist_sum};

/// The inner product `<a, b>` of two rooted trees, canonicalized, with the
/// sign relating it to the literal join.
pub fn inner_product(a: &RootedTree, b: &RootedTree) -> Canonical<UnrootedTree> {
    UnrootedTree::join(a, b)
}
