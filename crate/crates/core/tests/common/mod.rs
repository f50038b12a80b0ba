//! Independent oracles shared by the integration tests. None of these call
//! into the library's own versions of the same computation.
#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use whitcalc::groupwords::GroupWord;
use whitcalc::treecalc::{RootedTree, TreeSum};

/// A word is Lyndon when it is strictly smaller than each proper rotation.
pub fn is_lyndon_brute(w: &[u8]) -> bool {
    (1..w.len()).all(|k| {
        let rotated: Vec<u8> = w[k..].iter().chain(&w[..k]).copied().collect();
        w < rotated.as_slice()
    })
}

pub fn lyndon_count_brute(m: usize, n: usize) -> u64 {
    let total = (m as u64).pow(n as u32);
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let w: Vec<u8> = (0..n)
                .map(|_| {
                    let l = (c % m as u64) as u8 + 1;
                    c /= m as u64;
                    l
                })
                .collect();
            is_lyndon_brute(&w)
        })
        .count() as u64
}

pub fn milnor_rank_brute(m: usize, n: usize) -> u64 {
    m as u64 * lyndon_count_brute(m, n + 1) - lyndon_count_brute(m, n + 2)
}

/// Noncommutative polynomial truncated above degree `q`, keyed by word.
pub type Series = HashMap<Vec<u8>, BigInt>;

fn series_mul(a: &Series, b: &Series, q: usize) -> Series {
    let mut out = Series::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() <= q {
                let mut w = u.clone();
                w.extend_from_slice(v);
                *out.entry(w).or_insert_with(BigInt::zero) += x * y;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Magnus expansion by multiplying out one letter at a time, with
/// `x^-1 ↦ Σ (-X)^k`.
pub fn magnus_brute(w: &GroupWord, q: usize) -> Series {
    let mut acc = Series::from([(Vec::new(), BigInt::one())]);
    for &l in w.letters() {
        let i = l.unsigned_abs() as u8;
        let mut factor = Series::from([(Vec::new(), BigInt::one())]);
        if l > 0 {
            factor.insert(vec![i], BigInt::one());
        } else {
            for k in 1..=q {
                let sign = if k % 2 == 1 { -1 } else { 1 };
                factor.insert(vec![i; k], BigInt::from(sign));
            }
        }
        acc = series_mul(&acc, &factor, q);
    }
    acc
}

pub fn random_rooted<R: Rng>(rng: &mut R, m: usize, order: usize) -> RootedTree {
    if order == 0 {
        return RootedTree::Leaf(rng.gen_range(1..=m as u8));
    }
    let left = rng.gen_range(0..order);
    RootedTree::node(random_rooted(rng, m, left), random_rooted(rng, m, order - 1 - left))
}

/// A random tree sum of order `n` with a few terms, including twisted terms
/// when `n` is even.
pub fn random_tree_sum<R: Rng>(rng: &mut R, m: usize, n: usize) -> TreeSum {
    let mut ts = TreeSum::new(m, n);
    for _ in 0..rng.gen_range(1..=4) {
        // joining the roots adds no trivalent vertex
        let a = rng.gen_range(0..=n);
        let left = random_rooted(rng, m, a);
        let right = random_rooted(rng, m, n - a);
        ts.add_join(&left, &right, rng.gen_range(-3i64..=3)).unwrap();
    }
    if n.is_multiple_of(2) {
        for _ in 0..rng.gen_range(0..=2) {
            let body = random_rooted(rng, m, n / 2);
            ts.add_twisted(&body, rng.gen_range(-3i64..=3)).unwrap();
        }
    }
    ts
}
