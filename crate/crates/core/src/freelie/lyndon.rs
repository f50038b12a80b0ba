//! Lyndon words and the Witt dimension formula.

use crate::error::{Error, Result};

/// A word over the alphabet `1..=m`.
pub type Word = Vec<u8>;

/// Renders a word as its letters concatenated, or dot-separated when some
/// letter has more than one digit.
pub fn word_to_string(w: &[u8]) -> String {
    if w.iter().all(|&c| c < 10) {
        w.iter().map(|c| char::from(b'0' + c)).collect()
    } else {
        w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".")
    }
}

pub fn parse_word(s: &str) -> Result<Word> {
    let s = s.trim();
    let letters: Vec<&str> = if s.contains('.') {
        s.split('.').collect()
    } else {
        s.char_indices().map(|(i, c)| &s[i..i + c.len_utf8()]).collect()
    };
    letters
        .into_iter()
        .map(|l| {
            l.parse::<u8>()
                .ok()
                .filter(|&x| x >= 1)
                .ok_or_else(|| Error::Parse(format!("bad letter {l:?} in word {s:?}")))
        })
        .collect()
}

/// A nonempty word is Lyndon when it is strictly smaller than each of its
/// proper rotations.
pub fn is_lyndon(w: &[u8]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|k| {
        let rotated = w[k..].iter().chain(&w[..k]);
        w.iter().cmp(rotated) == std::cmp::Ordering::Less
    })
}

/// All Lyndon words of length exactly `n` over `1..=m`, in lexicographic
/// order (Duval's generation).
pub fn lyndon_words(m: usize, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if m == 0 || n == 0 {
        return out;
    }
    let top = m as u8;
    let mut w: Vec<u8> = vec![1];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        // extend periodically to length n
        let len = w.len();
        for i in len..n {
            let c = w[i % len];
            w.push(c);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(c) => *c += 1,
            None => break,
        }
    }
    out
}

/// Standard factorization `w = u v` where `v` is the longest proper suffix
/// of `w` that is Lyndon. Requires `w` Lyndon of length at least 2.
pub fn standard_factorization(w: &[u8]) -> (&[u8], &[u8]) {
    debug_assert!(w.len() >= 2);
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("a single letter is always a Lyndon suffix");
    (&w[..split], &w[split..])
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Rank of the degree `n` part of the free Lie algebra on `m` generators:
/// `R(m, n) = (1/n) Σ_{d | n} mobius(d) m^{n/d}`.
pub fn witt_rank(m: usize, n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let (m, n) = (m as i128, n as u64);
    let mut total: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += mobius(d) as i128 * m.pow((n / d) as u32);
        }
    }
    Ok((total / n as i128) as u64)
}

/// Number of independent order `n` Milnor invariants of an `m`-component
/// link: `M(m, n) = m R(m, n+1) - R(m, n+2)`.
pub fn milnor_rank(m: usize, n: usize) -> u64 {
    let a = m as u64 * witt_rank(m, n + 1).expect("positive degree");
    a - witt_rank(m, n + 2).expect("positive degree")
}
