//! Free group words, the Magnus expansion and lower central series classes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freelie::{project_to_lyndon, LieElement, Poly, Word};
use crate::treecalc::{RootedTree, TreeSum};

/// A freely reduced word in `x_1, ..., x_m`. Letter `+i` is `x_i`, `-i` is
/// its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    m: usize,
    letters: Vec<i32>,
}

impl GroupWord {
    pub fn identity(m: usize) -> Self {
        GroupWord { m, letters: Vec::new() }
    }

    pub fn generator(m: usize, i: usize) -> Result<Self> {
        if i == 0 || i > m {
            return Err(Error::LabelOutOfRange { label: i, m });
        }
        Ok(GroupWord {
            m,
            letters: vec![i as i32],
        })
    }

    /// Builds a word from signed letters, reducing freely.
    pub fn from_letters(m: usize, letters: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut w = GroupWord::identity(m);
        for l in letters {
            if l == 0 || l.unsigned_abs() as usize > m {
                return Err(Error::LabelOutOfRange {
                    label: l.unsigned_abs() as usize,
                    m,
                });
            }
            w.push(l);
        }
        Ok(w)
    }

    fn push(&mut self, l: i32) {
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            m: self.m,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn mul(&self, other: &GroupWord) -> Self {
        debug_assert_eq!(self.m, other.m);
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    pub fn mul_assign(&mut self, other: &GroupWord) {
        for &l in &other.letters {
            self.push(l);
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity(self.m);
        for _ in 0..e.unsigned_abs() {
            out.mul_assign(&base);
        }
        out
    }

    /// `g^-1 self g`
    pub fn conjugate_by(&self, g: &GroupWord) -> Self {
        g.inverse().mul(self).mul(g)
    }

    /// Exponent sum of `x_i`.
    pub fn exponent_sum(&self, i: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.unsigned_abs() as usize == i)
            .map(|l| l.signum() as i64)
            .sum()
    }

    /// Parses `"x1 x2 X1 X2"` (capital letter for an inverse), `"1"` for the
    /// identity, and commutator sugar `"[w1, w2]"`, with juxtaposition as
    /// product.
    pub fn parse(m: usize, text: &str) -> Result<Self> {
        let mut p = WordParser {
            m,
            s: text.as_bytes(),
            pos: 0,
        };
        let w = p.product()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(w)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("x{l}")
                } else {
                    format!("X{}", -l)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

struct WordParser<'a> {
    m: usize,
    s: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in word {:?}",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn product(&mut self) -> Result<GroupWord> {
        let mut w = GroupWord::identity(self.m);
        loop {
            self.skip_ws();
            match self.s.get(self.pos) {
                Some(b'x') | Some(b'X') => {
                    let inverse = self.s[self.pos] == b'X';
                    self.pos += 1;
                    let start = self.pos;
                    while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let i: usize = std::str::from_utf8(&self.s[start..self.pos])
                        .expect("ascii")
                        .parse()
                        .map_err(|_| self.error("expected a generator index"))?;
                    let g = GroupWord::generator(self.m, i)?;
                    w.mul_assign(&if inverse { g.inverse() } else { g });
                }
                Some(b'1') => self.pos += 1,
                Some(b'[') => {
                    self.pos += 1;
                    let a = self.product()?;
                    self.skip_ws();
                    if self.s.get(self.pos) != Some(&b',') {
                        return Err(self.error("expected ','"));
                    }
                    self.pos += 1;
                    let b = self.product()?;
                    self.skip_ws();
                    if self.s.get(self.pos) != Some(&b']') {
                        return Err(self.error("expected ']'"));
                    }
                    self.pos += 1;
                    w.mul_assign(&commutator(&a, &b));
                }
                _ => return Ok(w),
            }
        }
    }
}

/// `[a, b] = a b a^-1 b^-1`, freely reduced.
pub fn commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
    a.mul(b).mul(&a.inverse()).mul(&b.inverse())
}

/// The group word spelled by a rooted tree, with brackets read as group
/// commutators.
pub fn word_from_tree(t: &RootedTree, m: usize) -> Result<GroupWord> {
    match t {
        RootedTree::Leaf(l) => GroupWord::generator(m, *l as usize),
        RootedTree::Node(a, b) => Ok(commutator(&word_from_tree(a, m)?, &word_from_tree(b, m)?)),
    }
}

/// Truncated Magnus expansion: a polynomial in noncommuting `X_1..X_m` with
/// every monomial of degree at most `q`. Stored densely, monomials of
/// degree `d` in base-`m` order after all lower degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusPoly {
    m: usize,
    q: usize,
    offsets: Vec<usize>,
    coeffs: Vec<BigInt>,
}

impl MagnusPoly {
    pub fn one(m: usize, q: usize) -> Self {
        let mut offsets = Vec::with_capacity(q + 2);
        let mut total = 0;
        let mut block = 1;
        for _ in 0..=q {
            offsets.push(total);
            total += block;
            block *= m;
        }
        offsets.push(total);
        let mut coeffs = vec![BigInt::zero(); total];
        coeffs[0] = BigInt::one();
        MagnusPoly { m, q, offsets, coeffs }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn truncation_degree(&self) -> usize {
        self.q
    }

    fn index(&self, w: &[u8]) -> usize {
        let mut i = 0;
        for &c in w {
            i = i * self.m + (c as usize - 1);
        }
        self.offsets[w.len()] + i
    }

    fn word_at(&self, degree: usize, mut i: usize) -> Word {
        let mut w = vec![0u8; degree];
        for slot in w.iter_mut().rev() {
            *slot = (i % self.m) as u8 + 1;
            i /= self.m;
        }
        w
    }

    pub fn coefficient(&self, w: &[u8]) -> BigInt {
        if w.len() > self.q || w.iter().any(|&c| c == 0 || c as usize > self.m) {
            return BigInt::zero();
        }
        self.coeffs[self.index(w)].clone()
    }

    /// Right multiplication by `1 + X_i`.
    fn times_generator(&mut self, i: usize) {
        let m = self.m;
        for d in (0..self.q).rev() {
            for k in 0..self.offsets[d + 1] - self.offsets[d] {
                let src = self.offsets[d] + k;
                if self.coeffs[src].is_zero() {
                    continue;
                }
                let dst = self.offsets[d + 1] + k * m + (i - 1);
                let v = self.coeffs[src].clone();
                self.coeffs[dst] += v;
            }
        }
    }

    /// Right multiplication by `(1 + X_i)^-1 = 1 - X_i + X_i^2 - ...`, solving
    /// `y (1 + X_i) = p` degree by degree.
    fn times_inverse_generator(&mut self, i: usize) {
        let m = self.m;
        for d in 1..=self.q {
            let count = self.offsets[d] - self.offsets[d - 1];
            for k in 0..count {
                let prev = self.offsets[d - 1] + k;
                if self.coeffs[prev].is_zero() {
                    continue;
                }
                let dst = self.offsets[d] + k * m + (i - 1);
                let v = self.coeffs[prev].clone();
                self.coeffs[dst] -= v;
            }
        }
    }

    pub fn mul(&self, other: &MagnusPoly) -> MagnusPoly {
        assert_eq!((self.m, self.q), (other.m, other.q), "shape mismatch");
        let mut out = MagnusPoly::one(self.m, self.q);
        out.coeffs[0] = BigInt::zero();
        for da in 0..=self.q {
            for ka in 0..self.offsets[da + 1] - self.offsets[da] {
                let a = &self.coeffs[self.offsets[da] + ka];
                if a.is_zero() {
                    continue;
                }
                for db in 0..=self.q - da {
                    let width = self.offsets[db + 1] - self.offsets[db];
                    for kb in 0..width {
                        let b = &other.coeffs[self.offsets[db] + kb];
                        if b.is_zero() {
                            continue;
                        }
                        let dst = self.offsets[da + db] + ka * width + kb;
                        out.coeffs[dst] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Homogeneous degree `d` part.
    pub fn homogeneous(&self, d: usize) -> Poly {
        let mut out = Poly::new();
        if d > self.q {
            return out;
        }
        for k in 0..self.offsets[d + 1] - self.offsets[d] {
            let c = &self.coeffs[self.offsets[d] + k];
            if !c.is_zero() {
                out.insert(self.word_at(d, k), c.clone());
            }
        }
        out
    }

    /// Smallest positive degree carrying a nonzero coefficient.
    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        (1..=self.q).find(|&d| self.coeffs[self.offsets[d]..self.offsets[d + 1]].iter().any(|c| !c.is_zero()))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.lowest_nonconstant_degree().is_none()
    }
}

/// Magnus expansion `x_i ↦ 1 + X_i` truncated above degree `q`.
pub fn magnus_expand(w: &GroupWord, q: usize) -> MagnusPoly {
    let mut p = MagnusPoly::one(w.m, q);
    for &l in &w.letters {
        if l > 0 {
            p.times_generator(l as usize);
        } else {
            p.times_inverse_generator((-l) as usize);
        }
    }
    p
}

/// The class of `w ∈ F_q` in `F_q / F_{q+1} ≅ L_q`: the degree `q` part of
/// its Magnus expansion, written in the Lyndon basis.
pub fn lie_class(w: &GroupWord, q: usize) -> Result<LieElement> {
    if q == 0 {
        return Err(Error::ZeroDegree);
    }
    let p = magnus_expand(w, q);
    if let Some(d) = p.lowest_nonconstant_degree() {
        if d < q {
            return Err(Error::NotInLowerCentralTerm { degree: q, found: d });
        }
    }
    project_to_lyndon(w.m, q, &p.homogeneous(q))
}

/// Longitude words read off from tree data: for each label `i`, the
/// product over trees `t` (coefficient `a`) and their univalent vertices
/// `v` labelled `i` of `B(t_v)^a`, then over twisted trees `J` (coefficient
/// `b`) and the vertices `u` of the first copy of `J` in `<J, J>` of
/// `B(<J,J>_u)^b`. Terms are taken in sorted order.
pub fn assemble_longitudes(ts: &TreeSum) -> Result<Vec<GroupWord>> {
    let m = ts.m();
    let mut out = vec![GroupWord::identity(m); m];
    let exponent = |c: &BigInt| -> Result<i64> {
        i64::try_from(c).map_err(|_| Error::Parse(format!("coefficient {c} too large for a word power")))
    };
    for (t, c) in ts.plain_terms() {
        let e = exponent(c)?;
        let g = t.graph();
        for (v, label) in g.leaves() {
            let w = word_from_tree(&g.rooted_at_leaf(v), m)?.pow(e);
            out[label as usize - 1].mul_assign(&w);
        }
    }
    for (t, c) in ts.twisted_terms() {
        let e = exponent(c)?;
        let g = t.doubled_graph();
        for (u, label) in g.leaves() {
            if !g.in_first_side(u) {
                continue;
            }
            let w = word_from_tree(&g.rooted_at_leaf(u), m)?.pow(e);
            out[label as usize - 1].mul_assign(&w);
        }
    }
    Ok(out)
}
