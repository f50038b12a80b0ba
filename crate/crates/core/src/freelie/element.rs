//! Elements of the free Lie algebra and of `L_1 ⊗ L_{n+1}`.
//!
//! A Lie element is stored by its coordinates in the Lyndon basis. The
//! basis element for a Lyndon word `w` is the standard bracketing `P(w)`,
//! defined through the standard factorization `w = uv` as `[P(u), P(v)]`.
//! Arithmetic goes through the embedding into the tensor algebra: `P(w)`
//! expands to `w` plus lexicographically larger words of the same length,
//! so coordinates are recovered by peeling off the smallest word.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::lyndon::{is_lyndon, lyndon_words, parse_word, standard_factorization, word_to_string, Word};
use crate::error::{Error, Result};

/// Homogeneous noncommutative polynomial, sparse by monomial.
pub type Poly = BTreeMap<Word, BigInt>;

pub(crate) fn add_term<K: Ord>(p: &mut BTreeMap<K, BigInt>, w: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match p.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            add_term(&mut out, w, ca * cb);
        }
    }
    out
}

/// `ab - ba`
pub fn poly_commutator(a: &Poly, b: &Poly) -> Poly {
    let mut out = poly_mul(a, b);
    for (w, c) in poly_mul(b, a) {
        add_term(&mut out, w, -c);
    }
    out
}

/// Lyndon basis of `L_n` together with the tensor expansion of each
/// standard bracket.
#[derive(Debug)]
pub struct LieBasis {
    pub m: usize,
    pub degree: usize,
    pub words: Vec<Word>,
    index: HashMap<Word, usize>,
    expansions: Vec<Poly>,
}

impl LieBasis {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn expansion(&self, i: usize) -> &Poly {
        &self.expansions[i]
    }

    fn build(m: usize, degree: usize) -> LieBasis {
        let words = lyndon_words(m, degree);
        let expansions = words
            .iter()
            .map(|w| {
                if w.len() == 1 {
                    Poly::from([(w.clone(), BigInt::one())])
                } else {
                    let (u, v) = standard_factorization(w);
                    let pu = basis_expansion(m, u);
                    let pv = basis_expansion(m, v);
                    poly_commutator(&pu, &pv)
                }
            })
            .collect();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        LieBasis {
            m,
            degree,
            words,
            index,
            expansions,
        }
    }
}

fn basis_expansion(m: usize, w: &[u8]) -> Poly {
    let basis = lie_basis(m, w.len());
    let i = basis.index_of(w).expect("Lyndon factor");
    basis.expansion(i).clone()
}

type Cache<T> = Mutex<HashMap<(usize, usize), Arc<T>>>;

/// Shared, lazily built Lyndon basis for `(m, degree)`.
pub fn lie_basis(m: usize, degree: usize) -> Arc<LieBasis> {
    static CACHE: OnceLock<Cache<LieBasis>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&(m, degree)) {
        return b.clone();
    }
    // built outside the lock: construction recurses into smaller degrees
    let built = Arc::new(LieBasis::build(m, degree));
    cache
        .lock()
        .unwrap()
        .entry((m, degree))
        .or_insert(built)
        .clone()
}

/// Rewrites a homogeneous Lie polynomial in the Lyndon basis. Fails when the
/// polynomial is not in the image of the free Lie algebra.
pub fn project_to_lyndon(m: usize, degree: usize, poly: &Poly) -> Result<LieElement> {
    let basis = lie_basis(m, degree);
    let mut rest = poly.clone();
    let mut coords = BTreeMap::new();
    while let Some((w, c)) = rest.first_key_value().map(|(w, c)| (w.clone(), c.clone())) {
        if w.len() != degree {
            return Err(Error::NotPrimitive(degree));
        }
        let Some(i) = basis.index_of(&w) else {
            return Err(Error::NotPrimitive(degree));
        };
        for (v, d) in basis.expansion(i) {
            add_term(&mut rest, v.clone(), -(d * &c));
        }
        coords.insert(w, c);
    }
    Ok(LieElement { m, degree, coords })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    m: usize,
    degree: usize,
    coords: BTreeMap<Word, BigInt>,
}

impl LieElement {
    pub fn zero(m: usize, degree: usize) -> Self {
        LieElement {
            m,
            degree,
            coords: BTreeMap::new(),
        }
    }

    /// The generator `X_i`.
    pub fn generator(m: usize, i: usize) -> Result<Self> {
        if i == 0 || i > m {
            return Err(Error::LabelOutOfRange { label: i, m });
        }
        Ok(LieElement {
            m,
            degree: 1,
            coords: BTreeMap::from([(vec![i as u8], BigInt::one())]),
        })
    }

    /// The basis element `P(w)` for a Lyndon word `w`.
    pub fn basis_element(m: usize, w: &[u8]) -> Result<Self> {
        check_word(m, w)?;
        if !is_lyndon(w) {
            return Err(Error::Parse(format!("{} is not a Lyndon word", word_to_string(w))));
        }
        Ok(LieElement {
            m,
            degree: w.len(),
            coords: BTreeMap::from([(w.to_vec(), BigInt::one())]),
        })
    }

    /// Builds an element from Lyndon coordinates, dropping zeros.
    pub fn from_coords(m: usize, degree: usize, coords: impl IntoIterator<Item = (Word, BigInt)>) -> Result<Self> {
        let mut out = Self::zero(m, degree);
        for (w, c) in coords {
            check_word(m, &w)?;
            if w.len() != degree || !is_lyndon(&w) {
                return Err(Error::Parse(format!(
                    "{} is not a Lyndon word of length {degree}",
                    word_to_string(&w)
                )));
            }
            out.add_coord(w, c);
        }
        Ok(out)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &BTreeMap<Word, BigInt> {
        &self.coords
    }

    pub fn coeff(&self, w: &[u8]) -> BigInt {
        self.coords.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn add_coord(&mut self, w: Word, c: BigInt) {
        add_term(&mut self.coords, w, c);
    }

    /// Tensor-algebra image.
    pub fn to_poly(&self) -> Poly {
        let basis = lie_basis(self.m, self.degree);
        let mut out = Poly::new();
        for (w, c) in &self.coords {
            let i = basis.index_of(w).expect("coordinates are Lyndon");
            for (v, d) in basis.expansion(i) {
                add_term(&mut out, v.clone(), d * c);
            }
        }
        out
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.m, self.degree);
        for (w, c) in &self.coords {
            out.add_coord(w.clone(), c * k);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::GeneratorMismatch(self.m, other.m));
        }
        if self.degree != other.degree {
            return Err(Error::OrderMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (w, c) in &other.coords {
            out.add_coord(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scaled(&BigInt::from(-1))
    }

    /// Coordinate vector in the sorted Lyndon basis.
    pub fn to_vector(&self) -> Vec<BigInt> {
        let basis = lie_basis(self.m, self.degree);
        let mut v = vec![BigInt::zero(); basis.len()];
        for (w, c) in &self.coords {
            v[basis.index_of(w).expect("Lyndon coordinate")] = c.clone();
        }
        v
    }

    pub fn to_json(&self) -> LieElementJson {
        LieElementJson {
            m: self.m,
            degree: self.degree,
            terms: self
                .coords
                .iter()
                .map(|(w, c)| WordTerm {
                    word: word_to_string(w),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &LieElementJson) -> Result<Self> {
        let coords = json
            .terms
            .iter()
            .map(|t| Ok((parse_word(&t.word)?, parse_big(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coords(json.m, json.degree, coords)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coords.iter().map(|(w, c)| (format!("P({})", word_to_string(w)), c)))
    }
}

fn write_terms<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (String, &'a BigInt)>) -> fmt::Result {
    let mut first = true;
    for (name, c) in terms {
        let neg = c < &BigInt::zero();
        let abs = if neg { -c } else { c.clone() };
        let sep = match (first, neg) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        if abs.is_one() {
            write!(f, "{sep}{name}")?;
        } else {
            write!(f, "{sep}{abs}*{name}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn parse_big(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

fn check_word(m: usize, w: &[u8]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::ZeroDegree);
    }
    match w.iter().find(|&&c| c == 0 || c as usize > m) {
        Some(&c) => Err(Error::LabelOutOfRange { label: c as usize, m }),
        None => Ok(()),
    }
}

/// Lie bracket, rewritten into the Lyndon basis.
pub fn lie_bracket(a: &LieElement, b: &LieElement) -> Result<LieElement> {
    if a.m != b.m {
        return Err(Error::GeneratorMismatch(a.m, b.m));
    }
    let p = poly_commutator(&a.to_poly(), &b.to_poly());
    project_to_lyndon(a.m, a.degree + b.degree, &p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordTerm {
    pub word: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieElementJson {
    pub m: usize,
    pub degree: usize,
    pub terms: Vec<WordTerm>,
}

/// Element of `L_1 ⊗ L_{n+1}`, stored by coordinates on the basis
/// `X_i ⊗ P(w)` ordered lexicographically by `(i, w)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    m: usize,
    degree: usize,
    coords: BTreeMap<(u8, Word), BigInt>,
}

/// Basis of `L_1 ⊗ L_{n+1}` in `(i, w)` order.
pub fn tensor_basis(m: usize, n: usize) -> Vec<(u8, Word)> {
    let words = lie_basis(m, n + 1).words.clone();
    (1..=m as u8)
        .flat_map(|i| words.iter().map(move |w| (i, w.clone())))
        .collect()
}

impl TensorElement {
    pub fn zero(m: usize, degree: usize) -> Self {
        TensorElement {
            m,
            degree,
            coords: BTreeMap::new(),
        }
    }

    /// `X_i ⊗ y`, with `y` of degree `n + 1`.
    pub fn simple(i: usize, y: &LieElement) -> Result<Self> {
        if i == 0 || i > y.m {
            return Err(Error::LabelOutOfRange { label: i, m: y.m });
        }
        let mut out = Self::zero(y.m, y.degree - 1);
        for (w, c) in &y.coords {
            add_term(&mut out.coords, (i as u8, w.clone()), c.clone());
        }
        Ok(out)
    }

    /// `Σ_i X_i ⊗ parts[i]`; all parts share a degree.
    pub fn from_parts(m: usize, n: usize, parts: &[LieElement]) -> Result<Self> {
        let mut out = Self::zero(m, n);
        for (i, y) in parts.iter().enumerate() {
            if y.degree != n + 1 {
                return Err(Error::OrderMismatch {
                    expected: n + 1,
                    found: y.degree,
                });
            }
            out = out.add(&Self::simple(i + 1, y)?)?;
        }
        Ok(out)
    }

    pub fn from_vector(m: usize, n: usize, v: &[BigInt]) -> Self {
        let basis = tensor_basis(m, n);
        assert_eq!(basis.len(), v.len(), "vector length mismatch");
        let mut out = Self::zero(m, n);
        for (key, c) in basis.into_iter().zip(v) {
            add_term(&mut out.coords, key, c.clone());
        }
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &BTreeMap<(u8, Word), BigInt> {
        &self.coords
    }

    pub fn coeff(&self, i: usize, w: &[u8]) -> BigInt {
        self.coords
            .get(&(i as u8, w.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// The `L_{n+1}` component paired with `X_i`.
    pub fn component(&self, i: usize) -> LieElement {
        let mut out = LieElement::zero(self.m, self.degree + 1);
        for ((j, w), c) in &self.coords {
            if *j as usize == i {
                out.add_coord(w.clone(), c.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::GeneratorMismatch(self.m, other.m));
        }
        if self.degree != other.degree {
            return Err(Error::OrderMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (k, c) in &other.coords {
            add_term(&mut out.coords, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.m, self.degree);
        for (key, c) in &self.coords {
            add_term(&mut out.coords, key.clone(), c * k);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&BigInt::from(-1))
    }

    pub fn to_vector(&self) -> Vec<BigInt> {
        let r = lie_basis(self.m, self.degree + 1);
        let mut v = vec![BigInt::zero(); self.m * r.len()];
        for ((i, w), c) in &self.coords {
            let j = r.index_of(w).expect("Lyndon coordinate");
            v[(*i as usize - 1) * r.len() + j] = c.clone();
        }
        v
    }

    /// Image under the bracket map `X_i ⊗ Y ↦ [X_i, Y]`.
    pub fn bracket_image(&self) -> LieElement {
        let mut out = LieElement::zero(self.m, self.degree + 2);
        for i in 1..=self.m {
            let y = self.component(i);
            if y.is_zero() {
                continue;
            }
            let x = LieElement::generator(self.m, i).expect("in range");
            let b = lie_bracket(&x, &y).expect("same generator count");
            out = out.add(&b).expect("same degree");
        }
        out
    }

    /// True when the bracket map kills this element.
    pub fn in_dn(&self) -> bool {
        self.bracket_image().is_zero()
    }

    pub fn to_json(&self) -> TensorElementJson {
        TensorElementJson {
            m: self.m,
            degree: self.degree,
            terms: self
                .coords
                .iter()
                .map(|((i, w), c)| TensorTerm {
                    index: *i as usize,
                    word: word_to_string(w),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &TensorElementJson) -> Result<Self> {
        let mut out = Self::zero(json.m, json.degree);
        for t in &json.terms {
            let w = parse_word(&t.word)?;
            let y = LieElement::from_coords(json.m, json.degree + 1, [(w, parse_big(&t.coeff)?)])?;
            out = out.add(&Self::simple(t.index, &y)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coords
                .iter()
                .map(|((i, w), c)| (format!("X{i}⊗P({})", word_to_string(w)), c)),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTerm {
    pub index: usize,
    pub word: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorElementJson {
    pub m: usize,
    pub degree: usize,
    pub terms: Vec<TensorTerm>,
}
