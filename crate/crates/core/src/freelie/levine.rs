//! The Levine quotient `sl_{2k}: D_{2k} → Z_2 ⊗ L_{k+1}`: `D_{2k}` modulo the
//! subgroup generated by `eta` of all order `2k` trees.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::element::TensorElement;
use super::lyndon::witt_rank;
use super::DnFrame;
use crate::error::{Error, Result};
use crate::exactlinalg::{lattice_basis, smith_normal_form, AbelianGroupStructure, IntMatrix};
use crate::treecalc::plain_eta_images;

#[derive(Clone, Debug)]
pub struct LevineQuotient {
    pub m: usize,
    pub k: usize,
    pub frame: DnFrame,
    /// Rows of the Smith left transform that read off the `Z_2` summands.
    projection: Vec<Vec<BigInt>>,
    /// Structure of `D_{2k} / span(eta images)`.
    pub structure: AbelianGroupStructure,
}

impl LevineQuotient {
    fn build(m: usize, k: usize) -> Result<Self> {
        let n = 2 * k;
        let frame = DnFrame::new(m, n);
        let dim = frame.dimension();
        let images = plain_eta_images(m, n)?;
        let mut coords = Vec::with_capacity(images.len());
        for img in &images {
            let Some(c) = frame.coordinates(img) else {
                return Err(Error::QuotientMismatch(format!("eta image {img} is not in D_{n}")));
            };
            if c.iter().any(|x| !x.is_zero()) {
                coords.push(c);
            }
        }
        let gens = lattice_basis(&IntMatrix::from_columns(dim, &coords));
        let quotient = smith_normal_form(&gens);
        let factors = quotient.invariant_factors();
        let structure = AbelianGroupStructure {
            free_rank: dim - quotient.rank,
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        };
        let expected = witt_rank(m, k + 1)? as usize;
        if structure != AbelianGroupStructure::free_plus_twos(0, expected) {
            return Err(Error::QuotientMismatch(format!(
                "D_{n} modulo tree images is {structure}, expected (Z_2)^{expected} for m={m}"
            )));
        }
        let two = BigInt::from(2);
        let projection = factors
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == two)
            .map(|(i, _)| quotient.left.row(i).to_vec())
            .collect();
        Ok(LevineQuotient {
            m,
            k,
            frame,
            projection,
            structure,
        })
    }

    /// Dimension of the target `Z_2 ⊗ L_{k+1}`.
    pub fn dimension(&self) -> usize {
        self.projection.len()
    }

    pub fn apply(&self, x: &TensorElement) -> Result<Vec<bool>> {
        if x.m() != self.m {
            return Err(Error::GeneratorMismatch(self.m, x.m()));
        }
        if x.degree() != 2 * self.k {
            return Err(Error::OrderMismatch {
                expected: 2 * self.k,
                found: x.degree(),
            });
        }
        if !x.in_dn() {
            return Err(Error::NotInKernel);
        }
        let c = self.frame.coordinates(x).ok_or(Error::NotInKernel)?;
        Ok(self
            .projection
            .iter()
            .map(|row| {
                let s: BigInt = row.iter().zip(&c).map(|(a, b)| a * b).sum();
                s.is_odd()
            })
            .collect())
    }
}

type Cache<T> = Mutex<HashMap<(usize, usize), Arc<T>>>;

/// Shared Levine quotient for `(m, k)`, verified to be `(Z_2)^{R(m,k+1)}`
/// when built.
pub fn levine_quotient(m: usize, k: usize) -> Result<Arc<LevineQuotient>> {
    static CACHE: OnceLock<Cache<LevineQuotient>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(q) = cache.lock().unwrap().get(&(m, k)) {
        return Ok(q.clone());
    }
    let built = Arc::new(LevineQuotient::build(m, k)?);
    Ok(cache.lock().unwrap().entry((m, k)).or_insert(built).clone())
}

/// `sl_{2k}(x)` as a vector over F_2 of length `R(m, k+1)`.
pub fn sl_quotient(x: &TensorElement, m: usize, k: usize) -> Result<Vec<bool>> {
    levine_quotient(m, k)?.apply(x)
}
