//! The free Lie algebra `L` over the integers and the objects built from it.

mod element;
mod levine;
mod lyndon;
mod quasi;

use num_bigint::BigInt;

pub use element::{
    lie_basis, lie_bracket, poly_commutator, poly_mul, project_to_lyndon, tensor_basis, LieBasis, LieElement,
    LieElementJson, Poly, TensorElement, TensorElementJson, TensorTerm, WordTerm,
};
pub(crate) use element::{add_term, parse_big};
pub use levine::{levine_quotient, sl_quotient, LevineQuotient};
pub use lyndon::{
    is_lyndon, lyndon_words, milnor_rank, mobius, parse_word, standard_factorization, witt_rank, word_to_string,
    Word,
};
pub use quasi::{bsl_kernel_dimension, quasi_lie_presentation, quasi_lie_structure, QuasiLiePresentation};

use crate::exactlinalg::{kernel_basis, smith_normal_form, IntMatrix};

/// Matrix of the bracket map `L_1 ⊗ L_{n+1} → L_{n+2}`, `X_i ⊗ Y ↦ [X_i, Y]`.
/// Columns follow [`tensor_basis`], rows the Lyndon basis of `L_{n+2}`.
pub fn bracket_map_matrix(m: usize, n: usize) -> IntMatrix {
    let source = tensor_basis(m, n);
    let target = lie_basis(m, n + 2);
    let mut a = IntMatrix::zeros(target.len(), source.len());
    for (col, (i, w)) in source.iter().enumerate() {
        let x = LieElement::generator(m, *i as usize).expect("in range");
        let y = LieElement::basis_element(m, w).expect("Lyndon");
        let b = lie_bracket(&x, &y).expect("same generators");
        for (v, c) in b.coords() {
            a.set(target.index_of(v).expect("Lyndon"), col, c.clone());
        }
    }
    a
}

/// A saturated basis of `D_n`, the kernel of the bracket map.
pub fn dn_basis(m: usize, n: usize) -> Vec<TensorElement> {
    kernel_basis(&bracket_map_matrix(m, n))
        .into_iter()
        .map(|v| TensorElement::from_vector(m, n, &v))
        .collect()
}

/// The `D_n` basis as the columns of an integer matrix in tensor coordinates.
pub fn dn_basis_matrix(m: usize, n: usize) -> IntMatrix {
    let basis: Vec<Vec<BigInt>> = dn_basis(m, n).iter().map(|t| t.to_vector()).collect();
    IntMatrix::from_columns(tensor_basis(m, n).len(), &basis)
}

/// A saturated basis of `D_n` with an integer left inverse, for reading
/// off coordinates of elements of `D_n`.
#[derive(Clone, Debug)]
pub struct DnFrame {
    pub m: usize,
    pub n: usize,
    /// Basis vectors as columns in tensor coordinates.
    pub basis: IntMatrix,
    left_inverse: IntMatrix,
}

impl DnFrame {
    pub fn new(m: usize, n: usize) -> Self {
        let basis = dn_basis_matrix(m, n);
        let (dim, ambient) = (basis.cols(), basis.rows());
        // B is saturated, so U B V = [I; 0] and V * (top rows of U) inverts B on the left
        let snf = smith_normal_form(&basis);
        let mut top = IntMatrix::zeros(dim, ambient);
        for r in 0..dim {
            for c in 0..ambient {
                top.set(r, c, snf.left.get(r, c).clone());
            }
        }
        DnFrame {
            m,
            n,
            left_inverse: snf.right.mul(&top),
            basis,
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of `x` in the basis, or `None` when `x ∉ D_n`.
    pub fn coordinates(&self, x: &TensorElement) -> Option<Vec<BigInt>> {
        let v = x.to_vector();
        let c = self.left_inverse.mul_vec(&v);
        (self.basis.mul_vec(&c) == v).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::{rank, solve};

    fn t(i: usize, m: usize, w: &[u8], c: i64) -> TensorElement {
        let y = LieElement::basis_element(m, w).unwrap().scaled(&BigInt::from(c));
        TensorElement::simple(i, &y).unwrap()
    }

    #[test]
    fn bracket_map_m2_n0() {
        let a = bracket_map_matrix(2, 0);
        assert_eq!(a, IntMatrix::from_rows(&[vec![0, 1, -1, 0]]));
    }

    #[test]
    fn bracket_map_m1_is_zero() {
        for n in 0..4 {
            let a = bracket_map_matrix(1, n);
            assert_eq!(a.rows(), 0);
            assert_eq!(dn_basis(1, n).len(), if n == 0 { 1 } else { 0 });
        }
    }

    #[test]
    fn bracket_map_m2_n1_full_rank() {
        let a = bracket_map_matrix(2, 1);
        assert_eq!(rank(&a), 2);
        assert!(dn_basis(2, 1).is_empty());
    }

    #[test]
    fn d0_for_two_generators() {
        let basis = dn_basis(2, 0);
        assert_eq!(basis.len(), 3);
        let b = dn_basis_matrix(2, 0);
        let sym = t(1, 2, &[2], 1).add(&t(2, 2, &[1], 1)).unwrap();
        for v in [t(1, 2, &[1], 1), t(2, 2, &[2], 1), sym] {
            assert!(solve(&b, &v.to_vector()).is_some());
        }
    }

    #[test]
    fn d1_for_three_generators_contains_cyclic_sum() {
        let basis = dn_basis(3, 1);
        assert_eq!(basis.len(), 1);
        let x = |i| LieElement::generator(3, i).unwrap();
        let cyc = [(1, 2, 3), (2, 3, 1), (3, 1, 2)]
            .into_iter()
            .map(|(i, j, k)| TensorElement::simple(i, &lie_bracket(&x(j), &x(k)).unwrap()).unwrap())
            .reduce(|a, b| a.add(&b).unwrap())
            .unwrap();
        assert!(cyc.in_dn());
        let sol = solve(&dn_basis_matrix(3, 1), &cyc.to_vector()).expect("in span");
        assert_eq!(sol.len(), 1);
    }

    #[test]
    fn dn_rank_matches_formula() {
        for m in 1..=3 {
            for n in 0..=3 {
                let basis = dn_basis(m, n);
                assert_eq!(basis.len() as u64, milnor_rank(m, n), "m={m} n={n}");
                assert!(basis.iter().all(TensorElement::in_dn));
            }
        }
    }
}
