//! Exact integer and mod-2 linear algebra.
//!
//! Everything here works on [`IntMatrix`], a dense row-major matrix of
//! arbitrary-precision integers. The normal forms are computed with
//! elementary unimodular operations so the transforms can be returned
//! alongside the reduced matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of small integers. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = x.into();
            }
        }
        m
    }

    /// Builds a `rows x cols` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.data[i * columns.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.data[r * self.cols + c] = value;
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: &BigInt) {
        self.data[r * self.cols + c] += value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Returns the matrix with the columns of `other` appended on the right.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hstack");
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[r * cols + c] = self.get(r, c).clone();
            }
            for c in 0..other.cols {
                out.data[r * cols + self.cols + c] = other.get(r, c).clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if !s.is_zero() {
                let v = s * factor;
                self.data[dst * self.cols + c] += v;
            }
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = &self.data[r * self.cols + src];
            if !s.is_zero() {
                let v = s * factor;
                self.data[r * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -std::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = v;
        }
    }
}

/// Isomorphism type of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    /// Invariant factors `d_1 | d_2 | ...`, each at least 2.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn free(rank: usize) -> Self {
        AbelianGroupStructure {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^rank ⊕ (Z/2)^twos`.
    pub fn free_plus_twos(rank: usize, twos: usize) -> Self {
        AbelianGroupStructure {
            free_rank: rank,
            torsion: vec![BigInt::from(2); twos],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of invariant factors equal to 2.
    pub fn two_rank(&self) -> usize {
        self.torsion.iter().filter(|d| **d == BigInt::from(2)).count()
    }

    /// True when the torsion part is an elementary abelian 2-group.
    pub fn torsion_is_elementary_two(&self) -> bool {
        self.torsion.iter().all(|d| *d == BigInt::from(2))
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("Z_{d}"));
            } else {
                parts.push(format!("Z_{d}^{run}"));
            }
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Result of [`smith_normal_form`]: `diagonal = left * A * right`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.diagonal.get(i, i).clone()).collect()
    }
}

fn min_abs_nonzero(a: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in from..a.rows {
        for c in from..a.cols {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((br, bc)) if a.get(br, bc).abs() <= v.abs() => {}
                _ => {
                    if v.abs().is_one() {
                        return Some((r, c));
                    }
                    best = Some((r, c));
                }
            }
        }
    }
    best
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen with minimal absolute value to keep intermediate
/// coefficients small.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let limit = a.rows.min(a.cols);
    let mut t = 0;
    while t < limit {
        let Some((pr, pc)) = min_abs_nonzero(&s, t) else {
            break;
        };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let mut dirty = false;
            for r in t + 1..s.rows {
                if s.get(r, t).is_zero() {
                    continue;
                }
                let q = -s.get(r, t).div_floor(s.get(t, t));
                s.add_row_multiple(r, t, &q);
                u.add_row_multiple(r, t, &q);
                if !s.get(r, t).is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..s.cols {
                if s.get(t, c).is_zero() {
                    continue;
                }
                let q = -s.get(t, c).div_floor(s.get(t, t));
                s.add_col_multiple(c, t, &q);
                v.add_col_multiple(c, t, &q);
                if !s.get(t, c).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived; move it into place
                let mut best = (t, t);
                for r in t..s.rows {
                    let x = s.get(r, t);
                    if !x.is_zero() && x.abs() < s.get(best.0, best.1).abs() {
                        best = (r, t);
                    }
                }
                for c in t..s.cols {
                    let x = s.get(t, c);
                    if !x.is_zero() && x.abs() < s.get(best.0, best.1).abs() {
                        best = (t, c);
                    }
                }
                s.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                s.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            // row and column cleared; enforce divisibility on the remaining block
            let pivot = s.get(t, t).clone();
            let offender = (t + 1..s.rows)
                .find(|&r| (t + 1..s.cols).any(|c| !s.get(r, c).is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithForm {
        diagonal: s,
        left: u,
        right: v,
        rank: t,
    }
}

/// Column echelon form `a * transform = echelon`; the trailing
/// `cols - rank` columns of `transform` span the integer kernel.
struct ColumnEchelon {
    transform: IntMatrix,
    rank: usize,
}

fn column_echelon(a: &IntMatrix, track: bool) -> (IntMatrix, ColumnEchelon) {
    let mut e = a.clone();
    let mut v = if track {
        IntMatrix::identity(a.cols)
    } else {
        IntMatrix::zeros(0, a.cols)
    };
    let mut rank = 0;
    for r in 0..e.rows {
        if rank == e.cols {
            break;
        }
        loop {
            // smallest nonzero entry of row r among the unreduced columns
            let mut best: Option<usize> = None;
            for c in rank..e.cols {
                let x = e.get(r, c);
                if !x.is_zero() && best.is_none_or(|b| x.abs() < e.get(r, b).abs()) {
                    best = Some(c);
                }
            }
            let Some(p) = best else { break };
            e.swap_cols(rank, p);
            if track {
                v.swap_cols(rank, p);
            }
            let mut done = true;
            for c in rank + 1..e.cols {
                if e.get(r, c).is_zero() {
                    continue;
                }
                let q = -e.get(r, c).div_floor(e.get(r, rank));
                e.add_col_multiple(c, rank, &q);
                if track {
                    v.add_col_multiple(c, rank, &q);
                }
                if !e.get(r, c).is_zero() {
                    done = false;
                }
            }
            if done {
                if e.get(r, rank).is_negative() {
                    e.negate_col(rank);
                    if track {
                        v.negate_col(rank);
                    }
                }
                rank += 1;
                break;
            }
        }
    }
    (e, ColumnEchelon { transform: v, rank })
}

/// Integer rank of `a`.
pub fn rank(a: &IntMatrix) -> usize {
    column_echelon(a, false).1.rank
}

/// Basis of the integer kernel `{v : a v = 0}`. The basis is saturated: it
/// spans every integer vector in the rational kernel.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (_, ech) = column_echelon(a, true);
    (ech.rank..a.cols).map(|c| ech.transform.column(c)).collect()
}

/// Structure of `Z^rows / span(columns of a)`.
pub fn cokernel_structure(a: &IntMatrix) -> AbelianGroupStructure {
    // compress the generators to an independent set before the Smith pass
    let (e, ech) = column_echelon(a, false);
    let mut reduced = IntMatrix::zeros(a.rows, ech.rank);
    for r in 0..a.rows {
        for c in 0..ech.rank {
            reduced.set(r, c, e.get(r, c).clone());
        }
    }
    let snf = smith_normal_form(&reduced);
    AbelianGroupStructure {
        free_rank: a.rows - snf.rank,
        torsion: snf
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect(),
    }
}

/// Column-compressed generators: an independent set of columns spanning
/// the same lattice as the columns of `a`.
pub fn lattice_basis(a: &IntMatrix) -> IntMatrix {
    let (e, ech) = column_echelon(a, false);
    let mut out = IntMatrix::zeros(a.rows, ech.rank);
    for r in 0..a.rows {
        for c in 0..ech.rank {
            out.set(r, c, e.get(r, c).clone());
        }
    }
    out
}

/// Some integer solution of `a x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len(), "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    let ub = snf.left.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < snf.rank {
            let d = snf.diagonal.get(i, i);
            if !ubi.is_multiple_of(d) {
                return None;
            }
            y[i] = ubi / d;
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(snf.right.mul_vec(&y))
}

/// Dense matrix over the field with two elements, one bit per entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        F2Matrix {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    pub fn from_int(a: &IntMatrix) -> Self {
        let mut m = Self::zeros(a.rows, a.cols);
        for r in 0..a.rows {
            for c in 0..a.cols {
                if a.get(r, c).is_odd() {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.bits[r * self.words + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.bits[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.bits.clone();
        let w = self.words;
        let mut rank = 0;
        for c in 0..self.cols {
            let (word, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..self.rows).find(|&r| m[r * w + word] & bit != 0) else {
                continue;
            };
            if p != rank {
                for k in 0..w {
                    m.swap(p * w + k, rank * w + k);
                }
            }
            for r in 0..self.rows {
                if r != rank && m[r * w + word] & bit != 0 {
                    for k in 0..w {
                        m[r * w + k] ^= m[rank * w + k];
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// Dimension over F_2 of the kernel of `a` reduced mod 2.
pub fn f2_kernel_dimension(a: &IntMatrix) -> usize {
    a.cols - F2Matrix::from_int(a).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_snf(a: &IntMatrix) -> SmithForm {
        let snf = smith_normal_form(a);
        assert_eq!(snf.left.mul(a).mul(&snf.right), snf.diagonal);
        assert!(snf.left.determinant().abs().is_one());
        assert!(snf.right.determinant().abs().is_one());
        let d = &snf.diagonal;
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if r != c {
                    assert!(d.get(r, c).is_zero());
                }
            }
        }
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        snf
    }

    #[test]
    fn snf_two_by_two() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = check_snf(&a);
        assert_eq!(snf.invariant_factors(), big(&[2, 4]));
    }

    #[test]
    fn snf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        assert_eq!(check_snf(&id).diagonal, id);
        let z = IntMatrix::zeros(2, 3);
        let snf = check_snf(&z);
        assert_eq!(snf.diagonal, z);
        assert_eq!(snf.rank, 0);
    }

    #[test]
    fn snf_empty() {
        let e = IntMatrix::zeros(0, 0);
        let snf = smith_normal_form(&e);
        assert_eq!(snf.rank, 0);
        assert_eq!(cokernel_structure(&IntMatrix::zeros(0, 4)), AbelianGroupStructure::free(0));
        assert_eq!(cokernel_structure(&IntMatrix::zeros(3, 0)), AbelianGroupStructure::free(3));
    }

    #[test]
    fn snf_forces_divisibility() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(check_snf(&a).invariant_factors(), big(&[1, 6]));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_rows(&[vec![1, 1]]));
        assert_eq!(k.len(), 1);
        assert!(k[0] == big(&[1, -1]) || k[0] == big(&[-1, 1]));

        let inv = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert!(kernel_basis(&inv).is_empty());
    }

    #[test]
    fn kernel_contains_enumerated_vectors() {
        let a = IntMatrix::from_rows(&[vec![2, -1, 0], vec![0, 0, 0]]);
        let basis = kernel_basis(&a);
        assert_eq!(basis.len(), 2);
        let b = IntMatrix::from_columns(3, &basis);
        // brute force: every small kernel vector is an integer combination
        for x in -3i64..=3 {
            for y in -6i64..=6 {
                for z in -3i64..=3 {
                    let v = big(&[x, y, z]);
                    if a.mul_vec(&v).iter().all(Zero::is_zero) {
                        assert!(solve(&b, &v).is_some(), "{v:?} not in span");
                    }
                }
            }
        }
        assert!(solve(&b, &big(&[1, 2, 0])).is_some());
        assert!(solve(&b, &big(&[0, 0, 1])).is_some());
    }

    #[test]
    fn cokernel_examples() {
        let two = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(cokernel_structure(&two), AbelianGroupStructure::free_plus_twos(0, 1));
        let col = IntMatrix::from_rows(&[vec![1], vec![0]]);
        assert_eq!(cokernel_structure(&col), AbelianGroupStructure::free(1));
        let d = IntMatrix::from_rows(&[vec![1, 0], vec![0, 4]]);
        assert_eq!(
            cokernel_structure(&d),
            AbelianGroupStructure {
                free_rank: 0,
                torsion: big(&[4])
            }
        );
    }

    #[test]
    fn f2_examples() {
        assert_eq!(f2_kernel_dimension(&IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]])), 1);
        assert_eq!(f2_kernel_dimension(&IntMatrix::identity(4)), 0);
        assert_eq!(f2_kernel_dimension(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]])), 2);
    }

    #[test]
    fn solve_rejects_non_members() {
        let a = IntMatrix::from_rows(&[vec![2], vec![0]]);
        assert!(solve(&a, &big(&[1, 0])).is_none());
        assert_eq!(solve(&a, &big(&[4, 0])), Some(big(&[2])));
    }

    #[test]
    fn structure_display() {
        let s = AbelianGroupStructure::free_plus_twos(1, 3);
        assert_eq!(s.to_string(), "Z^1 + Z_2^3");
        assert_eq!(AbelianGroupStructure::free(0).to_string(), "0");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = IntMatrix> {
            (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
                    .prop_map(move |rows| {
                        if rows.is_empty() {
                            IntMatrix::zeros(0, c)
                        } else {
                            IntMatrix::from_rows(&rows)
                        }
                    })
            })
        }

        proptest! {
            #[test]
            fn snf_is_a_factorization(a in small_matrix()) {
                check_snf(&a);
            }

            #[test]
            fn kernel_vectors_are_killed_and_saturated(a in small_matrix()) {
                let basis = kernel_basis(&a);
                for v in &basis {
                    prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
                }
                prop_assert_eq!(basis.len() + rank(&a), a.cols());
                if !basis.is_empty() {
                    let b = IntMatrix::from_columns(a.cols(), &basis);
                    let coker = cokernel_structure(&b);
                    prop_assert!(coker.torsion.is_empty());
                }
            }

            #[test]
            fn cokernel_ignores_column_operations(a in small_matrix(), k in 0usize..4) {
                prop_assume!(a.cols() >= 2);
                let mut b = a.clone();
                b.swap_cols(0, a.cols() - 1);
                b.add_col_multiple(1 % b.cols(), 0, &BigInt::from(k as i64 + 1));
                let dup = a.hstack(&IntMatrix::from_columns(a.rows(), &[a.column(0)]));
                prop_assert_eq!(cokernel_structure(&a), cokernel_structure(&b));
                prop_assert_eq!(cokernel_structure(&a), cokernel_structure(&dup));
            }
        }
    }
}
