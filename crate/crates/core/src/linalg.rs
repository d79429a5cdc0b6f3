//! Dense matrices, canonical subspaces and nilpotent Jordan types.
//!
//! All routines take a tolerance. Over the rational field it is ignored and
//! elimination is exact, which is what the invariant computations rely on.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, DEFAULT_TOL};

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose `k`-th column is `columns[k]`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diag(blocks: &[Matrix<F>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(n, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Nilpotent Jordan block of size `n`: ones on the subdiagonal, so that
    /// `e_i -> e_{i+1}` in column convention.
    pub fn nilpotent_jordan_block(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = F::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn pow(&self, e: usize) -> Result<Matrix<F>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "power of a non-square matrix".into(),
            ));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_zero_tol(&self, tol: f64) -> bool {
        self.data.iter().all(|v| v.is_negligible(tol))
    }

    /// Largest entry-wise absolute difference.
    pub fn max_abs_diff(&self, other: &Matrix<F>) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref_tol(&self, tol: f64) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .map(|i| (i, m[(i, c)].pivot_score()))
                .filter(|(i, _)| !m[(*i, c)].is_negligible(tol))
                .fold(None, |best: Option<(usize, f64)>, cand| match best {
                    Some(b) if b.1 >= cand.1 => Some(b),
                    _ => Some(cand),
                });
            let Some((p, _)) = best else {
                for i in r..m.rows {
                    m[(i, c)] = F::zero();
                }
                continue;
            };
            m.swap_rows(r, p);
            let inv = F::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f.clone() * m[(r, j)].clone();
                    let v = m[(i, j)].clone() - sub;
                    m[(i, j)] = if v.is_negligible(tol) { F::zero() } else { v };
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank_tol(&self, tol: f64) -> usize {
        self.rref_tol(tol).1.len()
    }

    /// Inverse, or `None` when singular.
    pub fn inverse_tol(&self, tol: f64) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        // Pivots must all land in the left block.
        let (red, pivots) = aug.rref_tol(tol);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;

    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|v| v.to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row rank over the exact field.
pub fn rank<F: Scalar>(m: &Matrix<F>) -> usize {
    m.rank_tol(DEFAULT_TOL)
}

/// Null space `{ v : M v = 0 }`.
pub fn kernel<F: Scalar>(m: &Matrix<F>) -> Subspace<F> {
    kernel_tol(m, DEFAULT_TOL)
}

pub fn kernel_tol<F: Scalar>(m: &Matrix<F>, tol: f64) -> Subspace<F> {
    let (red, pivots) = m.rref_tol(tol);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let vectors = free
        .iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); m.cols()];
            v[fc] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -red[(r, fc)].clone();
            }
            v
        })
        .collect::<Vec<_>>();
    Subspace::span_tol(m.cols(), vectors, tol)
}

/// Jordan block sizes of a nilpotent square matrix, in descending order.
pub fn jordan_type<F: Scalar>(n: &Matrix<F>) -> Result<Vec<usize>> {
    jordan_type_tol(n, DEFAULT_TOL)
}

pub fn jordan_type_tol<F: Scalar>(n: &Matrix<F>, tol: f64) -> Result<Vec<usize>> {
    if !n.is_square() {
        return Err(Error::DimensionMismatch(
            "Jordan type of a non-square matrix".into(),
        ));
    }
    let dim = n.rows();
    // ranks[k] = rank(N^k)
    let mut ranks = vec![dim];
    let mut power = Matrix::identity(dim);
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > dim {
            return Err(Error::NotNilpotent);
        }
        power = power.mul(n)?;
        let r = power.rank_tol(tol);
        if r == *ranks.last().unwrap() {
            return Err(Error::NotNilpotent);
        }
        ranks.push(r);
    }
    // at_least[k-1] = number of blocks of size >= k
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k, exact));
    }
    Ok(sizes)
}

/// A subspace of `F^ambient`, stored as the nonzero rows of its reduced
/// row echelon basis. Two equal subspaces have identical bases.
#[derive(Clone, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Scalar> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, Matrix::<F>::identity(ambient).to_rows())
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        Self::span_tol(ambient, vectors, DEFAULT_TOL)
    }

    pub fn span_tol(ambient: usize, vectors: Vec<Vec<F>>, tol: f64) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(vectors).expect("span vectors of equal length");
        assert_eq!(m.cols(), ambient, "span vector length mismatch");
        let (red, pivots) = m.rref_tol(tol);
        Subspace {
            ambient,
            basis: (0..pivots.len()).map(|i| red.row(i).to_vec()).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.contains_tol(v, DEFAULT_TOL)
    }

    pub fn contains_tol(&self, v: &[F], tol: f64) -> bool {
        if v.iter().all(|x| x.is_negligible(tol)) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).unwrap().rank_tol(tol) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Smallest subspace containing both.
    pub fn join(&self, other: &Subspace<F>) -> Self {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::span(self.ambient, rows)
    }
}

impl<F: fmt::Display> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {})", self.basis.len(), self.ambient)?;
        for v in &self.basis {
            let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            write!(f, "\n  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(p: i64) -> Rational {
        rational(p, 1)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::<Rational>::identity(2)), 2);
        assert_eq!(rank(&Matrix::<Rational>::zeros(3, 3)), 0);
        // single Jordan block for eigenvalue 0: rows (0,1,0), (0,0,1), (0,0,0)
        assert_eq!(rank(&mat(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::<Rational>::identity(3)).is_zero());
        assert_eq!(kernel(&Matrix::<Rational>::zeros(4, 4)).dim(), 4);
        let k = kernel(&mat(&[&[1, -1]]));
        assert_eq!(k.basis(), &[vec![q(1), q(1)]]);
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(
            jordan_type(&Matrix::<Rational>::zeros(4, 4)).unwrap(),
            vec![1, 1, 1, 1]
        );
        assert_eq!(
            jordan_type(&Matrix::<Rational>::nilpotent_jordan_block(4)).unwrap(),
            vec![4]
        );
        let n = Matrix::block_diag(&[
            Matrix::<Rational>::nilpotent_jordan_block(3),
            Matrix::nilpotent_jordan_block(2),
        ]);
        // ranks 5, 3, 1, 0 -> blocks >=1: 2, >=2: 2, >=3: 1
        assert_eq!(jordan_type(&n).unwrap(), vec![3, 2]);
        assert_eq!(
            jordan_type(&Matrix::<Rational>::identity(2)),
            Err(Error::NotNilpotent)
        );
        assert_eq!(
            jordan_type(&Matrix::<Rational>::zeros(0, 0)).unwrap(),
            Vec::<usize>::new()
        );
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse_tol(0.0).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(mat(&[&[1, 2], &[2, 4]]).inverse_tol(0.0).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<Rational>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                Matrix::from_rows(
                    v.chunks(c)
                        .map(|ch| ch.iter().map(|&x| q(x)).collect())
                        .collect(),
                )
                .unwrap()
            })
        })
    }

    fn nilpotent_matrix() -> impl Strategy<Value = Matrix<Rational>> {
        // strictly lower triangular conjugated by a unimodular upper triangular matrix
        (1usize..6).prop_flat_map(|n| {
            (
                proptest::collection::vec(-2i64..=2, n * n),
                proptest::collection::vec(-2i64..=2, n * n),
            )
                .prop_map(move |(a, b)| {
                    let mut l = Matrix::<Rational>::zeros(n, n);
                    let mut u = Matrix::<Rational>::identity(n);
                    for i in 0..n {
                        for j in 0..n {
                            if i > j {
                                l[(i, j)] = q(a[i * n + j]);
                            }
                            if i < j {
                                u[(i, j)] = q(b[i * n + j]);
                            }
                        }
                    }
                    let ui = u.inverse_tol(0.0).unwrap();
                    u.mul(&l).unwrap().mul(&ui).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            prop_assert_eq!(rank(&m) + kernel(&m).dim(), m.cols());
            let k = kernel(&m);
            for v in k.basis() {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn kernel_is_canonical(m in small_matrix()) {
            let k = kernel(&m);
            let again = Subspace::span(k.ambient(), k.basis().iter().rev().cloned().collect());
            prop_assert_eq!(&again, &k);
            if k.dim() > 0 {
                // relation matrix of the kernel: its kernel's kernel is k again
                let rel = kernel(&Matrix::from_rows(k.basis().to_vec()).unwrap());
                let rel_mat = if rel.dim() == 0 {
                    Matrix::zeros(1, k.ambient())
                } else {
                    Matrix::from_rows(rel.basis().to_vec()).unwrap()
                };
                prop_assert_eq!(kernel(&rel_mat), k);
            }
        }

        #[test]
        fn jordan_type_is_partition(n in nilpotent_matrix()) {
            let t = jordan_type(&n).unwrap();
            prop_assert_eq!(t.iter().sum::<usize>(), n.rows());
            prop_assert!(t.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
