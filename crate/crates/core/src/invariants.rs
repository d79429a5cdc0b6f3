//! Nilpotency invariants: descending central series, nilindex, right
//! annihilator, center, right multiplication operators and the
//! characteristic sequence.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{jordan_type, kernel, Matrix, Subspace};
use crate::scalar::Scalar;

/// Outcome of the descending central series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Nilindex {
    /// Minimal `s` with `L^s = 0`.
    Finite(usize),
    NotNilpotent,
}

impl Nilindex {
    pub fn value(self) -> Option<usize> {
        match self {
            Nilindex::Finite(s) => Some(s),
            Nilindex::NotNilpotent => None,
        }
    }
}

impl fmt::Display for Nilindex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nilindex::Finite(s) => write!(f, "{s}"),
            Nilindex::NotNilpotent => f.write_str("not nilpotent"),
        }
    }
}

/// The chain `L = L¹ ⊇ L² ⊇ …`. For nilpotent input the last entry is zero;
/// otherwise it is the stabilized nonzero term.
#[derive(Clone, PartialEq)]
pub struct SeriesReport<F> {
    pub chain: Vec<Subspace<F>>,
    pub nilindex: Nilindex,
}

impl<F: fmt::Display> fmt::Debug for SeriesReport<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesReport")
            .field("chain", &self.chain)
            .field("nilindex", &self.nilindex)
            .finish()
    }
}

impl<F: Scalar> SeriesReport<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(Subspace::dim).collect()
    }
}

impl<F: Scalar> fmt::Display for SeriesReport<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims().iter().map(usize::to_string).collect();
        f.write_str(&dims.join(" → "))?;
        if self.nilindex == Nilindex::NotNilpotent {
            f.write_str(" (stabilized)")?;
        }
        Ok(())
    }
}

/// `L^{k+1} = [L^k, L]`, iterated until zero or stabilization.
pub fn descending_central_series<F: Scalar>(a: &SuperAlgebra<F>) -> SeriesReport<F> {
    let dim = a.dim();
    let basis: Vec<Vec<F>> = a.basis().map(|b| a.unit(b)).collect();
    let mut chain = vec![Subspace::full(dim)];
    loop {
        let current = chain.last().unwrap();
        if current.is_zero() {
            let s = chain.len();
            return SeriesReport {
                chain,
                nilindex: Nilindex::Finite(s),
            };
        }
        let products: Vec<Vec<F>> = current
            .basis()
            .iter()
            .flat_map(|g| basis.iter().map(move |b| (g, b)))
            .map(|(g, b)| a.bracket(g, b))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let next = Subspace::span(dim, products);
        if next.dim() == current.dim() {
            return SeriesReport {
                chain,
                nilindex: Nilindex::NotNilpotent,
            };
        }
        chain.push(next);
    }
}

pub fn nilindex<F: Scalar>(a: &SuperAlgebra<F>) -> Nilindex {
    descending_central_series(a).nilindex
}

/// `L^2 = [L, L]`.
pub fn derived_subspace<F: Scalar>(a: &SuperAlgebra<F>) -> Subspace<F> {
    let basis: Vec<Vec<F>> = a.basis().map(|b| a.unit(b)).collect();
    let products = basis
        .iter()
        .flat_map(|u| basis.iter().map(move |v| (u, v)))
        .map(|(u, v)| a.bracket(u, v))
        .collect();
    Subspace::span(a.dim(), products)
}

fn stack<F: Scalar>(blocks: &[Matrix<F>], cols: usize) -> Matrix<F> {
    let rows: Vec<Vec<F>> = blocks.iter().flat_map(Matrix::to_rows).collect();
    if rows.is_empty() {
        Matrix::zeros(0, cols)
    } else {
        Matrix::from_rows(rows).unwrap()
    }
}

/// `R(L) = { z : [L, z] = 0 }`.
pub fn right_annihilator<F: Scalar>(a: &SuperAlgebra<F>) -> Subspace<F> {
    let maps: Vec<Matrix<F>> = a.basis().map(|b| a.left_mul(&a.unit(b))).collect();
    if maps.is_empty() {
        return Subspace::zero(0);
    }
    kernel(&stack(&maps, a.dim()))
}

/// `Z(L) = { z : [L, z] = [z, L] = 0 }`.
pub fn center<F: Scalar>(a: &SuperAlgebra<F>) -> Subspace<F> {
    let mut maps: Vec<Matrix<F>> = a.basis().map(|b| a.left_mul(&a.unit(b))).collect();
    maps.extend(a.basis().map(|b| a.right_mul(&a.unit(b))));
    if maps.is_empty() {
        return Subspace::zero(0);
    }
    kernel(&stack(&maps, a.dim()))
}

fn embed_even<F: Scalar>(a: &SuperAlgebra<F>, x_even: &[F]) -> Result<Vec<F>> {
    if x_even.len() != a.n() {
        return Err(Error::NotEven {
            expected: a.n(),
            found: x_even.len(),
        });
    }
    let mut x = a.zero_vector();
    x[..a.n()].clone_from_slice(x_even);
    Ok(x)
}

/// Matrix of `v ↦ [v, x]` restricted to `L_0` or `L_1`, for even `x`
/// given by its `n` even coordinates.
pub fn right_mul_matrix<F: Scalar>(
    a: &SuperAlgebra<F>,
    x_even: &[F],
    part: Parity,
) -> Result<Matrix<F>> {
    let x = embed_even(a, x_even)?;
    let full = a.right_mul(&x);
    let (start, len) = match part {
        Parity::Even => (0, a.n()),
        Parity::Odd => (a.n(), a.m()),
    };
    let mut out = Matrix::zeros(len, len);
    for i in 0..len {
        for j in 0..len {
            out[(i, j)] = full[(start + i, start + j)].clone();
        }
    }
    Ok(out)
}

/// A pair of Jordan types `(C_0 | C_1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CharSequence {
    pub c0: Vec<usize>,
    pub c1: Vec<usize>,
}

impl CharSequence {
    pub fn new(c0: Vec<usize>, c1: Vec<usize>) -> Self {
        CharSequence { c0, c1 }
    }

    /// Componentwise lexicographic maximum.
    pub fn max_with(&self, other: &CharSequence) -> CharSequence {
        CharSequence {
            c0: self.c0.clone().max(other.c0.clone()),
            c1: self.c1.clone().max(other.c1.clone()),
        }
    }
}

impl fmt::Display for CharSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[usize]| s.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({} | {})", join(&self.c0), join(&self.c1))
    }
}

/// `(C_0(x) | C_1(x))` for an even `x`.
pub fn char_seq_at<F: Scalar>(a: &SuperAlgebra<F>, x_even: &[F]) -> Result<CharSequence> {
    let r0 = right_mul_matrix(a, x_even, Parity::Even)?;
    let r1 = right_mul_matrix(a, x_even, Parity::Odd)?;
    Ok(CharSequence {
        c0: jordan_type(&r0)?,
        c1: jordan_type(&r1)?,
    })
}

/// `[L_0, L_0]` as a subspace of the even coordinates.
pub fn even_derived<F: Scalar>(a: &SuperAlgebra<F>) -> Subspace<F> {
    let n = a.n();
    let evens: Vec<_> = a.basis().filter(|b| b.parity == Parity::Even).collect();
    let products = evens
        .iter()
        .flat_map(|&u| evens.iter().map(move |&v| (u, v)))
        .map(|(u, v)| a.bracket_basis(u, v)[..n].to_vec())
        .collect();
    Subspace::span(n, products)
}

/// Lexicographic maxima of `C_0(x)` and `C_1(x)` over the even basis
/// vectors outside `[L_0, L_0]` plus `samples` seeded random even vectors
/// outside it. The two maxima are taken independently.
pub fn characteristic_sequence<F: Scalar>(
    a: &SuperAlgebra<F>,
    samples: usize,
    seed: u64,
) -> Result<CharSequence> {
    let n = a.n();
    let derived = even_derived(a);
    if derived.dim() == n {
        return Err(Error::EmptySearchSpace);
    }
    let mut candidates: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut v = vec![F::zero(); n];
            v[i] = F::one();
            v
        })
        .filter(|v| !derived.contains(v))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = 0;
    while drawn < samples {
        let v: Vec<F> = (0..n).map(|_| F::from_int(rng.gen_range(-9..=9))).collect();
        if !derived.contains(&v) {
            candidates.push(v);
            drawn += 1;
        }
    }
    let mut best: Option<CharSequence> = None;
    for x in &candidates {
        let cs = char_seq_at(a, x)?;
        best = Some(match best {
            Some(b) => b.max_with(&cs),
            None => cs,
        });
    }
    Ok(best.expect("at least one candidate outside [L0, L0]"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisIndex;
    use crate::scalar::{rational, Rational};

    fn q(p: i64) -> Rational {
        rational(p, 1)
    }

    fn null_filiform(n: usize) -> SuperAlgebra<Rational> {
        SuperAlgebra::new(
            n,
            0,
            (1..n).map(|i| {
                let mut v = vec![q(0); n];
                v[i] = q(1);
                (BasisIndex::x(i), BasisIndex::x(1), v)
            }),
        )
        .unwrap()
    }

    #[test]
    fn null_filiform_series() {
        let r = descending_central_series(&null_filiform(4));
        assert_eq!(r.dims(), vec![4, 3, 2, 1, 0]);
        assert_eq!(r.nilindex, Nilindex::Finite(5));
        assert_eq!(r.to_string(), "4 → 3 → 2 → 1 → 0");
    }

    #[test]
    fn abelian_invariants() {
        let a = SuperAlgebra::<Rational>::abelian(2, 2);
        let r = descending_central_series(&a);
        assert_eq!(r.dims(), vec![4, 0]);
        assert_eq!(nilindex(&a), Nilindex::Finite(2));
        assert_eq!(right_annihilator(&a).dim(), 4);
        assert_eq!(center(&a).dim(), 4);
        assert_eq!(
            characteristic_sequence(&a, 10, 1).unwrap(),
            CharSequence::new(vec![1, 1], vec![1, 1])
        );
    }

    #[test]
    fn null_filiform_right_annihilator() {
        let a = null_filiform(4);
        let expect = Subspace::span(4, (1..4).map(|i| a.unit(BasisIndex::x(i + 1))).collect());
        assert_eq!(right_annihilator(&a), expect);
    }

    #[test]
    fn zero_element_sequence() {
        let a = null_filiform(3);
        let cs = char_seq_at(&a, &[q(0), q(0), q(0)]).unwrap();
        assert_eq!(cs, CharSequence::new(vec![1, 1, 1], vec![]));
        assert!(right_mul_matrix(&a, &[q(0), q(0), q(0)], Parity::Even)
            .unwrap()
            .is_zero_tol(0.0));
        assert!(matches!(
            right_mul_matrix(&a, &[q(1)], Parity::Even),
            Err(Error::NotEven {
                expected: 3,
                found: 1
            })
        ));
    }

    #[test]
    fn non_nilpotent_series_stabilizes() {
        // [x1, x1] = x1
        let a =
            SuperAlgebra::new(1, 0, [(BasisIndex::x(1), BasisIndex::x(1), vec![q(1)])]).unwrap();
        let r = descending_central_series(&a);
        assert_eq!(r.nilindex, Nilindex::NotNilpotent);
        assert_eq!(r.dims(), vec![1]);
        assert_eq!(
            characteristic_sequence(&a, 5, 0),
            Err(Error::EmptySearchSpace)
        );
    }

    #[test]
    fn display_format() {
        assert_eq!(
            CharSequence::new(vec![4], vec![2, 1]).to_string(),
            "(4 | 2,1)"
        );
    }
}
