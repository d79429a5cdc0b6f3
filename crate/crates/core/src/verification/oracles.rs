//! Cross-checks against closed formulas and explicit basis changes.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::BasisIndex;
use crate::algebra::{GradedMap, Parity, SuperAlgebra};
use crate::catalog::{
    closed_formula_bracket, thm32_basis_change, thm32_family, thm32_normal, Skeleton,
};
use crate::error::{Error, Result};
use crate::invariants::{derived_subspace, nilindex, Nilindex};
use crate::linalg::Subspace;
use crate::scalar::{Rational, Scalar};
use crate::verification::sampling::{trial_rng, ParamSampler};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaMismatch {
    pub trial: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaReport {
    pub n: usize,
    pub parts: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub pairs_checked: usize,
    /// Trials whose completion fails the full superidentity check.
    pub inconsistent: usize,
    pub mismatches: Vec<FormulaMismatch>,
}

impl FormulaReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the completed `[y_i, y_j]`, `1 ≤ i, j ≤ m_1`, with the closed
/// formula. Inconsistent completions are compared as well.
pub fn compare_with_formula(s: &Skeleton<Rational>) -> Vec<(usize, usize)> {
    let m1 = s.parts()[0];
    let n = s.n();
    let beta = &s.heads()[0].beta;
    let a = s.complete_table();
    let mut bad = Vec::new();
    for i in 1..=m1 {
        for j in 1..=m1 {
            let completed = a.bracket_basis(BasisIndex::y(i), BasisIndex::y(j));
            let closed = closed_formula_bracket(i, j, beta, n, m1).expect("indices in range");
            let odd_clean = completed[n..].iter().all(|v| v.is_zero());
            if !odd_clean || completed[..n] != closed[..] {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Random dense parameters over the skeleton with the given parts.
pub fn verify_formula_parts(n: usize, parts: &[usize], trials: usize, seed: u64) -> FormulaReport {
    let m: usize = parts.iter().sum();
    let sampler = ParamSampler::DENSE;
    let results: Vec<(Vec<(usize, usize)>, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let heads = parts
                .iter()
                .map(|_| sampler.head_rows(&mut rng, n, m))
                .collect();
            let s = Skeleton::new(n, parts.to_vec(), heads).expect("sampled shapes match");
            let bad = compare_with_formula(&s);
            let consistent = s.complete_table().first_leibniz_violation(0.0).is_none();
            (bad, consistent)
        })
        .collect();
    let m1 = parts[0];
    let mut mismatches = Vec::new();
    let mut inconsistent = 0;
    for (t, (bad, consistent)) in results.into_iter().enumerate() {
        if !consistent {
            inconsistent += 1;
        }
        mismatches.extend(
            bad.into_iter()
                .map(|(i, j)| FormulaMismatch { trial: t, i, j }),
        );
    }
    FormulaReport {
        n,
        parts: parts.to_vec(),
        trials,
        seed,
        pairs_checked: trials * m1 * m1,
        inconsistent,
        mismatches,
    }
}

/// Zero-filiform case: a single odd chain of length `m`.
pub fn verify_lemma_formula(n: usize, m: usize, trials: usize, seed: u64) -> FormulaReport {
    verify_formula_parts(n, &[m], trials, seed)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm32Report {
    pub m: usize,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Builds the family, applies the normalizing basis change and measures the
/// largest structure-constant deviation from the normal form.
pub fn verify_thm32(m: usize, gamma: &[Complex64], b1: Complex64, tol: f64) -> Result<Thm32Report> {
    let family = thm32_family(m, gamma)?;
    let t = thm32_basis_change(m, gamma, b1)?;
    let moved = family.apply_basis_change_tol(&t, 0.0)?;
    let normal = thm32_normal::<Complex64>(m)?;
    let deviation = moved.max_deviation(&normal)?;
    Ok(Thm32Report {
        m,
        deviation,
        tolerance: tol,
        passed: deviation < tol,
    })
}

/// True iff `t` is invertible and carries `a` onto `b`.
pub fn verify_isomorphism<F: Scalar>(
    a: &SuperAlgebra<F>,
    b: &SuperAlgebra<F>,
    t: &GradedMap<F>,
    tol: f64,
) -> Result<bool> {
    if (a.n(), a.m()) != (b.n(), b.m()) || (t.n(), t.m()) != (a.n(), a.m()) {
        return Err(Error::DimensionMismatch(format!(
            "A is ({}, {}), B is ({}, {}), T is ({}, {})",
            a.n(),
            a.m(),
            b.n(),
            b.m(),
            t.n(),
            t.m()
        )));
    }
    if !t.is_invertible_tol(tol) {
        return Ok(false);
    }
    let moved = a.apply_basis_change_tol(t, tol)?;
    Ok(moved.approx_eq(b, tol))
}

/// Parities of a basis of `L / L²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorPlacement {
    pub even: usize,
    pub odd: usize,
}

impl GeneratorPlacement {
    pub fn parities(&self) -> Vec<Parity> {
        let mut v = vec![Parity::Even; self.even];
        v.extend(std::iter::repeat_n(Parity::Odd, self.odd));
        v
    }

    pub fn is_mixed(&self) -> bool {
        self.even == 1 && self.odd == 1
    }
}

/// For a nilpotent algebra with `dim L/L² = 2`, reports how many of the
/// two generators are even and how many odd.
pub fn check_generator_placement<F: Scalar>(a: &SuperAlgebra<F>) -> Result<GeneratorPlacement> {
    if nilindex(a) == Nilindex::NotNilpotent {
        return Err(Error::NotNilpotent);
    }
    let d2 = derived_subspace(a);
    let quotient = a.dim() - d2.dim();
    if quotient != 2 {
        return Err(Error::NotTwoGenerated(quotient));
    }
    // L² is spanned by homogeneous products, so it splits by parity.
    let even_products: Vec<Vec<F>> = d2.basis().iter().map(|v| v[..a.n()].to_vec()).collect();
    let even_dim = Subspace::span(a.n(), even_products).dim();
    Ok(GeneratorPlacement {
        even: a.n() - even_dim,
        odd: a.m() - (d2.dim() - even_dim),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{max_nilindex_leibniz, zf_adapted, HeadRows};
    use crate::scalar::rational;

    #[test]
    fn placement_examples() {
        let nf = thm32_normal::<Rational>(3).unwrap();
        assert_eq!(
            check_generator_placement(&nf).unwrap(),
            GeneratorPlacement { even: 1, odd: 1 }
        );
        assert_eq!(
            check_generator_placement(&max_nilindex_leibniz::<Rational>(4)).unwrap_err(),
            Error::NotTwoGenerated(1)
        );
        let h = HeadRows::<Rational>::zero(2, 2);
        let zf = zf_adapted(2, 2, h.alpha, h.beta)
            .unwrap()
            .complete()
            .unwrap();
        assert!(check_generator_placement(&zf).unwrap().is_mixed());
    }

    #[test]
    fn isomorphism_examples() {
        let a = thm32_normal::<Rational>(3).unwrap();
        assert!(verify_isomorphism(&a, &a, &GradedMap::identity(2, 3), 0.0).unwrap());
        let ab = SuperAlgebra::<Rational>::abelian(2, 3);
        assert!(!verify_isomorphism(&ab, &a, &GradedMap::identity(2, 3), 0.0).unwrap());
        assert!(matches!(
            verify_isomorphism(
                &ab,
                &SuperAlgebra::abelian(1, 3),
                &GradedMap::identity(2, 3),
                0.0
            ),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn normalization_m3_exact() {
        let one = Complex64::new(1.0, 0.0);
        let r = verify_thm32(3, &[Complex64::new(0.0, 0.0), one], one, 1e-9).unwrap();
        assert!(r.passed);
        assert!(r.deviation < 1e-14);
    }

    #[test]
    fn normalization_m5_fixed_gamma() {
        let gamma: Vec<Complex64> = [rational(1, 2), rational(-1, 3), rational(2, 1)]
            .iter()
            .map(Complex64::from_rational)
            .collect();
        let r = verify_thm32(5, &gamma, Complex64::new(1.0, 0.0), 1e-9).unwrap();
        assert!(r.passed, "deviation {}", r.deviation);
        assert_eq!(
            verify_thm32(4, &gamma[..2], Complex64::new(1.0, 0.0), 1e-9).unwrap_err(),
            Error::EvenM(4)
        );
    }

    #[test]
    fn closed_formula_small() {
        let r = verify_lemma_formula(2, 3, 100, 11);
        assert!(r.passed(), "{:?}", r.mismatches);
        assert_eq!(r.pairs_checked, 900);
    }

    #[test]
    fn closed_formula_zero_beta() {
        let h = HeadRows::<Rational>::zero(3, 4);
        let s = zf_adapted(3, 4, h.alpha, h.beta).unwrap();
        assert!(compare_with_formula(&s).is_empty());
        let a = s.complete_table();
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(
                    a.bracket_basis(BasisIndex::y(i), BasisIndex::y(j)),
                    a.zero_vector()
                );
            }
        }
    }
}
