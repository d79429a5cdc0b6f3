//! Explicit families of nilpotent Leibniz superalgebras.

use num_complex::Complex64;

use crate::algebra::{BasisIndex, GradedMap, SuperAlgebra};
use crate::catalog::skeleton::{HeadRows, Skeleton};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{principal_sqrt, sign, Scalar, DEFAULT_TOL};

fn unit<F: Scalar>(n: usize, m: usize, idx: BasisIndex) -> Vec<F> {
    let mut v = vec![F::zero(); n + m];
    v[idx.flat(n)] = F::one();
    v
}

fn scaled<F: Scalar>(n: usize, m: usize, idx: BasisIndex, c: F) -> Vec<F> {
    let mut v = vec![F::zero(); n + m];
    v[idx.flat(n)] = c;
    v
}

/// Null-filiform Leibniz algebra `[x_i, x_1] = x_{i+1}`, `1 ≤ i ≤ n−1`.
pub fn max_nilindex_leibniz<F: Scalar>(n: usize) -> SuperAlgebra<F> {
    SuperAlgebra::new(
        n,
        0,
        (1..n).map(|i| {
            (
                BasisIndex::x(i),
                BasisIndex::x(1),
                unit(n, 0, BasisIndex::x(i + 1)),
            )
        }),
    )
    .expect("null-filiform table is graded")
    .with_name(format!("max-leibniz({n})"))
}

/// Single-generated superalgebra with `m = n + 1`.
pub fn max_nilindex_super<F: Scalar>(n: usize) -> SuperAlgebra<F> {
    max_nilindex_super_with(n, n + 1).expect("m = n + 1 is admissible")
}

/// The chain `e_1, …, e_{n+m}` with `[e_i, e_1] = e_{i+1}` and
/// `[e_i, e_2] = 2 e_{i+2}`. Odd chain positions are odd elements
/// (`e_{2j−1} = y_j`), even positions are even (`e_{2i} = x_i`), so `m` is
/// `n` or `n + 1`.
pub fn max_nilindex_super_with<F: Scalar>(n: usize, m: usize) -> Result<SuperAlgebra<F>> {
    if m != n && m != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "the single-generated superalgebra needs m = n or m = n + 1, got (n, m) = ({n}, {m})"
        )));
    }
    let len = n + m;
    let e = |k: usize| {
        if k % 2 == 1 {
            BasisIndex::y(k.div_ceil(2))
        } else {
            BasisIndex::x(k / 2)
        }
    };
    let mut entries = Vec::new();
    for i in 1..len {
        entries.push((e(i), e(1), unit::<F>(n, m, e(i + 1))));
    }
    for i in 1..len.saturating_sub(1) {
        entries.push((e(i), e(2), scaled(n, m, e(i + 2), F::from_int(2))));
    }
    let a = SuperAlgebra::new(n, m, entries)?.with_name(format!("max-super({n}, {m})"));
    debug_assert!(a.check_grading().is_clean());
    Ok(a)
}

/// Zero-filiform skeleton in an adapted basis: a single odd chain of length `m`.
/// `alpha` has `n` rows of length `m−1`, `beta` has `m` rows of length `n−1`.
pub fn zf_adapted<F: Scalar>(
    n: usize,
    m: usize,
    alpha: Vec<Vec<F>>,
    beta: Vec<Vec<F>>,
) -> Result<Skeleton<F>> {
    if m == 0 {
        return Err(Error::DimensionMismatch(
            "zero-filiform skeleton needs m ≥ 1".into(),
        ));
    }
    Skeleton::new(n, vec![m], vec![HeadRows { alpha, beta }])
}

/// Skeleton whose `x_1`-action on `L_1` is `diag(J_{m_1}, …, J_{m_k})`, `k ≥ 2`.
/// Rows for the heads of parts after the first default to zero.
pub fn csq_model<F: Scalar>(
    n: usize,
    parts: Vec<usize>,
    alpha: Vec<Vec<F>>,
    beta: Vec<Vec<F>>,
) -> Result<Skeleton<F>> {
    let m: usize = parts.iter().sum();
    let k = parts.len();
    let mut heads = vec![HeadRows { alpha, beta }];
    heads.extend((1..k).map(|_| HeadRows::zero(n, m)));
    csq_model_with_heads(n, parts, heads)
}

pub fn csq_model_with_heads<F: Scalar>(
    n: usize,
    parts: Vec<usize>,
    heads: Vec<HeadRows<F>>,
) -> Result<Skeleton<F>> {
    let m: usize = parts.iter().sum();
    if parts.len() < 2 || parts.contains(&0) {
        return Err(Error::PartitionMismatch { parts, m });
    }
    Skeleton::new(n, parts, heads)
}

/// Like [`csq_model`] but checks the parts against a declared odd dimension.
pub fn csq_model_checked<F: Scalar>(
    n: usize,
    m: usize,
    parts: Vec<usize>,
    alpha: Vec<Vec<F>>,
    beta: Vec<Vec<F>>,
) -> Result<Skeleton<F>> {
    if parts.iter().sum::<usize>() != m {
        return Err(Error::PartitionMismatch { parts, m });
    }
    csq_model(n, parts, alpha, beta)
}

fn check_odd_m(m: usize) -> Result<()> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::EvenM(m));
    }
    Ok(())
}

fn check_gamma<F: Scalar>(m: usize, gamma: &[F]) -> Result<()> {
    check_odd_m(m)?;
    if gamma.len() != m.div_ceil(2) {
        return Err(Error::DimensionMismatch(format!(
            "expected {} gamma values for m = {m}, got {}",
            m.div_ceil(2),
            gamma.len()
        )));
    }
    if gamma.last().unwrap().is_negligible(DEFAULT_TOL) {
        return Err(Error::DegenerateFamily);
    }
    Ok(())
}

fn odd_family_common<F: Scalar>(m: usize) -> Vec<(BasisIndex, BasisIndex, Vec<F>)> {
    let n = 2;
    let mut entries = vec![(
        BasisIndex::x(1),
        BasisIndex::x(1),
        unit(n, m, BasisIndex::x(2)),
    )];
    for i in 1..m {
        entries.push((
            BasisIndex::y(i),
            BasisIndex::x(1),
            unit(n, m, BasisIndex::y(i + 1)),
        ));
        entries.push((
            BasisIndex::x(1),
            BasisIndex::y(i),
            scaled(n, m, BasisIndex::y(i + 1), -F::one()),
        ));
    }
    entries
}

/// The family `L(γ_1, …, γ_{(m+1)/2})` on `n = 2`:
/// `[y_i, y_j] = (−1)^{j−1} γ_{(i+j)/2} x_2` for `i + j` even, `2 ≤ i + j ≤ m + 1`.
pub fn thm32_family<F: Scalar>(m: usize, gamma: &[F]) -> Result<SuperAlgebra<F>> {
    check_gamma(m, gamma)?;
    let mut entries = odd_family_common::<F>(m);
    for i in 1..=m {
        for j in 1..=m {
            let s = i + j;
            if s % 2 == 0 && s <= m + 1 {
                let c = sign::<F>(j - 1) * gamma[s / 2 - 1].clone();
                entries.push((
                    BasisIndex::y(i),
                    BasisIndex::y(j),
                    scaled(2, m, BasisIndex::x(2), c),
                ));
            }
        }
    }
    Ok(SuperAlgebra::new(2, m, entries)?.with_name(format!("thm32-family({m})")))
}

/// Skeleton data producing [`thm32_family`] under completion:
/// `α_{1,2} = −1`, `β_{2s−1,2} = γ_s`, all other parameters zero.
pub fn thm32_skeleton<F: Scalar>(m: usize, gamma: &[F]) -> Result<Skeleton<F>> {
    check_gamma(m, gamma)?;
    let mut rows = HeadRows::zero(2, m);
    rows.alpha[0][0] = -F::one();
    for (s, g) in gamma.iter().enumerate() {
        rows.beta[2 * s][0] = g.clone();
    }
    zf_adapted(2, m, rows.alpha, rows.beta)
}

/// Normal form: `[x_1, x_1] = x_2`, `[y_i, x_1] = y_{i+1}`, `[x_1, y_i] = −y_{i+1}`
/// and `[y_i, y_j] = (−1)^{j−1} x_2` exactly when `i + j = m + 1`.
pub fn thm32_normal<F: Scalar>(m: usize) -> Result<SuperAlgebra<F>> {
    check_odd_m(m)?;
    let mut entries = odd_family_common::<F>(m);
    for i in 1..=m {
        let j = m + 1 - i;
        entries.push((
            BasisIndex::y(i),
            BasisIndex::y(j),
            scaled(2, m, BasisIndex::x(2), sign::<F>(j - 1)),
        ));
    }
    Ok(SuperAlgebra::new(2, m, entries)?.with_name(format!("thm32-normal({m})")))
}

/// Coefficients `a_1, a_3, …, a_m` of `y'_1 = Σ a_{2s−1} y_{2s−1}`.
///
/// With `c_s = a_{2s−1}` and `M = (m+1)/2`, the conditions `[y'_i, y'_1] = 0`
/// for `i < m` and `[y'_m, y'_1] = x'_2` read
/// `Σ_g γ_g Σ_{r+s = g−l+2} c_r c_s = 0` for `l < M`, and
/// `b_1^{m−1} c_1² γ_M = b_1²`. They are solved top-down: `c_1` by the
/// principal square root, then each `c_k` from the `l = M−k+1` condition,
/// where it enters only through `2 c_1 c_k γ_M`.
pub fn thm32_coefficients(m: usize, gamma: &[Complex64], b1: Complex64) -> Result<Vec<Complex64>> {
    check_gamma(m, gamma)?;
    if b1.is_negligible(DEFAULT_TOL) {
        return Err(Error::ZeroScale);
    }
    let big_m = m.div_ceil(2);
    let g = |k: usize| gamma[k - 1];
    let gm = g(big_m);
    let mut c = vec![Complex64::new(0.0, 0.0); big_m + 1];
    c[1] = principal_sqrt(Complex64::new(1.0, 0.0) / (b1.powu((m - 3) as u32) * gm));
    for k in 2..=big_m {
        let l = big_m - k + 1;
        let mut acc = Complex64::new(0.0, 0.0);
        for gi in l..=big_m {
            let total = gi + 2 - l;
            for r in 1..total {
                let s = total - r;
                if r >= k || s >= k {
                    continue;
                }
                acc += g(gi) * c[r] * c[s];
            }
        }
        c[k] = -acc / (Complex64::new(2.0, 0.0) * c[1] * gm);
    }
    Ok(c[1..].to_vec())
}

/// Graded map carrying `thm32_family(m, γ)` to `thm32_normal(m)`:
/// `x'_1 = b_1 x_1`, `x'_2 = b_1² x_2`, `y'_1 = Σ a_{2s−1} y_{2s−1}` and
/// `y'_{k+1} = [y'_k, x'_1]`.
pub fn thm32_basis_change(
    m: usize,
    gamma: &[Complex64],
    b1: Complex64,
) -> Result<GradedMap<Complex64>> {
    let c = thm32_coefficients(m, gamma, b1)?;
    let mut even = Matrix::zeros(2, 2);
    even[(0, 0)] = b1;
    even[(1, 1)] = b1 * b1;
    let mut odd = Matrix::zeros(m, m);
    for k in 1..=m {
        let scale = b1.powu((k - 1) as u32);
        for (s, cs) in c.iter().enumerate() {
            let row = 2 * s + k; // 1-based index 2(s+1) − 1 + k − 1
            if row <= m {
                odd[(row - 1, k - 1)] = scale * cs;
            }
        }
    }
    GradedMap::new(even, odd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{nilindex, Nilindex};
    use crate::scalar::{rational, Rational};

    fn q(p: i64) -> Rational {
        rational(p, 1)
    }

    #[test]
    fn max_leibniz_small_cases() {
        let a1 = max_nilindex_leibniz::<Rational>(1);
        assert!(a1.is_abelian());
        let a2 = max_nilindex_leibniz::<Rational>(2);
        let entries: Vec<_> = a2.entries().map(|(l, r, v)| (l, r, v.to_vec())).collect();
        assert_eq!(
            entries,
            vec![(BasisIndex::x(1), BasisIndex::x(1), vec![q(0), q(1)])]
        );
        assert_eq!(
            nilindex(&max_nilindex_leibniz::<Rational>(3)),
            Nilindex::Finite(4)
        );
    }

    #[test]
    fn max_super_dims() {
        let a = max_nilindex_super::<Rational>(2);
        assert_eq!((a.n(), a.m()), (2, 3));
        assert_eq!(nilindex(&a), Nilindex::Finite(6));
        let b = max_nilindex_super::<Rational>(1);
        assert_eq!((b.n(), b.m()), (1, 2));
        // [y1, y1] = x1, [x1, y1] = y2, [y1, x1] = 2 y2
        assert_eq!(
            b.bracket_basis(BasisIndex::y(1), BasisIndex::y(1)),
            b.unit(BasisIndex::x(1))
        );
        assert_eq!(
            b.bracket_basis(BasisIndex::x(1), BasisIndex::y(1)),
            b.unit(BasisIndex::y(2))
        );
        assert_eq!(
            b.bracket_basis(BasisIndex::y(1), BasisIndex::x(1)),
            vec![q(0), q(0), q(2)]
        );
        assert!(max_nilindex_super_with::<Rational>(2, 4).is_err());
    }

    #[test]
    fn family_errors() {
        assert_eq!(
            thm32_family::<Rational>(4, &[q(1), q(1)]).unwrap_err(),
            Error::EvenM(4)
        );
        assert_eq!(
            thm32_family::<Rational>(3, &[q(1), q(0)]).unwrap_err(),
            Error::DegenerateFamily
        );
        assert_eq!(thm32_normal::<Rational>(6).unwrap_err(), Error::EvenM(6));
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(
            thm32_basis_change(3, &[one, z], one).unwrap_err(),
            Error::DegenerateFamily
        );
        assert_eq!(
            thm32_basis_change(3, &[z, one], z).unwrap_err(),
            Error::ZeroScale
        );
    }

    #[test]
    fn normal_form_m3_table() {
        let a = thm32_normal::<Rational>(3).unwrap();
        let x2 = a.unit(BasisIndex::x(2));
        let neg_x2: Vec<_> = x2.iter().map(|v| -v.clone()).collect();
        assert_eq!(a.bracket_basis(BasisIndex::y(1), BasisIndex::y(3)), x2);
        assert_eq!(a.bracket_basis(BasisIndex::y(2), BasisIndex::y(2)), neg_x2);
        assert_eq!(a.bracket_basis(BasisIndex::y(3), BasisIndex::y(1)), x2);
        assert_eq!(
            a.bracket_basis(BasisIndex::y(1), BasisIndex::y(2)),
            a.zero_vector()
        );
    }

    #[test]
    fn skeleton_reproduces_family() {
        let gamma = vec![rational(1, 2), q(-3), q(2)];
        let s = thm32_skeleton(5, &gamma).unwrap();
        assert_eq!(s.complete().unwrap(), thm32_family(5, &gamma).unwrap());
    }

    #[test]
    fn m3_coefficients() {
        let one = Complex64::new(1.0, 0.0);
        let c = thm32_coefficients(3, &[Complex64::new(0.0, 0.0), one], one).unwrap();
        assert!((c[0] - one).norm() < 1e-15);
        assert!(c[1].norm() < 1e-15);
    }

    #[test]
    fn coefficients_satisfy_normalization() {
        // M = 4, check the vanishing sums directly.
        let m = 7;
        let gamma: Vec<Complex64> = [2.0, -1.0, 0.5, 3.0]
            .iter()
            .map(|&g| Complex64::new(g, 0.0))
            .collect();
        let b1 = Complex64::new(1.5, 0.0);
        let c = thm32_coefficients(m, &gamma, b1).unwrap();
        let big_m = 4;
        for l in 1..=big_m {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 1..=big_m {
                for s in 1..=big_m {
                    let gi = r + s + l - 2;
                    if gi <= big_m {
                        acc += gamma[gi - 1] * c[r - 1] * c[s - 1];
                    }
                }
            }
            let expect = if l == big_m {
                b1.powu(2) / b1.powu((m - 1) as u32)
            } else {
                Complex64::new(0.0, 0.0)
            };
            assert!((acc - expect).norm() < 1e-12, "l = {l}: {acc}");
        }
    }
}
