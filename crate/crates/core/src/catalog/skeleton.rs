//! Adapted-basis skeletons and their completion by the Leibniz superidentity.
//!
//! A skeleton fixes the right multiplication by the generators: `x_1` acts
//! as a shift along the chains `x_1 → … → x_n` and along each odd part
//! `y_h → … → y_{h+m_k-1}`, while the products `[x_i, y_h]` and `[y_j, y_h]`
//! with each part head `y_h` are free parameter rows. Everything else is
//! derived.

use crate::algebra::{BasisIndex, SuperAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{binomial, sign, Scalar, DEFAULT_TOL};

/// Parameter rows attached to one odd part head `y_h`.
///
/// `alpha[i-1][t-2]` is the coefficient of `y_t` in `[x_i, y_h]` for
/// `2 ≤ t ≤ m`; `beta[j-1][s-2]` is the coefficient of `x_s` in `[y_j, y_h]`
/// for `2 ≤ s ≤ n`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeadRows<F> {
    pub alpha: Vec<Vec<F>>,
    pub beta: Vec<Vec<F>>,
}

impl<F: Scalar> HeadRows<F> {
    pub fn zero(n: usize, m: usize) -> Self {
        HeadRows {
            alpha: vec![vec![F::zero(); m.saturating_sub(1)]; n],
            beta: vec![vec![F::zero(); n.saturating_sub(1)]; m],
        }
    }

    fn check_shape(&self, n: usize, m: usize) -> Result<()> {
        let ok = self.alpha.len() == n
            && self.alpha.iter().all(|r| r.len() == m.saturating_sub(1))
            && self.beta.len() == m
            && self.beta.iter().all(|r| r.len() == n.saturating_sub(1));
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "expected {n} alpha rows of length {} and {m} beta rows of length {}",
                m.saturating_sub(1),
                n.saturating_sub(1)
            )))
        }
    }

    /// Coordinate `β_{j,s}` (1-based `j`, `2 ≤ s ≤ n`).
    pub fn beta_at(&self, j: usize, s: usize) -> &F {
        &self.beta[j - 1][s - 2]
    }

    pub fn alpha_at(&self, i: usize, t: usize) -> &F {
        &self.alpha[i - 1][t - 2]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Skeleton<F> {
    n: usize,
    m: usize,
    parts: Vec<usize>,
    heads: Vec<HeadRows<F>>,
}

impl<F: Scalar> Skeleton<F> {
    /// `parts` are the odd chain lengths in order; `heads[k]` holds the
    /// parameter rows for the first element of part `k`.
    pub fn new(n: usize, parts: Vec<usize>, heads: Vec<HeadRows<F>>) -> Result<Self> {
        let m: usize = parts.iter().sum();
        if n == 0 {
            return Err(Error::DimensionMismatch(
                "a skeleton needs x_1, so n ≥ 1".into(),
            ));
        }
        if parts.contains(&0) {
            return Err(Error::PartitionMismatch { parts, m });
        }
        if heads.len() != parts.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} parts but {} head parameter sets",
                parts.len(),
                heads.len()
            )));
        }
        for h in &heads {
            h.check_shape(n, m)?;
        }
        Ok(Skeleton { n, m, parts, heads })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn heads(&self) -> &[HeadRows<F>] {
        &self.heads
    }

    /// Positions `h` of the part heads `y_h`.
    pub fn head_positions(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(1, |next, &p| {
                let h = *next;
                *next += p;
                Some(h)
            })
            .collect()
    }

    /// True iff `y_j` is the last element of its part, so `[y_j, x_1] = 0`.
    pub fn is_part_end(&self, j: usize) -> bool {
        self.parts
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .any(|end| end == j)
    }

    fn dim(&self) -> usize {
        self.n + self.m
    }

    fn x(&self, i: usize) -> usize {
        BasisIndex::x(i).flat(self.n)
    }

    fn y(&self, j: usize) -> usize {
        BasisIndex::y(j).flat(self.n)
    }

    /// Column `[e_u, x_1]` for every `u`.
    fn shift_column(&self) -> Vec<Vec<F>> {
        let dim = self.dim();
        let mut col = vec![vec![F::zero(); dim]; dim];
        for i in 1..self.n {
            col[self.x(i)][self.x(i + 1)] = F::one();
        }
        for j in 1..self.m {
            if !self.is_part_end(j) {
                col[self.y(j)][self.y(j + 1)] = F::one();
            }
        }
        col
    }

    /// Column `[e_u, y_h]` for every `u`.
    fn head_column(&self, rows: &HeadRows<F>) -> Vec<Vec<F>> {
        let dim = self.dim();
        let mut col = vec![vec![F::zero(); dim]; dim];
        for i in 1..=self.n {
            for t in 2..=self.m {
                col[self.x(i)][self.y(t)] = rows.alpha_at(i, t).clone();
            }
        }
        for j in 1..=self.m {
            for s in 2..=self.n {
                col[self.y(j)][self.x(s)] = rows.beta_at(j, s).clone();
            }
        }
        col
    }

    /// The algebra holding only the generator products given by the
    /// skeleton; mixed products are left zero.
    pub fn generator_table(&self) -> SuperAlgebra<F> {
        let mut columns: Vec<Option<Vec<Vec<F>>>> = vec![None; self.dim()];
        columns[self.x(1)] = Some(self.shift_column());
        for (h, rows) in self.head_positions().into_iter().zip(&self.heads) {
            columns[self.y(h)] = Some(self.head_column(rows));
        }
        self.assemble(columns)
    }

    fn assemble(&self, columns: Vec<Option<Vec<Vec<F>>>>) -> SuperAlgebra<F> {
        let mut entries = Vec::new();
        for (v, col) in columns.into_iter().enumerate() {
            let Some(col) = col else { continue };
            for (u, value) in col.into_iter().enumerate() {
                entries.push((
                    BasisIndex::from_flat(u, self.n),
                    BasisIndex::from_flat(v, self.n),
                    value,
                ));
            }
        }
        SuperAlgebra::new(self.n, self.m, entries).expect("skeleton products respect the grading")
    }

    /// Derives every right multiplication from those by the generators:
    ///
    /// `[u, x_{i+1}] = [[u, x_i], x_1] − [[u, x_1], x_i]`
    /// `[u, y_{j+1}] = [[u, y_j], x_1] − [[u, x_1], y_j]`
    ///
    /// in increasing right-index order. No identity check is performed.
    pub fn complete_table(&self) -> SuperAlgebra<F> {
        let dim = self.dim();
        let mut columns: Vec<Option<Vec<Vec<F>>>> = vec![None; dim];
        let shift = self.shift_column();
        columns[self.x(1)] = Some(shift.clone());

        let apply = |col: &[Vec<F>], w: &[F]| -> Vec<F> {
            let mut out = vec![F::zero(); dim];
            for (k, wk) in w.iter().enumerate() {
                if wk.is_zero() {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(&col[k]) {
                    if !c.is_zero() {
                        *o = o.clone() + wk.clone() * c.clone();
                    }
                }
            }
            out
        };
        let derive = |prev: &[Vec<F>]| -> Vec<Vec<F>> {
            (0..dim)
                .map(|u| {
                    let a = apply(&shift, &prev[u]);
                    let b = apply(prev, &shift[u]);
                    a.into_iter().zip(b).map(|(p, q)| p - q).collect()
                })
                .collect()
        };

        for i in 1..self.n {
            let next = derive(columns[self.x(i)].as_ref().unwrap());
            columns[self.x(i + 1)] = Some(next);
        }
        for (h, rows) in self.head_positions().into_iter().zip(&self.heads) {
            let mut col = self.head_column(rows);
            let mut j = h;
            while !self.is_part_end(j) {
                let next = derive(&col);
                columns[self.y(j)] = Some(col);
                col = next;
                j += 1;
            }
            columns[self.y(j)] = Some(col);
        }
        self.assemble(columns)
    }

    /// Completion followed by the full superidentity check.
    pub fn complete(&self) -> Result<SuperAlgebra<F>> {
        let a = self.complete_table();
        match a.first_leibniz_violation(DEFAULT_TOL) {
            None => Ok(a),
            Some((x, y, z)) => Err(Error::Inconsistency(x, y, z)),
        }
    }
}

/// `[y_i, y_j]` from the closed formula
///
/// `Σ_{s=0}^{min(i+j−1, m_1)−i} (−1)^s C(j−1, s) Σ_{t=2}^{n−j+s+1} β_{i+s,t} x_{t+j−s−1}`
///
/// returned as the `n` even coordinates. `beta[j-1][s-2]` is `β_{j,s}`.
pub fn closed_formula_bracket<F: Scalar>(
    i: usize,
    j: usize,
    beta: &[Vec<F>],
    n: usize,
    m1: usize,
) -> Result<Vec<F>> {
    if i == 0 || j == 0 || i > m1 || j > m1 {
        return Err(Error::IndexOutOfRange(format!(
            "(i, j) = ({i}, {j}) with m_1 = {m1}"
        )));
    }
    if beta.len() < m1 || beta.iter().take(m1).any(|r| r.len() + 1 < n) {
        return Err(Error::IndexOutOfRange(format!(
            "need {m1} beta rows of length {}",
            n.saturating_sub(1)
        )));
    }
    let mut out = vec![F::zero(); n];
    let s_max = (i + j - 1).min(m1) - i;
    for s in 0..=s_max {
        let c: F = sign::<F>(s) * binomial::<F>(j - 1, s);
        if c.is_zero() {
            continue;
        }
        let t_max = (n + s + 1) as i64 - j as i64;
        for t in 2..=t_max.max(1) as usize {
            let target = t + j - s - 1;
            let b = &beta[i + s - 1][t - 2];
            if !b.is_zero() {
                out[target - 1] = out[target - 1].clone() + c.clone() * b.clone();
            }
        }
    }
    Ok(out)
}
