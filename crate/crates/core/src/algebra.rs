//! Superalgebras given by structure constants.
//!
//! Coordinates of an element are ordered `x_1, …, x_n, y_1, …, y_m`. The
//! bracket table is sparse: absent entries are zero brackets.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(bit: usize) -> Self {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^{αβ}` as a field element.
    pub fn koszul_sign<F: Scalar>(self, other: Parity) -> F {
        if self == Parity::Odd && other == Parity::Odd {
            -F::one()
        } else {
            F::one()
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A basis element `x_i` (even) or `y_j` (odd); positions are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    pub parity: Parity,
    pub position: usize,
}

impl BasisIndex {
    pub const fn x(position: usize) -> Self {
        BasisIndex {
            parity: Parity::Even,
            position,
        }
    }

    pub const fn y(position: usize) -> Self {
        BasisIndex {
            parity: Parity::Odd,
            position,
        }
    }

    pub fn in_range(self, n: usize, m: usize) -> bool {
        let bound = match self.parity {
            Parity::Even => n,
            Parity::Odd => m,
        };
        self.position >= 1 && self.position <= bound
    }

    /// Offset into a coordinate vector of an `(n, m)` algebra.
    pub fn flat(self, n: usize) -> usize {
        match self.parity {
            Parity::Even => self.position - 1,
            Parity::Odd => n + self.position - 1,
        }
    }

    pub fn from_flat(k: usize, n: usize) -> Self {
        if k < n {
            BasisIndex::x(k + 1)
        } else {
            BasisIndex::y(k - n + 1)
        }
    }

    pub fn parse_label(label: &str) -> Option<Self> {
        let (head, tail) = label.split_at(label.char_indices().nth(1)?.0);
        let position: usize = tail.parse().ok()?;
        match head {
            "x" => Some(BasisIndex::x(position)),
            "y" => Some(BasisIndex::y(position)),
            _ => None,
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parity {
            Parity::Even => write!(f, "x{}", self.position),
            Parity::Odd => write!(f, "y{}", self.position),
        }
    }
}

type Sparse<F> = Vec<(usize, F)>;

fn to_sparse<F: Scalar>(v: &[F]) -> Sparse<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

fn axpy<F: Scalar>(acc: &mut [F], coeff: &F, v: &[(usize, F)]) {
    for (k, x) in v {
        acc[*k] = acc[*k].clone() + coeff.clone() * x.clone();
    }
}

/// A finite-dimensional Z2-graded algebra `L = L_0 ⊕ L_1` with
/// `dim L_0 = n`, `dim L_1 = m`.
#[derive(Clone)]
pub struct SuperAlgebra<F> {
    n: usize,
    m: usize,
    name: Option<String>,
    table: BTreeMap<(BasisIndex, BasisIndex), Vec<F>>,
    // products[a * dim + b] = sparse [e_a, e_b]
    products: Vec<Sparse<F>>,
}

impl<F: Scalar> SuperAlgebra<F> {
    /// Builds an algebra from bracket entries `(left, right, value)`.
    /// Zero values are dropped.
    pub fn new(
        n: usize,
        m: usize,
        entries: impl IntoIterator<Item = (BasisIndex, BasisIndex, Vec<F>)>,
    ) -> Result<Self> {
        let dim = n + m;
        let mut table = BTreeMap::new();
        for (left, right, value) in entries {
            for idx in [left, right] {
                if !idx.in_range(n, m) {
                    return Err(Error::IndexOutOfRange(format!(
                        "{idx} with (n, m) = ({n}, {m})"
                    )));
                }
            }
            if value.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "value of [{left}, {right}] has length {}, expected {dim}",
                    value.len()
                )));
            }
            if table.contains_key(&(left, right)) {
                return Err(Error::DuplicateEntry(left, right));
            }
            let target = left.parity + right.parity;
            if let Some(k) = value
                .iter()
                .enumerate()
                .position(|(k, v)| !v.is_zero() && BasisIndex::from_flat(k, n).parity != target)
            {
                return Err(Error::GradingViolation {
                    left,
                    right,
                    offending: BasisIndex::from_flat(k, n),
                });
            }
            if value.iter().any(|v| !v.is_zero()) {
                table.insert((left, right), value);
            }
        }
        Ok(Self::from_table(n, m, table))
    }

    fn from_table(n: usize, m: usize, table: BTreeMap<(BasisIndex, BasisIndex), Vec<F>>) -> Self {
        let dim = n + m;
        let mut products = vec![Vec::new(); dim * dim];
        for ((l, r), v) in &table {
            products[l.flat(n) * dim + r.flat(n)] = to_sparse(v);
        }
        SuperAlgebra {
            n,
            m,
            name: None,
            table,
            products,
        }
    }

    /// Algebra with the zero bracket.
    pub fn abelian(n: usize, m: usize) -> Self {
        Self::from_table(n, m, BTreeMap::new())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    pub fn basis(&self) -> impl Iterator<Item = BasisIndex> + '_ {
        (0..self.dim()).map(|k| BasisIndex::from_flat(k, self.n))
    }

    pub fn parity_of_flat(&self, k: usize) -> Parity {
        BasisIndex::from_flat(k, self.n).parity
    }

    /// The stored (nonzero) brackets.
    pub fn entries(&self) -> impl Iterator<Item = (BasisIndex, BasisIndex, &[F])> {
        self.table.iter().map(|((l, r), v)| (*l, *r, v.as_slice()))
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_empty()
    }

    /// Coordinate vector of a basis element.
    pub fn unit(&self, idx: BasisIndex) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[idx.flat(self.n)] = F::one();
        v
    }

    pub fn zero_vector(&self) -> Vec<F> {
        vec![F::zero(); self.dim()]
    }

    /// `[e_left, e_right]` as a coordinate vector.
    pub fn bracket_basis(&self, left: BasisIndex, right: BasisIndex) -> Vec<F> {
        let mut out = self.zero_vector();
        axpy(
            &mut out,
            &F::one(),
            self.product_flat(left.flat(self.n), right.flat(self.n)),
        );
        out
    }

    fn product_flat(&self, a: usize, b: usize) -> &[(usize, F)] {
        &self.products[a * self.dim() + b]
    }

    /// Bilinear extension of the table.
    pub fn bracket(&self, u: &[F], v: &[F]) -> Vec<F> {
        assert_eq!(u.len(), self.dim(), "left operand length");
        assert_eq!(v.len(), self.dim(), "right operand length");
        let mut out = self.zero_vector();
        for (a, ua) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, vb) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let p = self.product_flat(a, b);
                if !p.is_empty() {
                    axpy(&mut out, &(ua.clone() * vb.clone()), p);
                }
            }
        }
        out
    }

    fn bracket_flat_vec(&self, a: usize, v: &[(usize, F)], out: &mut [F], coeff: &F) {
        for (b, vb) in v {
            let p = self.product_flat(a, *b);
            if !p.is_empty() {
                axpy(out, &(coeff.clone() * vb.clone()), p);
            }
        }
    }

    fn bracket_vec_flat(&self, u: &[(usize, F)], b: usize, out: &mut [F], coeff: &F) {
        for (a, ua) in u {
            let p = self.product_flat(*a, b);
            if !p.is_empty() {
                axpy(out, &(coeff.clone() * ua.clone()), p);
            }
        }
    }

    /// Matrix of `v ↦ [v, x]` on the whole space (column convention).
    pub fn right_mul(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim())
            .map(|u| {
                let mut out = self.zero_vector();
                self.bracket_flat_vec(u, &to_sparse(x), &mut out, &F::one());
                out
            })
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Matrix of `v ↦ [x, v]` on the whole space (column convention).
    pub fn left_mul(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim())
            .map(|v| {
                let mut out = self.zero_vector();
                self.bracket_vec_flat(&to_sparse(x), v, &mut out, &F::one());
                out
            })
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Largest absolute difference between structure constants.
    pub fn max_deviation(&self, other: &SuperAlgebra<F>) -> Result<f64> {
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::DimensionMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.n, self.m, other.n, other.m
            )));
        }
        let mut worst = 0.0f64;
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let mut diff = self.zero_vector();
                axpy(&mut diff, &F::one(), self.product_flat(a, b));
                axpy(&mut diff, &-F::one(), other.product_flat(a, b));
                worst = diff.iter().map(Scalar::magnitude).fold(worst, f64::max);
            }
        }
        Ok(worst)
    }

    pub fn approx_eq(&self, other: &SuperAlgebra<F>, tol: f64) -> bool {
        match self.max_deviation(other) {
            Ok(d) => d <= tol,
            Err(_) => false,
        }
    }

    /// Converts the structure constants to another field.
    pub fn map_field<G: Scalar>(&self, f: impl Fn(&F) -> G) -> SuperAlgebra<G> {
        let table = self
            .table
            .iter()
            .map(|(k, v)| (*k, v.iter().map(&f).collect()))
            .collect();
        let mut out = SuperAlgebra::from_table(self.n, self.m, table);
        out.name = self.name.clone();
        out
    }

    /// Drops structure constants that are negligible at `tol`.
    pub fn chop(&self, tol: f64) -> Self {
        let table = self
            .table
            .iter()
            .filter_map(|(k, v)| {
                let v: Vec<F> = v
                    .iter()
                    .map(|x| {
                        if x.is_negligible(tol) {
                            F::zero()
                        } else {
                            x.clone()
                        }
                    })
                    .collect();
                v.iter().any(|x| !x.is_zero()).then_some((*k, v))
            })
            .collect();
        let mut out = Self::from_table(self.n, self.m, table);
        out.name = self.name.clone();
        out
    }

    // ---- identity checks ----

    pub fn check_grading(&self) -> CheckReport<F> {
        let mut report = CheckReport::default();
        for ((l, r), v) in &self.table {
            let target = l.parity + r.parity;
            if v.iter()
                .enumerate()
                .any(|(k, x)| !x.is_zero() && self.parity_of_flat(k) != target)
            {
                report.violations.push(Violation {
                    kind: ViolationKind::Grading,
                    indices: vec![*l, *r],
                    residual: v.clone(),
                });
            }
        }
        report
    }

    /// Residual `[x,[y,z]] − [[x,y],z] + (−1)^{|y||z|}[[x,z],y]` on basis elements.
    pub fn leibniz_residual(&self, x: BasisIndex, y: BasisIndex, z: BasisIndex) -> Vec<F> {
        let (a, b, c) = (x.flat(self.n), y.flat(self.n), z.flat(self.n));
        let mut out = self.zero_vector();
        let one = F::one();
        self.bracket_flat_vec(a, self.product_flat(b, c), &mut out, &one);
        self.bracket_vec_flat(self.product_flat(a, b), c, &mut out, &-one.clone());
        let s: F = y.parity.koszul_sign(z.parity);
        self.bracket_vec_flat(self.product_flat(a, c), b, &mut out, &s);
        out
    }

    pub fn check_leibniz_superidentity(&self) -> CheckReport<F> {
        self.check_leibniz_superidentity_tol(DEFAULT_TOL)
    }

    pub fn check_leibniz_superidentity_tol(&self, tol: f64) -> CheckReport<F> {
        let mut report = CheckReport::default();
        for (x, y, z) in self.basis_triples() {
            let res = self.leibniz_residual(x, y, z);
            if res.iter().any(|v| !v.is_negligible(tol)) {
                report.violations.push(Violation {
                    kind: ViolationKind::Leibniz,
                    indices: vec![x, y, z],
                    residual: res,
                });
            }
        }
        report
    }

    /// First basis triple violating the Leibniz superidentity, if any.
    pub fn first_leibniz_violation(
        &self,
        tol: f64,
    ) -> Option<(BasisIndex, BasisIndex, BasisIndex)> {
        self.basis_triples().find(|&(x, y, z)| {
            self.leibniz_residual(x, y, z)
                .iter()
                .any(|v| !v.is_negligible(tol))
        })
    }

    pub fn is_leibniz(&self) -> bool {
        self.first_leibniz_violation(DEFAULT_TOL).is_none() && self.check_grading().is_clean()
    }

    pub fn check_lie_superidentity(&self) -> CheckReport<F> {
        self.check_lie_superidentity_tol(DEFAULT_TOL)
    }

    /// Graded antisymmetry and the Jacobi superidentity on basis elements.
    pub fn check_lie_superidentity_tol(&self, tol: f64) -> CheckReport<F> {
        let mut report = CheckReport::default();
        let basis: Vec<BasisIndex> = self.basis().collect();
        for &x in &basis {
            for &y in &basis {
                // [x,y] + (−1)^{αβ}[y,x]
                let mut res = self.bracket_basis(x, y);
                let s: F = x.parity.koszul_sign(y.parity);
                axpy(
                    &mut res,
                    &s,
                    self.product_flat(y.flat(self.n), x.flat(self.n)),
                );
                if res.iter().any(|v| !v.is_negligible(tol)) {
                    report.violations.push(Violation {
                        kind: ViolationKind::Antisymmetry,
                        indices: vec![x, y],
                        residual: res,
                    });
                }
            }
        }
        for (x, y, z) in self.basis_triples() {
            let (a, b, c) = (x.flat(self.n), y.flat(self.n), z.flat(self.n));
            let mut res = self.zero_vector();
            let s_xz: F = x.parity.koszul_sign(z.parity);
            let s_xy: F = x.parity.koszul_sign(y.parity);
            let s_yz: F = y.parity.koszul_sign(z.parity);
            self.bracket_flat_vec(a, self.product_flat(b, c), &mut res, &s_xz);
            self.bracket_flat_vec(b, self.product_flat(c, a), &mut res, &s_xy);
            self.bracket_flat_vec(c, self.product_flat(a, b), &mut res, &s_yz);
            if res.iter().any(|v| !v.is_negligible(tol)) {
                report.violations.push(Violation {
                    kind: ViolationKind::Jacobi,
                    indices: vec![x, y, z],
                    residual: res,
                });
            }
        }
        report
    }

    fn basis_triples(&self) -> impl Iterator<Item = (BasisIndex, BasisIndex, BasisIndex)> + '_ {
        let basis: Vec<BasisIndex> = self.basis().collect();
        let d = basis.len();
        (0..d * d * d).map(move |k| (basis[k / (d * d)], basis[(k / d) % d], basis[k % d]))
    }

    // ---- basis change ----

    /// The algebra written in the basis given by the columns of `t`:
    /// `c'(u, v) = T⁻¹ [T u, T v]`.
    pub fn apply_basis_change(&self, t: &GradedMap<F>) -> Result<SuperAlgebra<F>> {
        self.apply_basis_change_tol(t, DEFAULT_TOL)
    }

    pub fn apply_basis_change_tol(&self, t: &GradedMap<F>, tol: f64) -> Result<SuperAlgebra<F>> {
        if (t.n(), t.m()) != (self.n, self.m) {
            return Err(Error::DimensionMismatch(format!(
                "map on ({}, {}) applied to algebra on ({}, {})",
                t.n(),
                t.m(),
                self.n,
                self.m
            )));
        }
        let full = t.full();
        let inv = t.inverse_tol(tol).ok_or(Error::SingularMap)?.full();
        let images: Vec<Vec<F>> = (0..self.dim()).map(|k| full.column(k)).collect();
        let mut entries = Vec::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let v = inv.mul_vec(&self.bracket(&images[a], &images[b]));
                let v: Vec<F> = v
                    .into_iter()
                    .map(|x| if x.is_negligible(tol) { F::zero() } else { x })
                    .collect();
                entries.push((
                    BasisIndex::from_flat(a, self.n),
                    BasisIndex::from_flat(b, self.n),
                    v,
                ));
            }
        }
        SuperAlgebra::new(self.n, self.m, entries)
    }
}

impl<F: Scalar> PartialEq for SuperAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && self.table == other.table
    }
}

impl<F: Scalar> fmt::Debug for SuperAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperAlgebra(n={}, m={}", self.n, self.m)?;
        if let Some(name) = &self.name {
            write!(f, ", {name}")?;
        }
        write!(f, ")")?;
        for ((l, r), v) in &self.table {
            write!(f, "\n  [{l}, {r}] = {}", format_vector(v, self.n))?;
        }
        Ok(())
    }
}

/// Human-readable linear combination such as `2*x2 - y3`.
pub fn format_vector<F: Scalar>(v: &[F], n: usize) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| {
            let label = BasisIndex::from_flat(k, n);
            if x.is_one() {
                label.to_string()
            } else {
                format!("({x})*{label}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Grading,
    Leibniz,
    Antisymmetry,
    Jacobi,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation<F> {
    pub kind: ViolationKind,
    pub indices: Vec<BasisIndex>,
    pub residual: Vec<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport<F> {
    pub violations: Vec<Violation<F>>,
}

impl<F> Default for CheckReport<F> {
    fn default() -> Self {
        CheckReport {
            violations: Vec::new(),
        }
    }
}

impl<F> CheckReport<F> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// An even (degree 0) linear map, given by its blocks on `L_0` and `L_1`.
/// Column `k` of a block is the image of the `k`-th basis element.
#[derive(Clone, PartialEq)]
pub struct GradedMap<F> {
    pub even: Matrix<F>,
    pub odd: Matrix<F>,
}

impl<F: fmt::Display> fmt::Debug for GradedMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedMap {{ even: {:?}, odd: {:?} }}",
            self.even, self.odd
        )
    }
}

impl<F: Scalar> GradedMap<F> {
    pub fn new(even: Matrix<F>, odd: Matrix<F>) -> Result<Self> {
        if !even.is_square() || !odd.is_square() {
            return Err(Error::DimensionMismatch(
                "graded map blocks must be square".into(),
            ));
        }
        Ok(GradedMap { even, odd })
    }

    pub fn identity(n: usize, m: usize) -> Self {
        GradedMap {
            even: Matrix::identity(n),
            odd: Matrix::identity(m),
        }
    }

    pub fn n(&self) -> usize {
        self.even.rows()
    }

    pub fn m(&self) -> usize {
        self.odd.rows()
    }

    pub fn full(&self) -> Matrix<F> {
        Matrix::block_diag(&[self.even.clone(), self.odd.clone()])
    }

    pub fn is_invertible_tol(&self, tol: f64) -> bool {
        self.even.rank_tol(tol) == self.n() && self.odd.rank_tol(tol) == self.m()
    }

    pub fn inverse_tol(&self, tol: f64) -> Option<Self> {
        Some(GradedMap {
            even: self.even.inverse_tol(tol)?,
            odd: self.odd.inverse_tol(tol)?,
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap<F>) -> Result<Self> {
        Ok(GradedMap {
            even: self.even.mul(&other.even)?,
            odd: self.odd.mul(&other.odd)?,
        })
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.full().mul_vec(v)
    }
}
