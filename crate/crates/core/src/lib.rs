//! Nilpotent Leibniz superalgebras given by structure constants.
//!
//! The crate checks the graded Leibniz and Lie superidentities, computes
//! the descending central series, annihilators and characteristic
//! sequences, builds the standard families of maximal-nilindex algebras,
//! completes parametrised generator tables via the superidentity, and runs
//! seeded probes against the nonexistence statements.
//!
//! Everything is generic over [`Scalar`]. Invariants are computed on
//! [`Rational`]; [`Complex64`] exists for basis changes that need square
//! roots.
//!
//! ```
//! use nilsuper::{catalog, invariants, RationalAlgebra};
//!
//! let a: RationalAlgebra = catalog::thm32_normal(5).unwrap();
//! assert!(a.check_leibniz_superidentity().is_clean());
//! assert_eq!(invariants::nilindex(&a).value(), Some(7));
//! ```

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod scalar;
pub mod verification;

pub use algebra::{
    BasisIndex, CheckReport, GradedMap, Parity, SuperAlgebra, Violation, ViolationKind,
};
pub use error::{Error, Result};
pub use invariants::{CharSequence, Nilindex, SeriesReport};
pub use linalg::{Matrix, Subspace};
pub use num_complex::Complex64;
pub use scalar::{FieldKind, Rational, Scalar, DEFAULT_TOL};

pub type RationalAlgebra = SuperAlgebra<Rational>;
pub type ComplexAlgebra = SuperAlgebra<Complex64>;
pub type RationalMap = GradedMap<Rational>;
pub type ComplexMap = GradedMap<Complex64>;
pub type RationalMatrix = Matrix<Rational>;
pub type RationalSkeleton = catalog::Skeleton<Rational>;
