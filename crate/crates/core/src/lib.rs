//! Exact construction of the special odd contact Lie superalgebras
//! `SKO(n, n+1; λ, t)` over GF(p) and machine checks of their structure.

pub mod contact;
pub mod derivations;
pub mod error;
pub mod field;
pub mod formulas;
pub mod identities;
pub mod linalg;
pub mod report;
pub mod spanning;
pub mod superalgebra;

pub use contact::IndexReport;
pub use error::{AlgebraError, DerivationError, Error, FieldError, FormulaError, LinalgError, Result};
pub use field::{Fp, PrimeField};
pub use superalgebra::{AlgebraContext, GradeKey, Monomial, Parity, SuperElement};
