//! Exact arithmetic over `F_p` and `F_{p^k}` for odd `p`, monic polynomial
//! algebra, factorization and the reciprocal calculus.
//!
//! ```
//! use ffpoly::{Gf, Poly, reciprocal};
//! let f = Gf::prime(3).unwrap();
//! let r = Poly::from_ints(&f, &[2, 1, 1]);
//! assert_eq!(reciprocal(&f, &r).unwrap(), Poly::from_ints(&f, &[2, 2, 1]));
//! ```

pub mod factor;
pub mod field;
pub mod matrix;
pub mod poly;

pub use factor::{enumerate_irreducibles, factor, necklace_count, sr_partition, Factorization, NsrClass, SrPartition};
pub use field::{is_prime, FieldDesc, Fq, Gf};
pub use matrix::{dot, span_contains, span_intersection, span_sum, Mat};
pub use poly::{is_irreducible, is_self_reciprocal, monic_of_degree, reciprocal, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FfError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}
