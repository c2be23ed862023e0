//! Quadratic forms over `Q_p` for odd `p`, exact `Z_p`-lattices and the
//! vertex lattices of the five-dimensional space `L^{Φ,π}`.
//!
//! ```
//! use padic_forms::{standard_spaces, hasse_discriminant, DiscClass};
//! let (_, lpi) = standard_spaces(3).unwrap();
//! let (hasse, disc) = hasse_discriminant(&lpi).unwrap();
//! assert_eq!((hasse, disc), (1, DiscClass::P));
//! ```

pub mod ball;
pub mod forms;
pub mod graph;
pub mod lattice;
pub mod vertex;

pub use ball::{vrt_ball, VrtBall};
pub use forms::{
    hasse_discriminant, hilbert_symbol, legendre, nonresidues, standard_spaces, standard_spaces_with,
    valuation, DiscClass, PadicDiagForm,
};
pub use graph::{GraphEdge, TypedGraph};
pub use lattice::{Ambient, PLattice};
pub use vertex::{
    phi, psi, vertex_classify, vertex_witnesses, Direction, VertexLatticeInfo,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PfError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

impl From<quadspace_fq::QsError> for PfError {
    fn from(e: quadspace_fq::QsError) -> Self {
        match e {
            quadspace_fq::QsError::ResourceLimit(s) => PfError::ResourceLimit(s),
            other => PfError::InvalidInput(other.to_string()),
        }
    }
}
