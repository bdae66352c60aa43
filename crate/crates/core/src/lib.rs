//! Linear parts of minimal free resolutions of Stanley-Reisner rings.
//!
//! Given a simplicial complex `Δ` on `[n]` (or a monomial ideal, polarized if
//! needed) this crate computes, over a prime field:
//!
//! * multigraded Betti numbers via Hochster's formula ([`linear_part::betti_table`]),
//! * the linear part of the minimal free resolution of `k[Δ]`, assembled from
//!   signed restriction maps `H̃^j(Δ_U) → H̃^j(Δ_{U∖u})` ([`linear_part::build_linear_part`]),
//! * the linearity defect of `I_Δ` and a componentwise-linearity verdict
//!   ([`defect`]),
//! * a brute-force multigraded minimal free resolution used to cross-check
//!   all of the above ([`oracle`]).

pub mod cohomology;
pub mod defect;
mod error;
pub mod io;
pub mod linalg;
pub mod linear_part;
pub mod oracle;
pub mod random;
pub mod simplicial;

pub use error::{Error, Result};
pub use linalg::{Field, FieldMatrix, DEFAULT_PRIME};
pub use simplicial::{MonomialIdeal, SimplicialComplex, VertexSet};
