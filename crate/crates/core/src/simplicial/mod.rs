//! Vertex sets, simplicial complexes and the Stanley-Reisner dictionary
//! between squarefree monomial ideals and complexes.

mod complex;
mod graph;
mod ideal;
mod vertex_set;

pub use complex::{boundary_matrix_support, BoundarySupport, SimplicialComplex};
pub(crate) use graph::check_graph;
pub use graph::max_induced_chordless_cycle;
pub use ideal::{complex_from_ideal, ideal_from_complex, polarize, MonomialIdeal, PolarVariable};
pub use vertex_set::{alpha, alpha_vertex, sign, VertexSet, Vertices, MAX_VERTICES};
