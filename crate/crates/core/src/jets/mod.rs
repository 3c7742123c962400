//! Local principal parts: relations, dual bases, jet elements and degeneracy matrices.

pub mod basis;
pub mod elements;
pub mod germ;
pub mod matrix;
pub mod relations;

pub use basis::{dual_basis_node, dual_basis_small, dual_basis_specialized_zero, node_relations, BasisFlavor, DualBasis};
pub use elements::{random_jet_elements, triangle, uv_to_ab, Constraint, ElementMode, JetElement};
pub use germ::{GermPattern, GermSpec};
pub use matrix::{degeneracy_matrix, maximal_minors, PolyMatrix};
pub use relations::{taylor_relations, Partials, RelationSet};
