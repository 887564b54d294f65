pub mod complex;
pub mod graph;
pub mod interval;
pub mod model;

pub use complex::{ComplexDocument, SimplicialComplex};
pub use graph::{graph_decomposition, GraphDecomposition};
pub use interval::{cylinder_iso, ls_interval, CylinderIso, LsInterval};
pub use model::{build_model, build_simplex_model, Model, ModelDocument};
