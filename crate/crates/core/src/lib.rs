//! Face counting and generating functions for max-pooling polytopes.

pub mod error;
pub mod face;
pub mod facets1d;
pub mod model;
pub mod oracle;
pub mod polyalg;
pub mod seq1d;
pub mod seq2d;
pub mod verify;

pub use error::{Error, Result};
pub use face::{
    build_selection_graph, face_dimension, is_face, normal_cone, ConeDescription, FaceSelection,
    SelectionGraph, VertexSelection,
};
pub use model::{spec_1d, spec_3xn, windows_from_spec, PoolingSpec, WindowFamily};
pub use polyalg::{IntPoly, RationalGF, TransferMatrix};
