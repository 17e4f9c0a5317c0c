//! Construction of CSS quantum stabilizer codes from algebraic-geometry
//! codes over characteristic-2 fields.
//!
//! The pipeline: pick a curve over GF(2^t) with many rational points, build a
//! functional/residue pair of evaluation codes from one-point divisors, expand
//! both to binary with a self-dual basis (so duality commutes with expansion),
//! and feed the resulting nested pair into the CSS construction. The
//! [`tower`] module adds a recursive tower of curves whose point counts grow
//! without bound, giving an asymptotically good family of parameters.

pub mod binmat;
pub mod css;
pub mod curves;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod tower;

pub use binmat::{BinMat, BinaryCode};
pub use css::{
    binary_expand, corollary_params, css_construct, css_exact_distance, emit_stabilizers,
    parameter_table, parameter_table_ranged, parse_stabilizers, theorem31_params,
    theorem31_pipeline, verify_dual_expansion, CorollaryFamily, CssCode, CssRecord, QuantumParams,
    SourceInfo, StabilizerFormat,
};
pub use curves::{CurveModel, DivisorSpec, FunctionRep, RationalPoint, TruncatedSeries};
pub use error::{Error, Result};
pub use gf::{FieldBasis, FieldElement, FieldSpec, Subfield};
pub use linalg::{LinearCodeQ, MatQ, DEFAULT_ENUM_BUDGET};
pub use tower::{
    asymptotics, chain_count, family_params, tower_genus, tower_points, AsymptoticFamilyParams,
    TowerLevel, TOWER_CHAIN_BUDGET,
};
