//! Cell decompositions of the `PGL(3)` affine Grassmannian adapted to the
//! level-`a` Iwahori subgroup `I^a`, the induced paving of equivalued
//! affine Springer fibers, and brute-force verification over `F_q`.

pub mod error;
pub mod exec;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod paving;
pub mod series;
pub mod springer;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use lattice::{
    classify, enumerate_orbit, orbit_dimension, stabilizer_pattern, windows, Budget, Coord, CoordWindow,
    PointEnumerator, StandardForm, ValuationPattern, Vertex, VertexType, WindowSet,
};
pub use matrix::SeriesMatrix;
pub use paving::{
    cell, enumerate_cell, filtration_order, is_stationary, region_of, retract_type1, retract_type7, triangle_index,
    CellDescriptor, FiltrationEntry, Region, Stage,
};
pub use series::{FieldScalar, LaurentSeries, PrimeField, Valuation};
pub use springer::{
    fixed_cell_dimension, fixed_cell_parameterization, make_gamma, poincare, CellCase, Invariants, SplitElement,
};
