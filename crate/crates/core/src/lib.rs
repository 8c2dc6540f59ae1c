//! Coxeter groups given by their matrices: diagram combinatorics, spherical
//! classification, an exact word engine, bipolarity criteria and a
//! finite-radius pole census on the Cayley graph.

pub mod catalog;
pub mod census;
pub mod criteria;
pub mod diagram;
pub mod genset;
pub mod matrix;
pub mod spherical;
pub mod word;

pub use criteria::{bipolar_verdict, Condition, CriteriaOptions, Verdict, VertexChecker, Witness};
pub use diagram::DiagramError;
pub use genset::GeneratorSet;
pub use matrix::{parse_coxeter_input, read_coxeter_file, CoxeterInput, CoxeterMatrix, DefaultLabel, InputError, Label};
pub use spherical::CoxeterType;
pub use word::{Element, JtuSets, Reflection, WallDistance, WordEngine, WordError};
