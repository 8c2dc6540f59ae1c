//! Fixture groups shipped with the crate.
//!
//! `catalog:<name>` URIs resolve to these documents.

use thiserror::Error;

use crate::criteria::Condition;
use crate::matrix::{parse_coxeter_input, CoxeterMatrix, InputError};

/// A catalog entry with its recorded verdict.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    pub bipolar: bool,
    /// First failing condition for non-bipolar fixtures.
    pub failed_condition: Option<Condition>,
}

impl Fixture {
    pub fn matrix(&self) -> CoxeterMatrix {
        parse_coxeter_input(self.source).expect("catalog fixtures are valid")
    }
}

macro_rules! fixture {
    ($name:literal, $bipolar:expr, $cond:expr) => {
        Fixture {
            name: $name,
            source: include_str!(concat!("../catalog/", $name, ".toml")),
            bipolar: $bipolar,
            failed_condition: $cond,
        }
    };
}

pub const FIXTURES: [Fixture; 10] = [
    fixture!("finite-A2", false, Some(Condition::A)),
    fixture!("finite-B2", false, Some(Condition::A)),
    fixture!("A3", false, Some(Condition::A)),
    fixture!("dihedral-inf", true, None),
    fixture!("affine-A2", true, None),
    fixture!("triangle-444", true, None),
    fixture!("free-product-3", false, Some(Condition::B)),
    fixture!("grid", true, None),
    fixture!("A1xDinf", false, Some(Condition::A)),
    fixture!("example-fig2", false, Some(Condition::C)),
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("no catalog fixture named {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Input(#[from] InputError),
}

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

pub fn load(name: &str) -> Result<CoxeterMatrix, CatalogError> {
    fixture(name)
        .map(Fixture::matrix)
        .ok_or_else(|| CatalogError::Unknown(name.to_string()))
}

/// Loads `catalog:<name>` from the catalog and anything else from disk.
pub fn resolve(location: &str) -> Result<CoxeterMatrix, CatalogError> {
    match location.strip_prefix("catalog:") {
        Some(name) => load(name),
        None => Ok(crate::matrix::read_coxeter_file(std::path::Path::new(location))?),
    }
}
