//! Strongly regular polar graphs over GF(2^h) built from their coordinate
//! descriptions, their two-graphs, and explicit Seidel switching
//! certificates between `NO^±(4m,2)` and `NO^∓(2m+1,4)`.

pub mod constructions;
pub mod error;
pub mod field;
pub mod forms;
pub mod graph;
pub mod graph6;
pub mod group;
pub mod matrix;
pub mod report;
pub mod transvections;
pub mod two_graph;
pub mod verify;

pub use error::{Error, Result};
pub use field::{BinaryField, FieldElement};
pub use forms::{BilinearSpace, QuadraticForm, Sign, Vector};
pub use graph::{
    expected_params, srg_params, ExpectedParams, Family, LabeledGraph, SrgParams, SrgVerdict,
};
pub use matrix::Matrix;
