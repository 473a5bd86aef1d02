//! Craig, Lyndon and uniform interpolation for the basic modal logic K.

pub mod automata;
pub mod bench;
pub mod error;
pub mod formula;
pub mod nabla;
pub mod quasimodel;
pub mod semantics;
pub mod sequent;
pub mod verify;

pub use error::{Error, Result};
pub use formula::{parse, Formula, Node, PolarityReport, SignatureSet};
