//! Finite Kripke models: evaluation, bisimulations, products, amalgamation
//! and tree unravelling.

mod bisim;
mod eval;
mod model;
mod product;
pub mod samples;
mod trees;

pub use bisim::{bisimilar, check_bisimulation, largest_bisimulation, BisimRelation};
pub use eval::{eval, eval_all, eval_at, truth_sets};
pub use model::{KripkeModel, ModelFile, PointedModel};
pub use product::{amalgamate, bisimulation_product, pair_id, projections};
pub use trees::{enumerate_trees, unravel};
