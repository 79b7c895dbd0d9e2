//! Social rankings of players derived from ordinal rankings of coalitions.
//!
//! The crate covers the coalitional-ranking model ([`model`]), five social
//! ranking solutions and their statistics ([`solutions`]), multicameral
//! weighted voting games ([`game`]), an embedded parliamentary case study
//! ([`casestudy`]) and an axiom verification laboratory ([`axioms`]).

pub mod axioms;
pub mod casestudy;
pub mod game;
pub mod model;
pub mod solutions;

pub use model::{
    parse_power_relation, ranks_from_pairwise, serialize_power_relation, Cell, Coalition,
    IntransitivityReport, ModelError, PairwiseRelation, PlayerSet, PowerRelation, Ranking,
};
pub use solutions::Method;
