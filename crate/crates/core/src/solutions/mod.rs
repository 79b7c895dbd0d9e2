//! The five social ranking solutions: CP-majority, lex-cel, dual-lex, L1 and
//! its dual L1*, with the statistics they are computed from.

mod cp;
mod kdom;
mod stats;

pub use cp::{cp_counts, cp_majority, cp_matrix, cp_wins, sdes_premise, CpCounts};
pub use kdom::{k_dominance, k_dominance_profile, strict_dominance_sizes, KDominanceCell};
pub use stats::{
    dual_lex_cmp, l1_cmp, l1_matrix, l1_star_cmp, lexcel_cmp, theta, L1Matrix, Statistics, ThetaVector,
};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{PairwiseRelation, PowerRelation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionError {
    #[error("players i and j must differ (both are {0})")]
    SamePlayer(usize),
    #[error("player index {0} is out of range")]
    PlayerOutOfRange(usize),
    #[error("coalition size {k} is outside 0..={}", .n.saturating_sub(2))]
    SizeOutOfRange { k: usize, n: usize },
}

pub(crate) fn check_pair(pr: &PowerRelation, i: usize, j: usize) -> Result<(), SolutionError> {
    for p in [i, j] {
        if p >= pr.n() {
            return Err(SolutionError::PlayerOutOfRange(p));
        }
    }
    if i == j {
        return Err(SolutionError::SamePlayer(i));
    }
    Ok(())
}

pub fn lexcel(pr: &PowerRelation) -> PairwiseRelation {
    let st = Statistics::theta_only(pr);
    PairwiseRelation::from_pairs(pr.n(), |i, j| lexcel_cmp(st.theta(i), st.theta(j)))
}

pub fn dual_lex(pr: &PowerRelation) -> PairwiseRelation {
    let st = Statistics::theta_only(pr);
    PairwiseRelation::from_pairs(pr.n(), |i, j| dual_lex_cmp(st.theta(i), st.theta(j)))
}

pub fn l1(pr: &PowerRelation) -> PairwiseRelation {
    let st = Statistics::full(pr);
    PairwiseRelation::from_pairs(pr.n(), |i, j| l1_cmp(&st, i, j))
}

pub fn l1_star(pr: &PowerRelation) -> PairwiseRelation {
    let st = Statistics::full(pr);
    PairwiseRelation::from_pairs(pr.n(), |i, j| l1_star_cmp(&st, i, j))
}

/// The five studied solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Cp,
    LexCel,
    DualLex,
    L1,
    L1Star,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Cp, Method::LexCel, Method::DualLex, Method::L1, Method::L1Star];

    pub fn apply(self, pr: &PowerRelation) -> PairwiseRelation {
        match self {
            Method::Cp => cp_majority(pr),
            Method::LexCel => lexcel(pr),
            Method::DualLex => dual_lex(pr),
            Method::L1 => l1(pr),
            Method::L1Star => l1_star(pr),
        }
    }

    /// Short lowercase name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Method::Cp => "cp",
            Method::LexCel => "lexcel",
            Method::DualLex => "duallex",
            Method::L1 => "l1",
            Method::L1Star => "l1star",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cp" => Ok(Method::Cp),
            "lexcel" | "lex-cel" => Ok(Method::LexCel),
            "duallex" | "dual-lex" => Ok(Method::DualLex),
            "l1" => Ok(Method::L1),
            "l1star" | "l1*" => Ok(Method::L1Star),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}
