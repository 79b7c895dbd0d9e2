use crate::model::{Coalition, PowerRelation};

use super::{check_pair, SolutionError};

/// Outcome of the size-`k` dominance comparison between `i` and `j`.
///
/// Every size in `0..=n-2` has at least one comparison context, so a weak
/// dominance is always either strict or an indifference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KDominanceCell {
    /// Every `S` of size `k` weakly favors `i`, at least one strictly.
    StrictForI,
    StrictForJ,
    /// All comparisons tie.
    Indifferent,
    /// Strict comparisons exist in both directions.
    Incomparable,
}

impl KDominanceCell {
    pub fn mirror(self) -> KDominanceCell {
        match self {
            KDominanceCell::StrictForI => KDominanceCell::StrictForJ,
            KDominanceCell::StrictForJ => KDominanceCell::StrictForI,
            other => other,
        }
    }
}

pub(crate) fn k_dominance_unchecked(pr: &PowerRelation, i: usize, j: usize, k: usize) -> KDominanceCell {
    let rest = pr.players().grand().without(i).without(j);
    let (mut for_i, mut for_j) = (false, false);
    for s in rest.subsets().filter(|s| s.size() == k) {
        let (ci, cj) = (pr.class_of(s.with(i)), pr.class_of(s.with(j)));
        for_i |= ci < cj;
        for_j |= cj < ci;
    }
    match (for_i, for_j) {
        (true, true) => KDominanceCell::Incomparable,
        (true, false) => KDominanceCell::StrictForI,
        (false, true) => KDominanceCell::StrictForJ,
        (false, false) => KDominanceCell::Indifferent,
    }
}

pub fn k_dominance(pr: &PowerRelation, i: usize, j: usize, k: usize) -> Result<KDominanceCell, SolutionError> {
    check_pair(pr, i, j)?;
    if k + 2 > pr.n() {
        return Err(SolutionError::SizeOutOfRange { k, n: pr.n() });
    }
    Ok(k_dominance_unchecked(pr, i, j, k))
}

/// Cells for every size `0..=n-2`, computed in one sweep.
pub fn k_dominance_profile(pr: &PowerRelation, i: usize, j: usize) -> Result<Vec<KDominanceCell>, SolutionError> {
    check_pair(pr, i, j)?;
    let n = pr.n();
    let mut flags = vec![(false, false); n - 1];
    let rest: Coalition = pr.players().grand().without(i).without(j);
    for s in rest.subsets() {
        let (ci, cj) = (pr.class_of(s.with(i)), pr.class_of(s.with(j)));
        let f = &mut flags[s.size()];
        f.0 |= ci < cj;
        f.1 |= cj < ci;
    }
    Ok(flags
        .into_iter()
        .map(|f| match f {
            (true, true) => KDominanceCell::Incomparable,
            (true, false) => KDominanceCell::StrictForI,
            (false, true) => KDominanceCell::StrictForJ,
            (false, false) => KDominanceCell::Indifferent,
        })
        .collect())
}

/// Sizes at which `i` strictly dominates `j` (the set `𝒦𝒫_ij`).
pub fn strict_dominance_sizes(profile: &[KDominanceCell]) -> Vec<usize> {
    profile
        .iter()
        .enumerate()
        .filter(|(_, c)| **c == KDominanceCell::StrictForI)
        .map(|(k, _)| k)
        .collect()
}
