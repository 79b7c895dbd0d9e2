use std::cmp::Ordering;

use crate::model::{Coalition, PairwiseRelation, PowerRelation};

use super::{check_pair, SolutionError};

/// Outcome counts of the CP-comparisons `S∪{i}` versus `S∪{j}` over every
/// `S ⊆ N∖{i,j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CpCounts {
    /// `|D_ij|`: comparisons won by `i`.
    pub d_ij: u64,
    /// `|D_ji|`: comparisons won by `j`.
    pub d_ji: u64,
    /// `|E_ij|`: ties.
    pub e_ij: u64,
}

pub(crate) fn cp_counts_unchecked(pr: &PowerRelation, i: usize, j: usize) -> CpCounts {
    let table = pr.class_table();
    let (bi, bj) = (1u32 << i, 1u32 << j);
    let rest = pr.players().grand().bits() & !(bi | bj);
    let mut out = CpCounts::default();
    let mut s = rest;
    loop {
        let ci = table[(s | bi) as usize];
        let cj = table[(s | bj) as usize];
        match ci.cmp(&cj) {
            Ordering::Less => out.d_ij += 1,
            Ordering::Greater => out.d_ji += 1,
            Ordering::Equal => out.e_ij += 1,
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & rest;
    }
    out
}

pub fn cp_counts(pr: &PowerRelation, i: usize, j: usize) -> Result<CpCounts, SolutionError> {
    check_pair(pr, i, j)?;
    Ok(cp_counts_unchecked(pr, i, j))
}

/// Coalitions `S` in `D_ij`: those with `S∪{i}` strictly above `S∪{j}`.
pub fn cp_wins(pr: &PowerRelation, i: usize, j: usize) -> Result<Vec<Coalition>, SolutionError> {
    check_pair(pr, i, j)?;
    let rest = pr.players().grand().without(i).without(j);
    Ok(rest
        .subsets()
        .filter(|s| pr.class_of(s.with(i)) < pr.class_of(s.with(j)))
        .collect())
}

/// Square matrix of `|D_ij|` with a zero diagonal.
pub fn cp_matrix(pr: &PowerRelation) -> Vec<Vec<u64>> {
    let n = pr.n();
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = cp_counts_unchecked(pr, i, j);
            m[i][j] = c.d_ij;
            m[j][i] = c.d_ji;
        }
    }
    m
}

pub fn cp_majority(pr: &PowerRelation) -> PairwiseRelation {
    PairwiseRelation::from_pairs(pr.n(), |i, j| {
        let c = cp_counts_unchecked(pr, i, j);
        c.d_ij.cmp(&c.d_ji)
    })
}

/// `S∪{i} ≿ S∪{j}` for every `S`, strictly for at least one.
pub fn sdes_premise(pr: &PowerRelation, i: usize, j: usize) -> Result<bool, SolutionError> {
    let c = cp_counts(pr, i, j)?;
    Ok(c.d_ji == 0 && c.d_ij > 0)
}
