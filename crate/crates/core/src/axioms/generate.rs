//! Seeded construction of witnesses whose hypotheses hold by design.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{House, MulticameralGame};
use crate::model::{Coalition, PlayerSet, PowerRelation};

use super::{
    check_axiom, is_i_improving_j_invariant, Axiom, AxiomError, AxiomWitness, Datum, SolutionRef,
};

const MAX_ATTEMPTS: usize = 400;

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of one grid trial, a hash of every coordinate of the trial.
pub fn trial_seed(master: u64, axiom: Axiom, solution: SolutionRef, trial: u64) -> u64 {
    let mut h = splitmix64(master);
    for part in [axiom as u64, solution as u64, trial] {
        h = splitmix64(h ^ part);
    }
    h
}

/// Scores indexed by bit pattern; lower is stronger.
fn random_scores<R: Rng>(rng: &mut R, n: usize) -> Vec<u32> {
    let size = 1usize << n;
    let mut scores = vec![0u32; size];
    match rng.gen_range(0..4) {
        0 => {
            let l = rng.gen_range(2..=6);
            scores[1..].iter_mut().for_each(|s| *s = rng.gen_range(0..l));
        }
        1 => {
            let l = rng.gen_range(1..size) as u32;
            scores[1..].iter_mut().for_each(|s| *s = rng.gen_range(0..l));
        }
        2 => {
            let l = rng.gen_range(2..=3);
            scores[1..].iter_mut().for_each(|s| *s = rng.gen_range(0..l));
        }
        _ => {
            let m = rng.gen_range(1..=3);
            let houses = (0..m)
                .map(|_| {
                    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
                    let total: u64 = weights.iter().sum();
                    House {
                        quota: rng.gen_range(1..=total.max(1)),
                        weights,
                    }
                })
                .collect();
            let players = PlayerSet::numbered(n).expect("valid size");
            let game = MulticameralGame::new(players, houses).expect("valid game");
            for (s, v) in scores.iter_mut().zip(game.all_values()) {
                *s = (m - v as usize) as u32;
            }
        }
    }
    scores
}

fn relation(n: usize, scores: &[u32]) -> PowerRelation {
    PowerRelation::from_scores(PlayerSet::numbered(n).expect("valid size"), scores)
}

pub fn random_power_relation<R: Rng>(rng: &mut R, n: usize) -> PowerRelation {
    relation(n, &random_scores(rng, n))
}

fn symmetrize(scores: &mut [u32], i: usize, j: usize) {
    for m in 1..scores.len() {
        let c = Coalition(m as u32);
        if c.contains(i) && !c.contains(j) {
            scores[c.swap_players(i, j).index()] = scores[m];
        }
    }
}

fn scores_of(pr: &PowerRelation) -> Vec<u32> {
    pr.class_table().iter().map(|&k| if k == u32::MAX { 0 } else { k }).collect()
}

/// Uniformly random bijection on the subsets of `rest`, optionally mapping
/// each coalition to one of the same size.
pub fn random_bijection<R: Rng>(rng: &mut R, rest: Coalition, size_preserving: bool) -> Vec<(Coalition, Coalition)> {
    let subsets: Vec<Coalition> = rest.subsets().collect();
    let mut out = Vec::with_capacity(subsets.len());
    if size_preserving {
        for k in 0..=rest.size() {
            let group: Vec<Coalition> = subsets.iter().copied().filter(|s| s.size() == k).collect();
            let mut image = group.clone();
            image.shuffle(rng);
            out.extend(group.into_iter().zip(image));
        }
    } else {
        let mut image = subsets.clone();
        image.shuffle(rng);
        out.extend(subsets.into_iter().zip(image));
    }
    out.sort_unstable();
    out
}

fn random_ordered_partition<R: Rng>(rng: &mut R, items: &[Coalition]) -> Vec<Vec<Coalition>> {
    let mut items = items.to_vec();
    items.shuffle(rng);
    let len = items.len();
    let m = rng.gen_range(1..=len);
    let mut cuts: Vec<usize> = index::sample(rng, len - 1, m - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(m);
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(len)) {
        parts.push(items[start..c].to_vec());
        start = c;
    }
    parts
}

fn pick_pair<R: Rng>(rng: &mut R, n: usize) -> (usize, usize) {
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// A relation where `i` and `j` are tied under `solution`: half of the
/// attempts make the two players interchangeable, the rest rely on chance.
fn indifferent_relation<R: Rng>(
    rng: &mut R,
    n: usize,
    i: usize,
    j: usize,
    solution: SolutionRef,
    min_classes: usize,
) -> Option<(Vec<u32>, PowerRelation)> {
    for _ in 0..MAX_ATTEMPTS {
        let mut scores = random_scores(rng, n);
        if rng.gen_bool(0.5) {
            symmetrize(&mut scores, i, j);
        }
        let pr = relation(n, &scores);
        if pr.num_classes() >= min_classes && solution.apply(&pr).indifferent(i, j) {
            return Some((scores_of(&pr), pr));
        }
    }
    None
}

fn bijection_witness<R: Rng>(rng: &mut R, axiom: Axiom, n: usize, i: usize, j: usize) -> AxiomWitness {
    let scores = scores_of(&random_power_relation(rng, n));
    let pr = relation(n, &scores);
    let rest = pr.players().grand().without(i).without(j);
    let pairs = random_bijection(rng, rest, axiom == Axiom::PCA);
    let mut pi = vec![Coalition::EMPTY; scores.len()];
    for &(s, t) in &pairs {
        pi[s.index()] = t;
    }
    let l = pr.num_classes() as u32;

    let second = if axiom == Axiom::EC && rng.gen_bool(0.5) {
        // free layout, then repair each CP-comparison to its required outcome
        let mut s2: Vec<u32> = random_scores(rng, n).iter().map(|s| 2 * s + 1).collect();
        for s in rest.subsets() {
            let want = pr.compare(s.with(i), s.with(j));
            let (a, b) = (pi[s.index()].with(i).index(), pi[s.index()].with(j).index());
            match want {
                std::cmp::Ordering::Equal => s2[b] = s2[a],
                std::cmp::Ordering::Greater => {
                    if s2[a] > s2[b] {
                        s2.swap(a, b);
                    } else if s2[a] == s2[b] {
                        s2[a] -= 1;
                    }
                }
                std::cmp::Ordering::Less => {
                    if s2[a] < s2[b] {
                        s2.swap(a, b);
                    } else if s2[a] == s2[b] {
                        s2[b] -= 1;
                    }
                }
            }
        }
        relation(n, &s2)
    } else {
        let mut s2 = scores.clone();
        for s in rest.subsets() {
            let t = pi[s.index()];
            s2[t.with(i).index()] = scores[s.with(i).index()];
            if axiom == Axiom::EC {
                s2[t.with(j).index()] = scores[s.with(j).index()];
            }
        }
        if rng.gen_bool(0.5) {
            for m in 1..s2.len() {
                let c = Coalition(m as u32);
                if c.contains(i) == c.contains(j) {
                    s2[m] = rng.gen_range(0..l);
                }
            }
        }
        relation(n, &s2)
    };
    AxiomWitness {
        axiom,
        i,
        j,
        first: pr,
        second: Some(second),
        datum: Datum::Bijection(pairs),
    }
}

fn cat_witness<R: Rng>(rng: &mut R, n: usize, i: usize, j: usize, solution: SolutionRef) -> Option<AxiomWitness> {
    for _ in 0..MAX_ATTEMPTS {
        let symmetric = rng.gen_bool(0.5);
        let mut s1 = random_scores(rng, n);
        if symmetric {
            symmetrize(&mut s1, i, j);
        }
        let pr = relation(n, &s1);
        let k = rng.gen_range(0..pr.num_classes());
        let shared = pr.class(k).to_vec();
        let mut s2: Vec<u32> = random_scores(rng, n).iter().map(|s| 2 * s + 1).collect();
        if symmetric {
            symmetrize(&mut s2, i, j);
        }
        let top = s2.iter().copied().max().unwrap_or(1);
        let slot = 2 * rng.gen_range(0..=top / 2 + 1);
        for c in &shared {
            s2[c.index()] = slot;
        }
        let pr2 = relation(n, &s2);
        if !(solution.apply(&pr).indifferent(i, j) && solution.apply(&pr2).indifferent(i, j)) {
            continue;
        }
        let parts = random_ordered_partition(rng, &shared);
        return Some(AxiomWitness {
            axiom: Axiom::CAT,
            i,
            j,
            first: pr,
            second: Some(pr2),
            datum: Datum::Refinements(vec![parts]),
        });
    }
    None
}

fn extreme_class_witness<R: Rng>(rng: &mut R, axiom: Axiom, n: usize, solution: SolutionRef) -> Option<AxiomWitness> {
    for _ in 0..MAX_ATTEMPTS {
        let pr = random_power_relation(rng, n);
        let l = pr.num_classes();
        if l < 2 {
            continue;
        }
        let r = solution.apply(&pr);
        let strict: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && r.strict(i, j))
            .collect();
        let Some(&(i, j)) = strict.choose(rng) else { continue };
        let k = if axiom == Axiom::IWS { l - 1 } else { 0 };
        let parts = random_ordered_partition(rng, pr.class(k));
        return Some(AxiomWitness {
            axiom,
            i,
            j,
            first: pr,
            second: None,
            datum: Datum::Partition(parts),
        });
    }
    None
}

fn kdd_witness<R: Rng>(rng: &mut R, n: usize, i: usize, j: usize) -> AxiomWitness {
    #[derive(Clone, Copy, PartialEq)]
    enum Target {
        ForI,
        ForJ,
        Tie,
    }
    let levels = n - 1;
    let targets = loop {
        let t: Vec<Target> = (0..levels)
            .map(|_| match rng.gen_range(0..3) {
                0 => Target::ForI,
                1 => Target::ForJ,
                _ => Target::Tie,
            })
            .collect();
        let first_i = t.iter().position(|&x| x == Target::ForI);
        let first_j = t.iter().position(|&x| x == Target::ForJ);
        if matches!((first_i, first_j), (Some(a), Some(b)) if a < b) {
            break t;
        }
    };
    let size = 1usize << n;
    let mut scores: Vec<u32> = (0..size).map(|_| rng.gen_range(0..2)).collect();
    let rest = Coalition::full(n).without(i).without(j);
    let subsets: Vec<Coalition> = rest.subsets().collect();
    for (k, &t) in targets.iter().enumerate() {
        let level: Vec<Coalition> = subsets.iter().copied().filter(|s| s.size() == k).collect();
        let forced = *level.choose(rng).expect("every size level is nonempty");
        for s in level {
            let (a, b) = (s.with(i).index(), s.with(j).index());
            let strict = t != Target::Tie && (s == forced || rng.gen_bool(0.5));
            if strict {
                let (win, lose) = if t == Target::ForI { (a, b) } else { (b, a) };
                scores[win] = 0;
                scores[lose] = 1;
            } else {
                scores[b] = scores[a];
            }
        }
    }
    AxiomWitness::single(Axiom::KDD, relation(n, &scores), i, j)
}

fn ci_witness<R: Rng>(rng: &mut R, n: usize, i: usize, j: usize, solution: SolutionRef) -> Option<AxiomWitness> {
    let (_, pr) = indifferent_relation(rng, n, i, j, solution, 2)?;
    let last = pr.class(pr.num_classes() - 1);
    let mut sigma: Vec<Coalition> = last.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if sigma.len() == last.len() {
        sigma.remove(rng.gen_range(0..sigma.len()));
    }
    Some(AxiomWitness {
        axiom: Axiom::CI,
        i,
        j,
        first: pr,
        second: None,
        datum: Datum::Subset(sigma),
    })
}

fn m_witness<R: Rng>(rng: &mut R, n: usize, i: usize, j: usize, solution: SolutionRef) -> Option<AxiomWitness> {
    for _ in 0..MAX_ATTEMPTS {
        let (_, pr) = indifferent_relation(rng, n, i, j, solution, 1)?;
        let mut s2: Vec<u32> = scores_of(&pr).iter().map(|k| 2 * k + 2).collect();
        let p = rng.gen_range(0.2..=1.0);
        for m in 1..s2.len() {
            let c = Coalition(m as u32);
            if !(c.contains(i) && !c.contains(j)) || !rng.gen_bool(p) {
                continue;
            }
            let k = pr.class_of(c) as u32;
            s2[m] = if k > 0 && rng.gen_bool(0.5) {
                2 * rng.gen_range(0..k) + 2
            } else {
                2 * k + 1
            };
        }
        let pr2 = relation(n, &s2);
        if is_i_improving_j_invariant(&pr, &pr2, i, j) {
            return Some(AxiomWitness {
                axiom: Axiom::M,
                i,
                j,
                first: pr,
                second: Some(pr2),
                datum: Datum::None,
            });
        }
    }
    None
}

fn sdes_witness<R: Rng>(rng: &mut R, n: usize, i: usize, j: usize) -> AxiomWitness {
    let mut scores: Vec<u32> = random_scores(rng, n).iter().map(|s| 2 * s + 1).collect();
    let rest = Coalition::full(n).without(i).without(j);
    let mut strict = false;
    for s in rest.subsets() {
        let (a, b) = (s.with(i).index(), s.with(j).index());
        if scores[a] > scores[b] {
            scores.swap(a, b);
        }
        strict |= scores[a] < scores[b];
    }
    if !strict {
        let subsets: Vec<Coalition> = rest.subsets().collect();
        let s = subsets.choose(rng).expect("nonempty");
        scores[s.with(i).index()] -= 1;
    }
    AxiomWitness::single(Axiom::SDes, relation(n, &scores), i, j)
}

/// A witness for `axiom` among `n` players whose hypothesis holds.
/// Hypotheses that mention the solution's own output (CAT, CI, IWS, IBS, M)
/// are met by rejection sampling against `solution`.
pub fn generate_witness(axiom: Axiom, solution: SolutionRef, n: usize, seed: u64) -> Result<AxiomWitness, AxiomError> {
    if n < 2 || (axiom == Axiom::KDD && n < 3) {
        return Err(AxiomError::UnsatisfiableAtSize { axiom, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (i, j) = pick_pair(&mut rng, n);
    let none = || AxiomError::NoWitnessFound {
        axiom,
        solution,
        attempts: MAX_ATTEMPTS,
    };
    let w = match axiom {
        Axiom::SDes => sdes_witness(&mut rng, n, i, j),
        Axiom::Sym => {
            let mut scores = random_scores(&mut rng, n);
            symmetrize(&mut scores, i, j);
            AxiomWitness::single(axiom, relation(n, &scores), i, j)
        }
        Axiom::Neu => AxiomWitness::single(axiom, random_power_relation(&mut rng, n), i, j),
        Axiom::EC | Axiom::CA | Axiom::PCA => bijection_witness(&mut rng, axiom, n, i, j),
        Axiom::CAT => cat_witness(&mut rng, n, i, j, solution).ok_or_else(none)?,
        Axiom::IWS | Axiom::IBS => extreme_class_witness(&mut rng, axiom, n, solution).ok_or_else(none)?,
        Axiom::KDD => kdd_witness(&mut rng, n, i, j),
        Axiom::CI => ci_witness(&mut rng, n, i, j, solution).ok_or_else(none)?,
        Axiom::M => m_witness(&mut rng, n, i, j, solution).ok_or_else(none)?,
    };
    debug_assert!(!check_axiom(solution, &w).map(|v| v.hypothesis_fails()).unwrap_or(true));
    Ok(w)
}

/// Every total preorder on the nonempty coalitions of `n ≤ 3` players.
pub fn all_power_relations(n: usize) -> Vec<PowerRelation> {
    assert!((1..=3).contains(&n), "exhaustive enumeration is limited to three players");
    let k = (1usize << n) - 1;
    let mut out = Vec::new();
    for l in 1..=k {
        let mut digits = vec![0u32; k];
        loop {
            let mut used = vec![false; l];
            digits.iter().for_each(|&d| used[d as usize] = true);
            if used.iter().all(|&u| u) {
                let mut scores = vec![0u32; k + 1];
                scores[1..].copy_from_slice(&digits);
                out.push(relation(n, &scores));
            }
            let mut p = 0;
            while p < k {
                digits[p] += 1;
                if (digits[p] as usize) < l {
                    break;
                }
                digits[p] = 0;
                p += 1;
            }
            if p == k {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fubini_count_for_three_players() {
        assert_eq!(all_power_relations(2).len(), 13);
        assert_eq!(all_power_relations(3).len(), 47293);
    }

    #[test]
    fn generation_is_deterministic() {
        for axiom in Axiom::ALL {
            let a = generate_witness(axiom, SolutionRef::LexCel, 4, 11).unwrap();
            let b = generate_witness(axiom, SolutionRef::LexCel, 4, 11).unwrap();
            assert_eq!(a, b, "{axiom}");
        }
    }

    #[test]
    fn kdd_needs_three_players() {
        assert_eq!(
            generate_witness(Axiom::KDD, SolutionRef::L1, 2, 5),
            Err(AxiomError::UnsatisfiableAtSize { axiom: Axiom::KDD, n: 2 })
        );
    }

    #[test]
    fn iws_witness_has_partition_of_worst_class() {
        let w = generate_witness(Axiom::IWS, SolutionRef::LexCel, 3, 1).unwrap();
        assert!(w.first.num_classes() >= 2);
        let Datum::Partition(parts) = &w.datum else { panic!() };
        let mut all = parts.concat();
        all.sort_unstable();
        let mut last = w.first.class(w.first.num_classes() - 1).to_vec();
        last.sort_unstable();
        assert_eq!(all, last);
    }

    #[test]
    fn cat_refines_a_shared_class() {
        for seed in 0..20 {
            let w = generate_witness(Axiom::CAT, SolutionRef::Cp, 3, seed).unwrap();
            let Datum::Refinements(refs) = &w.datum else { panic!() };
            let mut members = refs[0].concat();
            members.sort_unstable();
            for pr in [&w.first, w.second.as_ref().unwrap()] {
                let mut class = pr.class(pr.class_of(members[0])).to_vec();
                class.sort_unstable();
                assert_eq!(class, members);
            }
        }
    }

    #[test]
    fn size_preserving_bijection() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rest = Coalition::full(5).without(0).without(1);
        for (s, t) in random_bijection(&mut rng, rest, true) {
            assert_eq!(s.size(), t.size());
        }
    }

    #[test]
    fn trial_seeds_differ_by_coordinate() {
        let a = trial_seed(7, Axiom::CA, SolutionRef::Cp, 0);
        assert_ne!(a, trial_seed(7, Axiom::CA, SolutionRef::Cp, 1));
        assert_ne!(a, trial_seed(7, Axiom::EC, SolutionRef::Cp, 0));
        assert_ne!(a, trial_seed(7, Axiom::CA, SolutionRef::L1, 0));
        assert_ne!(a, trial_seed(8, Axiom::CA, SolutionRef::Cp, 0));
    }
}
