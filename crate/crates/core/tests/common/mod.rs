//! Brute-force reference implementations, written directly from the
//! definitions and sharing no code with the library.

#![allow(dead_code)]

use rand::Rng;
use socrank::{Cell, Coalition, PlayerSet, PowerRelation};

/// A coalitional ranking as a class index per bit pattern (0 = best).
#[derive(Debug, Clone)]
pub struct Rel {
    pub n: usize,
    pub l: usize,
    pub class: Vec<usize>,
}

impl Rel {
    /// Compress arbitrary scores (lower is better) into class indices.
    pub fn from_scores(n: usize, scores: &[u32]) -> Rel {
        let mut distinct: Vec<u32> = scores[1..].to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let mut class = vec![usize::MAX; 1 << n];
        for m in 1..(1usize << n) {
            class[m] = distinct.binary_search(&scores[m]).unwrap();
        }
        Rel {
            n,
            l: distinct.len(),
            class,
        }
    }

    pub fn to_library(&self) -> PowerRelation {
        let mut classes = vec![Vec::new(); self.l];
        for m in 1..(1usize << self.n) {
            classes[self.class[m]].push(Coalition(m as u32));
        }
        PowerRelation::new(PlayerSet::numbered(self.n).unwrap(), classes).unwrap()
    }

    pub fn from_library(pr: &PowerRelation) -> Rel {
        let n = pr.n();
        let mut class = vec![usize::MAX; 1 << n];
        for (k, members) in pr.classes().iter().enumerate() {
            for c in members {
                class[c.bits() as usize] = k;
            }
        }
        Rel {
            n,
            l: pr.num_classes(),
            class,
        }
    }
}

pub fn random_rel<R: Rng>(rng: &mut R, n: usize) -> Rel {
    let size = 1usize << n;
    let max_l = if rng.gen_bool(0.3) { size - 1 } else { 6.min(size - 1) };
    let l = rng.gen_range(1..=max_l) as u32;
    let scores: Vec<u32> = (0..size).map(|_| rng.gen_range(0..l)).collect();
    Rel::from_scores(n, &scores)
}

/// Every total preorder on the nonempty coalitions of `n ≤ 3` players.
pub fn all_rels(n: usize) -> Vec<Rel> {
    assert!(n <= 3);
    let m = (1usize << n) - 1;
    let mut out = Vec::new();
    let mut labels = vec![0usize; m];
    loop {
        let used = labels.iter().max().map_or(0, |&x| x + 1);
        if (0..used).all(|k| labels.contains(&k)) {
            let mut scores = vec![0u32; m + 1];
            for (c, &k) in labels.iter().enumerate() {
                scores[c + 1] = k as u32;
            }
            out.push(Rel::from_scores(n, &scores));
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return out;
            }
            labels[pos] += 1;
            if labels[pos] < m {
                break;
            }
            labels[pos] = 0;
            pos += 1;
        }
    }
}

fn popcount(m: usize) -> usize {
    (0..32).filter(|b| m >> b & 1 == 1).count()
}

pub fn d(rel: &Rel, i: usize, j: usize) -> u64 {
    let mut count = 0;
    for s in 0..(1usize << rel.n) {
        if s >> i & 1 == 1 || s >> j & 1 == 1 {
            continue;
        }
        if rel.class[s | 1 << i] < rel.class[s | 1 << j] {
            count += 1;
        }
    }
    count
}

pub fn sdes(rel: &Rel, i: usize, j: usize) -> bool {
    let mut strict = false;
    for s in 0..(1usize << rel.n) {
        if s >> i & 1 == 1 || s >> j & 1 == 1 {
            continue;
        }
        let (a, b) = (rel.class[s | 1 << i], rel.class[s | 1 << j]);
        if a > b {
            return false;
        }
        strict |= a < b;
    }
    strict
}

pub fn theta(rel: &Rel, i: usize) -> Vec<u64> {
    let mut v = vec![0; rel.l];
    for m in 1..(1usize << rel.n) {
        if m >> i & 1 == 1 {
            v[rel.class[m]] += 1;
        }
    }
    v
}

/// `M[s-1][k]`: coalitions of size `s` containing `i` in class `k`.
pub fn matrix(rel: &Rel, i: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0; rel.l]; rel.n];
    for m in 1..(1usize << rel.n) {
        if m >> i & 1 == 1 {
            out[popcount(m) - 1][rel.class[m]] += 1;
        }
    }
    out
}

fn lex_strict(a: &[u64], b: &[u64]) -> bool {
    (0..a.len()).any(|s| (0..s).all(|k| a[k] == b[k]) && a[s] > b[s])
}

fn dual_strict(a: &[u64], b: &[u64]) -> bool {
    let l = a.len();
    (0..l).any(|s| (s + 1..l).all(|k| a[k] == b[k]) && a[s] < b[s])
}

fn l1_strict(a: &[Vec<u64>], b: &[Vec<u64>], l: usize) -> bool {
    let n = a.len();
    for kh in 0..l.saturating_sub(1) {
        for sh in 0..n {
            let earlier = (0..n).all(|s| (0..kh).all(|k| a[s][k] == b[s][k]));
            let column = (0..sh).all(|s| a[s][kh] == b[s][kh]);
            if earlier && column && a[sh][kh] > b[sh][kh] {
                return true;
            }
        }
    }
    false
}

fn l1_star_strict(a: &[Vec<u64>], b: &[Vec<u64>], l: usize) -> bool {
    let n = a.len();
    for kh in 1..l {
        for sh in 0..n {
            let later = (0..n).all(|s| (kh + 1..l).all(|k| a[s][k] == b[s][k]));
            let column = (0..sh).all(|s| a[s][kh] == b[s][kh]);
            if later && column && a[sh][kh] < b[sh][kh] {
                return true;
            }
        }
    }
    false
}

fn decide(indifferent: bool, i_over_j: bool, j_over_i: bool) -> Cell {
    match (indifferent, i_over_j, j_over_i) {
        (true, false, false) => Cell::Indifferent,
        (false, true, false) => Cell::StrictlyAbove,
        (false, false, true) => Cell::StrictlyBelow,
        other => panic!("definition is not total here: {other:?}"),
    }
}

pub fn cp(rel: &Rel) -> Vec<Vec<Cell>> {
    grid(rel.n, |i, j| {
        let (a, b) = (d(rel, i, j), d(rel, j, i));
        decide(a == b, a > b, b > a)
    })
}

pub fn lexcel(rel: &Rel) -> Vec<Vec<Cell>> {
    grid(rel.n, |i, j| {
        let (a, b) = (theta(rel, i), theta(rel, j));
        decide(a == b, lex_strict(&a, &b), lex_strict(&b, &a))
    })
}

pub fn dual_lex(rel: &Rel) -> Vec<Vec<Cell>> {
    grid(rel.n, |i, j| {
        let (a, b) = (theta(rel, i), theta(rel, j));
        decide(a == b, dual_strict(&a, &b), dual_strict(&b, &a))
    })
}

pub fn l1(rel: &Rel) -> Vec<Vec<Cell>> {
    grid(rel.n, |i, j| {
        let (a, b) = (matrix(rel, i), matrix(rel, j));
        decide(a == b, l1_strict(&a, &b, rel.l), l1_strict(&b, &a, rel.l))
    })
}

pub fn l1_star(rel: &Rel) -> Vec<Vec<Cell>> {
    grid(rel.n, |i, j| {
        let (a, b) = (matrix(rel, i), matrix(rel, j));
        decide(a == b, l1_star_strict(&a, &b, rel.l), l1_star_strict(&b, &a, rel.l))
    })
}

fn grid(n: usize, mut f: impl FnMut(usize, usize) -> Cell) -> Vec<Vec<Cell>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Cell::Indifferent } else { f(i, j) }).collect())
        .collect()
}

/// Reference for a library method by its name.
pub fn by_name(name: &str, rel: &Rel) -> Vec<Vec<Cell>> {
    match name {
        "cp" => cp(rel),
        "lexcel" => lexcel(rel),
        "duallex" => dual_lex(rel),
        "l1" => l1(rel),
        "l1star" => l1_star(rel),
        other => panic!("no reference for {other}"),
    }
}

/// Ranks from sorting players with a transitive relation as comparator.
pub fn ranks_by_sort(cells: &[Vec<Cell>]) -> Vec<usize> {
    let n = cells.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| match cells[a][b] {
        Cell::StrictlyAbove => std::cmp::Ordering::Less,
        Cell::Indifferent => std::cmp::Ordering::Equal,
        Cell::StrictlyBelow => std::cmp::Ordering::Greater,
    });
    let mut ranks = vec![0; n];
    for (pos, &p) in order.iter().enumerate() {
        ranks[p] = if pos > 0 && cells[order[pos - 1]][p] == Cell::Indifferent {
            ranks[order[pos - 1]]
        } else {
            pos + 1
        };
    }
    ranks
}
