use std::cmp::Ordering;

use crate::model::PowerRelation;

/// `θ(i)`: entry `k` counts the coalitions of class `k` that contain `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaVector {
    pub counts: Vec<u64>,
}

/// `M(i)`: `rows[s - 1][k]` counts the coalitions of size `s` in class `k`
/// that contain `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct L1Matrix {
    pub rows: Vec<Vec<u64>>,
}

impl L1Matrix {
    pub fn num_classes(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Sum over sizes for each class; equals `θ(i)`.
    pub fn column_sums(&self) -> Vec<u64> {
        let mut out = vec![0; self.num_classes()];
        for row in &self.rows {
            for (o, v) in out.iter_mut().zip(row) {
                *o += v;
            }
        }
        out
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }
}

/// Per-player θ vectors and, optionally, size-by-class matrices, built in a
/// single sweep over every coalition.
#[derive(Debug, Clone)]
pub struct Statistics {
    n: usize,
    l: usize,
    theta: Vec<u64>,
    matrix: Option<Vec<u64>>,
}

impl Statistics {
    pub fn theta_only(pr: &PowerRelation) -> Self {
        Statistics::build(pr, false)
    }

    pub fn full(pr: &PowerRelation) -> Self {
        Statistics::build(pr, true)
    }

    fn build(pr: &PowerRelation, with_matrix: bool) -> Self {
        let n = pr.n();
        let l = pr.num_classes();
        let table = pr.class_table();
        let mut theta = vec![0u64; n * l];
        let mut matrix = with_matrix.then(|| vec![0u64; n * n * l]);
        for (mask, &k) in table.iter().enumerate().skip(1) {
            let k = k as usize;
            let s = (mask as u32).count_ones() as usize - 1;
            let mut bits = mask as u32;
            while bits != 0 {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                theta[p * l + k] += 1;
                if let Some(m) = matrix.as_mut() {
                    m[(p * n + s) * l + k] += 1;
                }
            }
        }
        Statistics { n, l, theta, matrix }
    }

    pub fn theta(&self, i: usize) -> &[u64] {
        &self.theta[i * self.l..(i + 1) * self.l]
    }

    pub fn theta_vector(&self, i: usize) -> ThetaVector {
        ThetaVector {
            counts: self.theta(i).to_vec(),
        }
    }

    /// Row `s` (0-based, size `s + 1`) of `M(i)`.
    pub fn matrix_row(&self, i: usize, s: usize) -> &[u64] {
        let m = self.matrix.as_ref().expect("statistics built without matrices");
        let start = (i * self.n + s) * self.l;
        &m[start..start + self.l]
    }

    pub fn matrix_entry(&self, i: usize, s: usize, k: usize) -> u64 {
        self.matrix_row(i, s)[k]
    }

    pub fn l1_matrix(&self, i: usize) -> L1Matrix {
        L1Matrix {
            rows: (0..self.n).map(|s| self.matrix_row(i, s).to_vec()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_classes(&self) -> usize {
        self.l
    }
}

pub fn theta(pr: &PowerRelation, i: usize) -> ThetaVector {
    let l = pr.num_classes();
    let mut counts = vec![0u64; l];
    let rest = pr.players().grand().without(i);
    for s in rest.subsets() {
        counts[pr.class_of(s.with(i))] += 1;
    }
    ThetaVector { counts }
}

pub fn l1_matrix(pr: &PowerRelation, i: usize) -> L1Matrix {
    let mut rows = vec![vec![0u64; pr.num_classes()]; pr.n()];
    let rest = pr.players().grand().without(i);
    for s in rest.subsets() {
        let c = s.with(i);
        rows[c.size() - 1][pr.class_of(c)] += 1;
    }
    L1Matrix { rows }
}

/// Lexicographic order, best class first; more occurrences win.
pub fn lexcel_cmp(a: &[u64], b: &[u64]) -> Ordering {
    a.cmp(b)
}

/// Lexicographic order from the worst class backwards; fewer occurrences win.
pub fn dual_lex_cmp(a: &[u64], b: &[u64]) -> Ordering {
    b.iter().rev().cmp(a.iter().rev())
}

/// Columns `0..l-1` best first, sizes ascending inside a column; larger wins.
/// The last column is never consulted since row sums are fixed.
pub fn l1_cmp(stats: &Statistics, i: usize, j: usize) -> Ordering {
    let (n, l) = (stats.n(), stats.num_classes());
    for k in 0..l.saturating_sub(1) {
        for s in 0..n {
            let o = stats.matrix_entry(i, s, k).cmp(&stats.matrix_entry(j, s, k));
            if o != Ordering::Equal {
                return o;
            }
        }
    }
    Ordering::Equal
}

/// Columns `l-1` down to `1`, sizes ascending inside a column; fewer wins.
pub fn l1_star_cmp(stats: &Statistics, i: usize, j: usize) -> Ordering {
    let (n, l) = (stats.n(), stats.num_classes());
    for k in (1..l).rev() {
        for s in 0..n {
            let o = stats.matrix_entry(j, s, k).cmp(&stats.matrix_entry(i, s, k));
            if o != Ordering::Equal {
                return o;
            }
        }
    }
    Ordering::Equal
}
