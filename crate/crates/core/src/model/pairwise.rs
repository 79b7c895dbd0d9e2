use std::cmp::Ordering;
use std::fmt;

/// One cell of a pairwise relation, read as "row player versus column player".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    StrictlyAbove,
    Indifferent,
    StrictlyBelow,
}

impl Cell {
    pub fn mirror(self) -> Cell {
        match self {
            Cell::StrictlyAbove => Cell::StrictlyBelow,
            Cell::Indifferent => Cell::Indifferent,
            Cell::StrictlyBelow => Cell::StrictlyAbove,
        }
    }

    /// `Greater` maps to `StrictlyAbove`.
    pub fn from_ordering(o: Ordering) -> Cell {
        match o {
            Ordering::Greater => Cell::StrictlyAbove,
            Ordering::Equal => Cell::Indifferent,
            Ordering::Less => Cell::StrictlyBelow,
        }
    }

    /// The weak part: row player is at least as good as the column player.
    pub fn is_weak(self) -> bool {
        self != Cell::StrictlyBelow
    }

    pub fn symbol(self) -> char {
        match self {
            Cell::StrictlyAbove => 'P',
            Cell::Indifferent => 'I',
            Cell::StrictlyBelow => 'p',
        }
    }
}

/// Total binary relation on players stored as a full n×n cell matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairwiseRelation {
    n: usize,
    cells: Vec<Cell>,
}

impl PairwiseRelation {
    pub fn all_indifferent(n: usize) -> Self {
        PairwiseRelation {
            n,
            cells: vec![Cell::Indifferent; n * n],
        }
    }

    /// Build from a comparator called once per unordered pair `(i, j)` with
    /// `i < j`; `Greater` means `i` is strictly above `j`. The mirrored cell
    /// is written from the same result.
    pub fn from_pairs<F>(n: usize, mut cmp: F) -> Self
    where
        F: FnMut(usize, usize) -> Ordering,
    {
        let mut rel = PairwiseRelation::all_indifferent(n);
        for i in 0..n {
            for j in i + 1..n {
                rel.set(i, j, Cell::from_ordering(cmp(i, j)));
            }
        }
        rel
    }

    /// Build from a per-player key; larger keys rank higher.
    pub fn from_key<K: Ord>(keys: &[K]) -> Self {
        PairwiseRelation::from_pairs(keys.len(), |i, j| keys[i].cmp(&keys[j]))
    }

    fn set(&mut self, i: usize, j: usize, cell: Cell) {
        self.cells[i * self.n + j] = cell;
        self.cells[j * self.n + i] = cell.mirror();
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn cell(&self, i: usize, j: usize) -> Cell {
        self.cells[i * self.n + j]
    }

    /// `i R j`.
    pub fn weak(&self, i: usize, j: usize) -> bool {
        self.cell(i, j).is_weak()
    }

    /// `i P j`.
    pub fn strict(&self, i: usize, j: usize) -> bool {
        self.cell(i, j) == Cell::StrictlyAbove
    }

    /// `i I j`.
    pub fn indifferent(&self, i: usize, j: usize) -> bool {
        self.cell(i, j) == Cell::Indifferent
    }

    /// Every strict cell flipped.
    pub fn mirror(&self) -> PairwiseRelation {
        PairwiseRelation {
            n: self.n,
            cells: self.cells.iter().map(|c| c.mirror()).collect(),
        }
    }

    pub fn has_tie(&self) -> bool {
        (0..self.n).any(|i| (i + 1..self.n).any(|j| self.indifferent(i, j)))
    }

    /// First triple `(i, j, k)` in lexicographic order with `i R j`,
    /// `j R k` and not `i R k`.
    pub fn intransitivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if j == i || !self.weak(i, j) {
                    continue;
                }
                for k in 0..n {
                    if k != i && k != j && self.weak(j, k) && !self.weak(i, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.intransitivity_witness().is_none()
    }
}

impl fmt::Debug for PairwiseRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PairwiseRelation(")?;
        for i in 0..self.n {
            let row: String = (0..self.n).map(|j| self.cell(i, j).symbol()).collect();
            writeln!(f, "  {row}")?;
        }
        write!(f, ")")
    }
}

/// Competition ranks ("1224"), one per player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    pub ranks: Vec<usize>,
}

/// Transitivity failure: `i R j`, `j R k` but not `i R k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntransitivityReport {
    pub witness: (usize, usize, usize),
}

pub fn ranks_from_pairwise(rel: &PairwiseRelation) -> Result<Ranking, IntransitivityReport> {
    if let Some(witness) = rel.intransitivity_witness() {
        return Err(IntransitivityReport { witness });
    }
    let n = rel.n();
    let ranks = (0..n)
        .map(|i| 1 + (0..n).filter(|&j| rel.strict(j, i)).count())
        .collect();
    Ok(Ranking { ranks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_cp_ranks() {
        // 1 I 3, 1 P 2, 3 P 2
        let rel = PairwiseRelation::from_key(&[1, 0, 1]);
        assert_eq!(ranks_from_pairwise(&rel).unwrap().ranks, vec![1, 3, 1]);
    }

    #[test]
    fn all_indifferent_ranks() {
        let rel = PairwiseRelation::all_indifferent(4);
        assert_eq!(ranks_from_pairwise(&rel).unwrap().ranks, vec![1, 1, 1, 1]);
    }

    #[test]
    fn three_cycle_reports_witness() {
        let rel = PairwiseRelation::from_pairs(3, |i, j| match (i, j) {
            (0, 1) | (1, 2) => Ordering::Greater,
            _ => Ordering::Less,
        });
        assert_eq!(ranks_from_pairwise(&rel), Err(IntransitivityReport { witness: (0, 1, 2) }));
    }

    #[test]
    fn competition_numbering_skips() {
        let rel = PairwiseRelation::from_key(&[9, 5, 5, 1]);
        assert_eq!(ranks_from_pairwise(&rel).unwrap().ranks, vec![1, 2, 2, 4]);
    }

    #[test]
    fn cells_are_mirrored() {
        let rel = PairwiseRelation::from_key(&[3, 1, 2]);
        for i in 0..3 {
            assert_eq!(rel.cell(i, i), Cell::Indifferent);
            for j in 0..3 {
                assert_eq!(rel.cell(i, j), rel.cell(j, i).mirror());
            }
        }
        assert_eq!(rel.mirror().mirror(), rel);
    }
}
