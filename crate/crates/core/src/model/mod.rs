//! Players, coalitions and coalitional rankings (power relations).
//!
//! A coalition is a bit pattern over player indices. A [`PowerRelation`] is a
//! total preorder on every nonempty coalition, stored as its quotient order:
//! the ordered list of equivalence classes (strongest first) plus a lookup
//! table from coalition bit pattern to class index.

mod format;
mod pairwise;

pub use format::{parse_power_relation, serialize_power_relation};
pub use pairwise::{ranks_from_pairwise, Cell, IntransitivityReport, PairwiseRelation, Ranking};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Largest supported number of players.
pub const MAX_PLAYERS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("player set must contain between 1 and {MAX_PLAYERS} players, got {0}")]
    PlayerCount(usize),
    #[error("invalid player label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate player label {0:?}")]
    DuplicatePlayer(String),
    #[error("unknown player {0:?}")]
    UnknownPlayer(String),
    #[error("coalition {0} is listed more than once")]
    DuplicateCoalition(String),
    #[error("coalition {0} is missing from the ranking")]
    MissingCoalition(String),
    #[error("equivalence class {0} is empty")]
    EmptyClass(usize),
    #[error("the empty coalition cannot be ranked")]
    EmptyCoalitionListed,
    #[error("coalition bit pattern {0:#x} is outside the player set")]
    CoalitionOutOfRange(u32),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

pub(crate) fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

/// Ordered list of distinct player labels; a label's position is its index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PlayerSet {
    pub fn new<I, S>(names: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > MAX_PLAYERS {
            return Err(ModelError::PlayerCount(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_label(name) {
                return Err(ModelError::InvalidLabel(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(ModelError::DuplicatePlayer(name.clone()));
            }
        }
        Ok(PlayerSet { names, index })
    }

    /// Players labelled `1`, `2`, ..., `n`.
    pub fn numbered(n: usize) -> Result<Self, ModelError> {
        PlayerSet::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, player: usize) -> &str {
        &self.names[player]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, ModelError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| ModelError::UnknownPlayer(label.to_string()))
    }

    /// The grand coalition N.
    pub fn grand(&self) -> Coalition {
        Coalition::full(self.len())
    }

    /// Number of nonempty coalitions, 2^n - 1.
    pub fn coalition_count(&self) -> usize {
        (1usize << self.len()) - 1
    }

    /// `{a,b}` style rendering using player labels.
    pub fn format_coalition(&self, c: Coalition) -> String {
        let mut s = String::from("{");
        for (k, p) in c.members().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(&self.names[p]);
        }
        s.push('}');
        s
    }
}

/// A set of players as a bit pattern indexed by player position.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(pub u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn full(n: usize) -> Coalition {
        Coalition(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(player: usize) -> Coalition {
        Coalition(1 << player)
    }

    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Coalition {
        Coalition(players.into_iter().fold(0, |m, p| m | (1 << p)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, player: usize) -> bool {
        self.0 >> player & 1 == 1
    }

    pub fn with(self, player: usize) -> Coalition {
        Coalition(self.0 | 1 << player)
    }

    pub fn without(self, player: usize) -> Coalition {
        Coalition(self.0 & !(1 << player))
    }

    pub fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    /// Exchange the memberships of players `a` and `b`.
    pub fn swap_players(self, a: usize, b: usize) -> Coalition {
        let (ia, ib) = (self.contains(a), self.contains(b));
        let mut c = self.without(a).without(b);
        if ia {
            c = c.with(b);
        }
        if ib {
            c = c.with(a);
        }
        c
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(p)
            }
        })
    }

    /// Every subset of `self`, including the empty set and `self`, in
    /// descending bit-pattern order.
    pub fn subsets(self) -> impl Iterator<Item = Coalition> {
        let mask = self.0;
        let mut next = Some(mask);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & mask) };
            Some(Coalition(cur))
        })
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.members().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Total preorder on the nonempty coalitions of a player set.
///
/// Class indices are zero-based here: class 0 is the strongest. The relation
/// is immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerRelation {
    players: PlayerSet,
    classes: Vec<Vec<Coalition>>,
    class_of: Vec<u32>,
}

const NO_CLASS: u32 = u32::MAX;

impl PowerRelation {
    /// Validate an ordered list of equivalence classes. Classes keep the
    /// given order; coalitions inside a class keep their listed order.
    pub fn new(players: PlayerSet, classes: Vec<Vec<Coalition>>) -> Result<Self, ModelError> {
        let n = players.len();
        let size = 1usize << n;
        let mut class_of = vec![NO_CLASS; size];
        for (k, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(ModelError::EmptyClass(k + 1));
            }
            for &c in class {
                if c.is_empty() {
                    return Err(ModelError::EmptyCoalitionListed);
                }
                if c.index() >= size {
                    return Err(ModelError::CoalitionOutOfRange(c.bits()));
                }
                if class_of[c.index()] != NO_CLASS {
                    return Err(ModelError::DuplicateCoalition(players.format_coalition(c)));
                }
                class_of[c.index()] = k as u32;
            }
        }
        if let Some(missing) = (1..size).find(|&m| class_of[m] == NO_CLASS) {
            return Err(ModelError::MissingCoalition(
                players.format_coalition(Coalition(missing as u32)),
            ));
        }
        Ok(PowerRelation {
            players,
            classes,
            class_of,
        })
    }

    /// Build from a score per coalition: lower score means stronger.
    /// `scores` is indexed by bit pattern and has length 2^n; entry 0 is
    /// ignored. Distinct scores become classes in ascending score order and
    /// coalitions inside a class are sorted by bit pattern.
    pub fn from_scores(players: PlayerSet, scores: &[u32]) -> Self {
        let size = 1usize << players.len();
        assert_eq!(scores.len(), size, "score table must have 2^n entries");
        let mut distinct: Vec<u32> = scores[1..].to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        // dense remap; scores are usually tiny so a direct table is cheap
        let max = *distinct.last().unwrap_or(&0) as usize;
        let mut remap = vec![NO_CLASS; max + 1];
        for (k, &s) in distinct.iter().enumerate() {
            remap[s as usize] = k as u32;
        }
        let mut class_of = vec![NO_CLASS; size];
        let mut classes = vec![Vec::new(); distinct.len()];
        for m in 1..size {
            let k = remap[scores[m] as usize];
            class_of[m] = k;
            classes[k as usize].push(Coalition(m as u32));
        }
        PowerRelation {
            players,
            classes,
            class_of,
        }
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    /// Number of equivalence classes, l.
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<Coalition>] {
        &self.classes
    }

    pub fn class(&self, k: usize) -> &[Coalition] {
        &self.classes[k]
    }

    /// Zero-based class index of a nonempty coalition.
    #[inline]
    pub fn class_of(&self, c: Coalition) -> usize {
        debug_assert!(!c.is_empty());
        self.class_of[c.index()] as usize
    }

    /// Raw class table indexed by bit pattern (entry 0 unused).
    pub fn class_table(&self) -> &[u32] {
        &self.class_of
    }

    /// `Greater` when `a` is strictly stronger than `b`.
    #[inline]
    pub fn compare(&self, a: Coalition, b: Coalition) -> Ordering {
        self.class_of(b).cmp(&self.class_of(a))
    }

    /// `a ≿ b`.
    pub fn weakly_stronger(&self, a: Coalition, b: Coalition) -> bool {
        self.class_of(a) <= self.class_of(b)
    }

    /// Quotient order reversed: the weakest class becomes the strongest.
    pub fn reverse(&self) -> PowerRelation {
        let classes: Vec<Vec<Coalition>> = self.classes.iter().rev().cloned().collect();
        let l = self.classes.len() as u32;
        let class_of = self
            .class_of
            .iter()
            .map(|&k| if k == NO_CLASS { NO_CLASS } else { l - 1 - k })
            .collect();
        PowerRelation {
            players: self.players.clone(),
            classes,
            class_of,
        }
    }

    /// The relation obtained by renaming player `a` as `b` and vice versa.
    pub fn swap_players(&self, a: usize, b: usize) -> PowerRelation {
        let classes = self
            .classes
            .iter()
            .map(|class| {
                let mut c: Vec<Coalition> = class.iter().map(|s| s.swap_players(a, b)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        PowerRelation::new(self.players.clone(), classes).expect("swapping players keeps a partition")
    }

    /// Same quotient order with the coalitions of every class sorted by bit
    /// pattern. Two relations are the same preorder iff their normalized
    /// forms are equal.
    pub fn normalized(&self) -> PowerRelation {
        let mut out = self.clone();
        for class in &mut out.classes {
            class.sort_unstable();
        }
        out
    }

    /// Whether two relations over the same players induce the same preorder.
    pub fn same_order(&self, other: &PowerRelation) -> bool {
        self.players == other.players && self.class_of == other.class_of
    }
}
