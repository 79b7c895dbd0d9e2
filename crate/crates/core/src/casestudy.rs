//! The bicameral States General of the Netherlands, seat distribution of
//! 2012, with the published reference values for its induced ranking.

use crate::game::{House, MulticameralGame};
use crate::model::PlayerSet;

/// `(party, lower house seats, upper house seats)`.
pub const PARTIES: [(&str, u64, u64); 17] = [
    ("VVD", 40, 13),
    ("PvdA", 36, 8),
    ("SP", 15, 9),
    ("CDA", 13, 12),
    ("D66", 12, 10),
    ("PVV", 12, 9),
    ("CU", 5, 3),
    ("GL", 4, 4),
    ("SGP", 3, 2),
    ("PvdD", 2, 2),
    ("GrKO", 2, 0),
    ("GrBvK", 2, 0),
    ("50PLUS", 1, 2),
    ("Houwers", 1, 0),
    ("Klein", 1, 0),
    ("VanVliet", 1, 0),
    ("OSF", 0, 1),
];

pub const LOWER_QUOTA: u64 = 76;
pub const UPPER_QUOTA: u64 = 38;

/// Published competition ranks, in [`PARTIES`] order.
pub const EXPECTED_LEXCEL_RANKS: [usize; 17] = [1, 2, 4, 3, 5, 6, 8, 7, 9, 10, 12, 12, 11, 15, 15, 15, 14];
pub const EXPECTED_L1_RANKS: [usize; 17] = [1, 2, 4, 3, 5, 6, 8, 7, 9, 10, 13, 13, 11, 15, 15, 15, 12];
pub const EXPECTED_CP_RANKS: [usize; 17] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 12, 11, 14, 14, 14, 17];

pub const EXPECTED_THETA_GRKO: [u64; 3] = [28838, 4442, 32256];
pub const EXPECTED_THETA_OSF: [u64; 3] = [28747, 3517, 33272];

/// Rows for sizes 1 to 7 of the size-by-class matrices.
pub const EXPECTED_M_GRKO: [[u64; 3]; 7] = [
    [0, 0, 1],
    [0, 0, 16],
    [0, 1, 119],
    [0, 14, 546],
    [12, 86, 1722],
    [161, 307, 3900],
    [910, 696, 6402],
];
pub const EXPECTED_M_OSF: [[u64; 3]; 7] = [
    [0, 0, 1],
    [0, 0, 16],
    [0, 1, 119],
    [0, 14, 546],
    [13, 84, 1723],
    [159, 284, 3925],
    [886, 581, 6541],
];
/// Last row (size 17) of both matrices.
pub const EXPECTED_M_LAST_ROW: [u64; 3] = [1, 0, 0];

/// CP-comparison counts among GrKO, VanVliet and OSF.
pub const CP_SUBSET: [&str; 3] = ["GrKO", "VanVliet", "OSF"];
pub const EXPECTED_CP_SUBMATRIX: [[u64; 3]; 3] = [[0, 512, 1016], [0, 0, 504], [405, 437, 0]];

pub fn players() -> PlayerSet {
    PlayerSet::new(PARTIES.iter().map(|p| p.0)).expect("embedded labels are valid")
}

pub fn game() -> MulticameralGame {
    let houses = vec![
        House {
            weights: PARTIES.iter().map(|p| p.1).collect(),
            quota: LOWER_QUOTA,
        },
        House {
            weights: PARTIES.iter().map(|p| p.2).collect(),
            quota: UPPER_QUOTA,
        },
    ];
    MulticameralGame::new(players(), houses).expect("embedded game is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seat_totals_and_majorities() {
        let lower: u64 = PARTIES.iter().map(|p| p.1).sum();
        let upper: u64 = PARTIES.iter().map(|p| p.2).sum();
        assert_eq!((lower, upper), (150, 75));
        assert_eq!(LOWER_QUOTA, lower / 2 + 1);
        assert_eq!(UPPER_QUOTA, upper / 2 + 1);
    }

    #[test]
    fn grand_coalition_passes_both() {
        let g = game();
        assert_eq!(g.value(g.players().grand()), 2);
        assert!(g.warnings().is_empty());
    }
}
