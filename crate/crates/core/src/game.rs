//! Multicameral weighted voting games and the coalitional rankings they
//! induce.
//!
//! A coalition's value is the number of consecutive houses, starting from
//! the first, whose quota it meets. The induced ranking places coalitions
//! with higher values above those with lower values.

use thiserror::Error;

use crate::model::{Coalition, ModelError, PlayerSet, PowerRelation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: expected {expected} values, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: quota of house {house} must be positive")]
    NonPositiveQuota { line: usize, house: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct House {
    pub weights: Vec<u64>,
    pub quota: u64,
}

impl House {
    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn weight_of(&self, c: Coalition) -> u64 {
        c.members().map(|p| self.weights[p]).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticameralGame {
    players: PlayerSet,
    houses: Vec<House>,
}

impl MulticameralGame {
    pub fn new(players: PlayerSet, houses: Vec<House>) -> Result<Self, GameError> {
        if houses.is_empty() {
            return Err(GameError::DimensionMismatch {
                line: 0,
                expected: 1,
                found: 0,
            });
        }
        for (h, house) in houses.iter().enumerate() {
            if house.weights.len() != players.len() {
                return Err(GameError::DimensionMismatch {
                    line: 0,
                    expected: players.len(),
                    found: house.weights.len(),
                });
            }
            if house.quota == 0 {
                return Err(GameError::NonPositiveQuota { line: 0, house: h + 1 });
            }
        }
        Ok(MulticameralGame { players, houses })
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn houses(&self) -> &[House] {
        &self.houses
    }

    /// Houses whose quota exceeds their total weight; no coalition passes them.
    pub fn warnings(&self) -> Vec<String> {
        self.houses
            .iter()
            .enumerate()
            .filter(|(_, h)| h.quota > h.total_weight())
            .map(|(k, h)| {
                format!(
                    "house {} quota {} exceeds its total weight {}; no coalition can pass it",
                    k + 1,
                    h.quota,
                    h.total_weight()
                )
            })
            .collect()
    }

    /// Length of the longest prefix of houses whose quotas `c` meets.
    pub fn value(&self, c: Coalition) -> usize {
        self.houses
            .iter()
            .take_while(|h| h.weight_of(c) >= h.quota)
            .count()
    }

    /// Values of every coalition indexed by bit pattern (entry 0 is the
    /// empty coalition).
    pub fn all_values(&self) -> Vec<u8> {
        let n = self.players.len();
        let size = 1usize << n;
        let mut values = vec![0u8; size];
        let mut sums = vec![0u64; size];
        for (h, house) in self.houses.iter().enumerate() {
            for mask in 1..size {
                let low = mask.trailing_zeros() as usize;
                sums[mask] = sums[mask & (mask - 1)] + house.weights[low];
                if values[mask] as usize == h && sums[mask] >= house.quota {
                    values[mask] += 1;
                }
            }
        }
        values
    }

    pub fn to_power_relation(&self) -> PowerRelation {
        let m = self.houses.len() as u32;
        let scores: Vec<u32> = self.all_values().into_iter().map(|v| m - v as u32).collect();
        PowerRelation::from_scores(self.players.clone(), &scores)
    }
}

pub fn game_value(g: &MulticameralGame, c: Coalition) -> usize {
    g.value(c)
}

pub fn game_to_power_relation(g: &MulticameralGame) -> PowerRelation {
    g.to_power_relation()
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> GameError {
    GameError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn parse_numbers<'a>(
    fields: impl Iterator<Item = &'a str>,
    raw: &str,
    line: usize,
) -> Result<Vec<u64>, GameError> {
    fields
        .map(|f| {
            f.parse::<u64>().map_err(|_| {
                let col = raw.find(f).unwrap_or(0) + 1;
                syntax(line, col, format!("expected a non-negative integer, found {f:?}"))
            })
        })
        .collect()
}

/// Parse the `.game` format:
///
/// ```text
/// houses: 2
/// quota: 4 4
/// player 1 2 2
/// player 2 2 1
/// player 3 2 2
/// ```
pub fn parse_game(text: &str) -> Result<MulticameralGame, GameError> {
    let mut houses: Option<usize> = None;
    let mut quotas: Option<(Vec<u64>, usize)> = None;
    let mut names = Vec::new();
    let mut weights: Vec<Vec<u64>> = Vec::new();
    let mut last_line = 1;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        last_line = line;
        let col = body.len() - body.trim_start().len() + 1;
        let trimmed = body.trim();
        if let Some(rest) = trimmed.strip_prefix("houses:") {
            if houses.is_some() {
                return Err(syntax(line, col, "duplicate 'houses:' line"));
            }
            let v = parse_numbers(rest.split_whitespace(), raw, line)?;
            if v.len() != 1 || v[0] == 0 {
                return Err(syntax(line, col, "'houses:' takes one positive integer"));
            }
            houses = Some(v[0] as usize);
        } else if let Some(rest) = trimmed.strip_prefix("quota:") {
            let Some(m) = houses else {
                return Err(syntax(line, col, "'quota:' must follow 'houses:'"));
            };
            if quotas.is_some() {
                return Err(syntax(line, col, "duplicate 'quota:' line"));
            }
            let q = parse_numbers(rest.split_whitespace(), raw, line)?;
            if q.len() != m {
                return Err(GameError::DimensionMismatch {
                    line,
                    expected: m,
                    found: q.len(),
                });
            }
            if let Some(h) = q.iter().position(|&x| x == 0) {
                return Err(GameError::NonPositiveQuota { line, house: h + 1 });
            }
            quotas = Some((q, line));
        } else if trimmed.starts_with("player") && trimmed["player".len()..].starts_with(char::is_whitespace) {
            let Some(m) = houses else {
                return Err(syntax(line, col, "'player' lines must follow 'houses:'"));
            };
            let mut fields = trimmed.split_whitespace().skip(1);
            let name = fields
                .next()
                .ok_or_else(|| syntax(line, col, "expected player label"))?;
            let w = parse_numbers(fields, raw, line)?;
            if w.len() != m {
                return Err(GameError::DimensionMismatch {
                    line,
                    expected: m,
                    found: w.len(),
                });
            }
            names.push(name.to_string());
            weights.push(w);
        } else {
            return Err(syntax(line, col, "expected 'houses:', 'quota:' or 'player'"));
        }
    }

    let Some(m) = houses else {
        return Err(syntax(last_line, 1, "missing 'houses:' line"));
    };
    let Some((quotas, _)) = quotas else {
        return Err(syntax(last_line, 1, "missing 'quota:' line"));
    };
    let players = PlayerSet::new(names)?;
    let houses = (0..m)
        .map(|h| House {
            weights: weights.iter().map(|w| w[h]).collect(),
            quota: quotas[h],
        })
        .collect();
    MulticameralGame::new(players, houses)
}

pub fn serialize_game(g: &MulticameralGame) -> String {
    let mut out = format!("houses: {}\nquota:", g.houses.len());
    for h in &g.houses {
        out.push_str(&format!(" {}", h.quota));
    }
    out.push('\n');
    for (p, name) in g.players.names().iter().enumerate() {
        out.push_str("player ");
        out.push_str(name);
        for h in &g.houses {
            out.push_str(&format!(" {}", h.weights[p]));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_power_relation;

    const EXAMPLE: &str = "houses: 2\nquota: 4 4\nplayer 1 2 2\nplayer 2 2 1\nplayer 3 2 2\n";

    fn c(players: &[usize]) -> Coalition {
        Coalition::from_players(players.iter().map(|p| p - 1))
    }

    #[test]
    fn example_values() {
        let g = parse_game(EXAMPLE).unwrap();
        assert_eq!(g.value(c(&[1, 3])), 2);
        assert_eq!(g.value(c(&[1, 2, 3])), 2);
        assert_eq!(g.value(c(&[1, 2])), 1);
        assert_eq!(g.value(c(&[1])), 0);
    }

    #[test]
    fn example_relation() {
        let g = parse_game(EXAMPLE).unwrap();
        let expected =
            parse_power_relation("players: 1 2 3\nranking: {1,2,3} ~ {1,3} > {1,2} ~ {2,3} > {1} ~ {2} ~ {3}").unwrap();
        assert!(g.to_power_relation().same_order(&expected));
    }

    #[test]
    fn prefix_rule_ignores_later_houses() {
        let g = parse_game("houses: 2\nquota: 3 1\nplayer a 1 1\nplayer b 1 0\nplayer c 1 0\n").unwrap();
        assert_eq!(g.value(c(&[1])), 0);
        assert_eq!(g.value(c(&[2, 3])), 0);
        assert_eq!(g.value(c(&[1, 2, 3])), 2);
    }

    #[test]
    fn everything_passes_gives_one_class() {
        let g = parse_game("houses: 1\nquota: 1\nplayer a 1\nplayer b 1\n").unwrap();
        assert_eq!(g.to_power_relation().num_classes(), 1);
    }

    #[test]
    fn simple_majority() {
        let g = parse_game("houses: 1\nquota: 2\nplayer a 1\nplayer b 1\nplayer c 1").unwrap();
        let pr = g.to_power_relation();
        assert_eq!(pr.num_classes(), 2);
        assert_eq!(pr.class(0).len(), 4);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_game("houses: 2\nquota: 4 4 4\nplayer a 1 1").unwrap_err(),
            GameError::DimensionMismatch { line: 2, expected: 2, found: 3 }
        );
        assert_eq!(
            parse_game("houses: 2\nquota: 4 4\nplayer a 1").unwrap_err(),
            GameError::DimensionMismatch { line: 3, expected: 2, found: 1 }
        );
        assert_eq!(
            parse_game("houses: 1\nquota: 0\nplayer a 1").unwrap_err(),
            GameError::NonPositiveQuota { line: 2, house: 1 }
        );
        assert!(matches!(
            parse_game("houses: 1\nquota: x\nplayer a 1").unwrap_err(),
            GameError::Syntax { line: 2, column: 8, .. }
        ));
        assert!(matches!(parse_game("bogus").unwrap_err(), GameError::Syntax { line: 1, .. }));
    }

    #[test]
    fn unreachable_quota_warns() {
        let g = parse_game("houses: 1\nquota: 5\nplayer a 1\nplayer b 1").unwrap();
        assert_eq!(g.warnings().len(), 1);
        assert_eq!(g.to_power_relation().num_classes(), 1);
    }

    #[test]
    fn serialize_round_trip() {
        let g = parse_game(EXAMPLE).unwrap();
        assert_eq!(serialize_game(&g), EXAMPLE);
    }
}
