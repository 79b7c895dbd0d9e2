//! The line-oriented `.pr` text format.
//!
//! ```text
//! players: 1 2 3
//! ranking: {1,2,3} ~ {1,3} > {1,2} ~ {2,3} > *
//! ```
//!
//! A final class consisting of `*` collects every coalition not listed
//! earlier. The ranking may continue over several lines.

use super::{valid_label, Coalition, ModelError, PlayerSet, PowerRelation};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Tilde,
    Greater,
    Star,
    Label(String),
}

#[derive(Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ModelError {
    ModelError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(p) => &line[..p],
        None => line,
    }
}

fn tokenize(text: &str, line: usize, start_col: usize, out: &mut Vec<Spanned>) -> Result<(), ModelError> {
    let chars: Vec<char> = text.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let column = start_col + k;
        let tok = match c {
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            '{' => Tok::Open,
            '}' => Tok::Close,
            ',' => Tok::Comma,
            '~' => Tok::Tilde,
            '>' => Tok::Greater,
            '*' => Tok::Star,
            c if valid_label(c.encode_utf8(&mut [0; 4])) => {
                let begin = k;
                while k < chars.len() && valid_label(chars[k].encode_utf8(&mut [0; 4])) {
                    k += 1;
                }
                let label: String = chars[begin..k].iter().collect();
                out.push(Spanned {
                    tok: Tok::Label(label),
                    line,
                    column,
                });
                continue;
            }
            other => return Err(syntax(line, column, format!("unexpected character {other:?}"))),
        };
        out.push(Spanned { tok, line, column });
        k += 1;
    }
    Ok(())
}

enum Item {
    Coalition(Coalition),
    Sink,
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    end: (usize, usize),
    players: &'a PlayerSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ModelError> {
        match self.peek() {
            Some(t) if t.tok == want => {
                self.pos += 1;
                Ok(())
            }
            _ => {
                let (l, c) = self.here();
                Err(syntax(l, c, format!("expected {what}")))
            }
        }
    }

    fn item(&mut self) -> Result<Item, ModelError> {
        if matches!(self.peek(), Some(t) if t.tok == Tok::Star) {
            self.pos += 1;
            return Ok(Item::Sink);
        }
        self.expect(Tok::Open, "'{' or '*'")?;
        let mut c = Coalition::EMPTY;
        if matches!(self.peek(), Some(t) if t.tok == Tok::Close) {
            self.pos += 1;
            return Err(ModelError::EmptyCoalitionListed);
        }
        loop {
            let (l, col) = self.here();
            let label = match self.peek() {
                Some(Spanned { tok: Tok::Label(s), .. }) => s.clone(),
                _ => return Err(syntax(l, col, "expected player label")),
            };
            self.pos += 1;
            let p = self.players.index_of(&label)?;
            if c.contains(p) {
                return Err(syntax(l, col, format!("player {label} repeated in coalition")));
            }
            c = c.with(p);
            match self.peek().map(|t| &t.tok) {
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::Close) => {
                    self.pos += 1;
                    break;
                }
                _ => {
                    let (l, col) = self.here();
                    return Err(syntax(l, col, "expected ',' or '}'"));
                }
            }
        }
        Ok(Item::Coalition(c))
    }
}

pub fn parse_power_relation(text: &str) -> Result<PowerRelation, ModelError> {
    let mut players: Option<(PlayerSet, usize)> = None;
    let mut toks = Vec::new();
    let mut ranking_line = None;
    let mut last = (1, 1);

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let trimmed = body.trim_start();
        last = (line, body.chars().count() + 1);
        if players.is_none() {
            let Some(rest) = trimmed.strip_prefix("players:") else {
                return Err(syntax(line, indent + 1, "expected 'players:'"));
            };
            let labels: Vec<&str> = rest.split_whitespace().collect();
            if let Some(bad) = labels.iter().find(|l| !valid_label(l)) {
                let col = body.find(bad).unwrap_or(0) + 1;
                return Err(syntax(line, col, format!("invalid player label {bad:?}")));
            }
            players = Some((PlayerSet::new(labels)?, line));
        } else if ranking_line.is_none() {
            let Some(rest) = trimmed.strip_prefix("ranking:") else {
                return Err(syntax(line, indent + 1, "expected 'ranking:'"));
            };
            ranking_line = Some(line);
            let col = indent + "ranking:".len() + 1;
            tokenize(rest, line, col, &mut toks)?;
        } else {
            tokenize(body, line, 1, &mut toks)?;
        }
    }

    let Some((players, _)) = players else {
        return Err(syntax(1, 1, "expected 'players:'"));
    };
    if ranking_line.is_none() {
        return Err(syntax(last.0, last.1, "expected 'ranking:'"));
    }

    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        end: last,
        players: &players,
    };
    let mut classes: Vec<Vec<Coalition>> = Vec::new();
    let mut sink = false;
    loop {
        let mut class = Vec::new();
        loop {
            let (l, c) = parser.here();
            match parser.item()? {
                Item::Coalition(co) => {
                    if sink {
                        return Err(syntax(l, c, "'*' must be the last class"));
                    }
                    class.push(co)
                }
                Item::Sink => {
                    if sink || !class.is_empty() {
                        return Err(syntax(l, c, "'*' must form a class on its own"));
                    }
                    sink = true;
                }
            }
            match parser.peek().map(|t| &t.tok) {
                Some(Tok::Tilde) => {
                    parser.pos += 1;
                    if sink {
                        let (l, c) = parser.here();
                        return Err(syntax(l, c, "'*' must form a class on its own"));
                    }
                }
                _ => break,
            }
        }
        if !sink {
            classes.push(class);
        }
        match parser.peek().map(|t| &t.tok) {
            Some(Tok::Greater) => {
                parser.pos += 1;
                if sink {
                    let (l, c) = parser.here();
                    return Err(syntax(l, c, "'*' must be the last class"));
                }
            }
            None => break,
            Some(_) => {
                let (l, c) = parser.here();
                return Err(syntax(l, c, "expected '~', '>' or end of ranking"));
            }
        }
    }

    if sink {
        let size = 1usize << players.len();
        let mut seen = vec![false; size];
        for c in classes.iter().flatten() {
            seen[c.index()] = true;
        }
        let rest: Vec<Coalition> = (1..size)
            .filter(|&m| !seen[m])
            .map(|m| Coalition(m as u32))
            .collect();
        if rest.is_empty() {
            return Err(ModelError::EmptyClass(classes.len() + 1));
        }
        classes.push(rest);
    }
    PowerRelation::new(players, classes)
}

/// Canonical text form; coalitions inside a class appear in ascending bit
/// pattern order.
pub fn serialize_power_relation(pr: &PowerRelation) -> String {
    let players = pr.players();
    let mut out = String::from("players: ");
    out.push_str(&players.names().join(" "));
    out.push_str("\nranking: ");
    for (k, class) in pr.classes().iter().enumerate() {
        if k > 0 {
            out.push_str(" > ");
        }
        let mut sorted = class.clone();
        sorted.sort_unstable();
        for (t, &c) in sorted.iter().enumerate() {
            if t > 0 {
                out.push_str(" ~ ");
            }
            out.push_str(&players.format_coalition(c));
        }
    }
    out.push('\n');
    out
}
