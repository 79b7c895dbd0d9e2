//! Text form of axiom witnesses.
//!
//! ```text
//! axiom: CA
//! i: i
//! j: j
//! [first]
//! players: i j k
//! ranking: {j} > {i,k} > {j,k} ~ {i} > *
//! [second]
//! players: i j k
//! ranking: {j} > {i} > {j,k} ~ {i,k} > *
//! [datum]
//! map: {} -> {k}
//! map: {k} -> {}
//! ```
//!
//! Datum lines are `map: S -> T`, `refine: A ~ B > C` (one per refined
//! class), `partition: A ~ B > C` and `subset: A ~ B`.

use std::fmt::Write as _;

use crate::model::{parse_power_relation, serialize_power_relation, Coalition, PlayerSet};

use super::{Axiom, AxiomError, AxiomWitness, Datum};

fn format_err(line: usize, msg: impl std::fmt::Display) -> AxiomError {
    AxiomError::Format(format!("line {line}: {msg}"))
}

fn fmt_parts(players: &PlayerSet, parts: &[Vec<Coalition>]) -> String {
    parts
        .iter()
        .map(|p| p.iter().map(|&c| players.format_coalition(c)).collect::<Vec<_>>().join(" ~ "))
        .collect::<Vec<_>>()
        .join(" > ")
}

pub fn serialize_witness(w: &AxiomWitness) -> String {
    let players = w.first.players();
    let mut out = String::new();
    let _ = writeln!(out, "axiom: {}", w.axiom);
    let _ = writeln!(out, "i: {}", players.name(w.i));
    let _ = writeln!(out, "j: {}", players.name(w.j));
    out.push_str("[first]\n");
    out.push_str(&serialize_power_relation(&w.first));
    if let Some(second) = &w.second {
        out.push_str("[second]\n");
        out.push_str(&serialize_power_relation(second));
    }
    if w.datum != Datum::None {
        out.push_str("[datum]\n");
    }
    match &w.datum {
        Datum::None => {}
        Datum::Bijection(pairs) => {
            for &(s, t) in pairs {
                let _ = writeln!(out, "map: {} -> {}", players.format_coalition(s), players.format_coalition(t));
            }
        }
        Datum::Refinements(refs) => {
            for parts in refs {
                let _ = writeln!(out, "refine: {}", fmt_parts(players, parts));
            }
        }
        Datum::Partition(parts) => {
            let _ = writeln!(out, "partition: {}", fmt_parts(players, parts));
        }
        Datum::Subset(sigma) => {
            let items: Vec<String> = sigma.iter().map(|&c| players.format_coalition(c)).collect();
            let _ = writeln!(out, "subset: {}", items.join(" ~ "));
        }
    }
    out
}

fn parse_coalition(players: &PlayerSet, text: &str, line: usize) -> Result<Coalition, AxiomError> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| format_err(line, format!("expected a coalition, found {:?}", text.trim())))?;
    let mut c = Coalition::EMPTY;
    if inner.trim().is_empty() {
        return Ok(c);
    }
    for label in inner.split(',') {
        let p = players.index_of(label.trim()).map_err(|e| format_err(line, e))?;
        if c.contains(p) {
            return Err(format_err(line, format!("player {} repeated", label.trim())));
        }
        c = c.with(p);
    }
    Ok(c)
}

fn parse_list(players: &PlayerSet, text: &str, line: usize) -> Result<Vec<Coalition>, AxiomError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split('~').map(|c| parse_coalition(players, c, line)).collect()
}

fn parse_parts(players: &PlayerSet, text: &str, line: usize) -> Result<Vec<Vec<Coalition>>, AxiomError> {
    text.split('>').map(|p| parse_list(players, p, line)).collect()
}

#[derive(PartialEq, Clone, Copy)]
enum Section {
    Header,
    First,
    Second,
    Datum,
}

pub fn parse_witness(text: &str) -> Result<AxiomWitness, AxiomError> {
    let mut axiom = None;
    let mut labels: (Option<String>, Option<String>) = (None, None);
    let mut first = String::new();
    let mut second: Option<String> = None;
    let mut datum_lines: Vec<(usize, String, String)> = Vec::new();
    let mut section = Section::Header;

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        match trimmed {
            "[first]" => {
                section = Section::First;
                continue;
            }
            "[second]" => {
                section = Section::Second;
                second.get_or_insert_with(String::new);
                continue;
            }
            "[datum]" => {
                section = Section::Datum;
                continue;
            }
            _ => {}
        }
        match section {
            Section::First => {
                first.push_str(line);
                first.push('\n');
            }
            Section::Second => {
                let s = second.as_mut().unwrap();
                s.push_str(line);
                s.push('\n');
            }
            Section::Header | Section::Datum => {
                let (key, value) = trimmed
                    .split_once(':')
                    .ok_or_else(|| format_err(line_no, "expected 'key: value'"))?;
                let (key, value) = (key.trim(), value.trim());
                if section == Section::Datum {
                    datum_lines.push((line_no, key.to_string(), value.to_string()));
                    continue;
                }
                match key {
                    "axiom" => axiom = Some(value.parse::<Axiom>().map_err(|e| format_err(line_no, e))?),
                    "i" => labels.0 = Some(value.to_string()),
                    "j" => labels.1 = Some(value.to_string()),
                    other => return Err(format_err(line_no, format!("unknown header {other:?}"))),
                }
            }
        }
    }

    let axiom = axiom.ok_or_else(|| AxiomError::Format("missing 'axiom:' header".into()))?;
    let first = parse_power_relation(&first)?;
    let second = second.map(|s| parse_power_relation(&s)).transpose()?;
    let players = first.players().clone();
    if let Some(s) = &second {
        if s.players() != &players {
            return Err(AxiomError::Format("[second] uses a different player list".into()));
        }
    }
    let i = players
        .index_of(labels.0.as_deref().ok_or_else(|| AxiomError::Format("missing 'i:' header".into()))?)?;
    let j = players
        .index_of(labels.1.as_deref().ok_or_else(|| AxiomError::Format("missing 'j:' header".into()))?)?;

    let mut datum = Datum::None;
    for (line_no, key, value) in datum_lines {
        match (key.as_str(), &mut datum) {
            ("map", Datum::None | Datum::Bijection(_)) => {
                let (s, t) = value
                    .split_once("->")
                    .ok_or_else(|| format_err(line_no, "expected 'S -> T'"))?;
                let pair = (parse_coalition(&players, s, line_no)?, parse_coalition(&players, t, line_no)?);
                match &mut datum {
                    Datum::Bijection(pairs) => pairs.push(pair),
                    _ => datum = Datum::Bijection(vec![pair]),
                }
            }
            ("refine", Datum::None | Datum::Refinements(_)) => {
                let parts = parse_parts(&players, &value, line_no)?;
                match &mut datum {
                    Datum::Refinements(refs) => refs.push(parts),
                    _ => datum = Datum::Refinements(vec![parts]),
                }
            }
            ("partition", Datum::None) => datum = Datum::Partition(parse_parts(&players, &value, line_no)?),
            ("subset", Datum::None) => datum = Datum::Subset(parse_list(&players, &value, line_no)?),
            ("map" | "refine" | "partition" | "subset", _) => {
                return Err(format_err(line_no, "conflicting datum lines"));
            }
            (other, _) => return Err(format_err(line_no, format!("unknown datum key {other:?}"))),
        }
    }

    Ok(AxiomWitness {
        axiom,
        i,
        j,
        first,
        second,
        datum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::fixtures;

    #[test]
    fn fixtures_round_trip() {
        for f in fixtures() {
            let text = serialize_witness(&f.witness);
            let back = parse_witness(&text).unwrap();
            assert!(back.first.same_order(&f.witness.first), "{}", f.name);
            match (&back.second, &f.witness.second) {
                (Some(a), Some(b)) => assert!(a.same_order(b), "{}", f.name),
                (None, None) => {}
                _ => panic!("{}", f.name),
            }
            assert_eq!((back.axiom, back.i, back.j, &back.datum), (f.witness.axiom, f.witness.i, f.witness.j, &f.witness.datum));
        }
    }

    #[test]
    fn empty_subset_round_trips() {
        let first = parse_power_relation("players: a b c\nranking: {a} > *").unwrap();
        let w = AxiomWitness {
            axiom: Axiom::CI,
            i: 1,
            j: 2,
            first,
            second: None,
            datum: Datum::Subset(vec![]),
        };
        let text = serialize_witness(&w);
        assert!(text.contains("subset: \n") || text.contains("subset:\n"));
        assert_eq!(parse_witness(&text).unwrap(), w);
    }

    #[test]
    fn unknown_header_is_rejected() {
        assert!(matches!(parse_witness("axiom: CA\nk: x\n"), Err(AxiomError::Format(_))));
    }
}
