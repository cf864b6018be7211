//! Reader and writer for the PGSolver game format.
//!
//! A file is an optional header `parity <max-id>;` followed by one statement
//! per state:
//!
//! ```text
//! <id> <priority> <owner> <succ>,<succ>,... ["<name>"];
//! ```
//!
//! Tokens may be separated by arbitrary whitespace, including newlines.
//! State ids must form the consecutive range `0..=max-id` (in any order);
//! owners are `0` or `1`; every successor must name a declared state.
//! Duplicate transitions are merged. Priorities are non-negative; because the
//! internal model reserves color `0`, a file that uses priority `0` anywhere
//! is normalized by adding 2 to every priority, and the applied shift is
//! reported alongside the game.
//!
//! A state with an empty successor list is syntactically accepted but makes
//! the game non-total, which is an error distinct from a parse error; see
//! [`ParseOptions::add_self_loops`] for the opt-in repair.

use crate::error::{Error, Result};
use crate::game::{ParityGame, Player};

/// Result of parsing: the game plus the priority normalization that was applied.
#[derive(Debug)]
pub struct ParsedGame {
    pub game: ParityGame,
    /// Amount added to every priority in the file (0 or 2).
    pub color_shift: u32,
}

/// Knobs for [`parse_pgsolver_with`].
#[derive(Default, Clone, Copy)]
pub struct ParseOptions {
    /// Repair states that have no successors by adding a self-loop instead of
    /// rejecting the game.
    pub add_self_loops: bool,
}

/// Parses a game in PGSolver format, rejecting non-total games.
pub fn parse_pgsolver(text: &str) -> Result<ParsedGame> {
    parse_pgsolver_with(text, ParseOptions::default())
}

/// Parses a game in PGSolver format with explicit options.
pub fn parse_pgsolver_with(text: &str, options: ParseOptions) -> Result<ParsedGame> {
    let tokens = lex(text)?;
    let mut cursor = 0usize;

    // Optional "parity <max-id>;" header. The id bound it declares is not
    // enforced; the statements themselves are authoritative.
    if let Some((Tok::Word(w), _, _)) = tokens.get(cursor) {
        if w == "parity" {
            cursor += 1;
            let _ = expect_num(&tokens, &mut cursor, "max state id")?;
            expect_semi(&tokens, &mut cursor)?;
        } else {
            let (_, line, col) = tokens[cursor];
            return Err(syntax(line, col, format!("unexpected word '{w}'")));
        }
    }

    struct Stmt {
        id: usize,
        priority: u64,
        owner: Player,
        succs: Vec<usize>,
        name: Option<String>,
    }
    let mut stmts: Vec<Stmt> = Vec::new();

    while cursor < tokens.len() {
        let id = expect_num(&tokens, &mut cursor, "state id")? as usize;
        let priority = expect_num(&tokens, &mut cursor, "priority")?;
        let (owner_raw, line, col) = match tokens.get(cursor) {
            Some(&(Tok::Num(v), line, col)) => {
                cursor += 1;
                (v, line, col)
            }
            other => return Err(unexpected(other, tokens_end(text), "owner")),
        };
        let owner = match owner_raw {
            0 => Player::Even,
            1 => Player::Odd,
            other => return Err(syntax(line, col, format!("owner must be 0 or 1, got {other}"))),
        };

        let mut succs = Vec::new();
        if let Some((Tok::Num(_), _, _)) = tokens.get(cursor) {
            loop {
                succs.push(expect_num(&tokens, &mut cursor, "successor id")? as usize);
                match tokens.get(cursor) {
                    Some((Tok::Comma, _, _)) => cursor += 1,
                    _ => break,
                }
            }
        }

        let name = match tokens.get(cursor) {
            Some((Tok::Quoted(s), _, _)) => {
                cursor += 1;
                Some(s.clone())
            }
            _ => None,
        };
        expect_semi(&tokens, &mut cursor)?;
        stmts.push(Stmt { id, priority, owner, succs, name });
    }

    if stmts.is_empty() {
        return Err(syntax(1, 1, "no state definitions".into()));
    }

    // Ids must cover 0..n without duplicates.
    let n = stmts.len();
    let mut seen = std::collections::HashSet::new();
    for stmt in &stmts {
        if !seen.insert(stmt.id) {
            return Err(Error::DuplicateState { id: stmt.id });
        }
    }
    if stmts.iter().any(|s| s.id >= n) {
        // n distinct ids with one out of range leave a hole below n.
        let missing = (0..n).find(|i| !seen.contains(i)).unwrap();
        return Err(Error::IdGap { missing });
    }
    let mut by_id: Vec<Option<Stmt>> = Vec::new();
    by_id.resize_with(n, || None);
    for stmt in stmts {
        let id = stmt.id;
        by_id[id] = Some(stmt);
    }
    let stmts: Vec<Stmt> = by_id.into_iter().map(Option::unwrap).collect();

    for stmt in &stmts {
        for &t in &stmt.succs {
            if t >= n {
                return Err(Error::DanglingSuccessor { state: stmt.id, succ: t });
            }
        }
    }

    // Color 0 is reserved internally; lift every priority out of its way.
    let color_shift: u32 = if stmts.iter().any(|s| s.priority == 0) { 2 } else { 0 };

    let mut owners = Vec::with_capacity(n);
    let mut colors = Vec::with_capacity(n);
    let mut succs = Vec::with_capacity(n);
    let any_name = stmts.iter().any(|s| s.name.is_some());
    let mut names = if any_name { Some(Vec::with_capacity(n)) } else { None };
    for (id, stmt) in stmts.into_iter().enumerate() {
        let shifted = stmt.priority + color_shift as u64;
        let color = u32::try_from(shifted)
            .map_err(|_| Error::InvalidArgument(format!("priority {} is too large", stmt.priority)))?;
        owners.push(stmt.owner);
        colors.push(color);
        let mut list = stmt.succs;
        if list.is_empty() && options.add_self_loops {
            list.push(id);
        }
        succs.push(list);
        if let Some(ns) = &mut names {
            ns.push(stmt.name);
        }
    }

    let game = ParityGame::new(owners, colors, succs, names)?;
    Ok(ParsedGame { game, color_shift })
}

/// Writes the canonical PGSolver form: header, states ascending, successors
/// ascending, one statement per line. Parsing the output reproduces the game.
pub fn serialize_pgsolver(game: &ParityGame) -> String {
    let mut out = String::new();
    out.push_str(&format!("parity {};\n", game.state_count() - 1));
    for s in game.states() {
        out.push_str(&format!("{} {} {} ", s, game.color(s), game.owner(s)));
        let succs: Vec<String> = game.successors(s).iter().map(|t| t.to_string()).collect();
        out.push_str(&succs.join(","));
        if let Some(name) = game.name(s) {
            out.push_str(&format!(" \"{name}\""));
        }
        out.push_str(";\n");
    }
    out
}

#[derive(Debug, PartialEq)]
enum Tok {
    Num(u64),
    Word(String),
    Comma,
    Semi,
    Quoted(String),
}

type Spanned = (Tok, usize, usize);

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match c {
            c if c.is_whitespace() => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            ',' => {
                chars.next();
                bump(c, &mut line, &mut col);
                tokens.push((Tok::Comma, tline, tcol));
            }
            ';' => {
                chars.next();
                bump(c, &mut line, &mut col);
                tokens.push((Tok::Semi, tline, tcol));
            }
            '"' => {
                chars.next();
                bump(c, &mut line, &mut col);
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => {
                            bump('"', &mut line, &mut col);
                            break;
                        }
                        Some(c) => {
                            bump(c, &mut line, &mut col);
                            s.push(c);
                        }
                        None => return Err(syntax(tline, tcol, "unterminated quoted name".into())),
                    }
                }
                tokens.push((Tok::Quoted(s), tline, tcol));
            }
            c if c.is_ascii_digit() => {
                let mut value: u64 = 0;
                while let Some(&c) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    chars.next();
                    bump(c, &mut line, &mut col);
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(c as u64 - '0' as u64))
                        .ok_or_else(|| syntax(tline, tcol, "number too large".into()))?;
                }
                tokens.push((Tok::Num(value), tline, tcol));
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if !c.is_ascii_alphanumeric() && c != '_' {
                        break;
                    }
                    chars.next();
                    bump(c, &mut line, &mut col);
                    word.push(c);
                }
                tokens.push((Tok::Word(word), tline, tcol));
            }
            other => return Err(syntax(line, col, format!("unexpected character '{other}'"))),
        }
    }
    Ok(tokens)
}

fn syntax(line: usize, col: usize, msg: String) -> Error {
    Error::Parse { line, col, msg }
}

fn tokens_end(text: &str) -> (usize, usize) {
    let line = text.lines().count().max(1);
    let col = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    (line, col)
}

fn unexpected(found: Option<&Spanned>, end: (usize, usize), wanted: &str) -> Error {
    match found {
        Some((tok, line, col)) => syntax(*line, *col, format!("expected {wanted}, found {tok:?}")),
        None => syntax(end.0, end.1, format!("expected {wanted}, found end of input")),
    }
}

fn expect_num(tokens: &[Spanned], cursor: &mut usize, wanted: &str) -> Result<u64> {
    match tokens.get(*cursor) {
        Some(&(Tok::Num(v), _, _)) => {
            *cursor += 1;
            Ok(v)
        }
        other => Err(unexpected(other, (0, 0), wanted)),
    }
}

fn expect_semi(tokens: &[Spanned], cursor: &mut usize) -> Result<()> {
    match tokens.get(*cursor) {
        Some((Tok::Semi, _, _)) => {
            *cursor += 1;
            Ok(())
        }
        other => Err(unexpected(other, (0, 0), "';'")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Five states; two terminal self-loops reachable over a central 2-cycle.
    pub const FIVE_STATE: &str = "parity 4;\n\
        0 2 1 1,2;\n\
        1 1 0 0,4;\n\
        2 5 0 3;\n\
        3 4 0 3;\n\
        4 3 0 4;\n";

    #[test]
    fn parses_plain_game() {
        let parsed = parse_pgsolver(FIVE_STATE).unwrap();
        let g = &parsed.game;
        assert_eq!(g.state_count(), 5);
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.max_color(), 5);
        assert_eq!(parsed.color_shift, 0);
        assert_eq!(g.owner(0), Player::Odd);
        assert_eq!(g.owner(1), Player::Even);
        assert_eq!(g.successors(0), &[1, 2]);
        assert_eq!(g.successors(3), &[3]);
        assert_eq!(g.predecessors(3), &[2, 3]);
    }

    #[test]
    fn header_is_optional_and_whitespace_is_free() {
        let text = "0   2 1\n 1 , 2;\n1 1 0 0,4;2 5 0 3;\n3 4 0 3;\n4 3 0 4 \"sink\";";
        let parsed = parse_pgsolver(text).unwrap();
        assert_eq!(parsed.game.state_count(), 5);
        assert_eq!(parsed.game.name(4), Some("sink"));
        assert_eq!(parsed.game.name(0), None);
    }

    #[test]
    fn zero_priority_shifts_all_colors() {
        let parsed = parse_pgsolver("0 0 0 0;").unwrap();
        assert_eq!(parsed.color_shift, 2);
        assert_eq!(parsed.game.color(0), 2);
        assert_eq!(parsed.game.max_color(), 2);

        let parsed = parse_pgsolver("parity 1;\n0 0 0 1;\n1 3 1 0;").unwrap();
        assert_eq!(parsed.color_shift, 2);
        assert_eq!(parsed.game.color(0), 2);
        assert_eq!(parsed.game.color(1), 5);
    }

    #[test]
    fn statements_may_come_in_any_order() {
        let parsed = parse_pgsolver("1 1 0 0;\n0 2 1 0,1;").unwrap();
        assert_eq!(parsed.game.color(0), 2);
        assert_eq!(parsed.game.color(1), 1);
    }

    #[test]
    fn duplicate_edges_are_merged() {
        let parsed = parse_pgsolver("0 1 0 0,0,0;").unwrap();
        assert_eq!(parsed.game.edge_count(), 1);
    }

    #[test]
    fn missing_semicolon_is_a_syntax_error() {
        let err = parse_pgsolver("0 2 1 0").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err:?}");
    }

    #[test]
    fn dangling_successor_is_reported() {
        let err = parse_pgsolver("0 2 1 0,7;").unwrap_err();
        assert_eq!(err, Error::DanglingSuccessor { state: 0, succ: 7 });
    }

    #[test]
    fn empty_successor_list_is_non_total() {
        let err = parse_pgsolver("0 2 1 ;").unwrap_err();
        assert_eq!(err, Error::NonTotal { state: 0 });
        // ... unless the caller opts into the self-loop repair.
        let parsed =
            parse_pgsolver_with("0 2 1 ;", ParseOptions { add_self_loops: true }).unwrap();
        assert_eq!(parsed.game.successors(0), &[0]);
    }

    #[test]
    fn duplicate_state_is_rejected() {
        let err = parse_pgsolver("0 2 1 0;\n0 3 0 0;").unwrap_err();
        assert_eq!(err, Error::DuplicateState { id: 0 });
    }

    #[test]
    fn id_gap_is_rejected() {
        let err = parse_pgsolver("0 2 1 0;\n2 3 0 0;").unwrap_err();
        assert_eq!(err, Error::IdGap { missing: 1 });
    }

    #[test]
    fn bad_owner_is_rejected() {
        let err = parse_pgsolver("0 2 3 0;").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err:?}");
    }

    #[test]
    fn serializes_canonical_form() {
        let game = ParityGame::new(vec![Player::Even], vec![2], vec![vec![0]], None).unwrap();
        assert_eq!(serialize_pgsolver(&game), "parity 0;\n0 2 0 0;\n");
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        let parsed = parse_pgsolver(FIVE_STATE).unwrap();
        let text = serialize_pgsolver(&parsed.game);
        assert_eq!(text, FIVE_STATE);
        let reparsed = parse_pgsolver(&text).unwrap();
        assert!(reparsed.game == parsed.game);
    }

    #[test]
    fn round_trip_keeps_names() {
        let text = "parity 1;\n0 4 1 0,1 \"left\";\n1 3 0 0;\n";
        let parsed = parse_pgsolver(text).unwrap();
        assert_eq!(serialize_pgsolver(&parsed.game), text);
    }
}
