//! Text formats for two-valued tables (`2vg 1`) and group Cayley tables (`grp 1`).
//!
//! ```text
//! 2vg 1
//! order 2
//! names e x          # optional
//! 0 0 : 0 0
//! 0 1 : 1 1
//! 1 0 : 1 1
//! 1 1 : 0 0
//! ```
//!
//! Data lines may come in any order on input. Output is ASCII, LF-separated,
//! row-major, and has no trailing newline.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::group::{GroupError, GroupTable};
use crate::table::{is_valid_name, Element, Pair, Table};

/// Largest order either parser accepts.
pub const MAX_PARSE_ORDER: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEof {
        expected: &'static str,
    },
    Expected {
        expected: &'static str,
        found: String,
    },
    BadNumber(String),
    UnsupportedVersion(String),
    OrderOutOfRange(usize),
    NameCount {
        expected: usize,
        got: usize,
    },
    InvalidName(String),
    DuplicateName(String),
    IndexOutOfRange {
        value: usize,
        order: usize,
    },
    Unnormalized {
        k: usize,
        l: usize,
    },
    DuplicateCell {
        i: usize,
        j: usize,
        first_line: usize,
    },
    MissingCell {
        i: usize,
        j: usize,
    },
    IdentityViolation {
        x: usize,
    },
    NotAGroup(GroupError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            UnexpectedEof { expected } => write!(f, "unexpected end of input, expected {expected}"),
            Expected { expected, found } => write!(f, "expected {expected}, found `{found}`"),
            BadNumber(s) => write!(f, "invalid number `{s}`"),
            UnsupportedVersion(v) => write!(f, "unsupported format version `{v}`"),
            OrderOutOfRange(n) => {
                write!(f, "order {n} is out of range (1..={MAX_PARSE_ORDER})")
            }
            NameCount { expected, got } => write!(f, "expected {expected} names, got {got}"),
            InvalidName(s) => write!(f, "invalid name `{s}`"),
            DuplicateName(s) => write!(f, "duplicate name `{s}`"),
            IndexOutOfRange { value, order } => {
                write!(f, "index {value} is out of range for order {order}")
            }
            Unnormalized { k, l } => write!(
                f,
                "pair `{k} {l}` must be written with the smaller index first"
            ),
            DuplicateCell { i, j, first_line } => {
                write!(f, "cell ({i}, {j}) already given on line {first_line}")
            }
            MissingCell { i, j } => write!(f, "cell ({i}, {j}) is missing"),
            IdentityViolation { x } => {
                write!(
                    f,
                    "identity law violated: {x}*0 and 0*{x} must both be `{x} {x}`"
                )
            }
            NotAGroup(e) => write!(f, "not a group: {e}"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// A non-blank line with comments removed, split into tokens.
struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

/// Tokens are runs of non-whitespace characters other than `:`; each `:` is
/// a token by itself.
fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start: Option<(usize, usize)> = None;
        let mut column = 0;
        for (byte, ch) in body.char_indices() {
            column += 1;
            let sep = ch.is_whitespace() || ch == ':';
            if sep {
                if let Some((b, c)) = start.take() {
                    tokens.push(Token {
                        text: &body[b..byte],
                        column: c,
                    });
                }
                if ch == ':' {
                    tokens.push(Token {
                        text: &body[byte..byte + 1],
                        column,
                    });
                }
            } else if start.is_none() {
                start = Some((byte, column));
            }
        }
        if let Some((b, c)) = start {
            tokens.push(Token {
                text: &body[b..],
                column: c,
            });
        }
        if !tokens.is_empty() {
            lines.push(Line {
                number: idx + 1,
                tokens,
                end_column: column + 1,
            });
        }
    }
    lines
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let last_line = text.split('\n').count();
        Cursor {
            lines: tokenize(text),
            pos: 0,
            last_line,
        }
    }

    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    fn next_line(&mut self, expected: &'static str) -> Result<&Line<'a>, ParseError> {
        match self.lines.get(self.pos) {
            Some(_) => {
                self.pos += 1;
                Ok(&self.lines[self.pos - 1])
            }
            None => Err(ParseError {
                line: self.last_line,
                column: 1,
                kind: ParseErrorKind::UnexpectedEof { expected },
            }),
        }
    }
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn expect_keyword(line: &Line<'_>, idx: usize, keyword: &'static str) -> Result<(), ParseError> {
    match line.tokens.get(idx) {
        Some(t) if t.text == keyword => Ok(()),
        Some(t) => Err(err(
            line.number,
            t.column,
            ParseErrorKind::Expected {
                expected: keyword,
                found: t.text.to_string(),
            },
        )),
        None => Err(err(
            line.number,
            line.end_column,
            ParseErrorKind::Expected {
                expected: keyword,
                found: String::new(),
            },
        )),
    }
}

fn number(line: &Line<'_>, idx: usize, what: &'static str) -> Result<usize, ParseError> {
    let Some(t) = line.tokens.get(idx) else {
        return Err(err(
            line.number,
            line.end_column,
            ParseErrorKind::Expected {
                expected: what,
                found: String::new(),
            },
        ));
    };
    if !t.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(
            line.number,
            t.column,
            ParseErrorKind::Expected {
                expected: what,
                found: t.text.to_string(),
            },
        ));
    }
    t.text.parse::<usize>().map_err(|_| {
        err(
            line.number,
            t.column,
            ParseErrorKind::BadNumber(t.text.to_string()),
        )
    })
}

fn no_trailing(line: &Line<'_>, len: usize) -> Result<(), ParseError> {
    match line.tokens.get(len) {
        Some(t) => Err(err(
            line.number,
            t.column,
            ParseErrorKind::Expected {
                expected: "end of line",
                found: t.text.to_string(),
            },
        )),
        None => Ok(()),
    }
}

struct Header {
    order: usize,
    names: Option<Vec<String>>,
}

fn parse_header(cur: &mut Cursor<'_>, magic: &'static str) -> Result<Header, ParseError> {
    let line = cur.next_line(magic)?;
    expect_keyword(line, 0, magic)?;
    let version = line.tokens.get(1).ok_or_else(|| {
        err(
            line.number,
            line.end_column,
            ParseErrorKind::Expected {
                expected: "format version",
                found: String::new(),
            },
        )
    })?;
    if version.text != "1" {
        return Err(err(
            line.number,
            version.column,
            ParseErrorKind::UnsupportedVersion(version.text.to_string()),
        ));
    }
    no_trailing(line, 2)?;

    let line = cur.next_line("`order <n>`")?;
    expect_keyword(line, 0, "order")?;
    let order = number(line, 1, "order")?;
    if order == 0 || order > MAX_PARSE_ORDER {
        return Err(err(
            line.number,
            line.tokens[1].column,
            ParseErrorKind::OrderOutOfRange(order),
        ));
    }
    no_trailing(line, 2)?;

    let mut names = None;
    if let Some(line) = cur.peek() {
        if line.tokens[0].text == "names" {
            let line = cur.next_line("names")?;
            let given = &line.tokens[1..];
            if let Some(t) = given.iter().find(|t| t.text == ":") {
                return Err(err(
                    line.number,
                    t.column,
                    ParseErrorKind::InvalidName(":".into()),
                ));
            }
            if given.len() != order {
                let column = given.get(order).map_or(line.end_column, |t| t.column);
                return Err(err(
                    line.number,
                    column,
                    ParseErrorKind::NameCount {
                        expected: order,
                        got: given.len(),
                    },
                ));
            }
            let mut seen = HashMap::new();
            for t in given {
                if !is_valid_name(t.text) {
                    return Err(err(
                        line.number,
                        t.column,
                        ParseErrorKind::InvalidName(t.text.into()),
                    ));
                }
                if seen.insert(t.text, ()).is_some() {
                    return Err(err(
                        line.number,
                        t.column,
                        ParseErrorKind::DuplicateName(t.text.into()),
                    ));
                }
            }
            names = Some(given.iter().map(|t| t.text.to_string()).collect());
        }
    }
    Ok(Header { order, names })
}

/// Cell values keyed by `(i, j)`, with the line each came from.
type CellLines = HashMap<(usize, usize), (Vec<usize>, usize)>;

/// Reads `<i> <j> : <v1> .. <vk>` lines until input ends.
fn parse_cells(cur: &mut Cursor<'_>, order: usize, arity: usize) -> Result<CellLines, ParseError> {
    let mut cells = CellLines::new();
    while cur.peek().is_some() {
        let line = cur.next_line("data line")?;
        let mut idx = [0usize; 2];
        for (slot, value) in idx.iter_mut().enumerate() {
            *value = number(line, slot, "cell index")?;
            if *value >= order {
                return Err(err(
                    line.number,
                    line.tokens[slot].column,
                    ParseErrorKind::IndexOutOfRange {
                        value: *value,
                        order,
                    },
                ));
            }
        }
        expect_keyword(line, 2, ":")?;
        let mut values = Vec::with_capacity(arity);
        for slot in 0..arity {
            let v = number(line, 3 + slot, "element index")?;
            if v >= order {
                return Err(err(
                    line.number,
                    line.tokens[3 + slot].column,
                    ParseErrorKind::IndexOutOfRange { value: v, order },
                ));
            }
            values.push(v);
        }
        no_trailing(line, 3 + arity)?;
        if arity == 2 && values[0] > values[1] {
            return Err(err(
                line.number,
                line.tokens[3].column,
                ParseErrorKind::Unnormalized {
                    k: values[0],
                    l: values[1],
                },
            ));
        }
        let key = (idx[0], idx[1]);
        if let Some((_, first_line)) = cells.get(&key) {
            return Err(err(
                line.number,
                line.tokens[0].column,
                ParseErrorKind::DuplicateCell {
                    i: key.0,
                    j: key.1,
                    first_line: *first_line,
                },
            ));
        }
        cells.insert(key, (values, line.number));
    }
    if cells.len() != order * order {
        let (i, j) = (0..order)
            .flat_map(|i| (0..order).map(move |j| (i, j)))
            .find(|k| !cells.contains_key(k))
            .expect("fewer cells than n^2 means one is missing");
        return Err(err(cur.last_line, 1, ParseErrorKind::MissingCell { i, j }));
    }
    Ok(cells)
}

/// Parses a `2vg 1` file.
///
/// Only structural validity is checked here, together with the identity rows
/// `x*0 = 0*x = [x, x]`. The remaining axioms are left to [`crate::axioms`].
pub fn parse_table(text: &str) -> Result<Table, ParseError> {
    let mut cur = Cursor::new(text);
    let Header { order, names } = parse_header(&mut cur, "2vg")?;
    let cells = parse_cells(&mut cur, order, 2)?;
    let mut pairs = vec![Pair::doubled(Element::IDENTITY); order * order];
    for (&(i, j), (v, _)) in &cells {
        pairs[i * order + j] = Pair::new(Element::new(v[0]), Element::new(v[1]));
    }
    for x in 0..order {
        for key in [(x, 0), (0, x)] {
            let (v, line) = &cells[&key];
            if v[0] != x || v[1] != x {
                return Err(err(*line, 1, ParseErrorKind::IdentityViolation { x }));
            }
        }
    }
    Ok(Table::new(order, pairs, names).expect("parser validated every cell and name"))
}

pub fn serialize_table(t: &Table) -> String {
    let n = t.order();
    let mut out = String::with_capacity(16 + n * n * 12);
    out.push_str("2vg 1\n");
    let _ = write!(out, "order {n}");
    if let Some(names) = t.names() {
        out.push_str("\nnames ");
        out.push_str(&names.join(" "));
    }
    for x in t.elements() {
        for y in t.elements() {
            let p = t.cell(x, y);
            let _ = write!(out, "\n{x} {y} : {} {}", p.lo(), p.hi());
        }
    }
    out
}

/// Parses and validates a `grp 1` Cayley table.
pub fn parse_group(text: &str) -> Result<GroupTable, ParseError> {
    let mut cur = Cursor::new(text);
    let Header { order, names } = parse_header(&mut cur, "grp")?;
    let cells = parse_cells(&mut cur, order, 1)?;
    let mut elems = vec![Element::IDENTITY; order * order];
    for (&(i, j), (v, _)) in &cells {
        elems[i * order + j] = Element::new(v[0]);
    }
    GroupTable::new(order, elems, names).map_err(|e| {
        let line = match &e {
            GroupError::Identity { x } => cells[&(0, x.index())].1,
            GroupError::NotAssociative { a, b, .. } => cells[&(a.index(), b.index())].1,
            GroupError::NotInvertible { a } => cells[&(a.index(), 0)].1,
            GroupError::Table(_) => 1,
        };
        err(line, 1, ParseErrorKind::NotAGroup(e))
    })
}

pub fn serialize_group(g: &GroupTable) -> String {
    let n = g.order();
    let mut out = String::with_capacity(16 + n * n * 10);
    out.push_str("grp 1\n");
    let _ = write!(out, "order {n}");
    if let Some(names) = g.names() {
        out.push_str("\nnames ");
        out.push_str(&names.join(" "));
    }
    for a in g.elements() {
        for b in g.elements() {
            let _ = write!(out, "\n{a} {b} : {}", g.mul(a, b));
        }
    }
    out
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_table(self))
    }
}
