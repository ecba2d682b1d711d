//! The line-oriented system and odot formats, and TSV table output.
//!
//! ```text
//! # a three-cycle
//! system c3
//! elements a b c
//! base a
//! map s = b c a
//! ```

use std::fmt::Write as _;

use crate::biadditive::OdotTable;
use crate::error::Error;
use crate::model::{Carrier, CountingSystem, EndoMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: {error}")]
    Invalid { line: usize, col: usize, error: Error },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Invalid { line, .. } => *line,
        }
    }

    /// The validation error, for documents that are well-formed but describe
    /// an invalid system.
    pub fn validation(&self) -> Option<&Error> {
        match self {
            ParseError::Invalid { error, .. } => Some(error),
            ParseError::Syntax { .. } => None,
        }
    }
}

/// 1-based position of a token in the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token<'a> {
    text: &'a str,
    span: Span,
}

/// Whitespace-separated tokens of each non-empty line, comments removed.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (pos, c)) in body.char_indices().enumerate() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some((pos, col)),
                (true, Some((p, k))) => {
                    tokens.push(Token {
                        text: &body[p..pos],
                        span: Span { line: i + 1, col: k + 1 },
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((p, k)) = start {
            tokens.push(Token {
                text: &body[p..],
                span: Span { line: i + 1, col: k + 1 },
            });
        }
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn syntax(span: Span, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line: span.line,
        col: span.col,
        msg: msg.into(),
    }
}

fn invalid(span: Span, error: Error) -> ParseError {
    ParseError::Invalid {
        line: span.line,
        col: span.col,
        error,
    }
}

/// A parsed system together with where each declaration came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemDocument {
    pub name: String,
    pub system: CountingSystem,
    pub name_span: Span,
    pub elements_span: Span,
    pub base_span: Span,
    pub map_spans: Vec<Span>,
}

struct MapDecl<'a> {
    keyword: Span,
    label: Token<'a>,
    images: Vec<Token<'a>>,
}

pub fn parse_system(text: &str) -> Result<SystemDocument, ParseError> {
    let mut name: Option<Token> = None;
    let mut elements: Option<(Span, Vec<Token>)> = None;
    let mut base: Option<Token> = None;
    let mut maps: Vec<MapDecl> = Vec::new();
    let mut last_line = 0;

    for (line, tokens) in lines(text) {
        last_line = line;
        let head = &tokens[0];
        let args = &tokens[1..];
        let once = |seen: bool| {
            if seen {
                Err(syntax(head.span, format!("duplicate `{}` declaration", head.text)))
            } else {
                Ok(())
            }
        };
        match head.text {
            "system" => {
                once(name.is_some())?;
                match args {
                    [n] => name = Some(n.clone()),
                    [] => return Err(syntax(head.span, "expected `system <name>`")),
                    [_, extra, ..] => return Err(syntax(extra.span, "unexpected token after system name")),
                }
            }
            "elements" => {
                once(elements.is_some())?;
                if args.is_empty() {
                    return Err(syntax(head.span, "`elements` needs at least one label"));
                }
                elements = Some((head.span, args.to_vec()));
            }
            "base" => {
                once(base.is_some())?;
                match args {
                    [b] => base = Some(b.clone()),
                    [] => return Err(syntax(head.span, "expected `base <label>`")),
                    [_, extra, ..] => return Err(syntax(extra.span, "unexpected token after base label")),
                }
            }
            "map" => match args {
                [label, eq, images @ ..] if eq.text == "=" => maps.push(MapDecl {
                    keyword: head.span,
                    label: label.clone(),
                    images: images.to_vec(),
                }),
                [_, other, ..] => return Err(syntax(other.span, "expected `=` after map label")),
                _ => return Err(syntax(head.span, "expected `map <label> = <images>`")),
            },
            other => return Err(syntax(head.span, format!("unknown declaration `{other}`"))),
        }
    }

    let end = Span {
        line: last_line + 1,
        col: 1,
    };
    let name = name.ok_or_else(|| syntax(end, "missing `system` declaration"))?;
    let (elements_span, element_tokens) =
        elements.ok_or_else(|| syntax(end, "missing `elements` declaration"))?;
    let base = base.ok_or_else(|| syntax(end, "missing `base` declaration"))?;
    if maps.is_empty() {
        return Err(syntax(end, "missing `map` declaration"));
    }

    let carrier = Carrier::new(element_tokens.iter().map(|t| t.text))
        .map_err(|e| invalid(locate(&element_tokens, &e).unwrap_or(elements_span), e))?;
    let resolve = |t: &Token| {
        carrier
            .index_of(t.text)
            .ok_or_else(|| invalid(t.span, Error::UnknownLabel(t.text.to_string())))
    };
    let base_index = resolve(&base)?;

    let n = carrier.len();
    let mut index_set: Vec<String> = Vec::with_capacity(maps.len());
    let mut tables = Vec::with_capacity(maps.len());
    for decl in &maps {
        let label = decl.label.text.to_string();
        crate::model::check_label(&label).map_err(|e| invalid(decl.label.span, e))?;
        if index_set.contains(&label) {
            return Err(invalid(decl.label.span, Error::DuplicateLabel(label)));
        }
        if decl.images.len() != n {
            return Err(invalid(
                decl.keyword,
                Error::ArityMismatch {
                    map: label,
                    expected: n,
                    got: decl.images.len(),
                },
            ));
        }
        let table = decl.images.iter().map(resolve).collect::<Result<Vec<_>, _>>()?;
        tables.push(EndoMap::new(table).map_err(|e| invalid(decl.keyword, e))?);
        index_set.push(label);
    }

    let map_spans: Vec<Span> = maps.iter().map(|d| d.keyword).collect();
    let system = CountingSystem::new(carrier, base_index, index_set, tables).map_err(|e| {
        let span = match &e {
            // reported at the later of the two declarations
            Error::NonCommuting { t, .. } => maps
                .iter()
                .find(|d| d.label.text == t)
                .map_or(end, |d| d.keyword),
            _ => maps[0].keyword,
        };
        invalid(span, e)
    })?;

    Ok(SystemDocument {
        name: name.text.to_string(),
        system,
        name_span: name.span,
        elements_span,
        base_span: base.span,
        map_spans,
    })
}

/// The token a label error refers to, for errors that name one.
fn locate(tokens: &[Token], e: &Error) -> Option<Span> {
    let label = match e {
        Error::DuplicateLabel(l) => {
            // point at the second occurrence
            return tokens
                .iter()
                .filter(|t| t.text == l)
                .nth(1)
                .map(|t| t.span);
        }
        Error::InvalidLabel(l) => l,
        _ => return None,
    };
    tokens.iter().find(|t| t.text == label).map(|t| t.span)
}

/// Render a system in the format read by [`parse_system`].
pub fn emit_system(name: &str, sys: &CountingSystem) -> String {
    let mut out = String::new();
    writeln!(out, "system {name}").unwrap();
    writeln!(out, "elements {}", sys.carrier().labels().join(" ")).unwrap();
    writeln!(out, "base {}", sys.label(sys.base())).unwrap();
    for (label, f) in sys.index_set().iter().zip(sys.maps()) {
        let images: Vec<&str> = f.table().iter().map(|&y| sys.label(y)).collect();
        writeln!(out, "map {label} = {}", images.join(" ")).unwrap();
    }
    out
}

/// Parse an odot file against the system's index set. Rows may appear in any
/// order but must cover every pair exactly once.
pub fn parse_odot(text: &str, index_set: &[String]) -> Result<OdotTable, ParseError> {
    let k = index_set.len();
    let mut op: Vec<Vec<Option<usize>>> = vec![vec![None; k]; k];
    let mut unit: Option<(Span, usize)> = None;
    let mut header = false;
    let mut last_line = 0;
    let resolve = |t: &Token| {
        index_set
            .iter()
            .position(|l| l == t.text)
            .ok_or_else(|| invalid(t.span, Error::UnknownLabel(t.text.to_string())))
    };

    for (line, tokens) in lines(text) {
        last_line = line;
        let head = &tokens[0];
        if !header {
            if head.text != "odot" || tokens.len() != 1 {
                return Err(syntax(head.span, "expected `odot` header"));
            }
            header = true;
            continue;
        }
        match tokens.as_slice() {
            [kw, _, ..] if kw.text == "odot" => {
                return Err(syntax(kw.span, "duplicate `odot` header"));
            }
            [kw] if kw.text == "odot" => return Err(syntax(kw.span, "duplicate `odot` header")),
            [kw, u] if kw.text == "unit" => {
                if unit.is_some() {
                    return Err(syntax(kw.span, "duplicate `unit` declaration"));
                }
                unit = Some((u.span, resolve(u)?));
            }
            [s, t, eq, u] if eq.text == "=" => {
                let (si, ti, ui) = (resolve(s)?, resolve(t)?, resolve(u)?);
                if op[si][ti].is_some() {
                    return Err(syntax(s.span, format!("duplicate entry for `{} {}`", s.text, t.text)));
                }
                op[si][ti] = Some(ui);
            }
            _ => return Err(syntax(head.span, "expected `<s> <t> = <u>` or `unit <s>`")),
        }
    }
    let end = Span {
        line: last_line + 1,
        col: 1,
    };
    if !header {
        return Err(syntax(end, "missing `odot` header"));
    }
    let mut table = Vec::with_capacity(k);
    for (s, row) in op.into_iter().enumerate() {
        let mut out = Vec::with_capacity(k);
        for (t, entry) in row.into_iter().enumerate() {
            out.push(entry.ok_or_else(|| {
                invalid(
                    end,
                    Error::OdotNotTotal {
                        s: index_set[s].clone(),
                        t: index_set[t].clone(),
                    },
                )
            })?);
        }
        table.push(out);
    }
    let unit_span = unit.map_or(end, |(sp, _)| sp);
    OdotTable::new(index_set.to_vec(), table, unit.map(|(_, u)| u)).map_err(|e| invalid(unit_span, e))
}

pub fn emit_odot(odot: &OdotTable) -> String {
    let labels = odot.index_set();
    let mut out = String::from("odot\n");
    for (s, row) in odot.table().iter().enumerate() {
        for (t, &u) in row.iter().enumerate() {
            writeln!(out, "{} {} = {}", labels[s], labels[t], labels[u]).unwrap();
        }
    }
    if let Some(u) = odot.unit() {
        writeln!(out, "unit {}", labels[u]).unwrap();
    }
    out
}

/// A tab-separated operation table. The corner cell holds `symbol`; the first
/// row and column hold the labels.
pub fn tsv_table(symbol: &str, labels: &[String], table: &[Vec<usize>]) -> String {
    tsv_table_with(symbol, labels, labels, table)
}

/// Like [`tsv_table`], with entries looked up in a separate label list.
pub fn tsv_table_with(symbol: &str, labels: &[String], values: &[String], table: &[Vec<usize>]) -> String {
    let mut out = String::new();
    out.push_str(symbol);
    for l in labels {
        out.push('\t');
        out.push_str(l);
    }
    out.push('\n');
    for (label, row) in labels.iter().zip(table) {
        out.push_str(label);
        for &v in row {
            out.push('\t');
            out.push_str(&values[v]);
        }
        out.push('\n');
    }
    out
}
