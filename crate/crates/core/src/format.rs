//! Text syntax for words and presentation files.
//!
//! ```text
//! # the infinite cyclic group
//! generators: a b c
//! relator: a b c
//! relator: c b^-2
//! ```
//!
//! A token is a generator name or `name^k` for a nonzero integer `k`,
//! standing for `|k|` copies of the letter or its inverse. Names match
//! `[A-Za-z][A-Za-z0-9_]*`.

use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::presentation::{Presentation, PresentationError};
use crate::word::{write_syllable, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `generators:` or `relator:`")]
    UnknownDirective,
    #[error("missing `generators:` line")]
    MissingGenerators,
    #[error("second `generators:` line")]
    RepeatedGenerators,
    #[error("`relator:` before `generators:`")]
    RelatorBeforeGenerators,
    #[error("invalid generator name `{0}`")]
    BadName(String),
    #[error("invalid exponent `{0}`")]
    BadExponent(String),
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
}

/// Positions are 1-based and count characters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Whitespace-separated fields with their 1-based character columns.
fn fields(s: &str, first_column: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut start_col = 0;
    for (col, (i, c)) in (first_column..).zip(s.char_indices()) {
        if c.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((start_col, &s[b..i]));
            }
        } else if start.is_none() {
            start = Some(i);
            start_col = col;
        }
    }
    if let Some(b) = start {
        out.push((start_col, &s[b..]));
    }
    out
}

fn parse_token(token: &str, column: usize, line: usize) -> Result<(&str, i64), ParseError> {
    let err = |column, kind| ParseError { line, column, kind };
    let (name, exponent) = match token.split_once('^') {
        None => (token, 1),
        Some((name, k)) => {
            let exp_col = column + name.chars().count() + 1;
            let digits = k.strip_prefix(['+', '-']).unwrap_or(k);
            if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(err(exp_col, ParseErrorKind::BadExponent(k.to_string())));
            }
            let k: i64 = k.parse().map_err(|_| err(exp_col, ParseErrorKind::BadExponent(k.to_string())))?;
            if k == 0 {
                return Err(err(exp_col, ParseErrorKind::ZeroExponent));
            }
            (name, k)
        }
    };
    if !is_name(name) {
        return Err(err(column, ParseErrorKind::BadName(name.to_string())));
    }
    Ok((name, exponent))
}

fn parse_syllables(
    text: &str,
    first_column: usize,
    line: usize,
    generators: &[String],
) -> Result<Vec<(usize, i64)>, ParseError> {
    fields(text, first_column)
        .into_iter()
        .map(|(column, token)| {
            let (name, k) = parse_token(token, column, line)?;
            let g = generators.iter().position(|g| g == name).ok_or_else(|| ParseError {
                line,
                column,
                kind: ParseErrorKind::UnknownGenerator(name.to_string()),
            })?;
            Ok((g, k))
        })
        .collect()
}

/// Parse a word in token syntax over `generators`. An empty string, `1`
/// or `ε` is the empty word.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word, ParseError> {
    match text.trim() {
        "" | "1" | "ε" => Ok(Word::empty()),
        _ => Ok(Word::from_syllables(&parse_syllables(text, 1, 1, generators)?)),
    }
}

/// A parsed presentation together with where each part came from.
#[derive(Debug, Clone)]
pub struct PresentationFile {
    pub path: Option<PathBuf>,
    pub presentation: Presentation,
    pub generators_line: usize,
    /// Source line of each relator.
    pub relator_lines: Vec<usize>,
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    parse_file(text, None).map(|f| f.presentation)
}

pub fn parse_file(text: &str, path: Option<&Path>) -> Result<PresentationFile, ParseError> {
    let mut generators: Option<(usize, Vec<String>)> = None;
    let mut spellings = Vec::new();
    let mut relator_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim_start();
        let indent = raw.chars().count() - body.chars().count();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let err = |column, kind| ParseError { line, column, kind };
        let Some((key, rest)) = body.split_once(':') else {
            return Err(err(indent + 1, ParseErrorKind::UnknownDirective));
        };
        let rest_column = indent + key.chars().count() + 2;
        match key.trim_end() {
            "generators" => {
                if generators.is_some() {
                    return Err(err(indent + 1, ParseErrorKind::RepeatedGenerators));
                }
                let mut names: Vec<String> = Vec::new();
                for (column, name) in fields(rest, rest_column) {
                    if !is_name(name) {
                        return Err(err(column, ParseErrorKind::BadName(name.to_string())));
                    }
                    if names.iter().any(|n| n == name) {
                        return Err(err(column, ParseErrorKind::DuplicateGenerator(name.to_string())));
                    }
                    names.push(name.to_string());
                }
                generators = Some((line, names));
            }
            "relator" => {
                let Some((_, names)) = &generators else {
                    return Err(err(indent + 1, ParseErrorKind::RelatorBeforeGenerators));
                };
                spellings.push(parse_syllables(rest, rest_column, line, names)?);
                relator_lines.push(line);
            }
            _ => return Err(err(indent + 1, ParseErrorKind::UnknownDirective)),
        }
    }
    let Some((generators_line, names)) = generators else {
        let line = text.lines().count().max(1);
        return Err(ParseError { line, column: 1, kind: ParseErrorKind::MissingGenerators });
    };
    let presentation = Presentation::with_spellings(names, spellings).map_err(|e| match e {
        PresentationError::DuplicateGenerator(n) => {
            ParseError { line: generators_line, column: 1, kind: ParseErrorKind::DuplicateGenerator(n) }
        }
        other => unreachable!("names and relators were validated: {other}"),
    })?;
    Ok(PresentationFile { path: path.map(Path::to_path_buf), presentation, generators_line, relator_lines })
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
}

pub fn load(path: &Path) -> Result<PresentationFile, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io { path: path.to_path_buf(), source })?;
    parse_file(&text, Some(path)).map_err(|source| FileError::Parse { path: path.to_path_buf(), source })
}

/// Token syntax for a word; the empty word is the empty string.
pub fn format_word(w: &Word, generators: &[String]) -> String {
    w.display(generators).to_string()
}

/// File-format text; relators are written as originally spelled.
pub fn format_presentation(p: &Presentation) -> String {
    let mut out = String::from("generators:");
    for g in p.generators() {
        out.push(' ');
        out.push_str(g);
    }
    out.push('\n');
    for s in p.spellings() {
        out.push_str("relator:");
        for &(g, k) in s {
            out.push(' ');
            write_syllable(&mut out, &p.generators()[g], k).expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

/// Wrapper rendering a word with `ε` for the empty word.
pub struct Human<'a>(pub &'a Word, pub &'a [String]);

impl fmt::Display for Human<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "{}", self.0.display(self.1))
        }
    }
}
