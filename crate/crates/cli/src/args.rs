//! Descriptor parsing for `--algebra`, `--cross` and `--module`.
//!
//! Errors carry a 1-based line and column into the offending argument.

use std::fmt;

use symgap_core::SimpleType;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub what: &'static str,
    pub input: String,
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid {} '{}' at line {}, column {}: {}",
            self.what, self.input, self.line, self.col, self.msg
        )
    }
}

impl std::error::Error for ParseError {}

fn err(what: &'static str, input: &str, offset: usize, msg: impl Into<String>) -> ParseError {
    let before = &input[..offset.min(input.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    ParseError {
        what,
        input: input.to_string(),
        line,
        col,
        msg: msg.into(),
    }
}

pub fn parse_algebra(s: &str) -> Result<SimpleType, ParseError> {
    let what = "algebra";
    let Some(first) = s.chars().next() else {
        return Err(err(what, s, 0, "expected a type such as A3 or G2"));
    };
    if !"ABCDEFGabcdefg".contains(first) {
        return Err(err(what, s, 0, format!("unknown family '{first}'")));
    }
    let digits = &s[first.len_utf8()..];
    if let Some((i, c)) = digits.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
        return Err(err(what, s, first.len_utf8() + i, format!("unexpected '{c}' in rank")));
    }
    if digits.is_empty() {
        return Err(err(what, s, 1, "missing rank"));
    }
    s.parse()
        .map_err(|_| err(what, s, 1, format!("no simple Lie algebra {s}")))
}

/// A comma-separated list of positive integers; `l` and `l-k` stand for the
/// rank and its offsets when `rank` is given.
pub fn parse_nodes(what: &'static str, s: &str, rank: Option<usize>) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in s.split(',') {
        let lead = tok.len() - tok.trim_start().len();
        let t = tok.trim();
        let at = offset + lead;
        let n = if let Some(rest) = t.strip_prefix('l') {
            let l = rank.ok_or_else(|| err(what, s, at, "'l' is only allowed in table patterns"))?;
            if rest.is_empty() {
                l
            } else {
                let k: usize = rest
                    .strip_prefix('-')
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| err(what, s, at + 1, "expected l or l-<k>"))?;
                l.checked_sub(k).filter(|&v| v > 0).ok_or_else(|| err(what, s, at, "node below 1"))?
            }
        } else {
            match t.parse::<usize>() {
                Ok(0) => return Err(err(what, s, at, "nodes are numbered from 1")),
                Ok(n) => n,
                Err(_) => {
                    let bad = t.char_indices().find(|(_, c)| !c.is_ascii_digit()).map_or(0, |(i, _)| i);
                    return Err(err(what, s, at + bad, "expected a positive integer"));
                }
            }
        };
        out.push(n);
        offset += tok.len() + 1;
    }
    Ok(out)
}

/// `--module j,k` or `--module jk` (single-digit nodes).
pub fn parse_module(s: &str) -> Result<(usize, usize), ParseError> {
    let nodes = if s.contains(',') {
        parse_nodes("module", s, None)?
    } else if s.len() == 2 && s.chars().all(|c| c.is_ascii_digit()) {
        s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
    } else {
        parse_nodes("module", s, None)?
    };
    match nodes[..] {
        [j, k] => Ok((j, k)),
        _ => Err(err("module", s, 0, "expected two nodes j,k")),
    }
}

/// `a..b` or `a..=b` (inclusive either way), or a single rank.
pub fn parse_ranks(s: &str) -> Result<Vec<usize>, ParseError> {
    let what = "rank range";
    let num = |t: &str, at: usize| -> Result<usize, ParseError> {
        t.trim().parse().map_err(|_| err(what, s, at, "expected a positive integer"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let (b, skip) = b.strip_prefix('=').map_or((b, 0), |b| (b, 1));
            let lo = num(a, 0)?;
            let hi = num(b, a.len() + 2 + skip)?;
            if lo > hi {
                return Err(err(what, s, 0, "empty range"));
            }
            Ok((lo..=hi).collect())
        }
        None => Ok(vec![num(s, 0)?]),
    }
}
