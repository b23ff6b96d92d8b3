//! Canonical text form of a [`BpaStructure`].
//!
//! ```text
//! bpa     := special ("|" section)^lambda
//! special := "[" assigns "]"
//! section := block*
//! block   := "{" assigns "}"
//! assigns := (elem ":" color) ("," elem ":" color)* | empty
//! ```
//!
//! Whitespace between tokens is ignored on input. Output puts a single space
//! around bars and between blocks, with elements ascending inside brackets:
//! `[] | {3:1,5:1} {2:1} | | {1:1} {4:1} {6:1}`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::enumerate::{Assignment, Block, BpaStructure};
use crate::numbers::Params;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: expected {expected}")]
    Syntax { pos: usize, expected: &'static str },
    #[error("text must start with the special section \"[...]\" before the first bar")]
    MissingSpecial,
    #[error("element {0} appears more than once")]
    DuplicateElement(u32),
    #[error("element {0} is missing")]
    MissingElement(u32),
    #[error("element {element} outside 1..={n}")]
    ElementOutOfRange { element: u32, n: u32 },
    #[error("color {color} of element {element} outside 1..={max}")]
    ColorOutOfRange { element: u32, color: u32, max: u32 },
    #[error("expected {expected} bars, found {found}")]
    WrongBarCount { expected: u32, found: u32 },
    #[error("empty block")]
    EmptyBlock,
}

fn write_assigns(out: &mut String, entries: &Assignment) {
    for (i, (e, c)) in entries.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{e}:{c}");
    }
}

/// Appends the canonical text of `s` to `out`.
pub fn format_into(out: &mut String, s: &BpaStructure) {
    out.push('[');
    write_assigns(out, &s.special);
    out.push(']');
    for section in &s.sections {
        out.push_str(" |");
        for block in section {
            out.push_str(" {");
            write_assigns(out, &block.entries);
            out.push('}');
        }
    }
}

pub fn format(s: &BpaStructure) -> String {
    let mut out = String::with_capacity(8 + 6 * s.n as usize);
    format_into(&mut out, s);
    out
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: self.pos,
                expected,
            })
        }
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u32 = 0;
        while let Some(d) = self.bytes.get(self.pos).filter(|b| b.is_ascii_digit()) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((d - b'0') as u32))
                .ok_or(ParseError::Syntax {
                    pos: self.pos,
                    expected: "a number that fits in 32 bits",
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::Syntax {
                pos: start,
                expected: "a number",
            });
        }
        Ok(v)
    }

    fn assigns(&mut self, close: u8) -> Result<Assignment, ParseError> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            let e = self.number()?;
            self.expect(b':', "':'")?;
            let c = self.number()?;
            out.push((e, c));
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b) if b == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => {
                    return Err(ParseError::Syntax {
                        pos: self.pos,
                        expected: "',' or closing bracket",
                    })
                }
            }
        }
    }
}

/// Parses and validates a structure on `{1..n}` for `params`.
pub fn parse(text: &str, params: &Params, n: u32) -> Result<BpaStructure, ParseError> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    if cur.peek() != Some(b'[') {
        return Err(ParseError::MissingSpecial);
    }
    cur.pos += 1;
    let mut special = cur.assigns(b']')?;
    special.sort_unstable();
    let mut sections: Vec<Vec<Block>> = Vec::new();
    loop {
        match cur.peek() {
            None => break,
            Some(b'|') => {
                cur.pos += 1;
                sections.push(Vec::new());
            }
            Some(b'{') if !sections.is_empty() => {
                cur.pos += 1;
                let mut entries = cur.assigns(b'}')?;
                entries.sort_unstable();
                sections.last_mut().unwrap().push(Block { entries });
            }
            Some(_) => {
                return Err(ParseError::Syntax {
                    pos: cur.pos,
                    expected: "'|' or '{'",
                })
            }
        }
    }
    let s = BpaStructure {
        n,
        params: *params,
        special,
        sections,
    };
    validate(&s)?;
    Ok(s)
}

/// Checks bar count, non-empty blocks, color ranges, and that the special
/// section and blocks partition `{1..n}`. Entries must be sorted by element.
pub fn validate(s: &BpaStructure) -> Result<(), ParseError> {
    let p = &s.params;
    let found = s.sections.len() as u32;
    if found != p.lambda {
        return Err(ParseError::WrongBarCount {
            expected: p.lambda,
            found,
        });
    }
    let mut seen = vec![false; s.n as usize + 1];
    let mut mark = |element: u32, color: u32, max: u32| {
        if element == 0 || element > s.n {
            return Err(ParseError::ElementOutOfRange { element, n: s.n });
        }
        if color == 0 || color > max {
            return Err(ParseError::ColorOutOfRange {
                element,
                color,
                max,
            });
        }
        if std::mem::replace(&mut seen[element as usize], true) {
            return Err(ParseError::DuplicateElement(element));
        }
        Ok(())
    };
    for &(e, c) in &s.special {
        mark(e, c, p.gamma)?;
    }
    for block in s.sections.iter().flatten() {
        if block.entries.is_empty() {
            return Err(ParseError::EmptyBlock);
        }
        for &(e, c) in &block.entries {
            mark(e, c, p.beta)?;
        }
    }
    if let Some(missing) = (1..=s.n).find(|&e| !seen[e as usize]) {
        return Err(ParseError::MissingElement(missing));
    }
    Ok(())
}
