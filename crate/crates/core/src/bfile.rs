//! Plain-text sequence tables: one `index value` pair per line, `#` comments.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub entries: Vec<(u64, BigInt)>,
    /// First comment line, if any, without the leading `#`.
    pub source: Option<String>,
}

/// Offline copy of a published sequence and the parameter point it matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub id: &'static str,
    /// `(lambda, beta, gamma)`.
    pub params: (u32, u32, u32),
    pub text: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        id: "A000670",
        params: (1, 1, 0),
        text: include_str!("../fixtures/b000670.txt"),
    },
    Fixture {
        id: "A007047",
        params: (1, 1, 2),
        text: include_str!("../fixtures/b007047.txt"),
    },
    Fixture {
        id: "A216794",
        params: (1, 2, 0),
        text: include_str!("../fixtures/b216794.txt"),
    },
];

pub fn fixture(id: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.id.eq_ignore_ascii_case(id))
}

/// Checks a sequence id of the form `A` followed by six digits.
pub fn valid_sequence_id(id: &str) -> bool {
    id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit())
}

/// `{base}/Axxxxxx/bxxxxxx.txt`.
pub fn fetch_url(base: &str, id: &str) -> Result<String> {
    if !valid_sequence_id(id) {
        return Err(Error::BFile(format!("bad sequence id {id:?}")));
    }
    Ok(format!(
        "{}/{id}/b{}.txt",
        base.trim_end_matches('/'),
        &id[1..]
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Match {
        terms: usize,
    },
    Mismatch {
        index: u64,
        expected: BigInt,
        found: BigInt,
    },
    /// The table has an index the computed prefix does not cover.
    TooShort {
        index: u64,
    },
}

impl BFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(u64, BigInt)> = Vec::new();
        let mut source = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                source.get_or_insert_with(|| comment.trim().to_string());
                continue;
            }
            let bad = |what: &str| Error::BFile(format!("line {}: {what}", lineno + 1));
            let mut parts = line.split_whitespace();
            let (Some(i), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(bad("expected \"index value\""));
            };
            let i: u64 = i.parse().map_err(|_| bad("bad index"))?;
            let v: BigInt = v.parse().map_err(|_| bad("bad value"))?;
            if entries.last().is_some_and(|(prev, _)| *prev >= i) {
                return Err(bad("indices must be strictly increasing"));
            }
            entries.push((i, v));
        }
        Ok(BFile { entries, source })
    }

    /// Consecutive entries starting at `offset`.
    pub fn from_values<T: Into<BigInt> + Clone>(values: &[T], offset: u64) -> Self {
        BFile {
            entries: values
                .iter()
                .enumerate()
                .map(|(i, v)| (offset + i as u64, v.clone().into()))
                .collect(),
            source: None,
        }
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        if let Some(src) = &self.source {
            let _ = writeln!(out, "# {src}");
        }
        for (i, v) in &self.entries {
            let _ = writeln!(out, "{i} {v}");
        }
        out
    }

    /// Compares against `computed[k]` = term with index `k`.
    pub fn compare(&self, computed: &[BigInt]) -> Comparison {
        for (i, expected) in &self.entries {
            match computed.get(*i as usize) {
                None => return Comparison::TooShort { index: *i },
                Some(found) if found != expected => {
                    return Comparison::Mismatch {
                        index: *i,
                        expected: expected.clone(),
                        found: found.clone(),
                    }
                }
                Some(_) => {}
            }
        }
        Comparison::Match {
            terms: self.entries.len(),
        }
    }

    pub fn max_index(&self) -> Option<u64> {
        self.entries.last().map(|(i, _)| *i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write() {
        let text = "# A000670: ordered set partitions\n0 1\n1 1\n\n2 3\n# trailing\n3 13\n";
        let b = BFile::parse(text).unwrap();
        assert_eq!(b.source.as_deref(), Some("A000670: ordered set partitions"));
        assert_eq!(b.entries.len(), 4);
        assert_eq!(b.max_index(), Some(3));
        assert_eq!(
            b.write(),
            "# A000670: ordered set partitions\n0 1\n1 1\n2 3\n3 13\n"
        );
        assert_eq!(BFile::parse(&b.write()).unwrap(), b);
    }

    #[test]
    fn bundled_fixtures_parse() {
        for f in FIXTURES {
            let b = BFile::parse(f.text).unwrap();
            assert!(b.entries.len() >= 15, "{}", f.id);
            assert!(b.source.as_deref().unwrap().starts_with(f.id));
            assert_eq!(b.entries[0], (0, BigInt::from(1)));
        }
        assert_eq!(fixture("a216794").unwrap().params, (1, 2, 0));
        assert!(fixture("A000001").is_none());
    }

    #[test]
    fn fetch_urls() {
        assert_eq!(
            fetch_url("http://localhost:8000/", "A000670").unwrap(),
            "http://localhost:8000/A000670/b000670.txt"
        );
        assert!(fetch_url("x", "A12").is_err());
        assert!(fetch_url("x", "B000670").is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(BFile::parse("0 1\n0 2\n").is_err());
        assert!(BFile::parse("0\n").is_err());
        assert!(BFile::parse("0 1 2\n").is_err());
        assert!(BFile::parse("x 1\n").is_err());
        assert!(BFile::parse("0 y\n").is_err());
    }

    #[test]
    fn compare_reports_first_difference() {
        let b = BFile::from_values(&[1u32, 1, 3, 13], 0);
        let good: Vec<BigInt> = [1, 1, 3, 13, 75].map(BigInt::from).to_vec();
        assert_eq!(b.compare(&good), Comparison::Match { terms: 4 });
        let bad: Vec<BigInt> = [1, 1, 4, 13].map(BigInt::from).to_vec();
        assert_eq!(
            b.compare(&bad),
            Comparison::Mismatch {
                index: 2,
                expected: 3.into(),
                found: 4.into()
            }
        );
        assert_eq!(b.compare(&good[..2]), Comparison::TooShort { index: 2 });
    }
}
