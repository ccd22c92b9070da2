//! Text and JSON input formats for presentations.
//!
//! Text format, one directive per line:
//!
//! ```text
//! # comment
//! gens: a b
//! rel: abAB
//! rel: a^3 B^2
//! ```
//!
//! Generators are single lowercase letters; a capital letter is the inverse
//! of the corresponding generator and `^n` repeats the preceding letter.
//! Several relators may share a `rel:` line when separated by whitespace or
//! commas. JSON input is `{"gens": [...], "rels": [...]}` where each relator
//! is either such a string or a list of `[name, exponent]` pairs.

use serde::{Deserialize, Serialize};

use super::{GroupError, GroupPresentation, Word};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> GroupError {
    GroupError::Parse { line, column, message: message.into() }
}

/// Parses a letter string such as `abAB` or `a^2B` against `gens`.
/// `line` and `col0` locate the string for error messages.
pub fn parse_word(s: &str, gens: &[String], line: usize, col0: usize) -> Result<Word, GroupError> {
    let chars: Vec<char> = s.chars().collect();
    let mut w = Word::identity();
    let mut i = 0;
    if s == "1" {
        return Ok(w);
    }
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if !c.is_ascii_alphabetic() {
            return Err(parse_error(line, col, format!("unexpected character '{c}'")));
        }
        let lower = c.to_ascii_lowercase().to_string();
        let g = gens.iter().position(|n| *n == lower).ok_or_else(|| parse_error(line, col, format!("undeclared generator '{lower}'")))?;
        let sign = if c.is_ascii_uppercase() { -1 } else { 1 };
        i += 1;
        let mut exp = 1i64;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && chars[i] == '-' {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            exp = digits.parse().map_err(|_| parse_error(line, col0 + start, "expected integer exponent"))?;
        }
        w.push(g, sign * exp);
    }
    Ok(w)
}

/// Parses the line-oriented text format.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation, GroupError> {
    let mut gens: Option<Vec<String>> = None;
    let mut rels = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(parse_error(line, 1, "expected 'gens:' or 'rel:'"));
        };
        let key = content[..colon].trim();
        let rest = &content[colon + 1..];
        let offset = colon + 2;
        match key {
            "gens" | "generators" => {
                if gens.is_some() {
                    return Err(parse_error(line, 1, "generators declared twice"));
                }
                let mut names = Vec::new();
                for (pos, tok) in tokens(rest) {
                    if tok.len() != 1 || !tok.chars().all(|c| c.is_ascii_lowercase()) {
                        return Err(parse_error(line, offset + pos, "generators must be single lowercase letters"));
                    }
                    names.push(tok.to_string());
                }
                gens = Some(names);
            }
            "rel" | "rels" | "relator" | "relators" => {
                let names = gens.as_ref().ok_or_else(|| parse_error(line, 1, "relator before 'gens:'"))?;
                for (pos, tok) in tokens(rest) {
                    rels.push(parse_word(tok, names, line, offset + pos)?);
                }
            }
            other => return Err(parse_error(line, 1, format!("unknown directive '{other}'"))),
        }
    }
    let gens = gens.ok_or_else(|| parse_error(1, 1, "missing 'gens:' line"))?;
    GroupPresentation::new(gens, rels)
}

/// Whitespace/comma separated tokens with their 0-based byte offsets.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        let sep = c.is_whitespace() || c == ',';
        match (sep, start) {
            (false, None) => start = Some(i),
            (true, Some(st)) => {
                out.push((st, &s[st..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out.into_iter()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonWord {
    Letters(String),
    Syllables(Vec<(String, i64)>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonPresentation {
    pub gens: Vec<String>,
    #[serde(default)]
    pub rels: Vec<JsonWord>,
}

impl JsonWord {
    pub fn to_word(&self, gens: &[String]) -> Result<Word, GroupError> {
        match self {
            JsonWord::Letters(s) => parse_word(s, gens, 0, 1),
            JsonWord::Syllables(items) => {
                let mut w = Word::identity();
                for (name, e) in items {
                    let g =
                        gens.iter().position(|n| n == name).ok_or_else(|| parse_error(0, 0, format!("undeclared generator '{name}'")))?;
                    w.push(g, *e);
                }
                Ok(w)
            }
        }
    }

    pub fn from_word(w: &Word, gens: &[String]) -> Self {
        JsonWord::Syllables(w.syllables().iter().map(|&(g, e)| (gens[g].clone(), e)).collect())
    }
}

impl JsonPresentation {
    pub fn to_presentation(&self) -> Result<GroupPresentation, GroupError> {
        let rels = self.rels.iter().map(|r| r.to_word(&self.gens)).collect::<Result<_, _>>()?;
        GroupPresentation::new(self.gens.clone(), rels)
    }

    pub fn from_presentation(p: &GroupPresentation) -> Self {
        JsonPresentation {
            gens: p.generators().to_vec(),
            rels: p.relators().iter().map(|r| JsonWord::from_word(r, p.generators())).collect(),
        }
    }
}

pub fn parse_presentation_json(text: &str) -> Result<GroupPresentation, GroupError> {
    let jp: JsonPresentation = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.column(), e.to_string()))?;
    jp.to_presentation()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format() {
        let p = parse_presentation("gens: a b\n# torus\nrel: abAB\n").unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.relators()[0], Word::from_signed(&[1, 2, -1, -2]));
        let q = parse_presentation("gens: a\nrel: a^2, a^-3A").unwrap();
        assert_eq!(q.relators()[0], Word::power(0, 2));
        assert_eq!(q.relators()[1], Word::power(0, -4));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_presentation("gens: a b\nrel: abc") {
            Err(GroupError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_presentation("rel: ab"), Err(GroupError::Parse { line: 1, .. })));
    }

    #[test]
    fn json_format() {
        let p = parse_presentation_json(r#"{"gens":["a","b"],"rels":["abAB",[["a",2],["b",-1]]]}"#).unwrap();
        assert_eq!(p.relators()[1], Word::from_syllables([(0, 2), (1, -1)]));
        let back = JsonPresentation::from_presentation(&p).to_presentation().unwrap();
        assert_eq!(back, p);
    }
}
