//! Text form for formulas.
//!
//! ```text
//! formula := "(" "and" entry* ")"
//!          | "(" "or" entry* ")"
//!          | "(" "leaf" ("0" | "1") [string] ")"
//! entry   := formula
//!          | "(" "gen" (number | "*" | "fun") string ")"
//! string  := '"' (any char, \" and \\ escaped) '"'
//! ```
//!
//! A `gen` entry stands for a generated child family: its bound (`*` when
//! unbounded, `fun` when function-indexed) and variable name. Generators
//! print faithfully but parse to opaque placeholders, since a closure has no
//! text form; the named builders are the way to construct them.

use super::{Children, Formula, Kind, OpaqueTag};

pub fn to_sexpr(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_formula(f: &Formula, out: &mut String) {
    if let Some(v) = f.leaf_value() {
        out.push_str("(leaf ");
        out.push(if v { '1' } else { '0' });
        if let Some(atom) = f.atom_label() {
            out.push(' ');
            write_string(&atom.text, out);
        }
        out.push(')');
        return;
    }
    out.push('(');
    out.push_str(match f.kind() {
        Kind::Conj => "and",
        Kind::Disj => "or",
    });
    let c = f.children();
    for ch in &c.head {
        out.push(' ');
        write_formula(ch, out);
    }
    if let Some(t) = &c.tail {
        out.push_str(" (gen ");
        match t.bound {
            Some(b) => out.push_str(&b.to_string()),
            None => out.push('*'),
        }
        out.push(' ');
        write_string(&t.var, out);
        out.push(')');
    }
    if let Some(fun) = &c.fun {
        out.push_str(" (gen fun ");
        write_string(&fun.var, out);
        out.push(')');
    }
    if let Some(o) = &c.opaque {
        out.push_str(" (gen ");
        match o.bound {
            Some(b) => out.push_str(&b.to_string()),
            None => out.push('*'),
        }
        out.push(' ');
        let name = if o.negations { format!("~{}", o.name) } else { o.name.clone() };
        write_string(&name, out);
        out.push(')');
    }
    out.push(')');
}

fn write_string(s: &str, out: &mut String) {
    out.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected token `{0}` at byte {1}")]
    Unexpected(String, usize),
    #[error("unterminated string starting at byte {0}")]
    UnterminatedString(usize),
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
    Str(String),
}

fn lex(input: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            '(' => {
                toks.push((Token::Open, i));
                i += 1;
            }
            ')' => {
                toks.push((Token::Close, i));
                i += 1;
            }
            '"' => {
                let start = i;
                i += 1;
                let mut s = String::new();
                loop {
                    if i >= bytes.len() {
                        return Err(ParseError::UnterminatedString(start));
                    }
                    match bytes[i] {
                        '"' => {
                            i += 1;
                            break;
                        }
                        '\\' => {
                            if i + 1 >= bytes.len() {
                                return Err(ParseError::UnterminatedString(start));
                            }
                            s.push(bytes[i + 1]);
                            i += 2;
                        }
                        ch => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                toks.push((Token::Str(s), start));
            }
            c if c.is_whitespace() => i += 1,
            _ => {
                let start = i;
                let mut s = String::new();
                while i < bytes.len() && !bytes[i].is_whitespace() && bytes[i] != '(' && bytes[i] != ')' {
                    s.push(bytes[i]);
                    i += 1;
                }
                toks.push((Token::Atom(s), start));
            }
        }
    }
    Ok(toks)
}

pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let toks = lex(input)?;
    let mut pos = 0;
    let f = parse_formula(&toks, &mut pos)?;
    if pos != toks.len() {
        let (t, at) = &toks[pos];
        return Err(ParseError::Unexpected(format!("{t:?}"), *at));
    }
    Ok(f)
}

fn expect_open(toks: &[(Token, usize)], pos: &mut usize) -> Result<(), ParseError> {
    match toks.get(*pos) {
        Some((Token::Open, _)) => {
            *pos += 1;
            Ok(())
        }
        Some((t, at)) => Err(ParseError::Unexpected(format!("{t:?}"), *at)),
        None => Err(ParseError::Eof),
    }
}

fn parse_formula(toks: &[(Token, usize)], pos: &mut usize) -> Result<Formula, ParseError> {
    expect_open(toks, pos)?;
    let (head, at) = match toks.get(*pos) {
        Some((Token::Atom(s), at)) => (s.clone(), *at),
        Some((t, at)) => return Err(ParseError::Unexpected(format!("{t:?}"), *at)),
        None => return Err(ParseError::Eof),
    };
    *pos += 1;
    match head.as_str() {
        "leaf" => {
            let value = match toks.get(*pos) {
                Some((Token::Atom(s), _)) if s == "0" => false,
                Some((Token::Atom(s), _)) if s == "1" => true,
                Some((t, at)) => return Err(ParseError::Unexpected(format!("{t:?}"), *at)),
                None => return Err(ParseError::Eof),
            };
            *pos += 1;
            let label = match toks.get(*pos) {
                Some((Token::Str(s), _)) => {
                    *pos += 1;
                    Some(s.clone())
                }
                _ => None,
            };
            close(toks, pos)?;
            Ok(match label {
                Some(text) => {
                    let dual = format!("~({text})");
                    Formula::atom(value, text, dual)
                }
                None => Formula::leaf(value),
            })
        }
        "and" | "or" => {
            let kind = if head == "and" { Kind::Conj } else { Kind::Disj };
            let mut children = Children::default();
            loop {
                match toks.get(*pos) {
                    Some((Token::Close, _)) => {
                        *pos += 1;
                        break;
                    }
                    Some((Token::Open, _)) => {
                        if let Some((Token::Atom(s), _)) = toks.get(*pos + 1) {
                            if s == "gen" {
                                let save = *pos;
                                *pos += 2;
                                let tag = parse_gen(toks, pos, save)?;
                                children.opaque = Some(tag);
                                continue;
                            }
                        }
                        children.head.push(parse_formula(toks, pos)?);
                    }
                    Some((t, at)) => return Err(ParseError::Unexpected(format!("{t:?}"), *at)),
                    None => return Err(ParseError::Eof),
                }
            }
            Ok(Formula::new(kind, children))
        }
        other => Err(ParseError::Unexpected(other.to_string(), at)),
    }
}

fn parse_gen(toks: &[(Token, usize)], pos: &mut usize, open_at: usize) -> Result<OpaqueTag, ParseError> {
    let bound = match toks.get(*pos) {
        Some((Token::Atom(s), _)) if s == "*" || s == "fun" => None,
        Some((Token::Atom(s), at)) => {
            Some(s.parse::<u64>().map_err(|_| ParseError::Unexpected(s.clone(), *at))?)
        }
        Some((t, at)) => return Err(ParseError::Unexpected(format!("{t:?}"), *at)),
        None => return Err(ParseError::Eof),
    };
    *pos += 1;
    let name = match toks.get(*pos) {
        Some((Token::Str(s), _)) => s.clone(),
        Some((t, at)) => return Err(ParseError::Unexpected(format!("{t:?}"), *at)),
        None => return Err(ParseError::Eof),
    };
    *pos += 1;
    close(toks, pos)?;
    let _ = open_at;
    let (name, negations) = match name.strip_prefix('~') {
        Some(rest) => (rest.to_string(), true),
        None => (name, false),
    };
    Ok(OpaqueTag { name, bound, negations })
}

fn close(toks: &[(Token, usize)], pos: &mut usize) -> Result<(), ParseError> {
    match toks.get(*pos) {
        Some((Token::Close, _)) => {
            *pos += 1;
            Ok(())
        }
        Some((t, at)) => Err(ParseError::Unexpected(format!("{t:?}"), *at)),
        None => Err(ParseError::Eof),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_round_trip() {
        let src = r#"(or (and (leaf 0) (leaf 1)) (leaf 1 "f(2) <= f(3)"))"#;
        let f = parse(src).unwrap();
        assert_eq!(to_sexpr(&f), src);
        let g = parse(&to_sexpr(&f)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn gen_entries_parse_to_placeholders() {
        let f = parse(r#"(or (gen * "x"))"#).unwrap();
        assert!(f.children().opaque.is_some());
        assert_eq!(to_sexpr(&f), r#"(or (gen * "x"))"#);
    }

    #[test]
    fn errors_are_positioned() {
        assert!(matches!(parse("(or (leaf 2))"), Err(ParseError::Unexpected(_, _))));
        assert!(matches!(parse("(or"), Err(ParseError::Eof)));
    }
}
