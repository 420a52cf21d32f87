//! S-expression reader. Atoms are maximal runs of characters other than
//! whitespace, parentheses and `;`, so rule names like `[p][<>]'` are atoms.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a) => Some(a),
            Sexp::List(_) => None,
        }
    }

    /// `(head args...)` with an atom head.
    pub fn head(&self) -> Option<(&str, &[Sexp])> {
        match self {
            Sexp::List(xs) => match xs.split_first() {
                Some((Sexp::Atom(h), rest)) => Some((h, rest)),
                _ => None,
            },
            Sexp::Atom(_) => None,
        }
    }

    /// Replaces every atom bound in `defs`.
    pub fn subst(&self, defs: &HashMap<String, Sexp>) -> Sexp {
        match self {
            Sexp::Atom(a) => defs.get(a).cloned().unwrap_or_else(|| self.clone()),
            Sexp::List(xs) => Sexp::List(xs.iter().map(|x| x.subst(defs)).collect()),
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a) => f.write_str(a),
            Sexp::List(xs) => {
                f.write_str("(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn read(&mut self) -> Result<Sexp> {
        self.skip_trivia();
        match self.chars.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(')') => Err(self.err("unexpected `)`")),
            Some('(') => {
                self.bump();
                let mut xs = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => return Err(self.err("unclosed `(`")),
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List(xs));
                        }
                        Some(_) => xs.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                let mut a = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    a.push(c);
                    self.bump();
                }
                Ok(Sexp::Atom(a))
            }
        }
    }
}

/// Reads every top-level expression of `src`.
pub fn read_all(src: &str) -> Result<Vec<Sexp>> {
    let mut r = Reader { chars: src.chars().peekable(), line: 1, col: 1 };
    let mut out = Vec::new();
    loop {
        r.skip_trivia();
        if r.chars.peek().is_none() {
            return Ok(out);
        }
        out.push(r.read()?);
    }
}

/// Reads exactly one expression.
pub fn read_one(src: &str) -> Result<Sexp> {
    let mut all = read_all(src)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        n => Err(Error::Parse { line: 1, col: 1, msg: format!("expected one expression, found {n}") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_atoms() {
        let xs = read_all("; header\n(step [p][<>]' fwd ()) ; trailing\n q").unwrap();
        assert_eq!(xs.len(), 2);
        assert_eq!(xs[0].to_string(), "(step [p][<>]' fwd ())");
        assert_eq!(xs[1], Sexp::Atom("q".into()));
    }

    #[test]
    fn positions_in_errors() {
        let e = read_all("(a\n  (b c)").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        assert!(read_all(")").is_err());
    }
}
