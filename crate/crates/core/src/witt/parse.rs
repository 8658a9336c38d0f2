//! Text syntax: `<a1, a1*a3, 1>` for diagonal forms, `<<a1,a2>>` for
//! Pfister forms, `+` for sums, `0` for the zero class. A leading `-` on an
//! entry is accepted and dropped (−1 is a square in the model).

use thiserror::Error;

use super::{pfister_class, witt_add, PfisterSymbol, SquareClass, WittClass, WittError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at offset {position} near `{token}`: {message}")]
pub struct ParseError {
    pub position: usize,
    pub token: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    DoubleOpen,
    DoubleClose,
    Open,
    Close,
    Comma,
    Plus,
    Minus,
    Star,
    One,
    Zero,
    Gen(usize),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize, String)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize, String)>, ParseError> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            let two = src.get(i..i + 2);
            let tok = match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    i += 1;
                    continue;
                }
                b'<' if two == Some("<<") => {
                    i += 2;
                    Tok::DoubleOpen
                }
                b'>' if two == Some(">>") => {
                    i += 2;
                    Tok::DoubleClose
                }
                b'<' => {
                    i += 1;
                    Tok::Open
                }
                b'>' => {
                    i += 1;
                    Tok::Close
                }
                b',' => {
                    i += 1;
                    Tok::Comma
                }
                b'+' => {
                    i += 1;
                    Tok::Plus
                }
                b'-' => {
                    i += 1;
                    Tok::Minus
                }
                b'*' => {
                    i += 1;
                    Tok::Star
                }
                b'a' => {
                    i += 1;
                    let digits = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let text = &src[digits..i];
                    match text.parse::<usize>() {
                        Ok(n) if !text.is_empty() => Tok::Gen(n),
                        _ => return Err(lx.error(start, i.max(start + 1), "expected a generator like a1")),
                    }
                }
                b'0'..=b'9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    match &src[start..i] {
                        "1" => Tok::One,
                        "0" => Tok::Zero,
                        _ => return Err(lx.error(start, i, "only 1 and 0 are numeric entries")),
                    }
                }
                _ => {
                    let end = start + src[start..].chars().next().map_or(1, char::len_utf8);
                    return Err(lx.error(start, end, "unexpected character"));
                }
            };
            lx.toks.push((tok, start, src[start..i].to_string()));
        }
        lx.toks.push((Tok::End, src.len(), String::from("<end of input>")));
        Ok(lx.toks)
    }

    fn error(&self, start: usize, end: usize, message: &str) -> ParseError {
        ParseError {
            position: start,
            token: self.src[start..end.min(self.src.len())].to_string(),
            message: message.to_string(),
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, String)>,
    pos: usize,
    k: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn fail(&self, message: impl Into<String>) -> ParseError {
        let (_, position, token) = &self.toks[self.pos];
        ParseError {
            position: *position,
            token: token.clone(),
            message: message.into(),
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(format!("expected {what}")))
        }
    }

    fn factor(&mut self) -> Result<SquareClass, ParseError> {
        match *self.peek() {
            Tok::One => {
                self.pos += 1;
                Ok(SquareClass::ONE)
            }
            Tok::Gen(i) => {
                if i == 0 || i > self.k {
                    return Err(self.fail(format!("generator index outside 1..={}", self.k)));
                }
                self.pos += 1;
                Ok(SquareClass::generator(i))
            }
            _ => Err(self.fail("expected 1 or a generator")),
        }
    }

    fn entry(&mut self) -> Result<SquareClass, ParseError> {
        if *self.peek() == Tok::Minus {
            self.pos += 1;
        }
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.pos += 1;
            acc = acc.mul(self.factor()?);
        }
        Ok(acc)
    }

    fn entries(&mut self) -> Result<Vec<(SquareClass, usize)>, ParseError> {
        let at = self.pos;
        let mut out = vec![(self.entry()?, at)];
        while *self.peek() == Tok::Comma {
            self.pos += 1;
            let at = self.pos;
            out.push((self.entry()?, at));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<WittClass, WittError> {
        match *self.peek() {
            Tok::Zero => {
                self.pos += 1;
                Ok(WittClass::zero(self.k))
            }
            Tok::Open => {
                self.pos += 1;
                let entries = self.entries()?;
                self.expect(Tok::Close, "`>`")?;
                Ok(WittClass::diagonal(self.k, entries.into_iter().map(|e| e.0)))
            }
            Tok::DoubleOpen => {
                let open = self.pos;
                self.pos += 1;
                let entries = self.entries()?;
                self.expect(Tok::DoubleClose, "`>>`")?;
                let symbol = PfisterSymbol::new(entries.iter().map(|e| e.0).collect())
                    .map_err(|err| {
                        let bad = entries
                            .iter()
                            .enumerate()
                            .find(|(i, e)| e.0.is_one() || entries[..*i].iter().any(|f| f.0 == e.0))
                            .map_or(open, |(_, e)| e.1);
                        let (_, position, token) = &self.toks[bad];
                        WittError::Parse(ParseError {
                            position: *position,
                            token: token.clone(),
                            message: err.to_string(),
                        })
                    })?;
                pfister_class(self.k, &symbol)
            }
            _ => Err(self.fail("expected `<`, `<<` or 0").into()),
        }
    }

    fn expr(&mut self) -> Result<WittClass, WittError> {
        let mut acc = self.term()?;
        while *self.peek() == Tok::Plus {
            self.pos += 1;
            acc = witt_add(&acc, &self.term()?)?;
        }
        if *self.peek() != Tok::End {
            return Err(self.fail("expected `+` or end of input").into());
        }
        Ok(acc)
    }
}

/// Parses a single square class such as `a1*a3` or `1`.
pub fn parse_square_class(src: &str, k: usize) -> Result<SquareClass, WittError> {
    super::check_ambient(k)?;
    let toks = Lexer::run(src)?;
    let mut parser = Parser { toks, pos: 0, k };
    let x = parser.entry()?;
    if *parser.peek() != Tok::End {
        return Err(parser.fail("expected end of input").into());
    }
    Ok(x)
}

/// Parses a Witt class over the model with k generators.
pub fn parse_class(src: &str, k: usize) -> Result<WittClass, WittError> {
    super::check_ambient(k)?;
    let toks = Lexer::run(src)?;
    Parser { toks, pos: 0, k }.expr()
}
