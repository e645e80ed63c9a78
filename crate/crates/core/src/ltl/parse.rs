//! Hand-rolled lexer and recursive-descent parser for the concrete syntax.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! iff     := implies ('<->' iff)?                  (right-assoc)
//! implies := or ('->' implies)?                    (right-assoc)
//! or      := and ('||' and)*                       (left-assoc)
//! and     := until ('&&' until)*                   (left-assoc)
//! until   := unary (('U' | 'W' | 'R') until)?      (right-assoc)
//! unary   := ('!' | 'X' | 'F' | 'G') unary | primary
//! primary := 'true' | 'false' | atom | '(' iff ')'
//! ```
//!
//! Atoms are `[a-zA-Z_][a-zA-Z0-9_]*`; the operator letters and constants are
//! reserved. Whitespace is insignificant.

use thiserror::Error;

use super::{Alphabet, BinaryOp, Formula, UnaryOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: u32, col: u32, message: String },
    #[error("unknown atom `{name}` at {line}:{col}")]
    UnknownAtom { name: String, line: u32, col: u32 },
}

/// Parses `text` into a formula; atoms are accepted as written.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    Parser::new(text, None)?.parse_all()
}

/// Parses `text`, rejecting atoms that are not in `alphabet`.
pub fn parse_with_alphabet(text: &str, alphabet: &Alphabet) -> Result<Formula, ParseError> {
    Parser::new(text, Some(alphabet.clone()))?.parse_all()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Not,
    Next,
    Eventually,
    Always,
    And,
    Or,
    Implies,
    Iff,
    Until,
    WeakUntil,
    Release,
    Const(bool),
    Ident(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Not => "`!`".into(),
            Tok::Next => "`X`".into(),
            Tok::Eventually => "`F`".into(),
            Tok::Always => "`G`".into(),
            Tok::And => "`&&`".into(),
            Tok::Or => "`||`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Until => "`U`".into(),
            Tok::WeakUntil => "`W`".into(),
            Tok::Release => "`R`".into(),
            Tok::Const(b) => format!("`{b}`"),
            Tok::Ident(name) => format!("`{name}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '(' => {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::LParen, line: tline, col: tcol });
            }
            ')' => {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::RParen, line: tline, col: tcol });
            }
            '!' => {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::Not, line: tline, col: tcol });
            }
            '&' => {
                bump(&mut chars);
                if chars.peek() == Some(&'&') {
                    bump(&mut chars);
                    out.push(Spanned { tok: Tok::And, line: tline, col: tcol });
                } else {
                    return Err(ParseError::Syntax {
                        line: tline,
                        col: tcol,
                        message: "expected `&&`".into(),
                    });
                }
            }
            '|' => {
                bump(&mut chars);
                if chars.peek() == Some(&'|') {
                    bump(&mut chars);
                    out.push(Spanned { tok: Tok::Or, line: tline, col: tcol });
                } else {
                    return Err(ParseError::Syntax {
                        line: tline,
                        col: tcol,
                        message: "expected `||`".into(),
                    });
                }
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    out.push(Spanned { tok: Tok::Implies, line: tline, col: tcol });
                } else {
                    return Err(ParseError::Syntax {
                        line: tline,
                        col: tcol,
                        message: "expected `->`".into(),
                    });
                }
            }
            '<' => {
                bump(&mut chars);
                if chars.peek() == Some(&'-') {
                    bump(&mut chars);
                    if chars.peek() == Some(&'>') {
                        bump(&mut chars);
                        out.push(Spanned { tok: Tok::Iff, line: tline, col: tcol });
                    } else {
                        return Err(ParseError::Syntax {
                            line: tline,
                            col: tcol,
                            message: "expected `<->`".into(),
                        });
                    }
                } else {
                    return Err(ParseError::Syntax {
                        line: tline,
                        col: tcol,
                        message: "expected `<->`".into(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                let tok = match ident.as_str() {
                    "X" => Tok::Next,
                    "F" => Tok::Eventually,
                    "G" => Tok::Always,
                    "U" => Tok::Until,
                    "W" => Tok::WeakUntil,
                    "R" => Tok::Release,
                    "true" => Tok::Const(true),
                    "false" => Tok::Const(false),
                    _ => Tok::Ident(ident),
                };
                out.push(Spanned { tok, line: tline, col: tcol });
            }
            other => {
                return Err(ParseError::Syntax {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    alphabet: Option<Alphabet>,
}

impl Parser {
    fn new(text: &str, alphabet: Option<Alphabet>) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: lex(text)?,
            pos: 0,
            alphabet,
        })
    }

    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            message: message.into(),
        }
    }

    fn parse_all(&mut self) -> Result<Formula, ParseError> {
        let f = self.parse_iff()?;
        match &self.peek().tok {
            Tok::Eof => Ok(f),
            other => Err(self.error_here(format!("unexpected {}", other.describe()))),
        }
    }

    fn parse_iff(&mut self) -> Result<Formula, ParseError> {
        let left = self.parse_implies()?;
        if self.peek().tok == Tok::Iff {
            self.advance();
            let right = self.parse_iff()?;
            Ok(Formula::iff(left, right))
        } else {
            Ok(left)
        }
    }

    fn parse_implies(&mut self) -> Result<Formula, ParseError> {
        let left = self.parse_or()?;
        if self.peek().tok == Tok::Implies {
            self.advance();
            let right = self.parse_implies()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.parse_and()?;
        while self.peek().tok == Tok::Or {
            self.advance();
            let right = self.parse_and()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.parse_until()?;
        while self.peek().tok == Tok::And {
            self.advance();
            let right = self.parse_until()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn parse_until(&mut self) -> Result<Formula, ParseError> {
        let left = self.parse_unary()?;
        let op = match self.peek().tok {
            Tok::Until => BinaryOp::Until,
            Tok::WeakUntil => BinaryOp::WeakUntil,
            Tok::Release => BinaryOp::Release,
            _ => return Ok(left),
        };
        self.advance();
        let right = self.parse_until()?;
        Ok(Formula::Binary(op, Box::new(left), Box::new(right)))
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        let op = match self.peek().tok {
            Tok::Not => Some(UnaryOp::Not),
            Tok::Next => Some(UnaryOp::Next),
            Tok::Eventually => Some(UnaryOp::Eventually),
            Tok::Always => Some(UnaryOp::Always),
            _ => None,
        };
        if let Some(op) = op {
            self.advance();
            let child = self.parse_unary()?;
            Ok(Formula::Unary(op, Box::new(child)))
        } else {
            self.parse_primary()
        }
    }

    fn parse_primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().tok.clone() {
            Tok::Const(b) => {
                self.advance();
                Ok(Formula::Const(b))
            }
            Tok::Ident(name) => {
                let t = self.advance();
                if let Some(alphabet) = &self.alphabet {
                    if !alphabet.contains(&name) {
                        return Err(ParseError::UnknownAtom {
                            name,
                            line: t.line,
                            col: t.col,
                        });
                    }
                }
                Ok(Formula::Atom(name))
            }
            Tok::LParen => {
                self.advance();
                let inner = self.parse_iff()?;
                if self.peek().tok == Tok::RParen {
                    self.advance();
                    Ok(inner)
                } else {
                    Err(self.error_here("expected `)`"))
                }
            }
            other => Err(self.error_here(format!(
                "expected a formula, found {}",
                other.describe()
            ))),
        }
    }
}
