//! LTL abstract syntax: formulas, token streams, subformula paths, and the
//! declared alphabet of atomic propositions.
//!
//! Derived connectives (`&&`, `->`, `<->`, `F`, `G`, `W`, `R`) are first-class
//! node kinds rather than sugar: the syntactic operators and the token-level
//! similarity metric work on the surface structure the user wrote.

mod parse;

pub use parse::{parse, parse_with_alphabet, ParseError};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Unary connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnaryOp {
    Not,
    Next,
    Eventually,
    Always,
}

impl UnaryOp {
    pub const ALL: [UnaryOp; 4] = [
        UnaryOp::Not,
        UnaryOp::Next,
        UnaryOp::Eventually,
        UnaryOp::Always,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Not => "!",
            UnaryOp::Next => "X",
            UnaryOp::Eventually => "F",
            UnaryOp::Always => "G",
        }
    }
}

/// Binary connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinaryOp {
    And,
    Or,
    Implies,
    Iff,
    Until,
    WeakUntil,
    Release,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::And => "&&",
            BinaryOp::Or => "||",
            BinaryOp::Implies => "->",
            BinaryOp::Iff => "<->",
            BinaryOp::Until => "U",
            BinaryOp::WeakUntil => "W",
            BinaryOp::Release => "R",
        }
    }
}

/// An LTL formula over named atomic propositions.
///
/// Formulas are immutable values: every editing operation returns a fresh
/// tree and leaves its input untouched.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Const(bool),
    Atom(String),
    Unary(UnaryOp, Box<Formula>),
    Binary(BinaryOp, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn tt() -> Self {
        Formula::Const(true)
    }

    pub fn ff() -> Self {
        Formula::Const(false)
    }

    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Unary(UnaryOp::Not, Box::new(f))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Unary(UnaryOp::Next, Box::new(f))
    }

    pub fn eventually(f: Formula) -> Self {
        Formula::Unary(UnaryOp::Eventually, Box::new(f))
    }

    pub fn always(f: Formula) -> Self {
        Formula::Unary(UnaryOp::Always, Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::Binary(BinaryOp::And, Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Binary(BinaryOp::Or, Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Binary(BinaryOp::Implies, Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::Binary(BinaryOp::Iff, Box::new(l), Box::new(r))
    }

    pub fn until(l: Formula, r: Formula) -> Self {
        Formula::Binary(BinaryOp::Until, Box::new(l), Box::new(r))
    }

    pub fn weak_until(l: Formula, r: Formula) -> Self {
        Formula::Binary(BinaryOp::WeakUntil, Box::new(l), Box::new(r))
    }

    pub fn release(l: Formula, r: Formula) -> Self {
        Formula::Binary(BinaryOp::Release, Box::new(l), Box::new(r))
    }

    /// Left-associated conjunction of `parts`; `true` when `parts` is empty.
    pub fn conjoin(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut iter = parts.into_iter();
        match iter.next() {
            None => Formula::tt(),
            Some(first) => iter.fold(first, Formula::and),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Atom(_) => 1,
            Formula::Unary(_, c) => 1 + c.node_count(),
            Formula::Binary(_, l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    /// Names of the atoms occurring in the formula, sorted and deduplicated.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Const(_) => {}
            Formula::Atom(a) => {
                out.insert(a.as_str());
            }
            Formula::Unary(_, c) => c.collect_atoms(out),
            Formula::Binary(_, l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Pre-order enumeration of every node, paired with its path from the
    /// root. The root itself comes first; the length equals [`node_count`].
    ///
    /// [`node_count`]: Formula::node_count
    pub fn subformulas(&self) -> Vec<(Path, &Formula)> {
        fn walk<'a>(f: &'a Formula, prefix: &mut Vec<u8>, out: &mut Vec<(Path, &'a Formula)>) {
            out.push((Path(prefix.clone()), f));
            match f {
                Formula::Const(_) | Formula::Atom(_) => {}
                Formula::Unary(_, c) => {
                    prefix.push(0);
                    walk(c, prefix, out);
                    prefix.pop();
                }
                Formula::Binary(_, l, r) => {
                    prefix.push(0);
                    walk(l, prefix, out);
                    prefix.pop();
                    prefix.push(1);
                    walk(r, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::with_capacity(self.node_count());
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn subformula_at(&self, path: &Path) -> Result<&Formula, PathError> {
        let mut cur = self;
        for (step, &idx) in path.0.iter().enumerate() {
            cur = match (cur, idx) {
                (Formula::Unary(_, c), 0) => c,
                (Formula::Binary(_, l, _), 0) => l,
                (Formula::Binary(_, _, r), 1) => r,
                _ => return Err(PathError::Invalid { step }),
            };
        }
        Ok(cur)
    }

    /// Returns a copy of `self` with the node addressed by `path` replaced by
    /// `replacement`. The input tree is not modified.
    pub fn replace_at(&self, path: &Path, replacement: Formula) -> Result<Formula, PathError> {
        let mut out = self.clone();
        let mut cur = &mut out;
        for (step, &idx) in path.0.iter().enumerate() {
            cur = match (cur, idx) {
                (Formula::Unary(_, c), 0) => c.as_mut(),
                (Formula::Binary(_, l, _), 0) => l.as_mut(),
                (Formula::Binary(_, _, r), 1) => r.as_mut(),
                _ => return Err(PathError::Invalid { step }),
            };
        }
        *cur = replacement;
        Ok(out)
    }

    /// Deterministic canonical token stream. Unary operators always
    /// parenthesize their operand; binary operands are parenthesized exactly
    /// when they are themselves binary, which makes every grouping explicit
    /// and the stream independent of operator precedence.
    pub fn render(&self) -> TokenStream {
        fn emit(f: &Formula, out: &mut Vec<Token>) {
            match f {
                Formula::Const(b) => out.push(Token::Const(*b)),
                Formula::Atom(a) => out.push(Token::Atom(a.clone())),
                Formula::Unary(op, c) => {
                    out.push(Token::Unary(*op));
                    out.push(Token::LParen);
                    emit(c, out);
                    out.push(Token::RParen);
                }
                Formula::Binary(op, l, r) => {
                    emit_side(l, out);
                    out.push(Token::Binary(*op));
                    emit_side(r, out);
                }
            }
        }
        fn emit_side(f: &Formula, out: &mut Vec<Token>) {
            if matches!(f, Formula::Binary(..)) {
                out.push(Token::LParen);
                emit(f, out);
                out.push(Token::RParen);
            } else {
                emit(f, out);
            }
        }
        let mut tokens = Vec::new();
        emit(self, &mut tokens);
        TokenStream(tokens)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render().join())
    }
}

/// Address of a subformula: child indices from the root, `0` for the unary or
/// left child and `1` for the right child.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Path(Vec<u8>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn from_indices(indices: impl IntoIterator<Item = u8>) -> Self {
        Path(indices.into_iter().collect())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path addresses a missing child at step {step}")]
    Invalid { step: usize },
}

/// One token of the canonical rendering: an operator symbol, a parenthesis,
/// an atom name, or a constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Token {
    LParen,
    RParen,
    Unary(UnaryOp),
    Binary(BinaryOp),
    Atom(String),
    Const(bool),
}

impl Token {
    pub fn text(&self) -> &str {
        match self {
            Token::LParen => "(",
            Token::RParen => ")",
            Token::Unary(op) => op.symbol(),
            Token::Binary(op) => op.symbol(),
            Token::Atom(a) => a,
            Token::Const(true) => "true",
            Token::Const(false) => "false",
        }
    }
}

/// An ordered token sequence; equal formulas render to equal streams.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenStream(Vec<Token>);

impl TokenStream {
    pub fn new(tokens: Vec<Token>) -> Self {
        TokenStream(tokens)
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extend(&mut self, other: TokenStream) {
        self.0.extend(other.0);
    }

    /// Concrete text of the stream; parses back to the rendered formula.
    pub fn join(&self) -> String {
        let mut out = String::new();
        let mut prev: Option<&Token> = None;
        for tok in &self.0 {
            if let Some(p) = prev {
                let no_space =
                    matches!(p, Token::LParen | Token::Unary(_)) || matches!(tok, Token::RParen);
                if !no_space {
                    out.push(' ');
                }
            }
            out.push_str(tok.text());
            prev = Some(tok);
        }
        out
    }
}

/// Upper bound on the number of declared atoms; states are 32-bit bitsets.
pub const MAX_ATOMS: usize = 32;

const RESERVED: [&str; 8] = ["X", "F", "G", "U", "W", "R", "true", "false"];

/// The declared atomic propositions, in declaration order.
///
/// The order is meaningful: it fixes the bit layout of states and the
/// deterministic enumeration order of the bounded engines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if !is_valid_atom_name(&name) {
                return Err(AlphabetError::InvalidName(name));
            }
            if RESERVED.contains(&name.as_str()) {
                return Err(AlphabetError::Reserved(name));
            }
            if out.contains(&name) {
                return Err(AlphabetError::Duplicate(name));
            }
            out.push(name);
        }
        if out.len() > MAX_ATOMS {
            return Err(AlphabetError::TooLarge(out.len()));
        }
        Ok(Alphabet { names: out })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }
}

fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("`{0}` is not a valid atom name")]
    InvalidName(String),
    #[error("`{0}` is a reserved word and cannot be an atom")]
    Reserved(String),
    #[error("atom `{0}` is declared twice")]
    Duplicate(String),
    #[error("alphabet has {0} atoms, more than the supported {MAX_ATOMS}")]
    TooLarge(usize),
}
