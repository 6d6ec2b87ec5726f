//! Text front end for formulas and nested Horn clauses.
//!
//! Operators from tightest to loosest: `~`, `&`, `v`, `->`, `<->`; all binary
//! operators associate to the right. Atoms are decimal numerals (kept as their
//! value) or identifiers (numbered above the largest numeral, in order of
//! first occurrence). `false` is the absurdity constant and `v` is reserved.

use std::collections::HashMap;

use thiserror::Error;

use crate::formula::{Atom, Formula, NestedHorn, Symbols};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unbalanced parentheses at byte {pos}")]
    Unbalanced { pos: usize },
    #[error("atom index {0} is out of range")]
    AtomRange(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Neck,
    Not,
    And,
    Or,
    Imp,
    Iff,
    False,
    Num(u32),
    Ident(String),
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBracket => "'['".into(),
        Tok::RBracket => "']'".into(),
        Tok::Comma => "','".into(),
        Tok::Neck => "':-'".into(),
        Tok::Not => "'~'".into(),
        Tok::And => "'&'".into(),
        Tok::Or => "'v'".into(),
        Tok::Imp => "'->'".into(),
        Tok::Iff => "'<->'".into(),
        Tok::False => "'false'".into(),
        Tok::Num(n) => format!("'{n}'"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'[' => {
                i += 1;
                Tok::LBracket
            }
            b']' => {
                i += 1;
                Tok::RBracket
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'~' => {
                i += 1;
                Tok::Not
            }
            b'&' => {
                i += 1;
                Tok::And
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Imp
            }
            b'<' if text[i..].starts_with("<->") => {
                i += 3;
                Tok::Iff
            }
            b':' if bytes.get(i + 1) == Some(&b'-') => {
                i += 2;
                Tok::Neck
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                let n = digits
                    .parse::<u32>()
                    .map_err(|_| ParseError::AtomRange(digits.to_string()))?;
                Tok::Num(n)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                match &text[start..i] {
                    "v" => Tok::Or,
                    "false" => Tok::False,
                    s => Tok::Ident(s.to_string()),
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: i,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

#[derive(Clone, Debug)]
enum RawLeaf {
    Num(u32),
    Name(String),
}

#[derive(Clone, Debug)]
enum Raw {
    Leaf(RawLeaf),
    False,
    Not(Box<Raw>),
    Bin(Tok, Box<Raw>, Box<Raw>),
}

#[derive(Clone, Debug)]
enum RawHorn {
    Leaf(RawLeaf),
    Rule(RawLeaf, Vec<RawHorn>),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    open: Vec<usize>,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            open: Vec::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        if *self.peek() == Tok::End && !self.open.is_empty() {
            return ParseError::Unbalanced {
                pos: *self.open.last().unwrap(),
            };
        }
        if *self.peek() == Tok::RParen && self.open.is_empty() {
            return ParseError::Unbalanced { pos: self.offset() };
        }
        ParseError::Syntax {
            pos: self.offset(),
            message: format!("expected {wanted}, found {}", describe(self.peek())),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&describe(&tok)))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn iff(&mut self) -> Result<Raw, ParseError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Raw::Bin(Tok::Iff, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Raw, ParseError> {
        let lhs = self.chain(Tok::Or)?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Raw::Bin(Tok::Imp, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    /// `op`-separated chain, nested to the right.
    fn chain(&mut self, op: Tok) -> Result<Raw, ParseError> {
        let mut items = vec![self.chain_item(&op)?];
        while *self.peek() == op {
            self.bump();
            items.push(self.chain_item(&op)?);
        }
        let mut acc = items.pop().unwrap();
        while let Some(item) = items.pop() {
            acc = Raw::Bin(op.clone(), Box::new(item), Box::new(acc));
        }
        Ok(acc)
    }

    fn chain_item(&mut self, op: &Tok) -> Result<Raw, ParseError> {
        if *op == Tok::Or {
            self.chain(Tok::And)
        } else {
            self.neg()
        }
    }

    fn neg(&mut self) -> Result<Raw, ParseError> {
        let at = self.offset();
        if matches!(
            self.peek(),
            Tok::End | Tok::RParen | Tok::RBracket | Tok::Comma | Tok::Neck | Tok::LBracket
        ) || matches!(self.peek(), Tok::And | Tok::Or | Tok::Imp | Tok::Iff)
        {
            return Err(self.unexpected("a formula"));
        }
        match self.bump() {
            Tok::Not => Ok(Raw::Not(Box::new(self.neg()?))),
            Tok::False => Ok(Raw::False),
            Tok::Num(n) => Ok(Raw::Leaf(RawLeaf::Num(n))),
            Tok::Ident(s) => Ok(Raw::Leaf(RawLeaf::Name(s))),
            Tok::LParen => {
                self.open.push(at);
                let f = self.iff()?;
                self.expect(Tok::RParen)?;
                self.open.pop();
                Ok(f)
            }
            _ => unreachable!("rejected above"),
        }
    }

    fn leaf(&mut self) -> Result<RawLeaf, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(RawLeaf::Num(n))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(RawLeaf::Name(s))
            }
            _ => Err(self.unexpected("an atom")),
        }
    }

    fn horn(&mut self) -> Result<RawHorn, ParseError> {
        if *self.peek() == Tok::LParen {
            let at = self.offset();
            self.bump();
            self.open.push(at);
            let h = self.horn()?;
            self.expect(Tok::RParen)?;
            self.open.pop();
            return Ok(h);
        }
        let head = self.leaf()?;
        if *self.peek() != Tok::Neck {
            return Ok(RawHorn::Leaf(head));
        }
        self.bump();
        self.expect(Tok::LBracket)?;
        let mut body = vec![self.horn()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            body.push(self.horn()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(RawHorn::Rule(head, body))
    }
}

/// Assigns atom indices: numerals keep their value, names are numbered above
/// the largest numeral in order of first occurrence.
struct AtomTable {
    base: u32,
    names: HashMap<String, u32>,
    symbols: Symbols,
}

impl AtomTable {
    fn new(max_num: Option<u32>) -> AtomTable {
        AtomTable {
            base: max_num.map_or(0, |m| m + 1),
            names: HashMap::new(),
            symbols: Symbols::new(),
        }
    }

    fn atom(&mut self, leaf: &RawLeaf) -> Atom {
        match leaf {
            RawLeaf::Num(n) => Atom(*n),
            RawLeaf::Name(s) => {
                if let Some(&i) = self.names.get(s) {
                    return Atom(i);
                }
                let i = self.base + self.names.len() as u32;
                self.names.insert(s.clone(), i);
                self.symbols.insert(Atom(i), s.clone());
                Atom(i)
            }
        }
    }
}

fn raw_max_num(r: &Raw) -> Option<u32> {
    match r {
        Raw::Leaf(RawLeaf::Num(n)) => Some(*n),
        Raw::Leaf(RawLeaf::Name(_)) | Raw::False => None,
        Raw::Not(a) => raw_max_num(a),
        Raw::Bin(_, a, b) => raw_max_num(a).max(raw_max_num(b)),
    }
}

fn horn_max_num(r: &RawHorn) -> Option<u32> {
    let leaf = |l: &RawLeaf| match l {
        RawLeaf::Num(n) => Some(*n),
        RawLeaf::Name(_) => None,
    };
    match r {
        RawHorn::Leaf(l) => leaf(l),
        RawHorn::Rule(h, body) => body.iter().map(horn_max_num).fold(leaf(h), Option::max),
    }
}

fn build(r: &Raw, table: &mut AtomTable) -> Formula {
    match r {
        Raw::Leaf(l) => Formula::Atom(table.atom(l)),
        Raw::False => Formula::False,
        Raw::Not(a) => Formula::not(build(a, table)),
        Raw::Bin(op, a, b) => {
            let (a, b) = (build(a, table), build(b, table));
            match op {
                Tok::Imp => Formula::imp(a, b),
                Tok::And => Formula::and(a, b),
                Tok::Or => Formula::or(a, b),
                _ => Formula::iff(a, b),
            }
        }
    }
}

fn build_horn(r: &RawHorn, table: &mut AtomTable) -> NestedHorn {
    match r {
        RawHorn::Leaf(l) => NestedHorn::Atom(table.atom(l)),
        RawHorn::Rule(h, body) => {
            let head = table.atom(h);
            NestedHorn::rule(
                head,
                body.iter()
                    .map(|b| build_horn(b, table))
                    .collect::<Vec<_>>(),
            )
        }
    }
}

/// Parses a formula, returning it with the names of identifier atoms.
pub fn parse_formula_with_symbols(text: &str) -> Result<(Formula, Symbols), ParseError> {
    let mut p = Parser::new(text)?;
    let raw = p.iff()?;
    p.finish()?;
    let mut table = AtomTable::new(raw_max_num(&raw));
    let f = build(&raw, &mut table);
    Ok((f, table.symbols))
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_with_symbols(text).map(|(f, _)| f)
}

/// Parses `(h:-[b1,...,bn])` clauses; a bare atom is a clause with no body.
pub fn parse_horn_with_symbols(text: &str) -> Result<(NestedHorn, Symbols), ParseError> {
    let mut p = Parser::new(text)?;
    let raw = p.horn()?;
    p.finish()?;
    let mut table = AtomTable::new(horn_max_num(&raw));
    let h = build_horn(&raw, &mut table);
    Ok((h, table.symbols))
}

pub fn parse_horn(text: &str) -> Result<NestedHorn, ParseError> {
    parse_horn_with_symbols(text).map(|(h, _)| h)
}

/// Non-empty, non-comment lines of a corpus file.
pub fn corpus_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}
