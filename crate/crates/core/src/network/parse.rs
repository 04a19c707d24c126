//! Reaction DSL.
//!
//! ```text
//! network := line+
//! line    := chain (";" chain)*
//! chain   := complex (arrow complex)+
//! arrow   := "->[" rate "]" | "<-[" rate "]" | "<=>[" rate "," rate "]"
//! complex := "0" | term ("+" term)*
//! term    := [coefficient] species
//! rate    := (identifier | positive number) ("+" ...)*
//! ```
//!
//! `#` starts a comment. A `# species: A B C` comment fixes the species order;
//! otherwise species are numbered by first appearance.

use num::{Signed, Zero};

use super::{is_valid_species_name, Complex, NetworkError, Rate, ReactionNetwork, ReactionStep};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    Forward,
    Backward,
    Both,
}

#[derive(Debug, Clone)]
enum Tok {
    Ident(String),
    Num(Rational),
    Plus,
    Semi,
    Arrow(Dir, Vec<Rate>),
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Lexer {
    fn col(&self) -> usize {
        self.pos + 1
    }

    fn syntax(&self, column: usize, message: impl Into<String>) -> NetworkError {
        NetworkError::Syntax { line: self.line, column, message: message.into() }
    }

    fn starts_with(&self, s: &str) -> bool {
        let n = s.chars().count();
        self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars())
    }

    fn bracket_body(&mut self, open_col: usize) -> Result<String, NetworkError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos] != ']' {
            self.pos += 1;
        }
        if self.pos == self.chars.len() {
            return Err(self.syntax(open_col, "unterminated rate bracket"));
        }
        let body: String = self.chars[start..self.pos].iter().collect();
        self.pos += 1;
        Ok(body)
    }

    fn rate(&self, text: &str, column: usize) -> Result<Rate, NetworkError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(self.syntax(column, "empty rate"));
        }
        for part in text.split('+') {
            let part = part.trim();
            if !is_valid_species_name(part) {
                match parse_rational(part) {
                    Ok(v) if v.is_zero() || v.is_negative() => {
                        return Err(NetworkError::ZeroRate { line: self.line, column })
                    }
                    Ok(_) => {}
                    Err(_) => return Err(self.syntax(column, format!("bad rate `{part}`"))),
                }
            }
        }
        Rate::parse(text).map_err(|m| self.syntax(column, m))
    }

    fn tokens(&mut self) -> Result<Vec<(usize, Tok)>, NetworkError> {
        let mut out = Vec::new();
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            let col = self.col();
            if c.is_whitespace() {
                self.pos += 1;
            } else if self.starts_with("<=>") {
                self.pos += 3;
                if !self.starts_with("[") {
                    return Err(self.syntax(col, "arrow needs rates `<=>[kf,kb]`"));
                }
                self.pos += 1;
                let body = self.bracket_body(col)?;
                let Some((f, b)) = body.split_once(',') else {
                    return Err(self.syntax(col, "reversible arrow needs two rates"));
                };
                let rates = vec![self.rate(f, col)?, self.rate(b, col)?];
                out.push((col, Tok::Arrow(Dir::Both, rates)));
            } else if self.starts_with("->") || self.starts_with("<-") {
                let dir = if c == '-' { Dir::Forward } else { Dir::Backward };
                self.pos += 2;
                if !self.starts_with("[") {
                    return Err(self.syntax(col, "arrow needs a rate `->[k]`"));
                }
                self.pos += 1;
                let body = self.bracket_body(col)?;
                out.push((col, Tok::Arrow(dir, vec![self.rate(&body, col)?])));
            } else if c == '-' {
                return Err(NetworkError::NegativeCoefficient { line: self.line, column: col });
            } else if c == '+' {
                self.pos += 1;
                out.push((col, Tok::Plus));
            } else if c == ';' {
                self.pos += 1;
                out.push((col, Tok::Semi));
            } else if c.is_ascii_digit() || c == '.' {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_digit() || matches!(self.chars[self.pos], '.' | '/'))
                {
                    self.pos += 1;
                }
                let lit: String = self.chars[start..self.pos].iter().collect();
                let v = parse_rational(&lit).map_err(|_| self.syntax(col, format!("bad coefficient `{lit}`")))?;
                out.push((col, Tok::Num(v)));
            } else if c.is_alphabetic() {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                out.push((col, Tok::Ident(self.chars[start..self.pos].iter().collect())));
            } else {
                return Err(self.syntax(col, format!("unexpected character `{c}`")));
            }
        }
        Ok(out)
    }
}

struct Builder {
    species: Vec<String>,
    steps: Vec<ReactionStep>,
}

impl Builder {
    fn species_index(&mut self, name: &str) -> usize {
        match self.species.iter().position(|s| s == name) {
            Some(i) => i,
            None => {
                self.species.push(name.to_string());
                self.species.len() - 1
            }
        }
    }

    fn chain(&mut self, toks: &[(usize, Tok)], line: usize, end_col: usize) -> Result<(), NetworkError> {
        let syntax = |column: usize, message: &str| NetworkError::Syntax { line, column, message: message.into() };
        let mut pos = 0;
        let mut complexes = Vec::new();
        let mut arrows = Vec::new();
        loop {
            let (cx, next) = self.complex(toks, pos, line, end_col)?;
            complexes.push(cx);
            pos = next;
            match toks.get(pos) {
                None => break,
                Some((_, Tok::Arrow(dir, rates))) => {
                    arrows.push((*dir, rates.clone()));
                    pos += 1;
                }
                Some((col, _)) => return Err(syntax(*col, "expected an arrow")),
            }
        }
        if arrows.is_empty() {
            let col = toks.first().map(|t| t.0).unwrap_or(1);
            return Err(syntax(col, "a reaction needs at least one arrow"));
        }
        for (i, (dir, rates)) in arrows.into_iter().enumerate() {
            let (left, right) = (&complexes[i], &complexes[i + 1]);
            match dir {
                Dir::Forward => self.push(left, right, &rates[0]),
                Dir::Backward => self.push(right, left, &rates[0]),
                Dir::Both => {
                    self.push(left, right, &rates[0]);
                    self.push(right, left, &rates[1]);
                }
            }
        }
        Ok(())
    }

    fn push(&mut self, reactant: &Complex, product: &Complex, rate: &Rate) {
        self.steps.push(ReactionStep { reactant: reactant.clone(), product: product.clone(), rate: rate.clone() });
    }

    fn complex(
        &mut self,
        toks: &[(usize, Tok)],
        mut pos: usize,
        line: usize,
        end_col: usize,
    ) -> Result<(Complex, usize), NetworkError> {
        let syntax = |column: usize, message: &str| NetworkError::Syntax { line, column, message: message.into() };
        let col_at = |p: usize| toks.get(p).map(|t| t.0).unwrap_or(end_col);
        if let Some((_, Tok::Num(n))) = toks.get(pos) {
            if n.is_zero() && !matches!(toks.get(pos + 1), Some((_, Tok::Ident(_)))) {
                return Ok((Complex::empty(), pos + 1));
            }
        }
        let mut pairs = Vec::new();
        loop {
            let mut coeff = Rational::from_integer(1.into());
            if let Some((col, Tok::Num(n))) = toks.get(pos) {
                if n.is_zero() {
                    return Err(syntax(*col, "zero stoichiometric coefficient"));
                }
                coeff = n.clone();
                pos += 1;
            }
            match toks.get(pos) {
                Some((_, Tok::Ident(name))) => {
                    let idx = self.species_index(name);
                    pairs.push((idx, coeff));
                    pos += 1;
                }
                _ => return Err(syntax(col_at(pos), "expected a species name")),
            }
            match toks.get(pos) {
                Some((_, Tok::Plus)) => pos += 1,
                _ => break,
            }
        }
        Ok((Complex::from_pairs(pairs), pos))
    }
}

/// Parses reaction DSL text into a network.
pub fn parse_network(text: &str) -> Result<ReactionNetwork, NetworkError> {
    let mut b = Builder { species: Vec::new(), steps: Vec::new() };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let (code, comment) = match raw.split_once('#') {
            Some((c, rest)) => (c, Some(rest)),
            None => (raw, None),
        };
        if let Some(decl) = comment.and_then(|c| c.trim().strip_prefix("species:")) {
            for name in decl.split_whitespace() {
                if !is_valid_species_name(name) {
                    return Err(NetworkError::InvalidSpeciesName(name.to_string()));
                }
                b.species_index(name);
            }
        }
        let mut lexer = Lexer { chars: code.chars().collect(), pos: 0, line };
        let toks = lexer.tokens()?;
        let end_col = code.chars().count() + 1;
        for chain in toks.split(|(_, t)| matches!(t, Tok::Semi)) {
            if chain.is_empty() {
                continue;
            }
            b.chain(chain, line, end_col)?;
        }
    }
    let net = ReactionNetwork::new(b.species, b.steps)?;
    net.validate()?;
    Ok(net)
}
