//! Lexer and recursive-descent parser for the formula surface syntax.
//!
//! Precedence, tightest first: `~` and bindings `(a, v)`, then `&`, `|`,
//! `->` (right associative), `<->`. Quantifiers `exists v.` / `forall v.`
//! extend as far to the right as possible. `r(x, y)` is sugar for bindings of
//! the arguments of `r`, taken in lexicographic order unless an explicit
//! argument order is supplied.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::{Formula, Quantifier};
use crate::model::{LanguageSignature, Symbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical(char),
    Syntax(String),
    UnknownRelation(String),
    UnknownArgument(String),
    VariableClash(String),
    Arity { relation: String, expected: usize, found: usize },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lexical(c) => write!(f, "unexpected character {c:?}"),
            Self::Syntax(m) => write!(f, "syntax error: {m}"),
            Self::UnknownRelation(r) => write!(f, "unknown relation `{r}`"),
            Self::UnknownArgument(a) => write!(f, "unknown argument `{a}`"),
            Self::VariableClash(v) => {
                write!(f, "variable `{v}` clashes with an argument, relation or keyword")
            }
            Self::Arity { relation, expected, found } => {
                write!(f, "relation `{relation}` takes {expected} positional arguments, found {found}")
            }
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    Semi,
    Eq,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Comma => "`,`",
            Tok::Dot => "`.`",
            Tok::Colon => "`:`",
            Tok::Semi => "`;`",
            Tok::Eq => "`=`",
            Tok::Tilde => "`~`",
            Tok::Amp => "`&`",
            Tok::Pipe => "`|`",
            Tok::Arrow => "`->`",
            Tok::DArrow => "`<->`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// Tokenizer shared by the formula parser and the signature/structure files.
/// `#` starts a comment running to the end of the line.
pub(crate) struct Lexer;

impl Lexer {
    pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
        while i < chars.len() {
            let c = chars[i];
            let (tl, tc) = (line, col);
            let adv = |n: usize, i: &mut usize, col: &mut usize| {
                *i += n;
                *col += n;
            };
            if c == '\n' {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            if c.is_whitespace() {
                adv(1, &mut i, &mut col);
                continue;
            }
            if c == '#' {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            let single = match c {
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                '[' => Some(Tok::LBracket),
                ']' => Some(Tok::RBracket),
                '{' => Some(Tok::LBrace),
                '}' => Some(Tok::RBrace),
                ',' => Some(Tok::Comma),
                '.' => Some(Tok::Dot),
                ':' => Some(Tok::Colon),
                ';' => Some(Tok::Semi),
                '=' => Some(Tok::Eq),
                '~' => Some(Tok::Tilde),
                '&' => Some(Tok::Amp),
                '|' => Some(Tok::Pipe),
                _ => None,
            };
            if let Some(tok) = single {
                out.push(Token { tok, line: tl, column: tc });
                adv(1, &mut i, &mut col);
                continue;
            }
            if c == '-' && chars.get(i + 1) == Some(&'>') {
                out.push(Token { tok: Tok::Arrow, line: tl, column: tc });
                adv(2, &mut i, &mut col);
                continue;
            }
            if c == '<' && chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                out.push(Token { tok: Tok::DArrow, line: tl, column: tc });
                adv(3, &mut i, &mut col);
                continue;
            }
            if c.is_ascii_alphanumeric() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                    col += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: tl, column: tc });
                continue;
            }
            return Err(ParseError { line: tl, column: tc, kind: ParseErrorKind::Lexical(c) });
        }
        out.push(Token { tok: Tok::Eof, line, column: col });
        Ok(out)
    }
}

/// Options for the formula parser.
#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Argument order used to expand positional sugar `r(x, y)`. Arguments
    /// not listed sort after the listed ones, lexicographically.
    pub arg_order: Option<Vec<Symbol>>,
}

const KEYWORDS: &[&str] = &["exists", "forall"];

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    sig: &'a LanguageSignature,
    options: &'a ParseOptions,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError { line: t.line, column: t.column, kind }
    }

    fn error_at(&self, t: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError { line: t.line, column: t.column, kind }
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if *self.peek() == tok {
            Ok(self.next())
        } else {
            Err(self.error_here(ParseErrorKind::Syntax(format!("expected {tok}, found {}", self.peek()))))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(Token, String), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((t, s))
            }
            other => Err(self.error_at(&t, ParseErrorKind::Syntax(format!("expected {what}, found {other}")))),
        }
    }

    fn symbol(&self, t: &Token, text: &str) -> Result<Symbol, ParseError> {
        Symbol::new(text).map_err(|_| self.error_at(t, ParseErrorKind::Syntax(format!("invalid name `{text}`"))))
    }

    fn variable(&mut self) -> Result<Symbol, ParseError> {
        let (t, name) = self.ident("a variable")?;
        let v = self.symbol(&t, &name)?;
        if KEYWORDS.contains(&name.as_str()) || self.sig.is_argument(&v) || self.sig.is_relation(&v) {
            return Err(self.error_at(&t, ParseErrorKind::VariableClash(name)));
        }
        Ok(v)
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.implication()?;
        while *self.peek() == Tok::DArrow {
            self.next();
            let right = self.implication()?;
            left = Formula::or(
                Formula::and(left.clone(), right.clone()),
                Formula::and(Formula::not(left), Formula::not(right)),
            );
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.next();
            let right = self.implication()?;
            return Ok(Formula::or(Formula::not(left), right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.next();
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.next();
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn is_binding_ahead(&self) -> bool {
        *self.peek() == Tok::LParen && matches!(self.peek_at(1), Tok::Ident(_)) && *self.peek_at(2) == Tok::Comma
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.next();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(ref k) if k == "exists" || k == "forall" => {
                self.next();
                let q = if k == "exists" { Quantifier::Exists } else { Quantifier::Forall };
                let v = self.variable()?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(Formula::Quant(q, v, Box::new(body)))
            }
            Tok::LParen if self.is_binding_ahead() => {
                self.next();
                let (t, name) = self.ident("an argument")?;
                let a = self.symbol(&t, &name)?;
                if !self.sig.is_argument(&a) {
                    return Err(self.error_at(&t, ParseErrorKind::UnknownArgument(name)));
                }
                self.expect(Tok::Comma)?;
                let v = self.variable()?;
                self.expect(Tok::RParen)?;
                let body = self.unary()?;
                Ok(Formula::bind(a, v, body))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(_) => {
                let (t, name) = self.ident("a relation")?;
                let r = self.symbol(&t, &name)?;
                let Some(args) = self.sig.args_of(&r) else {
                    return Err(self.error_at(&t, ParseErrorKind::UnknownRelation(name)));
                };
                if *self.peek() != Tok::LParen {
                    return Ok(Formula::rel(r));
                }
                self.next();
                let mut vars = vec![self.variable()?];
                while *self.peek() == Tok::Comma {
                    self.next();
                    vars.push(self.variable()?);
                }
                self.expect(Tok::RParen)?;
                let ordered = self.positional_order(args);
                if ordered.len() != vars.len() {
                    return Err(self.error_at(
                        &t,
                        ParseErrorKind::Arity { relation: name, expected: ordered.len(), found: vars.len() },
                    ));
                }
                Ok(Formula::bind_all(ordered.iter().zip(vars.iter()), Formula::rel(r)))
            }
            other => Err(self.error_here(ParseErrorKind::Syntax(format!("expected a formula, found {other}")))),
        }
    }

    fn positional_order(&self, args: &BTreeSet<Symbol>) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = args.iter().cloned().collect();
        if let Some(order) = &self.options.arg_order {
            out.sort_by_key(|a| (order.iter().position(|o| o == a).unwrap_or(usize::MAX), a.clone()));
        }
        out
    }
}

/// Parses one formula, resolving relations and arguments against `sig`.
pub fn parse_formula(text: &str, sig: &LanguageSignature) -> Result<Formula, ParseError> {
    parse_formula_with(text, sig, &ParseOptions::default())
}

pub fn parse_formula_with(text: &str, sig: &LanguageSignature, options: &ParseOptions) -> Result<Formula, ParseError> {
    let tokens = Lexer::tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, sig, options };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error_here(ParseErrorKind::Syntax(format!("unexpected {}", p.peek()))));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::sym;

    fn sig() -> LanguageSignature {
        LanguageSignature::from_literals(&["a", "b"], &[("q", &["a", "b"]), ("r", &["a", "b"]), ("s", &["a"])])
    }

    fn b(a: &str, v: &str, f: Formula) -> Formula {
        Formula::bind(sym(a), sym(v), f)
    }

    fn rel(r: &str) -> Formula {
        Formula::rel(sym(r))
    }

    #[test]
    fn parses_phi1() {
        let f = parse_formula("exists x. forall y. exists z. ((a,x)(b,y)(q | ~s) & (a,y)(b,z) r)", &sig()).unwrap();
        let expected = Formula::exists(
            sym("x"),
            Formula::forall(
                sym("y"),
                Formula::exists(
                    sym("z"),
                    Formula::and(
                        b("a", "x", b("b", "y", Formula::or(rel("q"), Formula::not(rel("s"))))),
                        b("a", "y", b("b", "z", rel("r"))),
                    ),
                ),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn parses_phi2() {
        let f = parse_formula("exists x. (a,x) r", &sig()).unwrap();
        assert_eq!(f, Formula::exists(sym("x"), b("a", "x", rel("r"))));
    }

    #[test]
    fn reports_syntax_error_position() {
        let e = parse_formula("(a,x)(q &", &sig()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(e.line, 1);
        assert_eq!(e.column, 10);
    }

    #[test]
    fn unknown_symbols() {
        let e = parse_formula("exists x. (a,x) p", &sig()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownRelation("p".into()));
        let e = parse_formula("exists x. (c,x) s", &sig()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownArgument("c".into()));
        let e = parse_formula("exists a. s", &sig()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::VariableClash("a".into()));
        let e = parse_formula("s $ q", &sig()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Lexical('$'));
    }

    #[test]
    fn positional_sugar_and_arrows() {
        let s = sig();
        let f = parse_formula("forall x. forall y. q(x, y) -> s(x)", &s).unwrap();
        let expected = Formula::forall(
            sym("x"),
            Formula::forall(
                sym("y"),
                Formula::or(Formula::not(b("a", "x", b("b", "y", rel("q")))), b("a", "x", rel("s"))),
            ),
        );
        assert_eq!(f, expected);

        let f = parse_formula("q <-> r", &s).unwrap();
        let expected =
            Formula::or(Formula::and(rel("q"), rel("r")), Formula::and(Formula::not(rel("q")), Formula::not(rel("r"))));
        assert_eq!(f, expected);

        let e = parse_formula("forall x. q(x)", &s).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Arity { expected: 2, found: 1, .. }));
    }

    #[test]
    fn explicit_argument_order() {
        let s = LanguageSignature::from_literals(&["1", "2", "10"], &[("r", &["1", "10"])]);
        let opts = ParseOptions { arg_order: Some(vec![sym("1"), sym("2"), sym("10")]) };
        let f = parse_formula_with("forall x. forall y. r(x, y)", &s, &opts).unwrap();
        assert_eq!(f, Formula::forall(sym("x"), Formula::forall(sym("y"), b("1", "x", b("10", "y", rel("r"))))));
    }

    #[test]
    fn comments_and_lines() {
        let e = parse_formula("# header\nexists x.\n  (a,x) ) r", &sig()).unwrap_err();
        assert_eq!((e.line, e.column), (3, 9));
    }
}
