//! Text formats for signatures, structures, assignments and Skolem tables.
//!
//! ```text
//! signature { arguments: a, b; relation q(a, b); relation s(a); }
//! structure { domain: d0, d1; q: [a=d0, b=d0], [a=d0, b=d1]; s: [a=d1]; }
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolean::Bool;
use crate::model::{Assignment, LanguageSignature, ModelError, RelationalStructure, Symbol, TupleFunction};
use crate::skolem::SkolemMap;
use crate::syntax::{
    parse_formula, DerivedRelation, Formula, Lexer, ParseError, ParseErrorKind, QuantPrefix, Quantifier, Tok, Token,
};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

impl FormatError {
    /// Parse errors are usage-level; the rest are semantic.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, FormatError::Parse(_) | FormatError::Json(_))
    }
}

struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Self { tokens: Lexer::tokenize(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn error(&self, message: String) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError { line: t.line, column: t.column, kind: ParseErrorKind::Syntax(message) }
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {tok}, found {}", self.peek())))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => Err(self.error(format!("expected a name, found {other}"))),
        }
    }

    fn symbol(&mut self) -> Result<Symbol, ParseError> {
        let at = self.pos;
        let s = self.ident()?;
        Symbol::new(&s).map_err(|_| {
            let t = &self.tokens[at];
            ParseError { line: t.line, column: t.column, kind: ParseErrorKind::Syntax(format!("invalid name `{s}`")) }
        })
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.bump();
                Ok(())
            }
            other => Err(self.error(format!("expected `{word}`, found {other}"))),
        }
    }

    fn symbol_list(&mut self, end: Tok) -> Result<Vec<Symbol>, ParseError> {
        let mut out = Vec::new();
        if *self.peek() == end {
            return Ok(out);
        }
        out.push(self.symbol()?);
        while self.eat(&Tok::Comma) {
            out.push(self.symbol()?);
        }
        Ok(out)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", self.peek())))
        }
    }
}

/// Parses and validates a signature file.
pub fn parse_signature(text: &str) -> Result<LanguageSignature, FormatError> {
    let mut c = Cursor::new(text)?;
    c.keyword("signature")?;
    c.expect(Tok::LBrace)?;
    c.keyword("arguments")?;
    c.expect(Tok::Colon)?;
    let arguments = c.symbol_list(Tok::Semi)?;
    c.expect(Tok::Semi)?;
    let mut relations: Vec<(Symbol, Vec<Symbol>)> = Vec::new();
    while *c.peek() != Tok::RBrace {
        c.keyword("relation")?;
        let name = c.symbol()?;
        c.expect(Tok::LParen)?;
        let args = c.symbol_list(Tok::RParen)?;
        c.expect(Tok::RParen)?;
        c.expect(Tok::Semi)?;
        if relations.iter().any(|(r, _)| *r == name) {
            return Err(FormatError::Invalid(format!("relation `{name}` declared twice")));
        }
        relations.push((name, args));
    }
    c.expect(Tok::RBrace)?;
    c.finish()?;
    let rels = relations.into_iter().map(|(r, a)| (r, a.into_iter().collect::<BTreeSet<_>>()));
    Ok(LanguageSignature::new(arguments, rels)?)
}

pub fn write_signature(sig: &LanguageSignature) -> String {
    let mut out = String::from("signature {\n  arguments: ");
    out.push_str(&crate::model::join(&sig.arguments().iter().collect::<Vec<_>>()));
    out.push_str(";\n");
    for r in sig.relations() {
        let args: Vec<&Symbol> = sig.args_of(r).into_iter().flatten().collect();
        let _ = writeln!(out, "  relation {r}({});", crate::model::join(&args));
    }
    out.push_str("}\n");
    out
}

/// Parses a structure file against `sig` and validates it.
pub fn parse_structure(text: &str, sig: &LanguageSignature) -> Result<RelationalStructure, FormatError> {
    let mut c = Cursor::new(text)?;
    c.keyword("structure")?;
    c.expect(Tok::LBrace)?;
    c.keyword("domain")?;
    c.expect(Tok::Colon)?;
    let domain = c.symbol_list(Tok::Semi)?;
    c.expect(Tok::Semi)?;
    let mut relations: BTreeMap<Symbol, BTreeSet<TupleFunction>> = BTreeMap::new();
    while *c.peek() != Tok::RBrace {
        let name = c.symbol()?;
        c.expect(Tok::Colon)?;
        let set = relations.entry(name).or_default();
        if *c.peek() != Tok::Semi {
            loop {
                c.expect(Tok::LBracket)?;
                let mut pairs = Vec::new();
                if *c.peek() != Tok::RBracket {
                    loop {
                        let a = c.symbol()?;
                        c.expect(Tok::Eq)?;
                        pairs.push((a, c.symbol()?));
                        if !c.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                c.expect(Tok::RBracket)?;
                set.insert(TupleFunction::from_pairs(pairs));
                if !c.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        c.expect(Tok::Semi)?;
    }
    c.expect(Tok::RBrace)?;
    c.finish()?;
    Ok(RelationalStructure::new(sig, domain, relations)?)
}

/// Text form of a structure; empty relations are omitted.
pub fn write_structure(str: &RelationalStructure) -> String {
    let mut out = String::from("structure {\n  domain: ");
    out.push_str(&crate::model::join(&str.domain().iter().collect::<Vec<_>>()));
    out.push_str(";\n");
    for (r, tuples) in str.relations() {
        if tuples.is_empty() {
            continue;
        }
        let items: Vec<String> = tuples
            .iter()
            .map(|t| format!("[{}]", t.iter().map(|(a, d)| format!("{a}={d}")).collect::<Vec<_>>().join(", ")))
            .collect();
        let _ = writeln!(out, "  {r}: {};", items.join(", "));
    }
    out.push_str("}\n");
    out
}

/// Parses `name=element` pairs separated by commas.
pub fn parse_assignment(text: &str) -> Result<Assignment, FormatError> {
    let mut c = Cursor::new(text)?;
    let mut pairs = Vec::new();
    if *c.peek() != Tok::Eof {
        loop {
            let p = c.symbol()?;
            c.expect(Tok::Eq)?;
            pairs.push((p, c.symbol()?));
            if !c.eat(&Tok::Comma) {
                break;
            }
        }
    }
    c.finish()?;
    Ok(Assignment::from_pairs(pairs))
}

/// JSON form of a Skolem map table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SkolemTableFile {
    pub prefix: Vec<(String, String)>,
    pub carrier: Vec<String>,
    pub table: Vec<SkolemTableEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SkolemTableEntry {
    pub input: BTreeMap<String, String>,
    pub output: BTreeMap<String, String>,
}

fn symbol(s: &str) -> Result<Symbol, FormatError> {
    Symbol::new(s).map_err(|e| FormatError::Invalid(e.to_string()))
}

fn assignment(map: &BTreeMap<String, String>) -> Result<Assignment, FormatError> {
    map.iter().map(|(k, v)| Ok((symbol(k)?, symbol(v)?))).collect()
}

pub fn parse_skolem_table(text: &str) -> Result<SkolemMap, FormatError> {
    let file: SkolemTableFile = serde_json::from_str(text)?;
    let prefix = file
        .prefix
        .iter()
        .map(|(q, v)| {
            let q = match q.as_str() {
                "exists" => Quantifier::Exists,
                "forall" => Quantifier::Forall,
                other => return Err(FormatError::Invalid(format!("unknown quantifier `{other}`"))),
            };
            Ok((q, symbol(v)?))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let prefix = QuantPrefix::new(prefix).map_err(|e| FormatError::Invalid(e.to_string()))?;
    let carrier = file.carrier.iter().map(|d| symbol(d)).collect::<Result<Vec<_>, _>>()?;
    let mut table = BTreeMap::new();
    for entry in &file.table {
        table.insert(assignment(&entry.input)?, assignment(&entry.output)?);
    }
    Ok(SkolemMap { prefix, carrier, table })
}

pub fn write_skolem_table(theta: &SkolemMap) -> String {
    let strings = |a: &Assignment| a.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    let file = SkolemTableFile {
        prefix: theta.prefix.iter().map(|(q, v)| (q.keyword().to_string(), v.to_string())).collect(),
        carrier: theta.carrier.iter().map(|d| d.to_string()).collect(),
        table: theta.table.iter().map(|(i, o)| SkolemTableEntry { input: strings(i), output: strings(o) }).collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

fn formula_to_bool(phi: &Formula) -> Result<Bool<Symbol>, FormatError> {
    Ok(match phi {
        Formula::Rel(r) => Bool::atom(r.clone()),
        Formula::Not(x) => Bool::not(formula_to_bool(x)?),
        Formula::And(l, r) => Bool::and(formula_to_bool(l)?, formula_to_bool(r)?),
        Formula::Or(l, r) => Bool::or(formula_to_bool(l)?, formula_to_bool(r)?),
        _ => return Err(FormatError::Invalid(format!("not quantifier- and binding-free: {phi}"))),
    })
}

/// Parses a Boolean combination of relations over one argument set.
pub fn parse_derived_relation(text: &str, sig: &LanguageSignature) -> Result<DerivedRelation, FormatError> {
    let expr = formula_to_bool(&parse_formula(text, sig)?)?;
    DerivedRelation::new(expr, sig).map_err(|e| FormatError::Invalid(e.to_string()))
}
