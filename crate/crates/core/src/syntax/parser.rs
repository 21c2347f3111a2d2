//! Recursive-descent parser for the ASCII formula grammar.
//!
//! Precedence, loosest first: quantifiers (scope runs to the end of the
//! enclosing group), `->` (right associative), `|`, `&`, then the prefix
//! operators `~`, `[]`, `<>`.

use std::fmt;

use super::{Formula, IdentityKind, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownSymbol(String),
    Arity { name: String, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => {
                write!(f, "syntax error at offset {}: {msg}", self.offset)
            }
            ParseErrorKind::UnknownSymbol(s) => {
                write!(f, "unknown symbol `{s}` at offset {}", self.offset)
            }
            ParseErrorKind::Arity { name, expected, found } => {
                write!(f, "`{name}` at offset {} takes {expected} argument(s), got {found}", self.offset)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    LParen,
    RParen,
    Comma,
    Dot,
    Not,
    Nec,
    Poss,
    Arrow,
    And,
    Or,
    Eq,
    EqC,
    EqStrict,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!(
                "`{}`",
                match other {
                    Tok::Forall => "forall",
                    Tok::Exists => "exists",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::Comma => ",",
                    Tok::Dot => ".",
                    Tok::Not => "~",
                    Tok::Nec => "[]",
                    Tok::Poss => "<>",
                    Tok::Arrow => "->",
                    Tok::And => "&",
                    Tok::Or => "|",
                    Tok::Eq => "=",
                    Tok::EqC => "=c",
                    Tok::EqStrict => "=!",
                    Tok::Ident(_) | Tok::Eof => unreachable!(),
                }
            ),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let rest = &text[i..];
        let (tok, len) = if is_ident_start(c) {
            let end = rest.find(|ch: char| !is_ident_char(ch)).unwrap_or(rest.len());
            let word = &rest[..end];
            let tok = match word {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                _ => Tok::Ident(word.to_string()),
            };
            (tok, end)
        } else if rest.starts_with("[]") {
            (Tok::Nec, 2)
        } else if rest.starts_with("<>") {
            (Tok::Poss, 2)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else if rest.starts_with("=!") {
            (Tok::EqStrict, 2)
        } else if rest.starts_with("=c") && !rest[2..].starts_with(is_ident_char) {
            (Tok::EqC, 2)
        } else {
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '~' | '¬' => Tok::Not,
                '□' => Tok::Nec,
                '◇' => Tok::Poss,
                '→' => Tok::Arrow,
                '&' | '∧' => Tok::And,
                '|' | '∨' => Tok::Or,
                '=' | '≈' => Tok::Eq,
                '≊' => Tok::EqStrict,
                '∀' => Tok::Forall,
                '∃' => Tok::Exists,
                other => {
                    return Err(ParseError {
                        offset: i,
                        kind: ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                    })
                }
            };
            (tok, c.len_utf8())
        };
        out.push((tok, i));
        while let Some(&(j, _)) = it.peek() {
            if j < i + len {
                it.next();
            } else {
                break;
            }
        }
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

enum Symbols<'a> {
    Strict(&'a Signature),
    Infer { base: &'a Signature, sig: Signature },
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    symbols: Symbols<'a>,
    bound: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            kind: ParseErrorKind::Syntax(format!("expected {expected}, found {}", self.peek().describe())),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(what)
        }
    }

    fn ident(&mut self) -> Result<(String, usize), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let off = self.offset();
                self.bump();
                Ok((s, off))
            }
            _ => self.error("an identifier"),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Nec => {
                self.bump();
                Ok(Formula::nec(self.unary()?))
            }
            Tok::Poss => {
                self.bump();
                Ok(Formula::poss(self.unary()?))
            }
            Tok::Forall | Tok::Exists => self.quantified(),
            _ => self.primary(),
        }
    }

    fn quantified(&mut self) -> Result<Formula, ParseError> {
        let (q, _) = self.bump();
        let (var, off) = self.ident()?;
        if self.is_constant(&var) {
            return Err(ParseError {
                offset: off,
                kind: ParseErrorKind::Syntax(format!("cannot quantify over constant `{var}`")),
            });
        }
        self.expect(Tok::Dot, "`.` after the quantified variable")?;
        self.bound.push(var.clone());
        let body = self.formula();
        self.bound.pop();
        let body = body?;
        Ok(match q {
            Tok::Forall => Formula::forall(&var, body),
            _ => Formula::exists(&var, body),
        })
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Tok::LParen {
            self.bump();
            let f = self.formula()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(f);
        }
        let (name, off) = match self.peek() {
            Tok::Ident(_) => self.ident()?,
            _ => return self.error("a formula"),
        };
        let args = if *self.peek() == Tok::LParen { Some(self.arguments()?) } else { None };
        let kind = match self.peek() {
            Tok::Eq => Some((IdentityKind::Necessary, false)),
            Tok::EqC => Some((IdentityKind::Contingent, false)),
            Tok::EqStrict => Some((IdentityKind::Necessary, true)),
            _ => None,
        };
        match kind {
            Some((kind, strict)) => {
                self.bump();
                let lhs = self.resolve_term(name, off, args)?;
                let rhs = self.term()?;
                let id = Formula::identity(kind, lhs, rhs);
                Ok(if strict { Formula::nec(id) } else { id })
            }
            None => {
                let args = args.unwrap_or_default();
                self.resolve_predicate(&name, off, args.len())?;
                Ok(Formula::Atom(name, args))
            }
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "`,` or `)`")?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (name, off) = self.ident()?;
        let args = if *self.peek() == Tok::LParen { Some(self.arguments()?) } else { None };
        self.resolve_term(name, off, args)
    }

    fn is_constant(&self, name: &str) -> bool {
        match &self.symbols {
            Symbols::Strict(sig) => sig.is_constant(name),
            Symbols::Infer { base, .. } => base.is_constant(name),
        }
    }

    fn resolve_term(&mut self, name: String, off: usize, args: Option<Vec<Term>>) -> Result<Term, ParseError> {
        let Some(args) = args else {
            if !self.bound.contains(&name) && self.is_constant(&name) {
                return Ok(Term::Const(name));
            }
            return Ok(Term::Var(name));
        };
        let declared = match &mut self.symbols {
            Symbols::Strict(sig) => sig.function_arity(&name),
            Symbols::Infer { base, sig } => match base.function_arity(&name).or(sig.function_arity(&name)) {
                Some(n) => Some(n),
                None => {
                    sig.add_function(&name, args.len())
                        .map_err(|_| ParseError { offset: off, kind: ParseErrorKind::UnknownSymbol(name.clone()) })?;
                    Some(args.len())
                }
            },
        };
        match declared {
            None => Err(ParseError { offset: off, kind: ParseErrorKind::UnknownSymbol(name) }),
            Some(n) if n != args.len() => {
                Err(ParseError { offset: off, kind: ParseErrorKind::Arity { name, expected: n, found: args.len() } })
            }
            Some(_) => Ok(Term::App(name, args)),
        }
    }

    fn resolve_predicate(&mut self, name: &str, off: usize, found: usize) -> Result<(), ParseError> {
        let declared = match &mut self.symbols {
            Symbols::Strict(sig) => sig.predicate_arity(name),
            Symbols::Infer { base, sig } => match base.predicate_arity(name).or(sig.predicate_arity(name)) {
                Some(n) => Some(n),
                None => {
                    sig.add_predicate(name, found).map_err(|_| ParseError {
                        offset: off,
                        kind: ParseErrorKind::UnknownSymbol(name.to_string()),
                    })?;
                    Some(found)
                }
            },
        };
        match declared {
            None => Err(ParseError { offset: off, kind: ParseErrorKind::UnknownSymbol(name.to_string()) }),
            Some(n) if n != found => Err(ParseError {
                offset: off,
                kind: ParseErrorKind::Arity { name: name.to_string(), expected: n, found },
            }),
            Some(_) => Ok(()),
        }
    }

    fn finish<T>(&mut self, value: T) -> Result<T, ParseError> {
        if *self.peek() != Tok::Eof {
            return self.error("end of input");
        }
        Ok(value)
    }
}

/// Parses `text` against a fixed signature. Bare identifiers in term
/// position are constants when `sig` declares them, variables otherwise.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, symbols: Symbols::Strict(sig), bound: Vec::new() };
    let f = p.formula()?;
    p.finish(f)
}

/// Parses `text`, declaring predicates and functions on first use.
/// Returns the formula and `base` extended with whatever was inferred.
pub fn parse_inferred(text: &str, base: &Signature) -> Result<(Formula, Signature), ParseError> {
    let mut p =
        Parser { toks: lex(text)?, pos: 0, symbols: Symbols::Infer { base, sig: Signature::new() }, bound: Vec::new() };
    let f = p.formula()?;
    let f = p.finish(f)?;
    let Symbols::Infer { sig: inferred, .. } = p.symbols else { unreachable!() };
    let mut sig = base.clone();
    sig.merge(&inferred).map_err(|e| ParseError { offset: 0, kind: ParseErrorKind::Syntax(e.to_string()) })?;
    Ok((f, sig))
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, symbols: Symbols::Strict(sig), bound: Vec::new() };
    let t = p.term()?;
    p.finish(t)
}
