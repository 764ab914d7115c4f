//! Recursive-descent parser and evaluator for multivector expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" "-"? intlit)?
//! atom   := number | basis | "(" expr ")" | func "(" expr ")"
//! basis  := "e1" | "e2" | "e3" | "e12"
//! func   := "conj" | "inv" | "exp" | "sqrt"
//! ```
//!
//! Juxtaposition is not multiplication and `7e1` is the number 70, so basis
//! terms need an explicit `*`. `-x^2` is `-(x^2)`.

use std::fmt;

use thiserror::Error;

use crate::classify::Tolerances;
use crate::error::Error;
use crate::multivector::Multivector;
use crate::transcend;

const MAX_DEPTH: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    Domain,
    NonInvertible,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Lexical => "lexical",
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::Domain => "domain",
            ParseErrorKind::NonInvertible => "non-invertible",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} error at position {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(kind: ParseErrorKind, position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
            kind,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Func {
    Conj,
    Inv,
    Exp,
    Sqrt,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok<'a> {
    Num { value: f64, text: &'a str },
    Basis(Multivector),
    Func(Func),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token<'a> {
    tok: Tok<'a>,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Token<'_>>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, pos: start });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text = &src[start..i];
            let value: f64 = text
                .parse()
                .map_err(|_| ParseError::new(ParseErrorKind::Lexical, start, format!("malformed number '{text}'")))?;
            if !value.is_finite() {
                return Err(ParseError::new(
                    ParseErrorKind::Lexical,
                    start,
                    format!("number '{text}' is out of range"),
                ));
            }
            out.push(Token {
                tok: Tok::Num { value, text },
                pos: start,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &src[start..i];
            let tok = match word {
                "e1" => Tok::Basis(Multivector::E1),
                "e2" => Tok::Basis(Multivector::E2),
                "e3" | "e12" => Tok::Basis(Multivector::E3),
                "conj" => Tok::Func(Func::Conj),
                "inv" => Tok::Func(Func::Inv),
                "exp" => Tok::Func(Func::Exp),
                "sqrt" => Tok::Func(Func::Sqrt),
                _ => {
                    return Err(ParseError::new(
                        ParseErrorKind::Lexical,
                        start,
                        format!("unknown identifier '{word}'"),
                    ))
                }
            };
            out.push(Token { tok, pos: start });
            continue;
        }
        let ch = src[start..].chars().next().unwrap_or('?');
        return Err(ParseError::new(
            ParseErrorKind::Lexical,
            start,
            format!("unexpected character '{}'", ch.escape_default()),
        ));
    }
    out.push(Token {
        tok: Tok::End,
        pos: src.len(),
    });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Lit(Multivector),
    /// Signed terms; `true` marks subtraction.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Neg(Box<Expr>),
    Pow {
        base: Box<Expr>,
        exponent: i64,
        op_pos: usize,
    },
    Call {
        func: Func,
        arg: Box<Expr>,
    },
}

#[derive(Clone, Debug)]
struct Expr {
    node: Node,
    pos: usize,
}

struct Parser<'a> {
    toks: Vec<Token<'a>>,
    at: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token<'a> {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Token<'a> {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let t = self.peek();
        let found = match &t.tok {
            Tok::End => "end of input".to_string(),
            Tok::Num { text, .. } => format!("'{text}'"),
            Tok::Basis(_) | Tok::Func(_) => "identifier".to_string(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        };
        ParseError::new(
            ParseErrorKind::Syntax,
            t.pos,
            format!("expected {wanted}, found {found}"),
        )
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::new(
                ParseErrorKind::Syntax,
                self.peek().pos,
                "expression nested too deeply",
            ));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let pos = self.peek().pos;
        let mut terms = vec![(false, self.term()?)];
        loop {
            let minus = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            terms.push((minus, self.term()?));
        }
        if terms.len() == 1 {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr {
            node: Node::Sum(terms),
            pos,
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let pos = self.peek().pos;
        let mut factors = vec![self.unary()?];
        while self.peek().tok == Tok::Star {
            self.bump();
            factors.push(self.unary()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        Ok(Expr {
            node: Node::Product(factors),
            pos,
        })
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            let pos = self.bump().pos;
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr {
                node: Node::Neg(Box::new(inner)),
                pos,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let op_pos = self.bump().pos;
        let negative = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let t = self.peek().clone();
        let exponent = match t.tok {
            Tok::Num { text, .. } if text.bytes().all(|b| b.is_ascii_digit()) => {
                let k: i64 = text.parse().map_err(|_| {
                    ParseError::new(
                        ParseErrorKind::Syntax,
                        t.pos,
                        format!("exponent '{text}' is out of range"),
                    )
                })?;
                if negative {
                    -k
                } else {
                    k
                }
            }
            _ => return Err(self.unexpected("integer exponent")),
        };
        self.bump();
        let pos = base.pos;
        Ok(Expr {
            node: Node::Pow {
                base: Box::new(base),
                exponent,
                op_pos,
            },
            pos,
        })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Num { value, .. } => {
                self.bump();
                Ok(Expr {
                    node: Node::Lit(Multivector::raw(value, 0.0, 0.0, 0.0)),
                    pos: t.pos,
                })
            }
            Tok::Basis(b) => {
                self.bump();
                Ok(Expr {
                    node: Node::Lit(b),
                    pos: t.pos,
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.group()?;
                Ok(Expr { pos: t.pos, ..inner })
            }
            Tok::Func(func) => {
                self.bump();
                if self.peek().tok != Tok::LParen {
                    return Err(self.unexpected("'(' after function name"));
                }
                self.bump();
                let arg = self.group()?;
                Ok(Expr {
                    node: Node::Call {
                        func,
                        arg: Box::new(arg),
                    },
                    pos: t.pos,
                })
            }
            _ => Err(self.unexpected("a number, basis element, function or '('")),
        }
    }

    /// Parses `expr ")"` after an opening parenthesis.
    fn group(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let inner = self.expr()?;
        self.depth -= 1;
        if self.peek().tok != Tok::RParen {
            return Err(self.unexpected("')'"));
        }
        self.bump();
        Ok(inner)
    }
}

fn check_finite(m: Multivector, pos: usize) -> Result<Multivector, ParseError> {
    if m.is_finite() {
        Ok(m)
    } else {
        Err(ParseError::new(
            ParseErrorKind::Domain,
            pos,
            "result overflows double precision",
        ))
    }
}

fn lift(err: Error, pos: usize) -> ParseError {
    let kind = match err {
        Error::NonInvertible => ParseErrorKind::NonInvertible,
        _ => ParseErrorKind::Domain,
    };
    ParseError::new(kind, pos, err.to_string())
}

fn eval(e: &Expr, tol: &Tolerances) -> Result<Multivector, ParseError> {
    let value = match &e.node {
        Node::Lit(m) => *m,
        Node::Sum(terms) => {
            let mut acc = Multivector::ZERO;
            for (minus, t) in terms {
                let v = eval(t, tol)?;
                acc = if *minus { acc - v } else { acc + v };
            }
            acc
        }
        Node::Product(factors) => {
            let mut acc = eval(&factors[0], tol)?;
            for f in &factors[1..] {
                acc = acc * eval(f, tol)?;
            }
            acc
        }
        Node::Neg(inner) => -eval(inner, tol)?,
        Node::Pow { base, exponent, op_pos } => {
            let b = eval(base, tol)?;
            transcend::pow_int(&b, *exponent, tol).map_err(|err| lift(err, *op_pos))?
        }
        Node::Call { func, arg } => {
            let x = eval(arg, tol)?;
            match func {
                Func::Conj => x.conj(),
                Func::Inv => x.inverse(tol).map_err(|err| lift(err, e.pos))?,
                Func::Exp => transcend::exp(&x).map_err(|err| lift(err, e.pos))?,
                Func::Sqrt => {
                    if !x.im().is_zero() {
                        return Err(ParseError::new(
                            ParseErrorKind::Domain,
                            arg.pos,
                            "sqrt needs a scalar argument (use the roots command for general square roots)",
                        ));
                    }
                    if x.s() < 0.0 {
                        return Err(ParseError::new(
                            ParseErrorKind::Domain,
                            arg.pos,
                            "sqrt of a negative scalar",
                        ));
                    }
                    Multivector::raw(x.s().sqrt(), 0.0, 0.0, 0.0)
                }
            }
        }
    };
    check_finite(value, e.pos)
}

/// Parses and evaluates `text`.
pub fn parse_eval(text: &str, tol: &Tolerances) -> Result<Multivector, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, depth: 0 };
    let ast = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(eval(&ast, tol)?.canonical())
}
