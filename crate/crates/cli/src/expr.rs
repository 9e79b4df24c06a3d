//! Expression language: lexer, recursive-descent parser and printer.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' signed-int)?
//! atom   := 't[' int ',' int ']' | 'D' | 'D[' ints '|' ints ']' | 'q'
//!         | 'S(' expr ')' | 'inv(' expr ')' | int | '(' expr ')'
//! ```
//!
//! Rationals are written as integer quotients (`3/2`); `/` only accepts a
//! scalar divisor at evaluation time.

use std::fmt;

use qflag_core::qminor::MinorSpec;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MulOp {
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    /// Signed terms; a leading `Minus` on the first term is unary negation.
    Sum(Vec<(Sign, Expr)>),
    /// Factors; the operator of the first factor is ignored.
    Product(Vec<(MulOp, Expr)>),
    Pow(Box<Expr>, i64),
    Gen(usize, usize),
    Det,
    Minor(Vec<usize>, Vec<usize>),
    Q,
    Int(u64),
    Antipode(Box<Expr>),
    Inv(Box<Expr>),
}

/// A syntax error at a 1-based character column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl ParseError {
    /// The error with a caret under the offending column of `text`.
    pub fn annotate(&self, text: &str) -> String {
        format!("{text}\n{}^ {}", " ".repeat(self.column.saturating_sub(1)), self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(v) => write!(f, "`{v}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let v = digits.parse::<u64>().map_err(|_| ParseError {
                column,
                message: format!("integer `{digits}` is too large"),
            })?;
            out.push((Tok::Int(v), column));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), column));
        } else if "+-*/^()[],|".contains(c) {
            out.push((Tok::Sym(c), column));
            i += 1;
        } else {
            return Err(ParseError {
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", self.peek()))
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.pos += 1;
                Ok(v)
            }
            t => self.error(format!("expected an integer, found {t}")),
        }
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        let column = self.column();
        let v = self.int()?;
        if v == 0 || v as usize > self.n {
            return Err(ParseError {
                column,
                message: format!("unknown symbol: index {v} outside 1..={}", self.n),
            });
        }
        Ok(v as usize)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut items = Vec::new();
        let first = if self.eat('-') { Sign::Minus } else { Sign::Plus };
        items.push((first, self.term()?));
        loop {
            let sign = if self.eat('+') {
                Sign::Plus
            } else if self.eat('-') {
                Sign::Minus
            } else {
                break;
            };
            items.push((sign, self.term()?));
        }
        if items.len() == 1 && items[0].0 == Sign::Plus {
            return Ok(items.pop().expect("one item").1);
        }
        Ok(Expr::Sum(items))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut items = vec![(MulOp::Mul, self.factor()?)];
        loop {
            let op = if self.eat('*') {
                MulOp::Mul
            } else if self.eat('/') {
                MulOp::Div
            } else {
                break;
            };
            items.push((op, self.factor()?));
        }
        if items.len() == 1 {
            return Ok(items.pop().expect("one item").1);
        }
        Ok(Expr::Product(items))
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let column = self.column();
        let v = self.int()?;
        let e = i64::try_from(v).map_err(|_| ParseError {
            column,
            message: format!("exponent {v} is too large"),
        })?;
        Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }))
    }

    fn index_list(&mut self, end: char) -> Result<Vec<usize>, ParseError> {
        let mut v = vec![self.index()?];
        while !self.eat(end) {
            self.expect(',')?;
            v.push(self.index()?);
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let column = self.column();
        match self.bump() {
            Tok::Int(v) => Ok(Expr::Int(v)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "q" => Ok(Expr::Q),
                "t" => {
                    self.expect('[')?;
                    let i = self.index()?;
                    self.expect(',')?;
                    let j = self.index()?;
                    self.expect(']')?;
                    Ok(Expr::Gen(i, j))
                }
                "D" => {
                    if !self.eat('[') {
                        return Ok(Expr::Det);
                    }
                    let rows = self.index_list('|')?;
                    let cols = self.index_list(']')?;
                    if let Err(e) = MinorSpec::new(rows.clone(), cols.clone()) {
                        return Err(ParseError {
                            column,
                            message: e.to_string(),
                        });
                    }
                    Ok(Expr::Minor(rows, cols))
                }
                "S" | "inv" => {
                    self.expect('(')?;
                    let e = Box::new(self.expr()?);
                    self.expect(')')?;
                    Ok(if name == "S" { Expr::Antipode(e) } else { Expr::Inv(e) })
                }
                other => Err(ParseError {
                    column,
                    message: format!("unknown symbol `{other}`"),
                }),
            },
            t => Err(ParseError {
                column,
                message: format!("expected an operand, found {t}"),
            }),
        }
    }
}

/// Parses `text` for the `n × n` quantum matrix algebra.
pub fn parse_expr(text: &str, n: usize) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        n,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", p.peek()));
    }
    Ok(e)
}

fn join(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

impl Expr {
    fn is_sum(&self) -> bool {
        matches!(self, Expr::Sum(_))
    }

    fn is_product(&self) -> bool {
        matches!(self, Expr::Product(_))
    }

    fn fmt_wrapped(&self, f: &mut fmt::Formatter<'_>, wrap: bool) -> fmt::Result {
        if wrap {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    /// Minimal parentheses; parsing the output reproduces the tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sum(items) => {
                for (k, (sign, x)) in items.iter().enumerate() {
                    match (k, sign) {
                        (0, Sign::Plus) => {}
                        (0, Sign::Minus) => f.write_str("-")?,
                        (_, Sign::Plus) => f.write_str(" + ")?,
                        (_, Sign::Minus) => f.write_str(" - ")?,
                    }
                    x.fmt_wrapped(f, x.is_sum())?;
                }
                Ok(())
            }
            Expr::Product(items) => {
                for (k, (op, x)) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(if *op == MulOp::Mul { "*" } else { "/" })?;
                    }
                    x.fmt_wrapped(f, x.is_sum() || x.is_product())?;
                }
                Ok(())
            }
            Expr::Pow(b, e) => {
                b.fmt_wrapped(f, b.is_sum() || b.is_product() || matches!(**b, Expr::Pow(..)))?;
                write!(f, "^{e}")
            }
            Expr::Gen(i, j) => write!(f, "t[{i},{j}]"),
            Expr::Det => f.write_str("D"),
            Expr::Minor(r, c) => write!(f, "D[{}|{}]", join(r), join(c)),
            Expr::Q => f.write_str("q"),
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Antipode(x) => write!(f, "S({x})"),
            Expr::Inv(x) => write!(f, "inv({x})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            parse_expr("t[1,2]*t[2,1]", 2).unwrap(),
            Expr::Product(vec![(MulOp::Mul, Expr::Gen(1, 2)), (MulOp::Mul, Expr::Gen(2, 1))])
        );
        let e = parse_expr("D[1,2|1,2] - q*t[1,2]*t[2,1]", 2).unwrap();
        assert_eq!(e.to_string(), "D[1,2|1,2] - q*t[1,2]*t[2,1]");
        let e = parse_expr("inv(t[2,2])*t[1,2]", 2).unwrap();
        assert_eq!(e.to_string(), "inv(t[2,2])*t[1,2]");
    }

    #[test]
    fn precedence() {
        let e = parse_expr("-a", 2);
        assert!(e.is_err());
        let e = parse_expr("-t[1,1]^2*q + (t[1,2] - 1)^-1", 2).unwrap();
        assert_eq!(e.to_string(), "-t[1,1]^2*q + (t[1,2] - 1)^-1");
        let e = parse_expr("(t[1,1]*t[1,2])*t[2,2]", 2).unwrap();
        assert_eq!(e.to_string(), "(t[1,1]*t[1,2])*t[2,2]");
        let e = parse_expr("((q))", 2).unwrap();
        assert_eq!(e, Expr::Q);
    }

    #[test]
    fn positioned_errors() {
        let e = parse_expr("t[1,3]", 2).unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_expr("t[1,1] + * q", 2).unwrap_err();
        assert_eq!(e.column, 10);
        let e = parse_expr("x*q", 2).unwrap_err();
        assert_eq!(e.column, 1);
        assert!(e.message.contains("unknown symbol"));
        let e = parse_expr("D[2,1|1,2]", 2).unwrap_err();
        assert_eq!(e.column, 1);
        let e = parse_expr("(q", 2).unwrap_err();
        assert_eq!(e.column, 3);
        assert!(e.annotate("(q").ends_with("^ expected `)`, found end of input"));
    }
}
