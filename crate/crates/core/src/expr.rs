//! Element literals such as `3/2*chi[e1.e2] - chi[v]` and `chi[e1.e2*]`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | '(' expr ')' | number | 'chi' '[' word ']'
//! number := digits ('/' digits)?
//! word   := letter ('.' letter)*        letter := id '*'?
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graph::{Graph, Path};
use crate::leavitt::{l_mul, normal_form, LElement, Letter};
use crate::path_algebra::{pa_mul, PAElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(BigRational),
    Chi { word: Vec<Letter>, column: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(self.column(), format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some('-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some('c') => self.chi(),
            Some(c) => Err(err(self.column(), format!("unexpected '{c}'"))),
            None => Err(err(self.column(), "unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(self.column(), "expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn number(&mut self) -> Result<Expr> {
        let n = self.digits()?;
        if self.chars.get(self.pos) == Some(&'/') {
            self.pos += 1;
            let col = self.column();
            let d = self.digits()?;
            if d == BigInt::from(0) {
                return Err(err(col, "zero denominator"));
            }
            return Ok(Expr::Number(BigRational::new(n, d)));
        }
        Ok(Expr::Number(BigRational::from_integer(n)))
    }

    fn chi(&mut self) -> Result<Expr> {
        let column = self.column();
        for expected in ['c', 'h', 'i'] {
            if self.chars.get(self.pos) != Some(&expected) {
                return Err(err(self.column(), "expected 'chi['"));
            }
            self.pos += 1;
        }
        self.expect('[')?;
        let mut word = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && !".*[]".contains(self.chars[self.pos]) && !self.chars[self.pos].is_whitespace()
            {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(err(self.column(), "expected an id"));
            }
            let id: String = self.chars[start..self.pos].iter().collect();
            let ghost = self.chars.get(self.pos) == Some(&'*');
            if ghost {
                self.pos += 1;
            }
            // a bare id names a vertex when it is the whole word; resolved at evaluation
            word.push(if ghost { Letter::Ghost(id.into()) } else { Letter::Real(id.into()) });
            match self.peek() {
                Some('.') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(Expr::Chi { word, column });
                }
                _ => return Err(err(self.column(), "expected '.' or ']'")),
            }
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        _src: src,
    };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(err(p.column(), format!("unexpected '{c}' after expression")));
    }
    Ok(e)
}

/// An algebra in which expressions can be evaluated.
pub trait ExprAlgebra {
    type Elem: Clone;
    fn field(&self) -> Field;
    fn chi(&self, word: &[Letter], column: usize) -> Result<Self::Elem>;
    fn scale(&self, x: &Self::Elem, c: &Scalar) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
}

/// Resolves a one-letter word naming a vertex.
fn vertex_letters(g: &Graph, word: &[Letter]) -> Vec<Letter> {
    match word {
        [Letter::Real(id)] if g.has_vertex(id.as_str()) && !g.has_edge(id.as_str()) => {
            vec![Letter::Vertex(id.as_str().into())]
        }
        _ => word.to_vec(),
    }
}

pub struct PathAlgebra {
    pub graph: Arc<Graph>,
    pub field: Field,
}

impl ExprAlgebra for PathAlgebra {
    type Elem = PAElement;

    fn field(&self) -> Field {
        self.field
    }

    fn chi(&self, word: &[Letter], column: usize) -> Result<PAElement> {
        let word = vertex_letters(&self.graph, word);
        let path = match word.as_slice() {
            [Letter::Vertex(v)] => Path::Vertex(v.clone()),
            letters => {
                let mut es = Vec::with_capacity(letters.len());
                for l in letters {
                    match l {
                        Letter::Real(e) => es.push(e.clone()),
                        _ => return Err(err(column, "ghost edges are not paths of the graph")),
                    }
                }
                Path::Edges(es)
            }
        };
        PAElement::basis(self.graph.clone(), self.field, path)
    }

    fn scale(&self, x: &PAElement, c: &Scalar) -> PAElement {
        x.scale(c)
    }

    fn add(&self, x: &PAElement, y: &PAElement) -> Result<PAElement> {
        x.add(y)
    }

    fn mul(&self, x: &PAElement, y: &PAElement) -> Result<PAElement> {
        pa_mul(x, y)
    }
}

pub struct LeavittAlgebra {
    pub graph: Arc<Graph>,
    pub field: Field,
}

impl ExprAlgebra for LeavittAlgebra {
    type Elem = LElement;

    fn field(&self) -> Field {
        self.field
    }

    fn chi(&self, word: &[Letter], _column: usize) -> Result<LElement> {
        let word = vertex_letters(&self.graph, word);
        normal_form(self.graph.clone(), self.field, &word, &self.field.one())
    }

    fn scale(&self, x: &LElement, c: &Scalar) -> LElement {
        x.scale(c)
    }

    fn add(&self, x: &LElement, y: &LElement) -> Result<LElement> {
        x.add(y)
    }

    fn mul(&self, x: &LElement, y: &LElement) -> Result<LElement> {
        l_mul(x, y)
    }
}

enum Value<E> {
    Scalar(Scalar),
    Elem(E),
}

fn eval_inner<A: ExprAlgebra>(alg: &A, e: &Expr) -> Result<Value<A::Elem>> {
    let field = alg.field();
    Ok(match e {
        Expr::Number(q) => Value::Scalar(field.from_rational(q)?),
        Expr::Chi { word, column } => Value::Elem(alg.chi(word, *column)?),
        Expr::Neg(x) => match eval_inner(alg, x)? {
            Value::Scalar(s) => Value::Scalar(field.neg(&s)),
            Value::Elem(x) => Value::Elem(alg.scale(&x, &field.from_int(-1))),
        },
        Expr::Add(x, y) | Expr::Sub(x, y) => {
            let sign = if matches!(e, Expr::Sub(..)) { -1 } else { 1 };
            match (eval_inner(alg, x)?, eval_inner(alg, y)?) {
                (Value::Scalar(a), Value::Scalar(b)) => {
                    Value::Scalar(field.add(&a, &field.mul(&b, &field.from_int(sign))))
                }
                (Value::Elem(a), Value::Elem(b)) => {
                    Value::Elem(alg.add(&a, &alg.scale(&b, &field.from_int(sign)))?)
                }
                _ => {
                    return Err(err(1, "cannot add a scalar to an algebra element; write c*chi[v] for each vertex"))
                }
            }
        }
        Expr::Mul(x, y) => match (eval_inner(alg, x)?, eval_inner(alg, y)?) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(field.mul(&a, &b)),
            (Value::Scalar(a), Value::Elem(b)) | (Value::Elem(b), Value::Scalar(a)) => {
                Value::Elem(alg.scale(&b, &a))
            }
            (Value::Elem(a), Value::Elem(b)) => Value::Elem(alg.mul(&a, &b)?),
        },
    })
}

/// Evaluates an expression; a bare scalar result is an error.
pub fn eval<A: ExprAlgebra>(alg: &A, e: &Expr) -> Result<A::Elem> {
    match eval_inner(alg, e)? {
        Value::Elem(x) => Ok(x),
        Value::Scalar(_) => Err(err(1, "expression has no chi[...] term")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn graph() -> Arc<Graph> {
        Arc::new(Graph::builder().edge("e1", "u", "v").edge("e2", "v", "w").build())
    }

    #[test]
    fn path_literal() {
        let alg = PathAlgebra { graph: graph(), field: Q };
        let x = eval(&alg, &parse_expr("3/2*chi[e1.e2] - chi[v]").unwrap()).unwrap();
        assert_eq!(x.to_string(), "-chi[v] + 3/2*chi[e1.e2]");
        let y = eval(&alg, &parse_expr("chi[e1] * chi[e2]").unwrap()).unwrap();
        assert_eq!(y.to_string(), "chi[e1.e2]");
        assert!(eval(&alg, &parse_expr("chi[e1*]").unwrap()).is_err());
    }

    #[test]
    fn leavitt_literal() {
        let alg = LeavittAlgebra { graph: graph(), field: Q };
        let x = eval(&alg, &parse_expr("chi[e2*.e1*] * chi[e1.e2]").unwrap()).unwrap();
        assert_eq!(x.to_string(), "chi[w]");
        let y = eval(&alg, &parse_expr("2*(chi[e1.e1*] - chi[u])").unwrap()).unwrap();
        assert!(y.is_zero());
    }

    #[test]
    fn diagnostics() {
        match parse_expr("chi[e1] + ") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 11),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("chi[e1.]").is_err());
        assert!(parse_expr("1/0*chi[v]").is_err());
        assert!(parse_expr("chi[v] chi[w]").is_err());
        let alg = PathAlgebra { graph: graph(), field: Q };
        assert!(eval(&alg, &parse_expr("1 + chi[v]").unwrap()).is_err());
    }

    #[test]
    fn prime_field_reduction() {
        let alg = PathAlgebra { graph: graph(), field: Field::prime(3).unwrap() };
        let x = eval(&alg, &parse_expr("4*chi[v]").unwrap()).unwrap();
        assert_eq!(x.to_string(), "chi[v]");
        assert!(eval(&alg, &parse_expr("1/3*chi[v]").unwrap()).is_err());
    }
}
