//! Parameter expressions: rationals, `+ - * / ^`, parentheses and the
//! symbols `eps` (a root of w² − w + 1) and `sqrt3` (a root of w² − 3).

use std::sync::Arc;

use osculant::algebra::rational::parse_rational;
use osculant::algebra::{FieldElement, Tower};
use osculant::hesse::eisenstein_sqrt3;
use thiserror::Error;

/// Why an expression was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("unexpected character '{0}' in parameter expression")]
    UnexpectedChar(char),
    #[error("unexpected end of parameter expression")]
    UnexpectedEnd,
    #[error("unexpected token '{0}' in parameter expression")]
    UnexpectedToken(String),
    #[error("unknown symbol '{0}' (expected eps or sqrt3)")]
    UnknownSymbol(String),
    #[error("exponent must be an integer literal")]
    BadExponent,
    #[error("division by zero in parameter expression")]
    DivisionByZero,
    #[error("empty parameter expression")]
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Symbol(String),
    Op(char),
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Number(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Symbol(chars[start..i].iter().collect()));
        } else if "+-*/^".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else if c == '(' {
            out.push(Token::Open);
            i += 1;
        } else if c == ')' {
            out.push(Token::Close);
            i += 1;
        } else if c == '−' {
            out.push(Token::Op('-'));
            i += 1;
        } else {
            return Err(ExprError::UnexpectedChar(c));
        }
    }
    Ok(out)
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Number(String),
    Eps,
    Sqrt3,
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.product()?));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(Token::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Op('^')) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Token::Op('-')) {
            self.pos += 1;
            true
        } else {
            false
        };
        let Some(Token::Number(n)) = self.next() else { return Err(ExprError::BadExponent) };
        let e: i64 = n.parse().map_err(|_| ExprError::BadExponent)?;
        Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.next() {
            Some(Token::Number(n)) => Ok(Expr::Number(n)),
            Some(Token::Symbol(s)) => match s.as_str() {
                "eps" => Ok(Expr::Eps),
                "sqrt3" => Ok(Expr::Sqrt3),
                _ => Err(ExprError::UnknownSymbol(s)),
            },
            Some(Token::Open) => {
                let e = self.sum()?;
                match self.next() {
                    Some(Token::Close) => Ok(e),
                    Some(t) => Err(ExprError::UnexpectedToken(describe(&t))),
                    None => Err(ExprError::UnexpectedEnd),
                }
            }
            Some(t) => Err(ExprError::UnexpectedToken(describe(&t))),
            None => Err(ExprError::UnexpectedEnd),
        }
    }
}

fn describe(t: &Token) -> String {
    match t {
        Token::Number(n) | Token::Symbol(n) => n.clone(),
        Token::Op(c) => c.to_string(),
        Token::Open => "(".into(),
        Token::Close => ")".into(),
    }
}

impl Expr {
    fn uses(&self, symbol: &Expr) -> bool {
        match self {
            Expr::Neg(a) | Expr::Pow(a, _) => a.uses(symbol),
            Expr::Bin(_, a, b) => a.uses(symbol) || b.uses(symbol),
            other => other == symbol,
        }
    }

    fn eval(&self, tower: &Arc<Tower>) -> Result<FieldElement, ExprError> {
        Ok(match self {
            Expr::Number(n) => FieldElement::from_rational(tower, parse_rational(n).expect("digits")),
            Expr::Eps => FieldElement::named_generator(tower, "eps").expect("tower has eps"),
            Expr::Sqrt3 => FieldElement::named_generator(tower, "sqrt3").expect("tower has sqrt3"),
            Expr::Neg(a) => -a.eval(tower)?,
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(tower)?, b.eval(tower)?);
                match op {
                    '+' => &a + &b,
                    '-' => &a - &b,
                    '*' => &a * &b,
                    _ => a.checked_div(&b).map_err(|_| ExprError::DivisionByZero)?,
                }
            }
            Expr::Pow(a, e) => a.eval(tower)?.pow(*e).map_err(|_| ExprError::DivisionByZero)?,
        })
    }
}

/// Parses `s` and evaluates it in the smallest of ℚ, ℚ(ε), ℚ(ε)(√3) that
/// contains every symbol used.
///
/// # Errors
/// Any [`ExprError`].
pub fn parse_parameter(s: &str) -> Result<FieldElement, ExprError> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(ExprError::Empty);
    }
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.sum()?;
    if let Some(t) = parser.peek() {
        return Err(ExprError::UnexpectedToken(describe(t)));
    }
    let tower = if expr.uses(&Expr::Sqrt3) {
        eisenstein_sqrt3()
    } else if expr.uses(&Expr::Eps) {
        Tower::eisenstein()
    } else {
        Tower::rationals()
    };
    expr.eval(&tower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use osculant::algebra::{q, qi};

    #[test]
    fn rationals_and_precedence() {
        assert_eq!(parse_parameter("1+2*3").unwrap().as_rational(), Some(&qi(7)));
        assert_eq!(parse_parameter("-5").unwrap().as_rational(), Some(&qi(-5)));
        assert_eq!(parse_parameter("2^-2 - 1/4").unwrap().as_rational(), Some(&qi(0)));
        assert_eq!(parse_parameter("-2^2").unwrap().as_rational(), Some(&qi(-4)));
        assert_eq!(parse_parameter("(1 - 3)/6").unwrap().as_rational(), Some(&q(-1, 3)));
    }

    #[test]
    fn symbols_pick_the_tower() {
        let t = parse_parameter("6*eps^2").unwrap();
        assert_eq!(t.tower().height(), 1);
        let e = FieldElement::named_generator(t.tower(), "eps").unwrap();
        assert_eq!(t, &e.pow(2).unwrap() * &FieldElement::from_int(t.tower(), 6));
        let h = parse_parameter("-3*(1-sqrt3)").unwrap();
        assert_eq!(h.tower().height(), 2);
        let s = FieldElement::named_generator(h.tower(), "sqrt3").unwrap();
        assert!((&s * &s - FieldElement::from_int(h.tower(), 3)).is_zero());
    }

    #[test]
    fn errors() {
        assert_eq!(parse_parameter(""), Err(ExprError::Empty));
        assert_eq!(parse_parameter("1/0"), Err(ExprError::DivisionByZero));
        assert_eq!(parse_parameter("pi"), Err(ExprError::UnknownSymbol("pi".into())));
        assert_eq!(parse_parameter("(1"), Err(ExprError::UnexpectedEnd));
        assert_eq!(parse_parameter("1 2"), Err(ExprError::UnexpectedToken("2".into())));
        assert_eq!(parse_parameter("2^eps"), Err(ExprError::BadExponent));
        assert_eq!(parse_parameter("1 % 2"), Err(ExprError::UnexpectedChar('%')));
    }
}
