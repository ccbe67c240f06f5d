//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (explicit `*`, `^` right-associative, exponents are
//! non-negative integer literals, `/` only by nonzero constants):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' exponent)?
//! exponent := INT ('^' exponent)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Int(BigInt),
    Var(String),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Div(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
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

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = PolyExpr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    return self.err("implicit multiplication is not allowed; use '*'");
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(PolyExpr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyExpr> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.exponent()?;
            return Ok(PolyExpr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => {
                let base = n.to_u32().ok_or(Error::Syntax {
                    position: at,
                    message: "exponent too large".into(),
                })?;
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let rest = self.exponent()?;
                    return base.checked_pow(rest).ok_or(Error::Syntax {
                        position: at,
                        message: "exponent too large".into(),
                    });
                }
                Ok(base)
            }
            Tok::Minus => Err(Error::NegativeExponent { position: at }),
            _ => Err(Error::Syntax {
                position: at,
                message: "expected a non-negative integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<PolyExpr> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(PolyExpr::Int(n)),
            Tok::Ident(s) => Ok(PolyExpr::Var(s)),
            Tok::LParen => {
                let e = self.expr()?;
                if self.bump() != Tok::RParen {
                    return Err(Error::Syntax {
                        position: self.toks[self.pos.saturating_sub(1)].1,
                        message: "expected ')'".into(),
                    });
                }
                Ok(e)
            }
            Tok::End => Err(Error::Syntax {
                position: at,
                message: "unexpected end of input".into(),
            }),
            t => Err(Error::Syntax {
                position: at,
                message: format!("unexpected token {t:?}"),
            }),
        }
    }
}

impl PolyExpr {
    pub fn parse(text: &str) -> Result<PolyExpr> {
        let mut p = Parser {
            toks: tokenize(text)?,
            pos: 0,
        };
        let e = p.expr()?;
        if *p.peek() != Tok::End {
            return p.err("trailing input");
        }
        Ok(e)
    }

    /// Lowers to a polynomial over `vars`; positions in errors are not
    /// available at this stage, so they refer to the start of input.
    pub fn lower(&self, vars: &[String]) -> Result<MultiPoly> {
        Ok(match self {
            PolyExpr::Int(n) => MultiPoly::int_constant(vars.to_vec(), n.clone()),
            PolyExpr::Var(name) => {
                let i =
                    vars.iter()
                        .position(|v| v == name)
                        .ok_or_else(|| Error::UnknownVariable {
                            name: name.clone(),
                            position: 0,
                        })?;
                MultiPoly::var(vars.to_vec(), i)
            }
            PolyExpr::Neg(a) => -&a.lower(vars)?,
            PolyExpr::Add(a, b) => &a.lower(vars)? + &b.lower(vars)?,
            PolyExpr::Sub(a, b) => &a.lower(vars)? - &b.lower(vars)?,
            PolyExpr::Mul(a, b) => &a.lower(vars)? * &b.lower(vars)?,
            PolyExpr::Div(a, b) => {
                let d = b.lower(vars)?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => a.lower(vars)?.scale(&c.recip()),
                    _ => return Err(Error::BadDivision { position: 0 }),
                }
            }
            PolyExpr::Pow(a, k) => a.lower(vars)?.pow(*k),
        })
    }

    fn prec(&self) -> u8 {
        match self {
            PolyExpr::Add(..) | PolyExpr::Sub(..) => 1,
            PolyExpr::Mul(..) | PolyExpr::Div(..) => 2,
            PolyExpr::Neg(_) => 3,
            PolyExpr::Pow(..) => 4,
            PolyExpr::Int(_) | PolyExpr::Var(_) => 5,
        }
    }
}

fn child(f: &mut fmt::Formatter<'_>, e: &PolyExpr, min_prec: u8) -> fmt::Result {
    if e.prec() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyExpr::Int(n) => write!(f, "{n}"),
            PolyExpr::Var(v) => write!(f, "{v}"),
            PolyExpr::Neg(a) => {
                write!(f, "-")?;
                child(f, a, 3)
            }
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) => {
                child(f, a, 1)?;
                write!(
                    f,
                    " {} ",
                    if matches!(self, PolyExpr::Add(..)) {
                        '+'
                    } else {
                        '-'
                    }
                )?;
                child(f, b, 2)
            }
            PolyExpr::Mul(a, b) | PolyExpr::Div(a, b) => {
                child(f, a, 2)?;
                write!(
                    f,
                    "{}",
                    if matches!(self, PolyExpr::Mul(..)) {
                        '*'
                    } else {
                        '/'
                    }
                )?;
                child(f, b, 3)
            }
            PolyExpr::Pow(a, k) => {
                child(f, a, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

/// Parses `text` as a polynomial in `expected_vars`.
pub fn parse_poly(text: &str, expected_vars: &[&str]) -> Result<MultiPoly> {
    let vars: Vec<String> = expected_vars.iter().map(|s| s.to_string()).collect();
    parse_poly_in(text, &vars)
}

pub fn parse_poly_in(text: &str, vars: &[String]) -> Result<MultiPoly> {
    let e = PolyExpr::parse(text)?;
    e.lower(vars).map_err(|err| match err {
        Error::UnknownVariable { name, .. } => {
            let position = find_ident(text, &name).unwrap_or(0);
            Error::UnknownVariable { name, position }
        }
        Error::BadDivision { .. } => Error::BadDivision {
            position: text.find('/').unwrap_or(0),
        },
        other => other,
    })
}

fn find_ident(text: &str, name: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let is_word = |b: u8| b.is_ascii_alphanumeric() || b == b'_';
    text.match_indices(name).map(|(i, _)| i).find(|&i| {
        (i == 0 || !is_word(bytes[i - 1]))
            && (i + name.len() >= bytes.len() || !is_word(bytes[i + name.len()]))
    })
}

/// Parses a rational constant such as `3`, `-7/2`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let p = parse_poly(text, &[])?;
    p.as_constant().ok_or(Error::Syntax {
        position: 0,
        message: "expected a constant".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};
    use proptest::prelude::*;

    const XYZ: [&str; 3] = ["X", "Y", "Z"];

    #[test]
    fn paper_forms_parse() {
        let f = parse_poly("X*Y - Z^2", &XYZ).unwrap();
        assert_eq!(f.to_string(), "X*Y - Z^2");
        let c = parse_poly("X^3 + Y^3 + X^2*Z - 2*Y^2*Z", &XYZ).unwrap();
        assert_eq!(c.num_terms(), 4);
        assert_eq!(c.coeff(&[0, 2, 1]), rat(-2));
    }

    #[test]
    fn errors_are_positioned() {
        assert_eq!(
            parse_poly("X^-1", &XYZ),
            Err(Error::NegativeExponent { position: 2 })
        );
        assert!(matches!(
            parse_poly("X*W", &XYZ),
            Err(Error::UnknownVariable { position: 2, .. })
        ));
        assert!(matches!(
            parse_poly("2X", &XYZ),
            Err(Error::Syntax { position: 1, .. })
        ));
        assert!(matches!(
            parse_poly("X + ", &XYZ),
            Err(Error::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            parse_poly("(X + Y", &XYZ),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("X $ Y", &XYZ),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            parse_poly("X/Y", &XYZ),
            Err(Error::BadDivision { .. })
        ));
        assert!(matches!(
            parse_poly("X/0", &XYZ),
            Err(Error::BadDivision { .. })
        ));
    }

    #[test]
    fn precedence_and_associativity() {
        let v = |s: &str| parse_poly(s, &["X"]).unwrap();
        assert_eq!(v("-X^2"), -&v("X^2"));
        assert_eq!(v("2^3^2"), v("512"));
        assert_eq!(v("X^2^2"), v("X^4"));
        assert_eq!(v("1 - 2 - 3"), v("-4"));
        assert_eq!(v("X*(X+1)/2").coeff(&[1]), ratio(1, 2));
        assert_eq!(v("12/4/3"), v("1"));
    }

    fn arb_expr() -> impl Strategy<Value = PolyExpr> {
        let leaf = prop_oneof![
            (0i64..20).prop_map(|n| PolyExpr::Int(n.into())),
            prop::sample::select(vec!["U", "V"]).prop_map(|s| PolyExpr::Var(s.into())),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| PolyExpr::Neg(Box::new(a))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| PolyExpr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| PolyExpr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| PolyExpr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), 0u32..4).prop_map(|(a, k)| PolyExpr::Pow(Box::new(a), k)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            prop_assert_eq!(PolyExpr::parse(&printed).unwrap(), e);
        }

        #[test]
        fn polynomial_display_reparses(e in arb_expr()) {
            let vars = vec!["U".to_string(), "V".to_string()];
            let p = e.lower(&vars).unwrap();
            prop_assert_eq!(parse_poly_in(&p.to_string(), &vars).unwrap(), p);
        }
    }
}
