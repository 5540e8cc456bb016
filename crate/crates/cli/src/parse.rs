//! Expressions such as `q^2 * z1 * z0 - (1/2) z0*^2 w`.
//!
//! A `*` written directly after `z<i>` or `w` is the adjoint; any other `*`
//! multiplies. Juxtaposition also multiplies. `^` takes an integer exponent,
//! negative only for invertible factors (scalars and `w`). `/` divides by a
//! scalar or a power of `w`.

use num_bigint::BigInt;
use teardrop_core::scalar::{BigRational, QScalar};
use teardrop_core::star_algebra::{AlgebraElement, AlgebraError, AlgebraPresentation, Generator};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at position {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("at position {pos}: {source}")]
    Algebra { pos: usize, source: AlgebraError },
    #[error("at position {pos}: {message}")]
    Math { pos: usize, message: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::Algebra { pos, .. }
            | ParseError::Math { pos, .. } => *pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Q,
    Z(usize),
    W,
    Dagger,
    Plus,
    Minus,
    Times,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Q => "'q'".into(),
            Tok::Z(i) => format!("'z{i}'"),
            Tok::W => "'w'".into(),
            Tok::Dagger => "'*'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Times => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self,
            Tok::Num(_) | Tok::Q | Tok::Z(_) | Tok::W | Tok::LParen
        )
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out: Vec<(usize, Tok)> = Vec::new();
    let mut i = 0;
    let mut attached = false;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            attached = false;
            i += 1;
            continue;
        }
        let tok = match c {
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(s.parse().expect("digits"))));
                attached = false;
                continue;
            }
            'z' => {
                i += 1;
                let d0 = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if d0 == i {
                    return Err(ParseError::Syntax {
                        pos: d0,
                        expected: "generator index after 'z'".into(),
                        found: chars
                            .get(d0)
                            .map_or("end of input".into(), |c| format!("'{c}'")),
                    });
                }
                let s: String = chars[d0..i].iter().collect();
                let idx = s.parse().map_err(|_| ParseError::Math {
                    pos: d0,
                    message: format!("generator index {s} is too large"),
                })?;
                out.push((start, Tok::Z(idx)));
                attached = true;
                continue;
            }
            'w' => Tok::W,
            'q' => Tok::Q,
            '*' if attached => Tok::Dagger,
            '*' => Tok::Times,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(ParseError::Syntax {
                    pos: start,
                    expected: "a generator, number, operator or parenthesis".into(),
                    found: format!("'{c}'"),
                })
            }
        };
        attached = tok == Tok::W;
        out.push((start, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    p: AlgebraPresentation,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if t.1 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn syntax(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().describe(),
        }
    }

    fn algebra(
        &self,
        pos: usize,
        r: Result<AlgebraElement, AlgebraError>,
    ) -> Result<AlgebraElement, ParseError> {
        r.map_err(|source| ParseError::Algebra { pos, source })
    }

    fn expr(&mut self) -> Result<AlgebraElement, ParseError> {
        let mut acc = self.term()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.algebra(pos, acc.try_add(&rhs))?;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.algebra(pos, acc.try_sub(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraElement, ParseError> {
        let mut acc = self.signed()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Times => {
                    self.bump();
                    let rhs = self.signed()?;
                    acc = self.algebra(pos, acc.try_mul(&rhs))?;
                }
                Tok::Slash => {
                    self.bump();
                    let rpos = self.pos();
                    let rhs = self.signed()?;
                    let inv = invert(&rhs).ok_or_else(|| ParseError::Math {
                        pos: rpos,
                        message: "can only divide by a nonzero scalar or a power of w".into(),
                    })?;
                    acc = self.algebra(pos, acc.try_mul(&inv))?;
                }
                t if t.starts_factor() => {
                    let rhs = self.power()?;
                    acc = self.algebra(pos, acc.try_mul(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed(&mut self) -> Result<AlgebraElement, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let x = self.signed()?;
            return Ok(x.scale(&QScalar::from_int(-1)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<AlgebraElement, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let epos = self.pos();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let e = match self.bump() {
            (_, Tok::Num(n)) => n,
            _ => {
                self.at -= 1;
                return Err(self.syntax("integer exponent"));
            }
        };
        let e: u32 = e.try_into().map_err(|_| ParseError::Math {
            pos: epos,
            message: "exponent is too large".into(),
        })?;
        if !negative {
            return Ok(base.pow(e));
        }
        let inv = invert(&base).ok_or_else(|| ParseError::Math {
            pos: epos,
            message: "negative exponents need a nonzero scalar or a power of w".into(),
        })?;
        Ok(inv.pow(e))
    }

    fn atom(&mut self) -> Result<AlgebraElement, ParseError> {
        let (pos, tok) = self.bump();
        let p = self.p;
        match tok {
            Tok::Num(n) => Ok(AlgebraElement::scalar(
                p,
                QScalar::from_rational(BigRational::from_integer(n)),
            )),
            Tok::Q => Ok(AlgebraElement::scalar(p, QScalar::q())),
            Tok::Z(_) | Tok::W => {
                let starred = *self.peek() == Tok::Dagger;
                if starred {
                    self.bump();
                }
                let g = match (tok, starred) {
                    (Tok::Z(i), false) => Generator::Z(i),
                    (Tok::Z(i), true) => Generator::ZStar(i),
                    (_, false) => Generator::W,
                    (_, true) => Generator::WStar,
                };
                self.algebra(pos, AlgebraElement::generator(p, g))
            }
            Tok::LParen => {
                let x = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.syntax("')'"));
                }
                self.bump();
                Ok(x)
            }
            _ => {
                self.at -= usize::from(tok != Tok::End);
                Err(self.syntax("a generator, number, 'q' or '('"))
            }
        }
    }
}

/// The inverse of `c · w^s` with `c != 0`, if `x` has that form.
fn invert(x: &AlgebraElement) -> Option<AlgebraElement> {
    let mut terms = x.terms();
    let (m, c) = terms.next()?;
    if terms.next().is_some() || m.a.iter().chain(&m.b).any(|&e| e != 0) {
        return None;
    }
    let p = x.presentation();
    let g = if m.s > 0 {
        Generator::WStar
    } else {
        Generator::W
    };
    let w = AlgebraElement::from_word(p, &vec![g; m.s.unsigned_abs() as usize]).ok()?;
    Some(w.scale(&c.inv().ok()?))
}

/// Parse and normalize an expression in the given algebra.
pub fn parse_expression(text: &str, p: AlgebraPresentation) -> Result<AlgebraElement, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser { toks, at: 0, p };
    let x = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.syntax("an operator or end of input"));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(n: usize) -> AlgebraPresentation {
        AlgebraPresentation::sphere(n)
    }

    #[test]
    fn attached_star_is_adjoint() {
        let p = sphere(1);
        let a = parse_expression("z0*z0", p).unwrap();
        let b = parse_expression("1 - q^-2 z1 z1*", p).unwrap();
        assert_eq!(a, b);
        let c = parse_expression("z0 * z0", p).unwrap();
        assert_eq!(
            c,
            AlgebraElement::from_word(p, &[Generator::Z(0), Generator::Z(0)]).unwrap()
        );
    }

    #[test]
    fn commutation() {
        let p = sphere(1);
        let a = parse_expression("q^2 * z1 * z0", p).unwrap();
        let b = parse_expression("q z0 z1", p).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_positions() {
        let p = sphere(1);
        assert!(matches!(
            parse_expression("z9", p),
            Err(ParseError::Algebra { pos: 0, .. })
        ));
        assert!(matches!(
            parse_expression("w", p),
            Err(ParseError::Algebra { .. })
        ));
        let e = parse_expression("z0 + ", p).unwrap_err();
        assert_eq!(e.position(), 5);
        assert!(matches!(e, ParseError::Syntax { .. }));
        assert!(matches!(
            parse_expression("z0^-1", p),
            Err(ParseError::Math { pos: 3, .. })
        ));
        assert!(matches!(
            parse_expression("1/z0", p),
            Err(ParseError::Math { pos: 2, .. })
        ));
        assert!(matches!(
            parse_expression("1/0", p),
            Err(ParseError::Math { .. })
        ));
        assert!(matches!(
            parse_expression("(z0", p),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_expression("z", p),
            Err(ParseError::Syntax { pos: 1, .. })
        ));
        assert!(matches!(
            parse_expression("x", p),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
    }

    #[test]
    fn w_is_invertible() {
        let p = AlgebraPresentation::sigma(1);
        assert!(parse_expression("w^-2 w^2", p).unwrap().is_one());
        assert!(parse_expression("z1 / w", p).unwrap() == parse_expression("z1 w*", p).unwrap());
        assert!(parse_expression("(-1)*z1 w*^2 + z1 w^-2", p)
            .unwrap()
            .is_zero());
    }
}
