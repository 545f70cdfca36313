//! Recursive-descent parser for `Nk(t) = <expr>`.
//!
//! ```text
//! statement  := ident '(' 't' ')' '=' disjunct EOF
//! disjunct   := conjunct ('|' conjunct)*
//! conjunct   := factor ('.' factor)*
//! factor     := '~' negatable | atom
//! negatable  := ref | '(' ref ('.' ref)* ')'
//! atom       := ref | '(' disjunct ')'
//! ref        := ident '(' 't' '-' digits ')'
//! ```
//!
//! `∧ ∨ ¬ ≡ ⇔` are accepted as spellings of `. | ~ = =`.

use std::fmt;

use thiserror::Error;

use super::{Expr, ExprError, TemporalExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected { found: String, expected: &'static str },
    NonPositiveDelay(String),
    /// `~X` with no positive conjunct beside it.
    NegationNotConjoined,
    ComplexNegation,
    Invalid(ExprError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Unexpected { found, expected } => write!(f, "expected {expected}, found {found}"),
            ParseErrorKind::NonPositiveDelay(n) => {
                write!(f, "reference to `{n}` needs a delay of at least 1, written (t-d)")
            }
            ParseErrorKind::NegationNotConjoined => f.write_str(
                "negation must be conjoined with a positive term (e.g. `N1(t-1) . ~N2(t-1)`); there is no standalone NOT",
            ),
            ParseErrorKind::ComplexNegation => {
                f.write_str("negation applies only to a reference or a parenthesized conjunction of references")
            }
            ParseErrorKind::Invalid(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Number(u64),
    LParen,
    RParen,
    Dot,
    Pipe,
    Tilde,
    Equals,
    Minus,
    Plus,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Number(n) => write!(f, "`{n}`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::Dot => f.write_str("`.`"),
            Token::Pipe => f.write_str("`|`"),
            Token::Tilde => f.write_str("`~`"),
            Token::Equals => f.write_str("`=`"),
            Token::Minus => f.write_str("`-`"),
            Token::Plus => f.write_str("`+`"),
            Token::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let single = match c {
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '.' | '∧' => Some(Token::Dot),
            '|' | '∨' => Some(Token::Pipe),
            '~' | '¬' => Some(Token::Tilde),
            '=' | '≡' | '⇔' => Some(Token::Equals),
            '-' | '−' => Some(Token::Minus),
            '+' => Some(Token::Plus),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            tokens.push((pos, tok));
        } else if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut end = pos;
            while let Some(&(p, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = p + d.len_utf8();
                chars.next();
            }
            let value = text[pos..end].parse().map_err(|_| ParseError {
                position: pos,
                kind: ParseErrorKind::Unexpected { found: text[pos..end].to_string(), expected: "a small delay" },
            })?;
            tokens.push((pos, Token::Number(value)));
        } else if c.is_alphabetic() || c == '_' {
            let mut end = pos;
            while let Some(&(p, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                end = p + d.len_utf8();
                chars.next();
            }
            tokens.push((pos, Token::Ident(text[pos..end].to_string())));
        } else {
            return Err(ParseError {
                position: pos,
                kind: ParseErrorKind::Unexpected { found: format!("`{c}`"), expected: "an expression" },
            });
        }
    }
    tokens.push((text.len(), Token::End));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.cursor].1
    }

    fn position(&self) -> usize {
        self.tokens[self.cursor].0
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.cursor].1.clone();
        if tok != Token::End {
            self.cursor += 1;
        }
        tok
    }

    fn fail<T>(&self, expected: &'static str) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.position(),
            kind: ParseErrorKind::Unexpected { found: self.peek().to_string(), expected },
        })
    }

    fn expect(&mut self, tok: Token, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(expected)
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Token::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail("a neuron name"),
        }
    }

    fn statement(&mut self) -> Result<TemporalExpr, ParseError> {
        let target = self.ident()?;
        self.expect(Token::LParen, "`(`")?;
        self.expect_time_variable()?;
        self.expect(Token::RParen, "`)` after the target's `(t`")?;
        self.expect(Token::Equals, "`=`")?;
        let body = self.disjunct()?;
        if *self.peek() != Token::End {
            return self.fail("`|`, `.`, or end of input");
        }
        Ok(TemporalExpr { target, body })
    }

    fn expect_time_variable(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Token::Ident(s) if s == "t" => {
                self.bump();
                Ok(())
            }
            _ => self.fail("`t`"),
        }
    }

    fn disjunct(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.conjunct()?];
        while *self.peek() == Token::Pipe {
            self.bump();
            terms.push(self.conjunct()?);
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { Expr::Or(terms) })
    }

    fn conjunct(&mut self) -> Result<Expr, ParseError> {
        let start = self.position();
        let mut positives = Vec::new();
        let mut negatives = Vec::new();
        loop {
            if *self.peek() == Token::Tilde {
                self.bump();
                negatives.push(self.negatable()?);
            } else {
                positives.push(self.atom()?);
            }
            if *self.peek() != Token::Dot {
                break;
            }
            self.bump();
        }
        if positives.is_empty() {
            return Err(ParseError { position: start, kind: ParseErrorKind::NegationNotConjoined });
        }
        let mut expr = if positives.len() == 1 { positives.pop().expect("one") } else { Expr::And(positives) };
        for negated in negatives {
            expr = Expr::and_not(expr, negated);
        }
        Ok(expr)
    }

    fn negatable(&mut self) -> Result<Expr, ParseError> {
        let start = self.position();
        match self.peek() {
            Token::Ident(_) => self.reference(),
            Token::LParen => {
                self.bump();
                let mut refs = vec![self.negated_reference(start)?];
                while *self.peek() == Token::Dot {
                    self.bump();
                    refs.push(self.negated_reference(start)?);
                }
                if *self.peek() != Token::RParen {
                    return Err(ParseError { position: start, kind: ParseErrorKind::ComplexNegation });
                }
                self.bump();
                Ok(if refs.len() == 1 { refs.pop().expect("one") } else { Expr::And(refs) })
            }
            Token::Tilde => Err(ParseError { position: start, kind: ParseErrorKind::ComplexNegation }),
            _ => self.fail("a reference after `~`"),
        }
    }

    fn negated_reference(&mut self, start: usize) -> Result<Expr, ParseError> {
        match self.peek() {
            Token::Ident(_) => self.reference(),
            _ => Err(ParseError { position: start, kind: ParseErrorKind::ComplexNegation }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Token::LParen => {
                self.bump();
                let inner = self.disjunct()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Token::Ident(_) => self.reference(),
            _ => self.fail("a reference like `N1(t-1)` or `(`"),
        }
    }

    fn reference(&mut self) -> Result<Expr, ParseError> {
        let start = self.position();
        let neuron = self.ident()?;
        self.expect(Token::LParen, "`(` after the neuron name")?;
        self.expect_time_variable()?;
        let delay = match self.peek() {
            Token::Minus => {
                self.bump();
                match self.bump() {
                    Token::Number(d) => d,
                    _ => {
                        self.cursor -= 1;
                        return self.fail("a delay");
                    }
                }
            }
            Token::Plus | Token::RParen => 0,
            _ => return self.fail("`-` and a delay"),
        };
        if delay == 0 {
            return Err(ParseError { position: start, kind: ParseErrorKind::NonPositiveDelay(neuron) });
        }
        let delay = u32::try_from(delay).map_err(|_| ParseError {
            position: start,
            kind: ParseErrorKind::Unexpected { found: delay.to_string(), expected: "a delay below 2^32" },
        })?;
        self.expect(Token::RParen, "`)`")?;
        Ok(Expr::Ref { neuron, delay })
    }
}

pub fn parse_expression(text: &str) -> Result<TemporalExpr, ParseError> {
    let mut parser = Parser { tokens: tokenize(text)?, cursor: 0 };
    let expr = parser.statement()?;
    expr.validate().map_err(|e| ParseError { position: 0, kind: ParseErrorKind::Invalid(e) })?;
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: &str, d: u32) -> Expr {
        Expr::reference(n, d)
    }

    #[test]
    fn conjoined_negation_element() {
        let e = parse_expression("N3(t) = N1(t-1) . ~N2(t-1)").unwrap();
        assert_eq!(e.target, "N3");
        assert_eq!(e.body, Expr::and_not(r("N1", 1), r("N2", 1)));
    }

    #[test]
    fn precession_element() {
        assert_eq!(parse_expression("N2(t) = N1(t-1)").unwrap().body, r("N1", 1));
    }

    #[test]
    fn conjunction_binds_tighter_than_disjunction() {
        let e = parse_expression("N3(t) = N1(t-1) | N2(t-3) . ~N2(t-2)").unwrap();
        assert_eq!(e.body, Expr::Or(vec![r("N1", 1), Expr::and_not(r("N2", 3), r("N2", 2))]));
    }

    #[test]
    fn logic_glyphs_are_accepted() {
        let e = parse_expression("N3(t) ≡ N1(t−1) ∧ ¬N2(t−1)").unwrap();
        assert_eq!(e.body, Expr::and_not(r("N1", 1), r("N2", 1)));
    }

    #[test]
    fn several_negations_nest() {
        let e = parse_expression("Z(t) = A(t-1) . ~B(t-1) . C(t-2) . ~(D(t-1) . E(t-1))").unwrap();
        let pos = Expr::And(vec![r("A", 1), r("C", 2)]);
        let expect = Expr::and_not(Expr::and_not(pos, r("B", 1)), Expr::And(vec![r("D", 1), r("E", 1)]));
        assert_eq!(e.body, expect);
    }

    #[test]
    fn bare_negation_is_rejected() {
        let err = parse_expression("N3(t) = ~N1(t-1)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NegationNotConjoined);
        assert!(err.to_string().contains("negation must be conjoined"));
        let err = parse_expression("N3(t) = N2(t-1) | ~N1(t-1)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NegationNotConjoined);
        assert_eq!(err.position, 18);
    }

    #[test]
    fn negated_disjunction_is_rejected() {
        let err = parse_expression("N3(t) = N1(t-1) . ~(N2(t-1) | N4(t-1))").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ComplexNegation);
        let err = parse_expression("N3(t) = N1(t-1) . ~~N2(t-1)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ComplexNegation);
    }

    #[test]
    fn delays_must_be_positive() {
        for text in ["N2(t) = N1(t)", "N2(t) = N1(t-0)", "N2(t) = N1(t+1)"] {
            let err = parse_expression(text).unwrap_err();
            assert!(matches!(err.kind, ParseErrorKind::NonPositiveDelay(_)), "{text}: {err}");
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_expression("N2(t) = N1(t-1) .").unwrap_err();
        assert_eq!(err.position, 17);
        let err = parse_expression("N2(t) N1(t-1)").unwrap_err();
        assert_eq!(err.position, 6);
        let err = parse_expression("N2(t) = N1(t-1) $").unwrap_err();
        assert_eq!(err.position, 16);
        let err = parse_expression("N2(t) = (N1(t-1)").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Unexpected { .. }));
    }

    #[test]
    fn self_reference_is_rejected() {
        let err = parse_expression("N2(t) = N1(t-1) | N2(t-2)").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Invalid(ExprError::SelfReference(_))));
    }
}
