//! Recursive-descent parser.
//!
//! ```text
//! formula  := disj ( "->" formula )?
//! disj     := conj ( "\/" conj )*
//! conj     := unary ( "/\" unary )*
//! unary    := "~" unary | "forall" VAR unary | "exists" VAR unary
//!           | "(" formula ")" | atom
//! atom     := term ( "=" | "<=" | "<" | ">=" | ">" ) term
//! term     := prod ( "+" prod )*
//! prod     := prim ( "*" prim )*
//! prim     := "0" | "S" "(" term ")" | "S^" NUM "(" term ")" | CONST | VAR | "(" term ")"
//! CONST    := "c" [1-9][0-9]*
//! ```

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{FormulaError, Sentence, Term};

/// Upper limit on `S^n(t)` for non-numeral `t`, which must be expanded into
/// `n` nested nodes.
const MAX_OPEN_SUCC_POWER: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Plus,
    Star,
    Caret,
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
    Not,
    And,
    Or,
    Arrow,
    Num(BigUint),
    Ident(String),
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Le => "`<=`".into(),
        Tok::Lt => "`<`".into(),
        Tok::Ge => "`>=`".into(),
        Tok::Gt => "`>`".into(),
        Tok::Not => "`~`".into(),
        Tok::And => "`/\\`".into(),
        Tok::Or => "`\\/`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::End => "end of input".into(),
    }
}

fn syntax(pos: usize, message: impl Into<String>) -> FormulaError {
    FormulaError::Syntax {
        pos,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, FormulaError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = |a: u8, b: u8| c == a && bytes.get(i + 1) == Some(&b);
        let tok = if two(b'-', b'>') {
            i += 2;
            Tok::Arrow
        } else if two(b'/', b'\\') {
            i += 2;
            Tok::And
        } else if two(b'\\', b'/') {
            i += 2;
            Tok::Or
        } else if two(b'<', b'=') {
            i += 2;
            Tok::Le
        } else if two(b'>', b'=') {
            i += 2;
            Tok::Ge
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Num(text[start..i].parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(text[start..i].to_string())
        } else {
            i += 1;
            match c {
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'+' => Tok::Plus,
                b'*' => Tok::Star,
                b'^' => Tok::Caret,
                b'=' => Tok::Eq,
                b'<' => Tok::Lt,
                b'>' => Tok::Gt,
                b'~' => Tok::Not,
                _ => {
                    let ch = text[start..].chars().next().unwrap_or('?');
                    return Err(syntax(start, format!("unexpected character `{ch}`")));
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// `c<digits>` with no leading zero.
fn constant_index(name: &str) -> Option<&str> {
    let digits = name.strip_prefix('c')?;
    (!digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())).then_some(digits)
}

fn is_keyword(name: &str) -> bool {
    matches!(name, "forall" | "exists" | "S")
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    scope: Vec<String>,
}

type PResult<T> = Result<T, FormulaError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> PResult<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.pos(),
                format!("expected {}, found {}", describe(&want), describe(self.peek())),
            ))
        }
    }

    fn formula(&mut self) -> PResult<Sentence> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Sentence::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Sentence> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Sentence::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> PResult<Sentence> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Sentence::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Sentence> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Sentence::not(self.unary()?))
            }
            Tok::Ident(kw) if kw == "forall" || kw == "exists" => {
                self.bump();
                let pos = self.pos();
                let var = match self.bump() {
                    Tok::Ident(v) if !is_keyword(&v) && constant_index(&v).is_none() => v,
                    other => {
                        return Err(syntax(
                            pos,
                            format!("expected a variable after `{kw}`, found {}", describe(&other)),
                        ))
                    }
                };
                self.scope.push(var.clone());
                let body = self.unary();
                self.scope.pop();
                let body = Box::new(body?);
                Ok(if kw == "forall" {
                    Sentence::ForAll(var, body)
                } else {
                    Sentence::Exists(var, body)
                })
            }
            Tok::LParen => {
                // Either a parenthesised formula or an atom whose left term
                // starts with a parenthesis; keep whichever gets further.
                let save = self.at;
                self.bump();
                let as_formula = self.formula().and_then(|s| {
                    self.expect(Tok::RParen)?;
                    Ok(s)
                });
                match as_formula {
                    Ok(s) => Ok(s),
                    Err(formula_err) => {
                        let formula_at = self.at;
                        self.at = save;
                        match self.atom() {
                            Ok(s) => Ok(s),
                            Err(atom_err) => {
                                let atom_at = self.at;
                                Err(if formula_at >= atom_at { formula_err } else { atom_err })
                            }
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Sentence> {
        let lhs = self.term()?;
        let pos = self.pos();
        let op = self.bump();
        let rhs = self.term()?;
        Ok(match op {
            Tok::Eq => Sentence::eq(lhs, rhs),
            Tok::Le => Sentence::le(lhs, rhs),
            Tok::Lt => Sentence::lt(lhs, rhs),
            Tok::Ge => Sentence::ge(lhs, rhs),
            Tok::Gt => Sentence::gt(lhs, rhs),
            other => {
                return Err(syntax(
                    pos,
                    format!("expected a relation (=, <=, <, >=, >), found {}", describe(&other)),
                ))
            }
        })
    }

    fn term(&mut self) -> PResult<Term> {
        let mut acc = self.product()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            acc = Term::add(acc, self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> PResult<Term> {
        let mut acc = self.primary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Term::mul(acc, self.primary()?);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> PResult<Term> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) if n.is_zero() => Ok(Term::Zero),
            Tok::Num(n) => Err(syntax(
                pos,
                format!("numeral {n} must be written S^{n}(0)"),
            )),
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(name) if name == "S" => self.successor(pos),
            Tok::Ident(name) => {
                if let Some(digits) = constant_index(&name) {
                    return match digits.parse::<u32>() {
                        Ok(i) if i >= 1 && !digits.starts_with('0') => Ok(Term::Const(i)),
                        _ => Err(FormulaError::UnknownIdentifier { name, pos }),
                    };
                }
                if is_keyword(&name) || !self.scope.iter().any(|v| *v == name) {
                    return Err(FormulaError::UnknownIdentifier { name, pos });
                }
                Ok(Term::Var(name))
            }
            other => Err(syntax(pos, format!("expected a term, found {}", describe(&other)))),
        }
    }

    fn successor(&mut self, pos: usize) -> PResult<Term> {
        if *self.peek() == Tok::Caret {
            self.bump();
            let npos = self.pos();
            let power = match self.bump() {
                Tok::Num(n) => n,
                other => {
                    return Err(syntax(
                        npos,
                        format!("expected an exponent after `S^`, found {}", describe(&other)),
                    ))
                }
            };
            self.expect(Tok::LParen)?;
            let inner = self.term()?;
            self.expect(Tok::RParen)?;
            if let Some(base) = inner.as_numeral() {
                return Ok(Term::Numeral(base + power));
            }
            let count = power
                .to_u64()
                .filter(|&c| c <= MAX_OPEN_SUCC_POWER)
                .ok_or_else(|| syntax(npos, "successor power too large for a non-numeral term"))?;
            return Ok((0..count).fold(inner, |t, _| Term::succ(t)));
        }
        if *self.peek() != Tok::LParen {
            return Err(syntax(pos, "`S` must be applied: S(t) or S^n(t)"));
        }
        self.bump();
        let inner = self.term()?;
        self.expect(Tok::RParen)?;
        Ok(match inner.as_numeral() {
            Some(n) => Term::Numeral(n + 1u32),
            None => Term::succ(inner),
        })
    }
}

/// Parses a closed sentence. Variables must be bound by an enclosing
/// quantifier; anything else is reported as an unknown identifier.
pub fn parse(text: &str) -> Result<Sentence, FormulaError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        scope: Vec::new(),
    };
    let s = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(syntax(
            p.pos(),
            format!("unexpected {} after sentence", describe(p.peek())),
        ));
    }
    Ok(s)
}
