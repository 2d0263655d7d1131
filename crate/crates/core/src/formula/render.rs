use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{fresh_var, Sentence, Term};

/// Numerals up to this value are written out as nested `S(...)`.
pub const DEFAULT_NUMERAL_CAP: u64 = 32;

#[derive(Clone, Debug)]
pub struct RenderOptions {
    /// Largest numeral printed as nested successors; larger ones use `S^n(0)`.
    pub numeral_cap: u64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            numeral_cap: DEFAULT_NUMERAL_CAP,
        }
    }
}

pub fn render(s: &Sentence) -> String {
    render_with(s, &RenderOptions::default())
}

pub fn render_with(s: &Sentence, opts: &RenderOptions) -> String {
    let mut out = String::new();
    sentence(s, opts, &mut out);
    out
}

pub fn render_term(t: &Term, opts: &RenderOptions) -> String {
    let mut out = String::new();
    term(t, Level::Sum, opts, &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Sum,
    Product,
    Primary,
}

fn write_numeral(n: &BigUint, opts: &RenderOptions, out: &mut String) {
    if n.is_zero() {
        out.push('0');
        return;
    }
    match n.to_u64() {
        Some(small) if small <= opts.numeral_cap => {
            for _ in 0..small {
                out.push_str("S(");
            }
            out.push('0');
            for _ in 0..small {
                out.push(')');
            }
        }
        _ => {
            out.push_str("S^");
            out.push_str(&n.to_string());
            out.push_str("(0)");
        }
    }
}

fn term(t: &Term, ctx: Level, opts: &RenderOptions, out: &mut String) {
    match t {
        Term::Zero => out.push('0'),
        Term::Numeral(n) => write_numeral(n, opts, out),
        Term::Var(v) => out.push_str(v),
        Term::Const(i) => {
            out.push('c');
            out.push_str(&i.to_string());
        }
        Term::Succ(inner) => {
            out.push_str("S(");
            term(inner, Level::Sum, opts, out);
            out.push(')');
        }
        Term::Add(a, b) => {
            let paren = ctx > Level::Sum;
            if paren {
                out.push('(');
            }
            term(a, Level::Sum, opts, out);
            out.push_str(" + ");
            term(b, Level::Product, opts, out);
            if paren {
                out.push(')');
            }
        }
        Term::Mul(a, b) => {
            let paren = ctx > Level::Product;
            if paren {
                out.push('(');
            }
            term(a, Level::Product, opts, out);
            out.push_str(" * ");
            term(b, Level::Primary, opts, out);
            if paren {
                out.push(')');
            }
        }
    }
}

/// Recognises the expansion of `b >= a` / `b > a` produced by the parser.
enum Order<'a> {
    Ge(&'a Term, &'a Term),
    Gt(&'a Term, &'a Term),
}

fn as_order<'a>(var: &str, body: &'a Sentence) -> Option<Order<'a>> {
    let Sentence::Eq(Term::Add(lhs, z), b) = body else {
        return None;
    };
    if !matches!(&**z, Term::Var(name) if name == var) {
        return None;
    }
    if fresh_var(lhs, b) != var {
        return None;
    }
    Some(match &**lhs {
        Term::Succ(a) => Order::Gt(b, a),
        a => Order::Ge(b, a),
    })
}

fn is_binary(s: &Sentence) -> bool {
    matches!(
        s,
        Sentence::And(..) | Sentence::Or(..) | Sentence::Implies(..)
    )
}

fn is_order(s: &Sentence) -> bool {
    matches!(s, Sentence::Exists(v, body) if as_order(v, body).is_some())
}

/// Operand of a binary connective: atoms and negations bare, everything
/// else parenthesised.
fn operand(s: &Sentence, opts: &RenderOptions, out: &mut String) {
    let bare = matches!(s, Sentence::Eq(..) | Sentence::Not(..)) || is_order(s);
    if bare {
        sentence(s, opts, out);
    } else {
        out.push('(');
        sentence(s, opts, out);
        out.push(')');
    }
}

fn sentence(s: &Sentence, opts: &RenderOptions, out: &mut String) {
    match s {
        Sentence::Eq(a, b) => {
            term(a, Level::Sum, opts, out);
            out.push_str(" = ");
            term(b, Level::Sum, opts, out);
        }
        Sentence::Not(inner) => {
            out.push('~');
            if matches!(**inner, Sentence::Not(..)) {
                sentence(inner, opts, out);
            } else {
                out.push('(');
                sentence(inner, opts, out);
                out.push(')');
            }
        }
        Sentence::And(a, b) => {
            operand(a, opts, out);
            out.push_str(" /\\ ");
            operand(b, opts, out);
        }
        Sentence::Or(a, b) => {
            operand(a, opts, out);
            out.push_str(" \\/ ");
            operand(b, opts, out);
        }
        Sentence::Implies(a, b) => {
            operand(a, opts, out);
            out.push_str(" -> ");
            operand(b, opts, out);
        }
        Sentence::Exists(v, body) if as_order(v, body).is_some() => {
            let (big, op, small) = match as_order(v, body).expect("checked") {
                Order::Ge(b, a) => (b, " >= ", a),
                Order::Gt(b, a) => (b, " > ", a),
            };
            term(big, Level::Sum, opts, out);
            out.push_str(op);
            term(small, Level::Sum, opts, out);
        }
        Sentence::ForAll(v, body) | Sentence::Exists(v, body) => {
            out.push_str(if matches!(s, Sentence::ForAll(..)) {
                "forall "
            } else {
                "exists "
            });
            out.push_str(v);
            out.push(' ');
            if is_binary(body) || is_order(body) {
                out.push('(');
                sentence(body, opts, out);
                out.push(')');
            } else {
                sentence(body, opts, out);
            }
        }
    }
}
