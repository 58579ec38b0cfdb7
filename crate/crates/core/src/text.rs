//! Text syntax for multivectors and expressions.
//!
//! Multivectors print as signed terms, e.g. `0.5 + 0.5 e1` or `2 e1^e3`.
//! Complex coefficients print as `(a+bi)`. Expressions accept:
//!
//! | precedence | operators |
//! |---|---|
//! | highest | unary `-`, `+`, functions `rev inv gradeinv conj dual exp grade(x, k)` |
//! | | `*` and juxtaposition |
//! | | `^` `∧`, `_|` `⌟`, `|_` `⌞`, `.` `·` |
//! | lowest | `+`, `-` |
//!
//! Generators are `e1..en` (the first `p` square to `+1`). In `Cl(1,3)` the
//! aliases `g0..g3` name `e1..e4`. `i` is the imaginary unit of the
//! complexification. A number followed by `e`, an optional sign and digits
//! is read as an exponent, so write `2 e1` rather than `2e1`.

use std::fmt;

use num_complex::Complex64;

use crate::blade::Blade;
use crate::error::{CliffordError, Result};
use crate::multivector::Multivector;
use crate::signature::Signature;

// ---- printing --------------------------------------------------------------

/// Output options for multivector and expression text.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Style {
    /// Use `^`, `_|`, `|_`, `.` for the operators.
    pub ascii: bool,
    /// Name `Cl(1,3)` generators `g0..g3`.
    pub gamma_names: bool,
}

pub fn format_real(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else if x.abs() >= 1e-4 && x.abs() < 1e15 {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn format_coeff(c: Complex64, real: bool) -> String {
    if real {
        format_real(c.re)
    } else {
        let sign = if c.im < 0.0 || (c.im == 0.0 && c.im.is_sign_negative()) {
            "-"
        } else {
            "+"
        };
        format!(
            "({}{}{}i)",
            format_real(c.re),
            sign,
            format_real(c.im.abs())
        )
    }
}

pub fn format_blade(b: Blade, sig: Signature, style: Style) -> String {
    if b == Blade::SCALAR {
        return "1".into();
    }
    let alias = style.gamma_names && sig == Signature::spacetime();
    b.indices()
        .map(|i| {
            if alias {
                format!("g{i}")
            } else {
                format!("e{}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("^")
}

/// Renders a multivector in the text syntax.
pub fn format_multivector(x: &Multivector, style: Style) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let sig = x.signature();
    let mut out = String::new();
    for (idx, (b, c)) in x.terms().enumerate() {
        let negative_real = x.is_real() && c.re < 0.0;
        let c = if negative_real { -c } else { c };
        if idx == 0 {
            if negative_real {
                out.push('-');
                if b != Blade::SCALAR && c.re == 1.0 {
                    out.push(' ');
                }
            }
        } else {
            out.push_str(if negative_real { " - " } else { " + " });
        }
        let coeff = format_coeff(c, x.is_real());
        if b == Blade::SCALAR {
            out.push_str(&coeff);
        } else {
            if !(x.is_real() && c.re == 1.0) {
                out.push_str(&coeff);
                out.push(' ');
            }
            out.push_str(&format_blade(b, sig, style));
        }
    }
    out
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_multivector(self, Style::default()))
    }
}

/// Parses a multivector literal or expression and evaluates it.
pub fn parse_multivector(source: &str, sig: Signature) -> Result<Multivector> {
    parse(source, sig)?.eval(sig)
}

// ---- AST -------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Rev,
    Inv,
    GradeInv,
    Conj,
    Dual,
    Exp,
}

impl UnaryOp {
    fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Rev => "rev",
            UnaryOp::Inv => "inv",
            UnaryOp::GradeInv => "gradeinv",
            UnaryOp::Conj => "conj",
            UnaryOp::Dual => "dual",
            UnaryOp::Exp => "exp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Wedge,
    LeftContract,
    RightContract,
    Dot,
}

impl BinaryOp {
    fn symbol(self, ascii: bool) -> &'static str {
        match (self, ascii) {
            (BinaryOp::Add, _) => "+",
            (BinaryOp::Sub, _) => "-",
            (BinaryOp::Mul, _) => "*",
            (BinaryOp::Wedge, true) => "^",
            (BinaryOp::Wedge, false) => "∧",
            (BinaryOp::LeftContract, true) => "_|",
            (BinaryOp::LeftContract, false) => "⌟",
            (BinaryOp::RightContract, true) => "|_",
            (BinaryOp::RightContract, false) => "⌞",
            (BinaryOp::Dot, true) => ".",
            (BinaryOp::Dot, false) => "·",
        }
    }
}

/// Expression tree; blade indices are checked against the signature at parse time.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Imaginary,
    /// 0-based generator index.
    Generator(usize),
    Unary(UnaryOp, Box<Expr>),
    Grade(Box<Expr>, usize),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, sig: Signature) -> Result<Multivector> {
        Ok(match self {
            Expr::Number(x) => Multivector::scalar(sig, *x),
            Expr::Imaginary => Multivector::imaginary_unit(sig),
            Expr::Generator(i) => {
                if *i >= sig.n() {
                    return Err(CliffordError::BladeOutOfRange {
                        mask: 1 << i,
                        n: sig.n(),
                    });
                }
                Multivector::generator(sig, *i)
            }
            Expr::Unary(op, a) => {
                let a = a.eval(sig)?;
                match op {
                    UnaryOp::Neg => -&a,
                    UnaryOp::Rev => a.reversion(),
                    UnaryOp::Inv => a.inverse()?,
                    UnaryOp::GradeInv => a.grade_involution(),
                    UnaryOp::Conj => a.conjugation(),
                    UnaryOp::Dual => a.hodge_dual()?,
                    UnaryOp::Exp => a.exp_series(),
                }
            }
            Expr::Grade(a, k) => a.eval(sig)?.grade_part(*k)?,
            Expr::Binary(op, a, b) => {
                let a = a.eval(sig)?;
                let b = b.eval(sig)?;
                match op {
                    BinaryOp::Add => &a + &b,
                    BinaryOp::Sub => &a - &b,
                    BinaryOp::Mul => a.geometric_product(&b)?,
                    BinaryOp::Wedge => a.wedge(&b)?,
                    BinaryOp::LeftContract => a.left_contraction(&b)?,
                    BinaryOp::RightContract => a.right_contraction(&b)?,
                    BinaryOp::Dot => {
                        let z = a.scalar_product(&b)?;
                        if a.is_real() && b.is_real() {
                            Multivector::scalar(sig, z.re)
                        } else {
                            Multivector::complex_scalar(sig, z)
                        }
                    }
                }
            }
        })
    }

    /// Fully parenthesised rendering that parses back to the same tree.
    pub fn render(&self, sig: Signature, style: Style) -> String {
        match self {
            Expr::Number(x) => {
                let s = format_real(*x);
                if *x < 0.0 {
                    format!("({s})")
                } else {
                    s
                }
            }
            Expr::Imaginary => "i".into(),
            Expr::Generator(i) => format_blade(Blade::generator(*i), sig, style),
            Expr::Unary(UnaryOp::Neg, a) => format!("(-{})", a.render(sig, style)),
            Expr::Unary(op, a) => format!("{}({})", op.name(), a.render(sig, style)),
            Expr::Grade(a, k) => format!("grade({}, {k})", a.render(sig, style)),
            Expr::Binary(op, a, b) => format!(
                "({} {} {})",
                a.render(sig, style),
                op.symbol(style.ascii),
                b.render(sig, style)
            ),
        }
    }
}

// ---- lexer -----------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(BinaryOp),
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(source: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    let err = |line, column, message: String| CliffordError::Parse {
        line,
        column,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let tok = if two == "_|" {
            advance(2, &mut i, &mut col);
            Tok::Op(BinaryOp::LeftContract)
        } else if two == "|_" {
            advance(2, &mut i, &mut col);
            Tok::Op(BinaryOp::RightContract)
        } else if c.is_ascii_digit()
            || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let start = i;
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                j += 1;
            }
            if j < chars.len() && (chars[j] == 'e' || chars[j] == 'E') {
                let mut k = j + 1;
                if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                    k += 1;
                }
                if k < chars.len() && chars[k].is_ascii_digit() {
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    j = k;
                }
            }
            let text: String = chars[start..j].iter().collect();
            let value: f64 = text
                .parse()
                .map_err(|_| err(tl, tc, format!("invalid number '{text}'")))?;
            advance(j - i, &mut i, &mut col);
            Tok::Num(value)
        } else if c.is_alphabetic() {
            let start = i;
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let text: String = chars[start..j].iter().collect();
            advance(j - i, &mut i, &mut col);
            Tok::Ident(text)
        } else {
            let tok = match c {
                '+' => Tok::Op(BinaryOp::Add),
                '-' => Tok::Op(BinaryOp::Sub),
                '*' => Tok::Op(BinaryOp::Mul),
                '^' | '∧' => Tok::Op(BinaryOp::Wedge),
                '⌟' => Tok::Op(BinaryOp::LeftContract),
                '⌞' => Tok::Op(BinaryOp::RightContract),
                '.' | '·' => Tok::Op(BinaryOp::Dot),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                other => return Err(err(tl, tc, format!("unexpected character '{other}'"))),
            };
            advance(1, &mut i, &mut col);
            tok
        };
        out.push(Token {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

// ---- parser ----------------------------------------------------------------

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    sig: Signature,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, message: impl Into<String>) -> CliffordError {
        CliffordError::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let t = self.next();
        if t.tok == want {
            Ok(())
        } else {
            Err(self.error_at(&t, format!("expected {what}")))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.products()?;
        loop {
            let op = match self.peek().tok {
                Tok::Op(op @ (BinaryOp::Add | BinaryOp::Sub)) => op,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.products()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn products(&mut self) -> Result<Expr> {
        let mut lhs = self.geometric()?;
        loop {
            let op = match self.peek().tok {
                Tok::Op(
                    op @ (BinaryOp::Wedge
                    | BinaryOp::LeftContract
                    | BinaryOp::RightContract
                    | BinaryOp::Dot),
                ) => op,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.geometric()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn geometric(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Op(BinaryOp::Mul) => {
                    self.next();
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {}
                _ => return Ok(lhs),
            }
            let rhs = self.unary()?;
            lhs = Expr::Binary(BinaryOp::Mul, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek().tok {
            Tok::Op(BinaryOp::Sub) => {
                self.next();
                Ok(Expr::Unary(UnaryOp::Neg, Box::new(self.unary()?)))
            }
            Tok::Op(BinaryOp::Add) => {
                self.next();
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn generator(&self, t: &Token, name: &str) -> Result<Option<Expr>> {
        let n = self.sig.n();
        let (base, digits) = name.split_at(1);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let idx: usize = digits
            .parse()
            .map_err(|_| self.error_at(t, format!("bad generator '{name}'")))?;
        let zero_based = match base {
            "e" if idx >= 1 => idx - 1,
            "g" if self.sig == Signature::spacetime() => idx,
            "e" => return Err(self.error_at(t, "generators are numbered from e1")),
            _ => return Ok(None),
        };
        if zero_based >= n {
            return Err(self.error_at(t, format!("unknown generator '{name}' in {}", self.sig)));
        }
        Ok(Some(Expr::Generator(zero_based)))
    }

    fn primary(&mut self) -> Result<Expr> {
        let t = self.next();
        match &t.tok {
            Tok::Num(x) => Ok(Expr::Number(*x)),
            Tok::LParen => {
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if name == "i" {
                    return Ok(Expr::Imaginary);
                }
                if let Some(g) = self.generator(&t, name)? {
                    return Ok(g);
                }
                let op = match name.as_str() {
                    "rev" => UnaryOp::Rev,
                    "inv" => UnaryOp::Inv,
                    "gradeinv" => UnaryOp::GradeInv,
                    "conj" => UnaryOp::Conj,
                    "dual" => UnaryOp::Dual,
                    "exp" => UnaryOp::Exp,
                    "grade" => {
                        self.expect(Tok::LParen, "'(' after grade")?;
                        let arg = self.sum()?;
                        self.expect(Tok::Comma, "',' in grade(x, k)")?;
                        let kt = self.next();
                        let k = match kt.tok {
                            Tok::Num(k) if k >= 0.0 && k.fract() == 0.0 => k as usize,
                            _ => {
                                return Err(self
                                    .error_at(&kt, "grade index must be a non-negative integer"))
                            }
                        };
                        if k > self.sig.n() {
                            return Err(self
                                .error_at(&kt, format!("grade {k} exceeds n = {}", self.sig.n())));
                        }
                        self.expect(Tok::RParen, "')'")?;
                        return Ok(Expr::Grade(Box::new(arg), k));
                    }
                    _ => return Err(self.error_at(&t, format!("unknown name '{name}'"))),
                };
                self.expect(Tok::LParen, &format!("'(' after {name}"))?;
                let arg = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Unary(op, Box::new(arg)))
            }
            Tok::End => Err(self.error_at(&t, "unexpected end of input")),
            _ => Err(self.error_at(&t, "expected a number, generator, function or '('")),
        }
    }
}

/// Recursive-descent parse of an expression for the given signature.
pub fn parse(source: &str, sig: Signature) -> Result<Expr> {
    let toks = lex(source)?;
    let mut p = Parser { toks, pos: 0, sig };
    let e = p.sum()?;
    let t = p.next();
    if t.tok != Tok::End {
        return Err(p.error_at(&t, "unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str, p: usize, q: usize) -> Multivector {
        parse_multivector(s, Signature::new(p, q).unwrap()).unwrap()
    }

    #[test]
    fn prints_literals() {
        let sig = Signature::spacetime();
        let x = &Multivector::scalar(sig, 0.5) + &Multivector::generator(sig, 0).scale(0.5);
        assert_eq!(x.to_string(), "0.5 + 0.5 e1");
        assert_eq!(
            Multivector::blade(sig, Blade(0b101), 2.0).to_string(),
            "2 e1^e3"
        );
        assert_eq!(
            Multivector::blade(sig, Blade(0b10), -1.0).to_string(),
            "- e2"
        );
        assert_eq!(Multivector::zero(sig).to_string(), "0");
        let z = Multivector::complex_scalar(sig, Complex64::new(0.5, -2.0));
        assert_eq!(z.to_string(), "(0.5-2i)");
    }

    #[test]
    fn literal_round_trip() {
        let sig = Signature::spacetime();
        for s in [
            "0.5 + 0.5 e1",
            "2 e1^e3",
            "- e2 + 3 e1^e2^e3^e4",
            "(1+2i) e2",
        ] {
            let x = parse_multivector(s, sig).unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    #[test]
    fn evaluates_products() {
        assert_eq!(eval("e1*e1", 1, 3), eval("1", 1, 3));
        assert_eq!(eval("e2*e2", 1, 3), eval("-1", 1, 3));
        assert_eq!(eval("rev(e1^e2)", 1, 3), eval("-e1^e2", 1, 3));
        assert!(eval("(1 + e1)*(1 - e1)", 1, 0).is_zero());
        assert!(eval("e1*e2 + e2*e1", 1, 3).is_zero());
        assert_eq!(eval("g0 g1", 1, 3), eval("e1 e2", 1, 3));
        assert_eq!(eval("grade(1 + e1 + e1^e2, 1)", 2, 0), eval("e1", 2, 0));
        assert_eq!(eval("e1 . e1", 1, 3), eval("1", 1, 3));
        assert_eq!(eval("e1 _| (e1^e2)", 1, 3), eval("e2", 1, 3));
        assert_eq!(eval("2e-1 e1", 1, 3), eval("0.2 e1", 1, 3));
    }

    #[test]
    fn precedence() {
        let sig = Signature::new(3, 0).unwrap();
        // * binds tighter than ^, which binds tighter than +
        assert_eq!(
            parse("e1 ^ e2 * e3 + 1", sig).unwrap(),
            parse("((e1 ^ (e2 * e3)) + 1)", sig).unwrap()
        );
        assert_eq!(
            parse("-e1*e2", sig).unwrap(),
            parse("(-e1)*e2", sig).unwrap()
        );
    }

    #[test]
    fn errors_carry_position() {
        let sig = Signature::spacetime();
        match parse("1 +\n  e9", sig) {
            Err(CliffordError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("(e1", sig),
            Err(CliffordError::Parse { .. })
        ));
        assert!(matches!(
            parse("e1 $", sig),
            Err(CliffordError::Parse { .. })
        ));
        assert!(matches!(
            parse("g1", Signature::new(3, 0).unwrap()),
            Err(CliffordError::Parse { .. })
        ));
    }
}
