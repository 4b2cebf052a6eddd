//! Expression syntax for elements of the algebra and its forms.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' '-'? int)?
//! atom   := generator | int | '(' expr ')'
//! ```

use std::fmt;

use qeuclid_core::geometry::Geometry;
use qeuclid_core::soq3::{MINUS, PLUS, ZERO};
use qeuclid_core::{Element, Error, Result, ScalarQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    X(usize),
    Xi(usize),
    Th(usize),
    Lam,
    R,
    Q,
    S,
    H,
}

impl Gen {
    pub const ALL: [Gen; 14] = [
        Gen::X(MINUS),
        Gen::X(ZERO),
        Gen::X(PLUS),
        Gen::Xi(MINUS),
        Gen::Xi(ZERO),
        Gen::Xi(PLUS),
        Gen::Th(MINUS),
        Gen::Th(ZERO),
        Gen::Th(PLUS),
        Gen::Lam,
        Gen::R,
        Gen::Q,
        Gen::S,
        Gen::H,
    ];

    pub fn invertible(self) -> bool {
        matches!(self, Gen::X(ZERO) | Gen::Lam | Gen::R | Gen::Q | Gen::S | Gen::H)
    }

    pub fn token(self) -> &'static str {
        match self {
            Gen::X(MINUS) => "x-",
            Gen::X(ZERO) => "x0",
            Gen::X(_) => "x+",
            Gen::Xi(MINUS) => "xi-",
            Gen::Xi(ZERO) => "xi0",
            Gen::Xi(_) => "xi+",
            Gen::Th(MINUS) => "th-",
            Gen::Th(ZERO) => "th0",
            Gen::Th(_) => "th+",
            Gen::Lam => "L",
            Gen::R => "r",
            Gen::Q => "q",
            Gen::S => "s",
            Gen::H => "h",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Gen(Gen),
    Int(u64),
    Group(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub atom: Atom,
    pub exp: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    /// `true` marks a subtracted term.
    pub terms: Vec<(bool, Term)>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok {
    Gen(Gen),
    Int(u64),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    /// Next token and its byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, start));
        };
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((t, start));
        }
        if c.is_ascii_digit() {
            let len = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            let v = rest[..len].parse::<u64>().map_err(|_| err(start, "integer literal too large"))?;
            self.pos += len;
            return Ok((Tok::Int(v), start));
        }
        // longest generator token first
        let mut best: Option<Gen> = None;
        for g in Gen::ALL {
            let t = g.token();
            if rest.starts_with(t) && best.is_none_or(|b| b.token().len() < t.len()) {
                best = Some(g);
            }
        }
        match best {
            Some(g) => {
                self.pos += g.token().len();
                Ok((Tok::Gen(g), start))
            }
            None => Err(err(start, format!("unexpected character {c:?}; expected a generator, an integer, '(' or an operator"))),
        }
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        let (t, at) = self.lex.next()?;
        self.tok = t;
        self.at = at;
        Ok(())
    }

    fn starts_factor(&self) -> bool {
        matches!(self.tok, Tok::Gen(_) | Tok::Int(_) | Tok::Open)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut neg = false;
        match self.tok {
            Tok::Minus => {
                neg = true;
                self.bump()?;
            }
            Tok::Plus => self.bump()?,
            _ => {}
        }
        terms.push((neg, self.term()?));
        loop {
            let neg = match self.tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump()?;
            terms.push((neg, self.term()?));
        }
        Ok(Expr { terms })
    }

    fn term(&mut self) -> Result<Term> {
        if !self.starts_factor() {
            return Err(err(self.at, "expected one of: generator, integer, '('"));
        }
        let mut factors = vec![self.factor()?];
        loop {
            if self.tok == Tok::Star {
                self.bump()?;
                if !self.starts_factor() {
                    return Err(err(self.at, "expected one of: generator, integer, '(' after '*'"));
                }
            } else if !self.starts_factor() {
                break;
            }
            factors.push(self.factor()?);
        }
        Ok(Term { factors })
    }

    fn factor(&mut self) -> Result<Factor> {
        let start = self.at;
        let atom = match self.tok {
            Tok::Gen(g) => {
                self.bump()?;
                Atom::Gen(g)
            }
            Tok::Int(v) => {
                self.bump()?;
                Atom::Int(v)
            }
            Tok::Open => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::Close {
                    return Err(err(self.at, "expected one of: ')', '+', '-', '*', generator, integer, '('"));
                }
                self.bump()?;
                Atom::Group(Box::new(inner))
            }
            _ => return Err(err(self.at, "expected one of: generator, integer, '('")),
        };
        let mut exp = None;
        if self.tok == Tok::Caret {
            self.bump()?;
            let neg = if self.tok == Tok::Minus {
                self.bump()?;
                true
            } else {
                false
            };
            let Tok::Int(v) = self.tok else {
                return Err(err(self.at, "expected an integer exponent"));
            };
            let v = i32::try_from(v).map_err(|_| err(self.at, "exponent too large"))?;
            self.bump()?;
            exp = Some(if neg { -v } else { v });
        }
        if exp.is_some_and(|e| e < 0) && !invertible(&atom) {
            return Err(err(start, format!("non-invertible factor {atom} raised to a negative power")));
        }
        Ok(Factor { atom, exp })
    }
}

fn invertible(a: &Atom) -> bool {
    match a {
        Atom::Gen(g) => g.invertible(),
        Atom::Int(v) => *v != 0,
        Atom::Group(e) => match e.terms.as_slice() {
            [(false, t)] => match t.factors.as_slice() {
                [f] => invertible(&f.atom),
                _ => false,
            },
            _ => false,
        },
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { lex: Lexer { src: text, pos: 0 }, tok: Tok::End, at: 0 };
    p.bump()?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(err(p.at, "expected one of: '+', '-', '*', generator, integer, '(' or end of input"));
    }
    Ok(e)
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Gen(g) => f.write_str(g.token()),
            Atom::Int(v) => write!(f, "{v}"),
            Atom::Group(e) => write!(f, "({e})"),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.atom)?;
        if let Some(e) = self.exp {
            write!(f, "^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (neg, t)) in self.terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn scalar_gen(g: Gen) -> Option<ScalarQ> {
    match g {
        Gen::Q => Some(ScalarQ::q()),
        Gen::S => Some(ScalarQ::s()),
        Gen::H => Some(ScalarQ::h()),
        _ => None,
    }
}

fn eval_gen(geo: &Geometry, g: Gen, e: i32) -> Result<Element> {
    let alg = geo.alg();
    if let Some(c) = scalar_gen(g) {
        return Ok(Element::scalar(c.pow(e)?));
    }
    match g {
        Gen::Lam => return Ok(alg.lam(e)),
        Gen::R => return Ok(alg.r(e)),
        Gen::X(ZERO) => return Ok(alg.x0(e)),
        _ => {}
    }
    let base = match g {
        Gen::X(i) => alg.x(i),
        Gen::Xi(i) => alg.xi(i),
        Gen::Th(a) => geo.frame().theta[a].clone(),
        _ => unreachable!("handled above"),
    };
    alg.pow(&base, e as u32)
}

fn eval_factor(geo: &Geometry, f: &Factor) -> Result<Element> {
    let e = f.exp.unwrap_or(1);
    match &f.atom {
        Atom::Gen(g) => eval_gen(geo, *g, e),
        Atom::Int(v) => {
            let c = ScalarQ::int(i64::try_from(*v).map_err(|_| err(0, "integer literal too large"))?);
            Ok(Element::scalar(c.pow(e)?))
        }
        Atom::Group(inner) => {
            if e < 0 {
                // only a lone invertible factor passes the parser here
                let t = &inner.terms[0].1.factors[0];
                let exp = t.exp.unwrap_or(1).checked_mul(e).ok_or_else(|| err(0, "exponent overflow"))?;
                return eval_factor(geo, &Factor { atom: t.atom.clone(), exp: Some(exp) });
            }
            geo.alg().pow(&eval(geo, inner)?, e as u32)
        }
    }
}

/// Evaluates to a normal-form element.
pub fn eval(geo: &Geometry, e: &Expr) -> Result<Element> {
    let alg = geo.alg();
    let mut out = Element::zero();
    for (neg, t) in &e.terms {
        let mut acc = Element::one();
        for f in &t.factors {
            acc = alg.mul(&acc, &eval_factor(geo, f)?)?;
        }
        out = if *neg { out - acc } else { out + acc };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn juxtaposition_and_star_agree() {
        assert_eq!(parse("x+ * x0").unwrap(), parse("x+ x0").unwrap());
        let e = parse("q*L^-2 * xi0").unwrap();
        assert_eq!(e.terms[0].1.factors.len(), 3);
        assert_eq!(e.terms[0].1.factors[1].exp, Some(-2));
    }

    #[test]
    fn rejects_non_invertible_inverse() {
        let e = parse("(x+)^-1").unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 0, .. }), "{e}");
        assert!(parse("x0^-1 r^-2 (L)^-1").is_ok());
    }

    #[test]
    fn reports_offsets() {
        match parse("x0 + * r") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        match parse("x0 ? r") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse("(x0").is_err());
    }

    #[test]
    fn minus_after_generator() {
        let e = parse("x+ - x-").unwrap();
        assert_eq!(e.terms.len(), 2);
        let e = parse("x+x-").unwrap();
        assert_eq!(e.terms[0].1.factors.len(), 2);
    }
}
