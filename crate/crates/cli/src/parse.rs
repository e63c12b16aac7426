//! Grammar for operators, subspaces and automorphism words.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := base ('^' ['-'] digits)?
//! base   := rational | 't' | 'D' | 'E' | '(' expr ')'
//! pd     := 'pd' '(' digits (';' expr (',' expr)*)? ')'
//! word   := item (';' item)* | 'id'
//! item   := 'exp' '(' 'ad' '(' expr ')' ')' | 'expD' '(' 'ad' '(' expr ')' ')'
//!         | 'theta' ('^' '-1')?
//! ```
//!
//! Products keep their written order. `E` stands for `t*D`. Positions in
//! errors are byte offsets into the input.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use weylkit::automorphism::WordItem;
use weylkit::{AutomorphismWord, Generator, LaurentPoly, PdSubspace, Poly, Rational, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("PARSE_ERROR at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("NEGATIVE_D_POWER at {pos}: only powers of t may have negative exponents")]
    NegativeDPower { pos: usize },
    #[error("NOT_INVERTIBLE at {pos}: negative power of an element that is not a monomial in t")]
    NotInvertible { pos: usize },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "PARSE_ERROR",
            ParseError::NegativeDPower { .. } => "NEGATIVE_D_POWER",
            ParseError::NotInvertible { .. } => "NOT_INVERTIBLE",
        }
    }
}

pub type ParseResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rational(Rational),
    T,
    D,
    E,
    Pow { base: Box<Expr>, exp: i64, pos: usize },
    Product(Vec<Expr>),
    Sum(Vec<Expr>),
    Neg(Box<Expr>),
    Paren(Box<Expr>),
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(|c: char| c.is_whitespace()) {
            self.pos += self.rest().chars().next().map_or(0, char::len_utf8);
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn error<T>(&self, msg: impl Into<String>) -> ParseResult<T> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> ParseResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    /// Consumes `kw` if it is the next word (not followed by a letter).
    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        let boundary = rest[kw.len().min(rest.len())..].chars().next().is_none_or(|c| !c.is_ascii_alphanumeric());
        if rest.starts_with(kw) && boundary {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> ParseResult<()> {
        if self.keyword(kw) {
            Ok(())
        } else {
            self.error(format!("expected '{kw}'"))
        }
    }

    fn digits(&mut self) -> ParseResult<BigInt> {
        self.skip_ws();
        let len = self.rest().chars().take_while(char::is_ascii_digit).count();
        if len == 0 {
            return self.error("expected digits");
        }
        let n = self.rest()[..len].parse().expect("ascii digits");
        self.pos += len;
        Ok(n)
    }

    fn small_int(&mut self) -> ParseResult<i64> {
        let start = self.pos;
        let neg = self.eat('-');
        let n: BigInt = self.digits()?;
        let n = if neg { -n } else { n };
        i64::try_from(n).map_err(|_| ParseError::Syntax { pos: start, msg: "exponent out of range".into() })
    }

    fn finish(&mut self) -> ParseResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected '{c}'")),
        }
    }

    fn expr(&mut self) -> ParseResult<Expr> {
        let mut terms = Vec::new();
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            terms.push(if negate { Expr::Neg(Box::new(t)) } else { t });
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { Expr::Sum(terms) })
    }

    fn starts_base(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || matches!(c, 't' | 'D' | 'E' | '('))
    }

    fn term(&mut self) -> ParseResult<Expr> {
        let mut factors = vec![self.factor()?];
        loop {
            if self.eat('*') || self.starts_base() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> ParseResult<Expr> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            let pos = self.pos;
            self.pos += 1;
            let exp = self.small_int()?;
            return Ok(Expr::Pow { base: Box::new(base), exp, pos });
        }
        Ok(base)
    }

    fn base(&mut self) -> ParseResult<Expr> {
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(Expr::T)
            }
            Some('D') => {
                self.pos += 1;
                Ok(Expr::D)
            }
            Some('E') => {
                self.pos += 1;
                Ok(Expr::E)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Paren(Box::new(inner)))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let den = if self.rest().starts_with('/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.digits()?;
                    if den.is_zero() {
                        return Err(ParseError::Syntax { pos: at, msg: "zero denominator".into() });
                    }
                    den
                } else {
                    BigInt::one()
                };
                Ok(Expr::Rational(Rational::new(num, den)))
            }
            Some(c) => self.error(format!("unexpected '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }

    fn element(&mut self) -> ParseResult<WeylElement> {
        elaborate(&self.expr()?)
    }

    fn t_poly(&mut self) -> ParseResult<Poly> {
        self.skip_ws();
        let at = self.pos;
        let e = self.element()?;
        e.as_t_poly().ok_or(ParseError::Syntax { pos: at, msg: format!("expected a polynomial in t, got {e}") })
    }

    fn d_poly(&mut self) -> ParseResult<Poly> {
        self.skip_ws();
        let at = self.pos;
        let e = self.element()?;
        e.as_d_poly().ok_or(ParseError::Syntax { pos: at, msg: format!("expected a polynomial in D, got {e}") })
    }

    fn pd(&mut self) -> ParseResult<PdSubspace> {
        self.expect_keyword("pd")?;
        self.expect('(')?;
        let at = self.pos;
        let n = usize::try_from(self.digits()?)
            .map_err(|_| ParseError::Syntax { pos: at, msg: "conductor exponent out of range".into() })?;
        let mut gens = Vec::new();
        if self.eat(';') {
            loop {
                gens.push(self.t_poly()?);
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect(')')?;
        Ok(PdSubspace::new(&gens, n))
    }

    fn word_item(&mut self) -> ParseResult<WordItem> {
        if self.keyword("theta") {
            let inverted = if self.eat('^') {
                let at = self.pos;
                if self.small_int()? != -1 {
                    return Err(ParseError::Syntax { pos: at, msg: "theta only takes the exponent -1".into() });
                }
                true
            } else {
                false
            };
            return Ok(WordItem { generator: Generator::Theta, inverted });
        }
        let on_d = if self.keyword("expD") {
            true
        } else if self.keyword("exp") {
            false
        } else {
            return self.error("expected 'exp', 'expD' or 'theta'");
        };
        self.expect('(')?;
        self.expect_keyword("ad")?;
        self.expect('(')?;
        let generator = if on_d { Generator::ExpAdD(self.d_poly()?) } else { Generator::ExpAdT(self.t_poly()?) };
        self.expect(')')?;
        self.expect(')')?;
        Ok(WordItem { generator, inverted: false })
    }

    fn word(&mut self) -> ParseResult<AutomorphismWord> {
        let mut word = AutomorphismWord::identity();
        if self.keyword("id") {
            return Ok(word);
        }
        loop {
            word.push(self.word_item()?);
            if !self.eat(';') {
                break;
            }
        }
        Ok(word)
    }
}

pub fn parse_expr(text: &str) -> ParseResult<Expr> {
    let mut c = Cursor::new(text);
    let e = c.expr()?;
    c.finish()?;
    Ok(e)
}

pub fn elaborate(e: &Expr) -> ParseResult<WeylElement> {
    Ok(match e {
        Expr::Rational(q) => WeylElement::constant(q.clone()),
        Expr::T => WeylElement::t(),
        Expr::D => WeylElement::d(),
        Expr::E => WeylElement::euler(),
        Expr::Pow { base, exp, pos } => {
            let b = elaborate(base)?;
            if *exp >= 0 {
                let k = u32::try_from(*exp)
                    .map_err(|_| ParseError::Syntax { pos: *pos, msg: "exponent out of range".into() })?;
                b.pow(k)
            } else {
                invert_power(&b, *exp, *pos)?
            }
        }
        Expr::Product(fs) => fs.iter().try_fold(WeylElement::one(), |acc, f| Ok(&acc * &elaborate(f)?))?,
        Expr::Sum(ts) => ts.iter().try_fold(WeylElement::zero(), |acc, t| Ok(&acc + &elaborate(t)?))?,
        Expr::Neg(inner) => -elaborate(inner)?,
        Expr::Paren(inner) => elaborate(inner)?,
    })
}

/// `(c t^i)^exp` for `exp < 0`.
fn invert_power(b: &WeylElement, exp: i64, pos: usize) -> ParseResult<WeylElement> {
    if b.deg_d().is_some_and(|d| d > 0) {
        return Err(ParseError::NegativeDPower { pos });
    }
    let mut terms = b.terms();
    let (Some((i, _, c)), None) = (terms.next(), terms.next()) else {
        return Err(ParseError::NotInvertible { pos });
    };
    let k = -exp;
    let c = c.recip();
    let mut scale = Rational::one();
    for _ in 0..k {
        scale *= &c;
    }
    Ok(WeylElement::monomial(scale, -i * k, 0))
}

pub fn parse_element(text: &str) -> ParseResult<WeylElement> {
    elaborate(&parse_expr(text)?)
}

pub fn parse_t_poly(text: &str) -> ParseResult<Poly> {
    let mut c = Cursor::new(text);
    let p = c.t_poly()?;
    c.finish()?;
    Ok(p)
}

pub fn parse_d_poly(text: &str) -> ParseResult<Poly> {
    let mut c = Cursor::new(text);
    let p = c.d_poly()?;
    c.finish()?;
    Ok(p)
}

/// A Laurent polynomial in `t`, i.e. an element without `D`.
pub fn parse_laurent(text: &str) -> ParseResult<LaurentPoly> {
    let e = parse_element(text)?;
    if e.deg_d().is_some_and(|d| d > 0) {
        return Err(ParseError::Syntax { pos: 0, msg: format!("expected a Laurent polynomial in t, got {e}") });
    }
    Ok(e.terms().fold(LaurentPoly::zero(), |acc, (i, _, c)| &acc + &LaurentPoly::monomial(c.clone(), i)))
}

pub fn parse_pd(text: &str) -> ParseResult<PdSubspace> {
    let mut c = Cursor::new(text);
    let v = c.pd()?;
    c.finish()?;
    Ok(v)
}

pub fn parse_word(text: &str) -> ParseResult<AutomorphismWord> {
    let mut c = Cursor::new(text);
    let w = c.word()?;
    c.finish()?;
    Ok(w)
}
