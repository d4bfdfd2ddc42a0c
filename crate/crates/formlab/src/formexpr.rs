//! Textual form-expression language.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! form    := term (("+"|"-") term)* ;
//! term    := [scalar "*"] [char "*"] monomial | scalar ;
//! scalar  := "(" rat [("+"|"-") rat "i"] ")" | integer ;
//! rat     := integer ["/" positive-integer] ;
//! char    := "x(" gint "," gint ")" ;          (* sector e^{a·w + b·w̄} *)
//! gint    := integer | [integer ("+"|"-")] integer "i" ;
//! monomial:= gen ("^" gen)* ;
//! gen     := "e" digit | "E" digit ;           (* e = η (1,0), E = η̄ (0,1) *)
//! ```
//!
//! `parse_form` produces the canonical [`Form`]; `format_form` renders it so
//! that `parse_form(format_form(f)) == f`.

use crate::exterior::{Form, GaussInt, Monomial, Sector};
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Syntax or range error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: {msg}")]
pub struct FormParseError {
    pub offset: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    rank: u8,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, FormParseError> {
        Err(FormParseError { offset: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), FormParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt, FormParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'+') | Some(b'-')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn rational(&mut self) -> Result<BigRational, FormParseError> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let den_pos = self.pos;
            let den = self.integer()?;
            if den.is_zero() || den.is_negative() {
                self.pos = den_pos;
                return self.err("denominator must be a positive integer");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// `( rat [± rat i] )` or a bare integer.
    fn scalar(&mut self) -> Result<Scalar, FormParseError> {
        if self.eat(b'(') {
            let first = self.rational()?;
            let mut value = if self.eat(b'i') {
                Scalar::new(BigRational::zero(), first)
            } else {
                Scalar::from_rational(first)
            };
            if value.is_real() {
                if let Some(sign @ (b'+' | b'-')) = self.peek() {
                    self.pos += 1;
                    let im = self.rational()?;
                    self.expect(b'i')?;
                    let im = if sign == b'-' { -im } else { im };
                    value = Scalar::new(value.re.clone(), im);
                }
            }
            self.expect(b')')?;
            Ok(value)
        } else {
            Ok(Scalar::from_rational(BigRational::from_integer(
                self.integer()?,
            )))
        }
    }

    /// `integer`, `[integer ±] integer i`, or bare `i`/`-i`.
    fn gauss_int(&mut self) -> Result<GaussInt, FormParseError> {
        self.skip_ws();
        // bare i / -i / +i
        let save = self.pos;
        let mut sign = 1i64;
        if matches!(self.src.get(self.pos), Some(b'+') | Some(b'-')) {
            if self.src[self.pos] == b'-' {
                sign = -1;
            }
            self.pos += 1;
        }
        if self.src.get(self.pos) == Some(&b'i') {
            self.pos += 1;
            return Ok(GaussInt::new(0, sign));
        }
        self.pos = save;

        let first = self.integer()?;
        let first: i64 = match (&first).try_into() {
            Ok(v) => v,
            Err(_) => return self.err("sector exponent out of range"),
        };
        if self.eat(b'i') {
            return Ok(GaussInt::new(0, first));
        }
        let save = self.pos;
        if let Some(sign @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            if self.src.get(self.pos) == Some(&b'i') {
                self.pos += 1;
                return Ok(GaussInt::new(first, if sign == b'-' { -1 } else { 1 }));
            }
            match self.integer() {
                Ok(im) if self.eat(b'i') => {
                    let im: i64 = match (&im).try_into() {
                        Ok(v) => v,
                        Err(_) => return self.err("sector exponent out of range"),
                    };
                    let im = if sign == b'-' { -im } else { im };
                    return Ok(GaussInt::new(first, im));
                }
                _ => {
                    self.pos = save;
                }
            }
        }
        Ok(GaussInt::new(first, 0))
    }

    fn sector(&mut self) -> Result<Sector, FormParseError> {
        self.expect(b'x')?;
        self.expect(b'(')?;
        let a = self.gauss_int()?;
        self.expect(b',')?;
        let b = self.gauss_int()?;
        self.expect(b')')?;
        Ok(Sector::new(a, b))
    }

    fn generator(&mut self) -> Result<(bool, u8), FormParseError> {
        let holo = match self.peek() {
            Some(b'e') => true,
            Some(b'E') => false,
            _ => return self.err("expected generator 'e<digit>' or 'E<digit>'"),
        };
        self.pos += 1;
        let Some(d) = self.bump() else {
            return self.err("expected generator index");
        };
        if !d.is_ascii_digit() {
            self.pos -= 1;
            return self.err("expected generator index digit");
        }
        let idx = d - b'0';
        if idx == 0 || idx > self.rank {
            self.pos -= 1;
            return self.err(format!("generator index out of range 1..={}", self.rank));
        }
        Ok((holo, idx))
    }

    /// `gen (^ gen)*` as a form (zero if a generator repeats).
    fn monomial(&mut self) -> Result<Form, FormParseError> {
        let mut acc = Form::one();
        loop {
            let (holo, idx) = self.generator()?;
            let gen = if holo {
                Form::holo_gen(idx)
            } else {
                Form::anti_gen(idx)
            };
            acc = acc.wedge(&gen);
            if !self.eat(b'^') {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Form, FormParseError> {
        let mut coeff = Scalar::one();
        let mut sector = Sector::TRIVIAL;
        let mut saw_prefix = false;

        // optional scalar factor
        if let Some(c) = self.peek() {
            if c == b'(' || c.is_ascii_digit() || c == b'-' || c == b'+' {
                coeff = self.scalar()?;
                saw_prefix = true;
                if !self.eat(b'*') {
                    return Ok(Form::from_monomial(Monomial::unit(), coeff));
                }
            }
        }
        // optional character factor; a trailing `x(a,b)` with no monomial
        // denotes the constant χ·1 in that sector
        if self.peek() == Some(b'x') {
            sector = self.sector()?;
            saw_prefix = true;
            if !self.eat(b'*') {
                return Ok(Form::from_monomial(Monomial::new(sector, 0, 0), coeff));
            }
        }
        match self.peek() {
            Some(b'e') | Some(b'E') => {
                let m = self.monomial()?;
                let twist = Form::from_monomial(Monomial::new(sector, 0, 0), coeff);
                Ok(twist.wedge(&m))
            }
            _ if saw_prefix => self.err("expected monomial after '*'"),
            _ => self.err("expected term"),
        }
    }

    fn form(&mut self) -> Result<Form, FormParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                Some(_) => return self.err("unexpected trailing input"),
                None => return Ok(acc),
            }
        }
    }
}

/// Parse a form expression over a rank-`n` coframe.
pub fn parse_form(text: &str, rank: u8) -> Result<Form, FormParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, rank };
    p.form()
}

fn format_monomial(m: &Monomial) -> String {
    let mut gens = Vec::new();
    for i in 0..16 {
        if m.holo >> i & 1 == 1 {
            gens.push(format!("e{}", i + 1));
        }
    }
    for i in 0..16 {
        if m.anti >> i & 1 == 1 {
            gens.push(format!("E{}", i + 1));
        }
    }
    gens.join("^")
}

fn format_scalar_factor(c: &Scalar) -> String {
    if c.is_real() && c.re.denom().is_one() {
        format!("{}", c.re.numer())
    } else {
        format!("({c})")
    }
}

/// Canonical rendering; one term per monomial in canonical order.
pub fn format_form(f: &Form) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in f.terms().enumerate() {
        // pull a leading sign out for readability when the coefficient is real
        let (neg, mag) = if c.is_real() && c.re.is_negative() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        let gens = format_monomial(m);
        if !mag.is_one() || gens.is_empty() && m.sector.is_trivial() {
            factors.push(format_scalar_factor(&mag));
        }
        if !m.sector.is_trivial() {
            factors.push(m.sector.to_string());
        }
        if !gens.is_empty() {
            factors.push(gens);
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{GaussInt, Sector};

    fn sector(a: (i64, i64), b: (i64, i64)) -> Sector {
        Sector::new(GaussInt::new(a.0, a.1), GaussInt::new(b.0, b.1))
    }

    #[test]
    fn parses_twisted_monomial() {
        let f = parse_form("x(-1,1)*e3^E1", 3).unwrap();
        let m = Monomial::new(sector((-1, 0), (1, 0)), 0b100, 0b001);
        assert_eq!(f, Form::from_monomial(m, Scalar::one()));
    }

    #[test]
    fn parses_two_term_form() {
        let f = parse_form("(1/2+3i)*e1^e2 - E3", 3).unwrap();
        assert_eq!(f.num_terms(), 2);
        let m12 = Monomial::new(Sector::TRIVIAL, 0b011, 0);
        assert_eq!(f.coeff(&m12), Scalar::from_gauss(1, 2, 3, 1));
        let e3 = Monomial::new(Sector::TRIVIAL, 0, 0b100);
        assert_eq!(f.coeff(&e3), -Scalar::one());
    }

    #[test]
    fn repeated_generator_is_zero() {
        assert!(parse_form("e1^e1", 3).unwrap().is_zero());
    }

    #[test]
    fn out_of_range_index_is_an_error() {
        let e = parse_form("e4", 3).unwrap_err();
        assert_eq!(e.offset, 1);
    }

    #[test]
    fn reports_byte_offsets() {
        let e = parse_form("e1 ^ ?", 3).unwrap_err();
        assert_eq!(e.offset, 5);
    }

    #[test]
    fn scalar_only_terms() {
        let f = parse_form("3", 3).unwrap();
        assert_eq!(f, Form::from_monomial(Monomial::unit(), Scalar::from_int(3)));
        let f = parse_form("(1/2-1i)", 3).unwrap();
        assert_eq!(
            f,
            Form::from_monomial(Monomial::unit(), Scalar::from_gauss(1, 2, -1, 1))
        );
    }

    #[test]
    fn sector_with_gaussian_parts() {
        let f = parse_form("x(1+1i,-1-1i)*e1", 3).unwrap();
        let m = Monomial::new(sector((1, 1), (-1, -1)), 0b001, 0);
        assert_eq!(f, Form::from_monomial(m, Scalar::one()));
        let g = parse_form("x(i,-i)*e1", 3).unwrap();
        let m2 = Monomial::new(sector((0, 1), (0, -1)), 0b001, 0);
        assert_eq!(g, Form::from_monomial(m2, Scalar::one()));
    }

    #[test]
    fn format_then_parse_round_trip() {
        for text in [
            "x(-1,1)*e3^E1",
            "(1/2+3i)*e1^e2 - E3",
            "1",
            "-e1 + 2*e2",
            "(2/3)*x(1,-1)*e1^E2^E3",
            "-3*e1^e2^e3^E1^E2^E3",
        ] {
            let f = parse_form(text, 3).unwrap();
            let rendered = format_form(&f);
            let g = parse_form(&rendered, 3).unwrap();
            assert_eq!(f, g, "{text} -> {rendered}");
        }
    }
}
