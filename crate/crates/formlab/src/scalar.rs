//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Every coefficient in the engine is a [`Scalar`] (a complex number with
//! rational real and imaginary parts). There is no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// A Gaussian rational `re + im·i` with both parts in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_gauss(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        assert!(re_den != 0 && im_den != 0, "zero denominator");
        Scalar::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re² + im²` as a rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero scalar");
        Scalar::new(&self.re / &n, -&self.im / &n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $fn:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: Scalar) -> Scalar {
                (&self).$fn(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: `p/q`, `p/q+r/si` or `p/q-r/si`; a zero imaginary
/// part is suppressed, a zero real part with nonzero imaginary part prints
/// as `r/si`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im_part = format!("{}i", fmt_rational(&self.im.abs()));
        if self.re.is_zero() {
            if self.im.is_negative() {
                return write!(f, "-{im_part}");
            }
            return write!(f, "{im_part}");
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}", fmt_rational(&self.re), sign, im_part)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Error from [`Scalar::from_str`], with the byte offset of the failure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar at byte {offset}: {msg}")]
pub struct ScalarParseError {
    pub offset: usize,
    pub msg: String,
}

fn parse_unsigned_rational(s: &str, base: usize) -> Result<BigRational, ScalarParseError> {
    let err = |offset: usize, msg: &str| ScalarParseError {
        offset: base + offset,
        msg: msg.to_string(),
    };
    let (num_str, den_str) = match s.find('/') {
        Some(k) => (&s[..k], &s[k + 1..]),
        None => (s, ""),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| err(0, "expected integer numerator"))?;
    if den_str.is_empty() {
        return Ok(BigRational::from_integer(num));
    }
    let den: BigInt = den_str
        .parse()
        .map_err(|_| err(num_str.len() + 1, "expected integer denominator"))?;
    if den.is_zero() || den.is_negative() {
        return Err(err(num_str.len() + 1, "denominator must be positive"));
    }
    Ok(BigRational::new(num, den))
}

/// Accepts `p/q`, `p/q+r/si`, `p/q-r/si`, bare `i`, `-i`, `3i`, `i/3`,
/// and `2/3i` (the latter meaning `(2/3)i`).
impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s = input.trim();
        let base = input.len() - input.trim_start().len();
        let err = |offset: usize, msg: &str| ScalarParseError {
            offset: base + offset,
            msg: msg.to_string(),
        };
        if s.is_empty() {
            return Err(err(0, "empty scalar"));
        }

        // Split on the last top-level '+' or '-' that is not a leading sign.
        let bytes = s.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-')
                && bytes[k - 1] != b'+'
                && bytes[k - 1] != b'-'
                && bytes[k - 1] != b'/'
            {
                split = Some(k);
                break;
            }
        }

        let parse_imag_body = |body: &str, off: usize| -> Result<BigRational, ScalarParseError> {
            // body has the trailing 'i' stripped; may be "", "3", "3/4", or "/3" (from "i/3")
            if body.is_empty() {
                return Ok(BigRational::one());
            }
            if let Some(den) = body.strip_prefix('/') {
                let den: BigInt = den.parse().map_err(|_| ScalarParseError {
                    offset: base + off,
                    msg: "expected denominator after i/".to_string(),
                })?;
                if den.is_zero() || den.is_negative() {
                    return Err(ScalarParseError {
                        offset: base + off,
                        msg: "denominator must be positive".to_string(),
                    });
                }
                return Ok(BigRational::new(BigInt::one(), den));
            }
            parse_unsigned_rational(body, base + off)
        };

        // One-part form.
        if split.is_none() {
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, s.strip_prefix('+').unwrap_or(s)),
            };
            let off = s.len() - body.len();
            let value = if let Some(ib) = imag_split(body) {
                let im = parse_imag_body(ib, off)?;
                Scalar::new(BigRational::zero(), im)
            } else {
                Scalar::from_rational(parse_unsigned_rational(body, base + off)?)
            };
            return Ok(if neg { -value } else { value });
        }

        let k = split.unwrap();
        let (re_str, rest) = (&s[..k], &s[k..]);
        let re: Scalar = re_str.parse()?;
        if !re.is_real() {
            return Err(err(0, "real part written after imaginary part"));
        }
        let neg = rest.starts_with('-');
        let body = &rest[1..];
        let off = k + 1;
        let Some(ib) = imag_split(body) else {
            return Err(err(off + body.len().saturating_sub(1), "expected trailing i"));
        };
        let im = parse_imag_body(ib, off)?;
        let im = if neg { -im } else { im };
        Ok(Scalar::new(re.re, im))
    }
}

/// If `body` is an imaginary literal (`i`, `3i`, `3/4i`, `i/3`), return the
/// body with the `i` removed (`""`, `"3"`, `"3/4"`, `"/3"`).
fn imag_split(body: &str) -> Option<&str> {
    if let Some(rest) = body.strip_prefix('i') {
        if rest.is_empty() || rest.starts_with('/') {
            return Some(rest);
        }
        return None;
    }
    body.strip_suffix('i')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(txt: &str) -> Scalar {
        txt.parse().unwrap()
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Scalar::from_ratio(1, 3);
        let b = Scalar::from_gauss(0, 1, 1, 2);
        let prod = &a * &b;
        assert_eq!(prod, Scalar::from_gauss(0, 1, 1, 6));
        assert_eq!(&prod / &b, a);
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_int(-1));
    }

    #[test]
    fn conjugation_and_norm() {
        let z = Scalar::from_gauss(3, 4, -2, 5);
        let n = (&z * &z.conj()).re;
        assert_eq!(n, z.norm_sq());
        assert!((&z * &z.conj()).im.is_zero());
    }

    #[test]
    fn parse_canonical_forms() {
        assert_eq!(s("3"), Scalar::from_int(3));
        assert_eq!(s("-2/5"), Scalar::from_ratio(-2, 5));
        assert_eq!(s("1/2+3/4i"), Scalar::from_gauss(1, 2, 3, 4));
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("3i"), Scalar::from_gauss(0, 1, 3, 1));
        assert_eq!(s("i/3"), Scalar::from_gauss(0, 1, 1, 3));
        assert_eq!(s("2/3i"), Scalar::from_gauss(0, 1, 2, 3));
        assert_eq!(s("1-i"), Scalar::from_gauss(1, 1, -1, 1));
        assert_eq!(s("-1/2-1/2i"), Scalar::from_gauss(-1, 2, -1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert!("1+".parse::<Scalar>().is_err());
        assert!("1+2".parse::<Scalar>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for txt in ["0", "3", "-2/5", "1/2+3/4i", "1/2-3/4i", "1i", "-1/3i", "7/2"] {
            let v = s(txt);
            assert_eq!(s(&v.to_string()), v, "round trip of {txt}");
        }
        assert_eq!(s("i").to_string(), "1i");
        assert_eq!(Scalar::zero().to_string(), "0");
    }
}
