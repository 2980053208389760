//! Mode-tagged scalars and the text grammar shared with the CLI.
//!
//! Exact values print as `a + b*r2 + c*r3 + d*r6` (zero terms dropped,
//! rationals as `p/q`). The parser accepts that form and, more generally,
//! sums and products of rationals, `r2`, `r3`, `r6`, parenthesised
//! subexpressions and bound parameters such as `t^2`.

use crate::error::{Error, Result};
use crate::field::{Field, Mode, QuadSurd};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::any::Any;
use std::collections::BTreeMap;
use std::fmt;

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(QuadSurd),
    Float(f64),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn zero(mode: Mode) -> Scalar {
        match mode {
            Mode::Exact => Scalar::Exact(QuadSurd::zero()),
            Mode::Float => Scalar::Float(0.0),
        }
    }

    pub fn from_int(mode: Mode, n: i64) -> Scalar {
        match mode {
            Mode::Exact => Scalar::Exact(QuadSurd::from_int(n)),
            Mode::Float => Scalar::Float(n as f64),
        }
    }

    /// Wraps a value of a statically typed backend.
    pub fn from_field<F: Field>(x: &F) -> Scalar {
        let any = x as &dyn Any;
        if let Some(q) = any.downcast_ref::<QuadSurd>() {
            Scalar::Exact(q.clone())
        } else if let Some(f) = any.downcast_ref::<f64>() {
            Scalar::Float(*f)
        } else {
            Scalar::Float(x.to_f64())
        }
    }

    /// Converts into a statically typed backend; float to exact is refused.
    pub fn to_field<F: Field>(&self) -> Result<F> {
        match self {
            Scalar::Exact(q) => Ok(F::from_quad(q)),
            Scalar::Float(v) => {
                let mut out = F::zero();
                if let Some(slot) = (&mut out as &mut dyn Any).downcast_mut::<f64>() {
                    *slot = *v;
                    Ok(out)
                } else {
                    Err(Error::FloatToExact)
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64(),
            Scalar::Float(v) => *v,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => Field::is_zero(q),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    fn binary(
        &self,
        rhs: &Scalar,
        fe: impl FnOnce(&QuadSurd, &QuadSurd) -> Result<QuadSurd>,
        ff: impl FnOnce(f64, f64) -> Result<f64>,
    ) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => fe(a, b).map(Scalar::Exact),
            (Scalar::Float(a), Scalar::Float(b)) => ff(*a, *b).map(Scalar::Float),
            _ => Err(Error::ModeMismatch(self.mode(), rhs.mode())),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| Ok(a.clone() + b), |a, b| Ok(a + b))
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| Ok(a.clone() - b), |a, b| Ok(a - b))
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| Ok(a.clone() * b), |a, b| Ok(a * b))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(
            rhs,
            |a, b| a.div(b).ok_or(Error::DivisionByZero),
            |a, b| {
                if b == 0.0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(a / b)
                }
            },
        )
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q.clone()),
            Scalar::Float(v) => Scalar::Float(-v),
        }
    }

    pub fn parse(text: &str, mode: Mode) -> Result<Scalar> {
        parse_expr(text, mode, &BTreeMap::new())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float(v) => write!(f, "{v:?}"),
        }
    }
}

/// Parses `text` in `mode`, resolving identifiers through `params`.
pub fn parse_expr(text: &str, mode: Mode, params: &BTreeMap<String, Scalar>) -> Result<Scalar> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        mode,
        params,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mode: Mode,
    params: &'a BTreeMap<String, Scalar>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            if c != b'+' && c != b'-' {
                break;
            }
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' {
                acc.checked_add(&rhs)?
            } else {
                acc.checked_sub(&rhs)?
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            if c != b'*' && c != b'/' {
                break;
            }
            self.pos += 1;
            let start = self.pos;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                acc.checked_mul(&rhs)?
            } else {
                acc.checked_div(&rhs).map_err(|e| match e {
                    Error::DivisionByZero => Error::Parse {
                        pos: start,
                        msg: "division by zero".into(),
                    },
                    other => other,
                })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            let n: u32 = digits.parse().map_err(|_| Error::Parse {
                pos: start,
                msg: "expected a non-negative integer exponent".into(),
            })?;
            let mut acc = Scalar::from_int(self.mode, 1);
            for _ in 0..n {
                acc = acc.checked_mul(&base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.ident(),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn ident(&mut self) -> Result<Scalar> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        let surd = |x: QuadSurd| match self.mode {
            Mode::Exact => Scalar::Exact(x),
            Mode::Float => Scalar::Float(x.to_f64()),
        };
        match name {
            "r2" => Ok(surd(QuadSurd::sqrt2())),
            "r3" => Ok(surd(QuadSurd::sqrt3())),
            "r6" => Ok(surd(QuadSurd::sqrt6())),
            _ => match self.params.get(name) {
                Some(v) if v.mode() == self.mode => Ok(v.clone()),
                Some(v) => Err(Error::ModeMismatch(self.mode, v.mode())),
                None => Err(Error::Parse {
                    pos: start,
                    msg: format!("unknown identifier '{name}'"),
                }),
            },
        }
    }

    fn number(&mut self) -> Result<Scalar> {
        let start = self.pos;
        let bytes = self.src;
        let mut end = start;
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        // Exponent, e.g. 1e-9.
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut k = end + 1;
            if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                k += 1;
            }
            if k < bytes.len() && bytes[k].is_ascii_digit() {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                end = k;
            }
        }
        let text = std::str::from_utf8(&bytes[start..end]).unwrap_or("");
        self.pos = end;
        let bad = || Error::Parse {
            pos: start,
            msg: format!("malformed number '{text}'"),
        };
        match self.mode {
            Mode::Float => text.parse::<f64>().map(Scalar::Float).map_err(|_| bad()),
            Mode::Exact => decimal_to_rational(text)
                .map(|r| Scalar::Exact(QuadSurd::from_rational(&r)))
                .ok_or_else(bad),
        }
    }
}

/// Exact value of a decimal literal such as `12`, `0.25` or `3e-2`.
fn decimal_to_rational(text: &str) -> Option<BigRational> {
    let (mant, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().ok()?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(num);
    let p = BigRational::from_integer(num_traits::pow(ten, shift.unsigned_abs() as usize));
    if shift >= 0 {
        r *= p;
    } else {
        r /= p;
    }
    Some(r)
}
