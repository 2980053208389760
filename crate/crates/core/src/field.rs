//! Scalar backends: the exact field ℚ(√2,√3) and IEEE doubles.
//!
//! Kernels are generic over [`Field`], so mixing backends inside one
//! computation is a type error rather than a runtime coercion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Which backend a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A commutative field containing √2 and √3.
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    /// Embeds an exact constant; lossless for `QuadSurd`, rounding for `f64`.
    fn from_quad(q: &QuadSurd) -> Self;
    fn sqrt2() -> Self;
    fn sqrt3() -> Self;
    fn is_zero(&self) -> bool;
    /// Exact zero test for the exact backend, `|x| <= tol` for floats.
    fn near_zero(&self, tol: f64) -> bool;
    fn inv(&self) -> Option<Self>;
    /// -1, 0 or 1.
    fn signum(&self) -> i8;
    fn to_f64(&self) -> f64;

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(n.into(), d.into()))
    }

    fn sqrt6() -> Self {
        Self::sqrt2() * &Self::sqrt3()
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    fn scale_int(&self, n: i64) -> Self {
        self.clone() * &Self::from_int(n)
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * &r)
    }

    fn is_positive(&self) -> bool {
        self.signum() > 0
    }
}

/// a + b√2 + c√3 + d√6 with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadSurd {
    c: [BigRational; 4],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sign of p + q√k for rationals p, q and a non-square k > 0.
fn sign_rational_surd(p: &BigRational, q: &BigRational, k: i64) -> i8 {
    let sp = sign_of(p);
    let sq = sign_of(q);
    if sq == 0 || sp == sq {
        return if sp == 0 { sq } else { sp };
    }
    if sp == 0 {
        return sq;
    }
    // Opposite signs: compare p² with k q².
    match (p * p).cmp(&(q * q * rat(k))) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Element of ℚ(√2) as (a, b) = a + b√2; helpers for the tower ℚ(√2)(√3).
type Q2 = (BigRational, BigRational);

fn q2_mul(x: &Q2, y: &Q2) -> Q2 {
    (
        &x.0 * &y.0 + &x.1 * &y.1 * rat(2),
        &x.0 * &y.1 + &x.1 * &y.0,
    )
}

fn q2_sub(x: &Q2, y: &Q2) -> Q2 {
    (&x.0 - &y.0, &x.1 - &y.1)
}

fn q2_inv(x: &Q2) -> Option<Q2> {
    let n = &x.0 * &x.0 - &x.1 * &x.1 * rat(2);
    if n.is_zero() {
        return None;
    }
    Some((&x.0 / &n, -&x.1 / &n))
}

fn q2_sign(x: &Q2) -> i8 {
    sign_rational_surd(&x.0, &x.1, 2)
}

impl QuadSurd {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        QuadSurd { c: [a, b, c, d] }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        QuadSurd::new(rat(a), rat(b), rat(c), rat(d))
    }

    /// Coefficients of 1, √2, √3, √6.
    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    /// Write x = p + q√3 with p, q ∈ ℚ(√2).
    fn split(&self) -> (Q2, Q2) {
        (
            (self.c[0].clone(), self.c[1].clone()),
            (self.c[2].clone(), self.c[3].clone()),
        )
    }

    fn join(p: Q2, q: Q2) -> Self {
        QuadSurd { c: [p.0, p.1, q.0, q.1] }
    }

    fn mul_ref(&self, o: &QuadSurd) -> QuadSurd {
        let [a, b, c, d] = &self.c;
        let [e, f, g, h] = &o.c;
        let mut out: [BigRational; 4] = Default::default();
        // (i, j, target, factor) for the products of basis surds.
        const TABLE: [(usize, usize, usize, i64); 16] = [
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (0, 2, 2, 1),
            (0, 3, 3, 1),
            (1, 0, 1, 1),
            (1, 1, 0, 2),
            (1, 2, 3, 1),
            (1, 3, 2, 2),
            (2, 0, 2, 1),
            (2, 1, 3, 1),
            (2, 2, 0, 3),
            (2, 3, 1, 3),
            (3, 0, 3, 1),
            (3, 1, 2, 2),
            (3, 2, 1, 3),
            (3, 3, 0, 6),
        ];
        let lhs = [a, b, c, d];
        let rhs = [e, f, g, h];
        for &(i, j, t, k) in TABLE.iter() {
            if lhs[i].is_zero() || rhs[j].is_zero() {
                continue;
            }
            let p = lhs[i] * rhs[j];
            out[t] += if k == 1 { p } else { p * rat(k) };
        }
        QuadSurd { c: out }
    }

    /// Galois conjugate √3 ↦ −√3.
    pub fn conj3(&self) -> QuadSurd {
        QuadSurd {
            c: [
                self.c[0].clone(),
                self.c[1].clone(),
                -&self.c[2],
                -&self.c[3],
            ],
        }
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }
}

impl fmt::Debug for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Canonical form: nonzero terms in the order 1, r2, r3, r6, e.g. `1/2 - 3*r3`.
impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["", "r2", "r3", "r6"];
        let mut first = true;
        for (k, coef) in self.c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let neg = coef.is_negative();
            let mag = coef.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                f.write_str(NAMES[k])?;
            } else {
                write!(f, "{}*{}", mag, NAMES[k])?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for QuadSurd {
    type Output = QuadSurd;
    fn add(mut self, o: QuadSurd) -> QuadSurd {
        for (x, y) in self.c.iter_mut().zip(o.c) {
            *x += y;
        }
        self
    }
}

impl<'a> Add<&'a QuadSurd> for QuadSurd {
    type Output = QuadSurd;
    fn add(mut self, o: &'a QuadSurd) -> QuadSurd {
        for (x, y) in self.c.iter_mut().zip(o.c.iter()) {
            if !y.is_zero() {
                *x += y;
            }
        }
        self
    }
}

impl Sub for QuadSurd {
    type Output = QuadSurd;
    fn sub(mut self, o: QuadSurd) -> QuadSurd {
        for (x, y) in self.c.iter_mut().zip(o.c) {
            *x -= y;
        }
        self
    }
}

impl<'a> Sub<&'a QuadSurd> for QuadSurd {
    type Output = QuadSurd;
    fn sub(mut self, o: &'a QuadSurd) -> QuadSurd {
        for (x, y) in self.c.iter_mut().zip(o.c.iter()) {
            if !y.is_zero() {
                *x -= y;
            }
        }
        self
    }
}

impl Mul for QuadSurd {
    type Output = QuadSurd;
    fn mul(self, o: QuadSurd) -> QuadSurd {
        self.mul_ref(&o)
    }
}

impl<'a> Mul<&'a QuadSurd> for QuadSurd {
    type Output = QuadSurd;
    fn mul(self, o: &'a QuadSurd) -> QuadSurd {
        self.mul_ref(o)
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(mut self) -> QuadSurd {
        for x in self.c.iter_mut() {
            *x = -std::mem::take(x);
        }
        self
    }
}

impl Field for QuadSurd {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        QuadSurd::default()
    }

    fn one() -> Self {
        QuadSurd::from_ints(1, 0, 0, 0)
    }

    fn from_int(n: i64) -> Self {
        QuadSurd::from_ints(n, 0, 0, 0)
    }

    fn from_rational(r: &BigRational) -> Self {
        QuadSurd::new(r.clone(), rat(0), rat(0), rat(0))
    }

    fn from_quad(q: &QuadSurd) -> Self {
        q.clone()
    }

    fn sqrt2() -> Self {
        QuadSurd::from_ints(0, 1, 0, 0)
    }

    fn sqrt3() -> Self {
        QuadSurd::from_ints(0, 0, 1, 0)
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    fn near_zero(&self, _tol: f64) -> bool {
        Field::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        // (p + q√3)⁻¹ = (p − q√3) / (p² − 3q²), then invert over ℚ(√2).
        let (p, q) = self.split();
        let three: Q2 = (rat(3), rat(0));
        let norm = q2_sub(&q2_mul(&p, &p), &q2_mul(&three, &q2_mul(&q, &q)));
        let ninv = q2_inv(&norm)?;
        let np = q2_mul(&p, &ninv);
        let nq = q2_mul(&q, &ninv);
        Some(QuadSurd::join(np, (-nq.0, -nq.1)))
    }

    fn signum(&self) -> i8 {
        let (p, q) = self.split();
        let sp = q2_sign(&p);
        let sq = q2_sign(&q);
        if sq == 0 || sp == sq {
            return if sp == 0 { sq } else { sp };
        }
        if sp == 0 {
            return sq;
        }
        // Opposite signs: compare p² with 3q² inside ℚ(√2).
        let three: Q2 = (rat(3), rat(0));
        let diff = q2_sub(&q2_mul(&p, &p), &q2_mul(&three, &q2_mul(&q, &q)));
        match q2_sign(&diff) {
            1 => sp,
            -1 => sq,
            _ => 0,
        }
    }

    fn to_f64(&self) -> f64 {
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        f(&self.c[0])
            + f(&self.c[1]) * std::f64::consts::SQRT_2
            + f(&self.c[2]) * 3f64.sqrt()
            + f(&self.c[3]) * 6f64.sqrt()
    }
}

impl Field for f64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn from_quad(q: &QuadSurd) -> Self {
        q.to_f64()
    }

    fn sqrt2() -> Self {
        std::f64::consts::SQRT_2
    }

    fn sqrt3() -> Self {
        3f64.sqrt()
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn near_zero(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }

    fn signum(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> QuadSurd {
        QuadSurd::from_ints(a, b, c, d)
    }

    #[test]
    fn surd_products_close_up() {
        let r2 = QuadSurd::sqrt2();
        let r3 = QuadSurd::sqrt3();
        assert_eq!(r2.clone() * &r2, QuadSurd::from_int(2));
        assert_eq!(r3.clone() * &r3, QuadSurd::from_int(3));
        assert_eq!(r2.clone() * &r3, q(0, 0, 0, 1));
        assert_eq!(r2 * &q(0, 0, 0, 1), q(0, 0, 2, 0));
        assert_eq!(r3 * &q(0, 0, 0, 1), q(0, 3, 0, 0));
    }

    #[test]
    fn inverse_round_trips() {
        for x in [q(1, 1, 1, 1), q(0, 0, 0, 1), q(3, -2, 5, 7), q(-1, 0, 1, 0)] {
            let y = x.inv().unwrap();
            assert_eq!(x * &y, QuadSurd::one());
        }
        assert!(QuadSurd::zero().inv().is_none());
    }

    #[test]
    fn sign_matches_float() {
        let cases = [
            q(1, 0, 0, 0),
            q(-3, 2, 0, 0),
            q(3, -2, 0, 0),
            q(0, 0, 1, -1),
            q(5, -1, -1, -1),
            q(-5, 1, 1, 1),
            q(1, 1, -1, 0),
            q(0, 0, 0, 0),
        ];
        for x in cases {
            let f = x.to_f64();
            let expect = if f > 1e-12 { 1 } else if f < -1e-12 { -1 } else { 0 };
            assert_eq!(x.signum(), expect, "{x}");
        }
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(q(0, 0, 0, 0).to_string(), "0");
        assert_eq!(q(0, 0, -18, 0).to_string(), "-18*r3");
        assert_eq!(q(1, 0, -1, 0).to_string(), "1 - r3");
        assert_eq!(QuadSurd::ratio(-4, 3).to_string(), "-4/3");
    }
}
