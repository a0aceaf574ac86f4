use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::NumError;

/// An element `(a + b·√d)/c` of `Q(√d)` kept in lowest terms with `c > 0`.
///
/// `d` is square-free; rationals carry `d = 0` so they combine with any field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u64,
}

/// The result of [`field_op`].
#[derive(Clone, Debug, PartialEq)]
pub enum FieldValue {
    Number(QuadScalar),
    Truth(bool),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Conj,
    IsZero,
    Eq,
}

pub fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Writes `k = s²·r` with `r` square-free and returns `(s, r)`.
pub fn split_square(k: u64) -> (u64, u64) {
    if k == 0 {
        return (0, 0);
    }
    let mut s = 1u64;
    let mut r = k;
    let mut f = 2u64;
    while f * f <= r {
        while r.is_multiple_of(f * f) {
            r /= f * f;
            s *= f;
        }
        f += 1;
    }
    (s, r)
}

impl QuadScalar {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: u64) -> Result<Self, NumError> {
        if c.is_zero() {
            return Err(NumError::ZeroDenominator);
        }
        if !b.is_zero() && !is_square_free(d) {
            return Err(NumError::NotSquareFree(d));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    pub fn from_parts(a: i64, b: i64, c: i64, d: u64) -> Result<Self, NumError> {
        Self::new(a.into(), b.into(), c.into(), d)
    }

    pub fn integer(v: i64) -> Self {
        Self::normalized(v.into(), BigInt::zero(), BigInt::one(), 0)
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self, NumError> {
        Self::from_parts(num, 0, den, 0)
    }

    pub fn from_big_ratio(r: &BigRational) -> Self {
        Self::normalized(r.numer().clone(), BigInt::zero(), r.denom().clone(), 0)
    }

    /// `√k` for a non-negative integer, reduced to `s·√r`.
    pub fn sqrt_of(k: u64) -> Self {
        let (s, r) = split_square(k);
        if r <= 1 {
            Self::integer(s as i64)
        } else {
            Self::normalized(BigInt::zero(), BigInt::from(s), BigInt::one(), r)
        }
    }

    fn normalized(mut a: BigInt, mut b: BigInt, mut c: BigInt, mut d: u64) -> Self {
        if b.is_zero() {
            d = 0;
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() && !g.is_zero() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        if a.is_zero() && b.is_zero() {
            c = BigInt::one();
        }
        QuadScalar { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn rational_part(&self) -> BigRational {
        BigRational::new(self.a.clone(), self.c.clone())
    }

    pub fn irrational_part(&self) -> BigRational {
        BigRational::new(self.b.clone(), self.c.clone())
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a == self.c
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn common_field(&self, other: &Self) -> Result<u64, NumError> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(NumError::FieldMismatch(x, y)),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, NumError> {
        let d = self.common_field(o)?;
        if self.c == o.c {
            return Ok(Self::normalized(&self.a + &o.a, &self.b + &o.b, self.c.clone(), d));
        }
        Ok(Self::normalized(&self.a * &o.c + &o.a * &self.c, &self.b * &o.c + &o.b * &self.c, &self.c * &o.c, d))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, NumError> {
        self.try_add(&o.negate())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, NumError> {
        let d = self.common_field(o)?;
        if self.b.is_zero() && o.b.is_zero() {
            return Ok(Self::normalized(&self.a * &o.a, BigInt::zero(), &self.c * &o.c, 0));
        }
        let dd = BigInt::from(d);
        Ok(Self::normalized(&self.a * &o.a + &self.b * &o.b * dd, &self.a * &o.b + &o.a * &self.b, &self.c * &o.c, d))
    }

    pub fn try_inv(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        // c / (a + b√d) = c (a - b√d) / (a² - d b²)
        let norm = &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d);
        Ok(Self::normalized(&self.c * &self.a, -(&self.c * &self.b), norm, self.d))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, NumError> {
        self.common_field(o)?;
        self.try_mul(&o.try_inv()?)
    }

    pub fn negate(&self) -> Self {
        QuadScalar { a: -&self.a, b: -&self.b, c: self.c.clone(), d: self.d }
    }

    /// Galois conjugate `(a - b√d)/c`.
    pub fn conj(&self) -> Self {
        QuadScalar { a: self.a.clone(), b: -&self.b, c: self.c.clone(), d: self.d }
    }

    /// Field norm `x · conj(x)`.
    pub fn norm(&self) -> BigRational {
        let num = &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d);
        BigRational::new(num, &self.c * &self.c)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        if a.is_finite() && b.is_finite() && c.is_finite() {
            return (a + b * (self.d as f64).sqrt()) / c;
        }
        // scale down huge components before converting
        let bits = self.c.bits().max(self.a.bits()).max(self.b.bits());
        let shift = bits.saturating_sub(900);
        let sa = (&self.a >> shift).to_f64().unwrap_or(0.0);
        let sb = (&self.b >> shift).to_f64().unwrap_or(0.0);
        let sc = (&self.c >> shift).to_f64().unwrap_or(f64::NAN);
        (sa + sb * (self.d as f64).sqrt()) / sc
    }

    /// Exact sign of the real number `(a + b√d)/c`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = self.b.sign();
        let ord = |s: Sign| match s {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        };
        if sb == Sign::NoSign {
            return ord(sa);
        }
        if sa == Sign::NoSign || sa == sb {
            return ord(sb);
        }
        // opposite signs: compare a² with d b²
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * BigInt::from(self.d);
        match a2.cmp(&db2) {
            Ordering::Greater => ord(sa),
            Ordering::Less => ord(sb),
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Rescales so that `c` divides `lcm` and returns the integer pair `(a', b')`
    /// with `self = (a' + b'√d)/lcm`.
    pub(crate) fn over_denominator(&self, lcm: &BigInt) -> (BigInt, BigInt) {
        let f = lcm / &self.c;
        (&self.a * &f, &self.b * &f)
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.c
    }
}

pub fn field_op(op: FieldOp, x: &QuadScalar, y: Option<&QuadScalar>) -> Result<FieldValue, NumError> {
    let rhs = || y.ok_or(NumError::MissingOperand);
    Ok(match op {
        FieldOp::Add => FieldValue::Number(x.try_add(rhs()?)?),
        FieldOp::Sub => FieldValue::Number(x.try_sub(rhs()?)?),
        FieldOp::Mul => FieldValue::Number(x.try_mul(rhs()?)?),
        FieldOp::Div => FieldValue::Number(x.try_div(rhs()?)?),
        FieldOp::Neg => FieldValue::Number(x.negate()),
        FieldOp::Inv => FieldValue::Number(x.try_inv()?),
        FieldOp::Conj => FieldValue::Number(x.conj()),
        FieldOp::IsZero => FieldValue::Truth(x.is_zero()),
        FieldOp::Eq => {
            let other = rhs()?;
            x.common_field(other)?;
            FieldValue::Truth(x == other)
        }
    })
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c_one = self.c.is_one();
        if self.b.is_zero() {
            return if c_one { write!(f, "{}", self.a) } else { write!(f, "{}/{}", self.a, self.c) };
        }
        let num = if self.a.is_zero() {
            format!("{}√{}", self.b, self.d)
        } else if self.b.is_negative() {
            format!("{}-{}√{}", self.a, -&self.b, self.d)
        } else {
            format!("{}+{}√{}", self.a, self.b, self.d)
        };
        if c_one {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/{}", self.c)
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl $tr<&QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                self.$call(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        self.negate()
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        self.negate()
    }
}

impl From<i64> for QuadScalar {
    fn from(v: i64) -> Self {
        Self::integer(v)
    }
}

fn put_int<S: SerializeSeq>(seq: &mut S, v: &BigInt) -> Result<(), S::Error> {
    match v.to_i64() {
        Some(x) => seq.serialize_element(&x),
        None => seq.serialize_element(&v.to_string()),
    }
}

/// Serialized as `[a, b, c]` (integers, or decimal strings when huge) plus `d`
/// only when irrational: `[a, b, c, d]`.
impl Serialize for QuadScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let len = if self.b.is_zero() { 3 } else { 4 };
        let mut seq = s.serialize_seq(Some(len))?;
        put_int(&mut seq, &self.a)?;
        put_int(&mut seq, &self.b)?;
        put_int(&mut seq, &self.c)?;
        if len == 4 {
            seq.serialize_element(&self.d)?;
        }
        seq.end()
    }
}

/// An integer written as a JSON number or, when large, as a decimal string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub(crate) enum IntRepr {
    Int(i64),
    Text(String),
}

impl IntRepr {
    fn big(self) -> Result<BigInt, String> {
        match self {
            IntRepr::Int(v) => Ok(v.into()),
            IntRepr::Text(s) => s.trim().parse::<BigInt>().map_err(|e| format!("bad integer {s:?}: {e}")),
        }
    }
}

/// `[a, b, c]` or `[a, b, c, d]`; a three-entry irrational value takes its radicand from `field`.
pub(crate) fn quad_from_json_parts(parts: Vec<IntRepr>, field: u64) -> Result<QuadScalar, String> {
    if parts.len() != 3 && parts.len() != 4 {
        return Err("expected [a, b, c] or [a, b, c, d]".into());
    }
    let mut it = parts.into_iter();
    let a = it.next().unwrap().big()?;
    let b = it.next().unwrap().big()?;
    let c = it.next().unwrap().big()?;
    let d = match it.next() {
        Some(x) => x.big()?.to_u64().ok_or("bad radicand")?,
        None if b.is_zero() => 0,
        None => field,
    };
    if !b.is_zero() && d == 0 {
        return Err("irrational entry needs a radicand".into());
    }
    QuadScalar::new(a, b, c, d).map_err(|e| e.to_string())
}

impl<'de> Deserialize<'de> for QuadScalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        quad_from_json_parts(Vec::deserialize(de)?, 0).map_err(de::Error::custom)
    }
}
