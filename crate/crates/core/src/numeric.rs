//! Coefficient rings and exact scalar helpers.
//!
//! Series are generic over [`Coeff`]. Two rings are provided: exact
//! [`Rational`] and the fixed-precision binary float [`Real`]. [`Surd`]
//! represents the closed-form constants `c·√s` that appear in the bounds.

use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Working precision of [`Real`] in bits (about 57 decimal digits).
pub const REAL_PREC: u32 = 192;

/// Arithmetic needed by truncated power series.
pub trait Coeff: Clone + PartialEq + PartialOrd + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Division; callers guarantee a nonzero divisor.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self);
    /// Square root when it exists in the ring, choosing the nonnegative root.
    fn sqrt_exact(&self) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Decimal rendering with `digits` fractional digits.
    fn to_decimal(&self, digits: u32) -> String;
    /// String used in JSON output: `"p/q"` for exact values, a decimal otherwise.
    fn json_repr(&self) -> String;

    fn is_nonnegative(&self) -> bool {
        *self >= Self::zero()
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn from_int(v: i64) -> Self {
        Rational::from(v)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == Ordering::Equal
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
    fn div(&self, rhs: &Self) -> Self {
        Rational::from(self / rhs)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += Rational::from(a * b);
    }
    fn sqrt_exact(&self) -> Option<Self> {
        if self.cmp0() == Ordering::Less {
            return None;
        }
        let (num, den) = (self.numer(), self.denom());
        if num.is_perfect_square() && den.is_perfect_square() {
            Some(Rational::from((num.clone().sqrt(), den.clone().sqrt())))
        } else {
            None
        }
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
    fn to_decimal(&self, digits: u32) -> String {
        decimal_string(self, digits, Round::Nearest)
    }
    fn json_repr(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

/// Fixed-precision float used for the numeric series mode.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Real(pub Float);

impl Real {
    pub fn new<T>(value: T) -> Self
    where
        Float: rug::Assign<T>,
    {
        Real(Float::with_val(REAL_PREC, value))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_radix(10, Some(40)))
    }
}

impl Coeff for Real {
    fn zero() -> Self {
        Real::new(0)
    }
    fn one() -> Self {
        Real::new(1)
    }
    fn from_int(v: i64) -> Self {
        Real::new(v)
    }
    fn from_rational(r: &Rational) -> Self {
        Real::new(r)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Real::new(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Real::new(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Real::new(&self.0 * &rhs.0)
    }
    fn div(&self, rhs: &Self) -> Self {
        Real::new(&self.0 / &rhs.0)
    }
    fn neg(&self) -> Self {
        Real::new(-&self.0)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.0 += &a.0 * &b.0;
    }
    fn sqrt_exact(&self) -> Option<Self> {
        if self.0.is_sign_negative() && !self.0.is_zero() {
            None
        } else {
            Some(Real::new(self.0.sqrt_ref()))
        }
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn to_decimal(&self, digits: u32) -> String {
        match self.0.to_rational() {
            Some(r) => decimal_string(&r, digits, Round::Nearest),
            None => self.0.to_string(),
        }
    }
    fn json_repr(&self) -> String {
        self.to_decimal(40)
    }
}

/// `10^digits` as an integer.
pub fn ten_pow(digits: u32) -> Integer {
    Integer::from(10).pow(digits)
}

/// Renders `r` with exactly `digits` fractional digits, rounding in `dir`.
pub fn decimal_string(r: &Rational, digits: u32, dir: Round) -> String {
    let scaled = Rational::from(r * ten_pow(digits));
    let int = match dir {
        Round::Down => scaled.floor(),
        Round::Up => scaled.ceil(),
        _ => scaled.round(),
    };
    let int = int.numer().clone();
    let negative = int.cmp0() == Ordering::Less;
    let mut s = int.abs().to_string();
    let digits = digits as usize;
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let split = s.len() - digits;
    let (whole, frac) = s.split_at(split);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

/// Largest decimal with `digits` fractional digits that is `<= r`.
pub fn decimal_floor(r: &Rational, digits: u32) -> Rational {
    let scale = ten_pow(digits);
    let scaled = Rational::from(r * &scale).floor();
    Rational::from((scaled.numer().clone(), scale))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"0.125"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        if frac.chars().all(|c| c.is_ascii_digit()) && !s.contains('/') {
            let negative = int.starts_with('-');
            let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
            let num: Integer = digits.parse().ok()?;
            let r = Rational::from((num, ten_pow(frac.len() as u32)));
            return Some(if negative { -r } else { r });
        }
        return None;
    }
    s.parse::<Rational>().ok()
}

/// The real number `coeff · √radicand` with `radicand` a squarefree positive integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    coeff: Rational,
    radicand: Integer,
}

impl Surd {
    pub fn rational(r: Rational) -> Self {
        Surd { coeff: r, radicand: Integer::from(1) }
    }

    /// `√r` for a nonnegative rational `r`, with square factors pulled out.
    pub fn sqrt_of(r: &Rational) -> Self {
        assert!(r.cmp0() != Ordering::Less, "square root of a negative rational");
        if r.cmp0() == Ordering::Equal {
            return Surd::rational(Rational::new());
        }
        // sqrt(p/q) = sqrt(p q) / q
        let pq = Integer::from(r.numer() * r.denom());
        let (outer, inner) = split_square(pq);
        Surd {
            coeff: Rational::from((outer, r.denom().clone())),
            radicand: inner,
        }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &Integer {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 1
    }

    pub fn scale(&self, by: &Rational) -> Self {
        let coeff = Rational::from(&self.coeff * by);
        if coeff.cmp0() == Ordering::Equal {
            return Surd::rational(coeff);
        }
        Surd { coeff, radicand: self.radicand.clone() }
    }

    /// Square, which is always rational.
    pub fn square(&self) -> Rational {
        Rational::from(&self.coeff * &self.coeff) * &self.radicand
    }

    /// Reciprocal: `1/(c√s) = √s/(c s)`.
    pub fn recip(&self) -> Self {
        assert!(self.coeff.cmp0() != Ordering::Equal, "reciprocal of zero");
        let coeff = Rational::from(&self.coeff * &self.radicand).recip();
        Surd { coeff, radicand: self.radicand.clone() }
    }

    pub fn to_float(&self, prec: u32, round: Round) -> Float {
        let root = Float::with_val_round(prec, self.radicand.sqrt_ref_float(), round).0;
        let c = Float::with_val_round(prec, &self.coeff, round).0;
        Float::with_val_round(prec, &c * &root, round).0
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float(128, Round::Nearest).to_f64()
    }

    /// Exact comparison of two surds (both assumed nonnegative).
    pub fn cmp_nonneg(&self, other: &Surd) -> Ordering {
        self.square().cmp(&other.square())
    }

    pub fn decimal(&self, digits: u32, round: Round) -> String {
        let prec = 64 + (digits as f64 * 3.33) as u32 + 32;
        let f = self.to_float(prec, round);
        decimal_string(&f.to_rational().expect("finite"), digits, round)
    }
}

trait SqrtFloat {
    fn sqrt_ref_float(&self) -> Float;
}

impl SqrtFloat for Integer {
    fn sqrt_ref_float(&self) -> Float {
        // exact enough: 4096 bits before the caller's rounding
        Float::with_val(4096, self).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff == 1 {
            write!(f, "√{}", self.radicand)
        } else if self.coeff.denom() == &1 {
            write!(f, "{}√{}", self.coeff, self.radicand)
        } else {
            write!(f, "({})√{}", self.coeff, self.radicand)
        }
    }
}

/// Splits `n = a² s` with `s` squarefree; trial division, meant for small inputs.
fn split_square(mut n: Integer) -> (Integer, Integer) {
    let mut outer = Integer::from(1);
    let mut inner = Integer::from(1);
    let mut p = Integer::from(2);
    while Integer::from(&p * &p) <= n {
        let mut e = 0u32;
        while n.is_divisible(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            outer *= Integer::from((&p).pow(e / 2));
            if e % 2 == 1 {
                inner *= &p;
            }
        }
        p += 1;
    }
    inner *= n;
    (outer, inner)
}
