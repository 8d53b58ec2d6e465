//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! A [`Series`] of order `N` stores the coefficients of `q^0..=q^N`; every
//! coefficient above `N` is unknown. Binary operations silently truncate to
//! the smaller order of their operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{parse_rational, sigma, DivisorKind, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c q^exp`, truncated (to zero if `exp > order`).
    pub fn monomial(c: Rational, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// Panics if `coeffs` is empty: a series always knows at least `q^0`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Series { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// Adds `c` to the coefficient of `q^n`; ignored above the order.
    pub fn add_term(&mut self, n: usize, c: &Rational) {
        if let Some(slot) = self.coeffs.get_mut(n) {
            *slot += c;
        }
    }

    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order());
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest exponent `n <= min order` at which the two series differ.
    pub fn first_difference(&self, other: &Series) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `c` with `b * c = self` to the common order.
    pub fn div(&self, b: &Series) -> Result<Series> {
        let b0 = b.coeffs[0].clone();
        if b0.is_zero() {
            return Err(Error::NonUnitDivisor);
        }
        let order = self.order().min(b.order());
        let inv = b0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                let bk = &b.coeffs[k];
                if !bk.is_zero() {
                    acc -= bk * &out[n - k];
                }
            }
            out.push(acc * &inv);
        }
        Ok(Series { coeffs: out })
    }

    /// The Euler operator `q d/dq`: `a_n ↦ n a_n`.
    pub fn euler_op(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| a * Rational::from_integer(BigInt::from(n)))
            .collect();
        Series { coeffs }
    }

    /// `a(q^k)`, of order `k * order`.
    pub fn substitute_power(&self, k: usize) -> Series {
        assert!(k >= 1, "substitution q -> q^k needs k >= 1");
        let mut out = Series::zero(self.order() * k);
        for (n, a) in self.coeffs.iter().enumerate() {
            out.coeffs[n * k] = a.clone();
        }
        out
    }

    /// `a(-q)`.
    pub fn substitute_negate(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| if n % 2 == 1 { -a } else { a.clone() })
            .collect();
        Series { coeffs }
    }

    /// `q^m a(q)`, of order `order + m`.
    pub fn shift(&self, m: usize) -> Series {
        let mut coeffs = vec![Rational::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u32) -> Series {
        let mut result = Series::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn zip_with(&self, other: &Series, f: impl Fn(&Rational, &Rational) -> Rational) -> Series {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        Series { coeffs }
    }

    fn cauchy(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                let f: fn(&Series, &Series) -> Series = $body;
                f(self, rhs)
            }
        }
        impl $tr<Series> for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.zip_with(b, |x, y| x + y));
forward_binop!(Sub, sub, |a, b| a.zip_with(b, |x, y| x - y));
forward_binop!(Mul, mul, |a, b| a.cauchy(b));

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match n {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if n == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{n}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    coeffs: Vec<String>,
    order: usize,
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesWire {
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
            order: self.order(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = SeriesWire::deserialize(deserializer)?;
        if wire.coeffs.len() != wire.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                wire.order,
                wire.order + 1,
                wire.coeffs.len()
            )));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|c| parse_rational(c).ok_or_else(|| D::Error::custom(format!("bad rational `{c}`"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Series { coeffs })
    }
}

/// `Σ_{n=1..=order} σ(n) q^n` for the chosen divisor sum; no constant term.
pub fn lambert(kind: DivisorKind, s: u32, order: usize) -> Series {
    let mut out = Series::zero(order);
    for n in 1..=order {
        out.coeffs[n] = Rational::from_integer(sigma(kind, s, n as u64));
    }
    out
}

/// `Π_{n>=0} (1 - q^{offset + modulus·n})^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFactor {
    pub offset: usize,
    pub modulus: usize,
    pub exponent: i64,
}

impl ProductFactor {
    pub const fn new(offset: usize, modulus: usize, exponent: i64) -> Self {
        ProductFactor { offset, modulus, exponent }
    }
}

impl fmt::Display for ProductFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Π(1-q^({}+{}n))^{}", self.offset, self.modulus, self.exponent)
    }
}

/// Expands a product of `(1 - q^{a+bn})^e` factors to the given order.
/// Negative exponents are handled by expanding the positive part and dividing.
pub fn product_expansion(factors: &[ProductFactor], order: usize) -> Result<Series> {
    let mut numer = Series::one(order);
    let mut denom = Series::one(order);
    for f in factors {
        if f.offset == 0 {
            return Err(Error::VanishingFactor);
        }
        if f.modulus == 0 {
            return Err(Error::DegenerateModulus);
        }
        let target = if f.exponent >= 0 { &mut numer } else { &mut denom };
        let mut m = f.offset;
        while m <= order {
            for _ in 0..f.exponent.unsigned_abs() {
                // multiply in place by (1 - q^m)
                for n in (m..=order).rev() {
                    let (lo, hi) = target.coeffs.split_at_mut(n);
                    hi[0] -= &lo[n - m];
                }
            }
            m += f.modulus;
        }
    }
    if denom.coeffs.iter().skip(1).all(Zero::is_zero) {
        Ok(numer)
    } else {
        numer.div(&denom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn ring_basics() {
        let a = Series::from_ints(&[1, 1, 0, 0, 0]);
        let b = Series::from_ints(&[1, -1, 0, 0, 0]);
        assert_eq!(&a * &b, Series::from_ints(&[1, 0, -1, 0, 0]));
        assert!((&a - &a).is_zero());
        assert_eq!(-&a + a.clone(), Series::zero(4));
        assert_eq!(a.scale(&int(3)), Series::from_ints(&[3, 3, 0, 0, 0]));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = Series::from_ints(&[1, 2, 3, 4]);
        let b = Series::from_ints(&[1, 1]);
        assert_eq!((&a + &b).order(), 1);
        assert_eq!(&a * &b, Series::from_ints(&[1, 3]));
    }

    #[test]
    fn geometric_division() {
        let one = Series::one(3);
        let d = Series::from_ints(&[1, -1, 0, 0]);
        assert_eq!(one.div(&d).unwrap(), Series::from_ints(&[1, 1, 1, 1]));
        assert_eq!(d.div(&d).unwrap(), Series::one(3));
        let q = Series::from_ints(&[0, 1, 0]);
        assert_eq!(one.div(&q), Err(Error::NonUnitDivisor));
    }

    #[test]
    fn euler_and_substitutions() {
        let a = Series::from_ints(&[1, 1, 1]);
        assert_eq!(a.euler_op(), Series::from_ints(&[0, 1, 2]));
        assert!(Series::constant(int(7), 5).euler_op().is_zero());
        assert_eq!(Series::from_ints(&[1, 1]).substitute_power(3), Series::from_ints(&[1, 0, 0, 1]));
        assert_eq!(a.substitute_power(1), a);
        assert_eq!(a.substitute_negate(), Series::from_ints(&[1, -1, 1]));
        assert_eq!(a.substitute_negate().substitute_negate(), a);
        assert_eq!(a.shift(2), Series::from_ints(&[0, 0, 1, 1, 1]));
    }

    #[test]
    fn lambert_coefficients() {
        assert_eq!(lambert(DivisorKind::Plain, 1, 4), Series::from_ints(&[0, 1, 3, 4, 7]));
        assert_eq!(lambert(DivisorKind::Tilde, 1, 3), Series::from_ints(&[0, 1, -1, 4]));
        assert!(lambert(DivisorKind::Hat, 1, 0).is_zero());
    }

    #[test]
    fn euler_product() {
        let e = product_expansion(&[ProductFactor::new(1, 1, 1)], 7).unwrap();
        assert_eq!(e, Series::from_ints(&[1, -1, -1, 0, 0, 1, 0, 1]));
        let inv = product_expansion(&[ProductFactor::new(1, 1, 2), ProductFactor::new(1, 1, -2)], 30).unwrap();
        assert_eq!(inv, Series::one(30));
        assert_eq!(product_expansion(&[ProductFactor::new(0, 1, 1)], 5), Err(Error::VanishingFactor));
        assert_eq!(product_expansion(&[ProductFactor::new(1, 0, 1)], 5), Err(Error::DegenerateModulus));
    }

    #[test]
    fn partition_generating_function() {
        // 1/(q;q)_∞ counts partitions
        let p = product_expansion(&[ProductFactor::new(1, 1, -1)], 10).unwrap();
        assert_eq!(p, Series::from_ints(&[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]));
    }

    #[test]
    fn display_and_json() {
        let s = Series::from_coeffs(vec![int(1), int(-2), Rational::new(1.into(), 3.into())]);
        assert_eq!(s.to_string(), "1 - 2q + 1/3q^2 + O(q^3)");
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"coeffs":["1","-2","1/3"],"order":2}"#);
        let back: Series = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<Series>(r#"{"coeffs":["1"],"order":2}"#).is_err());
    }
}
