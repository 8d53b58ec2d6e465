//! Exact rationals, Bernoulli numbers and the divisor-sum functions.
//!
//! Three divisor sums are supported, selected by [`DivisorKind`]:
//!
//! - `σ_s(n)  = Σ_{d|n} d^s`
//! - `σ̃_s(n) = Σ_{d|n} (-1)^{d-1} d^s`
//! - `σ̂_s(n) = Σ_{d|n} (-1)^{n/d-1} d^s`
//!
//! Arguments that are not nonnegative integers evaluate to zero, so that
//! expressions like `σ_s(n/2)` need no special casing. The value at `n = 0`
//! is not a divisor sum at all: it is a per-identity constant looked up by
//! [`boundary_value`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"num/den"` or `"num"`; the inverse of `Rational`'s `Display`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DivisorKind {
    /// `σ_s`
    Plain,
    /// `σ̃_s`, sign by divisor parity
    Tilde,
    /// `σ̂_s`, sign by codivisor parity
    Hat,
}

impl DivisorKind {
    pub const ALL: [DivisorKind; 3] = [DivisorKind::Plain, DivisorKind::Tilde, DivisorKind::Hat];

    pub fn symbol(self) -> &'static str {
        match self {
            DivisorKind::Plain => "σ",
            DivisorKind::Tilde => "σ̃",
            DivisorKind::Hat => "σ̂",
        }
    }

    /// `σ̃_3`-style label.
    pub fn label(self, s: u32) -> String {
        format!("{}_{}", self.symbol(), s)
    }

    fn sign(self, d: u64, codivisor: u64) -> bool {
        match self {
            DivisorKind::Plain => true,
            DivisorKind::Tilde => d % 2 == 1,
            DivisorKind::Hat => codivisor % 2 == 1,
        }
    }
}

impl fmt::Display for DivisorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DivisorKind::Plain => "plain",
            DivisorKind::Tilde => "tilde",
            DivisorKind::Hat => "hat",
        })
    }
}

/// All Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    // B_m = -1/(m+1) Σ_{k<m} C(m+1, k) B_k, from x/(e^x - 1) = Σ B_n x^n / n!
    let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
    out.push(Rational::one());
    for m in 1..=n {
        let mut binom = BigInt::one(); // C(m+1, k), starting at k = 0
        let mut acc = Rational::zero();
        for (k, b) in out.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * b;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        out.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    out
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_numbers(n).pop().expect("at least B_0")
}

type SigmaTable = HashMap<(DivisorKind, u32), Vec<BigInt>>;

fn memo() -> &'static RwLock<SigmaTable> {
    static MEMO: OnceLock<RwLock<SigmaTable>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn sigma_uncached(kind: DivisorKind, s: u32, n: u64) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::zero();
    let mut add = |d: u64| {
        let term = BigInt::from(d).pow(s);
        if kind.sign(d, n / d) {
            acc += term;
        } else {
            acc -= term;
        }
    };
    for d in 1..=n.sqrt() {
        if n.is_multiple_of(d) {
            add(d);
            if d != n / d {
                add(n / d);
            }
        }
    }
    acc
}

/// The literal divisor sum for `n >= 1` (and `0` for `n = 0`).
///
/// Results are memoised per `(kind, s)` in a process-wide table that grows on
/// demand; concurrent callers always see identical values.
pub fn sigma(kind: DivisorKind, s: u32, n: u64) -> BigInt {
    let idx = n as usize;
    {
        let table = memo().read().unwrap_or_else(|e| e.into_inner());
        if let Some(v) = table.get(&(kind, s)).and_then(|row| row.get(idx)) {
            return v.clone();
        }
    }
    let mut table = memo().write().unwrap_or_else(|e| e.into_inner());
    let row = table.entry((kind, s)).or_default();
    while row.len() <= idx {
        let m = row.len() as u64;
        row.push(sigma_uncached(kind, s, m));
    }
    row[idx].clone()
}

/// The rational constant standing in for a divisor sum at `n = 0`.
///
/// Only the pairs that appear in the convolution identities have a value; the
/// table is closed on purpose. See [`eisenstein_boundary`] for the pattern
/// behind the plain entries.
pub fn boundary_value(kind: DivisorKind, s: u32) -> Result<Rational> {
    use DivisorKind::*;
    let v = match (kind, s) {
        (Plain, 3) => rat(1, 240),
        (Plain, 5) => rat(-1, 504),
        (Plain, 7) => rat(1, 480),
        (Tilde, 1) => rat(1, 8),
        (Tilde, 3) => rat(-1, 16),
        (Tilde, 5) => rat(1, 8),
        (Hat, 1) => rat(1, 24),
        _ => return Err(Error::NoBoundaryValue { kind, s }),
    };
    Ok(v)
}

/// `-B_{2k} / 4k`: the value of `σ_{2k-1}(0)` that makes
/// `E_{2k} = -(4k/B_{2k}) Σ_{n>=0} σ_{2k-1}(n) q^n`.
///
/// Not consulted by [`boundary_value`]; exposed for extrapolating beyond the
/// fixed table.
pub fn eisenstein_boundary(k: u32) -> Rational {
    -bernoulli(2 * k as usize) / int(4 * k as i64)
}

/// Divisor sum at an integer argument with the boundary convention:
/// negative `n` gives 0, `n = 0` gives [`boundary_value`].
pub fn divisor_sum_at(kind: DivisorKind, s: u32, n: i64) -> Result<Rational> {
    match n.cmp(&0) {
        std::cmp::Ordering::Less => Ok(Rational::zero()),
        std::cmp::Ordering::Equal => boundary_value(kind, s),
        std::cmp::Ordering::Greater => Ok(Rational::from_integer(sigma(kind, s, n as u64))),
    }
}

/// Divisor sum at a rational argument; anything that is not a nonnegative
/// integer evaluates to 0.
pub fn divisor_sum(kind: DivisorKind, s: u32, n: &Rational) -> Result<Rational> {
    if !n.is_integer() || n.is_negative() {
        return Ok(Rational::zero());
    }
    match n.to_integer().to_i64() {
        Some(m) => divisor_sum_at(kind, s, m),
        None => Err(Error::InvalidSeries(format!("divisor sum argument {n} too large"))),
    }
}

/// One factor of a convolution sum. The value at 0 defaults to
/// [`boundary_value`] but may be overridden.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvTerm {
    pub kind: DivisorKind,
    pub s: u32,
    pub at_zero: Option<Rational>,
}

impl ConvTerm {
    pub fn new(kind: DivisorKind, s: u32) -> Self {
        ConvTerm { kind, s, at_zero: None }
    }

    pub fn with_zero(mut self, value: Rational) -> Self {
        self.at_zero = Some(value);
        self
    }

    pub fn value(&self, n: u64) -> Result<Rational> {
        if n == 0 {
            if let Some(v) = &self.at_zero {
                return Ok(v.clone());
            }
        }
        divisor_sum_at(self.kind, self.s, n as i64)
    }

    fn table(&self, n: u64) -> Result<Vec<Rational>> {
        (0..=n).map(|m| self.value(m)).collect()
    }
}

impl fmt::Display for ConvTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kind.label(self.s))
    }
}

/// `Σ_{i_1+…+i_k = n} Π_t term_t(i_t)` by direct enumeration of every
/// composition of `n` into `k` nonnegative parts.
pub fn convolution(terms: &[ConvTerm], n: u64) -> Result<Rational> {
    if terms.is_empty() {
        return Err(Error::InvalidSeries("convolution needs at least one term".into()));
    }
    let tables = terms.iter().map(|t| t.table(n)).collect::<Result<Vec<_>>>()?;
    Ok(enumerate(&tables, n as usize))
}

fn enumerate(tables: &[Vec<Rational>], remaining: usize) -> Rational {
    match tables {
        [] => unreachable!(),
        [last] => last[remaining].clone(),
        [first, rest @ ..] => {
            let mut acc = Rational::zero();
            for (i, v) in first.iter().enumerate().take(remaining + 1) {
                if v.is_zero() {
                    continue;
                }
                acc += v * enumerate(rest, remaining - i);
            }
            acc
        }
    }
}
