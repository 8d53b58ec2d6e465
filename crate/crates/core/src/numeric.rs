//! Arbitrary-precision evaluation of the named series at real points
//! `0 < |x| < 1`, and comparison against closed forms in `π` and `Γ(3/4)`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use astro_float::{BigFloat as Af, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{boundary_value, rat, DivisorKind, Rational};
use crate::error::{Error, Result};
use crate::generators::{Family, Hahn, PhiVariant, SeriesName, Sign};
use crate::identities::Status;
use crate::qseries::Series;

pub const DEFAULT_PRECISION: usize = 256;
pub const MIN_PRECISION: usize = 64;
/// Bits of slack allowed between working precision and the pass threshold.
pub const TOLERANCE_SLACK: usize = 32;

const RM: RoundingMode = RoundingMode::ToEven;
const MAX_TERMS: usize = 1_000_000;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// A binary floating-point number carrying its working precision.
#[derive(Clone, Debug)]
pub struct BigFloat {
    v: Af,
    p: usize,
}

impl BigFloat {
    fn wrap(v: Af, p: usize) -> Self {
        BigFloat { v, p }
    }

    pub fn from_i64(n: i64, p: usize) -> Self {
        Self::wrap(Af::from_i64(n, p), p)
    }

    pub fn from_bigint(n: &BigInt, p: usize) -> Self {
        let v = with_cc(|cc| Af::parse(&n.to_string(), Radix::Dec, p, RM, cc));
        Self::wrap(v, p)
    }

    pub fn from_rational(r: &Rational, p: usize) -> Self {
        Self::from_bigint(r.numer(), p) / Self::from_bigint(r.denom(), p)
    }

    pub fn zero(p: usize) -> Self {
        Self::from_i64(0, p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_i64(1, p)
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.p)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.p, RM), self.p)
    }

    pub fn exp(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.exp(self.p, RM, cc)), self.p)
    }

    pub fn ln(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.ln(self.p, RM, cc)), self.p)
    }

    pub fn powi(&self, n: u64) -> Self {
        Self::wrap(self.v.powi(n as usize, self.p, RM), self.p)
    }

    /// `self^e`; the base must be positive unless `e` is an integer.
    pub fn pow_rational(&self, e: &Rational) -> Result<Self> {
        if e.is_integer() {
            let n: i64 = e.to_integer().try_into().map_err(|_| Error::Divergent)?;
            let m = self.powi(n.unsigned_abs());
            return Ok(if n < 0 { Self::one(self.p) / m } else { m });
        }
        if self.is_negative() || self.is_zero() {
            return Err(Error::InvalidSeries("fractional power of a non-positive number".into()));
        }
        let ef = Self::from_rational(e, self.p);
        Ok(Self::wrap(with_cc(|cc| self.v.pow(&ef.v, self.p, RM, cc)), self.p))
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match self.v.abs().cmp(&other.v.abs()) {
            Some(c) if c < 0 => Ordering::Less,
            Some(0) => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Smallest `e` with `|self| < 2^e`; `None` for zero.
    pub fn log2_bound(&self) -> Option<i64> {
        if self.v.is_zero() {
            None
        } else {
            self.v.exponent().map(i64::from)
        }
    }

    /// `|self| < 2^{-bits}`.
    pub fn below_pow2(&self, bits: usize) -> bool {
        match self.log2_bound() {
            None => true,
            Some(e) => e <= -(bits as i64),
        }
    }

    /// Scientific notation with `digits` significant decimal digits (truncated).
    pub fn to_sci(&self, digits: usize) -> String {
        if self.v.is_zero() {
            return "0".into();
        }
        let s = with_cc(|cc| self.v.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
        let (mant, exp) = s.split_once('e').unwrap_or((&s, "+0"));
        let (sign, mant) = mant.strip_prefix('-').map(|m| ("-", m)).unwrap_or(("", mant));
        let all: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
        let mut lead = all.trim_end_matches('0').to_string();
        if lead.is_empty() {
            lead.push('0');
        }
        lead.truncate(digits.max(1));
        let exp: i64 = exp.parse().unwrap_or(0);
        let (head, tail) = lead.split_at(1);
        let tail = if tail.is_empty() { String::new() } else { format!(".{tail}") };
        format!("{sign}{head}{tail}e{exp}")
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.p as f64 * std::f64::consts::LOG10_2) as usize;
        f.write_str(&self.to_sci(digits))
    }
}

macro_rules! bf_op {
    ($tr:ident, $m:ident) => {
        impl $tr for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                let p = self.p.max(rhs.p);
                BigFloat::wrap(self.v.$m(&rhs.v, p, RM), p)
            }
        }
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                (&self).$m(&rhs)
            }
        }
    };
}
bf_op!(Add, add);
bf_op!(Sub, sub);
bf_op!(Mul, mul);
bf_op!(Div, div);

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat::wrap(Af::neg(&self.v), self.p)
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

fn check_precision(p: usize) -> Result<()> {
    if p < MIN_PRECISION {
        Err(Error::Precision { min: MIN_PRECISION, got: p })
    } else {
        Ok(())
    }
}

fn cached(key: (&'static str, usize), compute: impl FnOnce() -> BigFloat) -> BigFloat {
    static CACHE: OnceLock<Mutex<HashMap<(&'static str, usize), Af>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("constant cache").get(&key) {
        return BigFloat::wrap(v.clone(), key.1);
    }
    let v = compute();
    cache.lock().expect("constant cache").insert(key, v.v.clone());
    v
}

fn agm(a: &BigFloat, b: &BigFloat) -> BigFloat {
    let p = a.p;
    let (mut a, mut b) = (a.clone(), b.clone());
    let half = BigFloat::from_rational(&rat(1, 2), p);
    loop {
        let an = &(&a + &b) * &half;
        let bn = (&a * &b).sqrt();
        let done = (&an - &bn).below_pow2(p - 4) || (&an - &bn).cmp_abs(&(&a - &b)) != Ordering::Less;
        a = an;
        b = bn;
        if done {
            return a;
        }
    }
}

/// `π` by the Gauss–Legendre iteration.
pub fn const_pi(p: usize) -> Result<BigFloat> {
    check_precision(p)?;
    Ok(cached(("pi", p), || {
        let w = p + 32;
        let one = BigFloat::one(w);
        let half = BigFloat::from_rational(&rat(1, 2), w);
        let mut a = one.clone();
        let mut b = half.sqrt();
        let mut t = BigFloat::from_rational(&rat(1, 4), w);
        let mut pw = one;
        for _ in 0..64 {
            let an = &(&a + &b) * &half;
            let d = &a - &an;
            t = &t - &(&pw * &(&d * &d));
            b = (&a * &b).sqrt();
            a = an;
            pw = &pw + &pw;
            if (&a - &b).below_pow2(w / 2 + 4) {
                break;
            }
        }
        let s = &a + &b;
        let out = &(&s * &s) / &(&BigFloat::from_i64(4, w) * &t);
        round_to(&out, p)
    }))
}

fn round_to(x: &BigFloat, p: usize) -> BigFloat {
    let mut v = x.v.clone();
    v.set_precision(p, RM).expect("precision change");
    BigFloat::wrap(v, p)
}

/// `Γ(1/4) = ((2π)^{3/2} / AGM(√2, 1))^{1/2}`.
pub fn const_gamma14(p: usize) -> Result<BigFloat> {
    check_precision(p)?;
    let w = p + 32;
    let pi = const_pi(w)?;
    Ok(cached(("gamma14", p), || {
        let two_pi = &BigFloat::from_i64(2, w) * &pi;
        let num = &two_pi * &two_pi.sqrt();
        let m = agm(&BigFloat::from_i64(2, w).sqrt(), &BigFloat::one(w));
        round_to(&(&num / &m).sqrt(), p)
    }))
}

/// `Γ(3/4) = π√2 / Γ(1/4)`.
pub fn const_gamma34(p: usize) -> Result<BigFloat> {
    check_precision(p)?;
    let w = p + 32;
    let pi = const_pi(w)?;
    let g14 = const_gamma14(w)?;
    Ok(cached(("gamma34", p), || round_to(&(&(&pi * &BigFloat::from_i64(2, w).sqrt()) / &g14), p)))
}

/// Expression tree for closed forms and for series values at points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rat(Rational),
    Pi,
    Gamma34,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Rational),
    Exp(Box<Expr>),
    /// a named series evaluated at a point
    Series(SeriesName, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, p: usize) -> Result<BigFloat> {
        Ok(match self {
            Expr::Rat(r) => BigFloat::from_rational(r, p),
            Expr::Pi => const_pi(p)?,
            Expr::Gamma34 => const_gamma34(p)?,
            Expr::Add(a, b) => a.eval(p)? + b.eval(p)?,
            Expr::Sub(a, b) => a.eval(p)? - b.eval(p)?,
            Expr::Mul(a, b) => a.eval(p)? * b.eval(p)?,
            Expr::Div(a, b) => a.eval(p)? / b.eval(p)?,
            Expr::Neg(a) => -a.eval(p)?,
            Expr::Pow(a, e) => a.eval(p)?.pow_rational(e)?,
            Expr::Exp(a) => a.eval(p)?.exp(),
            Expr::Series(name, x) => eval_point(name, &x.eval(p)?, p)?,
        })
    }
}

macro_rules! expr_op {
    ($tr:ident, $m:ident, $variant:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}
expr_op!(Add, add, Add);
expr_op!(Sub, sub, Sub);
expr_op!(Mul, mul, Mul);
expr_op!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

struct Summer {
    sum: BigFloat,
    tol_bits: usize,
    prev: Option<BigFloat>,
}

impl Summer {
    fn new(p: usize) -> Self {
        Summer { sum: BigFloat::zero(p), tol_bits: p + 16, prev: None }
    }

    /// Adds a term; returns true once terms are negligible and decreasing.
    fn push(&mut self, term: BigFloat) -> bool {
        let scale = self.sum.log2_bound().unwrap_or(0).max(0);
        let small = match term.log2_bound() {
            None => true,
            Some(e) => e + (self.tol_bits as i64) <= scale,
        };
        let decreasing = self.prev.as_ref().is_some_and(|prev| term.cmp_abs(prev) != Ordering::Greater);
        self.sum = &self.sum + &term;
        self.prev = Some(term);
        small && decreasing
    }
}

fn guard_unit_disk(x: &BigFloat) -> Result<()> {
    if x.cmp_abs(&BigFloat::one(x.p)) != Ordering::Less {
        Err(Error::Divergent)
    } else {
        Ok(())
    }
}

/// `Σ_{k>=1} ε(k) k^s x^k / (1 ∓ x^k)`.
fn lambert_at(kind: DivisorKind, s: u32, x: &BigFloat, p: usize) -> Result<BigFloat> {
    let one = BigFloat::one(p);
    let mut acc = Summer::new(p);
    let mut xk = one.clone();
    for k in 1..=MAX_TERMS as u64 {
        xk = &xk * x;
        let den = match kind {
            DivisorKind::Hat => &one + &xk,
            _ => &one - &xk,
        };
        let mut term = &(&BigFloat::from_i64(k as i64, p).powi(s as u64) * &xk) / &den;
        if kind == DivisorKind::Tilde && k % 2 == 0 {
            term = -term;
        }
        if acc.push(term) {
            return Ok(acc.sum);
        }
    }
    Err(Error::Divergent)
}

/// `Σ_{n>=1} ε(n) n^s Σ_{m>=1} m^r x^{mn}`.
fn phi_at(variant: PhiVariant, r: u32, s: u32, x: &BigFloat, p: usize) -> Result<BigFloat> {
    let kind = match variant {
        PhiVariant::Plain => DivisorKind::Plain,
        PhiVariant::Tilde => DivisorKind::Tilde,
    };
    if r == 0 {
        return lambert_at(kind, s, x, p);
    }
    let mut outer = Summer::new(p);
    let mut xn = BigFloat::one(p);
    for n in 1..=MAX_TERMS as u64 {
        xn = &xn * x;
        let mut inner = Summer::new(p);
        let mut y = BigFloat::one(p);
        let mut done = false;
        for m in 1..=MAX_TERMS as u64 {
            y = &y * &xn;
            if inner.push(&BigFloat::from_i64(m as i64, p).powi(r as u64) * &y) {
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::Divergent);
        }
        let mut term = &BigFloat::from_i64(n as i64, p).powi(s as u64) * &inner.sum;
        if kind == DivisorKind::Tilde && n % 2 == 0 {
            term = -term;
        }
        if outer.push(term) {
            return Ok(outer.sum);
        }
    }
    Err(Error::Divergent)
}

fn signed_power(x: &BigFloat, e: i64) -> BigFloat {
    let m = x.abs().powi(e as u64);
    if x.is_negative() && e % 2 == 1 {
        -m
    } else {
        m
    }
}

/// `Σ coeff(k) x^{exp(k)}` over `k >= 0` and, if bilateral, `k <= -1`.
fn quadratic_at(
    x: &BigFloat,
    p: usize,
    bilateral: bool,
    exp: impl Fn(i64) -> i64,
    coeff: impl Fn(i64) -> BigFloat,
) -> Result<BigFloat> {
    let mut total = BigFloat::zero(p);
    let dirs: &[i64] = if bilateral { &[1, -1] } else { &[1] };
    for &dir in dirs {
        let mut acc = Summer::new(p);
        let mut k = if dir == 1 { 0 } else { -1 };
        let mut converged = false;
        for _ in 0..MAX_TERMS {
            let term = &coeff(k) * &signed_power(x, exp(k));
            if acc.push(term) {
                converged = true;
                break;
            }
            k += dir;
        }
        if !converged {
            return Err(Error::Divergent);
        }
        total = &total + &acc.sum;
    }
    Ok(total)
}

fn alt(k: i64, p: usize) -> BigFloat {
    BigFloat::from_i64(if k.rem_euclid(2) == 0 { 1 } else { -1 }, p)
}

/// The defining sum of a named series at `x`, `|x| < 1`.
pub fn eval_point(name: &SeriesName, x: &BigFloat, p: usize) -> Result<BigFloat> {
    check_precision(p)?;
    guard_unit_disk(x)?;
    let x = &round_to(x, p);
    let int = |n: i64| BigFloat::from_i64(n, p);
    let pent = |k: i64| k * (3 * k + 1) / 2;
    let tri = |k: i64| k * (k + 1) / 2;
    let eisenstein = |k: u32| -> Result<BigFloat> {
        let c = -Rational::from_integer((4 * k).into()) / crate::arith::bernoulli(2 * k as usize);
        Ok(&BigFloat::one(p) + &(&BigFloat::from_rational(&c, p) * &lambert_at(DivisorKind::Plain, 2 * k - 1, x, p)?))
    };
    match *name {
        SeriesName::E(w) => {
            if w < 2 || w % 2 == 1 {
                return Err(Error::InvalidSeries(format!("E_{w}")));
            }
            eisenstein(w / 2)
        }
        SeriesName::P => eisenstein(1),
        SeriesName::Q => eisenstein(2),
        SeriesName::R => eisenstein(3),
        SeriesName::Hahn(h) => {
            let (scale, kind, s) = match h {
                Hahn::P => (8, DivisorKind::Tilde, 1),
                Hahn::E => (24, DivisorKind::Hat, 1),
                Hahn::Q => (-16, DivisorKind::Tilde, 3),
                Hahn::R => (8, DivisorKind::Tilde, 5),
            };
            let c0 = BigFloat::from_rational(&boundary_value(kind, s)?, p);
            Ok(&int(scale) * &(&c0 + &lambert_at(kind, s, x, p)?))
        }
        SeriesName::Family(fam, i) => {
            let i = i as u64;
            match fam {
                Family::T => {
                    if i % 2 == 1 {
                        return Err(Error::InvalidSeries(format!("T_{i}: subscript must be even")));
                    }
                    quadratic_at(x, p, true, pent, |k| &alt(k, p) * &int(6 * k + 1).powi(i))
                }
                Family::Eps => quadratic_at(x, p, true, pent, |k| int(6 * k + 1).powi(i)),
                Family::F => quadratic_at(x, p, false, tri, |k| &alt(k, p) * &int(2 * k + 1).powi(i + 1)),
                Family::Psi => quadratic_at(x, p, false, tri, |k| int(2 * k + 1).powi(i)),
            }
        }
        SeriesName::Phi(variant, r, s) => phi_at(variant, r, s, x, p),
        SeriesName::ThetaF(sa, u, sb, v) => {
            let (u, v) = (u as i64, v as i64);
            let sign = |sg: Sign, e: i64| if sg == Sign::Minus && e % 2 == 1 { -1 } else { 1 };
            quadratic_at(x, p, true, |k| u * tri(k) + v * tri(k - 1), |k| int(sign(sa, tri(k)) * sign(sb, tri(k - 1))))
        }
        SeriesName::Varphi => quadratic_at(x, p, true, |k| k * k, |_| int(1)),
        SeriesName::Psi => quadratic_at(x, p, false, tri, |_| int(1)),
        SeriesName::EtaF => quadratic_at(x, p, true, |k| tri(k) + 2 * tri(k - 1), |k| alt(k, p)),
        SeriesName::QPochhammer => {
            let one = BigFloat::one(p);
            let mut acc = one.clone();
            let mut xn = one.clone();
            for _ in 0..MAX_TERMS {
                xn = &xn * x;
                acc = &acc * &(&one - &xn);
                if xn.below_pow2(p + 16) {
                    return Ok(acc);
                }
            }
            Err(Error::Divergent)
        }
    }
}

/// `Σ c_n x^n` over the stored coefficients, by Horner's rule.
pub fn eval_truncated(series: &Series, x: &BigFloat, p: usize) -> Result<BigFloat> {
    check_precision(p)?;
    guard_unit_disk(x)?;
    let x = round_to(x, p);
    let mut acc = BigFloat::zero(p);
    for c in series.coeffs().iter().rev() {
        acc = &(&acc * &x) + &BigFloat::from_rational(c, p);
    }
    Ok(acc)
}

/// A registered special value: a series-side expression and its closed form.
#[derive(Clone, Debug)]
pub struct Special {
    pub id: &'static str,
    pub statement: &'static str,
    pub series: Expr,
    pub closed_form: Expr,
    pub note: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialReport {
    pub abs_err: String,
    pub closed_form_value: String,
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub precision_bits: usize,
    pub rel_err: String,
    pub series_value: String,
    pub status: Status,
    pub tolerance_bits: usize,
}

/// Raw comparison data, for callers that need the errors as numbers.
#[derive(Clone, Debug)]
pub struct Discrepancy {
    pub series: BigFloat,
    pub closed_form: BigFloat,
    pub abs_err: BigFloat,
    /// `abs_err / |closed form|`, or `abs_err` when the closed form is zero.
    pub err: BigFloat,
}

fn r(n: i64, d: i64) -> Expr {
    Expr::Rat(rat(n, d))
}

fn k(n: i64) -> Expr {
    r(n, 1)
}

fn pw(e: Expr, n: i64, d: i64) -> Expr {
    Expr::Pow(Box::new(e), rat(n, d))
}

fn ex(e: Expr) -> Expr {
    Expr::Exp(Box::new(e))
}

fn at(name: &str, x: Expr) -> Expr {
    Expr::Series(name.parse().expect("registered series name"), Box::new(x))
}

/// `±e^{-a·π}`.
fn point(sign: i64, a: Rational) -> Expr {
    let e = ex(-(Expr::Rat(a) * Expr::Pi));
    if sign < 0 {
        -e
    } else {
        e
    }
}

fn build_specials() -> Vec<Special> {
    let x_neg = || point(-1, rat(1, 1));
    let x_pi = || point(1, rat(1, 1));
    let x_2pi = || point(1, rat(2, 1));
    let pi = || Expr::Pi;
    let g8 = || pw(Expr::Gamma34, 8, 1);
    let g16 = || pw(Expr::Gamma34, 16, 1);
    let s2 = || pw(k(2), 1, 2);
    let s3 = || pw(k(3), 1, 2);
    let c = || pw(pi(), 1, 4) / Expr::Gamma34;
    // 1 + √3 + √2·3^{3/4}
    let a = || k(1) + s3() + s2() * pw(k(3), 3, 4);
    // 1 + √3 + √2·3^{1/4}
    let b = || k(1) + s3() + s2() * pw(k(3), 1, 4);
    // 2 + √3 + (√2 + √6)·3^{3/4}/2
    let cc = || k(2) + s3() + r(1, 2) * (s2() + pw(k(6), 1, 2)) * pw(k(3), 3, 4);
    let e_pi = |n: i64, d: i64| ex(r(n, d) * pi());
    let tail_2_3 = || pw(k(2) * s3() - k(3), 1, 4);
    let d_root = || pw(k(3), 3, 8) * pw(s3() + k(1), 5, 6) * pw(a(), 2, 3);

    let sp = |id, statement, series, closed_form| Special { id, statement, series, closed_form, note: None };
    let mut out = vec![
        sp("ct5.phi01", "Φ̃₀,₁(−e^{−π}) = 1/(4π) − 1/8", at("phi_tilde_0_1", x_neg()), k(1) / (k(4) * pi()) - r(1, 8)),
        sp("ct5.phi05", "Φ̃₀,₅(−e^{−π}) = −1/8", at("phi_tilde_0_5", x_neg()), r(-1, 8)),
        sp(
            "ct5.phi16",
            "Φ̃₁,₆(−e^{−π}) = −π⁴/(16Γ¹⁶(3/4))",
            at("phi_tilde_1_6", x_neg()),
            -(pw(pi(), 4, 1) / (k(16) * g16())),
        ),
        sp(
            "ct5.phi27",
            "Φ̃₂,₇(−e^{−π}) = −7π³/(16Γ¹⁶(3/4))",
            at("phi_tilde_2_7", x_neg()),
            -(k(7) * pw(pi(), 3, 1) / (k(16) * g16())),
        ),
        sp("ct5b.phi09", "Φ̃₀,₉(−e^{−π}) = −31/8", at("phi_tilde_0_9", x_neg()), r(-31, 8)),
        sp("ct5b.phi013", "Φ̃₀,₁₃(−e^{−π}) = −5461/8", at("phi_tilde_0_13", x_neg()), r(-5461, 8)),
        sp("hahn.P", "𝒫(−e^{−π}) = 2/π", at("hahnP", x_neg()), k(2) / pi()),
        sp("hahn.E", "ℰ(−e^{−π}) = 0", at("hahnE", x_neg()), k(0)),
        sp("hahn.Q", "𝒬(−e^{−π}) = π²/Γ⁸(3/4)", at("hahnQ", x_neg()), pw(pi(), 2, 1) / g8()),
        sp("hahn.R", "ℛ(−e^{−π}) = 0", at("hahnR", x_neg()), k(0)),
        sp("classical.P_neg", "P(−e^{−π}) = 6/π", at("P", x_neg()), k(6) / pi()),
        sp("classical.P_2pi", "P(e^{−2π}) = 3/π", at("P", x_2pi()), k(3) / pi()),
        sp("classical.Q_2pi", "Q(e^{−2π}) = 3π²/(4Γ⁸(3/4))", at("Q", x_2pi()), k(3) * pw(pi(), 2, 1) / (k(4) * g8())),
        sp("classical.R_neg", "R(−e^{−π}) = 0", at("R", x_neg()), k(0)),
        sp("classical.R_2pi", "R(e^{−2π}) = 0", at("R", x_2pi()), k(0)),
        sp("classical.E10_neg", "E₁₀(−e^{−π}) = 0", at("E10", x_neg()), k(0)),
        sp("classical.E10_2pi", "E₁₀(e^{−2π}) = 0", at("E10", x_2pi()), k(0)),
        sp(
            "t6.eps_plus",
            "ε(e^{−π}) = 2^{−9/8}3^{−3/8}e^{π/24}(1+√3+√2·3^{3/4})/(1+√3+√2·3^{1/4})^{1/2}·π^{1/4}/Γ(3/4)",
            at("eps0", x_pi()),
            pw(k(2), -9, 8) * pw(k(3), -3, 8) * e_pi(1, 24) * a() / pw(b(), 1, 2) * c(),
        ),
        sp(
            "t6.eps_minus",
            "ε(−e^{−π}) = 2^{−3/4}3^{−1/2}e^{π/24}(1+√3)(2√3−3)^{1/4}·π^{1/4}/Γ(3/4)",
            at("eps0", x_neg()),
            pw(k(2), -3, 4) * pw(k(3), -1, 2) * e_pi(1, 24) * (k(1) + s3()) * tail_2_3() * c(),
        ),
        sp(
            "t7.eps_2pi",
            "ε(e^{−2π}) = e^{π/12}(2+√3+(√2+√6)3^{3/4}/2)/(3^{3/8}(√3+1)^{5/6}(1+√3+√2·3^{3/4})^{2/3})·π^{1/4}/Γ(3/4)",
            at("eps0", x_2pi()),
            e_pi(1, 12) * cc() / d_root() * c(),
        ),
        sp(
            "t8.f15",
            "f(e^{−π}, e^{−5π}) = 2^{−5/4}3^{−3/8}e^{π/3}(√3+1)^{5/6}(1+√3+√2·3^{3/4})^{5/3}/((1+√3+√2·3^{1/4})(2+√3+(√2+√6)3^{3/4}/2))·π^{1/4}/Γ(3/4)",
            at("theta_+1_+5", x_pi()),
            pw(k(2), -5, 4) * pw(k(3), -3, 8) * e_pi(1, 3) * pw(s3() + k(1), 5, 6) * pw(a(), 5, 3) / (b() * cc()) * c(),
        ),
        sp(
            "l2.psi3pi",
            "ψ(e^{−3π}) = 2^{−1/8}3^{−3/8}e^{3π/8}(1+√2·3^{1/4}+√3)^{−1/2}·π^{1/4}/Γ(3/4)",
            at("psi", point(1, rat(3, 1))),
            pw(k(2), -1, 8) * pw(k(3), -3, 8) * e_pi(3, 8) * pw(b(), -1, 2) * c(),
        ),
        sp(
            "l2.psi3pi_neg",
            "ψ(−e^{−3π}) = 2^{−3/4}3^{−1/2}e^{3π/8}(2√3−3)^{1/4}·π^{1/4}/Γ(3/4)",
            at("psi", point(-1, rat(3, 1))),
            pw(k(2), -3, 4) * pw(k(3), -1, 2) * e_pi(3, 8) * tail_2_3() * c(),
        ),
        sp(
            "l3.psi6pi",
            "ψ(e^{−6π}) = e^{3π/4}/(3^{3/8}(√3+1)^{5/6}(1+√3+√2·3^{3/4})^{2/3})·π^{1/4}/Γ(3/4)",
            at("psi", point(1, rat(6, 1))),
            e_pi(3, 4) / d_root() * c(),
        ),
        sp(
            "l2.l91",
            "l₉,₁ = ψ(−q)/(√3 q ψ(−q⁹)) = 1 at q = e^{−π/3}",
            at("psi", point(-1, rat(1, 3))) / (s3() * point(1, rat(1, 3)) * at("psi", point(-1, rat(3, 1)))),
            k(1),
        ),
        sp(
            "l2.l91_prime",
            "l′₉,₁ = ψ(q)/(√3 q ψ(q⁹)) = (1+√2·3^{1/4}+√3)/2 at q = e^{−π/3}",
            at("psi", point(1, rat(1, 3))) / (s3() * point(1, rat(1, 3)) * at("psi", point(1, rat(3, 1)))),
            r(1, 2) * b(),
        ),
        sp(
            "l3.l94_prime",
            "l′₉,₄ = ψ(q)/(√3 q ψ(q⁹)) = 1+√3+(√2+√6)3^{1/4}/2 at q = e^{−2π/3}",
            at("psi", point(1, rat(2, 3))) / (s3() * point(1, rat(2, 3)) * at("psi", point(1, rat(6, 1)))),
            k(1) + s3() + r(1, 2) * (s2() + pw(k(6), 1, 2)) * pw(k(3), 1, 4),
        ),
    ];
    out.push(Special {
        id: "classical.Q_neg",
        statement: "Q(−e^{−π}) = −4Q(e^{−2π}) = −3π²/Γ⁸(3/4)",
        series: at("Q", x_neg()),
        closed_form: -(k(3) * pw(pi(), 2, 1) / g8()),
        note: Some(
            "the commonly quoted chain Q(-e^-pi) = -4Q(e^-2pi) = 3pi^2/(4Gamma^8(3/4)) attaches the closed form of \
             Q(e^-2pi) to Q(-e^-pi); the checked value is -4 times it",
        ),
    });
    out.sort_by(|a, b| a.id.cmp(b.id));
    out
}

pub fn specials() -> &'static [Special] {
    static SPECIALS: OnceLock<Vec<Special>> = OnceLock::new();
    SPECIALS.get_or_init(build_specials)
}

pub fn special(id: &str) -> Result<&'static Special> {
    specials().iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownSpecialValue(id.to_string()))
}

/// Evaluates both sides of a special value at precision `p`.
pub fn discrepancy(id: &str, p: usize) -> Result<Discrepancy> {
    check_precision(p)?;
    let sp = special(id)?;
    let series = sp.series.eval(p)?;
    let closed_form = sp.closed_form.eval(p)?;
    let abs_err = (&series - &closed_form).abs();
    let err = if closed_form.is_zero() { abs_err.clone() } else { &abs_err / &closed_form.abs() };
    Ok(Discrepancy { series, closed_form, abs_err, err })
}

/// Pass when the (relative, or absolute for a zero closed form) error is
/// below `2^{-(p - 32)}`.
pub fn check_special(id: &str, p: usize) -> Result<SpecialReport> {
    let sp = special(id)?;
    let d = discrepancy(id, p)?;
    let tolerance_bits = p.saturating_sub(TOLERANCE_SLACK);
    let status = if d.err.below_pow2(tolerance_bits) { Status::Pass } else { Status::Fail };
    let mut note = sp.note.map(str::to_string);
    if d.closed_form.is_zero() {
        let z = "closed form is zero: rel_err reports the absolute error".to_string();
        note = Some(match note {
            Some(n) => format!("{n}; {z}"),
            None => z,
        });
    }
    Ok(SpecialReport {
        abs_err: d.abs_err.to_sci(6),
        closed_form_value: d.closed_form.to_sci(40),
        id: id.to_string(),
        note,
        precision_bits: p,
        rel_err: d.err.to_sci(6),
        series_value: d.series.to_sci(40),
        status,
        tolerance_bits,
    })
}
