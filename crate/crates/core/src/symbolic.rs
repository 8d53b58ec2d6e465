//! Graded polynomials in `P, Q, R` (classical) or `𝒫, ℰ, 𝒬, ℛ` (hahn), the
//! `q d/dq` derivations on them, and the recurrences producing the ratio
//! and `Φ` polynomials.
//!
//! Weights are `w(P) = w(𝒫) = w(ℰ) = 2`, `w(Q) = w(𝒬) = 4`, `w(R) = w(ℛ) = 6`.
//! In the hahn ring `ℛ = ℰ𝒬`, so polynomials there are kept in the canonical
//! form where no monomial contains both `ℰ` and `𝒬`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{int, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::generators::{eisenstein, hahn, Family, Hahn, PhiVariant};
use crate::qseries::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Classical,
    Hahn,
}

impl Ring {
    fn symbols(self) -> [&'static str; 4] {
        match self {
            Ring::Classical => ["P", "", "Q", "R"],
            Ring::Hahn => ["𝒫", "ℰ", "𝒬", "ℛ"],
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Classical => "classical",
            Ring::Hahn => "hahn",
        })
    }
}

pub type Exps = [u32; 4];

const WEIGHTS: [u32; 4] = [2, 2, 4, 6];

pub fn monomial_weight(e: &Exps) -> u32 {
    e.iter().zip(WEIGHTS).map(|(a, w)| a * w).sum()
}

/// A polynomial with exact rational coefficients over one of the two rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoly {
    ring: Ring,
    terms: BTreeMap<Exps, Rational>,
}

impl WeightedPoly {
    pub fn zero(ring: Ring) -> Self {
        WeightedPoly { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, c: Rational) -> Self {
        Self::term(ring, c, [0; 4])
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    /// A single term; panics if a classical term uses the padding slot.
    pub fn term(ring: Ring, c: Rational, exps: Exps) -> Self {
        assert!(ring == Ring::Hahn || exps[1] == 0, "classical polynomials have no second generator");
        let mut p = Self::zero(ring);
        p.add_term(exps, c);
        if ring == Ring::Hahn {
            p = p.canonicalize();
        }
        p
    }

    /// Generator by slot: 0 = P/𝒫, 1 = ℰ, 2 = Q/𝒬, 3 = R/ℛ.
    pub fn generator(ring: Ring, slot: usize) -> Self {
        let mut e = [0; 4];
        e[slot] = 1;
        Self::term(ring, Rational::one(), e)
    }

    pub fn p() -> Self {
        Self::generator(Ring::Classical, 0)
    }
    pub fn q() -> Self {
        Self::generator(Ring::Classical, 2)
    }
    pub fn r() -> Self {
        Self::generator(Ring::Classical, 3)
    }
    pub fn hahn_gen(h: Hahn) -> Self {
        let slot = match h {
            Hahn::P => 0,
            Hahn::E => 1,
            Hahn::Q => 2,
            Hahn::R => 3,
        };
        Self::generator(Ring::Hahn, slot)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &Exps) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Exps, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    /// The weight if every term has the same one (the zero polynomial has none).
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(monomial_weight);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight().is_some()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Least common denominator of the coefficients.
    pub fn denominator(&self) -> num_bigint::BigInt {
        self.terms.values().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.ring);
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Rewrites `ℰ^j 𝒬^k` as `ℰ^{j-m} 𝒬^{k-m} ℛ^m` with `m = min(j, k)`.
    /// Identity on classical polynomials.
    pub fn canonicalize(&self) -> Self {
        if self.ring == Ring::Classical {
            return self.clone();
        }
        let mut out = Self::zero(self.ring);
        for (e, c) in &self.terms {
            let m = e[1].min(e[2]);
            out.add_term([e[0], e[1] - m, e[2] - m, e[3] + m], c.clone());
        }
        out
    }

    pub fn is_canonical(&self) -> bool {
        self.ring == Ring::Classical || self.terms.keys().all(|e| e[1] == 0 || e[2] == 0)
    }

    fn check_ring(&self, other: &Self) {
        assert_eq!(self.ring, other.ring, "polynomials from different rings");
    }

    fn sorted_terms(&self) -> Vec<(&Exps, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| monomial_weight(b.0).cmp(&monomial_weight(a.0)).then(b.0.cmp(a.0)));
        v
    }

    fn monomial_text(&self, e: &Exps) -> String {
        let syms = self.ring.symbols();
        let mut s = String::new();
        for (slot, &a) in e.iter().enumerate() {
            match a {
                0 => {}
                1 => s.push_str(syms[slot]),
                _ => s.push_str(&format!("{}^{a}", syms[slot])),
            }
        }
        s
    }

    /// Text with all coefficients over their common denominator,
    /// e.g. `(5P^2 - 2Q)/3`.
    pub fn display_factored(&self) -> String {
        let d = self.denominator();
        if d.is_one() {
            return self.to_string();
        }
        let inner = self.scale(&Rational::from_integer(d.clone()));
        format!("({inner})/{d}")
    }

    /// Parses text like `15P^3 - 30PQ + 16R`, `(1/3)P^2`, `3𝒫² − 2𝒬`.
    ///
    /// Hahn generators may be written `𝒫 ℰ 𝒬 ℛ` or `P E Q R`.
    pub fn parse(ring: Ring, input: &str) -> Result<Self> {
        let fail = |reason: &str| Error::PolyParse { input: input.to_string(), reason: reason.to_string() };
        let text: String = input
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .map(|c| if c == '−' { '-' } else { c })
            .collect();
        if text.is_empty() {
            return Err(fail("empty input"));
        }
        let mut out = Self::zero(ring);
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = Rational::one();
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let paren = i < chars.len() && chars[i] == '(';
            if paren {
                i += 1;
            }
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let coeff_text: String = chars[start..i].iter().collect();
            if paren {
                if i >= chars.len() || chars[i] != ')' || coeff_text.is_empty() {
                    return Err(fail("unbalanced parenthesised coefficient"));
                }
                i += 1;
            }
            let mut coeff = if coeff_text.is_empty() {
                Rational::one()
            } else {
                parse_rational(&coeff_text).ok_or_else(|| fail("bad coefficient"))?
            };
            coeff *= sign;
            let mut exps = [0u32; 4];
            let mut saw_factor = !coeff_text.is_empty();
            while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                let slot = match (ring, chars[i]) {
                    (_, 'P') | (Ring::Hahn, '𝒫') => 0,
                    (Ring::Hahn, 'E') | (Ring::Hahn, 'ℰ') => 1,
                    (_, 'Q') | (Ring::Hahn, '𝒬') => 2,
                    (_, 'R') | (Ring::Hahn, 'ℛ') => 3,
                    _ => return Err(fail(&format!("unexpected character `{}`", chars[i]))),
                };
                i += 1;
                let mut e = 1u32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let s = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = chars[s..i].iter().collect();
                    e = digits.parse().map_err(|_| fail("bad exponent"))?;
                } else {
                    let s = i;
                    let mut digits = String::new();
                    while i < chars.len() {
                        match "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|c| c == chars[i]) {
                            Some(d) => digits.push(char::from(b'0' + d as u8)),
                            None => break,
                        }
                        i += 1;
                    }
                    if i > s {
                        e = digits.parse().map_err(|_| fail("bad exponent"))?;
                    }
                }
                exps[slot] += e;
                saw_factor = true;
            }
            if !saw_factor {
                return Err(fail("empty term"));
            }
            out.add_term(exps, coeff);
        }
        Ok(out.canonicalize())
    }

    /// Substitutes the generator series and expands to `order`.
    pub fn eval_as_series(&self, order: usize) -> Series {
        let gens: [Series; 4] = match self.ring {
            Ring::Classical => [eisenstein(1, order), Series::zero(order), eisenstein(2, order), eisenstein(3, order)],
            Ring::Hahn => Hahn::ALL.map(|h| hahn(h, order)),
        };
        let mut powers: HashMap<(usize, u32), Series> = HashMap::new();
        let mut out = Series::zero(order);
        for (e, c) in &self.terms {
            let mut m = Series::constant(c.clone(), order);
            for (slot, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let pw = powers.entry((slot, a)).or_insert_with(|| gens[slot].pow(a));
                m = &m * &*pw;
            }
            out = out + m;
        }
        out
    }
}

impl Add for &WeightedPoly {
    type Output = WeightedPoly;
    fn add(self, rhs: &WeightedPoly) -> WeightedPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &WeightedPoly {
    type Output = WeightedPoly;
    fn sub(self, rhs: &WeightedPoly) -> WeightedPoly {
        self + &(-rhs)
    }
}

impl Neg for &WeightedPoly {
    type Output = WeightedPoly;
    fn neg(self) -> WeightedPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &WeightedPoly {
    type Output = WeightedPoly;
    fn mul(self, rhs: &WeightedPoly) -> WeightedPoly {
        self.check_ring(rhs);
        let mut out = WeightedPoly::zero(self.ring);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]], x * y);
            }
        }
        out.canonicalize()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for WeightedPoly {
            type Output = WeightedPoly;
            fn $m(self, rhs: WeightedPoly) -> WeightedPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&WeightedPoly> for WeightedPoly {
            type Output = WeightedPoly;
            fn $m(self, rhs: &WeightedPoly) -> WeightedPoly {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for WeightedPoly {
    type Output = WeightedPoly;
    fn neg(self) -> WeightedPoly {
        -&self
    }
}

impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mono = self.monomial_text(e);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else if a.is_integer() {
                write!(f, "{a}{mono}")?;
            } else {
                write!(f, "({a}){mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    coeff: String,
    exps: Exps,
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    ring: Ring,
    terms: Vec<TermWire>,
}

impl Serialize for WeightedPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, c)| TermWire { coeff: c.to_string(), exps: *e }).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for WeightedPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = PolyWire::deserialize(de)?;
        let mut out = WeightedPoly::zero(wire.ring);
        for t in wire.terms {
            if wire.ring == Ring::Classical && t.exps[1] != 0 {
                return Err(D::Error::custom("classical term uses the second slot"));
            }
            let c = parse_rational(&t.coeff).ok_or_else(|| D::Error::custom("bad coefficient"))?;
            out.add_term(t.exps, c);
        }
        Ok(out.canonicalize())
    }
}

/// The images of the generators under `c·q·d/dq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationRules {
    ring: Ring,
    scale: Rational,
    images: [WeightedPoly; 4],
}

impl DerivationRules {
    /// `qP' = (P²−Q)/12`, `qQ' = (PQ−R)/3`, `qR' = (PR−Q²)/2`.
    pub fn classical() -> Self {
        let p = |s: &str| WeightedPoly::parse(Ring::Classical, s).expect("rule table");
        DerivationRules {
            ring: Ring::Classical,
            scale: Rational::one(),
            images: [
                p("(1/12)P^2 - (1/12)Q"),
                WeightedPoly::zero(Ring::Classical),
                p("(1/3)PQ - (1/3)R"),
                p("(1/2)PR - (1/2)Q^2"),
            ],
        }
    }

    /// `q𝒫' = (𝒫²−𝒬)/4`, `qℰ' = (ℰ𝒫−𝒬)/2`, `q𝒬' = 𝒫𝒬−ℰ𝒬`,
    /// `8qℛ' = 12𝒫ℛ−4𝒬²−8ℰℛ`.
    ///
    /// Scaled by 8 these give the ψ-family operator, and by 24 the ε-family
    /// one (`24q𝒫' = 6(𝒫²−𝒬)`, `24qℰ' = 12(ℰ𝒫−𝒬)`, ...).
    pub fn hahn() -> Self {
        let p = |s: &str| WeightedPoly::parse(Ring::Hahn, s).expect("rule table");
        DerivationRules {
            ring: Ring::Hahn,
            scale: Rational::one(),
            images: [
                p("(1/4)P^2 - (1/4)Q"),
                p("(1/2)EP - (1/2)Q"),
                p("PQ - EQ"),
                p("(3/2)PR - (1/2)Q^2 - ER"),
            ],
        }
    }

    pub fn for_ring(ring: Ring) -> Self {
        match ring {
            Ring::Classical => Self::classical(),
            Ring::Hahn => Self::hahn(),
        }
    }

    /// The same rules for `c'·q·d/dq` with `c' = c·self.scale`.
    pub fn scaled(&self, c: i64) -> Self {
        let c = int(c);
        DerivationRules {
            ring: self.ring,
            scale: &self.scale * &c,
            images: self.images.clone().map(|p| p.scale(&c)),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn image(&self, slot: usize) -> &WeightedPoly {
        &self.images[slot]
    }

    /// Leibniz extension of the generator images.
    pub fn derive(&self, p: &WeightedPoly) -> Result<WeightedPoly> {
        if p.ring != self.ring {
            return Err(Error::RingMismatch { expected: self.ring, found: p.ring });
        }
        let mut out = WeightedPoly::zero(self.ring);
        for (e, c) in &p.terms {
            for slot in 0..4 {
                if e[slot] == 0 {
                    continue;
                }
                let mut rest = *e;
                rest[slot] -= 1;
                let factor = WeightedPoly::term(self.ring, c * int(e[slot] as i64), rest);
                out = out + &factor * &self.images[slot];
            }
        }
        Ok(out.canonicalize())
    }
}

impl Family {
    /// `(ring, first ratio g, scale of the Euler operator)`.
    fn ratio_data(self) -> (Ring, WeightedPoly, i64) {
        match self {
            Family::T => (Ring::Classical, WeightedPoly::p(), 24),
            Family::F => (Ring::Classical, WeightedPoly::p(), 8),
            Family::Psi => (Ring::Hahn, WeightedPoly::hahn_gen(Hahn::P), 8),
            Family::Eps => {
                let g = WeightedPoly::parse(Ring::Hahn, "9𝒫 - 8ℰ").expect("literal");
                (Ring::Hahn, g, 24)
            }
        }
    }

    /// Subscripts of the numerator and denominator of the `n`-th ratio.
    pub fn ratio_indices(self, n: u32) -> (u32, u32) {
        match self {
            Family::T | Family::F | Family::Psi => (2 * n, 0),
            Family::Eps => (2 * n + 1, 1),
        }
    }
}

/// `T_{2n}/T₀`, `F_{2n}/F₀`, `ψ_{2n}/ψ₀` or `ε_{2n+1}/ε₁` via
/// `r_{m+1} = r_m·g + D(r_m)`, `r₀ = 1`.
pub fn ratio_poly(fam: Family, n: u32) -> WeightedPoly {
    ratio_polys(fam, n).pop().expect("at least r_0")
}

/// `r_0, …, r_n` for one family.
pub fn ratio_polys(fam: Family, n: u32) -> Vec<WeightedPoly> {
    let (ring, g, c) = fam.ratio_data();
    let rules = DerivationRules::for_ring(ring).scaled(c);
    let mut out = vec![WeightedPoly::one(ring)];
    for _ in 0..n {
        let r = out.last().expect("non-empty");
        let d = rules.derive(r).expect("same ring");
        out.push((r * &g + d).canonicalize());
    }
    out
}

/// `Φ_{r,s}` or `Φ̃_{r,s}` as a polynomial, for `s >= r`, `s - r ∈ {1, 3, 5}`.
pub fn phi_poly(variant: PhiVariant, r: u32, s: u32) -> Result<WeightedPoly> {
    let unsupported = |reason| Err(Error::UnsupportedPhi { r, s, reason });
    if s < r {
        return unsupported("needs s >= r");
    }
    if (r + s).is_multiple_of(2) {
        return unsupported("needs r + s odd");
    }
    let base = match (variant, s - r) {
        (PhiVariant::Plain, 1) => "1/24 - (1/24)P",
        (PhiVariant::Plain, 3) => "(1/240)Q - 1/240",
        (PhiVariant::Plain, 5) => "1/504 - (1/504)R",
        (PhiVariant::Tilde, 1) => "(1/8)P - 1/8",
        (PhiVariant::Tilde, 3) => "1/16 - (1/16)Q",
        (PhiVariant::Tilde, 5) => "(1/8)R - 1/8",
        _ => return unsupported("no base case for s - r beyond 5"),
    };
    let ring = match variant {
        PhiVariant::Plain => Ring::Classical,
        PhiVariant::Tilde => Ring::Hahn,
    };
    let rules = DerivationRules::for_ring(ring);
    let mut p = WeightedPoly::parse(ring, base).expect("base table");
    for _ in 0..r {
        p = rules.derive(&p)?;
    }
    Ok(p)
}

/// Lemma substitution `P = 3𝒫−2ℰ`, `Q = 4ℰ²−3𝒬`, `R = −8ℰ³+9ℛ`.
pub fn classical_to_hahn(p: &WeightedPoly) -> Result<WeightedPoly> {
    if p.ring != Ring::Classical {
        return Err(Error::RingMismatch { expected: Ring::Classical, found: p.ring });
    }
    let h = |s: &str| WeightedPoly::parse(Ring::Hahn, s).expect("literal");
    let images = [h("3P - 2E"), WeightedPoly::zero(Ring::Hahn), h("4E^2 - 3Q"), h("9R - 8E^3")];
    let mut out = WeightedPoly::zero(Ring::Hahn);
    for (e, c) in &p.terms {
        let mut m = WeightedPoly::constant(Ring::Hahn, c.clone());
        for slot in [0, 2, 3] {
            m = &m * &images[slot].pow(e[slot]);
        }
        out = out + m;
    }
    Ok(out.canonicalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::generators::family;

    fn c(s: &str) -> WeightedPoly {
        WeightedPoly::parse(Ring::Classical, s).unwrap()
    }
    fn h(s: &str) -> WeightedPoly {
        WeightedPoly::parse(Ring::Hahn, s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let p = c("15P^3 - 30PQ + 16R");
        assert_eq!(p.to_string(), "15P^3 - 30PQ + 16R");
        assert_eq!(h("135𝒫² − 240𝒫ℰ + 64ℰ² + 42𝒬").to_string(), "135𝒫^2 - 240𝒫ℰ + 64ℰ^2 + 42𝒬");
        assert_eq!(c("(5/3)P^2 - (2/3)Q").display_factored(), "(5P^2 - 2Q)/3");
        assert_eq!(c("1").to_string(), "1");
        assert_eq!(c("P - P").to_string(), "0");
        assert_eq!(h("EQ"), h("R"));
        assert!(WeightedPoly::parse(Ring::Classical, "E").is_err());
        assert!(WeightedPoly::parse(Ring::Classical, "").is_err());
        assert!(WeightedPoly::parse(Ring::Classical, "(1/3P").is_err());
    }

    #[test]
    fn json_shape() {
        let p = c("2P - (1/2)Q");
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"ring":"classical","terms":[{"coeff":"-1/2","exps":[0,0,1,0]},{"coeff":"2","exps":[1,0,0,0]}]}"#);
        let back: WeightedPoly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn derive_examples() {
        let rules = DerivationRules::classical().scaled(12);
        assert_eq!(rules.derive(&WeightedPoly::p()).unwrap(), c("P^2 - Q"));
        let rules = DerivationRules::hahn().scaled(8);
        assert_eq!(rules.derive(&h("R")).unwrap(), h("12PR - 4Q^2 - 8ER"));
        assert!(rules.derive(&WeightedPoly::one(Ring::Hahn)).unwrap().is_zero());
        assert!(matches!(rules.derive(&WeightedPoly::p()), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn rules_match_series() {
        let n = 60;
        for ring in [Ring::Classical, Ring::Hahn] {
            let rules = DerivationRules::for_ring(ring);
            for slot in 0..4 {
                if ring == Ring::Classical && slot == 1 {
                    continue;
                }
                let g = WeightedPoly::generator(ring, slot);
                assert_eq!(
                    rules.derive(&g).unwrap().eval_as_series(n),
                    g.eval_as_series(n).euler_op(),
                    "{ring} slot {slot}"
                );
                assert_eq!(rules.image(slot).weight(), Some(monomial_weight(&g.terms().next().unwrap().0.clone()) + 2));
            }
        }
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(ratio_poly(Family::T, 3), c("15P^3 - 30PQ + 16R"));
        assert_eq!(ratio_poly(Family::T, 4), c("105P^4 - 420P^2Q + 448PR - 132Q^2"));
        assert_eq!(ratio_poly(Family::F, 2), c("(5/3)P^2 - (2/3)Q"));
        assert_eq!(ratio_poly(Family::Psi, 2), h("3P^2 - 2Q"));
        assert_eq!(ratio_poly(Family::Eps, 2), h("135𝒫^2 - 240𝒫ℰ + 64ℰ^2 + 42𝒬"));
        assert_eq!(ratio_poly(Family::Eps, 0), WeightedPoly::one(Ring::Hahn));
    }

    #[test]
    fn ratio_dual_path() {
        let n = 40;
        for fam in Family::ALL {
            for (k, poly) in ratio_polys(fam, 4).iter().enumerate() {
                let (num, den) = fam.ratio_indices(k as u32);
                let lhs = poly.eval_as_series(n) * family(fam, den, n).unwrap();
                assert_eq!(lhs, family(fam, num, n).unwrap(), "{fam:?} {k}");
                assert_eq!(poly.weight(), Some(2 * k as u32));
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_poly(PhiVariant::Plain, 2, 3).unwrap(), c("3PQ - 2R - P^3").scale(&rat(1, 1728)));
        assert_eq!(phi_poly(PhiVariant::Tilde, 1, 6).unwrap(), h("3𝒫ℛ - 𝒬^2 - 2ℰℛ").scale(&rat(1, 16)));
        assert_eq!(phi_poly(PhiVariant::Tilde, 0, 1).unwrap(), h("P - 1").scale(&rat(1, 8)));
        assert_eq!(
            phi_poly(PhiVariant::Tilde, 2, 7).unwrap(),
            h("21𝒫²ℛ + 13𝒬ℛ - 14𝒫𝒬² - 28𝒫ℰℛ + 8ℰ²ℛ").scale(&rat(1, 64))
        );
        assert_eq!(phi_poly(PhiVariant::Plain, 1, 2).unwrap(), c("Q - P^2").scale(&rat(1, 288)));
        assert!(phi_poly(PhiVariant::Plain, 3, 2).is_err());
        assert!(phi_poly(PhiVariant::Plain, 1, 3).is_err());
        assert!(phi_poly(PhiVariant::Tilde, 0, 7).is_err());
    }

    #[test]
    fn lemma_substitution() {
        assert_eq!(classical_to_hahn(&WeightedPoly::p()).unwrap(), h("3P - 2E"));
        assert_eq!(classical_to_hahn(&WeightedPoly::q()).unwrap(), h("4E^2 - 3Q"));
        assert_eq!(classical_to_hahn(&WeightedPoly::one(Ring::Classical)).unwrap(), WeightedPoly::one(Ring::Hahn));
        let n = 50;
        for p in [WeightedPoly::p(), WeightedPoly::q(), WeightedPoly::r(), c("15P^3 - 30PQ + 16R")] {
            assert_eq!(classical_to_hahn(&p).unwrap().eval_as_series(n), p.eval_as_series(n));
        }
    }

    #[test]
    fn hahn_relation_vanishes() {
        let raw = WeightedPoly {
            ring: Ring::Hahn,
            terms: [([0, 0, 0, 1], Rational::one()), ([0, 1, 1, 0], -Rational::one())].into_iter().collect(),
        };
        assert!(raw.eval_as_series(80).is_zero());
        assert!(raw.canonicalize().is_zero());
    }
}
