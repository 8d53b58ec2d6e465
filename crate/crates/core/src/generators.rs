//! Builders for every named q-series, each to an explicit truncation order.
//!
//! Series are identified by [`SeriesName`], whose canonical text form
//! (`"T4"`, `"eps3"`, `"phi_tilde_2_7"`, `"hahnQ"`, ...) is what the command
//! line accepts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{bernoulli, boundary_value, int, sigma, DivisorKind, Rational};
use crate::error::{Error, Result};
use crate::qseries::{lambert, product_expansion, ProductFactor, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hahn {
    P,
    E,
    Q,
    R,
}

impl Hahn {
    pub const ALL: [Hahn; 4] = [Hahn::P, Hahn::E, Hahn::Q, Hahn::R];

    /// `(scale, kind, s)` with the series being `Σ_{n>=0} scale·σ(n) q^n`.
    fn definition(self) -> (i64, DivisorKind, u32) {
        match self {
            Hahn::P => (8, DivisorKind::Tilde, 1),
            Hahn::E => (24, DivisorKind::Hat, 1),
            Hahn::Q => (-16, DivisorKind::Tilde, 3),
            Hahn::R => (8, DivisorKind::Tilde, 5),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Hahn::P => "𝒫",
            Hahn::E => "ℰ",
            Hahn::Q => "𝒬",
            Hahn::R => "ℛ",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `T_{2n}`, pentagonal exponents with sign
    T,
    /// `F_n`, triangular exponents with sign
    F,
    /// `ψ_n`, triangular exponents
    Psi,
    /// `ε_n`, pentagonal exponents
    Eps,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::T, Family::F, Family::Psi, Family::Eps];

    pub fn name(self) -> &'static str {
        match self {
            Family::T => "T",
            Family::F => "F",
            Family::Psi => "psi",
            Family::Eps => "eps",
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "t" => Ok(Family::T),
            "F" | "f" => Ok(Family::F),
            "psi" | "Psi" => Ok(Family::Psi),
            "eps" | "Eps" => Ok(Family::Eps),
            _ => Err(Error::UnknownSeries(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PhiVariant {
    Plain,
    Tilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Every series the engine knows how to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesName {
    /// Normalised Eisenstein series `E_w`, `w = 2k`.
    E(u32),
    P,
    Q,
    R,
    Hahn(Hahn),
    /// `T_w` (even `w`), `F_n`, `ψ_n`, `ε_n` by subscript.
    Family(Family, u32),
    Phi(PhiVariant, u32, u32),
    /// `f(±q^u, ±q^v)`
    ThetaF(Sign, u32, Sign, u32),
    /// `φ(q) = f(q, q)`
    Varphi,
    /// `ψ(q)`, one-sided triangular sum
    Psi,
    /// `f(-q) = f(-q, -q^2)`
    EtaF,
    /// `(q; q)_∞` as a product
    QPochhammer,
}

pub const NAME_PATTERNS: &str = "E<2k>, P, Q, R, hahnP, hahnE, hahnQ, hahnR, T<2n>, F<n>, psi<n>, eps<n>, \
     phi_<r>_<s>, phi_tilde_<r>_<s>, theta_<±u>_<±v>, varphi, psi, etaf, qpoch";

impl SeriesName {
    /// Mathematical notation, e.g. `Φ̃_{2,7}` or `f(q, q^5)`.
    pub fn pretty(&self) -> String {
        match *self {
            SeriesName::E(w) => format!("E_{w}"),
            SeriesName::P => "P".into(),
            SeriesName::Q => "Q".into(),
            SeriesName::R => "R".into(),
            SeriesName::Hahn(h) => h.symbol().into(),
            SeriesName::Family(Family::T, i) => format!("T_{i}"),
            SeriesName::Family(Family::F, i) => format!("F_{i}"),
            SeriesName::Family(Family::Psi, i) => format!("ψ_{i}"),
            SeriesName::Family(Family::Eps, i) => format!("ε_{i}"),
            SeriesName::Phi(PhiVariant::Plain, r, s) => format!("Φ_{{{r},{s}}}"),
            SeriesName::Phi(PhiVariant::Tilde, r, s) => format!("Φ̃_{{{r},{s}}}"),
            SeriesName::ThetaF(sa, u, sb, v) => {
                let mono = |sg: Sign, e: u32| {
                    let sg = if sg == Sign::Minus { "-" } else { "" };
                    if e == 1 {
                        format!("{sg}q")
                    } else {
                        format!("{sg}q^{e}")
                    }
                };
                format!("f({}, {})", mono(sa, u), mono(sb, v))
            }
            SeriesName::Varphi => "φ".into(),
            SeriesName::Psi => "ψ".into(),
            SeriesName::EtaF => "f(-q)".into(),
            SeriesName::QPochhammer => "(q;q)_∞".into(),
        }
    }

    pub fn build(&self, order: usize) -> Result<Series> {
        match *self {
            SeriesName::E(w) => {
                if w < 2 || w % 2 == 1 {
                    return Err(Error::InvalidSeries(format!("E_{w}: weight must be even and >= 2")));
                }
                Ok(eisenstein(w / 2, order))
            }
            SeriesName::P => Ok(eisenstein(1, order)),
            SeriesName::Q => Ok(eisenstein(2, order)),
            SeriesName::R => Ok(eisenstein(3, order)),
            SeriesName::Hahn(h) => Ok(hahn(h, order)),
            SeriesName::Family(fam, i) => family(fam, i, order),
            SeriesName::Phi(variant, r, s) => Ok(phi_series(variant, r, s, order)),
            SeriesName::ThetaF(sa, u, sb, v) => theta_f(sa, u, sb, v, order),
            SeriesName::Varphi => Ok(varphi(order)),
            SeriesName::Psi => Ok(psi(order)),
            SeriesName::EtaF => theta_f(Sign::Minus, 1, Sign::Minus, 2, order),
            SeriesName::QPochhammer => product_expansion(&[ProductFactor::new(1, 1, 1)], order),
        }
    }
}

impl fmt::Display for SeriesName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SeriesName::E(w) => write!(f, "E{w}"),
            SeriesName::P => f.write_str("P"),
            SeriesName::Q => f.write_str("Q"),
            SeriesName::R => f.write_str("R"),
            SeriesName::Hahn(h) => write!(f, "hahn{h:?}"),
            SeriesName::Family(fam, i) => write!(f, "{}{i}", fam.name()),
            SeriesName::Phi(PhiVariant::Plain, r, s) => write!(f, "phi_{r}_{s}"),
            SeriesName::Phi(PhiVariant::Tilde, r, s) => write!(f, "phi_tilde_{r}_{s}"),
            SeriesName::ThetaF(sa, u, sb, v) => write!(f, "theta_{}{u}_{}{v}", sa.char(), sb.char()),
            SeriesName::Varphi => f.write_str("varphi"),
            SeriesName::Psi => f.write_str("psi"),
            SeriesName::EtaF => f.write_str("etaf"),
            SeriesName::QPochhammer => f.write_str("qpoch"),
        }
    }
}

impl FromStr for SeriesName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownSeries(s.to_string());
        let num = |t: &str| t.parse::<u32>().map_err(|_| unknown());
        let signed = |t: &str| -> Result<(Sign, u32)> {
            let (sign, rest) = match t.as_bytes().first() {
                Some(b'+') => (Sign::Plus, &t[1..]),
                Some(b'-') => (Sign::Minus, &t[1..]),
                _ => (Sign::Plus, t),
            };
            let v = num(rest)?;
            if v == 0 {
                return Err(unknown());
            }
            Ok((sign, v))
        };
        let name = match s {
            "P" => SeriesName::P,
            "Q" => SeriesName::Q,
            "R" => SeriesName::R,
            "hahnP" => SeriesName::Hahn(Hahn::P),
            "hahnE" => SeriesName::Hahn(Hahn::E),
            "hahnQ" => SeriesName::Hahn(Hahn::Q),
            "hahnR" => SeriesName::Hahn(Hahn::R),
            "varphi" => SeriesName::Varphi,
            "psi" => SeriesName::Psi,
            "etaf" => SeriesName::EtaF,
            "qpoch" => SeriesName::QPochhammer,
            _ => {
                if let Some(rest) = s.strip_prefix("phi_tilde_") {
                    let (r, t) = rest.split_once('_').ok_or_else(unknown)?;
                    SeriesName::Phi(PhiVariant::Tilde, num(r)?, num(t)?)
                } else if let Some(rest) = s.strip_prefix("phi_") {
                    let (r, t) = rest.split_once('_').ok_or_else(unknown)?;
                    SeriesName::Phi(PhiVariant::Plain, num(r)?, num(t)?)
                } else if let Some(rest) = s.strip_prefix("theta_") {
                    let (a, b) = rest.split_once('_').ok_or_else(unknown)?;
                    let (sa, u) = signed(a)?;
                    let (sb, v) = signed(b)?;
                    SeriesName::ThetaF(sa, u, sb, v)
                } else if let Some(rest) = s.strip_prefix("psi") {
                    SeriesName::Family(Family::Psi, num(rest)?)
                } else if let Some(rest) = s.strip_prefix("eps") {
                    SeriesName::Family(Family::Eps, num(rest)?)
                } else if let Some(rest) = s.strip_prefix('T') {
                    SeriesName::Family(Family::T, num(rest)?)
                } else if let Some(rest) = s.strip_prefix('F') {
                    SeriesName::Family(Family::F, num(rest)?)
                } else if let Some(rest) = s.strip_prefix('E') {
                    SeriesName::E(num(rest)?)
                } else {
                    return Err(unknown());
                }
            }
        };
        match name {
            SeriesName::E(w) if w < 2 || w % 2 == 1 => Err(unknown()),
            SeriesName::Family(Family::T, i) if i % 2 == 1 => Err(unknown()),
            _ => Ok(name),
        }
    }
}

/// `E_{2k} = 1 - (4k / B_{2k}) Σ σ_{2k-1}(n) q^n`.
pub fn eisenstein(k: u32, order: usize) -> Series {
    assert!(k >= 1, "Eisenstein series need k >= 1");
    let factor = -int(4 * k as i64) / bernoulli(2 * k as usize);
    let mut out = lambert(DivisorKind::Plain, 2 * k - 1, order).scale(&factor);
    out.add_term(0, &Rational::one());
    out
}

/// `𝒫, ℰ, 𝒬, ℛ` including their boundary constant terms (each equal to 1).
pub fn hahn(which: Hahn, order: usize) -> Series {
    let (scale, kind, s) = which.definition();
    let scale = int(scale);
    let mut out = lambert(kind, s, order).scale(&scale);
    let at_zero = boundary_value(kind, s).expect("Hahn series use tabulated boundary values");
    out.add_term(0, &(at_zero * scale));
    out
}

fn pow_i(base: i64, e: u32) -> BigInt {
    BigInt::from(base).pow(e)
}

/// Sums `coeff(k) q^{exp(k)}` over `k = 0, 1, 2, …` and, when `bilateral`,
/// `k = -1, -2, …`, stopping each direction once the exponent passes `order`.
/// `exp` must be increasing in `|k|` along each direction.
fn quadratic_sum(
    order: usize,
    bilateral: bool,
    exp: impl Fn(i64) -> i64,
    coeff: impl Fn(i64) -> BigInt,
) -> Series {
    let mut out = Series::zero(order);
    let mut push = |k: i64| -> bool {
        let e = exp(k);
        if e < 0 || e as usize > order {
            return false;
        }
        out.add_term(e as usize, &Rational::from_integer(coeff(k)));
        true
    };
    let mut k = 0;
    while push(k) {
        k += 1;
    }
    if bilateral {
        let mut k = -1;
        while push(k) {
            k -= 1;
        }
    }
    out
}

fn alt(k: i64) -> BigInt {
    if k.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `T_{2n}`, `F_n`, `ψ_n` or `ε_n` by subscript. `T` needs an even subscript.
pub fn family(fam: Family, index: u32, order: usize) -> Result<Series> {
    let pent = |k: i64| k * (3 * k + 1) / 2;
    let tri = |k: i64| k * (k + 1) / 2;
    let out = match fam {
        Family::T => {
            if index % 2 == 1 {
                return Err(Error::InvalidSeries(format!("T_{index}: subscript must be even")));
            }
            quadratic_sum(order, true, pent, |k| alt(k) * pow_i(6 * k + 1, index))
        }
        Family::Eps => quadratic_sum(order, true, pent, |k| pow_i(6 * k + 1, index)),
        Family::F => quadratic_sum(order, false, tri, |k| alt(k) * pow_i(2 * k + 1, index + 1)),
        Family::Psi => quadratic_sum(order, false, tri, |k| pow_i(2 * k + 1, index)),
    };
    Ok(out)
}

/// `f(a, b) = Σ_{k∈ℤ} a^{k(k+1)/2} b^{k(k-1)/2}` at `a = ±q^u`, `b = ±q^v`.
pub fn theta_f(sa: Sign, u: u32, sb: Sign, v: u32, order: usize) -> Result<Series> {
    if u == 0 || v == 0 {
        return Err(Error::InvalidSeries("theta_f needs positive exponents u, v".into()));
    }
    let (u, v) = (u as i64, v as i64);
    let tri = |k: i64| k * (k + 1) / 2;
    let sign_pow = |s: Sign, e: i64| if s == Sign::Minus && e % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    Ok(quadratic_sum(
        order,
        true,
        |k| u * tri(k) + v * tri(k - 1),
        |k| sign_pow(sa, tri(k)) * sign_pow(sb, tri(k - 1)),
    ))
}

/// `φ(q) = 1 + 2 Σ_{k>=1} q^{k²}`.
pub fn varphi(order: usize) -> Series {
    quadratic_sum(order, true, |k| k * k, |_| BigInt::one())
}

/// `ψ(q) = Σ_{k>=0} q^{k(k+1)/2}`.
pub fn psi(order: usize) -> Series {
    quadratic_sum(order, false, |k| k * (k + 1) / 2, |_| BigInt::one())
}

/// Coefficients of `Φ_{r,s}` / `Φ̃_{r,s}` from divisor sums.
///
/// The `q^n` coefficient is `Σ_{d|n} ε(d) d^s (n/d)^r` with `ε(d) = 1` for the
/// plain variant and `(-1)^{d-1}` for the tilde variant, which is
/// `n^r σ_{s-r}(n)` (resp. `σ̃`) when `s >= r`, and `n^s σ_{r-s}(n)`
/// (resp. `σ̂`) otherwise. The Euler operator maps `Φ̃_{r,s}` to `Φ̃_{r+1,s+1}`.
pub fn phi_series(variant: PhiVariant, r: u32, s: u32, order: usize) -> Series {
    let (outer, kind, weight) = if s >= r {
        let kind = match variant {
            PhiVariant::Plain => DivisorKind::Plain,
            PhiVariant::Tilde => DivisorKind::Tilde,
        };
        (r, kind, s - r)
    } else {
        let kind = match variant {
            PhiVariant::Plain => DivisorKind::Plain,
            PhiVariant::Tilde => DivisorKind::Hat,
        };
        (s, kind, r - s)
    };
    let mut out = Series::zero(order);
    for n in 1..=order {
        let c = BigInt::from(n).pow(outer) * sigma(kind, weight, n as u64);
        if !c.is_zero() {
            out.add_term(n, &Rational::from_integer(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> Series {
        Series::from_ints(c)
    }

    fn phi_double_sum(variant: PhiVariant, r: u32, sw: u32, order: usize) -> Series {
        let mut out = Series::zero(order);
        for m in 1..=order {
            for n in 1..=order / m {
                let mut c = BigInt::from(m).pow(r) * BigInt::from(n).pow(sw);
                if variant == PhiVariant::Tilde && n % 2 == 0 {
                    c = -c;
                }
                out.add_term(m * n, &Rational::from_integer(c));
            }
        }
        out
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(eisenstein(2, 1), s(&[1, 240]));
        assert_eq!(eisenstein(1, 3), s(&[1, -24, -72, -96]));
        assert_eq!(eisenstein(3, 1), s(&[1, -504]));
        assert_eq!(eisenstein(5, 1), s(&[1, -264]));
        assert_eq!(eisenstein(7, 1), s(&[1, -24]));
    }

    #[test]
    fn hahn_examples() {
        assert_eq!(hahn(Hahn::Q, 2), s(&[1, -16, 112]));
        assert_eq!(hahn(Hahn::P, 2), s(&[1, 8, -8]));
        assert_eq!(hahn(Hahn::E, 0), s(&[1]));
        assert_eq!(hahn(Hahn::R, 2), s(&[1, 8, -248]));
    }

    #[test]
    fn family_examples() {
        assert_eq!(family(Family::T, 0, 7).unwrap(), s(&[1, -1, -1, 0, 0, 1, 0, 1]));
        assert_eq!(family(Family::Eps, 0, 7).unwrap(), s(&[1, 1, 1, 0, 0, 1, 0, 1]));
        assert_eq!(family(Family::Psi, 0, 6).unwrap(), s(&[1, 1, 0, 1, 0, 0, 1]));
        assert_eq!(family(Family::F, 0, 6).unwrap(), s(&[1, -3, 0, 5, 0, 0, -7]));
        assert!(family(Family::T, 3, 5).is_err());
        // ε_1 = 1 - 5q + 7q^2 + …: k=-1 gives (−5) q^1, k=1 gives 7 q^2
        assert_eq!(family(Family::Eps, 1, 2).unwrap(), s(&[1, -5, 7]));
    }

    #[test]
    fn theta_specialisations() {
        let n = 60;
        assert_eq!(theta_f(Sign::Plus, 1, Sign::Plus, 1, n).unwrap(), varphi(n));
        assert_eq!(theta_f(Sign::Plus, 1, Sign::Plus, 2, n).unwrap(), family(Family::Eps, 0, n).unwrap());
        assert_eq!(
            theta_f(Sign::Minus, 1, Sign::Minus, 2, n).unwrap(),
            product_expansion(&[ProductFactor::new(1, 1, 1)], n).unwrap()
        );
        // bilateral f(q, q^3) and the one-sided triangular sum agree term by term
        assert_eq!(theta_f(Sign::Plus, 1, Sign::Plus, 3, n).unwrap(), psi(n));
        assert_eq!(varphi(9), s(&[1, 2, 0, 0, 2, 0, 0, 0, 0, 2]));
        assert!(theta_f(Sign::Plus, 0, Sign::Plus, 1, 5).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_series(PhiVariant::Plain, 0, 1, 3), s(&[0, 1, 3, 4]));
        assert_eq!(phi_series(PhiVariant::Tilde, 0, 5, 2), s(&[0, 1, -31]));
        assert_eq!(phi_series(PhiVariant::Plain, 1, 2, 2), s(&[0, 1, 6]));
    }

    #[test]
    fn phi_matches_double_sum() {
        for variant in [PhiVariant::Plain, PhiVariant::Tilde] {
            for r in 0..4 {
                for sw in 0..8 {
                    assert_eq!(
                        phi_series(variant, r, sw, 40),
                        phi_double_sum(variant, r, sw, 40),
                        "{variant:?} {r} {sw}"
                    );
                }
            }
        }
    }

    #[test]
    fn phi_tilde_euler_step() {
        for (r, sw) in [(0, 1), (0, 5), (1, 6), (2, 3)] {
            let a = phi_series(PhiVariant::Tilde, r, sw, 50).euler_op();
            assert_eq!(a, phi_series(PhiVariant::Tilde, r + 1, sw + 1, 50));
        }
    }

    #[test]
    fn family_increment_rules() {
        let n = 80;
        for (fam, step, scale) in [(Family::T, 2, 24), (Family::F, 2, 8), (Family::Psi, 2, 8), (Family::Eps, 2, 24)] {
            for i in [0u32, 2, 4] {
                let i = if fam == Family::Eps { i + 1 } else { i };
                let lo = family(fam, i, n).unwrap();
                let hi = family(fam, i + step, n).unwrap();
                assert_eq!(&hi - &lo, lo.euler_op().scale(&int(scale)), "{fam:?} {i}");
            }
        }
    }

    #[test]
    fn hahn_product_relation() {
        let n = 100;
        assert_eq!(hahn(Hahn::R, n), &hahn(Hahn::E, n) * &hahn(Hahn::Q, n));
    }

    #[test]
    fn eisenstein_products() {
        let n = 100;
        let q = eisenstein(2, n);
        let r = eisenstein(3, n);
        assert_eq!(eisenstein(4, n), &q * &q);
        assert_eq!(eisenstein(5, n), &q * &r);
        assert_eq!(eisenstein(7, n), &(&q * &q) * &r);
    }

    #[test]
    fn eps1_product_forms() {
        let n = 120;
        let eps1 = family(Family::Eps, 1, n).unwrap();
        let phi_neg = varphi(n).substitute_negate();
        let f = SeriesName::EtaF.build(n).unwrap();
        assert_eq!(eps1, &(&phi_neg * &phi_neg) * &f);
        let prod = product_expansion(&[ProductFactor::new(1, 1, 3), ProductFactor::new(1, 2, 2)], n).unwrap();
        assert_eq!(eps1, prod);
        let phi_prod = product_expansion(&[ProductFactor::new(1, 1, 1), ProductFactor::new(1, 2, 1)], n).unwrap();
        assert_eq!(phi_neg, phi_prod);
    }

    #[test]
    fn substitute_power_matches_direct_generation() {
        // ψ(q^9) directly: exponents 9·k(k+1)/2
        let direct = quadratic_sum(270, false, |k| 9 * k * (k + 1) / 2, |_| BigInt::one());
        assert_eq!(psi(30).substitute_power(9), direct);
    }

    #[test]
    fn names_roundtrip() {
        let names = [
            SeriesName::E(8),
            SeriesName::P,
            SeriesName::Hahn(Hahn::Q),
            SeriesName::Family(Family::T, 4),
            SeriesName::Family(Family::Eps, 3),
            SeriesName::Family(Family::Psi, 2),
            SeriesName::Family(Family::F, 6),
            SeriesName::Phi(PhiVariant::Tilde, 2, 7),
            SeriesName::Phi(PhiVariant::Plain, 1, 2),
            SeriesName::ThetaF(Sign::Plus, 1, Sign::Minus, 5),
            SeriesName::Varphi,
            SeriesName::Psi,
            SeriesName::EtaF,
            SeriesName::QPochhammer,
        ];
        for n in names {
            assert_eq!(n.to_string().parse::<SeriesName>().unwrap(), n);
        }
        assert_eq!("T4".parse::<SeriesName>().unwrap(), SeriesName::Family(Family::T, 4));
        assert_eq!("phi_tilde_2_7".parse::<SeriesName>().unwrap().pretty(), "Φ̃_{2,7}");
        for bad in ["T3", "E3", "E0", "nope", "phi_1", "theta_+0_+1", "psix"] {
            assert!(bad.parse::<SeriesName>().is_err(), "{bad}");
        }
    }
}
