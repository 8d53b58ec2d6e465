//! The identity registry and the verification engine.
//!
//! Series identities are checked by exact coefficient comparison to a chosen
//! order, always in cross-multiplied form. Convolution identities are checked
//! value by value against the brute-force convolution oracle. Numeric
//! references delegate to [`crate::numeric::check_special`].

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{convolution, divisor_sum, int, rat, ConvTerm, DivisorKind, Rational};
use crate::error::{Error, Result};
use crate::generators::SeriesName;
use crate::numeric;
use crate::qseries::{lambert, product_expansion, ProductFactor, Series};
use crate::symbolic::{Ring, WeightedPoly};

pub const DEFAULT_ORDER: usize = 200;
pub const DEFAULT_NMAX: u64 = 100;

/// A declarative recipe for a truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesExpr {
    Named(SeriesName),
    Poly(WeightedPoly),
    Const(Rational),
    /// `Σ_{n>=1} σ(n) q^n`
    Lambert(DivisorKind, u32),
    Product(Vec<ProductFactor>),
    Add(Box<SeriesExpr>, Box<SeriesExpr>),
    Sub(Box<SeriesExpr>, Box<SeriesExpr>),
    Mul(Box<SeriesExpr>, Box<SeriesExpr>),
    Scale(Rational, Box<SeriesExpr>),
    /// `q ↦ q^k`
    SubstPower(usize, Box<SeriesExpr>),
    /// `q ↦ -q`
    Negate(Box<SeriesExpr>),
    /// multiplication by `q^m`
    Shift(usize, Box<SeriesExpr>),
    /// `q·d/dq`
    Euler(Box<SeriesExpr>),
}

impl SeriesExpr {
    pub fn named(name: &str) -> Self {
        SeriesExpr::Named(name.parse().unwrap_or_else(|e| panic!("{e}")))
    }

    pub fn poly(ring: Ring, text: &str) -> Self {
        SeriesExpr::Poly(WeightedPoly::parse(ring, text).unwrap_or_else(|e| panic!("{e}")))
    }

    pub fn scale(self, c: Rational) -> Self {
        SeriesExpr::Scale(c, Box::new(self))
    }

    pub fn times(self, c: i64) -> Self {
        self.scale(int(c))
    }

    pub fn at_power(self, k: usize) -> Self {
        SeriesExpr::SubstPower(k, Box::new(self))
    }

    pub fn at_neg(self) -> Self {
        SeriesExpr::Negate(Box::new(self))
    }

    pub fn shifted(self, m: usize) -> Self {
        SeriesExpr::Shift(m, Box::new(self))
    }

    pub fn euler(self) -> Self {
        SeriesExpr::Euler(Box::new(self))
    }

    pub fn build(&self, order: usize) -> Result<Series> {
        Ok(match self {
            SeriesExpr::Named(name) => name.build(order)?,
            SeriesExpr::Poly(p) => p.eval_as_series(order),
            SeriesExpr::Const(c) => Series::constant(c.clone(), order),
            SeriesExpr::Lambert(kind, s) => lambert(*kind, *s, order),
            SeriesExpr::Product(fs) => product_expansion(fs, order)?,
            SeriesExpr::Add(a, b) => a.build(order)? + b.build(order)?,
            SeriesExpr::Sub(a, b) => a.build(order)? - b.build(order)?,
            SeriesExpr::Mul(a, b) => a.build(order)? * b.build(order)?,
            SeriesExpr::Scale(c, a) => a.build(order)?.scale(c),
            SeriesExpr::SubstPower(k, a) => {
                let k = (*k).max(1);
                a.build(order.div_ceil(k))?.substitute_power(k).truncate(order)
            }
            SeriesExpr::Negate(a) => a.build(order)?.substitute_negate(),
            SeriesExpr::Shift(m, a) => {
                if *m > order {
                    Series::zero(order)
                } else {
                    a.build(order - m)?.shift(*m)
                }
            }
            SeriesExpr::Euler(a) => a.build(order)?.euler_op(),
        })
    }
}

macro_rules! expr_op {
    ($tr:ident, $m:ident, $variant:ident) => {
        impl $tr for SeriesExpr {
            type Output = SeriesExpr;
            fn $m(self, rhs: SeriesExpr) -> SeriesExpr {
                SeriesExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}
expr_op!(Add, add, Add);
expr_op!(Sub, sub, Sub);
expr_op!(Mul, mul, Mul);

/// One summand of a convolution identity side, evaluated at `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvPart {
    /// `coeff · σ(n·num/den)`, zero when the argument is not an integer
    Point { coeff: Rational, kind: DivisorKind, s: u32, num: i64, den: i64 },
    /// `coeff · Σ_{i_1+…+i_k=n} Π σ_t(i_t)`
    Conv { coeff: Rational, terms: Vec<ConvTerm> },
    /// `coeff · Σ_{m=1}^{n} σ_a(step·m − offset) σ_b(step·(n−m) + offset)`
    Progression { coeff: Rational, a: u32, b: u32, step: i64, offset: i64 },
}

impl ConvPart {
    pub fn point(coeff: i64, kind: DivisorKind, s: u32) -> Self {
        ConvPart::Point { coeff: int(coeff), kind, s, num: 1, den: 1 }
    }

    pub fn conv(coeff: i64, terms: &[(DivisorKind, u32)]) -> Self {
        ConvPart::Conv { coeff: int(coeff), terms: terms.iter().map(|&(k, s)| ConvTerm::new(k, s)).collect() }
    }

    pub fn eval(&self, n: u64) -> Result<Rational> {
        match self {
            ConvPart::Point { coeff, kind, s, num, den } => {
                let arg = rat(n as i64 * num, *den);
                Ok(coeff * divisor_sum(*kind, *s, &arg)?)
            }
            ConvPart::Conv { coeff, terms } => Ok(coeff * convolution(terms, n)?),
            ConvPart::Progression { coeff, a, b, step, offset } => {
                let n = n as i64;
                let mut acc = Rational::from_integer(0.into());
                for m in 1..=n {
                    let x = divisor_sum(DivisorKind::Plain, *a, &int(step * m - offset))?;
                    let y = divisor_sum(DivisorKind::Plain, *b, &int(step * (n - m) + offset))?;
                    acc += x * y;
                }
                Ok(coeff * acc)
            }
        }
    }
}

/// A sum of [`ConvPart`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvSide(pub Vec<ConvPart>);

impl ConvSide {
    pub fn eval(&self, n: u64) -> Result<Rational> {
        let mut acc = int(0);
        for p in &self.0 {
            acc += p.eval(n)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    All,
    Odd,
    Positive,
}

impl Domain {
    pub fn values(self, n_max: u64) -> Vec<u64> {
        match self {
            Domain::All => (0..=n_max).collect(),
            Domain::Odd => (1..=n_max).step_by(2).collect(),
            Domain::Positive => (1..=n_max).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    Series,
    Convolution,
    NumericRef,
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityKind::Series => "series",
            IdentityKind::Convolution => "convolution",
            IdentityKind::NumericRef => "numeric-ref",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Series { lhs: SeriesExpr, rhs: SeriesExpr },
    Convolution { lhs: ConvSide, rhs: ConvSide, domain: Domain },
    NumericRef { special: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub id: String,
    /// The identity as written in the source literature.
    pub statement: String,
    pub body: Body,
}

impl Identity {
    pub fn kind(&self) -> IdentityKind {
        match self.body {
            Body::Series { .. } => IdentityKind::Series,
            Body::Convolution { .. } => IdentityKind::Convolution,
            Body::NumericRef { .. } => IdentityKind::NumericRef,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub at: u64,
    pub lhs: String,
    pub rhs: String,
}

/// Field order is alphabetical so serialised reports have sorted keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checked_up_to: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Failure>,
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub status: Status,
}

impl VerifyReport {
    fn new(id: &str, checked_up_to: u64, first_failure: Option<Failure>) -> Self {
        let status = if first_failure.is_some() { Status::Fail } else { Status::Pass };
        VerifyReport { checked_up_to, first_failure, id: id.to_string(), note: None, status }
    }

    fn errored(id: &str, checked_up_to: u64, err: &Error) -> Self {
        let mut r = Self::new(id, checked_up_to, Some(Failure { at: 0, lhs: String::new(), rhs: String::new() }));
        r.note = Some(err.to_string());
        r
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Exact comparison of both sides to order `order`.
pub fn check_series(id: &str, lhs: &SeriesExpr, rhs: &SeriesExpr, order: usize) -> VerifyReport {
    let built = lhs.build(order).and_then(|l| rhs.build(order).map(|r| (l, r)));
    match built {
        Err(e) => VerifyReport::errored(id, order as u64, &e),
        Ok((l, r)) => {
            let failure = l.first_difference(&r).map(|n| Failure {
                at: n as u64,
                lhs: l.coeff(n).to_string(),
                rhs: r.coeff(n).to_string(),
            });
            VerifyReport::new(id, order as u64, failure)
        }
    }
}

/// Value-by-value comparison over the domain up to `n_max`.
pub fn check_convolution(id: &str, lhs: &ConvSide, rhs: &ConvSide, domain: Domain, n_max: u64) -> VerifyReport {
    let values = domain.values(n_max);
    let results: Vec<Result<(Rational, Rational)>> =
        values.par_iter().map(|&n| Ok((lhs.eval(n)?, rhs.eval(n)?))).collect();
    for (n, res) in values.iter().zip(results) {
        match res {
            Err(e) => return VerifyReport::errored(id, n_max, &e),
            Ok((l, r)) if l != r => {
                return VerifyReport::new(id, n_max, Some(Failure { at: *n, lhs: l.to_string(), rhs: r.to_string() }))
            }
            Ok(_) => {}
        }
    }
    VerifyReport::new(id, n_max, None)
}

fn check_numeric(id: &str, special: &str, precision: usize) -> VerifyReport {
    match numeric::check_special(special, precision) {
        Err(e) => VerifyReport::errored(id, precision as u64, &e),
        Ok(rep) => {
            let failure = (rep.status == Status::Fail).then(|| Failure {
                at: precision as u64,
                lhs: rep.series_value.clone(),
                rhs: rep.closed_form_value.clone(),
            });
            let mut out = VerifyReport::new(id, precision as u64, failure);
            out.note = rep.note.clone();
            out
        }
    }
}

/// Verifies one identity: series kinds to `order`, convolutions to `n_max`,
/// numeric references at [`numeric::DEFAULT_PRECISION`].
pub fn verify(identity: &Identity, order: usize, n_max: u64) -> VerifyReport {
    match &identity.body {
        Body::Series { lhs, rhs } => check_series(&identity.id, lhs, rhs, order),
        Body::Convolution { lhs, rhs, domain } => check_convolution(&identity.id, lhs, rhs, *domain, n_max),
        Body::NumericRef { special } => check_numeric(&identity.id, special, numeric::DEFAULT_PRECISION),
    }
}

fn lookup_kind(id: &str, kind: IdentityKind) -> Result<&'static Identity> {
    let identity = lookup(id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    if identity.kind() != kind {
        let expected = match kind {
            IdentityKind::Series => "series",
            IdentityKind::Convolution => "convolution",
            IdentityKind::NumericRef => "numeric-ref",
        };
        return Err(Error::WrongIdentityKind { id: id.to_string(), expected });
    }
    Ok(identity)
}

pub fn verify_series(id: &str, order: usize) -> Result<VerifyReport> {
    Ok(verify(lookup_kind(id, IdentityKind::Series)?, order, 0))
}

pub fn verify_convolution(id: &str, n_max: u64) -> Result<VerifyReport> {
    Ok(verify(lookup_kind(id, IdentityKind::Convolution)?, 0, n_max))
}

/// Every registered identity, in parallel, sorted by id.
pub fn verify_all(order: usize, n_max: u64) -> Vec<VerifyReport> {
    verify_many(registry(), order, n_max)
}

pub fn verify_many(identities: &[Identity], order: usize, n_max: u64) -> Vec<VerifyReport> {
    let mut out: Vec<VerifyReport> = identities.par_iter().map(|i| verify(i, order, n_max)).collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn lookup(id: &str) -> Option<&'static Identity> {
    registry().iter().find(|i| i.id == id)
}

/// All identities, sorted by id.
pub fn registry() -> &'static [Identity] {
    static REGISTRY: OnceLock<Vec<Identity>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

fn n(name: &str) -> SeriesExpr {
    SeriesExpr::named(name)
}

fn cp(text: &str) -> SeriesExpr {
    SeriesExpr::poly(Ring::Classical, text)
}

fn hp(text: &str) -> SeriesExpr {
    SeriesExpr::poly(Ring::Hahn, text)
}

fn prod(fs: &[(usize, usize, i64)]) -> SeriesExpr {
    SeriesExpr::Product(fs.iter().map(|&(a, m, e)| ProductFactor::new(a, m, e)).collect())
}

fn build_registry() -> Vec<Identity> {
    use DivisorKind::{Hat, Plain, Tilde};

    let mut out = Vec::new();
    let mut series = |id: &str, statement: &str, lhs: SeriesExpr, rhs: SeriesExpr| {
        out.push(Identity { id: id.into(), statement: statement.into(), body: Body::Series { lhs, rhs } });
    };

    series("ode.P", "qP' = (P² − Q)/12", n("P").euler().times(12), cp("P^2 - Q"));
    series("ode.Q", "qQ' = (PQ − R)/3", n("Q").euler().times(3), cp("PQ - R"));
    series("ode.R", "qR' = (PR − Q²)/2", n("R").euler().times(2), cp("PR - Q^2"));
    series("ode.hP", "q𝒫' = (𝒫² − 𝒬)/4", n("hahnP").euler().times(4), hp("𝒫² - 𝒬"));
    series("ode.hE", "qℰ' = (ℰ𝒫 − 𝒬)/2", n("hahnE").euler().times(2), hp("ℰ𝒫 - 𝒬"));
    series("ode.hQ", "q𝒬' = 𝒫𝒬 − ℰ𝒬", n("hahnQ").euler(), n("hahnP") * n("hahnQ") - n("hahnE") * n("hahnQ"));
    series(
        "ode.hR",
        "8qℛ' = 12𝒫ℛ − 4𝒬² − 8ℰℛ",
        n("hahnR").euler().times(8),
        hp("12𝒫ℛ - 4𝒬² - 8ℰℛ"),
    );
    series("hahn.R_eq_EQ", "ℛ = ℰ𝒬", n("hahnR"), n("hahnE") * n("hahnQ"));

    series("lemma1.P", "P = 3𝒫 − 2ℰ", n("P"), hp("3𝒫 - 2ℰ"));
    series("lemma1.Q", "Q = 4ℰ² − 3𝒬", n("Q"), hp("4ℰ² - 3𝒬"));
    series("lemma1.R", "R = −8ℰ³ + 9ℛ", n("R"), hp("9ℛ - 8ℰ³"));

    let ratio_tables: [(&str, &str, &str, Ring, &str, &str); 13] = [
        ("t1.T2", "T2", "T0", Ring::Classical, "P", "T₂/T₀ = P"),
        ("t1.T4", "T4", "T0", Ring::Classical, "3P^2 - 2Q", "T₄/T₀ = 3P² − 2Q"),
        ("t1.T6", "T6", "T0", Ring::Classical, "15P^3 - 30PQ + 16R", "T₆/T₀ = 15P³ − 30PQ + 16R"),
        (
            "t1.T8",
            "T8",
            "T0",
            Ring::Classical,
            "105P^4 - 420P^2Q + 448PR - 132Q^2",
            "T₈/T₀ = 105P⁴ − 420P²Q + 448PR − 132Q²",
        ),
        ("t2.F2", "F2", "F0", Ring::Classical, "P", "F₂/F₀ = P"),
        ("t2.F4", "F4", "F0", Ring::Classical, "(5/3)P^2 - (2/3)Q", "F₄/F₀ = (5P² − 2Q)/3"),
        (
            "t2.F6",
            "F6",
            "F0",
            Ring::Classical,
            "(35/9)P^3 - (42/9)PQ + (16/9)R",
            "F₆/F₀ = (35P³ − 42PQ + 16R)/9",
        ),
        (
            "t2.F8",
            "F8",
            "F0",
            Ring::Classical,
            "(35/3)P^4 - 28P^2Q - 4Q^2 + (64/3)PR",
            "F₈/F₀ = (35P⁴ − 84P²Q − 12Q² + 64PR)/3",
        ),
        ("t3.psi2", "psi2", "psi0", Ring::Hahn, "𝒫", "ψ₂/ψ₀ = 𝒫"),
        ("t3.psi4", "psi4", "psi0", Ring::Hahn, "3𝒫² - 2𝒬", "ψ₄/ψ₀ = 3𝒫² − 2𝒬"),
        ("t3.psi6", "psi6", "psi0", Ring::Hahn, "15𝒫³ - 30𝒫𝒬 + 16ℛ", "ψ₆/ψ₀ = 15𝒫³ − 30𝒫𝒬 + 16ℛ"),
        ("t4.eps3", "eps3", "eps1", Ring::Hahn, "9𝒫 - 8ℰ", "ε₃/ε₁ = 9𝒫 − 8ℰ"),
        (
            "t4.eps5",
            "eps5",
            "eps1",
            Ring::Hahn,
            "135𝒫² - 240𝒫ℰ + 64ℰ² + 42𝒬",
            "ε₅/ε₁ = 135𝒫² − 240𝒫ℰ + 64ℰ² + 42𝒬",
        ),
    ];
    for (id, num, den, ring, poly, statement) in ratio_tables {
        series(id, statement, n(num), SeriesExpr::poly(ring, poly) * n(den));
    }

    series(
        "cor.mixed_T",
        "4ψ₀ε₁T₂ = T₀(3ε₁ψ₂ + ψ₀ε₃)",
        (n("psi0") * n("eps1") * n("T2")).times(4),
        n("T0") * ((n("eps1") * n("psi2")).times(3) + n("psi0") * n("eps3")),
    );
    series(
        "cor.mixed_F",
        "4ψ₀ε₁F₂ = F₀(3ε₁ψ₂ + ψ₀ε₃)",
        (n("psi0") * n("eps1") * n("F2")).times(4),
        n("F0") * ((n("eps1") * n("psi2")).times(3) + n("psi0") * n("eps3")),
    );

    let phi_table: [(u32, u32, i64, &str, &str); 6] = [
        (1, 2, 288, "Q - P^2", "288Φ₁,₂ = Q − P²"),
        (1, 4, 720, "PQ - R", "720Φ₁,₄ = PQ − R"),
        (1, 6, 1008, "Q^2 - PR", "1008Φ₁,₆ = Q² − PR"),
        (2, 3, 1728, "3PQ - 2R - P^3", "1728Φ₂,₃ = 3PQ − 2R − P³"),
        (2, 5, 1728, "P^2Q - 2PR + Q^2", "1728Φ₂,₅ = P²Q − 2PR + Q²"),
        (2, 7, 1728, "2PQ^2 - P^2R - QR", "1728Φ₂,₇ = 2PQ² − P²R − QR"),
    ];
    for (r, s, c, poly, statement) in phi_table {
        series(&format!("phi.{r}_{s}"), statement, n(&format!("phi_{r}_{s}")).times(c), cp(poly));
    }
    let tr_table: [(u32, u32, i64, &str, &str); 6] = [
        (1, 2, 32, "𝒫² - 𝒬", "32Φ̃₁,₂ = 𝒫² − 𝒬"),
        (1, 4, 16, "ℛ - 𝒫𝒬", "16Φ̃₁,₄ = −𝒫𝒬 + ℛ"),
        (1, 6, 16, "3𝒫ℛ - 𝒬² - 2ℰℛ", "16Φ̃₁,₆ = 3𝒫ℛ − 𝒬² − 2ℰℛ"),
        (2, 3, 64, "𝒫³ - 3𝒫𝒬 + 2ℛ", "64Φ̃₂,₃ = 𝒫³ − 3𝒫𝒬 + 2ℛ"),
        (2, 5, 64, "10𝒫ℛ - 5𝒫²𝒬 - 𝒬² - 4ℰℛ", "64Φ̃₂,₅ = −5𝒫²𝒬 − 𝒬² + 10𝒫ℛ − 4ℰℛ"),
        (
            2,
            7,
            64,
            "21𝒫²ℛ + 13𝒬ℛ - 14𝒫𝒬² - 28𝒫ℰℛ + 8ℰ²ℛ",
            "64Φ̃₂,₇ = 21𝒫²ℛ + 13𝒬ℛ − 14𝒫𝒬² − 28𝒫ℰℛ + 8ℰ²ℛ",
        ),
    ];
    for (r, s, c, poly, statement) in tr_table {
        series(&format!("tr.{r}_{s}"), statement, n(&format!("phi_tilde_{r}_{s}")).times(c), hp(poly));
    }

    series("e8.square", "E₈ = E₄²", n("E8"), n("Q") * n("Q"));
    series("e10.QR", "E₁₀ = QR", n("E10"), n("Q") * n("R"));
    series("e14.QQR", "E₁₄ = Q²R", n("E14"), n("Q") * n("Q") * n("R"));

    series("gauss_jacobi", "F₀ = Π(1 − qⁿ)³", n("F0"), prod(&[(1, 1, 3)]));
    series("pentagonal", "T₀ = (q; q)_∞", n("T0"), n("qpoch"));
    series("fact_f1", "ε₁(q) = φ²(−q) f(−q)", n("eps1"), n("varphi").at_neg() * n("varphi").at_neg() * n("etaf"));
    series("eps1.product", "ε₁ = Π(1 − qⁿ)³(1 − q^{2n−1})²", n("eps1"), prod(&[(1, 1, 3), (1, 2, 2)]));
    series("varphi.neg_product", "φ(−q) = (q; q)_∞ (q; q²)_∞", n("varphi").at_neg(), prod(&[(1, 1, 1), (1, 2, 1)]));
    series("theta.psi_bilateral", "ψ(q) = f(q, q³)", n("psi"), n("theta_+1_+3"));
    series("theta.eps_bilateral", "ε(q) = f(q, q²)", n("eps0"), n("theta_+1_+2"));

    series("prop_p2", "ψ(q) = ε(q³) + qψ(q⁹)", n("psi"), n("eps0").at_power(3) + n("psi").at_power(9).shifted(1));
    series(
        "prop_p2.neg",
        "ψ(−q) = ε(−q³) − qψ(−q⁹)",
        n("psi").at_neg(),
        n("eps0").at_neg().at_power(3) - n("psi").at_neg().at_power(9).shifted(1),
    );
    series("lemma_lx", "f(q, q⁵)·ε(q²) = ε(q)·ψ(q³)", n("theta_+1_+5") * n("eps0").at_power(2), n("eps0") * n("psi").at_power(3));
    series("cor1.q_lemma", "4Q(q²) + Q(q) = 5ℰ²(q)", n("Q").at_power(2).times(4) + n("Q"), hp("5ℰ²"));
    series("cor1.r_lemma", "8R(q²) − R(q) = 7ℰ³(q)", n("R").at_power(2).times(8) - n("R"), hp("7ℰ³"));
    series("t12.core", "E₈(q) − 16E₈(q²) = 15ℰ⁴ − 30ℰℛ", n("E8") - n("E8").at_power(2).times(16), hp("15ℰ⁴ - 30ℰℛ"));
    series(
        "sigma.two_hat",
        "σ(n) + σ̃(n) = 2σ̂(n)",
        SeriesExpr::Lambert(Plain, 1) + SeriesExpr::Lambert(Tilde, 1),
        SeriesExpr::Lambert(Hat, 1).times(2),
    );

    let mut conv = |id: &str, statement: &str, lhs: Vec<ConvPart>, rhs: Vec<ConvPart>, domain: Domain| {
        out.push(Identity {
            id: id.into(),
            statement: statement.into(),
            body: Body::Convolution { lhs: ConvSide(lhs), rhs: ConvSide(rhs), domain },
        });
    };
    use ConvPart as C;
    conv("t9", "σ₇(n) = 120 Σ_{i+j=n} σ₃(i)σ₃(j)", vec![C::point(1, Plain, 7)], vec![C::conv(120, &[(Plain, 3), (Plain, 3)])], Domain::All);
    conv("t10", "σ̃₅(n) = −48 Σ_{i+j=n} σ̂(i)σ̃₃(j)", vec![C::point(1, Tilde, 5)], vec![C::conv(-48, &[(Hat, 1), (Tilde, 3)])], Domain::All);
    conv(
        "t11.a",
        "5σ₃(n) − σ̃₃(n) = 48 Σ_{i+j=n} σ̂(i)σ̂(j)",
        vec![C::point(5, Plain, 3), C::point(-1, Tilde, 3)],
        vec![C::conv(48, &[(Hat, 1), (Hat, 1)])],
        Domain::All,
    );
    conv(
        "t11.b",
        "7σ₅(n) + σ̃₅(n) = 1536 Σ_{i+j+k=n} σ̂(i)σ̂(j)σ̂(k)",
        vec![C::point(7, Plain, 5), C::point(1, Tilde, 5)],
        vec![C::conv(1536, &[(Hat, 1), (Hat, 1), (Hat, 1)])],
        Domain::All,
    );
    conv("cor1.a", "σ₃(n) = 12 Σ_{i+j=n} σ̂(i)σ̂(j), n odd", vec![C::point(1, Plain, 3)], vec![C::conv(12, &[(Hat, 1), (Hat, 1)])], Domain::Odd);
    conv(
        "cor1.b",
        "σ₅(n) = 192 Σ_{i+j+k=n} σ̂(i)σ̂(j)σ̂(k), n odd",
        vec![C::point(1, Plain, 5)],
        vec![C::conv(192, &[(Hat, 1), (Hat, 1), (Hat, 1)])],
        Domain::Odd,
    );
    conv(
        "t12",
        "σ₇(n) = 12(864 Σ σ̂σ̂σ̂σ̂ − Σ σ̂σ̃₅), n odd",
        vec![C::point(1, Plain, 7)],
        vec![C::conv(12 * 864, &[(Hat, 1), (Hat, 1), (Hat, 1), (Hat, 1)]), C::conv(-12, &[(Hat, 1), (Tilde, 5)])],
        Domain::Odd,
    );
    conv(
        "cheng_williams",
        "Σ_{m=1}^{n} σ(4m−3)σ(4n−(4m−3)) = 4σ₃(n) − 4σ₃(n/2)",
        vec![C::Progression { coeff: int(1), a: 1, b: 1, step: 4, offset: 3 }],
        vec![C::point(4, Plain, 3), C::Point { coeff: int(-4), kind: Plain, s: 3, num: 1, den: 2 }],
        Domain::Positive,
    );
    conv(
        "remark.tilde",
        "σ̃₅(n) = σ₅(n) − 2⁶σ₅(n/2)",
        vec![C::point(1, Tilde, 5)],
        vec![C::point(1, Plain, 5), C::Point { coeff: int(-64), kind: Plain, s: 5, num: 1, den: 2 }],
        Domain::All,
    );
    conv(
        "remark.hat",
        "σ̂₃(n) = σ₃(n) − 2σ₃(n/2)",
        vec![C::point(1, Hat, 3)],
        vec![C::point(1, Plain, 3), C::Point { coeff: int(-2), kind: Plain, s: 3, num: 1, den: 2 }],
        Domain::Positive,
    );

    for spec in numeric::specials() {
        out.push(Identity {
            id: format!("num.{}", spec.id),
            statement: spec.statement.to_string(),
            body: Body::NumericRef { special: spec.id },
        });
    }

    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}
