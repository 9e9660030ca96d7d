//! Exact polynomials with rational coefficients in the indeterminates `x`, `xi`
//! and `s`.
//!
//! `x` is the space variable, `xi` the frequency variable of symbols and `s`
//! stands for `√ℏ` in ℏ-dependent families. All arithmetic is exact; numeric
//! evaluation to `f64` is provided separately for the certificate layers.

mod numeric;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use numeric::{global_min_f64, real_roots, GlobalMin, UniPoly};
pub use parse::{parse_poly, parse_poly_at, ParseError, ParseErrorKind};

/// Indeterminates a [`Poly`] may contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Space variable.
    X,
    /// Frequency variable of symbols.
    Xi,
    /// Square root of the semiclassical parameter ℏ.
    S,
}

impl Var {
    /// All indeterminates in storage order.
    pub const ALL: [Var; 3] = [Var::X, Var::Xi, Var::S];

    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Xi => 1,
            Var::S => 2,
        }
    }

    /// Name used by the text grammar.
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Xi => "xi",
            Var::S => "s",
        }
    }

    /// Looks up an indeterminate by its grammar name.
    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "x" => Some(Var::X),
            "xi" | "ξ" => Some(Var::Xi),
            "s" => Some(Var::S),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector `[deg_x, deg_xi, deg_s]`.
pub type Monomial = [u32; 3];

/// Degree of a polynomial in one indeterminate. The zero polynomial has degree
/// [`Degree::NegInf`], which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    /// Degree of the zero polynomial.
    NegInf,
    /// Ordinary degree.
    Finite(u32),
}

impl Degree {
    /// Finite value, if any.
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// Tests `self ≤ other + shift` with `−∞ + shift = −∞`.
    pub fn le_shifted(self, other: Degree, shift: i64) -> bool {
        match (self, other) {
            (Degree::NegInf, _) => true,
            (Degree::Finite(_), Degree::NegInf) => false,
            (Degree::Finite(a), Degree::Finite(b)) => i64::from(a) <= i64::from(b) + shift,
        }
    }

    /// True for a finite even degree.
    pub fn is_even(self) -> bool {
        matches!(self, Degree::Finite(d) if d % 2 == 0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl serde::Serialize for Degree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::NegInf => s.serialize_str("-inf"),
            Degree::Finite(d) => s.serialize_u32(*d),
        }
    }
}

/// Errors raised by polynomial evaluation and conversion.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// The polynomial contains an indeterminate that was not given a value.
    #[error("indeterminate `{0}` is present but no value was supplied")]
    Arity(Var),
    /// A coefficient could not be represented as a finite double.
    #[error("coefficient does not fit in a double")]
    NotFinite,
}

/// `x ↦ c · monomial` substitution rule used by [`Poly::substitute_scale`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleRule {
    /// Rational factor `c`.
    pub coeff: BigRational,
    /// Replacement monomial.
    pub monomial: Monomial,
}

impl ScaleRule {
    /// Rule `v ↦ coeff · monomial`.
    pub fn new(coeff: BigRational, monomial: Monomial) -> Self {
        ScaleRule { coeff, monomial }
    }
}

/// Sparse polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n / d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact binomial coefficient; zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly::default()
    }

    /// The constant one.
    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    /// Constant polynomial.
    pub fn constant(c: BigRational) -> Self {
        Poly::monomial(c, [0, 0, 0])
    }

    /// Integer constant.
    pub fn int(n: i64) -> Self {
        Poly::constant(rat(n))
    }

    /// `c · x^e0 xi^e1 s^e2`.
    pub fn monomial(c: BigRational, exps: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { terms }
    }

    /// A single indeterminate.
    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Poly::monomial(BigRational::one(), e)
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly::var(Var::X)
    }

    /// The indeterminate `xi`.
    pub fn xi() -> Self {
        Poly::var(Var::Xi)
    }

    /// The indeterminate `s`.
    pub fn s() -> Self {
        Poly::var(Var::S)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no indeterminate occurs.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    /// Constant term.
    pub fn constant_term(&self) -> BigRational {
        self.coeff(&[0, 0, 0])
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, exps: &Monomial) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Iterates over `(exponents, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when the polynomial has no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if `v` occurs with positive exponent.
    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] > 0)
    }

    /// Degree in one indeterminate.
    pub fn degree_in(&self, v: Var) -> Degree {
        self.terms
            .keys()
            .map(|e| e[v.index()])
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining indeterminates.
    pub fn coeff_in(&self, v: Var, k: u32) -> Poly {
        let i = v.index();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e2 = *e;
                e2[i] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Leading coefficient with respect to `v` (zero for the zero polynomial).
    pub fn leading_coeff_in(&self, v: Var) -> Poly {
        match self.degree_in(v) {
            Degree::NegInf => Poly::zero(),
            Degree::Finite(d) => self.coeff_in(v, d),
        }
    }

    fn add_term(&mut self, e: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^e0 xi^e1 s^e2`.
    pub fn mul_monomial(&self, exps: Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| ([e[0] + exps[0], e[1] + exps[1], e[2] + exps[2]], v.clone()))
                .collect(),
        }
    }

    /// Non-negative integer power.
    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `v`.
    pub fn derive(&self, v: Var) -> Poly {
        let i = v.index();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                out.add_term(e2, c * rat(i64::from(e[i])));
            }
        }
        out
    }

    /// `k`-th partial derivative with respect to `v`.
    pub fn derive_n(&self, v: Var, k: u32) -> Poly {
        let i = v.index();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] >= k {
                let mut falling = BigInt::one();
                for t in 0..k {
                    falling *= BigInt::from(e[i] - t);
                }
                let mut e2 = *e;
                e2[i] -= k;
                out.add_term(e2, c * BigRational::from_integer(falling));
            }
        }
        out
    }

    /// Exact evaluation. Every indeterminate present in `self` must be bound.
    pub fn evaluate(&self, bindings: &[(Var, BigRational)]) -> Result<BigRational, PolyError> {
        let lookup = |v: Var| bindings.iter().find(|(w, _)| *w == v).map(|(_, c)| c);
        for v in Var::ALL {
            if self.contains(v) && lookup(v).is_none() {
                return Err(PolyError::Arity(v));
            }
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let k = e[v.index()];
                if k > 0 {
                    t *= num_traits::pow(lookup(v).cloned().unwrap_or_else(BigRational::zero), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Double-precision evaluation. Every indeterminate present must be bound.
    pub fn eval_f64(&self, bindings: &[(Var, f64)]) -> Result<f64, PolyError> {
        let lookup = |v: Var| bindings.iter().find(|(w, _)| *w == v).map(|(_, c)| *c);
        for v in Var::ALL {
            if self.contains(v) && lookup(v).is_none() {
                return Err(PolyError::Arity(v));
            }
        }
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.to_f64().ok_or(PolyError::NotFinite)?;
            for v in Var::ALL {
                let k = e[v.index()];
                if k > 0 {
                    t *= lookup(v).unwrap_or(0.0).powi(k as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replaces `v` by a rational value.
    pub fn substitute_value(&self, v: Var, value: &BigRational) -> Poly {
        let i = v.index();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[i] = 0;
            out.add_term(e2, c * num_traits::pow(value.clone(), e[i] as usize));
        }
        out
    }

    /// Replaces each indeterminate with a rule by `c · monomial`; indeterminates
    /// without a rule are left alone. `x ↦ 1·s·x` implements `b(√ℏ x)`.
    pub fn substitute_scale(&self, rules: &[(Var, ScaleRule)]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = [0u32; 3];
            for v in Var::ALL {
                let k = e[v.index()];
                match rules.iter().find(|(w, _)| *w == v) {
                    Some((_, rule)) => {
                        coeff *= num_traits::pow(rule.coeff.clone(), k as usize);
                        for (slot, m) in exps.iter_mut().zip(rule.monomial) {
                            *slot += m * k;
                        }
                    }
                    None => exps[v.index()] += k,
                }
            }
            out.add_term(exps, coeff);
        }
        out
    }

    /// Substitutes `s = value` and returns the polynomial in `x` as doubles.
    /// Fails if `xi` is present.
    pub fn to_uni_x(&self, s_value: Option<f64>) -> Result<UniPoly, PolyError> {
        if self.contains(Var::Xi) {
            return Err(PolyError::Arity(Var::Xi));
        }
        if self.contains(Var::S) && s_value.is_none() {
            return Err(PolyError::Arity(Var::S));
        }
        let deg = self.degree_in(Var::X).finite().unwrap_or(0) as usize;
        let mut coeffs = vec![0.0; deg + 1];
        let s = s_value.unwrap_or(0.0);
        for (e, c) in &self.terms {
            let v = c.to_f64().ok_or(PolyError::NotFinite)? * s.powi(e[2] as i32);
            coeffs[e[0] as usize] += v;
        }
        Ok(UniPoly::new(coeffs))
    }

    /// Sum of absolute values of the coefficients, as a double.
    pub fn l1_norm_f64(&self) -> f64 {
        self.terms.values().filter_map(|c| c.abs().to_f64()).sum()
    }
}

/// Global minimum over the real line of a polynomial in `x` alone.
///
/// Returns [`GlobalMin::UnboundedBelow`] for odd degree or a negative leading
/// coefficient.
pub fn global_min(p: &Poly) -> Result<GlobalMin, PolyError> {
    let u = p.to_uni_x(None)?;
    Ok(global_min_f64(&u))
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(e: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, k) in [(Var::S, e[2]), (Var::X, e[0]), (Var::Xi, e[1])] {
        match k {
            0 => {}
            1 => parts.push(v.name().to_string()),
            _ => parts.push(format!("{}^{}", v.name(), k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    /// Prints terms by descending total degree, for example `3*x^4 - 2/5*x^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let ta = a[0] + a[1] + a[2];
            let tb = b[0] + b[1] + b[2];
            tb.cmp(&ta)
                .then(b[0].cmp(&a[0]))
                .then(b[1].cmp(&a[1]))
                .then(b[2].cmp(&a[2]))
        });
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mono = fmt_monomial(e);
            if mono.is_empty() {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&mag), mono)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Poly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
