//! Noncommutative polynomials in `θ`, `θ*` and their quantization through the
//! ladder operators `a_ℏ = (s/√2)(M_x + ∂)` and `a_ℏ† = (s/√2)(M_x − ∂)`,
//! with `s = √ℏ`.
//!
//! Coefficients live in the field `ℚ(√2, i)` and are kept exact, so the
//! cancellation of `i` and of odd powers of `√2` in a real symmetric result is
//! checked rather than assumed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::opalg::{compose, DivOp, RawOp};
use crate::poly::{ParseError, ParseErrorKind, Poly, Var};
use crate::structure::{divergence_from_raw, unscale_hbar, StructureError};

/// Element `a + b√2` of `ℚ(√2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    /// Rational part.
    pub a: BigRational,
    /// Coefficient of `√2`.
    pub b: BigRational,
}

impl QSqrt2 {
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl Add for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2 {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Mul for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: &QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(BigInt::from(2));
        QSqrt2 {
            a: &self.a * &o.a + two * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 {
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

/// Element `re + i·im` of `ℚ(√2, i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Coeff {
    /// Real part.
    pub re: QSqrt2,
    /// Imaginary part.
    pub im: QSqrt2,
}

impl Coeff {
    /// Rational constant.
    pub fn rational(r: BigRational) -> Self {
        Coeff {
            re: QSqrt2 {
                a: r,
                b: BigRational::zero(),
            },
            im: QSqrt2::default(),
        }
    }

    /// The constant one.
    pub fn one() -> Self {
        Coeff::rational(BigRational::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Coeff {
            re: QSqrt2::default(),
            im: QSqrt2 {
                a: BigRational::one(),
                b: BigRational::zero(),
            },
        }
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        Coeff {
            re: QSqrt2 {
                a: BigRational::zero(),
                b: BigRational::new(BigInt::from(1), BigInt::from(2)),
            },
            im: QSqrt2::default(),
        }
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Coeff {
        Coeff {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// The four rational components `(re.a, re.b, im.a, im.b)`.
    fn components(&self) -> [&BigRational; 4] {
        [&self.re.a, &self.re.b, &self.im.a, &self.im.b]
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        Coeff {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        Coeff {
            re: &(&self.re * &o.re) + &(-&(&self.im * &o.im)),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

fn fmt_q2(q: &QSqrt2) -> String {
    let r = |c: &BigRational| {
        if c.is_integer() {
            c.numer().to_string()
        } else {
            format!("{}/{}", c.numer(), c.denom())
        }
    };
    match (q.a.is_zero(), q.b.is_zero()) {
        (_, true) => r(&q.a),
        (true, false) => format!("{}*sqrt2", r(&q.b)),
        (false, false) => format!("({} + {}*sqrt2)", r(&q.a), r(&q.b)),
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&fmt_q2(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_q2(&self.im)),
            (false, false) => write!(f, "({} + {}*i)", fmt_q2(&self.re), fmt_q2(&self.im)),
        }
    }
}

/// Letters of the noncommutative alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// `θ`, quantized to the annihilation operator.
    Theta,
    /// `θ*`, quantized to the creation operator.
    ThetaStar,
}

impl Letter {
    fn swap(self) -> Letter {
        match self {
            Letter::Theta => Letter::ThetaStar,
            Letter::ThetaStar => Letter::Theta,
        }
    }
}

/// Word over `{θ, θ*}`; its length is its degree.
pub type NcWord = Vec<Letter>;

/// Noncommutative polynomial with coefficients in `ℚ(√2, i)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<NcWord, Coeff>,
}

impl NcPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        NcPoly::default()
    }

    /// Constant polynomial.
    pub fn constant(c: Coeff) -> Self {
        NcPoly::term(Vec::new(), c)
    }

    /// Single term `c · word`.
    pub fn term(word: NcWord, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        NcPoly { terms }
    }

    /// A single letter.
    pub fn letter(l: Letter) -> Self {
        NcPoly::term(vec![l], Coeff::one())
    }

    /// Terms as `(word, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&NcWord, &Coeff)> {
        self.terms.iter()
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length (0 for constants and zero).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn add_term(&mut self, w: NcWord, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// Sum.
    pub fn add(&self, o: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Coeff) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    /// Noncommutative product (word concatenation).
    pub fn mul(&self, o: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for NcPoly {
    /// Prints one signed term per nonzero rational component, for example
    /// `1/2 sqrt2 i theta theta* - theta* theta`, which parses back unchanged.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, c) in &self.terms {
            let word: Vec<&str> = w
                .iter()
                .map(|l| match l {
                    Letter::Theta => "theta",
                    Letter::ThetaStar => "theta*",
                })
                .collect();
            for (comp, sqrt2, imag) in [(&c.re.a, false, false), (&c.re.b, true, false), (&c.im.a, false, true), (&c.im.b, true, true)] {
                if comp.is_zero() {
                    continue;
                }
                let neg = comp < &BigRational::zero();
                match (first, neg) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
                first = false;
                let mag = if neg { -comp.clone() } else { comp.clone() };
                let mut parts: Vec<String> = Vec::new();
                if !mag.is_one() || (!sqrt2 && !imag && word.is_empty()) {
                    parts.push(if mag.is_integer() {
                        mag.numer().to_string()
                    } else {
                        format!("{}/{}", mag.numer(), mag.denom())
                    });
                }
                if sqrt2 {
                    parts.push("sqrt2".into());
                }
                if imag {
                    parts.push("i".into());
                }
                parts.extend(word.iter().map(|s| s.to_string()));
                f.write_str(&parts.join(" "))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The involution: reverse each word, swap `θ ↔ θ*`, conjugate coefficients.
pub fn nc_star(h: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w, c) in &h.terms {
        let w2: NcWord = w.iter().rev().map(|l| l.swap()).collect();
        out.add_term(w2, c.conj());
    }
    out
}

/// `q̂ = (θ + θ*)/√2`.
pub fn q_hat() -> NcPoly {
    NcPoly::letter(Letter::Theta)
        .add(&NcPoly::letter(Letter::ThetaStar))
        .scale(&Coeff::inv_sqrt2())
}

/// `p̂ = (θ − θ*)/(i√2) = −i (θ − θ*)/√2`.
pub fn p_hat() -> NcPoly {
    let minus_i = -&Coeff::i();
    NcPoly::letter(Letter::Theta)
        .add(&NcPoly::letter(Letter::ThetaStar).scale(&-&Coeff::one()))
        .scale(&(&Coeff::inv_sqrt2() * &minus_i))
}

/// Weyl lift of `x^a ξ^b`: the average over all orderings of `a` copies of
/// `q̂` and `b` copies of `p̂`. Equal orderings are collapsed, each distinct
/// arrangement weighted by `1/binom(a+b, b)`.
pub fn weyl_lift(a: u32, b: u32) -> NcPoly {
    let n = (a + b) as usize;
    let (q, p) = (q_hat(), p_hat());
    let mut total = NcPoly::zero();
    let mut count = 0u64;
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() != b {
            continue;
        }
        count += 1;
        let mut prod = NcPoly::constant(Coeff::one());
        for pos in 0..n {
            let f = if mask >> pos & 1 == 1 { &p } else { &q };
            prod = prod.mul(f);
        }
        total = total.add(&prod);
    }
    total.scale(&Coeff::rational(BigRational::new(BigInt::one(), BigInt::from(count))))
}

/// Errors of quantization.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantizeError {
    /// An imaginary part survived the expansion.
    #[error("quantized operator has a non-real coefficient")]
    NonReal,
    /// An odd power of √2 survived the expansion.
    #[error("quantized operator has an irrational (odd √2 power) coefficient")]
    Normalization,
    /// The input is not invariant under the involution.
    #[error("polynomial is not symmetric under the star involution")]
    NotSymmetric,
    /// Conversion to divergence form failed.
    #[error(transparent)]
    Structure(#[from] StructureError),
}

fn letter_op(l: Letter) -> RawOp {
    let sign = match l {
        Letter::Theta => 1,
        Letter::ThetaStar => -1,
    };
    RawOp::new(vec![Poly::x(), Poly::int(sign)])
}

/// Substitutes `θ → a_ℏ`, `θ* → a_ℏ†` and returns the four rational
/// components `[P, Q, R, S]` of the result `P + √2 Q + i (R + √2 S)`, each a raw
/// operator in `(x, s)`.
pub fn quantize_components(h: &NcPoly) -> [RawOp; 4] {
    let mut cache: HashMap<NcWord, RawOp> = HashMap::new();
    let mut parts = [RawOp::new(vec![]), RawOp::new(vec![]), RawOp::new(vec![]), RawOp::new(vec![])];
    for (w, c) in &h.terms {
        let op = word_op(w, &mut cache);
        let mut scalar = c.clone();
        for _ in 0..w.len() {
            scalar = &scalar * &Coeff::inv_sqrt2();
        }
        let s_pow = Poly::monomial(BigRational::one(), [0, 0, w.len() as u32]);
        for (part, comp) in parts.iter_mut().zip(scalar.components()) {
            if !comp.is_zero() {
                *part = part.add(&op.scale(&s_pow.scale(comp)));
            }
        }
    }
    parts
}

/// Substitutes `θ → a_ℏ`, `θ* → a_ℏ†` and expands to a raw operator in `(x, s)`.
/// The result must have rational coefficients.
pub fn quantize(h: &NcPoly) -> Result<RawOp, QuantizeError> {
    let parts = quantize_components(h);
    if !parts[2].is_zero() || !parts[3].is_zero() {
        return Err(QuantizeError::NonReal);
    }
    if !parts[1].is_zero() {
        return Err(QuantizeError::Normalization);
    }
    let [real, ..] = parts;
    Ok(real)
}

fn word_op(w: &[Letter], cache: &mut HashMap<NcWord, RawOp>) -> RawOp {
    if let Some(op) = cache.get(w) {
        return op.clone();
    }
    let op = match w.split_first() {
        None => RawOp::identity(),
        Some((first, rest)) => compose(&letter_op(*first), &word_op(rest, cache)),
    };
    cache.insert(w.to_vec(), op.clone());
    op
}

/// True when every coefficient has the form `a_l = s^l G_l(s, s x)` with `G_l`
/// polynomial, i.e. each monomial `x^i s^j` of `a_l` has `j ≥ l + i`.
pub fn has_semiclassical_form(op: &RawOp) -> bool {
    op.coeffs()
        .iter()
        .enumerate()
        .all(|(l, a)| a.terms().all(|(e, _)| e[2] >= l as u32 + e[0]))
}

/// Quantizes a star-symmetric polynomial and returns the family `f_l(x, s)`
/// with divergence coefficients `b_l = s^{2l} f_l(s x, s)`.
pub fn quantize_divergence(h: &NcPoly) -> Result<DivOp, QuantizeError> {
    if nc_star(h) != *h {
        return Err(QuantizeError::NotSymmetric);
    }
    let raw = quantize(h)?;
    let d = divergence_from_raw(&raw)?;
    Ok(unscale_hbar(&d)?)
}

fn perr(column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError {
        line: 1,
        column,
        kind,
    }
}

/// Parses a classical monomial such as `x^2 xi^2`, `x*xi` or `1` into the
/// exponent pair `(a, b)` of `x^a ξ^b`.
pub fn parse_classical_monomial(src: &str) -> Result<(u32, u32), ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let (mut a, mut b) = (0u32, 0u32);
    let mut i = 0;
    let mut seen = false;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' {
            i += 1;
            continue;
        }
        let start = i;
        if c == '1' {
            i += 1;
            seen = true;
            continue;
        }
        if !c.is_alphabetic() {
            return Err(perr(start + 1, ParseErrorKind::UnexpectedChar(c)));
        }
        while i < chars.len() && chars[i].is_alphanumeric() {
            i += 1;
        }
        let name: String = chars[start..i].iter().collect();
        let var = match Var::from_name(&name) {
            Some(v @ (Var::X | Var::Xi)) => v,
            _ => return Err(perr(start + 1, ParseErrorKind::UnknownIndeterminate(name))),
        };
        let mut exp = 1u32;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let ds = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if ds == i {
                return Err(perr(
                    ds + 1,
                    ParseErrorKind::UnexpectedToken {
                        found: chars.get(ds).map_or(String::new(), |c| c.to_string()),
                        expected: "a non-negative integer exponent",
                    },
                ));
            }
            let text: String = chars[ds..i].iter().collect();
            exp = text
                .parse()
                .ok()
                .filter(|e| *e <= 64)
                .ok_or_else(|| perr(ds + 1, ParseErrorKind::ExponentTooLarge))?;
        }
        match var {
            Var::X => a += exp,
            _ => b += exp,
        }
        seen = true;
    }
    if !seen {
        return Err(perr(1, ParseErrorKind::UnexpectedEnd { expected: "a monomial" }));
    }
    Ok((a, b))
}

#[derive(Debug, Clone, PartialEq)]
enum NcTok {
    Num(BigRational),
    I,
    Sqrt2,
    Letter(Letter),
    Plus,
    Minus,
    Star,
    Slash,
}

fn lex_nc(src: &str) -> Result<Vec<(NcTok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push((NcTok::Plus, col));
                i += 1;
            }
            '-' | '−' => {
                out.push((NcTok::Minus, col));
                i += 1;
            }
            '*' => {
                out.push((NcTok::Star, col));
                i += 1;
            }
            '/' => {
                out.push((NcTok::Slash, col));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[s..i].iter().collect();
                out.push((NcTok::Num(BigRational::from_integer(text.parse::<BigInt>().unwrap())), col));
            }
            c if c.is_alphabetic() => {
                let s = i;
                while i < chars.len() && chars[i].is_alphanumeric() {
                    i += 1;
                }
                let name: String = chars[s..i].iter().collect();
                let tok = match name.as_str() {
                    "i" => NcTok::I,
                    "sqrt2" => NcTok::Sqrt2,
                    "theta" | "θ" => {
                        if i < chars.len() && chars[i] == '*' {
                            i += 1;
                            NcTok::Letter(Letter::ThetaStar)
                        } else {
                            NcTok::Letter(Letter::Theta)
                        }
                    }
                    _ => return Err(perr(col, ParseErrorKind::UnknownIndeterminate(name))),
                };
                out.push((tok, col));
            }
            other => return Err(perr(col, ParseErrorKind::UnexpectedChar(other))),
        }
    }
    Ok(out)
}

/// Parses a noncommutative polynomial such as `theta theta* - theta* theta` or
/// `1/2 theta*theta + i theta`. Coefficient factors are integers, `a/b`, `i`
/// and `sqrt2`. A `*` written directly after `theta` marks the
/// starred letter; otherwise factors are juxtaposed or joined by `*`.
pub fn parse_nc_poly(src: &str) -> Result<NcPoly, ParseError> {
    let toks = lex_nc(src)?;
    let end = src.chars().count() + 1;
    let mut pos = 0;
    let mut total = NcPoly::zero();
    let mut first = true;
    while pos < toks.len() || first {
        let mut sign = Coeff::one();
        match toks.get(pos) {
            Some((NcTok::Plus, _)) => pos += 1,
            Some((NcTok::Minus, _)) => {
                sign = -&sign;
                pos += 1;
            }
            Some((t, col)) if !first => {
                return Err(perr(
                    *col,
                    ParseErrorKind::UnexpectedToken {
                        found: format!("{t:?}"),
                        expected: "`+` or `-`",
                    },
                ))
            }
            _ => {}
        }
        first = false;
        let mut term = NcPoly::constant(sign);
        let mut factors = 0;
        loop {
            match toks.get(pos).cloned() {
                Some((NcTok::Num(n), _)) => {
                    pos += 1;
                    let mut v = n;
                    if let Some((NcTok::Slash, _)) = toks.get(pos) {
                        pos += 1;
                        match toks.get(pos).cloned() {
                            Some((NcTok::Num(d), col)) => {
                                if d.is_zero() {
                                    return Err(perr(col, ParseErrorKind::DivisionByZero));
                                }
                                v /= d;
                                pos += 1;
                            }
                            Some((_, col)) => {
                                return Err(perr(
                                    col,
                                    ParseErrorKind::UnexpectedToken {
                                        found: "token".into(),
                                        expected: "an integer denominator",
                                    },
                                ))
                            }
                            None => {
                                return Err(perr(end, ParseErrorKind::UnexpectedEnd { expected: "a denominator" }))
                            }
                        }
                    }
                    term = term.scale(&Coeff::rational(v));
                }
                Some((NcTok::I, _)) => {
                    pos += 1;
                    term = term.scale(&Coeff::i());
                }
                Some((NcTok::Sqrt2, _)) => {
                    pos += 1;
                    let two = Coeff::rational(BigRational::from_integer(BigInt::from(2)));
                    term = term.scale(&(&two * &Coeff::inv_sqrt2()));
                }
                Some((NcTok::Letter(l), _)) => {
                    pos += 1;
                    term = term.mul(&NcPoly::letter(l));
                }
                _ => break,
            }
            factors += 1;
            if let Some((NcTok::Star, _)) = toks.get(pos) {
                pos += 1;
                if !matches!(toks.get(pos), Some((NcTok::Num(_) | NcTok::I | NcTok::Sqrt2 | NcTok::Letter(_), _))) {
                    let col = toks.get(pos).map_or(end, |t| t.1);
                    return Err(perr(col, ParseErrorKind::UnexpectedEnd { expected: "a factor" }));
                }
            }
        }
        if factors == 0 {
            let col = toks.get(pos).map_or(end, |t| t.1);
            return Err(perr(col, ParseErrorKind::UnexpectedEnd { expected: "a term" }));
        }
        total = total.add(&term);
    }
    Ok(total)
}

impl std::str::FromStr for NcPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_nc_poly(s)
    }
}

/// Coefficient of a word when it is a real rational number.
pub fn rational_coeff(h: &NcPoly, w: &[Letter]) -> Option<BigRational> {
    let c = h.terms.get(w)?;
    if c.im.is_zero() && c.re.b.is_zero() {
        Some(c.re.a.clone())
    } else {
        None
    }
}
