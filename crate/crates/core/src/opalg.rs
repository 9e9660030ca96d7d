//! Differential operators with polynomial coefficients.
//!
//! A [`RawOp`] stores `L = Σ_k a_k ∂^k`, a [`DivOp`] stores
//! `L = Σ_l (−1)^l ∂^l b_l ∂^l`. Derivatives act on `x`; coefficients may also
//! depend on `s` and are treated as constants by `∂`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::poly::{binomial, rat, Poly, Var};

/// Operator `Σ_{k=0}^{d} a_k ∂^k` with exact polynomial coefficients.
///
/// Trailing zero coefficients are removed, so [`RawOp::order`] is minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawOp {
    coeffs: Vec<Poly>,
}

/// Operator `Σ_{l=0}^{m} (−1)^l ∂^l b_l ∂^l` with exact polynomial coefficients.
///
/// Trailing zero coefficients are removed, so `b_m ≠ 0` unless `m = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivOp {
    coeffs: Vec<Poly>,
}

fn trim(mut coeffs: Vec<Poly>) -> Vec<Poly> {
    while coeffs.len() > 1 && coeffs.last().is_some_and(Poly::is_zero) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        coeffs.push(Poly::zero());
    }
    coeffs
}

impl RawOp {
    /// Operator from coefficients `a_0, a_1, …`.
    pub fn new(coeffs: Vec<Poly>) -> Self {
        RawOp { coeffs: trim(coeffs) }
    }

    /// The identity operator.
    pub fn identity() -> Self {
        RawOp::new(vec![Poly::one()])
    }

    /// Multiplication by `p`.
    pub fn multiplication(p: Poly) -> Self {
        RawOp::new(vec![p])
    }

    /// The derivative `∂`.
    pub fn derivative() -> Self {
        RawOp::new(vec![Poly::zero(), Poly::one()])
    }

    /// Coefficients `a_0..a_d`.
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient `a_k`, zero beyond the order.
    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Order `d`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True for the zero operator.
    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        let mut df = f.clone();
        for a in &self.coeffs {
            out += &(a * &df);
            df = df.derive(Var::X);
        }
        out
    }

    /// Sum of two operators.
    pub fn add(&self, other: &RawOp) -> RawOp {
        let n = self.coeffs.len().max(other.coeffs.len());
        RawOp::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    /// Multiplies every coefficient by a polynomial in `s` (or a constant).
    pub fn scale(&self, c: &Poly) -> RawOp {
        RawOp::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Maximum `x`-degree over the coefficients (0 for the zero operator).
    pub fn max_x_degree(&self) -> u32 {
        self.coeffs
            .iter()
            .filter_map(|a| a.degree_in(Var::X).finite())
            .max()
            .unwrap_or(0)
    }
}

impl DivOp {
    /// Operator from coefficients `b_0, b_1, …`.
    pub fn new(coeffs: Vec<Poly>) -> Self {
        DivOp { coeffs: trim(coeffs) }
    }

    /// Coefficients `b_0..b_m`.
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient `b_l`, zero beyond the half-order.
    pub fn coeff(&self, l: usize) -> Poly {
        self.coeffs.get(l).cloned().unwrap_or_default()
    }

    /// Half-order `m`.
    pub fn half_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True when some coefficient contains `s`.
    pub fn is_family(&self) -> bool {
        self.coeffs.iter().any(|b| b.contains(Var::S))
    }
}

/// Composition `L ∘ S`, expanded by the product rule
/// `∂^k c = Σ_i binom(k,i) c^{(i)} ∂^{k−i}`.
pub fn compose(l: &RawOp, s: &RawOp) -> RawOp {
    let d = l.order() + s.order();
    let mut out = vec![Poly::zero(); d + 1];
    for (k, a) in l.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, c) in s.coeffs.iter().enumerate() {
            let mut dc = c.clone();
            for i in 0..=k {
                if dc.is_zero() {
                    break;
                }
                let b = BigRational::from_integer(binomial(k as i64, i as i64));
                out[k - i + j] += &(a * &dc).scale(&b);
                dc = dc.derive(Var::X);
            }
        }
    }
    RawOp::new(out)
}

/// Formal adjoint `Σ_k (−1)^k ∂^k M_{a_k}` in raw form. Coefficients are real,
/// so no conjugation occurs.
pub fn adjoint(l: &RawOp) -> RawOp {
    let d = l.order();
    let mut out = vec![Poly::zero(); d + 1];
    for (k, a) in l.coeffs.iter().enumerate() {
        let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
        let mut da = a.clone();
        for i in 0..=k {
            if da.is_zero() {
                break;
            }
            let b = BigRational::from_integer(binomial(k as i64, i as i64)) * &sign;
            out[k - i] += &da.scale(&b);
            da = da.derive(Var::X);
        }
    }
    RawOp::new(out)
}

/// `n`-fold composition; `n = 0` gives the identity.
pub fn power(l: &RawOp, n: u32) -> RawOp {
    let mut acc = RawOp::identity();
    for _ in 0..n {
        acc = compose(&acc, l);
    }
    acc
}

/// True iff the formal adjoint equals the operator coefficient-wise.
pub fn is_symmetric(l: &RawOp) -> bool {
    adjoint(l) == *l
}

/// `k!` as a rational.
pub fn factorial(k: usize) -> BigRational {
    BigRational::from_integer((1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}
