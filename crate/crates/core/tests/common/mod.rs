#![allow(dead_code)]

use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symdiv::opalg::{DivOp, RawOp};
use symdiv::poly::Poly;

pub fn p(s: &str) -> Poly {
    s.parse().unwrap()
}

pub fn div(cs: &[&str]) -> DivOp {
    DivOp::new(cs.iter().map(|c| p(c)).collect())
}

pub fn raw(cs: &[&str]) -> RawOp {
    RawOp::new(cs.iter().map(|c| p(c)).collect())
}

pub fn from_terms(terms: &[(i64, [u32; 3])]) -> Poly {
    terms.iter().fold(Poly::zero(), |acc, (c, e)| &acc + &Poly::monomial(BigRational::from_integer((*c).into()), *e))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Polynomial in `x` of degree at most `deg` with integer coefficients in `[-3, 3]`.
pub fn random_x_poly(rng: &mut ChaCha8Rng, deg: u32) -> Poly {
    let terms: Vec<(i64, [u32; 3])> = (0..=deg).map(|j| (rng.random_range(-3..=3), [j, 0, 0])).collect();
    from_terms(&terms)
}

/// Divergence operator with half-order in `1..=m_max` and coefficient degree at most `deg`.
pub fn random_div(rng: &mut ChaCha8Rng, m_max: usize, deg: u32) -> DivOp {
    let m = rng.random_range(1..=m_max);
    let mut coeffs: Vec<Poly> = (0..=m).map(|_| random_x_poly(rng, deg)).collect();
    if coeffs[m].is_zero() {
        coeffs[m] = Poly::one();
    }
    DivOp::new(coeffs)
}

/// Family `b_l(x, s)` with even degrees, positive constant leading coefficients
/// and lower coefficients polynomial in `s`. Degrees follow
/// `deg b_l ≤ deg b_{l−1} + step` with `step` 0 (strict chain) or 2 (relaxed).
pub fn random_family(rng: &mut ChaCha8Rng, step: u32) -> DivOp {
    let m = rng.random_range(1..=2usize);
    let mut degs = vec![2 * rng.random_range(0..=2u32)];
    for _ in 1..=m {
        let prev = *degs.last().unwrap();
        let hi = (prev + step) / 2;
        degs.push(2 * rng.random_range(0..=hi));
    }
    let coeffs = degs
        .iter()
        .map(|&d| {
            let mut terms = vec![(rng.random_range(1..=3), [d, 0, 0])];
            for j in 0..d {
                for k in 0..=2u32 {
                    terms.push((rng.random_range(-2..=2), [j, 0, k]));
                }
            }
            from_terms(&terms)
        })
        .collect();
    DivOp::new(coeffs)
}

/// Strategy for polynomials in the given variables with small integer coefficients.
pub fn arb_poly(max_x: u32, max_xi: u32, max_s: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-5i64..=5, 0..=max_x, 0..=max_xi, 0..=max_s), 0..=max_terms)
        .prop_map(|ts| ts.into_iter().fold(Poly::zero(), |acc, (c, a, b, s)| &acc + &from_terms(&[(c, [a, b, s])])))
}

/// Strategy for polynomials in `x` alone.
pub fn arb_x_poly(max_x: u32) -> impl Strategy<Value = Poly> {
    arb_poly(max_x, 0, 0, 4)
}

/// Strategy for divergence operators of half-order at most `m_max`.
pub fn arb_div(m_max: usize, deg: u32) -> impl Strategy<Value = DivOp> {
    prop::collection::vec(arb_x_poly(deg), 1..=m_max + 1).prop_map(DivOp::new)
}

/// Strategy for raw operators of order at most `order`.
pub fn arb_raw(order: usize, deg: u32) -> impl Strategy<Value = RawOp> {
    prop::collection::vec(arb_x_poly(deg), 1..=order + 1).prop_map(RawOp::new)
}
