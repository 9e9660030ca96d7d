//! Raw and divergence forms, the combinatorial constants `C_n` and `K_m`, the
//! coefficients of `L^n`, and ℏ-scaling of operator families.
//!
//! # Conventions
//! A divergence operator `Σ (−1)^l ∂^l b_l ∂^l` has raw coefficients
//! `a_k = Σ_l binom(l, k−l) (−1)^l ∂^{2l−k} b_l`. Writing `a = (a_0, a_2, …)` and
//! `β = ((−1)^r b_r)_r`, this reads `a = (I + U) β` with the nilpotent matrix
//! `U_{r,k} = 1_{r<k≤2r} binom(k, 2r−k) ∂^{2(k−r)}`, so `β = (I + U)^{−1} a`.
//! The scalar parts of `(I + U)^{−1} − I` form the table `K_m`.
//!
//! For the `n`-th power, `𝓑_ℓ = Σ_{|j|=ℓ} b_{j_1}⋯b_{j_n}` is the frozen
//! coefficient part, `T_k` collects every term of the product expansion that
//! carries at least one derivative of a coefficient, `A_k` are the raw
//! coefficients of `L^n` and `B_ℓ = 𝓑_ℓ + R_ℓ` its divergence coefficients.
//!
//! A family `b_l(x, s)` is scaled to `L_ℏ = Σ (−ℏ)^l ∂^l b_l(√ℏ x, √ℏ) ∂^l`
//! with `ℏ = s²`; in divergence form its coefficients are
//! `s^{2l} b_l(s x, s)`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::opalg::{is_symmetric, DivOp, RawOp};
use crate::poly::{binomial, rat, Poly, ScaleRule, Var};

/// Errors of the structure transforms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    /// A symmetric operator with real coefficients has even order.
    #[error("operator has odd order {0}; a symmetric operator has even order")]
    OddOrder(usize),
    /// The operator is not equal to its formal adjoint.
    #[error("operator is not symmetric")]
    NotSymmetric,
    /// Undoing the ℏ-scaling left a negative power of `s`.
    #[error("coefficient {index} is not of the form s^(2l) f(s x, s) with f polynomial")]
    NotScalable {
        /// Coefficient index `l`.
        index: usize,
    },
    /// Two independent computations disagreed.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// Tables `C_n(r, s)` and `K_m(r, s)` for one `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    /// Half-order `m`.
    pub m: usize,
    /// `c[n − 1][r][s] = C_n(r, s)` for `1 ≤ n ≤ m − 1` and `0 ≤ r, s ≤ m`.
    pub c: Vec<Vec<Vec<BigRational>>>,
    /// `k[r][s] = K_m(r, s)` for `0 ≤ r, s ≤ m`.
    pub k: Vec<Vec<BigRational>>,
}

/// Scalar part of `U_{r,k}`: `1_{r<k≤2r} binom(k, 2r−k)`.
pub fn u_entry(r: usize, k: usize) -> BigRational {
    if r < k && k <= 2 * r {
        BigRational::from_integer(binomial(k as i64, 2 * r as i64 - k as i64))
    } else {
        BigRational::zero()
    }
}

/// `C_n(r, s)` as the sum over chains `r < k_1 < … < k_{n−1} < s` of
/// `binom(k_1, 2r−k_1) binom(k_2, 2k_1−k_2) ⋯ binom(s, 2k_{n−1}−s)`.
fn chain_sum(r: usize, s: usize, n: usize) -> BigRational {
    if n == 1 {
        return u_entry(r, s);
    }
    let mut acc = BigRational::zero();
    for k in r + 1..s {
        let head = u_entry(r, k);
        if !head.is_zero() {
            acc += head * chain_sum(k, s, n - 1);
        }
    }
    acc
}

/// Computes `C_n` by chain sums and `K_m(r, s) = Σ_{n=1}^{m−1} (−1)^n C_n(r, s)`.
pub fn structure_constants(m: usize) -> StructureConstants {
    let size = m + 1;
    let c: Vec<Vec<Vec<BigRational>>> = (1..m)
        .map(|n| {
            (0..size)
                .map(|r| (0..size).map(|s| chain_sum(r, s, n)).collect())
                .collect()
        })
        .collect();
    let mut k = vec![vec![BigRational::zero(); size]; size];
    for (idx, table) in c.iter().enumerate() {
        let sign = if (idx + 1) % 2 == 0 { rat(1) } else { rat(-1) };
        for r in 0..size {
            for s in 0..size {
                k[r][s] += &sign * &table[r][s];
            }
        }
    }
    StructureConstants { m, c, k }
}

/// `K_m` obtained independently by back substitution in `(I + U) X = I`.
pub fn k_table_by_inversion(m: usize) -> Vec<Vec<BigRational>> {
    let size = m + 1;
    let mut x = vec![vec![BigRational::zero(); size]; size];
    for s in 0..size {
        x[s][s] = BigRational::one();
        for r in (0..s).rev() {
            let mut acc = BigRational::zero();
            for k in r + 1..=s {
                acc += u_entry(r, k) * &x[k][s];
            }
            x[r][s] = -acc;
        }
    }
    for (i, row) in x.iter_mut().enumerate() {
        row[i] = BigRational::zero();
    }
    x
}

/// Raw coefficients `a_k = Σ_l binom(l, k−l) (−1)^l ∂^{2l−k} b_l`.
pub fn raw_from_divergence(d: &DivOp) -> RawOp {
    let m = d.half_order();
    let mut a = vec![Poly::zero(); 2 * m + 1];
    for (l, b) in d.coeffs().iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let sign = if l % 2 == 0 { rat(1) } else { rat(-1) };
        for (k, slot) in a.iter_mut().enumerate().take(2 * l + 1).skip(l) {
            let c = BigRational::from_integer(binomial(l as i64, (k - l) as i64)) * &sign;
            *slot += &b.derive_n(Var::X, (2 * l - k) as u32).scale(&c);
        }
    }
    RawOp::new(a)
}

/// Solves `(−1)^r b_r = a_{2r} + Σ_{r<s≤m} K_m(r,s) ∂^{2(s−r)} a_{2s}` given raw
/// coefficients `a_0..a_{2m}` (odd entries ignored).
fn divergence_from_even_coeffs(a: &[Poly], m: usize) -> Vec<Poly> {
    let k = structure_constants(m).k;
    let get = |i: usize| a.get(i).cloned().unwrap_or_default();
    (0..=m)
        .map(|r| {
            let mut v = get(2 * r);
            for (s, kv) in k[r].iter().enumerate().skip(r + 1) {
                if !kv.is_zero() {
                    v += &get(2 * s).derive_n(Var::X, (2 * (s - r)) as u32).scale(kv);
                }
            }
            if r % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// Divergence form of a symmetric raw operator.
pub fn divergence_from_raw(l: &RawOp) -> Result<DivOp, StructureError> {
    let d = l.order();
    if d % 2 == 1 {
        return Err(StructureError::OddOrder(d));
    }
    if !is_symmetric(l) {
        return Err(StructureError::NotSymmetric);
    }
    Ok(DivOp::new(divergence_from_even_coeffs(l.coeffs(), d / 2)))
}

/// Explicit coefficients of `L^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerDecomposition {
    /// Power `n`.
    pub n: u32,
    /// Half-order `m` of the base operator.
    pub m: usize,
    /// Raw coefficients `A_0..A_{2mn}`.
    pub a: Vec<Poly>,
    /// Frozen coefficients `𝓑_0..𝓑_{mn}`.
    pub cal_b: Vec<Poly>,
    /// Derivative terms `T_0..T_{2mn}`.
    pub t: Vec<Poly>,
    /// Divergence coefficients `B_0..B_{mn}`; empty until computed.
    pub b: Vec<Poly>,
    /// Remainders `R_ℓ = B_ℓ − 𝓑_ℓ`; empty until computed.
    pub r: Vec<Poly>,
}

/// `𝓑_ℓ = Σ_{|j|=ℓ} b_{j_1}⋯b_{j_n}` for `ℓ = 0..mn`.
pub fn frozen_coeffs(d: &DivOp, n: u32) -> Vec<Poly> {
    let mut acc = vec![Poly::one()];
    for _ in 0..n {
        let mut next = vec![Poly::zero(); acc.len() + d.half_order()];
        for (i, p) in acc.iter().enumerate() {
            for (j, b) in d.coeffs().iter().enumerate() {
                next[i + j] += &(p * b);
            }
        }
        acc = next;
    }
    acc
}

/// `T_k` for `k = 0..2mn`: the sum of
/// `(−1)^{|q|} Π binom(q_i, l_i) binom(q_i, j_i)` times the word
/// `(∂^{l_n} M_{b_{q_n}} ∂^{j_n}) ⋯ (∂^{l_1} M_{b_{q_1}} ∂^{j_1})` applied to `1`,
/// over `q ∈ {0..m}^n`, `l_i, j_i ≤ q_i`, `j_1 = 0` and
/// `2|q| − k = |l| + |j| > 0`.
///
/// Factors are applied from the right. Words are grouped after each factor by
/// the partial value of `2|q| − |l| − |j|` and by whether `|l| + |j| > 0`; the
/// rest of the computation is linear in the running polynomial, so each group
/// is carried as one signed, weighted sum.
pub fn derivative_terms(d: &DivOp, n: u32) -> Vec<Poly> {
    let m = d.half_order();
    let mut states: BTreeMap<(usize, bool), Poly> = BTreeMap::new();
    states.insert((0, false), Poly::one());
    for i in 0..n as usize {
        let mut next: BTreeMap<(usize, bool), Poly> = BTreeMap::new();
        for (&(k, moved), f) in &states {
            for (q, bq) in d.coeffs().iter().enumerate() {
                if bq.is_zero() {
                    continue;
                }
                let sign = if q % 2 == 0 { rat(1) } else { rat(-1) };
                let j_max = if i == 0 { 0 } else { q };
                for j in 0..=j_max {
                    let fj = f.derive_n(Var::X, j as u32);
                    if fj.is_zero() {
                        continue;
                    }
                    let g = bq * &fj;
                    let cj = BigRational::from_integer(binomial(q as i64, j as i64)) * &sign;
                    for l in 0..=q {
                        let gl = g.derive_n(Var::X, l as u32);
                        if gl.is_zero() {
                            continue;
                        }
                        let c = &cj * BigRational::from_integer(binomial(q as i64, l as i64));
                        let key = (k + 2 * q - l - j, moved || l + j > 0);
                        *next.entry(key).or_default() += &gl.scale(&c);
                    }
                }
            }
        }
        states = next;
    }
    let mut t = vec![Poly::zero(); 2 * m * n as usize + 1];
    for ((k, moved), f) in states {
        if moved {
            t[k] += &f;
        }
    }
    t
}

/// Raw coefficients of `L^n` assembled as
/// `A_k = [k even] (−1)^{k/2} 𝓑_{k/2} + T_k`.
pub fn power_raw_coeffs(d: &DivOp, n: u32) -> PowerDecomposition {
    let m = d.half_order();
    let cal_b = frozen_coeffs(d, n);
    let t = derivative_terms(d, n);
    let a = t
        .iter()
        .enumerate()
        .map(|(k, tk)| {
            if k % 2 == 0 {
                let fb = &cal_b[k / 2];
                if (k / 2) % 2 == 0 {
                    fb + tk
                } else {
                    tk - fb
                }
            } else {
                tk.clone()
            }
        })
        .collect();
    PowerDecomposition {
        n,
        m,
        a,
        cal_b,
        t,
        b: Vec::new(),
        r: Vec::new(),
    }
}

/// Divergence coefficients of `L^n` via
/// `(−1)^ℓ B_ℓ = A_{2ℓ} + Σ_{ℓ<s≤mn} K_{mn}(ℓ,s) ∂^{2(s−ℓ)} A_{2s}` and
/// `R_ℓ = B_ℓ − 𝓑_ℓ`.
pub fn power_div_coeffs(d: &DivOp, n: u32) -> PowerDecomposition {
    let mut p = power_raw_coeffs(d, n);
    let mn = p.cal_b.len() - 1;
    p.b = divergence_from_even_coeffs(&p.a, mn);
    p.r = p.b.iter().zip(&p.cal_b).map(|(b, fb)| b - fb).collect();
    p
}

/// `b_l ↦ s^{2l} b_l(s x, s)`.
pub fn scale_hbar(d: &DivOp) -> DivOp {
    let rule = [(Var::X, ScaleRule::new(BigRational::one(), [1, 0, 1]))];
    DivOp::new(
        d.coeffs()
            .iter()
            .enumerate()
            .map(|(l, b)| b.substitute_scale(&rule).mul_monomial([0, 0, 2 * l as u32]))
            .collect(),
    )
}

/// Inverse of the `l`-th scaling: returns `f` with `p = s^{2l} f(s x, s)`.
pub fn unscale_coeff(p: &Poly, l: usize) -> Option<Poly> {
    let mut out = Poly::zero();
    for (e, c) in p.terms() {
        let need = 2 * l as u32 + e[0];
        if e[2] < need {
            return None;
        }
        out += &Poly::monomial(c.clone(), [e[0], e[1], e[2] - need]);
    }
    Some(out)
}

/// Inverse of [`scale_hbar`].
pub fn unscale_hbar(d: &DivOp) -> Result<DivOp, StructureError> {
    d.coeffs()
        .iter()
        .enumerate()
        .map(|(l, b)| unscale_coeff(b, l).ok_or(StructureError::NotScalable { index: l }))
        .collect::<Result<Vec<_>, _>>()
        .map(DivOp::new)
}

/// Power of a scaled family. `b`, `cal_b` and `r` hold the unscaled-argument
/// polynomials `B_{ℓ,ℏ}`, `𝓑_{ℓ,ℏ}`, `R_{ℓ,ℏ}` in `(x, s)`, so that
/// `L_ℏ^n = Σ (−ℏ)^ℓ ∂^ℓ B_{ℓ,ℏ}(√ℏ ·) ∂^ℓ`. `a` and `t` are the raw
/// coefficients and derivative terms of the scaled operator `L_ℏ^n` itself.
pub fn scaled_power_div(d: &DivOp, n: u32) -> Result<PowerDecomposition, StructureError> {
    let scaled = power_div_coeffs(&scale_hbar(d), n);
    let b = scaled
        .b
        .iter()
        .enumerate()
        .map(|(l, p)| unscale_coeff(p, l).ok_or(StructureError::NotScalable { index: l }))
        .collect::<Result<Vec<_>, _>>()?;
    let cal_b = frozen_coeffs(d, n);
    for (l, (scaled_fb, fb)) in scaled.cal_b.iter().zip(&cal_b).enumerate() {
        if unscale_coeff(scaled_fb, l).as_ref() != Some(fb) {
            return Err(StructureError::Internal(format!(
                "frozen coefficient {l} does not match the product of scaled coefficients"
            )));
        }
    }
    let r = b.iter().zip(&cal_b).map(|(b, fb)| b - fb).collect();
    Ok(PowerDecomposition {
        n,
        m: d.half_order(),
        a: scaled.a,
        cal_b,
        t: scaled.t,
        b,
        r,
    })
}

/// Top-order part `(−1)^m ∂^m b_m ∂^m` and the remaining lower-order part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitTop {
    /// Top-order operator.
    pub top: DivOp,
    /// Lower-order operator; the zero operator when `m = 0`.
    pub rest: DivOp,
}

/// Splits a divergence operator into top and lower order parts.
pub fn split_top(d: &DivOp) -> SplitTop {
    let m = d.half_order();
    if m == 0 {
        return SplitTop {
            top: d.clone(),
            rest: DivOp::new(vec![]),
        };
    }
    let mut top = vec![Poly::zero(); m + 1];
    top[m] = d.coeff(m);
    SplitTop {
        top: DivOp::new(top),
        rest: DivOp::new(d.coeffs()[..m].to_vec()),
    }
}

/// Coefficient-wise sum of divergence operators.
pub fn div_add(a: &DivOp, b: &DivOp) -> DivOp {
    let n = a.half_order().max(b.half_order()) + 1;
    DivOp::new((0..n).map(|l| &a.coeff(l) + &b.coeff(l)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::power;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn div(cs: &[&str]) -> DivOp {
        DivOp::new(cs.iter().map(|c| p(c)).collect())
    }

    fn raw(cs: &[&str]) -> RawOp {
        RawOp::new(cs.iter().map(|c| p(c)).collect())
    }

    #[test]
    fn raw_from_divergence_examples() {
        assert_eq!(raw_from_divergence(&div(&["x^4", "x^2"])), raw(&["x^4", "-2*x", "-x^2"]));
        assert_eq!(raw_from_divergence(&div(&["7/3"])), raw(&["7/3"]));
        assert_eq!(raw_from_divergence(&div(&["0", "0", "x^2"])), raw(&["0", "0", "2", "4*x", "x^2"]));
    }

    #[test]
    fn divergence_from_raw_examples() {
        assert_eq!(divergence_from_raw(&raw(&["x^4", "-2*x", "-x^2"])).unwrap(), div(&["x^4", "x^2"]));
        assert_eq!(divergence_from_raw(&raw(&["0", "0", "2", "4*x", "x^2"])).unwrap(), div(&["0", "0", "x^2"]));
        assert_eq!(divergence_from_raw(&raw(&["7"])).unwrap(), div(&["7"]));
        assert_eq!(divergence_from_raw(&raw(&["0", "1"])), Err(StructureError::OddOrder(1)));
        assert_eq!(divergence_from_raw(&raw(&["0", "x", "1"])), Err(StructureError::NotSymmetric));
    }

    #[test]
    fn constants_small_m() {
        let c2 = structure_constants(2);
        assert_eq!(c2.k[1][2], rat(-1));
        assert_eq!(c2.c[0][1][2], rat(1));
        let c1 = structure_constants(1);
        assert!(c1.c.is_empty());
        assert!(c1.k.iter().flatten().all(Zero::is_zero));
        for m in 0..8 {
            let sc = structure_constants(m);
            assert_eq!(sc.k, k_table_by_inversion(m), "m = {m}");
            for s in 0..=m {
                assert!(sc.k[0][s].is_zero());
                assert!(sc.k[m][s].is_zero());
                for table in &sc.c {
                    assert!(table[0][s].is_zero());
                    assert!(table[m][s].is_zero());
                }
            }
            for r in 0..=m {
                for s in 0..=r {
                    assert!(sc.k[r][s].is_zero());
                }
            }
        }
    }

    #[test]
    fn square_of_quartic_example() {
        let d = div(&["x^4", "x^2"]);
        let pd = power_div_coeffs(&d, 2);
        assert_eq!(pd.cal_b, vec![p("x^8"), p("2*x^6"), p("x^4")]);
        assert_eq!(pd.b, vec![p("x^8 - 20*x^4"), p("2*x^6 - 2*x^2"), p("x^4")]);
        assert_eq!(pd.r, vec![p("-20*x^4"), p("-2*x^2"), Poly::zero()]);
        let composed = power(&raw_from_divergence(&d), 2);
        assert_eq!(RawOp::new(pd.a.clone()), composed);
    }

    #[test]
    fn constant_coefficients_have_no_derivative_terms() {
        let pd = power_raw_coeffs(&div(&["2", "3"]), 3);
        assert!(pd.t.iter().all(Poly::is_zero));
    }

    #[test]
    fn scale_examples() {
        let number = div(&["(x^2 - s^2)/2", "1/2"]);
        assert_eq!(scale_hbar(&number), div(&["(s^2*x^2 - s^2)/2", "s^2/2"]));
        assert_eq!(scale_hbar(&div(&["x^2"])), div(&["s^2*x^2"]));
        let back = unscale_hbar(&scale_hbar(&number)).unwrap();
        assert_eq!(back, number);
        assert_eq!(unscale_hbar(&div(&["x"])), Err(StructureError::NotScalable { index: 0 }));
    }

    #[test]
    fn scaled_power_examples() {
        let sp = scaled_power_div(&div(&["x^4", "x^2"]), 2).unwrap();
        assert_eq!(sp.r[1], p("-2*s^4*x^2"));
        let number = scaled_power_div(&div(&["(x^2 - s^2)/2", "1/2"]), 2).unwrap();
        assert!(number.r[1].is_zero());
        assert_eq!(number.r[0], p("-s^4/2"));
    }

    #[test]
    fn split_examples() {
        let st = split_top(&div(&["x^4", "x^2"]));
        assert_eq!(st.top, div(&["0", "x^2"]));
        assert_eq!(st.rest, div(&["x^4"]));
        let st0 = split_top(&div(&["5"]));
        assert_eq!(st0.top, div(&["5"]));
        assert!(st0.rest.coeff(0).is_zero());
    }
}
