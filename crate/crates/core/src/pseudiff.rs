//! Symbols of polynomial-coefficient operators and the remainder symbol of the
//! parametrix `Γ = 1/(σ + iμ)`.
//!
//! For `𝕃 = Σ_k A_k ∂^k` with symbol `σ = Σ_k A_k (iξ)^k`, the composition
//! `(𝕃 + iμ) Op(Γ)` equals `I + Op(ρ_μ)` with
//! `ρ_μ = Σ_{k≥1} Σ_{j=1}^{k} binom(k,j) A_k (iξ)^{k−j} ∂_x^j Γ`.
//! The `x`-derivatives of `Γ` follow from `Σ_i binom(j,i) ∂^i σ ∂^{j−i} Γ = 0`
//! for `j ≥ 1`. A small `L²` norm of `ρ_μ` gives `‖R_μ‖ < 1`, the range
//! condition behind essential self-adjointness; the certificate here is
//! numerical evidence for that hypothesis only.

use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::opalg::{DivOp, RawOp};
use crate::poly::{Poly, PolyError, UniPoly, Var};
use crate::structure::{power_raw_coeffs, PowerDecomposition};

/// Errors of the symbol layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PseudiffError {
    /// Coefficients contain `s` but no ℏ was given.
    #[error("coefficients depend on s; an hbar value is required")]
    UnresolvedS,
    /// `Re σ ≤ 0` at an evaluation point.
    #[error("Re sigma = {value} <= 0 at (x, xi) = ({x}, {xi}); increase c")]
    NotPositive {
        /// Position.
        x: f64,
        /// Frequency.
        xi: f64,
        /// `Re σ` there.
        value: f64,
    },
    /// An exact identity between symbol and power decomposition failed.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    /// Invalid argument.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Propagated polynomial error.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Symbol `σ(x, ξ) = Σ_k a_k(x)(iξ)^k` split into real and imaginary parts,
/// both polynomials in `x` and `xi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolPoly {
    /// Real part.
    pub re: Poly,
    /// Imaginary part.
    pub im: Poly,
}

fn resolve_s(p: &Poly, hbar: Option<f64>) -> Result<Poly, PseudiffError> {
    if !p.contains(Var::S) {
        return Ok(p.clone());
    }
    let h = hbar.ok_or(PseudiffError::UnresolvedS)?;
    let s = BigRational::from_float(h.sqrt()).ok_or_else(|| PseudiffError::InvalidArgument(format!("bad hbar {h}")))?;
    Ok(p.substitute_value(Var::S, &s))
}

/// Symbol of `L`, with `s` replaced by the double `√ℏ` when present.
pub fn symbol(l: &RawOp, hbar: Option<f64>) -> Result<SymbolPoly, PseudiffError> {
    let (mut re, mut im) = (Poly::zero(), Poly::zero());
    for (k, a) in l.coeffs().iter().enumerate() {
        let term = resolve_s(a, hbar)?.mul_monomial([0, k as u32, 0]);
        match k % 4 {
            0 => re += &term,
            1 => im += &term,
            2 => re -= &term,
            _ => im -= &term,
        }
    }
    Ok(SymbolPoly { re, im })
}

/// `Σ_ℓ 𝓑_ℓ(x) ξ^{2ℓ}`, the symbol of the frozen operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaUpper {
    /// The polynomial in `x`, `xi`.
    pub poly: Poly,
}

/// Builds `Σ 𝓑_ℓ ξ^{2ℓ}` from a power decomposition and checks exactly that
/// `Re σ_n = Σ + Σ_ℓ (−1)^ℓ T_{2ℓ} ξ^{2ℓ}` and
/// `Im σ_n = Σ_ℓ (−1)^ℓ T_{2ℓ+1} ξ^{2ℓ+1}`.
pub fn sigma_upper(p: &PowerDecomposition) -> Result<SigmaUpper, PseudiffError> {
    let xi_pow = |k: usize| Poly::monomial(BigRational::from_integer(1.into()), [0, k as u32, 0]);
    let sign = |l: usize| if l % 2 == 0 { Poly::one() } else { Poly::int(-1) };
    let poly = p
        .cal_b
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (l, b)| &acc + &(b * &xi_pow(2 * l)));
    let sigma = symbol(&RawOp::new(p.a.clone()), None)?;
    let (mut re, mut im) = (poly.clone(), Poly::zero());
    for (k, t) in p.t.iter().enumerate() {
        let term = &(t * &xi_pow(k)) * &sign(k / 2);
        if k % 2 == 0 {
            re += &term;
        } else {
            im += &term;
        }
    }
    if sigma.re != re {
        return Err(PseudiffError::Consistency("real part of the power symbol".into()));
    }
    if sigma.im != im {
        return Err(PseudiffError::Consistency("imaginary part of the power symbol".into()));
    }
    Ok(SigmaUpper { poly })
}

fn binom_f64(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Numeric evaluator of `σ + c`, its `x`-derivatives, `Γ` and `ρ_μ` for a raw
/// operator at fixed ℏ.
#[derive(Debug, Clone)]
pub struct SymbolEvaluator {
    /// `derivs[k][i]` is `∂_x^i A_k`, up to the last nonzero derivative.
    derivs: Vec<Vec<UniPoly>>,
    c: f64,
}

impl SymbolEvaluator {
    /// Evaluator for `op + c` with `s = √ℏ`.
    pub fn new(op: &RawOp, c: f64, hbar: Option<f64>) -> Result<Self, PseudiffError> {
        let order = op.order();
        let mut derivs = Vec::with_capacity(order + 1);
        for a in op.coeffs() {
            if a.contains(Var::S) && hbar.is_none() {
                return Err(PseudiffError::UnresolvedS);
            }
            let mut u = a.to_uni_x(hbar.map(f64::sqrt))?;
            let mut row = Vec::new();
            while u.degree().is_some() {
                let next = u.derivative();
                row.push(u);
                u = next;
            }
            if row.is_empty() {
                row.push(u);
            }
            derivs.push(row);
        }
        Ok(SymbolEvaluator { derivs, c })
    }

    /// Evaluator for `L^n + c` from the raw coefficients of a power
    /// decomposition.
    pub fn from_power(p: &PowerDecomposition, c: f64, hbar: Option<f64>) -> Result<Self, PseudiffError> {
        Self::new(&RawOp::new(p.a.clone()), c, hbar)
    }

    /// Order of the operator.
    pub fn order(&self) -> usize {
        self.derivs.len() - 1
    }

    /// `∂_x^i (σ + c)` at `(x, ξ)`.
    pub fn sigma_derivative(&self, i: usize, x: f64, xi: f64) -> Complex64 {
        let mut acc = Complex64::new(if i == 0 { self.c } else { 0.0 }, 0.0);
        let mut ixi = Complex64::new(1.0, 0.0);
        for row in &self.derivs {
            if let Some(u) = row.get(i) {
                acc += ixi * u.eval(x);
            }
            ixi *= Complex64::new(0.0, xi);
        }
        acc
    }

    fn check_positive(&self, x: f64, xi: f64, sigma: Complex64) -> Result<(), PseudiffError> {
        if !(sigma.re > 0.0) {
            return Err(PseudiffError::NotPositive { x, xi, value: sigma.re });
        }
        Ok(())
    }

    /// `∂_x^j Γ` for `j = 0..=jmax` at `(x, ξ)`.
    pub fn gamma_derivatives(&self, x: f64, xi: f64, mu: f64, jmax: usize) -> Result<Vec<Complex64>, PseudiffError> {
        let ds: Vec<Complex64> = (0..=jmax).map(|i| self.sigma_derivative(i, x, xi)).collect();
        self.check_positive(x, xi, ds[0])?;
        let gamma = (ds[0] + Complex64::new(0.0, mu)).inv();
        let mut g = Vec::with_capacity(jmax + 1);
        g.push(gamma);
        for j in 1..=jmax {
            let sum: Complex64 = (1..=j).map(|i| ds[i] * g[j - i] * binom_f64(j, i)).sum();
            g.push(-gamma * sum);
        }
        Ok(g)
    }

    /// `ρ_μ(x, ξ)`.
    pub fn rho_mu(&self, x: f64, xi: f64, mu: f64) -> Result<Complex64, PseudiffError> {
        let d = self.order();
        let g = self.gamma_derivatives(x, xi, mu, d)?;
        let ixi = Complex64::new(0.0, xi);
        let mut rho = Complex64::new(0.0, 0.0);
        for k in 1..=d {
            let a = self.derivs[k][0].eval(x);
            if a == 0.0 {
                continue;
            }
            for j in 1..=k {
                rho += g[j] * ixi.powu((k - j) as u32) * (a * binom_f64(k, j));
            }
        }
        Ok(rho)
    }

    /// Smallest `Re σ` on a square grid.
    pub fn min_re_sigma(&self, radius: f64, points: usize) -> f64 {
        let step = 2.0 * radius / (points - 1) as f64;
        (0..points)
            .into_par_iter()
            .map(|i| {
                let x = -radius + step * i as f64;
                (0..points)
                    .map(|j| self.sigma_derivative(0, x, -radius + step * j as f64).re)
                    .fold(f64::INFINITY, f64::min)
            })
            .reduce(|| f64::INFINITY, f64::min)
    }
}

/// Default number of grid points per axis.
pub const DEFAULT_GRID: usize = 512;

/// Boundary-to-maximum ratio at which the adaptive box stops growing.
pub const BOUNDARY_RATIO: f64 = 1e-3;

const INITIAL_RADIUS: f64 = 4.0;
const MAX_RADIUS: f64 = 65536.0;

/// `L²` norm of `ρ_μ` over the plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhoNorm {
    /// `μ`.
    pub mu: f64,
    /// `√(interior + tail)`.
    pub norm: f64,
    /// Quadrature of `|ρ_μ|²` over the box.
    pub interior: f64,
    /// Envelope estimate of the integral outside the box.
    pub tail: f64,
    /// Half-width of the box.
    pub radius: f64,
    /// Grid points per axis.
    pub points: usize,
    /// The boundary values did not decay below the requested ratio.
    pub inconclusive: bool,
}

struct BoxScan {
    interior: f64,
    max_abs: f64,
    boundary_max: f64,
    envelope: f64,
}

fn scan_box(ev: &SymbolEvaluator, mu: f64, radius: f64, points: usize) -> Result<BoxScan, PseudiffError> {
    let step = 2.0 * radius / (points - 1) as f64;
    let weight = |i: usize| if i == 0 || i == points - 1 { 0.5 } else { 1.0 };
    let rows = (0..points)
        .into_par_iter()
        .map(|i| {
            let x = -radius + step * i as f64;
            let (mut sum, mut max_abs, mut bmax, mut env) = (0.0, 0.0f64, 0.0f64, 0.0f64);
            for j in 0..points {
                let xi = -radius + step * j as f64;
                let v = ev.rho_mu(x, xi, mu)?.norm();
                sum += weight(j) * v * v;
                max_abs = max_abs.max(v);
                if i == 0 || i == points - 1 || j == 0 || j == points - 1 {
                    bmax = bmax.max(v);
                    env = env.max(v * (1.0 + x.abs()) * (1.0 + xi.abs()));
                }
            }
            Ok((weight(i) * sum, max_abs, bmax, env))
        })
        .collect::<Result<Vec<_>, PseudiffError>>()?;
    let mut out = BoxScan {
        interior: 0.0,
        max_abs: 0.0,
        boundary_max: 0.0,
        envelope: 0.0,
    };
    for (s, m, b, e) in rows {
        out.interior += s * step * step;
        out.max_abs = out.max_abs.max(m);
        out.boundary_max = out.boundary_max.max(b);
        out.envelope = out.envelope.max(e);
    }
    Ok(out)
}

/// `‖ρ_μ‖_{L²(dx dξ)}` by trapezoid quadrature on `[−R, R]²` plus the integral
/// of the envelope `C²(1+|x|)^{−2}(1+|ξ|)^{−2}` outside the box, where `C` is
/// fitted on the boundary. Without `box_radius`, `R` doubles from 4 until the
/// boundary maximum is at most [`BOUNDARY_RATIO`] of the overall maximum; the
/// result is flagged inconclusive when that never happens.
pub fn rho_l2_norm(ev: &SymbolEvaluator, mu: f64, box_radius: Option<f64>, points: Option<usize>) -> Result<RhoNorm, PseudiffError> {
    let points = points.unwrap_or(DEFAULT_GRID);
    if points < 3 {
        return Err(PseudiffError::InvalidArgument("need at least 3 grid points".into()));
    }
    let (mut radius, adaptive) = match box_radius {
        Some(r) if r > 0.0 => (r, false),
        Some(r) => return Err(PseudiffError::InvalidArgument(format!("box radius must be positive, got {r}"))),
        None => (INITIAL_RADIUS, true),
    };
    loop {
        let scan = scan_box(ev, mu, radius, points)?;
        let decayed = scan.boundary_max <= BOUNDARY_RATIO * scan.max_abs || scan.max_abs == 0.0;
        if decayed || !adaptive || radius >= MAX_RADIUS {
            let inside = 2.0 * radius / (1.0 + radius);
            let tail = scan.envelope * scan.envelope * (4.0 - inside * inside);
            return Ok(RhoNorm {
                mu,
                norm: (scan.interior + tail).sqrt(),
                interior: scan.interior,
                tail,
                radius,
                points,
                inconclusive: !decayed,
            });
        }
        radius *= 2.0;
    }
}

/// Outcome of [`self_adjoint_certificate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfAdjointCertificate {
    /// Shift `c` added to `L^n`.
    pub c: f64,
    /// First scheduled `μ` with `(2π)^{−1/2}‖ρ_μ‖ < 1`.
    pub mu_star: Option<f64>,
    /// Norms computed along the schedule, up to `μ*`.
    pub norms: Vec<RhoNorm>,
    /// No `μ` qualified or a norm was inconclusive.
    pub inconclusive: bool,
}

/// Default `μ` schedule.
pub const DEFAULT_SCHEDULE: [f64; 6] = [0.0, 1.0, 10.0, 100.0, 1e3, 1e4];

/// Sweeps `μ` over `schedule` for `𝕃 = L^n + c` and returns the first `μ` with
/// `(2π)^{−1/2}‖ρ_μ‖ < 1`. With `c = None`, `c = 1 − min(0, min Re σ_{L^n})`
/// over a grid on `[−16, 16]²`.
pub fn self_adjoint_certificate(
    d: &DivOp,
    n: u32,
    c: Option<f64>,
    schedule: &[f64],
    hbar: Option<f64>,
    points: Option<usize>,
) -> Result<SelfAdjointCertificate, PseudiffError> {
    let power = power_raw_coeffs(d, n);
    let c = match c {
        Some(c) => c,
        None => 1.0 - SymbolEvaluator::from_power(&power, 0.0, hbar)?.min_re_sigma(16.0, 129).min(0.0),
    };
    let ev = SymbolEvaluator::from_power(&power, c, hbar)?;
    let scale = (2.0 * std::f64::consts::PI).sqrt();
    let mut norms = Vec::new();
    for &mu in schedule {
        let r = rho_l2_norm(&ev, mu, None, points)?;
        let ok = !r.inconclusive && r.norm / scale < 1.0;
        norms.push(r);
        if ok {
            return Ok(SelfAdjointCertificate {
                c,
                mu_star: Some(mu),
                norms,
                inconclusive: false,
            });
        }
    }
    Ok(SelfAdjointCertificate {
        c,
        mu_star: None,
        norms,
        inconclusive: true,
    })
}
