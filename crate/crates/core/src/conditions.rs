//! Checkable hypotheses on operator families: degree chains, uniform
//! positivity of the top coefficient and of leading coefficients, polynomial
//! domination bounds and the constants used to compare `L^n` with its frozen
//! part.
//!
//! ℏ-dependence is sampled on a geometric grid; every constant returned here is
//! certified on that grid only and carries an absolute margin of [`MARGIN`].

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::opalg::DivOp;
use crate::poly::{global_min_f64, Degree, GlobalMin, Poly, PolyError, UniPoly, Var};
use crate::structure::{scaled_power_div, StructureError};

/// Absolute margin added to every returned upper-bound constant.
pub const MARGIN: f64 = 1e-9;

/// Number of ℏ samples per interval.
pub const GRID_SAMPLES: usize = 32;

/// Ratio between the smallest and largest ℏ sample.
pub const GRID_SPAN: f64 = 1e-6;

/// Degree-chain variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainMode {
    /// `deg b_l ≤ deg b_{l−1}`.
    Strict,
    /// `deg b_l ≤ deg b_{l−1} + 2`.
    Relaxed,
}

impl FromStr for ChainMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(ChainMode::Strict),
            "relaxed" => Ok(ChainMode::Relaxed),
            other => Err(format!("unknown mode `{other}`, expected strict or relaxed")),
        }
    }
}

impl fmt::Display for ChainMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainMode::Strict => "strict",
            ChainMode::Relaxed => "relaxed",
        })
    }
}

/// Errors of the condition checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConditionsError {
    /// Degrees of `q` and `p` do not fit the requested mode.
    #[error("degree precondition violated: deg q = {deg_q}, deg p = {deg_p} in {mode} mode")]
    DegreePrecondition {
        /// Degree of the dominated polynomial.
        deg_q: Degree,
        /// Degree of the dominating polynomial.
        deg_p: Degree,
        /// Mode requested.
        mode: &'static str,
    },
    /// The dominating polynomial is not of even degree with positive leading
    /// coefficient at some sample.
    #[error("dominating polynomial is not even-degree with positive leading coefficient at hbar = {hbar}")]
    NotPositive {
        /// Offending sample.
        hbar: f64,
    },
    /// Invalid numeric argument.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The family fails the standing hypothesis.
    #[error("family fails the standing hypothesis: {0}")]
    AssumptionFailed(String),
    /// No finite constant was found.
    #[error("no finite constant found")]
    NoFiniteConstant,
    /// Propagated structure error.
    #[error(transparent)]
    Structure(#[from] StructureError),
    /// Propagated polynomial error.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `GRID_SAMPLES` geometric samples of ℏ from `eta·GRID_SPAN` to `eta`, both
/// included. ℏ = 0 is excluded because the hypotheses concern `0 < ℏ < η`.
pub fn hbar_grid(eta: f64) -> Vec<f64> {
    interval_samples(eta * GRID_SPAN, eta)
}

fn interval_samples(lo: f64, hi: f64) -> Vec<f64> {
    if hi <= lo {
        return vec![hi];
    }
    let lo = lo.max(hi * GRID_SPAN);
    let ratio = (hi / lo).powf(1.0 / (GRID_SAMPLES - 1) as f64);
    let mut out: Vec<f64> = (0..GRID_SAMPLES).map(|k| lo * ratio.powi(k as i32)).collect();
    out[GRID_SAMPLES - 1] = hi;
    out
}

/// Coefficients of `p(x, √ℏ)` in `x`, with coefficients that vanish up to
/// rounding set to zero.
fn numeric_in_x(p: &Poly, hbar: f64) -> Result<UniPoly, PolyError> {
    if p.contains(Var::Xi) {
        return Err(PolyError::Arity(Var::Xi));
    }
    let s = hbar.sqrt();
    let deg = p.degree_in(Var::X).finite().unwrap_or(0);
    let mut coeffs = Vec::with_capacity(deg as usize + 1);
    for j in 0..=deg {
        let alpha = p.coeff_in(Var::X, j);
        let v = alpha.eval_f64(&[(Var::S, s)])?;
        let mag: f64 = alpha
            .terms()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::INFINITY).abs() * s.powi(e[2] as i32))
            .sum();
        coeffs.push(if v.abs() <= 1e-12 * mag { 0.0 } else { v });
    }
    Ok(UniPoly::new(coeffs))
}

fn uni_degree(u: &UniPoly) -> Degree {
    u.degree().map_or(Degree::NegInf, |d| Degree::Finite(d as u32))
}

/// One recorded hypothesis failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    /// Which hypothesis item failed.
    pub item: String,
    /// Coefficient index involved.
    pub index: usize,
    /// First ℏ sample where it failed.
    pub hbar: f64,
    /// Human-readable detail.
    pub detail: String,
}

/// Outcome of [`check_assumption1`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    /// Upper end of the ℏ interval.
    pub eta: f64,
    /// Degree-chain mode used for the verdict.
    pub mode: ChainMode,
    /// Every `b_{l,ℏ}` has finite even degree on the grid.
    pub even_degrees_ok: bool,
    /// `deg b_l ≤ deg b_{l−1}` on the grid.
    pub degree_chain_ok: bool,
    /// `deg b_l ≤ deg b_{l−1} + 2` on the grid.
    pub relaxed_chain_ok: bool,
    /// Smallest sampled value of `inf_x b_{m,ℏ}(x)`; `f64::MIN` when unbounded.
    pub c_bm: f64,
    /// Smallest sampled leading coefficient over all `l`.
    pub c_alpha: f64,
    /// Overall verdict.
    pub passed: bool,
    /// Failures, one per (item, index).
    pub failures: Vec<Failure>,
    /// The ℏ samples used.
    pub hbar_grid: Vec<f64>,
}

/// Checks the standing hypothesis on a family `b_l(x, s)`, `s = √ℏ`, for ℏ on
/// [`hbar_grid`]`(eta)`: finite even degrees, the degree chain of `mode`, and
/// uniform positivity of `inf b_m` and of the leading coefficients.
pub fn check_assumption1(family: &DivOp, eta: f64, mode: ChainMode) -> FamilyReport {
    let grid = hbar_grid(eta);
    let m = family.half_order();
    let mut failures: Vec<Failure> = Vec::new();
    let mut record = |item: &str, index: usize, hbar: f64, detail: String| {
        if !failures.iter().any(|f| f.item == item && f.index == index) {
            failures.push(Failure {
                item: item.to_string(),
                index,
                hbar,
                detail,
            });
        }
    };
    let (mut even_ok, mut strict_ok, mut relaxed_ok) = (true, true, true);
    let mut c_bm = f64::INFINITY;
    let mut c_alpha = f64::INFINITY;
    for &h in &grid {
        let nums: Vec<UniPoly> = family
            .coeffs()
            .iter()
            .map(|b| numeric_in_x(b, h).unwrap_or_else(|_| UniPoly::new(vec![f64::NAN])))
            .collect();
        let degs: Vec<Degree> = nums.iter().map(uni_degree).collect();
        for (l, (u, d)) in nums.iter().zip(&degs).enumerate() {
            if !d.is_even() {
                even_ok = false;
                record("even-degree", l, h, format!("deg b_{l} = {d} is not a finite even number"));
            }
            let lead = u.coeffs().last().copied().unwrap_or(0.0);
            c_alpha = c_alpha.min(lead);
            if lead <= 0.0 {
                record("leading-coefficient", l, h, format!("leading coefficient of b_{l} is {lead}"));
            }
        }
        for l in 1..=m {
            if !degs[l].le_shifted(degs[l - 1], 0) {
                strict_ok = false;
                if mode == ChainMode::Strict {
                    record("degree-chain", l, h, format!("deg b_{l} = {} > deg b_{} = {}", degs[l], l - 1, degs[l - 1]));
                }
            }
            if !degs[l].le_shifted(degs[l - 1], 2) {
                relaxed_ok = false;
                record("relaxed-degree-chain", l, h, format!("deg b_{l} = {} > deg b_{} + 2 = {}", degs[l], l - 1, degs[l - 1]));
            }
        }
        match global_min_f64(&nums[m]) {
            GlobalMin::Min { value, .. } => c_bm = c_bm.min(value),
            GlobalMin::UnboundedBelow => c_bm = f64::MIN,
        }
    }
    if c_bm <= 0.0 {
        record("top-coefficient-positivity", m, eta, format!("inf of b_{m} over the grid is {c_bm}, not > 0"));
    }
    let chain_ok = match mode {
        ChainMode::Strict => strict_ok,
        ChainMode::Relaxed => relaxed_ok,
    };
    FamilyReport {
        eta,
        mode,
        even_degrees_ok: even_ok,
        degree_chain_ok: strict_ok,
        relaxed_chain_ok: relaxed_ok,
        c_bm,
        c_alpha,
        passed: even_ok && chain_ok && c_bm > 0.0 && c_alpha > 0.0,
        failures,
        hbar_grid: grid,
    }
}

/// Requested domination bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum DominateMode {
    /// `|q| ≤ ε p + C_ε` for `deg q < deg p`.
    Strict {
        /// The factor `ε > 0`.
        eps: f64,
    },
    /// `|q| ≤ D p + E` for `deg q ≤ deg p`.
    EqualDegree,
}

/// Result of [`dominate`]: `|q| ≤ factor · p + constant` on the samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Domination {
    /// `ε` (strict) or `D` (equal degree).
    pub factor: f64,
    /// `C_ε` (strict) or `E` (equal degree), margin included.
    pub constant: f64,
    /// ℏ samples used.
    pub hbar_samples: Vec<f64>,
}

/// `max_x (|q| − factor·p)` for one sample, or `None` when unbounded.
fn excess(q: &UniPoly, p: &UniPoly, factor: f64) -> Option<f64> {
    let mut worst = f64::NEG_INFINITY;
    for sign in [1.0, -1.0] {
        match global_min_f64(&p.combine(factor, q, -sign)) {
            GlobalMin::Min { value, .. } => worst = worst.max(-value),
            GlobalMin::UnboundedBelow => return None,
        }
    }
    Some(worst)
}

/// Finds constants with `|q| ≤ ε p + C_ε` (strict) or `|q| ≤ D p + E` (equal
/// degree) for every sampled ℏ in `[lo, hi]`, by exact-derivative
/// maximization of `|q| − ε p` in `x`.
pub fn dominate(q: &Poly, p: &Poly, interval: (f64, f64), mode: DominateMode) -> Result<Domination, ConditionsError> {
    let (dq, dp) = (q.degree_in(Var::X), p.degree_in(Var::X));
    match mode {
        DominateMode::Strict { eps } => {
            if !(eps > 0.0) {
                return Err(ConditionsError::InvalidArgument(format!("eps must be positive, got {eps}")));
            }
            if !dq.le_shifted(dp, -1) {
                return Err(ConditionsError::DegreePrecondition { deg_q: dq, deg_p: dp, mode: "strict" });
            }
        }
        DominateMode::EqualDegree => {
            if !dq.le_shifted(dp, 0) {
                return Err(ConditionsError::DegreePrecondition { deg_q: dq, deg_p: dp, mode: "equal-degree" });
            }
        }
    }
    let samples = interval_samples(interval.0, interval.1);
    let mut pairs = Vec::with_capacity(samples.len());
    for &h in &samples {
        let (qn, pn) = (numeric_in_x(q, h)?, numeric_in_x(p, h)?);
        let lead = pn.coeffs().last().copied().unwrap_or(0.0);
        if !uni_degree(&pn).is_even() || lead <= 0.0 {
            return Err(ConditionsError::NotPositive { hbar: h });
        }
        pairs.push((qn, pn));
    }
    let worst_for = |factor: f64| -> Option<f64> {
        pairs
            .iter()
            .map(|(qn, pn)| excess(qn, pn, factor))
            .try_fold(f64::NEG_INFINITY, |acc, v| v.map(|v| acc.max(v)))
    };
    match mode {
        DominateMode::Strict { eps } => {
            let worst = worst_for(eps).ok_or(ConditionsError::NoFiniteConstant)?;
            Ok(Domination {
                factor: eps,
                constant: worst.max(0.0) + MARGIN,
                hbar_samples: samples,
            })
        }
        DominateMode::EqualDegree => {
            let d0 = pairs
                .iter()
                .map(|(qn, pn)| {
                    let dp = pn.degree().unwrap_or(0);
                    let lq = qn.coeffs().get(dp).copied().unwrap_or(0.0);
                    lq.abs() / pn.coeffs()[dp]
                })
                .fold(0.0, f64::max);
            for factor in [d0, d0 * (1.0 + 1e-9) + 1e-12, d0 * 1.001 + 1e-9, d0 * 1.01 + 1e-6, d0 * 1.1 + 1e-3, d0 * 2.0 + 1.0] {
                if let Some(worst) = worst_for(factor) {
                    return Ok(Domination {
                        factor,
                        constant: worst.max(0.0) + MARGIN,
                        hbar_samples: samples,
                    });
                }
            }
            Err(ConditionsError::NoFiniteConstant)
        }
    }
}

/// `max_{w ≥ 0} Σ_{ℓ<M} c_ℓ w^ℓ − δ w^M` plus [`MARGIN`], by root isolation of
/// the derivative. Entries of `c` beyond `M − 1` are ignored.
pub fn lemma61_bound(c: &[BigRational], big_m: usize, delta: f64) -> Result<f64, ConditionsError> {
    if !(delta > 0.0) || big_m == 0 {
        return Err(ConditionsError::InvalidArgument(format!("need delta > 0 and M >= 1, got delta = {delta}, M = {big_m}")));
    }
    let mut coeffs = vec![0.0; big_m + 1];
    for (slot, v) in coeffs.iter_mut().zip(c.iter().take(big_m)) {
        *slot = v.to_f64().ok_or(ConditionsError::InvalidArgument("coefficient overflow".into()))?;
    }
    coeffs[big_m] = -delta;
    let f = UniPoly::new(coeffs);
    // max f over [0, ∞) = −min over [0, ∞) of −f; the minimizer is 0 or a
    // critical point, so scan the critical points of −f that lie in [0, ∞).
    let neg = f.combine(-1.0, &UniPoly::new(vec![]), 0.0);
    let mut best = f.eval(0.0);
    for t in crate::poly::real_roots(&neg.derivative()) {
        if t > 0.0 {
            best = best.max(f.eval(t));
        }
    }
    Ok(best + MARGIN)
}

/// Output of [`remainder_margin`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemainderMargin {
    /// `ε` used.
    pub eps: f64,
    /// Smallest grid-verified `C` with `|R_{ℓ,ℏ}| ≤ ε 𝓑_{ℓ,ℏ} + C` for all ℓ.
    pub c_eps: f64,
    /// Per-ℓ constants.
    pub per_index: Vec<f64>,
}

/// Constant `C` with `|R_{ℓ,ℏ}| ≤ ε 𝓑_{ℓ,ℏ} + C` for all `ℓ` and sampled
/// `ℏ ∈ (0, η]`. Zero when every remainder vanishes.
pub fn remainder_margin(family: &DivOp, n: u32, eps: f64, eta: f64) -> Result<RemainderMargin, ConditionsError> {
    let report = check_assumption1(family, eta, ChainMode::Strict);
    if !report.passed {
        let items: Vec<String> = report.failures.iter().map(|f| f.detail.clone()).collect();
        return Err(ConditionsError::AssumptionFailed(items.join("; ")));
    }
    let pd = scaled_power_div(family, n)?;
    let per_index = pd
        .r
        .par_iter()
        .zip(pd.cal_b.par_iter())
        .map(|(r, fb)| {
            if r.is_zero() {
                Ok(0.0)
            } else {
                dominate(r, fb, (eta * GRID_SPAN, eta), DominateMode::Strict { eps }).map(|d| d.constant)
            }
        })
        .collect::<Result<Vec<f64>, _>>()?;
    let c_eps = per_index.iter().copied().fold(0.0, f64::max);
    Ok(RemainderMargin { eps, c_eps, per_index })
}

/// Shift `C_δ` from the scalar bound with `c_ℓ = C_{1/2}` for `ℓ < mn` and
/// `δ = c_bm^n / 2`, above which the quadratic forms of `L_ℏ^n + c` and of its
/// frozen operator are comparable within factors `1/2` and `3/2`.
pub fn sandwich_constant(family: &DivOp, n: u32, eta: f64) -> Result<f64, ConditionsError> {
    let margin = remainder_margin(family, n, 0.5, eta)?;
    let report = check_assumption1(family, eta, ChainMode::Strict);
    let mn = family.half_order() * n as usize;
    if mn == 0 {
        return Ok(0.0);
    }
    let c = BigRational::from_float(margin.c_eps).ok_or(ConditionsError::NoFiniteConstant)?;
    lemma61_bound(&vec![c; mn], mn, report.c_bm.powi(n as i32) / 2.0)
}

/// One row of [`DegreeDropReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeDropRow {
    /// Index ℓ.
    pub index: usize,
    /// `deg_x R_ℓ`.
    pub deg_r: Degree,
    /// `deg_x 𝓑_ℓ`.
    pub deg_cal_b: Degree,
    /// `deg_x B_ℓ`.
    pub deg_b: Degree,
    /// Row verdict.
    pub ok: bool,
}

/// Degree comparison between remainders and frozen coefficients of `L_ℏ^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeDropReport {
    /// Mode checked.
    pub mode: ChainMode,
    /// Per-ℓ rows.
    pub rows: Vec<DegreeDropRow>,
    /// Overall verdict.
    pub passed: bool,
}

/// Checks `deg R_ℓ ≤ deg 𝓑_ℓ − 2` and `deg B_ℓ = deg 𝓑_ℓ` (strict) or
/// `deg R_ℓ ≤ deg 𝓑_ℓ` (relaxed) for every ℓ, with degrees in `x`.
pub fn degree_drop_check(d: &DivOp, n: u32, mode: ChainMode) -> Result<DegreeDropReport, ConditionsError> {
    let pd = scaled_power_div(d, n)?;
    let rows: Vec<DegreeDropRow> = (0..pd.b.len())
        .map(|l| {
            let deg_r = pd.r[l].degree_in(Var::X);
            let deg_cal_b = pd.cal_b[l].degree_in(Var::X);
            let deg_b = pd.b[l].degree_in(Var::X);
            let ok = match mode {
                ChainMode::Strict => deg_r.le_shifted(deg_cal_b, -2) && deg_b == deg_cal_b,
                ChainMode::Relaxed => deg_r.le_shifted(deg_cal_b, 0),
            };
            DegreeDropRow { index: l, deg_r, deg_cal_b, deg_b, ok }
        })
        .collect();
    let passed = rows.iter().all(|r| r.ok);
    Ok(DegreeDropReport { mode, rows, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn div(cs: &[&str]) -> DivOp {
        DivOp::new(cs.iter().map(|c| p(c)).collect())
    }

    #[test]
    fn grid_shape() {
        let g = hbar_grid(1.0);
        assert_eq!(g.len(), GRID_SAMPLES);
        assert_eq!(g[GRID_SAMPLES - 1], 1.0);
        assert!((g[0] - 1e-6).abs() < 1e-18);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn number_family_passes() {
        let r = check_assumption1(&div(&["(x^2 - s^2)/2", "1/2"]), 1.0, ChainMode::Strict);
        assert!(r.passed, "{:?}", r.failures);
        assert!((r.c_bm - 0.5).abs() < 1e-12);
        assert!((r.c_alpha - 0.5).abs() < 1e-12);
    }

    #[test]
    fn odd_degree_fails() {
        let r = check_assumption1(&div(&["x^3", "1"]), 1.0, ChainMode::Strict);
        assert!(!r.passed);
        assert!(!r.even_degrees_ok);
        assert!(r.c_bm.is_finite() && r.c_alpha.is_finite());
    }

    #[test]
    fn relaxed_versus_strict() {
        let d = div(&["x^2 + 1", "x^4 + 1"]);
        let strict = check_assumption1(&d, 1.0, ChainMode::Strict);
        let relaxed = check_assumption1(&d, 1.0, ChainMode::Relaxed);
        assert!(!strict.passed && !strict.degree_chain_ok);
        assert!(relaxed.passed && relaxed.relaxed_chain_ok);
    }

    #[test]
    fn weyl_quartic_family_reports_zero_infimum() {
        let r = check_assumption1(&div(&["-s^4/2", "x^2"]), 1.0, ChainMode::Relaxed);
        assert!(!r.passed);
        assert_eq!(r.c_bm, 0.0);
        assert!(r.failures.iter().any(|f| f.item == "top-coefficient-positivity"));
    }

    #[test]
    fn dominate_examples() {
        let d = dominate(&p("x^2"), &p("x^4 + 1"), (1.0, 1.0), DominateMode::Strict { eps: 1.0 }).unwrap();
        assert!(d.constant.abs() < 1e-8);
        let e = dominate(&p("x^4"), &p("x^4 + 1"), (1.0, 1.0), DominateMode::EqualDegree).unwrap();
        assert!((e.factor - 1.0).abs() < 1e-12 && e.constant.abs() < 1e-8);
        let c = dominate(&p("1"), &p("x^2"), (1.0, 1.0), DominateMode::Strict { eps: 1.0 }).unwrap();
        assert!((c.constant - 1.0).abs() < 1e-8);
        assert!(matches!(
            dominate(&p("x^4"), &p("x^2"), (1.0, 1.0), DominateMode::Strict { eps: 1.0 }),
            Err(ConditionsError::DegreePrecondition { .. })
        ));
        assert!(matches!(
            dominate(&p("1"), &p("-x^2"), (1.0, 1.0), DominateMode::Strict { eps: 1.0 }),
            Err(ConditionsError::NotPositive { .. })
        ));
    }

    #[test]
    fn lemma61_examples() {
        assert!((lemma61_bound(&[rat(1)], 1, 1.0).unwrap() - 1.0).abs() < 1e-8);
        assert!((lemma61_bound(&[rat(0), rat(2)], 2, 1.0).unwrap() - 1.0).abs() < 1e-8);
        assert!(lemma61_bound(&[rat(0)], 3, 0.5).unwrap().abs() < 1e-8);
        assert!((lemma61_bound(&[ratio(1, 2), rat(0), rat(3)], 3, 2.0).unwrap() - 1.5).abs() < 1e-8);
        assert!(lemma61_bound(&[rat(1)], 1, 0.0).is_err());
    }

    #[test]
    fn remainder_examples() {
        // Only R_0 = −ℏ²/2 survives; |R_0| ≤ ε 𝓑_0 + C forces C = ℏ²/2 at the
        // zero of 𝓑_0 = (x² − ℏ)²/4, so C = 1/2 at η = 1.
        let number = remainder_margin(&div(&["(x^2 - s^2)/2", "1/2"]), 2, 0.5, 1.0).unwrap();
        assert!((number.c_eps - 0.5).abs() < 1e-8, "{number:?}");
        assert_eq!(number.per_index[1], 0.0);
        let first = remainder_margin(&div(&["(x^2 - s^2)/2", "1/2"]), 1, 0.5, 1.0).unwrap();
        assert_eq!(first.c_eps, 0.0);
        let quartic = remainder_margin(&div(&["x^4", "x^2 + 1"]), 2, 0.5, 1.0).unwrap();
        assert!(quartic.c_eps.is_finite() && quartic.c_eps > 0.0);
        let shift = sandwich_constant(&div(&["x^4 + 1", "x^2 + 1"]), 2, 1.0).unwrap();
        assert!(shift.is_finite() && shift >= quartic.c_eps);
    }

    #[test]
    fn degree_drop_examples() {
        assert!(degree_drop_check(&div(&["x^4", "x^2"]), 2, ChainMode::Strict).unwrap().passed);
        assert!(degree_drop_check(&div(&["x^2 + 1", "x^4 + 1"]), 2, ChainMode::Relaxed).unwrap().passed);
        assert!(degree_drop_check(&div(&["2", "3"]), 3, ChainMode::Strict).unwrap().passed);
    }
}
