//! Hermite-basis truncations of operators and eigenvalue certificates.
//!
//! The Hermite functions `h_n` satisfy
//! `x h_n = √((n+1)/2) h_{n+1} + √(n/2) h_{n−1}` and
//! `∂ h_n = √(n/2) h_{n−1} − √((n+1)/2) h_{n+1}`, so multiplication by `x` and
//! differentiation are tridiagonal. An operator of order `d` whose coefficients
//! have `x`-degree at most `p` moves `h_j` to indices at most `j + d + p`;
//! building products in dimension `N + d + p` and truncating afterwards gives
//! exact inner products `⟨L h_j, h_i⟩` for `i, j < N`.
//!
//! Positive semidefiniteness is tested through the smallest eigenvalue of a
//! difference with absolute tolerance [`PSD_TOL`]. All conclusions concern the
//! truncated span only.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::conditions::MARGIN;
use crate::opalg::{DivOp, RawOp};
use crate::poly::{PolyError, UniPoly};
use crate::structure::{frozen_coeffs, power_raw_coeffs, raw_from_divergence, scale_hbar};

/// Absolute tolerance of the PSD test.
pub const PSD_TOL: f64 = -1e-8;

/// Upper limit for bisected comparison constants.
pub const BISECTION_CAP: f64 = 1e12;

/// Relative precision of bisected constants.
pub const BISECTION_REL: f64 = 1e-9;

/// Errors of the spectral layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    /// Matrix entries overflowed.
    #[error("non-finite matrix entry at ({0}, {1})")]
    Overflow(usize, usize),
    /// The truncation is not symmetric although the operator should be.
    #[error("truncated matrix is not symmetric: asymmetry {asym:e} exceeds {bound:e}")]
    NotSymmetric {
        /// Largest `|M_ij − M_ji|`.
        asym: f64,
        /// Allowed asymmetry.
        bound: f64,
    },
    /// The eigenvalue residual check failed.
    #[error("eigenvalue residual {0:e} exceeds tolerance")]
    Residual(f64),
    /// A matrix required to be positive semidefinite is not.
    #[error("matrix is not positive semidefinite: smallest eigenvalue {0:e}")]
    NotPsd(f64),
    /// Invalid argument.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Propagated polynomial error.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Truncated matrix `⟨L h_j, h_i⟩_{i,j<N}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockMatrix {
    /// Truncation dimension `N`.
    pub dim: usize,
    /// ℏ used to evaluate `s = √ℏ`.
    pub hbar: f64,
    /// The `N × N` entries.
    pub entries: DMatrix<f64>,
    /// Extra basis functions used while composing.
    pub headroom_used: usize,
}

/// Multiplication by `x` in the first `dim` Hermite functions.
pub fn x_band(dim: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, dim);
    for n in 0..dim.saturating_sub(1) {
        let v = ((n + 1) as f64 / 2.0).sqrt();
        m[(n + 1, n)] = v;
        m[(n, n + 1)] = v;
    }
    m
}

/// Differentiation in the first `dim` Hermite functions.
pub fn d_band(dim: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, dim);
    for n in 0..dim.saturating_sub(1) {
        let v = ((n + 1) as f64 / 2.0).sqrt();
        m[(n + 1, n)] = -v;
        m[(n, n + 1)] = v;
    }
    m
}

fn poly_of(x: &DMatrix<f64>, p: &UniPoly) -> DMatrix<f64> {
    let dim = x.nrows();
    let mut acc = DMatrix::zeros(dim, dim);
    for &c in p.coeffs().iter().rev() {
        acc = &acc * x;
        for i in 0..dim {
            acc[(i, i)] += c;
        }
    }
    acc
}

/// Truncation of a raw operator with `s = √ℏ`, without a symmetry check.
pub fn operator_matrix(op: &RawOp, dim: usize, hbar: f64) -> Result<FockMatrix, SpectralError> {
    if dim == 0 {
        return Err(SpectralError::InvalidArgument("dimension must be at least 1".into()));
    }
    if !(hbar >= 0.0) {
        return Err(SpectralError::InvalidArgument(format!("hbar must be non-negative, got {hbar}")));
    }
    let s = hbar.sqrt();
    let headroom = op.order() + op.max_x_degree() as usize;
    let work = dim + headroom;
    let (x, d) = (x_band(work), d_band(work));
    let mut dk = DMatrix::identity(work, work);
    let mut full = DMatrix::zeros(work, work);
    for (k, a) in op.coeffs().iter().enumerate() {
        if !a.is_zero() {
            full += poly_of(&x, &a.to_uni_x(Some(s))?) * &dk;
        }
        if k < op.order() {
            dk = &d * dk;
        }
    }
    let entries = full.view((0, 0), (dim, dim)).into_owned();
    for j in 0..dim {
        for i in 0..dim {
            if !entries[(i, j)].is_finite() {
                return Err(SpectralError::Overflow(i, j));
            }
        }
    }
    Ok(FockMatrix {
        dim,
        hbar,
        entries,
        headroom_used: headroom,
    })
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<(), SpectralError> {
    let scale = m.amax().max(1.0);
    let asym = (m - m.transpose()).amax();
    let bound = 1e-10 * scale;
    if asym > bound {
        return Err(SpectralError::NotSymmetric { asym, bound });
    }
    Ok(())
}

/// Truncation of a raw operator, which must come out symmetric to `1e−10`
/// relative to its largest entry.
pub fn fock_matrix(op: &RawOp, dim: usize, hbar: f64) -> Result<FockMatrix, SpectralError> {
    let m = operator_matrix(op, dim, hbar)?;
    check_symmetric(&m.entries)?;
    Ok(m)
}

/// Truncation of a divergence-form operator.
pub fn fock_matrix_div(op: &DivOp, dim: usize, hbar: f64) -> Result<FockMatrix, SpectralError> {
    fock_matrix(&raw_from_divergence(op), dim, hbar)
}

/// `ℏ·diag(0, …, N−1)`, the truncation of `ℏ𝒩`.
pub fn number_matrix(dim: usize, hbar: f64) -> FockMatrix {
    FockMatrix {
        dim,
        hbar,
        entries: DMatrix::from_diagonal(&nalgebra::DVector::from_fn(dim, |i, _| hbar * i as f64)),
        headroom_used: 0,
    }
}

/// Ladder matrices `a = (s/√2)(x + ∂)`, `a† = (s/√2)(x − ∂)` in dimension
/// `dim`, with `s = √ℏ`.
pub fn ladder_matrices(dim: usize, hbar: f64) -> (DMatrix<f64>, DMatrix<f64>) {
    let c = (hbar / 2.0).sqrt();
    let (x, d) = (x_band(dim), d_band(dim));
    ((&x + &d) * c, (&x - &d) * c)
}

/// Top-left `(N−1) × (N−1)` block of `[a, a†]`, built in dimension `N + 1`.
pub fn commutator_block(dim: usize, hbar: f64) -> DMatrix<f64> {
    let (a, ad) = ladder_matrices(dim + 1, hbar);
    let c = &a * &ad - &ad * &a;
    c.view((0, 0), (dim - 1, dim - 1)).into_owned()
}

/// Smallest eigenvalue of a symmetric matrix, with the residual
/// `‖Mv − λv‖ ≤ 1e−8‖M‖` checked.
pub fn min_eigenvalue(m: &DMatrix<f64>) -> Result<f64, SpectralError> {
    let eig = SymmetricEigen::new(m.clone());
    let (idx, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| SpectralError::InvalidArgument("empty matrix".into()))?;
    let v = eig.eigenvectors.column(idx);
    let residual = (m * v - v * lambda).norm();
    if !(residual <= 1e-8 * m.norm()) {
        return Err(SpectralError::Residual(residual));
    }
    Ok(lambda)
}

fn is_psd(m: &DMatrix<f64>) -> Result<bool, SpectralError> {
    Ok(min_eigenvalue(m)? >= PSD_TOL)
}

/// `L_ℏ^n` of a family in raw form, with `ℏ` still symbolic as `s`.
pub fn scaled_power_op(d: &DivOp, n: u32) -> RawOp {
    RawOp::new(power_raw_coeffs(&scale_hbar(d), n).a)
}

/// Frozen operator `Σ_ℓ (−ℏ)^ℓ ∂^ℓ 𝓑_{ℓ,ℏ}(√ℏ ·) ∂^ℓ` of `L_ℏ^n` in raw form.
pub fn frozen_op(d: &DivOp, n: u32) -> RawOp {
    raw_from_divergence(&scale_hbar(&DivOp::new(frozen_coeffs(d, n))))
}

/// Result of [`positivity_certificate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityCertificate {
    /// `C` with `L_ℏ^n + C ⪰ 0` on every truncation.
    pub c_found: f64,
    /// `(ℏ, smallest eigenvalue)` per grid point.
    pub min_eigenvalues: Vec<(f64, f64)>,
}

/// Smallest eigenvalues of the truncations of `L_ℏ^n` over `hbar_grid`.
pub fn positivity_certificate(d: &DivOp, n: u32, hbar_grid: &[f64], dim: usize) -> Result<PositivityCertificate, SpectralError> {
    let op = scaled_power_op(d, n);
    let min_eigenvalues = hbar_grid
        .par_iter()
        .map(|&h| Ok((h, min_eigenvalue(&fock_matrix(&op, dim, h)?.entries)?)))
        .collect::<Result<Vec<_>, SpectralError>>()?;
    let lowest = min_eigenvalues.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
    let c_found = if lowest >= PSD_TOL { 0.0 } else { -lowest + MARGIN };
    Ok(PositivityCertificate { c_found, min_eigenvalues })
}

/// Smallest `C ∈ [0, BISECTION_CAP]` with `C·B − A ⪰ 0`, assuming
/// feasibility is monotone in `C`; `None` when even the cap fails.
pub fn smallest_scale(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<Option<f64>, SpectralError> {
    let feasible = |c: f64| is_psd(&(b * c - a));
    if feasible(0.0)? {
        return Ok(Some(0.0));
    }
    let mut hi = 1.0;
    while !feasible(hi)? {
        if hi >= BISECTION_CAP {
            return Ok(None);
        }
        hi = (hi * 4.0).min(BISECTION_CAP);
    }
    let mut lo = 0.0;
    while hi - lo > BISECTION_REL * hi {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// Result of [`comparison_certificate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonCertificate {
    /// Largest per-ℏ constant, `None` when some ℏ needs more than the cap.
    pub c1_found: Option<f64>,
    /// `(ℏ, C₁(ℏ))` per grid point.
    pub per_hbar: Vec<(f64, Option<f64>)>,
}

/// Smallest `C₁` with `C₁(M + C₂ I) − M̃ ⪰ 0` for the truncations `M̃` of
/// `L̃_ℏ^n` and `M` of `L_ℏ^n` at every grid point.
pub fn comparison_certificate(dt: &DivOp, d: &DivOp, n: u32, hbar_grid: &[f64], dim: usize, c2: f64) -> Result<ComparisonCertificate, SpectralError> {
    let (opt, op) = (scaled_power_op(dt, n), scaled_power_op(d, n));
    let per_hbar = hbar_grid
        .par_iter()
        .map(|&h| {
            let mt = fock_matrix(&opt, dim, h)?.entries;
            let mut m = fock_matrix(&op, dim, h)?.entries;
            for i in 0..dim {
                m[(i, i)] += c2;
            }
            Ok((h, smallest_scale(&mt, &m)?))
        })
        .collect::<Result<Vec<_>, SpectralError>>()?;
    let c1_found = per_hbar
        .iter()
        .try_fold(0.0f64, |acc, (_, c)| c.map(|c| acc.max(c)));
    Ok(ComparisonCertificate { c1_found, per_hbar })
}

/// `M^r` of a positive semidefinite matrix by spectral decomposition, with
/// eigenvalues in `[PSD_TOL, 0)` clamped to zero and `M^0 = I`.
pub fn psd_power(m: &DMatrix<f64>, r: f64) -> Result<DMatrix<f64>, SpectralError> {
    let dim = m.nrows();
    if r == 0.0 {
        return Ok(DMatrix::identity(dim, dim));
    }
    let eig = SymmetricEigen::new(m.clone());
    let lowest = eig.eigenvalues.min();
    if lowest < PSD_TOL {
        return Err(SpectralError::NotPsd(lowest));
    }
    let powered = eig.eigenvalues.map(|l| l.max(0.0).powf(r));
    let v = &eig.eigenvectors;
    Ok(v * DMatrix::from_diagonal(&powered) * v.transpose())
}

/// Result of [`fractional_compare`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FractionalComparison {
    /// Whether a constant below the cap exists.
    pub holds: bool,
    /// Smallest `C_r` with `C_r B^r − A^r ⪰ 0`.
    pub c_r: Option<f64>,
}

/// Smallest `C_r` with `C_r·B^r − A^r ⪰ 0` for positive semidefinite `A`, `B`.
pub fn fractional_compare(a: &DMatrix<f64>, b: &DMatrix<f64>, r: f64) -> Result<FractionalComparison, SpectralError> {
    if a.shape() != b.shape() || !(r >= 0.0) {
        return Err(SpectralError::InvalidArgument("need equal shapes and r >= 0".into()));
    }
    let (ar, br) = (psd_power(a, r)?, psd_power(b, r)?);
    let c_r = smallest_scale(&ar, &br)?;
    Ok(FractionalComparison { holds: c_r.is_some(), c_r })
}

/// Smallest eigenvalue of `B^r − A^r`.
pub fn loewner_margin(a: &DMatrix<f64>, b: &DMatrix<f64>, r: f64) -> Result<f64, SpectralError> {
    min_eigenvalue(&(psd_power(b, r)? - psd_power(a, r)?))
}

/// A pair with `A ⪯ B` but not `A² ⪯ B²`, padded with an identity block to
/// `4 × 4`.
pub fn loewner_counterexample() -> (DMatrix<f64>, DMatrix<f64>) {
    let a = DMatrix::from_row_slice(4, 4, &[1., 1., 0., 0., 1., 1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 1.]);
    let b = DMatrix::from_row_slice(4, 4, &[2., 1., 0., 0., 1., 1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 1.]);
    (a, b)
}

/// One recorded violation of `A^r ⪯ B^r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoewnerViolation {
    /// Trial index.
    pub trial: usize,
    /// Exponent.
    pub r: f64,
    /// Smallest eigenvalue of `B^r − A^r`.
    pub margin: f64,
}

/// Outcome of [`loewner_heinz_probe`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoewnerReport {
    /// Number of random pairs.
    pub trials: usize,
    /// Exponents probed.
    pub exponents: Vec<f64>,
    /// Violations found.
    pub violations: Vec<LoewnerViolation>,
    /// Smallest margin per exponent.
    pub worst_margin: Vec<f64>,
    /// Smallest eigenvalue of `B² − A²` for the stored counterexample.
    pub counterexample_margin: f64,
    /// Whether the stored counterexample is detected as a violation.
    pub counterexample_detected: bool,
    /// Seed of the random pairs.
    pub seed: u64,
}

fn random_psd(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0));
    &g * g.transpose()
}

/// Tests `A ⪯ B ⇒ A^r ⪯ B^r` on random pairs `A = G Gᵀ`, `B = A + H Hᵀ`.
pub fn loewner_heinz_probe(trials: usize, dim: usize, exponents: &[f64], seed: u64) -> Result<LoewnerReport, SpectralError> {
    if exponents.iter().any(|r| !(0.0..=1.0).contains(r)) {
        return Err(SpectralError::InvalidArgument("exponents must lie in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(DMatrix<f64>, DMatrix<f64>)> = (0..trials)
        .map(|_| {
            let a = random_psd(&mut rng, dim);
            let b = &a + random_psd(&mut rng, dim);
            (a, b)
        })
        .collect();
    let mut violations = Vec::new();
    let mut worst_margin = vec![f64::INFINITY; exponents.len()];
    for (trial, (a, b)) in pairs.iter().enumerate() {
        for (k, &r) in exponents.iter().enumerate() {
            let margin = loewner_margin(a, b, r)?;
            worst_margin[k] = worst_margin[k].min(margin);
            if margin < PSD_TOL {
                violations.push(LoewnerViolation { trial, r, margin });
            }
        }
    }
    let (ca, cb) = loewner_counterexample();
    let counterexample_margin = loewner_margin(&ca, &cb, 2.0)?;
    Ok(LoewnerReport {
        trials,
        exponents: exponents.to_vec(),
        violations,
        worst_margin,
        counterexample_margin,
        counterexample_detected: counterexample_margin < PSD_TOL,
        seed,
    })
}

/// Outcome of [`sandwich_check`] at one ℏ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichReport {
    /// ℏ.
    pub hbar: f64,
    /// Shift `c`.
    pub c: f64,
    /// Smallest eigenvalue of `(M_{L^n} + c) − ½(M_𝓛 + c)`.
    pub lower_margin: f64,
    /// Smallest eigenvalue of `(3/2)(M_𝓛 + c) − (M_{L^n} + c)`.
    pub upper_margin: f64,
    /// Both margins are above [`PSD_TOL`].
    pub holds: bool,
}

/// Checks `½(M_𝓛 + c) ⪯ M_{L^n} + c ⪯ (3/2)(M_𝓛 + c)` on the truncation,
/// where `𝓛` is the frozen operator of `L_ℏ^n`.
pub fn sandwich_check(d: &DivOp, n: u32, c: f64, dim: usize, hbar: f64) -> Result<SandwichReport, SpectralError> {
    let ln = fock_matrix(&scaled_power_op(d, n), dim, hbar)?.entries;
    let fr = fock_matrix(&frozen_op(d, n), dim, hbar)?.entries;
    let id = DMatrix::<f64>::identity(dim, dim);
    let shifted_ln = &ln + &id * c;
    let shifted_fr = &fr + &id * c;
    let lower_margin = min_eigenvalue(&(&shifted_ln - &shifted_fr * 0.5))?;
    let upper_margin = min_eigenvalue(&(&shifted_fr * 1.5 - &shifted_ln))?;
    Ok(SandwichReport {
        hbar,
        c,
        lower_margin,
        upper_margin,
        holds: lower_margin >= PSD_TOL && upper_margin >= PSD_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn raw(cs: &[&str]) -> RawOp {
        RawOp::new(cs.iter().map(|c| c.parse::<Poly>().unwrap()).collect())
    }

    fn div(cs: &[&str]) -> DivOp {
        DivOp::new(cs.iter().map(|c| c.parse::<Poly>().unwrap()).collect())
    }

    #[test]
    fn multiplication_by_x() {
        let m = operator_matrix(&raw(&["x"]), 2, 1.0).unwrap().entries;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((m - DMatrix::from_row_slice(2, 2, &[0.0, h, h, 0.0])).amax() < 1e-15);
    }

    #[test]
    fn number_operator_is_diagonal() {
        let n_op = raw(&["x^2/2 - 1/2", "0", "-1/2"]);
        for dim in [1, 5, 64] {
            let m = fock_matrix(&n_op, dim, 1.0).unwrap();
            assert!((m.entries - number_matrix(dim, 1.0).entries).amax() < 1e-10);
            assert_eq!(m.headroom_used, 4);
        }
        let family = raw_from_divergence(&scale_hbar(&div(&["(x^2 - s^2)/2", "1/2"])));
        let m = fock_matrix(&family, 8, 0.5).unwrap();
        assert!((m.entries - number_matrix(8, 0.5).entries).amax() < 1e-10);
        assert!((number_matrix(2, 0.5).entries[(1, 1)] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn identity_and_asymmetry() {
        let m = fock_matrix(&RawOp::identity(), 4, 1.0).unwrap();
        assert_eq!(m.entries, DMatrix::identity(4, 4));
        assert!(matches!(fock_matrix(&RawOp::derivative(), 3, 1.0), Err(SpectralError::NotSymmetric { .. })));
    }

    #[test]
    fn commutator_is_hbar_identity() {
        for h in [0.1, 1.0] {
            let c = commutator_block(16, h);
            assert!((c - DMatrix::identity(15, 15) * h).amax() < 1e-10);
        }
    }

    #[test]
    fn min_eigenvalue_examples() {
        assert!((min_eigenvalue(&DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 2.0])).unwrap() - 1.0).abs() < 1e-12);
        let swap = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!((min_eigenvalue(&swap).unwrap() + 1.0).abs() < 1e-12);
        assert!(min_eigenvalue(&number_matrix(10, 1.0).entries).unwrap().abs() < 1e-12);
    }

    #[test]
    fn positivity_examples() {
        let number = positivity_certificate(&div(&["(x^2 - s^2)/2", "1/2"]), 1, &[0.1, 1.0], 32).unwrap();
        assert_eq!(number.c_found, 0.0);
        let twice = positivity_certificate(&div(&["x^2 - 1", "1"]), 1, &[1.0], 32).unwrap();
        assert!(twice.min_eigenvalues[0].1.abs() < 1e-9);
        assert_eq!(twice.c_found, 0.0);
        let shifted = positivity_certificate(&div(&["x^2 + 4", "1"]), 1, &[1.0], 32).unwrap();
        assert!(shifted.min_eigenvalues[0].1 >= 5.0 - 1e-9);
    }

    #[test]
    fn comparison_examples() {
        let d = div(&["x^4 + 1", "1"]);
        let selfc = comparison_certificate(&d, &d, 1, &[0.5, 1.0], 24, 0.0).unwrap();
        assert!(selfc.c1_found.unwrap() <= 1.0 + 1e-6);
        let number = comparison_certificate(&div(&["(x^2 - s^2)/2", "1/2"]), &d, 1, &[0.1, 0.5, 1.0], 64, 1.0).unwrap();
        assert!(number.c1_found.unwrap().is_finite());
    }

    #[test]
    fn fractional_examples() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 4.0]));
        let b = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 8.0]));
        let half = fractional_compare(&a, &b, 0.5).unwrap();
        assert!((half.c_r.unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-8);
        for r in [0.0, 0.5, 2.0] {
            assert!((fractional_compare(&a, &a, r).unwrap().c_r.unwrap() - 1.0).abs() < 1e-8);
        }
        let neg = DMatrix::from_diagonal_element(2, 2, -1.0);
        assert!(matches!(fractional_compare(&neg, &a, 0.5), Err(SpectralError::NotPsd(_))));
    }

    #[test]
    fn loewner_probe_and_counterexample() {
        let report = loewner_heinz_probe(50, 4, &[0.0, 0.5, 1.0], 0).unwrap();
        assert!(report.violations.is_empty());
        assert!(report.counterexample_detected);
        let (a, b) = loewner_counterexample();
        assert!(loewner_margin(&a, &b, 1.0).unwrap() >= PSD_TOL);
        assert!(loewner_heinz_probe(1, 2, &[2.0], 0).is_err());
    }

    #[test]
    fn sandwich_number_family() {
        // Frozen and full squares of the number family differ by ℏ²/2 times the
        // identity, which the shift absorbs.
        let r = sandwich_check(&div(&["(x^2 - s^2)/2", "1/2"]), 2, 1.5, 32, 1.0).unwrap();
        assert!(r.holds, "{r:?}");
    }
}
