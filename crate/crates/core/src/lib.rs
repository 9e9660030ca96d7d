//! Exact calculus and finite-truncation certificates for symmetric differential
//! operators with polynomial coefficients on the real line.
//!
//! An operator is stored either in raw form `Σ a_k ∂^k` ([`opalg::RawOp`]) or in
//! divergence form `Σ (−1)^l ∂^l b_l ∂^l` ([`opalg::DivOp`]). Coefficients are
//! exact rational polynomials in `x` and, for ℏ-dependent families, in `s = √ℏ`.
//!
//! # Modules
//! - [`poly`]: rational polynomials in `x`, `xi`, `s`, their text grammar and
//!   numeric global minimization.
//! - [`opalg`]: adjoint, composition, powers and symmetry of raw operators.
//! - [`structure`]: raw/divergence conversion, the combinatorial constants
//!   `C_n` and `K_m`, explicit coefficients of `L^n` and ℏ-scaling.
//! - [`quantize`]: noncommutative polynomials in `θ`, `θ*`, Weyl lifts and
//!   their quantization through ladder operators.
//! - [`conditions`]: degree chains, positivity constants and domination bounds
//!   for operator families.
//! - [`spectral`]: Hermite-basis truncations and eigenvalue certificates.
//! - [`pseudiff`]: symbols, the remainder symbol `ρ_μ` and the parametrix norm
//!   certificate.
//! - [`cli`]: operator files, command dispatch and JSON reports.
//!
//! # Example
//! ```
//! use symdiv::opalg::DivOp;
//! use symdiv::structure::power_div_coeffs;
//!
//! let d: DivOp = "b0 = x^4\nb1 = x^2".parse::<symdiv::cli::OperatorFile>()
//!     .unwrap()
//!     .to_div_op()
//!     .unwrap();
//! let p = power_div_coeffs(&d, 2);
//! assert_eq!(p.b[0].to_string(), "x^8 - 20*x^4");
//! ```

pub mod cli;
pub mod conditions;
pub mod opalg;
pub mod poly;
pub mod pseudiff;
pub mod quantize;
pub mod spectral;
pub mod structure;

pub use opalg::{DivOp, RawOp};
pub use poly::{Degree, Poly, Var};
