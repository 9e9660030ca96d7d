//! Double-precision univariate polynomials: real roots and global minima.

use serde::Serialize;

/// Univariate polynomial with `f64` coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<f64>,
}

/// Result of a global minimization over the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum GlobalMin {
    /// Minimum value and one minimizer.
    Min {
        /// Minimum value.
        value: f64,
        /// A point where it is attained.
        at: f64,
    },
    /// Odd degree or negative leading coefficient.
    UnboundedBelow,
}

impl GlobalMin {
    /// Minimum value, `−∞` when unbounded.
    pub fn value(self) -> f64 {
        match self {
            GlobalMin::Min { value, .. } => value,
            GlobalMin::UnboundedBelow => f64::NEG_INFINITY,
        }
    }
}

impl UniPoly {
    /// Builds a polynomial from coefficients, lowest degree first. Trailing
    /// exact zeros are dropped.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Derivative.
    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// Linear combination `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &UniPoly, b: f64) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        UniPoly::new(
            (0..n)
                .map(|i| a * get(&self.coeffs, i) + b * get(&other.coeffs, i))
                .collect(),
        )
    }
}

fn bisect(p: &UniPoly, mut a: f64, mut b: f64) -> f64 {
    let mut fa = p.eval(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = p.eval(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Real roots of `p`, sorted, found by recursive isolation between the critical
/// points of `p`. Returned values also include points where `p` touches zero
/// at a critical point, up to rounding.
pub fn real_roots(p: &UniPoly) -> Vec<f64> {
    roots_with_critical(p).0
}

/// Returns the real roots of `p` and the union of the real roots of all its
/// derivatives.
fn roots_with_critical(p: &UniPoly) -> (Vec<f64>, Vec<f64>) {
    let d = match p.degree() {
        None | Some(0) => return (Vec::new(), Vec::new()),
        Some(d) => d,
    };
    let c = p.coeffs();
    if d == 1 {
        return (vec![-c[0] / c[1]], Vec::new());
    }
    let (crit, deeper) = roots_with_critical(&p.derivative());
    let lead = c[d].abs();
    let bound = 1.0 + c[..d].iter().map(|v| v.abs() / lead).fold(0.0, f64::max);
    let scale = c.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let mut points = vec![-bound];
    points.extend(crit.iter().copied().filter(|t| t.abs() < bound));
    points.push(bound);
    let mut roots: Vec<f64> = Vec::new();
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (p.eval(a), p.eval(b));
        if fa == 0.0 {
            roots.push(a);
        } else if fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
            roots.push(bisect(p, a, b));
        }
    }
    for &t in &crit {
        let mag: f64 = c.iter().enumerate().map(|(k, v)| v.abs() * t.abs().powi(k as i32)).sum();
        if p.eval(t).abs() <= 1e-13 * mag.max(scale * f64::EPSILON) {
            roots.push(t);
        }
    }
    if p.eval(bound) == 0.0 {
        roots.push(bound);
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
    let mut all_crit = crit;
    all_crit.extend(deeper);
    (roots, all_crit)
}

/// Global minimum of `p` over ℝ. The minimizer is searched among the real roots
/// of `p′` and of all higher derivatives, which always contains the true
/// minimizer up to rounding.
pub fn global_min_f64(p: &UniPoly) -> GlobalMin {
    let d = match p.degree() {
        None => return GlobalMin::Min { value: 0.0, at: 0.0 },
        Some(d) => d,
    };
    if d % 2 == 1 || p.coeffs()[d] < 0.0 {
        return GlobalMin::UnboundedBelow;
    }
    if d == 0 {
        return GlobalMin::Min {
            value: p.coeffs()[0],
            at: 0.0,
        };
    }
    let (roots, deeper) = roots_with_critical(&p.derivative());
    let mut best = GlobalMin::Min {
        value: p.eval(0.0),
        at: 0.0,
    };
    for t in roots.into_iter().chain(deeper) {
        let v = p.eval(t);
        if let GlobalMin::Min { value, .. } = best {
            if v < value {
                best = GlobalMin::Min { value: v, at: t };
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_cubic() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let r = real_roots(&UniPoly::new(vec![6.0, -7.0, 0.0, 1.0]));
        assert_eq!(r.len(), 3);
        for (a, b) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn double_root_is_found() {
        // (x-1)^2 (x+1)
        let r = real_roots(&UniPoly::new(vec![1.0, -1.0, -1.0, 1.0]));
        assert!(r.iter().any(|t| (t - 1.0).abs() < 1e-7));
        assert!(r.iter().any(|t| (t + 1.0).abs() < 1e-12));
    }

    #[test]
    fn min_of_pure_power() {
        let m = global_min_f64(&UniPoly::new(vec![0.0, 0.0, 0.0, 0.0, 1.0]));
        assert_eq!(m, GlobalMin::Min { value: 0.0, at: 0.0 });
    }

    #[test]
    fn min_of_constant_and_zero() {
        assert_eq!(global_min_f64(&UniPoly::new(vec![3.0])).value(), 3.0);
        assert_eq!(global_min_f64(&UniPoly::new(vec![])).value(), 0.0);
    }
}
