//! Bounded complex-valued test functions on `[0,1]`.
//!
//! The exact moment integrator accepts the exactly integrable class —
//! constants, interval indicators and piecewise-constant functions — while
//! polynomials and opaque callables are evaluated pointwise only (Monte
//! Carlo route). Indicators are half-open `[lo, hi)` throughout; boundary
//! conventions are invisible to the integral paths and documented where a
//! grid evaluation could see them.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TestFunctionError {
    #[error("indicator bounds must satisfy 0 <= lo < hi <= 1, got [{0}, {1})")]
    InvalidIndicator(f64, f64),
    #[error("breakpoints must be strictly increasing from 0 to 1, got {0:?}")]
    InvalidBreakpoints(Vec<f64>),
    #[error(
        "piecewise-constant needs one value per segment: {segments} segments, {values} values"
    )]
    SegmentValueMismatch { segments: usize, values: usize },
}

/// A bounded complex-valued function on `[0,1]`, zero outside.
#[derive(Clone)]
pub enum TestFunction {
    /// `t ↦ c`.
    Constant(Complex64),
    /// `χ_[lo,hi)`; at `t = 1` the value is 0 even when `hi = 1`.
    Indicator { lo: f64, hi: f64 },
    /// Right-continuous step function: `values[j]` on `[breakpoints[j],
    /// breakpoints[j+1])`, with the last segment closed at 1.
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        values: Vec<Complex64>,
    },
    /// `t ↦ Σ_k coeffs[k] t^k`.
    Polynomial(Vec<Complex64>),
    /// Arbitrary callable; rejected by the exact integrator.
    Opaque(Arc<dyn Fn(f64) -> Complex64 + Send + Sync>),
}

impl TestFunction {
    pub fn constant(c: impl Into<Complex64>) -> Self {
        TestFunction::Constant(c.into())
    }

    /// The constant-one function.
    pub fn one() -> Self {
        TestFunction::Constant(Complex64::new(1.0, 0.0))
    }

    pub fn indicator(lo: f64, hi: f64) -> Result<Self, TestFunctionError> {
        if !(0.0..1.0).contains(&lo) || !(lo < hi && hi <= 1.0) {
            return Err(TestFunctionError::InvalidIndicator(lo, hi));
        }
        Ok(TestFunction::Indicator { lo, hi })
    }

    /// Breakpoints must run strictly increasing from 0 to 1 with one value
    /// per segment.
    pub fn piecewise_constant(
        breakpoints: Vec<f64>,
        values: Vec<Complex64>,
    ) -> Result<Self, TestFunctionError> {
        let ok = breakpoints.len() >= 2
            && breakpoints.first() == Some(&0.0)
            && breakpoints.last() == Some(&1.0)
            && breakpoints.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(TestFunctionError::InvalidBreakpoints(breakpoints));
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(TestFunctionError::SegmentValueMismatch {
                segments: breakpoints.len() - 1,
                values: values.len(),
            });
        }
        Ok(TestFunction::PiecewiseConstant {
            breakpoints,
            values,
        })
    }

    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        TestFunction::Polynomial(coeffs)
    }

    pub fn opaque(f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        TestFunction::Opaque(Arc::new(f))
    }

    /// Point evaluation; zero outside `[0,1]`.
    pub fn eval(&self, t: f64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        if !(0.0..=1.0).contains(&t) {
            return zero;
        }
        match self {
            TestFunction::Constant(c) => *c,
            TestFunction::Indicator { lo, hi } => {
                if *lo <= t && t < *hi {
                    Complex64::new(1.0, 0.0)
                } else {
                    zero
                }
            }
            TestFunction::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                // right-continuous; t = 1 falls in the last segment
                let idx = match breakpoints.iter().rposition(|&b| b <= t) {
                    Some(i) => i.min(values.len() - 1),
                    None => return zero,
                };
                values[idx]
            }
            TestFunction::Polynomial(coeffs) => {
                coeffs.iter().rev().fold(zero, |acc, &c| acc * t + c)
            }
            TestFunction::Opaque(f) => f(t),
        }
    }

    /// Whether the exact integrator accepts this representation.
    pub fn is_exactly_integrable(&self) -> bool {
        matches!(
            self,
            TestFunction::Constant(_)
                | TestFunction::Indicator { .. }
                | TestFunction::PiecewiseConstant { .. }
        )
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            TestFunction::Constant(_) => "constant",
            TestFunction::Indicator { .. } => "indicator",
            TestFunction::PiecewiseConstant { .. } => "piecewise-constant",
            TestFunction::Polynomial(_) => "polynomial",
            TestFunction::Opaque(_) => "opaque",
        }
    }

    /// Interior points of `(0,1)` where the function may jump. Empty for
    /// non-step representations.
    pub fn jump_points(&self) -> Vec<f64> {
        match self {
            TestFunction::Indicator { lo, hi } => [*lo, *hi]
                .into_iter()
                .filter(|b| 0.0 < *b && *b < 1.0)
                .collect(),
            TestFunction::PiecewiseConstant { breakpoints, .. } => breakpoints
                .iter()
                .copied()
                .filter(|b| 0.0 < *b && *b < 1.0)
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Multiplication by `χ_[lo, hi)`. Exact representations stay exact;
    /// polynomials and opaque callables become opaque.
    pub fn restrict(&self, lo: f64, hi: f64) -> TestFunction {
        let lo = lo.max(0.0);
        let hi = hi.min(1.0);
        if lo >= hi {
            return TestFunction::constant(0.0);
        }
        match self {
            TestFunction::Constant(c) => {
                if c.norm_sqr() == 0.0 {
                    return TestFunction::constant(0.0);
                }
                if lo == 0.0 && hi == 1.0 {
                    // χ_[0,1) zeroes the point t = 1 only; as a step function
                    // we keep the constant (measure-zero difference), matching
                    // the indicator convention is the caller's concern
                    return TestFunction::Indicator { lo, hi }.scale(*c);
                }
                TestFunction::Indicator { lo, hi }.scale(*c)
            }
            TestFunction::Indicator { lo: a, hi: b } => {
                let new_lo = a.max(lo);
                let new_hi = b.min(hi);
                if new_lo < new_hi {
                    TestFunction::Indicator {
                        lo: new_lo,
                        hi: new_hi,
                    }
                } else {
                    TestFunction::constant(0.0)
                }
            }
            TestFunction::PiecewiseConstant { breakpoints, .. } => {
                let mut bps: Vec<f64> = breakpoints.clone();
                for b in [lo, hi] {
                    if !bps.contains(&b) {
                        bps.push(b);
                    }
                }
                bps.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let mut vals = Vec::with_capacity(bps.len() - 1);
                for w in bps.windows(2) {
                    let t = w[0];
                    let inside = lo <= t && t < hi;
                    vals.push(if inside {
                        self.eval(t)
                    } else {
                        Complex64::new(0.0, 0.0)
                    });
                }
                TestFunction::PiecewiseConstant {
                    breakpoints: bps,
                    values: vals,
                }
            }
            other => {
                let inner = other.clone();
                TestFunction::opaque(move |t| {
                    if lo <= t && t < hi {
                        inner.eval(t)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            }
        }
    }

    /// Pointwise scaling by a complex constant.
    pub fn scale(&self, factor: Complex64) -> TestFunction {
        match self {
            TestFunction::Constant(c) => TestFunction::Constant(c * factor),
            TestFunction::Indicator { lo, hi } => {
                // a scaled indicator is a three-segment step function
                let mut bps = vec![0.0];
                for b in [*lo, *hi] {
                    if !bps.contains(&b) {
                        bps.push(b);
                    }
                }
                if !bps.contains(&1.0) {
                    bps.push(1.0);
                }
                let vals = bps
                    .windows(2)
                    .map(|w| {
                        if *lo <= w[0] && w[0] < *hi {
                            factor
                        } else {
                            Complex64::new(0.0, 0.0)
                        }
                    })
                    .collect();
                TestFunction::PiecewiseConstant {
                    breakpoints: bps,
                    values: vals,
                }
            }
            TestFunction::PiecewiseConstant {
                breakpoints,
                values,
            } => TestFunction::PiecewiseConstant {
                breakpoints: breakpoints.clone(),
                values: values.iter().map(|v| v * factor).collect(),
            },
            TestFunction::Polynomial(coeffs) => {
                TestFunction::Polynomial(coeffs.iter().map(|c| c * factor).collect())
            }
            TestFunction::Opaque(f) => {
                let f = f.clone();
                TestFunction::opaque(move |t| f(t) * factor)
            }
        }
    }

    /// Time reflection `t ↦ f(1 - t)`, used for the mirror symmetry between
    /// the two Fock spaces. Step representations return the right-continuous
    /// representative, which agrees with the reflection almost everywhere.
    pub fn reflected(&self) -> TestFunction {
        match self {
            TestFunction::Constant(c) => TestFunction::Constant(*c),
            TestFunction::Indicator { lo, hi } => TestFunction::Indicator {
                lo: 1.0 - hi,
                hi: 1.0 - lo,
            },
            TestFunction::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                let mut bps: Vec<f64> = breakpoints.iter().map(|b| 1.0 - b).collect();
                bps.reverse();
                let mut vals: Vec<Complex64> = values.clone();
                vals.reverse();
                TestFunction::PiecewiseConstant {
                    breakpoints: bps,
                    values: vals,
                }
            }
            TestFunction::Polynomial(coeffs) => {
                // expand Σ c_k (1-t)^k
                let n = coeffs.len();
                let mut out = vec![Complex64::new(0.0, 0.0); n];
                for (k, &c) in coeffs.iter().enumerate() {
                    let mut binom = 1.0f64;
                    for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
                        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                        *slot += c * sign * binom;
                        binom = binom * (k - j) as f64 / (j + 1) as f64;
                    }
                }
                TestFunction::Polynomial(out)
            }
            TestFunction::Opaque(f) => {
                let f = f.clone();
                TestFunction::opaque(move |t| f(1.0 - t))
            }
        }
    }
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Constant(c) => write!(f, "Constant({c})"),
            TestFunction::Indicator { lo, hi } => write!(f, "Indicator[{lo}, {hi})"),
            TestFunction::PiecewiseConstant {
                breakpoints,
                values,
            } => write!(f, "PiecewiseConstant({breakpoints:?}, {values:?})"),
            TestFunction::Polynomial(coeffs) => write!(f, "Polynomial({coeffs:?})"),
            TestFunction::Opaque(_) => write!(f, "Opaque(..)"),
        }
    }
}
