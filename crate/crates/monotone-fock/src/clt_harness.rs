//! Numerical experiments for the limit theorems: convergence of finite-N
//! moments to their continuum values, the arcsine moments of normalized
//! position sums, and the interval-restricted invariance principle.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::discrete_fock::OrderFlag;
use crate::moment_engine::{
    finite_moment, finite_moment_restricted, mixed_vacuum_moment, MomentError, MomentSpec,
};
use crate::partitions::{enumerate_dyck_words, PartitionError, SignWord};
use crate::test_function::TestFunction;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("the N grid must be nonempty and strictly increasing")]
    BadGrid,
    #[error("interval bounds must satisfy 0 <= s < t <= 1, got ({0}, {1})")]
    BadInterval(f64, f64),
    #[error("word has {word} letters but {intervals} intervals were given")]
    IntervalCountMismatch { word: usize, intervals: usize },
    #[error(transparent)]
    Moment(#[from] MomentError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

fn validate_grid(ns: &[u32]) -> Result<(), HarnessError> {
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) || ns[0] == 0 {
        return Err(HarnessError::BadGrid);
    }
    Ok(())
}

/// One grid point of a convergence experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n_grid: u32,
    pub value: Complex64,
    pub abs_error: f64,
}

/// Finite-N values against the continuum limit for one moment spec.
#[derive(Debug, Clone)]
pub struct ConvergenceStudy {
    pub spec: MomentSpec,
    pub limit: Complex64,
    pub rows: Vec<ConvergenceRow>,
}

/// Evaluates [`finite_moment`] on every grid point and the limit through the
/// exact continuum route (never by extrapolation).
pub fn convergence_study(spec: &MomentSpec, ns: &[u32]) -> Result<ConvergenceStudy, HarnessError> {
    validate_grid(ns)?;
    let limit = mixed_vacuum_moment(spec);
    let rows = ns
        .iter()
        .map(|&n_grid| {
            let value = finite_moment(spec, n_grid);
            ConvergenceRow {
                n_grid,
                value,
                abs_error: (value - limit).norm(),
            }
        })
        .collect();
    Ok(ConvergenceStudy {
        spec: spec.clone(),
        limit,
        rows,
    })
}

/// Exact even moments of the arcsine law on `[-√2, √2]`: zero for odd `m`,
/// and `C(2n, n) / 2^n` for `m = 2n`, as a rational number.
pub fn arcsine_moment_exact(m: u32) -> BigRational {
    if m % 2 == 1 {
        return BigRational::zero();
    }
    let n = u64::from(m / 2);
    let mut binomial = BigInt::one();
    for k in 0..n {
        binomial = binomial * BigInt::from(2 * n - k) / BigInt::from(k + 1);
    }
    BigRational::new(binomial, BigInt::from(2u64).pow(n as u32))
}

/// [`arcsine_moment_exact`] as a float.
pub fn arcsine_moment(m: u32) -> f64 {
    arcsine_moment_exact(m)
        .to_f64()
        .expect("small rational fits f64")
}

/// The m-th vacuum moment of the normalized position sum
/// `N^{-1/2} Σ_{i=1..N} (a_i + a†_i)`: the sum of [`finite_moment`] with
/// constant-1 functions over all Dyck words of length `m`. Zero for odd `m`.
pub fn position_sum_moment(m: u32, n_grid: u32, order: OrderFlag) -> Result<f64, HarnessError> {
    if m % 2 == 1 {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for word in enumerate_dyck_words((m / 2) as usize)? {
        let spec = MomentSpec::constant_ones(word, order);
        total += finite_moment(&spec, n_grid).re;
    }
    Ok(total)
}

/// Per-letter time intervals for the process moments.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSpec {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSpec {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self, HarnessError> {
        for &(s, t) in &intervals {
            if !(0.0..1.0).contains(&s) || !(s < t && t <= 1.0) {
                return Err(HarnessError::BadInterval(s, t));
            }
        }
        Ok(IntervalSpec { intervals })
    }

    /// `[0, 1]` for every letter.
    pub fn full(len: usize) -> Self {
        IntervalSpec {
            intervals: vec![(0.0, 1.0); len],
        }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }
}

/// A process moment request: word, test functions and one interval per
/// letter.
#[derive(Debug, Clone)]
pub struct ProcessMomentSpec {
    word: SignWord,
    functions: Vec<TestFunction>,
    intervals: IntervalSpec,
    order: OrderFlag,
}

impl ProcessMomentSpec {
    pub fn new(
        word: SignWord,
        functions: Vec<TestFunction>,
        intervals: IntervalSpec,
        order: OrderFlag,
    ) -> Result<Self, HarnessError> {
        if word.len() != intervals.intervals().len() {
            return Err(HarnessError::IntervalCountMismatch {
                word: word.len(),
                intervals: intervals.intervals().len(),
            });
        }
        // function count is validated by the inner MomentSpec
        let _ = MomentSpec::new(word.clone(), functions.clone(), order)?;
        Ok(ProcessMomentSpec {
            word,
            functions,
            intervals,
            order,
        })
    }

    pub fn word(&self) -> &SignWord {
        &self.word
    }

    pub fn functions(&self) -> &[TestFunction] {
        &self.functions
    }

    pub fn intervals(&self) -> &IntervalSpec {
        &self.intervals
    }

    pub fn order(&self) -> OrderFlag {
        self.order
    }

    fn moment_spec(&self) -> MomentSpec {
        MomentSpec::new(self.word.clone(), self.functions.clone(), self.order)
            .expect("lengths validated on construction")
    }
}

/// Floor-convention index window: the sum over `[s, t]` at grid size `N`
/// runs over modes `{⌊Ns⌋+1, …, ⌊Nt⌋}`.
pub fn snapped_range(s: f64, t: f64, n_grid: u32) -> (u32, u32) {
    let lo = (f64::from(n_grid) * s).floor() as u32 + 1;
    let hi = (f64::from(n_grid) * t).floor() as u32;
    (lo, hi)
}

/// Finite-N process moment: each letter's mode sum is restricted to its
/// snapped index window, implemented as the grid moment with the weights
/// zeroed outside the windows.
pub fn invariance_finite_moment(spec: &ProcessMomentSpec, n_grid: u32) -> Complex64 {
    let ranges: Vec<(u32, u32)> = spec
        .intervals
        .intervals()
        .iter()
        .map(|&(s, t)| snapped_range(s, t, n_grid))
        .collect();
    finite_moment_restricted(&spec.moment_spec(), n_grid, Some(&ranges))
}

/// Continuum process moment: the vacuum moment with every `f_i` cut off to
/// its interval.
pub fn invariance_limit(spec: &ProcessMomentSpec) -> Complex64 {
    let functions: Vec<TestFunction> = spec
        .functions
        .iter()
        .zip(spec.intervals.intervals())
        .map(|(f, &(s, t))| f.restrict(s, t))
        .collect();
    let cut = MomentSpec::new(spec.word.clone(), functions, spec.order)
        .expect("restriction preserves the length");
    mixed_vacuum_moment(&cut)
}

/// One grid point of an invariance experiment, with the snapped index
/// windows actually used at this `N` (the nominal intervals live on the
/// [`ProcessMomentSpec`]).
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceRow {
    pub n_grid: u32,
    pub value: Complex64,
    pub abs_error: f64,
    pub snapped: Vec<(u32, u32)>,
}

#[derive(Debug, Clone)]
pub struct InvarianceStudy {
    pub spec: ProcessMomentSpec,
    pub limit: Complex64,
    pub rows: Vec<InvarianceRow>,
}

pub fn invariance_study(
    spec: &ProcessMomentSpec,
    ns: &[u32],
) -> Result<InvarianceStudy, HarnessError> {
    validate_grid(ns)?;
    let limit = invariance_limit(spec);
    let rows = ns
        .iter()
        .map(|&n_grid| {
            let value = invariance_finite_moment(spec, n_grid);
            let snapped = spec
                .intervals
                .intervals()
                .iter()
                .map(|&(s, t)| snapped_range(s, t, n_grid))
                .collect();
            InvarianceRow {
                n_grid,
                value,
                abs_error: (value - limit).norm(),
                snapped,
            }
        })
        .collect();
    Ok(InvarianceStudy {
        spec: spec.clone(),
        limit,
        rows,
    })
}
