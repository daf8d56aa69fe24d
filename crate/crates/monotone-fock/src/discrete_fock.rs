//! Exact sparse simulation of the discrete monotone and anti-monotone
//! creation/annihilation operators.
//!
//! Basis vectors are labelled by strictly ordered finite mode sequences
//! (increasing for [`OrderFlag::Monotone`], decreasing for
//! [`OrderFlag::AntiMonotone`]); the empty sequence is the vacuum. A creator
//! prepends its mode when the order constraint against the current head
//! holds and kills the term otherwise; an annihilator removes a matching
//! head. Amplitudes are exact Gaussian rationals so that every vacuum
//! expectation computed here is bit-exact — this module is the oracle for
//! the combinatorial moment formulas.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::partitions::Sign;

/// Mode index, counted from 1.
pub type Mode = u32;

/// Exact complex amplitude.
pub type Amplitude = Complex<Rational64>;

/// Amplitude `1`.
pub fn amp_one() -> Amplitude {
    Amplitude::one()
}

/// Amplitude `0`.
pub fn amp_zero() -> Amplitude {
    Amplitude::zero()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FockError {
    #[error("mode sequence {0:?} is not strictly {1} (or contains mode 0)")]
    NotOrdered(Vec<Mode>, &'static str),
    #[error("order flags differ: {0} vs {1}")]
    OrderMismatch(OrderFlag, OrderFlag),
}

/// Which of the two mirrored Fock spaces a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderFlag {
    /// Strictly increasing mode sequences; a creator needs `i < head`.
    Monotone,
    /// Strictly decreasing mode sequences; a creator needs `i > head`.
    AntiMonotone,
}

impl OrderFlag {
    /// Whether mode `i` may be prepended in front of the current head.
    pub fn admits_prepend(self, i: Mode, head: Mode) -> bool {
        match self {
            OrderFlag::Monotone => i < head,
            OrderFlag::AntiMonotone => i > head,
        }
    }

    /// Whether a mode sequence is strictly ordered for this flag.
    pub fn is_ordered(self, modes: &[Mode]) -> bool {
        modes.iter().all(|&m| m >= 1) && modes.windows(2).all(|w| self.admits_prepend(w[0], w[1]))
    }

    pub fn opposite(self) -> OrderFlag {
        match self {
            OrderFlag::Monotone => OrderFlag::AntiMonotone,
            OrderFlag::AntiMonotone => OrderFlag::Monotone,
        }
    }

    fn order_name(self) -> &'static str {
        match self {
            OrderFlag::Monotone => "increasing",
            OrderFlag::AntiMonotone => "decreasing",
        }
    }
}

impl fmt::Display for OrderFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderFlag::Monotone => write!(f, "monotone"),
            OrderFlag::AntiMonotone => write!(f, "anti-monotone"),
        }
    }
}

/// A canonical basis label: a strictly ordered finite mode sequence together
/// with its order flag. The empty sequence is the vacuum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisVector {
    modes: Vec<Mode>,
    order: OrderFlag,
}

impl BasisVector {
    pub fn new(modes: Vec<Mode>, order: OrderFlag) -> Result<Self, FockError> {
        if !order.is_ordered(&modes) {
            return Err(FockError::NotOrdered(modes, order.order_name()));
        }
        Ok(BasisVector { modes, order })
    }

    pub fn vacuum(order: OrderFlag) -> Self {
        BasisVector {
            modes: Vec::new(),
            order,
        }
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn order(&self) -> OrderFlag {
        self.order
    }

    pub fn is_vacuum(&self) -> bool {
        self.modes.is_empty()
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modes.is_empty() {
            return write!(f, "Ω");
        }
        write!(f, "e(")?;
        for (i, m) in self.modes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// A finite linear combination of basis vectors with exact amplitudes.
/// No stored amplitude is zero; all keys share the vector's order flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockVector {
    order: OrderFlag,
    terms: BTreeMap<Vec<Mode>, Amplitude>,
}

impl FockVector {
    pub fn zero(order: OrderFlag) -> Self {
        FockVector {
            order,
            terms: BTreeMap::new(),
        }
    }

    /// The vacuum state `Ω` with amplitude 1.
    pub fn vacuum(order: OrderFlag) -> Self {
        let mut v = FockVector::zero(order);
        v.add_term(Vec::new(), amp_one());
        v
    }

    pub fn basis(b: &BasisVector) -> Self {
        let mut v = FockVector::zero(b.order());
        v.add_term(b.modes().to_vec(), amp_one());
        v
    }

    pub fn order(&self) -> OrderFlag {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in lexicographic key order.
    pub fn terms(&self) -> impl Iterator<Item = (&[Mode], &Amplitude)> {
        self.terms.iter().map(|(k, a)| (k.as_slice(), a))
    }

    /// Amplitude of a basis label (zero when absent).
    pub fn amplitude(&self, modes: &[Mode]) -> Amplitude {
        self.terms.get(modes).cloned().unwrap_or_else(amp_zero)
    }

    pub fn vacuum_amplitude(&self) -> Amplitude {
        self.amplitude(&[])
    }

    /// Accumulates `amp` onto a key, dropping the entry when it cancels.
    pub fn add_term(&mut self, modes: Vec<Mode>, amp: Amplitude) {
        if amp.is_zero() {
            return;
        }
        debug_assert!(self.order.is_ordered(&modes));
        let entry = self.terms.entry(modes);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(amp);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = *e.get() + amp;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &FockVector) -> Result<FockVector, FockError> {
        if self.order != other.order {
            return Err(FockError::OrderMismatch(self.order, other.order));
        }
        let mut out = self.clone();
        for (modes, amp) in other.terms() {
            out.add_term(modes.to_vec(), *amp);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FockVector) -> Result<FockVector, FockError> {
        if self.order != other.order {
            return Err(FockError::OrderMismatch(self.order, other.order));
        }
        let mut out = self.clone();
        for (modes, amp) in other.terms() {
            out.add_term(modes.to_vec(), -*amp);
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Amplitude) -> FockVector {
        let mut out = FockVector::zero(self.order);
        for (modes, amp) in self.terms() {
            out.add_term(modes.to_vec(), *amp * *factor);
        }
        out
    }

    /// Inner product, conjugate-linear in `self` and linear in `other`.
    pub fn inner_product(&self, other: &FockVector) -> Result<Amplitude, FockError> {
        if self.order != other.order {
            return Err(FockError::OrderMismatch(self.order, other.order));
        }
        let mut acc = amp_zero();
        for (modes, amp) in self.terms() {
            if let Some(b) = other.terms.get(modes) {
                acc += amp.conj() * *b;
            }
        }
        Ok(acc)
    }

    /// Squared norm `⟨v, v⟩`, an exact nonnegative rational.
    pub fn norm_sq(&self) -> Rational64 {
        self.terms.values().map(|a| a.re * a.re + a.im * a.im).sum()
    }
}

/// One factor of an operator monomial: `a^{-1}_mode` (annihilator) or
/// `a^{+1}_mode` (creator). The same letters drive both Fock spaces; the
/// order flag of the target vector selects the rule set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OperatorLetter {
    sign: Sign,
    mode: Mode,
}

impl OperatorLetter {
    pub fn new(sign: Sign, mode: Mode) -> Self {
        debug_assert!(mode >= 1);
        OperatorLetter { sign, mode }
    }

    pub fn creator(mode: Mode) -> Self {
        OperatorLetter::new(Sign::Plus, mode)
    }

    pub fn annihilator(mode: Mode) -> Self {
        OperatorLetter::new(Sign::Minus, mode)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }
}

impl fmt::Display for OperatorLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "a†_{}", self.mode),
            Sign::Minus => write!(f, "a_{}", self.mode),
        }
    }
}

/// Linear extension of the creator rule: prepend `i` where the order admits
/// it, kill the term otherwise; the vacuum term maps to `e_(i)`.
pub fn creator_apply(i: Mode, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.order());
    for (modes, amp) in v.terms() {
        let admissible = match modes.first() {
            None => true,
            Some(&head) => v.order().admits_prepend(i, head),
        };
        if admissible {
            let mut new_modes = Vec::with_capacity(modes.len() + 1);
            new_modes.push(i);
            new_modes.extend_from_slice(modes);
            out.add_term(new_modes, *amp);
        }
    }
    out
}

/// Linear extension of the annihilator rule: drop the head when it equals
/// `i`, kill the term otherwise; the vacuum is killed.
pub fn annihilator_apply(i: Mode, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.order());
    for (modes, amp) in v.terms() {
        if modes.first() == Some(&i) {
            out.add_term(modes[1..].to_vec(), *amp);
        }
    }
    out
}

pub fn apply_letter(letter: &OperatorLetter, v: &FockVector) -> FockVector {
    match letter.sign() {
        Sign::Plus => creator_apply(letter.mode(), v),
        Sign::Minus => annihilator_apply(letter.mode(), v),
    }
}

/// Applies an operator monomial, rightmost letter first, matching the
/// product notation `a^{ε(1)}_{k_1} ⋯ a^{ε(m)}_{k_m} v`. The empty word is
/// the identity.
pub fn apply_word(word: &[OperatorLetter], v: &FockVector) -> FockVector {
    let mut state = v.clone();
    for letter in word.iter().rev() {
        state = apply_letter(letter, &state);
    }
    state
}

/// `⟨Ω, a^{ε(1)}_{k_1} ⋯ a^{ε(m)}_{k_m} Ω⟩`, exact. For basis letters the
/// value is always 0 or 1.
pub fn vacuum_expectation_direct(word: &[OperatorLetter], order: OrderFlag) -> Amplitude {
    apply_word(word, &FockVector::vacuum(order)).vacuum_amplitude()
}

/// All strictly ordered sequences over modes `{1..=max_mode}` with length at
/// most `max_len`, including the vacuum. Deterministic order.
pub fn all_basis_vectors(max_mode: Mode, max_len: usize, order: OrderFlag) -> Vec<BasisVector> {
    let mut out = Vec::new();
    let count = 1u64 << max_mode;
    for mask in 0..count {
        if (mask.count_ones() as usize) > max_len {
            continue;
        }
        let mut modes: Vec<Mode> = (1..=max_mode)
            .filter(|&m| mask & (1 << (m - 1)) != 0)
            .collect();
        if order == OrderFlag::AntiMonotone {
            modes.reverse();
        }
        out.push(BasisVector::new(modes, order).expect("mask yields ordered modes"));
    }
    out
}

/// Checks the monotone word relations on every probe:
/// `a†_i a†_j = a_j a_i = 0` for `i ≥ j`, `a_i a†_j = 0` for `i ≠ j`,
/// and `a_i a†_i = I − Σ_{k=1..i} a†_k a_k`.
///
/// Probes must be monotone basis vectors.
pub fn verify_relations(i: Mode, j: Mode, probes: &[BasisVector]) -> bool {
    for probe in probes {
        debug_assert_eq!(probe.order(), OrderFlag::Monotone);
        let v = FockVector::basis(probe);
        if i >= j {
            let created = creator_apply(i, &creator_apply(j, &v));
            let annihilated = annihilator_apply(j, &annihilator_apply(i, &v));
            if !created.is_zero() || !annihilated.is_zero() {
                return false;
            }
        }
        if i != j && !annihilator_apply(i, &creator_apply(j, &v)).is_zero() {
            return false;
        }
        // a_i a†_i v = v − Σ_{k=1..i} a†_k a_k v
        let lhs = annihilator_apply(i, &creator_apply(i, &v));
        let mut rhs = v.clone();
        for k in 1..=i {
            let term = creator_apply(k, &annihilator_apply(k, &v));
            rhs = rhs.sub(&term).expect("same order flag");
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}
