//! Mirror helpers for the anti-monotone space.
//!
//! Anti-monotone is a flag, not a code fork: the order predicate in
//! [`crate::discrete_fock::OrderFlag`] parametrizes head insertion, the
//! delta/nabla selection and the kernel direction everywhere. This module
//! adds the A/B comparison utilities and the relation checks whose infinite
//! mode sum only truncates on capped probe sets.

use crate::discrete_fock::{
    all_basis_vectors, annihilator_apply, creator_apply, FockVector, Mode, OrderFlag,
};
use crate::moment_engine::MomentSpec;

/// The identical moment request on the mirrored Fock space.
pub fn mirror_spec(spec: &MomentSpec) -> MomentSpec {
    spec.with_order(spec.order().opposite())
}

/// Checks the anti-monotone word relations on all decreasing sequences over
/// modes `{1..=mode_cap}`:
/// `b†_i b†_j = b_j b_i = 0` for `i ≤ j`, `b_i b†_j = 0` for `i ≠ j`, and
/// `b_i b†_i = I − Σ_{k≥i} b†_k b_k`.
///
/// The commutation sum is infinite; on probes whose modes are bounded by
/// `mode_cap` every term beyond the cap annihilates, so truncating at the
/// cap is exact.
pub fn verify_anti_relations(i: Mode, j: Mode, mode_cap: Mode) -> bool {
    let probes = all_basis_vectors(mode_cap, mode_cap as usize, OrderFlag::AntiMonotone);
    for probe in &probes {
        let v = FockVector::basis(probe);
        if i <= j {
            let created = creator_apply(i, &creator_apply(j, &v));
            let annihilated = annihilator_apply(j, &annihilator_apply(i, &v));
            if !created.is_zero() || !annihilated.is_zero() {
                return false;
            }
        }
        if i != j && !annihilator_apply(i, &creator_apply(j, &v)).is_zero() {
            return false;
        }
        let lhs = annihilator_apply(i, &creator_apply(i, &v));
        let mut rhs = v.clone();
        for k in i..=mode_cap {
            let term = creator_apply(k, &annihilator_apply(k, &v));
            rhs = rhs.sub(&term).expect("same order flag");
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}
