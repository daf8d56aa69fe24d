//! Direct sparse simulation of the discrete creation/annihilation operators.
//!
//! Applies operator words to the vacuum in both Fock spaces, shows where the
//! order constraint kills a term, and checks the word relations on an
//! exhaustive probe basis.
//!
//! ```bash
//! cargo run -p monotone-fock --example operator_simulation
//! ```

use monotone_fock::anti_monotone::verify_anti_relations;
use monotone_fock::discrete_fock::{
    all_basis_vectors, apply_word, vacuum_expectation_direct, verify_relations, FockVector,
    OperatorLetter, OrderFlag,
};

fn show(label: &str, v: &FockVector) {
    if v.is_zero() {
        println!("  {label} = 0");
        return;
    }
    let terms: Vec<String> = v
        .terms()
        .map(|(modes, amp)| format!("{amp} * e{modes:?}"))
        .collect();
    println!("  {label} = {}", terms.join(" + "));
}

fn main() {
    let vac = FockVector::vacuum(OrderFlag::Monotone);

    println!("monotone space (creators need i < head):");
    let w = [OperatorLetter::creator(2), OperatorLetter::creator(5)];
    show("a†_2 a†_5 Ω", &apply_word(&w, &vac));
    let w = [OperatorLetter::creator(5), OperatorLetter::creator(2)];
    show("a†_5 a†_2 Ω", &apply_word(&w, &vac)); // 5 >= 2 kills it
    let w = [
        OperatorLetter::annihilator(2),
        OperatorLetter::annihilator(1),
        OperatorLetter::creator(1),
        OperatorLetter::creator(2),
    ];
    println!(
        "  <Ω, a_2 a_1 a†_1 a†_2 Ω> = {}",
        vacuum_expectation_direct(&w, OrderFlag::Monotone)
    );

    println!("\nanti-monotone space (creators need i > head):");
    let avac = FockVector::vacuum(OrderFlag::AntiMonotone);
    let w = [OperatorLetter::creator(2), OperatorLetter::creator(5)];
    show("b†_2 b†_5 Ω", &apply_word(&w, &avac));
    let w = [OperatorLetter::creator(5), OperatorLetter::creator(2)];
    show("b†_5 b†_2 Ω", &apply_word(&w, &avac));

    // relation suite on every ordered sequence over modes {1..5}
    let probes = all_basis_vectors(5, 5, OrderFlag::Monotone);
    let mut all_ok = true;
    for i in 1..=5 {
        for j in 1..=5 {
            all_ok &= verify_relations(i, j, &probes);
            all_ok &= verify_anti_relations(i, j, 5);
        }
    }
    println!(
        "\nword relations over modes 1..5 ({} probes per space): {}",
        probes.len(),
        if all_ok { "all hold" } else { "FAILED" }
    );
}
