//! Three routes to the same vacuum moment.
//!
//! For one Dyck word the finite-N moment is evaluated (1) by brute-force
//! operator simulation of the expanded product of sums, (2) through the
//! delta-product reduction, and the continuum limit (3) as an exact simplex
//! integral. The factorisation over connected components is checked on top.
//!
//! ```bash
//! cargo run -p monotone-fock --example moment_cross_check
//! ```

use monotone_fock::discrete_fock::{amp_one, vacuum_expectation_direct, OperatorLetter, OrderFlag};
use monotone_fock::moment_engine::{
    continuous_moment_exact, factorized_moment, finite_moment, mixed_vacuum_moment, MomentSpec,
};
use monotone_fock::partitions::SignWord;
use num_complex::Complex64;

fn brute_force(spec: &MomentSpec, n_grid: u32) -> Complex64 {
    let m = spec.word().len();
    let mut modes = vec![1u32; m];
    let mut total = Complex64::new(0.0, 0.0);
    'outer: loop {
        let letters: Vec<OperatorLetter> = spec
            .word()
            .signs()
            .iter()
            .zip(&modes)
            .map(|(&s, &k)| OperatorLetter::new(s, k))
            .collect();
        if vacuum_expectation_direct(&letters, spec.order()) == amp_one() {
            total += Complex64::new(1.0, 0.0); // constant test functions
        }
        for mode in modes.iter_mut() {
            *mode += 1;
            if *mode <= n_grid {
                continue 'outer;
            }
            *mode = 1;
        }
        break;
    }
    total / f64::from(n_grid).powi(m as i32 / 2)
}

fn main() {
    let word: SignWord = "--++-+".parse().unwrap();
    println!("word {word} with constant test functions\n");

    for order in [OrderFlag::Monotone, OrderFlag::AntiMonotone] {
        let spec = MomentSpec::constant_ones(word.clone(), order);
        println!("{order}:");
        println!("      N   brute-force operator sum   delta-product sum");
        for n_grid in [2u32, 3, 4, 6, 8] {
            let brute = brute_force(&spec, n_grid);
            let fast = finite_moment(&spec, n_grid);
            println!("  {n_grid:>5}   {:>24.12}   {:>17.12}", brute.re, fast.re);
            assert!((brute - fast).norm() < 1e-12);
        }
        let limit = continuous_moment_exact(&spec).unwrap();
        let factored = factorized_moment(&spec);
        println!("  limit   {:.12} (exact integral)", limit.re);
        println!(
            "  factorised over components: {:.12} (must match {:.12})\n",
            factored.re,
            mixed_vacuum_moment(&spec).re
        );
    }
}
