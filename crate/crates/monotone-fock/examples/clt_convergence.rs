//! Finite-N moments of normalized operator sums approaching the continuum
//! moment, for a non-trivial piecewise-constant test function.
//!
//! ```bash
//! cargo run -p monotone-fock --example clt_convergence
//! ```

use monotone_fock::clt_harness::convergence_study;
use monotone_fock::discrete_fock::OrderFlag;
use monotone_fock::moment_engine::MomentSpec;
use monotone_fock::test_function::TestFunction;
use num_complex::Complex64;

fn main() {
    let f = TestFunction::piecewise_constant(
        vec![0.0, 0.5, 1.0],
        vec![Complex64::new(1.0, 0.5), Complex64::new(0.5, 0.0)],
    )
    .unwrap();

    for word in ["--++", "---+++"] {
        let spec = MomentSpec::new(
            word.parse().unwrap(),
            vec![f.clone(); word.len()],
            OrderFlag::Monotone,
        )
        .unwrap();
        let study = convergence_study(&spec, &[4, 8, 16, 32, 64, 128, 256, 512]).unwrap();
        println!(
            "word {word}, f = 1+0.5i on [0,1/2) and 0.5 on [1/2,1], limit {:.9}{:+.9}i",
            study.limit.re, study.limit.im
        );
        println!("      N      value.re      value.im     abs_error    N*error");
        for row in &study.rows {
            println!(
                "  {:>5}   {:>11.8}   {:>11.8}   {:>11.4e}   {:>8.5}",
                row.n_grid,
                row.value.re,
                row.value.im,
                row.abs_error,
                row.abs_error * f64::from(row.n_grid)
            );
        }
        println!();
    }
    println!("N*error staying bounded is the empirical O(1/N) rate.");
}
