//! Monte Carlo moment estimates with standard errors against the exact
//! cell-decomposition integrals, including a polynomial test function the
//! exact route rejects.
//!
//! ```bash
//! cargo run -p monotone-fock --example monte_carlo_vs_exact
//! ```

use monotone_fock::discrete_fock::OrderFlag;
use monotone_fock::moment_engine::{continuous_moment_exact, continuous_moment_mc, MomentSpec};
use monotone_fock::test_function::TestFunction;
use num_complex::Complex64;

fn main() {
    let f = TestFunction::piecewise_constant(
        vec![0.0, 0.375, 1.0],
        vec![Complex64::new(1.0, 1.0), Complex64::new(0.25, 0.0)],
    )
    .unwrap();

    println!("piecewise-constant f, 200k samples per run:");
    println!("      word            exact           estimate      std_error   |diff|/se");
    for word in ["-+", "--++", "---+++", "--+-++"] {
        let spec = MomentSpec::new(
            word.parse().unwrap(),
            vec![f.clone(); word.len()],
            OrderFlag::Monotone,
        )
        .unwrap();
        let exact = continuous_moment_exact(&spec).unwrap();
        let (estimate, se) = continuous_moment_mc(&spec, 200_000, 1);
        let sigmas = if se > 0.0 {
            (estimate - exact).norm() / se
        } else {
            0.0
        };
        println!(
            "  {word:>8}   {:>7.4}{:+.4}i   {:>7.4}{:+.4}i   {se:>10.2e}   {sigmas:>6.2}",
            exact.re, exact.im, estimate.re, estimate.im
        );
    }

    // polynomials are outside the exact class; Monte Carlo handles them
    let t = TestFunction::polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    let spec = MomentSpec::new("-+".parse().unwrap(), vec![t; 2], OrderFlag::Monotone).unwrap();
    println!(
        "\nexact route on poly functions: {:?}",
        continuous_moment_exact(&spec).unwrap_err()
    );
    let (estimate, se) = continuous_moment_mc(&spec, 400_000, 2);
    println!(
        "mc estimate of the |t|^2 pair moment: {:.5} ± {:.1e}  (analytic 1/3)",
        estimate.re, se
    );
}
