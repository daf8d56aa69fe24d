//! Process-level convergence: operator sums restricted to time windows
//! approach the moments with cut-off test functions.
//!
//! ```bash
//! cargo run -p monotone-fock --example invariance_principle
//! ```

use monotone_fock::clt_harness::{
    invariance_study, snapped_range, IntervalSpec, ProcessMomentSpec,
};
use monotone_fock::discrete_fock::OrderFlag;
use monotone_fock::test_function::TestFunction;

fn main() {
    // one annihilator/creator pair on [0, t]: the limit is exactly t
    for t in [0.25, 0.5, 0.75] {
        let spec = ProcessMomentSpec::new(
            "-+".parse().unwrap(),
            vec![TestFunction::one(); 2],
            IntervalSpec::new(vec![(0.0, t); 2]).unwrap(),
            OrderFlag::Monotone,
        )
        .unwrap();
        let study = invariance_study(&spec, &[10, 50, 200]).unwrap();
        println!("interval [0, {t}], limit {}", study.limit.re);
        for row in &study.rows {
            let (lo, hi) = row.snapped[0];
            println!(
                "  N={:>4}  modes {lo}..={hi}  value {:.6}  error {:.2e}",
                row.n_grid, row.value.re, row.abs_error
            );
        }
    }

    // nested word with staggered windows
    let spec = ProcessMomentSpec::new(
        "--++".parse().unwrap(),
        vec![TestFunction::one(); 4],
        IntervalSpec::new(vec![(0.0, 0.75), (0.25, 1.0), (0.25, 1.0), (0.0, 0.75)]).unwrap(),
        OrderFlag::Monotone,
    )
    .unwrap();
    let study = invariance_study(&spec, &[8, 32, 128, 512]).unwrap();
    println!(
        "\nword --++ with windows [0,3/4] x [1/4,1], limit {:.6}",
        study.limit.re
    );
    for row in &study.rows {
        println!(
            "  N={:>4}  value {:.6}  error {:.2e}",
            row.n_grid, row.value.re, row.abs_error
        );
    }

    // disjoint windows on a paired block force zero
    let disjoint = ProcessMomentSpec::new(
        "-+".parse().unwrap(),
        vec![TestFunction::one(); 2],
        IntervalSpec::new(vec![(0.0, 0.5), (0.5, 1.0)]).unwrap(),
        OrderFlag::Monotone,
    )
    .unwrap();
    let study = invariance_study(&disjoint, &[10, 100]).unwrap();
    println!(
        "\ndisjoint windows: limit {}, finite values all zero:",
        study.limit.re
    );
    for row in &study.rows {
        println!("  N={:>4}  value {}", row.n_grid, row.value.re);
    }
    println!(
        "\nsnapped ranges follow the floor convention, e.g. [0,1/2] at N=10 -> {:?}",
        snapped_range(0.0, 0.5, 10)
    );
}
